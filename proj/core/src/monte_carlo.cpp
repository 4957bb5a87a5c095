#include "rball/monte_carlo.hpp"
#include "rball/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace rball {

namespace {

constexpr std::uint64_t kChunk = 16384;

std::uint64_t chunkCount(std::uint64_t samples) { return (samples + kChunk - 1) / kChunk; }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t sample, int lane) const
{
    std::uint64_t key = splitmix64(seed_ ^ 0x5851f42d4c957f2dULL);
    return splitmix64(key + sample * kLanes + static_cast<std::uint64_t>(lane));
}

double CounterRng::uniform(std::uint64_t sample, int lane) const
{
    return static_cast<double>(bits(sample, lane) >> 11) * 0x1.0p-53;
}

double CounterRng::uniformOpen(std::uint64_t sample, int lane) const
{
    return (static_cast<double>(bits(sample, lane) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t sample, int k) const
{
    double u1 = uniformOpen(sample, 2 * k);
    double u2 = uniform(sample, 2 * k + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec CounterRng::pointInBox(std::uint64_t sample, const Box& box) const
{
    Vec p(box.dim());
    for (int i = 0; i < box.dim(); ++i)
        p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * uniform(sample, i);
    return p;
}

Vec CounterRng::unitDirection(std::uint64_t sample, int dim) const
{
    Vec g(dim);
    for (int i = 0; i < dim; ++i)
        g[i] = normal(sample, i);
    return g / g.norm();
}

void parallelFor(std::size_t count, int workers, const std::function<void(std::size_t)>& body)
{
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr firstError;
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load())
                    return;
                try {
                    body(i);
                } catch (...) {
                    if (!failed.exchange(true))
                        firstError = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (firstError)
        std::rethrow_exception(firstError);
}

std::uint64_t countHits(std::uint64_t samples, int substreams,
                        const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& fn)
{
    const std::uint64_t chunks = chunkCount(samples);
    std::vector<std::uint64_t> partial(chunks, 0);
    parallelFor(chunks, substreams, [&](std::size_t c) {
        std::uint64_t begin = c * kChunk;
        std::uint64_t end = std::min(samples, begin + kChunk);
        partial[c] = fn(begin, end);
    });
    std::uint64_t total = 0;
    for (auto h : partial)
        total += h;
    return total;
}

double sumChunks(std::uint64_t samples, int substreams,
                 const std::function<double(std::uint64_t, std::uint64_t)>& fn)
{
    const std::uint64_t chunks = chunkCount(samples);
    std::vector<double> partial(chunks, 0.0);
    parallelFor(chunks, substreams, [&](std::size_t c) {
        std::uint64_t begin = c * kChunk;
        std::uint64_t end = std::min(samples, begin + kChunk);
        partial[c] = fn(begin, end);
    });
    double total = 0.0;
    for (double v : partial)
        total += v;
    return total;
}

void validate(const MCConfig& cfg)
{
    if (cfg.samples == 0)
        fail(ErrorKind::InvalidInput, "Monte Carlo sample count must be positive");
    if (cfg.substreams < 1)
        fail(ErrorKind::InvalidInput, "substream count must be at least 1");
}

McEstimate hitOrMiss(std::uint64_t hits, std::uint64_t samples, double boxVolume)
{
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {boxVolume * p, boxVolume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

McEstimate mcVolume(const std::function<bool(const Vec&)>& region, const Box& box, const MCConfig& cfg)
{
    validate(cfg);
    if (box.empty() || box.volume() == 0.0)
        return {0.0, 0.0};
    CounterRng rng(cfg.seed);
    auto hits = countHits(cfg.samples, cfg.substreams, [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t h = 0;
        for (std::uint64_t i = b; i < e; ++i)
            h += region(rng.pointInBox(i, box)) ? 1 : 0;
        return h;
    });
    return hitOrMiss(hits, cfg.samples, box.volume());
}

}  // namespace rball
