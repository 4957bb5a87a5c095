#pragma once

#include "rball/types.hpp"

#include <cstdint>
#include <functional>

namespace rball {

struct MCConfig {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 42;
    int substreams = 1;
};

struct McEstimate {
    double value = 0.0;
    double standardError = 0.0;
};

// Stateless generator: every draw is a pure function of (seed, sample, lane).
class CounterRng {
public:
    static constexpr int kLanes = 16;

    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t sample, int lane) const;
    double uniform(std::uint64_t sample, int lane) const;  // in [0,1)
    double uniformOpen(std::uint64_t sample, int lane) const;  // in (0,1)
    // Standard normals from lanes (2k, 2k+1), Box-Muller.
    double normal(std::uint64_t sample, int k) const;
    Vec pointInBox(std::uint64_t sample, const Box& box) const;
    Vec unitDirection(std::uint64_t sample, int dim) const;

private:
    std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic chunked reduction of per-sample integer counts.
// fn(begin, end) returns the number of hits in [begin, end).
std::uint64_t countHits(std::uint64_t samples, int substreams,
                        const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& fn);

// Same, for a real-valued per-chunk sum; chunk sums are combined in chunk order.
double sumChunks(std::uint64_t samples, int substreams,
                 const std::function<double(std::uint64_t, std::uint64_t)>& fn);

McEstimate mcVolume(const std::function<bool(const Vec&)>& region, const Box& box, const MCConfig& cfg);

McEstimate hitOrMiss(std::uint64_t hits, std::uint64_t samples, double boxVolume);

void validate(const MCConfig& cfg);

// Runs body(i) for i in [0, count) over `workers` threads; each index is visited once.
void parallelFor(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace rball
