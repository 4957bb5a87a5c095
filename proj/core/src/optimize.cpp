#include "rball/optimize.hpp"
#include "rball/error.hpp"

#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cstdint>
#include <memory>

namespace rball {

namespace {

struct Thunk {
    const std::function<double(const std::vector<double>&)>* f;
    std::vector<double> buf;
};

double trampoline(const gsl_vector* v, void* params)
{
    auto* t = static_cast<Thunk*>(params);
    for (size_t i = 0; i < v->size; ++i)
        t->buf[i] = gsl_vector_get(v, i);
    return (*t->f)(t->buf);
}

}  // namespace

MinimizeResult nelderMead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, double sizeTol, int maxIter)
{
    const size_t n = x0.size();
    MinimizeResult out;
    if (n == 0) {
        out.x = x0;
        out.value = f(x0);
        out.converged = true;
        return out;
    }
    gsl_set_error_handler_off();
    Thunk thunk{&f, std::vector<double>(n)};
    gsl_multimin_function fn{&trampoline, n, &thunk};

    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(n), gsl_vector_free);
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> ss(gsl_vector_alloc(n), gsl_vector_free);
    for (size_t i = 0; i < n; ++i)
        gsl_vector_set(x.get(), i, x0[i]);
    gsl_vector_set_all(ss.get(), step);

    std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), gsl_multimin_fminimizer_free);
    if (gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get()) != GSL_SUCCESS)
        fail(ErrorKind::NumericDomain, "simplex initialisation failed");

    int status = GSL_CONTINUE;
    int iter = 0;
    while (status == GSL_CONTINUE && iter < maxIter) {
        ++iter;
        if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS)
            break;
        status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), sizeTol);
    }
    out.x.resize(n);
    for (size_t i = 0; i < n; ++i)
        out.x[i] = gsl_vector_get(s->x, i);
    out.value = s->fval;
    out.iterations = iter;
    out.converged = status == GSL_SUCCESS;
    return out;
}

std::pair<double, double> brentMinimize(const std::function<double(double)>& f, double a, double b, int bits)
{
    std::uintmax_t it = 200;
    return boost::math::tools::brent_find_minima(f, a, b, bits, it);
}

}  // namespace rball
