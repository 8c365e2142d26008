#include "optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <memory>

#include "eprsteer/errors.hpp"

namespace eprsteer::detail {

namespace {

double trampoline(const gsl_vector* v, void* params) {
    const auto& f = *static_cast<const Objective*>(params);
    return f(std::span<const double>(v->data, v->size));
}

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> start, double step, double size_tol,
                           int max_iter) {
    static const auto previous_handler = gsl_set_error_handler_off();
    (void)previous_handler;
    const std::size_t dim = start.size();
    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(dim));
    std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(dim));
    for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x.get(), i, start[i]);
    gsl_vector_set_all(steps.get(), step);

    gsl_multimin_function fn;
    fn.n = dim;
    fn.f = &trampoline;
    fn.params = const_cast<Objective*>(&f);

    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
    if (gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), steps.get()) != GSL_SUCCESS)
        throw InternalError("simplex minimizer failed to initialize");

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), size_tol) == GSL_SUCCESS) break;
    }

    MinimizeResult out;
    out.x.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) out.x[i] = gsl_vector_get(m->x, i);
    out.value = m->fval;
    out.iterations = iter;
    return out;
}

}  // namespace eprsteer::detail
