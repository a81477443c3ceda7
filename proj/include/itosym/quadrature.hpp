#pragma once

#include <functional>

#include "itosym/errors.hpp"

namespace itosym {

/// Adaptive Gauss-Kronrod (15/7) quadrature of f over [a, b] (a > b allowed,
/// with the usual sign). Throws QuadratureFailure when the error estimate
/// cannot be brought below max(abs_tol, rel_tol * |integral|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-11, double abs_tol = 1e-13);

} // namespace itosym
