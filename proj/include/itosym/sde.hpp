#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "itosym/expr.hpp"

namespace itosym {

enum class NoiseTag { Additive, Multiplicative, Poisson, Simple, ExpAffine, General };

/// Diffusion coefficient of one driving Wiener process. The named kinds carry
/// their parameters; General wraps an arbitrary expression tree.
///
///   additive        sigma(x) = s
///   multiplicative  sigma(x) = s x
///   poisson         sigma(x) = s sqrt(x)
///   simple          sigma(x) = s x^m,  m not in {0, 1/2, 1}
///   exp_affine      sigma(x) = alpha e^{gamma x} + beta
class NoiseKind {
public:
    // s == 0 is tolerated for additive noise only: degenerate family instances
    // (e.g. the geometric-Brownian special case) switch one channel off.
    static NoiseKind additive(double s);
    static NoiseKind multiplicative(double s);
    static NoiseKind poisson(double s);
    static NoiseKind simple(double s, double m);
    static NoiseKind exp_affine(double alpha, double gamma, double beta);
    static NoiseKind general(ScalarFunction fn);

    NoiseTag tag() const { return tag_; }
    double s() const { return s_; }
    double m() const { return m_; }
    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }
    double beta() const { return beta_; }
    const ScalarFunction& fn() const { return fn_; }

    double value(double x) const;
    Jet2 jet(double x) const;

    /// Expression-tree form of the coefficient.
    ScalarFunction as_function() const;
    /// Expression-tree form of the x-derivative of the coefficient.
    ScalarFunction derivative_function() const;

    Interval natural_domain() const;

private:
    NoiseKind() = default;
    NoiseTag tag_ = NoiseTag::Additive;
    double s_ = 0.0, m_ = 0.0, alpha_ = 0.0, gamma_ = 0.0, beta_ = 0.0;
    ScalarFunction fn_;
};

/// Scalar autonomous Ito equation dx = f(x) dt + sum_k sigma_k(x) dw^k.
class ItoEquation {
public:
    ItoEquation(ScalarFunction drift, std::vector<NoiseKind> noises);
    ItoEquation(ScalarFunction drift, std::vector<NoiseKind> noises, Interval domain);

    const ScalarFunction& drift() const { return drift_; }
    const std::vector<NoiseKind>& noises() const { return noises_; }
    const Interval& domain() const { return domain_; }
    std::size_t noise_count() const { return noises_.size(); }

private:
    ScalarFunction drift_;
    std::vector<NoiseKind> noises_;
    Interval domain_;
};

/// Stratonovich drift b = f - (1/2) sum_k sigma_k sigma_k'.
double stratonovich_drift(const ItoEquation& eq, double x);

/// Derivative b'(x) of the Stratonovich drift.
double stratonovich_drift_dx(const ItoEquation& eq, double x);

/// Proportionality test on a sample grid: false when
/// |sigma(x) rho(x0) - sigma(x0) rho(x)| stays below tol across the grid.
bool functionally_independent(const NoiseKind& a, const NoiseKind& b, const Interval& window,
                              int points = 64, double tol = 1e-12);

/// A bounded sampling window inside an interval, used wherever a finite grid
/// has to represent an unbounded domain.
Interval sampling_window(const Interval& domain);

/// Result of rewriting the equation in the variable y = int dx / sigma_idx:
/// the chosen noise becomes additive with unit coefficient.
struct ReducedEquation {
    ItoEquation equation;
    std::function<double(double)> forward_map; // x -> y
    std::function<double(double)> inverse_map; // y -> x
    std::size_t normalized_index = 0;
};

ReducedEquation standard_form_reduce(const ItoEquation& eq, std::size_t idx);

} // namespace itosym
