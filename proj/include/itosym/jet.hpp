#pragma once

#include <cmath>

#include "itosym/errors.hpp"

namespace itosym {

/// Second-order forward-mode jet: value and first two derivatives with
/// respect to a single scalar variable. Arithmetic follows the Leibniz /
/// Faa di Bruno rules truncated at order two.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

constexpr Jet2 jet_const(double c) { return {c, 0.0, 0.0}; }
constexpr Jet2 jet_var(double x) { return {x, 1.0, 0.0}; }

constexpr Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}

constexpr Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}

constexpr Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }

constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

constexpr Jet2 operator*(double c, const Jet2& a) { return {c * a.v, c * a.d1, c * a.d2}; }
constexpr Jet2 operator*(const Jet2& a, double c) { return c * a; }
constexpr Jet2 operator+(const Jet2& a, double c) { return {a.v + c, a.d1, a.d2}; }
constexpr Jet2 operator+(double c, const Jet2& a) { return a + c; }
constexpr Jet2 operator-(const Jet2& a, double c) { return {a.v - c, a.d1, a.d2}; }
constexpr Jet2 operator-(double c, const Jet2& a) { return {c - a.v, -a.d1, -a.d2}; }

/// Chain rule for a univariate outer function with known derivatives at u.v.
constexpr Jet2 jet_compose(double f, double df, double ddf, const Jet2& u) {
    return {f, df * u.d1, ddf * u.d1 * u.d1 + df * u.d2};
}

inline Jet2 jet_exp(const Jet2& u) {
    const double e = std::exp(u.v);
    return jet_compose(e, e, e, u);
}

inline Jet2 jet_recip(const Jet2& u) {
    if (u.v == 0.0) throw DomainError("jet_recip: division by zero");
    const double r = 1.0 / u.v;
    return jet_compose(r, -r * r, 2.0 * r * r * r, u);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * jet_recip(b); }
constexpr Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }

inline bool is_integer_exponent(double p) {
    return p == std::nearbyint(p) && std::abs(p) < 1e9;
}

/// u^p. Integer exponents are valid for any base (except negative powers of
/// zero); non-integer exponents require u.v > 0.
inline Jet2 jet_pow(const Jet2& u, double p) {
    if (p == 0.0) return jet_const(1.0);
    if (p == 1.0) return u;
    if (is_integer_exponent(p)) {
        if (u.v == 0.0 && p < 0.0) throw DomainError("jet_pow: negative power of zero");
        const double f = std::pow(u.v, p);
        const double df = (u.v == 0.0) ? (p == 1.0 ? 1.0 : 0.0) : p * f / u.v;
        const double ddf = (u.v == 0.0) ? (p == 2.0 ? 2.0 : 0.0) : p * (p - 1.0) * f / (u.v * u.v);
        return jet_compose(f, df, ddf, u);
    }
    if (u.v <= 0.0) throw DomainError("jet_pow: non-integer power of non-positive base");
    const double f = std::pow(u.v, p);
    return jet_compose(f, p * f / u.v, p * (p - 1.0) * f / (u.v * u.v), u);
}

inline Jet2 jet_sqrt(const Jet2& u) { return jet_pow(u, 0.5); }

} // namespace itosym
