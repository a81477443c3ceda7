#include "itosym/sde.hpp"

#include <algorithm>
#include <cmath>

#include "itosym/quadrature.hpp"

namespace itosym {

NoiseKind NoiseKind::additive(double s) {
    NoiseKind n;
    n.tag_ = NoiseTag::Additive;
    n.s_ = s;
    return n;
}

NoiseKind NoiseKind::multiplicative(double s) {
    if (s == 0.0) throw InvalidParameter("multiplicative noise: s must be nonzero");
    NoiseKind n;
    n.tag_ = NoiseTag::Multiplicative;
    n.s_ = s;
    return n;
}

NoiseKind NoiseKind::poisson(double s) {
    if (s == 0.0) throw InvalidParameter("poisson noise: s must be nonzero");
    NoiseKind n;
    n.tag_ = NoiseTag::Poisson;
    n.s_ = s;
    return n;
}

NoiseKind NoiseKind::simple(double s, double m) {
    if (s == 0.0) throw InvalidParameter("simple noise: s must be nonzero");
    if (m == 0.0 || m == 0.5 || m == 1.0)
        throw InvalidParameter("simple noise: m in {0, 1/2, 1} must use the dedicated kinds");
    NoiseKind n;
    n.tag_ = NoiseTag::Simple;
    n.s_ = s;
    n.m_ = m;
    return n;
}

NoiseKind NoiseKind::exp_affine(double alpha, double gamma, double beta) {
    if (alpha == 0.0 || gamma == 0.0)
        throw InvalidParameter("exp-affine noise: alpha and gamma must be nonzero");
    NoiseKind n;
    n.tag_ = NoiseTag::ExpAffine;
    n.alpha_ = alpha;
    n.gamma_ = gamma;
    n.beta_ = beta;
    return n;
}

NoiseKind NoiseKind::general(ScalarFunction fn) {
    NoiseKind n;
    n.tag_ = NoiseTag::General;
    n.fn_ = std::move(fn);
    return n;
}

double NoiseKind::value(double x) const {
    switch (tag_) {
    case NoiseTag::Additive: return s_;
    case NoiseTag::Multiplicative: return s_ * x;
    case NoiseTag::Poisson:
        if (x <= 0.0) throw DomainError("poisson noise: x must be positive");
        return s_ * std::sqrt(x);
    case NoiseTag::Simple: return jet_pow(jet_var(x), m_).v * s_;
    case NoiseTag::ExpAffine: return alpha_ * std::exp(gamma_ * x) + beta_;
    case NoiseTag::General: return fn_(x);
    }
    return 0.0;
}

Jet2 NoiseKind::jet(double x) const {
    switch (tag_) {
    case NoiseTag::Additive: return jet_const(s_);
    case NoiseTag::Multiplicative: return {s_ * x, s_, 0.0};
    case NoiseTag::Poisson: {
        if (x <= 0.0) throw DomainError("poisson noise: x must be positive");
        const double r = std::sqrt(x);
        return {s_ * r, 0.5 * s_ / r, -0.25 * s_ / (x * r)};
    }
    case NoiseTag::Simple: return s_ * jet_pow(jet_var(x), m_);
    case NoiseTag::ExpAffine: {
        const double e = alpha_ * std::exp(gamma_ * x);
        return {e + beta_, gamma_ * e, gamma_ * gamma_ * e};
    }
    case NoiseTag::General: return fn_.jet(x);
    }
    return {};
}

ScalarFunction NoiseKind::as_function() const {
    switch (tag_) {
    case NoiseTag::Additive: return constant(s_);
    case NoiseTag::Multiplicative: return scale(s_, identity());
    case NoiseTag::Poisson: return monomial(s_, 0.5);
    case NoiseTag::Simple: return monomial(s_, m_);
    case NoiseTag::ExpAffine:
        return scale(alpha_, exp_of(scale(gamma_, identity()))) + constant(beta_);
    case NoiseTag::General: return fn_;
    }
    return constant(0.0);
}

ScalarFunction NoiseKind::derivative_function() const {
    switch (tag_) {
    case NoiseTag::Additive: return constant(0.0);
    case NoiseTag::Multiplicative: return constant(s_);
    case NoiseTag::Poisson: return monomial(0.5 * s_, -0.5);
    case NoiseTag::Simple: return monomial(s_ * m_, m_ - 1.0);
    case NoiseTag::ExpAffine:
        return scale(alpha_ * gamma_, exp_of(scale(gamma_, identity())));
    case NoiseTag::General:
        throw InvalidParameter("general noise has no closed-form derivative tree");
    }
    return constant(0.0);
}

Interval NoiseKind::natural_domain() const {
    switch (tag_) {
    case NoiseTag::Poisson: return Interval::positive();
    case NoiseTag::Simple:
        return (is_integer_exponent(m_) && m_ > 0.0) ? Interval::whole() : Interval::positive();
    case NoiseTag::General: return fn_.domain();
    default: return Interval::whole();
    }
}

ItoEquation::ItoEquation(ScalarFunction drift, std::vector<NoiseKind> noises)
    : drift_(std::move(drift)), noises_(std::move(noises)) {
    if (noises_.empty()) throw InvalidParameter("equation needs at least one noise");
    domain_ = drift_.domain();
    for (const auto& n : noises_) domain_ = domain_.intersect(n.natural_domain());
    if (domain_.empty()) throw InvalidParameter("equation domain is empty");
}

ItoEquation::ItoEquation(ScalarFunction drift, std::vector<NoiseKind> noises, Interval domain)
    : drift_(std::move(drift)), noises_(std::move(noises)), domain_(domain) {
    if (noises_.empty()) throw InvalidParameter("equation needs at least one noise");
    if (domain_.empty()) throw InvalidParameter("equation domain is empty");
}

double stratonovich_drift(const ItoEquation& eq, double x) {
    if (!eq.domain().contains(x)) throw DomainError("stratonovich_drift: x outside domain");
    double b = eq.drift()(x);
    for (const auto& n : eq.noises()) {
        const Jet2 s = n.jet(x);
        b -= 0.5 * s.v * s.d1;
    }
    return b;
}

double stratonovich_drift_dx(const ItoEquation& eq, double x) {
    if (!eq.domain().contains(x)) throw DomainError("stratonovich_drift_dx: x outside domain");
    double db = eq.drift().jet(x).d1;
    for (const auto& n : eq.noises()) {
        const Jet2 s = n.jet(x);
        db -= 0.5 * (s.d1 * s.d1 + s.v * s.d2);
    }
    return db;
}

Interval sampling_window(const Interval& domain) {
    const bool lo_inf = std::isinf(domain.lo);
    const bool hi_inf = std::isinf(domain.hi);
    if (lo_inf && hi_inf) return {-4.0, 4.0};
    if (!lo_inf && hi_inf) {
        const double w = 4.0;
        return {domain.lo + w / 16.0, domain.lo + w};
    }
    if (lo_inf && !hi_inf) {
        const double w = 4.0;
        return {domain.hi - w, domain.hi - w / 16.0};
    }
    const double inset = (domain.hi - domain.lo) / 64.0;
    return {domain.lo + inset, domain.hi - inset};
}

bool functionally_independent(const NoiseKind& a, const NoiseKind& b, const Interval& window,
                              int points, double tol) {
    if (points < 2) throw InvalidParameter("functionally_independent: need at least 2 points");
    const double x0 = window.lo + 0.5 * (window.hi - window.lo);
    const double a0 = a.value(x0), b0 = b.value(x0);
    for (int i = 0; i < points; ++i) {
        const double x =
            window.lo + (window.hi - window.lo) * (i + 0.5) / static_cast<double>(points);
        if (std::abs(a.value(x) * b0 - a0 * b.value(x)) >= tol) return true;
    }
    return false;
}

namespace {

// Piece of the reduction that depends on the chosen noise: the antiderivative
// y = int dx/sigma (forward), its inverse, and when available an expression
// tree for the inverse so the reduced coefficients stay in closed form.
struct ReductionMap {
    std::function<double(double)> forward;
    std::function<double(double)> inverse;
    bool has_inverse_tree = false;
    ScalarFunction inverse_tree; // valid when has_inverse_tree
};

ReductionMap closed_form_map(const NoiseKind& noise, const Interval& domain) {
    ReductionMap map;
    switch (noise.tag()) {
    case NoiseTag::Additive: {
        const double s = noise.s();
        map.forward = [s](double x) { return x / s; };
        map.inverse = [s](double y) { return s * y; };
        map.has_inverse_tree = true;
        map.inverse_tree = scale(s, identity());
        return map;
    }
    case NoiseTag::Multiplicative: {
        const double s = noise.s();
        // Negative-axis branch uses log|x|; the sign is restored by the tree.
        const double sign = (domain.hi <= 0.0) ? -1.0 : 1.0;
        map.forward = [s, sign](double x) { return std::log(sign * x) / s; };
        map.inverse = [s, sign](double y) { return sign * std::exp(s * y); };
        map.has_inverse_tree = true;
        map.inverse_tree = scale(sign, exp_of(scale(s, identity())));
        return map;
    }
    case NoiseTag::Poisson: {
        const double s = noise.s();
        map.forward = [s](double x) { return 2.0 * std::sqrt(x) / s; };
        map.inverse = [s](double y) { return 0.25 * s * s * y * y; };
        map.has_inverse_tree = true;
        map.inverse_tree = scale(0.25 * s * s, power(identity(), 2.0));
        return map;
    }
    case NoiseTag::Simple: {
        const double s = noise.s();
        const double m = noise.m();
        const double c = s * (1.0 - m);
        map.forward = [s, m, c](double x) { return std::pow(x, 1.0 - m) / c; };
        map.inverse = [m, c](double y) { return std::pow(c * y, 1.0 / (1.0 - m)); };
        map.has_inverse_tree = true;
        map.inverse_tree = power(scale(c, identity()), 1.0 / (1.0 - m));
        return map;
    }
    case NoiseTag::ExpAffine: {
        const double a = noise.alpha(), g = noise.gamma(), b = noise.beta();
        if (b == 0.0) {
            map.forward = [a, g](double x) { return -std::exp(-g * x) / (a * g); };
            map.inverse = [a, g](double y) { return -std::log(-a * g * y) / g; };
            map.has_inverse_tree = false;
            return map;
        }
        map.forward = [a, g, b](double x) {
            return (x - std::log(std::abs(a * std::exp(g * x) + b)) / g) / b;
        };
        // Monotone Newton with bisection fallback, seeded from the window.
        auto fwd = map.forward;
        map.inverse = [noise, fwd, domain](double y) {
            const Interval win = sampling_window(domain);
            double lo = win.lo, hi = win.hi;
            double flo = fwd(lo) - y, fhi = fwd(hi) - y;
            for (int grow = 0; grow < 60 && flo * fhi > 0.0; ++grow) {
                const double w = hi - lo;
                if (std::isfinite(domain.lo) && lo - w < domain.lo) {
                    hi += w;
                } else if (std::isfinite(domain.hi) && hi + w > domain.hi) {
                    lo -= w;
                } else {
                    lo -= 0.5 * w;
                    hi += 0.5 * w;
                }
                flo = fwd(lo) - y;
                fhi = fwd(hi) - y;
            }
            if (flo * fhi > 0.0) throw DomainError("inverse map: y outside image");
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = fwd(mid) - y;
                if (std::abs(fm) < 1e-15 || hi - lo < 1e-15 * (1.0 + std::abs(mid))) return mid;
                if (flo * fm <= 0.0) {
                    hi = mid;
                    fhi = fm;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            return 0.5 * (lo + hi);
        };
        map.has_inverse_tree = false;
        return map;
    }
    case NoiseTag::General: {
        const Interval win = sampling_window(domain);
        const double anchor = 0.5 * (win.lo + win.hi);
        auto fn = noise;
        map.forward = [fn, anchor](double x) {
            return integrate([&fn](double xi) { return 1.0 / fn.value(xi); }, anchor, x);
        };
        map.has_inverse_tree = false;
        map.inverse = {}; // installed by the caller from the tabulated map
        return map;
    }
    }
    throw InvalidParameter("unreachable noise tag");
}

} // namespace

ReducedEquation standard_form_reduce(const ItoEquation& eq, std::size_t idx) {
    if (idx >= eq.noise_count()) throw InvalidParameter("standard_form_reduce: bad noise index");
    const NoiseKind& chosen = eq.noises()[idx];
    const Interval dom = eq.domain();
    const Interval win = sampling_window(dom);

    // sigma_idx must keep one sign across the domain sample.
    {
        const int n = 129;
        double first = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = win.lo + (win.hi - win.lo) * (i + 0.5) / n;
            const double v = chosen.value(x);
            if (v == 0.0 || !std::isfinite(v))
                throw SingularNoise("standard_form_reduce: chosen noise vanishes in domain");
            if (i == 0)
                first = v;
            else if (v * first < 0.0)
                throw SingularNoise("standard_form_reduce: chosen noise changes sign in domain");
        }
    }

    ReductionMap map = closed_form_map(chosen, dom);

    // Image of the domain under the (monotone) forward map. For the closed
    // forms IEEE limit arithmetic handles infinite endpoints; the numeric
    // fallback is restricted to the sampling window.
    Interval y_dom;
    ScalarFunction x_of_y;
    if (map.has_inverse_tree) {
        const double ya = map.forward(dom.lo);
        const double yb = map.forward(dom.hi);
        y_dom = {std::min(ya, yb), std::max(ya, yb)};
        if (std::isnan(y_dom.lo)) y_dom.lo = -std::numeric_limits<double>::infinity();
        if (std::isnan(y_dom.hi)) y_dom.hi = std::numeric_limits<double>::infinity();
        x_of_y = map.inverse_tree.with_domain(y_dom);
    } else {
        // Tabulate x -> y over the window and interpolate the inverse.
        const int n = 257;
        std::vector<double> xs(n), ys(n);
        for (int i = 0; i < n; ++i) {
            xs[i] = win.lo + (win.hi - win.lo) * i / static_cast<double>(n - 1);
            ys[i] = map.forward(xs[i]);
        }
        const bool increasing = ys.back() > ys.front();
        if (!increasing) {
            std::reverse(xs.begin(), xs.end());
            std::reverse(ys.begin(), ys.end());
        }
        y_dom = {ys.front(), ys.back()};
        x_of_y = ScalarFunction(std::make_shared<PchipNode>(ys, xs), y_dom);
        if (!map.inverse) {
            auto tree = x_of_y;
            map.inverse = [tree](double y) { return tree(y); };
        }
    }

    // ftilde(y) = [ f/sigma - (1/2) (sum_k sigma_k^2) sigma' / sigma^2 ] (x(y))
    ScalarFunction sigma_fn = chosen.as_function();
    std::vector<ScalarFunction> sq_terms;
    for (const auto& n : eq.noises()) sq_terms.push_back(power(n.as_function(), 2.0));
    ScalarFunction sum_sq = sum(std::move(sq_terms));
    ScalarFunction ftilde_x;
    if (map.has_inverse_tree) {
        ftilde_x = eq.drift() * power(sigma_fn, -1.0) +
                   scale(-0.5, sum_sq * chosen.derivative_function() * power(sigma_fn, -2.0));
    } else {
        // Numeric fallback: tabulate ftilde on the window.
        const int n = 257;
        std::vector<double> ys(n), fs(n);
        for (int i = 0; i < n; ++i) {
            const double x = win.lo + (win.hi - win.lo) * i / static_cast<double>(n - 1);
            const Jet2 sj = chosen.jet(x);
            double ssq = 0.0;
            for (const auto& nk : eq.noises()) {
                const double v = nk.value(x);
                ssq += v * v;
            }
            ys[i] = map.forward(x);
            fs[i] = eq.drift()(x) / sj.v - 0.5 * ssq * sj.d1 / (sj.v * sj.v);
        }
        if (ys.back() < ys.front()) {
            std::reverse(ys.begin(), ys.end());
            std::reverse(fs.begin(), fs.end());
        }
        ScalarFunction ftab(std::make_shared<PchipNode>(ys, fs), y_dom);
        std::vector<NoiseKind> new_noises;
        for (std::size_t k = 0; k < eq.noise_count(); ++k) {
            if (k == idx) {
                new_noises.push_back(NoiseKind::additive(1.0));
                continue;
            }
            std::vector<double> ys2(n), ss(n);
            for (int i = 0; i < n; ++i) {
                const double x = win.lo + (win.hi - win.lo) * i / static_cast<double>(n - 1);
                ys2[i] = map.forward(x);
                ss[i] = eq.noises()[k].value(x) / chosen.value(x);
            }
            if (ys2.back() < ys2.front()) {
                std::reverse(ys2.begin(), ys2.end());
                std::reverse(ss.begin(), ss.end());
            }
            new_noises.push_back(
                NoiseKind::general(ScalarFunction(std::make_shared<PchipNode>(ys2, ss), y_dom)));
        }
        ItoEquation reduced(ftab, std::move(new_noises), y_dom);
        return {std::move(reduced), map.forward, map.inverse, idx};
    }

    ScalarFunction ftilde = compose(ftilde_x, x_of_y).with_domain(y_dom);

    std::vector<NoiseKind> new_noises;
    for (std::size_t k = 0; k < eq.noise_count(); ++k) {
        if (k == idx) {
            new_noises.push_back(NoiseKind::additive(1.0));
            continue;
        }
        ScalarFunction sk_x = eq.noises()[k].as_function() * power(sigma_fn, -1.0);
        new_noises.push_back(NoiseKind::general(compose(sk_x, x_of_y).with_domain(y_dom)));
    }

    ItoEquation reduced(ftilde, std::move(new_noises), y_dom);
    return {std::move(reduced), map.forward, map.inverse, idx};
}

} // namespace itosym
