#include "itosym/expr.hpp"

#include <algorithm>
#include <cmath>

namespace itosym {

double PowerNode::value(double x) const {
    const double b = base->value(x);
    if (exponent == 0.0) return 1.0;
    if (!is_integer_exponent(exponent) && b <= 0.0)
        throw DomainError("power: non-integer exponent requires positive base");
    if (b == 0.0 && exponent < 0.0) throw DomainError("power: negative power of zero");
    return std::pow(b, exponent);
}

double SumNode::value(double x) const {
    double acc = 0.0;
    for (const auto& t : terms) acc += t->value(x);
    return acc;
}

Jet2 SumNode::jet(double x) const {
    Jet2 acc = jet_const(0.0);
    for (const auto& t : terms) acc = acc + t->jet(x);
    return acc;
}

double ProductNode::value(double x) const {
    double acc = 1.0;
    for (const auto& f : factors) acc *= f->value(x);
    return acc;
}

Jet2 ProductNode::jet(double x) const {
    Jet2 acc = jet_const(1.0);
    for (const auto& f : factors) acc = acc * f->jet(x);
    return acc;
}

// Fritsch-Carlson monotone slopes: harmonic mean of adjacent secants where
// they share a sign, zero otherwise.
PchipNode::PchipNode(std::vector<double> xs_, std::vector<double> ys_)
    : xs(std::move(xs_)), ys(std::move(ys_)) {
    if (xs.size() < 2 || xs.size() != ys.size())
        throw InvalidParameter("pchip: need at least two knots with matching values");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw InvalidParameter("pchip: knots must increase");
    const std::size_t n = xs.size();
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        secant[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    slopes.resize(n);
    slopes.front() = secant.front();
    slopes.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0) {
            slopes[i] = 0.0;
        } else {
            const double h0 = xs[i] - xs[i - 1];
            const double h1 = xs[i + 1] - xs[i];
            const double wl = 2.0 * h1 + h0;
            const double wr = h1 + 2.0 * h0;
            slopes[i] = (wl + wr) / (wl / secant[i - 1] + wr / secant[i]);
        }
    }
}

Jet2 PchipNode::jet(double x) const {
    if (x < xs.front() || x > xs.back()) throw DomainError("pchip: outside knot range");
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (i + 1 >= xs.size()) i = xs.size() - 2;
    const double h = xs[i + 1] - xs[i];
    const double t = (x - xs[i]) / h;
    const double y0 = ys[i], y1 = ys[i + 1], m0 = slopes[i] * h, m1 = slopes[i + 1] * h;
    // Cubic Hermite basis and its derivatives in t.
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    const double v = h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
    const double d00 = 6.0 * t * (t - 1.0);
    const double d10 = (1.0 - t) * (1.0 - 3.0 * t);
    const double d01 = -d00;
    const double d11 = t * (3.0 * t - 2.0);
    const double dv = (d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1) / h;
    const double e00 = 12.0 * t - 6.0;
    const double e10 = 6.0 * t - 4.0;
    const double e01 = -e00;
    const double e11 = 6.0 * t - 2.0;
    const double ddv = (e00 * y0 + e10 * m0 + e01 * y1 + e11 * m1) / (h * h);
    return {v, dv, ddv};
}

bool depends_on_x(const ExprPtr& node) {
    switch (node->kind()) {
    case NodeKind::Constant: return false;
    case NodeKind::Var: return true;
    case NodeKind::Power: return depends_on_x(static_cast<const PowerNode&>(*node).base);
    case NodeKind::Exp: return depends_on_x(static_cast<const ExpNode&>(*node).arg);
    case NodeKind::Scale: return depends_on_x(static_cast<const ScaleNode&>(*node).arg);
    case NodeKind::Sum: {
        for (const auto& t : static_cast<const SumNode&>(*node).terms)
            if (depends_on_x(t)) return true;
        return false;
    }
    case NodeKind::Product: {
        for (const auto& f : static_cast<const ProductNode&>(*node).factors)
            if (depends_on_x(f)) return true;
        return false;
    }
    case NodeKind::Pchip: return true;
    }
    return true;
}

bool provably_positive(const ExprPtr& node) {
    switch (node->kind()) {
    case NodeKind::Constant: return static_cast<const ConstNode&>(*node).c > 0.0;
    case NodeKind::Var: return false;
    case NodeKind::Exp: return true;
    case NodeKind::Power: {
        const auto& p = static_cast<const PowerNode&>(*node);
        if (p.exponent == 0.0) return true;
        return provably_positive(p.base);
    }
    case NodeKind::Scale: {
        const auto& s = static_cast<const ScaleNode&>(*node);
        return s.a > 0.0 && provably_positive(s.arg);
    }
    case NodeKind::Sum: {
        const auto& terms = static_cast<const SumNode&>(*node).terms;
        if (terms.empty()) return false;
        return std::all_of(terms.begin(), terms.end(),
                           [](const ExprPtr& t) { return provably_positive(t); });
    }
    case NodeKind::Product: {
        const auto& factors = static_cast<const ProductNode&>(*node).factors;
        return std::all_of(factors.begin(), factors.end(),
                           [](const ExprPtr& f) { return provably_positive(f); });
    }
    case NodeKind::Pchip: {
        const auto& ys = static_cast<const PchipNode&>(*node).ys;
        return std::all_of(ys.begin(), ys.end(), [](double y) { return y > 0.0; });
    }
    }
    return false;
}

namespace {

void collect_domain(const ExprPtr& node, Interval& acc) {
    switch (node->kind()) {
    case NodeKind::Constant:
    case NodeKind::Var:
        return;
    case NodeKind::Power: {
        const auto& p = static_cast<const PowerNode&>(*node);
        const bool needs_positive_base = !is_integer_exponent(p.exponent) || p.exponent < 0.0;
        if (needs_positive_base && depends_on_x(p.base) && !provably_positive(p.base))
            acc = acc.intersect(Interval::positive());
        collect_domain(p.base, acc);
        return;
    }
    case NodeKind::Exp:
        collect_domain(static_cast<const ExpNode&>(*node).arg, acc);
        return;
    case NodeKind::Scale:
        collect_domain(static_cast<const ScaleNode&>(*node).arg, acc);
        return;
    case NodeKind::Sum:
        for (const auto& t : static_cast<const SumNode&>(*node).terms) collect_domain(t, acc);
        return;
    case NodeKind::Product:
        for (const auto& f : static_cast<const ProductNode&>(*node).factors) collect_domain(f, acc);
        return;
    case NodeKind::Pchip: {
        const auto& p = static_cast<const PchipNode&>(*node);
        acc = acc.intersect({p.xs.front(), p.xs.back()});
        return;
    }
    }
}

} // namespace

Interval natural_domain(const ExprPtr& root) {
    Interval acc = Interval::whole();
    collect_domain(root, acc);
    return acc;
}

ScalarFunction::ScalarFunction(ExprPtr root)
    : root_(std::move(root)), domain_(natural_domain(root_)) {}

ScalarFunction::ScalarFunction(ExprPtr root, Interval domain)
    : root_(std::move(root)), domain_(domain) {}

double ScalarFunction::operator()(double x) const {
    if (!domain_.contains(x)) throw DomainError("eval: x outside declared domain");
    return root_->value(x);
}

Jet2 ScalarFunction::jet(double x) const {
    if (!domain_.contains(x)) throw DomainError("eval_jet2: x outside declared domain");
    return root_->jet(x);
}

ScalarFunction constant(double c) { return ScalarFunction(std::make_shared<ConstNode>(c)); }

ScalarFunction identity() { return ScalarFunction(std::make_shared<VarNode>()); }

ScalarFunction power(const ScalarFunction& base, double exponent) {
    return ScalarFunction(std::make_shared<PowerNode>(base.root(), exponent));
}

ScalarFunction exp_of(const ScalarFunction& arg) {
    return ScalarFunction(std::make_shared<ExpNode>(arg.root()));
}

ScalarFunction sum(std::vector<ScalarFunction> terms) {
    std::vector<ExprPtr> roots;
    roots.reserve(terms.size());
    for (const auto& t : terms) roots.push_back(t.root());
    return ScalarFunction(std::make_shared<SumNode>(std::move(roots)));
}

ScalarFunction product(std::vector<ScalarFunction> factors) {
    std::vector<ExprPtr> roots;
    roots.reserve(factors.size());
    for (const auto& f : factors) roots.push_back(f.root());
    return ScalarFunction(std::make_shared<ProductNode>(std::move(roots)));
}

ScalarFunction scale(double a, const ScalarFunction& arg) {
    return ScalarFunction(std::make_shared<ScaleNode>(a, arg.root()));
}

ScalarFunction affine(double a, double b) {
    if (b == 0.0) return constant(a);
    return sum({constant(a), scale(b, identity())});
}

ScalarFunction monomial(double s, double m) {
    if (m == 0.0) return constant(s);
    return scale(s, power(identity(), m));
}

ScalarFunction operator+(const ScalarFunction& a, const ScalarFunction& b) { return sum({a, b}); }

ScalarFunction operator-(const ScalarFunction& a, const ScalarFunction& b) {
    return sum({a, scale(-1.0, b)});
}

ScalarFunction operator*(const ScalarFunction& a, const ScalarFunction& b) {
    return product({a, b});
}

ScalarFunction operator*(double c, const ScalarFunction& a) { return scale(c, a); }

ScalarFunction operator+(double c, const ScalarFunction& a) { return sum({constant(c), a}); }

namespace {

ExprPtr substitute(const ExprPtr& node, const ExprPtr& replacement) {
    switch (node->kind()) {
    case NodeKind::Constant: return node;
    case NodeKind::Var: return replacement;
    case NodeKind::Power: {
        const auto& p = static_cast<const PowerNode&>(*node);
        return std::make_shared<PowerNode>(substitute(p.base, replacement), p.exponent);
    }
    case NodeKind::Exp: {
        const auto& e = static_cast<const ExpNode&>(*node);
        return std::make_shared<ExpNode>(substitute(e.arg, replacement));
    }
    case NodeKind::Scale: {
        const auto& s = static_cast<const ScaleNode&>(*node);
        return std::make_shared<ScaleNode>(s.a, substitute(s.arg, replacement));
    }
    case NodeKind::Sum: {
        const auto& terms = static_cast<const SumNode&>(*node).terms;
        std::vector<ExprPtr> out;
        out.reserve(terms.size());
        for (const auto& t : terms) out.push_back(substitute(t, replacement));
        return std::make_shared<SumNode>(std::move(out));
    }
    case NodeKind::Product: {
        const auto& factors = static_cast<const ProductNode&>(*node).factors;
        std::vector<ExprPtr> out;
        out.reserve(factors.size());
        for (const auto& f : factors) out.push_back(substitute(f, replacement));
        return std::make_shared<ProductNode>(std::move(out));
    }
    case NodeKind::Pchip: return node;
    }
    return node;
}

} // namespace

ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner) {
    return ScalarFunction(substitute(outer.root(), inner.root()));
}

} // namespace itosym
