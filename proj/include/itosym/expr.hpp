#pragma once

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "itosym/errors.hpp"
#include "itosym/jet.hpp"

namespace itosym {

/// Open real interval (lo, hi). Infinite endpoints allowed.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const { return x > lo && x < hi; }
    bool empty() const { return !(lo < hi); }

    Interval intersect(const Interval& other) const {
        return {lo > other.lo ? lo : other.lo, hi < other.hi ? hi : other.hi};
    }

    static Interval whole() { return {}; }
    static Interval positive() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

enum class NodeKind { Constant, Var, Power, Exp, Sum, Product, Scale, Pchip };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression-tree node over a single variable x.
class Expr {
public:
    virtual ~Expr() = default;
    virtual NodeKind kind() const = 0;
    virtual double value(double x) const = 0;
    virtual Jet2 jet(double x) const = 0;
};

struct ConstNode final : Expr {
    double c;
    explicit ConstNode(double c_) : c(c_) {}
    NodeKind kind() const override { return NodeKind::Constant; }
    double value(double) const override { return c; }
    Jet2 jet(double) const override { return jet_const(c); }
};

struct VarNode final : Expr {
    NodeKind kind() const override { return NodeKind::Var; }
    double value(double x) const override { return x; }
    Jet2 jet(double x) const override { return jet_var(x); }
};

struct PowerNode final : Expr {
    ExprPtr base;
    double exponent;
    PowerNode(ExprPtr b, double p) : base(std::move(b)), exponent(p) {}
    NodeKind kind() const override { return NodeKind::Power; }
    double value(double x) const override;
    Jet2 jet(double x) const override { return jet_pow(base->jet(x), exponent); }
};

struct ExpNode final : Expr {
    ExprPtr arg;
    explicit ExpNode(ExprPtr a) : arg(std::move(a)) {}
    NodeKind kind() const override { return NodeKind::Exp; }
    double value(double x) const override { return std::exp(arg->value(x)); }
    Jet2 jet(double x) const override { return jet_exp(arg->jet(x)); }
};

struct SumNode final : Expr {
    std::vector<ExprPtr> terms;
    explicit SumNode(std::vector<ExprPtr> t) : terms(std::move(t)) {}
    NodeKind kind() const override { return NodeKind::Sum; }
    double value(double x) const override;
    Jet2 jet(double x) const override;
};

struct ProductNode final : Expr {
    std::vector<ExprPtr> factors;
    explicit ProductNode(std::vector<ExprPtr> f) : factors(std::move(f)) {}
    NodeKind kind() const override { return NodeKind::Product; }
    double value(double x) const override;
    Jet2 jet(double x) const override;
};

struct ScaleNode final : Expr {
    double a;
    ExprPtr arg;
    ScaleNode(double a_, ExprPtr e) : a(a_), arg(std::move(e)) {}
    NodeKind kind() const override { return NodeKind::Scale; }
    double value(double x) const override { return a * arg->value(x); }
    Jet2 jet(double x) const override { return a * arg->jet(x); }
};

/// Monotone piecewise-cubic interpolant (Fritsch-Carlson slopes). Used by the
/// numeric fallback of the standard-form reduction; not part of the closed-form
/// node set and only emitted internally.
struct PchipNode final : Expr {
    std::vector<double> xs, ys, slopes;
    PchipNode(std::vector<double> xs_, std::vector<double> ys_);
    NodeKind kind() const override { return NodeKind::Pchip; }
    double value(double x) const override { return jet(x).v; }
    Jet2 jet(double x) const override;
};

/// A real function of one variable: expression tree plus a declared open
/// domain. Value semantics, cheap to copy (nodes are shared).
class ScalarFunction {
public:
    ScalarFunction() : ScalarFunction(std::make_shared<ConstNode>(0.0)) {}
    explicit ScalarFunction(ExprPtr root);
    ScalarFunction(ExprPtr root, Interval domain);

    /// Evaluate at x. Throws DomainError outside the declared domain.
    double operator()(double x) const;

    /// Value with first and second derivative at x, exact to rounding.
    Jet2 jet(double x) const;

    const Interval& domain() const { return domain_; }
    const ExprPtr& root() const { return root_; }

    ScalarFunction with_domain(Interval d) const { return {root_, d}; }

private:
    ExprPtr root_;
    Interval domain_;
};

/// Natural domain implied by the tree: (0, inf) when some power node with a
/// non-integer or negative exponent has a base that depends on x and is not
/// provably positive; the whole line otherwise. Pchip nodes restrict to their
/// knot range.
Interval natural_domain(const ExprPtr& root);

/// True when the subtree is positive for every x (sums/products/exp of
/// provably positive pieces). Conservative.
bool provably_positive(const ExprPtr& node);

bool depends_on_x(const ExprPtr& node);

// -- builders -----------------------------------------------------------

ScalarFunction constant(double c);
ScalarFunction identity();
ScalarFunction power(const ScalarFunction& base, double exponent);
ScalarFunction exp_of(const ScalarFunction& arg);
ScalarFunction sum(std::vector<ScalarFunction> terms);
ScalarFunction product(std::vector<ScalarFunction> factors);
ScalarFunction scale(double a, const ScalarFunction& arg);

/// a + b x
ScalarFunction affine(double a, double b);
/// s x^m
ScalarFunction monomial(double s, double m);

ScalarFunction operator+(const ScalarFunction& a, const ScalarFunction& b);
ScalarFunction operator-(const ScalarFunction& a, const ScalarFunction& b);
ScalarFunction operator*(const ScalarFunction& a, const ScalarFunction& b);
ScalarFunction operator*(double c, const ScalarFunction& a);
ScalarFunction operator+(double c, const ScalarFunction& a);

/// outer(inner(x)): replaces every variable node of outer by inner's tree.
/// The result's domain must be supplied by the caller when inner's image is
/// known; by default the natural domain of the composed tree is used.
ScalarFunction compose(const ScalarFunction& outer, const ScalarFunction& inner);

} // namespace itosym
