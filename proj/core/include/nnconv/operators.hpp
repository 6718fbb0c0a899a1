#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nnconv/quadrature.hpp"
#include "nnconv/target_function.hpp"

namespace nnconv {

enum class OperatorKind { direct, kantorovich, quadrature };

const char* to_string(OperatorKind kind);

/// Which operator to apply: the kind, the scale n, and for the quadrature
/// kind the convex weight vector (w_1..w_r).
struct OperatorSpec {
    OperatorKind kind;
    int n;
    std::vector<double> weights;  // quadrature kind only

    OperatorSpec(OperatorKind kind, int n);
    OperatorSpec(int n, std::vector<double> weights);  // quadrature kind

    /// Uniform-weight quadrature spec with r sample offsets.
    static OperatorSpec uniform_quadrature(int n, int r);
};

/// Ordered operator chain, applied innermost-first. When tagged monotone the
/// scales must be nondecreasing (the hypothesis of the summed iterated
/// bound). eval_budget caps the estimated integrand-evaluation count of a
/// lazy chain evaluation; exceeding it raises BudgetError up front.
struct IterationPlan {
    std::vector<OperatorSpec> chain;
    bool monotone = false;
    double eval_budget = 1e9;

    explicit IterationPlan(std::vector<OperatorSpec> chain, bool monotone = false);
};

struct Approximation {
    double value = 0.0;
    double error = 0.0;  // quadrature accuracy figure for this value
};

/// Applies the three convolution operators against one kernel/config pair.
/// All integrals run in the substituted form (h = nx - v), so one truncation
/// window serves every x and n; the Psi node tables are shared across calls.
class OperatorEngine {
public:
    OperatorEngine(DensityKernel kernel, QuadratureConfig config);

    const WeightedIntegrator& integrator() const { return integrator_; }
    const DensityKernel& kernel() const { return integrator_.kernel(); }

    /// Op(f)(x) for the given spec.
    Approximation apply(const TargetFunction& f, const OperatorSpec& spec, double x) const;

    /// Op((. - x)^k)(x). Direct kind with odd k vanishes by evenness.
    Approximation centered_moment(const OperatorSpec& spec, double x, int k) const;

    /// (finite-difference derivative of Op f at x, Op(f^(k))(x)).
    /// Central differences with step max(1e-5, rel_tol^(1/(k+2))); k <= 4.
    std::pair<double, double> derivative_commutation(const TargetFunction& f,
                                                     const OperatorSpec& spec, double x,
                                                     int k) const;

    /// Lazy evaluation of a chain on a grid: each stage materializes the
    /// previous one as a TargetFunction whose evaluation triggers the inner
    /// integrals on demand. Sup-norm metadata propagates unchanged (the
    /// operators are sup-norm non-expansive).
    std::vector<Approximation> apply_iterated(const TargetFunction& f, const IterationPlan& plan,
                                              std::span<const double> grid) const;

    /// Intermediate chain stages as evaluatable functions; stage(i) is the
    /// composition of the first i+1 chain entries applied to f.
    TargetFunction chain_stage(const TargetFunction& f, const IterationPlan& plan,
                               std::size_t stages) const;

    /// Estimated integrand evaluations for one chain evaluation at one point.
    double chain_cost_estimate(const IterationPlan& plan) const;

private:
    WeightedIntegrator integrator_;
};

// Spec-shaped entry points; each constructs a transient engine.
double apply_direct(const TargetFunction& f, int n, double x, const DensityKernel& kernel,
                    const QuadratureConfig& config);
double apply_kantorovich(const TargetFunction& f, int n, double x, const DensityKernel& kernel,
                         const QuadratureConfig& config);
double apply_quadrature_op(const TargetFunction& f, const OperatorSpec& spec, double x,
                           const DensityKernel& kernel, const QuadratureConfig& config);
double centered_moment(const OperatorSpec& spec, double x, int k, const DensityKernel& kernel,
                       const QuadratureConfig& config);
std::pair<double, double> derivative_commutation_check(const TargetFunction& f,
                                                       const OperatorSpec& spec, double x, int k,
                                                       const DensityKernel& kernel,
                                                       const QuadratureConfig& config);
std::vector<double> apply_iterated(const TargetFunction& f, const IterationPlan& plan,
                                   std::span<const double> grid, const DensityKernel& kernel,
                                   const QuadratureConfig& config);

}  // namespace nnconv
