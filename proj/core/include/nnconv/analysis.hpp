#pragma once

#include <span>
#include <string>
#include <vector>

#include "nnconv/operators.hpp"

namespace nnconv {

/// Parameters of one bound evaluation. Every bound here assumes
/// n^(1-alpha) > 2, enforced at construction.
struct BoundQuery {
    double alpha;
    OperatorKind kind;
    int n;
    int derivative_order = 0;  // k
    int taylor_order = 0;      // N; 0 means the plain Jackson-type bounds

    BoundQuery(double alpha, OperatorKind kind, int n, int derivative_order = 0,
               int taylor_order = 0);

    double n_pow_minus_alpha() const;  // n^(-alpha)
    double n_pow_one_minus_alpha() const;  // n^(1-alpha)
};

/// Grid estimator of the modulus of continuity over [lo, hi]:
/// max |f(x)-f(y)| over grid pairs with |x-y| <= theta, via sliding-window
/// extrema. A lower bound of the true modulus restricted to the window;
/// nondecreasing in theta on a fixed grid. Requires step <= theta.
double estimate_modulus(const std::function<double(double)>& f, double theta, double lo,
                        double hi, double step);

/// Same estimator over already-sampled equispaced values; window is the
/// index distance corresponding to theta (floor(theta/step)).
double estimate_modulus_sampled(std::span<const double> values, std::size_t window);

/// Modulus source priority: the declared exact modulus when present,
/// otherwise the grid estimator on [-5, 5] with step 1e-3.
double modulus_for_bound(const TargetFunction& f, double theta);

/// Jackson-type bound T for the direct operator:
///   omega(f, n^-alpha) + 2 (q + 1/q) ||f|| / B^(beta (n^(1-alpha) - 1)).
double bound_T(const TargetFunction& f, const BoundQuery& query,
               const ActivationParams& params);

/// Bound E shared by the Kantorovich and quadrature operators:
///   omega(f, 1/n + n^-alpha) + the same tail term.
double bound_E(const TargetFunction& f, const BoundQuery& query,
               const ActivationParams& params);

/// T or E according to query.kind.
double bound_for(const TargetFunction& f, const BoundQuery& query,
                 const ActivationParams& params);

/// T_k / E_k: the plain bound evaluated on f^(k), k = query.derivative_order.
double bound_derivative(const TargetFunction& f, const BoundQuery& query,
                        const ActivationParams& params);

/// Closed-form bound of the k-th absolute moment of Psi:
///   (B^beta - 1)/((B^beta + 1)(k+1)) + (q + 1/q) B^beta k! / (beta ln B)^k.
double moment_bound(const ActivationParams& params, int k);

/// Bound of |Op((. - x)^k)(x)|: moment_bound scaled by n^-k for the direct
/// kind, and the 2^(k-1)/n^k * (1 + moment_bound) variant for the other two.
double centered_moment_bound(const ActivationParams& params, OperatorKind kind, int n, int k);

struct TaylorBound {
    /// Kind-specific bound of the Taylor remainder
    /// |Op f(x) - f(x) - sum_k f^(k)(x)/k! Op((.-x)^k)(x)|.
    double remainder_bound;
    /// Per-order centered-moment bounds, k = 1..N.
    std::vector<double> moment_bounds;
    /// Sup-norm form: sum_k ||f^(k)||/k! * moment_bounds[k-1] + remainder.
    double full_bound;
};

/// Taylor-refined rates, N = query.taylor_order >= 1. Requires derivatives
/// 1..N with declared sup-norms.
TaylorBound bound_taylor(const TargetFunction& f, const BoundQuery& query,
                         const ActivationParams& params);

/// bound_taylor evaluated on f^(k), k = query.derivative_order (0 reduces to
/// bound_taylor). Requires derivatives 1..N+k.
TaylorBound bound_taylor_derivative(const TargetFunction& f, const BoundQuery& query,
                                    const ActivationParams& params);

/// Sum of per-stage single-application bounds of an iterated chain; for a
/// homogeneous r-fold chain this is r times the single-stage bound. Every
/// stage scale must satisfy k_p^(1-alpha) > 2.
double iterated_bound(const TargetFunction& f, const IterationPlan& plan,
                      const ActivationParams& params, double alpha);

/// Empirical-vs-theoretical comparison record.
struct BoundReport {
    double empirical = 0.0;    // grid sup of |Op f - f|
    double theoretical = 0.0;  // matching T / E bound
    double ratio = 0.0;
    double quad_error = 0.0;   // worst per-point quadrature accuracy
    bool conclusive = false;   // quadrature at least 100x tighter than the bound

    // provenance
    double q = 0.0, beta = 0.0, base = 0.0;
    OperatorKind kind = OperatorKind::direct;
    int n = 0;
    double alpha = 0.0;
    int derivative_order = 0;
    int taylor_order = 0;
    std::string label;
    double grid_lo = 0.0, grid_hi = 0.0;
    std::size_t grid_points = 0;
};

/// Runs Op f over the grid, records the sup deviation from f, the matching
/// bound, and their ratio. Inconclusive reports (quadrature too loose for
/// the bound) are a soft outcome, not an error.
BoundReport compare(const TargetFunction& f, const OperatorSpec& spec, const BoundQuery& query,
                    std::span<const double> grid, const DensityKernel& kernel,
                    const QuadratureConfig& config);

}  // namespace nnconv
