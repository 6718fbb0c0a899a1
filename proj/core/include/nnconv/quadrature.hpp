#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "nnconv/activation.hpp"
#include "nnconv/errors.hpp"

namespace nnconv {

/// Knobs of the integration engine.
///
/// tail_epsilon is the Psi-mass allowed outside the truncation window,
/// certified through the envelope of Psi rather than by heuristics.
/// rel_tol drives panel refinement (node doubling), measured against the
/// absolute-value integral so that integrals near zero still converge.
struct QuadratureConfig {
    double tail_epsilon = 1e-12;
    double rel_tol = 1e-10;
    int max_refinements = 20;
    double panel_width = 1.0;

    void validate() const;
};

/// Truncation window [-radius, radius] for a given kernel: the radius solves
/// (q + 1/q) * B^(-beta*(R-1)) = tail_epsilon, so the true Psi-mass left
/// outside is strictly below tail_epsilon.
struct TruncationWindow {
    double radius;
};

TruncationWindow truncation_radius(const ActivationParams& params, double tail_epsilon);

/// Tail estimate (q + 1/q) / B^(beta*(threshold-1)); the right-hand side of
/// the kernel tail inequality, also reused by the error-bound calculators.
double tail_bound(const ActivationParams& params, double threshold);

/// Gauss-Legendre abscissae and weights on [-1, 1], ascending node order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Rule of the given order, computed by Newton iteration on the Legendre
/// polynomial and cached. Values are deterministic pure constants.
const GaussRule& gauss_legendre(int order);

struct IntegralResult {
    double value = 0.0;
    /// Absolute accuracy figure: |last refinement change| plus the truncation
    /// budget scaled by |g| at the window edge. One number for callers.
    double error = 0.0;
    int refinements = 0;
    std::uint64_t evaluations = 0;
};

namespace detail {

struct PanelLayout {
    std::vector<double> nodes;    // all nodes, panels left to right
    std::vector<double> weights;  // matching scaled weights
};

// Composite layout over [a, b]: ceil((b-a)/panel_width) uniform panels,
// GL-(base_order * 2^level) nodes each.
PanelLayout make_layout(double a, double b, double panel_width, int level);

}  // namespace detail

/// Composite Gauss-Legendre integration of Psi-weighted integrands over the
/// real line, truncated to the certified window and refined to tolerance.
///
/// The Psi factor at every node of every refinement level is precomputed and
/// cached in the integrator, so evaluating many integrands against one kernel
/// (grids of operator applications, iterated chains) costs only the integrand
/// calls. Levels are immutable once built; summation is strictly
/// left-to-right over panels in fixed node order.
class WeightedIntegrator {
public:
    WeightedIntegrator(DensityKernel kernel, QuadratureConfig config);

    const DensityKernel& kernel() const { return kernel_; }
    const QuadratureConfig& config() const { return config_; }
    double radius() const { return radius_; }

    /// Node count of refinement level (0-based). Level l uses 10 * 2^l
    /// Gauss-Legendre nodes per panel.
    std::size_t level_size(int level) const { return level_ref(level).nodes.size(); }

    /// Integral of g * Psi over the window, refined by node doubling until
    /// |change| <= rel_tol * integral(|g| Psi) or max_refinements is hit
    /// (then ToleranceError carrying the best estimate). Non-finite integrand
    /// values raise IntegrandError with the offending location.
    template <typename F>
    IntegralResult integrate(F&& g) const {
        const double lo = call_checked(g, -radius_);
        const double hi = call_checked(g, radius_);
        const double edge = std::max(std::abs(lo), std::abs(hi));
        std::uint64_t evals = 2;

        double prev = 0.0;
        double change = std::numeric_limits<double>::infinity();
        for (int level = 0; level <= config_.max_refinements; ++level) {
            const Level& lv = level_ref(level);
            double acc = 0.0;
            double abs_acc = 0.0;
            for (std::size_t i = 0; i < lv.nodes.size(); ++i) {
                const double gv = call_checked(g, lv.nodes[i]);
                acc += lv.psi_weights[i] * gv;
                abs_acc += lv.psi_weights[i] * std::abs(gv);
            }
            evals += lv.nodes.size();
            if (level > 0) {
                change = std::abs(acc - prev);
                if (change <= config_.rel_tol * abs_acc) {
                    return {acc, change + config_.tail_epsilon * edge, level, evals};
                }
            }
            prev = acc;
        }
        throw ToleranceError("integrate: rel_tol not met after max_refinements", prev,
                             change + config_.tail_epsilon * edge);
    }

private:
    struct Level {
        std::vector<double> nodes;
        std::vector<double> psi_weights;  // panel weight * Psi(node), all positive
    };

    const Level& level_ref(int level) const;

    DensityKernel kernel_;
    QuadratureConfig config_;
    double radius_;
    // Built on demand, then immutable. shared_ptr keeps copies of the
    // integrator cheap and published levels stable.
    mutable std::vector<std::shared_ptr<const Level>> levels_;

    template <typename F>
    static double call_checked(F&& g, double x) {
        const double v = g(x);
        if (!std::isfinite(v)) {
            throw IntegrandError("integrate: integrand is not finite", x);
        }
        return v;
    }
};

/// One-shot form of WeightedIntegrator::integrate.
IntegralResult integrate_weighted(const DensityKernel& kernel,
                                  const std::function<double(double)>& integrand,
                                  const QuadratureConfig& config);

/// Composite-panel integration of an arbitrary function on [a, b] with the
/// same node-doubling refinement policy. No Psi weighting, no tail term.
IntegralResult integrate_on_interval(double a, double b,
                                     const std::function<double(double)>& f,
                                     const QuadratureConfig& config);

/// Numeric mass of Psi outside [-threshold, threshold]; threshold >= 1.
/// Always strictly below tail_bound(params, threshold).
double tail_mass(const DensityKernel& kernel, double threshold,
                 const QuadratureConfig& config = {});

}  // namespace nnconv
