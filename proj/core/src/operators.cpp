#include "nnconv/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nnconv {

namespace {

constexpr int kInnerOrder = 6;  // Kantorovich inner rule, exact to degree 11

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

// Inner Gauss rule on [0, 1/n], weights rescaled so they sum to 1 and the
// weighted sum equals n * integral_0^{1/n}.
struct InnerRule {
    double offsets[kInnerOrder];
    double weights[kInnerOrder];

    explicit InnerRule(int n) {
        const GaussRule& base = gauss_legendre(kInnerOrder);
        const double half = 0.5 / n;
        for (int j = 0; j < kInnerOrder; ++j) {
            offsets[j] = half + half * base.nodes[j];
            weights[j] = 0.5 * base.weights[j];
        }
    }
};

}  // namespace

const char* to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::direct:
            return "direct";
        case OperatorKind::kantorovich:
            return "kantorovich";
        case OperatorKind::quadrature:
            return "quadrature";
    }
    return "unknown";
}

OperatorSpec::OperatorSpec(OperatorKind kind_, int n_) : kind(kind_), n(n_) {
    if (kind == OperatorKind::quadrature) {
        throw std::invalid_argument("OperatorSpec: quadrature kind requires weights");
    }
    if (n < 1) {
        throw std::invalid_argument("OperatorSpec: n must be >= 1");
    }
}

OperatorSpec::OperatorSpec(int n_, std::vector<double> weights_)
    : kind(OperatorKind::quadrature), n(n_), weights(std::move(weights_)) {
    if (n < 1) {
        throw std::invalid_argument("OperatorSpec: n must be >= 1");
    }
    if (weights.empty()) {
        throw std::invalid_argument("OperatorSpec: quadrature weights must be nonempty");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("OperatorSpec: quadrature weights must be >= 0");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("OperatorSpec: quadrature weights must sum to 1, got " +
                                    std::to_string(sum));
    }
}

OperatorSpec OperatorSpec::uniform_quadrature(int n, int r) {
    if (r < 1) {
        throw std::invalid_argument("OperatorSpec: r must be >= 1");
    }
    // Build weights that sum to 1 exactly in floating point.
    std::vector<double> w(r, 1.0 / r);
    double sum = std::accumulate(w.begin(), w.end() - 1, 0.0);
    w.back() = 1.0 - sum;
    return OperatorSpec(n, std::move(w));
}

IterationPlan::IterationPlan(std::vector<OperatorSpec> chain_, bool monotone_)
    : chain(std::move(chain_)), monotone(monotone_) {
    if (chain.empty()) {
        throw std::invalid_argument("IterationPlan: chain must be nonempty");
    }
    if (monotone) {
        for (std::size_t i = 1; i < chain.size(); ++i) {
            if (chain[i].n < chain[i - 1].n) {
                throw std::invalid_argument(
                    "IterationPlan: monotone plans require nondecreasing scales");
            }
        }
    }
}

OperatorEngine::OperatorEngine(DensityKernel kernel, QuadratureConfig config)
    : integrator_(kernel, config) {}

Approximation OperatorEngine::apply(const TargetFunction& f, const OperatorSpec& spec,
                                    double x) const {
    const double n = spec.n;
    IntegralResult res;
    switch (spec.kind) {
        case OperatorKind::direct: {
            const auto& eval = f.eval();
            res = integrator_.integrate([&](double h) { return eval(x - h / n); });
            break;
        }
        case OperatorKind::kantorovich: {
            const InnerRule inner(spec.n);
            const auto& eval = f.eval();
            res = integrator_.integrate([&](double h) {
                const double base = x - h / n;
                double acc = 0.0;
                for (int j = 0; j < kInnerOrder; ++j) {
                    acc += inner.weights[j] * eval(inner.offsets[j] + base);
                }
                return acc;
            });
            break;
        }
        case OperatorKind::quadrature: {
            const auto& eval = f.eval();
            const int r = static_cast<int>(spec.weights.size());
            res = integrator_.integrate([&](double h) {
                const double base = x - h / n;
                double acc = 0.0;
                for (int s = 1; s <= r; ++s) {
                    acc += spec.weights[s - 1] * eval(base + s / (n * r));
                }
                return acc;
            });
            break;
        }
    }
    return {res.value, res.error};
}

Approximation OperatorEngine::centered_moment(const OperatorSpec& spec, double x, int k) const {
    if (k < 1) {
        throw std::invalid_argument("centered_moment: k must be >= 1");
    }
    (void)x;  // the substituted integrands are x-free for all three kinds
    const double n = spec.n;
    IntegralResult res;
    switch (spec.kind) {
        case OperatorKind::direct: {
            res = integrator_.integrate([&](double h) { return ipow(-h / n, k); });
            break;
        }
        case OperatorKind::kantorovich: {
            const InnerRule inner(spec.n);
            res = integrator_.integrate([&](double h) {
                double acc = 0.0;
                for (int j = 0; j < kInnerOrder; ++j) {
                    acc += inner.weights[j] * ipow(inner.offsets[j] - h / n, k);
                }
                return acc;
            });
            break;
        }
        case OperatorKind::quadrature: {
            const int r = static_cast<int>(spec.weights.size());
            res = integrator_.integrate([&](double h) {
                double acc = 0.0;
                for (int s = 1; s <= r; ++s) {
                    acc += spec.weights[s - 1] * ipow(s / (n * r) - h / n, k);
                }
                return acc;
            });
            break;
        }
    }
    return {res.value, res.error};
}

std::pair<double, double> OperatorEngine::derivative_commutation(const TargetFunction& f,
                                                                 const OperatorSpec& spec,
                                                                 double x, int k) const {
    if (k < 1 || k > 4) {
        throw std::invalid_argument("derivative_commutation: k must be in 1..4");
    }
    if (!f.has_derivative(k)) {
        throw std::invalid_argument("derivative_commutation: '" + f.label() +
                                    "' lacks derivative order " + std::to_string(k));
    }
    const double step =
        std::max(1e-5, std::pow(integrator_.config().rel_tol, 1.0 / (k + 2)));
    const auto F = [&](double y) { return apply(f, spec, y).value; };

    double lhs = 0.0;
    switch (k) {
        case 1:
            lhs = (F(x + step) - F(x - step)) / (2.0 * step);
            break;
        case 2:
            lhs = (F(x + step) - 2.0 * F(x) + F(x - step)) / (step * step);
            break;
        case 3:
            lhs = (F(x + 2.0 * step) - 2.0 * F(x + step) + 2.0 * F(x - step) -
                   F(x - 2.0 * step)) /
                  (2.0 * step * step * step);
            break;
        case 4:
            lhs = (F(x + 2.0 * step) - 4.0 * F(x + step) + 6.0 * F(x) - 4.0 * F(x - step) +
                   F(x - 2.0 * step)) /
                  (step * step * step * step);
            break;
    }
    const double rhs = apply(f.derivative(k), spec, x).value;
    return {lhs, rhs};
}

double OperatorEngine::chain_cost_estimate(const IterationPlan& plan) const {
    // A converged integral costs the first two refinement levels plus the
    // two edge probes; Kantorovich and quadrature kinds multiply the leaf
    // count by their inner sample counts.
    const double nodes = static_cast<double>(integrator_.level_size(0)) +
                         static_cast<double>(integrator_.level_size(1)) + 2.0;
    double cost = 1.0;
    for (const OperatorSpec& spec : plan.chain) {
        double inner = 1.0;
        if (spec.kind == OperatorKind::kantorovich) {
            inner = kInnerOrder;
        } else if (spec.kind == OperatorKind::quadrature) {
            inner = static_cast<double>(spec.weights.size());
        }
        cost *= nodes * inner;
    }
    return cost;
}

TargetFunction OperatorEngine::chain_stage(const TargetFunction& f, const IterationPlan& plan,
                                           std::size_t stages) const {
    if (stages == 0 || stages > plan.chain.size()) {
        throw std::invalid_argument("chain_stage: stage index out of range");
    }
    TargetFunction current = f;
    for (std::size_t i = 0; i < stages; ++i) {
        const OperatorSpec spec = plan.chain[i];
        TargetFunction inner = current;
        TargetFunction next(
            current.label() + ">" + to_string(spec.kind) + std::to_string(spec.n),
            [this, inner, spec](double y) { return apply(inner, spec, y).value; },
            current.sup_norm());
        current = std::move(next);
    }
    return current;
}

std::vector<Approximation> OperatorEngine::apply_iterated(const TargetFunction& f,
                                                          const IterationPlan& plan,
                                                          std::span<const double> grid) const {
    const double per_point = chain_cost_estimate(plan);
    const double total = per_point * static_cast<double>(grid.size());
    if (total > plan.eval_budget) {
        throw BudgetError("apply_iterated: estimated cost exceeds eval_budget", total,
                          plan.eval_budget);
    }
    // Compose all but the outermost stage lazily, then run the outermost
    // through apply() so its quadrature accuracy is observable.
    const OperatorSpec outer = plan.chain.back();
    IterationPlan prefix_plan = plan;
    TargetFunction inner = f;
    if (plan.chain.size() > 1) {
        prefix_plan.chain.pop_back();
        inner = chain_stage(f, prefix_plan, prefix_plan.chain.size());
    }
    const double inner_error =
        static_cast<double>(plan.chain.size() - 1) *
        (integrator_.config().rel_tol + integrator_.config().tail_epsilon) * f.sup_norm();

    std::vector<Approximation> out;
    out.reserve(grid.size());
    for (double x : grid) {
        Approximation a = apply(inner, outer, x);
        a.error += inner_error;
        out.push_back(a);
    }
    return out;
}

double apply_direct(const TargetFunction& f, int n, double x, const DensityKernel& kernel,
                    const QuadratureConfig& config) {
    OperatorEngine engine(kernel, config);
    return engine.apply(f, OperatorSpec(OperatorKind::direct, n), x).value;
}

double apply_kantorovich(const TargetFunction& f, int n, double x, const DensityKernel& kernel,
                         const QuadratureConfig& config) {
    OperatorEngine engine(kernel, config);
    return engine.apply(f, OperatorSpec(OperatorKind::kantorovich, n), x).value;
}

double apply_quadrature_op(const TargetFunction& f, const OperatorSpec& spec, double x,
                           const DensityKernel& kernel, const QuadratureConfig& config) {
    if (spec.kind != OperatorKind::quadrature) {
        throw std::invalid_argument("apply_quadrature_op: spec must be quadrature kind");
    }
    OperatorEngine engine(kernel, config);
    return engine.apply(f, spec, x).value;
}

double centered_moment(const OperatorSpec& spec, double x, int k, const DensityKernel& kernel,
                       const QuadratureConfig& config) {
    OperatorEngine engine(kernel, config);
    return engine.centered_moment(spec, x, k).value;
}

std::pair<double, double> derivative_commutation_check(const TargetFunction& f,
                                                       const OperatorSpec& spec, double x, int k,
                                                       const DensityKernel& kernel,
                                                       const QuadratureConfig& config) {
    OperatorEngine engine(kernel, config);
    return engine.derivative_commutation(f, spec, x, k);
}

std::vector<double> apply_iterated(const TargetFunction& f, const IterationPlan& plan,
                                   std::span<const double> grid, const DensityKernel& kernel,
                                   const QuadratureConfig& config) {
    OperatorEngine engine(kernel, config);
    std::vector<Approximation> approx = engine.apply_iterated(f, plan, grid);
    std::vector<double> out;
    out.reserve(approx.size());
    for (const Approximation& a : approx) {
        out.push_back(a.value);
    }
    return out;
}

}  // namespace nnconv
