#include "nnconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace nnconv {

namespace {

constexpr int kBaseOrder = 10;

GaussRule compute_gauss_legendre(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess, then Newton on P_order.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // i counts from the node nearest +1 downwards; store ascending.
        rule.nodes[order - 1 - i] = x;
        rule.weights[order - 1 - i] = w;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
    }
    return rule;
}

template <typename F>
double checked(F&& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw IntegrandError("integrate: integrand is not finite", x);
    }
    return v;
}

// Shared refinement loop over precomputed layouts for plain (unweighted)
// interval integration.
IntegralResult refine_on_interval(double a, double b, const std::function<double(double)>& f,
                                  const QuadratureConfig& config) {
    double prev = 0.0;
    double change = std::numeric_limits<double>::infinity();
    std::uint64_t evals = 0;
    for (int level = 0; level <= config.max_refinements; ++level) {
        const detail::PanelLayout layout = detail::make_layout(a, b, config.panel_width, level);
        double acc = 0.0;
        double abs_acc = 0.0;
        for (std::size_t i = 0; i < layout.nodes.size(); ++i) {
            const double v = checked(f, layout.nodes[i]);
            acc += layout.weights[i] * v;
            abs_acc += layout.weights[i] * std::abs(v);
        }
        evals += layout.nodes.size();
        if (level > 0) {
            change = std::abs(acc - prev);
            if (change <= config.rel_tol * abs_acc) {
                return {acc, change, level, evals};
            }
        }
        prev = acc;
    }
    throw ToleranceError("integrate_on_interval: rel_tol not met after max_refinements", prev,
                         change);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(tail_epsilon > 0.0 && tail_epsilon <= 1e-6)) {
        throw std::invalid_argument("QuadratureConfig: tail_epsilon must be in (0, 1e-6]");
    }
    if (!(rel_tol > 0.0 && std::isfinite(rel_tol))) {
        throw std::invalid_argument("QuadratureConfig: rel_tol must be positive and finite");
    }
    if (max_refinements < 1) {
        throw std::invalid_argument("QuadratureConfig: max_refinements must be >= 1");
    }
    if (!(panel_width > 0.0 && std::isfinite(panel_width))) {
        throw std::invalid_argument("QuadratureConfig: panel_width must be positive and finite");
    }
}

TruncationWindow truncation_radius(const ActivationParams& params, double tail_epsilon) {
    // Any epsilon small enough to keep the radius >= 1 inverts cleanly; the
    // stricter <= 1e-6 cap is enforced on QuadratureConfig, not here.
    if (!(tail_epsilon > 0.0 && tail_epsilon <= params.q_plus_inv_q())) {
        throw std::invalid_argument("truncation_radius: tail_epsilon must be in (0, q + 1/q]");
    }
    const double radius =
        1.0 + std::log(params.q_plus_inv_q() / tail_epsilon) / (params.beta() * params.log_base());
    return {radius};
}

double tail_bound(const ActivationParams& params, double threshold) {
    return params.q_plus_inv_q() *
           std::exp(-params.beta() * params.log_base() * (threshold - 1.0));
}

const GaussRule& gauss_legendre(int order) {
    if (order < 1) {
        throw std::invalid_argument("gauss_legendre: order must be >= 1");
    }
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) {
        it = cache.emplace(order, compute_gauss_legendre(order)).first;
    }
    return it->second;
}

namespace detail {

PanelLayout make_layout(double a, double b, double panel_width, int level) {
    const int order = kBaseOrder << level;
    const GaussRule& rule = gauss_legendre(order);
    const int count = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width - 1e-12)));
    const double width = (b - a) / count;
    PanelLayout layout;
    layout.nodes.reserve(static_cast<std::size_t>(count) * order);
    layout.weights.reserve(static_cast<std::size_t>(count) * order);
    for (int p = 0; p < count; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        const double half = 0.5 * width;
        for (int k = 0; k < order; ++k) {
            layout.nodes.push_back(mid + half * rule.nodes[k]);
            layout.weights.push_back(half * rule.weights[k]);
        }
    }
    return layout;
}

}  // namespace detail

WeightedIntegrator::WeightedIntegrator(DensityKernel kernel, QuadratureConfig config)
    : kernel_(kernel), config_(config) {
    config_.validate();
    radius_ = truncation_radius(kernel_.params(), config_.tail_epsilon).radius;
}

const WeightedIntegrator::Level& WeightedIntegrator::level_ref(int level) const {
    if (level >= static_cast<int>(levels_.size()) || !levels_[level]) {
        // Panels split at 0 so that kinked integrands (|h|^k) never straddle
        // a panel interior, and so Psi evenness is reflected in the layout.
        detail::PanelLayout left = detail::make_layout(-radius_, 0.0, config_.panel_width, level);
        detail::PanelLayout right = detail::make_layout(0.0, radius_, config_.panel_width, level);
        auto built = std::make_shared<Level>();
        built->nodes = std::move(left.nodes);
        built->nodes.insert(built->nodes.end(), right.nodes.begin(), right.nodes.end());
        built->psi_weights = std::move(left.weights);
        built->psi_weights.insert(built->psi_weights.end(), right.weights.begin(),
                                  right.weights.end());
        for (std::size_t i = 0; i < built->nodes.size(); ++i) {
            built->psi_weights[i] *= kernel_.psi(built->nodes[i]);
        }
        if (level >= static_cast<int>(levels_.size())) {
            levels_.resize(level + 1);
        }
        levels_[level] = std::move(built);
    }
    return *levels_[level];
}

IntegralResult integrate_weighted(const DensityKernel& kernel,
                                  const std::function<double(double)>& integrand,
                                  const QuadratureConfig& config) {
    WeightedIntegrator integrator(kernel, config);
    return integrator.integrate(integrand);
}

IntegralResult integrate_on_interval(double a, double b,
                                     const std::function<double(double)>& f,
                                     const QuadratureConfig& config) {
    config.validate();
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("integrate_on_interval: need finite a < b");
    }
    return refine_on_interval(a, b, f, config);
}

double tail_mass(const DensityKernel& kernel, double threshold, const QuadratureConfig& config) {
    if (!(threshold >= 1.0)) {
        throw std::domain_error("tail_mass: threshold must be >= 1");
    }
    config.validate();
    const double far = std::max(
        truncation_radius(kernel.params(), config.tail_epsilon).radius, threshold + 1.0);
    const auto half = integrate_on_interval(
        threshold, far, [&kernel](double h) { return kernel.psi(h); }, config);
    return 2.0 * half.value;
}

}  // namespace nnconv
