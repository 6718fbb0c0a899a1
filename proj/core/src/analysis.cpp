#include "nnconv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace nnconv {

namespace {

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) {
        r *= i;
    }
    return r;
}

// The exponentially small term shared by all plain bounds:
// 2 (q + 1/q) ||f|| / B^(beta (n^(1-alpha) - 1)).
double jackson_tail_term(const ActivationParams& params, const BoundQuery& query,
                         double sup_norm) {
    return 2.0 * sup_norm * tail_bound(params, query.n_pow_one_minus_alpha());
}

// B^(-beta n^(1-alpha) / 2), the decay factor of the Taylor-remainder
// bounds.
double half_exponent_decay(const ActivationParams& params, const BoundQuery& query) {
    return std::exp(-0.5 * params.beta() * params.log_base() * query.n_pow_one_minus_alpha());
}

}  // namespace

BoundQuery::BoundQuery(double alpha_, OperatorKind kind_, int n_, int derivative_order_,
                       int taylor_order_)
    : alpha(alpha_), kind(kind_), n(n_), derivative_order(derivative_order_),
      taylor_order(taylor_order_) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("BoundQuery: alpha must be in (0, 1)");
    }
    if (n < 1) {
        throw std::invalid_argument("BoundQuery: n must be >= 1");
    }
    if (derivative_order < 0 || taylor_order < 0) {
        throw std::invalid_argument("BoundQuery: orders must be >= 0");
    }
    if (!(n_pow_one_minus_alpha() > 2.0)) {
        throw std::invalid_argument("BoundQuery: n^(1-alpha) > 2 required, n=" +
                                    std::to_string(n) + " alpha=" + std::to_string(alpha));
    }
}

double BoundQuery::n_pow_minus_alpha() const { return std::pow(n, -alpha); }
double BoundQuery::n_pow_one_minus_alpha() const { return std::pow(n, 1.0 - alpha); }

double estimate_modulus_sampled(std::span<const double> values, std::size_t window) {
    if (values.size() < 2) {
        throw std::domain_error("estimate_modulus: grid has fewer than two points");
    }
    // Sliding max/min over index windows of width `window`.
    std::deque<std::size_t> dq_max, dq_min;
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        while (!dq_max.empty() && values[dq_max.back()] <= values[i]) {
            dq_max.pop_back();
        }
        dq_max.push_back(i);
        while (!dq_min.empty() && values[dq_min.back()] >= values[i]) {
            dq_min.pop_back();
        }
        dq_min.push_back(i);
        if (i >= window) {
            while (dq_max.front() + window < i) {
                dq_max.pop_front();
            }
            while (dq_min.front() + window < i) {
                dq_min.pop_front();
            }
        }
        best = std::max(best, values[dq_max.front()] - values[dq_min.front()]);
    }
    return best;
}

double estimate_modulus(const std::function<double(double)>& f, double theta, double lo,
                        double hi, double step) {
    if (!(theta > 0.0) || !(step > 0.0) || step > theta) {
        throw std::invalid_argument("estimate_modulus: need 0 < step <= theta");
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("estimate_modulus: window must be finite with lo < hi");
    }
    const std::size_t count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count < 2) {
        throw std::domain_error("estimate_modulus: grid has fewer than two points");
    }
    const std::size_t window = static_cast<std::size_t>(std::floor(theta / step + 1e-9));

    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        values[i] = f(lo + static_cast<double>(i) * step);
    }
    return estimate_modulus_sampled(values, window);
}

double modulus_for_bound(const TargetFunction& f, double theta) {
    if (f.has_exact_modulus()) {
        return f.exact_modulus(theta);
    }
    return estimate_modulus(f.eval(), theta, -5.0, 5.0, 1e-3);
}

double bound_T(const TargetFunction& f, const BoundQuery& query,
               const ActivationParams& params) {
    if (query.kind != OperatorKind::direct) {
        throw std::invalid_argument("bound_T: direct kind only");
    }
    return modulus_for_bound(f, query.n_pow_minus_alpha()) +
           jackson_tail_term(params, query, f.sup_norm());
}

double bound_E(const TargetFunction& f, const BoundQuery& query,
               const ActivationParams& params) {
    if (query.kind == OperatorKind::direct) {
        throw std::invalid_argument("bound_E: kantorovich or quadrature kind only");
    }
    return modulus_for_bound(f, 1.0 / query.n + query.n_pow_minus_alpha()) +
           jackson_tail_term(params, query, f.sup_norm());
}

double bound_for(const TargetFunction& f, const BoundQuery& query,
                 const ActivationParams& params) {
    return query.kind == OperatorKind::direct ? bound_T(f, query, params)
                                              : bound_E(f, query, params);
}

double bound_derivative(const TargetFunction& f, const BoundQuery& query,
                        const ActivationParams& params) {
    const int k = query.derivative_order;
    if (k < 1) {
        throw std::invalid_argument("bound_derivative: derivative_order must be >= 1");
    }
    if (!f.has_derivative(k)) {
        throw std::invalid_argument("bound_derivative: '" + f.label() +
                                    "' lacks derivative order " + std::to_string(k));
    }
    const BoundQuery plain(query.alpha, query.kind, query.n);
    return bound_for(f.derivative(k), plain, params);
}

double moment_bound(const ActivationParams& params, int k) {
    if (k < 1) {
        throw std::invalid_argument("moment_bound: k must be >= 1");
    }
    const double bp = std::exp(params.beta() * params.log_base());  // B^beta
    const double rate = params.beta() * params.log_base();
    return (bp - 1.0) / ((bp + 1.0) * (k + 1)) +
           params.q_plus_inv_q() * bp * factorial(k) / std::pow(rate, k);
}

double centered_moment_bound(const ActivationParams& params, OperatorKind kind, int n, int k) {
    const double base = moment_bound(params, k);
    const double nk = std::pow(static_cast<double>(n), k);
    if (kind == OperatorKind::direct) {
        return base / nk;
    }
    return std::pow(2.0, k - 1) / nk * (1.0 + base);
}

TaylorBound bound_taylor(const TargetFunction& f, const BoundQuery& query,
                         const ActivationParams& params) {
    const int N = query.taylor_order;
    if (N < 1) {
        throw std::invalid_argument("bound_taylor: taylor_order must be >= 1");
    }
    if (!f.has_derivative(N)) {
        throw std::invalid_argument("bound_taylor: '" + f.label() +
                                    "' lacks derivatives up to order " + std::to_string(N));
    }
    const TargetFunction fN = f.derivative(N);
    const double nf = factorial(N);
    const double decay = half_exponent_decay(params, query);
    const double bp = std::exp(params.beta() * params.log_base());
    const double qq = params.q_plus_inv_q();
    const double nN = std::pow(static_cast<double>(query.n), N);

    double remainder = 0.0;
    if (query.kind == OperatorKind::direct) {
        const double omega = modulus_for_bound(fN, query.n_pow_minus_alpha());
        remainder = omega / (std::pow(query.n, query.alpha * N) * nf) +
                    std::pow(2.0, N + 2) * fN.sup_norm() * bp * qq * decay /
                        (nN * std::pow(params.beta(), N));
    } else {
        const double arg = 1.0 / query.n + query.n_pow_minus_alpha();
        const double omega = modulus_for_bound(fN, arg);
        remainder = omega * std::pow(arg, N) / nf +
                    std::pow(2.0, N) * fN.sup_norm() / (nN * nf) * qq * bp *
                        (1.0 + std::pow(2.0, N + 1) * nf / std::pow(params.beta(), N)) * decay;
    }

    TaylorBound out;
    out.remainder_bound = remainder;
    out.moment_bounds.reserve(N);
    double full = remainder;
    for (int k = 1; k <= N; ++k) {
        const double mk = centered_moment_bound(params, query.kind, query.n, k);
        out.moment_bounds.push_back(mk);
        full += f.derivative(k).sup_norm() / factorial(k) * mk;
    }
    out.full_bound = full;
    return out;
}

TaylorBound bound_taylor_derivative(const TargetFunction& f, const BoundQuery& query,
                                    const ActivationParams& params) {
    const int k = query.derivative_order;
    if (k == 0) {
        return bound_taylor(f, query, params);
    }
    if (!f.has_derivative(k)) {
        throw std::invalid_argument("bound_taylor_derivative: '" + f.label() +
                                    "' lacks derivative order " + std::to_string(k));
    }
    const BoundQuery shifted(query.alpha, query.kind, query.n, 0, query.taylor_order);
    return bound_taylor(f.derivative(k), shifted, params);
}

double iterated_bound(const TargetFunction& f, const IterationPlan& plan,
                      const ActivationParams& params, double alpha) {
    double sum = 0.0;
    for (const OperatorSpec& spec : plan.chain) {
        const BoundQuery query(alpha, spec.kind, spec.n);
        sum += bound_for(f, query, params);
    }
    return sum;
}

BoundReport compare(const TargetFunction& f, const OperatorSpec& spec, const BoundQuery& query,
                    std::span<const double> grid, const DensityKernel& kernel,
                    const QuadratureConfig& config) {
    if (grid.empty()) {
        throw std::invalid_argument("compare: grid must be nonempty");
    }
    if (spec.kind != query.kind || spec.n != query.n) {
        throw std::invalid_argument("compare: spec and query disagree on kind or n");
    }
    OperatorEngine engine(kernel, config);
    BoundReport report;
    for (double x : grid) {
        const Approximation a = engine.apply(f, spec, x);
        report.empirical = std::max(report.empirical, std::abs(a.value - f(x)));
        report.quad_error = std::max(report.quad_error, a.error);
    }
    report.theoretical = bound_for(f, query, kernel.params());
    report.ratio = report.empirical / report.theoretical;
    report.conclusive = report.quad_error * 100.0 <= report.theoretical;

    report.q = kernel.params().q();
    report.beta = kernel.params().beta();
    report.base = kernel.params().base();
    report.kind = spec.kind;
    report.n = spec.n;
    report.alpha = query.alpha;
    report.derivative_order = query.derivative_order;
    report.taylor_order = query.taylor_order;
    report.label = f.label();
    report.grid_lo = grid.front();
    report.grid_hi = grid.back();
    report.grid_points = grid.size();
    return report;
}

}  // namespace nnconv
