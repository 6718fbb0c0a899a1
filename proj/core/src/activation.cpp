#include "nnconv/activation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nnconv {

namespace {

void require_finite(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("activation: argument must be finite");
    }
}

// 1 / (1 + exp(-t)) without evaluating exp of a large positive argument.
double stable_sigmoid(double t) {
    if (t >= 0.0) {
        return 1.0 / (1.0 + std::exp(-t));
    }
    const double et = std::exp(t);
    return et / (1.0 + et);
}

}  // namespace

ActivationParams::ActivationParams(double q, double beta, double base)
    : q_(q), beta_(beta), base_(base) {
    if (!(std::isfinite(q) && q > 0.0)) {
        throw std::invalid_argument("ActivationParams: q must be finite and > 0, got " +
                                    std::to_string(q));
    }
    if (!(std::isfinite(beta) && beta > 0.0)) {
        throw std::invalid_argument("ActivationParams: beta must be finite and > 0, got " +
                                    std::to_string(beta));
    }
    if (!(std::isfinite(base) && base > 1.0)) {
        throw std::invalid_argument("ActivationParams: base must be finite and > 1, got " +
                                    std::to_string(base));
    }
    log_base_ = std::log(base);
    log_q_ = std::log(q);
    if (!(std::isfinite(log_base_) && log_base_ > 0.0)) {
        throw std::invalid_argument("ActivationParams: ln(base) must be finite and positive");
    }
}

double eval_nu(const ActivationParams& params, double x) {
    require_finite(x);
    // 1/(1 + q B^(-beta x)) == sigmoid(beta x ln B - ln q)
    return stable_sigmoid(params.beta() * x * params.log_base() - params.log_q());
}

namespace {

// For x <= 0 both nu values sit in the lower branch of the sigmoid, where
// nu(x+1) - nu(x-1) keeps full relative accuracy. For x > 0 both approach 1
// and the subtraction cancels catastrophically, so the positive side is
// routed through the deformed symmetry G_q(x) = G_{1/q}(-x).
double eval_G_lower(const ActivationParams& params, double x) {
    return 0.5 * (eval_nu(params, x + 1.0) - eval_nu(params, x - 1.0));
}

}  // namespace

double eval_G(const ActivationParams& params, double x) {
    require_finite(x);
    if (x > 0.0) {
        return eval_G_lower(params.reciprocal(), -x);
    }
    return eval_G_lower(params, x);
}

double eval_psi(const ActivationParams& params, double x) {
    require_finite(x);
    // Psi is even; evaluating at -|x| keeps both G terms on their accurate
    // branch and makes Psi(x) == Psi(-x) exact in floating point.
    const double xn = -std::abs(x);
    return 0.5 * (eval_G_lower(params, xn) + eval_G_lower(params.reciprocal(), xn));
}

double psi_envelope(const ActivationParams& params, double x) {
    require_finite(x);
    if (x < 1.0) {
        throw std::domain_error("psi_envelope: only established for x >= 1");
    }
    const double decay = std::exp(-params.beta() * params.log_base() * (x - 1.0));
    return 0.5 * params.q_plus_inv_q() * params.beta() * params.log_base() * decay;
}

DensityKernel::DensityKernel(ActivationParams params) : params_(params) {
    max_location_ = params_.log_q() / (params_.beta() * params_.log_base());
    const double bp = std::exp(params_.beta() * params_.log_base());  // B^beta
    max_value_G_ = (bp - 1.0) / (2.0 * (bp + 1.0));
}

}  // namespace nnconv
