#pragma once

#include <cmath>

namespace nnconv {

/// Parameter triple (q, beta, B) of the deformed, parametrized, B-generalized
/// logistic function nu(x) = 1 / (1 + q * B^(-beta*x)).
///
/// Validation happens here, once, so the evaluation routines can stay
/// branch-light in hot loops. Instances are immutable; every derived constant
/// downstream is computed from a validated triple.
class ActivationParams {
public:
    ActivationParams(double q, double beta, double base);

    double q() const { return q_; }
    double beta() const { return beta_; }
    double base() const { return base_; }

    /// ln B, finite and positive for any validated triple.
    double log_base() const { return log_base_; }

    /// ln q, used by the stable sigmoid form of nu.
    double log_q() const { return log_q_; }

    /// q + 1/q, the constant of every tail estimate.
    double q_plus_inv_q() const { return q_ + 1.0 / q_; }

    /// Bases arbitrarily close to 1 are legal but make all tail constants
    /// blow up like 1/ln B; callers may want to surface this.
    bool near_unit_base() const { return log_base_ < 1e-6; }

    /// The mirrored triple (1/q, beta, B).
    ActivationParams reciprocal() const { return {1.0 / q_, beta_, base_}; }

private:
    double q_;
    double beta_;
    double base_;
    double log_base_;
    double log_q_;
};

/// nu_{q,beta}(x) = 1 / (1 + q * B^(-beta*x)), evaluated as a two-branch
/// stable sigmoid of the exponent t = beta*x*ln(B) - ln(q). Strictly
/// increasing, range (0, 1). Throws std::domain_error for non-finite x.
double eval_nu(const ActivationParams& params, double x);

/// G_{q,beta}(x) = (nu(x+1) - nu(x-1)) / 2. Strictly positive.
double eval_G(const ActivationParams& params, double x);

/// Psi(x) = (G_{q,beta}(x) + G_{1/q,beta}(x)) / 2. Even, positive, unit mass.
double eval_psi(const ActivationParams& params, double x);

/// Upper envelope of Psi on [1, inf):
///   Psi(x) < (q + 1/q)/2 * beta * ln(B) * B^(-beta*(x-1)).
/// Not established for x < 1 (domain error there). This is what certifies
/// quadrature truncation radii.
double psi_envelope(const ActivationParams& params, double x);

/// Activation parameters together with the structural constants of the
/// density they induce. Immutable: constants can never go stale.
class DensityKernel {
public:
    explicit DensityKernel(ActivationParams params);

    const ActivationParams& params() const { return params_; }

    /// argmax of G_{q,beta}: log_B(q) / beta.
    double max_location() const { return max_location_; }

    /// max of G_{q,beta}: (B^beta - 1) / (2 (B^beta + 1)).
    double max_value_G() const { return max_value_G_; }

    double psi(double x) const { return eval_psi(params_, x); }
    double envelope(double x) const { return psi_envelope(params_, x); }

private:
    ActivationParams params_;
    double max_location_;
    double max_value_G_;
};

}  // namespace nnconv
