#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnconv {

/// An evaluatable real function with the metadata the error bounds consume:
/// a declared sup-norm (possibly window-local, e.g. for the identity map),
/// optional derivative evaluators with their own sup-norms, and an optional
/// exact modulus of continuity.
///
/// Derivative orders are contiguous from 1. derivative(k) re-bases the view:
/// the k-th derivative of the result is the (k+j)-th of the original.
class TargetFunction {
public:
    using Eval = std::function<double(double)>;
    using Modulus = std::function<double(double)>;

    TargetFunction(std::string label, Eval eval, double sup_norm)
        : label_(std::move(label)), eval_(std::move(eval)), sup_norm_(sup_norm) {
        if (!eval_) {
            throw std::invalid_argument("TargetFunction: evaluator required");
        }
        // Zero is legal only so that identically-zero derivatives can be
        // re-based into views; corpus functions themselves declare > 0.
        if (!(sup_norm_ >= 0.0) || !std::isfinite(sup_norm_)) {
            throw std::invalid_argument("TargetFunction: sup_norm must be finite and >= 0");
        }
    }

    /// Appends the next derivative order (1, then 2, ...).
    TargetFunction& with_derivative(Eval deriv, double sup_norm, Modulus exact_modulus = {}) {
        if (!deriv) {
            throw std::invalid_argument("TargetFunction: derivative evaluator required");
        }
        derivatives_.push_back({std::move(deriv), sup_norm, std::move(exact_modulus)});
        return *this;
    }

    TargetFunction& with_exact_modulus(Modulus m) {
        exact_modulus_ = std::move(m);
        return *this;
    }

    double operator()(double x) const { return eval_(x); }
    const Eval& eval() const { return eval_; }
    double sup_norm() const { return sup_norm_; }
    const std::string& label() const { return label_; }

    int derivative_order() const { return static_cast<int>(derivatives_.size()); }
    bool has_derivative(int k) const { return k >= 1 && k <= derivative_order(); }

    /// View of f^(k) as a TargetFunction, carrying the remaining higher
    /// orders re-based. k = 0 returns *this.
    TargetFunction derivative(int k) const {
        if (k == 0) {
            return *this;
        }
        if (!has_derivative(k)) {
            throw std::invalid_argument("TargetFunction '" + label_ +
                                        "': derivative order " + std::to_string(k) +
                                        " not provided");
        }
        const Entry& e = derivatives_[k - 1];
        TargetFunction out(label_ + "^(" + std::to_string(k) + ")", e.eval, e.sup_norm);
        if (e.exact_modulus) {
            out.with_exact_modulus(e.exact_modulus);
        }
        for (int j = k; j < derivative_order(); ++j) {
            const Entry& d = derivatives_[j];
            out.with_derivative(d.eval, d.sup_norm, d.exact_modulus);
        }
        return out;
    }

    bool has_exact_modulus() const { return static_cast<bool>(exact_modulus_); }
    double exact_modulus(double theta) const {
        if (!exact_modulus_) {
            throw std::logic_error("TargetFunction '" + label_ + "': no exact modulus declared");
        }
        return exact_modulus_(theta);
    }

private:
    struct Entry {
        Eval eval;
        double sup_norm;
        Modulus exact_modulus;
    };

    std::string label_;
    Eval eval_;
    double sup_norm_;
    Modulus exact_modulus_;
    std::vector<Entry> derivatives_;
};

}  // namespace nnconv
