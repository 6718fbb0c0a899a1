#pragma once

#include <stdexcept>
#include <string>

namespace nnconv {

/// Refinement loop stopped at max_refinements without meeting rel_tol.
/// Carries the best estimate obtained and the residual change.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double best, double residual)
        : std::runtime_error(what), best_estimate(best), residual_error(residual) {}

    double best_estimate;
    double residual_error;
};

/// The integrand produced a non-finite value somewhere in the window.
class IntegrandError : public std::runtime_error {
public:
    IntegrandError(const std::string& what, double where)
        : std::runtime_error(what), location(where) {}

    double location;
};

/// Estimated cost of an iterated-operator chain exceeds the configured budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, double estimated, double budget)
        : std::runtime_error(what), estimated_cost(estimated), eval_budget(budget) {}

    double estimated_cost;
    double eval_budget;
};

}  // namespace nnconv
