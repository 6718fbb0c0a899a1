#include "nnconv/study/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nnconv::study {

namespace {

// omega(sin, theta) = omega(cos, theta) = 2 sin(theta/2) capped at 2.
double trig_modulus(double theta) {
    return theta >= M_PI ? 2.0 : 2.0 * std::sin(0.5 * theta);
}

// omega(|sin|, theta) = sin(theta) for theta <= pi/2, then 1 (range [0,1]
// swept within any pi/2 window).
double abs_sin_modulus(double theta) {
    return theta >= 0.5 * M_PI ? 1.0 : std::sin(theta);
}

std::vector<CorpusEntry> make_corpus() {
    std::vector<CorpusEntry> corpus;

    {
        TargetFunction f("const", [](double) { return 1.0; }, 1.0);
        f.with_exact_modulus([](double) { return 0.0; });
        f.with_derivative([](double) { return 0.0; }, 0.0, [](double) { return 0.0; });
        f.with_derivative([](double) { return 0.0; }, 0.0, [](double) { return 0.0; });
        corpus.push_back({"const", std::move(f), "constant; trivially bounded and continuous"});
    }
    {
        // Unbounded on the line; the declared norm is a window-local bound
        // covering the study grids plus the operator reach at the smallest
        // tested scales.
        TargetFunction f("id", [](double x) { return x; }, 10.0);
        f.with_exact_modulus([](double theta) { return theta; });
        f.with_derivative([](double) { return 1.0; }, 1.0, [](double) { return 0.0; });
        f.with_derivative([](double) { return 0.0; }, 0.0, [](double) { return 0.0; });
        corpus.push_back({"id", std::move(f), "identity map; sup-norm is window-local"});
    }
    {
        TargetFunction f("sin", [](double x) { return std::sin(x); }, 1.0);
        f.with_exact_modulus(trig_modulus);
        f.with_derivative([](double x) { return std::cos(x); }, 1.0, trig_modulus);
        f.with_derivative([](double x) { return -std::sin(x); }, 1.0, trig_modulus);
        f.with_derivative([](double x) { return -std::cos(x); }, 1.0, trig_modulus);
        f.with_derivative([](double x) { return std::sin(x); }, 1.0, trig_modulus);
        corpus.push_back({"sin", std::move(f), "smooth periodic; all derivative norms 1"});
    }
    {
        TargetFunction f("cos", [](double x) { return std::cos(x); }, 1.0);
        f.with_exact_modulus(trig_modulus);
        f.with_derivative([](double x) { return -std::sin(x); }, 1.0, trig_modulus);
        f.with_derivative([](double x) { return -std::cos(x); }, 1.0, trig_modulus);
        f.with_derivative([](double x) { return std::sin(x); }, 1.0, trig_modulus);
        f.with_derivative([](double x) { return std::cos(x); }, 1.0, trig_modulus);
        corpus.push_back({"cos", std::move(f), "smooth periodic; all derivative norms 1"});
    }
    {
        TargetFunction f("runge", [](double x) { return 1.0 / (1.0 + x * x); }, 1.0);
        f.with_derivative(
            [](double x) {
                const double d = 1.0 + x * x;
                return -2.0 * x / (d * d);
            },
            3.0 * std::sqrt(3.0) / 8.0);
        f.with_derivative(
            [](double x) {
                const double d = 1.0 + x * x;
                return (6.0 * x * x - 2.0) / (d * d * d);
            },
            2.0);
        corpus.push_back({"runge", std::move(f), "rational bump 1/(1+x^2)"});
    }
    {
        TargetFunction f("gauss", [](double x) { return std::exp(-x * x); }, 1.0);
        f.with_derivative([](double x) { return -2.0 * x * std::exp(-x * x); },
                          std::sqrt(2.0 / M_E));
        f.with_derivative([](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x); }, 2.0);
        f.with_derivative(
            [](double x) { return (12.0 * x - 8.0 * x * x * x) * std::exp(-x * x); },
            3.9035661456);
        f.with_derivative(
            [](double x) {
                const double x2 = x * x;
                return (12.0 - 48.0 * x2 + 16.0 * x2 * x2) * std::exp(-x * x);
            },
            12.0);
        corpus.push_back({"gauss", std::move(f), "gaussian bump exp(-x^2)"});
    }
    {
        TargetFunction f("ramp", [](double x) { return std::clamp(x, 0.0, 1.0); }, 1.0);
        f.with_exact_modulus([](double theta) { return std::min(theta, 1.0); });
        corpus.push_back({"ramp", std::move(f), "clamped ramp; Lipschitz 1, not differentiable"});
    }
    {
        TargetFunction f("abs_sin", [](double x) { return std::abs(std::sin(x)); }, 1.0);
        f.with_exact_modulus(abs_sin_modulus);
        corpus.push_back({"abs_sin", std::move(f), "|sin|; continuous, kinked at k*pi"});
    }
    return corpus;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> corpus = make_corpus();
    return corpus;
}

const CorpusEntry& find_corpus(const std::string& label) {
    for (const CorpusEntry& entry : builtin_corpus()) {
        if (entry.label == label) {
            return entry;
        }
    }
    throw std::invalid_argument("corpus: unknown label '" + label + "'");
}

std::string verify_sup_norms(const std::vector<std::string>& labels, double lo, double hi) {
    constexpr double kStep = 1e-3;
    for (const std::string& label : labels) {
        const CorpusEntry& entry = find_corpus(label);
        for (double x = lo; x <= hi + 1e-12; x += kStep) {
            if (std::abs(entry.fn(x)) > entry.fn.sup_norm() + 1e-12) {
                return label;
            }
        }
    }
    return {};
}

}  // namespace nnconv::study
