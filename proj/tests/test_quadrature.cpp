#include <doctest.h>

#include <cmath>
#include <vector>

#include "nnconv/quadrature.hpp"

using namespace nnconv;

namespace {

const std::vector<double> kQGrid{0.5, 1.0, 2.0};
const std::vector<double> kBetaGrid{0.5, 1.0, 2.0};
const std::vector<double> kBaseGrid{2.0, M_E};

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= x;
    }
    return r;
}

}  // namespace

TEST_CASE("gauss_legendre: structure and polynomial exactness") {
    const GaussRule& rule = gauss_legendre(10);
    REQUIRE(rule.nodes.size() == 10);
    double wsum = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(rule.weights[i] > 0.0);
        if (i) {
            CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        }
        CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[9 - i]).epsilon(1e-15));
        wsum += rule.weights[i];
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

    // order 10 is exact through degree 19
    double x18 = 0.0;
    double x19 = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        x18 += rule.weights[i] * ipow(rule.nodes[i], 18);
        x19 += rule.weights[i] * ipow(rule.nodes[i], 19);
    }
    CHECK(x18 == doctest::Approx(2.0 / 19.0).epsilon(1e-14));
    CHECK(std::abs(x19) < 1e-15);
}

TEST_CASE("truncation_radius: closed-form inversions") {
    const ActivationParams p(1, 1, M_E);
    CHECK(truncation_radius(p, 2.0 * std::exp(-3.0)).radius ==
          doctest::Approx(4.0).epsilon(1e-13));
    CHECK(truncation_radius(p, 1e-12).radius ==
          doctest::Approx(1.0 + std::log(2e12)).epsilon(1e-13));
    // smaller epsilon, strictly larger radius
    CHECK(truncation_radius(p, 1e-12).radius > truncation_radius(p, 1e-8).radius);
    CHECK_THROWS_AS(truncation_radius(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(truncation_radius(p, -1.0), std::invalid_argument);

    // the certified property: mass outside [-R, R] is below epsilon
    for (double eps : {1e-7, 1e-10}) {
        const double radius = truncation_radius(p, eps).radius;
        const DensityKernel kernel(p);
        CHECK(tail_mass(kernel, radius) < eps);
    }
}

TEST_CASE("QuadratureConfig validation") {
    QuadratureConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.tail_epsilon = 1e-5;  // above the 1e-6 cap
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.max_refinements = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.panel_width = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("integrate_weighted: density mass is one across the grid") {
    for (double q : kQGrid) {
        for (double beta : kBetaGrid) {
            for (double base : kBaseGrid) {
                const DensityKernel kernel{ActivationParams(q, beta, base)};
                const auto mass =
                    integrate_weighted(kernel, [](double) { return 1.0; }, {});
                CHECK(std::abs(mass.value - 1.0) < 1e-8);
                CHECK(mass.error < 1e-8);
            }
        }
    }
}

TEST_CASE("integrate_weighted: odd integrand vanishes") {
    const DensityKernel kernel{ActivationParams(2, 1, M_E)};
    const auto res = integrate_weighted(kernel, [](double h) { return h; }, {});
    CHECK(std::abs(res.value) < 1e-10);
}

TEST_CASE("integrate_weighted: first absolute moment against frozen oracle") {
    const DensityKernel kernel{ActivationParams(1, 1, M_E)};
    const auto res =
        integrate_weighted(kernel, [](double h) { return std::abs(h); }, {});
    // adaptive reference integration of |h| Psi over the line
    CHECK(res.value == doctest::Approx(1.4676380740411734).epsilon(2e-9));
    // dominated by the k = 1 closed-form bound (e-1)/(2(e+1)) + 2e
    CHECK(res.value < 5.667622235548095);
}

TEST_CASE("integrate_weighted: non-finite integrand raises with location") {
    const DensityKernel kernel{ActivationParams(1, 1, M_E)};
    try {
        integrate_weighted(kernel, [](double h) { return std::sqrt(h); }, {});
        FAIL("expected IntegrandError");
    } catch (const IntegrandError& e) {
        CHECK(e.location < 0.0);
    }
}

TEST_CASE("integrate_weighted: unreachable tolerance raises with best estimate") {
    const DensityKernel kernel{ActivationParams(1, 1, M_E)};
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-16;
    cfg.max_refinements = 1;
    // kink inside a panel keeps successive levels from agreeing to 1e-16
    try {
        integrate_weighted(kernel, [](double h) { return std::abs(h - 0.37); }, cfg);
        FAIL("expected ToleranceError");
    } catch (const ToleranceError& e) {
        CHECK(e.best_estimate > 0.0);
        CHECK(e.residual_error > 0.0);
    }
}

TEST_CASE("integrate_weighted: self-consistency under tolerance halving") {
    const DensityKernel kernel{ActivationParams(2, 0.5, 2.0)};
    QuadratureConfig cfg;
    const auto coarse =
        integrate_weighted(kernel, [](double h) { return std::cos(h / 3.0); }, cfg);
    cfg.rel_tol /= 2.0;
    const auto fine =
        integrate_weighted(kernel, [](double h) { return std::cos(h / 3.0); }, cfg);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.error);
}

TEST_CASE("tail_mass: domination, conservation, symmetry") {
    for (double q : kQGrid) {
        for (double beta : kBetaGrid) {
            for (double base : kBaseGrid) {
                const ActivationParams params(q, beta, base);
                const DensityKernel kernel(params);
                for (int n : {9, 16, 25, 36, 64}) {
                    const double threshold = std::sqrt(static_cast<double>(n));
                    const double numeric = tail_mass(kernel, threshold);
                    CHECK(numeric < tail_bound(params, threshold));
                }
                // mass conservation at threshold 3
                const auto inner = integrate_on_interval(
                    0.0, 3.0, [&kernel](double h) { return kernel.psi(h); }, {});
                CHECK(std::abs(2.0 * inner.value + tail_mass(kernel, 3.0) - 1.0) < 1e-8);
            }
        }
    }

    const DensityKernel kernel{ActivationParams(1, 1, M_E)};
    CHECK(tail_mass(kernel, 4.0) == doctest::Approx(0.041872003084623695).epsilon(1e-9));
    CHECK(tail_mass(kernel, 4.0) < 2.0 / std::exp(3.0));
    CHECK_THROWS_AS(tail_mass(kernel, 0.5), std::domain_error);
    // decreasing toward zero
    CHECK(tail_mass(kernel, 6.0) < tail_mass(kernel, 4.0));
    CHECK(tail_mass(kernel, 12.0) < tail_mass(kernel, 6.0));
    CHECK(tail_mass(kernel, 25.0) < 1e-9);
    // q <-> 1/q kernels have bitwise-identical Psi, hence identical tails
    const DensityKernel mirrored{ActivationParams(0.5, 1, M_E)};
    const DensityKernel doubled{ActivationParams(2, 1, M_E)};
    CHECK(tail_mass(doubled, 4.0) == tail_mass(mirrored, 4.0));
}

TEST_CASE("integrate_on_interval: polynomial sanity") {
    const auto res = integrate_on_interval(
        0.0, 1.0, [](double x) { return x * x; }, {});
    CHECK(res.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(integrate_on_interval(1.0, 0.0, [](double) { return 1.0; }, {}),
                    std::invalid_argument);
}

TEST_CASE("WeightedIntegrator: deterministic repeat evaluation") {
    const DensityKernel kernel{ActivationParams(2, 1, 2.0)};
    WeightedIntegrator integrator(kernel, {});
    const auto a = integrator.integrate([](double h) { return std::sin(h / 2.0); });
    const auto b = integrator.integrate([](double h) { return std::sin(h / 2.0); });
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
    CHECK(a.evaluations == b.evaluations);
}
