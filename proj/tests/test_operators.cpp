#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nnconv/analysis.hpp"
#include "nnconv/operators.hpp"

using namespace nnconv;

namespace {

TargetFunction make_sin() {
    TargetFunction f("sin", [](double x) { return std::sin(x); }, 1.0);
    f.with_derivative([](double x) { return std::cos(x); }, 1.0);
    f.with_derivative([](double x) { return -std::sin(x); }, 1.0);
    return f;
}

TargetFunction make_const(double c) {
    TargetFunction f("const", [c](double) { return c; }, std::abs(c));
    f.with_derivative([](double) { return 0.0; }, 0.0);
    return f;
}

const DensityKernel kKernel{ActivationParams(1, 1, M_E)};

}  // namespace

TEST_CASE("OperatorSpec validation") {
    CHECK_THROWS_AS(OperatorSpec(OperatorKind::direct, 0), std::invalid_argument);
    CHECK_THROWS_AS(OperatorSpec(OperatorKind::quadrature, 4), std::invalid_argument);
    CHECK_THROWS_AS(OperatorSpec(4, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(OperatorSpec(4, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(OperatorSpec(4, {1.5, -0.5}), std::invalid_argument);
    CHECK_NOTHROW(OperatorSpec(4, {0.25, 0.25, 0.25, 0.25}));
    const OperatorSpec u = OperatorSpec::uniform_quadrature(8, 3);
    double sum = 0.0;
    for (double w : u.weights) {
        sum += w;
    }
    CHECK(sum == 1.0);
}

TEST_CASE("IterationPlan validation") {
    CHECK_THROWS_AS(IterationPlan({}), std::invalid_argument);
    std::vector<OperatorSpec> decreasing{OperatorSpec(OperatorKind::direct, 16),
                                         OperatorSpec(OperatorKind::direct, 9)};
    CHECK_THROWS_AS(IterationPlan(decreasing, true), std::invalid_argument);
    CHECK_NOTHROW(IterationPlan(decreasing, false));
}

TEST_CASE("constants are reproduced by all three operators") {
    const TargetFunction f = make_const(0.75);
    const OperatorEngine engine(kKernel, {});
    for (int n : {1, 7, 32}) {
        CHECK(std::abs(engine.apply(f, OperatorSpec(OperatorKind::direct, n), 0.4).value -
                       0.75) < 1e-8);
        CHECK(std::abs(engine.apply(f, OperatorSpec(OperatorKind::kantorovich, n), -1.2).value -
                       0.75) < 1e-8);
        CHECK(std::abs(
                  engine.apply(f, OperatorSpec::uniform_quadrature(n, 4), 2.0).value - 0.75) <
              1e-8);
    }
}

TEST_CASE("quadrature kind: constants are weight-invariant") {
    const TargetFunction f = make_const(1.0);
    const OperatorEngine engine(kKernel, {});
    const double a = engine.apply(f, OperatorSpec(16, {0.25, 0.25, 0.25, 0.25}), 0.3).value;
    const double b = engine.apply(f, OperatorSpec(16, {0.7, 0.1, 0.1, 0.1}), 0.3).value;
    const double c = engine.apply(f, OperatorSpec(16, {1.0}), 0.3).value;
    CHECK(std::abs(a - b) < 1e-10);
    CHECK(std::abs(a - c) < 1e-10);
}

TEST_CASE("identity map: direct gives x, Kantorovich gives x + 1/(2n)") {
    TargetFunction id("id", [](double x) { return x; }, 10.0);
    const OperatorEngine engine(kKernel, {});
    for (int n : {10, 16, 64}) {
        for (double x : {-2.0, 0.0, 0.7}) {
            CHECK(std::abs(engine.apply(id, OperatorSpec(OperatorKind::direct, n), x).value -
                           x) < 1e-8);
            CHECK(std::abs(
                      engine.apply(id, OperatorSpec(OperatorKind::kantorovich, n), x).value -
                      (x + 0.5 / n)) < 1e-8);
        }
    }
}

TEST_CASE("quadrature kind with r = 1 equals the direct operator of the shifted function") {
    const TargetFunction f = make_sin();
    const int n = 16;
    TargetFunction shifted("sin_shift", [n](double y) { return std::sin(y + 1.0 / n); }, 1.0);
    const OperatorEngine engine(kKernel, {});
    for (double x : {-1.0, 0.3, 2.2}) {
        const double lhs = engine.apply(f, OperatorSpec(n, {1.0}), x).value;
        const double rhs = engine.apply(shifted, OperatorSpec(OperatorKind::direct, n), x).value;
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("frozen operator values against adaptive reference integration") {
    const OperatorEngine engine(kKernel, {});
    const TargetFunction fsin = make_sin();
    TargetFunction fcos("cos", [](double x) { return std::cos(x); }, 1.0);

    CHECK(engine.apply(fsin, OperatorSpec(OperatorKind::direct, 16), 0.3).value ==
          doctest::Approx(0.29343871293268936).epsilon(1e-10));
    CHECK(engine.apply(fcos, OperatorSpec(OperatorKind::kantorovich, 16), 0.0).value ==
          doctest::Approx(0.992310179822002).epsilon(1e-10));
    CHECK(engine.apply(fsin, OperatorSpec::uniform_quadrature(32, 4), 0.3).value ==
          doctest::Approx(0.31355453638117853).epsilon(1e-10));
}

TEST_CASE("single-point errors sit below the matching bounds") {
    const OperatorEngine engine(kKernel, {});
    const ActivationParams& params = kKernel.params();
    const auto trig_modulus = [](double theta) {
        return theta >= M_PI ? 2.0 : 2.0 * std::sin(0.5 * theta);
    };

    TargetFunction fsin = make_sin();
    fsin.with_exact_modulus(trig_modulus);
    TargetFunction fcos("cos", [](double x) { return std::cos(x); }, 1.0);
    fcos.with_exact_modulus(trig_modulus);

    const double t32 = bound_T(fsin, BoundQuery(0.5, OperatorKind::direct, 32), params);
    CHECK(std::abs(engine.apply(fsin, OperatorSpec(OperatorKind::direct, 32), 0.3).value -
                   std::sin(0.3)) <= t32);

    const double e32c = bound_E(fcos, BoundQuery(0.5, OperatorKind::kantorovich, 32), params);
    CHECK(std::abs(engine.apply(fcos, OperatorSpec(OperatorKind::kantorovich, 32), 0.0).value -
                   1.0) <= e32c);

    const double e32s = bound_E(fsin, BoundQuery(0.5, OperatorKind::quadrature, 32), params);
    CHECK(std::abs(engine.apply(fsin, OperatorSpec::uniform_quadrature(32, 4), 0.3).value -
                   std::sin(0.3)) <= e32s);
}

TEST_CASE("centered moments") {
    const OperatorEngine engine(kKernel, {});
    const ActivationParams& params = kKernel.params();

    SUBCASE("direct kind, odd orders vanish") {
        for (int k : {1, 3}) {
            for (int n : {10, 16}) {
                CHECK(std::abs(
                          engine.centered_moment(OperatorSpec(OperatorKind::direct, n), 0.5, k)
                              .value) < 1e-9);
            }
        }
    }
    SUBCASE("direct kind, k = 2, n = 10 against frozen value and bound") {
        const double value =
            engine.centered_moment(OperatorSpec(OperatorKind::direct, 10), 0.0, 2).value;
        CHECK(value == doctest::Approx(0.036232014670245474).epsilon(1e-8));
        CHECK(std::abs(value) <=
              centered_moment_bound(params, OperatorKind::direct, 10, 2));
        CHECK(centered_moment_bound(params, OperatorKind::direct, 10, 2) ==
              doctest::Approx(0.1102716636625618).epsilon(1e-12));
    }
    SUBCASE("Kantorovich kind, k = 1 equals 1/(2n)") {
        CHECK(engine.centered_moment(OperatorSpec(OperatorKind::kantorovich, 10), 0.0, 1)
                  .value == doctest::Approx(0.05).epsilon(1e-9));
    }
    SUBCASE("all kinds dominated by the closed-form bounds") {
        for (int k = 1; k <= 4; ++k) {
            CHECK(std::abs(engine.centered_moment(OperatorSpec(OperatorKind::direct, 16), 0.0, k)
                               .value) <=
                  centered_moment_bound(params, OperatorKind::direct, 16, k));
            CHECK(std::abs(
                      engine.centered_moment(OperatorSpec(OperatorKind::kantorovich, 16), 0.0, k)
                          .value) <=
                  centered_moment_bound(params, OperatorKind::kantorovich, 16, k));
            CHECK(std::abs(engine.centered_moment(OperatorSpec::uniform_quadrature(16, 4), 0.0,
                                                  k)
                               .value) <=
                  centered_moment_bound(params, OperatorKind::quadrature, 16, k));
        }
    }
    SUBCASE("k = 0 rejected") {
        CHECK_THROWS_AS(engine.centered_moment(OperatorSpec(OperatorKind::direct, 10), 0.0, 0),
                        std::invalid_argument);
    }
}

TEST_CASE("derivative commutation") {
    const OperatorEngine engine(kKernel, {});
    const TargetFunction fsin = make_sin();

    SUBCASE("sin, first order, direct kind") {
        const auto [lhs, rhs] =
            engine.derivative_commutation(fsin, OperatorSpec(OperatorKind::direct, 16), 0.5, 1);
        CHECK(std::abs(lhs - rhs) < 1e-4);
    }
    SUBCASE("constant, both sides vanish") {
        const TargetFunction f = make_const(2.0);
        const auto [lhs, rhs] =
            engine.derivative_commutation(f, OperatorSpec(OperatorKind::direct, 16), 0.0, 1);
        CHECK(std::abs(lhs) < 1e-6);
        CHECK(std::abs(rhs) < 1e-10);
    }
    SUBCASE("sin, second order, Kantorovich kind") {
        const auto [lhs, rhs] = engine.derivative_commutation(
            fsin, OperatorSpec(OperatorKind::kantorovich, 16), 0.2, 2);
        CHECK(std::abs(lhs - rhs) < 1e-3);
    }
    SUBCASE("missing derivative order is a specification error") {
        TargetFunction bare("bare", [](double x) { return std::sin(x); }, 1.0);
        CHECK_THROWS_AS(
            engine.derivative_commutation(bare, OperatorSpec(OperatorKind::direct, 16), 0.0, 1),
            std::invalid_argument);
    }
}

TEST_CASE("non-expansiveness on a grid") {
    const OperatorEngine engine(kKernel, {});
    TargetFunction runge("runge", [](double x) { return 1.0 / (1.0 + x * x); }, 1.0);
    for (const TargetFunction& f : {make_sin(), runge}) {
        for (OperatorKind kind :
             {OperatorKind::direct, OperatorKind::kantorovich, OperatorKind::quadrature}) {
            const OperatorSpec spec = kind == OperatorKind::quadrature
                                          ? OperatorSpec::uniform_quadrature(16, 4)
                                          : OperatorSpec(kind, 16);
            for (double x = -3.0; x <= 3.0; x += 0.25) {
                CHECK(std::abs(engine.apply(f, spec, x).value) <= f.sup_norm() + 1e-7);
            }
        }
    }
}

TEST_CASE("iterated chains") {
    // Coarse engine: lazy chains cube the node count.
    QuadratureConfig coarse;
    coarse.tail_epsilon = 1e-9;
    coarse.rel_tol = 1e-8;
    coarse.panel_width = 2.5;
    const OperatorEngine engine(kKernel, coarse);
    const std::vector<double> grid{-1.0, -0.5, 0.0, 0.5, 1.0};
    const TargetFunction fsin = make_sin();

    SUBCASE("length-1 chain is a single application") {
        const IterationPlan plan({OperatorSpec(OperatorKind::direct, 16)});
        const auto vals = engine.apply_iterated(fsin, plan, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(vals[i].value ==
                  engine.apply(fsin, plan.chain[0], grid[i]).value);
        }
    }
    SUBCASE("constants pass through any chain") {
        const TargetFunction f = make_const(0.6);
        const IterationPlan plan({OperatorSpec(OperatorKind::kantorovich, 9),
                                  OperatorSpec::uniform_quadrature(16, 2)},
                                 true);
        for (const Approximation& a : engine.apply_iterated(f, plan, grid)) {
            CHECK(std::abs(a.value - 0.6) < 1e-6);
        }
    }
    SUBCASE("telescoping: r-fold deviation within r times single deviation") {
        double single = 0.0;
        const OperatorSpec spec(OperatorKind::direct, 16);
        for (double x : grid) {
            single = std::max(single, std::abs(engine.apply(fsin, spec, x).value - std::sin(x)));
        }
        for (std::size_t r : {2u, 3u}) {
            const IterationPlan plan(std::vector<OperatorSpec>(r, spec));
            const auto vals = engine.apply_iterated(fsin, plan, grid);
            double dev = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                dev = std::max(dev, std::abs(vals[i].value - std::sin(grid[i])));
            }
            CHECK(dev <= static_cast<double>(r) * single + static_cast<double>(r) * 1e-7);
        }
    }
    SUBCASE("mixed-kind monotone chain telescopes too") {
        const OperatorSpec inner(OperatorKind::kantorovich, 9);
        const OperatorSpec outer = OperatorSpec::uniform_quadrature(16, 2);
        double singles = 0.0;
        for (const OperatorSpec& spec : {inner, outer}) {
            double dev = 0.0;
            for (double x : grid) {
                dev = std::max(dev,
                               std::abs(engine.apply(fsin, spec, x).value - std::sin(x)));
            }
            singles += dev;
        }
        const IterationPlan plan({inner, outer}, true);
        const auto vals = engine.apply_iterated(fsin, plan, grid);
        double dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            dev = std::max(dev, std::abs(vals[i].value - std::sin(grid[i])));
        }
        CHECK(dev <= singles + 2e-7);
    }
    SUBCASE("budget error fires before evaluation") {
        IterationPlan plan(std::vector<OperatorSpec>(3, OperatorSpec(OperatorKind::direct, 16)));
        plan.eval_budget = 10.0;
        CHECK_THROWS_AS(engine.apply_iterated(fsin, plan, grid), BudgetError);
    }
    SUBCASE("sup-norm metadata propagates unchanged") {
        const IterationPlan plan(std::vector<OperatorSpec>(2, OperatorSpec(OperatorKind::direct, 16)));
        const TargetFunction stage = engine.chain_stage(fsin, plan, 2);
        CHECK(stage.sup_norm() == fsin.sup_norm());
    }
}
