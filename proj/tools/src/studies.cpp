#include "nnconv/study/studies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nnconv/analysis.hpp"
#include "nnconv/study/corpus.hpp"

namespace nnconv::study {

namespace {

constexpr double kRatioSlack = 1e-3;
constexpr double kStageSlack = 1e-7;

struct Failure {
    std::vector<std::string>& sink;

    template <typename... Parts>
    void operator()(Parts&&... parts) {
        std::ostringstream os;
        (os << ... << parts);
        sink.push_back(os.str());
    }
};

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<OperatorKind> sorted_kinds(std::vector<OperatorKind> v) {
    std::sort(v.begin(), v.end(),
              [](OperatorKind a, OperatorKind b) { return static_cast<int>(a) < static_cast<int>(b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

OperatorSpec make_spec(OperatorKind kind, int n, int quad_r) {
    if (kind == OperatorKind::quadrature) {
        return OperatorSpec::uniform_quadrature(n, quad_r);
    }
    return OperatorSpec(kind, n);
}

void require_corpus_norms(const StudyConfig& cfg) {
    const std::string bad = verify_sup_norms(cfg.labels, cfg.window_lo, cfg.window_hi);
    if (!bad.empty()) {
        throw ConfigError("corpus: '" + bad + "' violates its declared sup-norm on the window");
    }
}

std::string chain_string(const IterationPlan& plan) {
    std::string out;
    for (std::size_t i = 0; i < plan.chain.size(); ++i) {
        if (i) {
            out += '>';
        }
        out += to_string(plan.chain[i].kind);
        out += std::to_string(plan.chain[i].n);
    }
    return out;
}

}  // namespace

void apply_density_defaults(StudyConfig& cfg) {
    // Tail checks use thresholds n^(1-alpha); the default n list
    // already satisfies n^(1-alpha) > 2 at alpha = 0.5.
    (void)cfg;
}

void apply_converge_defaults(StudyConfig& cfg) {
    // Kinked corpus functions (ramp, abs_sin) converge algebraically under
    // node doubling; 1e-6 keeps every domination check conclusive (bounds
    // sit around 1e-2) without grinding the refinement ladder.
    if (!cfg.is_explicit("rel_tol")) {
        cfg.quad.rel_tol = 1e-6;
    }
}

void apply_bounds_defaults(StudyConfig& cfg) {
    // Taylor-remainder sups tolerate a coarser x grid; keeps the default
    // full-grid run at desk scale.
    if (!cfg.is_explicit("step")) {
        cfg.step = 0.1;
    }
    if (!cfg.is_explicit("labels")) {
        cfg.labels = {"const", "sin", "cos", "runge", "gauss"};
    }
}

void apply_iterate_defaults(StudyConfig& cfg) {
    // Lazy chains cube the node count; the defaults keep a depth-3 chain
    // around 1e8 leaf evaluations per grid point.
    if (!cfg.is_explicit("q")) {
        cfg.q_list = {1.0};
    }
    if (!cfg.is_explicit("beta")) {
        cfg.beta_list = {1.0};
    }
    if (!cfg.is_explicit("B")) {
        cfg.base_list = {M_E};
    }
    if (!cfg.is_explicit("labels")) {
        cfg.labels = {"const", "sin"};
    }
    if (!cfg.is_explicit("window_lo")) {
        cfg.window_lo = -1.0;
    }
    if (!cfg.is_explicit("window_hi")) {
        cfg.window_hi = 1.0;
    }
    if (!cfg.is_explicit("step")) {
        cfg.step = 0.5;
    }
    if (!cfg.is_explicit("tail_eps")) {
        cfg.quad.tail_epsilon = 1e-9;
    }
    if (!cfg.is_explicit("rel_tol")) {
        cfg.quad.rel_tol = 1e-8;
    }
    if (!cfg.is_explicit("panel_width")) {
        cfg.quad.panel_width = 2.5;
    }
}

void apply_smoothness_defaults(StudyConfig& cfg) {
    if (!cfg.is_explicit("n")) {
        cfg.n_list = {16};
    }
    if (!cfg.is_explicit("step")) {
        cfg.step = 0.01;
    }
    if (!cfg.is_explicit("rel_tol")) {
        cfg.quad.rel_tol = 1e-6;
    }
}

StudyOutcome run_density_check(const StudyConfig& cfg) {
    cfg.validate_for_bounds();
    StudyOutcome outcome;
    Failure fail{outcome.failures};
    outcome.table.columns = {"schema_version",   "q",
                             "beta",             "B",
                             "n",                "alpha",
                             "mass",             "mass_error",
                             "evenness_residual", "argmax_residual",
                             "maxval_residual",  "tail_threshold",
                             "tail_mass",        "tail_bound",
                             "pass"};

    for (double q : sorted(cfg.q_list)) {
        for (double beta : sorted(cfg.beta_list)) {
            for (double base : sorted(cfg.base_list)) {
                const ActivationParams params(q, beta, base);
                const DensityKernel kernel(params);
                WeightedIntegrator integrator(kernel, cfg.quad);

                IntegralResult mass;
                try {
                    mass = integrator.integrate([](double) { return 1.0; });
                } catch (const ToleranceError& e) {
                    outcome.tolerance_failure = true;
                    fail("density q=", q, " beta=", beta, " B=", base,
                         ": mass integral did not converge: ", e.what());
                    continue;
                }

                double evenness = 0.0;
                for (int i = 0; i <= 1000; ++i) {
                    const double x = -10.0 + 20.0 * i / 1000.0;
                    evenness = std::max(evenness, std::abs(kernel.psi(x) - kernel.psi(-x)));
                }

                const double loc = kernel.max_location();
                double best_x = loc - 2.0;
                double best_g = -1.0;
                for (int i = 0; i <= 8000; ++i) {
                    const double x = loc - 2.0 + 4.0 * i / 8000.0;
                    const double g = eval_G(params, x);
                    if (g > best_g) {
                        best_g = g;
                        best_x = x;
                    }
                }
                const double argmax_residual = std::abs(best_x - loc);
                const double maxval_residual =
                    std::abs(eval_G(params, loc) - kernel.max_value_G());

                if (std::abs(mass.value - 1.0) > 1e-8) {
                    fail("density q=", q, " beta=", beta, " B=", base, ": mass ",
                         fmt17(mass.value), " deviates from 1 by more than 1e-8");
                }
                if (evenness >= 1e-13) {
                    fail("density q=", q, " beta=", beta, " B=", base,
                         ": evenness residual ", fmt17(evenness));
                }
                if (argmax_residual > 1e-3) {
                    fail("density q=", q, " beta=", beta, " B=", base, ": argmax residual ",
                         fmt17(argmax_residual));
                }
                if (maxval_residual > 1e-10) {
                    fail("density q=", q, " beta=", beta, " B=", base, ": max value residual ",
                         fmt17(maxval_residual));
                }

                for (int n : sorted(cfg.n_list)) {
                    const double threshold = std::pow(n, 1.0 - cfg.alpha);
                    const double numeric = tail_mass(kernel, threshold, cfg.quad);
                    const double bound = tail_bound(params, threshold);
                    const bool tail_ok = numeric < bound;
                    if (!tail_ok) {
                        fail("density q=", q, " beta=", beta, " B=", base, " n=", n,
                             ": tail mass ", fmt17(numeric), " not below bound ", fmt17(bound));
                    }
                    const bool row_ok = tail_ok && std::abs(mass.value - 1.0) <= 1e-8 &&
                                        evenness < 1e-13 && argmax_residual <= 1e-3 &&
                                        maxval_residual <= 1e-10;
                    outcome.table.rows.push_back(
                        {int_cell(1), num_cell(q), num_cell(beta), num_cell(base), int_cell(n),
                         num_cell(cfg.alpha), num_cell(mass.value), num_cell(mass.error),
                         num_cell(evenness), num_cell(argmax_residual),
                         num_cell(maxval_residual), num_cell(threshold), num_cell(numeric),
                         num_cell(bound), bool_cell(row_ok)});
                }
            }
        }
    }
    return outcome;
}

StudyOutcome run_converge(const StudyConfig& cfg) {
    cfg.validate_for_bounds();
    StudyOutcome outcome;
    Failure fail{outcome.failures};
    outcome.table.columns = {"schema_version", "kind",  "q",         "beta",
                             "B",              "n",     "alpha",     "label",
                             "sup_error",      "bound", "ratio",     "quad_error",
                             "conclusive"};
    const std::vector<double> grid = cfg.make_grid();
    require_corpus_norms(cfg);

    for (OperatorKind kind : sorted_kinds(cfg.kinds)) {
        for (double q : sorted(cfg.q_list)) {
            for (double beta : sorted(cfg.beta_list)) {
                for (double base : sorted(cfg.base_list)) {
                    const ActivationParams params(q, beta, base);
                    const DensityKernel kernel(params);
                    const OperatorEngine engine(kernel, cfg.quad);

                    for (const std::string& label : sorted(cfg.labels)) {
                        const TargetFunction& f = find_corpus(label).fn;
                        double prev_sup = -1.0;
                        double prev_err = 0.0;
                        for (int n : sorted(cfg.n_list)) {
                            const OperatorSpec spec = make_spec(kind, n, cfg.quad_r);
                            const BoundQuery query(cfg.alpha, kind, n);
                            double sup = 0.0;
                            double qerr = 0.0;
                            try {
                                for (double x : grid) {
                                    const Approximation a = engine.apply(f, spec, x);
                                    sup = std::max(sup, std::abs(a.value - f(x)));
                                    qerr = std::max(qerr, a.error);
                                }
                            } catch (const ToleranceError& e) {
                                outcome.tolerance_failure = true;
                                fail("converge ", to_string(kind), " q=", q, " beta=", beta,
                                     " B=", base, " n=", n, " ", label, ": ", e.what());
                                continue;
                            }
                            const double bound = bound_for(f, query, params);
                            const double ratio = sup / bound;
                            const bool conclusive = qerr * 100.0 <= bound;
                            bool row_ok = true;
                            if (conclusive && ratio > 1.0 + kRatioSlack) {
                                row_ok = false;
                                fail("converge ", to_string(kind), " q=", q, " beta=", beta,
                                     " B=", base, " n=", n, " ", label, ": ratio ",
                                     fmt17(ratio), " exceeds 1+1e-3");
                            }
                            if (label == "const" && sup > 1e-8) {
                                row_ok = false;
                                fail("converge ", to_string(kind), " q=", q, " beta=", beta,
                                     " B=", base, " n=", n,
                                     ": constant not reproduced, sup=", fmt17(sup));
                            }
                            if (prev_sup >= 0.0 && sup > prev_sup + prev_err + qerr) {
                                row_ok = false;
                                fail("converge ", to_string(kind), " q=", q, " beta=", beta,
                                     " B=", base, " ", label, ": sup error increased at n=", n);
                            }
                            prev_sup = sup;
                            prev_err = qerr;
                            outcome.table.rows.push_back(
                                {int_cell(1), text_cell(to_string(spec.kind)), num_cell(q),
                                 num_cell(beta), num_cell(base), int_cell(n),
                                 num_cell(cfg.alpha), text_cell(label), num_cell(sup),
                                 num_cell(bound), num_cell(ratio), num_cell(qerr),
                                 bool_cell(conclusive && row_ok)});
                        }
                    }
                }
            }
        }
    }
    return outcome;
}

StudyOutcome run_bounds(const StudyConfig& cfg) {
    cfg.validate_for_bounds();
    StudyOutcome outcome;
    Failure fail{outcome.failures};
    outcome.table.columns = {"schema_version", "record", "kind", "q",     "beta",
                             "B",              "n",      "alpha", "label", "k",
                             "numeric",        "bound",  "ratio", "pass"};
    const std::vector<double> grid = cfg.make_grid();
    require_corpus_norms(cfg);

    for (double q : sorted(cfg.q_list)) {
        for (double beta : sorted(cfg.beta_list)) {
            for (double base : sorted(cfg.base_list)) {
                const ActivationParams params(q, beta, base);
                const DensityKernel kernel(params);
                const OperatorEngine engine(kernel, cfg.quad);
                const WeightedIntegrator& integrator = engine.integrator();

                // Absolute moments of Psi, k = 1..5.
                for (int k = 1; k <= 5; ++k) {
                    const IntegralResult numeric = integrator.integrate([k](double h) {
                        double r = 1.0;
                        for (int i = 0; i < k; ++i) {
                            r *= std::abs(h);
                        }
                        return r;
                    });
                    const double bound = moment_bound(params, k);
                    const bool ok = numeric.value < bound;
                    if (!ok) {
                        fail("moment q=", q, " beta=", beta, " B=", base, " k=", k,
                             ": numeric ", fmt17(numeric.value), " not below bound ",
                             fmt17(bound));
                    }
                    outcome.table.rows.push_back(
                        {int_cell(1), text_cell("moment"), text_cell("psi"), num_cell(q),
                         num_cell(beta), num_cell(base), int_cell(0), num_cell(cfg.alpha),
                         text_cell("|h|^k"), int_cell(k), num_cell(numeric.value),
                         num_cell(bound), num_cell(numeric.value / bound), bool_cell(ok)});
                }

                // Centered moments per kind.
                for (OperatorKind kind : sorted_kinds(cfg.kinds)) {
                    for (int n : sorted(cfg.n_list)) {
                        const OperatorSpec spec = make_spec(kind, n, cfg.quad_r);
                        for (int k = 1; k <= 4; ++k) {
                            const Approximation cm = engine.centered_moment(spec, 0.0, k);
                            const double bound = centered_moment_bound(params, kind, n, k);
                            bool ok = std::abs(cm.value) <= bound;
                            if (!ok) {
                                fail("centered ", to_string(kind), " q=", q, " beta=", beta,
                                     " B=", base, " n=", n, " k=", k, ": |", fmt17(cm.value),
                                     "| above bound ", fmt17(bound));
                            }
                            if (kind == OperatorKind::direct && k % 2 == 1 &&
                                std::abs(cm.value) > 1e-9) {
                                ok = false;
                                fail("centered direct q=", q, " beta=", beta, " B=", base,
                                     " n=", n, " k=", k,
                                     ": odd moment not vanishing: ", fmt17(cm.value));
                            }
                            outcome.table.rows.push_back(
                                {int_cell(1), text_cell("centered_moment"),
                                 text_cell(to_string(kind)), num_cell(q), num_cell(beta),
                                 num_cell(base), int_cell(n), num_cell(cfg.alpha),
                                 text_cell("(.-x)^k"), int_cell(k), num_cell(cm.value),
                                 num_cell(bound), num_cell(std::abs(cm.value) / bound),
                                 bool_cell(ok)});
                        }
                    }
                }

                // Taylor-remainder comparisons for corpus functions with
                // enough derivatives.
                for (OperatorKind kind : sorted_kinds(cfg.kinds)) {
                    for (int n : sorted(cfg.n_list)) {
                        const OperatorSpec spec = make_spec(kind, n, cfg.quad_r);
                        for (const std::string& label : sorted(cfg.labels)) {
                            const TargetFunction& f = find_corpus(label).fn;
                            for (int N = 1; N <= 2; ++N) {
                                if (!f.has_derivative(N)) {
                                    continue;
                                }
                                const BoundQuery query(cfg.alpha, kind, n, 0, N);
                                std::vector<double> cms(N);
                                for (int k = 1; k <= N; ++k) {
                                    cms[k - 1] = engine.centered_moment(spec, 0.0, k).value;
                                }
                                double sup_lhs = 0.0;
                                double qerr = 0.0;
                                for (double x : grid) {
                                    const Approximation a = engine.apply(f, spec, x);
                                    double taylor = f(x);
                                    double kfact = 1.0;
                                    for (int k = 1; k <= N; ++k) {
                                        kfact *= k;
                                        taylor += f.derivative(k)(x) / kfact * cms[k - 1];
                                    }
                                    sup_lhs = std::max(sup_lhs, std::abs(a.value - taylor));
                                    qerr = std::max(qerr, a.error);
                                }
                                const TaylorBound tb = bound_taylor(f, query, params);
                                const bool conclusive = qerr * 100.0 <= tb.remainder_bound;
                                const bool ok = !conclusive || sup_lhs <= tb.remainder_bound;
                                if (!ok) {
                                    fail("taylor ", to_string(kind), " q=", q, " beta=", beta,
                                         " B=", base, " n=", n, " ", label, " N=", N,
                                         ": remainder ", fmt17(sup_lhs), " above bound ",
                                         fmt17(tb.remainder_bound));
                                }
                                // zero bounds arise for the zero function; keep ratios finite
                                const double ratio = tb.remainder_bound > 0.0
                                                         ? sup_lhs / tb.remainder_bound
                                                         : 0.0;
                                outcome.table.rows.push_back(
                                    {int_cell(1), text_cell("taylor_remainder"),
                                     text_cell(to_string(kind)), num_cell(q), num_cell(beta),
                                     num_cell(base), int_cell(n), num_cell(cfg.alpha),
                                     text_cell(label), int_cell(N), num_cell(sup_lhs),
                                     num_cell(tb.remainder_bound), num_cell(ratio),
                                     bool_cell(ok)});
                            }
                        }
                    }
                }
            }
        }
    }
    return outcome;
}

StudyOutcome run_iterate(const StudyConfig& cfg) {
    cfg.validate_for_bounds();
    StudyOutcome outcome;
    Failure fail{outcome.failures};
    outcome.table.columns = {"schema_version", "kind",      "q",
                             "beta",           "B",         "alpha",
                             "label",          "chain",     "r",
                             "empirical",      "single_sum", "r_fold_bound",
                             "sum_bound",      "stage_sup", "sup_norm",
                             "pass"};
    const std::vector<double> grid = cfg.make_grid();
    require_corpus_norms(cfg);
    // every chain scale must clear the n^(1-alpha) > 2 floor up front
    for (int scale : {9, 16, 25}) {
        if (!(std::pow(scale, 1.0 - cfg.alpha) > 2.0)) {
            throw ConfigError("iterate: chain scale " + std::to_string(scale) +
                              " violates n^(1-alpha) > 2 at alpha=" + fmt17(cfg.alpha));
        }
    }

    for (double q : sorted(cfg.q_list)) {
        for (double beta : sorted(cfg.beta_list)) {
            for (double base : sorted(cfg.base_list)) {
                const ActivationParams params(q, beta, base);
                const DensityKernel kernel(params);
                const OperatorEngine engine(kernel, cfg.quad);

                std::vector<IterationPlan> plans;
                plans.emplace_back(std::vector<OperatorSpec>{OperatorSpec(OperatorKind::direct, 16)});
                plans.emplace_back(std::vector<OperatorSpec>(2, OperatorSpec(OperatorKind::direct, 16)),
                                   true);
                plans.emplace_back(std::vector<OperatorSpec>(3, OperatorSpec(OperatorKind::direct, 16)),
                                   true);
                plans.emplace_back(
                    std::vector<OperatorSpec>{OperatorSpec(OperatorKind::direct, 9),
                                              OperatorSpec(OperatorKind::direct, 16),
                                              OperatorSpec(OperatorKind::direct, 25)},
                    true);
                plans.emplace_back(
                    std::vector<OperatorSpec>{OperatorSpec(OperatorKind::kantorovich, 9),
                                              OperatorSpec::uniform_quadrature(16, cfg.quad_r)},
                    true);

                for (const std::string& label : sorted(cfg.labels)) {
                    const TargetFunction& f = find_corpus(label).fn;
                    for (const IterationPlan& plan : plans) {
                        const std::size_t r = plan.chain.size();
                        std::vector<Approximation> vals;
                        try {
                            vals = engine.apply_iterated(f, plan, grid);
                        } catch (const ToleranceError& e) {
                            outcome.tolerance_failure = true;
                            fail("iterate ", chain_string(plan), " ", label, ": ", e.what());
                            continue;
                        }

                        double empirical = 0.0;
                        for (std::size_t i = 0; i < grid.size(); ++i) {
                            empirical = std::max(empirical,
                                                 std::abs(vals[i].value - f(grid[i])));
                        }

                        // Per-stage single-application deviations and bounds.
                        double single_sum = 0.0;
                        double first_bound = 0.0;
                        for (std::size_t p = 0; p < r; ++p) {
                            const OperatorSpec& spec = plan.chain[p];
                            double dev = 0.0;
                            for (double x : grid) {
                                dev = std::max(dev,
                                               std::abs(engine.apply(f, spec, x).value - f(x)));
                            }
                            single_sum += dev;
                            if (p == 0) {
                                const BoundQuery query(cfg.alpha, spec.kind, spec.n);
                                first_bound = bound_for(f, query, params);
                            }
                        }
                        const double r_fold_bound = static_cast<double>(r) * first_bound;
                        const double sum_bound = iterated_bound(f, plan, params, cfg.alpha);

                        // Non-expansiveness of every stage on the grid.
                        double stage_sup = 0.0;
                        for (std::size_t s = 1; s <= r; ++s) {
                            if (s == r) {
                                for (const Approximation& a : vals) {
                                    stage_sup = std::max(stage_sup, std::abs(a.value));
                                }
                            } else {
                                const TargetFunction stage = engine.chain_stage(f, plan, s);
                                for (double x : grid) {
                                    stage_sup = std::max(stage_sup, std::abs(stage(x)));
                                }
                            }
                        }

                        const double slack = static_cast<double>(r) * kStageSlack;
                        bool ok = true;
                        if (empirical > single_sum + slack) {
                            ok = false;
                            fail("iterate ", chain_string(plan), " ", label, ": empirical ",
                                 fmt17(empirical), " above telescoped singles ",
                                 fmt17(single_sum));
                        }
                        if (empirical > r_fold_bound + slack) {
                            ok = false;
                            fail("iterate ", chain_string(plan), " ", label, ": empirical ",
                                 fmt17(empirical), " above r-fold bound ", fmt17(r_fold_bound));
                        }
                        if (plan.monotone && empirical > sum_bound + slack) {
                            ok = false;
                            fail("iterate ", chain_string(plan), " ", label, ": empirical ",
                                 fmt17(empirical), " above summed bound ", fmt17(sum_bound));
                        }
                        if (stage_sup > f.sup_norm() + kStageSlack) {
                            ok = false;
                            fail("iterate ", chain_string(plan), " ", label, ": stage sup ",
                                 fmt17(stage_sup), " above sup-norm ", fmt17(f.sup_norm()));
                        }

                        bool homogeneous = true;
                        for (const OperatorSpec& spec : plan.chain) {
                            homogeneous = homogeneous && spec.kind == plan.chain[0].kind;
                        }
                        outcome.table.rows.push_back(
                            {int_cell(1),
                             text_cell(homogeneous ? to_string(plan.chain[0].kind) : "mixed"),
                             num_cell(q), num_cell(beta), num_cell(base), num_cell(cfg.alpha),
                             text_cell(label), text_cell(chain_string(plan)),
                             int_cell(static_cast<long long>(r)), num_cell(empirical),
                             num_cell(single_sum), num_cell(r_fold_bound), num_cell(sum_bound),
                             num_cell(stage_sup), num_cell(f.sup_norm()), bool_cell(ok)});
                    }
                }
            }
        }
    }
    return outcome;
}

StudyOutcome run_smoothness(const StudyConfig& cfg) {
    cfg.validate_for_bounds();
    StudyOutcome outcome;
    Failure fail{outcome.failures};
    outcome.table.columns = {"schema_version", "kind",    "q",        "beta",
                             "B",              "n",       "alpha",    "label",
                             "theta",          "omega_f", "omega_opf", "quad_error",
                             "pass"};
    const std::vector<double> grid = cfg.make_grid();
    require_corpus_norms(cfg);
    const std::vector<double> thetas{0.05, 0.1, 0.5, 1.0};

    for (OperatorKind kind : sorted_kinds(cfg.kinds)) {
        for (double q : sorted(cfg.q_list)) {
            for (double beta : sorted(cfg.beta_list)) {
                for (double base : sorted(cfg.base_list)) {
                    const ActivationParams params(q, beta, base);
                    const DensityKernel kernel(params);
                    const OperatorEngine engine(kernel, cfg.quad);
                    for (int n : sorted(cfg.n_list)) {
                        const OperatorSpec spec = make_spec(kind, n, cfg.quad_r);
                        for (const std::string& label : sorted(cfg.labels)) {
                            const TargetFunction& f = find_corpus(label).fn;
                            std::vector<double> fv(grid.size());
                            std::vector<double> ov(grid.size());
                            double qerr = 0.0;
                            try {
                                for (std::size_t i = 0; i < grid.size(); ++i) {
                                    fv[i] = f(grid[i]);
                                    const Approximation a = engine.apply(f, spec, grid[i]);
                                    ov[i] = a.value;
                                    qerr = std::max(qerr, a.error);
                                }
                            } catch (const ToleranceError& e) {
                                outcome.tolerance_failure = true;
                                fail("smoothness ", to_string(kind), " ", label, ": ",
                                     e.what());
                                continue;
                            }
                            for (double theta : thetas) {
                                const std::size_t window = static_cast<std::size_t>(
                                    std::floor(theta / cfg.step + 1e-9));
                                const double omega_f = estimate_modulus_sampled(fv, window);
                                const double omega_op = estimate_modulus_sampled(ov, window);
                                bool ok = omega_op <= omega_f + 2.0 * qerr;
                                if (!ok) {
                                    fail("smoothness ", to_string(kind), " q=", q,
                                         " beta=", beta, " B=", base, " n=", n, " ", label,
                                         " theta=", theta, ": ", fmt17(omega_op), " above ",
                                         fmt17(omega_f), " + 2*", fmt17(qerr));
                                }
                                if (label == "id" &&
                                    std::abs(omega_op - theta) > cfg.step + 2.0 * qerr) {
                                    ok = false;
                                    fail("smoothness id sharpness ", to_string(kind), " q=", q,
                                         " beta=", beta, " B=", base, " n=", n,
                                         " theta=", theta, ": omega ", fmt17(omega_op));
                                }
                                outcome.table.rows.push_back(
                                    {int_cell(1), text_cell(to_string(kind)), num_cell(q),
                                     num_cell(beta), num_cell(base), int_cell(n),
                                     num_cell(cfg.alpha), text_cell(label), num_cell(theta),
                                     num_cell(omega_f), num_cell(omega_op), num_cell(qerr),
                                     bool_cell(ok)});
                            }
                        }
                    }
                }
            }
        }
    }
    return outcome;
}

}  // namespace nnconv::study
