#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nnconv/study/studies.hpp"

namespace {

using nnconv::study::StudyConfig;
using nnconv::study::StudyOutcome;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format;
    double tail_eps = 0.0;
    double rel_tol = 0.0;
    std::vector<double> window;
    double step = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Key-value study config file");
        cmd->add_option("--out", out_path, "Report output path");
        cmd->add_option("--format", format, "Report format: csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--tail-eps", tail_eps, "Psi mass allowed outside truncation");
        cmd->add_option("--rel-tol", rel_tol, "Quadrature refinement tolerance");
        cmd->add_option("--window", window, "Study window LO HI")->expected(2);
        cmd->add_option("--step", step, "Study grid step");
    }

    // Flags override whatever the config file set.
    void apply(StudyConfig& cfg) const {
        if (!out_path.empty()) {
            nnconv::study::apply_key(cfg, "out", out_path);
        }
        if (!format.empty()) {
            nnconv::study::apply_key(cfg, "format", format);
        }
        if (tail_eps > 0.0) {
            nnconv::study::apply_key(cfg, "tail_eps", nnconv::study::fmt17(tail_eps));
        }
        if (rel_tol > 0.0) {
            nnconv::study::apply_key(cfg, "rel_tol", nnconv::study::fmt17(rel_tol));
        }
        if (window.size() == 2) {
            nnconv::study::apply_key(cfg, "window_lo", nnconv::study::fmt17(window[0]));
            nnconv::study::apply_key(cfg, "window_hi", nnconv::study::fmt17(window[1]));
        }
        if (step > 0.0) {
            nnconv::study::apply_key(cfg, "step", nnconv::study::fmt17(step));
        }
    }
};

int run_study(const std::string& name, const CommonFlags& flags,
              const std::function<void(StudyConfig&)>& defaults,
              const std::function<StudyOutcome(const StudyConfig&)>& runner) {
    StudyConfig cfg;
    try {
        if (!flags.config_path.empty()) {
            cfg = nnconv::study::parse_config_file(flags.config_path);
        }
        flags.apply(cfg);
        defaults(cfg);
        if (cfg.out_path.empty()) {
            cfg.out_path = name + "." + cfg.format;
        }
        for (double base : cfg.base_list) {
            if (base > 1.0 && std::log(base) < 1e-6) {
                std::fprintf(stderr,
                             "warning: base %.17g is within 1e-6 of 1; tail constants "
                             "scale like 1/ln(B) and windows become very wide\n",
                             base);
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }

    StudyOutcome outcome;
    bool tolerance_abort = false;
    try {
        outcome = runner(cfg);
    } catch (const nnconv::study::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const nnconv::ToleranceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        tolerance_abort = true;
    }

    try {
        nnconv::study::write_report(outcome.table, cfg.out_path, cfg.format);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    std::printf("%s: %zu rows -> %s\n", name.c_str(), outcome.table.rows.size(),
                cfg.out_path.c_str());
    for (const std::string& failure : outcome.failures) {
        std::fprintf(stderr, "FAIL %s\n", failure.c_str());
    }
    if (tolerance_abort || outcome.tolerance_failure) {
        return kExitTolerance;
    }
    if (!outcome.failures.empty()) {
        std::fprintf(stderr, "%s: %zu assertion(s) failed\n", name.c_str(),
                     outcome.failures.size());
        return kExitAssertion;
    }
    std::printf("%s: all assertions passed\n", name.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convolution-type neural network operators with a symmetrized "
                 "generalized-logistic density: verification studies"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        void (*defaults)(StudyConfig&);
        StudyOutcome (*runner)(const StudyConfig&);
        CommonFlags flags;
    };
    std::vector<Sub> subs{
        {"density-check", "Kernel mass, symmetry, maximum and tail checks",
         nnconv::study::apply_density_defaults, nnconv::study::run_density_check, {}},
        {"converge", "Grid sup errors against the Jackson-type bounds",
         nnconv::study::apply_converge_defaults, nnconv::study::run_converge, {}},
        {"bounds", "Moment tables and Taylor-remainder comparisons",
         nnconv::study::apply_bounds_defaults, nnconv::study::run_bounds, {}},
        {"iterate", "Iterated-chain deviations against telescoped bounds",
         nnconv::study::apply_iterate_defaults, nnconv::study::run_iterate, {}},
        {"smoothness", "Modulus preservation of the operators",
         nnconv::study::apply_smoothness_defaults, nnconv::study::run_smoothness, {}},
    };
    for (Sub& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        sub.flags.attach(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    for (const Sub& sub : subs) {
        if (app.got_subcommand(sub.name)) {
            return run_study(sub.name, sub.flags, sub.defaults, sub.runner);
        }
    }
    return kExitConfig;
}
