#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnconv/operators.hpp"

namespace nnconv::study {

/// Bad configuration (unknown keys, invalid values, precondition
/// violations). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything one study run needs. A plain-text key-value file seeds it,
/// command-line flags override, and per-subcommand defaults fill whatever
/// was never set explicitly (tracked in explicit_keys).
struct StudyConfig {
    std::vector<double> q_list{0.5, 1.0, 2.0};
    std::vector<double> beta_list{0.5, 1.0, 2.0};
    std::vector<double> base_list{2.0, M_E};
    std::vector<OperatorKind> kinds{OperatorKind::direct, OperatorKind::kantorovich,
                                    OperatorKind::quadrature};
    std::vector<int> n_list{16, 64, 256};
    double alpha = 0.5;
    std::vector<std::string> labels{"const", "id",    "sin",  "cos",
                                    "runge", "gauss", "ramp", "abs_sin"};
    double window_lo = -3.0;
    double window_hi = 3.0;
    double step = 0.02;
    QuadratureConfig quad;
    int quad_r = 4;  // sample count of the uniform quadrature-kind weights
    std::string format = "csv";
    std::string out_path;

    std::set<std::string> explicit_keys;

    bool is_explicit(const std::string& key) const { return explicit_keys.count(key) > 0; }

    /// Grid of x values over [window_lo, window_hi].
    std::vector<double> make_grid() const;

    /// Throws ConfigError unless every (n, alpha) pair satisfies
    /// n^(1-alpha) > 2 and all lists are nonempty and well-formed.
    void validate_for_bounds() const;
};

/// Parses `key = value` lines; '#' starts a comment; lists are
/// comma-separated. Unknown keys are ConfigErrors.
StudyConfig parse_config_file(const std::string& path);

/// Applies one key-value assignment (same keys as the file format).
void apply_key(StudyConfig& cfg, const std::string& key, const std::string& value);

OperatorKind parse_kind(const std::string& name);

}  // namespace nnconv::study
