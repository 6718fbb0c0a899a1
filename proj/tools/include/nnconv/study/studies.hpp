#pragma once

#include <string>
#include <vector>

#include "nnconv/study/config.hpp"
#include "nnconv/study/report.hpp"

namespace nnconv::study {

/// Outcome of one study run: the report table (always produced, even when
/// assertions failed) plus the collected failures.
struct StudyOutcome {
    Table table;
    std::vector<std::string> failures;
    bool tolerance_failure = false;

    bool ok() const { return failures.empty() && !tolerance_failure; }
};

/// Fills subcommand-specific defaults for keys the user never set.
void apply_density_defaults(StudyConfig& cfg);
void apply_converge_defaults(StudyConfig& cfg);
void apply_bounds_defaults(StudyConfig& cfg);
void apply_iterate_defaults(StudyConfig& cfg);
void apply_smoothness_defaults(StudyConfig& cfg);

/// Density sanity: total mass, evenness residual, maximum location/value
/// residuals, tail masses against the kernel tail bound.
StudyOutcome run_density_check(const StudyConfig& cfg);

/// Jackson-type convergence: grid sup errors against T / E per function,
/// kind, scale; checks domination ratios and monotonicity in n.
StudyOutcome run_converge(const StudyConfig& cfg);

/// Absolute moments, centered moments per kind, Taylor-remainder
/// comparisons against the closed-form bounds.
StudyOutcome run_bounds(const StudyConfig& cfg);

/// Iterated chains: homogeneous r-fold and monotone mixed chains against
/// the telescoped bounds; per-stage non-expansiveness.
StudyOutcome run_iterate(const StudyConfig& cfg);

/// Global smoothness preservation: grid moduli of Op f against f, plus the
/// identity sharpness row.
StudyOutcome run_smoothness(const StudyConfig& cfg);

}  // namespace nnconv::study
