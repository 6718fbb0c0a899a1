#pragma once

#include <string>
#include <vector>

#include "nnconv/target_function.hpp"

namespace nnconv::study {

/// A registered study function with a note on why it belongs to the class
/// the error bounds assume (bounded continuous, or window-local for id).
struct CorpusEntry {
    std::string label;
    TargetFunction fn;
    std::string note;
};

/// The built-in registry: const, id, sin, cos, runge, gauss, ramp, abs_sin.
/// Exact moduli are declared where closed forms exist; derivative evaluators
/// carry their own sup-norms.
const std::vector<CorpusEntry>& builtin_corpus();

/// Lookup by label; throws std::invalid_argument for unknown labels.
const CorpusEntry& find_corpus(const std::string& label);

/// Checks |f| <= declared sup-norm on a grid over [lo, hi]; returns the
/// first offending label or an empty string.
std::string verify_sup_norms(const std::vector<std::string>& labels, double lo, double hi);

}  // namespace nnconv::study
