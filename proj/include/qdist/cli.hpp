#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdist/states.hpp"

namespace qdist::cli {

enum ExitCode : int {
    kOk = 0,
    kIoFailure = 1,
    kParseFailure = 2,
    kNumericalFailure = 3,
    kUnsupported = 4,
};

/// Metric identifiers accepted by `distance` and `sweep`.
const std::vector<std::string>& metric_names();

/// Closed-form value of `metric` for the pair, if the pair belongs to a tabulated family combination.
/// `p` is the exponent for hs-p.
std::optional<double> closed_form_value(const StateSpec& a, const StateSpec& b, std::string_view metric, double p = 0.5);

struct Evaluation {
    double value = 0.0;
    int dim = 0;
};

/// Numeric value of `metric`. dim = 0 selects the adaptive dimension capped by max_dim.
/// `grid` is the points per axis for the phase-space metrics.
Evaluation evaluate(const StateSpec& a, const StateSpec& b, std::string_view metric, int dim, int max_dim,
                    double p = 0.5, int grid = 257);

/// Truncation cap from QDIST_MAX_DIM, default 512. Throws ParseError on a malformed value.
int max_dim_from_env();

/// Entry point behind the executable. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdist::cli
