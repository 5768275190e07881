#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tscv/lagrangian.hpp"
#include "tscv/timescale.hpp"
#include "tscv/variational.hpp"

namespace tscv {

/// Line-oriented problem description:
///
///     [timescale]
///     interval 0 1
///     points 2
///     [problem]
///     u = 1
///     L = v^2
///     alpha = 0
///     beta = 1
///     h = 1e-3          # optional
///     [constraint]      # optional section
///     w = 1
///     G = y
///     K = 0.16666666666666666
///
/// `#` starts a comment. Numbers are decimal literals; L and G use the
/// expression grammar of parse_expr.
struct ProblemFile {
    struct Constraint {
        double w = 0.0;
        Lagrangian G;
        double K = 0.0;
    };

    TimeScale scale;
    double u = 0.0;
    Lagrangian L;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> h;
    std::optional<Constraint> constraint;
};

/// Throws ParseError carrying the 1-based line number of the offending line.
ProblemFile parse_problem_file(std::string_view text);

/// `h_override` wins over the file's h, which wins over 1e-3.
Problem make_problem(const ProblemFile& file, std::optional<double> h_override = std::nullopt);

/// Throws ContractError when the file has no [constraint] section.
IsoProblem make_iso_problem(const ProblemFile& file, std::optional<double> h_override = std::nullopt);

} // namespace tscv
