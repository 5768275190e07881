#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tscv/calculus.hpp"
#include "tscv/epiderivative.hpp"
#include "tscv/variational.hpp"

namespace tscv {

// All writers use 17 significant digits and '\n' line endings so identical
// inputs give byte-identical files.

/// 17 significant digits; infinities print as `inf` / `-inf`.
std::string format_number(double x);

/// `t,value` with one row per defined point.
void write_grid_function(std::ostream& os, const GridFunction& f, std::string_view value_name = "value");

/// `t,value` with one row per breakpoint.
void write_pl_function(std::ostream& os, const PLFunction& f);

/// `t,y,residual`; the residual column is empty where it is not imposed.
void write_solution(std::ostream& os, const Solution& s, const GridFunction& residual);

/// Numeric rows of a two-or-more-column CSV with a header line. Throws
/// ParseError (line numbers) on malformed rows or an unexpected header.
std::vector<std::vector<double>> read_csv(std::string_view text,
                                          const std::vector<std::string>& expected_header);

/// Matches `t,value` rows to grid points (relative tolerance 1e-9) and builds
/// the sampled function. Throws ContractError when the rows do not cover the
/// grid one-to-one.
GridFunction grid_function_from_csv(const GridFunction::GridPtr& grid, std::string_view text);

} // namespace tscv
