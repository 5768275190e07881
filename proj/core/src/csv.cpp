#include "tscv/csv.hpp"

#include <cmath>
#include <ostream>

#include "tscv/error.hpp"
#include "text_util.hpp"

namespace tscv {

using detail::format_double;

std::string format_number(double x) {
    return format_double(x);
}

void write_grid_function(std::ostream& os, const GridFunction& f, std::string_view value_name) {
    os << "t," << value_name << '\n';
    for (std::size_t k = 0; k < f.size(); ++k) {
        os << format_double(f.t(k)) << ',' << format_double(f[k]) << '\n';
    }
}

void write_pl_function(std::ostream& os, const PLFunction& f) {
    os << "t,value\n";
    const auto x = f.breakpoints();
    const auto y = f.values();
    for (std::size_t k = 0; k < x.size(); ++k) {
        os << format_double(x[k]) << ',' << format_double(y[k]) << '\n';
    }
}

void write_solution(std::ostream& os, const Solution& s, const GridFunction& residual) {
    os << "t,y,residual\n";
    const auto& grid = s.y.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << format_double(grid[i]) << ',' << format_double(s.y.at_index(i)) << ',';
        if (residual.defined_at(i)) {
            os << format_double(residual.at_index(i));
        }
        os << '\n';
    }
}

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;) {
        const auto c = line.find(',', start);
        cells.push_back(detail::trim(line.substr(start, c == std::string_view::npos ? c : c - start)));
        if (c == std::string_view::npos) {
            return cells;
        }
        start = c + 1;
    }
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("csv line " + std::to_string(line) + ": " + msg, line, ParseError::Location::line);
}

} // namespace

std::vector<std::vector<double>> read_csv(std::string_view text,
                                          const std::vector<std::string>& expected_header) {
    const auto lines = detail::split_lines(text);
    std::vector<std::vector<double>> rows;
    bool header_seen = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = detail::trim(lines[i]);
        if (line.empty()) {
            continue;
        }
        const auto cells = split_commas(line);
        if (!header_seen) {
            header_seen = true;
            if (cells.size() != expected_header.size()) {
                fail(i + 1, "expected " + std::to_string(expected_header.size()) + " header columns");
            }
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c] != expected_header[c]) {
                    fail(i + 1, "expected header column '" + expected_header[c] + "', got '" +
                                    std::string(cells[c]) + "'");
                }
            }
            continue;
        }
        if (cells.size() != expected_header.size()) {
            fail(i + 1, "expected " + std::to_string(expected_header.size()) + " columns");
        }
        std::vector<double> row;
        for (const auto cell : cells) {
            const auto x = detail::parse_double(cell);
            if (!x) {
                fail(i + 1, "invalid number '" + std::string(cell) + "'");
            }
            row.push_back(*x);
        }
        rows.push_back(std::move(row));
    }
    if (!header_seen) {
        fail(lines.size(), "missing header");
    }
    return rows;
}

GridFunction grid_function_from_csv(const GridFunction::GridPtr& grid, std::string_view text) {
    const auto rows = read_csv(text, {"t", "value"});
    if (rows.size() != grid->size()) {
        throw ContractError("csv has " + std::to_string(rows.size()) + " rows but the grid has " +
                            std::to_string(grid->size()) + " points");
    }
    std::vector<double> values(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double t = (*grid)[i];
        if (std::abs(rows[i][0] - t) > 1e-9 * std::max(1.0, std::abs(t))) {
            throw ContractError("csv row " + std::to_string(i + 1) + ": t = " + format_double(rows[i][0]) +
                                " does not match grid point " + format_double(t));
        }
        values[i] = rows[i][1];
    }
    return GridFunction(grid, std::move(values));
}

} // namespace tscv
