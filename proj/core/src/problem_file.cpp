#include "tscv/problem_file.hpp"

#include <map>
#include <string>
#include <vector>

#include "tscv/error.hpp"
#include "text_util.hpp"

namespace tscv {

namespace {

struct Entry {
    std::string value;
    std::size_t line;
};

using Section = std::map<std::string, Entry, std::less<>>;

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg, line, ParseError::Location::line);
}

const Entry& required(const Section& s, std::string_view key, std::string_view section,
                      std::size_t header_line) {
    const auto it = s.find(key);
    if (it == s.end()) {
        fail(header_line, "section [" + std::string(section) + "] is missing key '" + std::string(key) + "'");
    }
    return it->second;
}

double number(const Entry& e, std::string_view key) {
    const auto x = detail::parse_double(e.value);
    if (!x) {
        fail(e.line, "'" + std::string(key) + "' must be a decimal number, got '" + e.value + "'");
    }
    return *x;
}

Lagrangian expression(const Entry& e) {
    try {
        return Lagrangian::parse(e.value);
    } catch (const ParseError& pe) {
        fail(e.line, std::string("in expression '") + e.value + "': " + pe.what());
    }
}

void check_keys(const Section& s, std::initializer_list<std::string_view> allowed, std::string_view section) {
    for (const auto& [key, entry] : s) {
        bool ok = false;
        for (const auto a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            fail(entry.line, "unknown key '" + key + "' in section [" + std::string(section) + "]");
        }
    }
}

} // namespace

ProblemFile parse_problem_file(std::string_view text) {
    const auto lines = detail::split_lines(text);
    std::vector<Segment> segments;
    std::map<std::string, std::size_t, std::less<>> header_line;
    Section problem;
    Section constraint;
    std::string current;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto line = detail::trim(detail::strip_comment(lines[i]));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(lineno, "malformed section header");
            }
            current = std::string(detail::trim(line.substr(1, line.size() - 2)));
            if (current != "timescale" && current != "problem" && current != "constraint") {
                fail(lineno, "unknown section [" + current + "]");
            }
            if (header_line.count(current) != 0) {
                fail(lineno, "duplicate section [" + current + "]");
            }
            header_line[current] = lineno;
            continue;
        }
        if (current.empty()) {
            fail(lineno, "content before the first section header");
        }
        if (current == "timescale") {
            try {
                const auto part = TimeScale::parse(line);
                segments.insert(segments.end(), part.segments().begin(), part.segments().end());
            } catch (const ParseError& e) {
                fail(lineno, std::string("in [timescale]: ") + e.what());
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(lineno, "expected 'key = value'");
        }
        const auto key = std::string(detail::trim(line.substr(0, eq)));
        const auto value = std::string(detail::trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            fail(lineno, "expected 'key = value'");
        }
        auto& section = current == "problem" ? problem : constraint;
        if (section.count(key) != 0) {
            fail(lineno, "duplicate key '" + key + "'");
        }
        section[key] = Entry{value, lineno};
    }

    std::size_t last_line = lines.size();
    while (last_line > 1 && detail::trim(lines[last_line - 1]).empty()) {
        --last_line;
    }
    if (header_line.count("timescale") == 0) {
        fail(last_line, "missing [timescale] section");
    }
    if (header_line.count("problem") == 0) {
        fail(last_line, "missing [problem] section");
    }

    ProblemFile pf{TimeScale::interval(0.0, 1.0), 0.0, Lagrangian(Expr()), 0.0, 0.0, std::nullopt, std::nullopt};
    if (segments.empty()) {
        fail(header_line["timescale"], "[timescale] has no 'interval' or 'points' lines");
    }
    pf.scale = TimeScale(std::move(segments));
    if (!(pf.scale.a() < pf.scale.b())) {
        fail(header_line["timescale"], "time scale must contain at least two points");
    }

    const auto ph = header_line["problem"];
    check_keys(problem, {"u", "L", "alpha", "beta", "h"}, "problem");
    const auto& u_entry = required(problem, "u", "problem", ph);
    pf.u = number(u_entry, "u");
    if (pf.u == 0.0) {
        fail(u_entry.line,
             "u = 0 makes the problem trivial: the functional is constant, so there is nothing to "
             "minimize or maximize and every y with the given boundary values is a solution");
    }
    pf.L = expression(required(problem, "L", "problem", ph));
    pf.alpha = number(required(problem, "alpha", "problem", ph), "alpha");
    pf.beta = number(required(problem, "beta", "problem", ph), "beta");
    if (const auto it = problem.find("h"); it != problem.end()) {
        pf.h = number(it->second, "h");
        if (!(*pf.h > 0.0)) {
            fail(it->second.line, "h must be positive");
        }
    }

    if (header_line.count("constraint") != 0) {
        const auto ch = header_line["constraint"];
        check_keys(constraint, {"w", "G", "K"}, "constraint");
        ProblemFile::Constraint c{0.0, Lagrangian(Expr()), 0.0};
        const auto& w_entry = required(constraint, "w", "constraint", ch);
        c.w = number(w_entry, "w");
        if (c.w == 0.0) {
            fail(w_entry.line, "w must be nonzero");
        }
        c.G = expression(required(constraint, "G", "constraint", ch));
        c.K = number(required(constraint, "K", "constraint", ch), "K");
        pf.constraint = std::move(c);
    }
    return pf;
}

Problem make_problem(const ProblemFile& file, std::optional<double> h_override) {
    const double h = h_override ? *h_override : file.h.value_or(1e-3);
    return Problem(file.scale, file.u, file.L, file.alpha, file.beta, h);
}

IsoProblem make_iso_problem(const ProblemFile& file, std::optional<double> h_override) {
    if (!file.constraint) {
        throw ContractError("problem file has no [constraint] section");
    }
    return IsoProblem(make_problem(file, h_override), file.constraint->G, file.constraint->w,
                      file.constraint->K);
}

} // namespace tscv
