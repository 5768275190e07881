#include <memory>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tscv/csv.hpp"
#include "tscv/error.hpp"
#include "tscv/problem_file.hpp"

using namespace tscv;

namespace {

const char* const classical_text = R"(# classical problem
[timescale]
interval 0 1

[problem]
u = 1
L = v^2
alpha = 0
beta = 1
)";

std::size_t error_line(const std::string& text) {
    try {
        (void)parse_problem_file(text);
    } catch (const ParseError& e) {
        CHECK(e.kind() == ParseError::Location::line);
        return e.position();
    }
    FAIL("expected a parse error");
    return 0;
}

std::string error_message(const std::string& text) {
    try {
        (void)parse_problem_file(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("problem file: basic") {
    const auto pf = parse_problem_file(classical_text);
    CHECK(pf.scale == TimeScale::interval(0.0, 1.0));
    CHECK(pf.u == 1.0);
    CHECK(pf.L.L.to_string() == "v^2");
    CHECK(pf.alpha == 0.0);
    CHECK(pf.beta == 1.0);
    CHECK_FALSE(pf.h.has_value());
    CHECK_FALSE(pf.constraint.has_value());

    const auto P = make_problem(pf);
    CHECK(P.h() == 1e-3);
    CHECK(make_problem(pf, 0.25).grid()->size() == 5);
    CHECK_THROWS_AS(make_iso_problem(pf), ContractError);
}

TEST_CASE("problem file: constraint and mixed scale") {
    const auto pf = parse_problem_file(R"(
[timescale]
interval 0 1
points 2 3   # isolated tail
[problem]
u = -0.5
L = v^2 + t*y
alpha = 1
beta = -1
h = 0.01
[constraint]
w = 2
G = y
K = 0.16666666666666666
)");
    CHECK(pf.scale == TimeScale({{0.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}}));
    CHECK(pf.u == -0.5);
    CHECK(*pf.h == 0.01);
    REQUIRE(pf.constraint.has_value());
    CHECK(pf.constraint->w == 2.0);
    CHECK(pf.constraint->K == 0.16666666666666666);
    const auto IP = make_iso_problem(pf);
    CHECK(IP.base.h() == 0.01);
    CHECK(make_iso_problem(pf, 0.5).base.h() == 0.5);
}

TEST_CASE("problem file: errors name the line") {
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 0\nL = v^2\nalpha = 0\nbeta = 1\n") == 4);
    CHECK(error_message("[timescale]\ninterval 0 1\n[problem]\nu = 0\nL = v^2\nalpha = 0\nbeta = 1\n")
              .find("trivial") != std::string::npos);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nL = v^^2\nalpha = 0\nbeta = 1\n") == 5);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nL = v^2\nalpha = x\nbeta = 1\n") == 6);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nu = 2\n") == 5);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nL = v^2\nalpha = 0\n") == 3);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nL = v^2\nalpha = 0\nbeta = 1\ngamma = 2\n") == 8);
    CHECK(error_line("[timescale]\ninterval 0 1\n[timescale]\n") == 3);
    CHECK(error_line("[timescale]\ninterval 0 1\n[extras]\n") == 3);
    CHECK(error_line("u = 1\n") == 1);
    CHECK(error_line("[timescale]\ninterval 0 x\n") == 2);
    CHECK(error_line("[timescale]\npoints 1\n[problem]\nu = 1\nL = v^2\nalpha = 0\nbeta = 1\n") == 1);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nL = v^2\nalpha = 0\nbeta = 1\nh = 0\n") == 8);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nL = v^2\nalpha = 0\nbeta = 1\n"
                     "[constraint]\nw = 0\nG = y\nK = 1\n") == 9);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu = 1\nL = v^2\nalpha = 0\nbeta = 1\n"
                     "[constraint]\nw = 1\nG = y\n") == 8);
    CHECK(error_line("[timescale]\ninterval 0 1\n[problem]\nu 1\n") == 4);
    CHECK(error_line("[timescale\n") == 1);
    CHECK(error_line("[problem]\nu = 1\nL = v^2\nalpha = 0\nbeta = 1\n") == 5);
}

TEST_CASE("csv: grid functions round-trip") {
    const auto grid = std::make_shared<const SampleGrid>(TimeScale({{0.0, 1.0}, {2.0, 2.0}}).discretize(0.3));
    const auto f = GridFunction::sample(grid, [](double t) { return 1.0 / (3.0 + t); });
    std::ostringstream os;
    write_grid_function(os, f);
    const auto text = os.str();
    CHECK(text.rfind("t,value\n", 0) == 0);
    const auto back = grid_function_from_csv(grid, text);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(back[i] == f[i]);
    }

    std::ostringstream named;
    write_grid_function(named, delta_deriv(f), "delta");
    CHECK(named.str().rfind("t,delta\n", 0) == 0);
}

TEST_CASE("csv: pl functions and solutions") {
    std::ostringstream os;
    write_pl_function(os, PLFunction({0.0, 0.5}, {1.0, -2.0}));
    CHECK(os.str() == "t,value\n0,1\n0.5,-2\n");

    const Problem P(TimeScale::lattice(0.0, 1.0, 4), 1.0, Lagrangian::parse("v^2"), 0.0, 4.0);
    const auto s = solve(P);
    std::ostringstream sol;
    write_solution(sol, s, el_residual(P, s.y));
    CHECK(sol.str() == "t,y,residual\n0,0,\n1,1,\n2,2,0\n3,3,\n4,4,\n");
}

TEST_CASE("csv: malformed input") {
    const auto grid = std::make_shared<const SampleGrid>(TimeScale::lattice(0.0, 1.0, 2).discretize(1.0));
    CHECK_THROWS_AS(grid_function_from_csv(grid, "t,value\n0,1\n1,2\n"), ContractError);
    CHECK_THROWS_AS(grid_function_from_csv(grid, "t,value\n0,1\n1,2\n2.5,3\n"), ContractError);
    CHECK_THROWS_AS(grid_function_from_csv(grid, "t,y\n0,1\n1,2\n2,3\n"), ParseError);
    CHECK_THROWS_AS(grid_function_from_csv(grid, ""), ParseError);
    try {
        (void)grid_function_from_csv(grid, "t,value\n0,1\n1,abc\n2,3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    CHECK_THROWS_AS(grid_function_from_csv(grid, "t,value\n0,1\n1\n2,3\n"), ParseError);
    const auto ok = grid_function_from_csv(grid, "t,value\r\n0,1\r\n1,2\r\n2,3\r\n");
    CHECK(ok.at(2.0) == 3.0);
}
