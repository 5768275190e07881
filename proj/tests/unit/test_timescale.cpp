#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "tscv/error.hpp"
#include "tscv/timescale.hpp"

using namespace tscv;

namespace {

TimeScale unit_plus_two() {
    return TimeScale({{0.0, 1.0}, {2.0, 2.0}});
}

TimeScale integers(int n) {
    return TimeScale::lattice(0.0, 1.0, static_cast<std::size_t>(n));
}

} // namespace

TEST_CASE("construction normalizes segments") {
    const TimeScale T({{2.0, 2.0}, {0.5, 1.0}, {0.0, 0.5}, {0.7, 0.9}});
    REQUIRE(T.segments().size() == 2);
    CHECK(T.segments()[0] == Segment{0.0, 1.0});
    CHECK(T.segments()[1] == Segment{2.0, 2.0});
    CHECK(T.a() == 0.0);
    CHECK(T.b() == 2.0);

    CHECK_THROWS_AS(TimeScale(std::vector<Segment>{}), ParameterError);
    CHECK_THROWS_AS(TimeScale({{1.0, 0.0}}), ParameterError);
    CHECK_THROWS_AS(TimeScale({{0.0, INFINITY}}), ParameterError);
    CHECK_THROWS_AS(TimeScale::interval(0.0, NAN), ParameterError);
}

TEST_CASE("contains") {
    const auto T = unit_plus_two();
    CHECK(T.contains(0.5));
    CHECK_FALSE(T.contains(1.5));
    CHECK(T.contains(2.0));
    CHECK_FALSE(T.contains(-0.1));
    CHECK_FALSE(T.contains(2.1));
}

TEST_CASE("sigma and rho") {
    const auto Z = integers(4);
    CHECK(Z.sigma(1.0) == 2.0);
    CHECK(Z.rho(1.0) == 0.0);
    CHECK(Z.sigma(4.0) == 4.0);
    CHECK(Z.rho(0.0) == 0.0);

    const auto I = TimeScale::interval(0.0, 1.0);
    CHECK(I.sigma(0.5) == 0.5);
    CHECK(I.rho(0.5) == 0.5);

    const auto T = unit_plus_two();
    CHECK(T.sigma(1.0) == 2.0);
    CHECK(T.rho(2.0) == 1.0);
    CHECK(T.sigma(2.0) == 2.0);

    CHECK_THROWS_AS(T.sigma(1.5), DomainError);
    CHECK_THROWS_AS(T.rho(1.5), DomainError);
}

TEST_CASE("graininess") {
    const auto H = TimeScale::lattice(0.0, 0.25, 4);
    CHECK(H.mu(0.5) == 0.25);

    const auto I = TimeScale::interval(0.0, 1.0);
    CHECK(I.mu(0.3) == 0.0);
    CHECK(I.nu(0.3) == 0.0);

    const auto T = unit_plus_two();
    CHECK(T.mu(1.0) == 1.0);
    CHECK(T.nu(1.0) == 0.0);
    CHECK_THROWS_AS(T.mu(3.0), DomainError);
    CHECK_THROWS_AS(T.nu(3.0), DomainError);
}

TEST_CASE("classify") {
    CHECK(integers(4).classify(2.0).isolated());
    CHECK(TimeScale::interval(0.0, 1.0).classify(0.5).dense());

    const auto c = unit_plus_two().classify(1.0);
    CHECK(c.left == Side::dense);
    CHECK(c.right == Side::scattered);
    CHECK_FALSE(c.isolated());
    CHECK_FALSE(c.dense());

    // Endpoint conventions: sigma(b) = b makes b right-dense.
    const auto end = unit_plus_two().classify(2.0);
    CHECK(end.left == Side::scattered);
    CHECK(end.right == Side::dense);
    CHECK_THROWS_AS(unit_plus_two().classify(1.5), DomainError);
}

TEST_CASE("kappa truncations") {
    CHECK(integers(4).truncate_kappa() == integers(3));
    const auto I = TimeScale::interval(0.0, 1.0);
    CHECK(I.truncate_kappa() == I);
    CHECK(I.truncate_kappa_sub() == I);
    CHECK(unit_plus_two().truncate_kappa_sub() == unit_plus_two());
    CHECK(unit_plus_two().truncate_kappa() == TimeScale::interval(0.0, 1.0));
    CHECK(integers(4).truncate_kappa_sub() == TimeScale::lattice(1.0, 1.0, 3));
}

TEST_CASE("interior_kk2") {
    // Removing two scattered points from each end of {0,1,2,3,4} leaves {2}.
    const auto Z = interior_kk2(integers(4));
    CHECK(Z == TimeScale::points(std::vector<double>{2.0}));
    CHECK(interior_kk2(integers(5)) == TimeScale::points(std::vector<double>{2.0, 3.0}));

    const auto I = TimeScale::interval(0.0, 1.0);
    CHECK(interior_kk2(I) == I);

    CHECK_THROWS_AS(interior_kk2(TimeScale::points(std::vector<double>{0.0, 1.0})), DegenerateScaleError);
    CHECK_THROWS_AS(interior_kk2(integers(3)), DegenerateScaleError);

    // Scattered points next to an interval: only the scattered end is cut.
    const TimeScale mixed({{-2.0, -2.0}, {0.0, 1.0}, {2.0, 2.0}});
    CHECK(interior_kk2(mixed) == TimeScale::interval(0.0, 1.0));
}

TEST_CASE("intersect") {
    const auto T = unit_plus_two();
    const auto S = TimeScale({{0.5, 2.0}});
    CHECK(T.intersect(S) == TimeScale({{0.5, 1.0}, {2.0, 2.0}}));
    CHECK_THROWS_AS(T.intersect(TimeScale::interval(1.2, 1.8)), DegenerateScaleError);
}

TEST_CASE("discretize") {
    const auto g0 = TimeScale::points(std::vector<double>{0.0, 1.0, 2.0}).discretize(0.1);
    REQUIRE(g0.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(g0[i] == static_cast<double>(i));
        CHECK_FALSE(g0.is_dense(i));
    }

    const auto g1 = TimeScale::interval(0.0, 1.0).discretize(0.5);
    REQUIRE(g1.size() == 3);
    CHECK(g1[1] == 0.5);
    CHECK_FALSE(g1.is_dense(0));
    CHECK(g1.is_dense(1));
    CHECK_FALSE(g1.is_dense(2));

    const auto g2 = unit_plus_two().discretize(0.5);
    REQUIRE(g2.size() == 4);
    const std::vector<double> expect{0.0, 0.5, 1.0, 2.0};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g2[i] == expect[i]);
        CHECK(g2.is_dense(i) == (i == 1));
    }

    CHECK_THROWS_AS(TimeScale::interval(0.0, 1.0).discretize(0.0), ParameterError);
    CHECK_THROWS_AS(TimeScale::interval(0.0, 1.0).discretize(-1.0), ParameterError);

    // Step count is ceil(len/h); an exact multiple is not bumped by rounding.
    CHECK(TimeScale::interval(0.0, 1.0).discretize(1e-3).size() == 1001);
    CHECK(TimeScale::interval(0.0, 1.0).discretize(0.3).size() == 5);
    CHECK(TimeScale::interval(0.0, 0.3).discretize(0.1).size() == 4);
    CHECK(TimeScale::interval(0.0, 1.0).discretize(5.0).size() == 2);
}

TEST_CASE("grid lookup") {
    const auto g = unit_plus_two().discretize(0.25);
    CHECK(g.find(0.75) == 3);
    CHECK(g.find(2.0) == g.size() - 1);
    CHECK(g.find(1.5) == SampleGrid::npos);
}

TEST_CASE("parse") {
    const auto T = TimeScale::parse("# comment\ninterval 0 1\n\npoints 2 3   # tail\n");
    CHECK(T == TimeScale({{0.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}}));

    auto line_of = [](const char* text) {
        try {
            (void)TimeScale::parse(text);
        } catch (const ParseError& e) {
            CHECK(e.kind() == ParseError::Location::line);
            return e.position();
        }
        return std::size_t{0};
    };
    CHECK(line_of("interval 0 1\nsegment 2 3\n") == 2);
    CHECK(line_of("interval 0\n") == 1);
    CHECK(line_of("interval 0 1 2\n") == 1);
    CHECK(line_of("\n\npoints 1 x\n") == 3);
    CHECK(line_of("points\n") == 1);
    CHECK(line_of("interval 1 0\n") == 1);
    CHECK_THROWS_AS(TimeScale::parse(""), ParseError);
}

TEST_CASE("to_string round trip") {
    const TimeScale T({{0.1, 0.7}, {1.0 / 3.0, 1.0 / 3.0}, {2.0, 2.0}});
    CHECK(TimeScale::parse(T.to_string()) == T);
    std::ostringstream os;
    os << T;
    CHECK(os.str() == T.to_string());
}

TEST_CASE("property: jump operator invariants on random scales") {
    testing::Rng rng(0x7473u);
    for (int trial = 0; trial < 200; ++trial) {
        const auto T = testing::random_mixed_scale(rng);
        const auto grid = T.discretize(0.05);
        double prev_sigma = -INFINITY;
        double prev_rho = -INFINITY;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double t = grid[i];
            REQUIRE(T.contains(t));
            const double s = T.sigma(t);
            const double r = T.rho(t);
            CHECK(r <= t);
            CHECK(t <= s);
            CHECK(T.mu(t) >= 0.0);
            CHECK(T.nu(t) >= 0.0);
            CHECK(s >= prev_sigma);
            CHECK(r >= prev_rho);
            prev_sigma = s;
            prev_rho = r;

            if (s > t) {
                for (int k = 1; k < 20; ++k) {
                    CHECK_FALSE(T.contains(t + (s - t) * k / 20.0));
                }
            }

            const auto c = T.classify(t);
            CHECK((c.right == Side::dense) == (s == t));
            CHECK((c.left == Side::dense) == (r == t));
        }
    }
}

TEST_CASE("property: discretize is exact on discrete scales") {
    testing::Rng rng(0x6469u);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pts = testing::sorted_points(rng, testing::uniform_int(rng, 1, 12), -5.0, 5.0, 1e-6);
        const auto T = TimeScale::points(pts);
        const auto grid = T.discretize(testing::uniform(rng, 1e-4, 2.0));
        REQUIRE(grid.size() == pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(grid[i] == pts[i]);
            CHECK_FALSE(grid.is_dense(i));
        }
    }
}

TEST_CASE("property: discretize keeps endpoints and respects the step") {
    testing::Rng rng(0x6468u);
    for (int trial = 0; trial < 100; ++trial) {
        const auto T = testing::random_mixed_scale(rng);
        const double h = testing::uniform(rng, 0.01, 0.4);
        const auto grid = T.discretize(h);
        for (const auto& seg : T.segments()) {
            CHECK(grid.find(seg.left) != SampleGrid::npos);
            CHECK(grid.find(seg.right) != SampleGrid::npos);
        }
        for (std::size_t i = 1; i < grid.size(); ++i) {
            CHECK(grid[i] > grid[i - 1]);
            if (grid.is_dense(i) || grid.is_dense(i - 1)) {
                CHECK(grid[i] - grid[i - 1] <= h * (1.0 + 1e-12));
            }
        }
    }
}
