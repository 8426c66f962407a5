#include "doctest.h"

#include "pltopo/error.hpp"
#include "pltopo/fixtures.hpp"
#include "pltopo/open_cone.hpp"
#include "pltopo/sampling.hpp"

#include <cmath>

using namespace pltopo;

TEST_CASE("cone distance formula")
{
    const Metric unit = [](const Point& a, const Point& b) { return a == b ? 0.0 : 1.0; };
    const Point m = Point::vertex(0), n = Point::vertex(1);
    CHECK(cone_distance(unit, {m, 2.0}, {n, 2.0}) == 2.0);
    CHECK(cone_distance(unit, coning_map(m, -1.0), coning_map(n, -3.0)) == 2.0);
    CHECK(cone_distance(unit, {m, 1.0}, {m, 5.0}) == 4.0);
    const Metric far = [](const Point&, const Point&) { return kInfiniteDistance; };
    CHECK(cone_distance(far, {m, 0.0}, {n, 3.0}) == 3.0);
}

TEST_CASE("coning map identifies the negative half")
{
    const Point x = Point::vertex(0), y = Point::vertex(1);
    const ConePoint a = coning_map(x, -2.0), b = coning_map(y, -2.0);
    CHECK(a.base == b.base);
    CHECK(a.height == b.height);
    const ConePoint c = coning_map(x, 1.0);
    CHECK(c.base == x);
    CHECK(c.height == 1.0);
    PathMetric d(fixtures::d1());
    CHECK(cone_distance(std::cref(d), coning_map(x, 1.0), coning_map(y, 1.0)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("cone metric scaling and triangle inequality")
{
    const auto k = fixtures::d2();
    PathMetric d(k);
    const Metric m = std::cref(d);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> height(-3.0, 12.0);
    for (int i = 0; i < 10000; ++i) {
        const Point a = random_point(*k, rng), b = random_point(*k, rng);
        const double t = std::abs(height(rng));
        CHECK(cone_distance(m, {a, t}, {b, t}) == t * cone_distance(m, {a, 1.0}, {b, 1.0}));
    }
    for (int i = 0; i < 10000; ++i) {
        const ConePoint a = coning_map(random_point(*k, rng), height(rng));
        const ConePoint b = coning_map(random_point(*k, rng), height(rng));
        const ConePoint c = coning_map(random_point(*k, rng), height(rng));
        CHECK(cone_distance(m, a, b) == doctest::Approx(cone_distance(m, b, a)));
        CHECK(cone_distance(m, a, b) <= cone_distance(m, a, c) + cone_distance(m, c, b) + 1e-9);
    }
}

TEST_CASE("alpha schedule")
{
    const double c = 1.0 / std::sqrt(6.0);
    CHECK(alpha_schedule(c, 0.0) == c);
    CHECK(alpha_schedule(c, -4.0) == c);
    CHECK(alpha_schedule(c, 10.0) == doctest::Approx(0.1));
    CHECK(alpha_schedule(c, 1.0 / c) == doctest::Approx(c));
    CHECK(alpha_schedule(c, std::nextafter(1.0 / c, 100.0)) == doctest::Approx(c));
    for (double t = -5.0; t <= 50.0; t += 0.25) CHECK(std::max(t, 0.0) * alpha_schedule(c, t) <= 1.0 + 1e-12);
}

TEST_CASE("assembly and slices on MAP_COLLAPSE")
{
    const auto f = fixtures::map_collapse();
    const auto gamma = FlagMap::build(f);
    const double comesh = mesh_comesh(*f->target()).comesh;
    AssemblyOptions o;
    o.low = -5.0;
    o.high = 50.0;
    o.extra_heights = {2.0 / comesh, 4.0 / comesh, 8.0 / comesh};
    const auto data = assemble_bounded_equivalence(gamma, o);
    CHECK(data.bound <= 1.0 + 1e-3);
    CHECK(data.bound > 0.9);
    CHECK(data.epsilon_at(0.5) == data.cap);
    CHECK(data.epsilon_at(-3.0) == data.cap);

    for (double k : {2.0, 4.0, 8.0}) {
        const double t = k / comesh;
        const auto slice = slice_equivalence(data, t);
        CHECK(slice.epsilon == doctest::Approx(1.0 / t));
        CHECK(slice.control <= data.bound / t * (1.0 + 1e-3));
        if (k == 2.0) CHECK(slice.control <= comesh / 2 * (1.0 + 1e-2));
    }
    CHECK_THROWS_AS(slice_equivalence(data, 0.0), Error);
    CHECK_THROWS_AS(slice_equivalence(data, -1.0), Error);

    // p_t commutes with f × id
    std::mt19937_64 rng(2);
    const auto slice = slice_equivalence(data, 6.0);
    for (int i = 0; i < 100; ++i) {
        const Point x = random_point(*f->source(), rng);
        for (double u : {0.0, 0.5, 1.0}) {
            const ConePoint full = data.h1(x, 6.0, u);
            CHECK(full.height == 6.0);
            CHECK((*f)(full.base) == (*f)(slice.h1(x, u)));
        }
    }
}

TEST_CASE("slice control shrinks with height")
{
    const auto f = fixtures::ex44_map();
    const auto data = assemble_bounded_equivalence(FlagMap::build(f));
    CHECK(data.bound <= 1.0 + 1e-3);
    const double c = data.comesh;
    const auto near = slice_equivalence(data, 2.0 / c);
    const auto far = slice_equivalence(data, 16.0 / c);
    CHECK(far.control < near.control);
    CHECK(far.control <= data.bound / (16.0 / c) * (1.0 + 1e-3));
    // t = B / ε gives control ε
    const double eps = 0.05;
    const auto at = slice_equivalence(data, data.bound / eps);
    CHECK(at.control <= eps * (1.0 + 1e-3));
}

TEST_CASE("triangle inequality needs base diameter at most 2")
{
    // opposite points of BD2 are 3/√2 apart; through the cone point the
    // path is shorter
    const auto k = fixtures::bd2();
    PathMetric d(k);
    const Metric m = std::cref(d);
    const ConePoint a{Point::vertex(0), 10.0};
    const ConePoint b{Point::barycenter(k->simplex({"b", "c"})), 10.0};
    const ConePoint apex = coning_map(Point::vertex(0), 0.0);
    CHECK(cone_distance(m, a, b) == doctest::Approx(15.0 * std::sqrt(2.0)));
    CHECK(cone_distance(m, a, apex) + cone_distance(m, apex, b) == 20.0);
    CHECK(cone_distance(m, a, b) > 20.0);
}
