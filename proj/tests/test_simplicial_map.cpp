#include "doctest.h"
#include "oracles.hpp"

#include "pltopo/contractibility.hpp"
#include "pltopo/error.hpp"
#include "pltopo/fixtures.hpp"
#include "pltopo/sampling.hpp"
#include "pltopo/simplicial_map.hpp"

#include <cmath>
#include <set>

using namespace pltopo;

namespace {

/// Source lattice points (denominator n) mapping exactly onto y.
std::vector<Point> lattice_preimage(const SimplicialMap& f, const Point& y, int n)
{
    std::vector<Point> out;
    for (const auto& tau : f.source()->maximal_simplices())
        for (const auto& comp : oracle::compositions(static_cast<int>(tau.size()), n)) {
            std::map<VertexIndex, double> w;
            for (std::size_t i = 0; i < tau.size(); ++i)
                if (comp[i]) w[tau[i]] = static_cast<double>(comp[i]) / n;
            const Point x = Point::from_weights(w);
            if (embedded_distance(f(x), y) < 1e-12 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
    return out;
}

}  // namespace

TEST_CASE("validate_map")
{
    CHECK(validate_map(*fixtures::map_collapse()).empty());
    CHECK(validate_map(*fixtures::ex44_map()).empty());
    // ab ↦ ac where ac is not an edge of the target
    const auto path = make_complex(SimplicialComplex::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
    const SimplicialMap bad = SimplicialMap::from_labels(fixtures::d1(), path, {{"a", "a"}, {"b", "c"}});
    const auto v = validate_map(bad);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == fixtures::d1()->simplex({"a", "b"}));
}

TEST_CASE("evaluate_map")
{
    const auto f = fixtures::map_collapse();
    CHECK((*f)(Point::vertex(2)) == Point::vertex(1));
    const Point y = (*f)(Point::barycenter(Simplex{0, 1, 2}));
    CHECK(y.carrier() == Simplex{0, 1});
    CHECK(y.coords()[0] == doctest::Approx(1.0 / 3));
    CHECK(y.coords()[1] == doctest::Approx(2.0 / 3));
    const SimplicialMap id = SimplicialMap::identity(fixtures::d1());
    CHECK(id(Point::barycenter(Simplex{0, 1})) == Point::barycenter(Simplex{0, 1}));
}

TEST_CASE("surjectivity_check")
{
    CHECK(surjectivity_check(*fixtures::map_collapse()).surjective());
    CHECK(surjectivity_check(*fixtures::ex44_map()).surjective());
    const SimplicialMap inclusion = SimplicialMap::from_labels(fixtures::d1(), fixtures::d2(), {{"a", "a"}, {"b", "b"}});
    const auto m = surjectivity_check(inclusion);
    CHECK_FALSE(m.surjective());
    const auto d2 = fixtures::d2();
    CHECK(std::count(m.missed.begin(), m.missed.end(), d2->simplex({"a", "b", "c"})) == 1);
    CHECK(std::count(m.missed.begin(), m.missed.end(), d2->simplex({"c"})) == 1);
    CHECK(m.missed.size() == 4);
    CHECK(std::count(m.minimal.begin(), m.minimal.end(), d2->simplex({"c"})) == 1);
}

TEST_CASE("fibres over barycentres")
{
    const auto f = fixtures::map_collapse();
    const auto& y = *f->target();
    const FiberComplex over_ab(*f, y.simplex({"a", "b"}));
    CHECK(over_ab.triangulation()->size() == 3);
    CHECK(over_ab.triangulation()->dimension() == 1);
    // preimage oracle: the fibre over the midpoint is a segment
    const auto pre = lattice_preimage(*f, Point::barycenter(y.simplex({"a", "b"})), 8);
    CHECK(pre.size() == 5);
    for (const auto& x : pre) CHECK(in_complex(*f->source(), x));

    const FiberComplex over_b(*f, y.simplex({"b"}));
    CHECK(over_b.triangulation()->size() == 3);

    const auto bad = fixtures::map_bad();
    const FiberComplex two(*bad, bad->target()->simplex({"a", "b"}));
    CHECK(two.triangulation()->size() == 2);
    CHECK(two.triangulation()->dimension() == 0);
    CHECK(lattice_preimage(*bad, Point::barycenter(bad->target()->simplex({"a", "b"})), 2).size() == 2);
}

TEST_CASE("EX44 fibre over the shared edge is a vertical segment")
{
    const auto f = fixtures::ex44_map();
    const auto& y = *f->target();
    const Simplex shared = y.simplex({"0", "e1+e2"});
    const FiberComplex fiber(*f, shared);
    CHECK(contractibility_verdict(*fiber.triangulation()).kind == VerdictKind::Contractible);
    double lo = 1e9, hi = -1e9;
    for (const auto& p : fiber.embedding()) {
        lo = std::min(lo, fixtures::ex44_height(*f->source(), p));
        hi = std::max(hi, fixtures::ex44_height(*f->source(), p));
    }
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(1.0));
    const auto pre = lattice_preimage(*f, Point::barycenter(shared), 6);
    for (const auto& x : pre) {
        const double z = fixtures::ex44_height(*f->source(), x);
        CHECK(z >= -1e-12);
        CHECK(z <= 1.0 + 1e-12);
    }
    // heights 0, 1/6, …, 1 with one point each
    CHECK(pre.size() == 7);
    std::set<long> heights;
    for (const auto& x : pre) heights.insert(std::lround(6.0 * fixtures::ex44_height(*f->source(), x)));
    CHECK(heights.size() == 7);
}

TEST_CASE("fibres partition the source")
{
    for (const auto& f : {fixtures::map_collapse(), fixtures::ex44_map(), fixtures::map_bad()}) {
        std::size_t total = 0;
        for (const auto& sigma : f->target()->simplices()) total += f->cells_over(sigma).size();
        CHECK(total == f->source()->size());
    }
}

TEST_CASE("product decomposition")
{
    for (const auto& f : {fixtures::map_collapse(), fixtures::ex44_map(), fixtures::map_bad()})
        for (const auto& sigma : f->target()->simplices()) {
            const auto cert = verify_product_decomposition(*f, sigma, 30);
            CHECK(cert.max_identification_error <= 1e-9);
            for (const auto& c : cert.cells) CHECK(c.source_dim == c.fiber_dim + sigma.dim());
        }
    const auto f = fixtures::map_collapse();
    const auto cert = verify_product_decomposition(*f, f->target()->simplex({"a", "b"}), 30);
    int two_cells = 0;
    for (const auto& c : cert.cells) two_cells += c.source_dim == 2;
    CHECK(two_cells == 1);

    const auto id = std::make_shared<const SimplicialMap>(SimplicialMap::identity(fixtures::d2()));
    for (const auto& sigma : id->target()->simplices()) {
        const auto c = verify_product_decomposition(*id, sigma, 10);
        REQUIRE(c.cells.size() == 1);
        CHECK(c.cells[0].fiber_dim == 0);
    }

    const SimplicialMap inclusion = SimplicialMap::from_labels(fixtures::d1(), fixtures::d2(), {{"a", "a"}, {"b", "b"}});
    const auto empty = verify_product_decomposition(inclusion, fixtures::d2()->simplex({"a", "b", "c"}), 10);
    CHECK(empty.cells.empty());
}

TEST_CASE("sampled fibres are isomorphic to the barycentre fibre")
{
    const auto f = fixtures::ex44_map();
    std::mt19937_64 rng(kDefaultSeed);
    for (const auto& sigma : f->target()->simplices()) {
        const FiberComplex fiber(*f, sigma);
        const auto reference = fiber_cells_combinatorial(fiber);
        for (int i = 0; i < 10; ++i) {
            const Point y(sigma, random_barycentric(static_cast<int>(sigma.size()), rng));
            CHECK(families_isomorphic(fiber_cells_over_point(*f, y), reference));
        }
    }
}

TEST_CASE("transport moves between fibres")
{
    const auto f = fixtures::ex44_map();
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Point x = random_point(*f->source(), rng);
        const Point y = (*f)(x);
        const Point s = Point::barycenter(y.carrier());
        const Point moved = transport(*f, x, s);
        CHECK(embedded_distance((*f)(moved), s) < 1e-12);
        CHECK(embedded_distance(transport(*f, moved, y), x) < 1e-9);
    }
    CHECK_THROWS_AS(transport(*f, Point::vertex(0), Point::vertex(1)), Error);
}

TEST_CASE("star retraction")
{
    const auto f = fixtures::map_collapse();
    const auto& y = *f->target();
    const Homotopy r = build_star_retraction(f, y.simplex({"a"}));
    std::mt19937_64 rng(3);
    int tracked = 0;
    for (int i = 0; i < 400 && tracked < 100; ++i) {
        const Point x = random_point(*f->source(), rng);
        if ((*f)(x).weight(0) <= 0.0) continue;
        ++tracked;
        CHECK(r(x, 1.0) == Point::vertex(0));
        for (double t : {0.0, 0.3, 0.7}) CHECK((*f)(r(x, t)).weight(0) > 0.0);
    }
    CHECK(tracked == 100);
    CHECK(r(Point::vertex(0), 0.5) == Point::vertex(0));

    const auto g = fixtures::ex44_map();
    const Simplex shared = g->target()->simplex({"0", "e1+e2"});
    const Homotopy rs = build_star_retraction(g, shared);
    const auto st = star(*g->target(), shared);
    for (int i = 0; i < 300; ++i) {
        const Point x = random_point(*g->source(), rng);
        if (std::find(st.begin(), st.end(), (*g)(x).carrier()) == st.end()) continue;
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const Simplex c = (*g)(rs(x, t)).carrier();
            CHECK(std::find(st.begin(), st.end(), c) != st.end());
        }
        CHECK((*g)(rs(x, 1.0)).carrier() == shared);
    }
    const SimplicialMap inclusion = SimplicialMap::from_labels(fixtures::d1(), fixtures::d2(), {{"a", "a"}, {"b", "b"}});
    CHECK_THROWS_AS(build_star_retraction(std::make_shared<const SimplicialMap>(inclusion), fixtures::d2()->simplex({"c"})),
                    Error);
}
