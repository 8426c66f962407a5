#include "doctest.h"
#include "oracles.hpp"

#include "pltopo/complex.hpp"
#include "pltopo/error.hpp"
#include "pltopo/fixtures.hpp"
#include "pltopo/metric.hpp"
#include "pltopo/sampling.hpp"

#include <cmath>

using namespace pltopo;

namespace {

oracle::Faces faces_of(const SimplicialComplex& k)
{
    std::vector<oracle::Face> gens;
    for (const auto& s : k.maximal_simplices()) gens.push_back({s.vertices().begin(), s.vertices().end()});
    return oracle::all_faces(gens);
}

}  // namespace

TEST_CASE("closure of generators")
{
    CHECK(fixtures::d2()->size() == 7);
    CHECK(fixtures::d1()->size() == 3);
    CHECK(fixtures::bd2()->size() == 6);
    CHECK(fixtures::bd2()->dimension() == 1);
    CHECK_THROWS_AS(SimplicialComplex::from_labels({"a", "b"}, {{"a", "a"}}), Error);
    for (const auto& [name, k] : fixtures::all_complexes()) {
        CAPTURE(name);
        CHECK(k->size() == faces_of(*k).size());
        for (const auto& s : k->simplices())
            for (std::size_t i = 0; s.size() > 1 && i < s.size(); ++i) {
                std::vector<VertexIndex> face(s.vertices().begin(), s.vertices().end());
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                CHECK(k->contains(Simplex(face)));
            }
    }
}

TEST_CASE("barycentric subdivision counts chains")
{
    const auto d1 = barycentric_subdivision(*fixtures::d1());
    CHECK(d1.complex.count_of_dim(0) == 3);
    CHECK(d1.complex.count_of_dim(1) == 2);
    const auto d2 = barycentric_subdivision(*fixtures::d2());
    CHECK(d2.complex.count_of_dim(0) == 7);
    CHECK(d2.complex.count_of_dim(1) == 12);
    CHECK(d2.complex.count_of_dim(2) == 6);
    CHECK(d2.complex.euler_characteristic() == 1);
    const auto bd2 = barycentric_subdivision(*fixtures::bd2());
    CHECK(bd2.complex.count_of_dim(0) == 6);
    CHECK(bd2.complex.count_of_dim(1) == 6);

    for (const auto& [name, k] : fixtures::all_complexes()) {
        CAPTURE(name);
        const auto sd = barycentric_subdivision(*k);
        for (const auto& [length, count] : oracle::chain_counts(faces_of(*k)))
            CHECK(sd.complex.count_of_dim(length - 1) == static_cast<std::size_t>(count));
        for (std::size_t i = 0; i < k->size(); ++i)
            CHECK(sd.vertex_points[i] == Point::barycenter(k->simplices()[i]));
    }
}

TEST_CASE("open stars")
{
    const auto d2 = fixtures::d2();
    auto st = star(*d2, d2->simplex({"a"}));
    CHECK(st.size() == 4);
    CHECK(std::count(st.begin(), st.end(), d2->simplex({"a", "b", "c"})) == 1);
    CHECK(star(*d2, d2->simplex({"a", "b", "c"})).size() == 1);
    const auto y = fixtures::ex44_target();
    const auto shared = star(*y, y->simplex({"0", "e1+e2"}));
    CHECK(shared.size() == 3);
    CHECK_THROWS_AS(star(*fixtures::d1(), Simplex{5}), Error);
}

TEST_CASE("distance anchors")
{
    const auto d2 = fixtures::d2();
    PathMetric d(d2);
    CHECK(d(Point::vertex(0), Point::vertex(1)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const Point p = Point::barycenter(d2->simplex({"a", "b", "c"}));
    CHECK(d(p, p) == 0.0);

    const auto two = make_complex(SimplicialComplex::from_labels({"a", "b", "c"}, {{"a", "b"}, {"c"}}));
    CHECK(std::isinf(distance(two, Point::vertex(0), Point::vertex(2))));
    CHECK_THROWS_AS(distance(fixtures::bd2(), Point::barycenter(Simplex{0, 1, 2}), Point::vertex(0)), Error);
}

TEST_CASE("path metric properties")
{
    for (const auto& k : {fixtures::bd2(), fixtures::cone_bd2(), fixtures::ex44_target(), fixtures::boundary_tetrahedron()}) {
        PathMetric coarse(k, 2), fine(k, 6);
        std::mt19937_64 rng(kDefaultSeed);
        for (int i = 0; i < 200; ++i) {
            const Point a = random_point(*k, rng), b = random_point(*k, rng), c = random_point(*k, rng);
            const double ab = fine(a, b);
            CHECK(ab == doctest::Approx(fine(b, a)).epsilon(1e-9));
            CHECK(ab <= fine(a, c) + fine(c, b) + 1e-9);
            CHECK(ab <= coarse(a, b) + 1e-9);
            CHECK(ab + 1e-9 >= embedded_distance(a, b));
        }
    }
}

TEST_CASE("path metric around the circle")
{
    // opposite points of BD2: half the perimeter 3√2
    const auto k = fixtures::bd2();
    PathMetric d(k, 4);
    const Point a = Point::vertex(0);
    const Point mid = Point::barycenter(k->simplex({"b", "c"}));
    CHECK(d(a, mid) == doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("mesh and comesh")
{
    for (const auto& [name, k] : fixtures::all_complexes()) {
        CAPTURE(name);
        const auto mc = mesh_comesh(*k);
        if (k->dimension() == 0) {
            CHECK(mc.mesh == 0.0);
            CHECK(std::isinf(mc.comesh));
            continue;
        }
        CHECK(mc.mesh == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        const double n = k->dimension();
        CHECK(mc.comesh == doctest::Approx(1.0 / std::sqrt(n * (n + 1))).epsilon(1e-12));
    }
    const auto d2 = fixtures::d2();
    const auto report = simplex_metrics(*d2, d2->simplex({"a", "b", "c"}));
    CHECK(report.diam == doctest::Approx(std::sqrt(2.0)));
    CHECK(report.rad == doctest::Approx(1.0 / std::sqrt(6.0)));
}

TEST_CASE("points are canonical")
{
    Eigen::VectorXd c(3);
    c << 0.5, 0.0, 0.5;
    const Point p(Simplex{0, 1, 2}, c);
    CHECK(p.carrier() == Simplex{0, 2});
    CHECK(p.coords().size() == 2);
    Eigen::VectorXd bad(2);
    bad << 0.7, 0.7;
    CHECK_THROWS_AS(Point(Simplex{0, 1}, bad), Error);
}

TEST_CASE("lattice points")
{
    // (1/r)ℤ points of Δ²: C(r+2, 2)
    const auto pts = lattice_points(*fixtures::d2(), 4);
    CHECK(pts.size() == oracle::compositions(3, 4).size());
}
