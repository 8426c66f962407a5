#include "doctest.h"
#include "oracles.hpp"

#include "pltopo/cellulation.hpp"
#include "pltopo/controlled_homotopy.hpp"
#include "pltopo/error.hpp"
#include "pltopo/fixtures.hpp"
#include "pltopo/metric.hpp"
#include "pltopo/sampling.hpp"

#include <cmath>

using namespace pltopo;

namespace {

std::map<int, long> cell_profile(const std::vector<Flag>& flags)
{
    std::map<int, long> out;
    for (const auto& f : flags) ++out[f.cell_dim()];
    return out;
}

Eigen::VectorXd insert_zero(const Eigen::VectorXd& v, Eigen::Index j)
{
    Eigen::VectorXd out(v.size() + 1);
    out << v.head(j), 0.0, v.tail(v.size() - j);
    return out;
}

}  // namespace

TEST_CASE("flag census matches chain enumeration")
{
    CHECK(enumerate_flags(*fixtures::d1()).size() == 7);
    const auto d2 = enumerate_flags(*fixtures::d2());
    CHECK(d2.size() == 43);
    CHECK(cell_profile(d2) == std::map<int, long>{{0, 12}, {1, 21}, {2, 10}});
    CHECK(enumerate_flags(*fixtures::point()).size() == 1);
    for (const auto& [name, k] : fixtures::all_complexes()) {
        CAPTURE(name);
        std::vector<oracle::Face> gens;
        for (const auto& s : k->maximal_simplices()) gens.push_back({s.vertices().begin(), s.vertices().end()});
        CHECK(cell_profile(enumerate_flags(*k)) == oracle::flag_counts(oracle::all_faces(gens)));
    }
}

TEST_CASE("gamma_vertex")
{
    const auto d1 = fixtures::d1();
    const Simplex e = d1->simplex({"a", "b"});
    CHECK(gamma_vertex(*d1, 0.0, 0, e) == Point::vertex(0));
    const Point p = gamma_vertex(*d1, 0.1, 0, e);
    CHECK(p.weight(0) == doctest::Approx(1.0 - 0.1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(p.weight(1) == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(gamma_vertex(*d1, 0.1, 0, Simplex{0}) == Point::vertex(0));
    CHECK_THROWS_AS(gamma_vertex(*d1, 0.8, 0, e), Error);
    for (int d = 1; d <= 3; ++d)
        CHECK(vertex_to_barycenter(d) == doctest::Approx(std::sqrt(d / (d + 1.0))).epsilon(1e-12));
}

TEST_CASE("gamma_eval")
{
    const auto d2 = fixtures::d2();
    const auto c = Cellulation::build(d2, 0.1);
    std::mt19937_64 rng(5);
    for (std::size_t i = 0; i < c.cells().size(); ++i) {
        const Flag& f = c.cells()[i];
        const auto ns = static_cast<int>(f.base.size()), nt = static_cast<int>(f.chain.size());
        for (int a = 0; a < ns; ++a)
            for (int b = 0; b < nt; ++b) {
                const Eigen::VectorXd s = Eigen::VectorXd::Unit(ns, a), t = Eigen::VectorXd::Unit(nt, b);
                CHECK(embedded_distance(c.eval(i, s, t), c.vertex_images(i)[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) < 1e-12);
            }
        const Eigen::VectorXd s = random_barycentric(ns, rng), t = random_barycentric(nt, rng);
        CHECK(embedded_distance(c.eval(i, s, t), gamma_closed_form(0.1, f, s, t)) < 1e-12);
        CHECK(embedded_distance(gamma_closed_form(0.0, f, s, t), Point(f.base, s)) < 1e-12);
    }
    CHECK_THROWS_AS(c.eval(0, Eigen::VectorXd::Ones(3), Eigen::VectorXd::Ones(1)), Error);

    // the cell of the flag τ₀ ⩽ τ₀ < σ hugs the edge τ₀
    const Simplex tau = d2->simplex({"a", "b"}), sigma = d2->simplex({"a", "b", "c"});
    const auto it = std::find(c.cells().begin(), c.cells().end(), Flag{tau, {tau, sigma}});
    REQUIRE(it != c.cells().end());
    const Point mid = c.eval(static_cast<std::size_t>(it - c.cells().begin()), Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.5, 0.5));
    CHECK(distance_to_face(mid, tau) <= 0.1 + 1e-12);
    CHECK(distance_to_face(mid, tau) > 0.0);
}

TEST_CASE("cells agree on shared faces")
{
    for (const auto& k : {fixtures::d2(), fixtures::ex44_target()}) {
        const auto c = Cellulation::build(k, 0.05);
        std::mt19937_64 rng(9);
        std::map<Flag, std::size_t> index;
        for (std::size_t i = 0; i < c.cells().size(); ++i) index[c.cells()[i]] = i;
        for (std::size_t i = 0; i < c.cells().size(); ++i) {
            const Flag& f = c.cells()[i];
            const auto ns = static_cast<int>(f.base.size()), nt = static_cast<int>(f.chain.size());
            for (int j = 0; ns > 1 && j < ns; ++j) {
                std::vector<VertexIndex> vs(f.base.vertices().begin(), f.base.vertices().end());
                vs.erase(vs.begin() + j);
                const std::size_t face = index.at(Flag{Simplex(vs), f.chain});
                const Eigen::VectorXd s = random_barycentric(ns - 1, rng), t = random_barycentric(nt, rng);
                CHECK(embedded_distance(c.eval(i, insert_zero(s, j), t), c.eval(face, s, t)) < 1e-9);
            }
            for (int j = 0; nt > 1 && j < nt; ++j) {
                auto chain = f.chain;
                chain.erase(chain.begin() + j);
                if (!f.base.is_face_of(chain.front())) continue;
                const std::size_t face = index.at(Flag{f.base, chain});
                const Eigen::VectorXd s = random_barycentric(ns, rng), t = random_barycentric(nt - 1, rng);
                CHECK(embedded_distance(c.eval(i, s, insert_zero(t, j)), c.eval(face, s, t)) < 1e-9);
            }
        }
    }
}

TEST_CASE("gamma_invert")
{
    const auto d2 = fixtures::d2();
    const auto c = Cellulation::build(d2, 0.1);
    const auto v = c.invert(Point::vertex(1));
    CHECK(c.cells()[v.cell] == Flag{Simplex{1}, {Simplex{1}}});

    const Simplex top = d2->simplex({"a", "b", "c"});
    const auto b = c.invert(Point::barycenter(top));
    CHECK(c.cells()[b.cell] == Flag{top, {top}});
    CHECK(b.s.minCoeff() > 0.0);

    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const std::size_t i = rng() % c.cells().size();
        const Flag& f = c.cells()[i];
        const Eigen::VectorXd s = random_barycentric(static_cast<int>(f.base.size()), rng);
        const Eigen::VectorXd t = random_barycentric(static_cast<int>(f.chain.size()), rng);
        const Point y = c.eval(i, s, t);
        const auto cc = c.invert(y);
        worst = std::max(worst, embedded_distance(c.eval(cc.cell, cc.s, cc.t), y));
        if (f.cell_dim() == 2) {
            CHECK(cc.cell == i);
            CHECK((cc.s - s).norm() < 1e-8);
            CHECK((cc.t - t).norm() < 1e-8);
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("straight-line homotopy")
{
    const auto d2 = fixtures::d2();
    const auto c = Cellulation::build(d2, 0.1);
    const Homotopy h = straightline_homotopy(c);
    for (const auto& p : cellulation_vertices(c)) {
        const double length = embedded_distance(h(p, 0.0), h(p, 1.0));
        if (p.dim() == 0) {
            CHECK(length == 0.0);
        } else {
            CHECK(length == doctest::Approx(0.1).epsilon(1e-9));
        }
    }
    SampleOptions opts;
    opts.extra = cellulation_vertices(c);
    const PointMap id = PointMap::identity(d2);
    CHECK(measure_control(h, id, 0.1, opts).measured_control <= 0.1 + 1e-6);

    const auto finer = Cellulation::build(d2, 0.04);
    std::mt19937_64 rng(17);
    for (int n = 0; n < 500; ++n) {
        const Point y = random_point(*d2, rng);
        const auto cc = c.invert(y);
        CHECK(embedded_distance(finer.eval(cc.cell, cc.s, cc.t), y) <= 0.1 - 0.04 + 1e-6);
        CHECK(embedded_distance(h(y, 1.0), y) <= 0.1 + 1e-12);
    }
    CHECK_THROWS_AS(Cellulation::build(d2, 0.5), Error);
    CHECK_THROWS_AS(Cellulation::build(d2, 0.0), Error);
}
