#include "doctest.h"
#include "oracles.hpp"

#include "pltopo/contractibility.hpp"
#include "pltopo/error.hpp"
#include "pltopo/fixtures.hpp"
#include "pltopo/sampling.hpp"
#include "pltopo/smith.hpp"

using namespace pltopo;

TEST_CASE("smith normal form")
{
    IntMatrix<BigInt> m(2, 2);
    m << 2, 4, 6, 8;
    const auto r = smith_normal_form(m);
    CHECK(r.rank == 2);
    REQUIRE(r.invariant_factors.size() == 2);
    CHECK(r.invariant_factors[0] == 2);
    CHECK(r.invariant_factors[1] == 4);

    IntMatrix<long> z = IntMatrix<long>::Zero(3, 2);
    CHECK(smith_normal_form(z).rank == 0);
}

TEST_CASE("homology matches the rational oracle")
{
    for (const auto& [name, k] : fixtures::all_complexes()) {
        CAPTURE(name);
        std::vector<oracle::Face> gens;
        for (const auto& s : k->maximal_simplices()) gens.push_back({s.vertices().begin(), s.vertices().end()});
        const auto expected = oracle::reduced_betti(oracle::all_faces(gens));
        const auto h = homology(*k);
        REQUIRE(h.betti.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) CHECK(h.betti[i] == expected[i]);
    }
    CHECK(homology(*fixtures::point()).trivial());
    CHECK(homology(*fixtures::bd2()).describe() == "b~=(0,1)");
    CHECK(homology(*fixtures::boundary_tetrahedron()).betti == std::vector<long>{0, 0, 1});
}

TEST_CASE("projective plane has torsion")
{
    // six-vertex RP²
    const auto rp2 = make_complex(SimplicialComplex::from_labels(
        {"1", "2", "3", "4", "5", "6"}, {{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"}, {"1", "2", "6"},
                                         {"2", "3", "5"}, {"2", "4", "5"}, {"2", "4", "6"}, {"3", "4", "6"}, {"3", "5", "6"}}));
    const auto h = homology(*rp2);
    CHECK(h.betti == std::vector<long>{0, 0, 0});
    REQUIRE(h.torsion.size() >= 2);
    REQUIRE(h.torsion[1].size() == 1);
    CHECK(h.torsion[1][0] == 2);
    CHECK_FALSE(h.trivial());
}

TEST_CASE("greedy collapse")
{
    CHECK(greedy_collapse(*fixtures::d2()).full);
    CHECK(greedy_collapse(*fixtures::cone_bd2()).full);
    const auto stuck = greedy_collapse(*fixtures::bd2());
    CHECK_FALSE(stuck.full);
    CHECK(stuck.core.size() == 6);
    CHECK_THROWS_AS(greedy_collapse(SimplicialComplex()), Error);
}

TEST_CASE("verdicts")
{
    const auto edge = fixtures::d1();
    CHECK(contractibility_verdict(*edge).kind == VerdictKind::Contractible);
    const auto two = make_complex(SimplicialComplex::from_labels({"p", "q"}, {{"p"}, {"q"}}));
    const auto v2 = contractibility_verdict(*two);
    CHECK(v2.kind == VerdictKind::NotContractible);
    CHECK(v2.homology.betti[0] == 1);
    const auto circle = contractibility_verdict(*fixtures::bd2());
    CHECK(circle.kind == VerdictKind::NotContractible);
    CHECK(circle.homology.betti[1] == 1);
    for (const auto& [name, k] : fixtures::all_complexes()) {
        const auto v = contractibility_verdict(*k);
        if (v.kind == VerdictKind::Contractible) CHECK(v.homology.trivial());
    }
}

TEST_CASE("contraction from collapse")
{
    for (const auto& k : {fixtures::point(), fixtures::d1(), fixtures::d2(), fixtures::cone_bd2()}) {
        const auto seq = greedy_collapse(*k);
        REQUIRE(seq.full);
        const Homotopy c = contraction_from_collapse(k, seq);
        for (VertexIndex v = 0; v < static_cast<VertexIndex>(k->vertex_count()); ++v) {
            CHECK(c(Point::vertex(v), 0.0) == Point::vertex(v));
            CHECK(c(Point::vertex(v), 1.0) == Point::vertex(seq.basepoint));
        }
        std::mt19937_64 rng(11);
        const double lip = c.time_lipschitz();
        for (int i = 0; i < 50; ++i) {
            const Point x = random_point(*k, rng);
            CHECK(c(x, 1.0) == Point::vertex(seq.basepoint));
            for (int s = 0; s < 40; ++s) {
                const double t0 = s / 40.0, t1 = (s + 1) / 40.0;
                const Point a = c(x, t0), b = c(x, t1);
                CHECK(in_complex(*k, a));
                CHECK(embedded_distance(a, b) <= lip * (t1 - t0) + 1e-9);
            }
        }
    }
    CHECK_THROWS_AS(contraction_from_collapse(fixtures::bd2(), greedy_collapse(*fixtures::bd2())), Error);
}
