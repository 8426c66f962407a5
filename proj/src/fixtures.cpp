#include "pltopo/fixtures.hpp"

#include "pltopo/error.hpp"

#include <algorithm>
#include <cmath>

namespace pltopo::fixtures {

namespace {

ComplexPtr from(std::vector<std::string> labels, const std::vector<std::vector<std::string>>& generators)
{
    return make_complex(SimplicialComplex::from_labels(std::move(labels), generators));
}

ComplexPtr with_positions(SimplicialComplex k, std::vector<std::vector<double>> positions)
{
    k.set_positions(std::move(positions));
    return make_complex(std::move(k));
}

}  // namespace

ComplexPtr point() { return from({"p"}, {{"p"}}); }
ComplexPtr d1() { return from({"a", "b"}, {{"a", "b"}}); }
ComplexPtr d2() { return from({"a", "b", "c"}, {{"a", "b", "c"}}); }
ComplexPtr bd2() { return from({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}); }

ComplexPtr boundary_tetrahedron()
{
    return from({"a", "b", "c", "d"}, {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}});
}

ComplexPtr cone_bd2()
{
    return from({"a", "b", "c", "o"}, {{"a", "b", "o"}, {"b", "c", "o"}, {"c", "a", "o"}});
}

MapPtr map_collapse()
{
    return std::make_shared<const SimplicialMap>(
        SimplicialMap::from_labels(d2(), d1(), {{"a", "a"}, {"b", "b"}, {"c", "b"}}));
}

MapPtr map_bad()
{
    return std::make_shared<const SimplicialMap>(
        SimplicialMap::from_labels(bd2(), d1(), {{"a", "a"}, {"b", "b"}, {"c", "a"}}));
}

ComplexPtr ex44_target()
{
    return with_positions(
        SimplicialComplex::from_labels({"0", "e1", "e2", "e1+e2"}, {{"0", "e1", "e1+e2"}, {"0", "e2", "e1+e2"}}),
        {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
}

ComplexPtr ex44_source()
{
    return with_positions(SimplicialComplex::from_labels({"0", "e1", "e3", "e1+e2", "e2+e3", "e1+e2+e3"},
                                                         {{"0", "e1", "e1+e2"},
                                                          {"e3", "e2+e3", "e1+e2+e3"},
                                                          {"0", "e3", "e1+e2+e3"},
                                                          {"0", "e1+e2", "e1+e2+e3"}}),
                          {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}});
}

MapPtr ex44_map()
{
    return std::make_shared<const SimplicialMap>(SimplicialMap::from_labels(ex44_source(), ex44_target(),
                                                                            {{"0", "0"},
                                                                             {"e1", "e1"},
                                                                             {"e3", "0"},
                                                                             {"e1+e2", "e1+e2"},
                                                                             {"e2+e3", "e2"},
                                                                             {"e1+e2+e3", "e1+e2"}}));
}

double ex44_height(const SimplicialComplex& source, const Point& x)
{
    double z = 0.0;
    for (const auto& [v, w] : x.weights()) z += w * source.positions().at(static_cast<std::size_t>(v)).at(2);
    return z;
}

Point lift_by_height(const FiberComplex& fiber, const Point& s, double z)
{
    const auto& source = *fiber.map().source();
    const Simplex& sigma = fiber.base();
    if (s.carrier() != sigma) throw Error(ErrorCode::GeometryError, "point is not interior to the fibre's base");
    const auto& tuples = fiber.vertex_tuples();
    auto over = [&](VertexIndex t) {
        std::map<VertexIndex, double> w;
        for (std::size_t i = 0; i < sigma.size(); ++i) w[tuples[static_cast<std::size_t>(t)][i]] += s.weight(sigma[i]);
        return w;
    };
    auto height = [&](VertexIndex t) {
        double h = 0.0;
        for (const auto& [v, w] : over(t)) h += w * source.positions().at(static_cast<std::size_t>(v)).at(2);
        return h;
    };
    const auto& tri = *fiber.triangulation();
    if (tri.empty()) throw Error(ErrorCode::GeometryError, "empty fibre");
    double lo = kInfiniteDistance, hi = -kInfiniteDistance;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        lo = std::min(lo, height(static_cast<VertexIndex>(t)));
        hi = std::max(hi, height(static_cast<VertexIndex>(t)));
    }
    z = std::clamp(z, lo, hi);
    for (const auto& e : tri.simplices()) {
        if (e.dim() == 0 && std::abs(height(e[0]) - z) <= 1e-12) return Point::from_weights(over(e[0]));
        if (e.dim() != 1) continue;
        const double ha = height(e[0]), hb = height(e[1]);
        if (z < std::min(ha, hb) - 1e-12 || z > std::max(ha, hb) + 1e-12 || ha == hb) continue;
        const double alpha = std::clamp((z - ha) / (hb - ha), 0.0, 1.0);
        std::map<VertexIndex, double> w;
        for (const auto& [v, a] : over(e[0])) w[v] += (1.0 - alpha) * a;
        for (const auto& [v, a] : over(e[1])) w[v] += alpha * a;
        return Point::from_weights(w);
    }
    throw Error(ErrorCode::GeometryError, "no fibre point at the requested height");
}

double ex44_base_height(const SimplicialMap& f, const Simplex& sigma)
{
    const auto& y = *f.target();
    const bool in1 = sigma.is_face_of(y.simplex({"0", "e1", "e1+e2"}));
    const bool in2 = sigma.is_face_of(y.simplex({"0", "e2", "e1+e2"}));
    if (in1 && in2) return 0.5;
    return in1 ? 0.0 : 1.0;
}

GammaChoices ex44_choices(const MapPtr& f)
{
    auto fibers = std::make_shared<std::map<Simplex, FiberComplex>>();
    for (const auto& sigma : f->target()->simplices()) fibers->emplace(sigma, FiberComplex(*f, sigma));
    const ComplexPtr source = f->source();

    GammaChoices choices;
    choices.transport = [fibers, source](const Point& x, const Point& s) {
        return lift_by_height(fibers->at(s.carrier()), s, ex44_height(*source, x));
    };
    for (const auto& sigma : f->target()->simplices())
        choices.base.emplace(sigma, lift_by_height(fibers->at(sigma), Point::barycenter(sigma), ex44_base_height(*f, sigma)));
    choices.chain = [fibers, f](const std::vector<Simplex>& chain, const Eigen::VectorXd& t) -> std::optional<Point> {
        double z = 0.0;
        for (std::size_t j = 0; j < chain.size(); ++j) z += t[static_cast<Eigen::Index>(j)] * ex44_base_height(*f, chain[j]);
        return lift_by_height(fibers->at(chain.front()), Point::barycenter(chain.front()), z);
    };
    return choices;
}

std::vector<Named> all_complexes()
{
    return {{"point", point()},
            {"D1", d1()},
            {"D2", d2()},
            {"BD2", bd2()},
            {"boundary-tetrahedron", boundary_tetrahedron()},
            {"cone-BD2", cone_bd2()},
            {"EX44-target", ex44_target()},
            {"EX44-source", ex44_source()}};
}

}  // namespace pltopo::fixtures
