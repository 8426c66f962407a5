#include "pltopo/simplicial_map.hpp"

#include "pltopo/error.hpp"
#include "pltopo/sampling.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace pltopo {

SimplicialMap::SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<VertexIndex> vertex_map)
    : source_(std::move(source)), target_(std::move(target)), vertex_map_(std::move(vertex_map))
{
    if (vertex_map_.size() != source_->vertex_count())
        throw Error(ErrorCode::MalformedInput, "vertex map does not cover the source vertices");
    for (VertexIndex w : vertex_map_)
        if (w < 0 || static_cast<std::size_t>(w) >= target_->vertex_count())
            throw Error(ErrorCode::MalformedInput, "vertex map points outside the target");
}

SimplicialMap SimplicialMap::from_labels(ComplexPtr source, ComplexPtr target,
                                         const std::map<std::string, std::string>& vertex_map)
{
    std::vector<VertexIndex> image(source->vertex_count(), -1);
    for (const auto& [from, to] : vertex_map) {
        auto v = source->find_vertex(from);
        if (!v) throw Error(ErrorCode::NotFound, "unknown source vertex '" + from + "' in vertex map");
        auto w = target->find_vertex(to);
        if (!w) throw Error(ErrorCode::NotFound, "unknown target vertex '" + to + "' in vertex map");
        image[static_cast<std::size_t>(*v)] = *w;
    }
    for (std::size_t v = 0; v < image.size(); ++v)
        if (image[v] < 0)
            throw Error(ErrorCode::MalformedInput,
                        "vertex '" + source->label(static_cast<VertexIndex>(v)) + "' has no image");
    return SimplicialMap(std::move(source), std::move(target), std::move(image));
}

SimplicialMap SimplicialMap::identity(ComplexPtr k)
{
    std::vector<VertexIndex> image(k->vertex_count());
    std::iota(image.begin(), image.end(), 0);
    return SimplicialMap(k, k, std::move(image));
}

Simplex SimplicialMap::image(const Simplex& tau) const
{
    std::vector<VertexIndex> w;
    for (VertexIndex v : tau) w.push_back((*this)(v));
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return Simplex(std::move(w));
}

Point SimplicialMap::operator()(const Point& p) const
{
    std::map<VertexIndex, double> w;
    for (std::size_t i = 0; i < p.carrier().size(); ++i) w[(*this)(p.carrier()[i])] += p.coords()[static_cast<Eigen::Index>(i)];
    return Point::from_weights(w);
}

PointMap SimplicialMap::as_map() const
{
    SimplicialMap self = *this;
    double lip = 1.0;
    for (const auto& s : source_->simplices()) {
        // merging k vertices multiplies ℓ2 lengths by at most √k
        std::map<VertexIndex, int> fold;
        for (VertexIndex v : s) ++fold[self(v)];
        for (const auto& [w, k] : fold) lip = std::max(lip, std::sqrt(static_cast<double>(k)));
    }
    return PointMap(source_, target_, [self](const Point& p) { return self(p); }, lip);
}

std::vector<Simplex> SimplicialMap::cells_over(const Simplex& sigma) const
{
    std::vector<Simplex> out;
    for (const auto& tau : source_->simplices())
        if (tau.size() >= sigma.size() && image(tau) == sigma) out.push_back(tau);
    return out;
}

Simplex SimplicialMap::part_over(const Simplex& tau, VertexIndex w) const
{
    std::vector<VertexIndex> part;
    for (VertexIndex v : tau)
        if ((*this)(v) == w) part.push_back(v);
    if (part.empty()) return {};
    return Simplex(std::move(part));
}

std::vector<Simplex> validate_map(const SimplicialMap& f)
{
    std::vector<Simplex> bad;
    for (const auto& tau : f.source()->simplices())
        if (!f.target()->contains(f.image(tau))) bad.push_back(tau);
    return bad;
}

MissedStars surjectivity_check(const SimplicialMap& f)
{
    std::set<Simplex> hit;
    for (const auto& tau : f.source()->simplices()) hit.insert(f.image(tau));
    MissedStars out;
    for (const auto& sigma : f.target()->simplices())
        if (!hit.count(sigma)) out.missed.push_back(sigma);
    std::set<Simplex> missed(out.missed.begin(), out.missed.end());
    for (const auto& sigma : out.missed) {
        bool minimal = true;
        for (const auto& face : sigma.faces())
            if (face != sigma && missed.count(face)) minimal = false;
        if (minimal) out.minimal.push_back(sigma);
    }
    return out;
}

Point transport(const SimplicialMap& f, const Point& x, const Point& s)
{
    Point y = f(x);
    std::map<VertexIndex, double> w;
    for (std::size_t i = 0; i < s.carrier().size(); ++i) {
        VertexIndex target = s.carrier()[i];
        if (y.weight(target) <= 0.0)
            throw Error(ErrorCode::GeometryError, "transport target leaves the carrier of the image");
    }
    for (std::size_t i = 0; i < x.carrier().size(); ++i) {
        VertexIndex v = x.carrier()[i];
        VertexIndex target = f(v);
        double sw = s.weight(target);
        if (sw <= 0.0) continue;
        w[v] += sw / y.weight(target) * x.coords()[static_cast<Eigen::Index>(i)];
    }
    return Point::from_weights(w);
}

Point fiber_component(const SimplicialMap& f, const Point& x)
{
    return transport(f, x, Point::barycenter(f(x).carrier()));
}

// ---------------------------------------------------------------- fibre

FiberComplex::FiberComplex(const SimplicialMap& f, const Simplex& base)
    : map_(std::make_shared<const SimplicialMap>(f)), base_(base)
{
    f.target()->require(base);
    for (const auto& tau : f.cells_over(base)) {
        FiberCell cell{tau, {}};
        for (VertexIndex w : base) cell.factors.push_back(f.part_over(tau, w));
        cells_.push_back(std::move(cell));
    }

    std::set<std::vector<VertexIndex>> tuples;
    std::vector<std::vector<std::vector<VertexIndex>>> chains;
    for (const auto& cell : cells_) {
        const std::size_t m = cell.factors.size();
        std::vector<std::size_t> c(m, 0);
        std::vector<std::vector<VertexIndex>> chain;
        auto current = [&] {
            std::vector<VertexIndex> t(m);
            for (std::size_t i = 0; i < m; ++i) t[i] = cell.factors[i][c[i]];
            return t;
        };
        // every monotone lattice path through the product is a top simplex
        std::function<void()> walk = [&] {
            chain.push_back(current());
            bool moved = false;
            for (std::size_t i = 0; i < m; ++i) {
                if (c[i] + 1 >= cell.factors[i].size()) continue;
                moved = true;
                ++c[i];
                walk();
                --c[i];
            }
            if (!moved) {
                for (const auto& t : chain) tuples.insert(t);
                chains.push_back(chain);
            }
            chain.pop_back();
        };
        walk();
    }

    for (const auto& t : tuples) {
        tuple_index_[t] = static_cast<VertexIndex>(tuples_.size());
        tuples_.push_back(t);
    }
    std::vector<std::string> labels;
    const double share = 1.0 / static_cast<double>(base.size());
    for (const auto& t : tuples_) {
        std::string label = "(";
        std::map<VertexIndex, double> w;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) label += ",";
            label += f.source()->label(t[i]);
            w[t[i]] += share;
        }
        labels.push_back(label + ")");
        embedding_.push_back(Point::from_weights(w));
    }
    std::vector<Simplex> generators;
    for (const auto& chain : chains) {
        std::vector<VertexIndex> s;
        for (const auto& t : chain) s.push_back(tuple_index_.at(t));
        generators.emplace_back(std::move(s));
    }
    triangulation_ = make_complex(SimplicialComplex::closure(std::move(labels), generators));
}

Point FiberComplex::to_source(const Point& p) const
{
    std::map<VertexIndex, double> w;
    for (std::size_t r = 0; r < p.carrier().size(); ++r)
        for (const auto& [v, a] : embedding_[static_cast<std::size_t>(p.carrier()[r])].weights())
            w[v] += a * p.coords()[static_cast<Eigen::Index>(r)];
    return Point::from_weights(w);
}

Point FiberComplex::from_source(const Point& x) const
{
    const SimplicialMap& f = *map_;
    const Simplex& tau = x.carrier();
    if (f.image(tau) != base_) throw Error(ErrorCode::GeometryError, "point does not lie over the base simplex");
    const double share = 1.0 / static_cast<double>(base_.size());

    struct Step {
        double height;
        std::size_t factor;
    };
    std::vector<Step> steps;
    std::vector<Simplex> parts;
    for (std::size_t i = 0; i < base_.size(); ++i) {
        Simplex part = f.part_over(tau, base_[i]);
        double total = 0.0;
        for (VertexIndex v : part) total += x.weight(v);
        if (std::abs(total - share) > 1e-7) throw Error(ErrorCode::GeometryError, "point is not over the barycentre");
        double tail = 0.0;
        for (std::size_t k = part.size(); k-- > 1;) {
            tail += x.weight(part[k]) / total;
            steps.push_back({tail, i});
        }
        parts.push_back(std::move(part));
    }
    std::stable_sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.height > b.height; });

    std::vector<std::size_t> c(base_.size(), 0);
    auto vertex = [&] {
        std::vector<VertexIndex> t(base_.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = parts[i][c[i]];
        return tuple_index_.at(t);
    };
    std::map<VertexIndex, double> w;
    double theta = 1.0;
    for (const auto& step : steps) {
        w[vertex()] += theta - step.height;
        theta = step.height;
        ++c[step.factor];
    }
    w[vertex()] += theta;
    return Point::from_weights(w);
}

FiberComplex fiber_over_barycenter(const SimplicialMap& f, const Simplex& sigma) { return FiberComplex(f, sigma); }

// ---------------------------------------------------------------- product certificate

CellFamily fiber_cells_over_point(const SimplicialMap& f, const Point& y)
{
    const Simplex& sigma = y.carrier();
    const auto m = static_cast<Eigen::Index>(sigma.size());
    std::vector<Eigen::VectorXd> vertices;
    auto vertex_id = [&](const Eigen::VectorXd& z) {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if ((vertices[i] - z).norm() < 1e-9) return static_cast<int>(i);
        vertices.push_back(z);
        return static_cast<int>(vertices.size()) - 1;
    };

    std::set<std::vector<int>> family;
    const auto n = static_cast<Eigen::Index>(f.source()->vertex_count());
    for (const auto& tau : f.source()->simplices()) {
        if (f.image(tau) != sigma) continue;
        // basic solutions of {z ≥ 0 on τ, Σ_{f(v)=w} z_v = y_w}
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(tau.size()));
        for (std::size_t j = 0; j < tau.size(); ++j)
            a(sigma.position(f(tau[j])), static_cast<Eigen::Index>(j)) = 1.0;
        std::vector<int> cell;
        std::vector<bool> pick(tau.size(), false);
        std::fill(pick.begin(), pick.begin() + m, true);
        do {
            Eigen::MatrixXd basis(m, m);
            std::vector<std::size_t> cols;
            for (std::size_t j = 0; j < tau.size(); ++j)
                if (pick[j]) cols.push_back(j);
            for (Eigen::Index c = 0; c < m; ++c) basis.col(c) = a.col(static_cast<Eigen::Index>(cols[static_cast<std::size_t>(c)]));
            Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
            if (lu.rank() < m) continue;
            Eigen::VectorXd zb = lu.solve(y.coords());
            if (zb.minCoeff() < -1e-12) continue;
            Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
            for (Eigen::Index c = 0; c < m; ++c) z[tau[cols[static_cast<std::size_t>(c)]]] = zb[c];
            cell.push_back(vertex_id(z));
        } while (std::prev_permutation(pick.begin(), pick.end()));
        std::sort(cell.begin(), cell.end());
        cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
        family.insert(cell);
    }
    return {family.begin(), family.end()};
}

CellFamily fiber_cells_combinatorial(const FiberComplex& fiber)
{
    std::set<std::vector<int>> family;
    const auto& tuples = fiber.vertex_tuples();
    for (const auto& cell : fiber.cells()) {
        std::vector<int> members;
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            bool inside = true;
            for (std::size_t i = 0; i < tuples[t].size(); ++i)
                inside = inside && cell.factors[i].contains(tuples[t][i]);
            if (inside) members.push_back(static_cast<int>(t));
        }
        family.insert(members);
    }
    return {family.begin(), family.end()};
}

bool families_isomorphic(const CellFamily& a, const CellFamily& b)
{
    if (a.size() != b.size()) return false;
    auto vertex_count = [](const CellFamily& fam) {
        int n = 0;
        for (const auto& c : fam)
            for (int v : c) n = std::max(n, v + 1);
        return n;
    };
    const int n = vertex_count(a);
    if (n != vertex_count(b)) return false;

    auto signatures = [n](const CellFamily& fam) {
        std::vector<std::vector<std::size_t>> sig(static_cast<std::size_t>(n));
        for (const auto& c : fam)
            for (int v : c) sig[static_cast<std::size_t>(v)].push_back(c.size());
        for (auto& s : sig) std::sort(s.begin(), s.end());
        return sig;
    };
    auto sa = signatures(a);
    auto sb = signatures(b);
    {
        auto x = sa, y = sb;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        if (x != y) return false;
    }

    std::set<std::vector<int>> target(b.begin(), b.end());
    std::vector<std::vector<std::size_t>> cells_of(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < a.size(); ++c)
        cells_of[static_cast<std::size_t>(a[c].back())].push_back(c);

    std::vector<int> phi(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::function<bool(int)> extend = [&](int v) {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] || sa[static_cast<std::size_t>(v)] != sb[static_cast<std::size_t>(w)]) continue;
            phi[static_cast<std::size_t>(v)] = w;
            // cells whose largest vertex is v are now fully mapped
            bool ok = true;
            for (std::size_t c : cells_of[static_cast<std::size_t>(v)]) {
                std::vector<int> image;
                for (int u : a[c]) image.push_back(phi[static_cast<std::size_t>(u)]);
                std::sort(image.begin(), image.end());
                if (!target.count(image)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used[static_cast<std::size_t>(w)] = true;
                if (extend(v + 1)) return true;
                used[static_cast<std::size_t>(w)] = false;
            }
        }
        phi[static_cast<std::size_t>(v)] = -1;
        return false;
    };
    return extend(0);
}

IsoCertificate verify_product_decomposition(const SimplicialMap& f, const Simplex& sigma, std::size_t samples,
                                            std::uint64_t seed)
{
    FiberComplex fiber(f, sigma);
    IsoCertificate cert;
    cert.base = sigma;

    for (const auto& cell : fiber.cells()) {
        CellCorrespondence c{cell.source_simplex, cell.factors, cell.source_simplex.dim(), 0};
        for (const auto& part : cell.factors) c.fiber_dim += part.dim();
        if (c.source_dim != c.fiber_dim + sigma.dim())
            throw Error(ErrorCode::InternalError, "product cell dimension mismatch over " + f.target()->name(sigma));
        Simplex joined = cell.factors.front();
        for (const auto& part : cell.factors) joined = joined.unite(part);
        if (joined != cell.source_simplex)
            throw Error(ErrorCode::InternalError, "product factors do not rebuild " + f.source()->name(cell.source_simplex));
        cert.cells.push_back(std::move(c));
    }
    for (const auto& p : cert.cells)
        for (const auto& q : cert.cells) {
            bool face = p.source_simplex.is_face_of(q.source_simplex);
            bool product_face = true;
            for (std::size_t i = 0; i < p.factors.size(); ++i)
                product_face = product_face && p.factors[i].is_face_of(q.factors[i]);
            if (face != product_face)
                throw Error(ErrorCode::InternalError, "cell bijection breaks a face relation over " + f.target()->name(sigma));
        }

    if (fiber.empty()) return cert;

    std::mt19937_64 rng(seed);
    const CellFamily reference = fiber_cells_combinatorial(fiber);
    for (std::size_t i = 0; i < samples; ++i) {
        Point y = random_point(sigma, rng);
        if (!families_isomorphic(fiber_cells_over_point(f, y), reference))
            throw Error(ErrorCode::InternalError, "fibre over a sampled point differs from the fibre over the barycentre of " +
                                                      f.target()->name(sigma));
        ++cert.sampled_fibers;

        const auto& cell = fiber.cells()[std::uniform_int_distribution<std::size_t>(0, fiber.cells().size() - 1)(rng)];
        Point x = random_point(cell.source_simplex, rng);
        Point split = fiber.from_source(fiber_component(f, x));
        Point back = transport(f, fiber.to_source(split), f(x));
        cert.max_identification_error = std::max(cert.max_identification_error, embedded_distance(back, x));
    }
    if (cert.max_identification_error > 1e-9)
        throw Error(ErrorCode::InternalError, "product identification does not round-trip over " + f.target()->name(sigma));
    return cert;
}

// ---------------------------------------------------------------- star retraction

Homotopy build_star_retraction(const MapPtr& f, const Simplex& sigma)
{
    f->target()->require(sigma);
    if (f->cells_over(sigma).empty())
        throw Error(ErrorCode::VacuousRetraction, "nothing maps onto the interior of " + f->target()->name(sigma));

    auto fn = [f, sigma](const Point& x, double u) {
        Point y = (*f)(x);
        for (VertexIndex w : sigma)
            if (y.weight(w) <= 0.0) throw Error(ErrorCode::GeometryError, "point is outside the preimage of the star");
        std::map<VertexIndex, double> inner, outer;
        double s = 0.0;
        for (std::size_t i = 0; i < x.carrier().size(); ++i) {
            VertexIndex v = x.carrier()[i];
            double a = x.coords()[static_cast<Eigen::Index>(i)];
            if (sigma.contains((*f)(v))) {
                inner[v] = a;
                s += a;
            } else {
                outer[v] = a;
            }
        }
        const double t0 = 1.0 - s;
        const double t = std::max(t0 - u, 0.0);
        std::map<VertexIndex, double> w;
        for (const auto& [v, a] : inner) w[v] += (1.0 - t) * a / s;
        if (t > 0.0)
            for (const auto& [v, a] : outer) w[v] += t * a / t0;
        return Point::from_weights(w);
    };
    return Homotopy(f->source(), f->source(), fn, std::sqrt(2.0));
}

MetricReport simplex_metrics(const SimplicialMap& control, const Simplex& s)
{
    return simplex_metrics(s, control.vertex_map());
}

MeshComesh mesh_comesh(const SimplicialMap& control)
{
    return mesh_comesh(*control.source(), control.vertex_map());
}

}  // namespace pltopo
