#include "pltopo/metric.hpp"

#include "pltopo/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace pltopo {

namespace {

long long lcm_upto(int r)
{
    long long l = 1;
    for (int k = 2; k <= r; ++k) l = std::lcm(l, static_cast<long long>(k));
    return l;
}

// All compositions of `total` into `parts` non-negative integers.
void compositions(int total, int parts, std::vector<int>& current, const auto& visit)
{
    if (parts == 1) {
        current.push_back(total);
        visit(current);
        current.pop_back();
        return;
    }
    for (int first = total; first >= 0; --first) {
        current.push_back(first);
        compositions(total - first, parts - 1, current, visit);
        current.pop_back();
    }
}

// Minimise |x - a| + |x - b| over x in the closed face spanned by `face`.
Point straighten(const Point& a, const Point& b, const Simplex& face, const Point& start)
{
    if (face.size() == 1) return Point::vertex(face[0]);
    const Eigen::Index n = static_cast<Eigen::Index>(face.size());
    Eigen::VectorXd af(n), bf(n);
    double a_off = 0.0, b_off = 0.0;
    for (const auto& [v, w] : a.weights()) {
        const int pos = face.position(v);
        if (pos < 0) a_off += w * w;
    }
    for (const auto& [v, w] : b.weights()) {
        const int pos = face.position(v);
        if (pos < 0) b_off += w * w;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        af[i] = a.weight(face[static_cast<std::size_t>(i)]);
        bf[i] = b.weight(face[static_cast<std::size_t>(i)]);
    }
    auto value = [&](const Eigen::VectorXd& x) {
        return std::sqrt((x - af).squaredNorm() + a_off) + std::sqrt((x - bf).squaredNorm() + b_off);
    };
    Eigen::VectorXd x = start.coords_on(face);
    double fx = value(x);
    double step = 0.5;
    for (int iter = 0; iter < 200; ++iter) {
        const double da = std::sqrt((x - af).squaredNorm() + a_off);
        const double db = std::sqrt((x - bf).squaredNorm() + b_off);
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
        if (da > 1e-15) grad += (x - af) / da;
        if (db > 1e-15) grad += (x - bf) / db;
        bool improved = false;
        while (step > 1e-14) {
            Eigen::VectorXd trial = project_to_simplex(x - step * grad);
            const double ft = value(trial);
            if (ft < fx - 1e-16) {
                x = trial;
                fx = ft;
                improved = true;
                step *= 2.0;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return Point(face, x);
}

}  // namespace

Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v)
{
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += u[static_cast<std::size_t>(i)];
        const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (u[static_cast<std::size_t>(i)] - candidate > 0) theta = candidate;
    }
    Eigen::VectorXd out = (v.array() - theta).cwiseMax(0.0);
    const double s = out.sum();
    if (s > 0) out /= s;
    return out;
}

double distance_to_face(const Point& p, const Simplex& face)
{
    double off = 0.0;
    Eigen::VectorXd on(static_cast<Eigen::Index>(face.size()));
    for (std::size_t i = 0; i < face.size(); ++i) on[static_cast<Eigen::Index>(i)] = p.weight(face[i]);
    for (const auto& [v, w] : p.weights())
        if (!face.contains(v)) off += w * w;
    const Eigen::VectorXd proj = project_to_simplex(on);
    return std::sqrt(off + (proj - on).squaredNorm());
}

// ------------------------------------------------------------- PathMetric

PathMetric::PathMetric(ComplexPtr complex, int refinement) : complex_(std::move(complex)), refinement_(refinement)
{
    if (!complex_) throw Error(ErrorCode::MalformedInput, "null complex");
    if (refinement_ < 1 || refinement_ > 32) throw Error(ErrorCode::OutOfRange, "refinement must lie in [1, 32]");

    tops_ = complex_->maximal_simplices();
    top_nodes_.assign(tops_.size(), {});

    const long long scale = lcm_upto(refinement_);
    std::map<std::pair<Simplex, std::vector<long long>>, std::size_t> seen;
    for (std::size_t ti = 0; ti < tops_.size(); ++ti) {
        const Simplex& top = tops_[ti];
        const int parts = static_cast<int>(top.size());
        for (int k = 1; k <= refinement_; ++k) {
            std::vector<int> current;
            compositions(k, parts, current, [&](const std::vector<int>& c) {
                std::vector<VertexIndex> ids;
                std::vector<long long> key;
                Eigen::VectorXd coords(parts);
                for (int i = 0; i < parts; ++i) coords[i] = static_cast<double>(c[static_cast<std::size_t>(i)]) / k;
                for (int i = 0; i < parts; ++i) {
                    if (c[static_cast<std::size_t>(i)] == 0) continue;
                    ids.push_back(top[static_cast<std::size_t>(i)]);
                    key.push_back(c[static_cast<std::size_t>(i)] * (scale / k));
                }
                Simplex carrier(ids);
                auto [it, fresh] = seen.emplace(std::make_pair(carrier, key), nodes_.size());
                if (fresh) nodes_.emplace_back(top, coords);
            });
        }
    }
    node_tops_.assign(nodes_.size(), {});
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
        node_tops_[n] = tops_containing(nodes_[n].carrier());
        for (std::size_t t : node_tops_[n]) top_nodes_[t].push_back(n);
    }

    component_of_vertex_.assign(complex_->vertex_count(), -1);
    const auto comps = complex_->components();
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (VertexIndex v : comps[c]) component_of_vertex_[static_cast<std::size_t>(v)] = static_cast<int>(c);
}

std::vector<std::size_t> PathMetric::tops_containing(const Simplex& carrier) const
{
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < tops_.size(); ++t)
        if (carrier.is_face_of(tops_[t])) out.push_back(t);
    return out;
}

double PathMetric::operator()(const Point& a, const Point& b) const
{
    if (!in_complex(*complex_, a) || !in_complex(*complex_, b))
        throw Error(ErrorCode::NotFound, "point is not in the complex");
    if (complex_->contains(a.carrier().unite(b.carrier()))) return embedded_distance(a, b);
    if (component_of_vertex_[static_cast<std::size_t>(a.carrier()[0])]
        != component_of_vertex_[static_cast<std::size_t>(b.carrier()[0])])
        return kInfiniteDistance;
    // Fixed argument order keeps the result symmetric bit for bit.
    // Carriers differ here, since a shared carrier is a shared closed simplex.
    return b.carrier() < a.carrier() ? shortest(b, a) : shortest(a, b);
}

double PathMetric::shortest(const Point& a, const Point& b) const
{
    const auto a_tops = tops_containing(a.carrier());
    const auto b_tops = tops_containing(b.carrier());
    std::vector<char> touches_b(tops_.size(), 0);
    for (std::size_t t : b_tops) touches_b[t] = 1;

    const std::size_t n = nodes_.size();
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<double> dist(n, kInfiniteDistance);
    std::vector<std::size_t> prev(n, kNone);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (std::size_t t : a_tops) {
        for (std::size_t u : top_nodes_[t]) {
            const double d = embedded_distance(a, nodes_[u]);
            if (d < dist[u]) {
                dist[u] = d;
                queue.emplace(d, u);
            }
        }
    }
    double best = kInfiniteDistance;
    std::size_t best_last = kNone;
    std::vector<char> done(n, 0);
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (done[u] || d > dist[u]) continue;
        if (d >= best) break;
        done[u] = 1;
        bool reaches_b = false;
        for (std::size_t t : node_tops_[u]) reaches_b = reaches_b || touches_b[t];
        if (reaches_b) {
            const double total = d + embedded_distance(nodes_[u], b);
            if (total < best) {
                best = total;
                best_last = u;
            }
        }
        for (std::size_t t : node_tops_[u]) {
            for (std::size_t v : top_nodes_[t]) {
                if (done[v]) continue;
                const double nd = d + embedded_distance(nodes_[u], nodes_[v]);
                if (nd < dist[v]) {
                    dist[v] = nd;
                    prev[v] = u;
                    queue.emplace(nd, v);
                }
            }
        }
    }
    if (best_last == kNone) return kInfiniteDistance;

    std::vector<Point> path{b};
    for (std::size_t u = best_last; u != kNone; u = prev[u]) path.push_back(nodes_[u]);
    path.push_back(a);
    std::reverse(path.begin(), path.end());

    // Straighten crossing points inside the faces shared by consecutive segments.
    auto length = [&]() {
        double total = 0.0;
        for (std::size_t i = 1; i < path.size(); ++i) total += embedded_distance(path[i - 1], path[i]);
        return total;
    };
    double current = length();
    for (int sweep = 0; sweep < 200 && path.size() > 2; ++sweep) {
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            const Simplex before = path[i - 1].carrier().unite(path[i].carrier());
            const Simplex after = path[i].carrier().unite(path[i + 1].carrier());
            const Simplex face = before.intersect(after);
            if (face.empty()) continue;
            path[i] = straighten(path[i - 1], path[i + 1], face, path[i]);
        }
        const double next = length();
        const bool converged = current - next <= 1e-15 * std::max(1.0, current);
        current = std::min(current, next);
        if (converged) break;
    }
    return std::min(best, current);
}

double distance(const ComplexPtr& complex, const Point& p, const Point& q, int refinement)
{
    return PathMetric(complex, refinement)(p, q);
}

// ---------------------------------------------------------- mesh / comesh

MetricReport simplex_metrics(const Simplex& s, std::span<const VertexIndex> vertex_image)
{
    auto image_of = [&](VertexIndex v) {
        if (v < 0 || static_cast<std::size_t>(v) >= vertex_image.size())
            throw Error(ErrorCode::NotFound, "vertex outside the control map domain");
        return vertex_image[static_cast<std::size_t>(v)];
    };
    MetricReport report;
    // Images of σ lie in one closed simplex of the target, where the path
    // metric is the ℓ2 metric; diam is attained at a vertex pair.
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (image_of(s[i]) != image_of(s[j])) report.diam = std::sqrt(2.0);
    if (s.dim() == 0) return report;

    std::map<VertexIndex, double> w;
    for (VertexIndex v : s) w[image_of(v)] += 1.0 / static_cast<double>(s.size());
    const Point centre = Point::from_weights(w);
    report.rad = kInfiniteDistance;
    for (VertexIndex drop : s) {
        std::vector<VertexIndex> ids;
        for (VertexIndex v : s.without(drop)) ids.push_back(image_of(v));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        report.rad = std::min(report.rad, distance_to_face(centre, Simplex(ids)));
    }
    return report;
}

MetricReport simplex_metrics(const SimplicialComplex& k, const Simplex& s)
{
    k.require(s);
    std::vector<VertexIndex> identity(k.vertex_count());
    std::iota(identity.begin(), identity.end(), 0);
    return simplex_metrics(s, identity);
}

MeshComesh mesh_comesh(const SimplicialComplex& k, std::span<const VertexIndex> vertex_image)
{
    MeshComesh out;
    for (const auto& s : k.simplices()) {
        const MetricReport r = simplex_metrics(s, vertex_image);
        out.mesh = std::max(out.mesh, r.diam);
        if (s.dim() > 0) out.comesh = std::min(out.comesh, r.rad);
    }
    return out;
}

MeshComesh mesh_comesh(const SimplicialComplex& k)
{
    std::vector<VertexIndex> identity(k.vertex_count());
    std::iota(identity.begin(), identity.end(), 0);
    return mesh_comesh(k, identity);
}

}  // namespace pltopo
