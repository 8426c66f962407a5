#include "pltopo/complex.hpp"

#include "pltopo/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

namespace pltopo {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MalformedInput: return "malformed-input";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::InversionFailure: return "inversion-failure";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::NotContractible: return "not-contractible";
    case ErrorCode::CannotConstruct: return "cannot-construct";
    case ErrorCode::VacuousRetraction: return "vacuous-retraction";
    case ErrorCode::Mismatch: return "mismatch";
    case ErrorCode::GeometryError: return "geometry-error";
    case ErrorCode::UnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::InternalError: return "internal-error";
    }
    return "unknown";
}

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::vector<VertexIndex> vertices) : vertices_(std::move(vertices))
{
    if (vertices_.empty()) throw Error(ErrorCode::MalformedInput, "empty simplex");
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw Error(ErrorCode::MalformedInput, "duplicate vertex inside a simplex");
}

Simplex::Simplex(std::initializer_list<VertexIndex> vertices) : Simplex(std::vector<VertexIndex>(vertices)) {}

bool Simplex::contains(VertexIndex v) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int Simplex::position(VertexIndex v) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return -1;
    return static_cast<int>(it - vertices_.begin());
}

bool Simplex::is_face_of(const Simplex& other) const
{
    return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
}

Simplex Simplex::unite(const Simplex& other) const
{
    Simplex out;
    std::set_union(
        vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
        std::back_inserter(out.vertices_));
    return out;
}

Simplex Simplex::intersect(const Simplex& other) const
{
    Simplex out;
    std::set_intersection(
        vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
        std::back_inserter(out.vertices_));
    return out;
}

Simplex Simplex::without(VertexIndex v) const
{
    Simplex out;
    for (VertexIndex w : vertices_)
        if (w != v) out.vertices_.push_back(w);
    return out;
}

std::vector<Simplex> Simplex::faces() const
{
    std::vector<Simplex> out;
    const std::size_t n = vertices_.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) face.vertices_.push_back(vertices_[i]);
        out.push_back(std::move(face));
    }
    return out;
}

// ------------------------------------------------------- SimplicialComplex

SimplicialComplex SimplicialComplex::closure(std::vector<std::string> labels, const std::vector<Simplex>& generators)
{
    SimplicialComplex k;
    k.labels_ = std::move(labels);
    for (std::size_t i = 0; i < k.labels_.size(); ++i) {
        if (!k.label_index_.emplace(k.labels_[i], static_cast<VertexIndex>(i)).second)
            throw Error(ErrorCode::MalformedInput, "duplicate vertex label '" + k.labels_[i] + "'");
    }
    std::set<Simplex> all;
    for (std::size_t i = 0; i < k.labels_.size(); ++i) all.insert(Simplex{static_cast<VertexIndex>(i)});
    for (const Simplex& g : generators) {
        if (g.empty()) throw Error(ErrorCode::MalformedInput, "empty generator");
        for (VertexIndex v : g)
            if (v < 0 || static_cast<std::size_t>(v) >= k.labels_.size())
                throw Error(ErrorCode::MalformedInput, "generator references unknown vertex");
        for (Simplex& f : g.faces()) all.insert(std::move(f));
    }
    k.simplices_.assign(all.begin(), all.end());
    k.finalize();
    return k;
}

SimplicialComplex SimplicialComplex::from_labels(
    std::vector<std::string> labels,
    const std::vector<std::vector<std::string>>& generators)
{
    std::map<std::string, VertexIndex> lookup;
    for (std::size_t i = 0; i < labels.size(); ++i) lookup.emplace(labels[i], static_cast<VertexIndex>(i));
    std::vector<Simplex> gens;
    for (const auto& g : generators) {
        std::vector<VertexIndex> ids;
        for (const auto& l : g) {
            auto it = lookup.find(l);
            if (it == lookup.end()) {
                it = lookup.emplace(l, static_cast<VertexIndex>(labels.size())).first;
                labels.push_back(l);
            }
            ids.push_back(it->second);
        }
        gens.emplace_back(std::move(ids));
    }
    return closure(std::move(labels), gens);
}

void SimplicialComplex::finalize()
{
    std::stable_sort(simplices_.begin(), simplices_.end(), [](const Simplex& a, const Simplex& b) {
        if (a.dim() != b.dim()) return a.dim() < b.dim();
        return a < b;
    });
    index_.clear();
    dimension_ = -1;
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        index_.emplace(simplices_[i], i);
        dimension_ = std::max(dimension_, simplices_[i].dim());
    }
    cofacets_.assign(simplices_.size(), {});
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        const Simplex& s = simplices_[i];
        if (s.dim() == 0) continue;
        for (VertexIndex v : s) {
            auto it = index_.find(s.without(v));
            if (it == index_.end()) throw Error(ErrorCode::InternalError, "complex not closed under faces");
            cofacets_[it->second].push_back(i);
        }
    }
}

std::optional<VertexIndex> SimplicialComplex::find_vertex(const std::string& label) const
{
    auto it = label_index_.find(label);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

VertexIndex SimplicialComplex::vertex(const std::string& label) const
{
    auto v = find_vertex(label);
    if (!v) throw Error(ErrorCode::NotFound, "no vertex labelled '" + label + "'");
    return *v;
}

Simplex SimplicialComplex::simplex(const std::vector<std::string>& labels) const
{
    std::vector<VertexIndex> ids;
    for (const auto& l : labels) ids.push_back(vertex(l));
    Simplex s(std::move(ids));
    require(s);
    return s;
}

bool SimplicialComplex::contains(const Simplex& s) const { return index_.count(s) > 0; }

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t SimplicialComplex::require(const Simplex& s) const
{
    auto i = index_of(s);
    if (!i) throw Error(ErrorCode::NotFound, "simplex " + name(s) + " is not in the complex");
    return *i;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(int d) const
{
    std::vector<Simplex> out;
    for (const auto& s : simplices_)
        if (s.dim() == d) out.push_back(s);
    return out;
}

std::size_t SimplicialComplex::count_of_dim(int d) const
{
    return static_cast<std::size_t>(
        std::count_if(simplices_.begin(), simplices_.end(), [d](const Simplex& s) { return s.dim() == d; }));
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const
{
    std::vector<Simplex> out;
    for (std::size_t i = 0; i < simplices_.size(); ++i)
        if (cofacets_[i].empty()) out.push_back(simplices_[i]);
    return out;
}

std::vector<Simplex> SimplicialComplex::cofaces(const Simplex& s) const
{
    const std::size_t start = require(s);
    std::set<std::size_t> seen{start};
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j : cofacets_[i])
            if (seen.insert(j).second) stack.push_back(j);
    }
    std::vector<Simplex> out;
    for (std::size_t i : seen) out.push_back(simplices_[i]);
    return out;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    for (const auto& s : simplices_) chi += (s.dim() % 2 == 0) ? 1 : -1;
    return chi;
}

std::vector<std::vector<VertexIndex>> SimplicialComplex::components() const
{
    std::vector<VertexIndex> parent(labels_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](VertexIndex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& s : simplices_)
        if (s.dim() == 1) parent[find(s[0])] = find(s[1]);
    std::map<VertexIndex, std::vector<VertexIndex>> groups;
    for (std::size_t v = 0; v < labels_.size(); ++v) groups[find(static_cast<VertexIndex>(v))].push_back(static_cast<VertexIndex>(v));
    std::vector<std::vector<VertexIndex>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

void SimplicialComplex::set_positions(std::vector<std::vector<double>> positions)
{
    if (!positions.empty() && positions.size() != labels_.size())
        throw Error(ErrorCode::MalformedInput, "positions must cover every vertex");
    positions_ = std::move(positions);
}

std::string SimplicialComplex::name(const Simplex& s) const
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        const auto v = static_cast<std::size_t>(s[i]);
        out += v < labels_.size() ? labels_[v] : std::to_string(s[i]);
    }
    return out + "]";
}

// ------------------------------------------------------------------ Point

namespace {

constexpr double kDropTolerance = 1e-13;

}  // namespace

Point::Point(Simplex carrier, Eigen::VectorXd coords)
{
    if (carrier.empty()) throw Error(ErrorCode::MalformedInput, "point without carrier");
    if (static_cast<std::size_t>(coords.size()) != carrier.size())
        throw Error(ErrorCode::MalformedInput, "coordinate count does not match carrier");
    if (!coords.allFinite()) throw Error(ErrorCode::MalformedInput, "non-finite barycentric coordinate");
    if (coords.minCoeff() < -kTolerance) throw Error(ErrorCode::MalformedInput, "negative barycentric coordinate");
    if (std::abs(coords.sum() - 1.0) > kTolerance)
        throw Error(ErrorCode::MalformedInput, "barycentric coordinates do not sum to 1");

    std::vector<VertexIndex> kept;
    std::vector<double> values;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        if (coords[static_cast<Eigen::Index>(i)] > kDropTolerance) {
            kept.push_back(carrier[i]);
            values.push_back(coords[static_cast<Eigen::Index>(i)]);
        }
    }
    if (kept.empty()) throw Error(ErrorCode::MalformedInput, "all coordinates vanish");
    carrier_ = Simplex(std::move(kept));
    coords_ = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    coords_ /= coords_.sum();
}

Point Point::vertex(VertexIndex v) { return Point(Simplex{v}, Eigen::VectorXd::Ones(1)); }

Point Point::barycenter(const Simplex& s)
{
    const auto n = static_cast<Eigen::Index>(s.size());
    return Point(s, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)));
}

Point Point::from_weights(const std::map<VertexIndex, double>& weights)
{
    std::vector<VertexIndex> ids;
    Eigen::VectorXd values(static_cast<Eigen::Index>(weights.size()));
    Eigen::Index i = 0;
    for (const auto& [v, w] : weights) {
        ids.push_back(v);
        values[i++] = w;
    }
    // Rounding in long affine chains can push a sum slightly off 1.
    const double total = values.sum();
    if (std::abs(total - 1.0) <= 1e-7 && total > 0) values /= total;
    values = values.cwiseMax(0.0);
    return Point(Simplex(std::move(ids)), values);
}

double Point::weight(VertexIndex v) const
{
    const int pos = carrier_.position(v);
    return pos < 0 ? 0.0 : coords_[pos];
}

std::map<VertexIndex, double> Point::weights() const
{
    std::map<VertexIndex, double> out;
    for (std::size_t i = 0; i < carrier_.size(); ++i) out.emplace(carrier_[i], coords_[static_cast<Eigen::Index>(i)]);
    return out;
}

Eigen::VectorXd Point::coords_on(const Simplex& s) const
{
    if (!carrier_.is_face_of(s)) throw Error(ErrorCode::MalformedInput, "carrier is not a face of the requested simplex");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < carrier_.size(); ++i) out[s.position(carrier_[i])] = coords_[static_cast<Eigen::Index>(i)];
    return out;
}

Point combine(std::span<const Point> points, std::span<const double> weights)
{
    if (points.size() != weights.size() || points.empty())
        throw Error(ErrorCode::MalformedInput, "combine needs one weight per point");
    std::map<VertexIndex, double> acc;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (weights[i] == 0.0) continue;
        const Point& p = points[i];
        for (std::size_t j = 0; j < p.carrier().size(); ++j)
            acc[p.carrier()[j]] += weights[i] * p.coords()[static_cast<Eigen::Index>(j)];
    }
    return Point::from_weights(acc);
}

Point lerp(const Point& a, const Point& b, double t)
{
    if (t <= 0.0) return a;
    if (t >= 1.0) return b;
    const Point pts[2] = {a, b};
    const double w[2] = {1.0 - t, t};
    return combine(pts, w);
}

double embedded_distance(const Point& a, const Point& b)
{
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    const auto& ca = a.carrier();
    const auto& cb = b.carrier();
    while (i < ca.size() || j < cb.size()) {
        double d;
        if (j == cb.size() || (i < ca.size() && ca[i] < cb[j])) {
            d = a.coords()[static_cast<Eigen::Index>(i++)];
        } else if (i == ca.size() || cb[j] < ca[i]) {
            d = b.coords()[static_cast<Eigen::Index>(j++)];
        } else {
            d = a.coords()[static_cast<Eigen::Index>(i++)] - b.coords()[static_cast<Eigen::Index>(j++)];
        }
        sum += d * d;
    }
    return std::sqrt(sum);
}

bool in_complex(const SimplicialComplex& k, const Point& p) { return k.contains(p.carrier()); }

// ------------------------------------------------------------ Subdivision

Subdivision barycentric_subdivision(const SimplicialComplex& k)
{
    const auto& simplices = k.simplices();
    std::vector<std::string> labels;
    std::vector<Point> points;
    for (const auto& s : simplices) {
        labels.push_back(k.name(s));
        points.push_back(Point::barycenter(s));
    }

    // Maximal chains end at maximal simplices; closure supplies the rest.
    std::vector<Simplex> generators;
    std::vector<VertexIndex> chain;
    auto extend = [&](auto&& self, const Simplex& top) -> void {
        chain.push_back(static_cast<VertexIndex>(k.require(top)));
        if (top.dim() == 0) {
            generators.emplace_back(chain);
        } else {
            for (VertexIndex v : top) self(self, top.without(v));
        }
        chain.pop_back();
    };
    for (const auto& m : k.maximal_simplices()) extend(extend, m);

    Subdivision out{SimplicialComplex::closure(std::move(labels), generators), std::move(points)};
    return out;
}

std::vector<Simplex> star(const SimplicialComplex& k, const Simplex& s) { return k.cofaces(s); }

std::string format_point(const SimplicialComplex& k, const Point& p, int precision)
{
    std::ostringstream os;
    os << std::setprecision(precision) << std::fixed << "{";
    for (std::size_t i = 0; i < p.carrier().size(); ++i) {
        if (i) os << ", ";
        os << k.label(p.carrier()[i]) << ":" << p.coords()[static_cast<Eigen::Index>(i)];
    }
    os << "}";
    return os.str();
}

}  // namespace pltopo
