#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pltopo {

/// Index of a vertex in its complex. Indices follow first appearance in the
/// input, which also fixes the total order used by every construction.
using VertexIndex = int;

/// Absolute tolerance for metric comparisons and barycentric sums.
inline constexpr double kTolerance = 1e-9;

/// A non-empty, strictly increasing list of vertex indices.
class Simplex {
public:
    Simplex() = default;
    /// Sorts the input. Throws MalformedInput on an empty list or a repeated vertex.
    explicit Simplex(std::vector<VertexIndex> vertices);
    Simplex(std::initializer_list<VertexIndex> vertices);

    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    VertexIndex operator[](std::size_t i) const { return vertices_[i]; }
    std::span<const VertexIndex> vertices() const { return vertices_; }
    auto begin() const { return vertices_.begin(); }
    auto end() const { return vertices_.end(); }

    bool contains(VertexIndex v) const;
    /// Position of v in the vertex list, or -1.
    int position(VertexIndex v) const;
    bool is_face_of(const Simplex& other) const;

    /// Vertex union; the caller is responsible for membership in a complex.
    Simplex unite(const Simplex& other) const;
    /// Vertex intersection; may be empty (default-constructed).
    Simplex intersect(const Simplex& other) const;
    /// The face with one vertex removed, or an empty simplex if dim() == 0.
    Simplex without(VertexIndex v) const;

    /// All non-empty faces, including this simplex.
    std::vector<Simplex> faces() const;

    auto operator<=>(const Simplex&) const = default;
    bool operator==(const Simplex&) const = default;

private:
    std::vector<VertexIndex> vertices_;
};

/// A finite abstract simplicial complex, closed under faces and immutable
/// after construction. Simplices are stored sorted by (dimension, vertices).
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// The closure of a set of generators. Vertices are labelled by `labels`;
    /// labels not referenced by any generator become isolated vertices.
    static SimplicialComplex closure(std::vector<std::string> labels, const std::vector<Simplex>& generators);

    /// Same, addressing generator vertices by label. Unknown labels are
    /// appended to the vertex table in order of appearance.
    static SimplicialComplex from_labels(
        std::vector<std::string> labels,
        const std::vector<std::vector<std::string>>& generators);

    std::size_t vertex_count() const { return labels_.size(); }
    const std::string& label(VertexIndex v) const { return labels_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<VertexIndex> find_vertex(const std::string& label) const;
    /// Throws NotFound for an unknown label.
    VertexIndex vertex(const std::string& label) const;
    Simplex simplex(const std::vector<std::string>& labels) const;

    const std::vector<Simplex>& simplices() const { return simplices_; }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    int dimension() const { return dimension_; }
    bool contains(const Simplex& s) const;
    std::optional<std::size_t> index_of(const Simplex& s) const;
    /// Throws NotFound when `s` is not a simplex of this complex.
    std::size_t require(const Simplex& s) const;

    std::vector<Simplex> simplices_of_dim(int d) const;
    std::vector<Simplex> maximal_simplices() const;
    /// Cofaces τ ⩾ σ, including σ itself.
    std::vector<Simplex> cofaces(const Simplex& s) const;
    std::size_t count_of_dim(int d) const;
    long euler_characteristic() const;
    /// Connected components as lists of vertices.
    std::vector<std::vector<VertexIndex>> components() const;

    /// Optional coordinates per vertex, used for layout and worked examples.
    const std::vector<std::vector<double>>& positions() const { return positions_; }
    void set_positions(std::vector<std::vector<double>> positions);

    std::string name(const Simplex& s) const;

private:
    std::vector<std::string> labels_;
    std::map<std::string, VertexIndex> label_index_;
    std::vector<Simplex> simplices_;
    std::map<Simplex, std::size_t> index_;
    std::vector<std::vector<std::size_t>> cofacets_;
    int dimension_ = -1;
    std::vector<std::vector<double>> positions_;

    void finalize();
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

template <typename... Args>
ComplexPtr make_complex(Args&&... args)
{
    return std::make_shared<const SimplicialComplex>(std::forward<Args>(args)...);
}

/// A location in a complex: the carrier simplex and barycentric coordinates on
/// its vertices. Canonical form drops vanishing coordinates, so the carrier is
/// the unique simplex containing the point in its interior.
class Point {
public:
    Point() = default;
    /// Coordinates must be non-negative (to -kTolerance) and sum to 1 (to kTolerance).
    Point(Simplex carrier, Eigen::VectorXd coords);

    static Point vertex(VertexIndex v);
    static Point barycenter(const Simplex& s);
    /// Builds from (vertex, weight) pairs; repeated vertices are summed.
    static Point from_weights(const std::map<VertexIndex, double>& weights);

    const Simplex& carrier() const { return carrier_; }
    const Eigen::VectorXd& coords() const { return coords_; }
    int dim() const { return carrier_.dim(); }
    double weight(VertexIndex v) const;
    std::map<VertexIndex, double> weights() const;

    /// Coordinates on the vertices of `s`, which must contain the carrier.
    Eigen::VectorXd coords_on(const Simplex& s) const;

    bool operator==(const Point& other) const = default;

private:
    Simplex carrier_;
    Eigen::VectorXd coords_;
};

/// Affine combination sum_i w_i p_i with weights summing to 1.
Point combine(std::span<const Point> points, std::span<const double> weights);
Point lerp(const Point& a, const Point& b, double t);

/// ℓ2 distance in the standard embedding of all vertices; equals the path
/// metric whenever the two points share a closed simplex.
double embedded_distance(const Point& a, const Point& b);

/// Whether the point lies in the complex.
bool in_complex(const SimplicialComplex& k, const Point& p);

/// Barycentric subdivision with the barycentre of each Sd-vertex.
struct Subdivision {
    SimplicialComplex complex;
    /// Indexed by Sd vertex, which is indexed like `original.simplices()`.
    std::vector<Point> vertex_points;
};

Subdivision barycentric_subdivision(const SimplicialComplex& k);

/// The open star of σ, listed as the cofaces whose interiors it is made of.
std::vector<Simplex> star(const SimplicialComplex& k, const Simplex& s);

std::string format_point(const SimplicialComplex& k, const Point& p, int precision = 6);

}  // namespace pltopo
