#pragma once

#include "pltopo/complex.hpp"

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace pltopo {

/// Distance between different components.
inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// A distance oracle on the points of one complex.
using Metric = std::function<double(const Point&, const Point&)>;

/// Path metric of the standard metric on a complex.
///
/// Points that share a closed simplex get the exact ℓ2 distance of the
/// standard embedding. Other pairs get an upper bound: a shortest path over
/// Steiner nodes (the lattice points with denominators 1..refinement on every
/// simplex), followed by a local straightening of the crossing points along
/// the chosen corridor of simplices. The Steiner node sets are nested, so the
/// graph part never grows with the refinement.
class PathMetric {
public:
    explicit PathMetric(ComplexPtr complex, int refinement = 4);

    double operator()(const Point& a, const Point& b) const;

    int refinement() const { return refinement_; }
    const SimplicialComplex& complex() const { return *complex_; }
    std::size_t node_count() const { return nodes_.size(); }

private:
    ComplexPtr complex_;
    int refinement_;
    std::vector<Point> nodes_;
    std::vector<std::vector<std::size_t>> node_tops_;   // maximal simplices holding each node
    std::vector<Simplex> tops_;
    std::vector<std::vector<std::size_t>> top_nodes_;   // nodes inside each maximal simplex
    std::vector<int> component_of_vertex_;

    std::vector<std::size_t> tops_containing(const Simplex& carrier) const;
    double shortest(const Point& a, const Point& b) const;
};

/// One-shot distance; builds a PathMetric internally.
double distance(const ComplexPtr& complex, const Point& p, const Point& q, int refinement = 4);

struct MetricReport {
    double diam = 0.0;
    double rad = 0.0;
};

/// diam and rad of σ measured through the simplicial control map given by
/// `vertex_image` (indexed by source vertex; values are target vertices).
MetricReport simplex_metrics(const Simplex& s, std::span<const VertexIndex> vertex_image);

/// Identity control map.
MetricReport simplex_metrics(const SimplicialComplex& k, const Simplex& s);

struct MeshComesh {
    double mesh = 0.0;
    double comesh = kInfiniteDistance;
};

MeshComesh mesh_comesh(const SimplicialComplex& k);
MeshComesh mesh_comesh(const SimplicialComplex& k, std::span<const VertexIndex> vertex_image);

/// ℓ2 distance from `p` to the face of the standard simplex spanned by
/// `face`; exact, via Euclidean projection onto the probability simplex.
double distance_to_face(const Point& p, const Simplex& face);

/// Euclidean projection of `v` onto the probability simplex.
Eigen::VectorXd project_to_simplex(const Eigen::VectorXd& v);

}  // namespace pltopo
