#pragma once

#include "pltopo/complex.hpp"
#include "pltopo/evaluator.hpp"
#include "pltopo/metric.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pltopo {

/// A vertex assignment between complexes, extended affinely on simplices.
/// Distinct vertices may share an image.
class SimplicialMap {
public:
    SimplicialMap(ComplexPtr source, ComplexPtr target, std::vector<VertexIndex> vertex_map);

    static SimplicialMap from_labels(ComplexPtr source, ComplexPtr target,
                                     const std::map<std::string, std::string>& vertex_map);
    static SimplicialMap identity(ComplexPtr k);

    const ComplexPtr& source() const { return source_; }
    const ComplexPtr& target() const { return target_; }
    std::span<const VertexIndex> vertex_map() const { return vertex_map_; }
    VertexIndex operator()(VertexIndex v) const { return vertex_map_[static_cast<std::size_t>(v)]; }

    /// Vertex set of f(τ); a target simplex when the map is valid.
    Simplex image(const Simplex& tau) const;
    /// Affine extension; the image is canonicalised.
    Point operator()(const Point& p) const;
    PointMap as_map() const;

    /// Source simplices τ with f(τ) = σ, i.e. whose interiors land in σ̊.
    std::vector<Simplex> cells_over(const Simplex& sigma) const;
    /// The face f_τ⁻¹(w) of τ.
    Simplex part_over(const Simplex& tau, VertexIndex w) const;

private:
    ComplexPtr source_;
    ComplexPtr target_;
    std::vector<VertexIndex> vertex_map_;
};

using MapPtr = std::shared_ptr<const SimplicialMap>;

/// Source simplices whose image is not a target simplex. Empty iff simplicial.
std::vector<Simplex> validate_map(const SimplicialMap& f);

struct MissedStars {
    /// Minimal simplices σ with σ̊ ∩ im(f) = ∅; their open stars cover Y \ im(f).
    std::vector<Simplex> minimal;
    /// Every σ with σ̊ ∩ im(f) = ∅.
    std::vector<Simplex> missed;
    bool surjective() const { return missed.empty(); }
};

MissedStars surjectivity_check(const SimplicialMap& f);

/// Moves x ∈ f⁻¹(y) to the point of f⁻¹(s) with the same fibre coordinates:
/// Σ_w (s_w / y_w) · x|f⁻¹(w). Requires supp(s) ⊆ supp(y). When s lies on a
/// face of the carrier of y this is the closure of the product identification.
Point transport(const SimplicialMap& f, const Point& x, const Point& s);

/// The fibre coordinate of x: the point of f⁻¹(σ̂) over the carrier σ of f(x).
Point fiber_component(const SimplicialMap& f, const Point& x);

struct FiberCell {
    Simplex source_simplex;
    /// f_τ⁻¹(w_i), one per vertex w_i of the base simplex.
    std::vector<Simplex> factors;
};

/// f⁻¹(σ̂) as a union of products of simplices, one per τ with f(τ) = σ,
/// triangulated by the staircase triangulation. Triangulation vertices are
/// tuples (v_0,…,v_m) with v_i ∈ f⁻¹(w_i) spanning a simplex of the source;
/// each is embedded at weight 1/(m+1) on every v_i.
class FiberComplex {
public:
    FiberComplex() = default;
    FiberComplex(const SimplicialMap& f, const Simplex& base);

    const Simplex& base() const { return base_; }
    const SimplicialMap& map() const { return *map_; }
    const std::vector<FiberCell>& cells() const { return cells_; }
    const ComplexPtr& triangulation() const { return triangulation_; }
    const std::vector<Point>& embedding() const { return embedding_; }
    const std::vector<std::vector<VertexIndex>>& vertex_tuples() const { return tuples_; }
    bool empty() const { return cells_.empty(); }

    /// Triangulation point to source point.
    Point to_source(const Point& p) const;
    /// Source point of f⁻¹(σ̂) to triangulation point, via the staircase
    /// decomposition of the product cell it lies in.
    Point from_source(const Point& x) const;

private:
    std::shared_ptr<const SimplicialMap> map_;
    Simplex base_;
    std::vector<FiberCell> cells_;
    ComplexPtr triangulation_;
    std::vector<Point> embedding_;
    std::vector<std::vector<VertexIndex>> tuples_;
    std::map<std::vector<VertexIndex>, VertexIndex> tuple_index_;
};

FiberComplex fiber_over_barycenter(const SimplicialMap& f, const Simplex& sigma);

struct CellCorrespondence {
    Simplex source_simplex;          // open cell of f⁻¹(σ̊)
    std::vector<Simplex> factors;    // product cell of f⁻¹(σ̂) paired with it
    int source_dim = 0;
    int fiber_dim = 0;
};

/// Witness for f⁻¹(σ̊) ≅ f⁻¹(σ̂) × σ̊.
struct IsoCertificate {
    Simplex base;
    std::vector<CellCorrespondence> cells;
    std::size_t sampled_fibers = 0;
    /// Largest round-trip error of x ↦ (fibre part, f(x)) ↦ x over samples.
    double max_identification_error = 0.0;
};

/// Verifies the cell bijection combinatorially and, for `samples` random
/// points x ∈ σ̊, that the fibre over x (computed by vertex enumeration)
/// is combinatorially isomorphic to the fibre over σ̂. Throws InternalError
/// on failure.
IsoCertificate verify_product_decomposition(const SimplicialMap& f, const Simplex& sigma,
                                            std::size_t samples = 100, std::uint64_t seed = 0x5eed);

/// Cell families of a fibre: one vertex set per cell, vertices numbered
/// locally. Exposed for tests.
using CellFamily = std::vector<std::vector<int>>;
CellFamily fiber_cells_over_point(const SimplicialMap& f, const Point& y);
CellFamily fiber_cells_combinatorial(const FiberComplex& fiber);
bool families_isomorphic(const CellFamily& a, const CellFamily& b);

/// Strong deformation retraction of f⁻¹(st σ) onto f⁻¹(σ̊), moving each
/// point along its join line at unit speed. Throws VacuousRetraction when
/// f⁻¹(σ̊) is empty and GeometryError for points outside f⁻¹(st σ).
Homotopy build_star_retraction(const MapPtr& f, const Simplex& sigma);

/// Metrics of a source simplex measured in the target.
MetricReport simplex_metrics(const SimplicialMap& control, const Simplex& s);
MeshComesh mesh_comesh(const SimplicialMap& control);

}  // namespace pltopo
