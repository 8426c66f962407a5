#pragma once

#include "pltopo/complex.hpp"
#include "pltopo/controlled_homotopy.hpp"
#include "pltopo/simplicial_map.hpp"

#include <string>
#include <vector>

namespace pltopo::fixtures {

ComplexPtr point();
ComplexPtr d1();                 // edge ab
ComplexPtr d2();                 // triangle abc
ComplexPtr bd2();                // ab, bc, ca
ComplexPtr boundary_tetrahedron();
ComplexPtr cone_bd2();           // BD2 * apex

/// D2 → D1: a ↦ a, b ↦ b, c ↦ b.
MapPtr map_collapse();
/// BD2 → D1: a ↦ a, b ↦ b, c ↦ a.
MapPtr map_bad();

/// Two triangles σ₁, σ₂ in the plane and four triangles τ₁…τ₄ in space
/// projecting onto them by (x, y, z) ↦ (x, y, 0). Vertices carry positions.
ComplexPtr ex44_target();
ComplexPtr ex44_source();
MapPtr ex44_map();

/// z-coordinate of a source point.
double ex44_height(const SimplicialComplex& source, const Point& x);
/// The point over s at height z, for fibres that are arcs on which the
/// height is monotone; `fiber` is the fibre over the carrier of s and z is
/// clamped to the range of heights over s.
Point lift_by_height(const FiberComplex& fiber, const Point& s, double z);
/// Base heights: 0 on σ₁ \ σ₂, ½ on σ₁ ∩ σ₂, 1 on σ₂ \ σ₁.
double ex44_base_height(const SimplicialMap& f, const Simplex& sigma);
/// The explicit base values and extension formulas Σ_j t_j z(σ_j), with the
/// height product structure.
GammaChoices ex44_choices(const MapPtr& f);

struct Named {
    std::string name;
    ComplexPtr complex;
};

/// All complexes above.
std::vector<Named> all_complexes();

}  // namespace pltopo::fixtures
