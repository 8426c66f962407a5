#pragma once

#include "pltopo/cellulation.hpp"
#include "pltopo/complex.hpp"

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

namespace pltopo {

/// Plane coordinates of the vertices: the first two position coordinates
/// when present, otherwise a regular polygon.
std::vector<Eigen::Vector2d> plane_layout(const SimplicialComplex& k);

/// One polygon per cell; collar cells (chains of length > 1) get their own
/// class and fill. Throws UnsupportedDimension above dimension 2.
std::string cellulation_svg(const Cellulation& c);
/// One polygon per simplex of positive dimension, one dot per vertex.
std::string complex_svg(const SimplicialComplex& k);

void emit_svg(const Cellulation& c, const std::filesystem::path& path);
void emit_svg(const SimplicialComplex& k, const std::filesystem::path& path);

}  // namespace pltopo
