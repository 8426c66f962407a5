#pragma once

#include "pltopo/complex.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace pltopo {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

/// Uniform point of the closed simplex (flat Dirichlet).
Point random_point(const Simplex& s, std::mt19937_64& rng);

/// A maximal simplex drawn uniformly, then a uniform point inside it.
Point random_point(const SimplicialComplex& k, std::mt19937_64& rng);

/// Barycentric vector of length n, flat Dirichlet.
Eigen::VectorXd random_barycentric(int n, std::mt19937_64& rng);

/// All points with coordinates in (1/r)ℤ on every simplex of k, each once.
std::vector<Point> lattice_points(const SimplicialComplex& k, int r);

/// Lattice points followed by `random` uniform points.
std::vector<Point> sample_points(const SimplicialComplex& k, int r, std::size_t random, std::uint64_t seed = kDefaultSeed);

}  // namespace pltopo
