#pragma once

#include "pltopo/complex.hpp"
#include "pltopo/evaluator.hpp"

#include <compare>
#include <vector>

namespace pltopo {

/// σ ⩽ σ₀ < … < σ_m.
struct Flag {
    Simplex base;
    std::vector<Simplex> chain;

    int length() const { return static_cast<int>(chain.size()) - 1; }
    int cell_dim() const { return base.dim() + length(); }
    const Simplex& top() const { return chain.back(); }

    auto operator<=>(const Flag&) const = default;
    bool operator==(const Flag&) const = default;
};

/// Every flag, ordered by base then chain, both in the complex's simplex order.
std::vector<Flag> enumerate_flags(const SimplicialComplex& k);

/// Length of the segment from a vertex to the barycentre of a d-simplex.
double vertex_to_barycenter(int d);

/// Coefficient c with Γ_ε(v × τ̂) = v + c (τ̂ − v); zero when τ is a vertex.
double gamma_coefficient(double eps, const Simplex& tau);

/// ∂B_ε(v) ∩ v̂τ̂. Throws OutOfRange unless 0 ≤ ε < comesh(k).
Point gamma_vertex(const SimplicialComplex& k, double eps, VertexIndex v, const Simplex& tau);

/// Γ_ε on a flag cell from the closed form (1 − C) Σ s_i v_i + Σ_j t_j c_j σ̂_j,
/// with no range check. `s` is indexed by the base, `t` by the chain.
Point gamma_closed_form(double eps, const Flag& flag, const Eigen::VectorXd& s, const Eigen::VectorXd& t);

struct CellCoordinates {
    std::size_t cell = 0;
    Eigen::VectorXd s;
    Eigen::VectorXd t;
};

/// The fundamental ε-subdivision cellulation.
class Cellulation {
public:
    /// Requires 0 < ε < comesh(k).
    static Cellulation build(ComplexPtr k, double eps);
    /// Same, admitting ε = comesh(k).
    static Cellulation build_closed(ComplexPtr k, double eps);

    double epsilon() const { return eps_; }
    const ComplexPtr& complex() const { return complex_; }
    const std::vector<Flag>& cells() const { return flags_; }
    /// Γ_ε(v_i × σ̂_j) for the cell, indexed [i][j].
    const std::vector<std::vector<Point>>& vertex_images(std::size_t cell) const { return images_[cell]; }

    /// Σ_i Σ_j s_i t_j Γ_ε(v_i × σ̂_j). Throws MalformedInput on bad lengths.
    Point eval(std::size_t cell, const Eigen::VectorXd& s, const Eigen::VectorXd& t) const;
    /// Γ_ε⁻¹(y). The lowest-index top cell of the carrier containing y wins.
    CellCoordinates invert(const Point& y) const;
    /// Top-dimensional cells inside a simplex: σ = σ₀ and one vertex added per step up to ρ.
    const std::vector<std::size_t>& top_cells(const Simplex& rho) const;

private:
    ComplexPtr complex_;
    double eps_ = 0.0;
    std::vector<Flag> flags_;
    std::vector<std::vector<std::vector<Point>>> images_;
    std::map<Simplex, std::vector<std::size_t>> tops_;

    static Cellulation make(ComplexPtr k, double eps, bool closed);
};

Point gamma_eval(const Cellulation& c, std::size_t cell, const Eigen::VectorXd& s, const Eigen::VectorXd& t);
CellCoordinates gamma_invert(const Cellulation& c, const Point& y);

/// h₂,ε(y, u) = Γ_{ε(1−u)} Γ_ε⁻¹(y).
Homotopy straightline_homotopy(const Cellulation& c);

}  // namespace pltopo
