#pragma once

#include "pltopo/cellulation.hpp"
#include "pltopo/contractibility.hpp"
#include "pltopo/evaluator.hpp"
#include "pltopo/metric.hpp"
#include "pltopo/sampling.hpp"
#include "pltopo/simplicial_map.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace pltopo {

/// Moves x ∈ f⁻¹(y) to f⁻¹(s) for s in the closed carrier of y; realises
/// the product structure f⁻¹(ρ̊) ≅ f⁻¹(ρ̂) × ρ̊ and its closure.
using Transport = std::function<Point(const Point& x, const Point& s)>;

Transport join_transport(MapPtr f);

/// Explicit γ values. `chain` may return nothing to fall back to the cone
/// extension; when it answers it must agree with the flag's faces.
struct GammaChoices {
    Transport transport;
    std::map<Simplex, Point> base;
    std::function<std::optional<Point>(const std::vector<Simplex>& chain, const Eigen::VectorXd& t)> chain;
};

struct FiberData {
    Simplex sigma;
    FiberComplex fiber;
    Verdict verdict;
    Homotopy contraction;
    Point basepoint;   // in the source
};

/// γ: χ(Y) → X.
class FlagMap {
public:
    /// Throws CannotConstruct naming the first simplex whose fibre is not
    /// certified contractible.
    static std::shared_ptr<const FlagMap> build(MapPtr f, GammaChoices choices = {});

    const MapPtr& map() const { return f_; }
    const Transport& transport() const { return transport_; }
    const FiberData& fiber(const Simplex& sigma) const { return fibers_.at(sigma); }

    /// b(σ) ∈ f⁻¹(σ̂).
    Point base(const Simplex& sigma) const;
    /// γ_{σ̂₀…σ̂_m}: Δ^m → f⁻¹(σ̂₀).
    Point chain_value(const std::vector<Simplex>& chain, const Eigen::VectorXd& t) const;
    /// γ on the cell σ × σ̂₀…σ̂_m.
    Point operator()(const Flag& cell, const Eigen::VectorXd& s, const Eigen::VectorXd& t) const;
    /// Φ_{τ,σ}: f⁻¹(σ̂) → f⁻¹(τ̂).
    Point phi(const Simplex& tau, const Point& a) const;
    /// Contraction of f⁻¹(σ̂) in source coordinates.
    Point contract(const Simplex& sigma, const Point& a, double u) const;
    /// K_F: f⁻¹(σ̂_m) × Δ^m × I → f⁻¹(σ̂₀), from Φ_{σ₀,σ_m} at u = 0 to γ_F at u = 1.
    Point prism_value(const std::vector<Simplex>& chain, const Point& a, const Eigen::VectorXd& t, double u) const;

private:
    MapPtr f_;
    Transport transport_;
    std::map<Simplex, FiberData> fibers_;
    GammaChoices choices_;
};

using FlagMapPtr = std::shared_ptr<const FlagMap>;

/// g_ε, h₁,ε, h₂,ε for one ε.
struct ControlledFamily {
    double epsilon = 0.0;
    MapPtr f;
    FlagMapPtr gamma;
    std::shared_ptr<const Cellulation> cellulation;
    PointMap g;          // g_ε = γ Γ_ε⁻¹
    Homotopy h2;         // on Y
    Homotopy h1_prime;   // on X, covers h₂
    Homotopy h1_second;  // on X, fibrewise
    Homotopy h1;         // h₁″ ∗ h₁′
};

ControlledFamily build_family(const FlagMapPtr& gamma, double eps, bool closed_range = false);

struct ControlReport {
    double epsilon_target = 0.0;
    double measured_control = 0.0;
    std::size_t samples = 0;
    /// Lipschitz bound times the sample spacing; infinite when no bound is known.
    double lipschitz_margin = kInfiniteDistance;
    bool within(double relative) const { return measured_control <= epsilon_target * (1.0 + relative); }
};

struct SampleOptions {
    int lattice = 6;
    std::size_t random = 10000;
    int time_steps = 33;
    std::uint64_t seed = kDefaultSeed;
    std::vector<Point> extra;
};

/// sup d(p(z), q(u(z))), in the path metric of the control space unless
/// another metric is given.
ControlReport measure_control(const PointMap& u, const PointMap& p, const PointMap& q, double eps_target,
                              const SampleOptions& options = {});
ControlReport measure_control(const PointMap& u, const PointMap& p, const PointMap& q, double eps_target,
                              const SampleOptions& options, const Metric& metric);
/// sup over tracks of the diameter of q(H(z, ·)).
ControlReport measure_control(const Homotopy& h, const PointMap& q, double eps_target, const SampleOptions& options = {});
ControlReport measure_control(const Homotopy& h, const PointMap& q, double eps_target, const SampleOptions& options,
                              const Metric& metric);

/// Γ_ε vertex images of every cell; the extreme points of h₂ tracks.
std::vector<Point> cellulation_vertices(const Cellulation& c);

/// Lift of H: Z × I → Y starting at h: Z → X, with discrepancy below ε.
/// Throws Mismatch unless f∘h = H(·,0) on samples.
Homotopy approximate_lift(const FlagMapPtr& gamma, const Homotopy& big_h, const PointMap& h, double eps,
                          const SampleOptions& options = {});

/// Contraction of f⁻¹(y): h₁,ε′ followed by the star retraction onto
/// f⁻¹(ρ̊) and the product projection to f⁻¹(y).
Homotopy derive_contraction(const FlagMapPtr& gamma, const Point& y);

/// ε′ used by derive_contraction: half the smallest coordinate of y, so
/// that B_ε′(y) stays inside the open star of its carrier.
double star_radius(const Point& y);

}  // namespace pltopo
