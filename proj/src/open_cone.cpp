#include "pltopo/open_cone.hpp"

#include "pltopo/error.hpp"

#include <algorithm>
#include <cmath>

namespace pltopo {

ConePoint coning_map(const Point& p, double t)
{
    if (t <= 0.0) return {Point(), t};
    return {p, t};
}

double cone_distance(const Metric& d, const ConePoint& a, const ConePoint& b)
{
    const double scale = std::max(std::min(a.height, b.height), 0.0);
    const double height = std::abs(a.height - b.height);
    if (scale == 0.0) return height;
    return scale * d(a.base, b.base) + height;
}

double alpha_schedule(double comesh, double t)
{
    if (t <= 1.0 / comesh) return comesh;
    return 1.0 / t;
}

FamilyCache::FamilyCache(FlagMapPtr gamma, double cap, bool closed_at_cap)
    : gamma_(std::move(gamma)), cap_(cap), closed_at_cap_(closed_at_cap)
{
}

const ControlledFamily& FamilyCache::at(double eps)
{
    std::lock_guard lock(mutex_);
    auto it = families_.find(eps);
    if (it != families_.end()) return it->second;
    const bool closed = closed_at_cap_ && eps >= cap_;
    return families_.emplace(eps, build_family(gamma_, eps, closed)).first->second;
}

double BoundedEquivalenceData::epsilon_at(double t) const { return std::min(alpha_schedule(comesh, t), cap); }

ConePoint BoundedEquivalenceData::g(const Point& y, double t) const
{
    return coning_map(families->at(epsilon_at(t)).g(y), t);
}

ConePoint BoundedEquivalenceData::h1(const Point& x, double t, double u) const
{
    return coning_map(families->at(epsilon_at(t)).h1(x, u), t);
}

ConePoint BoundedEquivalenceData::h2(const Point& y, double t, double u) const
{
    return coning_map(families->at(epsilon_at(t)).h2(y, u), t);
}

namespace {

struct SliceControls {
    double g = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double max() const { return std::max({g, h1, h2}); }
};

SliceControls measure_slice(const ControlledFamily& fam, const SampleOptions& base, const Metric& metric)
{
    const PointMap id_y = PointMap::identity(fam.f->target());
    const PointMap fx = fam.f->as_map();
    SampleOptions on_y = base;
    const auto vertices = cellulation_vertices(*fam.cellulation);
    on_y.extra.insert(on_y.extra.end(), vertices.begin(), vertices.end());
    SliceControls out;
    out.g = measure_control(fam.g, id_y, fx, fam.epsilon, on_y, metric).measured_control;
    out.h2 = measure_control(fam.h2, id_y, fam.epsilon, on_y, metric).measured_control;
    out.h1 = measure_control(fam.h1, fx, fam.epsilon, base, metric).measured_control;
    return out;
}

}  // namespace

BoundedEquivalenceData assemble_bounded_equivalence(const FlagMapPtr& gamma, const AssemblyOptions& options)
{
    const MapPtr f = gamma->map();
    BoundedEquivalenceData data;
    data.gamma = gamma;
    data.comesh = mesh_comesh(*f->target()).comesh;
    if (!std::isfinite(data.comesh) || data.comesh <= 0.0)
        throw Error(ErrorCode::CannotConstruct, "target has no positive-dimensional simplex");
    // at comesh the collar coefficient of an edge reaches 1
    const bool degenerate = f->target()->dimension() < 2;
    data.cap = degenerate ? data.comesh * (1.0 - 1e-3) : data.comesh;
    data.families = std::make_shared<FamilyCache>(gamma, data.cap, !degenerate);

    double low = options.low, high = options.high;
    if (low == 0.0 && high == 0.0) {
        high = 10.0 / data.comesh;
        low = -high;
    }
    const int steps = std::max(2, options.height_steps);
    for (int k = 0; k < steps; ++k) data.heights.push_back(low + (high - low) * k / (steps - 1));
    data.heights.push_back(1.0 / data.comesh);
    data.heights.insert(data.heights.end(), options.extra_heights.begin(), options.extra_heights.end());
    std::sort(data.heights.begin(), data.heights.end());
    data.heights.erase(std::unique(data.heights.begin(), data.heights.end()), data.heights.end());

    PathMetric base_metric(f->target());
    for (double t : data.heights) {
        // slices at t ≤ 0 collapse to a point of the cone
        if (t <= 0.0) continue;
        const Metric cone = [&base_metric, t](const Point& a, const Point& b) {
            return cone_distance(std::cref(base_metric), coning_map(a, t), coning_map(b, t));
        };
        const auto& fam = data.families->at(data.epsilon_at(t));
        data.bound = std::max(data.bound, measure_slice(fam, options.samples, cone).max());
    }
    return data;
}

SliceEquivalence slice_equivalence(const BoundedEquivalenceData& data, double t, const SampleOptions& options)
{
    if (!(t > 0.0)) throw Error(ErrorCode::OutOfRange, "slices exist only at positive heights");
    const ControlledFamily& fam = data.families->at(data.epsilon_at(t));
    SliceEquivalence out;
    out.height = t;
    out.epsilon = fam.epsilon;
    // p_t forgets the height coordinate
    out.g = PointMap(fam.g.domain(), fam.g.codomain(), [data, t](const Point& y) { return data.g(y, t).base; });
    out.h1 = Homotopy(fam.h1.domain(), fam.h1.codomain(),
                      [data, t](const Point& x, double u) { return data.h1(x, t, u).base; });
    out.h2 = Homotopy(fam.h2.domain(), fam.h2.codomain(),
                      [data, t](const Point& y, double u) { return data.h2(y, t, u).base; });
    PathMetric metric(fam.f->target());
    out.control = measure_slice(fam, options, std::cref(metric)).max();
    out.predicted = data.bound / t;
    return out;
}

}  // namespace pltopo
