#pragma once

#include "pltopo/controlled_homotopy.hpp"
#include "pltopo/metric.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace pltopo {

/// A point of O(M₊). The base is the empty sentinel when t ≤ 0.
struct ConePoint {
    Point base;
    double height = 0.0;
};

ConePoint coning_map(const Point& p, double t);

/// max{min{t,s},0}·d(m,m′) + |t−s|.
double cone_distance(const Metric& d, const ConePoint& a, const ConePoint& b);

/// comesh for t ≤ 1/comesh, 1/t beyond.
double alpha_schedule(double comesh, double t);

/// Controlled families built on demand, one per ε.
class FamilyCache {
public:
    FamilyCache(FlagMapPtr gamma, double cap, bool closed_at_cap);
    const ControlledFamily& at(double eps);

private:
    FlagMapPtr gamma_;
    double cap_;
    bool closed_at_cap_;
    std::map<double, ControlledFamily> families_;
    std::mutex mutex_;
};

struct BoundedEquivalenceData {
    FlagMapPtr gamma;
    double comesh = 0.0;
    /// Largest ε used; comesh, or slightly below it when the cellulation
    /// degenerates at comesh.
    double cap = 0.0;
    std::shared_ptr<FamilyCache> families;
    /// sup over sampled (y, t) of the cone distances between control images.
    double bound = 0.0;
    std::vector<double> heights;

    double epsilon_at(double t) const;
    /// g(y, t) = (g_{α(t)}(y), t).
    ConePoint g(const Point& y, double t) const;
    ConePoint h1(const Point& x, double t, double u) const;
    ConePoint h2(const Point& y, double t, double u) const;
};

struct AssemblyOptions {
    /// Heights sampled in [low, high]; both zero means [−10/comesh, 10/comesh].
    double low = 0.0;
    double high = 0.0;
    int height_steps = 41;
    std::vector<double> extra_heights;
    SampleOptions samples{3, 60, 17, kDefaultSeed, {}};
};

BoundedEquivalenceData assemble_bounded_equivalence(const FlagMapPtr& gamma, const AssemblyOptions& options = {});

struct SliceEquivalence {
    double height = 0.0;
    double epsilon = 0.0;
    PointMap g;
    Homotopy h1;
    Homotopy h2;
    double control = 0.0;
    /// B / t.
    double predicted = 0.0;
};

/// Slices at height t > 0 through p_t; throws OutOfRange otherwise.
SliceEquivalence slice_equivalence(const BoundedEquivalenceData& data, double t, const SampleOptions& options = {3, 60, 17, kDefaultSeed, {}});

}  // namespace pltopo
