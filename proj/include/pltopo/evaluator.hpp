#pragma once

#include "pltopo/complex.hpp"

#include <functional>
#include <limits>
#include <string>

namespace pltopo {

/// A map between complexes given by an evaluation rule. `lipschitz` is a
/// recorded bound (infinity when none is known).
class PointMap {
public:
    using Fn = std::function<Point(const Point&)>;

    PointMap() = default;
    PointMap(ComplexPtr domain, ComplexPtr codomain, Fn fn, double lipschitz = std::numeric_limits<double>::infinity())
        : domain_(std::move(domain)), codomain_(std::move(codomain)), fn_(std::move(fn)), lipschitz_(lipschitz)
    {
    }

    static PointMap identity(ComplexPtr k);

    Point operator()(const Point& p) const { return fn_(p); }

    const ComplexPtr& domain() const { return domain_; }
    const ComplexPtr& codomain() const { return codomain_; }
    double lipschitz() const { return lipschitz_; }
    explicit operator bool() const { return static_cast<bool>(fn_); }

private:
    ComplexPtr domain_;
    ComplexPtr codomain_;
    Fn fn_;
    double lipschitz_ = std::numeric_limits<double>::infinity();
};

/// H: Z × I → W. Time values outside [0, 1] are clamped.
class Homotopy {
public:
    using Fn = std::function<Point(const Point&, double)>;

    Homotopy() = default;
    Homotopy(ComplexPtr domain, ComplexPtr codomain, Fn fn,
             double time_lipschitz = std::numeric_limits<double>::infinity())
        : domain_(std::move(domain)), codomain_(std::move(codomain)), fn_(std::move(fn)), time_lipschitz_(time_lipschitz)
    {
    }

    static Homotopy constant(const PointMap& map);

    Point operator()(const Point& p, double t) const;
    PointMap at(double t) const;

    /// `first` on [0, ½] then `second` on [½, 1], each at double speed.
    static Homotopy concatenate(const Homotopy& first, const Homotopy& second);
    Homotopy reversed() const;

    const ComplexPtr& domain() const { return domain_; }
    const ComplexPtr& codomain() const { return codomain_; }
    /// Recorded bound on track speed, in the codomain metric.
    double time_lipschitz() const { return time_lipschitz_; }
    explicit operator bool() const { return static_cast<bool>(fn_); }

private:
    ComplexPtr domain_;
    ComplexPtr codomain_;
    Fn fn_;
    double time_lipschitz_ = std::numeric_limits<double>::infinity();
};

}  // namespace pltopo
