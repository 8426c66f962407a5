#include "pltopo/evaluator.hpp"

#include <algorithm>

namespace pltopo {

PointMap PointMap::identity(ComplexPtr k)
{
    return PointMap(k, k, [](const Point& p) { return p; }, 1.0);
}

Homotopy Homotopy::constant(const PointMap& map)
{
    return Homotopy(map.domain(), map.codomain(), [map](const Point& p, double) { return map(p); }, 0.0);
}

Point Homotopy::operator()(const Point& p, double t) const { return fn_(p, std::clamp(t, 0.0, 1.0)); }

PointMap Homotopy::at(double t) const
{
    Homotopy self = *this;
    return PointMap(domain_, codomain_, [self, t](const Point& p) { return self(p, t); });
}

Homotopy Homotopy::concatenate(const Homotopy& first, const Homotopy& second)
{
    return Homotopy(
        first.domain(), first.codomain(),
        [first, second](const Point& p, double t) {
            return t <= 0.5 ? first(p, 2.0 * t) : second(p, 2.0 * t - 1.0);
        },
        2.0 * std::max(first.time_lipschitz(), second.time_lipschitz()));
}

Homotopy Homotopy::reversed() const
{
    Homotopy self = *this;
    return Homotopy(domain_, codomain_, [self](const Point& p, double t) { return self(p, 1.0 - t); }, time_lipschitz_);
}

}  // namespace pltopo
