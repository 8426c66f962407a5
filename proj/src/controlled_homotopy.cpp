#include "pltopo/controlled_homotopy.hpp"

#include "pltopo/error.hpp"

#include <algorithm>
#include <cmath>

namespace pltopo {

namespace {

Eigen::VectorXd drop_entry(const Eigen::VectorXd& v, Eigen::Index j)
{
    Eigen::VectorXd out(v.size() - 1);
    out << v.head(j), v.tail(v.size() - j - 1);
    const double total = out.sum();
    if (total > 0.0) out /= total;
    return out;
}

std::vector<Simplex> drop_simplex(const std::vector<Simplex>& chain, std::size_t j)
{
    std::vector<Simplex> out = chain;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
    return out;
}

/// Radial projection from the barycentre of Δ^m onto its boundary.
Eigen::VectorXd push_to_boundary(const Eigen::VectorXd& t, double lambda)
{
    const double c = 1.0 / static_cast<double>(t.size());
    Eigen::VectorXd u = ((t.array() - c) / lambda + c).matrix().cwiseMax(0.0);
    return u / u.sum();
}

}  // namespace

Transport join_transport(MapPtr f)
{
    return [f](const Point& x, const Point& s) { return transport(*f, x, s); };
}

// ---------------------------------------------------------------- γ

std::shared_ptr<const FlagMap> FlagMap::build(MapPtr f, GammaChoices choices)
{
    auto out = std::make_shared<FlagMap>();
    out->f_ = f;
    out->transport_ = choices.transport ? choices.transport : join_transport(f);
    for (const auto& sigma : f->target()->simplices()) {
        FiberData data{sigma, FiberComplex(*f, sigma), {}, {}, {}};
        data.verdict = contractibility_verdict(*data.fiber.triangulation());
        if (data.verdict.kind != VerdictKind::Contractible)
            throw Error(ErrorCode::CannotConstruct, "fibre over " + f->target()->name(sigma) + " is " +
                                                        to_string(data.verdict.kind) + ": " + data.verdict.reason);
        data.contraction = contraction_from_collapse(data.fiber.triangulation(), data.verdict.collapse);
        data.basepoint = data.fiber.embedding()[static_cast<std::size_t>(data.verdict.collapse.basepoint)];
        out->fibers_.emplace(sigma, std::move(data));
    }
    for (const auto& [sigma, p] : choices.base)
        if (f->image(p.carrier()) != sigma || embedded_distance((*f)(p), Point::barycenter(sigma)) > 1e-9)
            throw Error(ErrorCode::Mismatch, "base choice does not lie over the barycentre of " + f->target()->name(sigma));
    out->choices_ = std::move(choices);
    return out;
}

Point FlagMap::base(const Simplex& sigma) const
{
    auto it = choices_.base.find(sigma);
    return it != choices_.base.end() ? it->second : fibers_.at(sigma).basepoint;
}

Point FlagMap::phi(const Simplex& tau, const Point& a) const { return transport_(a, Point::barycenter(tau)); }

Point FlagMap::contract(const Simplex& sigma, const Point& a, double u) const
{
    const FiberData& data = fibers_.at(sigma);
    if (u >= 1.0) return data.basepoint;
    return data.fiber.to_source(data.contraction(data.fiber.from_source(a), u));
}

Point FlagMap::chain_value(const std::vector<Simplex>& chain, const Eigen::VectorXd& t) const
{
    if (chain.size() == 1) return base(chain.front());
    if (choices_.chain)
        if (auto v = choices_.chain(chain, t)) return *v;

    const double lambda = 1.0 - static_cast<double>(t.size()) * t.minCoeff();
    if (lambda <= 1e-12) return fibers_.at(chain.front()).basepoint;
    const Eigen::VectorXd u = push_to_boundary(t, lambda);
    Eigen::Index j;
    u.minCoeff(&j);
    Point edge = chain_value(drop_simplex(chain, static_cast<std::size_t>(j)), drop_entry(u, j));
    if (j == 0) edge = phi(chain.front(), edge);
    return contract(chain.front(), edge, 1.0 - lambda);
}

Point FlagMap::operator()(const Flag& cell, const Eigen::VectorXd& s, const Eigen::VectorXd& t) const
{
    return transport_(chain_value(cell.chain, t), Point(cell.base, s));
}

Point FlagMap::prism_value(const std::vector<Simplex>& chain, const Point& a, const Eigen::VectorXd& t, double u) const
{
    const std::size_t m = chain.size() - 1;
    const double gauge_t = m == 0 ? 0.0 : 1.0 - static_cast<double>(t.size()) * t.minCoeff();
    const double gauge_u = std::abs(2.0 * u - 1.0);
    const double lambda = std::max(gauge_t, gauge_u);
    if (lambda <= 1e-12) return fibers_.at(chain.front()).basepoint;

    const Eigen::VectorXd tb = m == 0 ? t : push_to_boundary(t, lambda);
    Point edge;
    if (gauge_u >= gauge_t) {
        edge = u < 0.5 ? phi(chain.front(), a) : chain_value(chain, tb);
    } else {
        const double ub = std::clamp(0.5 + (u - 0.5) / lambda, 0.0, 1.0);
        Eigen::Index j;
        tb.minCoeff(&j);
        const auto face = drop_simplex(chain, static_cast<std::size_t>(j));
        const Eigen::VectorXd tf = drop_entry(tb, j);
        if (j == 0) {
            edge = phi(chain.front(), prism_value(face, a, tf, ub));
        } else if (static_cast<std::size_t>(j) == m) {
            edge = prism_value(face, phi(chain[m - 1], a), tf, ub);
        } else {
            edge = prism_value(face, a, tf, ub);
        }
    }
    return contract(chain.front(), edge, 1.0 - lambda);
}

// ---------------------------------------------------------------- family

ControlledFamily build_family(const FlagMapPtr& gamma, double eps, bool closed_range)
{
    ControlledFamily fam;
    fam.epsilon = eps;
    fam.f = gamma->map();
    fam.gamma = gamma;
    const MapPtr f = fam.f;
    auto cells = std::make_shared<const Cellulation>(closed_range ? Cellulation::build_closed(f->target(), eps)
                                                                  : Cellulation::build(f->target(), eps));
    fam.cellulation = cells;
    const Transport tr = gamma->transport();

    fam.g = PointMap(f->target(), f->source(), [gamma, cells](const Point& y) {
        const auto cc = cells->invert(y);
        return (*gamma)(cells->cells()[cc.cell], cc.s, cc.t);
    });
    fam.h2 = straightline_homotopy(*cells);
    const Homotopy h2 = fam.h2;
    fam.h1_prime = Homotopy(
        f->source(), f->source(), [f, h2, tr](const Point& x, double u) { return tr(x, h2((*f)(x), u)); });
    fam.h1_second = Homotopy(f->source(), f->source(), [f, gamma, cells, tr](const Point& x, double u) {
        const auto cc = cells->invert((*f)(x));
        const Flag& flag = cells->cells()[cc.cell];
        const Point a = tr(x, Point::barycenter(flag.top()));
        return tr(gamma->prism_value(flag.chain, a, cc.t, u), Point(flag.base, cc.s));
    });
    fam.h1 = Homotopy::concatenate(fam.h1_prime, fam.h1_second);
    return fam;
}

// ---------------------------------------------------------------- measurement

namespace {

std::vector<Point> collect_samples(const ComplexPtr& domain, const SampleOptions& options)
{
    auto pts = sample_points(*domain, options.lattice, options.random, options.seed);
    pts.insert(pts.end(), options.extra.begin(), options.extra.end());
    return pts;
}

double spacing(const SampleOptions& options) { return std::sqrt(2.0) / std::max(1, options.lattice); }

}  // namespace

ControlReport measure_control(const PointMap& u, const PointMap& p, const PointMap& q, double eps_target,
                              const SampleOptions& options)
{
    PathMetric metric(p.codomain());
    return measure_control(u, p, q, eps_target, options, std::cref(metric));
}

ControlReport measure_control(const Homotopy& h, const PointMap& q, double eps_target, const SampleOptions& options)
{
    PathMetric metric(q.codomain());
    return measure_control(h, q, eps_target, options, std::cref(metric));
}

ControlReport measure_control(const PointMap& u, const PointMap& p, const PointMap& q, double eps_target,
                              const SampleOptions& options, const Metric& metric)
{
    ControlReport report;
    report.epsilon_target = eps_target;
    for (const auto& z : collect_samples(u.domain(), options)) {
        report.measured_control = std::max(report.measured_control, metric(p(z), q(u(z))));
        ++report.samples;
    }
    report.lipschitz_margin = (p.lipschitz() + q.lipschitz() * u.lipschitz()) * spacing(options);
    return report;
}

ControlReport measure_control(const Homotopy& h, const PointMap& q, double eps_target, const SampleOptions& options,
                              const Metric& metric)
{
    ControlReport report;
    report.epsilon_target = eps_target;
    const int steps = std::max(2, options.time_steps);
    std::vector<Point> track;
    for (const auto& z : collect_samples(h.domain(), options)) {
        track.clear();
        for (int k = 0; k < steps; ++k) track.push_back(q(h(z, static_cast<double>(k) / (steps - 1))));
        for (std::size_t i = 0; i < track.size(); ++i)
            for (std::size_t j = i + 1; j < track.size(); ++j)
                report.measured_control = std::max(report.measured_control, metric(track[i], track[j]));
        ++report.samples;
    }
    report.lipschitz_margin = q.lipschitz() * h.time_lipschitz() / (steps - 1);
    return report;
}

std::vector<Point> cellulation_vertices(const Cellulation& c)
{
    std::vector<Point> out;
    for (std::size_t i = 0; i < c.cells().size(); ++i)
        for (const auto& row : c.vertex_images(i))
            for (const auto& p : row) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------- lifting

Homotopy approximate_lift(const FlagMapPtr& gamma, const Homotopy& big_h, const PointMap& h, double eps,
                          const SampleOptions& options)
{
    const MapPtr f = gamma->map();
    PathMetric metric(f->target());
    const auto samples = collect_samples(h.domain(), options);
    for (const auto& z : samples)
        if (metric((*f)(h(z)), big_h(z, 0.0)) > kTolerance)
            throw Error(ErrorCode::Mismatch, "f∘h does not start the homotopy at " + format_point(*h.domain(), z));

    // ω(η) < ε/2 for the time modulus of H
    double speed = big_h.time_lipschitz();
    if (!std::isfinite(speed)) {
        speed = 0.0;
        const int steps = std::max(2, options.time_steps);
        for (const auto& z : samples)
            for (int k = 0; k + 1 < steps; ++k) {
                const double a = static_cast<double>(k) / (steps - 1);
                const double b = static_cast<double>(k + 1) / (steps - 1);
                speed = std::max(speed, metric(big_h(z, a), big_h(z, b)) / (b - a));
            }
        speed *= 2.0;
    }
    const double eta = speed > 0.0 ? std::min(0.5, 0.4 * eps / speed) : 0.5;

    const ControlledFamily fam = build_family(gamma, 0.5 * eps);
    const Homotopy h1 = fam.h1;
    const PointMap g = fam.g;
    return Homotopy(h.domain(), f->source(), [h1, g, h, big_h, eta](const Point& z, double t) {
        if (t <= eta) return h1(h(z), t / eta);
        return g(big_h(z, (t - eta) / (1.0 - eta)));
    });
}

double star_radius(const Point& y) { return 0.5 * y.coords().minCoeff(); }

Homotopy derive_contraction(const FlagMapPtr& gamma, const Point& y)
{
    const MapPtr f = gamma->map();
    const double comesh = mesh_comesh(*f->target()).comesh;
    const double eps = std::min(star_radius(y), 0.5 * comesh);
    if (!(eps > 1e-9)) throw Error(ErrorCode::GeometryError, "no ball around the point fits inside its open star");
    const ControlledFamily fam = build_family(gamma, eps);
    const Homotopy retract = build_star_retraction(f, y.carrier());
    const Homotopy h1 = fam.h1;
    const Transport tr = gamma->transport();
    return Homotopy(f->source(), f->source(),
                    [h1, retract, tr, y](const Point& x, double u) { return tr(retract(h1(x, u), 1.0), y); });
}

}  // namespace pltopo
