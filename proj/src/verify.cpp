#include "pltopo/verify.hpp"

#include "pltopo/error.hpp"
#include "pltopo/open_cone.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pltopo {

const char* to_string(OverallVerdict v)
{
    switch (v) {
    case OverallVerdict::TheoremConsistent: return "TheoremConsistent";
    case OverallVerdict::CounterexampleToImplementation: return "CounterexampleToImplementation";
    case OverallVerdict::Unknown: return "Unknown";
    case OverallVerdict::FibersNotContractible: return "FibersNotContractible";
    }
    return "?";
}

int VerificationReport::exit_code() const
{
    switch (verdict) {
    case OverallVerdict::TheoremConsistent: return 0;
    case OverallVerdict::Unknown: return 2;
    default: return 1;
    }
}

std::vector<double> default_schedule(double comesh)
{
    std::vector<double> out;
    for (int k = 1; k <= 5; ++k) out.push_back(comesh / static_cast<double>(1 << k));
    return out;
}

namespace {

std::string fixed(double v, int digits = 9)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double identity_residual(const ControlledFamily& fam, const std::vector<Point>& xs, const std::vector<Point>& ys)
{
    const SimplicialMap& f = *fam.f;
    double worst = 0.0;
    for (const auto& y : ys) worst = std::max(worst, embedded_distance(f(fam.g(y)), fam.h2(y, 1.0)));
    for (const auto& x : xs)
        for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            worst = std::max(worst, embedded_distance(f(fam.h1_prime(x, u)), fam.h2(f(x), u)));
            worst = std::max(worst, embedded_distance(f(fam.h1_second(x, u)), fam.h2(f(x), 1.0)));
        }
    return worst;
}

}  // namespace

VerificationReport run_verify(const MapPtr& f, const VerifyOptions& options)
{
    VerificationReport report;
    const SimplicialComplex& y = *f->target();

    const MissedStars missed = surjectivity_check(*f);
    report.surjective = missed.surjective();
    for (const auto& s : missed.missed) report.missed.push_back(y.name(s));

    bool unknown = false;
    for (const auto& sigma : y.simplices()) {
        FiberRow row;
        row.simplex = y.name(sigma);
        const FiberComplex fiber(*f, sigma);
        row.verdict = contractibility_verdict(*fiber.triangulation());
        if (row.verdict.kind == VerdictKind::Unknown) unknown = true;
        if (row.verdict.kind == VerdictKind::NotContractible) {
            report.failing.push_back(row.simplex);
            report.obstructions.push_back({row.simplex, row.verdict.reason, star_radius(Point::barycenter(sigma))});
        }
        if (!fiber.triangulation()->empty()) {
            try {
                row.product_error = verify_product_decomposition(*f, sigma, 20, options.seed).max_identification_error;
            } catch (const Error& e) {
                report.failing.push_back(row.simplex + " (product decomposition: " + e.what() + ")");
            }
        }
        report.fibers.push_back(std::move(row));
    }

    if (!report.obstructions.empty()) {
        try {
            FlagMap::build(f, options.choices);
        } catch (const Error& e) {
            report.refusal = e.what();
        }
        report.verdict = OverallVerdict::FibersNotContractible;
        return report;
    }
    if (unknown) {
        report.verdict = OverallVerdict::Unknown;
        return report;
    }

    const FlagMapPtr gamma = FlagMap::build(f, options.choices);
    const double comesh = mesh_comesh(y).comesh;
    const auto schedule = options.schedule.empty() ? default_schedule(comesh) : options.schedule;
    SampleOptions sampling;
    sampling.lattice = options.lattice;
    sampling.random = options.random;
    sampling.seed = options.seed;
    const auto xs = sample_points(*f->source(), 2, 50, options.seed);
    const auto ys = sample_points(y, 2, 50, options.seed);
    const PointMap id_y = PointMap::identity(f->target());
    const PointMap fx = f->as_map();
    bool ok = report.failing.empty();

    for (double eps : schedule) {
        ControlRow row;
        row.epsilon = eps;
        const ControlledFamily fam = build_family(gamma, eps);
        SampleOptions on_y = sampling;
        on_y.extra = cellulation_vertices(*fam.cellulation);
        row.g = measure_control(fam.g, id_y, fx, eps, on_y).measured_control;
        row.h2 = measure_control(fam.h2, id_y, eps, on_y).measured_control;
        row.h1 = measure_control(fam.h1, fx, eps, sampling).measured_control;
        row.identity_residual = identity_residual(fam, xs, ys);
        const double limit = eps * (1.0 + options.tolerance);
        row.within = row.g <= limit && row.h1 <= limit && row.h2 <= limit && row.identity_residual <= 1e-9;
        if (!row.within) {
            ok = false;
            report.failing.push_back("control at epsilon " + fixed(eps, 6));
        }
        report.controls.push_back(row);
    }

    if (options.assemble) {
        AssemblyOptions assembly;
        assembly.samples.seed = options.seed;
        const std::vector<double> heights{2.0 / comesh, 4.0 / comesh, 8.0 / comesh};
        assembly.extra_heights = heights;
        const auto data = assemble_bounded_equivalence(gamma, assembly);
        report.bound = data.bound;
        if (data.bound > 1.0 + 1e-3) {
            ok = false;
            report.failing.push_back("bounded assembly");
        }
        for (double t : heights) {
            SampleOptions s = assembly.samples;
            const auto slice = slice_equivalence(data, t, s);
            SliceRow row{t, slice.control, slice.predicted, slice.control <= slice.predicted * (1.0 + 1e-3)};
            if (!row.within) {
                ok = false;
                report.failing.push_back("slice at t " + fixed(t, 6));
            }
            report.slices.push_back(row);
        }
    }
    report.verdict = ok ? OverallVerdict::TheoremConsistent : OverallVerdict::CounterexampleToImplementation;
    return report;
}

std::string VerificationReport::to_text() const
{
    std::ostringstream out;
    out << "surjective: " << (surjective ? "yes" : "no");
    for (const auto& m : missed) out << " " << m;
    out << "\nfibres:\n";
    for (const auto& row : fibers) {
        out << "  " << row.simplex << "  " << to_string(row.verdict.kind) << "  " << row.verdict.reason;
        if (row.product_error) out << "  product-error " << fixed(*row.product_error, 12);
        out << "\n";
    }
    for (const auto& o : obstructions)
        out << "obstruction: fibre over " << o.simplex << " (" << o.reason << "); no inverse with control below "
            << fixed(o.star_radius) << "\n";
    if (!refusal.empty()) out << "construction refused: " << refusal << "\n";
    if (!controls.empty()) {
        out << "controls:\n  epsilon  g  h1  h2  identities  ok\n";
        for (const auto& r : controls)
            out << "  " << fixed(r.epsilon) << "  " << fixed(r.g) << "  " << fixed(r.h1) << "  " << fixed(r.h2) << "  "
                << fixed(r.identity_residual, 12) << "  " << (r.within ? "yes" : "no") << "\n";
    }
    if (bound) out << "bounded assembly B: " << fixed(*bound) << "\n";
    if (!slices.empty()) {
        out << "slices:\n  t  control  B/t  ok\n";
        for (const auto& r : slices)
            out << "  " << fixed(r.height) << "  " << fixed(r.control) << "  " << fixed(r.predicted) << "  "
                << (r.within ? "yes" : "no") << "\n";
    }
    for (const auto& f : failing) out << "failing: " << f << "\n";
    out << "verdict: " << to_string(verdict) << "\n";
    return out.str();
}

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json out;
    out["surjective"] = surjective;
    out["missed"] = missed;
    for (const auto& row : fibers) {
        nlohmann::json r{{"simplex", row.simplex}, {"verdict", to_string(row.verdict.kind)}, {"reason", row.verdict.reason}};
        if (row.product_error) r["product_error"] = *row.product_error;
        out["fibres"].push_back(r);
    }
    for (const auto& o : obstructions)
        out["obstructions"].push_back({{"simplex", o.simplex}, {"reason", o.reason}, {"star_radius", o.star_radius}});
    if (!refusal.empty()) out["refusal"] = refusal;
    for (const auto& r : controls)
        out["controls"].push_back({{"epsilon", r.epsilon},
                                   {"g", r.g},
                                   {"h1", r.h1},
                                   {"h2", r.h2},
                                   {"identity_residual", r.identity_residual},
                                   {"within", r.within}});
    if (bound) out["bound"] = *bound;
    for (const auto& r : slices)
        out["slices"].push_back({{"t", r.height}, {"control", r.control}, {"predicted", r.predicted}, {"within", r.within}});
    out["failing"] = failing;
    out["verdict"] = to_string(verdict);
    return out;
}

}  // namespace pltopo
