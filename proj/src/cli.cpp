#include "pltopo/cli.hpp"

#include "pltopo/controlled_homotopy.hpp"
#include "pltopo/error.hpp"
#include "pltopo/io.hpp"
#include "pltopo/open_cone.hpp"
#include "pltopo/svg.hpp"
#include "pltopo/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "CLI11.hpp"

namespace pltopo {

namespace {

std::string fixed(double v, int digits = 9)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

LoadedMap open_map(const std::string& path, std::ostream& err)
{
    auto loaded = load_map(path);
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    return loaded;
}

int check_fibers(const std::string& path, std::ostream& out, std::ostream& err)
{
    const MapPtr f = open_map(path, err).map;
    const auto& y = *f->target();
    int code = 0;
    for (const auto& sigma : y.simplices()) {
        const FiberComplex fiber(*f, sigma);
        const Verdict v = contractibility_verdict(*fiber.triangulation());
        out << y.name(sigma) << "  " << to_string(v.kind) << "  " << v.reason << "\n";
        if (v.kind == VerdictKind::NotContractible) code = 1;
        else if (v.kind == VerdictKind::Unknown && code == 0) code = 2;
    }
    return code;
}

int cellulate(const std::string& path, double eps, const std::string& svg, std::ostream& out, std::ostream& err)
{
    const auto loaded = load_complex(path);
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    const Cellulation c = Cellulation::build(loaded.complex, eps);
    std::vector<std::size_t> profile;
    long euler = 0;
    for (const auto& cell : c.cells()) {
        const auto d = static_cast<std::size_t>(cell.cell_dim());
        if (profile.size() <= d) profile.resize(d + 1, 0);
        ++profile[d];
        euler += d % 2 ? -1 : 1;
    }
    out << "cells " << c.cells().size() << "\nprofile";
    for (auto n : profile) out << " " << n;
    out << "\neuler " << euler << "\n";
    if (!svg.empty()) {
        emit_svg(c, svg);
        out << "svg " << svg << "\n";
    }
    return 0;
}

int inverse(const std::string& path, double eps, std::ostream& out, std::ostream& err)
{
    const MapPtr f = open_map(path, err).map;
    const ControlledFamily fam = build_family(FlagMap::build(f), eps);
    const auto& y = *f->target();
    for (const auto& sigma : y.simplices()) {
        const Point p = Point::barycenter(sigma);
        out << format_point(y, p) << " -> " << format_point(*f->source(), fam.g(p)) << "\n";
    }
    return 0;
}

int measure(const std::string& path, double eps, std::size_t samples, std::uint64_t seed, std::ostream& out,
            std::ostream& err)
{
    const MapPtr f = open_map(path, err).map;
    const ControlledFamily fam = build_family(FlagMap::build(f), eps);
    SampleOptions opts;
    opts.random = samples;
    opts.seed = seed;
    SampleOptions on_y = opts;
    on_y.extra = cellulation_vertices(*fam.cellulation);
    const PointMap id_y = PointMap::identity(f->target());
    const PointMap fx = f->as_map();
    const auto g = measure_control(fam.g, id_y, fx, eps, on_y);
    const auto h1 = measure_control(fam.h1, fx, eps, opts);
    const auto h2 = measure_control(fam.h2, id_y, eps, on_y);
    out << "epsilon " << fixed(eps) << "\n";
    out << "g  " << fixed(g.measured_control) << "  samples " << g.samples << "\n";
    out << "h1 " << fixed(h1.measured_control) << "  samples " << h1.samples << "\n";
    out << "h2 " << fixed(h2.measured_control) << "  samples " << h2.samples << "\n";
    const bool ok = g.within(1e-4) && h1.within(1e-4) && h2.within(1e-4);
    out << (ok ? "within" : "exceeds") << "\n";
    return ok ? 0 : 1;
}

int verify(const std::string& path, const std::vector<double>& schedule, std::uint64_t seed, double tol, bool json,
           std::ostream& out, std::ostream& err)
{
    const MapPtr f = open_map(path, err).map;
    VerifyOptions opts;
    opts.schedule = schedule;
    opts.seed = seed;
    opts.tolerance = tol;
    const auto report = run_verify(f, opts);
    if (json) out << report.to_json().dump(2) << "\n";
    else out << report.to_text();
    return report.exit_code();
}

int cone(const std::string& path, const std::string& a, double ta, const std::string& b, double tb, std::ostream& out,
         std::ostream& err)
{
    const auto loaded = load_complex(path);
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    const auto& k = *loaded.complex;
    auto point = [&](const std::string& text) {
        try {
            return parse_point(k, nlohmann::json::parse(text));
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::MalformedInput, std::string("point: ") + e.what());
        }
    };
    PathMetric metric(loaded.complex);
    out << fixed(cone_distance(std::cref(metric), coning_map(point(a), ta), coning_map(point(b), tb))) << "\n";
    return 0;
}

/// {"paths": [[point, point, ...], ...]}: piecewise linear tracks in the
/// target, consecutive points sharing a closed simplex.
int lift(const std::string& map_path, const std::string& homotopy_path, double eps, std::ostream& out, std::ostream& err)
{
    const MapPtr f = open_map(map_path, err).map;
    const ComplexPtr y = f->target();
    const auto doc = read_json(homotopy_path);
    if (!doc.contains("paths") || !doc["paths"].is_array() || doc["paths"].empty())
        throw Error(ErrorCode::MalformedInput, homotopy_path + ": expected a non-empty 'paths' array");
    std::vector<std::vector<Point>> paths;
    double speed = 0.0;
    for (std::size_t i = 0; i < doc["paths"].size(); ++i) {
        const auto& arr = doc["paths"][i];
        if (!arr.is_array() || arr.empty())
            throw Error(ErrorCode::MalformedInput, homotopy_path + ": paths[" + std::to_string(i) + "] is empty");
        std::vector<Point> path;
        for (const auto& p : arr) path.push_back(parse_point(*y, p));
        for (std::size_t j = 0; j + 1 < path.size(); ++j) {
            std::vector<VertexIndex> vs;
            for (auto v : path[j].carrier().vertices()) vs.push_back(v);
            for (auto v : path[j + 1].carrier().vertices()) vs.push_back(v);
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            if (!y->contains(Simplex(vs)))
                throw Error(ErrorCode::MalformedInput, homotopy_path + ": paths[" + std::to_string(i) + "] segment " +
                                                           std::to_string(j) + " leaves every simplex");
            speed = std::max(speed, embedded_distance(path[j], path[j + 1]) * static_cast<double>(path.size() - 1));
        }
        paths.push_back(std::move(path));
    }

    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> gens;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        labels.push_back("z" + std::to_string(i));
        gens.push_back({labels.back()});
    }
    const ComplexPtr z = make_complex(SimplicialComplex::from_labels(labels, gens));
    const auto track = [paths](const Point& p, double t) {
        const auto& path = paths[static_cast<std::size_t>(p.carrier()[0])];
        if (path.size() == 1) return path.front();
        const double pos = std::clamp(t, 0.0, 1.0) * static_cast<double>(path.size() - 1);
        const std::size_t j = std::min(static_cast<std::size_t>(pos), path.size() - 2);
        return lerp(path[j], path[j + 1], pos - static_cast<double>(j));
    };
    const Homotopy big_h(z, y, track, speed);

    const FlagMapPtr gamma = FlagMap::build(f);
    const PointMap start(z, f->source(), [gamma, track](const Point& p) {
        const Point y0 = track(p, 0.0);
        return gamma->transport()(gamma->base(y0.carrier()), y0);
    });
    SampleOptions opts;
    opts.lattice = 1;
    opts.random = 0;
    const Homotopy lifted = approximate_lift(gamma, big_h, start, eps, opts);

    PathMetric metric(y);
    double worst = 0.0;
    const int steps = 64;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const Point zp = Point::vertex(static_cast<VertexIndex>(i));
        for (int k = 0; k <= steps; ++k) {
            const double t = static_cast<double>(k) / steps;
            worst = std::max(worst, metric((*f)(lifted(zp, t)), big_h(zp, t)));
        }
        out << labels[i] << "  " << format_point(*f->source(), lifted(zp, 0.0)) << " -> "
            << format_point(*f->source(), lifted(zp, 1.0)) << "\n";
    }
    out << "discrepancy " << fixed(worst) << "  epsilon " << fixed(eps) << "\n";
    return worst < eps ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Controlled homotopy equivalences of simplicial maps", "pltopo"};
    app.require_subcommand(1);

    std::string map_path, complex_path, svg_path, homotopy_path, a, b;
    double eps = 0.1, ta = 1.0, tb = 1.0, tol = 1e-4;
    std::size_t samples = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::vector<double> schedule;
    bool json = false;

    auto* fibers = app.add_subcommand("check-fibers", "Contractibility verdict for the fibre over every barycentre");
    fibers->add_option("map", map_path)->required();

    auto* cells = app.add_subcommand("cellulate", "Build the fundamental epsilon-subdivision cellulation");
    cells->add_option("complex", complex_path)->required();
    cells->add_option("--epsilon", eps)->required();
    cells->add_option("--svg", svg_path);

    auto* inv = app.add_subcommand("inverse", "Evaluate the controlled inverse at every barycentre");
    inv->add_option("map", map_path)->required();
    inv->add_option("--epsilon", eps)->required();

    auto* meas = app.add_subcommand("measure-control", "Measure the control of g, h1 and h2");
    meas->add_option("map", map_path)->required();
    meas->add_option("--epsilon", eps)->required();
    meas->add_option("--samples", samples);
    meas->add_option("--seed", seed);

    auto* ver = app.add_subcommand("verify", "Run the full verification pipeline");
    ver->add_option("map", map_path)->required();
    ver->add_option("--schedule", schedule)->delimiter(',');
    ver->add_option("--seed", seed);
    ver->add_option("--tol", tol);
    ver->add_flag("--json", json);

    auto* cd = app.add_subcommand("cone-distance", "Distance between two points of the open cone");
    cd->add_option("complex", complex_path)->required();
    cd->add_option("--a", a, "first base point, e.g. {\"a\":1}")->required();
    cd->add_option("--ta", ta, "height of the first point")->required();
    cd->add_option("--b", b)->required();
    cd->add_option("--tb", tb)->required();

    auto* lf = app.add_subcommand("lift", "Approximately lift a homotopy of the target");
    lf->add_option("map", map_path)->required();
    lf->add_option("homotopy", homotopy_path)->required();
    lf->add_option("--epsilon", eps);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*fibers) return check_fibers(map_path, out, err);
        if (*cells) return cellulate(complex_path, eps, svg_path, out, err);
        if (*inv) return inverse(map_path, eps, out, err);
        if (*meas) return measure(map_path, eps, samples, seed, out, err);
        if (*ver) return verify(map_path, schedule, seed, tol, json, out, err);
        if (*cd) return cone(complex_path, a, ta, b, tb, out, err);
        if (*lf) return lift(map_path, homotopy_path, eps, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace pltopo
