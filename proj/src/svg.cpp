#include "pltopo/svg.hpp"

#include "pltopo/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace pltopo {

namespace {

constexpr double kCanvas = 480.0;
constexpr double kMargin = 24.0;

void require_plane(const SimplicialComplex& k)
{
    if (k.dimension() > 2)
        throw Error(ErrorCode::UnsupportedDimension, "cannot draw a " + std::to_string(k.dimension()) + "-dimensional complex");
}

/// Maps layout coordinates onto the canvas, y axis up.
struct Frame {
    Eigen::Vector2d lo, hi;
    double scale = 1.0;

    explicit Frame(const std::vector<Eigen::Vector2d>& pts)
    {
        lo = hi = pts.empty() ? Eigen::Vector2d::Zero() : pts.front();
        for (const auto& p : pts) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        const double span = std::max((hi - lo).maxCoeff(), 1e-9);
        scale = (kCanvas - 2 * kMargin) / span;
    }

    Eigen::Vector2d operator()(const Eigen::Vector2d& p) const
    {
        return {kMargin + (p.x() - lo.x()) * scale, kCanvas - kMargin - (p.y() - lo.y()) * scale};
    }
};

Eigen::Vector2d place(const std::vector<Eigen::Vector2d>& layout, const Point& p)
{
    Eigen::Vector2d out = Eigen::Vector2d::Zero();
    for (const auto& [v, w] : p.weights()) out += w * layout[static_cast<std::size_t>(v)];
    return out;
}

std::string coords(const std::vector<Eigen::Vector2d>& pts)
{
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", i ? " " : "", pts[i].x(), pts[i].y());
        out += buf;
    }
    return out;
}

std::string header()
{
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  kCanvas, kCanvas, kCanvas, kCanvas);
    return std::string(buf) +
           "<style>polygon{stroke:#222;stroke-width:0.6;stroke-linejoin:round}"
           ".core{fill:#cfe0f3}.collar{fill:#f3d9b1}.edge{fill:none;stroke-width:1.2}.dot{fill:#222}</style>\n";
}

/// Square marker for a 0-cell.
std::vector<Eigen::Vector2d> marker(const Eigen::Vector2d& c)
{
    const double r = 1.5;
    return {c + Eigen::Vector2d(-r, -r), c + Eigen::Vector2d(r, -r), c + Eigen::Vector2d(r, r), c + Eigen::Vector2d(-r, r)};
}

}  // namespace

std::vector<Eigen::Vector2d> plane_layout(const SimplicialComplex& k)
{
    std::vector<Eigen::Vector2d> out(k.vertex_count());
    if (!k.positions().empty() && k.positions().front().size() >= 2) {
        for (std::size_t v = 0; v < out.size(); ++v) out[v] = {k.positions()[v][0], k.positions()[v][1]};
        return out;
    }
    const double n = static_cast<double>(out.size());
    for (std::size_t v = 0; v < out.size(); ++v) {
        const double a = std::numbers::pi / 2 + 2 * std::numbers::pi * static_cast<double>(v) / n;
        out[v] = {std::cos(a), std::sin(a)};
    }
    return out;
}

std::string cellulation_svg(const Cellulation& c)
{
    const SimplicialComplex& k = *c.complex();
    require_plane(k);
    const auto layout = plane_layout(k);
    const Frame frame(layout);
    std::string out = header();
    for (std::size_t i = 0; i < c.cells().size(); ++i) {
        const Flag& cell = c.cells()[i];
        const auto& grid = c.vertex_images(i);
        const std::size_t ns = grid.size(), nt = grid.front().size();
        std::vector<Eigen::Vector2d> pts;
        auto at = [&](std::size_t a, std::size_t b) { return frame(place(layout, grid[a][b])); };
        if (ns == 2 && nt == 2) {
            pts = {at(0, 0), at(1, 0), at(1, 1), at(0, 1)};
        } else {
            for (std::size_t a = 0; a < ns; ++a)
                for (std::size_t b = 0; b < nt; ++b) pts.push_back(at(a, b));
        }
        if (pts.size() == 1) pts = marker(pts.front());
        const std::string cls = cell.cell_dim() == 1 ? "edge" : cell.length() > 0 ? "collar" : "core";
        out += "<polygon class=\"" + cls + "\" data-cell=\"" + std::to_string(i) + "\" points=\"" + coords(pts) + "\"/>\n";
    }
    return out + "</svg>\n";
}

std::string complex_svg(const SimplicialComplex& k)
{
    require_plane(k);
    const auto layout = plane_layout(k);
    const Frame frame(layout);
    std::string out = header();
    char buf[128];
    for (const auto& s : k.simplices()) {
        if (s.dim() == 0) {
            const auto p = frame(layout[static_cast<std::size_t>(s[0])]);
            std::snprintf(buf, sizeof buf, "<circle class=\"dot\" cx=\"%.4f\" cy=\"%.4f\" r=\"3\"/>\n", p.x(), p.y());
            out += buf;
            continue;
        }
        std::vector<Eigen::Vector2d> pts;
        for (auto v : s.vertices()) pts.push_back(frame(layout[static_cast<std::size_t>(v)]));
        out += "<polygon class=\"" + std::string(s.dim() == 1 ? "edge" : "core") + "\" points=\"" + coords(pts) + "\"/>\n";
    }
    return out + "</svg>\n";
}

namespace {

void write(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::NotFound, "cannot write " + path.string());
    out << text;
}

}  // namespace

void emit_svg(const Cellulation& c, const std::filesystem::path& path) { write(path, cellulation_svg(c)); }
void emit_svg(const SimplicialComplex& k, const std::filesystem::path& path) { write(path, complex_svg(k)); }

}  // namespace pltopo
