#include "pltopo/cellulation.hpp"

#include "pltopo/error.hpp"
#include "pltopo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace pltopo {

std::vector<Flag> enumerate_flags(const SimplicialComplex& k)
{
    std::vector<Flag> out;
    auto larger = [&k](const Simplex& s) {
        auto cof = k.cofaces(s);
        std::erase(cof, s);
        std::sort(cof.begin(), cof.end(), [&k](const Simplex& a, const Simplex& b) { return k.require(a) < k.require(b); });
        return cof;
    };
    for (const auto& base : k.simplices()) {
        Flag flag{base, {}};
        std::function<void()> grow = [&] {
            out.push_back(flag);
            for (const auto& next : larger(flag.chain.back())) {
                flag.chain.push_back(next);
                grow();
                flag.chain.pop_back();
            }
        };
        auto starts = larger(base);
        starts.insert(starts.begin(), base);
        for (const auto& s0 : starts) {
            flag.chain = {s0};
            grow();
        }
    }
    return out;
}

double vertex_to_barycenter(int d)
{
    return std::sqrt(static_cast<double>(d) / static_cast<double>(d + 1));
}

double gamma_coefficient(double eps, const Simplex& tau)
{
    return tau.dim() == 0 ? 0.0 : eps / vertex_to_barycenter(tau.dim());
}

namespace {

void check_epsilon(const SimplicialComplex& k, double eps, bool closed, bool allow_zero)
{
    const double comesh = mesh_comesh(k).comesh;
    const bool low = allow_zero ? eps < 0.0 : eps <= 0.0;
    const bool high = closed ? eps > comesh + kTolerance : eps >= comesh;
    if (low || high || !std::isfinite(eps)) {
        std::ostringstream os;
        os << "epsilon " << eps << " outside the admissible range below comesh " << comesh;
        throw Error(ErrorCode::OutOfRange, os.str());
    }
}

Point vertex_image(double eps, VertexIndex v, const Simplex& tau)
{
    const double c = gamma_coefficient(eps, tau);
    std::map<VertexIndex, double> w;
    w[v] += 1.0 - c;
    for (VertexIndex u : tau) w[u] += c / static_cast<double>(tau.size());
    return Point::from_weights(w);
}

}  // namespace

Point gamma_vertex(const SimplicialComplex& k, double eps, VertexIndex v, const Simplex& tau)
{
    check_epsilon(k, eps, false, true);
    if (!tau.contains(v)) throw Error(ErrorCode::MalformedInput, "vertex is not in the simplex");
    return vertex_image(eps, v, tau);
}

Point gamma_closed_form(double eps, const Flag& flag, const Eigen::VectorXd& s, const Eigen::VectorXd& t)
{
    std::map<VertexIndex, double> w;
    double big_c = 0.0;
    for (std::size_t j = 0; j < flag.chain.size(); ++j) {
        const double tc = t[static_cast<Eigen::Index>(j)] * gamma_coefficient(eps, flag.chain[j]);
        big_c += tc;
        for (VertexIndex u : flag.chain[j]) w[u] += tc / static_cast<double>(flag.chain[j].size());
    }
    for (std::size_t i = 0; i < flag.base.size(); ++i) w[flag.base[i]] += (1.0 - big_c) * s[static_cast<Eigen::Index>(i)];
    return Point::from_weights(w);
}

Cellulation Cellulation::build(ComplexPtr k, double eps) { return make(std::move(k), eps, false); }

Cellulation Cellulation::build_closed(ComplexPtr k, double eps) { return make(std::move(k), eps, true); }

Cellulation Cellulation::make(ComplexPtr k, double eps, bool closed)
{
    check_epsilon(*k, eps, closed, false);
    Cellulation c;
    c.complex_ = k;
    c.eps_ = eps;
    c.flags_ = enumerate_flags(*k);
    for (std::size_t i = 0; i < c.flags_.size(); ++i) {
        const Flag& f = c.flags_[i];
        std::vector<std::vector<Point>> table;
        for (VertexIndex v : f.base) {
            std::vector<Point> row;
            for (const auto& sj : f.chain) row.push_back(vertex_image(eps, v, sj));
            table.push_back(std::move(row));
        }
        c.images_.push_back(std::move(table));

        bool unit_steps = f.base == f.chain.front();
        for (std::size_t j = 1; j < f.chain.size(); ++j) unit_steps = unit_steps && f.chain[j].dim() == f.chain[j - 1].dim() + 1;
        if (unit_steps) c.tops_[f.top()].push_back(i);
    }
    return c;
}

Point Cellulation::eval(std::size_t cell, const Eigen::VectorXd& s, const Eigen::VectorXd& t) const
{
    const Flag& f = flags_.at(cell);
    if (static_cast<std::size_t>(s.size()) != f.base.size() || static_cast<std::size_t>(t.size()) != f.chain.size())
        throw Error(ErrorCode::MalformedInput, "cell coordinates have the wrong length");
    std::map<VertexIndex, double> w;
    const auto& table = images_[cell];
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            const double st = s[static_cast<Eigen::Index>(i)] * t[static_cast<Eigen::Index>(j)];
            if (st == 0.0) continue;
            for (const auto& [v, a] : table[i][j].weights()) w[v] += st * a;
        }
    return Point::from_weights(w);
}

const std::vector<std::size_t>& Cellulation::top_cells(const Simplex& rho) const
{
    auto it = tops_.find(rho);
    if (it == tops_.end()) throw Error(ErrorCode::NotFound, "simplex is not in the cellulated complex");
    return it->second;
}

CellCoordinates Cellulation::invert(const Point& y) const
{
    CellCoordinates best;
    double best_violation = std::numeric_limits<double>::infinity();
    for (std::size_t cell : top_cells(y.carrier())) {
        const Flag& f = flags_[cell];
        const std::size_t m = f.chain.size() - 1;
        Eigen::VectorXd t(static_cast<Eigen::Index>(m + 1));
        double next = 0.0;
        for (std::size_t l = m; l >= 1; --l) {
            VertexIndex u = f.chain[l].vertices()[0];
            for (VertexIndex v : f.chain[l])
                if (!f.chain[l - 1].contains(v)) u = v;
            const double here = y.weight(u);
            t[static_cast<Eigen::Index>(l)] =
                (here - next) * static_cast<double>(f.chain[l].size()) / gamma_coefficient(eps_, f.chain[l]);
            next = here;
        }
        t[0] = 1.0 - t.tail(static_cast<Eigen::Index>(m)).sum();

        double big_c = 0.0;
        Eigen::VectorXd shift = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(f.base.size()));
        for (std::size_t j = 0; j <= m; ++j) {
            const double tc = t[static_cast<Eigen::Index>(j)] * gamma_coefficient(eps_, f.chain[j]);
            big_c += tc;
            for (std::size_t i = 0; i < f.base.size(); ++i)
                shift[static_cast<Eigen::Index>(i)] += tc / static_cast<double>(f.chain[j].size());
        }
        if (1.0 - big_c < 1e-12) continue;
        Eigen::VectorXd s(static_cast<Eigen::Index>(f.base.size()));
        for (std::size_t i = 0; i < f.base.size(); ++i)
            s[static_cast<Eigen::Index>(i)] = (y.weight(f.base[i]) - shift[static_cast<Eigen::Index>(i)]) / (1.0 - big_c);

        const double violation = std::max({0.0, -t.minCoeff(), -s.minCoeff()});
        if (violation < best_violation) {
            best_violation = violation;
            best = {cell, s, t};
        }
        if (violation <= 1e-10) break;
    }
    if (best_violation > 1e-7) throw Error(ErrorCode::InversionFailure, "no cell of the cellulation contains the point");
    best.s = best.s.cwiseMax(0.0);
    best.t = best.t.cwiseMax(0.0);
    best.s /= best.s.sum();
    best.t /= best.t.sum();
    return best;
}

Point gamma_eval(const Cellulation& c, std::size_t cell, const Eigen::VectorXd& s, const Eigen::VectorXd& t)
{
    return c.eval(cell, s, t);
}

CellCoordinates gamma_invert(const Cellulation& c, const Point& y) { return c.invert(y); }

Homotopy straightline_homotopy(const Cellulation& c)
{
    auto fn = [c](const Point& y, double u) {
        auto cc = c.invert(y);
        return gamma_closed_form(c.epsilon() * (1.0 - u), c.cells()[cc.cell], cc.s, cc.t);
    };
    return Homotopy(c.complex(), c.complex(), fn, c.epsilon());
}

}  // namespace pltopo
