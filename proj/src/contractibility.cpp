#include "pltopo/contractibility.hpp"

#include "pltopo/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace pltopo {

bool HomologyProfile::trivial() const
{
    for (long b : betti)
        if (b != 0) return false;
    for (const auto& t : torsion)
        if (!t.empty()) return false;
    return true;
}

std::string HomologyProfile::describe() const
{
    std::ostringstream os;
    os << "b~=(";
    for (std::size_t k = 0; k < betti.size(); ++k) os << (k ? "," : "") << betti[k];
    os << ")";
    for (std::size_t k = 0; k < torsion.size(); ++k)
        for (const auto& t : torsion[k]) os << " Z/" << t << " in degree " << k;
    return os.str();
}

IntMatrix<BigInt> boundary_matrix(const SimplicialComplex& k, int dim)
{
    auto cols = k.simplices_of_dim(dim);
    if (dim == 0) {
        IntMatrix<BigInt> aug(1, static_cast<Eigen::Index>(cols.size()));
        for (Eigen::Index j = 0; j < aug.cols(); ++j) aug(0, j) = 1;
        return aug;
    }
    auto rows = k.simplices_of_dim(dim - 1);
    std::map<Simplex, Eigen::Index> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<Eigen::Index>(i);
    IntMatrix<BigInt> d(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (Eigen::Index i = 0; i < d.rows(); ++i)
        for (Eigen::Index j = 0; j < d.cols(); ++j) d(i, j) = 0;
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i)
            d(row_of.at(cols[j].without(cols[j][i])), static_cast<Eigen::Index>(j)) = (i % 2 == 0) ? 1 : -1;
    return d;
}

HomologyProfile homology(const SimplicialComplex& k)
{
    HomologyProfile out;
    if (k.empty()) return out;
    const int n = k.dimension();
    std::vector<SmithResult<BigInt>> snf;
    for (int d = 0; d <= n + 1; ++d) {
        if (d == n + 1) {
            snf.emplace_back();
            break;
        }
        snf.push_back(smith_normal_form(boundary_matrix(k, d)));
    }
    for (int d = 0; d <= n; ++d) {
        const long chains = static_cast<long>(k.count_of_dim(d));
        out.betti.push_back(chains - snf[static_cast<std::size_t>(d)].rank - snf[static_cast<std::size_t>(d + 1)].rank);
        std::vector<BigInt> tors;
        for (const auto& f : snf[static_cast<std::size_t>(d + 1)].invariant_factors)
            if (f > 1) tors.push_back(f);
        out.torsion.push_back(std::move(tors));
    }
    return out;
}

CollapseSequence greedy_collapse(const SimplicialComplex& k)
{
    if (k.empty()) throw Error(ErrorCode::EmptyInput, "cannot collapse an empty complex");
    std::set<Simplex> alive(k.simplices().begin(), k.simplices().end());
    std::map<Simplex, std::vector<Simplex>> cofacets;
    for (const auto& s : k.simplices())
        for (VertexIndex v : s)
            if (s.dim() > 0) cofacets[s.without(v)].push_back(s);

    CollapseSequence seq;
    for (;;) {
        bool moved = false;
        for (const auto& s : alive) {
            const Simplex* only = nullptr;
            int count = 0;
            for (const auto& c : cofacets[s])
                if (alive.count(c)) {
                    ++count;
                    only = &c;
                }
            if (count != 1) continue;
            seq.steps.push_back({s, *only});
            Simplex coface = *only;
            alive.erase(s);
            alive.erase(coface);
            moved = true;
            break;
        }
        if (!moved) break;
    }
    if (alive.size() == 1) {
        seq.full = true;
        seq.basepoint = alive.begin()->vertices()[0];
    } else {
        seq.core.assign(alive.begin(), alive.end());
    }
    return seq;
}

const char* to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::Contractible: return "Contractible";
    case VerdictKind::NotContractible: return "NotContractible";
    case VerdictKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

Verdict contractibility_verdict(const SimplicialComplex& k)
{
    Verdict v;
    if (k.empty()) {
        v.kind = VerdictKind::NotContractible;
        v.reason = "empty";
        return v;
    }
    v.homology = homology(k);
    if (k.components().size() > 1) {
        v.kind = VerdictKind::NotContractible;
        v.reason = "disconnected, b~0=" + std::to_string(v.homology.betti[0]);
        return v;
    }
    if (!v.homology.trivial()) {
        v.kind = VerdictKind::NotContractible;
        v.reason = "nonzero reduced homology " + v.homology.describe();
        return v;
    }
    v.collapse = greedy_collapse(k);
    if (v.collapse.full) {
        v.kind = VerdictKind::Contractible;
        v.reason = "collapses to " + k.label(v.collapse.basepoint) + " in " + std::to_string(v.collapse.steps.size()) +
                   " steps";
    } else {
        v.kind = VerdictKind::Unknown;
        v.reason = "acyclic but greedy collapse stuck with " + std::to_string(v.collapse.core.size()) + " simplices";
    }
    return v;
}

Point collapse_push(const Point& x, const ElementaryCollapse& step, double s)
{
    const Simplex& sigma = step.free_face;
    if (s <= 0.0 || !sigma.is_face_of(x.carrier())) return x;
    VertexIndex w = -1;
    for (VertexIndex v : step.coface)
        if (!sigma.contains(v)) w = v;
    double m = 1.0;
    for (VertexIndex u : sigma) m = std::min(m, x.weight(u));
    auto weights = x.weights();
    for (VertexIndex u : sigma) weights[u] -= s * m;
    weights[w] += s * static_cast<double>(sigma.size()) * m;
    return Point::from_weights(weights);
}

Homotopy contraction_from_collapse(const ComplexPtr& k, const CollapseSequence& seq)
{
    if (!seq.full) throw Error(ErrorCode::NotContractible, "collapse sequence does not reach a vertex");
    const auto n = static_cast<double>(seq.steps.size());
    if (seq.steps.empty()) return Homotopy(k, k, [](const Point& x, double) { return x; }, 0.0);
    double speed = 0.0;
    for (const auto& step : seq.steps) {
        const double size = static_cast<double>(step.free_face.size());
        speed = std::max(speed, std::sqrt(size * size + size) / size);
    }
    auto steps = seq.steps;
    auto fn = [steps, n](const Point& x, double t) {
        Point p = x;
        const double clock = t * n;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const double s = std::clamp(clock - static_cast<double>(i), 0.0, 1.0);
            if (s <= 0.0) break;
            p = collapse_push(p, steps[i], s);
        }
        return p;
    };
    return Homotopy(k, k, fn, speed * n);
}

}  // namespace pltopo
