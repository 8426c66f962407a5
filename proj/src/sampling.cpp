#include "pltopo/sampling.hpp"

#include "pltopo/error.hpp"

#include <functional>

namespace pltopo {

Eigen::VectorXd random_barycentric(int n, std::mt19937_64& rng)
{
    std::exponential_distribution<double> exp(1.0);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = exp(rng);
    return w / w.sum();
}

Point random_point(const Simplex& s, std::mt19937_64& rng)
{
    return Point(s, random_barycentric(static_cast<int>(s.size()), rng));
}

Point random_point(const SimplicialComplex& k, std::mt19937_64& rng)
{
    auto tops = k.maximal_simplices();
    if (tops.empty()) throw Error(ErrorCode::EmptyInput, "cannot sample an empty complex");
    std::uniform_int_distribution<std::size_t> pick(0, tops.size() - 1);
    return random_point(tops[pick(rng)], rng);
}

std::vector<Point> lattice_points(const SimplicialComplex& k, int r)
{
    std::vector<Point> out;
    for (const auto& s : k.simplices()) {
        int n = static_cast<int>(s.size());
        if (n > r) continue;
        // interior lattice points only, so every point appears once
        std::vector<int> c(static_cast<std::size_t>(n), 1);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n - 1) {
                c[static_cast<std::size_t>(i)] = left;
                Eigen::VectorXd w(n);
                for (int j = 0; j < n; ++j) w[j] = static_cast<double>(c[static_cast<std::size_t>(j)]) / r;
                out.emplace_back(s, w);
                return;
            }
            for (int v = 1; v <= left - (n - 1 - i); ++v) {
                c[static_cast<std::size_t>(i)] = v;
                rec(i + 1, left - v);
            }
        };
        rec(0, r);
    }
    return out;
}

std::vector<Point> sample_points(const SimplicialComplex& k, int r, std::size_t random, std::uint64_t seed)
{
    auto out = lattice_points(k, r);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random; ++i) out.push_back(random_point(k, rng));
    return out;
}

}  // namespace pltopo
