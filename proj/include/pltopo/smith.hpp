#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <utility>
#include <vector>

namespace pltopo {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

template <typename Scalar>
using IntMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct SmithResult {
    int rank = 0;
    /// Diagonal entries d_1 | d_2 | … | d_rank, all positive.
    std::vector<Scalar> invariant_factors;
};

/// Smith normal form by pivoting on the entry of least absolute value.
template <typename Scalar>
SmithResult<Scalar> smith_normal_form(IntMatrix<Scalar> a)
{
    using std::abs;
    using boost::multiprecision::abs;
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    SmithResult<Scalar> out;

    auto row_axpy = [&](Eigen::Index dst, Eigen::Index src, const Scalar& q) {
        for (Eigen::Index j = 0; j < cols; ++j) a(dst, j) -= q * a(src, j);
    };
    auto col_axpy = [&](Eigen::Index dst, Eigen::Index src, const Scalar& q) {
        for (Eigen::Index i = 0; i < rows; ++i) a(i, dst) -= q * a(i, src);
    };

    for (Eigen::Index t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            Eigen::Index pi = -1, pj = -1;
            Scalar best = 0;
            for (Eigen::Index j = t; j < cols; ++j)
                for (Eigen::Index i = t; i < rows; ++i)
                    if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < best)) {
                        best = abs(a(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return out;
            a.row(t).swap(a.row(pi));
            a.col(t).swap(a.col(pj));

            bool clean = true;
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                row_axpy(i, t, Scalar(a(i, t) / a(t, t)));
                if (a(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                col_axpy(j, t, Scalar(a(t, j) / a(t, t)));
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_axpy(t, bad, Scalar(-1));
        }
        out.invariant_factors.push_back(abs(a(t, t)));
        ++out.rank;
    }
    return out;
}

}  // namespace pltopo
