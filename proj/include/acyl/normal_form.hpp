#pragma once

// Integer normal forms over any exact Euclidean scalar (Int, or a checked
// fixed-width type). Matrices act on row vectors unless stated otherwise.

#include "acyl/types.hpp"

#include <algorithm>
#include <cstdlib>

namespace acyl {

template <class Scalar>
struct SmithResult {
    Mat<Scalar> D;  // k x n, diagonal, d1 | d2 | ... , all >= 0
    Mat<Scalar> U;  // k x k unimodular
    Mat<Scalar> V;  // n x n unimodular, U*M*V = D
    int rank = 0;
};

namespace detail {

template <class Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
    Scalar q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

template <class Scalar>
void swap_rows(Mat<Scalar>& m, Eigen::Index i, Eigen::Index j) {
    if (i != j) m.row(i).swap(m.row(j));
}

template <class Scalar>
void swap_cols(Mat<Scalar>& m, Eigen::Index i, Eigen::Index j) {
    if (i != j) m.col(i).swap(m.col(j));
}

// row_i += c * row_j
template <class Scalar>
void add_row(Mat<Scalar>& m, Eigen::Index i, Eigen::Index j, const Scalar& c) {
    for (Eigen::Index x = 0; x < m.cols(); ++x) m(i, x) += c * m(j, x);
}

template <class Scalar>
void add_col(Mat<Scalar>& m, Eigen::Index i, Eigen::Index j, const Scalar& c) {
    for (Eigen::Index x = 0; x < m.rows(); ++x) m(x, i) += c * m(x, j);
}

}  // namespace detail

template <class Scalar>
SmithResult<Scalar> smith_normal_form(const Mat<Scalar>& M) {
    using namespace detail;
    const Eigen::Index k = M.rows(), n = M.cols();
    SmithResult<Scalar> r;
    r.D = M;
    r.U = Mat<Scalar>::Identity(k, k);
    r.V = Mat<Scalar>::Identity(n, n);
    Mat<Scalar>& A = r.D;

    using std::abs;
    Eigen::Index t = 0;
    bool exhausted = false;
    for (; t < std::min(k, n) && !exhausted; ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        for (;;) {
            Eigen::Index pi = -1, pj = -1;
            Scalar best = 0;
            for (Eigen::Index i = t; i < k; ++i)
                for (Eigen::Index j = t; j < n; ++j)
                    if (A(i, j) != 0 && (pi < 0 || abs(A(i, j)) < best)) {
                        best = abs(A(i, j));
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) {
                exhausted = true;
                break;
            }
            swap_rows(A, t, pi);
            swap_rows(r.U, t, pi);
            swap_cols(A, t, pj);
            swap_cols(r.V, t, pj);

            bool clean = true;
            for (Eigen::Index i = t + 1; i < k; ++i) {
                if (A(i, t) == 0) continue;
                Scalar q = -floor_div(A(i, t), A(t, t));
                add_row(A, i, t, q);
                add_row(r.U, i, t, q);
                if (A(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                Scalar q = -floor_div(A(t, j), A(t, t));
                add_col(A, j, t, q);
                add_col(r.V, j, t, q);
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: fold an offending row into the pivot row
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < k && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            add_row(A, t, bad, Scalar(1));
            add_row(r.U, t, bad, Scalar(1));
        }
        if (exhausted) break;
        if (A(t, t) < 0) {
            A.row(t) *= Scalar(-1);
            r.U.row(t) *= Scalar(-1);
        }
    }
    r.rank = static_cast<int>(t);
    return r;
}

// Row Hermite normal form of the lattice spanned by the rows of M: upper
// echelon, positive pivots, entries above each pivot reduced into [0, pivot).
// Zero rows are dropped, so the result is a basis.
template <class Scalar>
Mat<Scalar> hermite_basis(const Mat<Scalar>& M) {
    using namespace detail;
    using std::abs;
    Mat<Scalar> A = M;
    const Eigen::Index k = A.rows(), n = A.cols();
    Eigen::Index row = 0;
    for (Eigen::Index c = 0; c < n && row < k; ++c) {
        for (;;) {
            Eigen::Index p = -1;
            for (Eigen::Index i = row; i < k; ++i)
                if (A(i, c) != 0 && (p < 0 || abs(A(i, c)) < abs(A(p, c)))) p = i;
            if (p < 0) break;
            swap_rows(A, row, p);
            bool clean = true;
            for (Eigen::Index i = row + 1; i < k; ++i) {
                if (A(i, c) == 0) continue;
                add_row(A, i, row, Scalar(-floor_div(A(i, c), A(row, c))));
                if (A(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (row < k && A(row, c) != 0) {
            if (A(row, c) < 0) A.row(row) *= Scalar(-1);
            for (Eigen::Index i = 0; i < row; ++i)
                add_row(A, i, row, Scalar(-floor_div(A(i, c), A(row, c))));
            ++row;
        }
    }
    return A.topRows(row);
}

// Saturated basis (rows) of {x in Z^n : M x = 0}, in Hermite form.
template <class Scalar>
Mat<Scalar> integer_kernel(const Mat<Scalar>& M) {
    const Eigen::Index n = M.cols();
    if (M.rows() == 0) return Mat<Scalar>::Identity(n, n);
    SmithResult<Scalar> s = smith_normal_form(M);
    Mat<Scalar> K = s.V.rightCols(n - s.rank).transpose();
    return hermite_basis(K);
}

// Fraction-free Gaussian elimination (Bareiss); exact for square matrices.
template <class Scalar>
Scalar determinant(const Mat<Scalar>& M) {
    const Eigen::Index n = M.rows();
    if (n == 0) return Scalar(1);
    Mat<Scalar> A = M;
    Scalar prev = 1, sign = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (A(k, k) == 0) {
            Eigen::Index p = k + 1;
            while (p < n && A(p, k) == 0) ++p;
            if (p == n) return Scalar(0);
            A.row(k).swap(A.row(p));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

template <class Scalar>
int rank(const Mat<Scalar>& M) {
    if (M.size() == 0) return 0;
    return smith_normal_form(M).rank;
}

extern template struct SmithResult<Int>;
extern template SmithResult<Int> smith_normal_form<Int>(const MatZ&);
extern template MatZ hermite_basis<Int>(const MatZ&);
extern template MatZ integer_kernel<Int>(const MatZ&);
extern template Int determinant<Int>(const MatZ&);
extern template int rank<Int>(const MatZ&);

}  // namespace acyl
