#include "diagext/matrix.hpp"

#include <algorithm>

namespace diagext {

namespace {

/* Dense working form for elimination. */
struct DenseRow {
    std::vector<mpq_class> a;
};

/* Clear denominators and divide by content, keeping the row integral and
 * primitive. Only used over Q. */
void make_primitive(std::vector<mpq_class>& r) {
    mpz_class l(1);
    for (auto& x : r)
        if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    mpz_class g(0);
    for (auto& x : r) {
        if (x != 0) {
            mpz_class n = x.get_num() * (l / x.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == 0) return;
    for (auto& x : r) {
        if (x != 0) {
            mpz_class n = x.get_num() * (l / x.get_den());
            x = mpq_class(n / g);
        }
    }
}

} // namespace

Matrix Matrix::rref(std::vector<std::size_t>* pivot_cols) const {
    const Field& F = field_;
    std::size_t m = rows_, n = cols_;
    std::vector<std::vector<mpq_class>> w(m, std::vector<mpq_class>(n, mpq_class(0)));
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [c, v] : data_[i]) w[i][c] = v.raw();

    const bool rational = F.is_rational();
    mpz_class p(static_cast<long>(F.characteristic()));

    auto modp = [&](mpq_class& x) {
        x.canonicalize();
        mpz_class r = x.get_num() % p;
        if (r < 0) r += p;
        if (x.get_den() != 1) {
            mpz_class dm = x.get_den() % p;
            if (dm < 0) dm += p;
            mpz_class dinv;
            mpz_invert(dinv.get_mpz_t(), dm.get_mpz_t(), p.get_mpz_t());
            r = (r * dinv) % p;
            if (r < 0) r += p;
        }
        x = mpq_class(r);
    };

    if (rational)
        for (auto& r : w) make_primitive(r);

    std::vector<std::size_t> pivots;
    std::vector<std::size_t> pivot_row_of; // parallel to pivots
    std::size_t prow = 0;
    mpq_class prev_pivot(1);

    for (std::size_t col = 0; col < n && prow < m; ++col) {
        std::size_t sel = m;
        for (std::size_t i = prow; i < m; ++i)
            if (w[i][col] != 0) { sel = i; break; }
        if (sel == m) continue;
        std::swap(w[prow], w[sel]);
        const mpq_class piv = w[prow][col];
        for (std::size_t i = prow + 1; i < m; ++i) {
            if (w[i][col] == 0) {
                if (rational) {
                    // one-step Bareiss scales untouched rows too
                    for (std::size_t j = col; j < n; ++j) {
                        if (w[i][j] == 0) continue;
                        w[i][j] = piv * w[i][j] / prev_pivot;
                        w[i][j].canonicalize();
                    }
                }
                continue;
            }
            const mpq_class f = w[i][col];
            for (std::size_t j = col; j < n; ++j) {
                mpq_class t = piv * w[i][j] - f * w[prow][j];
                if (rational) {
                    // division by the previous pivot; exact on Bareiss minors
                    t /= prev_pivot;
                    t.canonicalize();
                    w[i][j] = t;
                } else {
                    modp(t);
                    w[i][j] = t;
                }
            }
        }
        prev_pivot = piv;
        pivots.push_back(col);
        pivot_row_of.push_back(prow);
        ++prow;
    }

    // Jordan phase: normalize pivots to 1 and clear above.
    for (std::size_t k = pivots.size(); k-- > 0;) {
        std::size_t r = pivot_row_of[k], c = pivots[k];
        mpq_class piv = w[r][c];
        for (std::size_t j = c; j < n; ++j) {
            if (w[r][j] == 0) continue;
            w[r][j] /= piv;
            if (!rational) modp(w[r][j]);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (w[i][c] == 0) continue;
            mpq_class f = w[i][c];
            for (std::size_t j = c; j < n; ++j) {
                w[i][j] -= f * w[r][j];
                if (!rational) modp(w[i][j]);
            }
        }
    }

    Matrix out(F, m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (w[i][j] != 0)
                out.data_[i].push_back({j, F.is_rational() ? F.from_fraction(w[i][j].get_num(), w[i][j].get_den())
                                                           : F.from_fraction(w[i][j].get_num(), 1)});
    if (pivot_cols) *pivot_cols = pivots;
    return out;
}

Matrix kernel_basis(const Matrix& A) {
    const Field& F = A.field();
    std::vector<std::size_t> piv;
    Matrix R = A.rref(&piv);
    std::size_t n = A.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);

    Matrix K(F, n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        K.set(f, k, F.one());
        for (std::size_t r = 0; r < piv.size(); ++r) {
            Scalar v = R.get(r, f);
            if (!v.is_zero()) K.set(piv[r], k, F.neg(v));
        }
    }
    return K;
}

std::optional<Matrix> solve(const Matrix& A, const Matrix& B) {
    if (A.rows() != B.rows())
        throw ShapeError("solve: " + A.dim_str() + " vs rhs " + B.dim_str());
    const Field& F = A.field();
    Matrix aug = A.hstack(B);
    std::vector<std::size_t> piv;
    Matrix R = aug.rref(&piv);
    for (auto c : piv)
        if (c >= A.cols()) return std::nullopt;
    Matrix X(F, A.cols(), B.cols());
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            Scalar v = R.get(r, A.cols() + j);
            if (!v.is_zero()) X.set(piv[r], j, v);
        }
    return X;
}

std::size_t rank(const Matrix& A) { return A.rank(); }

bool is_invertible(const Matrix& A) { return A.is_invertible(); }

Matrix inverse(const Matrix& A) {
    if (A.rows() != A.cols()) throw ShapeError("inverse of non-square " + A.dim_str());
    auto X = solve(A, Matrix::identity(A.field(), A.rows()));
    if (!X) throw Error("inverse of singular matrix");
    return *X;
}

Matrix left_kernel_rows(const Matrix& A) { return kernel_basis(A.transpose()).transpose(); }

std::optional<Matrix> solve_left(const Matrix& A, const Matrix& B) {
    auto X = solve(A.transpose(), B.transpose());
    if (!X) return std::nullopt;
    return X->transpose();
}

Matrix row_space_basis(const Matrix& A) {
    std::vector<std::size_t> piv;
    Matrix R = A.rref(&piv);
    Matrix out(A.field(), piv.size(), A.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            Scalar v = R.get(i, j);
            if (!v.is_zero()) out.set(i, j, v);
        }
    return out;
}

Matrix row_space_complement(const Matrix& A) {
    std::vector<std::size_t> piv;
    A.rref(&piv);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::size_t k = A.cols() - piv.size();
    Matrix out(A.field(), k, A.cols());
    std::size_t r = 0;
    for (std::size_t j = 0; j < A.cols(); ++j)
        if (!is_pivot[j]) out.set(r++, j, A.field().one());
    return out;
}

bool in_row_space(const Matrix& A, const Matrix& v) {
    if (v.rows() != 1 || v.cols() != A.cols()) throw ShapeError("in_row_space shape");
    return A.vstack(v).rank() == A.rank();
}

} // namespace diagext
