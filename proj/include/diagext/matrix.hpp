#ifndef DIAGEXT_MATRIX_HPP
#define DIAGEXT_MATRIX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "diagext/scalar.hpp"

namespace diagext {

/* Sparse row: (col, value) pairs, sorted by col, no zero values stored. */
using SpRow = std::vector<std::pair<std::size_t, Scalar>>;

/* Exact sparse matrix over Q or GF(p).
 *
 * Elimination is deterministic: pivots are chosen as the first nonzero
 * entry in column order, so every derived basis is reproducible. Over Q
 * the forward pass is fraction-free (Bareiss) on cleared rows; over
 * GF(p) it is plain Gaussian elimination. */
class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), data_(rows) {}

    static Matrix identity(Field f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, f.one()});
        return m;
    }

    static Matrix zero(Field f, std::size_t rows, std::size_t cols) { return Matrix(f, rows, cols); }

    /* Row-major dense initializer of long values (tests, small fixtures). */
    static Matrix from_rows(Field f, const std::vector<std::vector<long>>& rows) {
        std::size_t nc = rows.empty() ? 0 : rows[0].size();
        Matrix m(f, rows.size(), nc);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != nc) throw ShapeError("ragged initializer");
            for (std::size_t j = 0; j < nc; ++j)
                if (rows[i][j] != 0) m.data_[i].push_back({j, f.from_long(rows[i][j])});
        }
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const SpRow& row(std::size_t i) const { return data_.at(i); }

    Scalar get(std::size_t i, std::size_t j) const {
        check_index(i, j);
        for (const auto& [c, v] : data_[i])
            if (c == j) return v;
        return field_.zero();
    }

    void set(std::size_t i, std::size_t j, const Scalar& v) {
        check_index(i, j);
        auto& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const auto& p, std::size_t c) { return p.first < c; });
        if (it != r.end() && it->first == j) {
            if (v.is_zero()) r.erase(it);
            else it->second = v;
        } else if (!v.is_zero()) {
            r.insert(it, {j, v});
        }
    }

    void add_to(std::size_t i, std::size_t j, const Scalar& v) {
        set(i, j, field_.add(get(i, j), v));
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& r : data_) n += r.size();
        return n;
    }

    bool is_zero() const { return nnz() == 0; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [c, v] : data_[i]) t.data_[c].push_back({i, v});
        return t; // column order of inserts is ascending row index: already sorted
    }

    Matrix operator+(const Matrix& o) const { return combined(o, false); }
    Matrix operator-(const Matrix& o) const { return combined(o, true); }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw ShapeError("matrix product " + dim_str() + " * " + o.dim_str());
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::vector<Scalar> acc(o.cols_, field_.zero());
            for (const auto& [k, v] : data_[i])
                for (const auto& [j, w] : o.data_[k])
                    acc[j] = field_.add(acc[j], field_.mul(v, w));
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!acc[j].is_zero()) r.data_[i].push_back({j, acc[j]});
        }
        return r;
    }

    Matrix scaled(const Scalar& s) const {
        Matrix r(field_, rows_, cols_);
        if (s.is_zero()) return r;
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [c, v] : data_[i]) r.data_[i].push_back({c, field_.mul(v, s)});
        return r;
    }

    Matrix negated() const { return scaled(field_.from_long(-1)); }

    /* [this | o] side by side */
    Matrix hstack(const Matrix& o) const {
        if (rows_ != o.rows_) throw ShapeError("hstack " + dim_str() + " | " + o.dim_str());
        Matrix r(field_, rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            r.data_[i] = data_[i];
            for (const auto& [c, v] : o.data_[i]) r.data_[i].push_back({c + cols_, v});
        }
        return r;
    }

    Matrix vstack(const Matrix& o) const {
        if (cols_ != o.cols_) throw ShapeError("vstack " + dim_str() + " / " + o.dim_str());
        Matrix r(field_, rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) r.data_[i] = data_[i];
        for (std::size_t i = 0; i < o.rows_; ++i) r.data_[rows_ + i] = o.data_[i];
        return r;
    }

    Matrix columns(std::size_t from, std::size_t to) const { // [from, to)
        if (to > cols_ || from > to) throw ShapeError("column slice out of range");
        Matrix r(field_, rows_, to - from);
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [c, v] : data_[i])
                if (c >= from && c < to) r.data_[i].push_back({c - from, v});
        return r;
    }

    Matrix row_matrix(std::size_t i) const {
        Matrix r(field_, 1, cols_);
        r.data_[0] = data_.at(i);
        return r;
    }

    /* Reduced row echelon form; RREF is canonical for the row space, so
     * all downstream choices derived from it are reproducible. */
    Matrix rref(std::vector<std::size_t>* pivot_cols = nullptr) const;

    std::size_t rank() const {
        std::vector<std::size_t> piv;
        rref(&piv);
        return piv.size();
    }

    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    std::string dim_str() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[ ";
            for (std::size_t j = 0; j < cols_; ++j) s += get(i, j).str() + " ";
            s += "]\n";
        }
        return s;
    }

private:
    Matrix combined(const Matrix& o, bool subtract) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeError("sum " + dim_str() + " vs " + o.dim_str());
        Matrix r(field_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            auto a = data_[i].begin(), ae = data_[i].end();
            auto b = o.data_[i].begin(), be = o.data_[i].end();
            while (a != ae || b != be) {
                if (b == be || (a != ae && a->first < b->first)) {
                    r.data_[i].push_back(*a++);
                } else if (a == ae || b->first < a->first) {
                    Scalar v = subtract ? field_.neg(b->second) : b->second;
                    r.data_[i].push_back({b->first, v});
                    ++b;
                } else {
                    Scalar v = subtract ? field_.sub(a->second, b->second)
                                        : field_.add(a->second, b->second);
                    if (!v.is_zero()) r.data_[i].push_back({a->first, v});
                    ++a; ++b;
                }
            }
        }
        return r;
    }

    void check_index(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw ShapeError("index out of range");
    }

    Field field_;
    std::size_t rows_, cols_;
    std::vector<SpRow> data_;
};

/* Columns spanning ker(A): A * K = 0, cols(K) = cols(A) - rank(A). */
Matrix kernel_basis(const Matrix& A);

/* Some X with A*X = B, or nullopt when B is not in the column space. */
std::optional<Matrix> solve(const Matrix& A, const Matrix& B);

std::size_t rank(const Matrix& A);
bool is_invertible(const Matrix& A);

/* Inverse of a square invertible matrix. */
Matrix inverse(const Matrix& A);

/* Rows spanning {v : v*A = 0}. */
Matrix left_kernel_rows(const Matrix& A);

/* Some X with X*A = B, or nullopt. */
std::optional<Matrix> solve_left(const Matrix& A, const Matrix& B);

/* RREF rows of the row space (zero rows dropped). */
Matrix row_space_basis(const Matrix& A);

/* Unit vectors at the non-pivot columns of RREF(A): a deterministic
 * complement of the row space of A inside k^cols. */
Matrix row_space_complement(const Matrix& A);

/* True iff v (1 x n) lies in the row space of A. */
bool in_row_space(const Matrix& A, const Matrix& v);

/* --- sparse vector helpers (SpRow doubles as a coordinate vector) --- */

inline SpRow sp_scaled(const Field& F, const SpRow& v, const Scalar& c) {
    SpRow out;
    if (c.is_zero()) return out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) out.push_back({i, F.mul(x, c)});
    return out;
}

inline void sp_axpy(const Field& F, SpRow& acc, const SpRow& v, const Scalar& c) {
    if (c.is_zero() || v.empty()) return;
    SpRow out;
    out.reserve(acc.size() + v.size());
    auto a = acc.begin(), ae = acc.end();
    auto b = v.begin(), be = v.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == ae || b->first < a->first) {
            Scalar s = F.mul(b->second, c);
            if (!s.is_zero()) out.push_back({b->first, s});
            ++b;
        } else {
            Scalar s = F.add(a->second, F.mul(b->second, c));
            if (!s.is_zero()) out.push_back({a->first, s});
            ++a; ++b;
        }
    }
    acc = std::move(out);
}

inline Matrix sp_rows_to_matrix(const Field& F, const std::vector<SpRow>& rows, std::size_t cols) {
    Matrix m(F, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, v] : rows[i]) m.set(i, j, v);
    return m;
}

} // namespace diagext

#endif
