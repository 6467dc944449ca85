#pragma once

// Dense matrices with polynomial entries, plus plain scalar matrices used for
// numeric probing at random parameter values.

#include <string>
#include <vector>

#include "elimres/poly.hpp"

namespace elimres {

template <Field F>
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(std::size_t rows, std::size_t cols, const F& fill = F(0))
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    ScalarMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        ScalarMatrix m(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

/// Result of Gaussian elimination on a scalar matrix.
template <Field F>
struct Elimination {
    std::size_t rank = 0;
    F det = F(1);                       // determinant when square, else product of pivots
    std::vector<std::size_t> pivot_cols;  // in elimination order
    std::vector<std::size_t> pivot_rows;
};

/// Row-echelon elimination; pivots scan columns left to right.
template <Field F>
Elimination<F> eliminate(ScalarMatrix<F> m) {
    Elimination<F> out;
    std::size_t r = 0;
    std::vector<std::size_t> row_id(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) row_id[i] = i;
    bool negate = false;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
            std::swap(row_id[p], row_id[r]);
            negate = !negate;
        }
        F inv = F(1) / m(r, c);
        out.det *= m(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            F f = m(i, c) * inv;
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        out.pivot_cols.push_back(c);
        out.pivot_rows.push_back(row_id[r]);
        ++r;
    }
    out.rank = r;
    if (m.rows() == m.cols() && r < m.rows()) out.det = F(0);
    if (negate) out.det = -out.det;
    return out;
}

template <Field F>
F scalar_det(const ScalarMatrix<F>& m) {
    if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
    if (m.rows() == 0) return F(1);
    return eliminate(m).det;
}

template <Field F>
std::size_t scalar_rank(const ScalarMatrix<F>& m) {
    return eliminate(m).rank;
}

/// Matrix of polynomials with optional row/column labels (basis monomials).
template <Field F>
class PolyMatrix {
public:
    using Poly = MultiPoly<F>;

    PolyMatrix() = default;
    PolyMatrix(SpacePtr space, std::size_t rows, std::size_t cols)
        : space_(std::move(space)), rows_(rows), cols_(cols), a_(rows * cols, Poly(space_)) {}

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Poly& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Poly& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<std::string>& row_labels() { return row_labels_; }
    std::vector<std::string>& col_labels() { return col_labels_; }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    bool is_zero() const {
        for (const auto& e : a_)
            if (!e.is_zero()) return false;
        return true;
    }

    /// True when every entry is a constant.
    bool is_scalar() const {
        for (const auto& e : a_)
            if (!e.is_constant()) return false;
        return true;
    }

    PolyMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        PolyMatrix m(space_, rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
        if (!row_labels_.empty())
            for (auto r : rs) m.row_labels_.push_back(row_labels_[r]);
        if (!col_labels_.empty())
            for (auto c : cs) m.col_labels_.push_back(col_labels_[c]);
        return m;
    }

    PolyMatrix transpose() const {
        PolyMatrix t(space_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        t.row_labels_ = col_labels_;
        t.col_labels_ = row_labels_;
        return t;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
        PolyMatrix c(a.space_ ? a.space_ : b.space_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
            }
        c.row_labels_ = a.row_labels_;
        c.col_labels_ = b.col_labels_;
        return c;
    }

    /// Numeric matrix at a point (values per variable index of the space).
    ScalarMatrix<F> evaluate_at(const std::vector<F>& point) const {
        ScalarMatrix<F> m(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const auto& e = a_[i];
            if (e.is_zero()) continue;
            m(i / cols_, i % cols_) = e.is_constant() ? e.constant_value() : elimres::evaluate_at(e, point);
        }
        return m;
    }

    /// Scalar view; requires is_scalar().
    ScalarMatrix<F> constants() const {
        ScalarMatrix<F> m(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m(i / cols_, i % cols_) = a_[i].constant_value();
        return m;
    }

    /// Applies f to every entry.
    template <class Fn>
    PolyMatrix map(Fn f) const {
        PolyMatrix m(space_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f(a_[i]);
        m.row_labels_ = row_labels_;
        m.col_labels_ = col_labels_;
        return m;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    SpacePtr space_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Poly> a_;
    std::vector<std::string> row_labels_, col_labels_;
};

}  // namespace elimres
