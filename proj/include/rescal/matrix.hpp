#pragma once

// Dense exact matrices over a field context, with fraction-free (Bareiss)
// determinants and kernel/rank/solve via exact Gaussian elimination.
// Sizes are desk scale; everything is computed exactly, nothing is pivoted
// for magnitude.

#include <optional>
#include <stdexcept>
#include <vector>

#include "rescal/scalar.hpp"

namespace rescal {

template <class F>
class Matrix {
  public:
    using Elem = typename F::Elem;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols),
          entries_(rows * cols, field.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& field() const { return field_; }

    Elem& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Elem& at(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix: shape");
        Matrix out(field_, rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (field_.is_zero(at(i, k))) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out.at(i, j) = out.at(i, j) + at(i, k) * rhs.at(k, j);
            }
        return out;
    }

    /// Fraction-free determinant (Bareiss). Every intermediate division is
    /// exact, so integer input stays integer throughout.
    Elem det() const {
        if (rows_ != cols_)
            throw std::invalid_argument("det: non-square matrix");
        const std::size_t n = rows_;
        if (n == 0) return field_.one();
        Matrix m(*this);
        Elem prev = field_.one();
        bool negate = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (field_.is_zero(m.at(k, k))) {
                std::size_t s = k + 1;
                while (s < n && field_.is_zero(m.at(s, k))) ++s;
                if (s == n) return field_.zero();
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(m.at(k, j), m.at(s, j));
                negate = !negate;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    m.at(i, j) = (m.at(i, j) * m.at(k, k) -
                                  m.at(i, k) * m.at(k, j)) /
                                 prev;
            prev = m.at(k, k);
        }
        Elem d = m.at(n - 1, n - 1);
        return negate ? field_.neg(d) : d;
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && field_.is_zero(at(sel, col))) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap(at(row, j), at(sel, j));
            Elem inv = field_.inv(at(row, col));
            for (std::size_t j = col; j < cols_; ++j)
                at(row, j) = at(row, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || field_.is_zero(at(i, col))) continue;
                Elem f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    at(i, j) = at(i, j) - f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m(*this);
        return m.rref().size();
    }

    /// Basis of the right kernel {v : M v = 0}. The basis vectors are
    /// linearly independent and there are cols() - rank() of them.
    std::vector<std::vector<Elem>> kernel() const {
        Matrix m(*this);
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<Elem>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<Elem> v(cols_, field_.zero());
            v[f] = field_.one();
            for (std::size_t i = 0; i < pivots.size(); ++i)
                v[pivots[i]] = field_.neg(m.at(i, f));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// One exact solution of M x = b (free variables set to zero), or
    /// nullopt if the system is inconsistent. Deterministic.
    std::optional<std::vector<Elem>> solve(const std::vector<Elem>& b) const {
        if (b.size() != rows_) throw std::invalid_argument("solve: shape");
        Matrix aug(field_, rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_)
            return std::nullopt;  // pivot in the constant column
        std::vector<Elem> x(cols_, field_.zero());
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = aug.at(i, cols_);
        return x;
    }

    std::vector<Elem> apply(const std::vector<Elem>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("apply: shape");
        std::vector<Elem> out(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] = out[i] + at(i, j) * v[j];
        return out;
    }

  private:
    F field_;
    std::size_t rows_, cols_;
    std::vector<Elem> entries_;
};

/// Exact rank of a sparse matrix given as rows of (column -> value) maps.
/// Pivots on the shortest remaining row; intended for the very sparse
/// graded pieces of polynomial multiplication maps.
template <class F>
std::size_t sparse_rank(const F& field,
                        std::vector<std::map<std::size_t, typename F::Elem>>
                            rows) {
    std::size_t rank = 0;
    std::vector<bool> used(rows.size(), false);
    while (true) {
        std::size_t best = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (used[i] || rows[i].empty()) continue;
            if (best == rows.size() || rows[i].size() < rows[best].size())
                best = i;
        }
        if (best == rows.size()) break;
        used[best] = true;
        ++rank;
        const std::size_t pivot_col = rows[best].begin()->first;
        const typename F::Elem pivot_val = rows[best].begin()->second;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (used[i] || rows[i].empty()) continue;
            auto it = rows[i].find(pivot_col);
            if (it == rows[i].end()) continue;
            // materialize: lazy expression templates must not outlive
            // the entries they reference
            const typename F::Elem factor = it->second / pivot_val;
            for (const auto& [c, v] : rows[best]) {
                auto jt = rows[i].find(c);
                if (jt == rows[i].end()) {
                    rows[i].emplace(c, field.neg(factor * v));
                } else {
                    jt->second = jt->second - factor * v;
                    if (field.is_zero(jt->second)) rows[i].erase(jt);
                }
            }
        }
    }
    return rank;
}

}  // namespace rescal
