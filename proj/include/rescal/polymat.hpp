#pragma once

// Small dense matrices with polynomial entries. Determinants and
// characteristic polynomials use the Berkowitz algorithm, which is
// division-free and therefore exact over the polynomial ring itself.

#include <vector>

#include "rescal/poly.hpp"

namespace rescal {

template <class F>
using PolyMat = std::vector<std::vector<Poly<F>>>;

template <class F>
PolyMat<F> polymat_identity(const TowerPtr<F>& t, std::size_t n) {
    PolyMat<F> m(n, std::vector<Poly<F>>(n, Poly<F>::zero(t)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Poly<F>::from_int(t, 1);
    return m;
}

template <class F>
PolyMat<F> polymat_mul(const PolyMat<F>& a, const PolyMat<F>& b,
                       const TowerPtr<F>& t) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    PolyMat<F> out(n, std::vector<Poly<F>>(m, Poly<F>::zero(t)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                out[i][j] = out[i][j] + a[i][l] * b[l][j];
        }
    return out;
}

template <class F>
std::vector<Poly<F>> polymat_apply(const PolyMat<F>& a,
                                   const std::vector<Poly<F>>& v,
                                   const TowerPtr<F>& t) {
    std::vector<Poly<F>> out(a.size(), Poly<F>::zero(t));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            out[i] = out[i] + a[i][j] * v[j];
    return out;
}

/// Coefficients of det(x I - A), leading first (so result[0] = 1 and
/// result[n] = (-1)^n det A). Berkowitz iteration over principal
/// submatrices; no divisions.
template <class F>
std::vector<Poly<F>> berkowitz_charpoly(const PolyMat<F>& a,
                                        const TowerPtr<F>& t) {
    const std::size_t n = a.size();
    std::vector<Poly<F>> v{Poly<F>::from_int(t, 1)};
    for (std::size_t i = 0; i < n; ++i) {
        // principal (i+1)x(i+1) block: M = a[0..i-1][0..i-1], R = row i,
        // C = column i, corner a[i][i]
        std::vector<Poly<F>> q;
        q.push_back(Poly<F>::from_int(t, 1));
        q.push_back(-a[i][i]);
        std::vector<Poly<F>> w(i, Poly<F>::zero(t));
        for (std::size_t j = 0; j < i; ++j) w[j] = a[j][i];
        for (std::size_t step = 0; step < i; ++step) {
            Poly<F> s = Poly<F>::zero(t);
            for (std::size_t j = 0; j < i; ++j) s = s + a[i][j] * w[j];
            q.push_back(-s);
            if (step + 1 < i) {
                std::vector<Poly<F>> w2(i, Poly<F>::zero(t));
                for (std::size_t r = 0; r < i; ++r)
                    for (std::size_t c = 0; c < i; ++c)
                        w2[r] = w2[r] + a[r][c] * w[c];
                w = std::move(w2);
            }
        }
        std::vector<Poly<F>> v2(i + 2, Poly<F>::zero(t));
        for (std::size_t x = 0; x < q.size(); ++x)
            for (std::size_t y = 0; y < v.size(); ++y)
                if (x + y < v2.size()) v2[x + y] = v2[x + y] + q[x] * v[y];
        v = std::move(v2);
    }
    return v;
}

template <class F>
Poly<F> polymat_det(const PolyMat<F>& a, const TowerPtr<F>& t) {
    const std::size_t n = a.size();
    if (n == 0) return Poly<F>::from_int(t, 1);
    auto cp = berkowitz_charpoly(a, t);
    Poly<F> d = cp[n];
    return (n % 2) ? -d : d;
}

}  // namespace rescal
