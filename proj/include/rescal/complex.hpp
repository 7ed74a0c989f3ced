#pragma once

// Bounded cochain complexes of free modules with polynomial differentials.
// Tensor products follow the Koszul rule d(a (x) b) = da (x) b +
// (-1)^{deg a} a (x) db; a shift by k multiplies differentials by (-1)^k.
// Summands can carry labels (index subsets, for Koszul complexes) and
// internal-degree shifts (for graded rank computations).
//
// d o d = 0 is checked symbolically whenever a complex is assembled.

#include <map>
#include <optional>
#include <vector>

#include "rescal/exceptions.hpp"
#include "rescal/polymat.hpp"

namespace rescal {

using Label = std::vector<std::size_t>;  // sorted generator-index subset

template <class F>
class FreeComplex {
  public:
    FreeComplex(TowerPtr<F> tower, int lo, std::vector<std::size_t> ranks,
                std::vector<PolyMat<F>> diffs)
        : tower_(std::move(tower)), lo_(lo), ranks_(std::move(ranks)),
          diffs_(std::move(diffs)) {
        if (ranks_.empty())
            throw std::invalid_argument("FreeComplex: empty degree range");
        if (diffs_.size() + 1 != ranks_.size())
            throw std::invalid_argument("FreeComplex: diff count mismatch");
        validate();
    }

    static FreeComplex free_module(TowerPtr<F> t, std::size_t rank) {
        FreeComplex c(t, 0, {rank}, {});
        c.labels_ = {std::vector<Label>(rank, Label{})};
        c.shifts_ = {std::vector<long>(rank, 0)};
        return c;
    }

    const TowerPtr<F>& tower() const { return tower_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }

    std::size_t rank(int n) const {
        if (n < lo() || n > hi()) return 0;
        return ranks_[static_cast<std::size_t>(n - lo_)];
    }

    /// Matrix of d^n : term(n) -> term(n+1); rows index the target summands.
    PolyMat<F> diff(int n) const {
        if (n < lo() || n >= hi())
            return PolyMat<F>(rank(n + 1),
                              std::vector<Poly<F>>(rank(n),
                                                   Poly<F>::zero(tower_)));
        return diffs_[static_cast<std::size_t>(n - lo_)];
    }

    bool has_labels() const { return labels_.has_value(); }
    const std::vector<Label>& labels(int n) const {
        return (*labels_)[static_cast<std::size_t>(n - lo_)];
    }
    void set_labels(std::vector<std::vector<Label>> l) {
        labels_ = std::move(l);
    }

    bool has_shifts() const { return shifts_.has_value(); }
    const std::vector<long>& shifts(int n) const {
        return (*shifts_)[static_cast<std::size_t>(n - lo_)];
    }
    void set_shifts(std::vector<std::vector<long>> s) {
        shifts_ = std::move(s);
    }
    void clear_shifts() { shifts_.reset(); }

    /// C[k]: degree n holds C^{n+k}; differentials pick up (-1)^k.
    FreeComplex shifted(int k) const {
        std::vector<PolyMat<F>> d = diffs_;
        if (k % 2 != 0)
            for (auto& m : d)
                for (auto& row : m)
                    for (auto& e : row) e = -e;
        FreeComplex out(tower_, lo_ - k, ranks_, std::move(d));
        out.labels_ = labels_;
        out.shifts_ = shifts_;
        return out;
    }

    /// Entrywise ring map (base change of every differential).
    FreeComplex mapped(const TowerPtr<F>& target,
                       const std::vector<Poly<F>>& images) const {
        std::vector<PolyMat<F>> d;
        for (const auto& m : diffs_) {
            PolyMat<F> m2;
            for (const auto& row : m) {
                std::vector<Poly<F>> r2;
                for (const auto& e : row)
                    r2.push_back(e.substitute(target, images));
                m2.push_back(std::move(r2));
            }
            d.push_back(std::move(m2));
        }
        FreeComplex out(target, lo_, ranks_, std::move(d));
        out.labels_ = labels_;
        out.shifts_ = shifts_;
        return out;
    }

    friend bool operator==(const FreeComplex& a, const FreeComplex& b) {
        return a.lo_ == b.lo_ && a.ranks_ == b.ranks_ && a.diffs_ == b.diffs_;
    }

    /// Reorder the summands of each degree with a permutation (new position
    /// i takes old summand perm[n][i]).
    void permute_summands(const std::vector<std::vector<std::size_t>>& perm) {
        for (int n = lo(); n <= hi(); ++n) {
            const auto& p = perm[static_cast<std::size_t>(n - lo_)];
            if (n < hi()) {
                auto& d = diffs_[static_cast<std::size_t>(n - lo_)];
                for (auto& row : d) {
                    std::vector<Poly<F>> nr;
                    for (auto idx : p) nr.push_back(row[idx]);
                    row = std::move(nr);
                }
            }
            if (n > lo()) {
                auto& d = diffs_[static_cast<std::size_t>(n - lo_ - 1)];
                PolyMat<F> nd;
                for (auto idx : p) nd.push_back(d[idx]);
                d = std::move(nd);
            }
            if (labels_) {
                auto& l = (*labels_)[static_cast<std::size_t>(n - lo_)];
                std::vector<Label> nl;
                for (auto idx : p) nl.push_back(l[idx]);
                l = std::move(nl);
            }
            if (shifts_) {
                auto& s = (*shifts_)[static_cast<std::size_t>(n - lo_)];
                std::vector<long> ns;
                for (auto idx : p) ns.push_back(s[idx]);
                s = std::move(ns);
            }
        }
    }

  private:
    void validate() const {
        for (std::size_t i = 0; i + 1 < diffs_.size(); ++i) {
            auto prod = polymat_mul(diffs_[i + 1], diffs_[i], tower_);
            for (const auto& row : prod)
                for (const auto& e : row)
                    if (!e.is_zero())
                        throw std::logic_error(
                            "FreeComplex: d o d != 0 at degree " +
                            std::to_string(lo_ + static_cast<int>(i)));
        }
    }

    TowerPtr<F> tower_;
    int lo_;
    std::vector<std::size_t> ranks_;
    std::vector<PolyMat<F>> diffs_;
    std::optional<std::vector<std::vector<Label>>> labels_;
    std::optional<std::vector<std::vector<long>>> shifts_;
};

/// Degreewise map of complexes. commutes() is the symbolic check that it
/// is a map of complexes at all.
template <class F>
struct CochainMap {
    FreeComplex<F> src;
    FreeComplex<F> dst;
    std::map<int, PolyMat<F>> comps;  // degree -> rank_dst(n) x rank_src(n)

    PolyMat<F> comp(int n) const {
        auto it = comps.find(n);
        if (it != comps.end()) return it->second;
        return PolyMat<F>(dst.rank(n),
                          std::vector<Poly<F>>(src.rank(n),
                                               Poly<F>::zero(src.tower())));
    }

    bool commutes() const {
        auto t = src.tower();
        int lo = std::min(src.lo(), dst.lo());
        int hi = std::max(src.hi(), dst.hi());
        for (int n = lo; n < hi; ++n) {
            auto d_src = src.diff(n);
            auto d_dst = dst.diff(n);
            auto f_n = comp(n);
            auto f_next = comp(n + 1);
            for (std::size_t a = 0; a < dst.rank(n + 1); ++a)
                for (std::size_t b = 0; b < src.rank(n); ++b) {
                    Poly<F> acc = Poly<F>::zero(t);
                    for (std::size_t k = 0; k < dst.rank(n); ++k)
                        acc = acc + d_dst[a][k] * f_n[k][b];
                    for (std::size_t k = 0; k < src.rank(n + 1); ++k)
                        acc = acc - f_next[a][k] * d_src[k][b];
                    if (!acc.is_zero()) return false;
                }
        }
        return true;
    }

    static CochainMap compose(const CochainMap& g, const CochainMap& f) {
        CochainMap out{f.src, g.dst, {}};
        int lo = std::min(f.src.lo(), g.dst.lo());
        int hi = std::max(f.src.hi(), g.dst.hi());
        for (int n = lo; n <= hi; ++n) {
            if (out.dst.rank(n) == 0 || out.src.rank(n) == 0 ||
                f.dst.rank(n) == 0)
                continue;
            out.comps[n] =
                polymat_mul(g.comp(n), f.comp(n), f.src.tower());
        }
        return out;
    }

    static CochainMap identity(const FreeComplex<F>& c) {
        CochainMap out{c, c, {}};
        for (int n = c.lo(); n <= c.hi(); ++n)
            out.comps[n] = polymat_identity(c.tower(), c.rank(n));
        return out;
    }

    /// f[k]: the same components, reindexed; no signs.
    CochainMap shifted(int k) const {
        CochainMap out{src.shifted(k), dst.shifted(k), {}};
        for (const auto& [n, m] : comps) out.comps[n - k] = m;
        return out;
    }

    bool is_identity() const {
        const auto& field = src.tower()->field();
        for (int n = std::min(src.lo(), dst.lo());
             n <= std::max(src.hi(), dst.hi()); ++n) {
            if (src.rank(n) != dst.rank(n)) return false;
            auto m = comp(n);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m[i].size(); ++j) {
                    const auto& e = m[i][j];
                    if (i == j) {
                        if (!e.is_constant() ||
                            !field.is_one(e.constant_value()))
                            return false;
                    } else if (!e.is_zero()) {
                        return false;
                    }
                }
        }
        return true;
    }
};

namespace detail {

template <class F>
struct TensorBlock {
    int p, q;                  // degrees in the two factors
    std::size_t ra, rb;        // ranks of the factor terms
    std::size_t offset;        // first flat index of this block
};

template <class F>
std::vector<TensorBlock<F>> tensor_blocks(const FreeComplex<F>& a,
                                          const FreeComplex<F>& b, int n) {
    std::vector<TensorBlock<F>> out;
    std::size_t off = 0;
    for (int p = a.lo(); p <= a.hi(); ++p) {
        int q = n - p;
        if (b.rank(q) == 0 || a.rank(p) == 0) continue;
        out.push_back({p, q, a.rank(p), b.rank(q), off});
        off += a.rank(p) * b.rank(q);
    }
    return out;
}

}  // namespace detail

/// Tensor product of complexes with the Koszul sign rule. Labels compose
/// by disjoint union; internal shifts add.
template <class F>
FreeComplex<F> tensor(const FreeComplex<F>& a, const FreeComplex<F>& b) {
    auto t = a.tower();
    int lo = a.lo() + b.lo();
    int hi = a.hi() + b.hi();
    std::vector<std::size_t> ranks;
    std::vector<PolyMat<F>> diffs;
    for (int n = lo; n <= hi; ++n) {
        auto blocks = detail::tensor_blocks(a, b, n);
        std::size_t rank = 0;
        for (const auto& bl : blocks) rank += bl.ra * bl.rb;
        ranks.push_back(rank);
    }
    for (int n = lo; n < hi; ++n) {
        auto sblocks = detail::tensor_blocks(a, b, n);
        auto tblocks = detail::tensor_blocks(a, b, n + 1);
        std::size_t srank = ranks[static_cast<std::size_t>(n - lo)];
        std::size_t trank = ranks[static_cast<std::size_t>(n + 1 - lo)];
        PolyMat<F> d(trank, std::vector<Poly<F>>(srank, Poly<F>::zero(t)));
        auto target_of = [&](int p, int q) -> const detail::TensorBlock<F>* {
            for (const auto& bl : tblocks)
                if (bl.p == p && bl.q == q) return &bl;
            return nullptr;
        };
        for (const auto& sb : sblocks) {
            if (auto* tb = target_of(sb.p + 1, sb.q)) {
                auto da = a.diff(sb.p);
                for (std::size_t i2 = 0; i2 < tb->ra; ++i2)
                    for (std::size_t i = 0; i < sb.ra; ++i) {
                        if (da[i2][i].is_zero()) continue;
                        for (std::size_t j = 0; j < sb.rb; ++j)
                            d[tb->offset + i2 * tb->rb + j]
                             [sb.offset + i * sb.rb + j] = da[i2][i];
                    }
            }
            if (auto* tb = target_of(sb.p, sb.q + 1)) {
                auto db = b.diff(sb.q);
                bool neg = (sb.p % 2) != 0;
                for (std::size_t j2 = 0; j2 < tb->rb; ++j2)
                    for (std::size_t j = 0; j < sb.rb; ++j) {
                        if (db[j2][j].is_zero()) continue;
                        auto e = neg ? -db[j2][j] : db[j2][j];
                        for (std::size_t i = 0; i < sb.ra; ++i)
                            d[tb->offset + i * tb->rb + j2]
                             [sb.offset + i * sb.rb + j] = e;
                    }
            }
        }
        diffs.push_back(std::move(d));
    }
    FreeComplex<F> out(t, lo, std::move(ranks), std::move(diffs));
    if (a.has_labels() && b.has_labels()) {
        std::vector<std::vector<Label>> labels;
        for (int n = lo; n <= hi; ++n) {
            std::vector<Label> l;
            for (const auto& bl : detail::tensor_blocks(a, b, n))
                for (std::size_t i = 0; i < bl.ra; ++i)
                    for (std::size_t j = 0; j < bl.rb; ++j) {
                        Label u = a.labels(bl.p)[i];
                        for (auto x : b.labels(bl.q)[j]) u.push_back(x);
                        std::sort(u.begin(), u.end());
                        l.push_back(std::move(u));
                    }
            labels.push_back(std::move(l));
        }
        out.set_labels(std::move(labels));
    }
    if (a.has_shifts() && b.has_shifts()) {
        std::vector<std::vector<long>> shifts;
        for (int n = lo; n <= hi; ++n) {
            std::vector<long> s;
            for (const auto& bl : detail::tensor_blocks(a, b, n))
                for (std::size_t i = 0; i < bl.ra; ++i)
                    for (std::size_t j = 0; j < bl.rb; ++j)
                        s.push_back(a.shifts(bl.p)[i] + b.shifts(bl.q)[j]);
            shifts.push_back(std::move(s));
        }
        out.set_shifts(std::move(shifts));
    }
    return out;
}

/// The canonical interchange theta^{ij}: (A[i]) (x) (B[j]) -> (A (x) B)[i+j],
/// a (x) b |-> (-1)^{j * deg_A(a)} a (x) b. Shifting the first factor (j = 0)
/// and tensoring with a degree-0 first factor introduce no signs.
template <class F>
CochainMap<F> theta_interchange(const FreeComplex<F>& a,
                                const FreeComplex<F>& b, int i, int j) {
    auto t = a.tower();
    FreeComplex<F> src = tensor(a.shifted(i), b.shifted(j));
    FreeComplex<F> dst = tensor(a, b).shifted(i + j);
    CochainMap<F> out{src, dst, {}};
    auto sa = a.shifted(i);
    auto sb = b.shifted(j);
    const auto& field = t->field();
    for (int n = src.lo(); n <= src.hi(); ++n) {
        std::size_t r = src.rank(n);
        if (r == 0) continue;
        PolyMat<F> m(r, std::vector<Poly<F>>(r, Poly<F>::zero(t)));
        // blocks of src at degree n correspond to blocks of dst at degree
        // n + i + j under (p', q') -> (p' + i, q' + j), in the same order
        for (const auto& bl : detail::tensor_blocks(sa, sb, n)) {
            int deg_in_a = bl.p + i;  // true degree before shifting
            long sign = ((static_cast<long>(j) * deg_in_a) % 2 == 0) ? 1 : -1;
            for (std::size_t k = 0; k < bl.ra * bl.rb; ++k)
                m[bl.offset + k][bl.offset + k] =
                    Poly<F>::constant(t, field.from_int(sign));
        }
        out.comps[n] = std::move(m);
    }
    return out;
}

}  // namespace rescal
