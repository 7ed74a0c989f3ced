#pragma once

// Koszul cochain complexes and their calculus: change of generators,
// finite levels of the stable Koszul complex with transition maps,
// graded cohomology ranks, evaluation at 1, and the generator image of
// the fundamental local isomorphism.
//
// K(t) is assembled mechanically as the tensor product of the two-term
// complexes R --t_i--> R, so every sign is inherited from the tensor rule;
// afterwards the rank-1 summands are put in lexicographic subset order.

#include <algorithm>
#include <vector>

#include "rescal/complex.hpp"
#include "rescal/genfrac.hpp"
#include "rescal/ideal.hpp"

namespace rescal {

namespace detail {

template <class F>
FreeComplex<F> koszul_factor(const Poly<F>& t_i, std::size_t index_1based,
                             bool graded) {
    auto t = t_i.tower();
    FreeComplex<F> c(t, 0, {1, 1}, {PolyMat<F>{{t_i}}});
    c.set_labels({{Label{}}, {Label{index_1based}}});
    // the degree-1 generator sits in internal degree -deg(t_i), making the
    // differential a degree-0 map of graded modules
    if (graded)
        c.set_shifts({{0L}, {-t_i.total_degree()}});
    return c;
}

template <class F>
void sort_summands_by_label(FreeComplex<F>& c) {
    std::vector<std::vector<std::size_t>> perm;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        const auto& labels = c.labels(n);
        std::vector<std::size_t> p(labels.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
        std::stable_sort(p.begin(), p.end(), [&](auto a, auto b) {
            return labels[a] < labels[b];
        });
        perm.push_back(std::move(p));
    }
    c.permute_summands(perm);
}

}  // namespace detail

/// M (x) K(t) for a free module M of the given rank, concentrated in
/// degrees [0, r], with binom(r, i) * rank summands in degree i, labelled
/// by index subsets in lexicographic order.
template <class F>
FreeComplex<F> koszul_cochain(const std::vector<Poly<F>>& gens,
                              std::size_t module_rank = 1) {
    if (gens.empty())
        throw std::invalid_argument("koszul_cochain: empty sequence");
    auto t = gens[0].tower();
    bool graded = true;
    for (const auto& g : gens)
        if (g.is_zero() || !g.is_homogeneous()) graded = false;
    FreeComplex<F> cur = FreeComplex<F>::free_module(t, module_rank);
    if (!graded) cur.clear_shifts();  // tensor then drops shifts everywhere
    for (std::size_t i = 0; i < gens.size(); ++i)
        cur = tensor(cur, detail::koszul_factor(gens[i], i + 1, graded));
    detail::sort_summands_by_label(cur);
    return cur;
}

template <class F>
FreeComplex<F> koszul_cochain(const IdealSeq<F>& t,
                              std::size_t module_rank = 1) {
    return koszul_cochain(t.gens(), module_rank);
}

namespace detail {

template <class F>
Poly<F> minor_det(const PolyMat<F>& u, const Label& rows, const Label& cols,
                  const TowerPtr<F>& t) {
    PolyMat<F> sub;
    for (auto r : rows) {
        std::vector<Poly<F>> row;
        for (auto c : cols) row.push_back(u[r - 1][c - 1]);  // 1-based labels
        sub.push_back(std::move(row));
    }
    return polymat_det(sub, t);
}

}  // namespace detail

/// The cochain map U^*: K(g, M) -> K(t, M) induced by a relation matrix
/// t_i = sum_j U_ij g_j. U^0 is the identity and U^r is multiplication by
/// det U; commutation with the differentials is checked symbolically.
template <class F>
CochainMap<F> change_of_generators(const std::vector<Poly<F>>& t_gens,
                                   const std::vector<Poly<F>>& g_gens,
                                   const PolyMat<F>& u,
                                   std::size_t module_rank = 1) {
    if (t_gens.size() != g_gens.size())
        throw std::invalid_argument("change_of_generators: length mismatch");
    auto tw = t_gens[0].tower();
    const std::size_t r = t_gens.size();
    for (std::size_t i = 0; i < r; ++i) {
        Poly<F> sum = Poly<F>::zero(tw);
        for (std::size_t j = 0; j < r; ++j) sum = sum + u[i][j] * g_gens[j];
        if (sum != t_gens[i])
            throw RelationMismatch(
                "change_of_generators: t_" + std::to_string(i + 1) +
                " != sum_j U_ij g_j");
    }
    FreeComplex<F> kg = koszul_cochain(g_gens, module_rank);
    FreeComplex<F> kt = koszul_cochain(t_gens, module_rank);
    CochainMap<F> out{kg, kt, {}};
    for (int n = 0; n <= static_cast<int>(r); ++n) {
        const auto& tl = kt.labels(n);
        const auto& gl = kg.labels(n);
        PolyMat<F> m(tl.size(),
                     std::vector<Poly<F>>(gl.size(), Poly<F>::zero(tw)));
        for (std::size_t a = 0; a < tl.size(); ++a)
            for (std::size_t b = 0; b < gl.size(); ++b) {
                // module summands pair up only along equal module index;
                // with the lexicographic sort, equal labels appear in
                // module-index order, so positions within a label class
                // pair componentwise
                if (tl[a].size() != gl[b].size()) continue;
                std::size_t a_pos = 0, b_pos = 0;
                for (std::size_t x = 0; x < a; ++x)
                    if (tl[x] == tl[a]) ++a_pos;
                for (std::size_t x = 0; x < b; ++x)
                    if (gl[x] == gl[b]) ++b_pos;
                if (a_pos != b_pos) continue;
                m[a][b] = detail::minor_det(u, tl[a], gl[b], tw);
            }
        out.comps[n] = std::move(m);
    }
    if (!out.commutes())
        throw std::logic_error(
            "change_of_generators: induced map fails d-commutation");
    return out;
}

/// Finite level K(t^alpha) of the stable Koszul complex.
template <class F>
FreeComplex<F> stable_koszul(const std::vector<Poly<F>>& gens,
                             const std::vector<unsigned>& alpha,
                             std::size_t module_rank = 1) {
    if (gens.size() != alpha.size())
        throw std::invalid_argument("stable_koszul: exponent count");
    std::vector<Poly<F>> folded;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (alpha[i] < 1)
            throw std::invalid_argument("stable_koszul: exponents must be >= 1");
        folded.push_back(gens[i].pow(alpha[i]));
    }
    return koszul_cochain(folded, module_rank);
}

/// Transition K(t^alpha) -> K(t^beta) for beta >= alpha: on the summand
/// labelled S, multiplication by prod_{i in S} t_i^{beta_i - alpha_i}.
template <class F>
CochainMap<F> stable_transition(const std::vector<Poly<F>>& gens,
                                const std::vector<unsigned>& alpha,
                                const std::vector<unsigned>& beta,
                                std::size_t module_rank = 1) {
    auto tw = gens[0].tower();
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (beta[i] < alpha[i])
            throw std::invalid_argument("stable_transition: beta < alpha");
    auto src = stable_koszul(gens, alpha, module_rank);
    auto dst = stable_koszul(gens, beta, module_rank);
    CochainMap<F> out{src, dst, {}};
    for (int n = 0; n <= static_cast<int>(gens.size()); ++n) {
        const auto& labels = src.labels(n);
        PolyMat<F> m(labels.size(),
                     std::vector<Poly<F>>(labels.size(), Poly<F>::zero(tw)));
        for (std::size_t i = 0; i < labels.size(); ++i) {
            Poly<F> f = Poly<F>::from_int(tw, 1);
            for (auto idx : labels[i])
                f = f * gens[idx - 1].pow(beta[idx - 1] - alpha[idx - 1]);
            m[i][i] = f;
        }
        out.comps[n] = std::move(m);
    }
    if (!out.commutes())
        throw std::logic_error("stable_transition: not a cochain map");
    return out;
}

/// Cech complex position of a stable-Koszul term: C^i = K^{i+1}.
constexpr int cech_degree(int i) { return i + 1; }

/// Evaluation at 1 against the generators indexed by J (1-based): the
/// degreewise projection onto the summands whose label avoids J. Returns
/// the projection together with its target complex.
template <class F>
CochainMap<F> evaluation_at_one(const FreeComplex<F>& c,
                                const std::vector<std::size_t>& j_indices) {
    if (!c.has_labels())
        throw std::invalid_argument("evaluation_at_one: unlabelled complex");
    auto tw = c.tower();
    std::vector<std::vector<std::size_t>> keep;  // per degree, kept summands
    int first_kept = c.hi() + 1, last_kept = c.lo() - 1;
    for (int n = c.lo(); n <= c.hi(); ++n) {
        std::vector<std::size_t> k;
        const auto& labels = c.labels(n);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            bool hits = false;
            for (auto x : labels[i])
                if (std::find(j_indices.begin(), j_indices.end(), x) !=
                    j_indices.end())
                    hits = true;
            if (!hits) k.push_back(i);
        }
        if (!k.empty()) {
            first_kept = std::min(first_kept, n);
            last_kept = std::max(last_kept, n);
        }
        keep.push_back(std::move(k));
    }
    if (first_kept > last_kept)
        throw std::invalid_argument("evaluation_at_one: empty target");
    std::vector<std::size_t> ranks;
    std::vector<PolyMat<F>> diffs;
    std::vector<std::vector<Label>> labels;
    for (int n = first_kept; n <= last_kept; ++n) {
        const auto& k = keep[static_cast<std::size_t>(n - c.lo())];
        ranks.push_back(k.size());
        std::vector<Label> l;
        for (auto i : k) l.push_back(c.labels(n)[i]);
        labels.push_back(std::move(l));
        if (n < last_kept) {
            const auto& k2 = keep[static_cast<std::size_t>(n + 1 - c.lo())];
            auto d = c.diff(n);
            PolyMat<F> sub(k2.size(),
                           std::vector<Poly<F>>(k.size(), Poly<F>::zero(tw)));
            for (std::size_t a = 0; a < k2.size(); ++a)
                for (std::size_t b = 0; b < k.size(); ++b)
                    sub[a][b] = d[k2[a]][k[b]];
            diffs.push_back(std::move(sub));
        }
    }
    FreeComplex<F> target(tw, first_kept, std::move(ranks), std::move(diffs));
    target.set_labels(std::move(labels));
    CochainMap<F> out{c, target, {}};
    for (int n = first_kept; n <= last_kept; ++n) {
        const auto& k = keep[static_cast<std::size_t>(n - c.lo())];
        PolyMat<F> m(k.size(),
                     std::vector<Poly<F>>(c.rank(n), Poly<F>::zero(tw)));
        for (std::size_t a = 0; a < k.size(); ++a)
            m[a][k[a]] = Poly<F>::from_int(tw, 1);
        out.comps[n] = std::move(m);
    }
    if (!out.commutes())
        throw std::logic_error("evaluation_at_one: projection not a map");
    return out;
}

/// lambda_t(1) = (-1)^r * 1/t, the generator image of A ~ (wedge^r I/I^2)*.
/// Quasi-regularity of the sequence is the caller's hypothesis; for
/// homogeneous sequences it can be certified with graded_cohomology
/// (vanishing below the top degree).
template <class F>
NormalGenSymbol<F> lambda_t(const std::vector<Poly<F>>& gens) {
    auto tw = gens[0].tower();
    int sign = (gens.size() % 2 == 0) ? 1 : -1;
    return NormalGenSymbol<F>{Poly<F>::from_int(tw, sign), gens};
}

/// Composite of the fundamental local isomorphism with Ext^r -> H^r_I:
/// m (x) 1/t |-> [m; t_1, ..., t_r].
template <class F>
GenFrac<F> fli_to_fraction(const Poly<F>& m, const std::vector<Poly<F>>& gens) {
    std::vector<std::pair<Poly<F>, unsigned>> denoms;
    for (const auto& g : gens) denoms.emplace_back(g, 1u);
    return GenFrac<F>{m, std::move(denoms), FracVariant::bracket};
}

/// Graded ranks of the cohomology of a complex with homogeneous
/// differentials. ranks[n - lo][k] is the rank of H^n in internal degree
/// base_degree[n - lo] + k, where base_degree is the lowest summand shift
/// of the term in degree n (so the top cohomology of a Koszul complex is
/// reported in the grading of the quotient ring, starting at its generator).
template <class F>
struct GradedRanks {
    int lo;
    std::vector<long> base_degree;
    std::vector<std::vector<std::size_t>> ranks;
};

namespace detail {

template <class F>
class GradedLevels {
  public:
    explicit GradedLevels(const FreeComplex<F>& c) : c_(c) {
        for (std::size_t v = 0; v < c.tower()->n_vars(); ++v)
            all_vars_.push_back(v);
    }

    const std::vector<Mono>& monos(long d) {
        auto it = mono_cache_.find(d);
        if (it == mono_cache_.end())
            it = mono_cache_
                     .emplace(d, monomials_of_degree(
                                     c_.tower(), all_vars_,
                                     static_cast<std::uint32_t>(d)))
                     .first;
        return it->second;
    }

    std::size_t dim(int n, long m) {
        std::size_t out = 0;
        if (c_.rank(n) == 0) return 0;
        for (std::size_t b = 0; b < c_.rank(n); ++b) {
            long d = m - c_.shifts(n)[b];
            if (d >= 0) out += monos(d).size();
        }
        return out;
    }

    /// Rank of d^n on the internal-degree-m slice; memoized. Rows of the
    /// sparse system are the images of the source basis vectors.
    std::size_t rank(int n, long m) {
        if (n < c_.lo() || n >= c_.hi()) return 0;
        auto key = std::make_pair(n, m);
        auto hit = rank_cache_.find(key);
        if (hit != rank_cache_.end()) return hit->second;

        auto tw = c_.tower();
        std::size_t result = 0;
        if (dim(n, m) == 0 || dim(n + 1, m) == 0) {
            result = 0;
        } else {
            // target monomial ids, blocked by summand
            std::vector<std::map<Mono, std::size_t,
                                 typename Poly<F>::TermLess>> dst_index;
            std::size_t off = 0;
            for (std::size_t a = 0; a < c_.rank(n + 1); ++a) {
                std::map<Mono, std::size_t, typename Poly<F>::TermLess> idx(
                    typename Poly<F>::TermLess{tw.get()});
                long d = m - c_.shifts(n + 1)[a];
                if (d >= 0)
                    for (const auto& mono : monos(d)) idx.emplace(mono, off++);
                dst_index.push_back(std::move(idx));
            }
            auto dmat = c_.diff(n);
            std::vector<std::map<std::size_t, typename F::Elem>> rows;
            for (std::size_t b = 0; b < c_.rank(n); ++b) {
                long d = m - c_.shifts(n)[b];
                if (d < 0) continue;
                for (const auto& mono : monos(d)) {
                    std::map<std::size_t, typename F::Elem> row;
                    for (std::size_t a = 0; a < c_.rank(n + 1); ++a) {
                        const auto& entry = dmat[a][b];
                        for (const auto& [em, ec] : entry.terms()) {
                            auto it =
                                dst_index[a].find(mono_mul(em, mono));
                            if (it == dst_index[a].end())
                                throw std::logic_error(
                                    "graded rank: image leaves the slice");
                            row.emplace(it->second, ec);
                        }
                    }
                    rows.push_back(std::move(row));
                }
            }
            result = sparse_rank(tw->field(), std::move(rows));
        }
        rank_cache_.emplace(key, result);
        return result;
    }

  private:
    const FreeComplex<F>& c_;
    std::vector<std::size_t> all_vars_;
    std::map<long, std::vector<Mono>> mono_cache_;
    std::map<std::pair<int, long>, std::size_t> rank_cache_;
};

}  // namespace detail

template <class F>
GradedRanks<F> graded_cohomology(const FreeComplex<F>& c,
                                 unsigned max_internal_degree) {
    auto tw = c.tower();
    if (!c.has_shifts())
        throw NotGraded("graded_cohomology: complex carries no grading");
    for (int n = c.lo(); n < c.hi(); ++n) {
        auto d = c.diff(n);
        for (std::size_t a = 0; a < c.rank(n + 1); ++a)
            for (std::size_t b = 0; b < c.rank(n); ++b) {
                const auto& e = d[a][b];
                if (e.is_zero()) continue;
                long want = c.shifts(n)[b] - c.shifts(n + 1)[a];
                if (!e.is_homogeneous() || e.total_degree() != want)
                    throw NotGraded(
                        "graded_cohomology: differential entry at degree " +
                        std::to_string(n) + " is not homogeneous of shift " +
                        std::to_string(want));
            }
    }
    GradedRanks<F> out;
    out.lo = c.lo();
    detail::GradedLevels<F> levels(c);
    for (int n = c.lo(); n <= c.hi(); ++n) {
        long base = 0;
        if (c.rank(n) > 0) {
            const auto& sh = c.shifts(n);
            base = *std::min_element(sh.begin(), sh.end());
        }
        out.base_degree.push_back(base);
        std::vector<std::size_t> ranks;
        for (unsigned k = 0; k <= max_internal_degree; ++k) {
            long m = base + static_cast<long>(k);
            ranks.push_back(levels.dim(n, m) - levels.rank(n, m) -
                            levels.rank(n - 1, m));
        }
        out.ranks.push_back(std::move(ranks));
    }
    return out;
}

}  // namespace rescal
