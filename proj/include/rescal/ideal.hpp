#pragma once

// Ideals given by ordered generator sequences, with a plain Buchberger
// engine (two classical pair criteria, cached reduced basis), normal forms,
// membership, exact representation in the given generators, and monic
// generator search over the base of a tower.
//
// Cofactor representations are carried through the whole Buchberger run so
// express_in_generators can rewrite any member exactly in the original
// generators; the identity is re-checked by expansion before returning.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "rescal/exceptions.hpp"
#include "rescal/matrix.hpp"
#include "rescal/poly.hpp"
#include "rescal/polymat.hpp"

namespace rescal {

template <class F>
struct DivisionResult {
    std::vector<Poly<F>> quotients;  // one per divisor
    Poly<F> remainder;
};

/// Multivariate division of f by an ordered divisor list. Deterministic:
/// always reduces the current leading term by the first divisor whose
/// leading monomial divides it.
template <class F>
DivisionResult<F> poly_divide(const Poly<F>& f,
                              const std::vector<Poly<F>>& divisors) {
    auto t = f.tower();
    DivisionResult<F> out{std::vector<Poly<F>>(divisors.size(),
                                               Poly<F>::zero(t)),
                          Poly<F>::zero(t)};
    Poly<F> p = f;
    const auto& field = t->field();
    while (!p.is_zero()) {
        Mono lm = p.leading_mono();
        typename F::Elem lc = p.leading_coeff();
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            const auto& g = divisors[i];
            if (g.is_zero()) continue;
            if (!mono_divides(g.leading_mono(), lm)) continue;
            Mono qm = mono_div(lm, g.leading_mono());
            typename F::Elem qc = lc / g.leading_coeff();
            Poly<F> q = Poly<F>::monomial(t, qm, qc);
            out.quotients[i] = out.quotients[i] + q;
            p = p - q * g;
            reduced = true;
            break;
        }
        if (!reduced) {
            out.remainder.add_term(lm, lc);
            p.add_term(lm, field.neg(lc));
        }
    }
    return out;
}

template <class F>
struct GroebnerData {
    std::vector<Poly<F>> basis;  // reduced basis, sorted by leading monomial
    // rep[i][j]: basis[i] = sum_j rep[i][j] * gens[j]
    std::vector<std::vector<Poly<F>>> rep;
};

template <class F>
class IdealSeq {
  public:
    explicit IdealSeq(std::vector<Poly<F>> gens, std::size_t pair_budget = 20000)
        : gens_(std::move(gens)), pair_budget_(pair_budget) {
        if (gens_.empty())
            throw std::invalid_argument("IdealSeq: empty generator list");
        tower_ = gens_[0].tower();
        for (const auto& g : gens_)
            if (g.tower().get() != tower_.get())
                throw std::invalid_argument("IdealSeq: mixed towers");
    }

    const std::vector<Poly<F>>& gens() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    const TowerPtr<F>& tower() const { return tower_; }

    /// The reduced Groebner basis (with cofactor representations),
    /// computed on first use and cached. Thread-safe, write-once.
    const GroebnerData<F>& groebner() const {
        std::call_once(flag_, [this] { cache_ = compute_groebner(); });
        return cache_;
    }

    Poly<F> normal_form(const Poly<F>& f) const {
        return poly_divide(f, groebner().basis).remainder;
    }

    bool contains(const Poly<F>& f) const { return normal_form(f).is_zero(); }

    /// Coefficients (c_1,...,c_r) with f = sum_j c_j gens_j, recorded from
    /// the division algorithm and verified by expansion. Throws NotMember
    /// if f is not in the ideal.
    std::vector<Poly<F>> express_in_generators(const Poly<F>& f) const {
        const auto& gd = groebner();
        auto dv = poly_divide(f, gd.basis);
        if (!dv.remainder.is_zero())
            throw NotMember("express_in_generators: element not in ideal");
        std::vector<Poly<F>> c(gens_.size(), Poly<F>::zero(tower_));
        for (std::size_t i = 0; i < gd.basis.size(); ++i) {
            if (dv.quotients[i].is_zero()) continue;
            for (std::size_t j = 0; j < gens_.size(); ++j)
                c[j] = c[j] + dv.quotients[i] * gd.rep[i][j];
        }
        Poly<F> check = Poly<F>::zero(tower_);
        for (std::size_t j = 0; j < gens_.size(); ++j)
            check = check + c[j] * gens_[j];
        if (check != f)
            throw std::logic_error(
                "express_in_generators: expansion check failed");
        return c;
    }

  private:
    GroebnerData<F> compute_groebner() const {
        const auto& field = tower_->field();
        std::vector<Poly<F>> basis;
        std::vector<std::vector<Poly<F>>> rep;
        auto unit_rep = [&](std::size_t j) {
            std::vector<Poly<F>> r(gens_.size(), Poly<F>::zero(tower_));
            r[j] = Poly<F>::from_int(tower_, 1);
            return r;
        };
        for (std::size_t j = 0; j < gens_.size(); ++j) {
            if (gens_[j].is_zero()) continue;
            auto lcinv = field.inv(gens_[j].leading_coeff());
            basis.push_back(gens_[j].scaled(lcinv));
            auto r = unit_rep(j);
            r[j] = r[j].scaled(lcinv);
            rep.push_back(std::move(r));
        }

        using Pair = std::pair<std::size_t, std::size_t>;
        std::set<Pair> pending;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                pending.insert({i, j});

        std::size_t processed = 0;
        while (!pending.empty()) {
            if (++processed > pair_budget_)
                throw GroebnerBudgetExceeded(
                    "Buchberger pair budget exceeded (" +
                    std::to_string(pair_budget_) + " pairs)");
            // normal selection: smallest lcm degree, then smallest indices
            auto best = pending.begin();
            auto best_deg = mono_total_degree(
                mono_lcm(basis[best->first].leading_mono(),
                         basis[best->second].leading_mono()));
            for (auto it = std::next(pending.begin()); it != pending.end();
                 ++it) {
                auto d = mono_total_degree(
                    mono_lcm(basis[it->first].leading_mono(),
                             basis[it->second].leading_mono()));
                if (d < best_deg) {
                    best = it;
                    best_deg = d;
                }
            }
            auto [i, j] = *best;
            pending.erase(best);

            const Mono& lmi = basis[i].leading_mono();
            const Mono& lmj = basis[j].leading_mono();
            Mono lcm = mono_lcm(lmi, lmj);
            // product criterion
            if (lcm == mono_mul(lmi, lmj)) continue;
            // chain criterion
            bool chained = false;
            for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
                if (k == i || k == j) continue;
                if (!mono_divides(basis[k].leading_mono(), lcm)) continue;
                Pair pik{std::min(i, k), std::max(i, k)};
                Pair pjk{std::min(j, k), std::max(j, k)};
                if (!pending.count(pik) && !pending.count(pjk))
                    chained = true;
            }
            if (chained) continue;

            Poly<F> mi = Poly<F>::monomial(tower_, mono_div(lcm, lmi),
                                           field.one());
            Poly<F> mj = Poly<F>::monomial(tower_, mono_div(lcm, lmj),
                                           field.one());
            Poly<F> s = mi * basis[i] - mj * basis[j];
            std::vector<Poly<F>> srep(gens_.size(), Poly<F>::zero(tower_));
            for (std::size_t g = 0; g < gens_.size(); ++g)
                srep[g] = mi * rep[i][g] - mj * rep[j][g];

            auto dv = poly_divide(s, basis);
            if (dv.remainder.is_zero()) continue;
            for (std::size_t b = 0; b < basis.size(); ++b) {
                if (dv.quotients[b].is_zero()) continue;
                for (std::size_t g = 0; g < gens_.size(); ++g)
                    srep[g] = srep[g] - dv.quotients[b] * rep[b][g];
            }
            auto lcinv = field.inv(dv.remainder.leading_coeff());
            basis.push_back(dv.remainder.scaled(lcinv));
            for (auto& r : srep) r = r.scaled(lcinv);
            rep.push_back(std::move(srep));
            for (std::size_t k = 0; k + 1 < basis.size(); ++k)
                pending.insert({k, basis.size() - 1});
        }

        // minimalize: drop elements whose LM another LM divides
        std::vector<bool> keep(basis.size(), true);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size() && keep[i]; ++j) {
                if (i == j || !keep[j]) continue;
                if (mono_divides(basis[j].leading_mono(),
                                 basis[i].leading_mono()) &&
                    basis[j].leading_mono() != basis[i].leading_mono())
                    keep[i] = false;
                else if (basis[j].leading_mono() == basis[i].leading_mono() &&
                         j < i)
                    keep[i] = false;
            }
        std::vector<Poly<F>> min_basis;
        std::vector<std::vector<Poly<F>>> min_rep;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (keep[i]) {
                min_basis.push_back(basis[i]);
                min_rep.push_back(rep[i]);
            }

        // inter-reduce tails
        for (std::size_t i = 0; i < min_basis.size(); ++i) {
            std::vector<Poly<F>> others;
            std::vector<std::size_t> omap;
            for (std::size_t j = 0; j < min_basis.size(); ++j)
                if (j != i) {
                    others.push_back(min_basis[j]);
                    omap.push_back(j);
                }
            auto dv = poly_divide(min_basis[i], others);
            min_basis[i] = dv.remainder;
            for (std::size_t o = 0; o < others.size(); ++o) {
                if (dv.quotients[o].is_zero()) continue;
                for (std::size_t g = 0; g < gens_.size(); ++g)
                    min_rep[i][g] =
                        min_rep[i][g] - dv.quotients[o] * min_rep[omap[o]][g];
            }
        }

        // sort by leading monomial for a canonical basis order
        std::vector<std::size_t> order(min_basis.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) {
            return tower_->mono_less(min_basis[a].leading_mono(),
                                     min_basis[b].leading_mono());
        });
        GroebnerData<F> out;
        for (auto i : order) {
            out.basis.push_back(min_basis[i]);
            out.rep.push_back(min_rep[i]);
        }
        return out;
    }

    std::vector<Poly<F>> gens_;
    TowerPtr<F> tower_;
    std::size_t pair_budget_;
    mutable std::once_flag flag_;
    mutable GroebnerData<F> cache_;
};

template <class F>
Poly<F> normal_form(const Poly<F>& f, const IdealSeq<F>& ideal) {
    return ideal.normal_form(f);
}

template <class F>
bool ideal_member(const Poly<F>& f, const IdealSeq<F>& ideal) {
    return ideal.contains(f);
}

/// All monomials over the given variables with total degree exactly d,
/// in ascending term order.
template <class F>
std::vector<Mono> monomials_of_degree(const TowerPtr<F>& t,
                                      const std::vector<std::size_t>& vars,
                                      std::uint32_t d) {
    std::vector<Mono> out;
    Mono cur(t->n_vars(), 0);
    auto rec = [&](auto&& self, std::size_t idx, std::uint32_t left) -> void {
        if (idx + 1 == vars.size()) {
            cur[vars[idx]] = left;
            out.push_back(cur);
            cur[vars[idx]] = 0;
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            cur[vars[idx]] = e;
            self(self, idx + 1, left - e);
            cur[vars[idx]] = 0;
        }
    };
    if (vars.empty()) {
        if (d == 0) out.push_back(cur);
    } else {
        rec(rec, 0, d);
    }
    std::sort(out.begin(), out.end(), [&](const Mono& a, const Mono& b) {
        return t->mono_less(a, b);
    });
    return out;
}

template <class F>
std::vector<Mono> monomials_up_to_degree(const TowerPtr<F>& t,
                                         const std::vector<std::size_t>& vars,
                                         std::uint32_t d) {
    std::vector<Mono> out;
    for (std::uint32_t k = 0; k <= d; ++k) {
        auto part = monomials_of_degree(t, vars, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

struct FindMonicOptions {
    unsigned max_degree = 32;   // highest power of var searched
    unsigned min_degree = 1;    // lowest power accepted (alternate targets)
    std::optional<unsigned> coeff_degree_cap;  // base-coefficient degree cap
};

namespace detail {

/// Smallest k with some Groebner leading monomial equal to var^k, if any.
template <class F>
std::optional<std::uint32_t> pure_power_bound(const GroebnerData<F>& gd,
                                              std::size_t var) {
    std::optional<std::uint32_t> best;
    for (const auto& g : gd.basis) {
        const Mono& lm = g.leading_mono();
        bool pure = lm[var] > 0;
        for (std::size_t v = 0; v < lm.size() && pure; ++v)
            if (v != var && lm[v] > 0) pure = false;
        if (pure && (!best || lm[var] < *best)) best = lm[var];
    }
    return best;
}

/// Monomials over the fiber variables that no fiber-supported Groebner
/// leading monomial divides (the staircase of the quotient over the base).
/// Requires every fiber variable to have a pure-power leading monomial.
template <class F>
std::optional<std::vector<Mono>> fiber_staircase(
    const TowerPtr<F>& t, const GroebnerData<F>& gd,
    const std::vector<std::size_t>& fiber_vars) {
    std::vector<std::uint32_t> bounds;
    for (auto v : fiber_vars) {
        auto b = pure_power_bound(gd, v);
        if (!b) return std::nullopt;
        bounds.push_back(*b);
    }
    std::vector<Mono> fiber_lms;
    for (const auto& g : gd.basis) {
        const Mono& lm = g.leading_mono();
        bool fiber_only = true;
        for (std::size_t v = 0; v < lm.size() && fiber_only; ++v) {
            if (lm[v] == 0) continue;
            if (std::find(fiber_vars.begin(), fiber_vars.end(), v) ==
                fiber_vars.end())
                fiber_only = false;
        }
        if (fiber_only) fiber_lms.push_back(lm);
    }
    std::vector<Mono> stairs;
    Mono cur(t->n_vars(), 0);
    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == fiber_vars.size()) {
            for (const auto& lm : fiber_lms)
                if (mono_divides(lm, cur)) return;
            stairs.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e < bounds[idx]; ++e) {
            cur[fiber_vars[idx]] = e;
            self(self, idx + 1);
        }
        cur[fiber_vars[idx]] = 0;
    };
    rec(rec, 0);
    std::sort(stairs.begin(), stairs.end(),
              [&](const Mono& a, const Mono& b) { return t->mono_less(a, b); });
    return stairs;
}

template <class F>
Mono restrict_mono(const Mono& m, const std::vector<std::size_t>& vars) {
    Mono out(m.size(), 0);
    for (auto v : vars) out[v] = m[v];
    return out;
}

}  // namespace detail

/// Monic-in-var element of the ideal with coefficients in the first
/// n_base_blocks blocks, of minimal var-degree >= opts.min_degree within
/// the configured bounds. fiber_block is the highest block whose variables
/// may participate in the quotient at all.
///
/// Strategy: a relation forces a pure var-power among the Groebner leading
/// monomials, so its absence certifies non-finiteness. When the whole fiber
/// staircase is finite, the characteristic polynomial of multiplication by
/// var on the staircase span provides a guaranteed relation and a
/// coefficient-degree cap; the minimal relation is then located by exact
/// linear algebra on normal forms of coeff * var^j.
template <class F>
Poly<F> find_monic_over(const IdealSeq<F>& ideal, std::size_t var,
                        std::size_t n_base_blocks, std::size_t fiber_block,
                        FindMonicOptions opts = {}) {
    const auto& t = ideal.tower();
    const auto& field = t->field();
    const auto& gd = ideal.groebner();
    const std::string var_name = t->var_name(var);
    if (t->block_of(var) < n_base_blocks || t->block_of(var) > fiber_block)
        throw std::invalid_argument("find_monic: variable not above the base");

    if (!detail::pure_power_bound(gd, var))
        throw NotFiniteOverBase(
            var_name, true,
            "find_monic: no power of " + var_name +
                " reduces modulo the ideal (no Groebner leading monomial is "
                "a pure power of " + var_name +
                "); the quotient is not module-finite over the base");

    std::vector<std::size_t> base_vars =
        n_base_blocks == 0
            ? std::vector<std::size_t>{}
            : t->vars_in_blocks(0, n_base_blocks - 1);
    std::vector<std::size_t> fiber_vars =
        t->vars_in_blocks(n_base_blocks, fiber_block);

    // characteristic-polynomial route over a finite fiber staircase
    std::optional<Poly<F>> charpoly_relation;
    unsigned cap = opts.coeff_degree_cap.value_or(0);
    auto stairs = detail::fiber_staircase(t, gd, fiber_vars);
    if (stairs && !stairs->empty()) {
        const auto& mu = *stairs;
        std::map<Mono, std::size_t> index;
        for (std::size_t i = 0; i < mu.size(); ++i) index[mu[i]] = i;
        PolyMat<F> mult(mu.size(),
                        std::vector<Poly<F>>(mu.size(), Poly<F>::zero(t)));
        bool ok = true;
        for (std::size_t l = 0; l < mu.size() && ok; ++l) {
            Mono m = mu[l];
            m[var] += 1;
            Poly<F> nf = ideal.normal_form(
                Poly<F>::monomial(t, m, field.one()));
            for (const auto& [mono, c] : nf.terms()) {
                Mono fib = detail::restrict_mono<F>(mono, fiber_vars);
                auto it = index.find(fib);
                if (it == index.end()) {
                    ok = false;
                    break;
                }
                Mono base = mono;
                for (auto v : fiber_vars) base[v] = 0;
                mult[it->second][l] =
                    mult[it->second][l] + Poly<F>::monomial(t, base, c);
            }
        }
        if (ok) {
            auto cp = berkowitz_charpoly(mult, t);
            Poly<F> rel = Poly<F>::zero(t);
            Poly<F> x = Poly<F>::variable(t, var);
            for (std::size_t i = 0; i < cp.size(); ++i)
                rel = rel + cp[i] * x.pow(static_cast<unsigned>(
                                 cp.size() - 1 - i));
            charpoly_relation = rel;
            if (!opts.coeff_degree_cap)
                for (const auto& c : cp)
                    cap = std::max(cap, static_cast<unsigned>(
                                            std::max(0L, c.total_degree())));
        }
    }
    if (!opts.coeff_degree_cap && !charpoly_relation) cap = std::max(cap, 8u);

    // minimal-degree search by exact linear algebra on normal forms
    auto base_monos = monomials_up_to_degree(t, base_vars, cap);
    std::vector<Poly<F>> col_polys;       // NF(mu * var^j), column order
    std::vector<std::pair<std::size_t, Mono>> col_info;  // (j, mu)
    for (unsigned k = opts.min_degree; k <= opts.max_degree; ++k) {
        // extend columns with power var^{k-1}
        for (std::size_t j = col_info.empty() ? 0 : col_info.back().first + 1;
             j < k; ++j)
            for (const auto& mu : base_monos) {
                Mono m = mu;
                m[var] += static_cast<std::uint32_t>(j);
                col_polys.push_back(ideal.normal_form(
                    Poly<F>::monomial(t, m, field.one())));
                col_info.emplace_back(j, mu);
            }
        Mono vm(t->n_vars(), 0);
        vm[var] = k;
        Poly<F> target =
            ideal.normal_form(Poly<F>::monomial(t, vm, field.one()));

        std::map<Mono, std::size_t, typename Poly<F>::TermLess> rows(
            typename Poly<F>::TermLess{t.get()});
        auto row_of = [&](const Mono& m) {
            auto it = rows.find(m);
            if (it == rows.end())
                it = rows.emplace(m, rows.size()).first;
            return it->second;
        };
        for (const auto& p : col_polys)
            for (const auto& [m, c] : p.terms()) row_of(m);
        for (const auto& [m, c] : target.terms()) row_of(m);

        Matrix<F> sys(field, rows.size(), col_polys.size());
        for (std::size_t j = 0; j < col_polys.size(); ++j)
            for (const auto& [m, c] : col_polys[j].terms())
                sys.at(rows.at(m), j) = c;
        std::vector<typename F::Elem> rhs(rows.size(), field.zero());
        for (const auto& [m, c] : target.terms())
            rhs[rows.at(m)] = field.neg(c);

        auto sol = sys.solve(rhs);
        if (!sol) continue;
        Poly<F> rel = Poly<F>::monomial(t, vm, field.one());
        for (std::size_t j = 0; j < col_polys.size(); ++j) {
            if (field.is_zero((*sol)[j])) continue;
            Mono m = col_info[j].second;
            m[var] += static_cast<std::uint32_t>(col_info[j].first);
            rel = rel + Poly<F>::monomial(t, m, (*sol)[j]);
        }
        if (!ideal.contains(rel))
            throw std::logic_error("find_monic: candidate fails membership");
        return rel;
    }

    if (charpoly_relation &&
        static_cast<unsigned>(charpoly_relation->degree_in(var)) >
            opts.max_degree)
        throw NotFiniteOverBase(
            var_name, false,
            "find_monic: a monic relation for " + var_name +
                " exists at degree " +
                std::to_string(charpoly_relation->degree_in(var)) +
                " but the search bound is " + std::to_string(opts.max_degree) +
                "; raise the monic bound");
    throw NotFiniteOverBase(
        var_name, false,
        "find_monic: no monic relation for " + var_name +
            " found with degree <= " + std::to_string(opts.max_degree) +
            " and coefficient degree <= " + std::to_string(cap) +
            "; the quotient may not be module-finite over the base, or the "
            "bounds are too small");
}

/// Top-block convenience form: var must lie in the tower's top block;
/// coefficients come from the blocks strictly below it.
template <class F>
Poly<F> find_monic(const IdealSeq<F>& ideal, std::size_t var,
                   FindMonicOptions opts = {}) {
    const auto& t = ideal.tower();
    std::size_t top = t->n_blocks() - 1;
    if (t->block_of(var) != top)
        throw std::invalid_argument("find_monic: variable not in top block");
    return find_monic_over(ideal, var, top, top, opts);
}

}  // namespace rescal
