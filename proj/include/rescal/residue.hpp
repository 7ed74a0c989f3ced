#pragma once

// Top relative differential forms and the multivariate residue algorithm:
// fold denominator exponents into the generators, find a monic polynomial
// in each wedge variable inside the denominator ideal, trade the
// denominators for those monic targets at the cost of the relation
// determinant, then peel one variable at a time with the univariate
// residue. Traces, the duality pairing, and base change ride on top.
//
// Normalization: res[du_1 ^ ... ^ du_d; u_1, ..., u_d] = 1, and the
// univariate residue is the coefficient of u^{deg p - 1} in the monic
// remainder. The i-th wedge factor pairs with the i-th denominator;
// permuting denominators multiplies the result by the permutation sign.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rescal/genfrac.hpp"
#include "rescal/ideal.hpp"
#include "rescal/polymat.hpp"

namespace rescal {

/// g * dw_{i_1} ^ ... ^ dw_{i_k} over the tower levels (base_block, level];
/// canonical storage keeps the factors ascending, folding the sorting
/// permutation's sign into the coefficient. A repeated factor is the zero
/// form.
template <class F>
struct TopForm {
    TowerPtr<F> tower;
    std::size_t base_block;
    std::size_t level;
    Poly<F> coeff;
    std::vector<std::size_t> factors;  // variable indices, ascending

    std::string str() const {
        std::string s = "(" + coeff.str() + ")";
        for (auto v : factors) s += " d" + tower->var_name(v);
        return s;
    }
};

template <class F>
TopForm<F> make_topform(std::size_t base_block, std::size_t level,
                        Poly<F> coeff, std::vector<std::size_t> factors) {
    auto tw = coeff.tower();
    for (auto v : factors) {
        std::size_t b = tw->block_of(v);
        if (b <= base_block || b > level)
            throw std::invalid_argument(
                "TopForm: factor d" + tw->var_name(v) +
                " outside the levels above the base");
    }
    // sort with sign; a repeated factor kills the form
    long swaps = 0;
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
        for (std::size_t j = 0; j + 1 < factors.size() - i; ++j)
            if (factors[j] > factors[j + 1]) {
                std::swap(factors[j], factors[j + 1]);
                ++swaps;
            }
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
        if (factors[i] == factors[i + 1])
            return TopForm<F>{tw, base_block, level, Poly<F>::zero(tw),
                              std::move(factors)};
    if (swaps % 2 != 0) coeff = -coeff;
    return TopForm<F>{tw, base_block, level, std::move(coeff),
                      std::move(factors)};
}

template <class F>
struct ResidueInstance {
    TowerPtr<F> tower;
    std::size_t base_block;  // blocks 0..base_block form the base ring A
    TopForm<F> form;
    std::vector<std::pair<Poly<F>, unsigned>> denoms;
};

struct ResidueOptions {
    FindMonicOptions monic;
};

/// Coefficient of u_1^{a_1 - 1} ... u_d^{a_d - 1} in g: the residue with
/// pure variable-power denominators, used as the normalization oracle.
template <class F>
Poly<F> residue_monomial(const Poly<F>& g, const std::vector<std::size_t>& vars,
                         const std::vector<unsigned>& alpha) {
    Poly<F> out = g;
    for (std::size_t i = 0; i < vars.size(); ++i)
        out = out.coeff_of(vars[i], alpha[i] - 1);
    return out;
}

namespace detail {

/// Remainder of h modulo p, monic of positive degree in the variable w;
/// plain univariate division with coefficients in the remaining variables.
template <class F>
Poly<F> reduce_monic_univariate(Poly<F> h, const Poly<F>& p, std::size_t w) {
    long d = p.degree_in(w);
    while (h.degree_in(w) >= d) {
        auto k = static_cast<std::uint32_t>(h.degree_in(w));
        Poly<F> lead = h.coeff_of(w, k);
        Mono shift(h.tower()->n_vars(), 0);
        shift[w] = k - static_cast<std::uint32_t>(d);
        h = h - lead * Poly<F>::monomial(h.tower(), shift,
                                         h.tower()->field().one()) *
                    p;
    }
    return h;
}

}  // namespace detail

/// Coefficient of u^{deg p - 1} in the remainder of h modulo the monic
/// polynomial p(u); the base case of the reduction.
template <class F>
Poly<F> residue_univariate(const Poly<F>& h, const Poly<F>& p,
                           std::size_t var) {
    long d = p.degree_in(var);
    if (d < 1)
        throw std::invalid_argument("residue_univariate: constant modulus");
    auto rem = detail::reduce_monic_univariate(h, p, var);
    return rem.coeff_of(var, static_cast<std::uint32_t>(d - 1));
}

/// The residue of a top form against a denominator sequence, as an exact
/// element of the base ring.
template <class F>
Poly<F> residue(const ResidueInstance<F>& inst, ResidueOptions opts = {}) {
    const auto& tw = inst.tower;
    const auto& form = inst.form;
    const std::size_t n = inst.denoms.size();
    auto fiber_vars = tw->vars_in_blocks(inst.base_block + 1, form.level);
    if (form.factors.size() != fiber_vars.size())
        throw std::invalid_argument(
            "residue: form is not a top form for its level");
    if (n != form.factors.size())
        throw std::invalid_argument(
            "residue: need one denominator per wedge factor");
    if (form.coeff.is_zero()) return Poly<F>::zero(tw);
    if (n == 0) return form.coeff;

    // fold exponents into the generators
    std::vector<Poly<F>> folded;
    for (const auto& [p, a] : inst.denoms) folded.push_back(p.pow(a));
    for (const auto& p : folded)
        for (std::size_t b = form.level + 1; b < tw->n_blocks(); ++b)
            for (auto v : tw->block_vars(b))
                if (p.uses_var(v))
                    throw std::invalid_argument(
                        "residue: denominator uses variables above the "
                        "form's level");
    IdealSeq<F> ideal(folded);

    // a monic target in each wedge variable, and the relation determinant
    PolyMat<F> u;
    std::vector<Poly<F>> targets;
    for (auto w : form.factors) {
        Poly<F> p = find_monic_over(ideal, w, inst.base_block + 1, form.level,
                                    opts.monic);
        u.push_back(ideal.express_in_generators(p));
        targets.push_back(std::move(p));
    }
    Poly<F> h = form.coeff * polymat_det(u, tw);

    // peel variables from the inside out (first factor first)
    for (std::size_t i = 0; i < n; ++i)
        h = residue_univariate(h, targets[i], form.factors[i]);

    for (std::size_t b = inst.base_block + 1; b < tw->n_blocks(); ++b)
        for (auto v : tw->block_vars(b))
            if (h.uses_var(v))
                throw std::logic_error(
                    "residue: result failed to land in the base ring");
    return h;
}

/// tau_{B/A}(b nu (x) 1/t): the trace of the finite flat algebra cut out
/// by t, defined through the residue identity.
template <class F>
Poly<F> trace_tau(const std::vector<std::pair<Poly<F>, unsigned>>& denoms,
                  const TopForm<F>& nu, const Poly<F>& b,
                  std::size_t base_block, ResidueOptions opts = {}) {
    TopForm<F> scaled = nu;
    scaled.coeff = scaled.coeff * b;
    return residue(ResidueInstance<F>{nu.tower, base_block, scaled, denoms},
                   opts);
}

template <class F>
struct DualityReport {
    bool perfect;
    PolyMat<F> pairing;              // rows/cols follow the monomial basis
    std::vector<Poly<F>> basis;      // staircase monomials of B over A
    Poly<F> determinant;
};

/// The pairing B x omega -> A, (b, c nu_0) |-> tau(b c nu_0 (x) 1/t), on
/// the staircase basis of B = R/(t); perfect iff its determinant is a
/// unit of A.
template <class F>
DualityReport<F> duality_pairing_perfect(
    const std::vector<std::pair<Poly<F>, unsigned>>& denoms,
    std::size_t base_block, std::size_t level, ResidueOptions opts = {}) {
    if (denoms.empty())
        throw std::invalid_argument("duality_pairing_perfect: no denominators");
    auto tw = denoms[0].first.tower();
    std::vector<Poly<F>> folded;
    for (const auto& [p, a] : denoms) folded.push_back(p.pow(a));
    IdealSeq<F> ideal(folded);
    auto fiber_vars = tw->vars_in_blocks(base_block + 1, level);
    auto stairs = detail::fiber_staircase(tw, ideal.groebner(), fiber_vars);
    if (!stairs)
        throw NotFiniteOverBase(
            tw->var_name(fiber_vars.empty() ? 0 : fiber_vars[0]), true,
            "duality_pairing_perfect: quotient not module-finite over the "
            "base");
    std::vector<Poly<F>> basis;
    for (const auto& m : *stairs)
        basis.push_back(Poly<F>::monomial(tw, m, tw->field().one()));
    TopForm<F> omega0 =
        make_topform(base_block, level, Poly<F>::from_int(tw, 1), fiber_vars);
    const std::size_t nn = basis.size();
    PolyMat<F> pairing(nn, std::vector<Poly<F>>(nn, Poly<F>::zero(tw)));
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j)
            pairing[i][j] =
                trace_tau(denoms, omega0, basis[i] * basis[j], base_block,
                          opts);
    Poly<F> det = polymat_det(pairing, tw);
    // a unit of A = k[base vars] is a nonzero constant
    bool perfect = !det.is_zero() && det.is_constant();
    return DualityReport<F>{perfect, std::move(pairing), std::move(basis),
                            std::move(det)};
}

/// A ring map A -> A' on the base, described by a target tower (same
/// upper blocks over new base blocks) and images for the base variables.
template <class F>
struct BaseChange {
    TowerPtr<F> target;
    std::vector<Poly<F>> images;  // one per source tower variable
};

/// sigma sending each base variable to its image and every upper variable
/// to its namesake in the target tower.
template <class F>
BaseChange<F> make_base_change(
    const TowerPtr<F>& source, const TowerPtr<F>& target,
    std::size_t base_block,
    const std::vector<std::pair<std::string, Poly<F>>>& images) {
    std::vector<Poly<F>> full;
    for (std::size_t v = 0; v < source->n_vars(); ++v) {
        const std::string& name = source->var_name(v);
        if (source->block_of(v) <= base_block) {
            const Poly<F>* img = nullptr;
            for (const auto& [n, p] : images)
                if (n == name) img = &p;
            if (!img)
                throw std::invalid_argument(
                    "base change: no image for base variable " + name);
            full.push_back(*img);
        } else {
            full.push_back(Poly<F>::variable(target, name));
        }
    }
    return BaseChange<F>{target, std::move(full)};
}

template <class F>
ResidueInstance<F> apply_base_change(const ResidueInstance<F>& inst,
                                     const BaseChange<F>& sigma) {
    std::vector<std::size_t> factors;
    for (auto v : inst.form.factors)
        factors.push_back(
            sigma.target->var_index(inst.tower->var_name(v)));
    TopForm<F> form{sigma.target, inst.form.base_block, inst.form.level,
                    inst.form.coeff.substitute(sigma.target, sigma.images),
                    std::move(factors)};
    std::vector<std::pair<Poly<F>, unsigned>> denoms;
    for (const auto& [p, a] : inst.denoms)
        denoms.emplace_back(p.substitute(sigma.target, sigma.images), a);
    return ResidueInstance<F>{sigma.target, inst.base_block, std::move(form),
                              std::move(denoms)};
}

/// Both routes around the base-change square: sigma applied to the residue,
/// and the residue of the transported instance. The two agree; they are
/// returned as a pair for display.
template <class F>
std::pair<Poly<F>, Poly<F>> base_change_residue(const ResidueInstance<F>& inst,
                                                const BaseChange<F>& sigma,
                                                ResidueOptions opts = {}) {
    Poly<F> res_then_map =
        residue(inst, opts).substitute(sigma.target, sigma.images);
    Poly<F> map_then_res = residue(apply_base_change(inst, sigma), opts);
    return {res_then_map, map_then_res};
}

}  // namespace rescal
