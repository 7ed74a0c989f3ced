#pragma once

// The transitivity wedge on top forms and the iterated-residue identity:
// the residue of nu ^ mu over the combined denominator list equals the
// inner residue of nu folded into mu and taken over the outer list.

#include <utility>
#include <vector>

#include "rescal/residue.hpp"

namespace rescal {

/// chi(mu (x) nu) = nu ^ pullback(mu): the factors are nu's followed by
/// mu's, then canonicalized; the coefficient is the product.
template <class F>
TopForm<F> chi_wedge(const TopForm<F>& mu, const TopForm<F>& nu) {
    for (auto v : mu.factors)
        if (std::find(nu.factors.begin(), nu.factors.end(), v) !=
            nu.factors.end())
            throw std::invalid_argument("chi_wedge: overlapping factors");
    std::vector<std::size_t> factors = nu.factors;
    factors.insert(factors.end(), mu.factors.begin(), mu.factors.end());
    return make_topform(mu.base_block, std::max(mu.level, nu.level),
                        mu.coeff * nu.coeff, std::move(factors));
}

/// A two-level residue problem over A -> R = A[u] -> S = R[v]: mu at the
/// R-level with u-denominators t^alpha, nu at the S-level with
/// v-denominators g^beta.
template <class F>
struct TowerResidueInstance {
    TowerPtr<F> tower;  // blocks: base A, then u, then v
    TopForm<F> mu;      // level 1 over base_block 0
    TopForm<F> nu;      // level 2 over base_block 1
    std::vector<std::pair<Poly<F>, unsigned>> u_denoms;  // t^alpha over R
    std::vector<std::pair<Poly<F>, unsigned>> v_denoms;  // g^beta over S
};

template <class F>
struct FubiniReport {
    Poly<F> inner;  // res[nu; g^beta], an element of R
    Poly<F> lhs;    // res[inner * mu; t^alpha]
    Poly<F> rhs;    // res[chi(mu (x) nu); g^beta, t^alpha]
    bool equal;
};

/// Checks res[res[nu; g^beta] mu; t^alpha] = res[chi(mu (x) nu);
/// g^beta, t^alpha], both sides exact. The right-hand list keeps the inner
/// block first.
template <class F>
FubiniReport<F> verify_fubini(const TowerResidueInstance<F>& inst,
                              ResidueOptions opts = {}) {
    const auto& tw = inst.tower;
    Poly<F> inner = residue(
        ResidueInstance<F>{tw, /*base_block=*/1, inst.nu, inst.v_denoms},
        opts);
    TopForm<F> folded = inst.mu;
    folded.coeff = folded.coeff * inner;
    Poly<F> lhs = residue(
        ResidueInstance<F>{tw, /*base_block=*/0, folded, inst.u_denoms},
        opts);

    TopForm<F> chi = chi_wedge(inst.mu, inst.nu);
    std::vector<std::pair<Poly<F>, unsigned>> denoms = inst.v_denoms;
    denoms.insert(denoms.end(), inst.u_denoms.begin(), inst.u_denoms.end());
    Poly<F> rhs = residue(
        ResidueInstance<F>{tw, /*base_block=*/0, chi, denoms}, opts);

    return FubiniReport<F>{std::move(inner), lhs, rhs, lhs == rhs};
}

}  // namespace rescal
