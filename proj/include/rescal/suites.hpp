#pragma once

// Randomized verification suites behind `verify`. Every instance is
// generated from (seed, index) alone, so a failure replays from its index;
// reports are deterministic byte for byte for a fixed (field, seed, count).
//
// Suites: denom, fubini, leray, signs, basechange, duality, koszul.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rescal/fubini.hpp"
#include "rescal/koszul.hpp"
#include "rescal/rng.hpp"

namespace rescal {

struct SuiteOptions {
    long degree_bound = 6;
    unsigned monic_bound = 32;
};

struct InstanceResult {
    std::size_t index;
    bool pass;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed;
    std::size_t count;
    std::vector<InstanceResult> results;

    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "denom", "fubini", "leray", "signs", "basechange", "duality",
        "koszul"};
    return names;
}

namespace suites_detail {

template <class F>
Poly<F> random_poly(const TowerPtr<F>& t, Rng& rng,
                    const std::vector<std::size_t>& vars, long maxdeg,
                    int terms) {
    Poly<F> f = Poly<F>::zero(t);
    for (int k = 0; k < terms; ++k) {
        Mono m(t->n_vars(), 0);
        long left = maxdeg;
        for (auto v : vars) {
            long e = rng.range(0, left);
            m[v] = static_cast<std::uint32_t>(e);
            left -= e;
        }
        f.add_term(m, t->field().from_int(rng.nonzero(-3, 3)));
    }
    return f;
}

inline std::string json_escaped(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

struct DetailWriter {
    std::ostringstream os;
    bool first = true;
    DetailWriter() { os << "{"; }
    void field(const std::string& k, const std::string& v) {
        if (!first) os << ", ";
        first = false;
        os << "\"" << k << "\": \"" << json_escaped(v) << "\"";
    }
    std::string done(bool pass) {
        field("status", pass ? "pass" : "FAIL");
        os << "}";
        return os.str();
    }
};

// --- determinant law -------------------------------------------------------

template <class F>
InstanceResult denom_instance(F field, std::uint64_t seed, std::size_t index,
                              const SuiteOptions& opts) {
    Rng rng = instance_rng(seed, index);
    DetailWriter dw;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::size_t r = static_cast<std::size_t>(rng.range(1, 2));
        auto t = r == 1 ? make_tower(field, {{}, {"u"}})
                        : make_tower(field, {{}, {"u", "v"}});
        std::vector<std::size_t> vars;
        for (std::size_t i = 0; i < r; ++i) vars.push_back(i);
        std::vector<Poly<F>> g;
        for (auto v : vars)
            g.push_back(Poly<F>::variable(t, v).pow(
                static_cast<unsigned>(rng.range(1, 2))));
        PolyMat<F> u(r, std::vector<Poly<F>>(r, Poly<F>::zero(t)));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Poly<F> e = Poly<F>::constant(
                    t, t->field().from_int(i == j ? rng.nonzero(-3, 3)
                                                  : rng.range(-3, 3)));
                if (rng.range(0, 2) == 0)
                    e = e + random_poly(t, rng, vars, 3, 1);
                u[i][j] = e;
            }
        auto det = polymat_det(u, t);
        if (det.is_zero()) continue;
        auto tt = polymat_apply(u, g, t);
        bool degenerate = false;
        for (const auto& p : tt)
            if (p.is_zero()) degenerate = true;
        if (degenerate) continue;
        auto h = random_poly(t, rng, vars, 3, 3);

        ResidueOptions ropts;
        ropts.monic.max_degree = opts.monic_bound;
        Poly<F> lhs = Poly<F>::zero(t);
        try {
            std::vector<std::pair<Poly<F>, unsigned>> td;
            for (const auto& p : tt) td.emplace_back(p, 1u);
            lhs = residue(
                ResidueInstance<F>{t, 0, make_topform(0, 1, h * det, vars),
                                   td},
                ropts);
        } catch (const NotFiniteOverBase&) {
            continue;  // outside the computable family; redraw
        }
        std::vector<std::pair<Poly<F>, unsigned>> gd;
        for (const auto& p : g) gd.emplace_back(p, 1u);
        auto rhs = residue(
            ResidueInstance<F>{t, 0, make_topform(0, 1, h, vars), gd}, ropts);

        dw.field("suite", "denom");
        dw.field("index", std::to_string(index));
        dw.field("nu", h.str());
        std::string gs, ts;
        for (std::size_t i = 0; i < r; ++i) {
            if (i) {
                gs += ", ";
                ts += ", ";
            }
            gs += g[i].str();
            ts += tt[i].str();
        }
        dw.field("g", gs);
        dw.field("t", ts);
        dw.field("detU", det.str());
        dw.field("lhs", lhs.str());
        dw.field("rhs", rhs.str());
        bool pass = lhs == rhs;
        return {index, pass, dw.done(pass)};
    }
    dw.field("suite", "denom");
    dw.field("index", std::to_string(index));
    dw.field("error", "could not draw a computable instance");
    return {index, false, dw.done(false)};
}

// --- iterated residues ------------------------------------------------------

template <class F>
InstanceResult fubini_instance(F field, std::uint64_t seed, std::size_t index,
                               const SuiteOptions& opts) {
    Rng rng = instance_rng(seed, index);
    auto t = make_tower(field, {{}, {"u"}, {"v"}});
    auto uvar = t->var_index("u");
    auto vvar = t->var_index("v");
    ResidueOptions ropts;
    ropts.monic.max_degree = opts.monic_bound;

    auto h = random_poly(t, rng, {uvar, vvar},
                         std::max<long>(2, opts.degree_bound), 5);
    auto mu_coeff = random_poly(t, rng, {uvar}, 2, 2);
    bool monomial_style = rng.coin();
    unsigned a = static_cast<unsigned>(rng.range(1, 3));
    unsigned b = static_cast<unsigned>(rng.range(1, 3));
    Poly<F> u_den =
        monomial_style
            ? Poly<F>::variable(t, uvar)
            : Poly<F>::variable(t, uvar).pow(
                  static_cast<unsigned>(rng.range(1, 2))) -
                  Poly<F>::constant(t, t->field().from_int(rng.range(-2, 2)));
    Poly<F> v_den =
        monomial_style
            ? Poly<F>::variable(t, vvar)
            : Poly<F>::variable(t, vvar).pow(
                  static_cast<unsigned>(rng.range(1, 2))) -
                  random_poly(t, rng, {uvar}, 2, 1);

    TowerResidueInstance<F> inst{t,
                                 make_topform(0, 1, mu_coeff, {uvar}),
                                 make_topform(1, 2, h, {vvar}),
                                 {{u_den, a}},
                                 {{v_den, b}}};
    auto rep = verify_fubini(inst, ropts);
    bool pass = rep.equal;

    DetailWriter dw;
    dw.field("suite", "fubini");
    dw.field("index", std::to_string(index));
    dw.field("mu", inst.mu.str());
    dw.field("nu", inst.nu.str());
    dw.field("u_denom", u_den.str() + "^" + std::to_string(a));
    dw.field("v_denom", v_den.str() + "^" + std::to_string(b));
    dw.field("lhs", rep.lhs.str());
    dw.field("rhs", rep.rhs.str());

    // every fifth instance also runs the truncated (power-series) variant
    if (index % 5 == 0) {
        IdealSeq<F> level({u_den.pow(a), v_den.pow(b)});
        auto inst2 = inst;
        inst2.nu = make_topform(1, 2, normal_form(h, level), {vvar});
        auto rep2 = verify_fubini(inst2, ropts);
        bool trunc_ok = rep2.equal && rep2.rhs == rep.rhs;
        dw.field("truncated_rhs", rep2.rhs.str());
        pass = pass && trunc_ok;
    }
    return {index, pass, dw.done(pass)};
}

// --- leray round trip and the cocycle chase ---------------------------------

template <class F>
InstanceResult leray_instance(F field, std::uint64_t seed, std::size_t index,
                              const SuiteOptions&) {
    Rng rng = instance_rng(seed, index);
    auto t = make_tower(field, {{}, {"u1", "u2"}, {"v1", "v2"}});
    std::size_t d = static_cast<std::size_t>(rng.range(1, 2));
    std::size_t e = static_cast<std::size_t>(rng.range(1, 2));
    std::vector<Poly<F>> u_seq, v_seq;
    for (std::size_t i = 0; i < d; ++i)
        u_seq.push_back(Poly<F>::variable(t, "u" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < e; ++i)
        v_seq.push_back(Poly<F>::variable(t, "v" + std::to_string(i + 1)));
    std::vector<std::size_t> all_vars;
    for (std::size_t v = 0; v < t->n_vars(); ++v) all_vars.push_back(v);

    auto m = random_poly(t, rng, t->vars_in_blocks(1, 1), 2, 2);
    auto n = random_poly(t, rng, all_vars, 2, 2);
    std::vector<unsigned> alpha, beta;
    for (std::size_t i = 0; i < d; ++i)
        alpha.push_back(static_cast<unsigned>(rng.range(1, 3)));
    for (std::size_t i = 0; i < e; ++i)
        beta.push_back(static_cast<unsigned>(rng.range(1, 3)));

    // round trip through the leray split
    std::vector<std::pair<Poly<F>, unsigned>> denoms;
    for (std::size_t i = 0; i < e; ++i) denoms.emplace_back(v_seq[i], beta[i]);
    for (std::size_t i = 0; i < d; ++i) denoms.emplace_back(u_seq[i], alpha[i]);
    auto frac = make_bracket(m * n, denoms);
    bool round_ok = frac_equal(leray_iso_inv(leray_iso(frac)), frac);

    // the 0-cocycle chase along both routes, with the (-1)^{d+e} sign
    std::vector<Poly<F>> combined = v_seq;
    combined.insert(combined.end(), u_seq.begin(), u_seq.end());
    std::vector<unsigned> exps = beta;
    exps.insert(exps.end(), alpha.begin(), alpha.end());
    auto east = leray_iso(khmap(m * n, combined, exps));
    auto inner = khmap(n, v_seq, beta);
    auto south = khmap_nested(m, inner, u_seq, alpha);
    bool chase_ok = nested_equal(east, south);

    std::vector<std::pair<Poly<F>, unsigned>> vden, uden;
    for (std::size_t i = 0; i < e; ++i) vden.emplace_back(v_seq[i], beta[i]);
    for (std::size_t i = 0; i < d; ++i) uden.emplace_back(u_seq[i], alpha[i]);
    Poly<F> signed_m = ((d + e) % 2 == 0) ? m : -m;
    NestedFrac<F> expected{signed_m, make_bracket(n, vden), uden,
                           FracVariant::bracket};
    bool sign_ok = nested_equal(south, expected);

    bool pass = round_ok && chase_ok && sign_ok;
    DetailWriter dw;
    dw.field("suite", "leray");
    dw.field("index", std::to_string(index));
    dw.field("fraction", frac.str());
    dw.field("round_trip", round_ok ? "ok" : "FAIL");
    dw.field("chase", chase_ok ? "ok" : "FAIL");
    dw.field("chase_sign", sign_ok ? "ok" : "FAIL");
    return {index, pass, dw.done(pass)};
}

// --- sign conventions --------------------------------------------------------

template <class F>
InstanceResult signs_instance(F field, std::uint64_t seed, std::size_t index,
                              const SuiteOptions&) {
    Rng rng = instance_rng(seed, index);
    auto t = make_tower(field, {{}, {"u", "v", "w"}});
    std::vector<Poly<F>> gens{Poly<F>::variable(t, "u"),
                              Poly<F>::variable(t, "v"),
                              Poly<F>::variable(t, "w")};
    std::size_t r = 1 + index % 3;
    std::size_t d = 1 + (index / 3) % 3;
    std::vector<std::size_t> all_vars;
    for (std::size_t v = 0; v < t->n_vars(); ++v) all_vars.push_back(v);
    auto m = random_poly(t, rng, all_vars, 3, 3);

    std::vector<Poly<F>> tr(gens.begin(), gens.begin() + static_cast<long>(r));
    std::vector<Poly<F>> td(gens.begin(), gens.begin() + static_cast<long>(d));

    // bracket vs brace: [m; t] = (-1)^r {m; t}, an involution
    std::vector<std::pair<Poly<F>, unsigned>> denr;
    for (const auto& g : tr) denr.emplace_back(g, 1u);
    auto frac = make_bracket(m, denr);
    auto conv = variant_convert(frac);
    Poly<F> want = (r % 2 == 0) ? m : -m;
    bool twogen_ok = conv.numerator == want &&
                     variant_convert(conv).numerator == frac.numerator;

    // 0-cochain map: m (x) 1/t^alpha |-> (-1)^d [m; t^alpha]
    std::vector<unsigned> alpha(d, 1u);
    auto kh = khmap(m, td, alpha);
    Poly<F> wantd = (d % 2 == 0) ? m : -m;
    bool kh_ok = kh.numerator == wantd;

    // lambda_t: 1 |-> (-1)^r 1/t
    auto lam = lambda_t(tr);
    bool lam_ok =
        lam.coeff == Poly<F>::from_int(t, (r % 2 == 0) ? 1 : -1);

    // M[e] (x) N[d] -> (M (x) N)[d+e] is the identity on entries
    auto mm = FreeComplex<F>::free_module(t, 2);
    auto nn = FreeComplex<F>::free_module(t, 1);
    auto step1 = theta_interchange(mm, nn.shifted(static_cast<int>(d)),
                                   static_cast<int>(r), 0);
    auto step2 = theta_interchange(mm, nn, 0, static_cast<int>(d))
                     .shifted(static_cast<int>(r));
    bool theta_ok =
        CochainMap<F>::compose(step2, step1).is_identity();

    bool pass = twogen_ok && kh_ok && lam_ok && theta_ok;
    DetailWriter dw;
    dw.field("suite", "signs");
    dw.field("index", std::to_string(index));
    dw.field("r", std::to_string(r));
    dw.field("d", std::to_string(d));
    dw.field("numerator", m.str());
    dw.field("bracket_brace", twogen_ok ? "ok" : "FAIL");
    dw.field("cochain_sign", kh_ok ? "ok" : "FAIL");
    dw.field("lambda_sign", lam_ok ? "ok" : "FAIL");
    dw.field("translation_identity", theta_ok ? "ok" : "FAIL");
    return {index, pass, dw.done(pass)};
}

// --- base change --------------------------------------------------------------

template <class F>
InstanceResult basechange_instance(F field, std::uint64_t seed,
                                   std::size_t index,
                                   const SuiteOptions& opts) {
    Rng rng = instance_rng(seed, index);
    bool two = rng.coin();
    auto t = two ? make_tower(field, {{"s"}, {"u", "v"}})
                 : make_tower(field, {{"s"}, {"u"}});
    auto t0 = two ? make_tower(field, {{}, {"u", "v"}})
                  : make_tower(field, {{}, {"u"}});
    auto svar = t->var_index("s");
    auto uvar = t->var_index("u");
    auto vvar = two ? t->var_index("v") : uvar;
    ResidueOptions ropts;
    ropts.monic.max_degree = opts.monic_bound;

    std::vector<std::size_t> vars =
        two ? std::vector<std::size_t>{uvar, vvar}
            : std::vector<std::size_t>{uvar};
    // monic denominators, coefficients in Q[s]
    std::vector<std::pair<Poly<F>, unsigned>> denoms;
    denoms.emplace_back(
        Poly<F>::variable(t, uvar).pow(
            static_cast<unsigned>(rng.range(1, 3))) -
            random_poly(t, rng, {svar}, 2, 1),
        static_cast<unsigned>(rng.range(1, 2)));
    if (two)
        denoms.emplace_back(
            Poly<F>::variable(t, vvar).pow(
                static_cast<unsigned>(rng.range(1, 3))) -
                random_poly(t, rng, {svar}, 2, 1),
            1u);
    std::vector<std::size_t> coeff_vars = vars;
    coeff_vars.push_back(svar);
    auto h = random_poly(t, rng, coeff_vars, 3, 3);
    ResidueInstance<F> inst{t, 0, make_topform(0, 1, h, vars), denoms};

    long c = rng.range(-5, 5);
    auto sigma = make_base_change(
        t, t0, 0,
        {{std::string("s"), Poly<F>::from_int(t0, c)}});
    auto [mapped_res, res_mapped] = base_change_residue(inst, sigma, ropts);
    bool pass = mapped_res == res_mapped;

    DetailWriter dw;
    dw.field("suite", "basechange");
    dw.field("index", std::to_string(index));
    dw.field("nu", h.str());
    std::string ds;
    for (std::size_t i = 0; i < denoms.size(); ++i) {
        if (i) ds += ", ";
        ds += denoms[i].first.str() + "^" + std::to_string(denoms[i].second);
    }
    dw.field("denoms", ds);
    dw.field("s", std::to_string(c));
    dw.field("sigma_of_res", mapped_res.str());
    dw.field("res_of_sigma", res_mapped.str());
    return {index, pass, dw.done(pass)};
}

// --- local duality avatar -------------------------------------------------------

template <class F>
InstanceResult duality_instance(F field, std::uint64_t seed, std::size_t index,
                                const SuiteOptions& opts) {
    Rng rng = instance_rng(seed, index);
    ResidueOptions ropts;
    ropts.monic.max_degree = opts.monic_bound;
    DetailWriter dw;
    dw.field("suite", "duality");
    dw.field("index", std::to_string(index));

    std::size_t family = index % 4;
    bool pass = false;
    std::string desc;
    if (family == 0) {
        // Q[u]/(u^k - c), rank k <= 3
        auto t = make_tower(field, {{}, {"u"}});
        unsigned k = static_cast<unsigned>(rng.range(1, 3));
        auto p = Poly<F>::variable(t, "u").pow(k) -
                 Poly<F>::constant(t, t->field().from_int(rng.range(-3, 3)));
        desc = p.str();
        auto rep = duality_pairing_perfect<F>({{p, 1}}, 0, 1, ropts);
        pass = rep.perfect && rep.basis.size() == k;
    } else if (family == 1) {
        // Q[s][u]/(u^k - q(s)), rank k <= 3 over A = Q[s]
        auto t = make_tower(field, {{"s"}, {"u"}});
        unsigned k = static_cast<unsigned>(rng.range(2, 3));
        auto p = Poly<F>::variable(t, "u").pow(k) -
                 random_poly(t, rng, {t->var_index("s")}, 2, 2);
        desc = p.str();
        auto rep = duality_pairing_perfect<F>({{p, 1}}, 0, 1, ropts);
        pass = rep.perfect && rep.basis.size() == k;
    } else if (family == 2) {
        // Q[u,v]/(u^2 - a, v^j - b), rank 2j <= 6
        auto t = make_tower(field, {{}, {"u", "v"}});
        unsigned j = static_cast<unsigned>(rng.range(2, 3));
        auto p1 = Poly<F>::variable(t, "u").pow(2) -
                  Poly<F>::constant(t, t->field().from_int(rng.range(-3, 3)));
        auto p2 = Poly<F>::variable(t, "v").pow(j) -
                  Poly<F>::constant(t, t->field().from_int(rng.range(-3, 3)));
        desc = p1.str() + "; " + p2.str();
        auto rep = duality_pairing_perfect<F>({{p1, 1}, {p2, 1}}, 0, 1, ropts);
        pass = rep.perfect && rep.basis.size() == 2 * j;
    } else {
        // Q[s][u]/(u^2 - s u - c): non-diagonal multiplication over Q[s]
        auto t = make_tower(field, {{"s"}, {"u"}});
        auto u = Poly<F>::variable(t, "u");
        auto s = Poly<F>::variable(t, "s");
        auto p = u.pow(2) - s * u -
                 Poly<F>::constant(t, t->field().from_int(rng.nonzero(-3, 3)));
        desc = p.str();
        auto rep = duality_pairing_perfect<F>({{p, 1}}, 0, 1, ropts);
        pass = rep.perfect && rep.basis.size() == 2;
    }
    dw.field("algebra", desc);
    return {index, pass, dw.done(pass)};
}

// --- Koszul exactness --------------------------------------------------------------

inline std::vector<long> hilbert_series_ci(const std::vector<long>& degrees,
                                           std::size_t n_vars, unsigned upto) {
    // coefficients of prod (1 - q^{d_i}) / (1 - q)^{n_vars}
    std::vector<long> c(upto + 1, 0);
    for (unsigned k = 0; k <= upto; ++k) {
        // binom(k + n - 1, n - 1)
        long b = 1;
        for (std::size_t i = 1; i < n_vars; ++i)
            b = b * static_cast<long>(k + i) / static_cast<long>(i);
        c[k] = n_vars == 0 ? (k == 0 ? 1 : 0) : b;
    }
    for (long d : degrees)
        for (long k = static_cast<long>(upto); k >= d; --k)
            c[static_cast<std::size_t>(k)] -=
                c[static_cast<std::size_t>(k - d)];
    return c;
}

template <class F>
InstanceResult koszul_instance(F field, std::uint64_t seed, std::size_t index,
                               const SuiteOptions&) {
    Rng rng = instance_rng(seed, index);
    std::size_t n = 1 + index % 3;  // variables
    std::vector<std::vector<std::string>> blocks{{}, {}};
    for (std::size_t i = 0; i < n; ++i)
        blocks[1].push_back("x" + std::to_string(i + 1));
    auto t = make_tower(field, blocks);
    std::size_t r = 1 + static_cast<std::size_t>(rng.range(
                            0, static_cast<long>(n) - 1));
    std::size_t family = (index / 3) % 2;  // 0: monomial, 1: linear forms

    std::vector<Poly<F>> gens;
    std::vector<long> degrees;
    if (family == 0) {
        for (std::size_t i = 0; i < r; ++i) {
            unsigned a = static_cast<unsigned>(rng.range(1, 3));
            gens.push_back(
                Poly<F>::variable(t, "x" + std::to_string(i + 1)).pow(a));
            degrees.push_back(a);
        }
    } else {
        // independent generic linear forms (possibly raised to a power)
        for (int attempt = 0;; ++attempt) {
            gens.clear();
            degrees.clear();
            Matrix<F> coef(field, r, n);
            for (std::size_t i = 0; i < r; ++i) {
                Poly<F> lin = Poly<F>::zero(t);
                for (std::size_t j = 0; j < n; ++j) {
                    long cij = rng.range(-2, 2);
                    coef.at(i, j) = field.from_int(cij);
                    lin = lin +
                          Poly<F>::variable(t, "x" + std::to_string(j + 1))
                              .scaled(field.from_int(cij));
                }
                unsigned a = static_cast<unsigned>(rng.range(1, 2));
                gens.push_back(lin.is_zero() ? lin : lin.pow(a));
                degrees.push_back(a);
            }
            bool ok = coef.rank() == r;
            for (const auto& g : gens)
                if (g.is_zero()) ok = false;
            if (ok || attempt > 50) break;
        }
    }

    auto h = graded_cohomology(koszul_cochain(gens), 8);
    bool lower_vanish = true;
    for (std::size_t i = 0; i < r; ++i)
        for (auto rk : h.ranks[i])
            if (rk != 0) lower_vanish = false;
    auto expect = hilbert_series_ci(degrees, n, 8);
    bool top_match = true;
    for (unsigned k = 0; k <= 8; ++k)
        if (static_cast<long>(h.ranks[r][k]) != expect[k]) top_match = false;

    bool pass = lower_vanish && top_match;
    DetailWriter dw;
    dw.field("suite", "koszul");
    dw.field("index", std::to_string(index));
    std::string gs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) gs += ", ";
        gs += gens[i].str();
    }
    dw.field("sequence", gs);
    dw.field("lower_cohomology_vanishes", lower_vanish ? "ok" : "FAIL");
    dw.field("top_matches_quotient", top_match ? "ok" : "FAIL");
    return {index, pass, dw.done(pass)};
}

}  // namespace suites_detail

template <class F>
SuiteReport run_suite(const std::string& name, F field, std::uint64_t seed,
                      std::size_t count, const SuiteOptions& opts = {},
                      std::optional<std::size_t> only_index = {}) {
    using Runner = InstanceResult (*)(F, std::uint64_t, std::size_t,
                                      const SuiteOptions&);
    Runner runner = nullptr;
    if (name == "denom") runner = &suites_detail::denom_instance<F>;
    else if (name == "fubini") runner = &suites_detail::fubini_instance<F>;
    else if (name == "leray") runner = &suites_detail::leray_instance<F>;
    else if (name == "signs") runner = &suites_detail::signs_instance<F>;
    else if (name == "basechange")
        runner = &suites_detail::basechange_instance<F>;
    else if (name == "duality") runner = &suites_detail::duality_instance<F>;
    else if (name == "koszul") runner = &suites_detail::koszul_instance<F>;
    else
        throw std::invalid_argument("unknown suite \"" + name + "\"");

    SuiteReport report{name, seed, count, {}};
    for (std::size_t i = 0; i < count; ++i) {
        if (only_index && *only_index != i) continue;
        report.results.push_back(runner(field, seed, i, opts));
    }
    return report;
}

}  // namespace rescal
