#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rescal/koszul.hpp"
#include "rescal/parse.hpp"
#include "rescal/residue.hpp"
#include "rescal/rng.hpp"

using namespace rescal;

namespace {

TowerPtr<QField> uv() { return make_tower(QField{}, {{}, {"u", "v"}}); }
TowerPtr<QField> uvw() {
    return make_tower(QField{}, {{}, {"u", "v", "w"}});
}

Poly<QField> P(const TowerPtr<QField>& t, const std::string& s) {
    return parse_poly(t, s);
}

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_CASE("rank-1 Koszul complex is multiplication by t in degrees 0,1") {
    auto t = uv();
    auto k = koszul_cochain<QField>({P(t, "u")});
    CHECK(k.lo() == 0);
    CHECK(k.hi() == 1);
    CHECK(k.rank(0) == 1);
    CHECK(k.rank(1) == 1);
    CHECK(k.diff(0)[0][0] == P(t, "u"));
}

TEST_CASE("Koszul ranks are binomial and K^0 = K^r = M") {
    auto t = uvw();
    std::vector<Poly<QField>> gens{P(t, "u"), P(t, "v - u"), P(t, "w^2")};
    for (std::size_t r = 1; r <= 3; ++r) {
        std::vector<Poly<QField>> g(gens.begin(),
                                    gens.begin() + static_cast<long>(r));
        for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
            auto k = koszul_cochain(g, m);
            CHECK(k.rank(0) == m);
            CHECK(k.rank(static_cast<int>(r)) == m);
            for (std::size_t i = 0; i <= r; ++i)
                CHECK(k.rank(static_cast<int>(i)) == m * binom(r, i));
        }
    }
}

TEST_CASE("r=2 differentials carry the tensor-product signs") {
    auto t = uv();
    auto k = koszul_cochain<QField>({P(t, "u"), P(t, "v")});
    REQUIRE(k.rank(1) == 2);
    // degree-1 summands sorted by subset: {1} then {2}
    CHECK(k.labels(1) == std::vector<Label>{{1}, {2}});
    CHECK(k.diff(0)[0][0] == P(t, "u"));
    CHECK(k.diff(0)[1][0] == P(t, "v"));
    CHECK(k.diff(1)[0][0] == P(t, "-v"));
    CHECK(k.diff(1)[0][1] == P(t, "u"));
}

TEST_CASE("mechanical construction matches the subset sign rule") {
    auto t = uvw();
    std::vector<Poly<QField>> gens{P(t, "u"), P(t, "v"), P(t, "w")};
    auto k = koszul_cochain(gens);
    for (int n = 0; n < 3; ++n) {
        const auto& src = k.labels(n);
        const auto& dst = k.labels(n + 1);
        auto d = k.diff(n);
        for (std::size_t b = 0; b < src.size(); ++b)
            for (std::size_t a = 0; a < dst.size(); ++a) {
                // expected entry from e_S^* to e_{S u {j}}^*:
                // (-1)^{#(elements of S below j)} t_j
                const Label& s = src[b];
                const Label& ts = dst[a];
                Label extra;
                std::set_difference(ts.begin(), ts.end(), s.begin(), s.end(),
                                    std::back_inserter(extra));
                if (extra.size() == 1 &&
                    std::includes(ts.begin(), ts.end(), s.begin(), s.end())) {
                    std::size_t j = extra[0];
                    std::size_t below = 0;
                    for (auto x : s)
                        if (x < j) ++below;
                    Poly<QField> want = gens[j - 1];
                    if (below % 2 != 0) want = -want;
                    CHECK(d[a][b] == want);
                } else {
                    CHECK(d[a][b].is_zero());
                }
            }
    }
}

TEST_CASE("change of generators: identity, scaling, and the determinant") {
    auto t = uv();

    auto u1 = change_of_generators<QField>(
        {P(t, "u"), P(t, "v")}, {P(t, "u"), P(t, "v")},
        polymat_identity(t, 2));
    CHECK(u1.is_identity());

    // r = 1: t = u * g with g = u
    auto u2 = change_of_generators<QField>({P(t, "u^2")}, {P(t, "u")},
                                           {{P(t, "u")}});
    CHECK(u2.comp(0)[0][0] == P(t, "1"));
    CHECK(u2.comp(1)[0][0] == P(t, "u"));

    // r = 2: t = (u+v, u-v) over g = (u, v)
    PolyMat<QField> m{{P(t, "1"), P(t, "1")}, {P(t, "1"), P(t, "-1")}};
    auto u3 = change_of_generators<QField>({P(t, "u + v"), P(t, "u - v")},
                                           {P(t, "u"), P(t, "v")}, m);
    CHECK(u3.comp(0)[0][0] == P(t, "1"));
    CHECK(u3.comp(2)[0][0] == P(t, "-2"));
    CHECK(u3.commutes());

    PolyMat<QField> bad{{P(t, "1"), P(t, "0")}, {P(t, "1"), P(t, "-1")}};
    CHECK_THROWS_AS(
        change_of_generators<QField>({P(t, "u + v"), P(t, "u - v")},
                                     {P(t, "u"), P(t, "v")}, bad),
        RelationMismatch);
}

TEST_CASE("change of generators is functorial along matrix products") {
    auto t = uv();
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Poly<QField>> h{P(t, "u"), P(t, "v")};
        PolyMat<QField> a{{P(t, std::to_string(rng.nonzero(-3, 3))),
                           P(t, std::to_string(rng.range(-3, 3)))},
                          {P(t, std::to_string(rng.range(-3, 3))),
                           P(t, std::to_string(rng.nonzero(-3, 3)))}};
        PolyMat<QField> b{{P(t, std::to_string(rng.nonzero(-3, 3))),
                           P(t, std::to_string(rng.range(-3, 3)))},
                          {P(t, std::to_string(rng.range(-3, 3))),
                           P(t, std::to_string(rng.nonzero(-3, 3)))}};
        auto g = polymat_apply(a, h, t);          // g_i = sum a_ij h_j
        auto tt = polymat_apply(b, g, t);         // t_i = sum b_ij g_j
        auto f1 = change_of_generators(g, h, a);  // K(h) -> K(g)
        auto f2 = change_of_generators(tt, g, b); // K(g) -> K(t)
        auto f12 = CochainMap<QField>::compose(f2, f1);
        auto direct = change_of_generators(tt, h, polymat_mul(b, a, t));
        for (int n = 0; n <= 2; ++n) CHECK(f12.comp(n) == direct.comp(n));
    }
}

TEST_CASE("stable Koszul levels and transitions") {
    auto t = uv();

    auto base = stable_koszul<QField>({P(t, "u")}, {1});
    CHECK(base.diff(0)[0][0] == P(t, "u"));

    auto tr = stable_transition<QField>({P(t, "u")}, {1}, {2});
    CHECK(tr.comp(0)[0][0] == P(t, "1"));
    CHECK(tr.comp(cech_degree(0))[0][0] == P(t, "u"));

    // transitions compose associatively
    auto t12 = stable_transition<QField>({P(t, "u"), P(t, "v")}, {1, 1},
                                         {2, 1});
    auto t23 = stable_transition<QField>({P(t, "u"), P(t, "v")}, {2, 1},
                                         {3, 2});
    auto t13 = stable_transition<QField>({P(t, "u"), P(t, "v")}, {1, 1},
                                         {3, 2});
    auto comp = CochainMap<QField>::compose(t23, t12);
    for (int n = 0; n <= 2; ++n) CHECK(comp.comp(n) == t13.comp(n));

    // the image of the top coboundary generates (t1^a1, t2^a2)
    auto lvl = stable_koszul<QField>({P(t, "u"), P(t, "v")}, {2, 3});
    auto d1 = lvl.diff(1);
    IdealSeq<QField> folded({P(t, "u^2"), P(t, "v^3")});
    for (const auto& e : d1[0]) CHECK(ideal_member(e, folded));
    IdealSeq<QField> image({d1[0][0], d1[0][1]});
    CHECK(ideal_member(P(t, "u^2"), image));
    CHECK(ideal_member(P(t, "v^3"), image));
}

TEST_CASE("graded cohomology of Koszul complexes") {
    SECTION("regular sequence (u, v): only H^2, shaped like the quotient") {
        auto t = uv();
        auto k = koszul_cochain<QField>({P(t, "u"), P(t, "v")});
        auto h = graded_cohomology(k, 6);
        for (unsigned d = 0; d <= 6; ++d) {
            CHECK(h.ranks[0][d] == 0);
            CHECK(h.ranks[1][d] == 0);
        }
        CHECK(h.ranks[2][0] == 1);
        for (unsigned d = 1; d <= 6; ++d) CHECK(h.ranks[2][d] == 0);
    }
    SECTION("single variable: H^1 is the residue field") {
        auto t = make_tower(QField{}, {{}, {"u"}});
        auto k = koszul_cochain<QField>({parse_poly(t, "u")});
        auto h = graded_cohomology(k, 4);
        CHECK(h.ranks[1][0] == 1);
        for (unsigned d = 1; d <= 4; ++d) CHECK(h.ranks[1][d] == 0);
        for (unsigned d = 0; d <= 4; ++d) CHECK(h.ranks[0][d] == 0);
    }
    SECTION("repeated generator: H^1 detects the non-regular sequence") {
        auto t = make_tower(QField{}, {{}, {"u"}});
        auto k = koszul_cochain<QField>({parse_poly(t, "u"),
                                         parse_poly(t, "u")});
        auto h = graded_cohomology(k, 4);
        std::size_t total = 0;
        for (auto r : h.ranks[1]) total += r;
        CHECK(total > 0);
    }
    SECTION("quotient grading for a non-linear sequence") {
        auto t = uv();
        auto k = koszul_cochain<QField>({P(t, "u^2"), P(t, "v")});
        auto h = graded_cohomology(k, 6);
        // R/(u^2, v) has ranks 1, 1, 0, ...
        CHECK(h.ranks[2][0] == 1);
        CHECK(h.ranks[2][1] == 1);
        for (unsigned d = 2; d <= 6; ++d) CHECK(h.ranks[2][d] == 0);
    }
    SECTION("inhomogeneous input is rejected") {
        auto t = uv();
        auto k = koszul_cochain<QField>({P(t, "u^2 - v")});
        CHECK_THROWS_AS(graded_cohomology(k, 3), NotGraded);
    }
}

TEST_CASE("lambda_t carries the sign (-1)^r") {
    auto t = uvw();
    std::vector<Poly<QField>> gens{P(t, "u"), P(t, "v"), P(t, "w")};
    for (std::size_t r = 1; r <= 3; ++r) {
        std::vector<Poly<QField>> g(gens.begin(),
                                    gens.begin() + static_cast<long>(r));
        auto sym = lambda_t(g);
        long want = (r % 2 == 0) ? 1 : -1;
        CHECK(sym.coeff == Poly<QField>::from_int(t, want));
        CHECK(sym.denoms.size() == r);
    }
}

TEST_CASE("fli_to_fraction produces unit-exponent bracket fractions") {
    auto t = uv();
    auto f1 = fli_to_fraction(P(t, "u + 1"), {P(t, "u")});
    CHECK(f1.variant == FracVariant::bracket);
    CHECK(f1.str() == "[u + 1; u^1]");

    auto f2 = fli_to_fraction(P(t, "1"), {P(t, "u"), P(t, "v")});
    CHECK(f2.denoms.size() == 2);
    CHECK(f2.numerator == P(t, "1"));

    auto f0 = fli_to_fraction(P(t, "0"), {P(t, "u")});
    CHECK(frac_is_zero(f0));
}

TEST_CASE("evaluation at one projects onto the K^0 summand") {
    auto t = uv();
    auto c = koszul_cochain<QField>({P(t, "u"), P(t, "v")}, 2);
    auto e = evaluation_at_one(c, {1, 2});
    CHECK(e.dst.lo() == 0);
    CHECK(e.dst.hi() == 0);
    CHECK(e.dst.rank(0) == 2);
    // degree-0 cochain m (x) 1 |-> m
    CHECK(e.comp(0) == polymat_identity(t, 2));
    // pure K^i summands, i >= 1, die
    CHECK(e.comps.count(1) == 0);
    CHECK(e.comps.count(2) == 0);
}

TEST_CASE("evaluations compose: collapsing both factors at once or in turn") {
    auto t = uv();
    auto c = koszul_cochain<QField>({P(t, "u"), P(t, "v")});
    REQUIRE(c.rank(0) + c.rank(1) + c.rank(2) == 4);
    auto e_t = evaluation_at_one(c, {1});
    auto e_u = evaluation_at_one(e_t.dst, {2});
    auto both = CochainMap<QField>::compose(e_u, e_t);
    auto direct = evaluation_at_one(c, {1, 2});
    for (int n = 0; n <= 2; ++n) CHECK(both.comp(n) == direct.comp(n));
}

TEST_CASE("theta interchange is a cochain isomorphism with pinned signs") {
    auto t = uv();
    auto a = koszul_cochain<QField>({P(t, "u")});
    auto b = koszul_cochain<QField>({P(t, "v")});
    for (int i : {0, 1, 2})
        for (int j : {0, 1, 2}) {
            auto th = theta_interchange(a, b, i, j);
            CHECK(th.commutes());
        }
}

TEST_CASE("shift-and-tensor translation is the identity on entries") {
    // M[e] (x) N[d] -> (M (x) N)[d + e] as the composite of theta^{e0},
    // theta^{0d}[e], and the shift identification: all identity maps.
    auto t = uv();
    for (int d = 1; d <= 3; ++d)
        for (int e = 1; e <= 3; ++e) {
            auto m = FreeComplex<QField>::free_module(t, 2);
            auto n = FreeComplex<QField>::free_module(t, 3);
            auto step1 = theta_interchange(m, n.shifted(d), e, 0);
            auto step2 = theta_interchange(m, n, 0, d).shifted(e);
            auto total = CochainMap<QField>::compose(step2, step1);
            CHECK(total.is_identity());
            CHECK(total.src.rank(-(d + e)) == 6);
        }
}

TEST_CASE("Koszul data is compatible with base change of the coefficients") {
    auto src = make_tower(QField{}, {{"s"}, {"u", "v"}});
    auto dst = make_tower(QField{}, {{}, {"u", "v"}});
    auto sigma = make_base_change<QField>(
        src, dst, 0, {{"s", parse_poly(dst, "3")}});

    std::vector<Poly<QField>> t_gens{parse_poly(src, "u^2 - s*v"),
                                     parse_poly(src, "v^3 + s")};
    auto k = koszul_cochain(t_gens);
    std::vector<Poly<QField>> t_img;
    for (const auto& g : t_gens)
        t_img.push_back(g.substitute(dst, sigma.images));
    auto mapped = k.mapped(dst, sigma.images);
    auto rebuilt = koszul_cochain(t_img);
    for (int n = 0; n <= 2; ++n) CHECK(mapped.diff(n) == rebuilt.diff(n));

    // the change-of-generators map commutes with the coefficient map
    PolyMat<QField> u{{parse_poly(src, "1"), parse_poly(src, "s")},
                      {parse_poly(src, "0"), parse_poly(src, "1")}};
    std::vector<Poly<QField>> g_gens = polymat_apply(u, t_gens, src);
    auto cog = change_of_generators(g_gens, t_gens, u);
    std::vector<Poly<QField>> g_img;
    for (const auto& g : g_gens)
        g_img.push_back(g.substitute(dst, sigma.images));
    PolyMat<QField> u_img;
    for (const auto& row : u) {
        std::vector<Poly<QField>> r;
        for (const auto& e : row) r.push_back(e.substitute(dst, sigma.images));
        u_img.push_back(std::move(r));
    }
    auto cog_img = change_of_generators(g_img, t_img, u_img);
    for (int n = 0; n <= 2; ++n) {
        auto m = cog.comp(n);
        PolyMat<QField> m_img;
        for (const auto& row : m) {
            std::vector<Poly<QField>> r;
            for (const auto& e : row)
                r.push_back(e.substitute(dst, sigma.images));
            m_img.push_back(std::move(r));
        }
        CHECK(m_img == cog_img.comp(n));
    }
}

TEST_CASE("complex construction rejects d o d != 0") {
    auto t = uv();
    PolyMat<QField> d0{{P(t, "u")}};
    PolyMat<QField> d1{{P(t, "u")}};
    CHECK_THROWS_AS(FreeComplex<QField>(t, 0, {1, 1, 1}, {d0, d1}),
                    std::logic_error);
}
