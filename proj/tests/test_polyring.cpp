#include <catch2/catch_amalgamated.hpp>

#include "rescal/ideal.hpp"
#include "rescal/polymat.hpp"
#include "rescal/parse.hpp"
#include "rescal/poly.hpp"
#include "rescal/rng.hpp"

#include <thread>

using namespace rescal;

namespace {

TowerPtr<QField> su_tower() {
    return make_tower(QField{}, {{"s"}, {"u"}});
}
TowerPtr<QField> uv_tower() {
    return make_tower(QField{}, {{}, {"u", "v"}});
}

Poly<QField> P(const TowerPtr<QField>& t, const std::string& s) {
    return parse_poly(t, s);
}

}  // namespace

TEST_CASE("term order is block-major lex with the top block most significant") {
    auto t = su_tower();
    auto f = P(t, "u + s^5");
    CHECK(f.leading_mono()[t->var_index("u")] == 1);
    auto g = P(t, "u*s + u^2");
    CHECK(g.leading_mono()[t->var_index("u")] == 2);

    auto tv = uv_tower();
    // within a block, earlier variables are more significant
    auto h = P(tv, "v^3 + u");
    CHECK(h.leading_mono()[tv->var_index("u")] == 1);
}

TEST_CASE("parser handles the shared expression grammar") {
    auto t = su_tower();
    CHECK(P(t, "u^2 - s") == P(t, " u ^ 2 + (0 - 1) * s "));
    CHECK(P(t, "(u + s)^2") == P(t, "u^2 + 2*u*s + s^2"));
    CHECK(P(t, "-3*u").str() == "-3*u");
    CHECK_THROWS_AS(P(t, "u*"), ParseError);
    CHECK_THROWS_AS(P(t, "w + 1"), ParseError);
    CHECK_THROWS_AS(P(t, "u^-1"), ParseError);
    CHECK_THROWS_AS(P(t, "u 2"), ParseError);
}

TEST_CASE("canonical printing round-trips through the parser") {
    auto t = uv_tower();
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Poly<QField> f = Poly<QField>::zero(t);
        for (int k = 0; k < 5; ++k) {
            Mono m(t->n_vars(), 0);
            m[t->var_index("u")] = static_cast<std::uint32_t>(rng.range(0, 4));
            m[t->var_index("v")] = static_cast<std::uint32_t>(rng.range(0, 4));
            f.add_term(m, t->field().from_fraction(rng.range(-6, 6),
                                                   rng.range(1, 4)));
        }
        CHECK(P(t, f.str()) == f);
    }
}

TEST_CASE("normal form examples") {
    auto t = su_tower();
    IdealSeq<QField> iu({P(t, "u")});
    CHECK(normal_form(P(t, "u^2"), iu).is_zero());

    IdealSeq<QField> ius({P(t, "u^2 - s")});
    CHECK(normal_form(P(t, "u^2"), ius) == P(t, "s"));
    CHECK(normal_form(P(t, "u + s"), ius) == P(t, "u + s"));
}

TEST_CASE("ideal membership examples") {
    auto t = su_tower();
    IdealSeq<QField> iu({P(t, "u")});
    CHECK(ideal_member(P(t, "u"), iu));
    CHECK(!ideal_member(P(t, "1"), iu));

    auto tv = uv_tower();
    IdealSeq<QField> ivv({P(tv, "u^2 + v"), P(tv, "v")});
    CHECK(ideal_member(P(tv, "u^2"), ivv));
}

TEST_CASE("express_in_generators examples, verified by expansion") {
    auto t = su_tower();
    IdealSeq<QField> iu({P(t, "u")});
    auto c1 = iu.express_in_generators(P(t, "u^2"));
    REQUIRE(c1.size() == 1);
    CHECK(c1[0] == P(t, "u"));

    auto tv = uv_tower();
    IdealSeq<QField> ivv({P(tv, "u^2 + v"), P(tv, "v")});
    auto c2 = ivv.express_in_generators(P(tv, "u^2"));
    REQUIRE(c2.size() == 2);
    CHECK(c2[0] == P(tv, "1"));
    CHECK(c2[1] == P(tv, "-1"));

    IdealSeq<QField> ius({P(t, "u^2 - s")});
    auto c3 = ius.express_in_generators(P(t, "u^3 - s*u"));
    REQUIRE(c3.size() == 1);
    CHECK(c3[0] == P(t, "u"));

    CHECK_THROWS_AS(ius.express_in_generators(P(t, "u")), NotMember);
}

TEST_CASE("division identity: f - NF(f, I) lies in the ideal") {
    auto t = uv_tower();
    Rng rng(11);
    IdealSeq<QField> ideal({P(t, "u^2 - v"), P(t, "v^3")});
    for (int trial = 0; trial < 25; ++trial) {
        Poly<QField> f = Poly<QField>::zero(t);
        for (int k = 0; k < 4; ++k) {
            Mono m(t->n_vars(), 0);
            m[t->var_index("u")] = static_cast<std::uint32_t>(rng.range(0, 5));
            m[t->var_index("v")] = static_cast<std::uint32_t>(rng.range(0, 5));
            f.add_term(m, t->field().from_int(rng.range(-3, 3)));
        }
        auto diff = f - normal_form(f, ideal);
        auto c = ideal.express_in_generators(diff);
        Poly<QField> back = Poly<QField>::zero(t);
        for (std::size_t j = 0; j < c.size(); ++j)
            back = back + c[j] * ideal.gens()[j];
        CHECK(back == diff);
    }
}

TEST_CASE("normal form and representations are deterministic") {
    auto t = uv_tower();
    IdealSeq<QField> a({P(t, "u^2 - v"), P(t, "u*v - 1")});
    IdealSeq<QField> b({P(t, "u^2 - v"), P(t, "u*v - 1")});
    auto f = P(t, "u^5 + 3*v^2 - u");
    CHECK(normal_form(f, a) == normal_form(f, b));
    auto ca = a.express_in_generators(f - normal_form(f, a));
    auto cb = b.express_in_generators(f - normal_form(f, b));
    REQUIRE(ca.size() == cb.size());
    for (std::size_t i = 0; i < ca.size(); ++i) CHECK(ca[i] == cb[i]);
}

TEST_CASE("find_monic examples") {
    auto t = su_tower();
    auto u = t->var_index("u");

    IdealSeq<QField> ius({P(t, "u^2 - s")});
    CHECK(find_monic(ius, u) == P(t, "u^2 - s"));

    IdealSeq<QField> ilin({P(t, "u - s")});
    CHECK(find_monic(ilin, u) == P(t, "u - s"));

    IdealSeq<QField> ibad({P(t, "u*s")});
    try {
        find_monic(ibad, u);
        FAIL("expected NotFiniteOverBase");
    } catch (const NotFiniteOverBase& e) {
        CHECK(e.variable == "u");
        CHECK(e.certain);
    }
}

TEST_CASE("find_monic respects min_degree for alternate targets") {
    auto t = su_tower();
    auto u = t->var_index("u");
    IdealSeq<QField> ius({P(t, "u^2 - s")});
    FindMonicOptions opts;
    opts.min_degree = 3;
    auto p = find_monic(ius, u, opts);
    CHECK(p.degree_in(u) == 3);
    CHECK(p.coeff_of(u, 3) == P(t, "1"));
    CHECK(ideal_member(p, ius));
    // coefficients stay in the base ring
    for (std::uint32_t k = 0; k <= 3; ++k)
        CHECK(!p.coeff_of(u, k).uses_var(u));
}

TEST_CASE("find_monic over a prime field") {
    auto t = make_tower(FpField{13}, {{"s"}, {"u"}});
    auto f = parse_poly(t, "u^3 + 5*s*u - s");
    IdealSeq<FpField> ideal({f});
    auto p = find_monic(ideal, t->var_index("u"));
    CHECK(p == f);
}

TEST_CASE("Buchberger pair budget is an explicit error") {
    auto t = uv_tower();
    IdealSeq<QField> tight({P(t, "u^3 - v"), P(t, "u*v^2 - 1"),
                            P(t, "u^2*v - u + v")},
                           /*pair_budget=*/1);
    CHECK_THROWS_AS(tight.groebner(), GroebnerBudgetExceeded);
}

TEST_CASE("groebner cache is shared and write-once") {
    auto t = uv_tower();
    IdealSeq<QField> ideal({P(t, "u^2 - v"), P(t, "v^2")});
    const auto& g1 = ideal.groebner();
    const auto& g2 = ideal.groebner();
    CHECK(&g1 == &g2);
}

TEST_CASE("groebner basis of a textbook elimination example") {
    // (u^2 + v^2, u v - 1) under lex u > v eliminates to v^4 + 1,
    // with u congruent to -v^3
    auto t = uv_tower();
    IdealSeq<QField> ideal({P(t, "u^2 + v^2"), P(t, "u*v - 1")});
    CHECK(ideal_member(P(t, "v^4 + 1"), ideal));
    CHECK(normal_form(P(t, "u"), ideal) == P(t, "-v^3"));
    const auto& gb = ideal.groebner().basis;
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == P(t, "v^4 + 1"));
    CHECK(gb[1] == P(t, "u + v^3"));
}

TEST_CASE("division-free and fraction-free determinants agree") {
    auto t = uv_tower();
    QField f;
    Rng rng(81);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
        Matrix<QField> dense(f, n, n);
        PolyMat<QField> pm(n, std::vector<Poly<QField>>(n,
                                                        Poly<QField>::zero(t)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                long c = rng.range(-9, 9);
                dense.at(i, j) = f.from_int(c);
                pm[i][j] = Poly<QField>::from_int(t, c);
            }
        CHECK(polymat_det(pm, t) ==
              Poly<QField>::constant(t, dense.det()));
    }
}

TEST_CASE("concurrent readers share one groebner computation") {
    auto t = uv_tower();
    IdealSeq<QField> ideal({P(t, "u^3 - v"), P(t, "u*v - 1")});
    auto f = P(t, "u^7 + v^5 - 3*u");
    std::vector<std::thread> workers;
    std::vector<Poly<QField>> results(8, Poly<QField>::zero(t));
    for (std::size_t i = 0; i < results.size(); ++i)
        workers.emplace_back(
            [&, i] { results[i] = normal_form(f, ideal); });
    for (auto& w : workers) w.join();
    for (const auto& r : results) CHECK(r == results[0]);
}
