#include <catch_amalgamated.hpp>

#include <array>
#include <map>

#include <fghopf/hopf.hpp>

#include "test_support.hpp"

using namespace fghopf;
using namespace fghopf_test;

namespace
{

poly t(const hopf_algebra &H, const std::string &name, std::uint32_t tag) { return H.element(name, tag); }

// Independent oracle for the binomial Hopf algebra on c_1..c_N in up to three
// tensor factors: a polynomial is a map from an exponent table
// (factor, generator) to an integer coefficient.
constexpr int N = 4;
using expo = std::array<int, 3 * N>;
using dense_poly = std::map<expo, long long>;

dense_poly d_add(dense_poly a, const dense_poly &b, long long s = 1)
{
    for (const auto &[e, c] : b) {
        a[e] += s * c;
        if (a[e] == 0) {
            a.erase(e);
        }
    }
    return a;
}

dense_poly d_mul(const dense_poly &a, const dense_poly &b)
{
    dense_poly r;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            expo e{};
            for (int k = 0; k < 3 * N; ++k) {
                e[k] = ea[k] + eb[k];
            }
            r[e] += ca * cb;
            if (r[e] == 0) {
                r.erase(e);
            }
        }
    }
    return r;
}

// c_n in factor f (c_0 = 1).
dense_poly d_c(int n, int f)
{
    expo e{};
    if (n > 0) {
        e[f * N + (n - 1)] = 1;
    }
    return {{e, 1}};
}

// Sum over i+j+k = n of c_i (x) c_j (x) c_k: both bracketings of the
// iterated binomial coproduct must produce exactly this.
dense_poly d_triple(int n)
{
    dense_poly r;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; i + j <= n; ++j) {
            r = d_add(r, d_mul(d_mul(d_c(i, 0), d_c(j, 1)), d_c(n - i - j, 2)));
        }
    }
    return r;
}

// Antipode by solving sum_{i+j=n} c_i S(c_j) = 0 with this oracle's own
// arithmetic, in factor 0.
std::vector<dense_poly> d_antipodes()
{
    std::vector<dense_poly> S{d_c(0, 0)};
    for (int n = 1; n <= N; ++n) {
        dense_poly s;
        for (int i = 1; i <= n; ++i) {
            s = d_add(s, d_mul(d_c(i, 0), S[static_cast<std::size_t>(n - i)]), -1);
        }
        S.push_back(s);
    }
    return S;
}

dense_poly to_dense(const hopf_algebra &H, const poly &p)
{
    dense_poly r;
    for (const auto &[m, c] : p.terms()) {
        expo e{};
        for (const auto &f : m.factors()) {
            const auto &name = (*H.universe())[f.var.gen].name;
            const int n = std::stoi(name.substr(1));
            const int factor_idx = f.var.tag == 0 ? 0 : static_cast<int>(f.var.tag) - 1;
            e[factor_idx * N + (n - 1)] = static_cast<int>(f.exp);
        }
        r[e] = c.get_num().get_si();
    }
    return r;
}

} // namespace

TEST_CASE("delta_at")
{
    const auto P = builtin_hopf(builtin_hopf_kind::primitive, 1, -2);
    const tensor_element b1(t(P, "b", 1), 1);
    CHECK(delta_at(P, b1, 1) == tensor_element(t(P, "b", 1) + t(P, "b", 2), 2));

    const auto B = builtin_hopf(builtin_hopf_kind::binomial, 3, -2);
    const auto d = delta_at(B, tensor_element(t(B, "c2", 1), 1), 1);
    CHECK(d.value() == t(B, "c2", 1) + t(B, "c1", 1) * t(B, "c1", 2) + t(B, "c2", 2));
    CHECK(to_string(d) == "c2<1> + c2<2> + c1<1>*c1<2>");

    CHECK(delta_at(B, tensor_element(poly(5), 2), 2) == tensor_element(poly(5), 3));
    // Higher tags shift up.
    const auto e = delta_at(P, tensor_element(t(P, "b", 1) * t(P, "b", 2), 2), 1);
    CHECK(e.value() == (t(P, "b", 1) + t(P, "b", 2)) * t(P, "b", 3));
    CHECK_THROWS_AS(delta_at(P, b1, 2), position_error);
    CHECK_THROWS_AS(delta_at(P, b1, 0), position_error);
}

TEST_CASE("eps_at")
{
    const auto P = builtin_hopf(builtin_hopf_kind::primitive, 1, -2);
    CHECK(eps_at(P, tensor_element(t(P, "b", 1), 1), 1).value().is_zero());
    CHECK(eps_at(P, tensor_element(poly(1) + t(P, "b", 2), 2), 2) == tensor_element(poly(1), 1));
    CHECK(eps_at(P, tensor_element(t(P, "b", 2), 2), 1) == tensor_element(t(P, "b", 1), 1));

    // (eps (x) eps)(a<1> b<2>) = eps(a) eps(b) with nonzero counits.
    auto R = make_ring({"r", "s"});
    auto u = extend_universe(R);
    const auto ia = u->add({"a", -2, 1, generator_kind::hopf, false});
    const auto ib = u->add({"e", -2, 1, generator_kind::hopf, false});
    const universe_ptr U = u;
    std::vector<hopf_generator> gens{
        {ia, poly::var(U, {ia, 1}) + poly::var(U, {ia, 2}), g(R, "r"), -poly::var(U, {ia, 1})},
        {ib, poly::var(U, {ib, 1}) + poly::var(U, {ib, 2}), g(R, "s"), -poly::var(U, {ib, 1})},
    };
    const hopf_algebra H("H", R, U, gens);
    const tensor_element ab(poly::var(U, {ia, 1}) * poly::var(U, {ib, 2}), 2);
    const auto red = eps_at(H, eps_at(H, ab, 2), 1);
    CHECK(red.arity() == 0);
    CHECK(red.value() == g(R, "r") * g(R, "s"));
    CHECK_THROWS_AS(eps_at(P, tensor_element(poly(1), 1), 2), position_error);
}

TEST_CASE("antipode_at")
{
    const auto P = builtin_hopf(builtin_hopf_kind::primitive, 1, -2);
    CHECK(antipode_at(P, tensor_element(t(P, "b", 2), 2), 2).value() == -t(P, "b", 2));
    CHECK(antipode_at(P, tensor_element(poly(1), 2), 1).value() == poly(1));
    CHECK(antipode_at(P, tensor_element(t(P, "b", 1) * t(P, "b", 2), 2), 2).value() ==
          -(t(P, "b", 1) * t(P, "b", 2)));
    CHECK_THROWS_AS(antipode_at(P, tensor_element(poly(1), 2), 3), position_error);
}

TEST_CASE("mu_merge and flip")
{
    const auto P = builtin_hopf(builtin_hopf_kind::primitive, 2, -2);
    const auto a1 = t(P, "b1", 1);
    const auto a2 = t(P, "b1", 2);
    const auto c2 = t(P, "b2", 2);
    CHECK(mu_merge(tensor_element(a1 - a2, 2), 1).value().is_zero());
    CHECK(mu_merge(tensor_element(a1 * c2, 2), 1).value() == t(P, "b1", 1) * t(P, "b2", 1));
    CHECK(mu_merge(embed(tensor_element(a1 * t(P, "b2", 1), 1), 2), 1) == tensor_element(a1 * t(P, "b2", 1), 1));
    CHECK_THROWS_AS(mu_merge(tensor_element(a1, 1), 1), position_error);

    CHECK(flip(tensor_element(a1, 2)).value() == a2);
    CHECK(flip(tensor_element(a1 * c2, 2)).value() == a2 * t(P, "b2", 1));
    CHECK_THROWS_AS(flip(tensor_element(a1, 3)), position_error);
}

TEST_CASE("verify_hopf")
{
    SECTION("primitive passes")
    {
        const auto P = builtin_hopf(builtin_hopf_kind::primitive, 1, -2);
        CHECK(verify_hopf(P, 6).passed());
    }
    SECTION("binomial on c1..c4 passes and agrees with the dense oracle")
    {
        const auto B = builtin_hopf(builtin_hopf_kind::binomial, N, -2);
        CHECK(verify_hopf(B, 6).passed());

        const auto S = d_antipodes();
        for (int n = 1; n <= N; ++n) {
            const std::string name = "c" + std::to_string(n);
            const tensor_element e(t(B, name, 1), 1);
            const auto d = delta_at(B, e, 1);
            CHECK(to_dense(B, delta_at(B, d, 1).value()) == d_triple(n));
            CHECK(to_dense(B, delta_at(B, d, 2).value()) == d_triple(n));
            CHECK(to_dense(B, B.structure(e.value().terms().begin()->first.factors()[0].var.gen).antipode) ==
                  S[static_cast<std::size_t>(n)]);
        }
    }
    SECTION("corrupted antipode fails with residual 2b")
    {
        const auto P = builtin_hopf(builtin_hopf_kind::primitive, 1, -2);
        auto gens = P.generators();
        gens[0].antipode = t(P, "b", 1);
        const hopf_algebra bad("Bad", nullptr, P.universe(), gens);
        const auto r = verify_hopf(bad, 6);
        REQUIRE(r.result() == verdict::fail);
        CHECK(r.failures.front().location == "b:antipode-left");
        CHECK(r.failures.front().residual == "2*b");
        bool right = false;
        for (const auto &f : r.failures) {
            right = right || (f.location == "b:antipode-right" && f.residual == "2*b");
        }
        CHECK(right);
    }
}

TEST_CASE("builtin_hopf antipodes")
{
    const auto B = builtin_hopf(builtin_hopf_kind::binomial, 3, -2);
    const auto &g1 = B.structure(*B.universe()->find("c1"));
    const auto &g2 = B.structure(*B.universe()->find("c2"));
    CHECK(g1.antipode == -t(B, "c1", 1));
    CHECK(g2.antipode == -t(B, "c2", 1) + t(B, "c1", 1) * t(B, "c1", 1));
    // S(c2) solves mu (id (x) S) delta c2 = 0: c2 + c1 S(c1) + S(c2) = 0.
    CHECK((t(B, "c2", 1) + t(B, "c1", 1) * g1.antipode + g2.antipode).is_zero());
    CHECK_THROWS_AS(builtin_hopf(builtin_hopf_kind::primitive, 0, -2), precondition_error);
    CHECK(verify_hopf(builtin_hopf(builtin_hopf_kind::primitive, 1, -2), 6).passed());
}

TEST_CASE("structure maps at independent positions commute")
{
    const auto B = builtin_hopf(builtin_hopf_kind::binomial, 3, -2);
    std::mt19937 rng(7);
    std::vector<var_id> vars;
    for (std::uint32_t gi = 0; gi < 3; ++gi) {
        for (std::uint32_t tag = 1; tag <= 3; ++tag) {
            vars.push_back({gi, tag});
        }
    }
    for (int trial = 0; trial < 20; ++trial) {
        const tensor_element e(random_poly(rng, B.universe(), vars, 3, 3), 3);
        for (int p = 1; p <= 3; ++p) {
            for (int q = p + 1; q <= 3; ++q) {
                CHECK(eps_at(B, delta_at(B, e, p), q + 1) == delta_at(B, eps_at(B, e, q), p));
                CHECK(antipode_at(B, antipode_at(B, e, p), q) == antipode_at(B, antipode_at(B, e, q), p));
            }
        }
    }
}

TEST_CASE("coassociativity and antipode on random products")
{
    const auto B = builtin_hopf(builtin_hopf_kind::binomial, 4, -2);
    std::mt19937 rng(11);
    std::vector<var_id> vars;
    for (std::uint32_t gi = 0; gi < 4; ++gi) {
        vars.push_back({gi, 1});
    }
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = random_poly(rng, B.universe(), vars, 2, 3);
        CHECK(hopf_axiom_residuals(B, p, 6).empty());
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("flip is an involutive algebra map")
{
    const auto P = builtin_hopf(builtin_hopf_kind::primitive, 2, -2);
    std::mt19937 rng(5);
    const std::vector<var_id> vars{{0, 1}, {0, 2}, {1, 1}, {1, 2}};
    for (int trial = 0; trial < 30; ++trial) {
        const tensor_element a(random_poly(rng, P.universe(), vars, 3, 3), 2);
        const tensor_element b(random_poly(rng, P.universe(), vars, 3, 3), 2);
        CHECK(flip(flip(a)) == a);
        CHECK(flip(a * b) == flip(a) * flip(b));
    }
}

TEST_CASE("verification verdicts are monotone in the cutoff")
{
    const auto P = builtin_hopf(builtin_hopf_kind::primitive, 1, -2);
    auto gens = P.generators();
    gens[0].antipode = t(P, "b", 1) * t(P, "b", 1) - t(P, "b", 1) + t(P, "b", 1) * t(P, "b", 1) * t(P, "b", 1);
    const hopf_algebra bad("Bad", nullptr, P.universe(), gens);
    bool failed = false;
    for (int W = 0; W <= 6; ++W) {
        const bool pass = verify_hopf(bad, W).passed();
        if (failed) {
            CHECK(!pass);
        }
        failed = failed || !pass;
    }
    CHECK(verify_hopf(bad, 1).passed());
    CHECK(!verify_hopf(bad, 2).passed());
}
