#include <catch_amalgamated.hpp>

#include <fghopf/series.hpp>

#include "test_support.hpp"

using namespace fghopf;
using namespace fghopf_test;

namespace
{

// Dense univariate oracle over long long, independent of the series engine:
// evaluates sum c_ij x^i t(x)^j modulo x^(n+1).
using dense = std::vector<long long>;

dense dense_mul(const dense &a, const dense &b, std::size_t n)
{
    dense r(n + 1, 0);
    for (std::size_t i = 0; i < a.size() && i <= n; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

dense dense_eval_two_var(const std::vector<std::tuple<int, int, long long>> &F, const dense &t, std::size_t n)
{
    dense r(n + 1, 0);
    for (const auto &[i, j, c] : F) {
        dense term(n + 1, 0);
        term[0] = c;
        for (int k = 0; k < i; ++k) {
            term = dense_mul(term, dense{0, 1}, n);
        }
        for (int k = 0; k < j; ++k) {
            term = dense_mul(term, t, n);
        }
        for (std::size_t k = 0; k <= n; ++k) {
            r[k] += term[k];
        }
    }
    return r;
}

dense scalar_coefficients(const truncated_series &s, std::size_t n)
{
    dense r(n + 1, 0);
    for (const auto &[a, c] : s.terms()) {
        REQUIRE(c.is_constant());
        r[static_cast<std::size_t>(a[0])] = c.constant_term().get_num().get_si();
    }
    return r;
}

truncated_series uv(const std::vector<std::tuple<int, int, long>> &terms, int cutoff)
{
    truncated_series s({"u", "v"}, 1, cutoff);
    for (const auto &[i, j, c] : terms) {
        s.add_to({i, j}, poly(c));
    }
    return s;
}

truncated_series in_x(const std::vector<long> &coeffs, int cutoff)
{
    truncated_series s({"x"}, 1, cutoff);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        s.add_to({static_cast<int>(i)}, poly(coeffs[i]));
    }
    return s;
}

} // namespace

TEST_CASE("series_add and series_mul")
{
    const auto x = truncated_series::variable({"x", "y"}, 1, 6, 0);
    const auto y = truncated_series::variable({"x", "y"}, 1, 6, 1);
    CHECK(to_string(x + y) == "x + y");
    const auto sq = (x + y) * (x + y);
    CHECK(sq.coefficient({2, 0}) == poly(1));
    CHECK(sq.coefficient({1, 1}) == poly(2));
    CHECK(sq.coefficient({0, 2}) == poly(1));
    CHECK(to_string(sq) == "x^2 + 2*x*y + y^2");

    const auto x2 = x.with_cutoff(2);
    CHECK((x2 * (x * x)).is_zero());
    CHECK_THROWS_AS(x + truncated_series::variable({"x"}, 1, 6, 0), position_error);
    CHECK_THROWS_AS(x + truncated_series::variable({"x", "y"}, 2, 6, 0), position_error);
}

TEST_CASE("coefficients are truncated by the remaining weight budget")
{
    const auto R = make_ring({"b"});
    truncated_series s({"x", "y"}, 1, 2);
    s.set({1, 1}, g(R, "b"));
    CHECK(s.is_zero());
    s.set({1, 0}, poly(1) + g(R, "b"));
    CHECK(s.coefficient({1, 0}) == poly(1) + g(R, "b"));
}

TEST_CASE("substitute")
{
    const auto x = in_x({0, 1}, 6);
    CHECK(substitute(uv({{1, 0, 1}, {0, 1, 1}}, 6), {x, x}) == in_x({0, 2}, 6));

    // u + v + uv at (x, -x + x^2 - x^3) vanishes modulo degree 4.
    const auto h = in_x({0, -1, 1, -1}, 3);
    CHECK(substitute(uv({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, 3), {x.with_cutoff(3), h}).is_zero());

    // Augmentation-positive constant terms are allowed.
    const auto R = make_ring({"b"});
    truncated_series gb({"x"}, 1, 4);
    gb.set({0}, g(R, "b"));
    gb.set({1}, poly(1));
    truncated_series f({"u"}, 1, 4);
    f.set({1}, poly(1));
    const auto r = substitute(f, {gb});
    CHECK(r.coefficient({0}) == g(R, "b"));

    // A weight-0 constant term cannot be substituted.
    CHECK_THROWS_AS(substitute(f, {in_x({1, 1}, 4)}), convergence_error);
}

TEST_CASE("retag_series")
{
    auto u = std::make_shared<universe>();
    u->add({"b", -2, 1, generator_kind::hopf, false});
    const universe_ptr U = u;
    const auto b1 = poly::var(U, {0, 1});
    const auto b2 = poly::var(U, {0, 2});
    auto F = series_xy({{{1, 0}, poly(1)}, {{0, 1}, poly(1)}, {{1, 1}, b1 - b2}}, 5, 2);

    CHECK(retag_series(F, {1, 2}, 2).identical(F));
    const auto G = retag_series(F, {2, 3}, 3);
    CHECK(G.coefficient({1, 1}) == poly::var(U, {0, 2}) - poly::var(U, {0, 3}));
    // Composition of retags.
    const auto H = retag_series(retag_series(F, {2, 1}, 2), {3, 2}, 3);
    CHECK(H.identical(retag_series(F, {2, 3}, 3)));
    CHECK_THROWS_AS(retag_series(F, {1, 1}, 2), precondition_error);
}

TEST_CASE("solve_functional_inverse")
{
    const int W = 8;
    SECTION("additive")
    {
        const auto t = solve_functional_inverse(uv({{1, 0, 1}, {0, 1, 1}}, W), inverse_side::right);
        CHECK(t == in_x({0, -1}, W));
    }
    SECTION("multiplicative: alternating geometric series")
    {
        const std::vector<std::tuple<int, int, long long>> F{{1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
        const auto t = solve_functional_inverse(uv({{1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, W), inverse_side::right);
        const auto coeffs = scalar_coefficients(t, W);
        CHECK(coeffs == dense{0, -1, 1, -1, 1, -1, 1, -1, 1});
        const auto back = dense_eval_two_var(F, coeffs, W);
        CHECK(back == dense(W + 1, 0));
    }
    SECTION("u + v - uv")
    {
        const std::vector<std::tuple<int, int, long long>> F{{1, 0, 1}, {0, 1, 1}, {1, 1, -1}};
        const auto t = solve_functional_inverse(uv({{1, 0, 1}, {0, 1, 1}, {1, 1, -1}}, W), inverse_side::right);
        const auto coeffs = scalar_coefficients(t, W);
        CHECK(coeffs == dense{0, -1, -1, -1, -1, -1, -1, -1, -1});
        CHECK(dense_eval_two_var(F, coeffs, W) == dense(W + 1, 0));
    }
    SECTION("left and right agree for a commutative law")
    {
        const auto F = uv({{1, 0, 1}, {0, 1, 1}, {1, 1, 3}, {2, 1, 2}, {1, 2, 2}}, W);
        CHECK(solve_functional_inverse(F, inverse_side::left) == solve_functional_inverse(F, inverse_side::right));
    }
    SECTION("non-unit leading coefficient")
    {
        CHECK_THROWS_AS(solve_functional_inverse(uv({{1, 0, 1}, {0, 1, 2}}, W), inverse_side::right),
                        precondition_error);
    }
    SECTION("solution is a zero of F at every cutoff")
    {
        const auto F = uv({{1, 0, 1}, {0, 1, 1}, {1, 1, -2}, {2, 1, 1}, {1, 2, 1}}, W);
        for (int w = 1; w <= W; ++w) {
            const auto Fw = F.with_cutoff(w);
            const auto t = solve_functional_inverse(Fw, inverse_side::right);
            CHECK(substitute(Fw, {in_x({0, 1}, w), t}).is_zero());
        }
    }
}

TEST_CASE("series laws on random corpora")
{
    const auto R = make_ring({"p", "q"});
    std::mt19937 rng(99);
    const std::vector<var_id> vars{{0, 0}, {1, 0}};
    auto random_series = [&](int nvars, bool positive) {
        std::vector<std::string> names = nvars == 2 ? std::vector<std::string>{"x", "y"}
                                                    : std::vector<std::string>{"x", "y", "z"};
        truncated_series s(names, 1, 5);
        std::uniform_int_distribution<int> e(0, 2);
        for (int t = 0; t < 5; ++t) {
            multi_index a(static_cast<std::size_t>(nvars));
            for (auto &k : a) {
                k = e(rng);
            }
            auto c = random_poly(rng, R, vars, 2, 2);
            if (positive && total_degree(a) == 0) {
                c = c * poly::var(R, {0, 0});
            }
            s.add_to(a, c);
        }
        return s;
    };

    for (int trial = 0; trial < 25; ++trial) {
        const auto f = random_series(2, true);
        const auto g2 = random_series(2, true);
        const auto h = random_series(2, true);
        CHECK(f * g2 == g2 * f);
        CHECK((f * g2) * h == f * (g2 * h));

        // f(g(h1,h2), k) in either grouping: substituting into a composite
        // equals composing substitutions.
        const auto outer = random_series(2, false);
        const auto inner = random_series(2, true);
        const auto h1 = random_series(2, true);
        const auto h2 = random_series(2, true);
        truncated_series x_only = truncated_series::variable({"x", "y"}, 1, 5, 0);
        truncated_series y_only = truncated_series::variable({"x", "y"}, 1, 5, 1);
        // outer(inner(x,y), y) then (x,y) := (h1,h2)
        const auto left = substitute(substitute(outer, {substitute(inner, {x_only, y_only}), y_only}), {h1, h2});
        const auto right = substitute(outer, {substitute(inner, {h1, h2}), h2});
        CHECK(left == right);
    }
}
