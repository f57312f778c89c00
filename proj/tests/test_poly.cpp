#include <catch_amalgamated.hpp>

#include <fghopf/hopf.hpp>
#include <fghopf/poly.hpp>

#include "test_support.hpp"

using namespace fghopf;
using namespace fghopf_test;

TEST_CASE("poly_add")
{
    const auto R = make_ring({"b"});
    const auto b = g(R, "b");

    CHECK((b + (-b)).is_zero());
    CHECK((poly(1) + b) + b == poly(1) + poly(2) * b);
    CHECK(to_string((poly(1) + b) + b) == "1 + 2*b");

    // Homogeneous of equal degree stays homogeneous (or vanishes).
    const auto s = b + poly(3) * b;
    CHECK(homogeneity_check(s).verdict == homogeneity::kind::homogeneous);
    CHECK(homogeneity_check(s).degree == -2);
}

TEST_CASE("poly_mul")
{
    const auto R = make_ring({"b", "c"});
    const auto b = g(R, "b");
    const auto c = g(R, "c");

    CHECK((poly(1) + b) * (poly(1) - b) == poly(1) - b * b);
    CHECK(poly(1) * (b + c) == b + c);
    // deg -2 times deg -4 is homogeneous of degree -6.
    const auto h = homogeneity_check(b * c);
    CHECK(h.verdict == homogeneity::kind::homogeneous);
    CHECK(h.degree == -6);
}

TEST_CASE("poly universes must extend one another")
{
    const auto R = make_ring({"b"});
    const auto S = make_ring({"c"});
    CHECK_THROWS_AS(g(R, "b") + g(S, "c"), universe_mismatch);

    auto ext = extend_universe(R);
    ext->add({"d", -4, 1, generator_kind::scalar, false});
    const universe_ptr E = ext;
    const auto sum = g(R, "b") + g(E, "d");
    CHECK(sum.universe() == E);
}

TEST_CASE("apply_generator_map")
{
    auto u = std::make_shared<universe>();
    u->add({"b", -2, 1, generator_kind::hopf, false});
    const universe_ptr U = u;
    const auto b1 = poly::var(U, {0, 1});
    const auto b2 = poly::var(U, {0, 2});
    const auto sq = b1 * b1;

    SECTION("identity")
    {
        CHECK(map_variables(sq, [&](var_id v) { return poly::var(U, v); }, U) == sq);
    }
    SECTION("negation, even power")
    {
        CHECK(map_variables(sq, [&](var_id) { return -b1; }, U) == sq);
    }
    SECTION("binomial expansion")
    {
        const auto img = map_variables(sq, [&](var_id) { return b1 + b2; }, U);
        CHECK(img == b1 * b1 + poly(2) * b1 * b2 + b2 * b2);
        CHECK(to_string(img) == "b<1>^2 + 2*b<1>*b<2> + b<2>^2");
    }
    SECTION("constants map to themselves")
    {
        CHECK(map_variables(poly(7), [&](var_id) { return b2; }, U) == poly(7));
    }
}

TEST_CASE("filtration_truncate")
{
    const auto R = make_ring({"b"});
    const auto b = g(R, "b");
    const auto p = poly(1) + b + b * b;
    CHECK(truncate(p, 1) == poly(1) + b);
    CHECK(truncate(p, 0) == poly(1));
    CHECK(truncate(truncate(p, 1), 1) == truncate(p, 1));
}

TEST_CASE("homogeneity_check")
{
    const auto R = make_ring({"b"});
    const auto b = g(R, "b");
    CHECK(homogeneity_check(poly(0)).verdict == homogeneity::kind::zero);
    CHECK(homogeneity_check(b).degree == -2);
    CHECK(homogeneity_check(poly(1) + b).verdict == homogeneity::kind::inhomogeneous);
}

TEST_CASE("canonical text reparses under unary-minus precedence")
{
    const auto R = make_ring({"b", "c"});
    const auto b = g(R, "b");
    const auto c = g(R, "c");
    CHECK(to_string(-(b * b)) == "-1*b^2");
    CHECK(to_string(-(b * c)) == "-b*c");
    CHECK(to_string(poly(2) - b * b) == "2 - b^2");
}

TEST_CASE("ring axioms and homomorphism properties on random polynomials")
{
    auto u = std::make_shared<universe>();
    u->add({"r", -2, 1, generator_kind::scalar, false});
    u->add({"a", -2, 1, generator_kind::hopf, false});
    u->add({"e", -4, 2, generator_kind::hopf, false});
    const universe_ptr U = u;
    const std::vector<var_id> vars{{0, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    std::mt19937 rng(1234);

    // Hopf map a -> a<1> + a<2> + r, e -> e<1>*e<2>, used as a generic algebra map.
    auto image = [&](var_id v) -> poly {
        if (v.gen == 1) {
            return poly::var(U, {1, 1}) + poly::var(U, {1, 2}) + poly::var(U, {0, 0});
        }
        if (v.gen == 2) {
            return poly::var(U, {2, 1}) * poly::var(U, {2, 2});
        }
        return poly::var(U, v);
    };

    for (int trial = 0; trial < 60; ++trial) {
        const auto p = random_poly(rng, U, vars, 4, 3);
        const auto q = random_poly(rng, U, vars, 4, 3);
        const auto r = random_poly(rng, U, vars, 4, 3);
        CHECK((p + q) + r == p + (q + r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p * q == q * p);
        for (int W = 0; W <= 5; ++W) {
            CHECK(truncate(p + q, W) == truncate(p, W) + truncate(q, W));
            CHECK(truncate(p * q, W) == truncate(truncate(p, W) * truncate(q, W), W));
        }
        CHECK(map_variables(p * q, image, U) == map_variables(p, image, U) * map_variables(q, image, U));
    }
}
