#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fghopf/error.hpp>
#include <fghopf/report.hpp>
#include <fghopf/series.hpp>

namespace fghopf
{

/// Series variables for an n-variable workspace: x, y, z.
inline std::vector<std::string> xyz_vars(std::size_t n)
{
    static const std::vector<std::string> names{"x", "y", "z"};
    return {names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n)};
}

namespace detail
{

inline void require_two_vars(const truncated_series &F, const char *what)
{
    if (F.nvars() != 2) {
        throw precondition_error(std::string(what) + " needs a series in two variables");
    }
}

/// F(x,0) - x and F(0,y) - y, each as a one-variable series.
inline std::pair<truncated_series, truncated_series> unit_residuals(const truncated_series &F)
{
    const std::vector<std::string> v{"x"};
    const auto x = truncated_series::variable(v, F.arity(), F.cutoff(), 0);
    const truncated_series zero(v, F.arity(), F.cutoff());
    return {substitute(F, {x, zero}) - x, substitute(F, {zero, x}) - x};
}

} // namespace detail

/// F(F(x,y),z) - F(x,F(y,z)) in x, y, z.
inline truncated_series associativity_residual(const truncated_series &F)
{
    detail::require_two_vars(F, "associativity");
    const auto vars = xyz_vars(3);
    const auto X = truncated_series::variable(vars, F.arity(), F.cutoff(), 0);
    const auto Y = truncated_series::variable(vars, F.arity(), F.cutoff(), 1);
    const auto Z = truncated_series::variable(vars, F.arity(), F.cutoff(), 2);
    return substitute(F, {substitute(F, {X, Y}), Z}) - substitute(F, {X, substitute(F, {Y, Z})});
}

/// Unit and associativity axioms of an ordinary formal group law modulo
/// total degree > W. Unit failures are located at [i,0] / [0,j], associativity
/// failures at the offending [i,j,k], each block in graded-lex order.
inline verification_report verify_fgl(const truncated_series &F, int W, std::string subject = "F")
{
    verification_report r;
    r.subject = std::move(subject);
    r.check = "fgl";
    r.cutoff = W;
    report_timer timer(r);
    try {
        detail::require_two_vars(F, "verify_fgl");
        const auto Fw = F.with_cutoff(W);
        const bool tags = F.arity() > 1;
        const auto [left, right] = detail::unit_residuals(Fw);
        for (const auto &[a, c] : left.terms()) {
            r.fail(to_string(multi_index{a[0], 0}), to_string(c, tags));
        }
        for (const auto &[a, c] : right.terms()) {
            r.fail(to_string(multi_index{0, a[0]}), to_string(c, tags));
        }
        const auto residual = associativity_residual(Fw);
        for (const auto &[a, c] : residual.terms()) {
            r.fail(to_string(a), to_string(c, tags));
        }
    } catch (const error &e) {
        r.error_message = e.what();
    }
    return r;
}

/// F(x,y) = F(y,x), located at [i,j] with i < j.
inline verification_report fgl_commutativity(const truncated_series &F, std::string subject = "F")
{
    verification_report r;
    r.subject = std::move(subject);
    r.check = "commutativity";
    r.cutoff = F.cutoff();
    report_timer timer(r);
    detail::require_two_vars(F, "commutativity");
    std::set<multi_index, graded_lex> pairs;
    for (const auto &[a, c] : F.terms()) {
        if (a[0] != a[1]) {
            pairs.insert({std::min(a[0], a[1]), std::max(a[0], a[1])});
        }
    }
    for (const auto &a : pairs) {
        const poly d = F.coefficient(a) - F.coefficient({a[1], a[0]});
        if (!d.is_zero()) {
            r.fail(to_string(a), to_string(d, F.arity() > 1));
        }
    }
    return r;
}

/// theta with F(x, theta(x)) = 0 modulo degree > W.
inline truncated_series fgl_inverse(const truncated_series &F, int W, inverse_side side = inverse_side::right)
{
    detail::require_two_vars(F, "fgl_inverse");
    const auto Fw = F.with_cutoff(W);
    const auto [left, right] = detail::unit_residuals(Fw);
    if (!left.is_zero() || !right.is_zero()) {
        throw precondition_error("series fails the unit axiom");
    }
    return solve_functional_inverse(Fw, side);
}

enum class builtin_fgl_kind { additive, multiplicative, generic };

/// Name of the generic coefficient a_ij; indices of two digits get a separator.
inline std::string lazard_name(int i, int j)
{
    if (i >= 10 || j >= 10) {
        return "a" + std::to_string(i) + "_" + std::to_string(j);
    }
    return "a" + std::to_string(i) + std::to_string(j);
}

/// Ordinary law in x, y truncated at total degree D. The generic law is
/// x + y + sum a_ij x^i y^j over fresh unknowns of degree 2(1-i-j) and weight
/// 0; with `commutative` set, a_ji is the same unknown as a_ij.
inline truncated_series builtin_fgl(builtin_fgl_kind kind, int D, const universe_ptr &base = nullptr,
                                    bool commutative = true)
{
    auto u = extend_universe(base);
    if (kind == builtin_fgl_kind::generic) {
        for (int s = 2; s <= D; ++s) {
            for (int i = s - 1; i >= 1; --i) {
                const int j = s - i;
                if (commutative && i > j) {
                    continue;
                }
                u->add({lazard_name(i, j), 2 * (1 - i - j), 0, generator_kind::scalar, true});
            }
        }
    }
    const universe_ptr U = u;
    truncated_series F(xyz_vars(2), 0, D);
    F.add_to({1, 0}, poly(1));
    F.add_to({0, 1}, poly(1));
    if (kind == builtin_fgl_kind::multiplicative) {
        F.add_to({1, 1}, poly(1));
    } else if (kind == builtin_fgl_kind::generic) {
        for (int s = 2; s <= D; ++s) {
            for (int i = 1; i < s; ++i) {
                const int j = s - i;
                const auto name = commutative && i > j ? lazard_name(j, i) : lazard_name(i, j);
                F.add_to({i, j}, poly::gen(U, name));
            }
        }
    }
    return F;
}

/// One nonzero coefficient of F(F(x,y),z) - F(x,F(y,z)).
struct constraint {
    multi_index where;
    poly relation;
};

/// Associativity relations among the unknowns of a generic law, one per
/// offending monomial x^i y^j z^k of total degree <= W, in graded-lex order.
inline std::vector<constraint> extract_associativity_constraints(const truncated_series &F, int W)
{
    std::vector<constraint> out;
    const auto residual = associativity_residual(F.with_cutoff(W));
    for (const auto &[a, c] : residual.terms()) {
        out.push_back({a, c});
    }
    return out;
}

} // namespace fghopf
