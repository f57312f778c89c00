#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <fghopf/hopf_fgl.hpp>

namespace fghopf
{

/// One polynomial equation among the unknowns of an ansatz.
struct labelled_equation {
    std::string location;
    poly relation;
};

/// Conditions 1 and 2 for a generic formal group over H, as a polynomial
/// system in the ansatz unknowns, with the part solved by linear elimination.
struct extension_system {
    hopf_fgl ansatz;
    std::vector<std::uint32_t> unknowns;
    std::vector<labelled_equation> equations;
    std::vector<std::pair<std::uint32_t, poly>> solved;
    std::vector<labelled_equation> remaining;
};

namespace detail
{

/// Nonconstant monomials in the tagged Hopf generators (tags 1 and 2) with
/// weight <= max_weight and degree >= min_degree, in monomial order.
inline std::vector<monomial> tagged_monomials(const universe_ptr &U, const hopf_algebra &H, int max_weight,
                                              int min_degree)
{
    std::vector<var_id> vars;
    for (const auto &g : H.generators()) {
        vars.push_back({g.index, 1});
        vars.push_back({g.index, 2});
    }
    std::vector<monomial> out;
    std::vector<factor> cur;
    auto rec = [&](auto &&self, std::size_t k, int weight) -> void {
        if (k == vars.size()) {
            if (!cur.empty()) {
                const auto m = monomial::from_factors(cur, *U);
                if (degree(*U, m) >= min_degree) {
                    out.push_back(m);
                }
            }
            return;
        }
        self(self, k + 1, weight);
        const int w = (*U)[vars[k].gen].weight;
        for (std::uint32_t e = 1; weight + w * static_cast<int>(e) <= max_weight; ++e) {
            cur.push_back({vars[k], e});
            self(self, k + 1, weight + w * static_cast<int>(e));
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Splits c into sum over Hopf monomials m of (unknown polynomial) * m.
inline std::map<monomial, poly> group_by_hopf_part(const poly &c)
{
    std::map<monomial, poly> out;
    const auto &U = *c.universe();
    for (const auto &[m, v] : c.terms()) {
        std::vector<factor> unk;
        std::vector<factor> hop;
        for (const auto &f : m.factors()) {
            (U[f.var.gen].unknown ? unk : hop).push_back(f);
        }
        poly p;
        p.set_universe(c.universe());
        p.add_term(monomial::from_factors(unk, U), v);
        auto [it, fresh] = out.try_emplace(monomial::from_factors(hop, U), p);
        if (!fresh) {
            it->second += p;
        }
    }
    return out;
}

inline poly substitute_unknowns(const poly &p, const std::map<std::uint32_t, poly> &values)
{
    if (values.empty() || p.is_zero()) {
        return p;
    }
    return map_variables(
        p,
        [&](var_id v) {
            const auto it = v.tag == 0 ? values.find(v.gen) : values.end();
            return it == values.end() ? poly::var(p.universe(), v) : it->second;
        },
        p.universe());
}

/// The newest unknown occurring only linearly, alone, with a constant
/// coefficient.
inline std::optional<std::pair<std::uint32_t, coefficient>> linear_pivot(const poly &e,
                                                                       const std::vector<std::uint32_t> &unknowns)
{
    for (auto it = unknowns.rbegin(); it != unknowns.rend(); ++it) {
        const var_id v{*it, 0};
        std::optional<coefficient> c;
        bool ok = true;
        for (const auto &[m, val] : e.terms()) {
            const auto x = m.exponent_of(v);
            if (x == 0) {
                continue;
            }
            if (x != 1 || m.factors().size() != 1) {
                ok = false;
                break;
            }
            c = val;
        }
        if (ok && c) {
            return std::make_pair(*it, *c);
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Builds the ansatz F = x + y + sum_{i,j>=1} a_ij x^i y^j + sum u * m x^i y^j,
/// where m runs over nonconstant tagged Hopf monomials of weight <= D - i - j
/// and each fresh unknown u has degree 2(1-i-j) - deg(m) <= 0. The equations
/// are the coefficients of the condition 1 and 2 residuals, split by their
/// Hopf monomial; they are then solved for pivots that occur linearly.
inline extension_system extract_extension_constraints(const hopf_algebra &H, int D)
{
    if (D < 1) {
        throw precondition_error("extension ansatz needs max degree >= 1");
    }
    auto u = extend_universe(H.universe());
    std::vector<std::tuple<multi_index, std::uint32_t, monomial>> slots;
    std::vector<std::uint32_t> unknowns;
    for (int s = 0; s <= D; ++s) {
        for (int i = s; i >= 0; --i) {
            const int j = s - i;
            const int target = 2 * (1 - i - j);
            if (i >= 1 && j >= 1) {
                const auto id = u->add({lazard_name(i, j), target, 0, generator_kind::scalar, true});
                unknowns.push_back(id);
                slots.emplace_back(multi_index{i, j}, id, monomial{});
            }
            const auto ms = detail::tagged_monomials(u, H, D - s, target);
            int k = 0;
            for (const auto &m : ms) {
                const auto name = "u" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(++k);
                const auto id = u->add({name, target - degree(*u, m), 0, generator_kind::scalar, true});
                unknowns.push_back(id);
                slots.emplace_back(multi_index{i, j}, id, m);
            }
        }
    }
    const universe_ptr U = u;
    truncated_series F(xyz_vars(2), 2, D);
    F.add_to({1, 0}, poly(1));
    F.add_to({0, 1}, poly(1));
    for (const auto &[a, id, m] : slots) {
        poly p = poly::var(U, {id, 0});
        if (!m.is_unit()) {
            poly t;
            t.set_universe(U);
            t.add_term(m, 1);
            p *= t;
        }
        F.add_to(a, p);
    }

    extension_system sys{hopf_fgl("ansatz", H, F), unknowns, {}, {}, {}};
    auto emit = [&](const std::string &where, const poly &c) {
        for (const auto &[m, p] : detail::group_by_hopf_part(c.rebase(U))) {
            sys.equations.push_back({where + ":" + (m.is_unit() ? std::string("1") : to_string(*U, m, true)), p});
        }
    };
    const auto residual = condition1_residual(sys.ansatz);
    for (const auto &[a, c] : residual.terms()) {
        emit("condition1" + to_string(a), c);
    }
    const auto [left, right] = condition2_residuals(sys.ansatz);
    for (const auto &[a, c] : left.terms()) {
        emit("condition2" + to_string(multi_index{a[0], 0}), c);
    }
    for (const auto &[a, c] : right.terms()) {
        emit("condition2" + to_string(multi_index{0, a[0]}), c);
    }

    std::map<std::uint32_t, poly> values;
    std::vector<labelled_equation> pending;
    for (const auto &eq : sys.equations) {
        const poly e = detail::substitute_unknowns(eq.relation, values);
        if (e.is_zero()) {
            continue;
        }
        if (const auto pivot = detail::linear_pivot(e, unknowns)) {
            const auto [id, c] = *pivot;
            poly value = e - poly(c) * poly::var(U, {id, 0});
            value *= coefficient(-1 / c);
            const std::map<std::uint32_t, poly> one{{id, value}};
            for (auto &[k, v] : values) {
                v = detail::substitute_unknowns(v, one);
            }
            values[id] = value;
            sys.solved.emplace_back(id, value);
        } else {
            pending.push_back({eq.location, e});
        }
    }
    for (auto &[id, v] : sys.solved) {
        v = values[id];
    }
    for (auto &eq : pending) {
        const poly e = detail::substitute_unknowns(eq.relation, values);
        if (!e.is_zero()) {
            sys.remaining.push_back({eq.location, e});
        }
    }
    return sys;
}

/// A concrete solution: free degree-0 unknowns get small random integers,
/// unknowns in unsolved equations and other free unknowns get 0, and solved
/// unknowns follow from their elimination formulas.
inline hopf_fgl extension_instance(const extension_system &sys, std::uint32_t seed, std::string name = "instance")
{
    const auto U = sys.ansatz.series().universe();
    std::set<std::uint32_t> solved;
    for (const auto &[id, v] : sys.solved) {
        solved.insert(id);
    }
    std::set<std::uint32_t> constrained;
    for (const auto &eq : sys.remaining) {
        for (const auto &[m, c] : eq.relation.terms()) {
            for (const auto &f : m.factors()) {
                constrained.insert(f.var.gen);
            }
        }
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(-3, 3);
    std::map<std::uint32_t, poly> values;
    for (auto id : sys.unknowns) {
        if (solved.count(id)) {
            continue;
        }
        const bool free = !constrained.count(id) && (*U)[id].degree == 0;
        values[id] = poly(free ? pick(rng) : 0);
    }
    for (const auto &[id, v] : sys.solved) {
        values[id] = detail::substitute_unknowns(v, values);
    }
    const auto &A = sys.ansatz.series();
    truncated_series F(A.vars(), 2, A.cutoff());
    for (const auto &[a, c] : A.terms()) {
        F.set(a, detail::substitute_unknowns(c, values));
    }
    return {std::move(name), sys.ansatz.hopf(), std::move(F)};
}

} // namespace fghopf
