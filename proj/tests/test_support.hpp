#pragma once

#include <random>
#include <string>
#include <vector>

#include <fghopf/fgl.hpp>
#include <fghopf/hopf.hpp>
#include <fghopf/hopf_fgl.hpp>
#include <fghopf/poly.hpp>
#include <fghopf/series.hpp>

namespace fghopf_test
{

using namespace fghopf;

/// Ring with scalar generators of degree -2i, weight 1.
inline universe_ptr make_ring(const std::vector<std::string> &names)
{
    auto u = std::make_shared<universe>();
    int i = 1;
    for (const auto &n : names) {
        u->add({n, -2 * i++, 1, generator_kind::scalar, false});
    }
    return u;
}

inline poly g(const universe_ptr &u, const std::string &name, std::uint32_t tag = 0)
{
    return poly::gen(u, name, tag);
}

/// Random polynomial with small integer coefficients over the given
/// variables, at most `terms` terms of total exponent <= max_exp.
inline poly random_poly(std::mt19937 &rng, const universe_ptr &u, const std::vector<var_id> &vars, int terms,
                        int max_exp)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::size_t> which(0, vars.size() - 1);
    std::uniform_int_distribution<int> len(0, max_exp);
    poly p;
    p.set_universe(u);
    for (int t = 0; t < terms; ++t) {
        poly m(coeff(rng));
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            m = m * poly::var(u, vars[which(rng)]);
        }
        p += m;
    }
    return p;
}

inline truncated_series series_xy(const std::vector<std::pair<multi_index, poly>> &terms, int cutoff,
                                  int arity = 1)
{
    truncated_series s({"x", "y"}, arity, cutoff);
    for (const auto &[a, c] : terms) {
        s.add_to(a, c);
    }
    return s;
}

inline hopf_algebra prim() { return builtin_hopf(builtin_hopf_kind::primitive, 1, -2); }
inline hopf_algebra binom(int n = 4) { return builtin_hopf(builtin_hopf_kind::binomial, n, -2); }

inline truncated_series law(builtin_fgl_kind k, int W) { return builtin_fgl(k, W); }

/// x + y + (b<1> - b<2>)xy over the primitive Hopf algebra Z[b].
inline hopf_fgl bperturb(int W = 4)
{
    const auto H = prim();
    const auto b1 = H.element("b", 1);
    const auto b2 = H.element("b", 2);
    return {"FF", H, series_xy({{{1, 0}, poly(1)}, {{0, 1}, poly(1)}, {{1, 1}, b1 - b2}}, W, 2)};
}

inline hopf_fgl with_term(const hopf_fgl &G, const multi_index &a, const poly &c)
{
    auto F = G.series();
    F.add_to(a, c);
    return {G.name(), G.hopf(), F};
}

/// {additive, multiplicative} lifted to {Z[b], binomial c1..c4}.
inline std::vector<std::pair<std::string, hopf_fgl>> trivial_corpus(int W)
{
    std::vector<std::pair<std::string, hopf_fgl>> out;
    for (auto k : {builtin_fgl_kind::additive, builtin_fgl_kind::multiplicative}) {
        for (const auto &H : {prim(), binom()}) {
            const auto name = std::string(k == builtin_fgl_kind::additive ? "add" : "mult") + "/" + H.name();
            out.emplace_back(name, trivial_extension(law(k, W), H));
        }
    }
    return out;
}

/// Trivial extensions plus `count` random single-coefficient perturbations,
/// each adding c * g<t> x^i y^j (c in [-2,2] \ {0}, t in {1,2}).
inline std::vector<std::pair<std::string, hopf_fgl>> perturbed_corpus(int W, int count, std::uint32_t seed)
{
    auto out = trivial_corpus(W);
    const auto base = out;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_base(0, base.size() - 1);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<int> tag(1, 2);
    for (int n = 0; n < count; ++n) {
        const auto &[name, G] = base[pick_base(rng)];
        const auto &gens = G.hopf().generators();
        std::uniform_int_distribution<std::size_t> pick_gen(0, gens.size() - 1);
        const auto &gen = gens[pick_gen(rng)];
        const int w = (*G.hopf().universe())[gen.index].weight;
        std::uniform_int_distribution<int> deg(0, std::max(0, W - w));
        int s = deg(rng);
        std::uniform_int_distribution<int> split(0, s);
        const int i = split(rng);
        int c = coeff(rng);
        if (c == 0) {
            c = 1;
        }
        const auto t = static_cast<std::uint32_t>(tag(rng));
        const poly p = poly(c) * poly::var(G.hopf().universe(), {gen.index, t});
        auto label = name + "+(" + to_string(p, true) + ")" + to_string(multi_index{i, s - i});
        out.emplace_back(label, with_term(G, {i, s - i}, p));
    }
    return out;
}

/// Conditions 1-3, checked directly.
inline bool conditions_pass(const hopf_fgl &G)
{
    const auto th = solve_theta(G);
    return verify_condition1(G).passed() && verify_condition2(G).passed() && th.report.passed();
}

} // namespace fghopf_test
