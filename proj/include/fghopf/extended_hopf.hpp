#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fghopf/hopf_fgl.hpp>

namespace fghopf
{

/// H[[x]] with delta(x) = F(x (x) 1, 1 (x) x), eps(x) = 0, S(x) = Theta(x).
/// An element of H[[x]]^{(x)r} is a series in x1..xr with arity-r
/// coefficients; factor p of the tensor power owns x_p and tag p.
struct extended_hopf {
    hopf_algebra base;
    truncated_series delta_x; // in x1, x2, arity 2
    truncated_series theta;   // in x1, arity 1
    int cutoff = 0;
};

namespace ext
{

inline std::vector<std::string> vars(int r)
{
    std::vector<std::string> v;
    for (int k = 1; k <= r; ++k) {
        v.push_back("x" + std::to_string(k));
    }
    return v;
}

inline truncated_series var(int r, int k, int cutoff)
{
    return truncated_series::variable(vars(r), r, cutoff, static_cast<std::size_t>(k - 1));
}

/// f must live in H[[x]]^{(x)r} with r >= min_arity, and 1 <= p <= r - p_slack.
inline void check(const truncated_series &f, int p, int min_arity, int p_slack, const char *op)
{
    if (static_cast<int>(f.nvars()) != f.arity() || f.arity() < min_arity) {
        throw position_error(std::string(op) + ": element is not in a tensor power of H[[x]]");
    }
    detail::check_position(p, 1, f.arity() - p_slack, op);
}

inline truncated_series delta_at(const extended_hopf &E, const truncated_series &f, int p)
{
    check(f, p, 1, 0, "delta_at");
    const int r = f.arity();
    const int w = f.cutoff();
    const auto coeffs = detail::map_tensor(f, r + 1, [&](const tensor_element &e, int b) {
        return fghopf::delta_at(E.base, e, p, b);
    });
    const auto tp = static_cast<std::uint32_t>(p);
    const auto Fp = substitute(retag_series(E.delta_x.with_cutoff(w), {tp, tp + 1}, r + 1),
                               {var(r + 1, p, w), var(r + 1, p + 1, w)});
    std::vector<truncated_series> images;
    for (int q = 1; q <= r; ++q) {
        images.push_back(q < p ? var(r + 1, q, w) : q == p ? Fp : var(r + 1, q + 1, w));
    }
    return substitute(coeffs, images);
}

inline truncated_series eps_at(const extended_hopf &E, const truncated_series &f, int p)
{
    check(f, p, 2, 0, "eps_at");
    const int r = f.arity();
    const int w = f.cutoff();
    const auto coeffs = detail::map_tensor(f, r - 1, [&](const tensor_element &e, int b) {
        return fghopf::eps_at(E.base, e, p, b);
    });
    std::vector<truncated_series> images;
    for (int q = 1; q <= r; ++q) {
        images.push_back(q < p ? var(r - 1, q, w) : q == p ? truncated_series(vars(r - 1), r - 1, w)
                                                            : var(r - 1, q - 1, w));
    }
    return substitute(coeffs, images);
}

inline truncated_series antipode_at(const extended_hopf &E, const truncated_series &f, int p)
{
    check(f, p, 1, 0, "antipode_at");
    const int r = f.arity();
    const int w = f.cutoff();
    const auto coeffs = detail::map_tensor(f, r, [&](const tensor_element &e, int b) {
        return fghopf::antipode_at(E.base, e, p, b);
    });
    const auto Tp =
        substitute(retag_series(E.theta.with_cutoff(w), {static_cast<std::uint32_t>(p)}, r), {var(r, p, w)});
    std::vector<truncated_series> images;
    for (int q = 1; q <= r; ++q) {
        images.push_back(q == p ? Tp : var(r, q, w));
    }
    return substitute(coeffs, images);
}

inline truncated_series mu_merge(const truncated_series &f, int p)
{
    check(f, p, 2, 1, "mu_merge");
    const int r = f.arity();
    const int w = f.cutoff();
    const auto coeffs =
        detail::map_tensor(f, r - 1, [&](const tensor_element &e, int) { return fghopf::mu_merge(e, p); });
    std::vector<truncated_series> images;
    for (int q = 1; q <= r; ++q) {
        images.push_back(var(r - 1, q <= p ? q : q - 1, w));
    }
    return substitute(coeffs, images);
}

/// eta o eps on H[[x]]: the counit of the constant coefficient.
inline truncated_series unit_counit(const extended_hopf &E, const truncated_series &f)
{
    check(f, 1, 1, 0, "unit_counit");
    truncated_series r(vars(1), 1, f.cutoff());
    r.set({0}, fghopf::eps_at(E.base, tensor_element(f.coefficient({0}), 1), 1).value());
    return r;
}

/// Residuals (lhs - rhs) of the Hopf axioms on an element of H[[x]].
inline std::vector<std::pair<std::string, truncated_series>> axiom_residuals(const extended_hopf &E,
                                                                             const truncated_series &e)
{
    std::vector<std::pair<std::string, truncated_series>> out;
    auto check_axiom = [&](const char *name, const truncated_series &d) {
        if (!d.is_zero()) {
            out.emplace_back(name, d);
        }
    };
    const auto d = delta_at(E, e, 1);
    check_axiom("coassociativity", delta_at(E, d, 2) - delta_at(E, d, 1));
    check_axiom("counit-left", eps_at(E, d, 1) - e);
    check_axiom("counit-right", eps_at(E, d, 2) - e);
    const auto ee = unit_counit(E, e);
    check_axiom("antipode-left", mu_merge(antipode_at(E, d, 1), 1) - ee);
    check_axiom("antipode-right", mu_merge(antipode_at(E, d, 2), 1) - ee);
    return out;
}

} // namespace ext

struct extended_hopf_result {
    std::optional<extended_hopf> hopf;
    verification_report report;
};

/// Builds H[[x]] from a formal group over H and checks the Hopf axioms on the
/// generators of H, on x, and on the products x*g and x^2. Locations read
/// "element:axiom[multidegree]".
inline extended_hopf_result extend_hopf(const hopf_fgl &G, std::optional<int> W = std::nullopt)
{
    extended_hopf_result out;
    auto &r = out.report;
    r = detail::start_report(G, "extend-hopf", W.value_or(G.cutoff()));
    report_timer timer(r);
    auto theta = solve_theta(G, W);
    if (!theta.theta) {
        r.error_message = "no Theta: " + theta.report.error_message.value_or("solve failed");
        return out;
    }
    try {
        const int w = W.value_or(G.cutoff());
        extended_hopf E{G.hopf(), G.series().with_cutoff(w).renamed(ext::vars(2)),
                        theta.theta->renamed(ext::vars(1)), w};

        const auto &H = G.hopf();
        const auto &U = *H.universe();
        std::vector<std::pair<std::string, truncated_series>> elements;
        const auto x = ext::var(1, 1, w);
        for (const auto &g : H.generators()) {
            elements.emplace_back(
                U[g.index].name,
                truncated_series::constant(ext::vars(1), 1, w, poly::var(H.universe(), {g.index, 1})));
        }
        elements.emplace_back("x", x);
        for (std::size_t k = 0; k < H.generators().size(); ++k) {
            const auto xg = x * elements[k].second;
            elements.emplace_back("x*" + elements[k].first, xg);
        }
        elements.emplace_back("x^2", x * x);

        for (const auto &[label, e] : elements) {
            for (const auto &[axiom, res] : ext::axiom_residuals(E, e)) {
                const bool tags = res.arity() > 1;
                for (const auto &[a, c] : res.terms()) {
                    r.fail(label + ":" + axiom + to_string(a), to_string(c, tags));
                }
            }
        }
        out.hopf = std::move(E);
    } catch (const error &e) {
        r.error_message = e.what();
    }
    return out;
}

} // namespace fghopf
