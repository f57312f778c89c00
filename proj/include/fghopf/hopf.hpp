#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fghopf/error.hpp>
#include <fghopf/poly.hpp>
#include <fghopf/report.hpp>

namespace fghopf
{

/// Element of the arity-fold tensor power H^{(x)r}. Arity 0 stands for the
/// base ring.
class tensor_element
{
public:
    tensor_element() = default;

    tensor_element(poly value, int arity) : value_(std::move(value)), arity_(arity)
    {
        if (arity_ < 0) {
            throw position_error("negative tensor arity");
        }
        if (static_cast<int>(max_tag(value_)) > arity_) {
            throw position_error("factor tag " + std::to_string(max_tag(value_)) + " exceeds arity " +
                                 std::to_string(arity_));
        }
    }

    [[nodiscard]] const poly &value() const noexcept { return value_; }
    [[nodiscard]] int arity() const noexcept { return arity_; }

    friend tensor_element operator+(const tensor_element &a, const tensor_element &b)
    {
        check_same(a, b);
        return {a.value_ + b.value_, a.arity_};
    }
    friend tensor_element operator-(const tensor_element &a, const tensor_element &b)
    {
        check_same(a, b);
        return {a.value_ - b.value_, a.arity_};
    }
    friend tensor_element operator*(const tensor_element &a, const tensor_element &b)
    {
        check_same(a, b);
        return {a.value_ * b.value_, a.arity_};
    }
    friend bool operator==(const tensor_element &, const tensor_element &) = default;

private:
    static void check_same(const tensor_element &a, const tensor_element &b)
    {
        if (a.arity_ != b.arity_) {
            throw position_error("tensor elements of different arity");
        }
    }

    poly value_;
    int arity_ = 1;
};

inline std::string to_string(const tensor_element &e) { return to_string(e.value(), e.arity() > 1); }

/// Images of one Hopf generator: delta in arity 2, counit in the base ring,
/// antipode in arity 1.
struct hopf_generator {
    std::uint32_t index = 0;
    poly delta;
    poly counit;
    poly antipode;

    friend bool operator==(const hopf_generator &, const hopf_generator &) = default;
};

/// Commutative Hopf algebra presented by generators over a base ring. All
/// structure maps extend multiplicatively from the generator images; base-ring
/// scalars are fixed by every map.
class hopf_algebra
{
public:
    hopf_algebra() = default;

    hopf_algebra(std::string name, universe_ptr base, universe_ptr u, std::vector<hopf_generator> gens)
        : name_(std::move(name)), base_(std::move(base)), uni_(std::move(u)), gens_(std::move(gens))
    {
        if (!uni_) {
            uni_ = std::make_shared<const fghopf::universe>();
        }
        if (base_ && !base_->is_prefix_of(*uni_)) {
            throw universe_mismatch("Hopf algebra universe does not extend its base ring");
        }
        for (const auto &g : gens_) {
            const auto &decl = (*uni_)[g.index];
            if (decl.kind != generator_kind::hopf) {
                throw precondition_error("'" + decl.name + "' is not a Hopf generator");
            }
            if (max_tag(g.delta) > 2) {
                throw position_error("coproduct of '" + decl.name + "' uses a tag above 2");
            }
            if (max_tag(g.counit) != 0) {
                throw position_error("counit of '" + decl.name + "' must lie in the base ring");
            }
            if (max_tag(g.antipode) > 1) {
                throw position_error("antipode of '" + decl.name + "' uses a tag above 1");
            }
            if (slot_.size() <= g.index) {
                slot_.resize(g.index + 1, -1);
            }
            slot_[g.index] = static_cast<int>(&g - gens_.data());
        }
    }

    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] const universe_ptr &base_universe() const noexcept { return base_; }
    [[nodiscard]] const universe_ptr &universe() const noexcept { return uni_; }
    [[nodiscard]] const std::vector<hopf_generator> &generators() const noexcept { return gens_; }

    [[nodiscard]] const hopf_generator &structure(std::uint32_t gen) const
    {
        if (gen >= slot_.size() || slot_[gen] < 0) {
            throw missing_image("generator '" + (*uni_)[gen].name + "' has no structure maps");
        }
        return gens_[static_cast<std::size_t>(slot_[gen])];
    }

    [[nodiscard]] poly element(const std::string &name, std::uint32_t tag = 0) const
    {
        return poly::gen(uni_, name, tag);
    }

    friend bool operator==(const hopf_algebra &a, const hopf_algebra &b)
    {
        return a.name_ == b.name_ && *a.uni_ == *b.uni_ && a.gens_ == b.gens_;
    }

private:
    std::string name_;
    universe_ptr base_;
    universe_ptr uni_;
    std::vector<hopf_generator> gens_;
    std::vector<int> slot_;
};

namespace detail
{

inline void check_position(int p, int lo, int hi, const char *op)
{
    if (p < lo || p > hi) {
        throw position_error(std::string(op) + ": position " + std::to_string(p) + " outside [" +
                             std::to_string(lo) + "," + std::to_string(hi) + "]");
    }
}

inline poly shifted_var(const universe_ptr &u, var_id v, std::uint32_t tag)
{
    return poly::var(u, {v.gen, tag});
}

} // namespace detail

/// Applies delta to factor p; factor p becomes factors p, p+1.
inline tensor_element delta_at(const hopf_algebra &H, const tensor_element &e, int p,
                               std::optional<int> cutoff = std::nullopt)
{
    detail::check_position(p, 1, e.arity(), "delta_at");
    const auto u = common_universe(H.universe(), e.value().universe());
    const auto tp = static_cast<std::uint32_t>(p);
    auto image = [&](var_id v) -> poly {
        if (v.tag == 0 || v.tag < tp) {
            return poly::var(u, v);
        }
        if (v.tag > tp) {
            return detail::shifted_var(u, v, v.tag + 1);
        }
        return retag(H.structure(v.gen).delta, [&](std::uint32_t t) { return t + tp - 1; }).rebase(u);
    };
    return {map_variables(e.value(), image, u, cutoff), e.arity() + 1};
}

/// Applies the counit to factor p; higher factors move down.
inline tensor_element eps_at(const hopf_algebra &H, const tensor_element &e, int p,
                             std::optional<int> cutoff = std::nullopt)
{
    detail::check_position(p, 1, e.arity(), "eps_at");
    const auto u = common_universe(H.universe(), e.value().universe());
    const auto tp = static_cast<std::uint32_t>(p);
    auto image = [&](var_id v) -> poly {
        if (v.tag == 0 || v.tag < tp) {
            return poly::var(u, v);
        }
        if (v.tag > tp) {
            return detail::shifted_var(u, v, v.tag - 1);
        }
        return H.structure(v.gen).counit.rebase(u);
    };
    return {map_variables(e.value(), image, u, cutoff), e.arity() - 1};
}

/// Applies the antipode in place at factor p.
inline tensor_element antipode_at(const hopf_algebra &H, const tensor_element &e, int p,
                                  std::optional<int> cutoff = std::nullopt)
{
    detail::check_position(p, 1, e.arity(), "antipode_at");
    const auto u = common_universe(H.universe(), e.value().universe());
    const auto tp = static_cast<std::uint32_t>(p);
    auto image = [&](var_id v) -> poly {
        if (v.tag != tp) {
            return poly::var(u, v);
        }
        return retag(H.structure(v.gen).antipode, [&](std::uint32_t) { return tp; }).rebase(u);
    };
    return {map_variables(e.value(), image, u, cutoff), e.arity()};
}

/// Multiplies factors p and p+1 together.
inline tensor_element mu_merge(const tensor_element &e, int p)
{
    detail::check_position(p, 1, e.arity() - 1, "mu_merge");
    const auto tp = static_cast<std::uint32_t>(p);
    return {retag(e.value(), [&](std::uint32_t t) { return t <= tp ? t : t - 1; }), e.arity() - 1};
}

inline tensor_element flip(const tensor_element &e)
{
    if (e.arity() != 2) {
        throw position_error("flip needs an arity-2 element");
    }
    return {retag(e.value(), [](std::uint32_t t) { return 3 - t; }), 2};
}

/// Views e inside a larger tensor power, keeping its factor positions.
inline tensor_element embed(const tensor_element &e, int arity)
{
    if (arity < e.arity()) {
        throw position_error("cannot embed into a smaller tensor power");
    }
    return {e.value(), arity};
}

/// eta o epsilon, viewed back in arity 1.
inline tensor_element unit_counit(const hopf_algebra &H, const tensor_element &e)
{
    return {eps_at(H, e, 1).value(), 1};
}

/// One failed axiom on one element.
struct axiom_residual {
    std::string axiom;
    tensor_element residual;
};

/// Residuals of all Hopf axioms on an arity-1 element, modulo weight > cutoff,
/// each as lhs - rhs with (id (x) delta) delta on the left of coassociativity.
/// An empty result means every axiom holds on p.
inline std::vector<axiom_residual> hopf_axiom_residuals(const hopf_algebra &H, const poly &p, int cutoff)
{
    std::vector<axiom_residual> out;
    const tensor_element e(p, 1);
    auto check = [&](const char *name, const tensor_element &lhs, const tensor_element &rhs) {
        const tensor_element r(truncate((lhs - rhs).value(), cutoff), lhs.arity());
        if (!r.value().is_zero()) {
            out.push_back({name, r});
        }
    };
    const auto d = delta_at(H, e, 1);
    check("coassociativity", delta_at(H, d, 2), delta_at(H, d, 1));
    check("counit-left", eps_at(H, d, 1), e);
    check("counit-right", eps_at(H, d, 2), e);
    const auto ee = unit_counit(H, e);
    check("antipode-left", mu_merge(antipode_at(H, d, 1), 1), ee);
    check("antipode-right", mu_merge(antipode_at(H, d, 2), 1), ee);
    return out;
}

/// Checks the Hopf axioms on every generator (sufficient, since all maps are
/// algebra maps) plus a deterministic sample of generator products.
inline verification_report verify_hopf(const hopf_algebra &H, int cutoff, int product_samples = 8)
{
    verification_report r;
    r.subject = H.name();
    r.check = "hopf";
    r.cutoff = cutoff;
    report_timer timer(r);

    const auto &U = *H.universe();
    for (const auto &g : H.generators()) {
        for (const auto &f : hopf_axiom_residuals(H, poly::var(H.universe(), {g.index, 1}), cutoff)) {
            r.fail(U[g.index].name + ":" + f.axiom, to_string(f.residual));
        }
    }

    if (H.generators().empty() || product_samples <= 0) {
        return r;
    }
    std::mt19937 rng(0x5eedU);
    std::uniform_int_distribution<std::size_t> pick(0, H.generators().size() - 1);
    std::uniform_int_distribution<int> len(2, 3);
    std::set<std::string> seen;
    for (int s = 0; s < product_samples; ++s) {
        poly prod(1);
        std::string label;
        const int n = len(rng);
        for (int k = 0; k < n; ++k) {
            const auto &g = H.generators()[pick(rng)];
            prod = prod * poly::var(H.universe(), {g.index, 1});
            label += (label.empty() ? "" : "*") + U[g.index].name;
        }
        if (prod.min_weight() > cutoff || !seen.insert(label).second) {
            continue;
        }
        for (const auto &f : hopf_axiom_residuals(H, prod, cutoff)) {
            r.fail("product(" + label + "):" + f.axiom, to_string(f.residual));
        }
    }
    return r;
}

enum class builtin_hopf_kind { primitive, binomial };

/// Desk-scale Hopf algebras: generators g_1..g_n of degree step*i and weight
/// i, either primitive or with the binomial (divided-power style) coproduct
/// delta c_n = sum_{i+j=n} c_i (x) c_j, c_0 = 1. The binomial antipode is the
/// recursive solution of mu (id (x) S) delta = eta epsilon.
inline hopf_algebra builtin_hopf(builtin_hopf_kind kind, int n, int degree_step, const universe_ptr &base = nullptr,
                                 std::string name = "")
{
    if (n < 1) {
        throw precondition_error("builtin Hopf algebra needs at least one generator");
    }
    const bool prim = kind == builtin_hopf_kind::primitive;
    if (name.empty()) {
        name = prim ? "Prim" : "Binom";
    }
    auto u = extend_universe(base);
    std::vector<std::uint32_t> idx;
    for (int i = 1; i <= n; ++i) {
        std::string g = prim ? (n == 1 ? std::string("b") : "b" + std::to_string(i)) : "c" + std::to_string(i);
        idx.push_back(u->add({g, degree_step * i, i, generator_kind::hopf, false}));
    }
    const universe_ptr U = u;
    auto v = [&](int i, std::uint32_t tag) { return poly::var(U, {idx[static_cast<std::size_t>(i - 1)], tag}); };

    std::vector<hopf_generator> gens;
    std::vector<poly> S(static_cast<std::size_t>(n) + 1);
    S[0] = poly(1);
    for (int i = 1; i <= n; ++i) {
        hopf_generator g;
        g.index = idx[static_cast<std::size_t>(i - 1)];
        g.counit = poly(0);
        if (prim) {
            g.delta = v(i, 1) + v(i, 2);
            g.antipode = -v(i, 1);
        } else {
            poly d = v(i, 1) + v(i, 2);
            for (int a = 1; a < i; ++a) {
                d += v(a, 1) * v(i - a, 2);
            }
            g.delta = d;
            poly s(0);
            for (int a = 1; a <= i; ++a) {
                s -= v(a, 1) * S[static_cast<std::size_t>(i - a)];
            }
            g.antipode = s;
        }
        S[static_cast<std::size_t>(i)] = g.antipode;
        gens.push_back(std::move(g));
    }
    return hopf_algebra(std::move(name), base, U, std::move(gens));
}

/// The base ring viewed as a Hopf algebra over itself (no Hopf generators).
inline hopf_algebra trivial_hopf(const universe_ptr &base, std::string name = "R")
{
    return hopf_algebra(std::move(name), base, extend_universe(base), {});
}

} // namespace fghopf
