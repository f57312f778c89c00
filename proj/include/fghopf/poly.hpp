#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <fghopf/error.hpp>
#include <fghopf/generator.hpp>

namespace fghopf
{

/// Exact coefficients. Documents are integral; rationals only appear as
/// elimination pivots in the constraint solver.
using coefficient = mpq_class;

inline bool is_integral(const coefficient &c) { return c.get_den() == 1; }

/// A generator together with its tensor-factor tag (0 for scalars).
struct var_id {
    std::uint32_t gen = 0;
    std::uint32_t tag = 0;

    friend auto operator<=>(const var_id &, const var_id &) = default;
};

struct factor {
    var_id var;
    std::uint32_t exp = 0;

    friend bool operator==(const factor &, const factor &) = default;
};

/// Sorted product of powers of tagged generators. The total weight is cached
/// since truncation consults it on every product.
class monomial
{
public:
    monomial() = default;

    monomial(var_id v, std::uint32_t exp, int unit_weight)
        : weight_(unit_weight * static_cast<int>(exp)), total_(exp)
    {
        if (exp != 0) {
            factors_.push_back({v, exp});
        }
    }

    [[nodiscard]] const std::vector<factor> &factors() const noexcept { return factors_; }
    [[nodiscard]] int weight() const noexcept { return weight_; }
    [[nodiscard]] std::uint32_t total_exponent() const noexcept { return total_; }
    [[nodiscard]] bool is_unit() const noexcept { return factors_.empty(); }

    [[nodiscard]] std::uint32_t exponent_of(var_id v) const
    {
        for (const auto &f : factors_) {
            if (f.var == v) {
                return f.exp;
            }
        }
        return 0;
    }

    friend monomial operator*(const monomial &a, const monomial &b)
    {
        monomial r;
        r.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() && j != b.factors_.end()) {
            if (i->var < j->var) {
                r.factors_.push_back(*i++);
            } else if (j->var < i->var) {
                r.factors_.push_back(*j++);
            } else {
                r.factors_.push_back({i->var, i->exp + j->exp});
                ++i;
                ++j;
            }
        }
        r.factors_.insert(r.factors_.end(), i, a.factors_.end());
        r.factors_.insert(r.factors_.end(), j, b.factors_.end());
        r.weight_ = a.weight_ + b.weight_;
        r.total_ = a.total_ + b.total_;
        return r;
    }

    friend bool operator==(const monomial &a, const monomial &b) { return a.factors_ == b.factors_; }

    // Graded by total exponent, then lexicographic with smaller generator
    // index (and higher power) first.
    friend std::strong_ordering operator<=>(const monomial &a, const monomial &b)
    {
        if (auto c = a.total_ <=> b.total_; c != 0) {
            return c;
        }
        const auto n = std::min(a.factors_.size(), b.factors_.size());
        for (std::size_t k = 0; k < n; ++k) {
            const auto &fa = a.factors_[k];
            const auto &fb = b.factors_[k];
            if (auto c = fa.var <=> fb.var; c != 0) {
                return c;
            }
            if (fa.exp != fb.exp) {
                return fb.exp <=> fa.exp;
            }
        }
        return a.factors_.size() <=> b.factors_.size();
    }

    /// Rebuild from arbitrary factors; merges repeated variables.
    static monomial from_factors(std::vector<factor> fs, const universe &u)
    {
        std::sort(fs.begin(), fs.end(), [](const factor &x, const factor &y) { return x.var < y.var; });
        monomial r;
        for (const auto &f : fs) {
            if (f.exp == 0) {
                continue;
            }
            if (!r.factors_.empty() && r.factors_.back().var == f.var) {
                r.factors_.back().exp += f.exp;
            } else {
                r.factors_.push_back(f);
            }
            r.weight_ += u[f.var.gen].weight * static_cast<int>(f.exp);
            r.total_ += f.exp;
        }
        return r;
    }

private:
    std::vector<factor> factors_;
    int weight_ = 0;
    std::uint32_t total_ = 0;
};

inline int degree(const universe &u, const monomial &m)
{
    int d = 0;
    for (const auto &f : m.factors()) {
        d += u[f.var.gen].degree * static_cast<int>(f.exp);
    }
    return d;
}

/// Sparse polynomial over a generator universe with exact coefficients. Zero
/// coefficients are never stored, so equality is structural.
class poly
{
public:
    using term_map = std::map<monomial, coefficient>;

    poly() = default;
    poly(long c) { add_term(monomial{}, coefficient(c)); }
    poly(const coefficient &c) { add_term(monomial{}, c); }

    static poly var(universe_ptr u, var_id v)
    {
        if (!u || v.gen >= u->size()) {
            throw precondition_error("variable outside its universe");
        }
        const auto &g = (*u)[v.gen];
        if (g.kind == generator_kind::scalar && v.tag != 0) {
            throw position_error("scalar generator '" + g.name + "' cannot carry a factor tag");
        }
        if (g.kind == generator_kind::hopf && v.tag == 0) {
            throw position_error("Hopf generator '" + g.name + "' needs a factor tag");
        }
        poly p;
        p.uni_ = u;
        p.add_term(monomial(v, 1, g.weight), coefficient(1));
        return p;
    }

    /// Generator by name; Hopf generators default to tag 1.
    static poly gen(const universe_ptr &u, std::string_view name, std::uint32_t tag = 0)
    {
        const auto idx = u ? u->find(std::string(name)) : std::nullopt;
        if (!idx) {
            throw precondition_error("unknown generator '" + std::string(name) + "'");
        }
        if ((*u)[*idx].kind == generator_kind::hopf && tag == 0) {
            tag = 1;
        }
        return var(u, {*idx, tag});
    }

    [[nodiscard]] const universe_ptr &universe() const noexcept { return uni_; }
    [[nodiscard]] const term_map &terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    [[nodiscard]] bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
    }

    [[nodiscard]] coefficient constant_term() const { return coefficient_of(monomial{}); }

    [[nodiscard]] coefficient coefficient_of(const monomial &m) const
    {
        const auto it = terms_.find(m);
        return it == terms_.end() ? coefficient(0) : it->second;
    }

    /// Smallest monomial weight; 0 for the zero polynomial.
    [[nodiscard]] int min_weight() const
    {
        int w = -1;
        for (const auto &[m, c] : terms_) {
            w = (w < 0) ? m.weight() : std::min(w, m.weight());
        }
        return w < 0 ? 0 : w;
    }

    [[nodiscard]] int max_weight() const
    {
        int w = 0;
        for (const auto &[m, c] : terms_) {
            w = std::max(w, m.weight());
        }
        return w;
    }

    [[nodiscard]] bool is_integral() const
    {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const auto &t) { return fghopf::is_integral(t.second); });
    }

    /// Same polynomial over an extension of its universe.
    [[nodiscard]] poly rebase(const universe_ptr &target) const
    {
        if (uni_ && uni_ != target && (!target || !uni_->is_prefix_of(*target))) {
            throw universe_mismatch("cannot rebase onto a universe that does not extend the original");
        }
        poly r = *this;
        r.uni_ = target;
        return r;
    }

    void add_term(const monomial &m, const coefficient &c)
    {
        if (sgn(c) == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) {
                terms_.erase(it);
            }
        }
    }

    /// Internal: adopt a universe for terms assembled by hand.
    void set_universe(universe_ptr u) { uni_ = std::move(u); }

    poly &operator+=(const poly &o)
    {
        uni_ = common_universe(uni_, o.uni_);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }

    poly &operator-=(const poly &o)
    {
        uni_ = common_universe(uni_, o.uni_);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }

    poly &operator*=(const poly &o)
    {
        *this = *this * o;
        return *this;
    }

    poly &operator*=(const coefficient &c)
    {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, v] : terms_) {
            v *= c;
        }
        return *this;
    }

    friend poly operator+(poly a, const poly &b) { return a += b; }
    friend poly operator-(poly a, const poly &b) { return a -= b; }

    friend poly operator-(poly a)
    {
        for (auto &[m, c] : a.terms_) {
            c = -c;
        }
        return a;
    }

    friend poly operator*(const poly &a, const poly &b) { return multiply(a, b, std::nullopt); }

    friend bool operator==(const poly &a, const poly &b) { return a.terms_ == b.terms_; }

    /// Product; monomials heavier than `cutoff` are skipped when it is set.
    static poly multiply(const poly &a, const poly &b, std::optional<int> cutoff)
    {
        poly r;
        r.uni_ = common_universe(a.uni_, b.uni_);
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                if (cutoff && ma.weight() + mb.weight() > *cutoff) {
                    continue;
                }
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }

private:
    universe_ptr uni_;
    term_map terms_;
};

/// Drops every monomial of weight > cutoff.
inline poly truncate(const poly &p, int cutoff)
{
    poly r;
    r.set_universe(p.universe());
    if (cutoff < 0) {
        return r;
    }
    for (const auto &[m, c] : p.terms()) {
        if (m.weight() <= cutoff) {
            r.add_term(m, c);
        }
    }
    return r;
}

inline poly mul_truncated(const poly &a, const poly &b, int cutoff)
{
    if (cutoff < 0) {
        return poly{}.rebase(common_universe(a.universe(), b.universe()));
    }
    return poly::multiply(a, b, cutoff);
}

inline poly pow(const poly &p, unsigned n, std::optional<int> cutoff = std::nullopt)
{
    poly result(1);
    result.set_universe(p.universe());
    poly base = p;
    while (n != 0) {
        if (n & 1U) {
            result = poly::multiply(result, base, cutoff);
        }
        n >>= 1U;
        if (n != 0) {
            base = poly::multiply(base, base, cutoff);
        }
    }
    return result;
}

struct homogeneity {
    enum class kind { zero, homogeneous, inhomogeneous };
    kind verdict = kind::zero;
    int degree = 0;
};

inline homogeneity homogeneity_check(const poly &p)
{
    if (p.is_zero()) {
        return {};
    }
    std::optional<int> d;
    for (const auto &[m, c] : p.terms()) {
        const int md = p.universe() ? degree(*p.universe(), m) : 0;
        if (d && *d != md) {
            return {homogeneity::kind::inhomogeneous, 0};
        }
        d = md;
    }
    return {homogeneity::kind::homogeneous, *d};
}

/// Algebra-homomorphism extension of a variable map. `image(v)` returns the
/// image of a single variable. Partial products heavier than `cutoff` are
/// pruned, which is exact because weights are nonnegative.
template <class ImageFn>
poly map_variables(const poly &p, ImageFn &&image, const universe_ptr &target,
                   std::optional<int> cutoff = std::nullopt)
{
    poly result;
    result.set_universe(common_universe(p.universe(), target));
    std::map<std::pair<var_id, std::uint32_t>, poly> powers;
    auto power_of = [&](var_id v, std::uint32_t e) -> const poly & {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it == powers.end()) {
            it = powers.emplace(key, pow(poly(image(v)), e, cutoff)).first;
        }
        return it->second;
    };
    for (const auto &[m, c] : p.terms()) {
        poly acc(c);
        for (const auto &f : m.factors()) {
            acc = poly::multiply(acc, power_of(f.var, f.exp), cutoff);
            if (acc.is_zero()) {
                break;
            }
        }
        result += acc;
    }
    return result;
}

/// Relabels tensor tags without expanding anything. Distinct variables that
/// collapse onto one tag multiply together.
template <class TagFn>
poly retag(const poly &p, TagFn &&tag_of)
{
    poly r;
    r.set_universe(p.universe());
    for (const auto &[m, c] : p.terms()) {
        std::vector<factor> fs;
        fs.reserve(m.factors().size());
        bool changed = false;
        for (const auto &f : m.factors()) {
            const std::uint32_t t = f.var.tag == 0 ? 0U : static_cast<std::uint32_t>(tag_of(f.var.tag));
            changed = changed || t != f.var.tag;
            fs.push_back({{f.var.gen, t}, f.exp});
        }
        if (!changed) {
            r.add_term(m, c);
        } else {
            r.add_term(monomial::from_factors(std::move(fs), *p.universe()), c);
        }
    }
    return r;
}

/// Largest tag occurring in p (0 when p only involves scalars).
inline std::uint32_t max_tag(const poly &p)
{
    std::uint32_t t = 0;
    for (const auto &[m, c] : p.terms()) {
        for (const auto &f : m.factors()) {
            t = std::max(t, f.var.tag);
        }
    }
    return t;
}

inline std::string to_string(const coefficient &c) { return c.get_str(); }

inline std::string to_string(const universe &u, const monomial &m, bool show_tags)
{
    std::string s;
    for (const auto &f : m.factors()) {
        if (!s.empty()) {
            s += '*';
        }
        s += u[f.var.gen].name;
        if (show_tags && f.var.tag != 0) {
            s += '<' + std::to_string(f.var.tag) + '>';
        }
        if (f.exp != 1) {
            s += '^' + std::to_string(f.exp);
        }
    }
    return s;
}

/// Canonical text. The output reparses to the same polynomial: since unary
/// minus binds tighter than '^', a leading "-b^2" is written "-1*b^2".
inline std::string to_string(const poly &p, bool show_tags = true)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto &[m, c] : p.terms()) {
        const bool neg = sgn(c) < 0;
        const coefficient a = neg ? coefficient(-c) : c;
        if (first) {
            s += neg ? "-" : "";
        } else {
            s += neg ? " - " : " + ";
        }
        if (m.is_unit()) {
            s += to_string(a);
        } else {
            const bool unit_coeff = a == 1;
            const bool guard = first && neg && unit_coeff && m.factors().front().exp > 1;
            if (!unit_coeff || guard) {
                s += to_string(a) + '*';
            }
            s += to_string(*p.universe(), m, show_tags);
        }
        first = false;
    }
    return s;
}

} // namespace fghopf
