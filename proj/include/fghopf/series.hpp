#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <fghopf/error.hpp>
#include <fghopf/poly.hpp>

namespace fghopf
{

using multi_index = std::vector<int>;

inline int total_degree(const multi_index &a) { return std::accumulate(a.begin(), a.end(), 0); }

/// Graded-lex order on series multidegrees: total degree first, then
/// lexicographic with the first variable largest, so [1,1,0] < [1,0,1].
struct graded_lex {
    bool operator()(const multi_index &a, const multi_index &b) const
    {
        const int ta = total_degree(a);
        const int tb = total_degree(b);
        if (ta != tb) {
            return ta < tb;
        }
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

inline std::string to_string(const multi_index &a)
{
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (i ? "," : "") + std::to_string(a[i]);
    }
    return s + "]";
}

/// Power series in a few variables whose coefficients lie in the arity-fold
/// tensor power of a Hopf algebra (arity 0 or 1 for ring coefficients).
/// Series variables have weight 1, so a term x^a * m is kept iff
/// |a| + weight(m) <= cutoff.
class truncated_series
{
public:
    using term_map = std::map<multi_index, poly, graded_lex>;

    truncated_series() = default;

    truncated_series(std::vector<std::string> vars, int arity, int cutoff)
        : vars_(std::move(vars)), arity_(arity), cutoff_(cutoff)
    {
        if (vars_.size() > 4) {
            throw position_error("series support at most four variables");
        }
        if (arity_ < 0) {
            throw position_error("negative coefficient arity");
        }
        if (cutoff_ < 0) {
            throw precondition_error("negative truncation cutoff");
        }
    }

    static truncated_series variable(std::vector<std::string> vars, int arity, int cutoff, std::size_t k)
    {
        truncated_series s(std::move(vars), arity, cutoff);
        if (k >= s.nvars()) {
            throw position_error("series variable index out of range");
        }
        multi_index a(s.nvars(), 0);
        a[k] = 1;
        s.set(a, poly(1));
        return s;
    }

    static truncated_series constant(std::vector<std::string> vars, int arity, int cutoff, const poly &c)
    {
        truncated_series s(std::move(vars), arity, cutoff);
        s.set(multi_index(s.nvars(), 0), c);
        return s;
    }

    [[nodiscard]] const std::vector<std::string> &vars() const noexcept { return vars_; }
    [[nodiscard]] std::size_t nvars() const noexcept { return vars_.size(); }
    [[nodiscard]] int arity() const noexcept { return arity_; }
    [[nodiscard]] int cutoff() const noexcept { return cutoff_; }
    [[nodiscard]] const term_map &terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] poly coefficient(const multi_index &a) const
    {
        const auto it = terms_.find(a);
        return it == terms_.end() ? poly{} : it->second;
    }

    [[nodiscard]] universe_ptr universe() const
    {
        universe_ptr u;
        for (const auto &[a, c] : terms_) {
            u = common_universe(u, c.universe());
        }
        return u;
    }

    /// Stores c at multidegree a after truncating it to the remaining budget.
    void set(const multi_index &a, const poly &c)
    {
        check_index(a);
        check_arity(c);
        const int budget = cutoff_ - total_degree(a);
        poly t = budget < 0 ? poly{} : truncate(c, budget);
        if (t.is_zero()) {
            terms_.erase(a);
        } else {
            terms_[a] = std::move(t);
        }
    }

    void add_to(const multi_index &a, const poly &c)
    {
        if (c.is_zero()) {
            return;
        }
        auto it = terms_.find(a);
        set(a, it == terms_.end() ? c : it->second + c);
    }

    /// Same terms under a new cutoff. Raising the cutoff reads the stored
    /// terms as an exact polynomial.
    [[nodiscard]] truncated_series with_cutoff(int cutoff) const
    {
        truncated_series r(vars_, arity_, cutoff);
        for (const auto &[a, c] : terms_) {
            r.set(a, c);
        }
        return r;
    }

    [[nodiscard]] truncated_series renamed(std::vector<std::string> vars) const
    {
        if (vars.size() != vars_.size()) {
            throw position_error("renaming must keep the number of variables");
        }
        truncated_series r = *this;
        r.vars_ = std::move(vars);
        return r;
    }

    truncated_series &operator+=(const truncated_series &o)
    {
        check_compatible(o);
        if (o.cutoff_ < cutoff_) {
            *this = with_cutoff(o.cutoff_);
        }
        for (const auto &[a, c] : o.terms_) {
            add_to(a, c);
        }
        return *this;
    }

    truncated_series &operator-=(const truncated_series &o)
    {
        check_compatible(o);
        if (o.cutoff_ < cutoff_) {
            *this = with_cutoff(o.cutoff_);
        }
        for (const auto &[a, c] : o.terms_) {
            add_to(a, -c);
        }
        return *this;
    }

    friend truncated_series operator+(truncated_series a, const truncated_series &b) { return a += b; }
    friend truncated_series operator-(truncated_series a, const truncated_series &b) { return a -= b; }

    friend truncated_series operator-(truncated_series a)
    {
        for (auto &[k, c] : a.terms_) {
            c = -c;
        }
        return a;
    }

    friend truncated_series operator*(const truncated_series &f, const truncated_series &g)
    {
        f.check_compatible(g);
        truncated_series r(f.vars_, f.arity_, std::min(f.cutoff_, g.cutoff_));
        for (const auto &[a, ca] : f.terms_) {
            const int ta = total_degree(a);
            if (ta > r.cutoff_) {
                break;
            }
            for (const auto &[b, cb] : g.terms_) {
                const int budget = r.cutoff_ - ta - total_degree(b);
                if (budget < 0) {
                    break;
                }
                multi_index ab(a.size());
                for (std::size_t k = 0; k < a.size(); ++k) {
                    ab[k] = a[k] + b[k];
                }
                r.add_to(ab, mul_truncated(ca, cb, budget));
            }
        }
        return r;
    }

    /// Coefficientwise equality at the smaller of the two cutoffs.
    friend bool operator==(const truncated_series &f, const truncated_series &g)
    {
        if (f.vars_.size() != g.vars_.size() || f.arity_ != g.arity_) {
            return false;
        }
        const int w = std::min(f.cutoff_, g.cutoff_);
        return f.with_cutoff(w).terms_ == g.with_cutoff(w).terms_;
    }

    /// Same variables and arity; the cutoff is part of the value.
    [[nodiscard]] bool identical(const truncated_series &o) const
    {
        return vars_ == o.vars_ && arity_ == o.arity_ && cutoff_ == o.cutoff_ && terms_ == o.terms_;
    }

private:
    void check_index(const multi_index &a) const
    {
        if (a.size() != vars_.size()) {
            throw position_error("multidegree " + to_string(a) + " does not match " +
                                 std::to_string(vars_.size()) + " series variables");
        }
        for (int e : a) {
            if (e < 0) {
                throw position_error("negative exponent in multidegree " + to_string(a));
            }
        }
    }

    void check_arity(const poly &c) const
    {
        if (static_cast<int>(max_tag(c)) > arity_) {
            throw position_error("coefficient uses factor tag " + std::to_string(max_tag(c)) +
                                 " in an arity-" + std::to_string(arity_) + " series");
        }
    }

    void check_compatible(const truncated_series &o) const
    {
        if (vars_.size() != o.vars_.size()) {
            throw position_error("series have different numbers of variables");
        }
        if (arity_ != o.arity_) {
            throw position_error("series have different coefficient arities");
        }
    }

    std::vector<std::string> vars_;
    int arity_ = 1;
    int cutoff_ = 0;
    term_map terms_;
};

inline truncated_series pow(const truncated_series &f, unsigned n)
{
    auto r = truncated_series::constant(f.vars(), f.arity(), f.cutoff(), poly(1));
    for (unsigned i = 0; i < n; ++i) {
        r = r * f;
        if (r.is_zero()) {
            break;
        }
    }
    return r;
}

/// Applies `fn` to every coefficient; the result has arity `new_arity`.
template <class Fn>
truncated_series map_coefficients(const truncated_series &f, Fn &&fn, int new_arity)
{
    truncated_series r(f.vars(), new_arity, f.cutoff());
    for (const auto &[a, c] : f.terms()) {
        r.add_to(a, fn(c, f.cutoff() - total_degree(a)));
    }
    return r;
}

/// True when the weight-0 part of the constant coefficient vanishes.
inline bool augmentation_positive(const truncated_series &g)
{
    const poly c = g.coefficient(multi_index(g.nvars(), 0));
    return c.is_zero() || c.min_weight() >= 1;
}

/// f(g_1, ..., g_n) for f in n variables. The images share their variables
/// and arity; f's coefficients must fit that arity.
inline truncated_series substitute(const truncated_series &f, std::span<const truncated_series> images)
{
    if (images.size() != f.nvars()) {
        throw position_error("substitution needs one image per series variable");
    }
    if (images.empty()) {
        throw position_error("substitution into a series without variables");
    }
    const auto &target = images.front();
    int cutoff = f.cutoff();
    for (const auto &g : images) {
        if (g.nvars() != target.nvars() || g.arity() != target.arity()) {
            throw position_error("substitution images disagree on variables or arity");
        }
        if (!augmentation_positive(g)) {
            throw convergence_error("substituted series has a constant term of weight 0");
        }
        cutoff = std::min(cutoff, g.cutoff());
    }
    if (f.arity() > target.arity()) {
        throw position_error("coefficient arity exceeds the arity of the substituted series");
    }

    std::vector<std::vector<truncated_series>> powers(images.size());
    auto power = [&](std::size_t k, int e) -> const truncated_series & {
        auto &pk = powers[k];
        if (pk.empty()) {
            pk.push_back(truncated_series::constant(target.vars(), target.arity(), cutoff, poly(1)));
        }
        while (static_cast<int>(pk.size()) <= e) {
            pk.push_back(pk.back() * images[k].with_cutoff(cutoff));
        }
        return pk[static_cast<std::size_t>(e)];
    };

    truncated_series result(target.vars(), target.arity(), cutoff);
    for (const auto &[a, c] : f.terms()) {
        if (total_degree(a) > cutoff) {
            break;
        }
        auto term = truncated_series::constant(target.vars(), target.arity(), cutoff, c);
        for (std::size_t k = 0; k < a.size() && !term.is_zero(); ++k) {
            if (a[k] != 0) {
                term = term * power(k, a[k]);
            }
        }
        result += term;
    }
    return result;
}

inline truncated_series substitute(const truncated_series &f, std::initializer_list<truncated_series> images)
{
    const std::vector<truncated_series> v(images);
    return substitute(f, std::span<const truncated_series>(v));
}

/// Moves coefficient tag t to tag_map[t-1]; the map must be injective.
inline truncated_series retag_series(const truncated_series &f, const std::vector<std::uint32_t> &tag_map,
                                     int new_arity, std::optional<std::vector<std::string>> vars = std::nullopt)
{
    std::vector<std::uint32_t> seen = tag_map;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw precondition_error("tag map is not injective");
    }
    for (auto t : tag_map) {
        if (t < 1 || static_cast<int>(t) > new_arity) {
            throw position_error("tag map leaves the target arity");
        }
    }
    auto r = map_coefficients(
        f,
        [&](const poly &c, int) {
            return retag(c, [&](std::uint32_t t) {
                if (t > tag_map.size()) {
                    throw position_error("tag map does not cover tag " + std::to_string(t));
                }
                return tag_map[t - 1];
            });
        },
        new_arity);
    return vars ? r.renamed(std::move(*vars)) : r;
}

enum class inverse_side { left, right };

/// Solves F(x, theta(x)) = 0 (right) or F(theta(x), x) = 0 (left) by the
/// linear iteration theta <- theta - c^{-1} F(.), where c is the coefficient of
/// the solved-for variable. Each pass fixes one more weight level.
inline truncated_series solve_functional_inverse(const truncated_series &F, inverse_side side,
                                                 const std::string &var = "x")
{
    if (F.nvars() != 2) {
        throw position_error("functional inverse needs a series in two variables");
    }
    const int W = F.cutoff();
    const poly lead = F.coefficient(side == inverse_side::right ? multi_index{0, 1} : multi_index{1, 0});
    const coefficient c0 = lead.constant_term();
    if (!(c0 == 1 || c0 == -1) || (!(lead - poly(c0)).is_zero() && (lead - poly(c0)).min_weight() < 1)) {
        throw precondition_error("leading coefficient " + to_string(lead, F.arity() > 1) +
                                 " is not a truncation-unit");
    }

    // (c0 (1 + n))^{-1} = c0 * sum_k (-n)^k, valid since n has weight >= 1.
    const poly n = poly(c0) * lead - poly(1);
    poly inv(0);
    poly term(1);
    for (int k = 0; k <= W && !term.is_zero(); ++k) {
        inv += term;
        term = mul_truncated(term, -n, W);
    }
    inv = poly(c0) * inv;

    const std::vector<std::string> vars{var};
    const auto x = truncated_series::variable(vars, F.arity(), W, 0);
    const auto inv_s = truncated_series::constant(vars, F.arity(), W, inv);
    truncated_series theta(vars, F.arity(), W);
    for (int pass = 0; pass <= W + 1; ++pass) {
        const auto residual = side == inverse_side::right ? substitute(F, {x, theta}) : substitute(F, {theta, x});
        if (residual.is_zero()) {
            return theta;
        }
        theta -= inv_s * residual;
    }
    throw convergence_error("functional inverse did not converge");
}

/// Canonical one-line rendering, e.g. "x + y + (b<1> - b<2>)*x*y".
inline std::string to_string(const truncated_series &f)
{
    if (f.is_zero()) {
        return "0";
    }
    const bool tags = f.arity() > 1;
    std::string s;
    bool first = true;
    for (const auto &[a, c] : f.terms()) {
        std::string mono;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] == 0) {
                continue;
            }
            mono += (mono.empty() ? "" : "*") + f.vars()[k];
            if (a[k] != 1) {
                mono += "^" + std::to_string(a[k]);
            }
        }
        std::string cs = to_string(c, tags);
        bool neg = false;
        if (c.size() == 1 && c.terms().begin()->first.is_unit()) {
            neg = sgn(c.terms().begin()->second) < 0;
            cs = to_string(neg ? poly(coefficient(-c.constant_term())) : c, tags);
        } else if (c.size() == 1 && !mono.empty()) {
            neg = sgn(c.terms().begin()->second) < 0;
            cs = to_string(neg ? -c : c, tags);
        } else if (c.size() > 1 && !mono.empty()) {
            cs = "(" + cs + ")";
        }
        std::string t;
        if (mono.empty()) {
            t = cs;
        } else if (cs == "1") {
            t = mono;
        } else {
            t = cs + "*" + mono;
        }
        if (first) {
            s = (neg ? "-" : "") + t;
        } else {
            s += (neg ? " - " : " + ") + t;
        }
        first = false;
    }
    return s;
}

} // namespace fghopf
