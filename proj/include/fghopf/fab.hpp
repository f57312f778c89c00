#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <fghopf/error.hpp>
#include <fghopf/report.hpp>

namespace fghopf
{

using pair_t = std::pair<std::int64_t, std::int64_t>;

/// Ordered pairs (k_j, l_j) of positive integers, optionally with dim X.
struct pair_chain {
    std::vector<pair_t> pairs;
    std::optional<std::int64_t> dim;

    friend bool operator==(const pair_chain &, const pair_chain &) = default;
};

inline void validate_chain(const pair_chain &c)
{
    for (const auto &[k, l] : c.pairs) {
        if (k < 1 || l < 1) {
            throw precondition_error("chain entries must be positive");
        }
    }
    if (c.dim && *c.dim < 0) {
        throw precondition_error("dim must be nonnegative");
    }
}

inline std::string to_string(const pair_t &p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; }

/// A subgroup of Q arising as a homotopy group or a direct limit.
struct limit_group {
    enum class kind { trivial, integers, cyclic_fraction, localization };
    kind k = kind::trivial;
    mpz_class denominator = 1;          // generator 1/D for cyclic_fraction
    std::set<unsigned long> inverted;   // primes of D, or of the localization
};

inline std::string to_string(const limit_group &g)
{
    auto primes = [&] {
        std::string s = "{";
        for (auto p : g.inverted) {
            s += (s.size() > 1 ? "," : "") + std::to_string(p);
        }
        return s + "}";
    };
    switch (g.k) {
    case limit_group::kind::trivial:
        return "0";
    case limit_group::kind::integers:
        return "Z";
    case limit_group::kind::cyclic_fraction:
        return "(1/" + g.denominator.get_str() + ")Z, inverted primes " + primes();
    case limit_group::kind::localization:
        return "Z localized at primes " + primes();
    }
    return "?";
}

inline std::set<unsigned long> prime_factors(mpz_class n)
{
    std::set<unsigned long> out;
    for (unsigned long p = 2; n > 1; ++p) {
        if (mpz_class(p) * p > n) {
            out.insert(n.get_ui());
            break;
        }
        while (n % p == 0) {
            out.insert(p);
            n /= p;
        }
    }
    return out;
}

/// gcd(m,n) / gcd(k,l): the factor by which (k,l) -> (m,n) acts on the
/// stable generator. Needs k | m and l | n.
inline std::int64_t transition_multiplier(std::int64_t k, std::int64_t l, std::int64_t m, std::int64_t n)
{
    if (k < 1 || l < 1 || m < 1 || n < 1) {
        throw precondition_error("multiplier arguments must be positive");
    }
    if (m % k != 0 || n % l != 0) {
        throw precondition_error("no morphism: need k | m and l | n");
    }
    return std::gcd(m, n) / std::gcd(k, l);
}

/// pi_r of Gr_{k,kl} in the stable range r < 2 min(k,l).
inline limit_group stable_homotopy_group(int r, std::int64_t k, std::int64_t l)
{
    if (r < 0 || k < 1 || l < 1) {
        throw precondition_error("homotopy degree and parameters must be nonnegative / positive");
    }
    if (r >= 2 * std::min(k, l)) {
        throw precondition_error("degree " + std::to_string(r) + " outside the stable range r < 2 min(k,l)");
    }
    limit_group g;
    g.k = r % 2 == 0 && r > 2 ? limit_group::kind::integers : limit_group::kind::trivial;
    return g;
}

/// Conditions (ii) k_j | k_{j+1}, l_j | l_{j+1} and (iii) gcd(k_j, l_j) = 1,
/// located at the 1-based index j of the offending pair. Growth of the entries
/// is only an advisory note: finite data cannot witness a limit.
inline verification_report validate_limit_sequence(const pair_chain &c, std::string subject = "chain")
{
    verification_report r;
    r.subject = std::move(subject);
    r.check = "limit-sequence";
    report_timer timer(r);
    validate_chain(c);
    const auto &p = c.pairs;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const auto idx = std::to_string(j + 1);
        if (j > 0) {
            if (p[j].first % p[j - 1].first != 0) {
                r.fail("(ii)@" + idx, "k: " + std::to_string(p[j - 1].first) + " does not divide " +
                                          std::to_string(p[j].first));
            }
            if (p[j].second % p[j - 1].second != 0) {
                r.fail("(ii)@" + idx, "l: " + std::to_string(p[j - 1].second) + " does not divide " +
                                          std::to_string(p[j].second));
            }
        }
        if (const auto g = std::gcd(p[j].first, p[j].second); g != 1) {
            r.fail("(iii)@" + idx, "gcd" + to_string(p[j]) + "=" + std::to_string(g));
        }
    }
    const bool grows = p.size() > 1 && p.back().first > p.front().first && p.back().second > p.front().second;
    r.notes.push_back(std::string("advisory (i): entries ") + (grows ? "grow" : "do not grow") +
                      " across the finite prefix");
    return r;
}

/// Endpoints {t_1,u_1} = {k,l}, {t_s,u_s} = {m,n} (as sets) and
/// gcd(t_i t_{i+1}, u_i u_{i+1}) = 1 for every adjacent pair.
inline verification_report validate_stable_chain(const pair_chain &c, pair_t first, pair_t last,
                                                 std::string subject = "chain")
{
    verification_report r;
    r.subject = std::move(subject);
    r.check = "stable-chain";
    report_timer timer(r);
    validate_chain(c);
    auto same_set = [](pair_t a, pair_t b) {
        return std::minmax(a.first, a.second) == std::minmax(b.first, b.second);
    };
    const auto &p = c.pairs;
    if (p.empty()) {
        r.fail("chain", "empty");
        return r;
    }
    if (!same_set(p.front(), first)) {
        r.fail("first", to_string(p.front()) + " vs " + to_string(first));
    }
    if (!same_set(p.back(), last)) {
        r.fail("last", to_string(p.back()) + " vs " + to_string(last));
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const mpz_class t = mpz_class(static_cast<long>(p[i].first)) * static_cast<long>(p[i + 1].first);
        const mpz_class u = mpz_class(static_cast<long>(p[i].second)) * static_cast<long>(p[i + 1].second);
        const mpz_class g = gcd(t, u);
        if (g != 1) {
            r.fail("(ii)@" + std::to_string(i + 1),
                   "gcd(" + t.get_str() + "," + u.get_str() + ")=" + g.get_str());
        }
    }
    r.notes.push_back("the FAB isomorphism condition of stable equivalence is out of scope and not checked");
    return r;
}

/// gcd(km, ln) = 1, tested factorwise so no product is formed.
inline bool tensor_admissible(std::int64_t k, std::int64_t l, std::int64_t m, std::int64_t n)
{
    return std::gcd(k, l) == 1 && std::gcd(k, n) == 1 && std::gcd(m, l) == 1 && std::gcd(m, n) == 1;
}

/// gcd(k,l) = 1 and 2 min(k,l) > dim X.
inline bool representative_exists(std::int64_t k, std::int64_t l, std::int64_t dim)
{
    return std::gcd(k, l) == 1 && 2 * std::min(k, l) > dim;
}

/// Colimit of Z -a1-> Z -a2-> ... over a finite chain: the subgroup
/// (1/prod a_i) Z of Q, or Z itself when every multiplier is 1.
inline limit_group finite_direct_limit(const std::vector<std::int64_t> &multipliers)
{
    mpz_class D = 1;
    for (auto a : multipliers) {
        if (a < 1) {
            throw precondition_error("multipliers must be positive");
        }
        D *= static_cast<long>(a);
    }
    limit_group g;
    if (D == 1) {
        g.k = limit_group::kind::integers;
        return g;
    }
    g.k = limit_group::kind::cyclic_fraction;
    g.denominator = D;
    g.inverted = prime_factors(D);
    return g;
}

/// Localization of Z suggested by repeating the prefix: the primes of
/// prod a_i become invertible. A prefix invariant only.
inline limit_group prefix_localization(const std::vector<std::int64_t> &multipliers)
{
    auto g = finite_direct_limit(multipliers);
    if (g.k == limit_group::kind::cyclic_fraction) {
        g.k = limit_group::kind::localization;
        g.denominator = 1;
    }
    return g;
}

/// Consecutive transition multipliers along a chain satisfying (ii).
inline std::vector<std::int64_t> chain_multipliers(const pair_chain &c)
{
    std::vector<std::int64_t> out;
    for (std::size_t j = 0; j + 1 < c.pairs.size(); ++j) {
        out.push_back(transition_multiplier(c.pairs[j].first, c.pairs[j].second, c.pairs[j + 1].first,
                                            c.pairs[j + 1].second));
    }
    return out;
}

} // namespace fghopf
