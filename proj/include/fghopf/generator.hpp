#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <fghopf/error.hpp>

namespace fghopf
{

/// Scalars live in the base ring and are never tensor-tagged; Hopf generators
/// always carry a factor tag >= 1.
enum class generator_kind { scalar, hopf };

struct generator_decl {
    std::string name;
    // Cohomological degree; series variables have degree 2.
    int degree = 0;
    // Augmentation-filtration weight used for truncation.
    int weight = 1;
    generator_kind kind = generator_kind::scalar;
    // Solver-introduced free symbol. Unknowns have weight 0.
    bool unknown = false;

    friend bool operator==(const generator_decl &, const generator_decl &) = default;
};

/// Append-only list of generators. Indices are stable, so a universe built by
/// copying another one and appending generators extends it: every polynomial
/// over the original is also a polynomial over the extension.
class universe
{
public:
    universe() = default;

    std::uint32_t add(generator_decl g)
    {
        if (g.name.empty()) {
            throw precondition_error("generator name must not be empty");
        }
        if (!g.unknown && g.weight < 1) {
            throw precondition_error("generator '" + g.name + "' must have weight >= 1");
        }
        if (g.unknown && g.weight < 0) {
            throw precondition_error("unknown '" + g.name + "' must have nonnegative weight");
        }
        if (by_name_.count(g.name) != 0) {
            throw precondition_error("duplicate generator name '" + g.name + "'");
        }
        const auto idx = static_cast<std::uint32_t>(gens_.size());
        by_name_.emplace(g.name, idx);
        gens_.push_back(std::move(g));
        return idx;
    }

    [[nodiscard]] std::optional<std::uint32_t> find(const std::string &name) const
    {
        const auto it = by_name_.find(name);
        if (it == by_name_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    [[nodiscard]] const generator_decl &operator[](std::uint32_t i) const { return gens_.at(i); }
    [[nodiscard]] std::size_t size() const noexcept { return gens_.size(); }
    [[nodiscard]] const std::vector<generator_decl> &generators() const noexcept { return gens_; }

    /// True when every generator of *this sits at the same index in `other`.
    [[nodiscard]] bool is_prefix_of(const universe &other) const
    {
        if (gens_.size() > other.gens_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (!(gens_[i] == other.gens_[i])) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const universe &a, const universe &b) { return a.gens_ == b.gens_; }

private:
    std::vector<generator_decl> gens_;
    std::map<std::string, std::uint32_t> by_name_;
};

using universe_ptr = std::shared_ptr<const universe>;

/// The larger of two compatible universes; null stands for "no generators".
inline universe_ptr common_universe(const universe_ptr &a, const universe_ptr &b)
{
    if (a == b || !b) {
        return a;
    }
    if (!a) {
        return b;
    }
    if (a->is_prefix_of(*b)) {
        return b;
    }
    if (b->is_prefix_of(*a)) {
        return a;
    }
    throw universe_mismatch("operands live over incompatible generator universes");
}

/// Copy of `base` (possibly null) ready to receive more generators.
inline std::shared_ptr<universe> extend_universe(const universe_ptr &base)
{
    return base ? std::make_shared<universe>(*base) : std::make_shared<universe>();
}

} // namespace fghopf
