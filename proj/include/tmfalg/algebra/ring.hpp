#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tmfalg {

/// Raised when an algebraic precondition fails (non-unit division, mixed
/// moduli, incompatible generator tables, ...).
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxGenerators = 48;

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

struct Generator {
    std::string name;
    int weight = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Generator table plus coefficient modulus (0 means the integers).
///
/// Tables are append-only: a ring whose table is a prefix of another's (with
/// the same modulus) embeds positionally into it, so polynomials over the
/// smaller ring can be combined with polynomials over the larger one without
/// re-indexing.
class Ring {
public:
    Ring(std::vector<Generator> gens, std::uint64_t modulus)
        : gens_(std::move(gens)), modulus_(modulus)
    {
        if (gens_.size() > kMaxGenerators)
            throw AlgebraError("ring has more than " + std::to_string(kMaxGenerators) + " generators");
        if (modulus_ != 0 && !is_prime(modulus_))
            throw AlgebraError("modulus " + std::to_string(modulus_) + " is not prime");
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (gens_[i].name == gens_[j].name)
                    throw AlgebraError("duplicate generator name '" + gens_[i].name + "'");
    }

    static RingPtr make(std::vector<Generator> gens, std::uint64_t modulus = 0)
    {
        return std::make_shared<const Ring>(std::move(gens), modulus);
    }

    std::size_t size() const { return gens_.size(); }
    const Generator& generator(std::size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const { return gens_; }
    int weight(std::size_t i) const { return gens_[i].weight; }
    std::uint64_t modulus() const { return modulus_; }
    bool is_integral() const { return modulus_ == 0; }

    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name == name)
                return i;
        return std::nullopt;
    }

    std::size_t require(std::string_view name) const
    {
        if (auto i = index_of(name))
            return *i;
        throw AlgebraError("unknown generator '" + std::string(name) + "'");
    }

    /// True when this table is a prefix of `other` and the moduli agree.
    bool embeds_in(const Ring& other) const
    {
        if (modulus_ != other.modulus_ || gens_.size() > other.gens_.size())
            return false;
        return std::equal(gens_.begin(), gens_.end(), other.gens_.begin());
    }

    RingPtr extended(const std::vector<Generator>& extra) const
    {
        auto gens = gens_;
        gens.insert(gens.end(), extra.begin(), extra.end());
        return make(std::move(gens), modulus_);
    }

    RingPtr with_modulus(std::uint64_t modulus) const { return make(gens_, modulus); }

    friend bool operator==(const Ring& a, const Ring& b)
    {
        return a.modulus_ == b.modulus_ && a.gens_ == b.gens_;
    }

private:
    std::vector<Generator> gens_;
    std::uint64_t modulus_ = 0;
};

/// The smaller of two compatible rings embeds in the returned one.
inline RingPtr common_ring(const RingPtr& a, const RingPtr& b)
{
    if (a == b)
        return a;
    if (a->modulus() != b->modulus())
        throw AlgebraError("mixed moduli: " + std::to_string(a->modulus()) + " vs " +
                           std::to_string(b->modulus()));
    if (a->embeds_in(*b))
        return b;
    if (b->embeds_in(*a))
        return a;
    throw AlgebraError("incompatible generator tables");
}

} // namespace tmfalg
