#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace regdil {

/// Maximum number of generators; the dissipation table has 2^d entries.
inline constexpr std::size_t kMaxGenerators = 16;

/// Subset of generator indices {0, ..., d-1} stored as a bitmask.
///
/// Indices are zero-based inside the library; serialized reports use
/// one-based indices.
class Subset {
public:
    constexpr Subset() = default;
    constexpr explicit Subset(std::uint32_t mask) : mask_(mask) {}

    static constexpr Subset empty() { return Subset{}; }
    static constexpr Subset full(std::size_t d) { return Subset{(std::uint32_t{1} << d) - 1u}; }
    static constexpr Subset single(std::size_t index) { return Subset{std::uint32_t{1} << index}; }
    static Subset of(const std::vector<std::size_t>& indices) {
        Subset s;
        for (std::size_t i : indices) s.mask_ |= std::uint32_t{1} << i;
        return s;
    }

    constexpr std::uint32_t mask() const noexcept { return mask_; }
    constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
    constexpr bool is_empty() const noexcept { return mask_ == 0; }
    constexpr bool contains(std::size_t index) const noexcept { return (mask_ >> index) & 1u; }
    constexpr bool is_subset_of(Subset other) const noexcept { return (mask_ & ~other.mask_) == 0; }
    /// Largest index is below d.
    constexpr bool fits(std::size_t d) const noexcept { return d >= 32 || (mask_ >> d) == 0; }

    constexpr Subset with(std::size_t index) const noexcept { return Subset{mask_ | (std::uint32_t{1} << index)}; }
    constexpr Subset without(std::size_t index) const noexcept { return Subset{mask_ & ~(std::uint32_t{1} << index)}; }
    constexpr Subset operator|(Subset o) const noexcept { return Subset{mask_ | o.mask_}; }
    constexpr Subset operator&(Subset o) const noexcept { return Subset{mask_ & o.mask_}; }
    constexpr Subset minus(Subset o) const noexcept { return Subset{mask_ & ~o.mask_}; }

    /// Ascending zero-based indices.
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        return out;
    }

    /// Largest member; undefined for the empty set.
    constexpr std::size_t highest() const noexcept { return 31u - static_cast<std::size_t>(std::countl_zero(mask_)); }

    /// Every K' with K' subset of this set, each exactly once, in increasing mask order.
    std::vector<Subset> subsets() const {
        std::vector<Subset> out;
        out.reserve(std::size_t{1} << size());
        // Enumerate submasks from 0 upwards: next = (sub - mask) & mask.
        std::uint32_t sub = 0;
        do {
            out.emplace_back(sub);
            sub = (sub - mask_) & mask_;
        } while (sub != 0);
        return out;
    }

    /// Ordered pairs (C1, C2) with C1 and C2 disjoint and C1 | C2 equal to
    /// this set: one per subset C1, so 2^|K| pairs.
    std::vector<std::pair<Subset, Subset>> partitions() const {
        std::vector<std::pair<Subset, Subset>> out;
        for (Subset c1 : subsets()) out.emplace_back(c1, minus(c1));
        return out;
    }

    constexpr bool operator==(const Subset&) const = default;
    constexpr auto operator<=>(const Subset&) const = default;

private:
    std::uint32_t mask_ = 0;
};

}  // namespace regdil
