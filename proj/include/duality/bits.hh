#ifndef DUALITY_GUARD_BITS_HH
#define DUALITY_GUARD_BITS_HH 1

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace duality
{
    /// Subsets of a universe of at most 64 elements, one bit per element.
    using Mask = std::uint64_t;

    inline constexpr int mask_bits = 64;

    constexpr auto bit(int i) -> Mask
    {
        return Mask{1} << i;
    }

    constexpr auto full_mask(int n) -> Mask
    {
        return n >= mask_bits ? ~Mask{0} : (Mask{1} << n) - 1;
    }

    constexpr auto popcount(Mask m) -> int
    {
        return std::popcount(m);
    }

    constexpr auto has_bit(Mask m, int i) -> bool
    {
        return (m >> i) & 1;
    }

    constexpr auto is_subset(Mask a, Mask b) -> bool
    {
        return (a & ~b) == 0;
    }

    template <typename F_>
    auto for_each_bit(Mask m, F_ && f) -> void
    {
        while (m) {
            f(std::countr_zero(m));
            m &= m - 1;
        }
    }

    auto mask_to_indices(Mask m) -> std::vector<int>;

    /// Throws Error(InvalidInput) for indices outside [0, universe).
    auto indices_to_mask(std::span<const int> indices, int universe) -> Mask;

    /// Lexicographic comparison of mask tuples after total popcount: the order
    /// used for every reported minimal counterexample.
    auto witness_less(std::span<const Mask> a, std::span<const Mask> b) -> bool;
}

#endif
