#ifndef DUALITY_GUARD_RNG_HH
#define DUALITY_GUARD_RNG_HH 1

#include <cstdint>
#include <random>
#include <string_view>

namespace duality
{
    /// Seeded generator used by every corpus generator. The engine is the
    /// standard mt19937_64 and bounded draws use rejection sampling on raw
    /// 64-bit outputs, so sequences are reproducible across implementations
    /// (std::uniform_int_distribution is not).
    class Rng
    {
    private:
        std::mt19937_64 _engine;

    public:
        static constexpr std::string_view algorithm = "mt19937_64/rejection-v1";

        explicit Rng(std::uint64_t seed) : _engine(seed) {}

        auto next() -> std::uint64_t
        {
            return _engine();
        }

        /// Uniform in [0, bound); bound must be positive.
        auto below(std::uint64_t bound) -> std::uint64_t;

        /// Uniform in [lo, hi].
        auto between(int lo, int hi) -> int;

        /// True with probability num / den.
        auto chance(std::uint64_t num, std::uint64_t den) -> bool;

        template <typename V_>
        auto shuffle(V_ & v) -> void
        {
            for (std::size_t i = v.size(); i > 1; --i) {
                auto j = below(i);
                std::swap(v[i - 1], v[j]);
            }
        }
    };
}

#endif
