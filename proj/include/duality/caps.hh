#ifndef DUALITY_GUARD_CAPS_HH
#define DUALITY_GUARD_CAPS_HH 1

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace duality
{
    /// Named limits. Every exponential sweep in the library checks one of
    /// these and fails with ErrorKind::CapExceeded beyond it.
    struct Caps
    {
        int powerset = 24;             ///< brute-force 2^n sweeps
        long long homs = 1ll << 20;    ///< materialised homomorphisms
        int axioms = 14;               ///< i0, i2, i4, i5, c0, c1 sweeps
        int axioms_pairs = 10;         ///< i1, i3 sweeps
        int bidual_source = 6;         ///< |X| for bidual computations
        int bidual_dual = 64;          ///< |X*| for bidual computations
        int normal = 10;               ///< normality and Pasch-form sweeps
        int exhaustive = 4;            ///< exhaustive labelled generation
        int distributive = 8;          ///< brute-force distributivity check
        long long timeout_ms = 0;      ///< wall-clock budget, 0 = none

        /// Parses "name=value,name=value" and applies it on top of *this.
        /// Unknown names or non-positive values throw Error(InvalidInput).
        auto apply(std::string_view spec) -> void;

        /// Defaults overridden by the DUALITY_CAPS environment variable.
        static auto from_env() -> Caps;
    };

    class Deadline
    {
    private:
        std::optional<std::chrono::steady_clock::time_point> _at;

    public:
        Deadline() = default;
        explicit Deadline(std::chrono::milliseconds budget);

        static auto from_caps(const Caps & caps) -> Deadline;

        auto expired() const -> bool;

        /// Throws Error(Timeout) when expired.
        auto check(std::string_view what) const -> void;
    };
}

#endif
