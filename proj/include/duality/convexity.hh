#ifndef DUALITY_GUARD_CONVEXITY_HH
#define DUALITY_GUARD_CONVEXITY_HH 1

#include <duality/bea.hh>
#include <duality/caps.hh>

#include <optional>
#include <string>
#include <vector>

namespace duality
{
    /// Two convexities L and U on 0..universe-1, each stored as its members
    /// (closed under intersection, containing the full set; the empty set is
    /// optional).
    struct BiConvexity
    {
        int universe = 0;
        std::vector<Mask> lower, upper;
        std::optional<int> zero, one;
    };

    enum class Side
    {
        L,
        U
    };

    /// Closes both families under intersection, adds the full set and sorts.
    auto make_biconvexity(int universe, std::vector<Mask> lower, std::vector<Mask> upper,
        std::optional<int> zero = std::nullopt, std::optional<int> one = std::nullopt) -> BiConvexity;

    auto validate(const BiConvexity & space) -> ValidationReport;

    auto conv_hull(const BiConvexity & space, Side side, Mask a) -> Mask;

    /// conv over every subset, indexed by mask (universe <= caps.powerset).
    auto hull_table(const BiConvexity & space, Side side, const Caps & caps = {}) -> std::vector<Mask>;

    struct NormalReport
    {
        bool pass = true;
        /// (x, y) violating N1.
        std::optional<std::pair<int, int>> n1_witness;
        /// (A, B) with A in L, B in U disjoint and no separating H.
        std::optional<std::pair<Mask, Mask>> n2_witness;
    };

    /// Throws CapExceeded beyond caps.normal.
    auto check_normal(const BiConvexity & space, const Caps & caps = {}) -> NormalReport;

    /// a ⋈ b iff conv_U(a) ∩ conv_L(b) is non-empty, as a table. Throws
    /// NotNormal for non-normal spaces unless `force`.
    auto bea_from_biconvexity(const BiConvexity & space, bool force = false, const Caps & caps = {}) -> BeaOracle;

    /// conv_L(a) = {p : {p} ⋈ a}, conv_U(a) = {p : a ⋈ {p}}. Throws AxiomsFail
    /// unless i0-i4 hold, and RoundTripFailure if the result does not give
    /// back the oracle.
    auto biconvexity_from_bea(const BeaOracle & oracle, const Caps & caps = {}) -> BiConvexity;

    struct PaschReport
    {
        bool pass = true;
        /// (a0, b1, {p}, {q}, {r}) for the least failing instance of the
        /// convexity Pasch form.
        std::vector<Mask> witness;
        /// Full i3 and i4 on the induced table, for the implication
        /// (i0-i2, i4, Pasch form) => i3.
        AxiomReport i3, i4;
        bool implication_consistent = true;
    };

    /// Sweeps a0, b1 over all subsets and p, q, r over points.
    auto check_pasch_convex(const BiConvexity & space, const Caps & caps = {}) -> PaschReport;

    struct ComplementReport
    {
        bool pass = true;
        std::vector<std::optional<int>> complements;
        std::optional<int> missing;        ///< element with no complement
        std::optional<int> not_involutive; ///< element with ¬¬a ≠ a
        std::optional<SubsetPair> ae_witness;
        bool ae_exhaustive = true;
        long long ae_checked = 0;
    };

    /// Every element has a complement and a ⋈ b iff ¬b ⋈ ¬a, where ¬ acts
    /// pointwise. Exhaustive up to caps.normal elements, otherwise `samples`
    /// seeded random pairs. Throws MissingConstants.
    auto check_complemented(const BeaOracle & oracle, const Caps & caps = {}, int samples = 4096, std::uint64_t seed = 1) -> ComplementReport;
    auto check_complemented(const BiConvexity & space, const Caps & caps = {}, int samples = 4096, std::uint64_t seed = 1) -> ComplementReport;

    enum class ConvexityVariant
    {
        Plain,
        Symmetric
    };

    struct ConvexityCase
    {
        bool pass = true;
        bool dual_i4 = false;
        bool dual_constants = false;
        bool complemented = true;
        bool dual_of_dual_symmetric = true;
        bool bidual_surjective = false;
        int dual_size = 0;
        std::string detail;
    };

    struct ConvexityReport
    {
        bool pass = true;
        std::vector<ConvexityCase> cases;
    };

    /// Per instance: the ultimate dual satisfies i4 and its constants, the
    /// bidual evaluation is onto; for the symmetric variant the dual is
    /// complemented and its own dual symmetric.
    auto verify_convexity_duality(const std::vector<BiConvexity> & corpus, ConvexityVariant variant,
        const Caps & caps = {}, unsigned threads = 0) -> ConvexityReport;
}

#endif
