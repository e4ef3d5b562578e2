#ifndef DUALITY_GUARD_BEA_HH
#define DUALITY_GUARD_BEA_HH 1

#include <duality/caps.hh>
#include <duality/structure.hh>

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace duality
{
    using SubsetPair = std::pair<Mask, Mask>;

    struct SubsetPairHash
    {
        auto operator() (const SubsetPair & p) const -> std::size_t
        {
            return std::hash<Mask>{}(p.first * 0x9e3779b97f4a7c15ull ^ p.second);
        }
    };

    /// The relation s ⋈ t on pairs of subsets of a finite universe.
    ///
    /// A Table realization lists every positive pair explicitly and is taken
    /// at face value: no axiom is enforced. An Induced realization is given by
    /// a family of halfspaces H, with s ⋈ t iff no h in H contains s and
    /// misses t; it is monotone by construction.
    ///
    /// The constants 0 and 1, when present, are ordinary universe elements
    /// tagged by index.
    class BeaOracle
    {
    public:
        struct Table
        {
            std::vector<SubsetPair> pairs;
        };

        struct Induced
        {
            std::vector<Mask> halfspaces;
        };

    private:
        int _universe = 0;
        std::variant<Table, Induced> _realization;
        std::optional<int> _zero, _one;
        std::vector<SubsetPair> _sorted_pairs;
        std::unordered_set<SubsetPair, SubsetPairHash> _pair_set;
        bool _monotone = true;

    public:
        static auto table(int universe, std::vector<SubsetPair> pairs,
            std::optional<int> zero = std::nullopt, std::optional<int> one = std::nullopt) -> BeaOracle;

        static auto induced(int universe, std::vector<Mask> halfspaces,
            std::optional<int> zero = std::nullopt, std::optional<int> one = std::nullopt) -> BeaOracle;

        auto universe() const -> int
        {
            return _universe;
        }

        auto zero() const -> std::optional<int>
        {
            return _zero;
        }

        auto one() const -> std::optional<int>
        {
            return _one;
        }

        auto is_table() const -> bool
        {
            return std::holds_alternative<Table>(_realization);
        }

        /// Table pairs in sorted order (empty for induced oracles).
        auto table_pairs() const -> const std::vector<SubsetPair> &
        {
            return _sorted_pairs;
        }

        /// Closed under single-element extension of either side. Induced
        /// oracles always are; for tables this is computed at construction.
        auto is_monotone() const -> bool
        {
            return _monotone;
        }

        auto halfspace_basis() const -> const std::vector<Mask> &;

        auto query(Mask s, Mask t) const -> bool;

        /// Some s ⊆ upper_s, t ⊆ upper_t with s ⋈ t.
        auto any_below(Mask upper_s, Mask upper_t) const -> bool;

        /// Some s ⊆ upper_s with s ⋈ t (t fixed exactly).
        auto any_left_below(Mask upper_s, Mask t) const -> bool;

        /// Every positive pair: the table itself, or a sweep of all 4^n pairs.
        auto positive_pairs(int cap) const -> std::vector<SubsetPair>;

        /// Same relation, materialised as a table (n <= cap).
        auto to_table(int cap) const -> BeaOracle;

        auto with_constants(std::optional<int> zero, std::optional<int> one) const -> BeaOracle;
    };

    /// S ⋈ T iff the intersection of the members indexed by S is contained in
    /// the union of those indexed by T. Realised as Induced through the point
    /// rows of the family; the constants follow the family's zero/one flags.
    auto family_bea(const SetFamily & family) -> BeaOracle;

    enum class Axiom
    {
        i0, i1, i2, i3, i4, i5, c0, c1
    };

    auto to_string(Axiom axiom) -> std::string_view;
    auto parse_axiom(std::string_view name) -> Axiom;

    struct AxiomReport
    {
        Axiom axiom = Axiom::i0;
        bool pass = true;
        /// Minimal counterexample tuple, minimal by total popcount and then
        /// lexicographically. Layout per axiom:
        ///   i0: (∅, ∅)          i1: (a, b, a', b') with (a', b') a one-element extension
        ///   i2: ({p}, {q})       i3: (a0, b0, a1, b1, {p})
        ///   i4: (a, b)           i5: (a, b) with a ⋈ b, not b ⋈ a
        ///   c0: ({0}, ∅)         c1: (∅, {1})
        std::vector<Mask> witness;
        std::string detail;
    };

    /// Throws CapExceeded beyond caps.axioms (caps.axioms_pairs for i1, i3)
    /// and MissingConstants for c0/c1 on oracles without the constant.
    auto check_axiom(const BeaOracle & oracle, Axiom axiom, const Caps & caps = {}) -> AxiomReport;

    /// Throws AxiomsFail naming the first failing axiom.
    auto require_axioms(const BeaOracle & oracle, const std::vector<Axiom> & axioms, const Caps & caps = {}) -> void;

    /// up[x] is the set of y with x <= y, where x <= y iff {x} ⋈ {y}.
    struct PartialOrder
    {
        int size = 0;
        std::vector<Mask> up;

        auto leq(int x, int y) const -> bool
        {
            return has_bit(up[x], y);
        }

        auto is_discrete() const -> bool;
    };

    auto associated_order(const BeaOracle & oracle, const Caps & caps = {}) -> PartialOrder;

    /// The b with {a,b} ⋈ {0} and {1} ⋈ {a,b}, if any. Throws MissingConstants
    /// or DuplicateComplement.
    auto complement(const BeaOracle & oracle, int a) -> std::optional<int>;

    /// No s ⊆ U, t ⊆ X∖U with s ⋈ t, and the constants map 0 ↦ 0, 1 ↦ 1.
    auto is_halfspace(const BeaOracle & oracle, Mask u) -> bool;

    enum class HalfspaceMethod
    {
        Backtracking,
        BruteForce
    };

    auto all_halfspaces(const BeaOracle & oracle, const Caps & caps = {},
        HalfspaceMethod method = HalfspaceMethod::Backtracking, const Deadline & deadline = {}) -> SetFamily;

    /// Maximal-extension separation: grows U from a and then L from b in
    /// ascending element order. Returns a verified halfspace U with a ⊆ U and
    /// U ∩ b = ∅. Throws PreconditionViolated when a ⋈ b and PaschFailure when
    /// the two sweeps do not cover the universe or the result does not verify.
    auto separate(const BeaOracle & oracle, Mask a, Mask b) -> Mask;

    /// Induced oracle of a structure X over a template D by the rule
    /// s ⋈ t iff every h in hom(X,D) has min h[s] <= max h[t].
    auto bea_from_homs(const SetFamily & homs) -> BeaOracle;

    /// Exhaustive comparison of two oracles on every subset pair (n <= cap).
    auto first_disagreement(const BeaOracle & a, const BeaOracle & b, int cap) -> std::optional<SubsetPair>;
}

#endif
