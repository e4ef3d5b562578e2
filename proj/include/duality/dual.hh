#ifndef DUALITY_GUARD_DUAL_HH
#define DUALITY_GUARD_DUAL_HH 1

#include <duality/bea.hh>
#include <duality/caps.hh>
#include <duality/hom.hh>
#include <duality/structure.hh>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace duality
{
    /// hom(X,D) carrying the structure induced from E^X.
    struct DualStructure
    {
        int source_size = 0;
        TwoTemplate d, e;
        HomSet carrier;
        FiniteStructure induced;
    };

    /// The E-structure induced on `carrier` (a family over some base) from the
    /// power E^base. Functional symbols and constants of E must be realised
    /// inside the carrier; otherwise S1Violation names the witness.
    auto induced_structure(const SetFamily & carrier, const TwoTemplate & e) -> FiniteStructure;

    auto dual(const FiniteStructure & x, const TwoTemplate & d, const TwoTemplate & e,
        const Caps & caps = {}, const Deadline & deadline = {}) -> DualStructure;

    struct EvalReport
    {
        bool injective = false;
        bool embedding = false;
        bool surjective = false;
        /// eva_x as a subset of X*'s indices, one per point of X.
        std::vector<Mask> evaluations;
        /// Members of X** that are no eva_x.
        std::vector<Mask> unrepresented;
        std::vector<std::pair<int, int>> collisions;
        std::vector<RelationWitness> relation_witnesses;
        /// Pair of subsets on which X and the carrier-induced ⋈ differ
        /// (ultimate sources only).
        std::optional<SubsetPair> bea_mismatch;
        /// Constants of the ultimate partner that could not be designated.
        std::vector<std::string> missing_constants;
        int size_x = 0, size_xstar = 0, size_xbidual = 0;

        auto reflexive() const -> bool
        {
            return injective && embedding && surjective;
        }
    };

    /// X** = hom(X*, E) with X* the induced dual. Throws CapExceeded when
    /// |X| > caps.bidual_source or |X*| > caps.bidual_dual.
    auto bidual_and_evaluate(const FiniteStructure & x, const TwoTemplate & d, const TwoTemplate & e,
        const Caps & caps = {}, const Deadline & deadline = {}) -> EvalReport;

    /// The ultimate variant paired with a constant signature: none gives 0,1,
    /// 0 gives 0, 1 gives 1, and 0,1 gives none.
    auto ultimate_partner(bool zero, bool one) -> UltimateTemplate;
    auto ultimate_partner(const TwoTemplate & d) -> UltimateTemplate;

    struct UltimateDual
    {
        SetFamily carrier;
        BeaOracle oracle;
        std::vector<std::string> missing_constants;
    };

    /// Dual of a ⋈-structure: its halfspaces, with S ⋈ T iff ⋂S ⊆ ⋃T and the
    /// constants chosen by ultimate_partner. Throws AxiomsFail.
    auto ultimate_dual(const BeaOracle & x, const Caps & caps = {}, const Deadline & deadline = {}) -> UltimateDual;

    /// Dual of a D-structure into an ultimate template: hom(X,D) as a ⋈-structure.
    /// A constant of `e` is designated only when the constant map is a member;
    /// otherwise its name is recorded in missing_constants.
    auto ultimate_dual(const FiniteStructure & x, const TwoTemplate & d, const UltimateTemplate & e,
        const Caps & caps = {}, const Deadline & deadline = {}) -> UltimateDual;

    /// X** = halfspaces of the ultimate dual.
    auto bidual_and_evaluate(const FiniteStructure & x, const TwoTemplate & d, const UltimateTemplate & e,
        const Caps & caps = {}, const Deadline & deadline = {}) -> EvalReport;

    /// Reflexivity of a ⋈-structure against its ultimate partner.
    auto ultimate_reflexivity(const BeaOracle & x, const Caps & caps = {}, const Deadline & deadline = {}) -> EvalReport;

    struct CaseOutcome
    {
        int index = 0;
        bool s1 = true;
        bool s2 = true;
        bool timeout = false;
        std::string detail;
        EvalReport eval;
    };

    struct PairReport
    {
        std::string d_name, e_name;
        bool pass = true;
        int timeouts = 0;
        std::vector<CaseOutcome> cases;
    };

    /// Aggregates the image and separation checks over `instances`, which must be D-separated
    /// (NotSeparated otherwise). Timeouts are reported per case and do not
    /// fail the pair.
    auto check_semi_dual(const TwoTemplate & d, const Template & e, const std::vector<FiniteStructure> & instances,
        const Caps & caps = {}, unsigned threads = 0) -> PairReport;

    struct SurjectionDual
    {
        /// dual_map[j] is the X*-index of the j-th member of Y* composed with f.
        std::vector<int> dual_map;
        bool injective = false;
        bool embedding = false;
        std::string detail;
    };

    /// f*(y*) = y* ∘ f for a surjective homomorphism f: X → Y, audited as an
    /// embedding of E-structures. Throws NotSurjective or NotHomomorphism.
    auto dual_of_surjection(const std::vector<int> & f, const FiniteStructure & x, const FiniteStructure & y,
        const TwoTemplate & d, const Template & e, const Caps & caps = {}) -> SurjectionDual;

    struct EquivalenceReport
    {
        bool equal = false;
        SetFamily homs, halfspaces;
        std::vector<Mask> only_homs, only_halfspaces;
    };

    /// Compares hom(X,D) with the halfspaces of the ⋈ it induces. Throws
    /// NotSeparated.
    auto hom_equivalence(const FiniteStructure & x, const TwoTemplate & d, const Caps & caps = {},
        const Deadline & deadline = {}) -> EquivalenceReport;
}

#endif
