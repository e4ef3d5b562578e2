#ifndef DUALITY_GUARD_HOM_HH
#define DUALITY_GUARD_HOM_HH 1

#include <duality/caps.hh>
#include <duality/structure.hh>

#include <string>
#include <utility>
#include <vector>

namespace duality
{
    /// hom(X, D) for a 2-element template D. Each member is h^{-1}(1) over
    /// the domain, listed in strictly increasing mask order.
    struct HomSet
    {
        int domain_size = 0;
        std::string template_name;
        SetFamily homs;
    };

    enum class HomMethod
    {
        Backtracking,
        BruteForce
    };

    struct HomSearchStats
    {
        unsigned long long nodes = 0;
        unsigned long long propagations = 0;
    };

    /// Throws SignatureMismatch, CapExceeded (more than caps.homs members, or
    /// brute force beyond caps.powerset) or Timeout.
    auto enumerate_homs(const FiniteStructure & x, const TwoTemplate & d, const Caps & caps = {},
        HomMethod method = HomMethod::Backtracking, const Deadline & deadline = {},
        HomSearchStats * stats = nullptr) -> HomSet;

    /// Whether a characteristic function is a homomorphism X -> D.
    auto is_homomorphism(const FiniteStructure & x, const TwoTemplate & d, Mask ones) -> bool;

    struct RelationWitness
    {
        std::string symbol;
        Tuple tuple;
    };

    struct SeparationReport
    {
        bool separated = false;
        bool injective = false;
        std::vector<std::pair<int, int>> collisions;
        std::vector<RelationWitness> relation_witnesses;
        HomSet homs;
    };

    auto is_separated(const FiniteStructure & x, const TwoTemplate & d, const Caps & caps = {},
        const Deadline & deadline = {}) -> SeparationReport;

    /// Checks that every non-tuple of X is separated by some member of
    /// `homs`; shared by is_separated and the bidual embedding audit.
    auto relation_reflection_failures(const FiniteStructure & x, const TwoTemplate & d, const SetFamily & homs)
        -> std::vector<RelationWitness>;

    auto require_signature_match(const FiniteStructure & x, const TwoTemplate & d) -> void;
}

#endif
