#ifndef DUALITY_GUARD_GENERATORS_HH
#define DUALITY_GUARD_GENERATORS_HH 1

#include <duality/caps.hh>
#include <duality/convexity.hh>
#include <duality/structure.hh>

#include <cstdint>
#include <vector>

namespace duality
{
    // Posets are "le" structures; up[x] lists the y with x <= y.

    auto poset_structure(const std::vector<Mask> & up) -> FiniteStructure;
    auto poset_up_sets(const FiniteStructure & poset) -> std::vector<Mask>;

    /// Every labelled partial order on n points, built one point at a time
    /// (n <= caps.exhaustive, CapExceeded otherwise).
    auto gen_posets_exhaustive(int n, const Caps & caps = {}) -> std::vector<FiniteStructure>;

    /// Transitive closures of random DAGs over a shuffled linear order.
    auto gen_posets_random(int n, int count, std::uint64_t seed) -> std::vector<FiniteStructure>;

    auto chain_poset(int n) -> FiniteStructure;
    auto antichain_poset(int n) -> FiniteStructure;

    /// n points and no relations: the objects of the pure-set template.
    auto bare_set(int n) -> FiniteStructure;

    /// The semilattice on a ∩-closed family (meet = intersection), members
    /// in the given order.
    auto semilattice_from_family(const std::vector<Mask> & family, bool with_zero = false) -> FiniteStructure;

    /// Every labelled meet-semilattice on n points, as the ∩-closed family of
    /// principal down-sets of each meet-semilattice order.
    auto gen_semilattices_exhaustive(int n, const Caps & caps = {}) -> std::vector<FiniteStructure>;

    /// Random ∩-closed families with at most n members.
    auto gen_semilattices_random(int n, int count, std::uint64_t seed) -> std::vector<FiniteStructure>;

    /// Down-sets of a poset under ∩, ∪, ∅, X.
    auto downset_lattice(const FiniteStructure & poset) -> FiniteStructure;

    /// Down-set lattices of random posets on n points.
    auto gen_distributive_lattices(int n, int count, std::uint64_t seed) -> std::vector<FiniteStructure>;

    /// Brute-force distributivity of a structure with meet and join
    /// (size <= caps.distributive).
    auto is_distributive(const FiniteStructure & lattice, const Caps & caps = {}) -> bool;

    /// Whether every element of a bounded lattice has a complement.
    auto is_complemented_lattice(const FiniteStructure & lattice) -> bool;

    auto gen_family(int base, int size, std::uint64_t seed) -> SetFamily;

    /// B(k,l,m) iff (k = m implies l = k = m).
    auto minimal_betweenness(int n) -> FiniteStructure;

    /// Betweenness induced by a random family of convex sets, which is
    /// always S0-separated once points are told apart.
    auto betweenness_from_family(int n, const std::vector<Mask> & convex) -> FiniteStructure;

    /// Alternates family-induced relations with random ternary relations
    /// containing B(x,x,y) and B(x,y,y).
    auto gen_betweenness_random(int n, int count, std::uint64_t seed) -> std::vector<FiniteStructure>;

    /// Betweenness axioms of the S0 lemma: (1) B(x,x,y), B(x,y,y); (2)
    /// composition; (3) antisymmetry.
    auto betweenness_axioms_hold(const FiniteStructure & b) -> bool;

    /// Initial segments as L, final segments as U.
    auto poset_biconvexity(const FiniteStructure & poset) -> BiConvexity;

    /// Normal bi-convexity from a random halfspace family (always holding ∅
    /// and X) by rejection on (i2) and (i4). `symmetric` closes the family
    /// under complement first.
    auto random_normal_biconvexity(int n, std::uint64_t seed, bool symmetric, const Caps & caps = {}) -> BiConvexity;

    struct Point
    {
        long long x, y;
    };

    /// L = U = traces on the points of the convex sets of the plane.
    auto planar_trace_convexity(const std::vector<Point> & points) -> BiConvexity;

    /// The same points as a structure over convexity_template(k_max).
    auto planar_hull_structure(const std::vector<Point> & points, int k_max) -> FiniteStructure;

    /// Five points failing normality: a triangle, two interior points.
    auto planar_nonnormal_points() -> std::vector<Point>;

    /// Random substructure of a power D^k closed under D's operations and
    /// constants, with at most nmax points; D-separated by construction.
    auto gen_separated(const TwoTemplate & d, int nmax, std::uint64_t seed) -> FiniteStructure;

    /// Arbitrary structure: random tuples for relations, random total
    /// functions for functional symbols, random constants.
    auto random_structure(const Signature & signature, int n, std::uint64_t seed) -> FiniteStructure;

    /// Reindexes a structure by a permutation (point i becomes perm[i]).
    auto relabel(const FiniteStructure & x, const std::vector<int> & perm) -> FiniteStructure;
}

#endif
