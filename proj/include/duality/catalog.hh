#ifndef DUALITY_GUARD_CATALOG_HH
#define DUALITY_GUARD_CATALOG_HH 1

#include <duality/structure.hh>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace duality
{
    /// Names accepted by catalog_template, in listing order.
    auto catalog_names() -> std::vector<std::string>;

    /// One of: order, bounded_lattice, semilattice, semilattice0,
    /// semilattice01, pure_set, boolean_algebra, betweenness_s0,
    /// natural_betweenness. Throws InvalidInput for other names.
    auto catalog_template(std::string_view name) -> TwoTemplate;

    /// ultimate, ultimate0, ultimate_1, ultimate01.
    auto ultimate_template(std::string_view name) -> std::optional<UltimateTemplate>;

    /// Either kind, by name.
    auto find_template(std::string_view name) -> Template;

    /// The two-element convexity with hull relations hull1..hull{k_max}:
    /// hullk(x, y1..yk) holds iff x is one of the y's.
    auto convexity_template(int k_max) -> TwoTemplate;

    /// Signature helpers shared with the generators.
    auto order_signature() -> Signature;
    auto lattice_signature() -> Signature;
    auto semilattice_signature(bool zero, bool one) -> Signature;
    auto betweenness_signature() -> Signature;
    auto hull_signature(int k_max) -> Signature;
}

#endif
