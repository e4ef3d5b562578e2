#ifndef DUALITY_GUARD_STRUCTURE_HH
#define DUALITY_GUARD_STRUCTURE_HH 1

#include <duality/bits.hh>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace duality
{
    /// A relation symbol. Operations are never first-class: a k-ary
    /// operation is the functional relation of arity k+1 whose last
    /// coordinate is the value.
    struct Symbol
    {
        std::string name;
        int arity = 1;
        bool functional = false;

        auto operator== (const Symbol &) const -> bool = default;
    };

    struct Signature
    {
        std::vector<Symbol> symbols;
        std::vector<std::string> constants;

        auto symbol_index(const std::string & name) const -> std::optional<int>;
        auto constant_index(const std::string & name) const -> std::optional<int>;

        /// Same symbols (by name, arity, functionality) and constant names,
        /// irrespective of listing order.
        auto compatible_with(const Signature & other) const -> bool;
    };

    using Tuple = std::vector<int>;

    /// A finite relational structure on the universe 0..size-1. Relations and
    /// constants are stored parallel to the signature's symbol and constant
    /// lists. Universes are capped at 64 elements so that subsets fit a Mask.
    struct FiniteStructure
    {
        Signature signature;
        int size = 0;
        std::vector<std::vector<Tuple>> relations;
        std::vector<int> constants;

        /// Sorts and deduplicates every tuple list.
        auto normalise() -> void;

        auto has_tuple(int symbol, const Tuple & t) const -> bool;

        auto relation(const std::string & name) const -> const std::vector<Tuple> &;
        auto constant(const std::string & name) const -> int;
    };

    struct ValidationReport
    {
        std::vector<std::string> violations;

        auto valid() const -> bool
        {
            return violations.empty();
        }
    };

    auto validate(const FiniteStructure & structure) -> ValidationReport;

    /// Throws Error(InvalidInput) listing the violations, if any.
    auto require_valid(const FiniteStructure & structure) -> void;

    /// Restriction to `subset`, relabelled in ascending order. Throws
    /// ConstantOutside or FunctionNotClosed.
    auto substructure(const FiniteStructure & structure, Mask subset) -> FiniteStructure;

    /// A 2-element template with the constant decorations recorded.
    struct TwoTemplate
    {
        std::string name;
        FiniteStructure structure;
        bool has_zero = false;
        bool has_one = false;
    };

    /// Validates size 2 and derives has_zero / has_one from the constants.
    auto make_template(std::string name, FiniteStructure structure) -> TwoTemplate;

    /// The template on {0,1} carrying every relation I_{n,m}; it has no finite
    /// signature and is handled through BeaOracle.
    struct UltimateTemplate
    {
        bool zero = false;
        bool one = false;

        auto name() const -> std::string;
        auto operator== (const UltimateTemplate &) const -> bool = default;
    };

    using Template = std::variant<TwoTemplate, UltimateTemplate>;

    auto template_name(const Template & t) -> std::string;

    /// A family of distinct subsets of 0..base-1, optionally marking the empty
    /// set and the full base as the constants 0 and 1.
    struct SetFamily
    {
        int base = 0;
        std::vector<Mask> sets;
        bool zero = false;
        bool one = false;

        auto index_of(Mask m) const -> std::optional<int>;
        auto size() const -> int
        {
            return static_cast<int>(sets.size());
        }
    };

    auto validate(const SetFamily & family) -> ValidationReport;

    auto sorted(SetFamily family) -> SetFamily;

    /// Point-row incidence: row x is the set of indices of members that
    /// contain x. Equal rows are collapsed; collapse[x] is the output index
    /// of x's row.
    struct Transposed
    {
        SetFamily family;
        std::vector<int> collapse;
    };

    auto transpose(const SetFamily & family) -> Transposed;
}

#endif
