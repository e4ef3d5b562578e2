#include <duality/errors.hh>
#include <duality/structure.hh>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using std::string;
using std::vector;

namespace duality
{
    namespace
    {
        auto tuple_string(const Tuple & t) -> string
        {
            string s = "(";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i)
                    s += ",";
                s += std::to_string(t[i]);
            }
            return s + ")";
        }
    }

    auto Signature::symbol_index(const string & name) const -> std::optional<int>
    {
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].name == name)
                return static_cast<int>(i);
        return std::nullopt;
    }

    auto Signature::constant_index(const string & name) const -> std::optional<int>
    {
        for (std::size_t i = 0; i < constants.size(); ++i)
            if (constants[i] == name)
                return static_cast<int>(i);
        return std::nullopt;
    }

    auto Signature::compatible_with(const Signature & other) const -> bool
    {
        if (symbols.size() != other.symbols.size() || constants.size() != other.constants.size())
            return false;
        for (auto & s : symbols) {
            auto j = other.symbol_index(s.name);
            if (! j || other.symbols[*j] != s)
                return false;
        }
        for (auto & c : constants)
            if (! other.constant_index(c))
                return false;
        return true;
    }

    auto FiniteStructure::normalise() -> void
    {
        relations.resize(signature.symbols.size());
        for (auto & r : relations) {
            std::sort(r.begin(), r.end());
            r.erase(std::unique(r.begin(), r.end()), r.end());
        }
    }

    auto FiniteStructure::has_tuple(int symbol, const Tuple & t) const -> bool
    {
        auto & r = relations[symbol];
        return std::binary_search(r.begin(), r.end(), t);
    }

    auto FiniteStructure::relation(const string & name) const -> const vector<Tuple> &
    {
        auto i = signature.symbol_index(name);
        if (! i)
            throw Error(ErrorKind::InvalidInput, "no relation named " + name);
        return relations[*i];
    }

    auto FiniteStructure::constant(const string & name) const -> int
    {
        auto i = signature.constant_index(name);
        if (! i)
            throw Error(ErrorKind::InvalidInput, "no constant named " + name);
        return constants[*i];
    }

    auto validate(const FiniteStructure & x) -> ValidationReport
    {
        ValidationReport report;
        auto & v = report.violations;

        if (x.size <= 0)
            v.push_back("empty universe");
        if (x.size > mask_bits)
            v.push_back("universe of size " + std::to_string(x.size) + " exceeds " + std::to_string(mask_bits));

        std::set<string> names;
        for (auto & s : x.signature.symbols) {
            if (! names.insert(s.name).second)
                v.push_back("duplicate symbol " + s.name);
            if (s.arity < 1)
                v.push_back("symbol " + s.name + " has arity < 1");
            if (s.functional && s.arity < 1)
                v.push_back("functional symbol " + s.name + " has no value coordinate");
        }
        std::set<string> constant_names;
        for (auto & c : x.signature.constants)
            if (! constant_names.insert(c).second)
                v.push_back("duplicate constant " + c);

        if (x.relations.size() != x.signature.symbols.size())
            v.push_back("relation table does not match the signature");
        if (x.constants.size() != x.signature.constants.size())
            v.push_back("constant table does not match the signature");
        if (! v.empty())
            return report;

        for (std::size_t c = 0; c < x.constants.size(); ++c)
            if (x.constants[c] < 0 || x.constants[c] >= x.size)
                v.push_back("constant " + x.signature.constants[c] + " index out of range");

        for (std::size_t r = 0; r < x.relations.size(); ++r) {
            auto & sym = x.signature.symbols[r];
            bool in_range = true;
            for (auto & t : x.relations[r]) {
                if (static_cast<int>(t.size()) != sym.arity) {
                    v.push_back(sym.name + ": tuple " + tuple_string(t) + " has wrong arity");
                    in_range = false;
                    continue;
                }
                for (int i : t)
                    if (i < 0 || i >= x.size) {
                        v.push_back(sym.name + ": tuple " + tuple_string(t) + " index out of range");
                        in_range = false;
                        break;
                    }
            }

            if (! sym.functional || ! in_range)
                continue;

            // totality and single-valuedness over all argument vectors
            std::map<Tuple, int> values;
            for (auto & t : x.relations[r]) {
                Tuple args(t.begin(), t.end() - 1);
                if (! values.emplace(args, t.back()).second && values[args] != t.back())
                    v.push_back(sym.name + " not single-valued at " + tuple_string(args));
            }
            int k = sym.arity - 1;
            Tuple args(k, 0);
            for (;;) {
                if (! values.count(args))
                    v.push_back(sym.name + " not total at " + tuple_string(args));
                int i = k - 1;
                while (i >= 0 && ++args[i] == x.size)
                    args[i--] = 0;
                if (i < 0)
                    break;
            }
        }

        return report;
    }

    auto require_valid(const FiniteStructure & x) -> void
    {
        auto report = validate(x);
        if (! report.valid()) {
            string message = "invalid structure:";
            for (auto & v : report.violations)
                message += " " + v + ";";
            throw Error(ErrorKind::InvalidInput, message);
        }
    }

    auto substructure(const FiniteStructure & x, Mask subset) -> FiniteStructure
    {
        if (! is_subset(subset, full_mask(x.size)))
            throw Error(ErrorKind::InvalidInput, "subset exceeds the universe");

        vector<int> relabel(x.size, -1);
        int next = 0;
        for_each_bit(subset, [&](int i) { relabel[i] = next++; });

        FiniteStructure result;
        result.signature = x.signature;
        result.size = next;
        result.relations.resize(x.relations.size());
        for (std::size_t c = 0; c < x.constants.size(); ++c) {
            if (relabel[x.constants[c]] < 0)
                throw Error(ErrorKind::ConstantOutside, "constant " + x.signature.constants[c] + " lies outside the subset");
            result.constants.push_back(relabel[x.constants[c]]);
        }

        for (std::size_t r = 0; r < x.relations.size(); ++r) {
            auto & sym = x.signature.symbols[r];
            for (auto & t : x.relations[r]) {
                bool args_inside = std::all_of(t.begin(), t.end() - 1, [&](int i) { return relabel[i] >= 0; });
                bool inside = args_inside && relabel[t.back()] >= 0;
                if (sym.functional && args_inside && ! inside)
                    throw Error(ErrorKind::FunctionNotClosed, sym.name + " maps " + tuple_string(Tuple(t.begin(), t.end() - 1)) + " outside the subset");
                if (inside) {
                    Tuple u;
                    for (int i : t)
                        u.push_back(relabel[i]);
                    result.relations[r].push_back(std::move(u));
                }
            }
        }
        result.normalise();
        return result;
    }

    auto make_template(string name, FiniteStructure structure) -> TwoTemplate
    {
        require_valid(structure);
        if (structure.size != 2)
            throw Error(ErrorKind::InvalidInput, "template " + name + " must have exactly 2 elements");
        structure.normalise();
        TwoTemplate t{std::move(name), std::move(structure), false, false};
        for (int c : t.structure.constants)
            (c == 0 ? t.has_zero : t.has_one) = true;
        return t;
    }

    auto UltimateTemplate::name() const -> string
    {
        return string("ultimate") + (zero ? "0" : "") + (one ? (zero ? "1" : "_1") : "");
    }

    auto template_name(const Template & t) -> string
    {
        if (auto s = std::get_if<TwoTemplate>(&t))
            return s->name;
        return std::get<UltimateTemplate>(t).name();
    }

    auto SetFamily::index_of(Mask m) const -> std::optional<int>
    {
        for (std::size_t i = 0; i < sets.size(); ++i)
            if (sets[i] == m)
                return static_cast<int>(i);
        return std::nullopt;
    }

    auto validate(const SetFamily & f) -> ValidationReport
    {
        ValidationReport report;
        if (f.base < 0 || f.base > mask_bits)
            report.violations.push_back("base " + std::to_string(f.base) + " outside [0, 64]");
        std::set<Mask> seen;
        for (auto m : f.sets) {
            if (! is_subset(m, full_mask(f.base)))
                report.violations.push_back("set does not fit in the base");
            if (! seen.insert(m).second)
                report.violations.push_back("duplicate set");
        }
        if (f.zero && ! seen.count(0))
            report.violations.push_back("zero flagged but the empty set is not a member");
        if (f.one && ! seen.count(full_mask(f.base)))
            report.violations.push_back("one flagged but the full base is not a member");
        return report;
    }

    auto sorted(SetFamily family) -> SetFamily
    {
        std::sort(family.sets.begin(), family.sets.end());
        return family;
    }

    auto transpose(const SetFamily & family) -> Transposed
    {
        Transposed result;
        result.family.base = family.size();
        if (family.size() > mask_bits)
            throw Error(ErrorKind::CapExceeded, "cannot transpose a family of more than 64 sets");

        std::map<Mask, int> seen;
        for (int x = 0; x < family.base; ++x) {
            Mask row = 0;
            for (int i = 0; i < family.size(); ++i)
                if (has_bit(family.sets[i], x))
                    row |= bit(i);
            auto [it, fresh] = seen.emplace(row, result.family.size());
            if (fresh)
                result.family.sets.push_back(row);
            result.collapse.push_back(it->second);
        }
        return result;
    }
}
