#include <duality/errors.hh>
#include <duality/hom.hh>

#include <algorithm>
#include <deque>

using std::string;
using std::vector;

namespace duality
{
    namespace
    {
        constexpr int max_template_arity = 20;

        /// For each symbol of x, the index of the same-named symbol of d.
        auto symbol_map(const FiniteStructure & x, const TwoTemplate & d) -> vector<int>
        {
            vector<int> result;
            for (auto & s : x.signature.symbols)
                result.push_back(*d.structure.signature.symbol_index(s.name));
            return result;
        }

        auto pattern_of(const Tuple & t) -> unsigned
        {
            unsigned p = 0;
            for (std::size_t i = 0; i < t.size(); ++i)
                if (t[i])
                    p |= 1u << i;
            return p;
        }

        /// allowed[r][p] for the template relation r and pattern p (bit i =
        /// coordinate i).
        auto template_tables(const TwoTemplate & d) -> vector<vector<bool>>
        {
            vector<vector<bool>> tables;
            for (std::size_t r = 0; r < d.structure.relations.size(); ++r) {
                int arity = d.structure.signature.symbols[r].arity;
                if (arity > max_template_arity)
                    throw Error(ErrorKind::InvalidInput, "template arity above " + std::to_string(max_template_arity));
                vector<bool> table(std::size_t{1} << arity, false);
                for (auto & t : d.structure.relations[r])
                    table[pattern_of(t)] = true;
                tables.push_back(std::move(table));
            }
            return tables;
        }

        struct Constraint
        {
            vector<int> vars;
            vector<bool> allowed;
        };

        class Search
        {
        private:
            int _n;
            vector<Constraint> _constraints;
            vector<vector<int>> _watch;
            vector<int> _order;
            vector<signed char> _value;
            vector<int> _trail;
            const Caps & _caps;
            const Deadline & _deadline;
            HomSearchStats & _stats;
            vector<Mask> _found;

            auto assign(int v, int value, std::deque<int> & queue) -> void
            {
                _value[v] = static_cast<signed char>(value);
                _trail.push_back(v);
                for (int c : _watch[v])
                    queue.push_back(c);
            }

            auto revise(int c, std::deque<int> & queue) -> bool
            {
                ++_stats.propagations;
                auto & con = _constraints[c];
                int k = static_cast<int>(con.vars.size());
                unsigned fixed = 0, fixed_value = 0;
                for (int i = 0; i < k; ++i)
                    if (_value[con.vars[i]] >= 0) {
                        fixed |= 1u << i;
                        if (_value[con.vars[i]])
                            fixed_value |= 1u << i;
                    }

                unsigned seen_one = 0, seen_zero = 0;
                bool any = false;
                for (unsigned p = 0; p < con.allowed.size(); ++p)
                    if (con.allowed[p] && (p & fixed) == fixed_value) {
                        any = true;
                        seen_one |= p;
                        seen_zero |= ~p;
                    }
                if (! any)
                    return false;

                for (int i = 0; i < k; ++i) {
                    if (fixed & (1u << i))
                        continue;
                    bool can_one = seen_one & (1u << i), can_zero = seen_zero & (1u << i);
                    if (! can_one)
                        assign(con.vars[i], 0, queue);
                    else if (! can_zero)
                        assign(con.vars[i], 1, queue);
                }
                return true;
            }

            auto propagate(std::deque<int> & queue) -> bool
            {
                while (! queue.empty()) {
                    int c = queue.front();
                    queue.pop_front();
                    if (! revise(c, queue))
                        return false;
                }
                return true;
            }

            auto undo(std::size_t to) -> void
            {
                while (_trail.size() > to) {
                    _value[_trail.back()] = -1;
                    _trail.pop_back();
                }
            }

            auto record() -> void
            {
                Mask m = 0;
                for (int v = 0; v < _n; ++v)
                    if (_value[v] == 1)
                        m |= bit(v);
                _found.push_back(m);
                if (static_cast<long long>(_found.size()) > _caps.homs)
                    throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(_caps.homs) + " homomorphisms");
            }

            auto dfs(std::size_t depth) -> void
            {
                ++_stats.nodes;
                if ((_stats.nodes & 1023) == 0)
                    _deadline.check("homomorphism enumeration");

                while (depth < _order.size() && _value[_order[depth]] >= 0)
                    ++depth;
                if (depth == _order.size()) {
                    record();
                    return;
                }

                int v = _order[depth];
                for (int value = 0; value < 2; ++value) {
                    auto mark = _trail.size();
                    std::deque<int> queue;
                    assign(v, value, queue);
                    if (propagate(queue))
                        dfs(depth + 1);
                    undo(mark);
                }
            }

        public:
            Search(const FiniteStructure & x, const TwoTemplate & d, const Caps & caps, const Deadline & deadline, HomSearchStats & stats) :
                _n(x.size),
                _watch(x.size),
                _value(x.size, -1),
                _caps(caps),
                _deadline(deadline),
                _stats(stats)
            {
                auto map = symbol_map(x, d);
                auto tables = template_tables(d);
                vector<int> degree(_n, 0);
                bool dead = false;

                for (std::size_t r = 0; r < x.relations.size(); ++r) {
                    auto & table = tables[map[r]];
                    for (auto & t : x.relations[r]) {
                        Constraint con;
                        for (int v : t)
                            if (std::find(con.vars.begin(), con.vars.end(), v) == con.vars.end())
                                con.vars.push_back(v);
                        int k = static_cast<int>(con.vars.size());
                        con.allowed.assign(std::size_t{1} << k, false);
                        bool all = true;
                        for (unsigned p = 0; p < con.allowed.size(); ++p) {
                            unsigned full = 0;
                            for (std::size_t i = 0; i < t.size(); ++i) {
                                auto pos = std::find(con.vars.begin(), con.vars.end(), t[i]) - con.vars.begin();
                                if (p & (1u << pos))
                                    full |= 1u << i;
                            }
                            con.allowed[p] = table[full];
                            all = all && con.allowed[p];
                        }
                        if (all)
                            continue;
                        if (std::none_of(con.allowed.begin(), con.allowed.end(), [](bool b) { return b; }))
                            dead = true;
                        int id = static_cast<int>(_constraints.size());
                        for (int v : con.vars) {
                            _watch[v].push_back(id);
                            ++degree[v];
                        }
                        _constraints.push_back(std::move(con));
                    }
                }

                for (int v = 0; v < _n; ++v)
                    _order.push_back(v);
                std::stable_sort(_order.begin(), _order.end(), [&](int a, int b) { return degree[a] > degree[b]; });

                if (dead) {
                    _order.clear();
                    _n = -1;
                    return;
                }

                std::deque<int> queue;
                for (std::size_t c = 0; c < x.constants.size(); ++c) {
                    int v = x.constants[c];
                    int want = d.structure.constant(x.signature.constants[c]);
                    if (_value[v] >= 0 && _value[v] != want) {
                        _n = -1;
                        return;
                    }
                    if (_value[v] < 0)
                        assign(v, want, queue);
                }
                for (std::size_t c = 0; c < _constraints.size(); ++c)
                    queue.push_back(static_cast<int>(c));
                if (! propagate(queue))
                    _n = -1;
            }

            auto run() -> vector<Mask>
            {
                if (_n >= 0)
                    dfs(0);
                std::sort(_found.begin(), _found.end());
                return std::move(_found);
            }
        };
    }

    auto require_signature_match(const FiniteStructure & x, const TwoTemplate & d) -> void
    {
        if (! x.signature.compatible_with(d.structure.signature))
            throw Error(ErrorKind::SignatureMismatch, "structure signature does not match template " + d.name);
    }

    auto is_homomorphism(const FiniteStructure & x, const TwoTemplate & d, Mask ones) -> bool
    {
        require_signature_match(x, d);
        for (std::size_t c = 0; c < x.constants.size(); ++c)
            if (static_cast<int>(has_bit(ones, x.constants[c])) != d.structure.constant(x.signature.constants[c]))
                return false;
        auto map = symbol_map(x, d);
        for (std::size_t r = 0; r < x.relations.size(); ++r)
            for (auto & t : x.relations[r]) {
                Tuple image;
                for (int v : t)
                    image.push_back(has_bit(ones, v) ? 1 : 0);
                if (! d.structure.has_tuple(map[r], image))
                    return false;
            }
        return true;
    }

    auto enumerate_homs(const FiniteStructure & x, const TwoTemplate & d, const Caps & caps,
        HomMethod method, const Deadline & deadline, HomSearchStats * stats) -> HomSet
    {
        require_signature_match(x, d);
        require_valid(x);

        HomSet result;
        result.domain_size = x.size;
        result.template_name = d.name;
        result.homs.base = x.size;

        if (method == HomMethod::BruteForce) {
            if (x.size > caps.powerset)
                throw Error(ErrorKind::CapExceeded, "brute-force enumeration over " + std::to_string(x.size) + " points exceeds the powerset cap");
            for (Mask m = 0; m <= full_mask(x.size); ++m) {
                if ((m & 0xfff) == 0)
                    deadline.check("brute-force homomorphism enumeration");
                if (is_homomorphism(x, d, m)) {
                    result.homs.sets.push_back(m);
                    if (static_cast<long long>(result.homs.sets.size()) > caps.homs)
                        throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(caps.homs) + " homomorphisms");
                }
            }
        }
        else {
            HomSearchStats local;
            Search search(x, d, caps, deadline, stats ? *stats : local);
            result.homs.sets = search.run();
        }

        result.homs.zero = result.homs.index_of(0).has_value();
        result.homs.one = result.homs.index_of(full_mask(x.size)).has_value();
        return result;
    }

    namespace
    {
        /// Dynamic bitset over hom indices.
        using Bits = vector<std::uint64_t>;
    }

    auto relation_reflection_failures(const FiniteStructure & x, const TwoTemplate & d, const SetFamily & homs)
        -> vector<RelationWitness>
    {
        require_signature_match(x, d);
        auto map = symbol_map(x, d);
        auto tables = template_tables(d);

        std::size_t words = (homs.sets.size() + 63) / 64;
        vector<Bits> row(x.size, Bits(words, 0));
        for (std::size_t h = 0; h < homs.sets.size(); ++h)
            for_each_bit(homs.sets[h], [&](int v) {
                if (v < x.size)
                    row[v][h / 64] |= std::uint64_t{1} << (h % 64);
            });
        Bits all(words, ~std::uint64_t{0});
        if (homs.sets.size() % 64)
            all.back() = (std::uint64_t{1} << (homs.sets.size() % 64)) - 1;

        vector<RelationWitness> failures;
        for (std::size_t r = 0; r < x.relations.size(); ++r) {
            auto & sym = x.signature.symbols[r];
            auto & table = tables[map[r]];
            vector<unsigned> forbidden;
            for (unsigned p = 0; p < table.size(); ++p)
                if (! table[p])
                    forbidden.push_back(p);

            Tuple t(sym.arity, 0);
            Bits acc(words);
            for (;;) {
                if (! x.has_tuple(static_cast<int>(r), t)) {
                    bool reflected = false;
                    for (unsigned p : forbidden) {
                        acc = all;
                        for (int i = 0; i < sym.arity; ++i)
                            for (std::size_t w = 0; w < words; ++w)
                                acc[w] &= (p & (1u << i)) ? row[t[i]][w] : ~row[t[i]][w];
                        if (std::any_of(acc.begin(), acc.end(), [](auto w) { return w != 0; })) {
                            reflected = true;
                            break;
                        }
                    }
                    if (! reflected)
                        failures.push_back({sym.name, t});
                }
                int i = sym.arity - 1;
                while (i >= 0 && ++t[i] == x.size)
                    t[i--] = 0;
                if (i < 0)
                    break;
            }
        }
        return failures;
    }

    auto is_separated(const FiniteStructure & x, const TwoTemplate & d, const Caps & caps, const Deadline & deadline) -> SeparationReport
    {
        SeparationReport report;
        report.homs = enumerate_homs(x, d, caps, HomMethod::Backtracking, deadline);
        auto & sets = report.homs.homs.sets;

        for (int a = 0; a < x.size; ++a)
            for (int b = a + 1; b < x.size; ++b)
                if (std::all_of(sets.begin(), sets.end(), [&](Mask h) { return has_bit(h, a) == has_bit(h, b); }))
                    report.collisions.emplace_back(a, b);

        report.injective = report.collisions.empty();
        report.relation_witnesses = relation_reflection_failures(x, d, report.homs.homs);
        report.separated = report.injective && report.relation_witnesses.empty();
        return report;
    }
}
