#include <duality/bea.hh>
#include <duality/errors.hh>

#include <algorithm>
#include <array>
#include <functional>

using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace duality
{
    namespace
    {
        auto check_constants(int universe, optional<int> zero, optional<int> one) -> void
        {
            for (auto c : {zero, one})
                if (c && (*c < 0 || *c >= universe))
                    throw Error(ErrorKind::InvalidInput, "constant index " + std::to_string(*c) + " outside the universe");
            if (zero && one && *zero == *one)
                throw Error(ErrorKind::InvalidInput, "constants 0 and 1 name the same element");
        }

        auto check_universe(int universe) -> void
        {
            if (universe <= 0 || universe > mask_bits)
                throw Error(ErrorKind::InvalidInput, "oracle universe must lie in [1, 64], got " + std::to_string(universe));
        }

        /// Induced oracles answer i0-i3 in closed form, so only tables and
        /// genuine sweeps are capped.
        auto require_cap(const BeaOracle & o, int cap, Axiom axiom) -> void
        {
            if (o.is_table() && o.universe() > cap)
                throw Error(ErrorKind::CapExceeded, "axiom " + string(to_string(axiom)) + " sweep over " + std::to_string(o.universe())
                        + " elements exceeds the cap of " + std::to_string(cap));
        }

        /// Keeps the least witness seen so far.
        struct Least
        {
            vector<Mask> best;

            auto offer(vector<Mask> w) -> void
            {
                if (best.empty() || witness_less(w, best))
                    best = std::move(w);
            }
        };

        auto sm(Mask m) -> string
        {
            string s = "{";
            bool first = true;
            for_each_bit(m, [&](int i) {
                if (! first)
                    s += ",";
                first = false;
                s += std::to_string(i);
            });
            return s + "}";
        }

        auto all_subsets(int n, const std::function<void (Mask)> & f) -> void
        {
            for (Mask m = 0;; ++m) {
                f(m);
                if (m == full_mask(n))
                    break;
            }
        }
    }

    auto BeaOracle::table(int universe, vector<SubsetPair> pairs, optional<int> zero, optional<int> one) -> BeaOracle
    {
        check_universe(universe);
        check_constants(universe, zero, one);
        for (auto & [s, t] : pairs)
            if (! is_subset(s | t, full_mask(universe)))
                throw Error(ErrorKind::InvalidInput, "pair " + sm(s) + " ⋈ " + sm(t) + " exceeds the universe");

        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

        BeaOracle o;
        o._universe = universe;
        o._zero = zero;
        o._one = one;
        o._realization = Table{pairs};
        o._pair_set.insert(pairs.begin(), pairs.end());
        o._sorted_pairs = std::move(pairs);

        for (auto & [s, t] : o._sorted_pairs) {
            for (int p = 0; p < universe && o._monotone; ++p)
                if (! o._pair_set.count({s | bit(p), t}) || ! o._pair_set.count({s, t | bit(p)}))
                    o._monotone = false;
            if (! o._monotone)
                break;
        }
        return o;
    }

    auto BeaOracle::induced(int universe, vector<Mask> halfspaces, optional<int> zero, optional<int> one) -> BeaOracle
    {
        check_universe(universe);
        check_constants(universe, zero, one);
        for (auto h : halfspaces)
            if (! is_subset(h, full_mask(universe)))
                throw Error(ErrorKind::InvalidInput, "halfspace " + sm(h) + " exceeds the universe");
        std::sort(halfspaces.begin(), halfspaces.end());
        halfspaces.erase(std::unique(halfspaces.begin(), halfspaces.end()), halfspaces.end());

        BeaOracle o;
        o._universe = universe;
        o._zero = zero;
        o._one = one;
        o._realization = Induced{std::move(halfspaces)};
        return o;
    }

    auto BeaOracle::halfspace_basis() const -> const vector<Mask> &
    {
        static const vector<Mask> none;
        if (auto i = std::get_if<Induced>(&_realization))
            return i->halfspaces;
        return none;
    }

    auto BeaOracle::query(Mask s, Mask t) const -> bool
    {
        if (auto i = std::get_if<Induced>(&_realization)) {
            for (auto h : i->halfspaces)
                if (is_subset(s, h) && ! (t & h))
                    return false;
            return true;
        }
        return _pair_set.count({s, t});
    }

    auto BeaOracle::any_below(Mask upper_s, Mask upper_t) const -> bool
    {
        if (_monotone)
            return query(upper_s, upper_t);
        return std::any_of(_sorted_pairs.begin(), _sorted_pairs.end(),
            [&](auto & p) { return is_subset(p.first, upper_s) && is_subset(p.second, upper_t); });
    }

    auto BeaOracle::any_left_below(Mask upper_s, Mask t) const -> bool
    {
        if (_monotone)
            return query(upper_s, t);
        return std::any_of(_sorted_pairs.begin(), _sorted_pairs.end(),
            [&](auto & p) { return p.second == t && is_subset(p.first, upper_s); });
    }

    auto BeaOracle::positive_pairs(int cap) const -> vector<SubsetPair>
    {
        if (is_table())
            return _sorted_pairs;
        if (_universe > cap)
            throw Error(ErrorKind::CapExceeded, "listing the pairs of a " + std::to_string(_universe) + "-element oracle exceeds the cap");
        vector<SubsetPair> result;
        all_subsets(_universe, [&](Mask s) {
            all_subsets(_universe, [&](Mask t) {
                if (query(s, t))
                    result.emplace_back(s, t);
            });
        });
        return result;
    }

    auto BeaOracle::to_table(int cap) const -> BeaOracle
    {
        return table(_universe, positive_pairs(cap), _zero, _one);
    }

    auto BeaOracle::with_constants(optional<int> zero, optional<int> one) const -> BeaOracle
    {
        check_constants(_universe, zero, one);
        BeaOracle o = *this;
        o._zero = zero;
        o._one = one;
        return o;
    }

    auto family_bea(const SetFamily & family) -> BeaOracle
    {
        auto report = validate(family);
        if (! report.valid())
            throw Error(ErrorKind::InvalidInput, "invalid family: " + report.violations.front());
        if (family.size() == 0)
            throw Error(ErrorKind::InvalidInput, "family has no members");

        auto rows = transpose(family);
        optional<int> zero, one;
        if (family.zero)
            zero = family.index_of(0);
        if (family.one)
            one = family.index_of(full_mask(family.base));
        return BeaOracle::induced(family.size(), rows.family.sets, zero, one);
    }

    auto to_string(Axiom axiom) -> string_view
    {
        static constexpr std::array<string_view, 8> names{"i0", "i1", "i2", "i3", "i4", "i5", "c0", "c1"};
        return names[static_cast<int>(axiom)];
    }

    auto parse_axiom(string_view name) -> Axiom
    {
        for (int i = 0; i < 8; ++i)
            if (to_string(static_cast<Axiom>(i)) == name)
                return static_cast<Axiom>(i);
        throw Error(ErrorKind::InvalidInput, "unknown axiom " + string(name));
    }

    namespace
    {
        auto check_i1(const BeaOracle & o) -> Least
        {
            Least least;
            if (o.is_monotone())
                return least;
            for (auto & [a, b] : o.table_pairs())
                for (int p = 0; p < o.universe(); ++p) {
                    if (! o.query(a | bit(p), b))
                        least.offer({a, b, a | bit(p), b});
                    if (! o.query(a, b | bit(p)))
                        least.offer({a, b, a, b | bit(p)});
                }
            return least;
        }

        auto check_i2(const BeaOracle & o) -> Least
        {
            Least least;
            int n = o.universe();
            if (! o.is_table()) {
                // reflexivity is automatic; antisymmetry means rows differ
                auto & h = o.halfspace_basis();
                for (int p = 0; p < n && least.best.empty(); ++p)
                    for (int q = p + 1; q < n; ++q)
                        if (std::all_of(h.begin(), h.end(), [&](Mask m) { return has_bit(m, p) == has_bit(m, q); })) {
                            least.offer({bit(p), bit(q)});
                            break;
                        }
                return least;
            }
            for (int p = 0; p < n; ++p) {
                if (! o.query(bit(p), bit(p)))
                    least.offer({bit(p), bit(p)});
                for (int q = p + 1; q < n; ++q)
                    if (o.query(bit(p), bit(q)) && o.query(bit(q), bit(p)))
                        least.offer({bit(p), bit(q)});
            }
            return least;
        }

        /// Candidate (a0, b0, a1, b1, {p}) in which the conclusion fails.
        auto offer_i3(const BeaOracle & o, Least & least, Mask a0, Mask b0, Mask a1, Mask b1, int p) -> void
        {
            if (! o.query(a0 | a1, b0 | b1))
                least.offer({a0, b0, a1, b1, bit(p)});
        }

        auto check_i3(const BeaOracle & o) -> Least
        {
            Least least;
            if (! o.is_table())
                return least;

            auto & pairs = o.table_pairs();
            if (o.is_monotone()) {
                // a least counterexample shrinks onto minimal positive pairs
                // that contain p on the appropriate side
                vector<SubsetPair> minimal;
                for (auto & [s, t] : pairs) {
                    bool is_min = true;
                    for_each_bit(s, [&](int i) { is_min = is_min && ! o.query(s & ~bit(i), t); });
                    for_each_bit(t, [&](int i) { is_min = is_min && ! o.query(s, t & ~bit(i)); });
                    if (is_min)
                        minimal.emplace_back(s, t);
                }
                for (auto & [x0, b0] : minimal)
                    for (auto & [a1, y1] : minimal)
                        for_each_bit(x0 & y1, [&](int p) { offer_i3(o, least, x0 & ~bit(p), b0, a1, y1 & ~bit(p), p); });
                return least;
            }

            for (auto & [x0, b0] : pairs)
                for (auto & [a1, y1] : pairs)
                    for_each_bit(x0 & y1, [&](int p) {
                        for (Mask a0 : {x0 & ~bit(p), x0})
                            for (Mask b1 : {y1 & ~bit(p), y1})
                                offer_i3(o, least, a0, b0, a1, b1, p);
                    });
            return least;
        }

        auto i4_holds_at(const BeaOracle & o, Mask a, Mask b) -> bool
        {
            for (int p = 0; p < o.universe(); ++p)
                if (o.query(a, bit(p)) && o.query(bit(p), b))
                    return true;
            return false;
        }

        /// Closure of `generators` under binary `op`, plus `unit`.
        auto closure(const vector<Mask> & generators, Mask unit, Mask (*op)(Mask, Mask), long long cap) -> vector<Mask>
        {
            vector<Mask> result{unit};
            std::unordered_set<Mask> seen{unit};
            for (std::size_t i = 0; i < result.size(); ++i)
                for (auto g : generators) {
                    Mask m = op(result[i], g);
                    if (seen.insert(m).second) {
                        result.push_back(m);
                        if (static_cast<long long>(result.size()) > cap)
                            throw Error(ErrorKind::CapExceeded, "intersection/union closure too large for the (i4) check");
                    }
                }
            return result;
        }

        /// (i4) for an induced oracle through its family view: every member i
        /// is the set F_i of halfspaces containing i, so a ⋈ b reads
        /// ⋂F_a ⊆ ⋃F_b, and (i4) asks for a member squeezed between.
        auto check_i4_family(const BeaOracle & o, const Caps & caps) -> Least
        {
            auto & h = o.halfspace_basis();
            int n = o.universe();
            if (h.size() > static_cast<std::size_t>(mask_bits))
                throw Error(ErrorKind::CapExceeded, "family view of the oracle needs more than 64 halfspaces");
            int base = static_cast<int>(h.size());
            vector<Mask> f(n, 0);
            for (int j = 0; j < base; ++j)
                for_each_bit(h[j], [&](int i) { f[i] |= bit(j); });

            auto meets = closure(f, full_mask(base), [](Mask x, Mask y) { return x & y; }, caps.homs);
            auto joins = closure(f, 0, [](Mask x, Mask y) { return x | y; }, caps.homs);

            Least least;
            for (auto A : meets)
                for (auto B : joins) {
                    if (! is_subset(A, B))
                        continue;
                    if (std::any_of(f.begin(), f.end(), [&](Mask m) { return is_subset(A, m) && is_subset(m, B); }))
                        continue;

                    // a realising pair, then shrunk greedily
                    Mask a = 0, b = 0;
                    for (int i = 0; i < n; ++i) {
                        if (is_subset(A, f[i]))
                            a |= bit(i);
                        if (is_subset(f[i], B))
                            b |= bit(i);
                    }
                    auto fails = [&](Mask x, Mask y) { return o.query(x, y) && ! i4_holds_at(o, x, y); };
                    for (int i = n - 1; i >= 0; --i)
                        if (has_bit(a, i) && fails(a & ~bit(i), b))
                            a &= ~bit(i);
                    for (int i = n - 1; i >= 0; --i)
                        if (has_bit(b, i) && fails(a, b & ~bit(i)))
                            b &= ~bit(i);
                    least.offer({a, b});
                }
            return least;
        }

        constexpr int exact_sweep_limit = 8;

        auto check_i4(const BeaOracle & o, const Caps & caps) -> Least
        {
            Least least;
            if (o.is_table()) {
                require_cap(o, caps.axioms, Axiom::i4);
                for (auto & [a, b] : o.table_pairs())
                    if (! i4_holds_at(o, a, b))
                        least.offer({a, b});
                return least;
            }
            if (o.universe() > exact_sweep_limit)
                return check_i4_family(o, caps);
            all_subsets(o.universe(), [&](Mask a) {
                all_subsets(o.universe(), [&](Mask b) {
                    if (o.query(a, b) && ! i4_holds_at(o, a, b))
                        least.offer({a, b});
                });
            });
            return least;
        }

        auto check_i5(const BeaOracle & o, const Caps & caps) -> Least
        {
            Least least;
            if (o.universe() > caps.axioms)
                throw Error(ErrorKind::CapExceeded, "axiom i5 sweep over " + std::to_string(o.universe()) + " elements exceeds the cap");
            if (o.is_table()) {
                for (auto & [a, b] : o.table_pairs())
                    if (! o.query(b, a))
                        least.offer({a, b});
                return least;
            }
            all_subsets(o.universe(), [&](Mask a) {
                all_subsets(o.universe(), [&](Mask b) {
                    if (o.query(a, b) && ! o.query(b, a))
                        least.offer({a, b});
                });
            });
            return least;
        }
    }

    auto check_axiom(const BeaOracle & o, Axiom axiom, const Caps & caps) -> AxiomReport
    {
        AxiomReport report;
        report.axiom = axiom;
        Least least;

        switch (axiom) {
            case Axiom::i0:
                require_cap(o, caps.axioms, axiom);
                if (o.query(0, 0))
                    least.offer({0, 0});
                break;

            case Axiom::i1:
                require_cap(o, caps.axioms_pairs, axiom);
                least = check_i1(o);
                break;

            case Axiom::i2:
                require_cap(o, caps.axioms, axiom);
                least = check_i2(o);
                break;

            case Axiom::i3:
                require_cap(o, caps.axioms_pairs, axiom);
                least = check_i3(o);
                break;

            case Axiom::i4:
                least = check_i4(o, caps);
                break;

            case Axiom::i5:
                least = check_i5(o, caps);
                break;

            case Axiom::c0:
                if (! o.zero())
                    throw Error(ErrorKind::MissingConstants, "c0 needs the constant 0");
                if (! o.query(bit(*o.zero()), 0))
                    least.offer({bit(*o.zero()), 0});
                break;

            case Axiom::c1:
                if (! o.one())
                    throw Error(ErrorKind::MissingConstants, "c1 needs the constant 1");
                if (! o.query(0, bit(*o.one())))
                    least.offer({0, bit(*o.one())});
                break;
        }

        report.pass = least.best.empty();
        report.witness = std::move(least.best);
        if (! report.pass) {
            auto & w = report.witness;
            switch (axiom) {
                case Axiom::i0: report.detail = "∅ ⋈ ∅"; break;
                case Axiom::i1: report.detail = sm(w[0]) + " ⋈ " + sm(w[1]) + " but not " + sm(w[2]) + " ⋈ " + sm(w[3]); break;
                case Axiom::i2:
                    report.detail = w[0] == w[1] ? "not " + sm(w[0]) + " ⋈ " + sm(w[1])
                                                 : sm(w[0]) + " ⋈ " + sm(w[1]) + " and " + sm(w[1]) + " ⋈ " + sm(w[0]);
                    break;
                case Axiom::i3:
                    report.detail = "a0=" + sm(w[0]) + " b0=" + sm(w[1]) + " a1=" + sm(w[2]) + " b1=" + sm(w[3]) + " p=" + sm(w[4])
                        + ": premises hold, not " + sm(w[0] | w[2]) + " ⋈ " + sm(w[1] | w[3]);
                    break;
                case Axiom::i4: report.detail = sm(w[0]) + " ⋈ " + sm(w[1]) + " with no point between"; break;
                case Axiom::i5: report.detail = sm(w[0]) + " ⋈ " + sm(w[1]) + " but not the reverse"; break;
                case Axiom::c0: report.detail = "not {0} ⋈ ∅"; break;
                case Axiom::c1: report.detail = "not ∅ ⋈ {1}"; break;
            }
        }
        return report;
    }

    auto require_axioms(const BeaOracle & o, const vector<Axiom> & axioms, const Caps & caps) -> void
    {
        for (auto a : axioms) {
            auto r = check_axiom(o, a, caps);
            if (! r.pass)
                throw Error(ErrorKind::AxiomsFail, string(to_string(a)) + " fails: " + r.detail);
        }
    }

    auto PartialOrder::is_discrete() const -> bool
    {
        for (int x = 0; x < size; ++x)
            if (up[x] != bit(x))
                return false;
        return true;
    }

    auto associated_order(const BeaOracle & o, const Caps & caps) -> PartialOrder
    {
        require_axioms(o, {Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3}, caps);
        PartialOrder order;
        order.size = o.universe();
        order.up.assign(order.size, 0);
        for (int x = 0; x < order.size; ++x)
            for (int y = 0; y < order.size; ++y)
                if (o.query(bit(x), bit(y)))
                    order.up[x] |= bit(y);
        return order;
    }

    auto complement(const BeaOracle & o, int a) -> optional<int>
    {
        if (! o.zero() || ! o.one())
            throw Error(ErrorKind::MissingConstants, "complements need both constants");
        if (a < 0 || a >= o.universe())
            throw Error(ErrorKind::InvalidInput, "element outside the universe");

        optional<int> found;
        for (int b = 0; b < o.universe(); ++b) {
            Mask ab = bit(a) | bit(b);
            if (o.query(ab, bit(*o.zero())) && o.query(bit(*o.one()), ab)) {
                if (found)
                    throw Error(ErrorKind::DuplicateComplement, "element " + std::to_string(a) + " has complements "
                            + std::to_string(*found) + " and " + std::to_string(b));
                found = b;
            }
        }
        return found;
    }

    auto is_halfspace(const BeaOracle & o, Mask u) -> bool
    {
        if (o.zero() && has_bit(u, *o.zero()))
            return false;
        if (o.one() && ! has_bit(u, *o.one()))
            return false;
        return ! o.any_below(u, full_mask(o.universe()) & ~u);
    }

    namespace
    {
        class HalfspaceSearch
        {
        private:
            const BeaOracle & _o;
            const Caps & _caps;
            const Deadline & _deadline;
            int _n;
            vector<Mask> _found;
            unsigned long long _nodes = 0;

            /// Forces every free element whose placement is determined.
            auto propagate(Mask & u, Mask & l) const -> bool
            {
                if (_o.any_below(u, l))
                    return false;
                for (bool changed = true; changed;) {
                    changed = false;
                    Mask free = full_mask(_n) & ~(u | l);
                    for (int p = 0; p < _n; ++p) {
                        if (! has_bit(free, p))
                            continue;
                        bool up_bad = _o.any_below(u | bit(p), l), low_bad = _o.any_below(u, l | bit(p));
                        if (up_bad && low_bad)
                            return false;
                        if (up_bad)
                            l |= bit(p);
                        else if (low_bad)
                            u |= bit(p);
                        changed = changed || up_bad || low_bad;
                    }
                }
                return true;
            }

            auto dfs(Mask u, Mask l) -> void
            {
                if ((++_nodes & 255) == 0)
                    _deadline.check("halfspace enumeration");
                if (! propagate(u, l))
                    return;
                Mask free = full_mask(_n) & ~(u | l);
                if (! free) {
                    _found.push_back(u);
                    if (static_cast<long long>(_found.size()) > _caps.homs)
                        throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(_caps.homs) + " halfspaces");
                    return;
                }
                int p = std::countr_zero(free);
                dfs(u, l | bit(p));
                dfs(u | bit(p), l);
            }

        public:
            HalfspaceSearch(const BeaOracle & o, const Caps & caps, const Deadline & deadline) :
                _o(o), _caps(caps), _deadline(deadline), _n(o.universe())
            {
            }

            auto run() -> vector<Mask>
            {
                Mask u = 0, l = 0;
                if (_o.zero())
                    l |= bit(*_o.zero());
                if (_o.one())
                    u |= bit(*_o.one());
                dfs(u, l);
                std::sort(_found.begin(), _found.end());
                return std::move(_found);
            }
        };
    }

    auto all_halfspaces(const BeaOracle & o, const Caps & caps, HalfspaceMethod method, const Deadline & deadline) -> SetFamily
    {
        SetFamily result;
        result.base = o.universe();
        if (method == HalfspaceMethod::BruteForce) {
            if (o.universe() > caps.powerset)
                throw Error(ErrorKind::CapExceeded, "brute-force halfspace sweep exceeds the powerset cap");
            all_subsets(o.universe(), [&](Mask u) {
                if ((u & 0xfff) == 0)
                    deadline.check("brute-force halfspace enumeration");
                if (is_halfspace(o, u))
                    result.sets.push_back(u);
            });
        }
        else
            result.sets = HalfspaceSearch(o, caps, deadline).run();

        result.zero = result.index_of(0).has_value();
        result.one = result.index_of(full_mask(o.universe())).has_value();
        return result;
    }

    auto separate(const BeaOracle & o, Mask a, Mask b) -> Mask
    {
        Mask all = full_mask(o.universe());
        if (! is_subset(a | b, all))
            throw Error(ErrorKind::InvalidInput, "separation sets exceed the universe");
        if (o.query(a, b))
            throw Error(ErrorKind::PreconditionViolated, sm(a) + " ⋈ " + sm(b) + ": nothing to separate");

        Mask u = a;
        if ((u & b) || o.any_left_below(u, b))
            throw PaschFailure("start set " + sm(a) + " already meets or relates to " + sm(b), std::nullopt, u, b);
        for (int p = 0; p < o.universe(); ++p)
            if (! has_bit(u | b, p) && ! o.any_left_below(u | bit(p), b))
                u |= bit(p);

        Mask l = b;
        if (o.any_below(u, l))
            throw PaschFailure("lower start " + sm(b) + " is not a halfspace complement of " + sm(u), std::nullopt, u, l);
        for (int p = 0; p < o.universe(); ++p)
            if (! has_bit(u | l, p) && ! o.any_below(u, l | bit(p)))
                l |= bit(p);

        if ((u | l) != all) {
            int stuck = std::countr_zero(all & ~(u | l));
            throw PaschFailure("point " + std::to_string(stuck) + " fits neither side (U=" + sm(u) + ", L=" + sm(l) + ")", stuck, u, l);
        }
        if (! is_halfspace(o, u))
            throw PaschFailure("sweep result " + sm(u) + " is not a halfspace", std::nullopt, u, l);
        return u;
    }

    auto bea_from_homs(const SetFamily & homs) -> BeaOracle
    {
        return BeaOracle::induced(homs.base, homs.sets);
    }

    auto first_disagreement(const BeaOracle & a, const BeaOracle & b, int cap) -> optional<SubsetPair>
    {
        if (a.universe() != b.universe())
            throw Error(ErrorKind::InvalidInput, "oracles over different universes");
        if (a.universe() > cap)
            throw Error(ErrorKind::CapExceeded, "pairwise comparison exceeds the cap");
        optional<SubsetPair> found;
        all_subsets(a.universe(), [&](Mask s) {
            if (found)
                return;
            all_subsets(a.universe(), [&](Mask t) {
                if (! found && a.query(s, t) != b.query(s, t))
                    found = SubsetPair{s, t};
            });
        });
        return found;
    }
}
