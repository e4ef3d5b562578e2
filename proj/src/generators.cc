#include <duality/bea.hh>
#include <duality/catalog.hh>
#include <duality/dual.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/rng.hh>

#include <algorithm>
#include <functional>
#include <set>

using std::vector;

namespace duality
{
    namespace
    {
        auto require_exhaustive(int n, const Caps & caps) -> void
        {
            if (n < 1)
                throw Error(ErrorKind::InvalidInput, "structures need at least one point");
            if (n > caps.exhaustive)
                throw Error(ErrorKind::CapExceeded, "exhaustive generation on " + std::to_string(n) + " points exceeds the cap");
        }

        auto down_sets_of(const vector<Mask> & up) -> vector<Mask>
        {
            int n = static_cast<int>(up.size());
            vector<Mask> down(n, 0);
            for (int x = 0; x < n; ++x)
                for_each_bit(up[x], [&](int y) { down[y] |= bit(x); });
            return down;
        }

        auto transitive_closure(vector<Mask> up) -> vector<Mask>
        {
            int n = static_cast<int>(up.size());
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    if (has_bit(up[i], k))
                        up[i] |= up[k];
            return up;
        }

        /// Binary operation table of a functional symbol.
        auto op_table(const FiniteStructure & x, const std::string & name) -> vector<vector<int>>
        {
            vector<vector<int>> table(x.size, vector<int>(x.size, -1));
            for (auto & t : x.relation(name))
                table[t[0]][t[1]] = t[2];
            return table;
        }

        auto close_under_meet(vector<Mask> family) -> vector<Mask>
        {
            std::set<Mask> seen(family.begin(), family.end());
            for (std::size_t i = 0; i < family.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (seen.insert(family[i] & family[j]).second)
                        family.push_back(family[i] & family[j]);
            return family;
        }

        auto orientation(const Point & a, const Point & b, const Point & c) -> long long
        {
            return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
        }

        auto on_segment(const Point & a, const Point & b, const Point & p) -> bool
        {
            return orientation(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x)
                && std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
        }

        auto in_triangle(const Point & a, const Point & b, const Point & c, const Point & p) -> bool
        {
            auto d1 = orientation(a, b, p), d2 = orientation(b, c, p), d3 = orientation(c, a, p);
            bool neg = d1 < 0 || d2 < 0 || d3 < 0, pos = d1 > 0 || d2 > 0 || d3 > 0;
            return ! (neg && pos);
        }

        /// Points of `pts` inside the convex hull of the subset s
        /// (Carathéodory: a segment or triangle of s suffices).
        auto trace_hull(const vector<Point> & pts, Mask s) -> Mask
        {
            auto idx = mask_to_indices(s);
            Mask result = s;
            for (std::size_t p = 0; p < pts.size(); ++p) {
                if (has_bit(result, static_cast<int>(p)))
                    continue;
                bool inside = false;
                for (std::size_t i = 0; i < idx.size() && ! inside; ++i)
                    for (std::size_t j = i + 1; j < idx.size() && ! inside; ++j) {
                        inside = on_segment(pts[idx[i]], pts[idx[j]], pts[p]);
                        for (std::size_t k = j + 1; k < idx.size() && ! inside; ++k)
                            inside = in_triangle(pts[idx[i]], pts[idx[j]], pts[idx[k]], pts[p]);
                    }
                if (inside)
                    result |= bit(static_cast<int>(p));
            }
            return result;
        }
    }

    auto poset_structure(const vector<Mask> & up) -> FiniteStructure
    {
        FiniteStructure p;
        p.signature = order_signature();
        p.size = static_cast<int>(up.size());
        p.relations.resize(1);
        for (int x = 0; x < p.size; ++x)
            for_each_bit(up[x], [&](int y) { p.relations[0].push_back({x, y}); });
        p.normalise();
        return p;
    }

    auto poset_up_sets(const FiniteStructure & poset) -> vector<Mask>
    {
        vector<Mask> up(poset.size, 0);
        for (auto & t : poset.relation("le"))
            up[t[0]] |= bit(t[1]);
        return up;
    }

    auto gen_posets_exhaustive(int n, const Caps & caps) -> vector<FiniteStructure>
    {
        require_exhaustive(n, caps);
        vector<vector<Mask>> layer{{}};
        for (int k = 0; k < n; ++k) {
            vector<vector<Mask>> next;
            for (auto & up : layer) {
                auto down = down_sets_of(up);
                for (Mask below = 0; below < bit(k); ++below) {
                    bool down_closed = true;
                    for_each_bit(below, [&](int d) { down_closed = down_closed && is_subset(down[d], below); });
                    if (! down_closed)
                        continue;
                    for (Mask above = 0; above < bit(k); ++above) {
                        if (below & above)
                            continue;
                        bool ok = true;
                        for_each_bit(above, [&](int u) { ok = ok && is_subset(up[u], above); });
                        for_each_bit(below, [&](int d) { ok = ok && is_subset(above, up[d]); });
                        if (! ok)
                            continue;
                        auto grown = up;
                        for_each_bit(below, [&](int d) { grown[d] |= bit(k); });
                        grown.push_back(above | bit(k));
                        next.push_back(std::move(grown));
                    }
                }
            }
            layer = std::move(next);
        }

        vector<FiniteStructure> result;
        for (auto & up : layer)
            result.push_back(poset_structure(up));
        return result;
    }

    auto gen_posets_random(int n, int count, std::uint64_t seed) -> vector<FiniteStructure>
    {
        Rng rng(seed);
        vector<FiniteStructure> result;
        for (int c = 0; c < count; ++c) {
            vector<int> order(n);
            for (int i = 0; i < n; ++i)
                order[i] = i;
            rng.shuffle(order);
            vector<Mask> up(n, 0);
            for (int i = 0; i < n; ++i) {
                up[order[i]] |= bit(order[i]);
                for (int j = i + 1; j < n; ++j)
                    if (rng.chance(1, 2))
                        up[order[i]] |= bit(order[j]);
            }
            result.push_back(poset_structure(transitive_closure(up)));
        }
        return result;
    }

    auto chain_poset(int n) -> FiniteStructure
    {
        vector<Mask> up(n);
        for (int i = 0; i < n; ++i)
            up[i] = full_mask(n) & ~full_mask(i);
        return poset_structure(up);
    }

    auto antichain_poset(int n) -> FiniteStructure
    {
        vector<Mask> up(n);
        for (int i = 0; i < n; ++i)
            up[i] = bit(i);
        return poset_structure(up);
    }

    auto bare_set(int n) -> FiniteStructure
    {
        FiniteStructure x;
        x.size = n;
        return x;
    }

    auto semilattice_from_family(const vector<Mask> & family, bool with_zero) -> FiniteStructure
    {
        FiniteStructure s;
        s.signature = semilattice_signature(with_zero, false);
        s.size = static_cast<int>(family.size());
        s.relations.resize(1);
        Mask bottom = ~Mask{0};
        for (auto m : family)
            bottom &= m;

        for (int i = 0; i < s.size; ++i)
            for (int j = 0; j < s.size; ++j) {
                auto it = std::find(family.begin(), family.end(), family[i] & family[j]);
                if (it == family.end())
                    throw Error(ErrorKind::InvalidInput, "family is not closed under intersection");
                s.relations[0].push_back({i, j, static_cast<int>(it - family.begin())});
            }
        if (with_zero)
            s.constants.push_back(static_cast<int>(std::find(family.begin(), family.end(), bottom) - family.begin()));
        s.normalise();
        return s;
    }

    auto gen_semilattices_exhaustive(int n, const Caps & caps) -> vector<FiniteStructure>
    {
        vector<FiniteStructure> result;
        for (auto & poset : gen_posets_exhaustive(n, caps)) {
            auto up = poset_up_sets(poset);
            auto down = down_sets_of(up);
            bool meets = true;
            for (int x = 0; x < n && meets; ++x)
                for (int y = 0; y < n && meets; ++y) {
                    Mask lower = down[x] & down[y];
                    // a greatest lower bound is a lower bound above all others
                    bool found = false;
                    for_each_bit(lower, [&](int g) { found = found || is_subset(lower, down[g]); });
                    meets = found;
                }
            if (meets)
                result.push_back(semilattice_from_family(down));
        }
        return result;
    }

    auto gen_semilattices_random(int n, int count, std::uint64_t seed) -> vector<FiniteStructure>
    {
        Rng rng(seed);
        vector<FiniteStructure> result;
        for (int c = 0; c < count; ++c) {
            int target = rng.between(1, n);
            vector<Mask> family{rng.next() & full_mask(n)};
            for (int attempt = 0; attempt < 64 && static_cast<int>(family.size()) < target; ++attempt) {
                auto grown = family;
                grown.push_back(rng.next() & full_mask(n));
                grown = close_under_meet(grown);
                std::sort(grown.begin(), grown.end());
                grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
                if (static_cast<int>(grown.size()) <= target)
                    family = grown;
            }
            rng.shuffle(family);
            result.push_back(semilattice_from_family(family));
        }
        return result;
    }

    auto downset_lattice(const FiniteStructure & poset) -> FiniteStructure
    {
        auto down = down_sets_of(poset_up_sets(poset));
        int n = poset.size;
        if (n > 20)
            throw Error(ErrorKind::CapExceeded, "down-set lattice of more than 20 points");

        vector<Mask> members;
        for (Mask d = 0; d <= full_mask(n); ++d) {
            bool closed = true;
            for_each_bit(d, [&](int x) { closed = closed && is_subset(down[x], d); });
            if (closed)
                members.push_back(d);
        }

        SetFamily family{n, members, false, false};
        auto index = [&](Mask m) { return *family.index_of(m); };
        FiniteStructure l;
        l.signature = lattice_signature();
        l.size = static_cast<int>(members.size());
        l.relations.resize(2);
        for (int i = 0; i < l.size; ++i)
            for (int j = 0; j < l.size; ++j) {
                l.relations[0].push_back({i, j, index(members[i] & members[j])});
                l.relations[1].push_back({i, j, index(members[i] | members[j])});
            }
        l.constants = {index(0), index(full_mask(n))};
        l.normalise();
        return l;
    }

    auto gen_distributive_lattices(int n, int count, std::uint64_t seed) -> vector<FiniteStructure>
    {
        vector<FiniteStructure> result;
        for (auto & p : gen_posets_random(n, count, seed))
            result.push_back(downset_lattice(p));
        return result;
    }

    auto is_distributive(const FiniteStructure & lattice, const Caps & caps) -> bool
    {
        if (lattice.size > caps.distributive)
            throw Error(ErrorKind::CapExceeded, "distributivity check on " + std::to_string(lattice.size) + " elements exceeds the cap");
        auto meet = op_table(lattice, "meet");
        auto join = op_table(lattice, "join");
        for (int x = 0; x < lattice.size; ++x)
            for (int y = 0; y < lattice.size; ++y)
                for (int z = 0; z < lattice.size; ++z)
                    if (meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]])
                        return false;
        return true;
    }

    auto is_complemented_lattice(const FiniteStructure & lattice) -> bool
    {
        auto meet = op_table(lattice, "meet");
        auto join = op_table(lattice, "join");
        int zero = lattice.constant("zero"), one = lattice.constant("one");
        for (int x = 0; x < lattice.size; ++x) {
            bool found = false;
            for (int y = 0; y < lattice.size && ! found; ++y)
                found = meet[x][y] == zero && join[x][y] == one;
            if (! found)
                return false;
        }
        return true;
    }

    auto gen_family(int base, int size, std::uint64_t seed) -> SetFamily
    {
        if (base < 0 || base > mask_bits || (base < 63 && static_cast<std::uint64_t>(size) > (std::uint64_t{1} << base)))
            throw Error(ErrorKind::InvalidInput, "cannot draw " + std::to_string(size) + " distinct subsets of a " + std::to_string(base) + "-set");
        Rng rng(seed);
        SetFamily family{base, {}, false, false};
        std::set<Mask> seen;
        while (static_cast<int>(family.sets.size()) < size) {
            Mask m = rng.next() & full_mask(base);
            if (seen.insert(m).second)
                family.sets.push_back(m);
        }
        return family;
    }

    auto minimal_betweenness(int n) -> FiniteStructure
    {
        FiniteStructure b;
        b.signature = betweenness_signature();
        b.size = n;
        b.relations.resize(1);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    if (k != m || l == k)
                        b.relations[0].push_back({k, l, m});
        return b;
    }

    auto betweenness_from_family(int n, const vector<Mask> & convex) -> FiniteStructure
    {
        FiniteStructure b;
        b.signature = betweenness_signature();
        b.size = n;
        b.relations.resize(1);
        for (int a = 0; a < n; ++a)
            for (int x = 0; x < n; ++x)
                for (int c = 0; c < n; ++c)
                    if (std::all_of(convex.begin(), convex.end(),
                            [&](Mask h) { return ! (has_bit(h, a) && has_bit(h, c)) || has_bit(h, x); }))
                        b.relations[0].push_back({a, x, c});
        return b;
    }

    auto gen_betweenness_random(int n, int count, std::uint64_t seed) -> vector<FiniteStructure>
    {
        Rng rng(seed);
        vector<FiniteStructure> result;
        for (int c = 0; c < count; ++c) {
            if (c % 2 == 0) {
                vector<Mask> convex;
                int k = rng.between(1, 2 * n);
                for (int i = 0; i < k; ++i)
                    convex.push_back(rng.next() & full_mask(n));
                result.push_back(betweenness_from_family(n, convex));
            }
            else {
                FiniteStructure b;
                b.signature = betweenness_signature();
                b.size = n;
                b.relations.resize(1);
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = 0; z < n; ++z)
                            if (x == y || y == z || rng.chance(1, 4))
                                b.relations[0].push_back({x, y, z});
                result.push_back(std::move(b));
            }
        }
        return result;
    }

    auto betweenness_axioms_hold(const FiniteStructure & b) -> bool
    {
        int n = b.size;
        auto B = [&](int x, int y, int z) { return b.has_tuple(0, {x, y, z}); };
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (! B(x, x, y) || ! B(x, y, y))
                    return false;
                if (x != y && B(x, y, x) && B(y, x, y))
                    return false;
            }
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                for (int x = 0; x < n; ++x) {
                    if (! B(u, x, v))
                        continue;
                    for (int y = 0; y < n; ++y) {
                        if (! B(u, y, v))
                            continue;
                        for (int z = 0; z < n; ++z)
                            if (B(x, z, y) && ! B(u, z, v))
                                return false;
                    }
                }
        return true;
    }

    auto poset_biconvexity(const FiniteStructure & poset) -> BiConvexity
    {
        auto up = poset_up_sets(poset);
        int n = poset.size;
        vector<Mask> lower, upper;
        for (Mask m = 0; m <= full_mask(n); ++m) {
            bool is_up = true, is_down = true;
            for (int x = 0; x < n; ++x)
                for_each_bit(up[x], [&](int y) {
                    if (has_bit(m, x) && ! has_bit(m, y))
                        is_up = false;
                    if (has_bit(m, y) && ! has_bit(m, x))
                        is_down = false;
                });
            if (is_down)
                lower.push_back(m);
            if (is_up)
                upper.push_back(m);
        }
        return make_biconvexity(n, lower, upper);
    }

    auto random_normal_biconvexity(int n, std::uint64_t seed, bool symmetric, const Caps & caps) -> BiConvexity
    {
        Rng rng(seed);
        Mask all = full_mask(n);
        for (int attempt = 0; attempt < 4096; ++attempt) {
            vector<Mask> h{0, all};
            int k = rng.between(1, 2 * n);
            for (int i = 0; i < k; ++i) {
                Mask m = rng.next() & all;
                h.push_back(m);
                if (symmetric)
                    h.push_back(all & ~m);
            }
            auto oracle = BeaOracle::induced(n, h);
            if (! check_axiom(oracle, Axiom::i2, caps).pass || ! check_axiom(oracle, Axiom::i4, caps).pass)
                continue;
            return biconvexity_from_bea(oracle, caps);
        }

        // the discrete space always qualifies
        vector<Mask> every;
        for (Mask m = 0; m <= all; ++m)
            every.push_back(m);
        return make_biconvexity(n, every, every);
    }

    auto planar_trace_convexity(const vector<Point> & points) -> BiConvexity
    {
        int n = static_cast<int>(points.size());
        if (n < 1 || n > 16)
            throw Error(ErrorKind::InvalidInput, "planar point sets must have 1 to 16 points");
        vector<Mask> convex;
        for (Mask s = 0; s <= full_mask(n); ++s)
            if (trace_hull(points, s) == s)
                convex.push_back(s);
        return make_biconvexity(n, convex, convex);
    }

    auto planar_hull_structure(const vector<Point> & points, int k_max) -> FiniteStructure
    {
        int n = static_cast<int>(points.size());
        FiniteStructure x;
        x.signature = hull_signature(k_max);
        x.size = n;
        x.relations.resize(k_max);
        for (int k = 1; k <= k_max; ++k) {
            Tuple ys(k, 0);
            for (;;) {
                Mask s = 0;
                for (int y : ys)
                    s |= bit(y);
                Mask hull = trace_hull(points, s);
                for (int p = 0; p < n; ++p)
                    if (has_bit(hull, p)) {
                        Tuple t{p};
                        t.insert(t.end(), ys.begin(), ys.end());
                        x.relations[k - 1].push_back(std::move(t));
                    }
                int i = k - 1;
                while (i >= 0 && ++ys[i] == n)
                    ys[i--] = 0;
                if (i < 0)
                    break;
            }
        }
        x.normalise();
        return x;
    }

    auto planar_nonnormal_points() -> vector<Point>
    {
        return {{0, 0}, {4, 0}, {2, 4}, {1, 1}, {3, 1}};
    }

    auto gen_separated(const TwoTemplate & d, int nmax, std::uint64_t seed) -> FiniteStructure
    {
        if (nmax < 1)
            throw Error(ErrorKind::InvalidInput, "structures need at least one point");
        Rng rng(seed);
        auto & sig = d.structure.signature;

        for (;;) {
            int k = rng.between(1, 4);
            Mask all = full_mask(k);
            std::set<Mask> points;
            int want = rng.between(1, nmax);
            for (int i = 0; i < want; ++i)
                points.insert(rng.next() & all);
            for (int c : d.structure.constants)
                points.insert(c ? all : 0);

            // close under every operation, pointwise
            bool grew = true;
            while (grew && static_cast<int>(points.size()) <= nmax) {
                grew = false;
                vector<Mask> current(points.begin(), points.end());
                for (std::size_t r = 0; r < sig.symbols.size(); ++r) {
                    if (! sig.symbols[r].functional)
                        continue;
                    int a = sig.symbols[r].arity - 1;
                    vector<int> value(std::size_t{1} << a);
                    for (auto & t : d.structure.relations[r]) {
                        unsigned p = 0;
                        for (int i = 0; i < a; ++i)
                            p |= static_cast<unsigned>(t[i]) << i;
                        value[p] = t[a];
                    }
                    Tuple args(a, 0);
                    do {
                        Mask out = 0;
                        for (int bitpos = 0; bitpos < k; ++bitpos) {
                            unsigned p = 0;
                            for (int i = 0; i < a; ++i)
                                p |= static_cast<unsigned>(has_bit(current[args[i]], bitpos)) << i;
                            if (value[p])
                                out |= bit(bitpos);
                        }
                        grew = points.insert(out).second || grew;
                        int i = a - 1;
                        while (i >= 0 && ++args[i] == static_cast<int>(current.size()))
                            args[i--] = 0;
                        if (i < 0)
                            break;
                    } while (a > 0);
                }
            }
            if (static_cast<int>(points.size()) > nmax)
                continue;

            SetFamily family{k, vector<Mask>(points.begin(), points.end()), false, false};
            auto x = induced_structure(family, d);
            vector<int> perm(x.size);
            for (int i = 0; i < x.size; ++i)
                perm[i] = i;
            rng.shuffle(perm);
            return relabel(x, perm);
        }
    }

    auto random_structure(const Signature & signature, int n, std::uint64_t seed) -> FiniteStructure
    {
        if (n < 1)
            throw Error(ErrorKind::InvalidInput, "structures need at least one point");
        Rng rng(seed);
        FiniteStructure x;
        x.signature = signature;
        x.size = n;
        x.relations.resize(signature.symbols.size());
        for (std::size_t r = 0; r < signature.symbols.size(); ++r) {
            auto & sym = signature.symbols[r];
            int k = sym.functional ? sym.arity - 1 : sym.arity;
            Tuple t(k, 0);
            for (;;) {
                if (sym.functional) {
                    auto full = t;
                    full.push_back(static_cast<int>(rng.below(n)));
                    x.relations[r].push_back(std::move(full));
                }
                else if (rng.chance(1, 3))
                    x.relations[r].push_back(t);
                int i = k - 1;
                while (i >= 0 && ++t[i] == n)
                    t[i--] = 0;
                if (i < 0)
                    break;
            }
        }
        for (std::size_t c = 0; c < signature.constants.size(); ++c)
            x.constants.push_back(static_cast<int>(rng.below(n)));
        x.normalise();
        return x;
    }

    auto relabel(const FiniteStructure & x, const vector<int> & perm) -> FiniteStructure
    {
        FiniteStructure y = x;
        for (auto & rel : y.relations)
            for (auto & t : rel)
                for (auto & v : t)
                    v = perm[v];
        for (auto & c : y.constants)
            c = perm[c];
        y.normalise();
        return y;
    }
}
