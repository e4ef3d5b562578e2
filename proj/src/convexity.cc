#include <duality/convexity.hh>
#include <duality/dual.hh>
#include <duality/errors.hh>
#include <duality/parallel.hh>
#include <duality/rng.hh>

#include <algorithm>
#include <array>
#include <set>

using std::optional;
using std::vector;

namespace duality
{
    namespace
    {
        auto close_family(int universe, vector<Mask> sets) -> vector<Mask>
        {
            std::set<Mask> seen(sets.begin(), sets.end());
            seen.insert(full_mask(universe));
            vector<Mask> queue(seen.begin(), seen.end());
            for (std::size_t i = 0; i < queue.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (seen.insert(queue[i] & queue[j]).second)
                        queue.push_back(queue[i] & queue[j]);
            return {seen.begin(), seen.end()};
        }

        auto members(const BiConvexity & space, Side side) -> const vector<Mask> &
        {
            return side == Side::L ? space.lower : space.upper;
        }

        auto require_normal_cap(const BiConvexity & space, int cap, const char * what) -> void
        {
            if (space.universe > cap)
                throw Error(ErrorKind::CapExceeded, std::string(what) + " over " + std::to_string(space.universe) + " points exceeds the cap");
        }
    }

    auto make_biconvexity(int universe, vector<Mask> lower, vector<Mask> upper, optional<int> zero, optional<int> one) -> BiConvexity
    {
        if (universe <= 0 || universe > mask_bits)
            throw Error(ErrorKind::InvalidInput, "bi-convexity universe must lie in [1, 64]");
        for (auto m : lower)
            if (! is_subset(m, full_mask(universe)))
                throw Error(ErrorKind::InvalidInput, "convex set exceeds the universe");
        for (auto m : upper)
            if (! is_subset(m, full_mask(universe)))
                throw Error(ErrorKind::InvalidInput, "convex set exceeds the universe");
        for (auto c : {zero, one})
            if (c && (*c < 0 || *c >= universe))
                throw Error(ErrorKind::InvalidInput, "constant outside the universe");
        return {universe, close_family(universe, std::move(lower)), close_family(universe, std::move(upper)), zero, one};
    }

    auto validate(const BiConvexity & space) -> ValidationReport
    {
        ValidationReport report;
        for (auto side : {Side::L, Side::U}) {
            auto & fam = members(space, side);
            const char * name = side == Side::L ? "L" : "U";
            std::set<Mask> s(fam.begin(), fam.end());
            if (! s.count(full_mask(space.universe)))
                report.violations.push_back(std::string(name) + " lacks the full set");
            for (auto a : fam)
                for (auto b : fam)
                    if (! s.count(a & b)) {
                        report.violations.push_back(std::string(name) + " is not closed under intersection");
                        goto next_side;
                    }
        next_side:;
        }
        return report;
    }

    auto conv_hull(const BiConvexity & space, Side side, Mask a) -> Mask
    {
        Mask m = full_mask(space.universe);
        for (auto h : members(space, side))
            if (is_subset(a, h))
                m &= h;
        return m;
    }

    auto hull_table(const BiConvexity & space, Side side, const Caps & caps) -> vector<Mask>
    {
        if (space.universe > caps.powerset)
            throw Error(ErrorKind::CapExceeded, "hull table over " + std::to_string(space.universe) + " points exceeds the powerset cap");
        vector<Mask> table(std::size_t{1} << space.universe);
        for (Mask a = 0; a < table.size(); ++a)
            table[a] = conv_hull(space, side, a);
        return table;
    }

    auto check_normal(const BiConvexity & space, const Caps & caps) -> NormalReport
    {
        require_normal_cap(space, caps.normal, "normality check");
        NormalReport report;
        int n = space.universe;
        Mask all = full_mask(n);

        for (int x = 0; x < n && ! report.n1_witness; ++x)
            for (int y = x + 1; y < n; ++y)
                if ((conv_hull(space, Side::L, bit(x)) & conv_hull(space, Side::U, bit(y)))
                    && (conv_hull(space, Side::U, bit(x)) & conv_hull(space, Side::L, bit(y)))) {
                    report.n1_witness = {x, y};
                    break;
                }

        std::set<Mask> lower(space.lower.begin(), space.lower.end());
        vector<Mask> splitting;
        for (auto h : space.upper)
            if (lower.count(all & ~h))
                splitting.push_back(h);

        for (auto a : space.lower)
            for (auto b : space.upper) {
                if (a & b)
                    continue;
                bool found = std::any_of(splitting.begin(), splitting.end(), [&](Mask h) { return is_subset(b, h) && ! (a & h); });
                if (! found) {
                    std::array<Mask, 2> w{a, b};
                    if (! report.n2_witness || witness_less(w, std::array<Mask, 2>{report.n2_witness->first, report.n2_witness->second}))
                        report.n2_witness = std::pair{a, b};
                }
            }

        report.pass = ! report.n1_witness && ! report.n2_witness;
        return report;
    }

    auto bea_from_biconvexity(const BiConvexity & space, bool force, const Caps & caps) -> BeaOracle
    {
        require_normal_cap(space, caps.normal, "bi-convexity oracle");
        if (! force) {
            auto normal = check_normal(space, caps);
            if (! normal.pass)
                throw Error(ErrorKind::NotNormal, normal.n1_witness ? "N1 fails" : "N2 fails");
        }

        auto lower = hull_table(space, Side::L, caps);
        auto upper = hull_table(space, Side::U, caps);
        vector<SubsetPair> pairs;
        for (Mask a = 0; a < upper.size(); ++a)
            for (Mask b = 0; b < lower.size(); ++b)
                if (upper[a] & lower[b])
                    pairs.emplace_back(a, b);
        return BeaOracle::table(space.universe, std::move(pairs), space.zero, space.one);
    }

    auto biconvexity_from_bea(const BeaOracle & oracle, const Caps & caps) -> BiConvexity
    {
        int n = oracle.universe();
        if (n > caps.normal)
            throw Error(ErrorKind::CapExceeded, "bi-convexity reconstruction over " + std::to_string(n) + " points exceeds the cap");
        require_axioms(oracle, {Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3, Axiom::i4}, caps);

        std::size_t count = std::size_t{1} << n;
        vector<Mask> lower(count, 0), upper(count, 0);
        for (Mask a = 0; a < count; ++a)
            for (int p = 0; p < n; ++p) {
                if (oracle.query(bit(p), a))
                    lower[a] |= bit(p);
                if (oracle.query(a, bit(p)))
                    upper[a] |= bit(p);
            }

        auto space = make_biconvexity(n, lower, upper, oracle.zero(), oracle.one());
        for (Mask a = 0; a < count; ++a)
            if (conv_hull(space, Side::L, a) != lower[a] || conv_hull(space, Side::U, a) != upper[a])
                throw Error(ErrorKind::RoundTripFailure, "hull of mask " + std::to_string(a) + " is not a closure");
        for (Mask a = 0; a < count; ++a)
            for (Mask b = 0; b < count; ++b)
                if (oracle.query(a, b) != static_cast<bool>(upper[a] & lower[b]))
                    throw Error(ErrorKind::RoundTripFailure, "oracle and hulls disagree on masks " + std::to_string(a) + ", " + std::to_string(b));
        return space;
    }

    auto check_pasch_convex(const BiConvexity & space, const Caps & caps) -> PaschReport
    {
        require_normal_cap(space, caps.normal, "Pasch sweep");
        PaschReport report;
        int n = space.universe;
        auto lower = hull_table(space, Side::L, caps);
        auto upper = hull_table(space, Side::U, caps);

        for (Mask a0 = 0; a0 < upper.size(); ++a0)
            for (int p = 0; p < n; ++p) {
                Mask qs = upper[a0 | bit(p)];
                for (Mask b1 = 0; b1 < lower.size(); ++b1) {
                    Mask rs = lower[b1 | bit(p)];
                    for_each_bit(qs, [&](int q) {
                        for_each_bit(rs, [&](int r) {
                            if (upper[a0 | bit(r)] & lower[bit(q) | b1])
                                return;
                            vector<Mask> w{a0, b1, bit(p), bit(q), bit(r)};
                            if (report.witness.empty() || witness_less(w, report.witness))
                                report.witness = std::move(w);
                        });
                    });
                }
            }
        report.pass = report.witness.empty();

        auto oracle = bea_from_biconvexity(space, true, caps);
        report.i3 = check_axiom(oracle, Axiom::i3, caps);
        report.i4 = check_axiom(oracle, Axiom::i4, caps);
        bool premises = check_axiom(oracle, Axiom::i0, caps).pass && check_axiom(oracle, Axiom::i1, caps).pass
            && check_axiom(oracle, Axiom::i2, caps).pass && report.i4.pass && report.pass;
        report.implication_consistent = ! premises || report.i3.pass;
        return report;
    }

    auto check_complemented(const BeaOracle & oracle, const Caps & caps, int samples, std::uint64_t seed) -> ComplementReport
    {
        ComplementReport report;
        int n = oracle.universe();
        for (int a = 0; a < n; ++a)
            report.complements.push_back(complement(oracle, a));

        for (int a = 0; a < n; ++a) {
            auto & c = report.complements[a];
            if (! c) {
                report.missing = a;
                break;
            }
            if (report.complements[*c] != a && ! report.not_involutive)
                report.not_involutive = a;
        }
        if (report.missing || report.not_involutive) {
            report.pass = false;
            return report;
        }

        auto negate = [&](Mask m) {
            Mask r = 0;
            for_each_bit(m, [&](int i) { r |= bit(*report.complements[i]); });
            return r;
        };
        auto fails = [&](Mask s, Mask t) { return oracle.query(s, t) != oracle.query(negate(t), negate(s)); };

        if (n <= caps.normal) {
            for (Mask s = 0; s <= full_mask(n) && ! report.ae_witness; ++s)
                for (Mask t = 0; t <= full_mask(n); ++t) {
                    ++report.ae_checked;
                    if (fails(s, t)) {
                        report.ae_witness = SubsetPair{s, t};
                        break;
                    }
                }
        }
        else {
            report.ae_exhaustive = false;
            Rng rng(seed);
            for (int i = 0; i < samples && ! report.ae_witness; ++i) {
                Mask s = rng.next() & full_mask(n), t = rng.next() & full_mask(n);
                ++report.ae_checked;
                if (fails(s, t))
                    report.ae_witness = SubsetPair{s, t};
            }
        }
        report.pass = ! report.ae_witness;
        return report;
    }

    auto check_complemented(const BiConvexity & space, const Caps & caps, int samples, std::uint64_t seed) -> ComplementReport
    {
        return check_complemented(bea_from_biconvexity(space, false, caps), caps, samples, seed);
    }

    auto verify_convexity_duality(const vector<BiConvexity> & corpus, ConvexityVariant variant, const Caps & caps, unsigned threads) -> ConvexityReport
    {
        ConvexityReport report;
        report.cases = parallel_map<ConvexityCase>(corpus.size(), threads, [&](std::size_t i) {
            ConvexityCase c;
            auto deadline = Deadline::from_caps(caps);
            auto oracle = bea_from_biconvexity(corpus[i], false, caps);
            auto star = ultimate_dual(oracle, caps, deadline);
            c.dual_size = star.carrier.size();
            c.dual_i4 = check_axiom(star.oracle, Axiom::i4, caps).pass;
            c.dual_constants = star.missing_constants.empty()
                && (! star.oracle.zero() || check_axiom(star.oracle, Axiom::c0, caps).pass)
                && (! star.oracle.one() || check_axiom(star.oracle, Axiom::c1, caps).pass);
            c.bidual_surjective = ultimate_reflexivity(oracle, caps, deadline).reflexive();

            if (variant == ConvexityVariant::Symmetric) {
                if (! check_axiom(oracle, Axiom::i5, caps).pass)
                    throw Error(ErrorKind::PreconditionViolated, "instance " + std::to_string(i) + " is not symmetric");
                c.complemented = star.oracle.zero() && star.oracle.one() && check_complemented(star.oracle, caps, 4096, i + 1).pass;
                auto again = ultimate_dual(star.oracle, caps, deadline);
                c.dual_of_dual_symmetric = check_axiom(again.oracle, Axiom::i5, caps).pass;
            }

            c.pass = c.dual_i4 && c.dual_constants && c.bidual_surjective && c.complemented && c.dual_of_dual_symmetric;
            if (! c.pass)
                c.detail = std::string(c.dual_i4 ? "" : "dual fails i4; ") + (c.dual_constants ? "" : "dual constants missing; ")
                    + (c.bidual_surjective ? "" : "bidual not reflexive; ") + (c.complemented ? "" : "dual not complemented; ")
                    + (c.dual_of_dual_symmetric ? "" : "second dual not symmetric; ");
            return c;
        });
        report.pass = std::all_of(report.cases.begin(), report.cases.end(), [](auto & c) { return c.pass; });
        return report;
    }
}
