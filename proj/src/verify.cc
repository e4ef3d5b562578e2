#include <duality/bea.hh>
#include <duality/catalog.hh>
#include <duality/convexity.hh>
#include <duality/dual.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/hom.hh>
#include <duality/parallel.hh>
#include <duality/rng.hh>
#include <duality/verify.hh>

#include <algorithm>
#include <functional>
#include <map>

using std::string;
using std::vector;

namespace duality
{
    auto SuiteReport::failures() const -> int
    {
        return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](auto & c) { return ! c.pass && ! c.timeout; }));
    }

    auto SuiteReport::add(CaseResult c) -> void
    {
        if (c.timeout)
            ++timeouts;
        else if (! c.pass)
            pass = false;
        cases.push_back(std::move(c));
    }

    auto SuiteReport::merge(SuiteReport other) -> void
    {
        for (auto & c : other.cases)
            add(std::move(c));
        for (auto & n : other.notes)
            notes.push_back(std::move(n));
    }

    namespace
    {
        auto pick(int value, int fallback) -> int
        {
            return value > 0 ? value : fallback;
        }

        /// Runs one case; engine errors that indicate a failed check become a
        /// failing case, timeouts a timed-out case, everything else propagates.
        auto guarded(const string & name, const std::function<CaseResult()> & body) -> CaseResult
        {
            try {
                auto c = body();
                c.name = name;
                return c;
            }
            catch (const Error & e) {
                CaseResult c;
                c.name = name;
                switch (e.kind()) {
                case ErrorKind::Timeout:
                    c.timeout = true;
                    c.detail = e.what();
                    return c;
                case ErrorKind::CapExceeded:
                case ErrorKind::InvalidInput:
                    throw;
                default:
                    c.pass = false;
                    c.detail = string(duality::to_string(e.kind())) + ": " + e.what();
                    return c;
                }
            }
        }

        auto sized(const EvalReport & r, bool pass, string detail = {}) -> CaseResult
        {
            CaseResult c;
            c.pass = pass;
            c.detail = std::move(detail);
            c.size_x = r.size_x;
            c.size_xstar = r.size_xstar;
            c.size_xbidual = r.size_xbidual;
            return c;
        }

        auto eval_detail(const EvalReport & r) -> string
        {
            if (r.reflexive())
                return {};
            string d;
            if (! r.injective)
                d += "evaluation not injective; ";
            if (! r.embedding)
                d += "evaluation not an embedding; ";
            if (! r.surjective)
                d += std::to_string(r.unrepresented.size()) + " unrepresented members of X**; ";
            return d;
        }

        auto brute_poset_count(int n) -> long
        {
            long count = 0;
            int bits = n * n;
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << bits); ++r) {
                auto le = [&](int a, int b) { return (r >> (a * n + b)) & 1; };
                bool ok = true;
                for (int a = 0; a < n && ok; ++a) {
                    ok = le(a, a);
                    for (int b = 0; b < n && ok; ++b) {
                        if (a != b && le(a, b) && le(b, a))
                            ok = false;
                        for (int c = 0; c < n && ok; ++c)
                            if (le(a, b) && le(b, c) && ! le(a, c))
                                ok = false;
                    }
                }
                count += ok;
            }
            return count;
        }

        auto symbol_tuples(const FiniteStructure & x, const string & name) -> const vector<Tuple> &
        {
            return x.relation(name);
        }

        /// up[a] = {b : a ≤ b} for a meet-semilattice.
        auto meet_up_sets(const FiniteStructure & x) -> vector<Mask>
        {
            vector<Mask> up(x.size, 0);
            for (auto & t : symbol_tuples(x, "meet"))
                if (t[2] == t[0])
                    up[t[0]] |= bit(t[1]);
            return up;
        }

        auto meet_table(const FiniteStructure & x) -> vector<vector<int>>
        {
            vector<vector<int>> m(x.size, vector<int>(x.size, 0));
            for (auto & t : symbol_tuples(x, "meet"))
                m[t[0]][t[1]] = t[2];
            return m;
        }

        auto with_bottom(const FiniteStructure & x) -> FiniteStructure
        {
            auto up = meet_up_sets(x);
            auto y = x;
            y.signature.constants = {"zero"};
            y.constants.clear();
            for (int a = 0; a < x.size; ++a)
                if (up[a] == full_mask(x.size))
                    y.constants.push_back(a);
            return y;
        }

        auto sorted_masks(vector<Mask> v) -> vector<Mask>
        {
            std::sort(v.begin(), v.end());
            return v;
        }

        auto names_with_hull() -> vector<TwoTemplate>
        {
            vector<TwoTemplate> result;
            for (auto & n : catalog_names())
                result.push_back(catalog_template(n));
            result.push_back(convexity_template(2));
            return result;
        }
    }

    auto suite_names() -> vector<string>
    {
        return {"priestley", "stone", "hms", "biconvex", "pasch", "betweenness", "ultimate", "equivalence", "enumeration"};
    }

    auto run_suite(std::string_view name, const SuiteOptions & options) -> SuiteReport
    {
        static const std::map<string, std::function<SuiteReport(const SuiteOptions &)>, std::less<>> suites{
            {"priestley", verify_priestley}, {"stone", verify_stone}, {"hms", verify_hms}, {"biconvex", verify_biconvex},
            {"pasch", verify_pasch}, {"betweenness", verify_betweenness}, {"ultimate", verify_ultimate},
            {"equivalence", verify_equivalence}, {"enumeration", verify_enumeration}};
        auto it = suites.find(name);
        if (it == suites.end())
            throw Error(ErrorKind::InvalidInput, "unknown suite " + string(name));
        return it->second(options);
    }

    auto verify_priestley(const SuiteOptions & options) -> SuiteReport
    {
        int max = pick(options.max_size, 4);
        auto order = catalog_template("order");
        auto lattice = catalog_template("bounded_lattice");
        auto caps = options.caps;
        // the lattice direction starts from down-set lattices with up to 2^n points
        auto lattice_caps = caps;
        lattice_caps.bidual_source = std::max(caps.bidual_source, 1 << std::min(max, 6));

        SuiteReport report;
        report.suite = "priestley";
        for (int n = 1; n <= max; ++n) {
            auto posets = gen_posets_exhaustive(n, caps);
            if (n <= 4) {
                CaseResult c;
                c.name = "poset count n=" + std::to_string(n);
                long brute = brute_poset_count(n);
                c.pass = brute == static_cast<long>(posets.size());
                c.detail = "generator " + std::to_string(posets.size()) + ", relation filter " + std::to_string(brute);
                report.add(c);
            }

            auto results = parallel_map<vector<CaseResult>>(posets.size(), options.threads, [&](std::size_t i) {
                auto & p = posets[i];
                string tag = "n=" + std::to_string(n) + " #" + std::to_string(i);
                vector<CaseResult> out;

                out.push_back(guarded("poset " + tag, [&] {
                    auto deadline = Deadline::from_caps(caps);
                    auto d = dual(p, order, lattice, caps, deadline);
                    auto & sets = d.carrier.homs.sets;
                    Mask all = full_mask(n);
                    bool closed = std::binary_search(sets.begin(), sets.end(), Mask{0}) && std::binary_search(sets.begin(), sets.end(), all);
                    for (auto a : sets)
                        for (auto b : sets)
                            closed = closed && std::binary_search(sets.begin(), sets.end(), a & b)
                                && std::binary_search(sets.begin(), sets.end(), a | b);
                    auto r = bidual_and_evaluate(p, order, lattice, caps, deadline);
                    return sized(r, closed && r.reflexive(), (closed ? "" : "dual not a bounded sublattice; ") + eval_detail(r));
                }));

                out.push_back(guarded("lattice " + tag, [&] {
                    auto deadline = Deadline::from_caps(lattice_caps);
                    auto l = downset_lattice(p);
                    auto d = dual(l, lattice, order, lattice_caps, deadline);
                    auto r = bidual_and_evaluate(l, lattice, order, lattice_caps, deadline);
                    string detail = eval_detail(r);

                    // order condition on the prime-filter poset
                    auto & star = d.induced;
                    int m = star.size;
                    auto le = [&](int a, int b) { return star.has_tuple(0, {a, b}); };
                    auto up_sets = enumerate_homs(star, order, lattice_caps, HomMethod::Backtracking, deadline);
                    auto oracle = bea_from_homs(up_sets.homs);
                    bool leq_condition = true;
                    for (Mask s = 0; s <= full_mask(m) && leq_condition; ++s)
                        for (Mask t = 0; t <= full_mask(m) && leq_condition; ++t) {
                            bool expect = false;
                            for_each_bit(s, [&](int a) { for_each_bit(t, [&](int b) { expect = expect || le(a, b); }); });
                            leq_condition = oracle.query(s, t) == expect;
                        }
                    if (! leq_condition)
                        detail += "dual violates condition (<=); ";

                    // nesting of prime filters
                    auto & filters = d.carrier.homs.sets;
                    bool nesting = true;
                    for (Mask s = 0; s <= full_mask(m) && nesting; ++s)
                        for (Mask t = 0; t <= full_mask(m) && nesting; ++t) {
                            Mask meet = full_mask(l.size), join = 0;
                            for_each_bit(s, [&](int a) { meet &= filters[a]; });
                            for_each_bit(t, [&](int b) { join |= filters[b]; });
                            if (! is_subset(meet, join))
                                continue;
                            bool nested = false;
                            for_each_bit(s, [&](int a) { for_each_bit(t, [&](int b) { nested = nested || is_subset(filters[a], filters[b]); }); });
                            nesting = nested;
                        }
                    if (! nesting)
                        detail += "prime filters without a nesting witness; ";

                    bool recovered = m == n;
                    if (! recovered)
                        detail += "prime filter count differs from the source poset; ";
                    return sized(r, r.reflexive() && leq_condition && nesting && recovered, detail);
                }));
                return out;
            });
            for (auto & v : results)
                for (auto & c : v)
                    report.add(std::move(c));
        }
        return report;
    }

    auto verify_stone(const SuiteOptions & options) -> SuiteReport
    {
        int max = pick(options.max_size, 4);
        auto pure = catalog_template("pure_set");
        auto boolean = catalog_template("boolean_algebra");
        auto order = catalog_template("order");
        auto lattice = catalog_template("bounded_lattice");
        auto caps = options.caps;
        auto lattice_caps = caps;
        lattice_caps.bidual_source = std::max(caps.bidual_source, 1 << std::min(max, 6));

        SuiteReport report;
        report.suite = "stone";
        for (int n = 1; n <= max; ++n)
            report.add(guarded("antichain n=" + std::to_string(n), [&] {
                auto x = bare_set(n);
                auto deadline = Deadline::from_caps(caps);
                auto d = dual(x, pure, boolean, caps, deadline);
                auto & sets = d.carrier.homs.sets;
                string detail;
                bool size_ok = static_cast<int>(sets.size()) == (1 << n);
                if (! size_ok)
                    detail += "dual has " + std::to_string(sets.size()) + " elements; ";
                bool neg_ok = true;
                for (auto & t : d.induced.relation("neg"))
                    neg_ok = neg_ok && sets[t[1]] == (full_mask(n) & ~sets[t[0]]);
                if (! neg_ok)
                    detail += "negation is not set complement; ";
                auto r = bidual_and_evaluate(x, pure, boolean, caps, deadline);
                detail += eval_detail(r);
                return sized(r, size_ok && neg_ok && r.reflexive(), detail);
            }));

        int boolean_count = 0, other_count = 0;
        for (int n = 1; n <= max; ++n)
            for (auto & p : gen_posets_exhaustive(n, caps)) {
                auto c = guarded("classification n=" + std::to_string(n), [&] {
                    auto l = downset_lattice(p);
                    auto d = dual(l, lattice, order, lattice_caps, Deadline::from_caps(lattice_caps));
                    bool discrete = true;
                    for (auto & t : d.induced.relation("le"))
                        discrete = discrete && t[0] == t[1];
                    bool is_boolean = is_complemented_lattice(l);
                    (is_boolean ? boolean_count : other_count)++;
                    CaseResult c;
                    c.pass = is_boolean == discrete;
                    c.size_x = l.size;
                    c.size_xstar = d.induced.size;
                    if (! c.pass)
                        c.detail = is_boolean ? "Boolean lattice with a non-discrete dual" : "non-Boolean lattice with a discrete dual";
                    return c;
                });
                report.add(c);
            }
        report.notes.push_back("classified " + std::to_string(boolean_count) + " Boolean and " + std::to_string(other_count) + " non-Boolean down-set lattices");
        return report;
    }

    auto verify_hms(const SuiteOptions & options) -> SuiteReport
    {
        int max = pick(options.max_size, 4);
        int samples = options.samples < 0 ? 0 : pick(options.samples, 200);
        auto sl = catalog_template("semilattice");
        auto sl0 = catalog_template("semilattice0");
        auto sl01 = catalog_template("semilattice01");
        auto caps = options.caps;

        vector<std::pair<string, FiniteStructure>> corpus;
        for (int n = 1; n <= max; ++n) {
            int i = 0;
            for (auto & x : gen_semilattices_exhaustive(n, caps))
                corpus.emplace_back("exhaustive n=" + std::to_string(n) + " #" + std::to_string(i++), std::move(x));
        }
        Rng rng(options.seed);
        for (int i = 0; i < samples; ++i) {
            int n = rng.between(1, 6);
            auto x = gen_semilattices_random(n, 1, rng.next());
            corpus.emplace_back("random n=" + std::to_string(n) + " #" + std::to_string(i), std::move(x.front()));
        }

        auto results = parallel_map<vector<CaseResult>>(corpus.size(), options.threads, [&](std::size_t i) {
            auto & [tag, x] = corpus[i];
            vector<CaseResult> out;
            out.push_back(guarded(tag, [&] {
                auto deadline = Deadline::from_caps(caps);
                auto up = meet_up_sets(x);
                auto meet = meet_table(x);
                auto homs = enumerate_homs(x, sl, caps, HomMethod::Backtracking, deadline);
                string detail;

                bool filters = true;
                for (auto h : homs.homs.sets) {
                    bool principal = h == 0;
                    for_each_bit(h, [&](int p) { principal = principal || up[p] == h; });
                    filters = filters && principal;
                }
                if (! filters)
                    detail += "hom preimage that is not a principal filter; ";

                // the (H)-induced ⋈ against ⋀s ≤ q for some q ∈ t
                auto oracle = bea_from_homs(homs.homs);
                bool filter_form = true;
                for (Mask s = 0; s <= full_mask(x.size) && filter_form; ++s) {
                    int m = -1;
                    for_each_bit(s, [&](int a) { m = m < 0 ? a : meet[m][a]; });
                    for (Mask t = 0; t <= full_mask(x.size) && filter_form; ++t)
                        filter_form = oracle.query(s, t) == (m >= 0 && (up[m] & t) != 0);
                }
                if (! filter_form)
                    detail += "induced relation differs from the filter form; ";

                auto r = bidual_and_evaluate(x, sl, sl01, caps, deadline);
                detail += eval_detail(r);
                return sized(r, filters && filter_form && r.reflexive(), detail);
            }));
            out.push_back(guarded(tag + " with 0", [&] {
                auto x0 = with_bottom(x);
                auto r = bidual_and_evaluate(x0, sl0, sl0, caps, Deadline::from_caps(caps));
                return sized(r, r.reflexive(), eval_detail(r));
            }));
            return out;
        });

        SuiteReport report;
        report.suite = "hms";
        for (auto & v : results)
            for (auto & c : v)
                report.add(std::move(c));
        return report;
    }

    auto verify_biconvex(const SuiteOptions & options) -> SuiteReport
    {
        int max = pick(options.max_size, 6);
        int samples = pick(options.samples, 8);
        auto caps = options.caps;
        SuiteReport report;
        report.suite = "biconvex";

        auto round_trip = [&](const string & tag, const BiConvexity & space, bool symmetric) {
            return guarded(tag, [&] {
                CaseResult c;
                string detail;
                auto normal = check_normal(space, caps);
                if (! normal.pass)
                    detail += "generated space is not normal; ";
                auto oracle = bea_from_biconvexity(space, true, caps);
                for (auto a : {Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3, Axiom::i4})
                    if (! check_axiom(oracle, a, caps).pass)
                        detail += "induced relation fails " + string(duality::to_string(a)) + "; ";
                auto back = biconvexity_from_bea(oracle, caps);
                if (sorted_masks(back.lower) != sorted_masks(space.lower) || sorted_masks(back.upper) != sorted_masks(space.upper))
                    detail += "round trip changed the space; ";
                if (symmetric) {
                    if (! check_axiom(oracle, Axiom::i5, caps).pass)
                        detail += "induced relation not symmetric; ";
                    auto halves = all_halfspaces(oracle, caps);
                    for (auto h : halves.sets)
                        if (! is_halfspace(oracle, full_mask(space.universe) & ~h)) {
                            detail += "halfspace with a non-halfspace complement; ";
                            break;
                        }
                }
                c.pass = detail.empty();
                c.detail = detail;
                c.size_x = space.universe;
                return c;
            });
        };

        for (bool symmetric : {false, true}) {
            vector<BiConvexity> corpus;
            vector<string> tags;
            string kind = symmetric ? "symmetric" : "plain";
            for (int n = 1; n <= max; ++n)
                for (int i = 0; i < samples; ++i) {
                    corpus.push_back(random_normal_biconvexity(n, options.seed * 7919 + n * 131 + i * 2 + symmetric, symmetric, caps));
                    tags.push_back(kind + " n=" + std::to_string(n) + " #" + std::to_string(i));
                }
            if (! symmetric)
                for (int n = 1; n <= std::min(max, 3); ++n) {
                    int i = 0;
                    for (auto & p : gen_posets_exhaustive(n, caps)) {
                        corpus.push_back(poset_biconvexity(p));
                        tags.push_back("poset n=" + std::to_string(n) + " #" + std::to_string(i++));
                    }
                }

            auto trips = parallel_map<CaseResult>(corpus.size(), options.threads,
                [&](std::size_t i) { return round_trip("round trip " + tags[i], corpus[i], symmetric); });
            for (auto & c : trips)
                report.add(std::move(c));

            auto duality = verify_convexity_duality(corpus, symmetric ? ConvexityVariant::Symmetric : ConvexityVariant::Plain, caps, options.threads);
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                auto & k = duality.cases[i];
                CaseResult c;
                c.name = "duality " + tags[i];
                c.pass = k.pass;
                c.detail = k.detail;
                c.size_x = corpus[i].universe;
                c.size_xstar = k.dual_size;
                report.add(c);
            }
        }

        report.add(guarded("planar 5-point instance", [&] {
            auto space = planar_trace_convexity(planar_nonnormal_points());
            auto normal = check_normal(space, caps);
            auto pasch = check_pasch_convex(space, caps);
            CaseResult c;
            c.size_x = space.universe;
            c.pass = ! normal.pass && ! pasch.pass;
            c.detail = string(normal.pass ? "normal; " : "not normal; ") + (pasch.pass ? "Pasch form holds" : "Pasch form fails");
            if (! pasch.pass) {
                c.detail += " at a0=" + std::to_string(pasch.witness[0]) + " b1=" + std::to_string(pasch.witness[1]) + " p=" + std::to_string(pasch.witness[2])
                    + " q=" + std::to_string(pasch.witness[3]) + " r=" + std::to_string(pasch.witness[4]);
            }
            return c;
        }));
        return report;
    }

    namespace
    {
        auto minimal_pairs(const vector<SubsetPair> & pairs) -> vector<SubsetPair>
        {
            vector<SubsetPair> result;
            for (auto & p : pairs) {
                bool minimal = true;
                for (auto & q : pairs)
                    if (q != p && is_subset(q.first, p.first) && is_subset(q.second, p.second)) {
                        minimal = false;
                        break;
                    }
                if (minimal)
                    result.push_back(p);
            }
            return result;
        }

        auto non_pairs(const BeaOracle & o) -> vector<SubsetPair>
        {
            vector<SubsetPair> result;
            Mask all = full_mask(o.universe());
            for (Mask a = 0; a <= all; ++a)
                for (Mask b = 0; b <= all; ++b)
                    if (! o.query(a, b))
                        result.emplace_back(a, b);
            return result;
        }

        auto bits_for(int n) -> int
        {
            int b = 0;
            while ((1 << b) < n)
                ++b;
            return std::max(b, 1);
        }
    }

    auto verify_pasch(const SuiteOptions & options) -> SuiteReport
    {
        int max = std::min(pick(options.max_size, 8), 10);
        int samples = pick(options.samples, 500);
        constexpr int pairs_per_instance = 50;
        constexpr int fixtures_wanted = 20;
        auto caps = options.caps;

        auto results = parallel_map<CaseResult>(samples, options.threads, [&](std::size_t i) {
            Rng rng(options.seed * 1000003 + i);
            int n = rng.between(1, max);
            int base = rng.between(bits_for(n), std::max(bits_for(n), 6));
            auto family = gen_family(base, n, rng.next());
            return guarded("family #" + std::to_string(i) + " n=" + std::to_string(n), [&] {
                auto oracle = family_bea(family);
                require_axioms(oracle, {Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3}, caps);
                auto candidates = non_pairs(oracle);
                rng.shuffle(candidates);
                if (candidates.size() > pairs_per_instance)
                    candidates.resize(pairs_per_instance);
                CaseResult c;
                c.size_x = n;
                for (auto & [a, b] : candidates) {
                    try {
                        Mask u = separate(oracle, a, b);
                        if (! is_subset(a, u) || (u & b) || ! is_halfspace(oracle, u)) {
                            c.pass = false;
                            c.detail = "bogus halfspace for a=" + std::to_string(a) + " b=" + std::to_string(b);
                            break;
                        }
                    }
                    catch (const PaschFailure & e) {
                        c.pass = false;
                        c.detail = "PaschFailure for a=" + std::to_string(a) + " b=" + std::to_string(b) + ": " + e.what();
                        break;
                    }
                }
                return c;
            });
        });

        SuiteReport report;
        report.suite = "pasch";
        for (auto & c : results)
            report.add(std::move(c));

        // corrupted tables: a minimal pair removed so that Pasch breaks
        int found = 0, failures_seen = 0, genuine = 0;
        for (std::uint64_t s = 0; found < fixtures_wanted && s < 5000; ++s) {
            Rng rng(options.seed * 31337 + s);
            int n = rng.between(3, 4);
            auto family = gen_family(3, n, rng.next());
            auto table = family_bea(family).to_table(caps.axioms_pairs);
            auto pairs = table.table_pairs();
            for (auto & victim : minimal_pairs(pairs)) {
                vector<SubsetPair> kept;
                for (auto & p : pairs)
                    if (p != victim)
                        kept.push_back(p);
                auto fixture = BeaOracle::table(n, kept);
                if (check_axiom(fixture, Axiom::i3, caps).pass)
                    continue;

                ++found;
                CaseResult c;
                c.name = "i3 fixture #" + std::to_string(found) + " n=" + std::to_string(n);
                c.size_x = n;
                bool prior = false;
                for (auto a : {Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3})
                    prior = prior || ! check_axiom(fixture, a, caps).pass;
                for (auto & [a, b] : non_pairs(fixture)) {
                    try {
                        Mask u = separate(fixture, a, b);
                        if (! is_subset(a, u) || (u & b) || ! is_halfspace(fixture, u)) {
                            c.pass = false;
                            c.detail = "bogus halfspace for a=" + std::to_string(a) + " b=" + std::to_string(b);
                        }
                        ++genuine;
                    }
                    catch (const PaschFailure &) {
                        ++failures_seen;
                    }
                }
                c.pass = c.pass && prior;
                if (! prior)
                    c.detail += "axiom check did not flag the fixture; ";
                report.add(c);
                break;
            }
        }
        if (found < fixtures_wanted) {
            CaseResult c;
            c.name = "i3 fixtures";
            c.pass = false;
            c.detail = "only " + std::to_string(found) + " fixtures could be built";
            report.add(c);
        }
        report.notes.push_back("i3 fixtures: " + std::to_string(failures_seen) + " PaschFailures, " + std::to_string(genuine) + " verified halfspaces");
        return report;
    }

    auto verify_betweenness(const SuiteOptions & options) -> SuiteReport
    {
        int max = pick(options.max_size, 5);
        int samples = pick(options.samples, 100);
        auto s0 = catalog_template("betweenness_s0");
        auto natural = catalog_template("natural_betweenness");
        auto caps = options.caps;
        SuiteReport report;
        report.suite = "betweenness";

        for (int n = 3; n <= std::max(max, 3); ++n)
            report.add(guarded("minimal n=" + std::to_string(n), [&] {
                auto sep = is_separated(minimal_betweenness(n), s0, caps);
                vector<Mask> expected{0, full_mask(n)};
                for (int i = 0; i < n; ++i)
                    expected.push_back(bit(i));
                std::sort(expected.begin(), expected.end());
                CaseResult c;
                c.size_x = n;
                c.size_xstar = sep.homs.homs.size();
                c.pass = sep.separated && sep.homs.homs.sets == expected && c.size_xstar == n + 2;
                c.detail = std::to_string(c.size_xstar) + " convex sets";
                return c;
            }));

        auto relation_has = [](const SeparationReport & r, const Tuple & t) {
            return std::any_of(r.relation_witnesses.begin(), r.relation_witnesses.end(), [&](auto & w) { return w.tuple == t; });
        };

        report.add(guarded("fixture: antisymmetry violated", [&] {
            auto b = minimal_betweenness(3);
            b.relations[0].push_back({0, 1, 0});
            b.relations[0].push_back({1, 0, 1});
            b.normalise();
            auto r = is_separated(b, s0, caps);
            CaseResult c;
            c.pass = ! r.separated && std::find(r.collisions.begin(), r.collisions.end(), std::pair{0, 1}) != r.collisions.end();
            c.detail = c.pass ? "points 0,1 not separated" : "expected collision (0,1)";
            return c;
        }));
        report.add(guarded("fixture: axiom (1) violated", [&] {
            auto b = minimal_betweenness(3);
            std::erase(b.relations[0], Tuple{0, 0, 1});
            auto r = is_separated(b, s0, caps);
            CaseResult c;
            c.pass = ! r.separated && relation_has(r, {0, 0, 1});
            c.detail = c.pass ? "(0,0,1) not reflected" : "expected unreflected (0,0,1)";
            return c;
        }));
        report.add(guarded("fixture: axiom (2) violated", [&] {
            // intervals of the chain 0<1<2<3, plus 3 between 0 and 1
            vector<Mask> intervals;
            for (int a = 0; a < 4; ++a)
                for (int z = a; z < 4; ++z)
                    intervals.push_back(full_mask(z + 1) & ~full_mask(a));
            auto b = betweenness_from_family(4, intervals);
            b.relations[0].push_back({0, 3, 1});
            b.normalise();
            auto r = is_separated(b, s0, caps);
            CaseResult c;
            c.pass = ! r.separated && relation_has(r, {0, 2, 1});
            c.detail = c.pass ? "(0,2,1) not reflected" : "expected unreflected (0,2,1)";
            return c;
        }));

        int gap = 0, natural_separated = 0, axioms_total = 0;
        Rng rng(options.seed);
        for (int i = 0; i < samples; ++i) {
            int n = rng.between(3, std::max(max, 3));
            auto b = gen_betweenness_random(n, 1 + i % 2, rng.next()).back();
            report.add(guarded("random #" + std::to_string(i) + " n=" + std::to_string(n), [&] {
                bool axioms = betweenness_axioms_hold(b);
                auto sep = is_separated(b, s0, caps);
                CaseResult c;
                c.size_x = n;
                c.size_xstar = sep.homs.homs.size();
                c.pass = axioms == sep.separated;
                if (! c.pass)
                    c.detail = axioms ? "axioms hold but not separated" : "separated but axioms fail";
                if (sep.separated) {
                    for (int x = 0; x < n; ++x)
                        for (int z = 0; z < n; ++z) {
                            Mask interval = 0;
                            for (int y = 0; y < n; ++y)
                                if (b.has_tuple(0, {x, y, z}))
                                    interval |= bit(y);
                            if (! is_homomorphism(b, s0, interval)) {
                                c.pass = false;
                                c.detail = "interval [" + std::to_string(x) + "," + std::to_string(z) + "] not convex";
                            }
                        }
                    ++axioms_total;
                    auto nat = is_separated(b, natural, caps);
                    natural_separated += nat.separated;
                    gap += nat.relation_witnesses.empty() && ! nat.injective;
                }
                return c;
            }));
        }
        report.notes.push_back("natural betweenness: " + std::to_string(natural_separated) + " of " + std::to_string(axioms_total)
            + " axiom-satisfying instances separated; " + std::to_string(gap) + " reflect relations but fail point separation");
        return report;
    }

    auto verify_ultimate(const SuiteOptions & options) -> SuiteReport
    {
        int max = pick(options.max_size, 5);
        int samples = pick(options.samples, 100);
        auto caps = options.caps;
        SuiteReport report;
        report.suite = "ultimate";

        std::uint64_t salt = 0;
        for (auto & d : names_with_hull()) {
            vector<FiniteStructure> instances;
            for (int i = 0; i < samples; ++i)
                instances.push_back(gen_separated(d, max, options.seed * 65537 + salt++));
            auto partner = ultimate_partner(d);
            auto pair = check_semi_dual(d, partner, instances, caps, options.threads);
            CaseResult c;
            c.name = d.name + " vs " + partner.name();
            c.pass = pair.pass;
            c.timeout = ! pair.pass ? false : pair.timeouts > 0 && pair.timeouts == static_cast<int>(pair.cases.size());
            int worst = 0, failed = 0;
            for (auto & k : pair.cases) {
                worst = std::max(worst, k.eval.size_xstar);
                if (! k.timeout && (! k.s1 || ! k.s2)) {
                    ++failed;
                    if (c.detail.empty())
                        c.detail = "instance " + std::to_string(k.index) + ": " + k.detail;
                }
            }
            c.size_xstar = worst;
            report.timeouts += pair.timeouts;
            if (failed)
                c.detail = std::to_string(failed) + " failing instances; first " + c.detail;
            else
                c.detail = std::to_string(instances.size()) + " instances, " + std::to_string(pair.timeouts) + " timeouts, max |X*| " + std::to_string(worst);
            report.add(c);
        }

        Rng rng(options.seed);
        for (int i = 0; i < samples / 2; ++i) {
            int n = rng.between(1, std::min(max + 1, 6));
            auto family = gen_family(rng.between(bits_for(n), 5), n, rng.next());
            report.add(guarded("bea source #" + std::to_string(i) + " n=" + std::to_string(n), [&] {
                auto r = ultimate_reflexivity(family_bea(family), caps, Deadline::from_caps(caps));
                return sized(r, r.reflexive(), eval_detail(r));
            }));
        }
        return report;
    }

    auto verify_equivalence(const SuiteOptions & options) -> SuiteReport
    {
        int max = std::min(pick(options.max_size, 4), 4);
        int samples = pick(options.samples, 50);
        auto caps = options.caps;
        SuiteReport report;
        report.suite = "equivalence";

        std::uint64_t salt = 0;
        for (auto & d : names_with_hull()) {
            vector<FiniteStructure> corpus;
            for (int i = 0; i < samples; ++i)
                corpus.push_back(gen_separated(d, max, options.seed * 104729 + salt++));
            for (int n = 1; n <= max; ++n) {
                if (d.name == "order")
                    for (auto & p : gen_posets_exhaustive(n, caps))
                        corpus.push_back(p);
                if (d.name == "semilattice")
                    for (auto & s : gen_semilattices_exhaustive(n, caps))
                        corpus.push_back(s);
                if (d.name == "pure_set")
                    corpus.push_back(bare_set(n));
                if (d.name == "betweenness_s0" && n >= 3)
                    corpus.push_back(minimal_betweenness(n));
            }
            std::erase_if(corpus, [&](auto & x) { return x.size > max; });

            auto results = parallel_map<CaseResult>(corpus.size(), options.threads, [&](std::size_t i) {
                return guarded(d.name + " #" + std::to_string(i), [&] {
                    auto e = hom_equivalence(corpus[i], d, caps, Deadline::from_caps(caps));
                    CaseResult c;
                    c.pass = e.equal;
                    c.size_x = corpus[i].size;
                    c.size_xstar = e.homs.size();
                    if (! e.equal)
                        c.detail = std::to_string(e.only_homs.size()) + " homs not halfspaces, " + std::to_string(e.only_halfspaces.size()) + " halfspaces not homs";
                    return c;
                });
            });
            int bad = 0;
            for (auto & c : results)
                bad += ! c.pass;
            CaseResult summary;
            summary.name = d.name;
            summary.pass = bad == 0;
            summary.detail = std::to_string(results.size()) + " instances, " + std::to_string(bad) + " mismatches";
            for (auto & c : results)
                if (! c.pass) {
                    summary.detail += "; first " + c.name + ": " + c.detail;
                    break;
                }
            report.add(summary);
        }
        return report;
    }

    auto verify_enumeration(const SuiteOptions & options) -> SuiteReport
    {
        int max = std::min(pick(options.max_size, 8), 10);
        int samples = pick(options.samples, 500);
        auto caps = options.caps;
        SuiteReport report;
        report.suite = "enumeration";

        auto agree = [&](const FiniteStructure & x, const TwoTemplate & d) {
            auto fast = enumerate_homs(x, d, caps, HomMethod::Backtracking);
            auto slow = enumerate_homs(x, d, caps, HomMethod::BruteForce);
            return fast.homs.sets == slow.homs.sets;
        };

        // every binary relation on at most 4 points against the order template
        auto order = catalog_template("order");
        for (int n = 1; n <= 4; ++n) {
            int cells = n * n;
            auto bad = parallel_map<int>(std::size_t{1} << cells, options.threads, [&](std::size_t r) {
                FiniteStructure x;
                x.signature = order_signature();
                x.size = n;
                x.relations.resize(1);
                for (int c = 0; c < cells; ++c)
                    if ((r >> c) & 1)
                        x.relations[0].push_back({c / n, c % n});
                return agree(x, order) ? 0 : 1;
            });
            CaseResult c;
            c.name = "all binary relations n=" + std::to_string(n);
            int mismatches = static_cast<int>(std::count(bad.begin(), bad.end(), 1));
            c.pass = mismatches == 0;
            c.detail = std::to_string(bad.size()) + " structures, " + std::to_string(mismatches) + " mismatches";
            report.add(c);
        }

        // class corpora for the algebraic templates
        for (int n = 1; n <= 4; ++n) {
            int mismatches = 0, total = 0;
            auto sl = catalog_template("semilattice");
            auto lattice = catalog_template("bounded_lattice");
            for (auto & s : gen_semilattices_exhaustive(n, caps)) {
                ++total;
                mismatches += ! agree(s, sl);
            }
            for (auto & p : gen_posets_exhaustive(n, caps)) {
                auto l = downset_lattice(p);
                if (l.size > caps.powerset)
                    continue;
                ++total;
                mismatches += ! agree(l, lattice);
            }
            CaseResult c;
            c.name = "semilattices and lattices n=" + std::to_string(n);
            c.pass = mismatches == 0;
            c.detail = std::to_string(total) + " structures, " + std::to_string(mismatches) + " mismatches";
            report.add(c);
        }

        auto names = catalog_names();
        auto bad = parallel_map<string>(samples, options.threads, [&](std::size_t i) -> string {
            Rng rng(options.seed * 7777 + i);
            auto d = catalog_template(names[rng.below(names.size())]);
            int n = rng.between(1, max);
            auto x = random_structure(d.structure.signature, n, rng.next());
            // constants of the template are mirrored by random points
            x.constants.clear();
            for (std::size_t k = 0; k < x.signature.constants.size(); ++k)
                x.constants.push_back(static_cast<int>(rng.below(n)));
            return agree(x, d) ? string{} : d.name + " n=" + std::to_string(n) + " #" + std::to_string(i);
        });
        CaseResult c;
        c.name = "random structures";
        int mismatches = static_cast<int>(std::count_if(bad.begin(), bad.end(), [](auto & s) { return ! s.empty(); }));
        c.pass = mismatches == 0;
        c.detail = std::to_string(samples) + " structures, " + std::to_string(mismatches) + " mismatches";
        for (auto & s : bad)
            if (! s.empty()) {
                c.detail += "; first " + s;
                break;
            }
        report.add(c);
        return report;
    }
}
