#include <duality/dual.hh>
#include <duality/errors.hh>
#include <duality/parallel.hh>

#include <algorithm>
#include <unordered_map>

using std::string;
using std::vector;

namespace duality
{
    namespace
    {
        auto mask_string(Mask m) -> string
        {
            string s = "{";
            bool first = true;
            for_each_bit(m, [&](int i) {
                s += (first ? "" : ",") + std::to_string(i);
                first = false;
            });
            return s + "}";
        }

        /// Advances an index vector in odometer order; false once it wraps.
        auto next_tuple(Tuple & t, int size) -> bool
        {
            int i = static_cast<int>(t.size()) - 1;
            while (i >= 0 && ++t[i] == size)
                t[i--] = 0;
            return i >= 0;
        }

        auto evaluations(const SetFamily & carrier, int n) -> vector<Mask>
        {
            vector<Mask> eva(n, 0);
            for (int i = 0; i < carrier.size(); ++i)
                for_each_bit(carrier.sets[i], [&](int x) { eva[x] |= bit(i); });
            return eva;
        }

        /// Fills injectivity and surjectivity from the evaluations and X**.
        auto audit(EvalReport & report, const SetFamily & carrier, int n, const vector<Mask> & bidual) -> void
        {
            report.evaluations = evaluations(carrier, n);
            report.size_x = n;
            report.size_xstar = carrier.size();
            report.size_xbidual = static_cast<int>(bidual.size());
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    if (report.evaluations[a] == report.evaluations[b])
                        report.collisions.emplace_back(a, b);
            report.injective = report.collisions.empty();
            for (auto phi : bidual)
                if (std::find(report.evaluations.begin(), report.evaluations.end(), phi) == report.evaluations.end())
                    report.unrepresented.push_back(phi);
            report.surjective = report.unrepresented.empty();
        }

        auto require_source_cap(int n, const Caps & caps) -> void
        {
            if (n > caps.bidual_source)
                throw Error(ErrorKind::CapExceeded, "bidual source of size " + std::to_string(n) + " exceeds the cap of "
                        + std::to_string(caps.bidual_source));
        }

        auto require_dual_cap(int m, const Caps & caps) -> void
        {
            if (m > caps.bidual_dual)
                throw Error(ErrorKind::CapExceeded, "dual of size " + std::to_string(m) + " exceeds the cap of "
                        + std::to_string(caps.bidual_dual));
        }
    }

    auto induced_structure(const SetFamily & carrier, const TwoTemplate & e) -> FiniteStructure
    {
        int m = carrier.size();
        if (m == 0)
            throw Error(ErrorKind::InvalidInput, "empty carrier");
        Mask all = full_mask(carrier.base);

        std::unordered_map<Mask, int> index;
        for (int i = 0; i < m; ++i)
            index.emplace(carrier.sets[i], i);

        FiniteStructure result;
        result.signature = e.structure.signature;
        result.size = m;
        result.relations.resize(result.signature.symbols.size());

        for (std::size_t c = 0; c < result.signature.constants.size(); ++c) {
            Mask want = e.structure.constants[c] ? all : 0;
            auto it = index.find(want);
            if (it == index.end())
                throw Error(ErrorKind::S1Violation, "constant " + result.signature.constants[c] + " of " + e.name
                        + " is not realised by the constant map " + mask_string(want));
            result.constants.push_back(it->second);
        }

        for (std::size_t r = 0; r < result.signature.symbols.size(); ++r) {
            auto & sym = result.signature.symbols[r];
            int k = sym.arity;
            vector<bool> allowed(std::size_t{1} << k, false);
            for (auto & t : e.structure.relations[r]) {
                unsigned p = 0;
                for (int i = 0; i < k; ++i)
                    if (t[i])
                        p |= 1u << i;
                allowed[p] = true;
            }

            // where the coordinate masks f_0..f_{k-1} show pattern p
            auto where = [&](const Tuple & t, unsigned p, int len) {
                Mask w = all;
                for (int i = 0; i < len; ++i)
                    w &= (p & (1u << i)) ? carrier.sets[t[i]] : ~carrier.sets[t[i]];
                return w;
            };

            if (sym.functional) {
                Tuple args(k - 1, 0);
                do {
                    Mask value = 0;
                    for (unsigned q = 0; q < (1u << (k - 1)); ++q)
                        if (allowed[q | (1u << (k - 1))])
                            value |= where(args, q, k - 1);
                    auto it = index.find(value);
                    if (it == index.end()) {
                        string shown;
                        for (int a : args)
                            shown += (shown.empty() ? "" : ", ") + mask_string(carrier.sets[a]);
                        throw Error(ErrorKind::S1Violation, sym.name + "(" + shown + ") = " + mask_string(value) + " is not a homomorphism");
                    }
                    Tuple t = args;
                    t.push_back(it->second);
                    result.relations[r].push_back(std::move(t));
                } while (k > 1 && next_tuple(args, m));
            }
            else {
                Tuple t(k, 0);
                do {
                    bool keep = true;
                    for (unsigned p = 0; p < allowed.size() && keep; ++p)
                        if (! allowed[p] && where(t, p, k))
                            keep = false;
                    if (keep)
                        result.relations[r].push_back(t);
                } while (next_tuple(t, m));
            }
        }
        result.normalise();
        return result;
    }

    auto dual(const FiniteStructure & x, const TwoTemplate & d, const TwoTemplate & e, const Caps & caps, const Deadline & deadline) -> DualStructure
    {
        DualStructure result;
        result.source_size = x.size;
        result.d = d;
        result.e = e;
        result.carrier = enumerate_homs(x, d, caps, HomMethod::Backtracking, deadline);
        result.induced = induced_structure(result.carrier.homs, e);
        return result;
    }

    auto bidual_and_evaluate(const FiniteStructure & x, const TwoTemplate & d, const TwoTemplate & e, const Caps & caps, const Deadline & deadline) -> EvalReport
    {
        require_source_cap(x.size, caps);
        auto xs = dual(x, d, e, caps, deadline);
        require_dual_cap(xs.carrier.homs.size(), caps);
        auto bidual = enumerate_homs(xs.induced, e, caps, HomMethod::Backtracking, deadline);

        EvalReport report;
        audit(report, xs.carrier.homs, x.size, bidual.homs.sets);
        report.relation_witnesses = relation_reflection_failures(x, d, xs.carrier.homs);
        report.embedding = report.injective && report.relation_witnesses.empty();
        return report;
    }

    auto ultimate_partner(bool zero, bool one) -> UltimateTemplate
    {
        if (zero && one)
            return {false, false};
        if (zero)
            return {true, false};
        if (one)
            return {false, true};
        return {true, true};
    }

    auto ultimate_partner(const TwoTemplate & d) -> UltimateTemplate
    {
        return ultimate_partner(d.has_zero, d.has_one);
    }

    namespace
    {
        auto designate(SetFamily carrier, const UltimateTemplate & e) -> UltimateDual
        {
            UltimateDual result;
            carrier.zero = e.zero && carrier.index_of(0);
            carrier.one = e.one && carrier.index_of(full_mask(carrier.base));
            if (e.zero && ! carrier.zero)
                result.missing_constants.push_back("0");
            if (e.one && ! carrier.one)
                result.missing_constants.push_back("1");
            result.oracle = family_bea(carrier);
            result.carrier = std::move(carrier);
            return result;
        }
    }

    auto ultimate_dual(const BeaOracle & x, const Caps & caps, const Deadline & deadline) -> UltimateDual
    {
        vector<Axiom> axioms{Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3};
        if (x.zero())
            axioms.push_back(Axiom::c0);
        if (x.one())
            axioms.push_back(Axiom::c1);
        require_axioms(x, axioms, caps);
        return designate(all_halfspaces(x, caps, HalfspaceMethod::Backtracking, deadline),
            ultimate_partner(x.zero().has_value(), x.one().has_value()));
    }

    auto ultimate_dual(const FiniteStructure & x, const TwoTemplate & d, const UltimateTemplate & e, const Caps & caps, const Deadline & deadline) -> UltimateDual
    {
        return designate(enumerate_homs(x, d, caps, HomMethod::Backtracking, deadline).homs, e);
    }

    auto bidual_and_evaluate(const FiniteStructure & x, const TwoTemplate & d, const UltimateTemplate & e, const Caps & caps, const Deadline & deadline) -> EvalReport
    {
        require_source_cap(x.size, caps);
        auto xs = ultimate_dual(x, d, e, caps, deadline);
        require_dual_cap(xs.carrier.size(), caps);
        auto bidual = all_halfspaces(xs.oracle, caps, HalfspaceMethod::Backtracking, deadline);

        EvalReport report;
        audit(report, xs.carrier, x.size, bidual.sets);
        report.missing_constants = xs.missing_constants;
        report.relation_witnesses = relation_reflection_failures(x, d, xs.carrier);
        report.embedding = report.injective && report.relation_witnesses.empty();
        return report;
    }

    auto ultimate_reflexivity(const BeaOracle & x, const Caps & caps, const Deadline & deadline) -> EvalReport
    {
        require_source_cap(x.universe(), caps);
        auto xs = ultimate_dual(x, caps, deadline);
        require_dual_cap(xs.carrier.size(), caps);
        auto bidual = all_halfspaces(xs.oracle, caps, HalfspaceMethod::Backtracking, deadline);

        EvalReport report;
        audit(report, xs.carrier, x.universe(), bidual.sets);
        report.missing_constants = xs.missing_constants;
        auto through_carrier = BeaOracle::induced(x.universe(), xs.carrier.sets);
        report.bea_mismatch = first_disagreement(x, through_carrier, caps.bidual_source);
        report.embedding = report.injective && ! report.bea_mismatch;
        return report;
    }

    auto check_semi_dual(const TwoTemplate & d, const Template & e, const vector<FiniteStructure> & instances, const Caps & caps, unsigned threads) -> PairReport
    {
        PairReport report;
        report.d_name = d.name;
        report.e_name = template_name(e);

        report.cases = parallel_map<CaseOutcome>(instances.size(), threads, [&](std::size_t i) {
            auto deadline = Deadline::from_caps(caps);
            CaseOutcome outcome;
            outcome.index = static_cast<int>(i);
            auto & x = instances[i];

            try {
                auto sep = is_separated(x, d, caps, deadline);
                if (! sep.separated) {
                    string why = sep.collisions.empty()
                        ? "relation " + sep.relation_witnesses.front().symbol + " not reflected"
                        : "points " + std::to_string(sep.collisions.front().first) + " and " + std::to_string(sep.collisions.front().second) + " collide";
                    throw Error(ErrorKind::NotSeparated, "instance " + std::to_string(i) + " is not " + d.name + "-separated: " + why);
                }
                if (auto two = std::get_if<TwoTemplate>(&e))
                    outcome.eval = bidual_and_evaluate(x, d, *two, caps, deadline);
                else
                    outcome.eval = bidual_and_evaluate(x, d, std::get<UltimateTemplate>(e), caps, deadline);
                outcome.s2 = outcome.eval.surjective;
                if (! outcome.s2)
                    outcome.detail = std::to_string(outcome.eval.unrepresented.size()) + " unrepresented homomorphisms";
                if (! outcome.eval.missing_constants.empty())
                    outcome.detail += (outcome.detail.empty() ? "" : "; ") + string("constant maps absent from the dual");
            }
            catch (const Error & err) {
                if (err.kind() == ErrorKind::S1Violation) {
                    outcome.s1 = false;
                    outcome.detail = err.what();
                }
                else if (err.kind() == ErrorKind::Timeout) {
                    outcome.timeout = true;
                    outcome.detail = err.what();
                }
                else
                    throw;
            }
            return outcome;
        });

        for (auto & c : report.cases) {
            if (c.timeout)
                ++report.timeouts;
            else if (! c.s1 || ! c.s2)
                report.pass = false;
        }
        return report;
    }

    auto dual_of_surjection(const vector<int> & f, const FiniteStructure & x, const FiniteStructure & y,
        const TwoTemplate & d, const Template & e, const Caps & caps) -> SurjectionDual
    {
        if (static_cast<int>(f.size()) != x.size)
            throw Error(ErrorKind::InvalidInput, "map length differs from the domain size");
        Mask image = 0;
        for (int v : f) {
            if (v < 0 || v >= y.size)
                throw Error(ErrorKind::InvalidInput, "map value outside the codomain");
            image |= bit(v);
        }
        if (image != full_mask(y.size))
            throw Error(ErrorKind::NotSurjective, "point " + std::to_string(std::countr_zero(full_mask(y.size) & ~image)) + " has no preimage");

        if (! x.signature.compatible_with(y.signature))
            throw Error(ErrorKind::SignatureMismatch, "domain and codomain signatures differ");
        for (std::size_t c = 0; c < x.constants.size(); ++c)
            if (f[x.constants[c]] != y.constant(x.signature.constants[c]))
                throw Error(ErrorKind::NotHomomorphism, "constant " + x.signature.constants[c] + " is not preserved");
        for (std::size_t r = 0; r < x.relations.size(); ++r) {
            int ry = *y.signature.symbol_index(x.signature.symbols[r].name);
            for (auto & t : x.relations[r]) {
                Tuple image_t;
                for (int v : t)
                    image_t.push_back(f[v]);
                if (! y.has_tuple(ry, image_t))
                    throw Error(ErrorKind::NotHomomorphism, "relation " + x.signature.symbols[r].name + " is not preserved");
            }
        }

        auto hx = enumerate_homs(x, d, caps).homs;
        auto hy = enumerate_homs(y, d, caps).homs;

        SurjectionDual result;
        SetFamily composed{x.size, {}, false, false};
        for (auto ystar : hy.sets) {
            Mask m = 0;
            for (int v = 0; v < x.size; ++v)
                if (has_bit(ystar, f[v]))
                    m |= bit(v);
            auto i = hx.index_of(m);
            if (! i)
                throw Error(ErrorKind::NotHomomorphism, "composite " + mask_string(m) + " is not a homomorphism");
            result.dual_map.push_back(*i);
            composed.sets.push_back(m);
        }

        auto sorted_map = result.dual_map;
        std::sort(sorted_map.begin(), sorted_map.end());
        result.injective = std::adjacent_find(sorted_map.begin(), sorted_map.end()) == sorted_map.end();
        if (! result.injective) {
            result.detail = "f* identifies two members of Y*";
            return result;
        }

        if (auto two = std::get_if<TwoTemplate>(&e)) {
            auto ix = induced_structure(hx, *two);
            auto iy = induced_structure(hy, *two);
            result.embedding = true;
            for (std::size_t r = 0; r < iy.relations.size() && result.embedding; ++r) {
                Tuple t(iy.signature.symbols[r].arity, 0);
                do {
                    Tuple mapped;
                    for (int v : t)
                        mapped.push_back(result.dual_map[v]);
                    if (iy.has_tuple(static_cast<int>(r), t) != ix.has_tuple(static_cast<int>(r), mapped)) {
                        result.embedding = false;
                        result.detail = "relation " + iy.signature.symbols[r].name + " not reflected by f*";
                        break;
                    }
                } while (next_tuple(t, iy.size));
            }
        }
        else {
            auto mismatch = first_disagreement(family_bea(hy), family_bea(composed), caps.axioms);
            result.embedding = ! mismatch;
            if (mismatch)
                result.detail = "⋈ differs on " + mask_string(mismatch->first) + ", " + mask_string(mismatch->second);
        }
        return result;
    }

    auto hom_equivalence(const FiniteStructure & x, const TwoTemplate & d, const Caps & caps, const Deadline & deadline) -> EquivalenceReport
    {
        auto sep = is_separated(x, d, caps, deadline);
        if (! sep.separated)
            throw Error(ErrorKind::NotSeparated, "structure is not " + d.name + "-separated");

        EquivalenceReport report;
        report.homs = sep.homs.homs;
        report.halfspaces = all_halfspaces(bea_from_homs(report.homs), caps, HalfspaceMethod::Backtracking, deadline);
        std::set_difference(report.homs.sets.begin(), report.homs.sets.end(), report.halfspaces.sets.begin(), report.halfspaces.sets.end(),
            std::back_inserter(report.only_homs));
        std::set_difference(report.halfspaces.sets.begin(), report.halfspaces.sets.end(), report.homs.sets.begin(), report.homs.sets.end(),
            std::back_inserter(report.only_halfspaces));
        report.equal = report.only_homs.empty() && report.only_halfspaces.empty();
        return report;
    }
}
