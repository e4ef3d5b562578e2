#include <duality/errors.hh>
#include <duality/json_io.hh>

#include <fstream>
#include <istream>
#include <ostream>

using std::string;
using std::vector;

namespace duality
{
    namespace
    {
        auto bad(const string & what) -> Error
        {
            return Error(ErrorKind::InvalidInput, what);
        }

        auto field(const Json & j, const char * name) -> const Json &
        {
            if (! j.is_object() || ! j.contains(name))
                throw bad(string("missing field \"") + name + "\"");
            return j.at(name);
        }

        auto get_int(const Json & j, const char * name) -> int
        {
            auto & v = field(j, name);
            if (! v.is_number_integer())
                throw bad(string("field \"") + name + "\" must be an integer");
            return v.get<int>();
        }

        auto optional_index(const Json & j, const char * name) -> std::optional<int>
        {
            if (! j.contains(name) || j.at(name).is_null())
                return std::nullopt;
            if (! j.at(name).is_number_integer())
                throw bad(string("field \"") + name + "\" must be an index or null");
            return j.at(name).get<int>();
        }

        auto index_json(std::optional<int> i) -> Json
        {
            return i ? Json(*i) : Json(nullptr);
        }

        auto mask_from(const Json & j, int universe) -> Mask
        {
            if (! j.is_array())
                throw bad("subset must be an array of indices");
            vector<int> idx;
            for (auto & v : j) {
                if (! v.is_number_integer())
                    throw bad("subset entries must be integers");
                idx.push_back(v.get<int>());
            }
            return indices_to_mask(idx, universe);
        }

        auto masks_from(const Json & j, int universe) -> vector<Mask>
        {
            if (! j.is_array())
                throw bad("expected an array of subsets");
            vector<Mask> result;
            for (auto & s : j)
                result.push_back(mask_from(s, universe));
            return result;
        }

        auto masks_json(const vector<Mask> & ms) -> Json
        {
            Json a = Json::array();
            for (auto m : ms)
                a.push_back(mask_json(m));
            return a;
        }

        auto require_kind(const Json & j, const char * kind) -> void
        {
            if (! j.is_object() || ! j.contains("kind") || j.at("kind") != kind)
                throw bad(string("expected a document of kind \"") + kind + "\"");
        }
    }

    auto mask_json(Mask m) -> Json
    {
        Json a = Json::array();
        for_each_bit(m, [&](int i) { a.push_back(i); });
        return a;
    }

    auto to_json(const FiniteStructure & x) -> Json
    {
        Json j;
        j["kind"] = "structure";
        j["universe"] = x.size;
        j["signature"] = Json::array();
        for (auto & s : x.signature.symbols)
            j["signature"].push_back({{"name", s.name}, {"arity", s.arity}, {"functional", s.functional}});
        j["relations"] = Json::object();
        for (std::size_t r = 0; r < x.relations.size(); ++r) {
            Json rel = Json::array();
            for (auto & t : x.relations[r])
                rel.push_back(t);
            j["relations"][x.signature.symbols[r].name] = rel;
        }
        j["constants"] = Json::object();
        for (std::size_t c = 0; c < x.constants.size(); ++c)
            j["constants"][x.signature.constants[c]] = x.constants[c];
        return j;
    }

    auto structure_from_json(const Json & j) -> FiniteStructure
    {
        require_kind(j, "structure");
        FiniteStructure x;
        x.size = get_int(j, "universe");
        auto & sig = field(j, "signature");
        if (! sig.is_array())
            throw bad("signature must be an array");
        for (auto & s : sig) {
            Symbol sym;
            if (! field(s, "name").is_string())
                throw bad("symbol name must be a string");
            sym.name = s.at("name").get<string>();
            sym.arity = get_int(s, "arity");
            sym.functional = s.value("functional", false);
            x.signature.symbols.push_back(sym);
        }

        auto rels = j.value("relations", Json::object());
        if (! rels.is_object())
            throw bad("relations must be an object");
        for (auto & [name, _] : rels.items())
            if (! x.signature.symbol_index(name))
                throw bad("relation " + name + " is not in the signature");
        x.relations.resize(x.signature.symbols.size());
        for (std::size_t r = 0; r < x.signature.symbols.size(); ++r) {
            auto & name = x.signature.symbols[r].name;
            if (! rels.contains(name))
                continue;
            for (auto & t : rels.at(name)) {
                if (! t.is_array())
                    throw bad("tuples must be arrays");
                Tuple tuple;
                for (auto & v : t) {
                    if (! v.is_number_integer())
                        throw bad("tuple entries must be integers");
                    tuple.push_back(v.get<int>());
                }
                x.relations[r].push_back(std::move(tuple));
            }
        }

        auto consts = j.value("constants", Json::object());
        if (! consts.is_object())
            throw bad("constants must be an object");
        for (auto & [name, value] : consts.items()) {
            if (! value.is_number_integer())
                throw bad("constant " + name + " must be an index");
            x.signature.constants.push_back(name);
            x.constants.push_back(value.get<int>());
        }

        require_valid(x);
        x.normalise();
        return x;
    }

    auto to_json(const SetFamily & f) -> Json
    {
        return {{"kind", "family"}, {"base", f.base}, {"sets", masks_json(f.sets)}, {"zero", f.zero}, {"one", f.one}};
    }

    auto family_from_json(const Json & j) -> SetFamily
    {
        require_kind(j, "family");
        SetFamily f;
        f.base = get_int(j, "base");
        if (f.base < 0 || f.base > mask_bits)
            throw bad("family base must lie in [0, 64]");
        f.sets = masks_from(field(j, "sets"), f.base);
        f.zero = j.value("zero", false);
        f.one = j.value("one", false);
        auto report = validate(f);
        if (! report.valid())
            throw bad("invalid family: " + report.violations.front());
        return f;
    }

    auto to_json(const BeaOracle & o, int cap) -> Json
    {
        Json pairs = Json::array();
        for (auto & [s, t] : o.positive_pairs(cap))
            pairs.push_back(Json::array({mask_json(s), mask_json(t)}));
        return {{"kind", "bea"}, {"universe", o.universe()}, {"pairs", pairs}, {"zero", index_json(o.zero())}, {"one", index_json(o.one())}};
    }

    auto bea_from_json(const Json & j) -> BeaOracle
    {
        require_kind(j, "bea");
        int n = get_int(j, "universe");
        vector<SubsetPair> pairs;
        auto & ps = field(j, "pairs");
        if (! ps.is_array())
            throw bad("pairs must be an array");
        for (auto & p : ps) {
            if (! p.is_array() || p.size() != 2)
                throw bad("each pair must be [[s...],[t...]]");
            pairs.emplace_back(mask_from(p[0], n), mask_from(p[1], n));
        }
        return BeaOracle::table(n, std::move(pairs), optional_index(j, "zero"), optional_index(j, "one"));
    }

    auto to_json(const BiConvexity & s) -> Json
    {
        return {{"kind", "biconvexity"}, {"universe", s.universe}, {"L", masks_json(s.lower)}, {"U", masks_json(s.upper)},
            {"zero", index_json(s.zero)}, {"one", index_json(s.one)}};
    }

    auto biconvexity_from_json(const Json & j) -> BiConvexity
    {
        require_kind(j, "biconvexity");
        int n = get_int(j, "universe");
        if (n <= 0 || n > mask_bits)
            throw bad("universe must lie in [1, 64]");
        return make_biconvexity(n, masks_from(field(j, "L"), n), masks_from(field(j, "U"), n), optional_index(j, "zero"), optional_index(j, "one"));
    }

    auto document_from_json(const Json & j) -> Document
    {
        if (! j.is_object() || ! j.contains("kind") || ! j.at("kind").is_string())
            throw bad("document lacks a \"kind\"");
        auto kind = j.at("kind").get<string>();
        if (kind == "structure")
            return structure_from_json(j);
        if (kind == "family")
            return family_from_json(j);
        if (kind == "bea")
            return bea_from_json(j);
        if (kind == "biconvexity")
            return biconvexity_from_json(j);
        throw bad("unknown document kind " + kind);
    }

    auto to_json(const Document & d) -> Json
    {
        return std::visit([](auto & v) -> Json { return to_json(v); }, d);
    }

    auto read_json_file(const string & path) -> Json
    {
        std::ifstream in(path);
        if (! in)
            throw bad("cannot open " + path);
        try {
            return Json::parse(in);
        }
        catch (const nlohmann::json::exception & e) {
            throw bad(path + ": " + e.what());
        }
    }

    auto read_corpus(std::istream & in) -> vector<Document>
    {
        vector<Document> docs;
        string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (line.find_first_not_of(" \t\r") == string::npos)
                continue;
            Json j;
            try {
                j = Json::parse(line);
            }
            catch (const nlohmann::json::exception & e) {
                throw bad("corpus line " + std::to_string(number) + ": " + e.what());
            }
            if (j.is_object() && j.value("kind", "") == "corpus-meta")
                continue;
            docs.push_back(document_from_json(j));
        }
        return docs;
    }

    auto write_corpus(std::ostream & out, const Json & meta, const vector<Document> & docs) -> void
    {
        out << meta.dump() << '\n';
        for (auto & d : docs)
            out << to_json(d).dump() << '\n';
    }

    auto to_json(const AxiomReport & r) -> Json
    {
        Json w = Json::array();
        for (auto m : r.witness)
            w.push_back(mask_json(m));
        return {{"axiom", string(to_string(r.axiom))}, {"pass", r.pass}, {"witness", w}, {"detail", r.detail}};
    }

    auto to_json(const SeparationReport & r) -> Json
    {
        Json j{{"separated", r.separated}, {"injective", r.injective}};
        j["collisions"] = Json::array();
        for (auto & [a, b] : r.collisions)
            j["collisions"].push_back({a, b});
        j["relation_witnesses"] = Json::array();
        for (auto & w : r.relation_witnesses)
            j["relation_witnesses"].push_back({{"symbol", w.symbol}, {"tuple", w.tuple}});
        j["homs"] = masks_json(r.homs.homs.sets);
        return j;
    }

    auto to_json(const EvalReport & r) -> Json
    {
        Json counter = Json::array();
        for (auto m : r.unrepresented)
            counter.push_back({{"unrepresented", mask_json(m)}});
        for (auto & [a, b] : r.collisions)
            counter.push_back({{"collision", {a, b}}});
        for (auto & w : r.relation_witnesses)
            counter.push_back({{"not_reflected", {{"symbol", w.symbol}, {"tuple", w.tuple}}}});
        if (r.bea_mismatch)
            counter.push_back({{"bea_mismatch", {mask_json(r.bea_mismatch->first), mask_json(r.bea_mismatch->second)}}});

        Json j{{"pass", r.reflexive()}, {"counterexamples", counter},
            {"sizes", {{"X", r.size_x}, {"Xstar", r.size_xstar}, {"Xbidual", r.size_xbidual}}},
            {"injective", r.injective}, {"embedding", r.embedding}, {"surjective", r.surjective}};
        j["evaluations"] = masks_json(r.evaluations);
        if (! r.missing_constants.empty())
            j["missing_constants"] = r.missing_constants;
        return j;
    }

    auto to_json(const PairReport & r) -> Json
    {
        Json counter = Json::array();
        Json cases = Json::array();
        for (auto & c : r.cases) {
            Json cj{{"index", c.index}, {"s1", c.s1}, {"s2", c.s2}, {"timeout", c.timeout},
                {"sizes", {{"X", c.eval.size_x}, {"Xstar", c.eval.size_xstar}, {"Xbidual", c.eval.size_xbidual}}}};
            if (! c.detail.empty())
                cj["detail"] = c.detail;
            if (! c.timeout && (! c.s1 || ! c.s2))
                counter.push_back(cj);
            cases.push_back(std::move(cj));
        }
        return {{"pass", r.pass}, {"D", r.d_name}, {"E", r.e_name}, {"timeouts", r.timeouts}, {"counterexamples", counter}, {"cases", cases}};
    }
}
