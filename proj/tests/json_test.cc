#include <duality/catalog.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/json_io.hh>

#include <doctest.h>

#include <sstream>

using namespace duality;

TEST_CASE("structure documents round trip")
{
    auto l = downset_lattice(chain_poset(2));
    auto j = to_json(l);
    CHECK(j["kind"] == "structure");
    CHECK(j["universe"] == 3);
    auto back = structure_from_json(j);
    CHECK(back.relations == l.relations);
    CHECK(back.constants == l.constants);
    CHECK(back.signature.constants == l.signature.constants);
}

TEST_CASE("family, bea and biconvexity documents round trip")
{
    SetFamily f{3, {0b000, 0b011, 0b111}, true, true};
    auto fj = to_json(f);
    CHECK(fj["sets"][1] == Json::array({0, 1}));
    auto fb = family_from_json(fj);
    CHECK(fb.sets == f.sets);
    CHECK(fb.zero);

    auto o = BeaOracle::induced(2, {0b00, 0b10, 0b11});
    auto back = bea_from_json(to_json(o));
    for (Mask s = 0; s < 4; ++s)
        for (Mask t = 0; t < 4; ++t)
            CHECK(back.query(s, t) == o.query(s, t));

    auto space = poset_biconvexity(chain_poset(3));
    auto sb = biconvexity_from_json(to_json(space));
    CHECK(sb.lower == space.lower);
    CHECK(sb.upper == space.upper);
}

TEST_CASE("malformed documents")
{
    auto kind_of = [](const char * text) {
        try {
            document_from_json(Json::parse(text));
        }
        catch (const Error & e) {
            return e.kind();
        }
        return ErrorKind::PaschFailure;
    };
    CHECK(kind_of(R"({"universe":2})") == ErrorKind::InvalidInput);
    CHECK(kind_of(R"({"kind":"bogus"})") == ErrorKind::InvalidInput);
    CHECK(kind_of(R"({"kind":"structure","universe":2,"signature":[{"name":"le","arity":2}],"relations":{"le":[[0,5]]}})") == ErrorKind::InvalidInput);
    CHECK(kind_of(R"({"kind":"structure","universe":2,"signature":[],"relations":{"le":[[0,1]]}})") == ErrorKind::InvalidInput);
    CHECK(kind_of(R"({"kind":"family","base":2,"sets":[[0],[0]]})") == ErrorKind::InvalidInput);
    CHECK(kind_of(R"({"kind":"bea","universe":2,"pairs":[[[0],[7]]]})") == ErrorKind::InvalidInput);
    CHECK(kind_of(R"({"kind":"structure","universe":0,"signature":[]})") == ErrorKind::InvalidInput);
}

TEST_CASE("corpus files")
{
    std::vector<Document> docs{chain_poset(2), SetFamily{2, {0b01, 0b10}}};
    std::stringstream ss;
    write_corpus(ss, Json{{"kind", "corpus-meta"}, {"seed", 7}, {"generator", "mt19937_64/rejection-v1"}}, docs);
    auto first = ss.str().substr(0, ss.str().find('\n'));
    CHECK(Json::parse(first)["kind"] == "corpus-meta");
    auto back = read_corpus(ss);
    REQUIRE(back.size() == 2);
    CHECK(std::holds_alternative<FiniteStructure>(back[0]));
    CHECK(std::holds_alternative<SetFamily>(back[1]));
}

TEST_CASE("evaluation reports carry the size block")
{
    EvalReport r;
    r.size_x = 3;
    r.size_xstar = 2;
    r.size_xbidual = 4;
    r.unrepresented = {0b01};
    auto j = to_json(r);
    CHECK(j["pass"] == false);
    CHECK(j["sizes"]["Xbidual"] == 4);
    CHECK(j["counterexamples"].size() == 1);
}
