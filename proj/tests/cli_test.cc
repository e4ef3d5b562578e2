#include <duality/catalog.hh>
#include <duality/cli.hh>
#include <duality/generators.hh>
#include <duality/json_io.hh>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace duality;

namespace
{
    struct Run
    {
        int code;
        std::string out, err;
    };

    auto run(std::vector<std::string> args) -> Run
    {
        args.insert(args.begin(), "duality");
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return {code, out.str(), err.str()};
    }

    auto temp_file(const std::string & name, const Json & j) -> std::string
    {
        auto path = (std::filesystem::temp_directory_path() / ("duality_cli_" + name)).string();
        std::ofstream(path) << j.dump();
        return path;
    }
}

TEST_CASE("separate on the 2-chain")
{
    auto path = temp_file("chain2.bea.json", to_json(BeaOracle::induced(2, {0b00, 0b10, 0b11})));
    auto r = run({"separate", "--in", path, "--a", "1", "--b", "0"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["U"] == Json::array({1}));
    auto t = run({"--format", "text", "separate", "--in", path, "--a", "1", "--b", "0"});
    CHECK(t.out == "U=[1]\n");
    CHECK(run({"separate", "--in", path, "--a", "0", "--b", "0"}).code == 2);
}

TEST_CASE("check-axioms reports a Pasch counterexample")
{
    // a table from the family {{0},{0,1},{1,2}} with one minimal pair removed
    auto table = family_bea(SetFamily{3, {0b001, 0b011, 0b110}}).to_table(10);
    auto pairs = table.table_pairs();
    std::optional<BeaOracle> corrupted;
    for (auto & victim : pairs) {
        std::vector<SubsetPair> kept;
        for (auto & p : pairs)
            if (p != victim)
                kept.push_back(p);
        auto t = BeaOracle::table(3, kept);
        if (check_axiom(t, Axiom::i1).pass && ! check_axiom(t, Axiom::i3).pass) {
            corrupted = t;
            break;
        }
    }
    REQUIRE(corrupted);
    auto path = temp_file("corrupted.bea.json", to_json(*corrupted));
    auto r = run({"check-axioms", "--in", path, "--axioms", "i3"});
    CHECK(r.code == 1);
    auto j = Json::parse(r.out);
    CHECK(j["pass"] == false);
    CHECK(j["counterexamples"][0]["witness"].size() == 5);

    CHECK(run({"check-axioms", "--in", path, "--axioms", "i9"}).code == 2);
}

TEST_CASE("verify priestley")
{
    auto r = run({"verify", "--suite", "priestley", "--max-size", "3"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out)["pass"] == true);
}

TEST_CASE("reports are byte-identical across runs and thread counts")
{
    auto a = run({"--threads", "1", "verify", "--suite", "pasch", "--samples", "30", "--seed", "5"});
    auto b = run({"--threads", "4", "verify", "--suite", "pasch", "--samples", "30", "--seed", "5"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("dual and reflexivity")
{
    auto path = temp_file("lattice3.json", to_json(downset_lattice(chain_poset(2))));
    auto d = run({"dual", "--in", path, "--template", "bounded_lattice", "--e-template", "order"});
    CHECK(d.code == 0);
    CHECK(Json::parse(d.out)["universe"] == 2);

    auto neg = run({"reflexivity", "--in", path, "--template", "bounded_lattice", "--e-template", "pure_set"});
    CHECK(neg.code == 1);
    auto j = Json::parse(neg.out);
    CHECK(j["sizes"]["Xbidual"] == 4);
    CHECK(j["sizes"]["Xstar"] == 2);

    auto ok = run({"reflexivity", "--in", path, "--template", "bounded_lattice"});
    CHECK(ok.code == 0);
}

TEST_CASE("usage errors and caps")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    CHECK(run({"verify", "--suite", "stone", "--unknown-flag"}).code == 2);
    CHECK(run({"check-axioms", "--in", "/nonexistent.json"}).code == 2);
    auto path = temp_file("chain5.json", to_json(chain_poset(5)));
    CHECK(run({"--caps", "bidual_source=2", "reflexivity", "--in", path, "--template", "order", "--e-template", "bounded_lattice"}).code == 3);
    CHECK(run({"--caps", "homs=0", "verify", "--suite", "stone"}).code == 2);
}

TEST_CASE("gen writes a corpus with a metadata header")
{
    auto path = (std::filesystem::temp_directory_path() / "duality_cli_corpus.jsonl").string();
    CHECK(run({"gen", "--class", "poset", "--size", "4", "--seed", "11", "--count", "3", "--out", path}).code == 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    auto meta = Json::parse(header);
    CHECK(meta["kind"] == "corpus-meta");
    CHECK(meta["seed"] == 11);
    CHECK(meta["generator"] == "mt19937_64/rejection-v1");
    auto docs = read_corpus(in);
    CHECK(docs.size() == 3);

    for (auto c : {"semilattice", "dlattice", "family", "betweenness", "biconvexity"})
        CHECK(run({"gen", "--class", c, "--size", "3", "--count", "2"}).code == 0);
}
