#include <duality/bea.hh>
#include <duality/catalog.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/hom.hh>
#include <duality/rng.hh>

#include "oracles.hh"

#include <doctest.h>

#include <algorithm>

using namespace duality;

namespace
{
    // final segments of the 2-chain 0 < 1
    auto chain2() -> BeaOracle
    {
        return BeaOracle::induced(2, {0b00, 0b10, 0b11});
    }

    auto query_of(const BeaOracle & o) -> oracle::Query
    {
        return [o](Mask s, Mask t) { return o.query(s, t); };
    }

    auto expect_kind(auto && f, ErrorKind kind) -> void
    {
        try {
            f();
            FAIL("no error raised");
        }
        catch (const Error & e) {
            CHECK(e.kind() == kind);
        }
    }
}

TEST_CASE("queries on induced oracles")
{
    auto o = chain2();
    CHECK_FALSE(o.query(0b10, 0b01));
    CHECK(o.query(0b01, 0b10));
    auto two = BeaOracle::induced(1, {0b0, 0b1});
    CHECK_FALSE(two.query(0b1, 0b0));
    CHECK(BeaOracle::induced(2, {}).query(0, 0));
    CHECK_FALSE(o.query(0, 0));
}

TEST_CASE("family relation")
{
    auto f = family_bea(SetFamily{2, {0b01, 0b10}});
    CHECK_FALSE(f.query(0b01, 0b10));

    auto g = family_bea(SetFamily{2, {0b00, 0b01, 0b11}});
    CHECK(g.query(0b001, 0b000));

    // powerset of {0,1} listed as ∅, {0}, {1}, {0,1}
    auto p = family_bea(SetFamily{2, {0b00, 0b01, 0b10, 0b11}});
    CHECK(p.query(0b0110, 0b0001));

    Rng rng(5);
    for (int i = 0; i < 60; ++i) {
        int base = rng.between(1, 4);
        int n = rng.between(1, std::min(6, 1 << base));
        auto fam = gen_family(base, n, rng.next());
        auto o = family_bea(fam);
        for (Mask s = 0; s <= oracle::full(n); ++s)
            for (Mask t = 0; t <= oracle::full(n); ++t)
                REQUIRE(o.query(s, t) == oracle::family_relation(fam.sets, base, s, t));
        for (auto a : {Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3})
            CHECK(check_axiom(o, a).pass);
    }
}

TEST_CASE("axiom witnesses")
{
    auto bad = BeaOracle::table(2, {{0b01, 0b01}, {0b10, 0b10}, {0b01, 0b10}, {0b10, 0b01}});
    auto r = check_axiom(bad, Axiom::i2);
    CHECK_FALSE(r.pass);
    CHECK(r.witness == std::vector<Mask>{0b01, 0b10});

    auto empty = BeaOracle::table(1, {{0, 0}});
    CHECK_FALSE(check_axiom(empty, Axiom::i0).pass);

    auto asym = BeaOracle::table(2, {{0b01, 0b01}, {0b10, 0b10}, {0b01, 0b10}});
    auto s = check_axiom(asym, Axiom::i5);
    CHECK_FALSE(s.pass);
    CHECK(s.witness == std::vector<Mask>{0b01, 0b10});

    Caps caps;
    caps.axioms_pairs = 2;
    expect_kind([&] { check_axiom(BeaOracle::table(3, {}), Axiom::i3, caps); }, ErrorKind::CapExceeded);
    expect_kind([&] { check_axiom(chain2(), Axiom::c0); }, ErrorKind::MissingConstants);
    CHECK(parse_axiom("i4") == Axiom::i4);
    CHECK_THROWS(parse_axiom("i9"));
}

TEST_CASE("table and induced oracles agree on axioms")
{
    Rng rng(17);
    for (int i = 0; i < 40; ++i) {
        int n = rng.between(1, 4);
        std::vector<Mask> hs;
        for (int k = rng.between(0, 5); k > 0; --k)
            hs.push_back(rng.next() & oracle::full(n));
        auto o = BeaOracle::induced(n, hs);
        auto t = o.to_table(10);
        for (auto a : {Axiom::i0, Axiom::i1, Axiom::i2, Axiom::i3, Axiom::i4, Axiom::i5})
            CHECK_MESSAGE(check_axiom(o, a).pass == check_axiom(t, a).pass, to_string(a));
    }
}

TEST_CASE("associated order")
{
    auto ord = associated_order(chain2());
    CHECK(ord.leq(0, 1));
    CHECK_FALSE(ord.leq(1, 0));
    CHECK_FALSE(ord.is_discrete());

    auto anti = associated_order(family_bea(SetFamily{2, {0b01, 0b10}}));
    CHECK(anti.is_discrete());

    expect_kind([] { associated_order(BeaOracle::table(1, {{0, 0}})); }, ErrorKind::AxiomsFail);
}

TEST_CASE("complements")
{
    // powerset of {p,q}: ∅, {p}, {q}, {p,q}
    auto o = family_bea(SetFamily{2, {0b00, 0b01, 0b10, 0b11}, true, true});
    CHECK(complement(o, 1) == 2);
    CHECK(complement(o, 2) == 1);
    CHECK(complement(o, 0) == 3);
    CHECK(complement(o, 3) == 0);

    // 3-chain lattice through its prime filters
    auto l = downset_lattice(chain_poset(2));
    auto homs = enumerate_homs(l, catalog_template("bounded_lattice"));
    auto c = bea_from_homs(homs.homs).with_constants(l.constant("zero"), l.constant("one"));
    CHECK_FALSE(complement(c, 1).has_value());

    expect_kind([] { complement(chain2(), 0); }, ErrorKind::MissingConstants);
}

TEST_CASE("halfspaces")
{
    auto o = chain2();
    CHECK(is_halfspace(o, 0b10));
    CHECK_FALSE(is_halfspace(o, 0b01));
    CHECK(all_halfspaces(o).sets == std::vector<Mask>{0b00, 0b10, 0b11});

    auto t = BeaOracle::table(2, {{0b01, 0b10}});
    CHECK_FALSE(is_halfspace(t, 0b01));

    // minimal betweenness halfspaces through (H)
    auto b = enumerate_homs(minimal_betweenness(3), catalog_template("betweenness_s0"));
    auto hs = all_halfspaces(bea_from_homs(b.homs));
    CHECK(hs.sets == std::vector<Mask>{0, 1, 2, 4, 7});

    // powerset with constants: only maps fixing 0 ↦ 0 and 1 ↦ 1
    auto p = family_bea(SetFamily{2, {0b00, 0b01, 0b10, 0b11}, true, true});
    for (auto u : all_halfspaces(p).sets) {
        CHECK_FALSE(oracle::in(u, 0));
        CHECK(oracle::in(u, 3));
    }
}

TEST_CASE("halfspace search against the brute-force halfspace oracle")
{
    Rng rng(23);
    for (int i = 0; i < 150; ++i) {
        int n = rng.between(1, 5);
        BeaOracle o = BeaOracle::induced(n, {});
        if (i % 2 == 0) {
            std::vector<Mask> hs;
            for (int k = rng.between(0, 6); k > 0; --k)
                hs.push_back(rng.next() & oracle::full(n));
            o = BeaOracle::induced(n, hs);
        }
        else {
            std::vector<SubsetPair> pairs;
            for (Mask s = 0; s <= oracle::full(n); ++s)
                for (Mask t = 0; t <= oracle::full(n); ++t)
                    if (rng.chance(1, 4))
                        pairs.emplace_back(s, t);
            o = BeaOracle::table(n, pairs);
        }
        auto expect = oracle::halfspaces(query_of(o), n);
        CHECK(all_halfspaces(o).sets == expect);
        CHECK(all_halfspaces(o, {}, HalfspaceMethod::BruteForce).sets == expect);
    }
}

TEST_CASE("separation examples")
{
    CHECK(separate(chain2(), 0b10, 0b01) == 0b10);
    expect_kind([] { separate(chain2(), 0b01, 0b01); }, ErrorKind::PreconditionViolated);
}

TEST_CASE("separation on family oracles")
{
    Rng rng(41);
    for (int i = 0; i < 80; ++i) {
        int base = rng.between(1, 4);
        int n = rng.between(1, std::min(6, 1 << base));
        auto o = family_bea(gen_family(base, n, rng.next()));
        auto q = query_of(o);
        for (Mask a = 0; a <= oracle::full(n); ++a)
            for (Mask b = 0; b <= oracle::full(n); ++b) {
                if (o.query(a, b))
                    continue;
                Mask u = separate(o, a, b);
                REQUIRE(oracle::subset(a, u));
                REQUIRE((u & b) == 0);
                REQUIRE(oracle::halfspace(q, n, u));
            }
    }
}

TEST_CASE("the halfspaces reproduce the relation")
{
    Rng rng(43);
    for (int i = 0; i < 60; ++i) {
        int base = rng.between(1, 4);
        int n = rng.between(1, std::min(6, 1 << base));
        auto o = family_bea(gen_family(base, n, rng.next()));
        auto hs = all_halfspaces(o).sets;
        for (Mask s = 0; s <= oracle::full(n); ++s)
            for (Mask t = 0; t <= oracle::full(n); ++t)
                REQUIRE(oracle::induced(hs, s, t) == o.query(s, t));
    }
}

TEST_CASE("a Pasch violation never yields a bogus halfspace")
{
    // the 2-antichain under the full powerset on 3 points, with one minimal pair deleted
    auto base = family_bea(SetFamily{3, {0b001, 0b011, 0b110}}).to_table(10);
    auto pairs = base.table_pairs();
    int flagged = 0;
    for (auto & victim : pairs) {
        std::vector<SubsetPair> kept;
        for (auto & p : pairs)
            if (p != victim)
                kept.push_back(p);
        auto t = BeaOracle::table(3, kept);
        if (check_axiom(t, Axiom::i3).pass)
            continue;
        ++flagged;
        auto q = query_of(t);
        for (Mask a = 0; a < 8; ++a)
            for (Mask b = 0; b < 8; ++b) {
                if (t.query(a, b))
                    continue;
                try {
                    Mask u = separate(t, a, b);
                    CHECK(oracle::halfspace(q, 3, u));
                    CHECK(oracle::subset(a, u));
                    CHECK((u & b) == 0);
                }
                catch (const PaschFailure &) {
                }
            }
    }
    CHECK(flagged > 0);
}
