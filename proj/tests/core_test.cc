#include <duality/catalog.hh>
#include <duality/caps.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/structure.hh>

#include "oracles.hh"

#include <doctest.h>

#include <algorithm>

using namespace duality;

namespace
{
    auto meet_semilattice_2() -> FiniteStructure
    {
        FiniteStructure s;
        s.signature = semilattice_signature(false, false);
        s.size = 2;
        s.relations = {{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}}};
        return s;
    }

    auto mentions(const ValidationReport & r, const std::string & text) -> bool
    {
        return std::any_of(r.violations.begin(), r.violations.end(), [&](auto & v) { return v.find(text) != std::string::npos; });
    }
}

TEST_CASE("validate accepts the order template")
{
    CHECK(validate(catalog_template("order").structure).valid());
    for (auto & name : catalog_names())
        CHECK_MESSAGE(validate(catalog_template(name).structure).valid(), name);
}

TEST_CASE("validate reports missing and out-of-range tuples")
{
    auto s = meet_semilattice_2();
    std::erase(s.relations[0], Tuple{1, 1, 1});
    auto r = validate(s);
    CHECK_FALSE(r.valid());
    CHECK(mentions(r, "meet not total at (1,1)"));

    FiniteStructure o;
    o.signature = order_signature();
    o.size = 2;
    o.relations = {{{0, 3}}};
    CHECK(mentions(validate(o), "index out of range"));

    auto twice = meet_semilattice_2();
    twice.relations[0].push_back({1, 1, 0});
    CHECK_FALSE(validate(twice).valid());

    FiniteStructure empty;
    empty.size = 0;
    CHECK_FALSE(validate(empty).valid());
}

TEST_CASE("validate is idempotent")
{
    auto s = meet_semilattice_2();
    std::erase(s.relations[0], Tuple{0, 1, 0});
    auto a = validate(s), b = validate(s);
    CHECK(a.violations == b.violations);
}

TEST_CASE("substructure")
{
    auto one = substructure(catalog_template("order").structure, 0b10);
    CHECK(one.size == 1);
    CHECK(one.relations[0] == std::vector<Tuple>{{0, 0}});

    auto low = substructure(meet_semilattice_2(), 0b01);
    CHECK(low.size == 1);
    CHECK(validate(low).valid());

    auto lattice = catalog_template("bounded_lattice").structure;
    CHECK_THROWS_AS(substructure(lattice, 0b01), Error);
    try {
        substructure(lattice, 0b01);
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::ConstantOutside);
    }

    // {0, 2} in the 3-chain lattice misses the join of nothing, but {1,2} drops 0
    auto chain = downset_lattice(chain_poset(2));
    REQUIRE(chain.size == 3);
    CHECK_THROWS(substructure(chain, 0b110));
}

TEST_CASE("substructure catches non-closed operations")
{
    FiniteStructure s;
    s.signature = semilattice_signature(false, false);
    s.size = 3;
    // a ∧ b = ⊥ with ⊥ = 2
    s.relations = {{{0, 0, 0}, {0, 1, 2}, {0, 2, 2}, {1, 0, 2}, {1, 1, 1}, {1, 2, 2}, {2, 0, 2}, {2, 1, 2}, {2, 2, 2}}};
    REQUIRE(validate(s).valid());
    try {
        substructure(s, 0b011);
        FAIL("expected FunctionNotClosed");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::FunctionNotClosed);
    }
}

TEST_CASE("transpose examples")
{
    auto t = transpose(SetFamily{2, {0b01, 0b10}});
    CHECK(t.family.base == 2);
    CHECK(t.family.sets == std::vector<Mask>{0b01, 0b10});

    auto u = transpose(SetFamily{2, {0b00, 0b01, 0b11}});
    CHECK(u.family.base == 3);
    CHECK(u.family.sets == std::vector<Mask>{0b110, 0b100});

    auto v = transpose(SetFamily{1, {0b0}});
    CHECK(v.family.base == 1);
    CHECK(v.family.sets == std::vector<Mask>{0});
}

TEST_CASE("transpose twice recovers separated families")
{
    for (int base = 1; base <= 4; ++base)
        for (Mask choice = 1; choice < (Mask{1} << (1 << base)); choice += 7) {
            SetFamily f{base, {}};
            for (Mask m = 0; m <= oracle::full(base); ++m)
                if (oracle::in(choice, static_cast<int>(m)))
                    f.sets.push_back(m);
            auto once = transpose(f);
            // only families with pairwise-distinct point rows are invertible
            if (once.family.size() != base)
                continue;
            auto twice = transpose(once.family);
            auto a = f.sets, b = twice.family.sets;
            CHECK(a.size() == b.size());
            // twice[i] is the row of member i read back over the points
            for (std::size_t i = 0; i < a.size(); ++i) {
                Mask expect = 0;
                for (int x = 0; x < base; ++x)
                    if (oracle::in(a[twice.collapse[i]], x))
                        expect |= Mask{1} << once.collapse[x];
                CHECK(b[i] == expect);
            }
        }
}

TEST_CASE("set family validation")
{
    CHECK(validate(SetFamily{2, {0b01, 0b10}}).valid());
    CHECK_FALSE(validate(SetFamily{2, {0b01, 0b01}}).valid());
    CHECK_FALSE(validate(SetFamily{2, {0b100}}).valid());
    CHECK_FALSE(validate(SetFamily{2, {0b01}, true, false}).valid());
    CHECK(validate(SetFamily{2, {0b00, 0b11}, true, true}).valid());
}

TEST_CASE("template flags follow the constants")
{
    auto l = catalog_template("bounded_lattice");
    CHECK(l.has_zero);
    CHECK(l.has_one);
    auto s0 = catalog_template("semilattice0");
    CHECK(s0.has_zero);
    CHECK_FALSE(s0.has_one);
    CHECK_FALSE(catalog_template("order").has_zero);
    CHECK_THROWS(catalog_template("no_such_template"));
}

TEST_CASE("caps parse and reject")
{
    Caps c;
    c.apply("homs=100,normal=5");
    CHECK(c.homs == 100);
    CHECK(c.normal == 5);
    CHECK_THROWS_AS(c.apply("nonsense=1"), Error);
    CHECK_THROWS_AS(c.apply("homs=0"), Error);
    CHECK_THROWS_AS(c.apply("homs"), Error);
}

TEST_CASE("catalog relations match their definitions")
{
    auto beta = catalog_template("betweenness_s0").structure.relations[0];
    auto nat = catalog_template("natural_betweenness").structure.relations[0];
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                bool b = ! (x == 1 && z == 1) || y == 1;
                CHECK((std::find(beta.begin(), beta.end(), Tuple{x, y, z}) != beta.end()) == b);
                bool n = y == x || y == z;
                CHECK((std::find(nat.begin(), nat.end(), Tuple{x, y, z}) != nat.end()) == n);
            }
}
