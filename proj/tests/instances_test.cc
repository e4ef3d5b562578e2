#include <duality/catalog.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/hom.hh>
#include <duality/rng.hh>

#include "oracles.hh"

#include <doctest.h>

#include <set>

using namespace duality;

TEST_CASE("labelled poset counts match the relation filter")
{
    for (int n = 1; n <= 4; ++n) {
        auto posets = gen_posets_exhaustive(n);
        CHECK(static_cast<long>(posets.size()) == oracle::count_posets(n));
        std::set<std::vector<Tuple>> distinct;
        for (auto & p : posets)
            distinct.insert(p.relations[0]);
        CHECK(distinct.size() == posets.size());
    }
    CHECK(gen_posets_exhaustive(2).size() == 3);
    CHECK_THROWS_AS(gen_posets_exhaustive(5), Error);
}

TEST_CASE("random posets are partial orders")
{
    for (auto & p : gen_posets_random(6, 30, 9)) {
        auto up = poset_up_sets(p);
        for (int a = 0; a < 6; ++a) {
            CHECK(oracle::in(up[a], a));
            for (int b = 0; b < 6; ++b) {
                if (a != b)
                    CHECK_FALSE((oracle::in(up[a], b) && oracle::in(up[b], a)));
                if (oracle::in(up[a], b))
                    CHECK(oracle::subset(up[b], up[a]));
            }
        }
    }
}

TEST_CASE("generators are deterministic")
{
    auto a = gen_posets_random(5, 10, 42), b = gen_posets_random(5, 10, 42);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].relations == b[i].relations);
    CHECK(gen_family(5, 7, 3).sets == gen_family(5, 7, 3).sets);
}

TEST_CASE("semilattices are idempotent, commutative and associative")
{
    auto check = [](const FiniteStructure & s) {
        int n = s.size;
        std::vector<std::vector<int>> m(n, std::vector<int>(n, -1));
        for (auto & t : s.relation("meet"))
            m[t[0]][t[1]] = t[2];
        for (int a = 0; a < n; ++a) {
            REQUIRE(m[a][a] == a);
            for (int b = 0; b < n; ++b) {
                REQUIRE(m[a][b] == m[b][a]);
                for (int c = 0; c < n; ++c)
                    REQUIRE(m[m[a][b]][c] == m[a][m[b][c]]);
            }
        }
    };
    for (int n = 1; n <= 4; ++n)
        for (auto & s : gen_semilattices_exhaustive(n))
            check(s);
    for (auto & s : gen_semilattices_random(6, 30, 4))
        check(s);
    check(semilattice_from_family({0b01, 0b10, 0b00}));
    CHECK(gen_semilattices_exhaustive(3).size() == 9);
}

TEST_CASE("down-set lattices")
{
    auto l = downset_lattice(antichain_poset(2));
    CHECK(l.size == 4);
    CHECK(is_complemented_lattice(l));
    CHECK(is_distributive(l));
    CHECK_FALSE(is_complemented_lattice(downset_lattice(chain_poset(2))));
    for (auto & d : gen_distributive_lattices(3, 10, 5)) {
        CHECK(validate(d).valid());
        CHECK(is_distributive(d));
    }
}

TEST_CASE("minimal betweenness convex sets")
{
    auto s0 = catalog_template("betweenness_s0");
    for (int n = 3; n <= 5; ++n) {
        auto b = minimal_betweenness(n);
        auto homs = oracle::homs(b, s0.structure);
        CHECK(static_cast<int>(homs.size()) == n + 2);
        CHECK(enumerate_homs(b, s0).homs.sets == homs);
        CHECK(oracle::betweenness_axioms(b));
    }
}

TEST_CASE("betweenness axioms against the literal check")
{
    for (auto & b : gen_betweenness_random(4, 60, 13))
        CHECK(betweenness_axioms_hold(b) == oracle::betweenness_axioms(b));
}

TEST_CASE("separated generator output")
{
    for (auto & name : catalog_names()) {
        auto d = catalog_template(name);
        for (int i = 0; i < 10; ++i) {
            auto x = gen_separated(d, 5, i);
            CHECK(validate(x).valid());
            CHECK(x.size <= 5);
            CHECK_MESSAGE(is_separated(x, d).separated, name);
        }
    }
}

TEST_CASE("families")
{
    auto f = gen_family(3, 8, 1);
    CHECK(f.size() == 8);
    CHECK(validate(f).valid());
    CHECK_THROWS(gen_family(2, 5, 1));
}
