#include <duality/catalog.hh>
#include <duality/dual.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/rng.hh>

#include "oracles.hh"

#include <doctest.h>

#include <algorithm>

using namespace duality;

namespace
{
    auto chain_lattice(int points) -> FiniteStructure
    {
        return downset_lattice(chain_poset(points));
    }
}

TEST_CASE("dual of the 2-chain poset is the 3-chain lattice")
{
    auto d = dual(chain_poset(2), catalog_template("order"), catalog_template("bounded_lattice"));
    CHECK(d.carrier.homs.sets == std::vector<Mask>{0b00, 0b10, 0b11});
    auto & meet = d.induced.relation("meet");
    for (auto & t : meet)
        CHECK(d.carrier.homs.sets[t[2]] == (d.carrier.homs.sets[t[0]] & d.carrier.homs.sets[t[1]]));
    CHECK(d.induced.constant("zero") == 0);
    CHECK(d.induced.constant("one") == 2);
}

TEST_CASE("dual of the 2-antichain under equality is the 4-element Boolean algebra")
{
    auto d = dual(bare_set(2), catalog_template("pure_set"), catalog_template("boolean_algebra"));
    CHECK(d.carrier.homs.size() == 4);
    for (auto & t : d.induced.relation("neg"))
        CHECK(d.carrier.homs.sets[t[1]] == (0b11 & ~d.carrier.homs.sets[t[0]]));
}

TEST_CASE("dual of the 3-chain lattice is a 2-chain of prime filters")
{
    auto d = dual(chain_lattice(2), catalog_template("bounded_lattice"), catalog_template("order"));
    REQUIRE(d.induced.size == 2);
    CHECK(d.induced.relation("le") == std::vector<Tuple>{{0, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("S1 violations are reported")
{
    // the final segments of the 2-chain are not closed under complement
    try {
        dual(chain_poset(2), catalog_template("order"), catalog_template("boolean_algebra"));
        FAIL("expected S1Violation");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::S1Violation);
    }
}

TEST_CASE("negative control: bounded lattices against bare sets")
{
    auto r = bidual_and_evaluate(chain_lattice(2), catalog_template("bounded_lattice"), catalog_template("pure_set"));
    CHECK(r.size_x == 3);
    CHECK(r.size_xstar == 2);
    CHECK(r.size_xbidual == 4);
    CHECK(r.injective);
    CHECK_FALSE(r.surjective);
    CHECK(r.unrepresented.size() == 1);
}

TEST_CASE("evaluations of one-point structures")
{
    auto r = bidual_and_evaluate(chain_poset(1), catalog_template("order"), catalog_template("bounded_lattice"));
    CHECK(r.reflexive());
    CHECK(r.size_xbidual == 1);
}

TEST_CASE("HMS example: the 3-element semilattice")
{
    // {a, b, ⊥} as the meet-closed family {{0}, {1}, ∅}
    auto x = semilattice_from_family({0b01, 0b10, 0b00});
    auto d = dual(x, catalog_template("semilattice"), catalog_template("semilattice01"));
    CHECK(d.carrier.homs.size() == 4);
    auto r = bidual_and_evaluate(x, catalog_template("semilattice"), catalog_template("semilattice01"));
    CHECK(r.reflexive());
}

TEST_CASE("ultimate partners")
{
    CHECK(ultimate_partner(false, false) == UltimateTemplate{true, true});
    CHECK(ultimate_partner(true, false) == UltimateTemplate{true, false});
    CHECK(ultimate_partner(false, true) == UltimateTemplate{false, true});
    CHECK(ultimate_partner(true, true) == UltimateTemplate{false, false});
}

TEST_CASE("ultimate dual of the 2-chain")
{
    auto o = BeaOracle::induced(2, {0b00, 0b10, 0b11});
    auto star = ultimate_dual(o);
    CHECK(star.carrier.sets == std::vector<Mask>{0b00, 0b10, 0b11});
    REQUIRE(star.oracle.zero());
    REQUIRE(star.oracle.one());
    // S ⋈ T iff ⋂S ⊆ ⋃T over the original points
    for (Mask s = 0; s < 8; ++s)
        for (Mask t = 0; t < 8; ++t)
            CHECK(star.oracle.query(s, t) == oracle::family_relation(star.carrier.sets, 2, s, t));

    auto point = ultimate_dual(BeaOracle::induced(1, {0b0, 0b1}));
    CHECK(point.carrier.sets == std::vector<Mask>{0, 1});
    CHECK(ultimate_reflexivity(BeaOracle::induced(1, {0b0, 0b1})).reflexive());
}

TEST_CASE("ultimate reflexivity on family oracles")
{
    Rng rng(8);
    for (int i = 0; i < 40; ++i) {
        int n = rng.between(1, 5);
        int base = rng.between(3, 5);
        auto r = ultimate_reflexivity(family_bea(gen_family(base, n, rng.next())));
        CHECK(r.reflexive());
    }
}

TEST_CASE("semi-dual pairs")
{
    auto pure = catalog_template("pure_set");
    auto lattice = catalog_template("bounded_lattice");
    std::vector<FiniteStructure> sets{bare_set(1), bare_set(2), bare_set(3)};
    CHECK(check_semi_dual(pure, Template{lattice}, sets).pass);

    std::vector<FiniteStructure> lattices{chain_lattice(1), chain_lattice(2)};
    auto bad = check_semi_dual(lattice, Template{pure}, lattices);
    CHECK_FALSE(bad.pass);
    CHECK(bad.cases[0].s2);
    CHECK_FALSE(bad.cases[1].s2);

    auto order = catalog_template("order");
    std::vector<FiniteStructure> unseparated{FiniteStructure{order_signature(), 2, {{}}, {}}};
    CHECK_THROWS_AS(check_semi_dual(order, Template{lattice}, unseparated), Error);
}

TEST_CASE("ultimate semi-duality over every catalog template")
{
    for (auto & name : catalog_names()) {
        auto d = catalog_template(name);
        std::vector<FiniteStructure> xs;
        for (int i = 0; i < 15; ++i)
            xs.push_back(gen_separated(d, 4, 1000 + i));
        auto r = check_semi_dual(d, Template{ultimate_partner(d)}, xs);
        CHECK_MESSAGE(r.pass, name);
    }
}

TEST_CASE("dual of a surjection")
{
    auto order = catalog_template("order");
    auto lattice = catalog_template("bounded_lattice");
    auto s = dual_of_surjection({0, 0}, chain_poset(2), chain_poset(1), order, Template{lattice});
    // the two maps on the point become ∅ and the full set among {∅, {1}, {0,1}}
    CHECK(s.dual_map == std::vector<int>{0, 2});
    CHECK(s.injective);
    CHECK(s.embedding);

    auto id = dual_of_surjection({0, 1}, chain_poset(2), chain_poset(2), order, Template{lattice});
    CHECK(id.dual_map == std::vector<int>{0, 1, 2});

    try {
        dual_of_surjection({0, 0}, chain_poset(2), chain_poset(2), order, Template{lattice});
        FAIL("expected NotSurjective");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::NotSurjective);
    }
    try {
        dual_of_surjection({1, 0}, chain_poset(2), chain_poset(2), order, Template{lattice});
        FAIL("expected NotHomomorphism");
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::NotHomomorphism);
    }
}

TEST_CASE("random surjections dualise to embeddings")
{
    Rng rng(77);
    auto order = catalog_template("order");
    auto lattice = catalog_template("bounded_lattice");
    for (int i = 0; i < 40; ++i) {
        int n = rng.between(1, 5);
        auto x = antichain_poset(n);
        int m = rng.between(1, n);
        std::vector<int> f(n);
        for (int k = 0; k < n; ++k)
            f[k] = k < m ? k : static_cast<int>(rng.below(m));
        rng.shuffle(f);
        auto y = antichain_poset(m);
        auto s = dual_of_surjection(f, x, y, order, Template{lattice});
        CHECK(s.injective);
        CHECK(s.embedding);
    }
}

TEST_CASE("hom sets equal halfspace sets")
{
    auto order = catalog_template("order");
    for (int n = 1; n <= 4; ++n)
        for (auto & p : gen_posets_exhaustive(n))
            REQUIRE(hom_equivalence(p, order).equal);
    auto s0 = catalog_template("betweenness_s0");
    auto e = hom_equivalence(minimal_betweenness(4), s0);
    CHECK(e.equal);
    CHECK(e.homs.size() == 6);
}

TEST_CASE("bidual size is invariant under relabelling")
{
    auto order = catalog_template("order");
    auto lattice = catalog_template("bounded_lattice");
    Rng rng(3);
    for (auto & p : gen_posets_exhaustive(3)) {
        std::vector<int> perm{0, 1, 2};
        rng.shuffle(perm);
        auto a = bidual_and_evaluate(p, order, lattice);
        auto b = bidual_and_evaluate(relabel(p, perm), order, lattice);
        CHECK(a.size_xstar == b.size_xstar);
        CHECK(a.size_xbidual == b.size_xbidual);
    }
}

TEST_CASE("bidual caps")
{
    Caps caps;
    caps.bidual_source = 2;
    CHECK_THROWS_AS(bidual_and_evaluate(chain_poset(3), catalog_template("order"), catalog_template("bounded_lattice"), caps), Error);
}

TEST_CASE("ultimate biduals against brute-force halfspaces")
{
    Rng rng(2718);
    auto names = catalog_names();
    for (int i = 0; i < 120; ++i) {
        auto d = catalog_template(names[i % names.size()]);
        auto x = gen_separated(d, 4, rng.next());
        auto homs = oracle::homs(x, d.structure);
        int m = static_cast<int>(homs.size());
        auto e = ultimate_partner(d);

        // dual relation on hom indices, constants at the constant maps
        std::optional<int> zero, one;
        for (int k = 0; k < m; ++k) {
            if (e.zero && homs[k] == 0)
                zero = k;
            if (e.one && homs[k] == oracle::full(x.size))
                one = k;
        }
        auto q = [&](Mask s, Mask t) { return oracle::family_relation(homs, x.size, s, t); };
        std::vector<Mask> bidual;
        for (auto u : oracle::halfspaces(q, m))
            if ((! zero || ! oracle::in(u, *zero)) && (! one || oracle::in(u, *one)))
                bidual.push_back(u);

        std::vector<Mask> evaluations;
        for (int p = 0; p < x.size; ++p) {
            Mask ev = 0;
            for (int k = 0; k < m; ++k)
                if (oracle::in(homs[k], p))
                    ev |= Mask{1} << k;
            evaluations.push_back(ev);
        }
        std::sort(evaluations.begin(), evaluations.end());
        evaluations.erase(std::unique(evaluations.begin(), evaluations.end()), evaluations.end());
        CHECK_MESSAGE(bidual == evaluations, d.name << " #" << i);

        auto r = bidual_and_evaluate(x, d, e);
        CHECK(r.reflexive());
        CHECK(r.size_xbidual == static_cast<int>(bidual.size()));
    }
}

TEST_CASE("hom sets against brute-force halfspaces of the induced relation")
{
    Rng rng(1618);
    auto names = catalog_names();
    for (int i = 0; i < 120; ++i) {
        auto d = catalog_template(names[i % names.size()]);
        auto x = gen_separated(d, 4, rng.next());
        auto homs = oracle::homs(x, d.structure);
        auto q = [&](Mask s, Mask t) { return oracle::induced(homs, s, t); };
        CHECK_MESSAGE(oracle::halfspaces(q, x.size) == homs, d.name);
        CHECK(hom_equivalence(x, d).equal);
    }
}
