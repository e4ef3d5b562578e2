#include <duality/catalog.hh>
#include <duality/errors.hh>
#include <duality/generators.hh>
#include <duality/hom.hh>
#include <duality/rng.hh>

#include "oracles.hh"

#include <doctest.h>

using namespace duality;

TEST_CASE("homs of small posets into the order template")
{
    auto order = catalog_template("order");
    CHECK(enumerate_homs(chain_poset(2), order).homs.sets == std::vector<Mask>{0b00, 0b10, 0b11});
    CHECK(enumerate_homs(antichain_poset(2), order).homs.sets == std::vector<Mask>{0, 1, 2, 3});
}

TEST_CASE("prime filters of the 3-chain lattice")
{
    auto l = downset_lattice(chain_poset(2));
    REQUIRE(l.size == 3);
    // elements in mask order: ∅ = bottom, {0} = a, {0,1} = top
    auto homs = enumerate_homs(l, catalog_template("bounded_lattice"));
    CHECK(homs.homs.sets == std::vector<Mask>{0b100, 0b110});
    CHECK(homs.homs.sets == oracle::homs(l, catalog_template("bounded_lattice").structure));
}

TEST_CASE("signature mismatch")
{
    CHECK_THROWS_AS(enumerate_homs(chain_poset(2), catalog_template("semilattice")), Error);
    try {
        enumerate_homs(chain_poset(2), catalog_template("semilattice"));
    }
    catch (const Error & e) {
        CHECK(e.kind() == ErrorKind::SignatureMismatch);
    }
}

TEST_CASE("backtracking agrees with the test oracle on random structures")
{
    Rng rng(99);
    auto names = catalog_names();
    for (int i = 0; i < 300; ++i) {
        auto d = catalog_template(names[rng.below(names.size())]);
        int n = rng.between(1, 6);
        auto x = random_structure(d.structure.signature, n, rng.next());
        x.constants.clear();
        for (std::size_t k = 0; k < x.signature.constants.size(); ++k)
            x.constants.push_back(static_cast<int>(rng.below(n)));
        auto got = enumerate_homs(x, d);
        CHECK_MESSAGE(got.homs.sets == oracle::homs(x, d.structure), d.name << " n=" << n);
        auto brute = enumerate_homs(x, d, {}, HomMethod::BruteForce);
        CHECK(got.homs.sets == brute.homs.sets);
    }
}

TEST_CASE("hom cap and brute-force cap")
{
    Caps caps;
    caps.homs = 3;
    CHECK_THROWS_AS(enumerate_homs(bare_set(3), catalog_template("pure_set"), caps), Error);
    caps = {};
    caps.powerset = 4;
    CHECK_THROWS_AS(enumerate_homs(bare_set(5), catalog_template("pure_set"), caps, HomMethod::BruteForce), Error);
}

TEST_CASE("separation")
{
    auto order = catalog_template("order");
    auto chain = is_separated(chain_poset(2), order);
    CHECK(chain.separated);
    CHECK(chain.injective);

    // point 2 duplicates point 1 in every relation
    FiniteStructure dup;
    dup.signature = order_signature();
    dup.size = 3;
    dup.relations = {{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}}};
    auto r = is_separated(dup, order);
    CHECK_FALSE(r.separated);
    CHECK_FALSE(r.injective);
    REQUIRE(r.collisions.size() == 1);
    CHECK(r.collisions.front() == std::pair{1, 2});

    // the 2-antichain with no tuples at all is separated, but (0,0) ∉ ≤ is never refuted
    FiniteStructure bare;
    bare.signature = order_signature();
    bare.size = 2;
    bare.relations = {{}};
    auto b = is_separated(bare, order);
    CHECK_FALSE(b.separated);
    CHECK(b.relation_witnesses.front().tuple == Tuple{0, 0});
}

TEST_CASE("planar hull structure against the hull template")
{
    auto pts = planar_nonnormal_points();
    CHECK(is_separated(planar_hull_structure(pts, 2), convexity_template(2)).separated);
    auto full = is_separated(planar_hull_structure(pts, 4), convexity_template(4));
    CHECK(full.separated);
}

TEST_CASE("homomorphism check by mask")
{
    auto order = catalog_template("order");
    CHECK(is_homomorphism(chain_poset(2), order, 0b10));
    CHECK_FALSE(is_homomorphism(chain_poset(2), order, 0b01));
}
