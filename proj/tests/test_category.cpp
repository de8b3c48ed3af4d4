#include "doctest.h"

#include "msset/category.hpp"

using namespace msset;

TEST_CASE("nerves of ordinals are standard simplices") {
    REQUIRE(is_isomorphic(nerve(chain_poset(1)).space, standard_simplex(1)).has_value());
    REQUIRE(is_isomorphic(nerve(chain_poset(2)).space, standard_simplex(2)).has_value());
    auto N3 = nerve(chain_poset(3));
    CHECK(N3.space->count_vector() == standard_simplex(3)->count_vector());
}

TEST_CASE("nerve of the walking isomorphism needs truncation and matches the built-in") {
    auto iso = walking_iso_category();
    CHECK_THROWS_AS(nerve(iso), CapExceeded);
    for (int d = 1; d <= 4; ++d) {
        auto N = nerve_truncated(iso, d);
        REQUIRE(is_isomorphic(N.space, walking_iso_truncation(d)).has_value());
    }
}

TEST_CASE("nerve simplices are composable identity-free chains") {
    // composable pairs of a poset category count the 2-simplices
    auto C = chain_poset(2);
    auto N = nerve(C);
    int pairs = 0;
    for (int f = 0; f < C->arrow_count(); ++f)
        for (int g = 0; g < C->arrow_count(); ++g)
            if (!C->is_identity(f) && !C->is_identity(g) && C->composable(g, f)) ++pairs;
    CHECK(N.space->count(2) == pairs);

    // maps Delta^2 -> N(C) are the composable pairs including identities
    int all_pairs = 0;
    for (int f = 0; f < C->arrow_count(); ++f)
        for (int g = 0; g < C->arrow_count(); ++g)
            if (C->composable(g, f)) ++all_pairs;
    CHECK(static_cast<int>(enumerate_maps(standard_simplex(2), N.space).size()) == all_pairs);
}

TEST_CASE("nerve preserves finite products up to isomorphism") {
    auto C = chain_poset(1);
    auto D = chain_poset(1);
    auto P = product_category(C, D);
    auto NP = nerve(P.cat);
    auto Q = product(nerve(C).space, nerve(D).space);
    REQUIRE(is_isomorphic(NP.space, Q.space).has_value());
}

TEST_CASE("slice categories under an object") {
    auto C = chain_poset(1);
    auto s0 = slice_under(C, 0);
    CHECK(s0.cat->objects() == 2);
    int non_id = 0;
    for (int a = 0; a < s0.cat->arrow_count(); ++a)
        if (!s0.cat->is_identity(a)) ++non_id;
    CHECK(non_id == 1);
    REQUIRE(is_isomorphic(nerve(s0.cat).space, standard_simplex(1)).has_value());

    auto s1 = slice_under(C, 1);
    CHECK(s1.cat->objects() == 1);
    REQUIRE(is_isomorphic(nerve(s1.cat).space, standard_simplex(0)).has_value());

    auto iso = walking_iso_category();
    auto si = slice_under(iso, 0);
    CHECK(si.cat->objects() == 2);
    for (int a = 0; a < si.cat->arrow_count(); ++a) CHECK(si.cat->is_iso(a));
    REQUIRE(is_isomorphic(nerve_truncated(si.cat, 3).space,
                          walking_iso_truncation(3)).has_value());
}

TEST_CASE("slice reindexing precomposes along an arrow") {
    auto C = chain_poset(2);
    auto s0 = slice_under(C, 0);
    auto s1 = slice_under(C, 1);
    int f01 = C->hom(0, 1).front();
    auto R = slice_reindex(s1, s0, C, f01);
    R.validate();
    CHECK(R.src->objects() == s1.cat->objects());
}

TEST_CASE("natural marking marks exactly the isomorphism edges") {
    auto flat_like = natural_marking(nerve(chain_poset(1)));
    CHECK(flat_like.marks.empty());

    auto idm = natural_marking(nerve_truncated(walking_iso_category(), 3));
    CHECK(idm.marks.size() == 2);

    auto P = product_category(chain_poset(1), walking_iso_category());
    auto NM = natural_marking(nerve_truncated(P.cat, 3));
    int isos = 0;
    for (int a = 0; a < P.cat->arrow_count(); ++a)
        if (!P.cat->is_identity(a) && P.cat->is_iso(a)) ++isos;
    CHECK(static_cast<int>(NM.marks.size()) == isos);
    CHECK(isos == 4); // (id, f) and (id, g) over each object of the poset
}

TEST_CASE("tau1 of a nerve recovers the category") {
    for (auto C : {chain_poset(1), chain_poset(2), discrete_category(3)}) {
        auto N = nerve(C);
        auto t = tau1(N.space);
        auto cmp = nerve_comparison(N, t);
        CHECK(is_cat_isomorphism(cmp));
        // filler-based construction agrees
        auto tf = tau1_fillers(N.space);
        auto cmp2 = nerve_comparison(N, tf);
        CHECK(is_cat_isomorphism(cmp2));
    }
}

TEST_CASE("tau1 of a truncated walking isomorphism is the walking isomorphism") {
    for (int d = 2; d <= 3; ++d) {
        auto t = tau1(walking_iso_truncation(d));
        CHECK(t.cat->objects() == 2);
        CHECK(t.cat->arrow_count() == 4);
        for (int a = 0; a < t.cat->arrow_count(); ++a) CHECK(t.cat->is_iso(a));
    }
    // depth 1 has no relations: arrows compose freely and never stabilize
    CHECK_THROWS_AS(tau1(walking_iso_truncation(1), 6, 100), CapExceeded);
}

TEST_CASE("tau1 of a horn is the free composable pair") {
    auto t = tau1(horn(2, 1));
    CHECK(t.cat->objects() == 3);
    // 0->1, 1->2 and the formal composite 0->2
    CHECK(t.cat->arrow_count() == 6);
    CHECK(t.cat->hom(0, 2).size() == 1);
    auto u = tau1(standard_simplex(2));
    auto F = tau1_functor(t, u, horn_inclusion(2, 1));
    CHECK(is_cat_equivalence(F).ok());
}

TEST_CASE("tau1 identifies parallel edges through two-simplices") {
    // two 2-simplices exhibiting e' = f and e'' = f force e' ~ e''
    auto d2 = standard_simplex(2);
    auto t = tau1(d2);
    CHECK(t.cat->hom(0, 2).size() == 1);
    CHECK(t.cat->hom(0, 1).size() == 1);
    // comparison against the poset
    auto cmp = nerve_comparison(nerve(chain_poset(2)), t);
    CHECK(is_cat_isomorphism(cmp));
}

TEST_CASE("cat equivalence witness") {
    auto iso = walking_iso_category();
    CHECK(is_cat_equivalence(cat_identity(iso)).ok());

    // {0} into the walking isomorphism: essentially surjective
    CatFunctor inc0{discrete_category(1), iso, {0}, {iso->identity(0)}};
    inc0.validate();
    CHECK(is_cat_equivalence(inc0).ok());

    // {0} into the walking arrow: not essentially surjective
    CatFunctor inc1{discrete_category(1), chain_poset(1), {0}, {chain_poset(1)->identity(0)}};
    CHECK(!is_cat_equivalence(inc1).ok());
}

TEST_CASE("functor enumeration") {
    auto iso = walking_iso_category();
    CHECK(enumerate_functors(iso, iso).size() == 4);
    CHECK(enumerate_functors(chain_poset(1), chain_poset(1)).size() == 3);
    CHECK(enumerate_functors(iso, chain_poset(1)).size() == 2);
}

TEST_CASE("grothendieck construction over the walking arrow") {
    // fiber [1] over both stages, identity step
    auto f = chain_poset(1);
    auto step = cat_identity(f);
    auto G = grothendieck({f, f}, {step});
    CHECK(G.total->objects() == 4);
    G.projection.validate();
    // total category of the identity diagram is the product [1] x [1]
    auto P = product_category(chain_poset(1), f);
    CHECK(G.total->arrow_count() == P.cat->arrow_count());

    auto fib = grothendieck_fibration({f, f}, {step});
    fib.projection.validate();
    // cocartesian edges: fiber component is an identity (posets have no isos)
    int vertical_isos = 0;
    for (const auto& a : fib.gr.arrows)
        if (fib.gr.fibers[static_cast<size_t>(a.j)]->is_iso(a.phi) &&
            !(a.i == a.j && fib.gr.fibers[static_cast<size_t>(a.j)]->is_identity(a.phi)))
            ++vertical_isos;
    CHECK(static_cast<int>(fib.total_marked.marks.size()) == vertical_isos);
}

#include "msset/lifting.hpp"

TEST_CASE("homotopy category requires a quasi-category and recovers nerves") {
    CHECK_THROWS_AS(homotopy_category(horn(2, 1)), NotAQuasiCategory);

    auto t = homotopy_category(standard_simplex(2));
    CHECK(is_cat_isomorphism(nerve_comparison(nerve(chain_poset(2)), t)));

    for (auto C : {chain_poset(1), discrete_category(2)}) {
        auto N = nerve(C);
        auto h = homotopy_category(N.space);
        CHECK(is_cat_isomorphism(nerve_comparison(N, h)));
    }
}

TEST_CASE("marked maps out of the sharp interval count isomorphisms") {
    // into a naturally marked nerve, the images are the marked or degenerate
    // edges: exactly the isomorphisms of the category
    for (auto C : {chain_poset(1), chain_poset(2)}) {
        auto NM = natural_marking(nerve(C));
        auto maps = enumerate_marked_maps(sharp(standard_simplex(1)), NM);
        int isos = 0;
        for (int a = 0; a < C->arrow_count(); ++a)
            if (C->is_iso(a)) ++isos;
        CHECK(static_cast<int>(maps.size()) == isos);
    }
    auto trunc = natural_marking(nerve_truncated(walking_iso_category(), 3));
    auto maps = enumerate_marked_maps(sharp(standard_simplex(1)), trunc);
    CHECK(maps.size() == 4); // two identities and the two inverse arrows
}
