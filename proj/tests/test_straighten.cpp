#include "doctest.h"

#include "msset/lifting.hpp"
#include "msset/straighten.hpp"

using namespace msset;

namespace {

// A# over itself, as an object over A# x B+ with B the point.
MarkedOverBase base_over_itself(const BaseProduct& base) {
    SimplicialMap st = pairing(
        base.prod.prod, SimplicialMap::identity(base.a_sharp.space),
        SimplicialMap::constant(base.a_sharp.space, base.b_plus.space, SimplexId{0, 0}));
    return MarkedOverBase{base.a_sharp, MarkedMap{std::move(st), base.a_sharp, base.prod.space}};
}

MarkedOverBase point_over(const BaseProduct& base) {
    auto pt = standard_simplex(0);
    return MarkedOverBase{sharp(pt),
                          MarkedMap{SimplicialMap::identity(pt), sharp(pt), base.b_plus}};
}

} // namespace

TEST_CASE("mapping space out of a vertex is the fiber") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto W = base_over_itself(base);
    for (int a = 0; a <= 1; ++a) {
        // X = the vertex a over A#
        auto pt = standard_simplex(0);
        MarkedOverBase Xp{sharp(pt),
                          MarkedMap{SimplicialMap::constant(pt, base.a_sharp.space,
                                                            SimplexId{0, a}),
                                    sharp(pt), base.a_sharp}};
        auto M = map_space(Xp, W, base, 2);
        auto fib = fiber(W, base, a);
        REQUIRE(isomorphic_over(M.result, fib.over_b).has_value());
    }
}

TEST_CASE("mapping space out of the initial slice has one vertex") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto W = base_over_itself(base);
    MarkedOverBase slice0{sharp(base.slice_nerves[0].space),
                          MarkedMap{base.slice_proj[0], sharp(base.slice_nerves[0].space),
                                    base.a_sharp}};
    auto M = map_space(slice0, W, base, 2);
    CHECK(M.result.total.space->count(0) == 1);
}

TEST_CASE("mapping space adjunction by full enumeration") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto W = base_over_itself(base);
    MarkedOverBase slice0{sharp(base.slice_nerves[0].space),
                          MarkedMap{base.slice_proj[0], sharp(base.slice_nerves[0].space),
                                    base.a_sharp}};
    auto M = map_space(slice0, W, base, 3);

    auto d1 = standard_simplex(1);
    std::vector<MarkedSSet> ks = {flat(standard_simplex(0)), flat(d1), sharp(d1)};
    for (const auto& K : ks) {
        MarkedOverBase Kp{K, MarkedMap{SimplicialMap::constant(K.space, base.b_plus.space,
                                                               SimplexId{0, 0}),
                                       K, base.b_plus}};
        auto lhs = enumerate_maps_over(Kp, M.result);

        // right side: X x K -> W over the product base
        MarkedProduct XK = marked_product(slice0.total, K);
        SimplicialMap st = pairing(base.prod.prod,
                                   compose(slice0.structure.map, XK.prod.proj_left),
                                   compose(Kp.structure.map, XK.prod.proj_right));
        MarkedOverBase XKp{XK.space, MarkedMap{std::move(st), XK.space, base.prod.space}};
        auto rhs = enumerate_maps_over(XKp, W);
        CHECK(lhs.size() == rhs.size());
    }
}

TEST_CASE("atom functor values are hom-indexed coproducts") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto X = point_over(base);
    auto F = atom_functor(base, 0, X);
    CHECK(F.values[0].total.space->count(0) == 1); // Hom(0,0) = {id}
    CHECK(F.values[1].total.space->count(0) == 1); // Hom(0,1) = {the arrow}

    auto F1 = atom_functor(base, 1, X);
    CHECK(F1.values[0].total.space->dim() == -1); // Hom(1,0) empty
    CHECK(F1.values[1].total.space->count(0) == 1);

    auto term = make_base(discrete_category(1), sharp(standard_simplex(0)));
    auto G = atom_functor(term, 0, point_over(term));
    REQUIRE(isomorphic_over(G.values[0], point_over(term)).has_value());
}

TEST_CASE("lambda of an atom functor is the sliced product") {
    // the example law on small instances
    auto pt_b = sharp(standard_simplex(0));
    for (auto A : {chain_poset(1), chain_poset(2)}) {
        auto base = make_base(A, pt_b);
        auto d1 = standard_simplex(1);
        std::vector<MarkedOverBase> xs = {
            point_over(base),
            MarkedOverBase{flat(d1),
                           MarkedMap{SimplicialMap::constant(d1, base.b_plus.space,
                                                             SimplexId{0, 0}),
                                     flat(d1), base.b_plus}},
        };
        for (const auto& X : xs)
            for (int a = 0; a < A->objects(); ++a) {
                auto F = atom_functor(base, a, X);
                auto L = lambda_straighten(F, base);
                // expected: (a/A)# x X over the base
                MarkedProduct E = marked_product(sharp(base.slice_nerves[static_cast<size_t>(a)].space),
                                                 X.total);
                SimplicialMap st =
                    pairing(base.prod.prod,
                            compose(base.slice_proj[static_cast<size_t>(a)], E.prod.proj_left),
                            compose(X.structure.map, E.prod.proj_right));
                MarkedOverBase expected{E.space,
                                        MarkedMap{std::move(st), E.space, base.prod.space}};
                REQUIRE(isomorphic_over(L.result, expected).has_value());
            }
    }
}

TEST_CASE("lambda over the terminal category returns the value") {
    auto base = make_base(discrete_category(1), sharp(standard_simplex(0)));
    auto d1 = standard_simplex(1);
    MarkedOverBase X{sharp(d1),
                     MarkedMap{SimplicialMap::constant(d1, base.b_plus.space, SimplexId{0, 0}),
                               sharp(d1), base.b_plus}};
    auto F = atom_functor(base, 0, X);
    auto L = lambda_straighten(F, base);
    CHECK(L.result.total.space->count_vector() == X.total.space->count_vector());
    CHECK(L.result.total.marks == X.total.marks);
}

TEST_CASE("lambda of the initial atom over the walking arrow is the sharp interval") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto F = atom_functor(base, 0, point_over(base));
    auto L = lambda_straighten(F, base);
    CHECK(L.result.total.space->count_vector() == std::vector<int>{2, 1});
    CHECK(L.result.total.marks.size() == 1);
    // structure into A# x point is an isomorphism onto the base
    REQUIRE(is_isomorphic(L.result.total.space, base.a_sharp.space).has_value());
}

TEST_CASE("rho over the terminal category returns the value") {
    auto base = make_base(discrete_category(1), sharp(standard_simplex(0)));
    auto W = base_over_itself(base); // the point over the point
    auto R = rho_unstraighten(W, base, 2);
    CHECK(R.functor.values[0].total.space->count(0) == 1);
}

TEST_CASE("rho of the sharp base over the walking arrow has singleton values") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto W = base_over_itself(base);
    auto R = rho_unstraighten(W, base, 3);
    CHECK(R.functor.values[0].total.space->count(0) == 1);
    CHECK(R.functor.values[1].total.space->count(0) == 1);
}

TEST_CASE("unit and counit satisfy the triangle identity on atoms") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto F = atom_functor(base, 0, point_over(base));
    auto L = lambda_straighten(F, base);
    auto R = rho_unstraighten(L.result, base, 3);
    auto units = unit_components(F, L, R, base);
    for (const auto& u : units) u.validate();

    auto LR = lambda_straighten(R.functor, base);
    auto eps = counit(L.result, R, LR, base);
    eps.validate();

    // lambda(unit) then counit is the identity of lambda(F)
    auto lunit = lambda_of_transformation(L, LR, units);
    CHECK(same_images(compose(eps.map, lunit.map),
                      SimplicialMap::identity(L.result.total.space)));
}

TEST_CASE("counit fibers pass the marked trivial fibration check") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto W = base_over_itself(base);
    // hypothesis: W is a marked left fibration over the base
    auto hyp = is_fibration(FibKind::MarkedLeft, W.structure, 3);
    REQUIRE(hyp.verdict);
    auto R = rho_unstraighten(W, base, 3);
    for (int a = 0; a <= 1; ++a) {
        auto fib = fiber(W, base, a);
        auto cmp = fiber_comparison(R.spaces[static_cast<size_t>(a)], fib, base, a);
        auto rep = is_fibration(FibKind::MarkedTrivial, cmp, 3);
        CHECK(rep.verdict);
    }
}

TEST_CASE("fibers of the base and of sliced products") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto W = base_over_itself(base);
    // fiber of A# over itself at a is the point
    for (int a = 0; a <= 1; ++a) {
        auto fib = fiber(W, base, a);
        CHECK(fib.over_b.total.space->count_vector() == std::vector<int>{1});
    }
    // fiber of lambda(atom(a, X)) at a' is Hom(a, a') copies of X
    auto d1 = standard_simplex(1);
    MarkedOverBase X{sharp(d1),
                     MarkedMap{SimplicialMap::constant(d1, base.b_plus.space, SimplexId{0, 0}),
                               sharp(d1), base.b_plus}};
    auto F = atom_functor(base, 0, X);
    auto L = lambda_straighten(F, base);
    for (int aprime = 0; aprime <= 1; ++aprime) {
        auto fib = fiber(L.result, base, aprime);
        int hom = static_cast<int>(base.A->hom(0, aprime).size());
        CHECK(fib.over_b.total.space->count(0) == hom * X.total.space->count(0));
        CHECK(fib.over_b.total.space->count(1) == hom * X.total.space->count(1));
    }
}

TEST_CASE("adjunction: maps out of lambda match natural transformations") {
    auto base = make_base(chain_poset(1), sharp(standard_simplex(0)));
    auto Fat = atom_functor(base, 0, point_over(base));
    auto L = lambda_straighten(Fat, base);
    auto W = base_over_itself(base);
    auto R = rho_unstraighten(W, base, 3);

    auto lhs = enumerate_maps_over(L.result, W);
    auto rhs = enumerate_natural_transformations(Fat, R.functor);
    CHECK(lhs.size() == rhs.size());

    // the canonical adjunct of each transformation appears among the maps
    auto LRW = lambda_straighten(R.functor, base);
    auto eps = counit(W, R, LRW, base);
    int hits = 0;
    for (const auto& tau : rhs) {
        auto ltau = lambda_of_transformation(L, LRW, tau);
        SimplicialMap adj = compose(eps.map, ltau.map);
        for (const auto& f : lhs)
            if (same_images(f.map, adj)) {
                ++hits;
                break;
            }
    }
    CHECK(hits == static_cast<int>(rhs.size()));
}
