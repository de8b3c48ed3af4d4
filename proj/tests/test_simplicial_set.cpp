#include "doctest.h"

#include "msset/colimits.hpp"
#include "msset/simplicial_set.hpp"
#include "oracles.hpp"

using namespace msset;

TEST_CASE("standard cells have the expected nondegenerate counts") {
    CHECK(standard_simplex(2)->count_vector() == std::vector<int>{3, 3, 1});
    CHECK(horn(2, 1)->count_vector() == std::vector<int>{3, 2});
    // oracle: faces of standard(3) are its proper vertex subsets
    std::vector<int> expected;
    for (int d = 0; d < 3; ++d)
        expected.push_back(static_cast<int>(subsets_of_size(3, d + 1).size()));
    CHECK(boundary(3)->count_vector() == expected);
    CHECK(expected == std::vector<int>{4, 6, 4});
    CHECK(boundary(0)->dim() == -1);
    CHECK_THROWS_AS(horn(0, 0), InvalidParameter);
    CHECK_THROWS_AS(horn(2, 3), InvalidParameter);
}

TEST_CASE("face and degeneracy calculus satisfies the simplicial identities") {
    auto X = standard_simplex(3);
    for (int n = 0; n <= 5; ++n) {
        for (const auto& r : X->level(n)) {
            // normal form: words strictly decreasing, dimension consistent
            for (size_t t = 0; t + 1 < r.word.size(); ++t) CHECK(r.word[t] > r.word[t + 1]);
            CHECK(r.dim() == n);
            for (int j = 0; j <= n; ++j) {
                SimplexRef s = X->degeneracy(r, j);
                CHECK(X->face(s, j) == r);
                CHECK(X->face(s, j + 1) == r);
                for (int i = 0; i <= j && n > 0; ++i) {
                    // s_i s_j = s_{j+1} s_i for i <= j
                    CHECK(X->degeneracy(X->degeneracy(r, j), i) ==
                          X->degeneracy(X->degeneracy(r, i), j + 1));
                }
            }
            if (n >= 2)
                for (int j = 1; j <= n; ++j)
                    for (int i = 0; i < j; ++i)
                        CHECK(X->face(X->face(r, j), i) == X->face(X->face(r, i), j - 1));
        }
        // identity operator acts trivially (normalization idempotence)
        std::vector<int> id_op;
        for (int t = 0; t <= n; ++t) id_op.push_back(t);
        for (const auto& r : X->level(n)) CHECK(X->act(r, id_op) == r);
    }
    // distinct normal forms denote distinct simplices
    auto lev = X->level(4);
    for (size_t i = 0; i < lev.size(); ++i)
        for (size_t j = i + 1; j < lev.size(); ++j) CHECK(lev[i] != lev[j]);
}

TEST_CASE("level sizes count all simplices including degenerate ones") {
    auto X = standard_simplex(1);
    // |Delta^1_n| = number of monotone maps [n] -> [1] = n + 2
    for (int n = 0; n <= 6; ++n) {
        CHECK(X->level_size(n) == n + 2);
        CHECK(static_cast<int>(X->level(n).size()) == X->level_size(n));
    }
}

TEST_CASE("product of standard simplices matches the grid chain oracle") {
    auto d1 = standard_simplex(1);
    auto d2 = standard_simplex(2);
    auto P = product(d1, d1);
    std::vector<int> expected;
    for (int p = 0;; ++p) {
        int c = oracle::grid_chain_count(1, 1, p);
        if (c == 0) break;
        expected.push_back(c);
    }
    CHECK(P.space->count_vector() == expected);
    CHECK(expected == std::vector<int>{4, 5, 2});

    auto Q = product(d2, d1);
    CHECK(Q.space->count(3) == oracle::grid_chain_count(2, 1, 3));
    CHECK(Q.space->count(3) == 3);
    Q.space->validate();
    Q.proj_left.validate();
    Q.proj_right.validate();

    // levelwise cardinality |(X x Y)_n| = |X_n| * |Y_n|
    for (int n = 0; n <= 5; ++n)
        CHECK(Q.space->level_size(n) == d2->level_size(n) * d1->level_size(n));
}

TEST_CASE("product with a point is the identity-like projection") {
    auto d1 = standard_simplex(1);
    auto pt = standard_simplex(0);
    auto P = product(d1, pt);
    REQUIRE(is_isomorphic(P.space, d1).has_value());
    CHECK(P.proj_left.is_mono());
}

TEST_CASE("product satisfies its universal property against enumerated cones") {
    auto d1 = standard_simplex(1);
    auto P = product(d1, d1);
    for (auto Z : {standard_simplex(0), standard_simplex(1), horn(2, 1)}) {
        auto into_p = enumerate_maps(Z, P.space);
        auto us = enumerate_maps(Z, d1);
        CHECK(into_p.size() == us.size() * us.size());
        // pairing reproduces every map
        for (const auto& u : us)
            for (const auto& v : us) {
                SimplicialMap w = pairing(P, u, v);
                w.validate();
                CHECK(same_images(compose(P.proj_left, w), u));
                CHECK(same_images(compose(P.proj_right, w), v));
            }
    }
}

TEST_CASE("pullback computes levelwise fiber products") {
    auto d1 = standard_simplex(1);
    auto P = product(d1, d1);
    // fiber of the first projection over vertex 0
    auto v0 = SimplicialMap::constant(standard_simplex(0), d1, SimplexId{0, 0});
    auto PB = pullback(P.proj_left, v0);
    REQUIRE(is_isomorphic(PB.space, d1).has_value());

    auto id = SimplicialMap::identity(standard_simplex(2));
    auto PB2 = pullback(id, id);
    REQUIRE(is_isomorphic(PB2.space, standard_simplex(2)).has_value());

    // universal property
    auto i = horn_inclusion(2, 1);
    auto q = SimplicialMap::identity(standard_simplex(2));
    auto PB3 = pullback(i, q);
    for (auto Z : {standard_simplex(0), standard_simplex(1)}) {
        long long commuting = 0;
        for (const auto& u : enumerate_maps(Z, i.source()))
            for (const auto& v : enumerate_maps(Z, q.source()))
                if (same_images(compose(i, u), compose(q, v))) ++commuting;
        CHECK(static_cast<long long>(enumerate_maps(Z, PB3.space).size()) == commuting);
    }
}

TEST_CASE("pushout glues along a monomorphism") {
    auto pt = standard_simplex(0);
    auto d1 = standard_simplex(1);
    // wedge of two edges: glue vertex 1 of one edge to vertex 0 of another
    auto at1 = SimplicialMap::constant(pt, d1, SimplexId{0, 1});
    auto at0 = SimplicialMap::constant(pt, d1, SimplexId{0, 0});
    auto W = pushout(at1, at0);
    CHECK(W.space->count_vector() == std::vector<int>{3, 2});
    CHECK(W.from_x.is_mono());
    W.from_b.validate();

    // pushout along an identity is the other leg's target
    auto self = pushout(SimplicialMap::identity(pt), at0);
    REQUIRE(is_isomorphic(self.space, d1).has_value());
    CHECK(self.from_x.is_identity_like());
}

TEST_CASE("pushout of a horn attachment adds one edge and one cell") {
    auto inc = horn_inclusion(2, 1);
    auto X = inc.source(); // attach along the horn itself
    auto P = pushout(inc, SimplicialMap::identity(X));
    CHECK(P.space->count(0) == X->count(0));
    CHECK(P.space->count(1) == X->count(1) + 1);
    CHECK(P.space->count(2) == 1);
    P.space->validate();
    // cocone universal property
    for (auto Z : {standard_simplex(1), standard_simplex(2)}) {
        long long cocones = 0;
        for (const auto& u : enumerate_maps(X, Z))
            for (const auto& v : enumerate_maps(inc.target(), Z))
                if (same_images(u, compose(v, inc))) ++cocones;
        CHECK(static_cast<long long>(enumerate_maps(P.space, Z).size()) == cocones);
    }
}

TEST_CASE("coequalizer of equal maps is the target") {
    auto d1 = standard_simplex(1);
    auto f = SimplicialMap::identity(d1);
    auto C = coequalizer(f, f);
    REQUIRE(is_isomorphic(C.space, d1).has_value());
}

TEST_CASE("coequalizer of the two endpoints of an edge is a circle") {
    auto pt = standard_simplex(0);
    auto d1 = standard_simplex(1);
    auto v0 = SimplicialMap::constant(pt, d1, SimplexId{0, 0});
    auto v1 = SimplicialMap::constant(pt, d1, SimplexId{0, 1});
    auto C = coequalizer(v0, v1);
    CHECK(C.space->count_vector() == std::vector<int>{1, 1});
    C.space->validate();
    C.quotient.validate();
    // quotient map is levelwise surjective at the presented levels
    for (int n = 0; n <= 1; ++n) {
        std::set<SimplexRef> hit;
        for (const auto& r : d1->level(n)) hit.insert(C.quotient.apply(r));
        CHECK(static_cast<int>(hit.size()) == C.space->level_size(n));
    }
}

TEST_CASE("enumerate_maps matches the levelwise brute-force oracle") {
    auto pt = standard_simplex(0);
    auto d1 = standard_simplex(1);
    auto d2 = standard_simplex(2);
    auto h = horn(2, 1);
    auto b = boundary(2);
    std::vector<std::pair<SSetPtr, SSetPtr>> cases = {
        {pt, d2}, {d1, d1}, {d1, d2}, {h, d1}, {b, d1}, {h, d2},
    };
    for (const auto& [X, Y] : cases) {
        auto maps = enumerate_maps(X, Y);
        for (const auto& m : maps) m.validate();
        CHECK(static_cast<long long>(maps.size()) == oracle::levelwise_map_count(X, Y));
    }
    CHECK(enumerate_maps(pt, standard_simplex(3)).size() == 4);
    CHECK(enumerate_maps(d1, d1).size() == 3);
}

TEST_CASE("isomorphism search distinguishes presentations, not shapes") {
    // the three 2-horns are pairwise non-isomorphic: edge directions differ
    // at the shared vertex (both out, composable, both in)
    CHECK(!is_isomorphic(horn(2, 0), horn(2, 1)).has_value());
    CHECK(!is_isomorphic(horn(2, 1), horn(2, 2)).has_value());
    CHECK(!is_isomorphic(boundary(2), horn(2, 1)).has_value());

    // a relabeled presentation of the same shape is found isomorphic
    SSetBuilder b;
    auto v0 = b.add_vertex();
    auto v1 = b.add_vertex();
    auto v2 = b.add_vertex();
    b.add(1, {nondeg(v2), nondeg(v1)}); // edge 1 -> 2 inserted first
    b.add(1, {nondeg(v1), nondeg(v0)}); // edge 0 -> 1
    REQUIRE(is_isomorphic(b.build(), horn(2, 1)).has_value());
    auto iso = is_isomorphic(product(standard_simplex(1), standard_simplex(0)).space,
                             standard_simplex(1));
    REQUIRE(iso.has_value());
    auto inv = inverse_of(*iso);
    CHECK(compose(inv, *iso).is_identity_like());
    CHECK(compose(*iso, inv).is_identity_like());
}

TEST_CASE("classifying maps land on the classified simplex") {
    auto d2 = standard_simplex(2);
    for (int n = 0; n <= 3; ++n)
        for (const auto& r : d2->level(n)) {
            auto cm = classifying_map(d2, r);
            cm.validate();
            CHECK(cm.apply(SimplexId{n, 0}) == r);
        }
}

TEST_CASE("coequalizer satisfies its universal property against enumerated cocones") {
    auto pt = standard_simplex(0);
    auto d1 = standard_simplex(1);
    auto v0 = SimplicialMap::constant(pt, d1, SimplexId{0, 0});
    auto v1 = SimplicialMap::constant(pt, d1, SimplexId{0, 1});
    auto C = coequalizer(v0, v1);
    for (auto Z : {standard_simplex(1), standard_simplex(2)}) {
        long long cocones = 0;
        for (const auto& h : enumerate_maps(d1, Z))
            if (same_images(compose(h, v0), compose(h, v1))) ++cocones;
        CHECK(static_cast<long long>(enumerate_maps(C.space, Z).size()) == cocones);
        // descend reproduces every coequalizing map
        for (const auto& h : enumerate_maps(d1, Z)) {
            if (!same_images(compose(h, v0), compose(h, v1))) continue;
            SimplicialMap q = C.descend(h);
            CHECK(same_images(compose(q, C.quotient), h));
        }
    }
}

TEST_CASE("the contravariant action is functorial on composable operators") {
    auto objects = {standard_simplex(2), boundary(2), horn(3, 1)};
    for (const auto& X : objects) {
        for (int n = 0; n <= 3; ++n) {
            for (const auto& r : X->level(n)) {
                // all monotone f : [m] -> [n], g : [p] -> [m] with small p, m
                for (int m = 0; m <= 2; ++m) {
                    std::vector<std::vector<int>> fs;
                    std::vector<int> cur(static_cast<size_t>(m) + 1, 0);
                    std::function<void(int)> gen = [&](int pos) {
                        if (pos == m + 1) {
                            fs.push_back(cur);
                            return;
                        }
                        for (int v = pos ? cur[static_cast<size_t>(pos) - 1] : 0; v <= n; ++v) {
                            cur[static_cast<size_t>(pos)] = v;
                            gen(pos + 1);
                        }
                    };
                    gen(0);
                    for (const auto& f : fs) {
                        SimplexRef rf = X->act(r, f);
                        // g : [1] -> [m]
                        for (int a = 0; a <= m; ++a)
                            for (int b = a; b <= m; ++b) {
                                std::vector<int> g = {a, b};
                                std::vector<int> fg = {f[static_cast<size_t>(a)],
                                                       f[static_cast<size_t>(b)]};
                                CHECK(X->act(rf, g) == X->act(r, fg));
                            }
                    }
                }
            }
        }
    }
}
