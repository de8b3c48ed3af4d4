#include "doctest.h"

#include "msset/category.hpp"
#include "msset/lifting.hpp"

using namespace msset;

namespace {

MarkedMap flat_map(const SimplicialMap& f) {
    return MarkedMap{f, flat(f.source()), flat(f.target())};
}

} // namespace

TEST_CASE("solve_lifting fills inner horns in nerves uniquely") {
    auto N = nerve(chain_poset(2));
    auto right = to_point(flat(N.space));
    auto gen = generator({GenFamily::A1, 2, 1});
    auto tops = enumerate_marked_maps(gen.src, right.src);
    CHECK(!tops.empty());
    for (const auto& top : tops) {
        LiftingProblem p{gen, right, top,
                         MarkedMap{SimplicialMap::constant(gen.tgt.space, right.tgt.space,
                                                           SimplexId{0, 0}),
                                   gen.tgt, right.tgt}};
        p.validate();
        auto all = enumerate_fillers(p);
        CHECK(all.size() == 1); // nerve: inner fillers are unique
    }
}

TEST_CASE("lifting against an identity right leg returns the bottom map") {
    auto gen = generator({GenFamily::A1, 2, 1});
    auto idm = marked_identity(gen.tgt);
    // top = bottom . gen
    MarkedMap bottom = marked_identity(gen.tgt);
    MarkedMap top = marked_compose(bottom, gen);
    LiftingProblem p{gen, idm, top, bottom};
    auto h = solve_lifting(p);
    REQUIRE(h.has_value());
    CHECK(same_images(h->map, bottom.map));
}

TEST_CASE("an outer horn over the walking arrow can fail to fill") {
    auto d1 = standard_simplex(1);
    auto inc = horn_inclusion(2, 0);
    // vertices 0,1,2 of the horn map to 0,1,0: requires edge 1 -> 0 to extend
    auto h = inc.source();
    std::vector<std::vector<SimplexRef>> images(2);
    images[0] = {nondeg(0, 0), nondeg(0, 1), nondeg(0, 0)};
    for (int e = 0; e < h->count(1); ++e) {
        const auto& fs = h->faces_of({1, e});
        int a = images[0][static_cast<size_t>(fs[1].base.idx)].base.idx;
        int b = images[0][static_cast<size_t>(fs[0].base.idx)].base.idx;
        if (a == b)
            images[1].push_back(SimplexRef{{0, a}, {0}});
        else
            images[1].push_back(nondeg(1, 0));
    }
    SimplicialMap top(h, d1, images);
    top.validate();
    LiftingProblem p{flat_map(inc), to_point(flat(d1)), flat_map(top),
                     to_point(flat(standard_simplex(2)))};
    p.validate();
    CHECK(!solve_lifting(p).has_value());
}

TEST_CASE("nerves are quasi-categories; horns are not") {
    CHECK(is_quasi_category(nerve(chain_poset(2)).space).verdict);
    CHECK(is_quasi_category(standard_simplex(3)).verdict);
    auto rep = is_quasi_category(horn(2, 1));
    CHECK(!rep.verdict);
    REQUIRE(rep.counterexample.has_value());
    // counterexample must really have no filler
    CHECK(enumerate_fillers(*rep.counterexample).empty());
}

TEST_CASE("natural markings of nerves are marked left fibrant") {
    for (auto C : {chain_poset(1), chain_poset(2)}) {
        auto right = to_point(natural_marking(nerve(C)));
        auto rep = is_fibration(FibKind::MarkedLeft, right);
        CHECK(rep.verdict);
        CHECK(rep.a2_depth >= right.src.space->dim() + 2);
        CHECK(!rep.checked_counts.empty());
    }
}

TEST_CASE("a flat horn inclusion is not a fibration, with a counterexample") {
    auto inc = flat_map(horn_inclusion(2, 1));
    auto rep = is_fibration(FibKind::Inner, inc, 3);
    CHECK(!rep.verdict);
    REQUIRE(rep.counterexample.has_value());
    CHECK(enumerate_fillers(*rep.counterexample).empty());
}

TEST_CASE("trivial fibration check: identity and point cases") {
    auto pt = standard_simplex(0);
    auto idm = flat_map(SimplicialMap::identity(pt));
    CHECK(is_fibration(FibKind::Trivial, idm).verdict);

    // projections of products with the point are trivial fibrations
    auto d2 = standard_simplex(2);
    auto P = product(pt, d2);
    CHECK(is_fibration(FibKind::Trivial, flat_map(P.proj_right)).verdict);

    // an interval over the point is not: the reversed boundary square fails
    auto d1 = standard_simplex(1);
    CHECK(!is_fibration(FibKind::Trivial, to_point(flat(d1))).verdict);
    CHECK(!is_fibration(FibKind::Trivial, to_point(flat(boundary(2)))).verdict);
}

TEST_CASE("marked product projection is a marked left fibration") {
    auto d1 = standard_simplex(1);
    auto NM = natural_marking(nerve(chain_poset(1)));
    auto P = marked_product(sharp(d1), NM);
    auto rep = is_fibration(FibKind::MarkedLeft, P.proj_left, 3);
    CHECK(rep.verdict);
}

TEST_CASE("verdicts are stable under enlarging the cutoff") {
    auto right_yes = to_point(natural_marking(nerve(chain_poset(1))));
    CHECK(is_fibration(FibKind::MarkedLeft, right_yes, 3).verdict ==
          is_fibration(FibKind::MarkedLeft, right_yes, 4).verdict);

    auto right_no = flat_map(horn_inclusion(2, 1));
    CHECK(is_fibration(FibKind::Inner, right_no, 2).verdict ==
          is_fibration(FibKind::Inner, right_no, 3).verdict);
}

TEST_CASE("A2 squares respect the insufficient-depth contract") {
    auto right = to_point(natural_marking(nerve(chain_poset(1))));
    std::vector<GeneratorInstance> gens = {{GenFamily::A2}};
    CHECK_THROWS_AS(has_rlp_instances(right, gens, 3, 1), InsufficientDepth);
    auto rep = has_rlp_instances(right, gens, 3, 3);
    CHECK(rep.verdict);
    CHECK(rep.a2_depth == 3);
}

TEST_CASE("left and right horn families detect one-sided filling") {
    // the walking arrow over the point fills left horns at dimension one but
    // not the outer square configurations
    auto d1 = standard_simplex(1);
    auto rep_left = is_fibration(FibKind::Left, to_point(flat(d1)), 2);
    CHECK(!rep_left.verdict);
    // a point is fibrant for every family
    auto pt = to_point(flat(standard_simplex(0)));
    CHECK(is_fibration(FibKind::Left, pt, 2).verdict);
    CHECK(is_fibration(FibKind::Right, pt, 2).verdict);
    // discrete sets fill neither outer horn family beyond dimension one...
    // they do: every horn map into a point collapses; check a two-point set
    auto two = to_point(flat(coproduct({standard_simplex(0), standard_simplex(0)}).space));
    CHECK(is_fibration(FibKind::Left, two, 2).verdict);
    CHECK(is_fibration(FibKind::Right, two, 2).verdict);
}
