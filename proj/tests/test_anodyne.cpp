#include "doctest.h"

#include "msset/anodyne.hpp"
#include "msset/category.hpp"

using namespace msset;

TEST_CASE("the empty certificate proves an identity") {
    auto d1 = standard_simplex(1);
    AnodyneCertificate cert;
    cert.class_spec = FamilyClass::MarkedLeft;
    cert.start = flat(d1);
    CHECK(check_certificate(cert, marked_identity(flat(d1))).ok);

    // and rejects a non-identity claim
    auto g = generator({GenFamily::A1, 2, 1});
    CHECK(!check_certificate(cert, g).ok);
}

TEST_CASE("a one-step certificate along the identity attaching proves the generator") {
    for (GeneratorInstance gi : {GeneratorInstance{GenFamily::A1, 2, 1},
                                 GeneratorInstance{GenFamily::B1},
                                 GeneratorInstance{GenFamily::B2, 0},
                                 GeneratorInstance{GenFamily::B2, 1}}) {
        auto g = generator(gi);
        AnodyneCertificate cert;
        cert.class_spec = FamilyClass::MarkedLeft;
        cert.start = g.src;
        cert.steps.push_back({gi, marked_identity(g.src)});
        auto res = check_certificate(cert, g);
        CHECK_MESSAGE(res.ok, describe(gi), ": ", res.diagnostic);
    }
}

TEST_CASE("malformed steps are reported with their index") {
    auto g = generator({GenFamily::A1, 2, 1});
    AnodyneCertificate cert;
    cert.class_spec = FamilyClass::MarkedLeft;
    cert.start = g.src;
    // attach a B1 step whose attaching source does not match
    cert.steps.push_back({{GenFamily::B1}, marked_identity(g.src)});
    auto res = check_certificate(cert, g);
    CHECK(!res.ok);
    CHECK(res.diagnostic.find("step 0") != std::string::npos);
}

TEST_CASE("search finds one-step certificates for the generators themselves") {
    auto g = generator({GenFamily::A1, 2, 1});
    auto cert = search_certificate(g, FamilyClass::MarkedLeft, {});
    REQUIRE(cert.has_value());
    CHECK(cert->steps.size() == 1);
    CHECK(check_certificate(*cert, g).ok);

    // left horn {0} into the interval, in the plain left class
    auto lh = generator({GenFamily::LeftHorn, 1, 0});
    auto cert2 = search_certificate(lh, FamilyClass::LeftHorn, {});
    REQUIRE(cert2.has_value());
    CHECK(cert2->steps.size() == 1);
}

TEST_CASE("search finds the endpoint inclusion as cellular marked left") {
    // {0} -> sharp interval is exactly B2 at n = 0
    auto g = generator({GenFamily::B2, 0});
    auto cert = search_certificate(g, FamilyClass::CellularMarkedLeft, {});
    REQUIRE(cert.has_value());
    CHECK(cert->steps.size() == 1);
    CHECK(cert->steps[0].gen.family == GenFamily::B2);
    CHECK(check_certificate(*cert, g).ok);
}

TEST_CASE("a cellular certificate is accepted under the larger class") {
    auto g = generator({GenFamily::B2p, 1});
    auto cell = search_certificate(g, FamilyClass::CellularMarkedRight, {});
    REQUIRE(cell.has_value());
    auto wide = *cell;
    wide.class_spec = FamilyClass::MarkedRight;
    CHECK(check_certificate(wide, g).ok);
}

TEST_CASE("search assembles the endpoint prism inclusion in three steps") {
    // {1} x flat interval into sharp interval x flat interval
    auto d1 = standard_simplex(1);
    auto P = marked_product(sharp(d1), flat(d1));
    // the subobject {1} x interval
    std::set<SimplexId> keep;
    for (int d = 0; d <= P.space.space->dim(); ++d)
        for (int idx = 0; idx < P.space.space->count(d); ++idx) {
            const auto& [a, b] = P.prod.pairs[static_cast<size_t>(d)][static_cast<size_t>(idx)];
            if (a.base.dim == 0 && a.base.idx == 1) keep.insert({d, idx});
        }
    auto sub = marked_subcomplex(P.space, keep);
    auto cert = search_certificate(sub.inclusion, FamilyClass::CellularMarkedRight, {});
    REQUIRE(cert.has_value());
    CHECK(cert->steps.size() == 3);
    CHECK(check_certificate(*cert, sub.inclusion).ok);
}

TEST_CASE("certificates compose with identification transport") {
    // {0} -> sharp interval, then attach the B1 square on top
    auto g0 = generator({GenFamily::B2, 0});
    auto c0 = search_certificate(g0, FamilyClass::MarkedLeft, {});
    REQUIRE(c0.has_value());

    // sharp interval -> sharp square via B2(1)-style: build the inclusion of
    // the column {0} x interval into the B1 target
    auto d1 = standard_simplex(1);
    auto Q = marked_product(sharp(d1), sharp(d1));
    std::set<SimplexId> col;
    for (int d = 0; d <= Q.space.space->dim(); ++d)
        for (int idx = 0; idx < Q.space.space->count(d); ++idx) {
            const auto& [a, b] = Q.prod.pairs[static_cast<size_t>(d)][static_cast<size_t>(idx)];
            if (a.base.dim == 0 && a.base.idx == 0) col.insert({d, idx});
        }
    auto colsub = marked_subcomplex(Q.space, col);
    auto c1 = search_certificate(colsub.inclusion, FamilyClass::MarkedLeft,
                                 {6, 3, 20000});
    REQUIRE(c1.has_value());

    // rebase the endpoint inclusion onto the column presentation so the two
    // certificates share their middle object
    auto iso = marked_isomorphism(g0.tgt, colsub.space);
    REQUIRE(iso.has_value());
    MarkedMap relabeled{compose(iso->map, g0.map), g0.src, colsub.space};
    auto c_first = search_certificate(relabeled, FamilyClass::MarkedLeft, {});
    REQUIRE(c_first.has_value());
    auto composed = compose_certificates(*c_first, relabeled, *c1, colsub.inclusion);
    MarkedMap total = marked_compose(colsub.inclusion, relabeled);
    CHECK(check_certificate(composed, total).ok);
    CHECK(composed.steps.size() == c_first->steps.size() + c1->steps.size());
}

TEST_CASE("round trip: every searched certificate replays") {
    std::vector<GeneratorInstance> gens = {{GenFamily::A1, 2, 1},
                                           {GenFamily::A1, 3, 2},
                                           {GenFamily::B1p},
                                           {GenFamily::B2p, 0}};
    for (const auto& gi : gens) {
        auto g = generator(gi);
        FamilyClass cls = (gi.family == GenFamily::B1p || gi.family == GenFamily::B2p)
                              ? FamilyClass::MarkedRight
                              : FamilyClass::MarkedLeft;
        auto cert = search_certificate(g, cls, {});
        REQUIRE(cert.has_value());
        CHECK(check_certificate(*cert, g).ok);
    }
}

TEST_CASE("pullback stability along a product fibration") {
    // i = {1} -> sharp interval (B2' at 0), q = projection of
    // sharp interval x natural marking of a poset nerve
    auto i = generator({GenFamily::B2p, 0});
    auto d1 = standard_simplex(1);
    auto NM = natural_marking(nerve(chain_poset(1)));
    auto P = marked_product(sharp(d1), NM);
    auto rep = pullback_stability_check(i, P.proj_left, FamilyClass::CellularMarkedRight,
                                        FamilyClass::MarkedRight, {}, FibKind::MarkedLeft);
    CHECK(rep.verdict == StabilityVerdict::Pass);
    REQUIRE(rep.output_certificate.has_value());
    REQUIRE(rep.comparison.has_value());
    CHECK(check_certificate(*rep.output_certificate, *rep.comparison).ok);

    // identity of the base pulls back to an identity: empty certificate
    auto idm = marked_identity(sharp(d1));
    auto rep2 = pullback_stability_check(idm, P.proj_left, FamilyClass::CellularMarkedRight,
                                         FamilyClass::MarkedRight, {}, FibKind::MarkedLeft);
    CHECK(rep2.verdict == StabilityVerdict::Pass);
    CHECK(rep2.output_certificate->steps.empty());
}

TEST_CASE("hypothesis failures are reported, not silently passed") {
    auto i = generator({GenFamily::B2p, 0});
    auto bad_q = generator({GenFamily::A1, 2, 1}); // a horn inclusion is no fibration
    auto rep = pullback_stability_check(i, bad_q, FamilyClass::CellularMarkedRight,
                                        FamilyClass::MarkedRight, {}, FibKind::MarkedLeft, 3);
    CHECK(rep.verdict == StabilityVerdict::HypothesisFailure);
}
