// Acceptance suite: one line per criterion, exit 0 only when all pass.

#include "msset/document.hpp"
#include "msset/verify.hpp"
#include "oracles.hpp"

#include <chrono>
#include <iostream>
#include <set>

using namespace msset;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail
              << std::endl;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: adjunction suite ----

bool map_space_adjunction_case(const BaseProduct& base, const MarkedOverBase& Xp,
                               const MarkedOverBase& Wp, const MarkedSSet& K, int depth) {
    MapSpace M = map_space(Xp, Wp, base, depth);
    MarkedOverBase Kp{K, MarkedMap{SimplicialMap::constant(K.space, base.b_plus.space,
                                                           SimplexId{0, 0}),
                                   K, base.b_plus}};
    auto lhs = enumerate_maps_over(Kp, M.result);

    MarkedProduct XK = marked_product(Xp.total, K);
    SimplicialMap st = pairing(base.prod.prod, compose(Xp.structure.map, XK.prod.proj_left),
                               compose(Kp.structure.map, XK.prod.proj_right));
    MarkedOverBase XKp{XK.space, MarkedMap{std::move(st), XK.space, base.prod.space}};
    auto rhs = enumerate_maps_over(XKp, Wp);
    if (lhs.size() != rhs.size()) return false;

    // uncurry each left-hand map and find it on the right; the passage is
    // injective, so equal counts give the bijection
    for (const auto& m : lhs) {
        std::vector<std::vector<SimplexRef>> images(
            static_cast<size_t>(std::max(0, XK.space.space->dim())) + 1);
        for (int d = 0; d <= XK.space.space->dim(); ++d)
            for (int idx = 0; idx < XK.space.space->count(d); ++idx) {
                auto [x, k] = XK.prod.components(nondeg(d, idx));
                SimplexRef r = m.apply(k);
                int elem = M.nondeg_elems[static_cast<size_t>(r.base.dim)]
                                        [static_cast<size_t>(r.base.idx)];
                int lifted = M.translate(r.base.dim, elem, r.word);
                const auto& el = M.elems[static_cast<size_t>(d)][static_cast<size_t>(lifted)];
                SimplicialMap hmap(M.xprod[static_cast<size_t>(d)].space, M.w_space, el.h);
                images[static_cast<size_t>(d)].push_back(
                    hmap.apply(M.xprod[static_cast<size_t>(d)].pair_ref(x, nondeg(d, 0))));
            }
        SimplicialMap flat_map(XK.space.space, Wp.total.space, std::move(images));
        bool found = false;
        for (const auto& g : rhs)
            if (same_images(g.map, flat_map)) found = true;
        if (!found) return false;
    }
    return true;
}

bool criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    InstanceSource src(41);
    int pairs = 0;
    // flat / sharp / core bijections with explicit inverses
    for (int i = 0; i < 44; ++i) {
        MarkedSSet Yp = src.random_marked_sset(12);
        SSetPtr X = src.random_marked_sset(12).space;
        ++pairs;
        auto flat_lhs = enumerate_marked_maps(flat(X), Yp);
        auto flat_rhs = enumerate_maps(X, Yp.space);
        if (flat_lhs.size() != flat_rhs.size()) return false;
        std::set<std::vector<std::vector<SimplexRef>>> flat_index;
        for (const auto& p : flat_rhs) flat_index.insert(p.images());
        for (const auto& m : flat_lhs)
            if (!flat_index.count(m.map.images())) return false;

        auto sharp_lhs = enumerate_marked_maps(Yp, sharp(X));
        auto sharp_rhs = enumerate_maps(Yp.space, X);
        if (sharp_lhs.size() != sharp_rhs.size()) return false;

        Core c = core(Yp);
        auto core_lhs = enumerate_maps(X, c.space);
        auto core_rhs = enumerate_marked_maps(sharp(X), Yp);
        if (core_lhs.size() != core_rhs.size()) return false;
        std::set<std::vector<std::vector<SimplexRef>>> core_index;
        for (const auto& v : core_rhs) core_index.insert(v.map.images());
        for (const auto& u : core_lhs)
            if (!core_index.count(compose(c.inclusion, u).images())) return false;
    }
    // product -| Map^B configurations
    auto d1 = standard_simplex(1);
    for (auto A : {chain_poset(1), chain_poset(2)}) {
        BaseProduct base = make_base(A, sharp(standard_simplex(0)));
        SimplicialMap st = pairing(
            base.prod.prod, SimplicialMap::identity(base.a_sharp.space),
            SimplicialMap::constant(base.a_sharp.space, base.b_plus.space, SimplexId{0, 0}));
        MarkedOverBase W{base.a_sharp,
                         MarkedMap{std::move(st), base.a_sharp, base.prod.space}};
        MarkedOverBase slice0{
            sharp(base.slice_nerves[0].space),
            MarkedMap{base.slice_proj[0], sharp(base.slice_nerves[0].space), base.a_sharp}};
        for (const auto& K : {flat(standard_simplex(0)), flat(d1), sharp(d1)}) {
            ++pairs;
            if (!map_space_adjunction_case(base, slice0, W, K, 3)) return false;
        }
    }
    double dt = seconds_since(t0);
    std::cout << "  criterion 1: " << pairs << " pairs in " << dt << "s" << std::endl;
    return pairs >= 50 && dt < 60.0;
}

// ---- criterion 2: generator realization ----

bool criterion2() {
    // horn and boundary counts straight from binomials
    auto binom = [](int n, int k) {
        long long c = 1;
        for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        return static_cast<int>(c);
    };
    for (int n = 2; n <= 4; ++n)
        for (int k = 1; k < n; ++k) {
            auto g = generator({GenFamily::A1, n, k});
            if (!g.src.marks.empty() || !g.tgt.marks.empty()) return false;
            for (int d = 0; d <= n; ++d) {
                int full = binom(n + 1, d + 1);
                int expect_src = d == n ? 0 : (d == n - 1 ? full - 1 : full);
                if (g.src.space->count(d) != expect_src) return false;
                if (g.tgt.space->count(d) != full) return false;
            }
        }
    // walking isomorphism truncations
    for (int d = 2; d <= 4; ++d) {
        auto g = generator({GenFamily::A2}, d);
        if (g.src.space->count(0) != 2) return false;
        for (int m = 1; m <= d; ++m)
            if (g.src.space->count(m) != 2) return false;
        if (!g.src.marks.empty() || g.tgt.marks.size() != 2) return false;
    }
    // squares: grid-chain counts and the three-of-five marking
    for (auto fam : {GenFamily::B1, GenFamily::B1p}) {
        auto g = generator({fam});
        for (int p = 0; p <= 2; ++p)
            if (g.tgt.space->count(p) != oracle::grid_chain_count(1, 1, p)) return false;
        if (g.src.marks.size() != 3 || g.tgt.marks.size() != 5) return false;
    }
    // prisms against the union-chain oracle
    for (auto fam : {GenFamily::B2, GenFamily::B2p}) {
        int corner = fam == GenFamily::B2 ? 0 : 1;
        for (int n = 0; n <= 4; ++n) {
            auto g = generator({fam, n});
            for (int p = 0; p <= n + 1; ++p) {
                if (g.tgt.space->count(p) != oracle::grid_chain_count(1, n, p)) return false;
                if (g.src.space->count(p) != oracle::prism_union_chain_count(n, corner, p))
                    return false;
            }
            int marks = n == 0 ? 1 : oracle::prism_mark_count(n);
            if (static_cast<int>(g.tgt.marks.size()) != marks) return false;
            if (n == 0 && !g.src.marks.empty()) return false;
            if (n >= 1 && g.src.marks.size() != g.tgt.marks.size()) return false;
        }
    }
    return true;
}

// ---- remaining criteria ----

bool criterion3() {
    auto rep = run_suite("fibration-oracle", 7, 30);
    std::cout << "  criterion 3: " << rep.passes << " agreements" << std::endl;
    return rep.passes == 30 && rep.fails == 0 && rep.unknowns == 0;
}

bool stability_criterion(int criterion, const std::string& suite, int count) {
    auto instances = suite_instances(suite, 13, count);
    int pass = 0, fail = 0, unknown = 0;
    for (auto& t : instances) {
        InstanceReport r = run_instance(t);
        if (r.verdict == Verdict::Unknown) {
            // re-run unknowns at doubled bounds
            TheoremInstance harder = t;
            harder.bounds.max_steps *= 2;
            harder.bounds.max_param += 1;
            harder.bounds.max_states *= 4;
            r = run_instance(harder);
        }
        switch (r.verdict) {
        case Verdict::Pass: ++pass; break;
        case Verdict::Fail: ++fail; break;
        case Verdict::Unknown: ++unknown; break;
        }
    }
    std::cout << "  criterion " << criterion << ": " << pass << "/" << count << " pass, "
              << fail << " fail, " << unknown << " unknown" << std::endl;
    return fail == 0 && pass * 5 >= count * 4;
}

bool criterion6() {
    auto rep = run_suite("example-law", 23, 12);
    std::cout << "  criterion 6: " << rep.passes << "/12" << std::endl;
    return rep.passes == 12;
}

bool criterion7() {
    auto rep = run_suite("fibercomputation", 29, 10);
    std::cout << "  criterion 7: " << rep.passes << "/10" << std::endl;
    return rep.passes == 10 && rep.fails == 0;
}

bool criterion8() {
    // the three stated objects over both atoms of the walking arrow and a
    // two-step chain, against two verified fibrations each
    int pass = 0, total = 0;
    for (auto A : {chain_poset(1), chain_poset(2)}) {
        BaseProduct base = make_base(A, sharp(standard_simplex(0)));
        auto d1 = standard_simplex(1);
        std::vector<MarkedSSet> xs = {sharp(standard_simplex(0)), flat(d1), sharp(d1)};
        for (const auto& x : xs)
            for (int a = 0; a < std::min(2, A->objects()); ++a) {
                TheoremInstance t;
                t.theorem = "derivedunit";
                t.A = A;
                t.b_plus = base.b_plus;
                t.obj_a = a;
                t.X = MarkedOverBase{x, MarkedMap{SimplicialMap::constant(
                                                      x.space, base.b_plus.space,
                                                      SimplexId{0, 0}),
                                                  x, base.b_plus}};
                SimplicialMap st = pairing(base.prod.prod,
                                           SimplicialMap::identity(base.a_sharp.space),
                                           SimplicialMap::constant(base.a_sharp.space,
                                                                   base.b_plus.space,
                                                                   SimplexId{0, 0}));
                t.W = MarkedOverBase{base.a_sharp,
                                     MarkedMap{std::move(st), base.a_sharp, base.prod.space}};
                ++total;
                if (run_instance(t).verdict == Verdict::Pass) ++pass;
            }
    }
    std::cout << "  criterion 8: " << pass << "/" << total << std::endl;
    return pass == total;
}

bool criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    auto rep = run_suite("joyalproperness", 17, 10);
    double dt = seconds_since(t0);
    std::cout << "  criterion 9: " << rep.passes << "/10 in " << dt << "s" << std::endl;
    return rep.passes == 10 && dt < 300.0;
}

bool criterion10() {
    for (const std::string suite : {"ezproper", "generators"}) {
        auto a = run_suite(suite, 19, 3);
        auto b = run_suite(suite, 19, 3);
        std::string sa, sb;
        for (const auto& l : render_report(a)) sa += l + "\n";
        for (const auto& l : render_report(b)) sb += l + "\n";
        std::string da = serialize(wrap_report(render_report(a)));
        std::string db = serialize(wrap_report(render_report(b)));
        if (sa != sb || da != db) return false;
    }
    return true;
}

} // namespace

int main() {
    report(1, criterion1(),
           "adjunction bijections with explicit inverses over the corpus");
    report(2, criterion2(), "generator families match the brute-force expansions");
    report(3, criterion3(), "lifting verdicts agree with the all-diagonal oracle");
    report(4, stability_criterion(4, "ezproper", 10),
           "cellular marked right inputs pull back with certificates");
    report(5, stability_criterion(5, "stability-inner-anodyne", 10),
           "sharp inner horns pull back to marked left certificates");
    report(6, criterion6(), "lambda of atoms equals the sliced product, exactly");
    report(7, criterion7(), "counit fiber comparisons are marked trivial fibrations");
    report(8, criterion8(), "equivalence and adjoint equivalence agree on every map");
    report(9, criterion9(), "horn pullbacks of cocartesian nerves pass the surrogate");
    report(10, criterion10(), "reports are byte-identical for fixed seeds");
    return failures == 0 ? 0 : 1;
}
