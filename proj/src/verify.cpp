#include "msset/verify.hpp"

#include <algorithm>
#include <set>
#include <numeric>

namespace msset {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

// ---- pi0 of hom spaces ----

Pi0Hom pi0_hom(const SSetPtr& X, int x, int y) {
    Pi0Hom out;
    for (const auto& r : X->level(1))
        if (X->face(r, 1) == nondeg(0, x) && X->face(r, 0) == nondeg(0, y))
            out.vertices.push_back(r);
    std::map<SimplexRef, int> pos;
    for (size_t i = 0; i < out.vertices.size(); ++i) pos[out.vertices[i]] = static_cast<int>(i);
    std::vector<int> root(out.vertices.size());
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (root[static_cast<size_t>(a)] != a)
            a = root[static_cast<size_t>(a)] =
                root[static_cast<size_t>(root[static_cast<size_t>(a)])];
        return a;
    };

    // squares H : interval x interval -> X, constant x and y on the exponent
    // endpoints; their two remaining faces are homotopic hom-vertices
    auto d1 = standard_simplex(1);
    Product P = product(d1, d1);
    SimplexRef vx{{0, x}, {}};
    SimplexRef vy{{0, y}, {}};
    ImageConstraint constraint = [&](SimplexId p, const SimplexRef& cand) {
        const auto& [pe, pd] = P.pairs[static_cast<size_t>(p.dim)][static_cast<size_t>(p.idx)];
        // pe: exponent component; constant over its endpoints
        if (pe.base.dim == 0) {
            int corner = pe.base.idx;
            SimplexRef want = corner == 0 ? vx : vy;
            std::vector<int> word;
            for (int j = p.dim - 1; j >= 0; --j) word.push_back(j);
            return cand == SimplexRef{want.base, word};
        }
        (void)pd;
        return true;
    };
    for (const auto& H : enumerate_maps(P.space, X, constraint)) {
        SimplexRef e0 = H.apply(P.pair_ref(nondeg(1, 0), SimplexRef{{0, 0}, {0}}));
        SimplexRef e1 = H.apply(P.pair_ref(nondeg(1, 0), SimplexRef{{0, 1}, {0}}));
        int a = find(pos.at(e0));
        int b = find(pos.at(e1));
        if (a != b) root[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::map<int, int> comp_of;
    out.component.resize(out.vertices.size());
    for (size_t i = 0; i < out.vertices.size(); ++i) {
        int r = find(static_cast<int>(i));
        auto [it, fresh] = comp_of.try_emplace(r, out.components);
        if (fresh) ++out.components;
        out.component[i] = it->second;
    }
    return out;
}

// ---- surrogate ----

SurrogateReport joyal_surrogate(const SimplicialMap& f, int depth) {
    const SSetPtr& X = f.source();
    const SSetPtr& Y = f.target();
    SurrogateReport rep;
    rep.depth = depth;
    rep.caveat = "sound-but-partial: failures are counterexamples, passes are "
                 "evidence at the stated depth";

    if (!is_quasi_category(Y).verdict)
        throw NotAQuasiCategory("joyal_surrogate: target is not a quasi-category");
    bool x_qcat = is_quasi_category(X).verdict;

    Tau1 tx = tau1(X);
    Tau1 ty = tau1_fillers(Y);
    if (x_qcat) {
        // the filler-based construction must agree with word saturation
        Tau1 tfx = tau1_fillers(X);
        if (tfx.cat->arrow_count() != tx.cat->arrow_count())
            throw MssetError("joyal_surrogate: fundamental category routes disagree");
    }
    CatFunctor F = tau1_functor(tx, ty, f);
    EquivalenceWitness w = is_cat_equivalence(F);
    rep.essential_surjectivity = w.essentially_surjective;

    bool all_ok = true;
    for (int a = 0; a < X->count(0); ++a)
        for (int b = 0; b < X->count(0); ++b) {
            HomCheck hc;
            hc.x = a;
            hc.y = b;
            auto dom = tx.cat->hom(a, b);
            auto cod = ty.cat->hom(F.on_obj(a), F.on_obj(b));
            std::set<int> images;
            for (int m : dom) images.insert(F.on_arrow(m));
            hc.tau1_bijective = images.size() == dom.size() && images.size() == cod.size();
            if (x_qcat) {
                Pi0Hom px = pi0_hom(X, a, b);
                Pi0Hom py = pi0_hom(Y, F.on_obj(a), F.on_obj(b));
                // the induced map on components
                std::map<SimplexRef, int> ypos;
                for (size_t i = 0; i < py.vertices.size(); ++i) ypos[py.vertices[i]] =
                    py.component[i];
                std::set<int> hit;
                bool injective = true;
                std::map<int, int> sent;
                for (size_t i = 0; i < px.vertices.size(); ++i) {
                    int img = ypos.at(f.apply(px.vertices[i]));
                    auto [it, fresh] = sent.try_emplace(px.component[i], img);
                    if (!fresh && it->second != img) injective = false; // not well defined
                    hit.insert(img);
                }
                // injectivity between components
                std::set<int> distinct;
                for (const auto& [c, img] : sent) {
                    (void)c;
                    if (!distinct.insert(img).second) injective = false;
                }
                hc.pi0_bijective = injective && static_cast<int>(hit.size()) == py.components &&
                                   sent.size() == static_cast<size_t>(px.components);
                // the two routes must agree
                if (hc.pi0_bijective != hc.tau1_bijective)
                    throw MssetError("joyal_surrogate: hom routes disagree");
            }
            all_ok = all_ok && hc.tau1_bijective;
            rep.homwise.push_back(hc);
        }
    rep.pass = rep.essential_surjectivity && all_ok;
    return rep;
}

// ---- point equivalences ----

bool marked_homotopic(const MarkedMap& u, const MarkedMap& v) {
    const MarkedSSet& Pm = u.src;
    const MarkedSSet& Qm = u.tgt;
    auto d1 = standard_simplex(1);
    MarkedProduct C = marked_product(Pm, sharp(d1));
    ImageConstraint constraint = [&](SimplexId p, const SimplexRef& cand) {
        const auto& [px, pd] =
            C.prod.pairs[static_cast<size_t>(p.dim)][static_cast<size_t>(p.idx)];
        if (pd.base.dim == 0) {
            const MarkedMap& end = pd.base.idx == 0 ? u : v;
            if (cand != end.apply(px)) return false;
        }
        if (p.dim == 1 && C.space.marks.count(p.idx) && !Qm.is_marked(cand)) return false;
        return true;
    };
    return !enumerate_maps(C.space.space, Qm.space, constraint).empty();
}

PointEquivalence equivalent_over_point(const MarkedMap& f, int cutoff) {
    PointEquivalence out;
    // identification
    if (marked_isomorphism(f.src, f.tgt).has_value() && f.map.is_mono() &&
        f.src.space->total_count() == f.tgt.space->total_count()) {
        out.verdict = Verdict::Pass;
        out.method = "identification";
        return out;
    }
    // certificate
    if (f.map.is_mono()) {
        auto cert = search_certificate(f, FamilyClass::MarkedLeft, {4, cutoff, 5000});
        if (cert) {
            out.verdict = Verdict::Pass;
            out.method = "certificate";
            return out;
        }
    }
    // trivial fibration
    auto triv = is_fibration(FibKind::MarkedTrivial, f, cutoff);
    if (triv.verdict) {
        out.verdict = Verdict::Pass;
        out.method = "trivial-fibration";
        return out;
    }
    // homotopy equivalence: a sound positive regardless of fibrancy, and a
    // sound refutation when both endpoints are verified fibrant
    out.method = "homotopy-equivalence";
    for (const auto& g : enumerate_marked_maps(f.tgt, f.src)) {
        MarkedMap gf = marked_compose(g, f);
        MarkedMap fg = marked_compose(f, g);
        if (marked_homotopic(gf, marked_identity(f.src)) &&
            marked_homotopic(fg, marked_identity(f.tgt))) {
            out.verdict = Verdict::Pass;
            return out;
        }
    }
    auto fib_src = is_fibration(FibKind::MarkedLeft, to_point(f.src), cutoff);
    auto fib_tgt = is_fibration(FibKind::MarkedLeft, to_point(f.tgt), cutoff);
    if (!fib_src.verdict || !fib_tgt.verdict) {
        out.verdict = Verdict::Unknown;
        out.method = "none: no homotopy inverse and endpoints not verified fibrant";
        return out;
    }
    out.verdict = Verdict::Fail;
    return out;
}

// ---- instance helpers ----

namespace {

MarkedMap fiber_map(const MarkedMap& u, const Fiber& from, const Fiber& to) {
    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, from.over_b.total.space->dim())) + 1);
    for (int d = 0; d <= from.over_b.total.space->dim(); ++d)
        for (int idx = 0; idx < from.over_b.total.space->count(d); ++idx) {
            auto [b, w] = from.pb.pb.components(nondeg(d, idx));
            images[static_cast<size_t>(d)].push_back(to.pb.pb.pair_ref(b, u.apply(w)));
        }
    MarkedMap out{SimplicialMap(from.over_b.total.space, to.over_b.total.space,
                                std::move(images)),
                  from.over_b.total, to.over_b.total};
    out.validate();
    return out;
}

// (b, h) -> (b, u . h) between mapping spaces with the same slice and depth.
MarkedMap map_space_postcompose(const MapSpace& from, const MapSpace& to, const MarkedMap& u) {
    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, from.result.total.space->dim())) + 1);
    for (int lvl = 0; lvl <= from.result.total.space->dim(); ++lvl)
        for (int e : from.nondeg_elems[static_cast<size_t>(lvl)]) {
            const auto& el = from.elems[static_cast<size_t>(lvl)][static_cast<size_t>(e)];
            SimplicialMap hmap(from.xprod[static_cast<size_t>(lvl)].space, from.w_space, el.h);
            SimplicialMap pushed = compose(u.map, hmap);
            int t = to.find_elem(lvl, el.b, pushed.images());
            images[static_cast<size_t>(lvl)].push_back(to.ref_of(lvl, t));
        }
    MarkedMap out{SimplicialMap(from.result.total.space, to.result.total.space,
                                std::move(images)),
                  from.result.total, to.result.total};
    out.validate();
    return out;
}

SearchBounds to_search_bounds(const InstanceBounds& b) {
    return SearchBounds{b.max_steps, b.max_param, b.max_states};
}

InstanceReport stability_instance(const TheoremInstance& t, FamilyClass in_class,
                                  FamilyClass out_class, bool need_underlying_left) {
    InstanceReport rep;
    rep.theorem = t.theorem;
    rep.surrogate = "certificate";
    if (!t.i || !t.q) {
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("missing inputs");
        return rep;
    }
    if (need_underlying_left) {
        MarkedMap underlying{t.q->map, flat(t.q->src.space), flat(t.q->tgt.space)};
        auto lrep = is_fibration(FibKind::Left, underlying, t.bounds.cutoff);
        if (!lrep.verdict) {
            rep.verdict = Verdict::Unknown;
            rep.lines.push_back("hypothesis: underlying map is not a left fibration");
            return rep;
        }
        rep.lines.push_back("hypothesis: underlying left fibration verified");
    }

    if (t.theorem == "stability_inner_anodyne") {
        // hypothesis: the underlying map is inner anodyne; markings are sharp
        auto frep = is_fibration(FibKind::MarkedLeft, *t.q, t.bounds.cutoff);
        if (!frep.verdict) {
            rep.verdict = Verdict::Unknown;
            rep.lines.push_back("hypothesis failure: not a marked left fibration");
            return rep;
        }
        MarkedMap flat_i{t.i->map, flat(t.i->src.space), flat(t.i->tgt.space)};
        auto cert_i = t.input_certificate
                          ? t.input_certificate
                          : search_certificate(flat_i, FamilyClass::InnerHorn,
                                               to_search_bounds(t.bounds));
        if (!cert_i) {
            rep.verdict = Verdict::Unknown;
            rep.lines.push_back("hypothesis failure: inner-anodyne certificate not found");
            return rep;
        }
        rep.lines.push_back("input certificate with " +
                            std::to_string(cert_i->steps.size()) + " steps");
        MarkedPullback pb = marked_pullback(*t.i, *t.q);
        auto cert_j = search_certificate(pb.to_right, out_class, to_search_bounds(t.bounds));
        if (cert_j) {
            rep.verdict = Verdict::Pass;
            rep.lines.push_back("pullback certificate with " +
                                std::to_string(cert_j->steps.size()) + " steps");
        } else {
            rep.verdict = Verdict::Unknown;
            rep.lines.push_back("unknown-within-bounds: no certificate for the pullback");
        }
        return rep;
    }

    StabilityReport sr =
        pullback_stability_check(*t.i, *t.q, in_class, out_class, to_search_bounds(t.bounds),
                                 FibKind::MarkedLeft, t.bounds.cutoff, t.input_certificate);
    switch (sr.verdict) {
    case StabilityVerdict::Pass:
        rep.verdict = Verdict::Pass;
        rep.lines.push_back("pullback certificate with " +
                            std::to_string(sr.output_certificate->steps.size()) + " steps");
        break;
    case StabilityVerdict::UnknownWithinBounds:
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("unknown-within-bounds: " + sr.note);
        break;
    case StabilityVerdict::HypothesisFailure:
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("hypothesis failure: " + sr.note);
        break;
    }
    if (sr.input_certificate)
        rep.lines.push_back("input certificate with " +
                            std::to_string(sr.input_certificate->steps.size()) + " steps");
    return rep;
}

InstanceReport joyal_instance(const TheoremInstance& t) {
    InstanceReport rep;
    rep.theorem = t.theorem;
    rep.surrogate = "tau1 + hom-pi0";
    GrothendieckFibration fib = grothendieck_fibration(t.fibers, t.steps);
    int n = static_cast<int>(t.steps.size());
    if (t.horn_k <= 0 || t.horn_k >= n) throw InvalidParameter("joyal instance: horn not inner");

    auto hyp = is_fibration(FibKind::MarkedLeft, fib.projection, t.bounds.cutoff);
    if (!hyp.verdict) {
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("hypothesis failure: projection is not a marked left fibration");
        return rep;
    }
    rep.lines.push_back("hypothesis: cocartesian projection verified");

    SimplicialMap inc = horn_inclusion(n, t.horn_k);
    // identify the horn inside the nerve of [n]
    auto base_iso = is_isomorphic(standard_simplex(n), fib.base_nerve.space);
    if (!base_iso) throw MssetError("joyal instance: base nerve is not standard");
    SimplicialMap i_in_base = compose(*base_iso, inc);
    Pullback pb = pullback(i_in_base, fib.projection.map);
    SimplicialMap j = pb.to_right;

    SurrogateReport sr = joyal_surrogate(j, t.bounds.depth);
    rep.verdict = sr.pass ? Verdict::Pass : Verdict::Fail;
    rep.lines.push_back(std::string("essential surjectivity: ") +
                        (sr.essential_surjectivity ? "yes" : "no"));
    int hom_fail = 0;
    for (const auto& h : sr.homwise)
        if (!h.tau1_bijective) ++hom_fail;
    rep.lines.push_back("hom checks failing: " + std::to_string(hom_fail) + " of " +
                        std::to_string(sr.homwise.size()));
    return rep;
}

InstanceReport fiber_instance(const TheoremInstance& t, bool cross_check_counit) {
    InstanceReport rep;
    rep.theorem = t.theorem;
    rep.surrogate = "trivial-fibration";
    BaseProduct base = make_base(t.A, *t.b_plus);
    auto hyp = is_fibration(FibKind::MarkedLeft, t.W->structure, t.bounds.cutoff);
    if (!hyp.verdict) {
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("hypothesis failure: not a marked left fibration");
        return rep;
    }
    Rho R = rho_unstraighten(*t.W, base, t.bounds.depth);
    bool all = true;
    for (int a = 0; a < t.A->objects(); ++a) {
        Fiber fib = fiber(*t.W, base, a);
        MarkedMap cmp = fiber_comparison(R.spaces[static_cast<size_t>(a)], fib, base, a);
        auto rr = is_fibration(FibKind::MarkedTrivial, cmp, t.bounds.depth);
        rep.lines.push_back("fiber " + std::to_string(a) + ": " +
                            (rr.verdict ? "trivial fibration" : "FAILS"));
        all = all && rr.verdict;
    }
    if (cross_check_counit) {
        // the counit restricted to each fiber coincides with the comparison
        Lambda LR = lambda_straighten(R.functor, base);
        MarkedMap eps = counit(*t.W, R, LR, base);
        for (int a = 0; a < t.A->objects(); ++a) {
            Fiber fibW = fiber(*t.W, base, a);
            Fiber fibL = fiber(LR.result, base, a);
            MarkedMap eps_a = fiber_map(eps, fibL, fibW);
            // embed the mapping space into the lambda fiber at the slice vertex
            const MapSpace& Ma = R.spaces[static_cast<size_t>(a)];
            const SliceCat& sc = base.slices[static_cast<size_t>(a)];
            int id_vertex = -1;
            for (size_t ii = 0; ii < sc.object_arrow.size(); ++ii)
                if (sc.object_arrow[ii] == t.A->identity(a)) id_vertex = static_cast<int>(ii);
            std::vector<std::vector<SimplexRef>> kappa(
                static_cast<size_t>(std::max(0, Ma.result.total.space->dim())) + 1);
            for (int d = 0; d <= Ma.result.total.space->dim(); ++d)
                for (int idx = 0; idx < Ma.result.total.space->count(d); ++idx) {
                    std::vector<int> word;
                    for (int jj = d - 1; jj >= 0; --jj) word.push_back(jj);
                    SimplexRef pair = LR.summands[static_cast<size_t>(a)].prod.pair_ref(
                        SimplexRef{{0, id_vertex}, word}, nondeg(d, idx));
                    SimplexRef quot = LR.coeq.quotient.apply(
                        LR.parts.cop.injections[static_cast<size_t>(a)].apply(pair));
                    // locate inside the fiber of lambda at a
                    const auto& elb = Ma.elems[static_cast<size_t>(d)][static_cast<size_t>(
                        Ma.nondeg_elems[static_cast<size_t>(d)][static_cast<size_t>(idx)])];
                    kappa[static_cast<size_t>(d)].push_back(fibL.pb.pb.pair_ref(elb.b, quot));
                }
            SimplicialMap kmap(Ma.result.total.space, fibL.over_b.total.space, kappa);
            MarkedMap cmp = fiber_comparison(Ma, fibW, base, a);
            if (!same_images(compose(eps_a.map, kmap), cmp.map)) {
                rep.lines.push_back("counit route disagrees at " + std::to_string(a));
                all = false;
            } else {
                rep.lines.push_back("counit route agrees at " + std::to_string(a));
            }
        }
    }
    rep.verdict = all ? Verdict::Pass : Verdict::Fail;
    return rep;
}

InstanceReport derivedunit_instance(const TheoremInstance& t) {
    InstanceReport rep;
    rep.theorem = t.theorem;
    rep.surrogate = "fiberwise homotopy-equivalence";
    BaseProduct base = make_base(t.A, *t.b_plus);
    auto hyp = is_fibration(FibKind::MarkedLeft, t.W->structure, t.bounds.cutoff);
    if (!hyp.verdict) {
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("hypothesis failure: target is not a marked left fibration");
        return rep;
    }
    FunctorToMarkedOverB F = atom_functor(base, t.obj_a, *t.X);
    Lambda L = lambda_straighten(F, base);
    Rho RL = rho_unstraighten(L.result, base, t.bounds.depth);
    Rho RZ = rho_unstraighten(*t.W, base, t.bounds.depth);
    auto units = unit_components(F, L, RL, base);

    auto maps = enumerate_maps_over(L.result, *t.W);
    rep.lines.push_back(std::to_string(maps.size()) + " maps out of lambda");
    bool all_agree = true;
    bool any_unknown = false;
    for (size_t mi = 0; mi < maps.size(); ++mi) {
        const MarkedMap& u = maps[mi];
        // left side: fiberwise equivalence of u
        Verdict lhs = Verdict::Pass;
        for (int a = 0; a < t.A->objects(); ++a) {
            Fiber fl = fiber(L.result, base, a);
            Fiber fz = fiber(*t.W, base, a);
            auto v = equivalent_over_point(fiber_map(u, fl, fz), t.bounds.cutoff);
            if (v.verdict == Verdict::Unknown) lhs = Verdict::Unknown;
            else if (v.verdict == Verdict::Fail && lhs != Verdict::Unknown)
                lhs = Verdict::Fail;
        }
        // right side: the adjoint transformation, pointwise
        Verdict rhs = Verdict::Pass;
        for (int a = 0; a < t.A->objects(); ++a) {
            MarkedMap rho_u = map_space_postcompose(RL.spaces[static_cast<size_t>(a)],
                                                    RZ.spaces[static_cast<size_t>(a)], u);
            MarkedMap adj = marked_compose(rho_u, units[static_cast<size_t>(a)]);
            auto v = equivalent_over_point(adj, t.bounds.cutoff);
            if (v.verdict == Verdict::Unknown) rhs = Verdict::Unknown;
            else if (v.verdict == Verdict::Fail && rhs != Verdict::Unknown)
                rhs = Verdict::Fail;
        }
        if (lhs == Verdict::Unknown || rhs == Verdict::Unknown) {
            any_unknown = true;
            rep.lines.push_back("map " + std::to_string(mi) + ": unknown");
        } else if (lhs != rhs) {
            all_agree = false;
            rep.lines.push_back("map " + std::to_string(mi) + ": sides disagree (" +
                                to_string(lhs) + " vs " + to_string(rhs) + ")");
        } else {
            rep.lines.push_back("map " + std::to_string(mi) + ": both sides " + to_string(lhs));
        }
    }
    rep.verdict = !all_agree ? Verdict::Fail : (any_unknown ? Verdict::Unknown : Verdict::Pass);
    return rep;
}

InstanceReport rectification_instance(const TheoremInstance& t) {
    InstanceReport rep;
    rep.theorem = t.theorem;
    rep.surrogate = "unit equivalences + counit trivial fibrations";
    BaseProduct base = make_base(t.A, *t.b_plus);
    FunctorToMarkedOverB F = atom_functor(base, t.obj_a, *t.X);
    Lambda L = lambda_straighten(F, base);
    auto hyp = is_fibration(FibKind::MarkedLeft, L.result.structure, t.bounds.cutoff);
    if (!hyp.verdict) {
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("hypothesis failure: lambda of the atom is not fibrant");
        return rep;
    }
    Rho R = rho_unstraighten(L.result, base, t.bounds.depth);
    auto units = unit_components(F, L, R, base);
    bool all = true;
    bool unknown = false;
    for (int a = 0; a < t.A->objects(); ++a) {
        auto v = equivalent_over_point(units[static_cast<size_t>(a)], t.bounds.cutoff);
        rep.lines.push_back("unit at " + std::to_string(a) + ": " + to_string(v.verdict) +
                            " via " + v.method);
        if (v.verdict == Verdict::Fail) all = false;
        if (v.verdict == Verdict::Unknown) unknown = true;
    }
    for (int a = 0; a < t.A->objects(); ++a) {
        Fiber fib = fiber(L.result, base, a);
        MarkedMap cmp = fiber_comparison(R.spaces[static_cast<size_t>(a)], fib, base, a);
        auto rr = is_fibration(FibKind::MarkedTrivial, cmp, t.bounds.depth);
        rep.lines.push_back("counit fiber " + std::to_string(a) + ": " +
                            (rr.verdict ? "trivial fibration" : "FAILS"));
        all = all && rr.verdict;
    }
    rep.verdict = !all ? Verdict::Fail : (unknown ? Verdict::Unknown : Verdict::Pass);
    return rep;
}

InstanceReport pbleftquillen_instance(const TheoremInstance& t) {
    InstanceReport rep;
    rep.theorem = t.theorem;
    rep.surrogate = "certificate";
    auto hyp = is_fibration(FibKind::MarkedRight, *t.p, t.bounds.cutoff);
    if (!hyp.verdict) {
        rep.verdict = Verdict::Unknown;
        rep.lines.push_back("hypothesis failure: not a marked right fibration");
        return rep;
    }
    const MarkedSSet& base_sharp = t.p->tgt;
    bool unknown = false;
    int checked = 0;
    for (const auto& gi : family_instances(FamilyClass::CellularMarkedLeft, t.bounds.max_param)) {
        MarkedMap gen = generator(gi);
        for (const auto& s : enumerate_maps(gen.tgt.space, base_sharp.space)) {
            MarkedMap sm{s, gen.tgt, base_sharp};
            MarkedPullback pv = marked_pullback(sm, *t.p);
            MarkedMap su{compose(s, gen.map), gen.src, base_sharp};
            MarkedPullback pu = marked_pullback(su, *t.p);
            // induced map on pullbacks
            std::vector<std::vector<SimplexRef>> images(
                static_cast<size_t>(std::max(0, pu.space.space->dim())) + 1);
            for (int d = 0; d <= pu.space.space->dim(); ++d)
                for (int idx = 0; idx < pu.space.space->count(d); ++idx) {
                    auto [uref, xref] = pu.pb.components(nondeg(d, idx));
                    images[static_cast<size_t>(d)].push_back(
                        pv.pb.pair_ref(gen.apply(uref), xref));
                }
            MarkedMap induced{SimplicialMap(pu.space.space, pv.space.space, std::move(images)),
                              pu.space, pv.space};
            ++checked;
            auto cert = search_certificate(induced, FamilyClass::MarkedLeft,
                                           to_search_bounds(t.bounds));
            if (!cert) {
                unknown = true;
                rep.lines.push_back("no certificate for " + describe(gi) + " over a structure map");
            }
        }
    }
    rep.lines.push_back(std::to_string(checked) + " generator instances checked");
    rep.verdict = unknown ? Verdict::Unknown : Verdict::Pass;
    return rep;
}

} // namespace

InstanceReport run_instance(const TheoremInstance& t) {
    if (t.theorem == "ezproper")
        return stability_instance(t, FamilyClass::CellularMarkedRight, FamilyClass::MarkedRight,
                                  false);
    if (t.theorem == "improvedrightproper")
        return stability_instance(t, FamilyClass::MarkedRight, FamilyClass::MarkedRight, true);
    if (t.theorem == "stability_inner_anodyne")
        return stability_instance(t, FamilyClass::InnerHorn, FamilyClass::MarkedLeft, false);
    if (t.theorem == "joyalproperness") return joyal_instance(t);
    if (t.theorem == "fibercomputation") return fiber_instance(t, false);
    if (t.theorem == "mate") return fiber_instance(t, true);
    if (t.theorem == "derivedunit") return derivedunit_instance(t);
    if (t.theorem == "rectification_roundtrip") return rectification_instance(t);
    if (t.theorem == "pbleftquillen_generators") return pbleftquillen_instance(t);
    throw InvalidParameter("run_instance: unknown theorem tag '" + t.theorem + "'");
}

// ---- instance source ----

InstanceSource::InstanceSource(std::uint64_t seed) : state(seed) {}

std::uint64_t InstanceSource::next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int InstanceSource::pick(int n) {
    if (n <= 0) throw InvalidParameter("pick: empty range");
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

CatPtr InstanceSource::random_poset(int max_objects) {
    int n = 1 + pick(max_objects);
    std::vector<std::vector<bool>> reach(static_cast<size_t>(n),
                                         std::vector<bool>(static_cast<size_t>(n), false));
    for (int i = 0; i < n; ++i) reach[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pick(2)) reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    // transitive closure
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[static_cast<size_t>(i)][static_cast<size_t>(k)] &&
                    reach[static_cast<size_t>(k)][static_cast<size_t>(j)])
                    reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    return preorder_category(reach);
}

MarkedSSet InstanceSource::random_marked_sset(int max_cells) {
    SSetPtr space;
    for (;;) {
        switch (pick(6)) {
        case 0: space = standard_simplex(1 + pick(2)); break;
        case 1: space = boundary(2); break;
        case 2: space = horn(2, pick(3)); break;
        case 3: space = nerve(random_poset(3)).space; break;
        case 4: space = product(standard_simplex(1), standard_simplex(1)).space; break;
        default: space = standard_simplex(0); break;
        }
        if (space->total_count() <= max_cells) break;
    }
    MarkedSSet out{space, {}, -1};
    for (int e = 0; e < space->count(1); ++e)
        if (pick(2)) out.marks.insert(e);
    return out;
}

GrothendieckFibration InstanceSource::random_grothendieck(int base_n, int max_fiber_objects) {
    for (;;) {
        std::vector<CatPtr> fibers;
        for (int i = 0; i <= base_n; ++i) fibers.push_back(random_poset(max_fiber_objects));
        std::vector<CatFunctor> steps;
        bool ok = true;
        for (int i = 0; i < base_n; ++i) {
            auto fs = enumerate_functors(fibers[static_cast<size_t>(i)],
                                         fibers[static_cast<size_t>(i) + 1]);
            if (fs.empty()) {
                ok = false;
                break;
            }
            steps.push_back(fs[static_cast<size_t>(pick(static_cast<int>(fs.size())))]);
        }
        if (!ok) continue;
        return grothendieck_fibration(fibers, steps);
    }
}

// ---- suites ----

namespace {

InstanceReport adjunction_instance(InstanceSource& src) {
    InstanceReport rep;
    rep.theorem = "adjunctions";
    rep.surrogate = "full enumeration";
    MarkedSSet Yp = src.random_marked_sset(12);
    SSetPtr X = src.random_marked_sset(12).space;

    bool ok = true;
    // flat adjunction with explicit mutually inverse constructions
    {
        auto lhs = enumerate_marked_maps(flat(X), Yp);
        auto rhs = enumerate_maps(X, Yp.space);
        ok = ok && lhs.size() == rhs.size();
        std::set<std::vector<std::vector<SimplexRef>>> index;
        for (const auto& p : rhs) index.insert(p.images());
        for (const auto& m : lhs) ok = ok && index.count(m.map.images()) > 0;
        rep.lines.push_back("flat: " + std::to_string(lhs.size()) + " maps");
    }
    // sharp adjunction
    {
        auto lhs = enumerate_marked_maps(Yp, sharp(X));
        auto rhs = enumerate_maps(Yp.space, X);
        ok = ok && lhs.size() == rhs.size();
        rep.lines.push_back("sharp: " + std::to_string(lhs.size()) + " maps");
    }
    // core adjunction
    {
        Core c = core(Yp);
        auto lhs = enumerate_maps(X, c.space);
        auto rhs = enumerate_marked_maps(sharp(X), Yp);
        ok = ok && lhs.size() == rhs.size();
        std::set<std::vector<std::vector<SimplexRef>>> index;
        for (const auto& v : rhs) index.insert(v.map.images());
        for (const auto& u : lhs)
            ok = ok && index.count(compose(c.inclusion, u).images()) > 0;
        rep.lines.push_back("core: " + std::to_string(lhs.size()) + " maps");
    }
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return rep;
}

InstanceReport generator_instance_report(const GeneratorInstance& gi) {
    InstanceReport rep;
    rep.theorem = "generators";
    rep.surrogate = "mark and cell counts";
    MarkedMap g = generator(gi, 4);
    bool ok = true;
    try {
        g.validate();
    } catch (const MssetError&) {
        ok = false;
    }
    ok = ok && g.is_mono();
    // recompute the marking of source and target straight from the product
    // projections where they are products
    rep.lines.push_back(describe(gi) + ": source marks " + std::to_string(g.src.marks.size()) +
                        ", target marks " + std::to_string(g.tgt.marks.size()));
    switch (gi.family) {
    case GenFamily::B1:
    case GenFamily::B1p:
        ok = ok && g.src.marks.size() == 3 && g.tgt.marks.size() == 5;
        break;
    case GenFamily::B2:
    case GenFamily::B2p:
        ok = ok && static_cast<int>(g.tgt.marks.size()) == gi.n + 1;
        ok = ok && (gi.n == 0 ? g.src.marks.empty() : g.src.marks.size() == g.tgt.marks.size());
        break;
    case GenFamily::A2:
        ok = ok && g.src.marks.empty() && g.tgt.marks.size() == 2;
        break;
    default:
        ok = ok && g.src.marks.empty() && g.tgt.marks.empty();
        break;
    }
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return rep;
}

// brute-force all-diagonal square check, against has_rlp_instances
InstanceReport fibration_oracle_instance(InstanceSource& src) {
    InstanceReport rep;
    rep.theorem = "fibration-oracle";
    rep.surrogate = "all-diagonal enumeration";

    // a small pool of maps, some fibrations and some not
    MarkedMap candidate = [&]() -> MarkedMap {
        switch (src.pick(4)) {
        case 0: return to_point(natural_marking(nerve(src.random_poset(3))));
        case 1: {
            auto d1 = standard_simplex(1);
            auto P = marked_product(sharp(d1), natural_marking(nerve(src.random_poset(2))));
            return P.proj_left;
        }
        case 2: {
            auto gi = GeneratorInstance{GenFamily::A1, 2, 1};
            return generator(gi);
        }
        default: return to_point(src.random_marked_sset(8));
        }
    }();
    FamilyClass fam = src.pick(2) ? FamilyClass::MarkedLeft : FamilyClass::CellularMarkedLeft;
    int cutoff = 2 + src.pick(2);
    int a2_depth = std::max(candidate.src.space->dim(), candidate.tgt.space->dim()) + 2;
    if (fam == FamilyClass::MarkedLeft && cutoff > a2_depth) a2_depth = cutoff;

    auto gens = family_instances(fam, cutoff);
    FibrationReport fast = has_rlp_instances(candidate, gens, cutoff, a2_depth);

    // oracle: same squares, solved by filtering all maps
    bool oracle_verdict = true;
    for (const auto& gi : gens) {
        MarkedMap gen = generator(gi, a2_depth);
        auto tops = enumerate_marked_maps(gen.src, candidate.src);
        auto bottoms = enumerate_marked_maps(gen.tgt, candidate.tgt);
        for (const auto& top : tops)
            for (const auto& bottom : bottoms) {
                if (!same_images(compose(candidate.map, top.map),
                                 compose(bottom.map, gen.map)))
                    continue;
                bool found = false;
                for (const auto& h : enumerate_marked_maps(gen.tgt, candidate.src)) {
                    if (!same_images(compose(h.map, gen.map), top.map)) continue;
                    if (!same_images(compose(candidate.map, h.map), bottom.map)) continue;
                    found = true;
                    break;
                }
                if (!found) oracle_verdict = false;
                if (!oracle_verdict) break;
            }
        if (!oracle_verdict) break;
    }
    rep.lines.push_back(std::string("checker: ") + (fast.verdict ? "yes" : "no") +
                        ", oracle: " + (oracle_verdict ? "yes" : "no"));
    rep.verdict = fast.verdict == oracle_verdict ? Verdict::Pass : Verdict::Fail;
    return rep;
}

InstanceReport example_law_instance(InstanceSource& src) {
    InstanceReport rep;
    rep.theorem = "example-law";
    rep.surrogate = "exact isomorphism over the base";
    CatPtr A = src.random_poset(4);
    BaseProduct base = make_base(A, sharp(standard_simplex(0)));
    int a = src.pick(A->objects());
    MarkedSSet Xs = src.random_marked_sset(8);
    MarkedOverBase X{Xs, MarkedMap{SimplicialMap::constant(Xs.space, base.b_plus.space,
                                                           SimplexId{0, 0}),
                                   Xs, base.b_plus}};
    FunctorToMarkedOverB F = atom_functor(base, a, X);
    Lambda L = lambda_straighten(F, base);

    MarkedProduct E = marked_product(sharp(base.slice_nerves[static_cast<size_t>(a)].space),
                                     X.total);
    SimplicialMap st = pairing(base.prod.prod,
                               compose(base.slice_proj[static_cast<size_t>(a)], E.prod.proj_left),
                               compose(X.structure.map, E.prod.proj_right));
    MarkedOverBase expected{E.space, MarkedMap{std::move(st), E.space, base.prod.space}};
    bool ok = isomorphic_over(L.result, expected).has_value();
    rep.lines.push_back("objects " + std::to_string(A->objects()) + ", atom at " +
                        std::to_string(a));
    rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return rep;
}

MarkedOverBase base_sharp_over_itself(const BaseProduct& base) {
    SimplicialMap st = pairing(
        base.prod.prod, SimplicialMap::identity(base.a_sharp.space),
        SimplicialMap::constant(base.a_sharp.space, base.b_plus.space, SimplexId{0, 0}));
    return MarkedOverBase{base.a_sharp,
                          MarkedMap{std::move(st), base.a_sharp, base.prod.space}};
}

MarkedOverBase whole_base_over_itself(const BaseProduct& base) {
    return MarkedOverBase{base.prod.space, marked_identity(base.prod.space)};
}

// W = (slice sharp at a) x B+ over A# x B+, a small fibrant family
MarkedOverBase sliced_fibration(const BaseProduct& base, int a) {
    MarkedProduct P = marked_product(sharp(base.slice_nerves[static_cast<size_t>(a)].space),
                                     base.b_plus);
    SimplicialMap st = pairing(base.prod.prod,
                               compose(base.slice_proj[static_cast<size_t>(a)], P.prod.proj_left),
                               P.prod.proj_right);
    return MarkedOverBase{P.space, MarkedMap{std::move(st), P.space, base.prod.space}};
}

TheoremInstance make_stability_instance(InstanceSource& src, const std::string& tag) {
    TheoremInstance t;
    t.theorem = tag;
    if (tag == "stability_inner_anodyne") {
        int n = 2 + src.pick(2);
        int k = 1 + src.pick(n - 1);
        auto inc = horn_inclusion(n, k);
        t.i = MarkedMap{inc, sharp(inc.source()), sharp(inc.target())};
        // q: cocartesian nerve over the standard base, kept desk-sized
        GrothendieckFibration fib = src.random_grothendieck(n, 2);
        while (fib.total_nerve.space->total_count() > 32)
            fib = src.random_grothendieck(n, 2);
        auto iso = is_isomorphic(fib.base_nerve.space, standard_simplex(n));
        // rebase the projection onto the standard presentation
        MarkedMap q{compose(inverse_of(*iso), fib.projection.map), fib.total_marked,
                    sharp(standard_simplex(n))};
        t.q = q;
        t.bounds.max_steps = 8;
        t.bounds.max_param = std::max(3, fib.total_nerve.space->dim());
        t.bounds.cutoff = 3;
        t.bounds.max_states = 4000;
    } else {
        // cellular marked right (or general marked right) input over the
        // sharp interval or a prism target
        GeneratorInstance gi =
            src.pick(2) ? GeneratorInstance{GenFamily::B2p, src.pick(2)}
                        : GeneratorInstance{GenFamily::B1p};
        MarkedMap g = generator(gi);
        t.i = g;
        // q: product of the target with a naturally marked nerve
        MarkedProduct P = marked_product(g.tgt, natural_marking(nerve(src.random_poset(2))));
        t.q = P.proj_left;
        t.bounds.max_steps = 8;
        t.bounds.cutoff = 3;
    }
    return t;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"adjunctions",   "generators",     "fibration-oracle", "ezproper",
            "improvedrightproper", "stability-inner-anodyne", "example-law",
            "fibercomputation", "mate",        "derivedunit",     "rectification",
            "joyalproperness", "pbleftquillen"};
}

bool suite_is_theorem_backed(const std::string& name) {
    return name == "ezproper" || name == "improvedrightproper" ||
           name == "stability-inner-anodyne" || name == "fibercomputation" ||
           name == "mate" || name == "derivedunit" || name == "rectification" ||
           name == "joyalproperness" || name == "pbleftquillen";
}

std::vector<TheoremInstance> suite_instances(const std::string& name, std::uint64_t seed,
                                             int count) {
    if (!suite_is_theorem_backed(name))
        throw InvalidParameter("suite_instances: '" + name + "' is not theorem-backed");
    InstanceSource src(seed);
    std::vector<TheoremInstance> out;
    for (int i = 0; i < count; ++i) {
        TheoremInstance t;
        if (name == "ezproper" || name == "improvedrightproper") {
            t = make_stability_instance(src, "ezproper");
            t.theorem = name == "ezproper" ? "ezproper" : "improvedrightproper";
            if (name == "improvedrightproper") {
                auto disc = natural_marking(nerve(discrete_category(1 + src.pick(2))));
                GeneratorInstance gi{GenFamily::A1, 2, 1};
                if (src.pick(2)) gi = GeneratorInstance{GenFamily::B2p, src.pick(2)};
                MarkedMap g = generator(gi);
                t.i = g;
                MarkedProduct P = marked_product(g.tgt, disc);
                t.q = P.proj_left;
            }
        } else if (name == "stability-inner-anodyne") {
            t = make_stability_instance(src, "stability_inner_anodyne");
        } else if (name == "fibercomputation" || name == "mate") {
            t.theorem = name;
            t.A = src.random_poset(3);
            t.b_plus = src.pick(2) ? sharp(standard_simplex(0)) : sharp(standard_simplex(1));
            BaseProduct base = make_base(t.A, *t.b_plus);
            switch (src.pick(3)) {
            case 0: t.W = whole_base_over_itself(base); break;
            default: t.W = sliced_fibration(base, src.pick(t.A->objects())); break;
            }
        } else if (name == "derivedunit") {
            t.theorem = "derivedunit";
            t.A = src.pick(2) ? chain_poset(1) : chain_poset(2);
            t.b_plus = sharp(standard_simplex(0));
            BaseProduct base = make_base(t.A, *t.b_plus);
            t.obj_a = src.pick(t.A->objects());
            auto d1 = standard_simplex(1);
            MarkedSSet xs = src.pick(3) == 0   ? sharp(standard_simplex(0))
                            : src.pick(2) == 0 ? flat(d1)
                                               : sharp(d1);
            t.X = MarkedOverBase{xs, MarkedMap{SimplicialMap::constant(
                                                   xs.space, base.b_plus.space, SimplexId{0, 0}),
                                               xs, base.b_plus}};
            t.W = src.pick(2) ? base_sharp_over_itself(base)
                              : sliced_fibration(base, src.pick(t.A->objects()));
        } else if (name == "rectification") {
            t.theorem = "rectification_roundtrip";
            t.A = src.pick(2) ? chain_poset(1) : src.random_poset(2);
            t.b_plus = sharp(standard_simplex(0));
            BaseProduct base = make_base(t.A, *t.b_plus);
            t.obj_a = src.pick(t.A->objects());
            MarkedSSet xs = sharp(standard_simplex(src.pick(2)));
            t.X = MarkedOverBase{xs, MarkedMap{SimplicialMap::constant(
                                                   xs.space, base.b_plus.space, SimplexId{0, 0}),
                                               xs, base.b_plus}};
        } else if (name == "joyalproperness") {
            t.theorem = "joyalproperness";
            int n = 2 + src.pick(2);
            for (;;) {
                std::vector<CatPtr> fibers;
                for (int s2 = 0; s2 <= n; ++s2)
                    fibers.push_back(src.random_poset(n == 2 ? 3 : 2));
                std::vector<CatFunctor> steps;
                bool ok = true;
                for (int s2 = 0; s2 < n; ++s2) {
                    auto fs = enumerate_functors(fibers[static_cast<size_t>(s2)],
                                                 fibers[static_cast<size_t>(s2) + 1]);
                    if (fs.empty()) {
                        ok = false;
                        break;
                    }
                    steps.push_back(
                        fs[static_cast<size_t>(src.pick(static_cast<int>(fs.size())))]);
                }
                if (!ok) continue;
                // keep the total nerve desk-sized
                if (nerve(grothendieck(fibers, steps).total).space->total_count() > 28)
                    continue;
                t.fibers = fibers;
                t.steps = steps;
                break;
            }
            t.horn_k = 1 + src.pick(n - 1);
            t.bounds.depth = 3;
            t.bounds.cutoff = 3;
        } else if (name == "pbleftquillen") {
            t.theorem = "pbleftquillen_generators";
            auto d1 = standard_simplex(1);
            MarkedProduct P = marked_product(sharp(d1),
                                             natural_marking(nerve(src.random_poset(2))));
            t.p = P.proj_left;
            t.bounds.max_param = 1;
            t.bounds.max_steps = 4;
        }
        out.push_back(std::move(t));
    }
    return out;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int count) {
    auto names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string known;
        for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
        throw InvalidParameter("run_suite: unknown suite '" + name + "'; known: " + known);
    }
    SuiteReport rep;
    rep.name = name;
    rep.seed = seed;
    rep.requested = count;

    std::vector<InstanceReport> reports;
    if (suite_is_theorem_backed(name)) {
        for (const auto& t : suite_instances(name, seed, count))
            reports.push_back(run_instance(t));
    } else {
        InstanceSource src(seed);
        for (int i = 0; i < count; ++i) {
            if (name == "adjunctions") {
                reports.push_back(adjunction_instance(src));
            } else if (name == "generators") {
                auto all = family_instances(FamilyClass::MarkedLeft, 4);
                auto dual = family_instances(FamilyClass::MarkedRight, 4);
                all.insert(all.end(), dual.begin(), dual.end());
                reports.push_back(
                    generator_instance_report(all[static_cast<size_t>(i) % all.size()]));
            } else if (name == "fibration-oracle") {
                reports.push_back(fibration_oracle_instance(src));
            } else if (name == "example-law") {
                reports.push_back(example_law_instance(src));
            } else {
                throw InvalidParameter("run_suite: unhandled suite");
            }
        }
    }
    for (auto& r : reports) {
        switch (r.verdict) {
        case Verdict::Pass: ++rep.passes; break;
        case Verdict::Fail: ++rep.fails; break;
        case Verdict::Unknown: ++rep.unknowns; break;
        }
        rep.instances.push_back(std::move(r));
    }
    return rep;
}

} // namespace msset
