#include "msset/straighten.hpp"

#include <algorithm>

namespace msset {

BaseProduct make_base(const CatPtr& A, MarkedSSet b_plus) {
    BaseProduct out;
    out.A = A;
    out.a_nerve = nerve(A);
    out.a_sharp = sharp(out.a_nerve.space);
    out.b_plus = std::move(b_plus);
    out.prod = marked_product(out.a_sharp, out.b_plus);
    for (int a = 0; a < A->objects(); ++a) {
        out.slices.push_back(slice_under(A, a));
        out.slice_nerves.push_back(nerve(out.slices.back().cat));
        out.slice_proj.push_back(
            nerve_map(out.slice_nerves.back(), out.a_nerve, out.slices.back().forget));
    }
    return out;
}

void FunctorToMarkedOverB::validate() const {
    for (const auto& v : values) {
        v.structure.validate();
        if (!same_presentation(*v.structure.tgt.space, *base.space))
            throw InvalidParameter("functor-over-B: a value is not over the base");
    }
    for (int f = 0; f < indexing->arrow_count(); ++f) {
        const auto& m = arrows[static_cast<size_t>(f)];
        m.validate();
        int s = indexing->arrow(f).src;
        int d = indexing->arrow(f).dst;
        if (!same_images(compose(values[static_cast<size_t>(d)].structure.map, m.map),
                         values[static_cast<size_t>(s)].structure.map))
            throw InvalidParameter("functor-over-B: arrow does not commute over the base");
        if (indexing->is_identity(f) && !m.map.is_identity_like())
            throw InvalidParameter("functor-over-B: identity arrow is not the identity");
    }
    for (int f = 0; f < indexing->arrow_count(); ++f)
        for (int g = 0; g < indexing->arrow_count(); ++g) {
            if (!indexing->composable(g, f)) continue;
            int gf = indexing->compose(g, f);
            if (!same_images(arrows[static_cast<size_t>(gf)].map,
                             compose(arrows[static_cast<size_t>(g)].map,
                                     arrows[static_cast<size_t>(f)].map)))
                throw InvalidParameter("functor-over-B: composition not respected");
        }
}

FunctorToMarkedOverB atom_functor(const BaseProduct& base, int a, const MarkedOverBase& Xp) {
    if (a < 0 || a >= base.A->objects()) throw InvalidParameter("atom_functor: unknown object");
    FunctorToMarkedOverB F;
    F.indexing = base.A;
    F.base = base.b_plus;

    std::vector<std::vector<int>> homs; // per object: arrows a -> a'
    for (int o = 0; o < base.A->objects(); ++o) homs.push_back(base.A->hom(a, o));

    std::vector<MarkedCoproduct> cps;
    for (int o = 0; o < base.A->objects(); ++o) {
        std::vector<MarkedSSet> copies(homs[static_cast<size_t>(o)].size(), Xp.total);
        cps.push_back(marked_coproduct(copies));
        std::vector<SimplicialMap> legs(copies.size(), Xp.structure.map);
        SimplicialMap st = coproduct_map(cps.back().cop, legs, base.b_plus.space);
        F.values.push_back(
            MarkedOverBase{cps.back().space,
                           MarkedMap{std::move(st), cps.back().space, base.b_plus}});
    }
    for (int f = 0; f < base.A->arrow_count(); ++f) {
        int s = base.A->arrow(f).src;
        int d = base.A->arrow(f).dst;
        // reindex summands by postcomposition with f
        std::vector<SimplicialMap> legs;
        for (int u : homs[static_cast<size_t>(s)]) {
            int fu = base.A->compose(f, u);
            auto pos = std::find(homs[static_cast<size_t>(d)].begin(),
                                 homs[static_cast<size_t>(d)].end(), fu) -
                       homs[static_cast<size_t>(d)].begin();
            legs.push_back(cps[static_cast<size_t>(d)]
                               .injections[static_cast<size_t>(pos)]
                               .map);
        }
        SimplicialMap m = coproduct_map(cps[static_cast<size_t>(s)].cop, legs,
                                        F.values[static_cast<size_t>(d)].total.space);
        F.arrows.push_back(MarkedMap{std::move(m), F.values[static_cast<size_t>(s)].total,
                                     F.values[static_cast<size_t>(d)].total});
    }
    F.validate();
    return F;
}

// ---- map space ----

namespace {

std::vector<int> ref_as_operator(const SimplexRef& r, const SSetPtr& domain) {
    // the monotone map [dim r] -> [n] classified by a simplex of standard(n):
    // base subset composed with the degeneracy surjection
    auto subsets = subsets_of_size(domain->dim(), r.base.dim + 1);
    const auto& base_subset = subsets[static_cast<size_t>(r.base.idx)];
    auto collapse = surj::from_word(r.word, r.dim());
    std::vector<int> out;
    for (int t = 0; t <= r.dim(); ++t)
        out.push_back(base_subset[static_cast<size_t>(collapse[static_cast<size_t>(t)])]);
    return out;
}

} // namespace

int MapSpace::find_elem(int level, const SimplexRef& b,
                        const std::vector<std::vector<SimplexRef>>& h) const {
    const auto& lev = elems[static_cast<size_t>(level)];
    Elem probe{b, h};
    for (size_t i = 0; i < lev.size(); ++i)
        if (lev[i] == probe) return static_cast<int>(i);
    throw InvalidParameter("map_space: element not found");
}

int MapSpace::op_face(int level, int elem, int i) const {
    const Elem& e = elems[static_cast<size_t>(level)][static_cast<size_t>(elem)];
    SimplexRef b2 = b_space->face(e.b, i);
    std::vector<int> delta;
    for (int t = 0; t < level; ++t) delta.push_back(t < i ? t : t + 1);
    SimplicialMap dmap = standard_map(level - 1, level, delta);
    SimplicialMap incl = product_map(xprod[static_cast<size_t>(level) - 1],
                                     xprod[static_cast<size_t>(level)],
                                     SimplicialMap::identity(x_marked.space), dmap);
    SimplicialMap hmap(xprod[static_cast<size_t>(level)].space, w_space, e.h);
    SimplicialMap restricted = compose(hmap, incl);
    return find_elem(level - 1, b2, restricted.images());
}

int MapSpace::op_degeneracy(int level, int elem, int j) const {
    const Elem& e = elems[static_cast<size_t>(level)][static_cast<size_t>(elem)];
    SimplexRef b2 = b_space->degeneracy(e.b, j);
    std::vector<int> sigma;
    for (int t = 0; t <= level + 1; ++t) sigma.push_back(t <= j ? std::min(t, j) : t - 1);
    SimplicialMap smap = standard_map(level + 1, level, sigma);
    SimplicialMap proj = product_map(xprod[static_cast<size_t>(level) + 1],
                                     xprod[static_cast<size_t>(level)],
                                     SimplicialMap::identity(x_marked.space), smap);
    SimplicialMap hmap(xprod[static_cast<size_t>(level)].space, w_space, e.h);
    SimplicialMap extended = compose(hmap, proj);
    return find_elem(level + 1, b2, extended.images());
}

int MapSpace::translate(int level, int elem, const std::vector<int>& word) const {
    int cur = elem;
    int lv = level;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        cur = op_degeneracy(lv, cur, *it);
        ++lv;
    }
    return cur;
}

MapSpace map_space(const MarkedOverBase& Xp, const MarkedOverBase& Wp, const BaseProduct& base,
                   int depth) {
    if (depth < 0) throw InvalidParameter("map_space: negative depth");
    MapSpace out;
    out.depth = depth;
    out.x_marked = Xp.total;
    out.w_space = Wp.total.space;
    out.b_space = base.b_plus.space;
    const SSetPtr& B = base.b_plus.space;
    const SSetPtr& X = Xp.total.space;

    for (int n = 0; n <= depth; ++n) {
        out.xprod.push_back(product(X, standard_simplex(n)));
        const Product& P = out.xprod.back();
        std::vector<MapSpace::Elem> level;
        for (const auto& b : B->level(n)) {
            SimplicialMap b_map = classifying_map(B, b);
            // required structure image per nondegenerate simplex of X x Delta^n
            ImageConstraint constraint = [&](SimplexId p, const SimplexRef& cand) {
                const auto& [px, pd] =
                    P.pairs[static_cast<size_t>(p.dim)][static_cast<size_t>(p.idx)];
                SimplexRef want = base.prod.prod.pair_ref(Xp.structure.apply(px),
                                                          b_map.apply(pd));
                if (Wp.structure.apply(cand) != want) return false;
                // flat-product marks: X-marked edge paired with degenerate interval part
                if (p.dim == 1 && Xp.total.is_marked(px) && pd.is_degenerate() &&
                    !Wp.total.is_marked(cand))
                    return false;
                return true;
            };
            for (const auto& h : enumerate_maps(P.space, Wp.total.space, constraint))
                level.push_back(MapSpace::Elem{b, h.images()});
        }
        out.elems.push_back(std::move(level));
    }

    LevelwiseData data;
    data.top = depth;
    for (const auto& lv : out.elems) data.sizes.push_back(static_cast<int>(lv.size()));
    data.face = [&](int n, int e, int i) { return out.op_face(n, e, i); };
    data.degeneracy = [&](int n, int e, int j) { return out.op_degeneracy(n, e, j); };
    Extraction ex = extract_presentation(data);
    out.elem_refs = ex.elem_refs;
    out.nondeg_elems = ex.nondeg_elems;

    MarkedSSet total{ex.space, {}, -1};
    if (ex.space->dim() >= 1 && depth >= 1) {
        for (size_t idx = 0; idx < out.nondeg_elems[1].size(); ++idx) {
            const auto& e = out.elems[1][static_cast<size_t>(out.nondeg_elems[1][idx])];
            if (!base.b_plus.is_marked(e.b)) continue;
            // sharp condition: X-marked-or-degenerate component suffices
            const Product& P = out.xprod[1];
            SimplicialMap hmap(P.space, Wp.total.space, e.h);
            bool sharp_ok = true;
            for (int pe = 0; pe < P.space->count(1) && sharp_ok; ++pe) {
                const auto& [px, pd] = P.pairs[1][static_cast<size_t>(pe)];
                (void)pd;
                if (Xp.total.is_marked(px) && !Wp.total.is_marked(hmap.apply(SimplexId{1, pe})))
                    sharp_ok = false;
            }
            if (sharp_ok) total.marks.insert(static_cast<int>(idx));
        }
    }

    std::vector<std::vector<SimplexRef>> st(
        static_cast<size_t>(std::max(0, ex.space->dim())) + 1);
    for (int d = 0; d <= ex.space->dim(); ++d)
        for (int e : out.nondeg_elems[static_cast<size_t>(d)])
            st[static_cast<size_t>(d)].push_back(out.elems[static_cast<size_t>(d)]
                                                          [static_cast<size_t>(e)].b);
    out.result.total = total;
    out.result.structure =
        MarkedMap{SimplicialMap(ex.space, B, std::move(st)), total, base.b_plus};
    return out;
}

// ---- lambda ----

Lambda lambda_straighten(const FunctorToMarkedOverB& F, const BaseProduct& base) {
    F.validate();
    Lambda out;
    const CatPtr& A = base.A;

    std::vector<MarkedSSet> parts;
    for (int a = 0; a < A->objects(); ++a) {
        MarkedProduct Y =
            marked_product(sharp(base.slice_nerves[static_cast<size_t>(a)].space),
                           F.values[static_cast<size_t>(a)].total);
        // structure into A# x B+
        std::vector<std::vector<SimplexRef>> st(
            static_cast<size_t>(std::max(0, Y.space.space->dim())) + 1);
        for (int d = 0; d <= Y.space.space->dim(); ++d)
            for (const auto& [s, x] : Y.prod.pairs[static_cast<size_t>(d)])
                st[static_cast<size_t>(d)].push_back(base.prod.prod.pair_ref(
                    base.slice_proj[static_cast<size_t>(a)].apply(s),
                    F.values[static_cast<size_t>(a)].structure.apply(x)));
        out.summand_structures.push_back(
            MarkedMap{SimplicialMap(Y.space.space, base.prod.space.space, std::move(st)),
                      Y.space, base.prod.space});
        out.summands.push_back(std::move(Y));
        parts.push_back(out.summands.back().space);
    }
    out.parts = marked_coproduct(parts);

    // relation legs over the non-identity arrows
    std::vector<SSetPtr> rel_parts;
    std::vector<SimplicialMap> leg1, leg2;
    for (int f = 0; f < A->arrow_count(); ++f) {
        if (A->is_identity(f)) continue;
        int s = A->arrow(f).src;
        int d = A->arrow(f).dst;
        Product Xf = product(base.slice_nerves[static_cast<size_t>(d)].space,
                             F.values[static_cast<size_t>(s)].total.space);
        // reindex the slice: (a_dst / A) -> (a_src / A)
        CatFunctor r = slice_reindex(base.slices[static_cast<size_t>(d)],
                                     base.slices[static_cast<size_t>(s)], A, f);
        SimplicialMap rn = nerve_map(base.slice_nerves[static_cast<size_t>(d)],
                                     base.slice_nerves[static_cast<size_t>(s)], r);
        SimplicialMap to_s = product_map(
            Xf, out.summands[static_cast<size_t>(s)].prod, rn,
            SimplicialMap::identity(F.values[static_cast<size_t>(s)].total.space));
        SimplicialMap to_d = product_map(
            Xf, out.summands[static_cast<size_t>(d)].prod,
            SimplicialMap::identity(base.slice_nerves[static_cast<size_t>(d)].space),
            F.arrows[static_cast<size_t>(f)].map);
        rel_parts.push_back(Xf.space);
        leg1.push_back(compose(out.parts.cop.injections[static_cast<size_t>(s)], to_s));
        leg2.push_back(compose(out.parts.cop.injections[static_cast<size_t>(d)], to_d));
    }
    Coproduct rel = coproduct(rel_parts);
    SimplicialMap m1 = coproduct_map(rel, leg1, out.parts.space.space);
    SimplicialMap m2 = coproduct_map(rel, leg2, out.parts.space.space);
    out.coeq = coequalizer(m1, m2);

    // marks: images of marked edges of the coproduct
    MarkedSSet total{out.coeq.space, {}, -1};
    for (int m : out.parts.space.marks) {
        SimplexRef im = out.coeq.quotient.apply(SimplexId{1, m});
        if (!im.is_degenerate()) total.marks.insert(im.base.idx);
    }
    // structure map descends
    std::vector<SimplicialMap> st_legs;
    for (const auto& s : out.summand_structures) st_legs.push_back(s.map);
    SimplicialMap st_total =
        coproduct_map(out.parts.cop, st_legs, base.prod.space.space);
    SimplicialMap st_q = out.coeq.descend(st_total);
    out.result.total = total;
    out.result.structure = MarkedMap{std::move(st_q), total, base.prod.space};
    out.result.structure.validate();
    return out;
}

// ---- rho ----

Rho rho_unstraighten(const MarkedOverBase& Wp, const BaseProduct& base, int depth) {
    Rho out;
    out.depth = depth;
    const CatPtr& A = base.A;
    for (int a = 0; a < A->objects(); ++a) {
        MarkedOverBase slice_over{
            sharp(base.slice_nerves[static_cast<size_t>(a)].space),
            MarkedMap{base.slice_proj[static_cast<size_t>(a)],
                      sharp(base.slice_nerves[static_cast<size_t>(a)].space), base.a_sharp}};
        out.spaces.push_back(map_space(slice_over, Wp, base, depth));
    }
    out.functor.indexing = A;
    out.functor.base = base.b_plus;
    for (const auto& m : out.spaces) out.functor.values.push_back(m.result);

    for (int f = 0; f < A->arrow_count(); ++f) {
        int s = A->arrow(f).src;
        int d = A->arrow(f).dst;
        const MapSpace& Ms = out.spaces[static_cast<size_t>(s)];
        const MapSpace& Md = out.spaces[static_cast<size_t>(d)];
        CatFunctor r = slice_reindex(base.slices[static_cast<size_t>(d)],
                                     base.slices[static_cast<size_t>(s)], A, f);
        SimplicialMap rn = nerve_map(base.slice_nerves[static_cast<size_t>(d)],
                                     base.slice_nerves[static_cast<size_t>(s)], r);
        std::vector<std::vector<SimplexRef>> images(
            static_cast<size_t>(std::max(0, Ms.result.total.space->dim())) + 1);
        for (int lvl = 0; lvl <= Ms.result.total.space->dim(); ++lvl)
            for (int e : Ms.nondeg_elems[static_cast<size_t>(lvl)]) {
                const auto& el = Ms.elems[static_cast<size_t>(lvl)][static_cast<size_t>(e)];
                SimplicialMap pre = product_map(
                    Md.xprod[static_cast<size_t>(lvl)], Ms.xprod[static_cast<size_t>(lvl)],
                    rn, SimplicialMap::identity(standard_simplex(lvl)));
                SimplicialMap hmap(Ms.xprod[static_cast<size_t>(lvl)].space, Ms.w_space,
                                   el.h);
                int target = Md.find_elem(lvl, el.b, compose(hmap, pre).images());
                images[static_cast<size_t>(lvl)].push_back(Md.ref_of(lvl, target));
            }
        out.functor.arrows.push_back(
            MarkedMap{SimplicialMap(Ms.result.total.space, Md.result.total.space,
                                    std::move(images)),
                      Ms.result.total, Md.result.total});
    }
    out.functor.validate();
    return out;
}

// ---- unit and counit ----

std::vector<MarkedMap> unit_components(const FunctorToMarkedOverB& F, const Lambda& L,
                                       const Rho& R, const BaseProduct& base) {
    std::vector<MarkedMap> out;
    for (int a = 0; a < base.A->objects(); ++a) {
        const MarkedOverBase& Fa = F.values[static_cast<size_t>(a)];
        const MapSpace& Ma = R.spaces[static_cast<size_t>(a)];
        if (Fa.total.space->dim() > R.depth)
            throw InsufficientDepth("unit: value exceeds the truncation depth");
        std::vector<std::vector<SimplexRef>> images(
            static_cast<size_t>(std::max(0, Fa.total.space->dim())) + 1);
        for (int n = 0; n <= Fa.total.space->dim(); ++n)
            for (int idx = 0; idx < Fa.total.space->count(n); ++idx) {
                // h_x : (a/A) x Delta^n -> lambda(F)
                const Product& P = Ma.xprod[static_cast<size_t>(n)];
                std::vector<std::vector<SimplexRef>> h(
                    static_cast<size_t>(std::max(0, P.space->dim())) + 1);
                for (int d = 0; d <= P.space->dim(); ++d)
                    for (const auto& [s, rd] : P.pairs[static_cast<size_t>(d)]) {
                        auto op = ref_as_operator(rd, standard_simplex(n));
                        SimplexRef xs = Fa.total.space->act(nondeg(n, idx), op);
                        SimplexRef pair = L.summands[static_cast<size_t>(a)].prod.pair_ref(s, xs);
                        SimplexRef in_cop =
                            L.parts.cop.injections[static_cast<size_t>(a)].apply(pair);
                        h[static_cast<size_t>(d)].push_back(
                            L.coeq.quotient.apply(in_cop));
                    }
                SimplexRef b = Fa.structure.apply(SimplexId{n, idx});
                int e = Ma.find_elem(n, b, h);
                images[static_cast<size_t>(n)].push_back(Ma.ref_of(n, e));
            }
        out.push_back(MarkedMap{SimplicialMap(Fa.total.space,
                                              Ma.result.total.space, std::move(images)),
                                Fa.total, Ma.result.total});
    }
    return out;
}

MarkedMap counit(const MarkedOverBase& Wp, const Rho& R, const Lambda& LR,
                 const BaseProduct& base) {
    // evaluation on each summand (a/A)# x Map^B((a/A)#, W)
    std::vector<SimplicialMap> legs;
    for (int a = 0; a < base.A->objects(); ++a) {
        const MapSpace& Ma = R.spaces[static_cast<size_t>(a)];
        const MarkedProduct& Y = LR.summands[static_cast<size_t>(a)];
        std::vector<std::vector<SimplexRef>> images(
            static_cast<size_t>(std::max(0, Y.space.space->dim())) + 1);
        for (int d = 0; d <= Y.space.space->dim(); ++d)
            for (const auto& [s, m] : Y.prod.pairs[static_cast<size_t>(d)]) {
                // m is a simplex of the mapping space: translate its element
                // up to level d and evaluate at (s, the top simplex)
                int base_level = m.base.dim;
                int elem = Ma.nondeg_elems[static_cast<size_t>(base_level)]
                                          [static_cast<size_t>(m.base.idx)];
                int lvl_elem = Ma.translate(base_level, elem, m.word);
                const auto& el = Ma.elems[static_cast<size_t>(d)][static_cast<size_t>(lvl_elem)];
                SimplicialMap hmap(Ma.xprod[static_cast<size_t>(d)].space, Ma.w_space, el.h);
                SimplexRef top = nondeg(d, 0); // the top cell of standard(d)
                SimplexRef pair = Ma.xprod[static_cast<size_t>(d)].pair_ref(s, top);
                images[static_cast<size_t>(d)].push_back(hmap.apply(pair));
            }
        legs.push_back(SimplicialMap(Y.space.space, Wp.total.space, std::move(images)));
    }
    SimplicialMap on_parts = coproduct_map(LR.parts.cop, legs, Wp.total.space);
    SimplicialMap descended = LR.coeq.descend(on_parts);
    MarkedMap out{std::move(descended), LR.result.total, Wp.total};
    out.validate();
    if (!same_images(compose(Wp.structure.map, out.map), LR.result.structure.map))
        throw MssetError("counit: does not commute with the structures");
    return out;
}

// ---- fibers ----

Fiber fiber(const MarkedOverBase& Wp, const BaseProduct& base, int a) {
    if (a < 0 || a >= base.A->objects()) throw InvalidParameter("fiber: unknown object");
    const SSetPtr& B = base.b_plus.space;
    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, B->dim())) + 1);
    for (int d = 0; d <= B->dim(); ++d) {
        std::vector<int> word;
        for (int j = d - 1; j >= 0; --j) word.push_back(j);
        for (int idx = 0; idx < B->count(d); ++idx)
            images[static_cast<size_t>(d)].push_back(
                base.prod.prod.pair_ref(SimplexRef{{0, a}, word}, nondeg(d, idx)));
    }
    MarkedMap incl{SimplicialMap(B, base.prod.space.space, std::move(images)),
                   base.b_plus, base.prod.space};
    Fiber out;
    out.pb = marked_pullback(incl, Wp.structure);
    out.over_b = MarkedOverBase{out.pb.space, out.pb.to_left};
    out.into_total = out.pb.to_right;
    return out;
}

MarkedMap fiber_comparison(const MapSpace& M, const Fiber& fib, const BaseProduct& base,
                           int a) {
    // evaluate at the identity vertex of the slice
    int id_vertex = -1;
    const SliceCat& sc = base.slices[static_cast<size_t>(a)];
    for (size_t i = 0; i < sc.object_arrow.size(); ++i)
        if (sc.object_arrow[i] == base.A->identity(a)) id_vertex = static_cast<int>(i);
    if (id_vertex < 0) throw MssetError("fiber_comparison: identity vertex missing");

    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, M.result.total.space->dim())) + 1);
    for (int n = 0; n <= M.result.total.space->dim(); ++n)
        for (int e : M.nondeg_elems[static_cast<size_t>(n)]) {
            const auto& el = M.elems[static_cast<size_t>(n)][static_cast<size_t>(e)];
            SimplicialMap hmap(M.xprod[static_cast<size_t>(n)].space, M.w_space, el.h);
            std::vector<int> word;
            for (int j = n - 1; j >= 0; --j) word.push_back(j);
            SimplexRef pair = M.xprod[static_cast<size_t>(n)].pair_ref(
                SimplexRef{{0, id_vertex}, word}, nondeg(n, 0));
            SimplexRef w = hmap.apply(pair);
            images[static_cast<size_t>(n)].push_back(fib.pb.pb.pair_ref(el.b, w));
        }
    MarkedMap out{SimplicialMap(M.result.total.space, fib.over_b.total.space,
                                std::move(images)),
                  M.result.total, fib.over_b.total};
    out.validate();
    return out;
}

// ---- enumeration helpers ----

std::vector<MarkedMap> enumerate_maps_over(const MarkedOverBase& Xp, const MarkedOverBase& Yp) {
    ImageConstraint constraint = [&](SimplexId p, const SimplexRef& cand) {
        if (Yp.structure.apply(cand) != Xp.structure.apply(nondeg(p))) return false;
        if (p.dim == 1 && Xp.total.marks.count(p.idx) && !Yp.total.is_marked(cand))
            return false;
        return true;
    };
    std::vector<MarkedMap> out;
    for (auto& f : enumerate_maps(Xp.total.space, Yp.total.space, constraint))
        out.push_back(MarkedMap{std::move(f), Xp.total, Yp.total});
    return out;
}

MarkedMap lambda_of_transformation(const Lambda& LF, const Lambda& LG,
                                   const std::vector<MarkedMap>& components) {
    std::vector<SimplicialMap> legs;
    for (size_t a = 0; a < LF.summands.size(); ++a) {
        SimplicialMap on_summand = product_map(
            LF.summands[a].prod, LG.summands[a].prod,
            SimplicialMap::identity(LF.summands[a].prod.left), components[a].map);
        legs.push_back(compose(compose(LG.coeq.quotient,
                                       LG.parts.cop.injections[a]),
                               on_summand));
    }
    SimplicialMap on_parts = coproduct_map(LF.parts.cop, legs, LG.result.total.space);
    SimplicialMap q = LF.coeq.descend(on_parts);
    MarkedMap out{std::move(q), LF.result.total, LG.result.total};
    out.validate();
    return out;
}

std::optional<MarkedMap> isomorphic_over(const MarkedOverBase& L, const MarkedOverBase& R) {
    if (L.total.marks.size() != R.total.marks.size()) return std::nullopt;
    ImageConstraint constraint = [&](SimplexId p, const SimplexRef& cand) {
        if (R.structure.apply(cand) != L.structure.apply(nondeg(p))) return false;
        if (p.dim == 1 && L.total.marks.count(p.idx) != R.total.marks.count(cand.base.idx))
            return false;
        return true;
    };
    auto iso = find_isomorphism(L.total.space, R.total.space, {}, constraint);
    if (!iso) return std::nullopt;
    return MarkedMap{*iso, L.total, R.total};
}

std::vector<std::vector<MarkedMap>> enumerate_natural_transformations(
    const FunctorToMarkedOverB& F, const FunctorToMarkedOverB& G) {
    const CatPtr& A = F.indexing;
    std::vector<std::vector<MarkedMap>> per_object;
    for (int a = 0; a < A->objects(); ++a)
        per_object.push_back(enumerate_maps_over(F.values[static_cast<size_t>(a)],
                                                 G.values[static_cast<size_t>(a)]));
    // filter tuples by naturality
    std::vector<std::vector<MarkedMap>> out;
    std::vector<size_t> pick(static_cast<size_t>(A->objects()), 0);
    std::function<void(int)> rec = [&](int a) {
        if (a == A->objects()) {
            for (int f = 0; f < A->arrow_count(); ++f) {
                int s = A->arrow(f).src;
                int d = A->arrow(f).dst;
                if (!same_images(
                        compose(G.arrows[static_cast<size_t>(f)].map,
                                per_object[static_cast<size_t>(s)][pick[static_cast<size_t>(s)]].map),
                        compose(per_object[static_cast<size_t>(d)][pick[static_cast<size_t>(d)]].map,
                                F.arrows[static_cast<size_t>(f)].map)))
                    return;
            }
            std::vector<MarkedMap> tuple;
            for (int o = 0; o < A->objects(); ++o)
                tuple.push_back(per_object[static_cast<size_t>(o)][pick[static_cast<size_t>(o)]]);
            out.push_back(std::move(tuple));
            return;
        }
        for (size_t i = 0; i < per_object[static_cast<size_t>(a)].size(); ++i) {
            pick[static_cast<size_t>(a)] = i;
            rec(a + 1);
        }
    };
    if (A->objects() == 0) return out;
    rec(0);
    return out;
}

} // namespace msset
