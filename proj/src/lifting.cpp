#include "msset/lifting.hpp"

#include <algorithm>

namespace msset {

void LiftingProblem::validate() const {
    left.validate();
    right.validate();
    top.validate();
    bottom.validate();
    if (!left.is_mono()) throw InvalidParameter("lifting problem: left leg not mono");
    if (!same_images(compose(right.map, top.map), compose(bottom.map, left.map)))
        throw InvalidParameter("lifting problem: square does not commute");
}

namespace {

struct FillerSearch {
    const LiftingProblem& p;
    const SimplicialSet& B;
    const SimplicialSet& X;
    std::vector<std::vector<SimplexRef>> images; // partial, indexed like B
    std::vector<std::vector<char>> assigned;
    std::vector<SimplexId> free_order;
    std::vector<MarkedMap>* out;
    bool stop_at_first;
    bool done = false;
    mutable std::vector<std::vector<SimplexRef>> levels;
    mutable std::vector<char> levels_ready;

    const std::vector<SimplexRef>& level(int d) const {
        if (static_cast<int>(levels.size()) <= d) {
            levels.resize(static_cast<size_t>(d) + 1);
            levels_ready.resize(static_cast<size_t>(d) + 1, 0);
        }
        if (!levels_ready[static_cast<size_t>(d)]) {
            levels[static_cast<size_t>(d)] = X.level(d);
            levels_ready[static_cast<size_t>(d)] = 1;
        }
        return levels[static_cast<size_t>(d)];
    }

    SimplexRef partial_apply(const SimplexRef& r) const {
        const SimplexRef& im =
            images[static_cast<size_t>(r.base.dim)][static_cast<size_t>(r.base.idx)];
        if (r.word.empty()) return im;
        auto values = surj::compose(surj::from_word(im.word, im.dim()),
                                    surj::from_word(r.word, r.dim()));
        return SimplexRef{im.base, surj::to_word(values)};
    }

    bool faces_ok(SimplexId b, const SimplexRef& cand) const {
        if (b.dim == 0) return true;
        const auto& fs = B.faces_of(b);
        for (int i = 0; i <= b.dim; ++i)
            if (partial_apply(fs[static_cast<size_t>(i)]) != X.face(cand, i)) return false;
        return true;
    }

    bool mark_ok(SimplexId b, const SimplexRef& cand) const {
        if (b.dim != 1 || !p.left.tgt.marks.count(b.idx)) return true;
        return p.right.src.is_marked(cand);
    }

    void emit() {
        MarkedMap filler{SimplicialMap(p.left.tgt.space, p.right.src.space, images),
                         p.left.tgt, p.right.src};
        out->push_back(std::move(filler));
        done = true;
    }

    void run(size_t next) {
        if (done && stop_at_first) return;
        if (next == free_order.size()) {
            emit();
            return;
        }
        SimplexId b = free_order[next];
        SimplexRef bottom_im = p.bottom.apply(b);
        for (const auto& cand : level(b.dim)) {
            if (p.right.apply(cand) != bottom_im) continue;
            if (!mark_ok(b, cand)) continue;
            if (!faces_ok(b, cand)) continue;
            images[static_cast<size_t>(b.dim)][static_cast<size_t>(b.idx)] = cand;
            assigned[static_cast<size_t>(b.dim)][static_cast<size_t>(b.idx)] = 1;
            run(next + 1);
            assigned[static_cast<size_t>(b.dim)][static_cast<size_t>(b.idx)] = 0;
            if (done && stop_at_first) return;
        }
    }
};

std::vector<MarkedMap> fillers(const LiftingProblem& p, bool all) {
    const SSetPtr& B = p.left.tgt.space;
    const SSetPtr& X = p.right.src.space;

    std::vector<MarkedMap> out;
    FillerSearch s{p, *B, *X, {}, {}, {}, &out, !all, false, {}, {}};
    s.images.resize(static_cast<size_t>(std::max(0, B->dim())) + 1);
    s.assigned.resize(s.images.size());
    for (int d = 0; d <= B->dim(); ++d) {
        s.images[static_cast<size_t>(d)].resize(static_cast<size_t>(B->count(d)));
        s.assigned[static_cast<size_t>(d)].assign(static_cast<size_t>(B->count(d)), 0);
    }

    // forced on the image of the left leg
    const SSetPtr& A = p.left.src.space;
    for (int d = 0; d <= A->dim(); ++d)
        for (int idx = 0; idx < A->count(d); ++idx) {
            SimplexRef b = p.left.apply(SimplexId{d, idx});
            SimplexRef v = p.top.apply(SimplexId{d, idx});
            auto& slot = s.images[static_cast<size_t>(d)][static_cast<size_t>(b.base.idx)];
            auto& flag = s.assigned[static_cast<size_t>(d)][static_cast<size_t>(b.base.idx)];
            if (flag && slot != v) return out; // contradictory forcing
            slot = v;
            flag = 1;
        }
    // forced part must itself be consistent
    for (int d = 0; d <= B->dim(); ++d)
        for (int idx = 0; idx < B->count(d); ++idx) {
            if (!s.assigned[static_cast<size_t>(d)][static_cast<size_t>(idx)]) {
                s.free_order.push_back({d, idx});
                continue;
            }
            SimplexId b{d, idx};
            const SimplexRef& v = s.images[static_cast<size_t>(d)][static_cast<size_t>(idx)];
            if (p.right.apply(v) != p.bottom.apply(b)) return out;
            if (!s.mark_ok(b, v)) return out;
        }
    // face consistency of forced simplices against forced lower data is
    // checked lazily during search; verify the fully forced case directly
    std::sort(s.free_order.begin(), s.free_order.end());
    // faces of forced simplices may reference forced data only; check them now
    for (int d = 1; d <= B->dim(); ++d)
        for (int idx = 0; idx < B->count(d); ++idx) {
            if (!s.assigned[static_cast<size_t>(d)][static_cast<size_t>(idx)]) continue;
            bool deps_ready = true;
            for (const auto& f : B->faces_of({d, idx}))
                if (!s.assigned[static_cast<size_t>(f.base.dim)]
                               [static_cast<size_t>(f.base.idx)])
                    deps_ready = false;
            if (deps_ready && !s.faces_ok({d, idx},
                                          s.images[static_cast<size_t>(d)][static_cast<size_t>(idx)]))
                return out;
        }
    s.run(0);
    return out;
}

} // namespace

std::optional<MarkedMap> solve_lifting(const LiftingProblem& p) {
    auto v = fillers(p, false);
    if (v.empty()) return std::nullopt;
    // soundness: recompose both triangles and recheck marks exactly
    const MarkedMap& h = v.front();
    if (!same_images(compose(h.map, p.left.map), p.top.map))
        throw MssetError("solve_lifting: found filler breaks the upper triangle");
    if (!same_images(compose(p.right.map, h.map), p.bottom.map))
        throw MssetError("solve_lifting: found filler breaks the lower triangle");
    h.validate();
    return h;
}

std::vector<MarkedMap> enumerate_fillers(const LiftingProblem& p) { return fillers(p, true); }

std::string to_string(FamilyClass f) {
    switch (f) {
    case FamilyClass::MarkedLeft: return "marked-left";
    case FamilyClass::MarkedRight: return "marked-right";
    case FamilyClass::CellularMarkedLeft: return "cellular-marked-left";
    case FamilyClass::CellularMarkedRight: return "cellular-marked-right";
    case FamilyClass::InnerHorn: return "inner";
    case FamilyClass::LeftHorn: return "left";
    case FamilyClass::RightHorn: return "right";
    case FamilyClass::Boundary: return "trivial";
    case FamilyClass::MarkedTrivial: return "marked-trivial";
    }
    return "?";
}

std::optional<FamilyClass> family_from_string(const std::string& s) {
    for (FamilyClass f :
         {FamilyClass::MarkedLeft, FamilyClass::MarkedRight, FamilyClass::CellularMarkedLeft,
          FamilyClass::CellularMarkedRight, FamilyClass::InnerHorn, FamilyClass::LeftHorn,
          FamilyClass::RightHorn, FamilyClass::Boundary, FamilyClass::MarkedTrivial})
        if (to_string(f) == s) return f;
    return std::nullopt;
}

std::vector<GeneratorInstance> family_instances(FamilyClass f, int cutoff) {
    std::vector<GeneratorInstance> out;
    auto horns = [&](GenFamily fam, int klo_off, int khi_off) {
        for (int n = 1; n <= cutoff; ++n)
            for (int k = klo_off; k <= n - khi_off; ++k)
                if (n >= 1 && k >= 0 && k <= n) out.push_back({fam, n, k});
    };
    switch (f) {
    case FamilyClass::MarkedLeft:
        for (int n = 2; n <= cutoff; ++n)
            for (int k = 1; k < n; ++k) out.push_back({GenFamily::A1, n, k});
        out.push_back({GenFamily::A2});
        out.push_back({GenFamily::B1});
        for (int n = 0; n <= cutoff; ++n) out.push_back({GenFamily::B2, n});
        break;
    case FamilyClass::MarkedRight:
        for (int n = 2; n <= cutoff; ++n)
            for (int k = 1; k < n; ++k) out.push_back({GenFamily::A1, n, k});
        out.push_back({GenFamily::A2});
        out.push_back({GenFamily::B1p});
        for (int n = 0; n <= cutoff; ++n) out.push_back({GenFamily::B2p, n});
        break;
    case FamilyClass::CellularMarkedLeft:
        out.push_back({GenFamily::B1});
        for (int n = 0; n <= cutoff; ++n) out.push_back({GenFamily::B2, n});
        break;
    case FamilyClass::CellularMarkedRight:
        out.push_back({GenFamily::B1p});
        for (int n = 0; n <= cutoff; ++n) out.push_back({GenFamily::B2p, n});
        break;
    case FamilyClass::InnerHorn:
        for (int n = 2; n <= cutoff; ++n)
            for (int k = 1; k < n; ++k) out.push_back({GenFamily::InnerHorn, n, k});
        break;
    case FamilyClass::LeftHorn:
        horns(GenFamily::LeftHorn, 0, 1);
        break;
    case FamilyClass::RightHorn:
        horns(GenFamily::RightHorn, 1, 0);
        break;
    case FamilyClass::Boundary:
        for (int n = 0; n <= cutoff; ++n) out.push_back({GenFamily::Boundary, n});
        break;
    case FamilyClass::MarkedTrivial:
        for (int n = 0; n <= cutoff; ++n) out.push_back({GenFamily::Boundary, n});
        out.push_back({GenFamily::MarkEdge});
        break;
    }
    return out;
}

FibrationReport has_rlp_instances(const MarkedMap& right,
                                  const std::vector<GeneratorInstance>& gens, int cutoff,
                                  int a2_depth) {
    FibrationReport rep;
    rep.verdict = true;
    rep.cutoff = cutoff;

    for (const auto& g : gens) {
        if (g.family == GenFamily::A2) {
            int need = std::max(right.src.space->dim(), right.tgt.space->dim()) + 2;
            if (a2_depth < need)
                throw InsufficientDepth("has_rlp: A2 family needs truncation depth >= " +
                                        std::to_string(need));
            rep.a2_depth = a2_depth;
        }
        MarkedMap gen = generator(g, a2_depth);
        auto tops = enumerate_marked_maps(gen.src, right.src);
        auto bottoms = enumerate_marked_maps(gen.tgt, right.tgt);
        // group bottoms by restriction along the generator
        std::map<std::vector<std::vector<SimplexRef>>, std::vector<size_t>> by_restriction;
        for (size_t i = 0; i < bottoms.size(); ++i)
            by_restriction[compose(bottoms[i].map, gen.map).images()].push_back(i);

        int squares = 0;
        for (const auto& top : tops) {
            auto key = compose(right.map, top.map).images();
            auto it = by_restriction.find(key);
            if (it == by_restriction.end()) continue;
            for (size_t bi : it->second) {
                ++squares;
                LiftingProblem p{gen, right, top, bottoms[bi]};
                if (!solve_lifting(p)) {
                    rep.verdict = false;
                    rep.counterexample = p;
                    rep.checked_counts[describe(g)] = squares;
                    return rep;
                }
            }
        }
        rep.checked_counts[describe(g)] += squares;
    }
    return rep;
}

FibrationReport has_rlp_family(const MarkedMap& right, FamilyClass f, int cutoff) {
    bool has_a2 = f == FamilyClass::MarkedLeft || f == FamilyClass::MarkedRight;
    int a2_depth =
        has_a2 ? std::max(right.src.space->dim(), right.tgt.space->dim()) + 2 : -1;
    if (has_a2 && cutoff > a2_depth) a2_depth = cutoff;
    return has_rlp_instances(right, family_instances(f, cutoff), cutoff, a2_depth);
}

MarkedMap to_point(const MarkedSSet& Xp) {
    SSetPtr pt = standard_simplex(0);
    return MarkedMap{SimplicialMap::constant(Xp.space, pt, SimplexId{0, 0}), Xp, sharp(pt)};
}

FibrationReport is_quasi_category(const SSetPtr& X, int cutoff) {
    if (cutoff < 0) cutoff = X->dim() + 2;
    return has_rlp_family(to_point(flat(X)), FamilyClass::InnerHorn, cutoff);
}

std::string to_string(FibKind k) {
    switch (k) {
    case FibKind::Inner: return "inner";
    case FibKind::Left: return "left";
    case FibKind::Right: return "right";
    case FibKind::MarkedLeft: return "marked_left";
    case FibKind::MarkedRight: return "marked_right";
    case FibKind::Trivial: return "trivial";
    case FibKind::MarkedTrivial: return "marked_trivial";
    }
    return "?";
}

std::optional<FibKind> fib_kind_from_string(const std::string& s) {
    for (FibKind k : {FibKind::Inner, FibKind::Left, FibKind::Right, FibKind::MarkedLeft,
                      FibKind::MarkedRight, FibKind::Trivial, FibKind::MarkedTrivial})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

FibrationReport is_fibration(FibKind kind, const MarkedMap& f, int cutoff) {
    FamilyClass fam;
    switch (kind) {
    case FibKind::Inner: fam = FamilyClass::InnerHorn; break;
    case FibKind::Left: fam = FamilyClass::LeftHorn; break;
    case FibKind::Right: fam = FamilyClass::RightHorn; break;
    case FibKind::MarkedLeft: fam = FamilyClass::MarkedLeft; break;
    case FibKind::MarkedRight: fam = FamilyClass::MarkedRight; break;
    case FibKind::Trivial: fam = FamilyClass::Boundary; break;
    case FibKind::MarkedTrivial: fam = FamilyClass::MarkedTrivial; break;
    default: throw InvalidParameter("is_fibration: unknown kind");
    }
    if (cutoff < 0) {
        cutoff = f.src.space->dim() + 2;
        if (kind == FibKind::MarkedLeft || kind == FibKind::MarkedRight)
            cutoff = std::max(cutoff, f.tgt.space->dim() + 2);
    }
    return has_rlp_family(f, fam, cutoff);
}

} // namespace msset
