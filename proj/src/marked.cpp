#include "msset/marked.hpp"

#include <algorithm>

namespace msset {

MarkedSSet flat(SSetPtr X) { return MarkedSSet{std::move(X), {}, -1}; }

MarkedSSet sharp(SSetPtr X) {
    MarkedSSet out{X, {}, -1};
    for (int idx = 0; idx < X->count(1); ++idx) out.marks.insert(idx);
    return out;
}

Core core(const MarkedSSet& Xp) {
    const SSetPtr& X = Xp.space;
    std::set<SimplexId> keep;
    for (int d = 0; d <= X->dim(); ++d)
        for (int idx = 0; idx < X->count(d); ++idx) {
            SimplexRef r = nondeg(d, idx);
            bool all_marked = true;
            for (int a = 0; a <= d && all_marked; ++a)
                for (int b = a + 1; b <= d && all_marked; ++b)
                    if (!Xp.is_marked(X->edge_of(r, a, b))) all_marked = false;
            if (all_marked) keep.insert({d, idx});
        }
    Subcomplex sc = subcomplex(X, keep);
    return Core{sc.space, sc.inclusion};
}

void MarkedMap::validate() const {
    map.validate();
    if (!same_presentation(*map.source(), *src.space) ||
        !same_presentation(*map.target(), *tgt.space))
        throw InvalidParameter("marked map: structure mismatch");
    for (int m : src.marks)
        if (!tgt.is_marked(map.apply(SimplexId{1, m})))
            throw InvalidParameter("marked map: does not preserve marks");
}

MarkedMap marked_identity(const MarkedSSet& Xp) {
    return MarkedMap{SimplicialMap::identity(Xp.space), Xp, Xp};
}

MarkedMap marked_compose(const MarkedMap& g, const MarkedMap& f) {
    return MarkedMap{compose(g.map, f.map), f.src, g.tgt};
}

MarkedMap as_marked(SimplicialMap f, MarkedSSet src, MarkedSSet tgt) {
    MarkedMap out{std::move(f), std::move(src), std::move(tgt)};
    for (int m : out.src.marks)
        if (!out.tgt.is_marked(out.map.apply(SimplexId{1, m})))
            throw InvalidParameter("as_marked: does not preserve marks");
    return out;
}

MarkedProduct marked_product(const MarkedSSet& Xp, const MarkedSSet& Yp) {
    MarkedProduct out;
    out.prod = product(Xp.space, Yp.space);
    out.space.space = out.prod.space;
    for (int idx = 0; idx < out.prod.space->count(1); ++idx) {
        const auto& [a, b] = out.prod.pairs[1][static_cast<size_t>(idx)];
        if (Xp.is_marked(a) && Yp.is_marked(b)) out.space.marks.insert(idx);
    }
    out.proj_left = MarkedMap{out.prod.proj_left, out.space, Xp};
    out.proj_right = MarkedMap{out.prod.proj_right, out.space, Yp};
    return out;
}

MarkedPullback marked_pullback(const MarkedMap& f, const MarkedMap& g) {
    MarkedPullback out;
    out.pb = pullback(f.map, g.map);
    out.space.space = out.pb.space;
    for (int idx = 0; idx < out.pb.space->count(1); ++idx) {
        const auto& [a, b] = out.pb.pairs[1][static_cast<size_t>(idx)];
        if (f.src.is_marked(a) && g.src.is_marked(b)) out.space.marks.insert(idx);
    }
    out.to_left = MarkedMap{out.pb.to_left, out.space, f.src};
    out.to_right = MarkedMap{out.pb.to_right, out.space, g.src};
    return out;
}

MarkedPushout marked_pushout(const MarkedMap& i, const MarkedMap& f) {
    MarkedPushout out;
    out.po = pushout(i.map, f.map);
    out.space.space = out.po.space;
    // marks of the stage survive by identity of ids, marks of V push forward
    out.space.marks = f.tgt.marks;
    for (int m : i.tgt.marks) {
        SimplexRef im = out.po.from_b.apply(SimplexId{1, m});
        if (!im.is_degenerate()) out.space.marks.insert(im.base.idx);
    }
    out.from_x = MarkedMap{out.po.from_x, f.tgt, out.space};
    out.from_b = MarkedMap{out.po.from_b, i.tgt, out.space};
    return out;
}

MarkedCoproduct marked_coproduct(const std::vector<MarkedSSet>& parts) {
    MarkedCoproduct out;
    std::vector<SSetPtr> spaces;
    for (const auto& p : parts) spaces.push_back(p.space);
    out.cop = coproduct(spaces);
    out.space.space = out.cop.space;
    for (size_t k = 0; k < parts.size(); ++k)
        for (int m : parts[k].marks)
            out.space.marks.insert(out.cop.injections[k].apply(SimplexId{1, m}).base.idx);
    for (size_t k = 0; k < parts.size(); ++k)
        out.injections.push_back(MarkedMap{out.cop.injections[k], parts[k], out.space});
    return out;
}

MarkedSubcomplex marked_subcomplex(const MarkedSSet& Xp, const std::set<SimplexId>& keep) {
    MarkedSubcomplex out;
    Subcomplex sc = subcomplex(Xp.space, keep);
    out.space.space = sc.space;
    out.to_sub = sc.to_sub;
    for (int m : Xp.marks) {
        auto it = sc.to_sub.find(SimplexId{1, m});
        if (it != sc.to_sub.end()) out.space.marks.insert(it->second.idx);
    }
    out.inclusion = MarkedMap{sc.inclusion, out.space, Xp};
    return out;
}

std::optional<MarkedMap> marked_isomorphism(const MarkedSSet& Xp, const MarkedSSet& Yp,
                                            const std::map<SimplexId, SimplexId>& forced) {
    if (Xp.marks.size() != Yp.marks.size()) return std::nullopt;
    auto constraint = [&](SimplexId id, const SimplexRef& cand) {
        if (id.dim != 1) return true;
        return Xp.marks.count(id.idx) == Yp.marks.count(cand.base.idx);
    };
    auto iso = find_isomorphism(Xp.space, Yp.space, forced, constraint);
    if (!iso) return std::nullopt;
    return MarkedMap{*iso, Xp, Yp};
}

// ---- walking isomorphism ----

SSetPtr walking_iso_truncation(int depth) {
    if (depth < 1) throw InvalidParameter("walking_iso_truncation: depth must be >= 1");
    SSetBuilder b;
    b.add_vertex(); // object 0
    b.add_vertex(); // object 1
    for (int n = 1; n <= depth; ++n)
        for (int v = 0; v <= 1; ++v) {
            // the alternating n-chain starting at v
            std::vector<SimplexRef> faces(static_cast<size_t>(n) + 1);
            if (n == 1) {
                faces[0] = nondeg(0, 1 - v); // target
                faces[1] = nondeg(0, v);     // source
            } else {
                faces[0] = nondeg(n - 1, 1 - v); // drop first arrow
                faces[static_cast<size_t>(n)] = nondeg(n - 1, v);
                for (int i = 1; i < n; ++i)
                    faces[static_cast<size_t>(i)] =
                        SimplexRef{{n - 2, v}, {i - 1}}; // adjacent arrows cancel
            }
            b.add(n, std::move(faces));
        }
    return b.build();
}

MarkedSSet j_flat(int depth) { return MarkedSSet{walking_iso_truncation(depth), {}, depth}; }

MarkedSSet j_sharp(int depth) {
    return MarkedSSet{walking_iso_truncation(depth), {0, 1}, depth};
}

// ---- generators ----

std::string to_string(GenFamily f) {
    switch (f) {
    case GenFamily::A1: return "A1";
    case GenFamily::A2: return "A2";
    case GenFamily::B1: return "B1";
    case GenFamily::B2: return "B2";
    case GenFamily::B1p: return "B1'";
    case GenFamily::B2p: return "B2'";
    case GenFamily::InnerHorn: return "inner-horn";
    case GenFamily::LeftHorn: return "left-horn";
    case GenFamily::RightHorn: return "right-horn";
    case GenFamily::Boundary: return "boundary";
    case GenFamily::MarkEdge: return "mark-edge";
    }
    return "?";
}

std::string describe(const GeneratorInstance& g) {
    std::string s = to_string(g.family);
    switch (g.family) {
    case GenFamily::A1:
    case GenFamily::InnerHorn:
    case GenFamily::LeftHorn:
    case GenFamily::RightHorn:
        s += "(" + std::to_string(g.n) + "," + std::to_string(g.k) + ")";
        break;
    case GenFamily::B2:
    case GenFamily::B2p:
    case GenFamily::Boundary:
        s += "(" + std::to_string(g.n) + ")";
        break;
    default:
        break;
    }
    return s;
}

namespace {

MarkedMap square_generator(int corner_vertex) {
    auto d1 = standard_simplex(1);
    MarkedProduct target = marked_product(sharp(d1), sharp(d1));
    // sharp x flat marks: edges whose second component is degenerate
    MarkedSSet source{target.space.space, {}, -1};
    for (int idx = 0; idx < target.prod.space->count(1); ++idx)
        if (target.prod.pairs[1][static_cast<size_t>(idx)].second.is_degenerate())
            source.marks.insert(idx);
    // plus the {corner} x Delta^1 column
    SimplexRef corner_col =
        target.prod.pair_ref(SimplexRef{{0, corner_vertex}, {0}}, nondeg(1, 0));
    source.marks.insert(corner_col.base.idx);
    return MarkedMap{SimplicialMap::identity(target.space.space), source, target.space};
}

MarkedMap prism_generator(int n, int corner_vertex) {
    auto d1 = standard_simplex(1);
    auto dn = standard_simplex(n);
    MarkedProduct target = marked_product(sharp(d1), flat(dn));
    // union of (Delta^1 x boundary) and ({corner} x Delta^n)
    std::set<SimplexId> keep;
    const auto& P = target.prod;
    for (int d = 0; d <= P.space->dim(); ++d)
        for (int idx = 0; idx < P.space->count(d); ++idx) {
            const auto& [a, b] = P.pairs[static_cast<size_t>(d)][static_cast<size_t>(idx)];
            bool in_boundary_part = b.base.dim < n;
            bool in_corner_part = a.base.dim == 0 && a.base.idx == corner_vertex;
            if (in_boundary_part || in_corner_part) keep.insert({d, idx});
        }
    MarkedSubcomplex sub = marked_subcomplex(target.space, keep);
    return MarkedMap{sub.inclusion.map, sub.space, target.space};
}

} // namespace

MarkedMap generator(const GeneratorInstance& g, int a2_depth) {
    switch (g.family) {
    case GenFamily::A1: {
        if (g.n < 2 || g.k <= 0 || g.k >= g.n)
            throw InvalidParameter("A1 requires n >= 2 and 0 < k < n");
        auto inc = horn_inclusion(g.n, g.k);
        return MarkedMap{inc, flat(inc.source()), flat(inc.target())};
    }
    case GenFamily::A2: {
        MarkedSSet src = j_flat(a2_depth);
        MarkedSSet tgt{src.space, {0, 1}, a2_depth};
        return MarkedMap{SimplicialMap::identity(src.space), src, tgt};
    }
    case GenFamily::B1:
        return square_generator(0);
    case GenFamily::B1p:
        return square_generator(1);
    case GenFamily::B2:
        if (g.n < 0) throw InvalidParameter("B2 requires n >= 0");
        return prism_generator(g.n, 0);
    case GenFamily::B2p:
        if (g.n < 0) throw InvalidParameter("B2' requires n >= 0");
        return prism_generator(g.n, 1);
    case GenFamily::InnerHorn: {
        if (g.n < 2 || g.k <= 0 || g.k >= g.n)
            throw InvalidParameter("inner horn requires n >= 2 and 0 < k < n");
        auto inc = horn_inclusion(g.n, g.k);
        return MarkedMap{inc, flat(inc.source()), flat(inc.target())};
    }
    case GenFamily::LeftHorn: {
        if (g.n < 1 || g.k < 0 || g.k >= g.n)
            throw InvalidParameter("left horn requires 0 <= k < n");
        auto inc = horn_inclusion(g.n, g.k);
        return MarkedMap{inc, flat(inc.source()), flat(inc.target())};
    }
    case GenFamily::RightHorn: {
        if (g.n < 1 || g.k <= 0 || g.k > g.n)
            throw InvalidParameter("right horn requires 0 < k <= n");
        auto inc = horn_inclusion(g.n, g.k);
        return MarkedMap{inc, flat(inc.source()), flat(inc.target())};
    }
    case GenFamily::Boundary: {
        if (g.n < 0) throw InvalidParameter("boundary requires n >= 0");
        auto inc = boundary_inclusion(g.n);
        return MarkedMap{inc, flat(inc.source()), flat(inc.target())};
    }
    case GenFamily::MarkEdge: {
        auto d1 = standard_simplex(1);
        return MarkedMap{SimplicialMap::identity(d1), flat(d1), sharp(d1)};
    }
    }
    throw InvalidParameter("generator: unknown family");
}

// ---- enumeration ----

namespace {

// The four maps J -> J, restricted to truncations.
std::vector<MarkedMap> j_endo_maps(const MarkedSSet& Xp, const MarkedSSet& Yp) {
    if (Yp.j_depth < Xp.j_depth)
        throw InsufficientDepth(
            "maps between iso-nerve truncations need target depth >= source depth");
    std::vector<MarkedMap> out;
    for (int m0 = 0; m0 <= 1; ++m0)
        for (int m1 = 0; m1 <= 1; ++m1) {
            std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(Xp.j_depth) + 1);
            images[0] = {nondeg(0, m0), nondeg(0, m1)};
            for (int d = 1; d <= Xp.j_depth; ++d)
                for (int v = 0; v <= 1; ++v) {
                    int mv = v == 0 ? m0 : m1;
                    if (m0 != m1) {
                        images[static_cast<size_t>(d)].push_back(nondeg(d, mv));
                    } else {
                        std::vector<int> word;
                        for (int j = d - 1; j >= 0; --j) word.push_back(j);
                        images[static_cast<size_t>(d)].push_back(SimplexRef{{0, mv}, word});
                    }
                }
            SimplicialMap f(Xp.space, Yp.space, std::move(images));
            bool marks_ok = true;
            for (int m : Xp.marks)
                if (!Yp.is_marked(f.apply(SimplexId{1, m}))) marks_ok = false;
            if (marks_ok) out.push_back(MarkedMap{std::move(f), Xp, Yp});
        }
    return out;
}

} // namespace

std::vector<MarkedMap> enumerate_marked_maps(const MarkedSSet& Xp, const MarkedSSet& Yp) {
    if (Xp.j_depth >= 0 && Yp.j_depth >= 0) return j_endo_maps(Xp, Yp);

    ImageConstraint constraint = [&](SimplexId id, const SimplexRef& cand) {
        if (id.dim != 1 || !Xp.marks.count(id.idx)) return true;
        return Yp.is_marked(cand);
    };
    if (Xp.j_depth < 0) {
        std::vector<MarkedMap> out;
        for (auto& f : enumerate_maps(Xp.space, Yp.space, constraint))
            out.push_back(MarkedMap{std::move(f), Xp, Yp});
        return out;
    }

    // source is a J-truncation: depth must exceed the target dimension by 2
    int b = Yp.space->dim();
    if (Xp.j_depth < b + 2)
        throw InsufficientDepth("J-truncation of depth " + std::to_string(Xp.j_depth) +
                                " too shallow for a target of dimension " + std::to_string(b));
    auto all = enumerate_maps(Xp.space, Yp.space, constraint);
    // group by restriction below the target dimension; the extension above it
    // must be forced by that data
    std::map<std::vector<std::vector<SimplexRef>>, std::vector<size_t>> groups;
    for (size_t i = 0; i < all.size(); ++i) {
        auto lo_end = all[i].images().begin() +
                      std::min<long>(static_cast<long>(all[i].images().size()),
                                     static_cast<long>(b) + 1);
        std::vector<std::vector<SimplexRef>> low(all[i].images().begin(), lo_end);
        groups[low].push_back(i);
    }
    std::vector<MarkedMap> out;
    for (const auto& [low, members] : groups) {
        if (members.size() != 1)
            throw MssetError("extension forcing violated: a truncated map admits " +
                             std::to_string(members.size()) + " extensions");
        out.push_back(MarkedMap{all[members.front()], Xp, Yp});
    }
    return out;
}

} // namespace msset
