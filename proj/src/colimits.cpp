#include "msset/colimits.hpp"

#include <algorithm>
#include <numeric>

namespace msset {

SimplexRef ref_degeneracy(const SimplexRef& r, int j) {
    int n = r.dim();
    std::vector<int> sigma;
    for (int t = 0; t <= n + 1; ++t) sigma.push_back(t <= j ? std::min(t, j) : t - 1);
    auto values = surj::compose(surj::from_word(r.word, n), sigma);
    return SimplexRef{r.base, surj::to_word(values)};
}

SimplexRef ref_word_action(const SimplexRef& s, const std::vector<int>& word, int result_dim) {
    auto values = surj::compose(surj::from_word(s.word, s.dim()),
                                surj::from_word(word, result_dim));
    return SimplexRef{s.base, surj::to_word(values)};
}

namespace {

bool words_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        for (int y : b)
            if (x == y) return false;
    return true;
}

// Split a pair of refs of equal dimension into (common word, reduced pair).
struct SplitPair {
    std::vector<int> common;
    SimplexRef a, b;
};

SplitPair split_common_degeneracies(const SimplexRef& a, const SimplexRef& b) {
    int n = a.dim();
    std::vector<int> common;
    for (int x : a.word)
        if (std::find(b.word.begin(), b.word.end(), x) != b.word.end()) common.push_back(x);
    std::sort(common.rbegin(), common.rend());
    if (common.empty()) return {common, a, b};
    auto gamma = surj::from_word(common, n);
    int m = n - static_cast<int>(common.size());
    std::vector<int> section(static_cast<size_t>(m) + 1);
    for (int y = 0, t = 0; y <= m; ++y) {
        while (gamma[static_cast<size_t>(t)] != y) ++t;
        section[static_cast<size_t>(y)] = t;
    }
    auto reduce = [&](const SimplexRef& r) {
        auto values = surj::compose(surj::from_word(r.word, n), section);
        return SimplexRef{r.base, surj::to_word(values)};
    };
    return {common, reduce(a), reduce(b)};
}

template <typename Table>
SimplexRef table_pair_ref(const Table& index, const SimplexRef& a, const SimplexRef& b) {
    auto sp = split_common_degeneracies(a, b);
    auto it = index.find(std::make_pair(sp.a, sp.b));
    if (it == index.end()) throw InvalidParameter("pair_ref: pair not present");
    return SimplexRef{it->second, sp.common};
}

// Shared core of product and pullback.
struct PairBuild {
    SSetPtr space;
    std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> pairs;
    std::map<std::pair<SimplexRef, SimplexRef>, SimplexId> index;
    SimplicialMap proj1, proj2;
};

PairBuild build_pairs(const SSetPtr& X, const SSetPtr& Y,
                      const std::function<bool(const SimplexRef&, const SimplexRef&)>& admit) {
    PairBuild out;
    int top = X->dim() + Y->dim();
    SSetBuilder b;
    out.pairs.resize(static_cast<size_t>(std::max(0, top)) + 1);
    for (int n = 0; n <= top; ++n) {
        auto xs = X->level(n);
        auto ys = Y->level(n);
        for (const auto& r : xs)
            for (const auto& s : ys) {
                if (!words_disjoint(r.word, s.word)) continue;
                if (!admit(r, s)) continue;
                SimplexId id;
                if (n == 0) {
                    id = b.add_vertex();
                } else {
                    std::vector<SimplexRef> faces;
                    for (int i = 0; i <= n; ++i)
                        faces.push_back(table_pair_ref(out.index,
                                                       X->face(r, i), Y->face(s, i)));
                    id = b.add(n, std::move(faces));
                }
                out.pairs[static_cast<size_t>(n)].emplace_back(r, s);
                out.index[{r, s}] = id;
            }
    }
    out.space = b.build();

    auto image_table = [&](bool first) {
        std::vector<std::vector<SimplexRef>> images(
            static_cast<size_t>(std::max(0, out.space->dim())) + 1);
        for (int d = 0; d <= out.space->dim(); ++d)
            for (const auto& pr : out.pairs[static_cast<size_t>(d)])
                images[static_cast<size_t>(d)].push_back(first ? pr.first : pr.second);
        return images;
    };
    out.proj1 = SimplicialMap(out.space, X, image_table(true));
    out.proj2 = SimplicialMap(out.space, Y, image_table(false));
    return out;
}

std::pair<SimplexRef, SimplexRef> pair_components(
    const std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>>& pairs,
    const SimplexRef& r) {
    const auto& [pa, pb] = pairs[static_cast<size_t>(r.base.dim)][static_cast<size_t>(r.base.idx)];
    if (r.word.empty()) return {pa, pb};
    return {ref_word_action(pa, r.word, r.dim()), ref_word_action(pb, r.word, r.dim())};
}

} // namespace

SimplexRef Product::pair_ref(const SimplexRef& a, const SimplexRef& b) const {
    return table_pair_ref(index, a, b);
}

std::pair<SimplexRef, SimplexRef> Product::components(const SimplexRef& r) const {
    return pair_components(pairs, r);
}

Product product(SSetPtr X, SSetPtr Y) {
    if (X->dim() < 0 || Y->dim() < 0) {
        Product P;
        P.space = empty_sset();
        P.left = X;
        P.right = Y;
        P.proj_left = SimplicialMap(P.space, X, {});
        P.proj_right = SimplicialMap(P.space, Y, {});
        return P;
    }
    auto built = build_pairs(X, Y, [](const SimplexRef&, const SimplexRef&) { return true; });
    Product P;
    P.space = built.space;
    P.left = std::move(X);
    P.right = std::move(Y);
    P.proj_left = std::move(built.proj1);
    P.proj_right = std::move(built.proj2);
    P.pairs = std::move(built.pairs);
    P.index = std::move(built.index);
    return P;
}

SimplicialMap pairing(const Product& P, const SimplicialMap& f, const SimplicialMap& g) {
    const SSetPtr& Z = f.source();
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, Z->dim())) + 1);
    for (int d = 0; d <= Z->dim(); ++d)
        for (int idx = 0; idx < Z->count(d); ++idx)
            images[static_cast<size_t>(d)].push_back(
                P.pair_ref(f.apply(SimplexId{d, idx}), g.apply(SimplexId{d, idx})));
    return SimplicialMap(Z, P.space, std::move(images));
}

SimplicialMap product_map(const Product& P, const Product& Q,
                          const SimplicialMap& f, const SimplicialMap& g) {
    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, P.space->dim())) + 1);
    for (int d = 0; d <= P.space->dim(); ++d)
        for (const auto& [a, b] : P.pairs[static_cast<size_t>(d)])
            images[static_cast<size_t>(d)].push_back(Q.pair_ref(f.apply(a), g.apply(b)));
    return SimplicialMap(P.space, Q.space, std::move(images));
}

SimplexRef Pullback::pair_ref(const SimplexRef& a, const SimplexRef& b) const {
    return table_pair_ref(index, a, b);
}

std::pair<SimplexRef, SimplexRef> Pullback::components(const SimplexRef& r) const {
    return pair_components(pairs, r);
}

SimplicialMap Pullback::pairing(const SimplicialMap& u, const SimplicialMap& v) const {
    const SSetPtr& Z = u.source();
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, Z->dim())) + 1);
    for (int d = 0; d <= Z->dim(); ++d)
        for (int idx = 0; idx < Z->count(d); ++idx)
            images[static_cast<size_t>(d)].push_back(
                pair_ref(u.apply(SimplexId{d, idx}), v.apply(SimplexId{d, idx})));
    return SimplicialMap(Z, space, std::move(images));
}

Pullback pullback(const SimplicialMap& f, const SimplicialMap& g) {
    const SSetPtr& X = f.source();
    const SSetPtr& Y = g.source();
    Pullback P;
    if (X->dim() < 0 || Y->dim() < 0) {
        P.space = empty_sset();
        P.to_left = SimplicialMap(P.space, X, {});
        P.to_right = SimplicialMap(P.space, Y, {});
        return P;
    }
    auto built = build_pairs(X, Y, [&](const SimplexRef& r, const SimplexRef& s) {
        return f.apply(r) == g.apply(s);
    });
    P.space = built.space;
    P.to_left = std::move(built.proj1);
    P.to_right = std::move(built.proj2);
    P.pairs = std::move(built.pairs);
    P.index = std::move(built.index);
    return P;
}

Pushout pushout(const SimplicialMap& inc, const SimplicialMap& f) {
    if (!inc.is_mono()) throw InvalidParameter("pushout: attaching boundary not a monomorphism");
    const SSetPtr& A = inc.source();
    const SSetPtr& B = inc.target();
    if (f.source()->count_vector() != A->count_vector())
        throw InvalidParameter("pushout: maps must share their source");
    const SSetPtr& Xt = f.target();

    // which B-simplices come from A
    std::map<SimplexId, SimplexId> from_a; // B id -> A id
    for (int d = 0; d <= A->dim(); ++d)
        for (int idx = 0; idx < A->count(d); ++idx)
            from_a[inc.apply(SimplexId{d, idx}).base] = SimplexId{d, idx};

    int top = std::max(Xt->dim(), B->dim());
    std::map<SimplexId, SimplexId> b_new; // B extras -> P id
    std::vector<int> counts(static_cast<size_t>(std::max(0, top)) + 1, 0);
    for (int d = 0; d <= top; ++d) counts[static_cast<size_t>(d)] = Xt->count(d);
    for (int d = 0; d <= B->dim(); ++d)
        for (int idx = 0; idx < B->count(d); ++idx)
            if (!from_a.count({d, idx}))
                b_new[{d, idx}] = SimplexId{d, counts[static_cast<size_t>(d)]++};

    auto translate_b = [&](const SimplexRef& r) -> SimplexRef {
        auto it = b_new.find(r.base);
        if (it != b_new.end()) return SimplexRef{it->second, r.word};
        // comes from A: push through f (X ids are shared with P)
        SimplexRef im = f.apply(from_a.at(r.base));
        if (r.word.empty()) return im;
        return ref_word_action(im, r.word, r.dim());
    };

    std::vector<std::vector<std::vector<SimplexRef>>> faces(counts.size());
    for (int d = 1; d <= top; ++d) {
        for (int idx = 0; idx < Xt->count(d); ++idx)
            faces[static_cast<size_t>(d)].push_back(Xt->faces_of({d, idx}));
        for (int idx = 0; idx < B->count(d); ++idx) {
            if (from_a.count({d, idx})) continue;
            std::vector<SimplexRef> fs;
            for (const auto& r : B->faces_of({d, idx})) fs.push_back(translate_b(r));
            faces[static_cast<size_t>(d)].push_back(std::move(fs));
        }
    }
    auto P = std::make_shared<SimplicialSet>(counts, std::move(faces));
    P->validate();

    std::vector<std::vector<SimplexRef>> imx(static_cast<size_t>(std::max(0, Xt->dim())) + 1);
    for (int d = 0; d <= Xt->dim(); ++d)
        for (int idx = 0; idx < Xt->count(d); ++idx)
            imx[static_cast<size_t>(d)].push_back(nondeg(d, idx));
    std::vector<std::vector<SimplexRef>> imb(static_cast<size_t>(std::max(0, B->dim())) + 1);
    for (int d = 0; d <= B->dim(); ++d)
        for (int idx = 0; idx < B->count(d); ++idx)
            imb[static_cast<size_t>(d)].push_back(translate_b(nondeg(d, idx)));

    Pushout out;
    out.space = P;
    out.from_x = SimplicialMap(Xt, P, std::move(imx));
    out.from_b = SimplicialMap(B, P, std::move(imb));
    return out;
}

Coproduct coproduct(const std::vector<SSetPtr>& parts) {
    int top = -1;
    for (const auto& p : parts) top = std::max(top, p->dim());
    std::vector<int> counts(static_cast<size_t>(std::max(0, top)) + 1, 0);
    std::vector<std::vector<int>> offsets(parts.size(),
                                          std::vector<int>(counts.size(), 0));
    for (size_t k = 0; k < parts.size(); ++k)
        for (int d = 0; d <= top; ++d) {
            offsets[k][static_cast<size_t>(d)] = counts[static_cast<size_t>(d)];
            counts[static_cast<size_t>(d)] += parts[k]->count(d);
        }
    std::vector<std::vector<std::vector<SimplexRef>>> faces(counts.size());
    for (int d = 1; d <= top; ++d)
        for (size_t k = 0; k < parts.size(); ++k)
            for (int idx = 0; idx < parts[k]->count(d); ++idx) {
                std::vector<SimplexRef> fs;
                for (const auto& r : parts[k]->faces_of({d, idx}))
                    fs.push_back(SimplexRef{{r.base.dim,
                                             r.base.idx + offsets[k][static_cast<size_t>(r.base.dim)]},
                                            r.word});
                faces[static_cast<size_t>(d)].push_back(std::move(fs));
            }
    Coproduct out;
    if (top < 0) {
        out.space = empty_sset();
    } else {
        auto P = std::make_shared<SimplicialSet>(counts, std::move(faces));
        P->validate();
        out.space = P;
    }
    for (size_t k = 0; k < parts.size(); ++k) {
        std::vector<std::vector<SimplexRef>> im(
            static_cast<size_t>(std::max(0, parts[k]->dim())) + 1);
        for (int d = 0; d <= parts[k]->dim(); ++d)
            for (int idx = 0; idx < parts[k]->count(d); ++idx)
                im[static_cast<size_t>(d)].push_back(
                    nondeg(d, idx + offsets[k][static_cast<size_t>(d)]));
        out.injections.emplace_back(parts[k], out.space, std::move(im));
    }
    return out;
}

SimplicialMap coproduct_map(const Coproduct& C, const std::vector<SimplicialMap>& legs,
                            SSetPtr target) {
    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, C.space->dim())) + 1);
    for (auto& v : images) v.clear();
    for (int d = 0; d <= C.space->dim(); ++d)
        images[static_cast<size_t>(d)].resize(static_cast<size_t>(C.space->count(d)));
    for (size_t k = 0; k < legs.size(); ++k) {
        const SSetPtr& part = C.injections[k].source();
        for (int d = 0; d <= part->dim(); ++d)
            for (int idx = 0; idx < part->count(d); ++idx) {
                SimplexRef where = C.injections[k].apply(SimplexId{d, idx});
                images[static_cast<size_t>(d)][static_cast<size_t>(where.base.idx)] =
                    legs[k].apply(SimplexId{d, idx});
            }
    }
    return SimplicialMap(C.space, std::move(target), std::move(images));
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

} // namespace

Extraction extract_presentation(const LevelwiseData& data) {
    Extraction out;
    out.elem_refs.resize(static_cast<size_t>(std::max(0, data.top)) + 1);
    out.nondeg_elems.resize(out.elem_refs.size());
    SSetBuilder b;
    for (int n = 0; n <= data.top; ++n) {
        out.elem_refs[static_cast<size_t>(n)].resize(static_cast<size_t>(data.sizes[static_cast<size_t>(n)]));
        for (int e = 0; e < data.sizes[static_cast<size_t>(n)]; ++e) {
            int peel = -1;
            for (int j = n - 1; j >= 0 && peel < 0; --j)
                if (data.degeneracy(n - 1, data.face(n, e, j), j) == e) peel = j;
            if (peel >= 0) {
                const SimplexRef& below =
                    out.elem_refs[static_cast<size_t>(n) - 1][static_cast<size_t>(data.face(n, e, peel))];
                out.elem_refs[static_cast<size_t>(n)][static_cast<size_t>(e)] =
                    ref_degeneracy(below, peel);
                continue;
            }
            SimplexId id;
            if (n == 0) {
                id = b.add_vertex();
            } else {
                std::vector<SimplexRef> fs;
                for (int i = 0; i <= n; ++i)
                    fs.push_back(out.elem_refs[static_cast<size_t>(n) - 1]
                                             [static_cast<size_t>(data.face(n, e, i))]);
                id = b.add(n, std::move(fs));
            }
            out.nondeg_elems[static_cast<size_t>(n)].push_back(e);
            out.elem_refs[static_cast<size_t>(n)][static_cast<size_t>(e)] = nondeg(id);
        }
    }
    out.space = data.top < 0 ? empty_sset() : b.build();
    return out;
}

Coequalizer coequalizer(const SimplicialMap& f, const SimplicialMap& g) {
    const SSetPtr& X = f.source();
    const SSetPtr& Y = f.target();
    if (g.source()->count_vector() != X->count_vector() ||
        g.target()->count_vector() != Y->count_vector())
        throw InvalidParameter("coequalizer: maps must be parallel");

    int top = Y->dim();
    std::vector<std::vector<SimplexRef>> levels(static_cast<size_t>(std::max(0, top)) + 1);
    std::vector<std::map<SimplexRef, int>> pos(levels.size());
    for (int n = 0; n <= top; ++n) {
        levels[static_cast<size_t>(n)] = Y->level(n);
        for (size_t i = 0; i < levels[static_cast<size_t>(n)].size(); ++i)
            pos[static_cast<size_t>(n)][levels[static_cast<size_t>(n)][i]] = static_cast<int>(i);
    }

    std::vector<UnionFind> uf;
    for (size_t n = 0; n < levels.size(); ++n)
        uf.emplace_back(static_cast<int>(levels[n].size()));

    // identify s_w f(b) with s_w g(b) for every nondegenerate b and word w
    for (int m = 0; m <= std::min(X->dim(), top); ++m)
        for (int idx = 0; idx < X->count(m); ++idx) {
            SimplexRef fb = f.apply(SimplexId{m, idx});
            SimplexRef gb = g.apply(SimplexId{m, idx});
            for (int n = m; n <= top; ++n)
                for (const auto& sub : subsets_of_size(n - 1, n - m)) {
                    std::vector<int> word(sub.rbegin(), sub.rend());
                    SimplexRef a = ref_word_action(fb, word, n);
                    SimplexRef b = ref_word_action(gb, word, n);
                    uf[static_cast<size_t>(n)].unite(pos[static_cast<size_t>(n)].at(a),
                                                     pos[static_cast<size_t>(n)].at(b));
                }
        }

    // classes, lex-least representative first
    Coequalizer out;
    out.class_of.resize(levels.size());
    out.class_members_rep.resize(levels.size());
    std::vector<std::map<int, int>> root_to_class(levels.size());
    for (size_t n = 0; n < levels.size(); ++n) {
        for (size_t i = 0; i < levels[n].size(); ++i) {
            int root = uf[n].find(static_cast<int>(i));
            auto it = root_to_class[n].find(root);
            int cls;
            if (it == root_to_class[n].end()) {
                cls = static_cast<int>(out.class_members_rep[n].size());
                root_to_class[n][root] = cls;
                out.class_members_rep[n].push_back(levels[n][i]);
            } else {
                cls = it->second;
            }
            out.class_of[n][levels[n][i]] = cls;
        }
    }

    LevelwiseData data;
    data.top = top;
    for (const auto& v : out.class_members_rep) data.sizes.push_back(static_cast<int>(v.size()));
    data.face = [&](int n, int e, int i) {
        SimplexRef r = Y->face(out.class_members_rep[static_cast<size_t>(n)][static_cast<size_t>(e)], i);
        return out.class_of[static_cast<size_t>(n) - 1].at(r);
    };
    data.degeneracy = [&](int n, int e, int j) {
        SimplexRef r = Y->degeneracy(out.class_members_rep[static_cast<size_t>(n)][static_cast<size_t>(e)], j);
        return out.class_of[static_cast<size_t>(n) + 1].at(r);
    };
    Extraction ex = extract_presentation(data);
    out.space = ex.space;
    out.elem_refs = ex.elem_refs;

    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, Y->dim())) + 1);
    for (int d = 0; d <= Y->dim(); ++d)
        for (int idx = 0; idx < Y->count(d); ++idx) {
            int cls = out.class_of[static_cast<size_t>(d)].at(nondeg(d, idx));
            images[static_cast<size_t>(d)].push_back(
                out.elem_refs[static_cast<size_t>(d)][static_cast<size_t>(cls)]);
        }
    out.quotient = SimplicialMap(Y, out.space, std::move(images));
    return out;
}

SimplicialMap Coequalizer::descend(const SimplicialMap& h) const {
    const SSetPtr& Q = space;
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, Q->dim())) + 1);
    const SSetPtr& Y = quotient.source();
    // nondeg class of Q at (d, idx): find its class element via elem_refs
    for (int d = 0; d <= Q->dim(); ++d) {
        // class index for each nondeg id
        std::map<int, int> id_to_class;
        for (size_t cls = 0; cls < elem_refs[static_cast<size_t>(d)].size(); ++cls) {
            const SimplexRef& r = elem_refs[static_cast<size_t>(d)][cls];
            if (!r.is_degenerate() && r.base.dim == d) id_to_class[r.base.idx] = static_cast<int>(cls);
        }
        for (int idx = 0; idx < Q->count(d); ++idx) {
            int cls = id_to_class.at(idx);
            SimplexRef expected = h.apply(class_members_rep[static_cast<size_t>(d)][static_cast<size_t>(cls)]);
            images[static_cast<size_t>(d)].push_back(expected);
        }
    }
    // consistency: all members of a class must map equally
    for (size_t n = 0; n < class_of.size(); ++n)
        for (const auto& [r, cls] : class_of[n])
            if (h.apply(r) != h.apply(class_members_rep[n][static_cast<size_t>(cls)]))
                throw InvalidParameter("descend: map does not coequalize");
    (void)Y;
    return SimplicialMap(Q, h.target(), std::move(images));
}

Subcomplex subcomplex(const SSetPtr& X, const std::set<SimplexId>& keep) {
    std::set<SimplexId> closed;
    std::function<void(SimplexId)> close = [&](SimplexId id) {
        if (!closed.insert(id).second) return;
        if (id.dim == 0) return;
        for (const auto& r : X->faces_of(id)) close(r.base);
    };
    for (auto id : keep) close(id);

    Subcomplex out;
    std::vector<int> counts;
    for (auto id : closed) {
        while (static_cast<int>(counts.size()) <= id.dim) counts.push_back(0);
        out.to_sub[id] = SimplexId{id.dim, counts[static_cast<size_t>(id.dim)]++};
    }
    std::vector<std::vector<std::vector<SimplexRef>>> faces(counts.size());
    for (const auto& [old_id, new_id] : out.to_sub) {
        if (old_id.dim == 0) continue;
        std::vector<SimplexRef> fs;
        for (const auto& r : X->faces_of(old_id))
            fs.push_back(SimplexRef{out.to_sub.at(r.base), r.word});
        faces[static_cast<size_t>(old_id.dim)].push_back(std::move(fs));
    }
    if (counts.empty()) {
        out.space = empty_sset();
        out.inclusion = SimplicialMap(out.space, X, {});
        return out;
    }
    auto S = std::make_shared<SimplicialSet>(counts, std::move(faces));
    S->validate();
    out.space = S;
    std::vector<std::vector<SimplexRef>> im(counts.size());
    for (const auto& [old_id, new_id] : out.to_sub) {
        (void)new_id;
        im[static_cast<size_t>(old_id.dim)].push_back(nondeg(old_id));
    }
    out.inclusion = SimplicialMap(S, X, std::move(im));
    return out;
}

} // namespace msset
