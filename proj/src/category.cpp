#include "msset/category.hpp"

#include "msset/lifting.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace msset {

FiniteCategory::FiniteCategory(int n_objects, std::vector<Arrow> arrows,
                               std::vector<int> identity, std::vector<std::vector<int>> comp)
    : n_obj_(n_objects), arrows_(std::move(arrows)), id_of_(std::move(identity)),
      comp_(std::move(comp)) {}

bool FiniteCategory::is_identity(int a) const {
    return id_of_[static_cast<size_t>(arrows_[static_cast<size_t>(a)].src)] == a;
}

bool FiniteCategory::composable(int g, int f) const {
    return arrows_[static_cast<size_t>(f)].dst == arrows_[static_cast<size_t>(g)].src;
}

int FiniteCategory::compose(int g, int f) const {
    if (!composable(g, f)) throw InvalidParameter("compose: arrows not composable");
    int r = comp_[static_cast<size_t>(g)][static_cast<size_t>(f)];
    if (r < 0) throw InvalidParameter("compose: composite missing from table");
    return r;
}

std::optional<int> FiniteCategory::inverse(int f) const {
    const Arrow& a = arrows_[static_cast<size_t>(f)];
    for (int g = 0; g < arrow_count(); ++g) {
        const Arrow& b = arrows_[static_cast<size_t>(g)];
        if (b.src != a.dst || b.dst != a.src) continue;
        if (compose(g, f) == identity(a.src) && compose(f, g) == identity(a.dst)) return g;
    }
    return std::nullopt;
}

std::vector<int> FiniteCategory::hom(int a, int b) const {
    std::vector<int> out;
    for (int f = 0; f < arrow_count(); ++f)
        if (arrows_[static_cast<size_t>(f)].src == a && arrows_[static_cast<size_t>(f)].dst == b)
            out.push_back(f);
    return out;
}

void FiniteCategory::validate() const {
    if (static_cast<int>(id_of_.size()) != n_obj_)
        throw InvalidParameter("category: one identity per object required");
    for (int o = 0; o < n_obj_; ++o) {
        const Arrow& id = arrows_[static_cast<size_t>(id_of_[static_cast<size_t>(o)])];
        if (id.src != o || id.dst != o) throw InvalidParameter("category: bad identity arrow");
    }
    for (int f = 0; f < arrow_count(); ++f) {
        const Arrow& a = arrows_[static_cast<size_t>(f)];
        if (compose(f, identity(a.src)) != f || compose(identity(a.dst), f) != f)
            throw InvalidParameter("category: unit law fails");
    }
    for (int f = 0; f < arrow_count(); ++f)
        for (int g = 0; g < arrow_count(); ++g) {
            if (!composable(g, f)) continue;
            for (int h = 0; h < arrow_count(); ++h) {
                if (!composable(h, g)) continue;
                if (compose(h, compose(g, f)) != compose(compose(h, g), f))
                    throw InvalidParameter("category: associativity fails");
            }
        }
}

CatBuilder::CatBuilder(int n_objects) : n_obj_(n_objects) {
    for (int o = 0; o < n_objects; ++o) {
        id_of_.push_back(static_cast<int>(arrows_.size()));
        arrows_.push_back({o, o, "id" + std::to_string(o)});
    }
}

int CatBuilder::add_arrow(int src, int dst, std::string name) {
    if (src < 0 || src >= n_obj_ || dst < 0 || dst >= n_obj_)
        throw InvalidParameter("add_arrow: object out of range");
    arrows_.push_back({src, dst, std::move(name)});
    return static_cast<int>(arrows_.size()) - 1;
}

void CatBuilder::set_composite(int g, int f, int gf) { comp_[{g, f}] = gf; }

CatPtr CatBuilder::build() {
    int n = static_cast<int>(arrows_.size());
    std::vector<std::vector<int>> comp(static_cast<size_t>(n),
                                       std::vector<int>(static_cast<size_t>(n), -1));
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            if (arrows_[static_cast<size_t>(f)].dst != arrows_[static_cast<size_t>(g)].src)
                continue;
            int r = -1;
            if (f == id_of_[static_cast<size_t>(arrows_[static_cast<size_t>(f)].src)] &&
                arrows_[static_cast<size_t>(f)].src == arrows_[static_cast<size_t>(f)].dst)
                r = g; // g . id = g
            auto it = comp_.find({g, f});
            if (it != comp_.end()) r = it->second;
            if (g == id_of_[static_cast<size_t>(arrows_[static_cast<size_t>(g)].src)] &&
                arrows_[static_cast<size_t>(g)].src == arrows_[static_cast<size_t>(g)].dst)
                r = f; // id . f = f
            comp[static_cast<size_t>(g)][static_cast<size_t>(f)] = r;
        }
    auto C = std::make_shared<FiniteCategory>(n_obj_, arrows_, id_of_, std::move(comp));
    C->validate();
    return C;
}

CatPtr discrete_category(int n) { return CatBuilder(n).build(); }

CatPtr chain_poset(int n) {
    std::vector<std::vector<bool>> reach(static_cast<size_t>(n) + 1,
                                         std::vector<bool>(static_cast<size_t>(n) + 1, false));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    return preorder_category(reach);
}

CatPtr walking_iso_category() {
    CatBuilder b(2);
    int f = b.add_arrow(0, 1, "f");
    int g = b.add_arrow(1, 0, "g");
    b.set_composite(g, f, 0); // id0
    b.set_composite(f, g, 1); // id1
    return b.build();
}

CatPtr preorder_category(const std::vector<std::vector<bool>>& reach) {
    int n = static_cast<int>(reach.size());
    CatBuilder b(n);
    std::map<std::pair<int, int>, int> arrow_of;
    for (int i = 0; i < n; ++i) {
        if (!reach[static_cast<size_t>(i)][static_cast<size_t>(i)])
            throw InvalidParameter("preorder_category: not reflexive");
        arrow_of[{i, i}] = i; // identity id
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !reach[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
            arrow_of[{i, j}] =
                b.add_arrow(i, j, "a" + std::to_string(i) + std::to_string(j));
        }
    for (const auto& [p1, f] : arrow_of)
        for (const auto& [p2, g] : arrow_of) {
            if (p1.second != p2.first) continue;
            auto it = arrow_of.find({p1.first, p2.second});
            if (it == arrow_of.end())
                throw InvalidParameter("preorder_category: not transitive");
            b.set_composite(g, f, it->second);
        }
    return b.build();
}

CatProduct product_category(const CatPtr& C, const CatPtr& D) {
    CatProduct out;
    CatBuilder b(C->objects() * D->objects());
    auto obj = [&](int c, int d) { return c * D->objects() + d; };
    for (int c = 0; c < C->objects(); ++c)
        for (int d = 0; d < D->objects(); ++d) out.object_pairs.emplace_back(c, d);

    std::map<std::pair<int, int>, int> arrow_of;
    for (int f = 0; f < C->arrow_count(); ++f)
        for (int g = 0; g < D->arrow_count(); ++g) {
            if (C->is_identity(f) && D->is_identity(g)) {
                arrow_of[{f, g}] = obj(C->arrow(f).src, D->arrow(g).src);
                continue;
            }
            arrow_of[{f, g}] = b.add_arrow(obj(C->arrow(f).src, D->arrow(g).src),
                                           obj(C->arrow(f).dst, D->arrow(g).dst),
                                           C->arrow(f).name + "*" + D->arrow(g).name);
        }
    for (const auto& [p1, a1] : arrow_of)
        for (const auto& [p2, a2] : arrow_of) {
            if (C->arrow(p1.first).dst != C->arrow(p2.first).src) continue;
            if (D->arrow(p1.second).dst != D->arrow(p2.second).src) continue;
            b.set_composite(a2, a1,
                            arrow_of.at({C->compose(p2.first, p1.first),
                                         D->compose(p2.second, p1.second)}));
        }
    out.cat = b.build();
    out.arrow_pairs.resize(static_cast<size_t>(out.cat->arrow_count()), {-1, -1});
    for (const auto& [p, a] : arrow_of) out.arrow_pairs[static_cast<size_t>(a)] = p;
    return out;
}

void CatFunctor::validate() const {
    if (static_cast<int>(obj_map.size()) != src->objects() ||
        static_cast<int>(arrow_map.size()) != src->arrow_count())
        throw InvalidParameter("functor: map sizes wrong");
    for (int f = 0; f < src->arrow_count(); ++f) {
        const auto& a = src->arrow(f);
        const auto& b = tgt->arrow(on_arrow(f));
        if (b.src != on_obj(a.src) || b.dst != on_obj(a.dst))
            throw InvalidParameter("functor: endpoint mismatch");
    }
    for (int o = 0; o < src->objects(); ++o)
        if (on_arrow(src->identity(o)) != tgt->identity(on_obj(o)))
            throw InvalidParameter("functor: identities not preserved");
    for (int f = 0; f < src->arrow_count(); ++f)
        for (int g = 0; g < src->arrow_count(); ++g)
            if (src->composable(g, f) &&
                on_arrow(src->compose(g, f)) != tgt->compose(on_arrow(g), on_arrow(f)))
                throw InvalidParameter("functor: composition not preserved");
}

CatFunctor cat_identity(CatPtr C) {
    CatFunctor F;
    F.src = C;
    F.tgt = C;
    F.obj_map.resize(static_cast<size_t>(C->objects()));
    std::iota(F.obj_map.begin(), F.obj_map.end(), 0);
    F.arrow_map.resize(static_cast<size_t>(C->arrow_count()));
    std::iota(F.arrow_map.begin(), F.arrow_map.end(), 0);
    return F;
}

CatFunctor cat_compose(const CatFunctor& G, const CatFunctor& F) {
    CatFunctor H;
    H.src = F.src;
    H.tgt = G.tgt;
    for (int o = 0; o < F.src->objects(); ++o) H.obj_map.push_back(G.on_obj(F.on_obj(o)));
    for (int a = 0; a < F.src->arrow_count(); ++a)
        H.arrow_map.push_back(G.on_arrow(F.on_arrow(a)));
    return H;
}

std::vector<CatFunctor> enumerate_functors(const CatPtr& C, const CatPtr& D) {
    std::vector<CatFunctor> out;
    std::vector<int> obj_map(static_cast<size_t>(C->objects()), 0);
    std::vector<int> arrow_map(static_cast<size_t>(C->arrow_count()), -1);

    std::function<void(int)> arrows = [&](int f) {
        if (f == C->arrow_count()) {
            CatFunctor F{C, D, obj_map, arrow_map};
            try {
                F.validate();
            } catch (const InvalidParameter&) {
                return;
            }
            out.push_back(std::move(F));
            return;
        }
        const auto& a = C->arrow(f);
        if (C->is_identity(f)) {
            arrow_map[static_cast<size_t>(f)] = D->identity(obj_map[static_cast<size_t>(a.src)]);
            arrows(f + 1);
            return;
        }
        for (int g : D->hom(obj_map[static_cast<size_t>(a.src)],
                            obj_map[static_cast<size_t>(a.dst)])) {
            arrow_map[static_cast<size_t>(f)] = g;
            arrows(f + 1);
        }
        arrow_map[static_cast<size_t>(f)] = -1;
    };
    std::function<void(int)> objects = [&](int o) {
        if (o == C->objects()) {
            arrows(0);
            return;
        }
        for (int d = 0; d < D->objects(); ++d) {
            obj_map[static_cast<size_t>(o)] = d;
            objects(o + 1);
        }
    };
    objects(0);
    return out;
}

EquivalenceWitness is_cat_equivalence(const CatFunctor& F) {
    EquivalenceWitness w;
    w.essentially_surjective = true;
    for (int d = 0; d < F.tgt->objects(); ++d) {
        bool hit = false;
        for (int c = 0; c < F.src->objects() && !hit; ++c) {
            for (int f : F.tgt->hom(F.on_obj(c), d))
                if (F.tgt->is_iso(f)) { hit = true; break; }
        }
        if (!hit) {
            w.essentially_surjective = false;
            w.detail = "object " + std::to_string(d) + " misses every image";
            break;
        }
    }
    w.fully_faithful = true;
    for (int a = 0; a < F.src->objects() && w.fully_faithful; ++a)
        for (int b = 0; b < F.src->objects() && w.fully_faithful; ++b) {
            auto dom = F.src->hom(a, b);
            auto cod = F.tgt->hom(F.on_obj(a), F.on_obj(b));
            std::set<int> images;
            for (int f : dom) images.insert(F.on_arrow(f));
            if (images.size() != dom.size() || images.size() != cod.size()) {
                w.fully_faithful = false;
                w.detail = "hom(" + std::to_string(a) + "," + std::to_string(b) +
                           ") is not mapped bijectively";
            }
        }
    return w;
}

bool is_cat_isomorphism(const CatFunctor& F) {
    if (F.src->objects() != F.tgt->objects() || F.src->arrow_count() != F.tgt->arrow_count())
        return false;
    std::set<int> objs(F.obj_map.begin(), F.obj_map.end());
    std::set<int>ars(F.arrow_map.begin(), F.arrow_map.end());
    return static_cast<int>(objs.size()) == F.src->objects() &&
           static_cast<int>(ars.size()) == F.src->arrow_count();
}

// ---- nerve ----

namespace {

// Normal form of a composable chain that may contain identities: strip them
// and record their positions as the degeneracy word.
SimplexRef chain_normal_form(const FiniteCategory& C,
                             const std::map<std::vector<int>, int>& chain_index,
                             const std::vector<int>& arrows) {
    std::vector<int> stripped;
    std::vector<int> word;
    for (size_t t = 0; t < arrows.size(); ++t) {
        if (C.is_identity(arrows[t]))
            word.push_back(static_cast<int>(t));
        else
            stripped.push_back(arrows[t]);
    }
    std::sort(word.rbegin(), word.rend());
    if (stripped.empty()) {
        if (arrows.empty()) throw InvalidParameter("chain_ref: empty chain has no object");
        int obj = C.arrow(arrows[0]).src;
        return SimplexRef{{0, obj}, word};
    }
    auto it = chain_index.find(stripped);
    if (it == chain_index.end()) throw InvalidParameter("chain_ref: chain not present");
    return SimplexRef{{static_cast<int>(stripped.size()), it->second}, word};
}

bool has_nonidentity_cycle(const FiniteCategory& C) {
    // composability digraph on non-identity arrows
    int n = C.arrow_count();
    std::vector<int> state(static_cast<size_t>(n), 0);
    std::function<bool(int)> dfs = [&](int f) {
        state[static_cast<size_t>(f)] = 1;
        for (int g = 0; g < n; ++g) {
            if (C.is_identity(g) || !C.composable(g, f)) continue;
            if (state[static_cast<size_t>(g)] == 1) return true;
            if (state[static_cast<size_t>(g)] == 0 && dfs(g)) return true;
        }
        state[static_cast<size_t>(f)] = 2;
        return false;
    };
    for (int f = 0; f < n; ++f)
        if (!C.is_identity(f) && state[static_cast<size_t>(f)] == 0 && dfs(f)) return true;
    return false;
}

Nerve build_nerve(const CatPtr& C, int depth) {
    Nerve N;
    N.cat = C;
    N.depth = depth;
    N.chains.emplace_back();
    for (int o = 0; o < C->objects(); ++o) N.chains[0].push_back({});

    SSetBuilder b;
    for (int o = 0; o < C->objects(); ++o) b.add_vertex();

    for (int d = 1;; ++d) {
        if (depth >= 0 && d > depth) break;
        std::vector<std::vector<int>> level;
        if (d == 1) {
            for (int f = 0; f < C->arrow_count(); ++f)
                if (!C->is_identity(f)) level.push_back({f});
        } else {
            for (const auto& c : N.chains[static_cast<size_t>(d) - 1])
                for (int f = 0; f < C->arrow_count(); ++f)
                    if (!C->is_identity(f) && C->arrow(c.back()).dst == C->arrow(f).src) {
                        auto ext = c;
                        ext.push_back(f);
                        level.push_back(std::move(ext));
                    }
        }
        if (level.empty()) break;
        std::sort(level.begin(), level.end());
        N.chains.push_back(level);
        for (size_t i = 0; i < level.size(); ++i)
            N.chain_index[level[i]] = static_cast<int>(i);
        for (const auto& c : level) {
            std::vector<SimplexRef> faces;
            for (int i = 0; i <= d; ++i) {
                if (d == 1) {
                    faces.push_back(nondeg(0, i == 0 ? C->arrow(c[0]).dst : C->arrow(c[0]).src));
                    continue;
                }
                std::vector<int> fc;
                if (i == 0) {
                    fc.assign(c.begin() + 1, c.end());
                } else if (i == d) {
                    fc.assign(c.begin(), c.end() - 1);
                } else {
                    fc.assign(c.begin(), c.end());
                    int gf = C->compose(c[static_cast<size_t>(i)], c[static_cast<size_t>(i) - 1]);
                    fc.erase(fc.begin() + i);
                    fc[static_cast<size_t>(i) - 1] = gf;
                }
                faces.push_back(chain_normal_form(*C, N.chain_index, fc));
            }
            b.add(d, std::move(faces));
        }
    }
    N.space = b.build();
    return N;
}

} // namespace

SimplexRef Nerve::chain_ref(const std::vector<int>& arrows) const {
    return chain_normal_form(*cat, chain_index, arrows);
}

const std::vector<int>& Nerve::chain_of(SimplexId id) const {
    return chains.at(static_cast<size_t>(id.dim)).at(static_cast<size_t>(id.idx));
}

Nerve nerve(const CatPtr& C) {
    if (has_nonidentity_cycle(*C))
        throw CapExceeded("nerve: category has composable cycles; use nerve_truncated");
    return build_nerve(C, -1);
}

Nerve nerve_truncated(const CatPtr& C, int depth) {
    if (depth < 0) throw InvalidParameter("nerve_truncated: negative depth");
    return build_nerve(C, depth);
}

SimplicialMap nerve_map(const Nerve& from, const Nerve& to, const CatFunctor& F) {
    std::vector<std::vector<SimplexRef>> images(
        static_cast<size_t>(std::max(0, from.space->dim())) + 1);
    for (int o = 0; o < from.cat->objects(); ++o)
        images[0].push_back(nondeg(0, F.on_obj(o)));
    for (int d = 1; d <= from.space->dim(); ++d)
        for (const auto& c : from.chains[static_cast<size_t>(d)]) {
            std::vector<int> mapped;
            for (int f : c) mapped.push_back(F.on_arrow(f));
            images[static_cast<size_t>(d)].push_back(to.chain_ref(mapped));
        }
    return SimplicialMap(from.space, to.space, std::move(images));
}

MarkedSSet natural_marking(const Nerve& N) {
    MarkedSSet out{N.space, {}, -1};
    if (N.space->dim() >= 1)
        for (size_t i = 0; i < N.chains[1].size(); ++i)
            if (N.cat->is_iso(N.chains[1][i][0])) out.marks.insert(static_cast<int>(i));
    return out;
}

// ---- slices ----

SliceCat slice_under(const CatPtr& C, int a) {
    if (a < 0 || a >= C->objects()) throw InvalidParameter("slice_under: unknown object");
    SliceCat out;
    for (int u = 0; u < C->arrow_count(); ++u)
        if (C->arrow(u).src == a) out.object_arrow.push_back(u);
    std::map<int, int> obj_of; // base arrow -> slice object
    for (size_t i = 0; i < out.object_arrow.size(); ++i)
        obj_of[out.object_arrow[i]] = static_cast<int>(i);

    CatBuilder b(static_cast<int>(out.object_arrow.size()));
    // arrows (u -> v, w) with w . u = v; identities correspond to w = id
    std::map<std::tuple<int, int, int>, int> arrow_index;
    std::vector<std::tuple<int, int, int>> arrow_data;
    for (size_t i = 0; i < out.object_arrow.size(); ++i) {
        int u = out.object_arrow[i];
        int idw = C->identity(C->arrow(u).dst);
        arrow_index[{static_cast<int>(i), static_cast<int>(i), idw}] =
            static_cast<int>(i); // identity arrow id in CatBuilder
        arrow_data.emplace_back(static_cast<int>(i), static_cast<int>(i), idw);
    }
    for (size_t i = 0; i < out.object_arrow.size(); ++i)
        for (int w = 0; w < C->arrow_count(); ++w) {
            int u = out.object_arrow[i];
            if (C->arrow(u).dst != C->arrow(w).src || C->is_identity(w)) continue;
            int v = C->compose(w, u);
            int j = obj_of.at(v);
            int id = b.add_arrow(static_cast<int>(i), j,
                                 "[" + C->arrow(w).name + "]");
            arrow_index[{static_cast<int>(i), j, w}] = id;
            arrow_data.emplace_back(static_cast<int>(i), j, w);
        }
    for (const auto& [t1, a1] : arrow_index)
        for (const auto& [t2, a2] : arrow_index) {
            auto [i1, j1, w1] = t1;
            auto [i2, j2, w2] = t2;
            if (j1 != i2) continue;
            int w = C->composable(w2, w1) ? C->compose(w2, w1) : -1;
            if (w < 0) continue;
            auto it = arrow_index.find({i1, j2, w});
            if (it == arrow_index.end()) throw InvalidParameter("slice: composition escapes");
            b.set_composite(a2, a1, it->second);
        }
    out.cat = b.build();

    CatFunctor forget;
    forget.src = out.cat;
    forget.tgt = C;
    for (int u : out.object_arrow) forget.obj_map.push_back(C->arrow(u).dst);
    forget.arrow_map.resize(static_cast<size_t>(out.cat->arrow_count()), -1);
    for (const auto& [t, a] : arrow_index) forget.arrow_map[static_cast<size_t>(a)] = std::get<2>(t);
    forget.validate();
    out.forget = std::move(forget);
    return out;
}

CatFunctor slice_reindex(const SliceCat& from_aprime, const SliceCat& to_a, const CatPtr& C,
                         int f) {
    // (u' : a' -> x) |-> (u' . f : a -> x)
    CatFunctor F;
    F.src = from_aprime.cat;
    F.tgt = to_a.cat;
    std::map<int, int> obj_of_a;
    for (size_t i = 0; i < to_a.object_arrow.size(); ++i)
        obj_of_a[to_a.object_arrow[i]] = static_cast<int>(i);
    for (int uprime : from_aprime.object_arrow)
        F.obj_map.push_back(obj_of_a.at(C->compose(uprime, f)));
    // arrows correspond by their base arrow w
    F.arrow_map.resize(static_cast<size_t>(from_aprime.cat->arrow_count()), -1);
    for (int s = 0; s < from_aprime.cat->arrow_count(); ++s) {
        int w = from_aprime.forget.on_arrow(s);
        int src_obj = F.on_obj(from_aprime.cat->arrow(s).src);
        int dst_obj = F.on_obj(from_aprime.cat->arrow(s).dst);
        // find the arrow of to_a with these endpoints and base w
        bool found = false;
        for (int t = 0; t < to_a.cat->arrow_count(); ++t)
            if (to_a.cat->arrow(t).src == src_obj && to_a.cat->arrow(t).dst == dst_obj &&
                to_a.forget.on_arrow(t) == w) {
                F.arrow_map[static_cast<size_t>(s)] = t;
                found = true;
                break;
            }
        if (!found) throw InvalidParameter("slice_reindex: arrow not found");
    }
    F.validate();
    return F;
}

// ---- tau1 by word rewriting ----

namespace {

struct EdgeInfo {
    int src, dst;
};

struct Tau1Run {
    // words are composable lists of canonical letters; empty words carry a
    // start vertex
    struct Word {
        int start;
        std::vector<int> letters;
        friend auto operator<=>(const Word&, const Word&) = default;
    };

    const SimplicialSet& X;
    int cap;
    std::vector<EdgeInfo> edges;
    std::vector<int> letter_root;
    std::vector<char> letter_identity;
    // raw relations from nondegenerate 2-simplices: faces (d2, d0, d1)
    std::vector<std::array<SimplexRef, 3>> relations;

    std::map<Word, int> word_id;
    std::vector<Word> words;
    std::vector<int> word_root;

    explicit Tau1Run(const SimplicialSet& x, int cap_) : X(x), cap(cap_) {}

    int lfind(int e) {
        while (letter_root[static_cast<size_t>(e)] != e) {
            letter_root[static_cast<size_t>(e)] =
                letter_root[static_cast<size_t>(letter_root[static_cast<size_t>(e)])];
            e = letter_root[static_cast<size_t>(e)];
        }
        return e;
    }

    bool lunite(int a, int b) {
        a = lfind(a);
        b = lfind(b);
        if (a == b) return false;
        if (edges[static_cast<size_t>(a)].src != edges[static_cast<size_t>(b)].src ||
            edges[static_cast<size_t>(a)].dst != edges[static_cast<size_t>(b)].dst)
            throw MssetError("tau1: non-parallel edges identified");
        letter_root[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        if (letter_identity[static_cast<size_t>(a)] || letter_identity[static_cast<size_t>(b)]) {
            letter_identity[static_cast<size_t>(a)] = 1;
            letter_identity[static_cast<size_t>(b)] = 1;
        }
        return true;
    }

    bool mark_identity(int e) {
        e = lfind(e);
        if (edges[static_cast<size_t>(e)].src != edges[static_cast<size_t>(e)].dst)
            throw MssetError("tau1: non-loop edge collapsed to an identity");
        if (letter_identity[static_cast<size_t>(e)]) return false;
        letter_identity[static_cast<size_t>(e)] = 1;
        return true;
    }

    // canonical letter of a 1-simplex: nullopt when it is an identity
    std::optional<int> canon_letter(const SimplexRef& r) {
        if (r.is_degenerate()) return std::nullopt;
        int e = lfind(r.base.idx);
        if (letter_identity[static_cast<size_t>(e)]) return std::nullopt;
        return e;
    }

    Word canon_word(int start, const std::vector<int>& letters) {
        Word w{start, {}};
        for (int l : letters) {
            int r = lfind(l);
            if (!letter_identity[static_cast<size_t>(r)]) w.letters.push_back(r);
        }
        return w;
    }

    int wfind(int w) {
        while (word_root[static_cast<size_t>(w)] != w) {
            word_root[static_cast<size_t>(w)] =
                word_root[static_cast<size_t>(word_root[static_cast<size_t>(w)])];
            w = word_root[static_cast<size_t>(w)];
        }
        return w;
    }

    bool wunite(int a, int b) {
        a = wfind(a);
        b = wfind(b);
        if (a == b) return false;
        word_root[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    }

    int register_word(const Word& w) {
        auto it = word_id.find(w);
        if (it != word_id.end()) return it->second;
        int id = static_cast<int>(words.size());
        word_id[w] = id;
        words.push_back(w);
        word_root.push_back(id);
        return id;
    }

    int word_dst(const Word& w) const {
        return w.letters.empty() ? w.start
                                 : edges[static_cast<size_t>(w.letters.back())].dst;
    }

    // letter-level relation pass; true when anything changed
    bool letter_pass(std::map<std::pair<int, int>, std::set<std::optional<int>>>& rules) {
        bool changed = false;
        rules.clear();
        for (const auto& rel : relations) {
            auto la = canon_letter(rel[0]); // d2: first edge
            auto lb = canon_letter(rel[1]); // d0: second edge
            auto lc = canon_letter(rel[2]); // d1: composite
            int lhs_len = (la ? 1 : 0) + (lb ? 1 : 0);
            if (lhs_len == 2) {
                rules[{*la, *lb}].insert(lc);
            } else if (lhs_len == 1) {
                int l = la ? *la : *lb;
                if (lc) {
                    if (lfind(l) != lfind(*lc)) changed |= lunite(l, *lc);
                } else {
                    changed |= mark_identity(l);
                }
            } else if (lc) {
                changed |= mark_identity(*lc);
            }
        }
        // conflicting right-hand sides collapse together
        for (auto& [lhs, rhss] : rules) {
            if (rhss.size() < 2) continue;
            std::optional<int> first;
            bool has_id = false;
            for (const auto& r : rhss) {
                if (!r) has_id = true;
                else if (!first) first = r;
                else if (lfind(*first) != lfind(*r)) changed |= lunite(*first, *r);
            }
            if (has_id && first) changed |= mark_identity(*first);
        }
        return changed;
    }

    // explore composable words up to the cap, uniting along reductions;
    // returns true when letter-level feedback was discovered
    bool word_pass(const std::map<std::pair<int, int>, std::set<std::optional<int>>>& rules) {
        word_id.clear();
        words.clear();
        word_root.clear();

        std::vector<std::vector<int>> out_edges(static_cast<size_t>(X.count(0)));
        for (int e = 0; e < X.count(1); ++e) {
            int r = lfind(e);
            if (r != e || letter_identity[static_cast<size_t>(r)]) continue;
            out_edges[static_cast<size_t>(edges[static_cast<size_t>(e)].src)].push_back(e);
        }

        for (int v = 0; v < X.count(0); ++v) register_word(Word{v, {}});
        size_t cursor = 0;
        while (cursor < words.size()) {
            Word w = words[cursor];
            int id = static_cast<int>(cursor);
            ++cursor;
            // reductions
            for (size_t i = 0; i + 1 < w.letters.size(); ++i) {
                auto it = rules.find({w.letters[i], w.letters[i + 1]});
                if (it == rules.end()) continue;
                for (const auto& rhs : it->second) {
                    Word r = w;
                    r.letters.erase(r.letters.begin() + static_cast<long>(i),
                                    r.letters.begin() + static_cast<long>(i) + 2);
                    if (rhs) r.letters.insert(r.letters.begin() + static_cast<long>(i), *rhs);
                    wunite(id, register_word(canon_word(r.start, r.letters)));
                }
            }
            // extensions
            if (static_cast<int>(w.letters.size()) < cap)
                for (int e : out_edges[static_cast<size_t>(word_dst(w))]) {
                    Word ext = w;
                    ext.letters.push_back(e);
                    register_word(ext);
                }
        }
        // feedback: single-letter words equal to empty words or each other
        bool feedback = false;
        std::map<int, std::vector<int>> by_class;
        for (size_t i = 0; i < words.size(); ++i)
            by_class[wfind(static_cast<int>(i))].push_back(static_cast<int>(i));
        for (const auto& [root, members] : by_class) {
            (void)root;
            std::vector<int> singles;
            bool has_empty = false;
            for (int m : members) {
                if (words[static_cast<size_t>(m)].letters.size() == 1)
                    singles.push_back(words[static_cast<size_t>(m)].letters[0]);
                if (words[static_cast<size_t>(m)].letters.empty()) has_empty = true;
            }
            for (size_t i = 0; i + 1 < singles.size(); ++i)
                if (lfind(singles[i]) != lfind(singles[i + 1]))
                    feedback |= lunite(singles[i], singles[i + 1]);
            if (has_empty)
                for (int s : singles) feedback |= mark_identity(s);
        }
        return feedback;
    }
};


struct Tau1Classes {
    std::vector<std::vector<Tau1Run::Word>> classes; // members, sorted; rep = front
    std::map<Tau1Run::Word, int> class_of;
    int max_min_rep = 0;
};

Tau1Classes collect_classes(Tau1Run& run) {
    Tau1Classes out;
    std::map<int, std::vector<Tau1Run::Word>> by_root;
    for (size_t i = 0; i < run.words.size(); ++i)
        by_root[run.wfind(static_cast<int>(i))].push_back(run.words[i]);
    for (auto& [root, members] : by_root) {
        (void)root;
        std::sort(members.begin(), members.end(),
                  [](const Tau1Run::Word& a, const Tau1Run::Word& b) {
                      if (a.letters.size() != b.letters.size())
                          return a.letters.size() < b.letters.size();
                      return a < b;
                  });
        int cls = static_cast<int>(out.classes.size());
        for (const auto& m : members) out.class_of[m] = cls;
        out.max_min_rep = std::max(out.max_min_rep,
                                   static_cast<int>(members.front().letters.size()));
        out.classes.push_back(std::move(members));
    }
    return out;
}

} // namespace

Tau1 tau1(const SSetPtr& X, int max_word_len, int max_classes) {
    if (X->dim() < 0) {
        Tau1 t;
        t.cat = discrete_category(0);
        t.space = X;
        return t;
    }
    auto run_at = [&](int cap) {
        auto run = std::make_unique<Tau1Run>(*X, cap);
        run->edges.resize(static_cast<size_t>(X->count(1)));
        for (int e = 0; e < X->count(1); ++e) {
            const auto& fs = X->faces_of({1, e});
            run->edges[static_cast<size_t>(e)] = {fs[1].base.idx, fs[0].base.idx};
        }
        run->letter_root.resize(static_cast<size_t>(X->count(1)));
        std::iota(run->letter_root.begin(), run->letter_root.end(), 0);
        run->letter_identity.assign(static_cast<size_t>(X->count(1)), 0);
        for (int s = 0; s < X->count(2); ++s) {
            const auto& fs = X->faces_of({2, s});
            run->relations.push_back({fs[2], fs[0], fs[1]});
        }
        std::map<std::pair<int, int>, std::set<std::optional<int>>> rules;
        for (;;) {
            bool c1 = run->letter_pass(rules);
            bool c2 = run->word_pass(rules);
            if (!c1 && !c2) break;
        }
        return run;
    };

    std::unique_ptr<Tau1Run> prev, cur;
    Tau1Classes prev_cls, cur_cls;
    for (int cap = 3;; ++cap) {
        if (cap > max_word_len)
            throw CapExceeded("tau1: homs did not stabilize within the word cap");
        cur = run_at(cap);
        cur_cls = collect_classes(*cur);
        if (static_cast<int>(cur_cls.classes.size()) > max_classes)
            throw CapExceeded("tau1: class budget exceeded");
        if (prev) {
            // compare partitions restricted to words of length <= cap - 2
            auto trim = [&](const Tau1Classes& cls) {
                std::set<std::vector<Tau1Run::Word>> parts;
                for (const auto& c : cls.classes) {
                    std::vector<Tau1Run::Word> t;
                    for (const auto& w : c)
                        if (static_cast<int>(w.letters.size()) <= cap - 2) t.push_back(w);
                    if (!t.empty()) parts.insert(t);
                }
                return parts;
            };
            bool reps_fit = 2 * cur_cls.max_min_rep + 1 <= cap;
            if (reps_fit && trim(prev_cls) == trim(cur_cls)) break;
        }
        prev = std::move(cur);
        prev_cls = std::move(cur_cls);
    }

    // build the category from the current run
    Tau1 t;
    t.space = X;
    CatBuilder b(X->count(0));
    std::vector<int> class_arrow(cur_cls.classes.size(), -1);
    // identities first
    for (size_t c = 0; c < cur_cls.classes.size(); ++c) {
        const auto& rep = cur_cls.classes[c].front();
        if (rep.letters.empty()) class_arrow[c] = rep.start; // CatBuilder identity ids
    }
    for (size_t c = 0; c < cur_cls.classes.size(); ++c) {
        if (class_arrow[c] >= 0) continue;
        const auto& rep = cur_cls.classes[c].front();
        class_arrow[c] = b.add_arrow(rep.start, cur->word_dst(rep), "w" + std::to_string(c));
    }
    for (size_t cf = 0; cf < cur_cls.classes.size(); ++cf)
        for (size_t cg = 0; cg < cur_cls.classes.size(); ++cg) {
            const auto& f = cur_cls.classes[cf].front();
            const auto& g = cur_cls.classes[cg].front();
            if (cur->word_dst(f) != g.start) continue;
            Tau1Run::Word concat{f.start, f.letters};
            concat.letters.insert(concat.letters.end(), g.letters.begin(), g.letters.end());
            auto it = cur_cls.class_of.find(concat);
            if (it == cur_cls.class_of.end())
                throw CapExceeded("tau1: composition escapes the word cap");
            b.set_composite(class_arrow[cg], class_arrow[cf], class_arrow[static_cast<size_t>(it->second)]);
        }
    t.cat = b.build();

    for (const auto& r : X->level(1)) {
        if (r.is_degenerate()) {
            t.edge_arrow[r] = t.cat->identity(r.base.idx);
        } else {
            auto letter = cur->canon_letter(r);
            Tau1Run::Word w{cur->edges[static_cast<size_t>(r.base.idx)].src, {}};
            if (letter) w.letters.push_back(*letter);
            t.edge_arrow[r] = class_arrow[static_cast<size_t>(cur_cls.class_of.at(w))];
        }
    }
    return t;
}

Tau1 tau1_fillers(const SSetPtr& X) {
    auto level1 = X->level(1);
    std::map<SimplexRef, int> pos;
    for (size_t i = 0; i < level1.size(); ++i) pos[level1[i]] = static_cast<int>(i);
    std::vector<int> root(level1.size());
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (root[static_cast<size_t>(x)] != x) x = root[static_cast<size_t>(x)] =
            root[static_cast<size_t>(root[static_cast<size_t>(x)])];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        root[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        return true;
    };

    auto tris = X->level(2);
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, int>, int> table;
        for (const auto& s : tris) {
            int cf = find(pos.at(X->face(s, 2)));
            int cg = find(pos.at(X->face(s, 0)));
            int ce = find(pos.at(X->face(s, 1)));
            auto [it, fresh] = table.try_emplace({cf, cg}, ce);
            if (!fresh && find(it->second) != ce) {
                changed |= unite(it->second, ce);
            }
        }
    }

    // classes
    std::map<int, int> root_class;
    std::vector<SimplexRef> reps;
    for (size_t i = 0; i < level1.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (!root_class.count(r)) {
            root_class[r] = static_cast<int>(reps.size());
            reps.push_back(level1[static_cast<size_t>(r)]);
        }
    }

    auto endpoints = [&](const SimplexRef& e) {
        return std::pair<int, int>{X->face(e, 1).base.idx, X->face(e, 0).base.idx};
    };

    CatBuilder b(X->count(0));
    std::vector<int> class_arrow(reps.size(), -1);
    for (size_t c = 0; c < reps.size(); ++c) {
        auto [s, d] = endpoints(reps[c]);
        bool is_id = false;
        // a class is an identity when it contains the degenerate edge
        SimplexRef deg{{0, s}, {0}};
        if (s == d && find(pos.at(deg)) == find(pos.at(reps[c]))) is_id = true;
        class_arrow[c] = is_id ? s : b.add_arrow(s, d, "e" + std::to_string(c));
    }
    // composition via fillers
    std::map<std::pair<int, int>, int> table;
    for (const auto& s : tris) {
        int cf = root_class.at(find(pos.at(X->face(s, 2))));
        int cg = root_class.at(find(pos.at(X->face(s, 0))));
        int ce = root_class.at(find(pos.at(X->face(s, 1))));
        table[{cf, cg}] = ce;
    }
    for (size_t cf = 0; cf < reps.size(); ++cf)
        for (size_t cg = 0; cg < reps.size(); ++cg) {
            auto [fs, fd] = endpoints(reps[cf]);
            auto [gs, gd] = endpoints(reps[cg]);
            if (fd != gs) continue;
            auto it = table.find({static_cast<int>(cf), static_cast<int>(cg)});
            if (it == table.end())
                throw NotAQuasiCategory("tau1_fillers: a composable pair has no filler");
            b.set_composite(class_arrow[static_cast<size_t>(cg)],
                            class_arrow[static_cast<size_t>(cf)],
                            class_arrow[static_cast<size_t>(it->second)]);
        }

    Tau1 t;
    t.space = X;
    t.cat = b.build();
    for (const auto& e : level1)
        t.edge_arrow[e] = class_arrow[static_cast<size_t>(root_class.at(find(pos.at(e))))];
    return t;
}

Tau1 homotopy_category(const SSetPtr& X, int cutoff) {
    auto rep = is_quasi_category(X, cutoff);
    if (!rep.verdict)
        throw NotAQuasiCategory("homotopy_category: inner-horn lifting fails at cutoff " +
                                std::to_string(rep.cutoff));
    Tau1 t = tau1_fillers(X);
    Tau1 words = tau1(X);
    if (words.cat->arrow_count() != t.cat->arrow_count() ||
        words.cat->objects() != t.cat->objects())
        throw MssetError("homotopy_category: construction routes disagree");
    return t;
}

CatFunctor tau1_functor(const Tau1& tx, const Tau1& ty, const SimplicialMap& f) {
    CatFunctor F;
    F.src = tx.cat;
    F.tgt = ty.cat;
    for (int v = 0; v < tx.cat->objects(); ++v)
        F.obj_map.push_back(f.apply(SimplexId{0, v}).base.idx);
    F.arrow_map.resize(static_cast<size_t>(tx.cat->arrow_count()), -1);
    for (const auto& [edge, arrow] : tx.edge_arrow) {
        int image = ty.edge_arrow.at(f.apply(edge));
        if (F.arrow_map[static_cast<size_t>(arrow)] >= 0 &&
            F.arrow_map[static_cast<size_t>(arrow)] != image)
            throw MssetError("tau1_functor: map does not respect edge classes");
        F.arrow_map[static_cast<size_t>(arrow)] = image;
    }
    // arrows that are formal composites: extend multiplicatively
    bool progress = true;
    while (progress) {
        progress = false;
        for (int a = 0; a < tx.cat->arrow_count(); ++a) {
            if (F.arrow_map[static_cast<size_t>(a)] >= 0) continue;
            for (int u = 0; u < tx.cat->arrow_count(); ++u) {
                if (F.arrow_map[static_cast<size_t>(u)] < 0) continue;
                for (int v = 0; v < tx.cat->arrow_count(); ++v) {
                    if (F.arrow_map[static_cast<size_t>(v)] < 0) continue;
                    if (!tx.cat->composable(v, u) || tx.cat->compose(v, u) != a) continue;
                    F.arrow_map[static_cast<size_t>(a)] =
                        ty.cat->compose(F.arrow_map[static_cast<size_t>(v)],
                                        F.arrow_map[static_cast<size_t>(u)]);
                    progress = true;
                    break;
                }
                if (F.arrow_map[static_cast<size_t>(a)] >= 0) break;
            }
        }
    }
    for (int a = 0; a < tx.cat->arrow_count(); ++a)
        if (F.arrow_map[static_cast<size_t>(a)] < 0)
            throw MssetError("tau1_functor: an arrow is not generated by edges");
    F.validate();
    return F;
}

CatFunctor nerve_comparison(const Nerve& N, const Tau1& t) {
    CatFunctor F;
    F.src = N.cat;
    F.tgt = t.cat;
    for (int o = 0; o < N.cat->objects(); ++o) F.obj_map.push_back(o);
    for (int a = 0; a < N.cat->arrow_count(); ++a) {
        SimplexRef edge = N.chain_ref({a});
        F.arrow_map.push_back(t.edge_arrow.at(edge));
    }
    F.validate();
    return F;
}

// ---- Grothendieck construction ----

Grothendieck grothendieck(const std::vector<CatPtr>& fibers,
                          const std::vector<CatFunctor>& steps) {
    if (fibers.empty() || steps.size() + 1 != fibers.size())
        throw InvalidParameter("grothendieck: need n+1 fibers and n steps");
    int n = static_cast<int>(steps.size());
    for (int i = 0; i < n; ++i) {
        steps[static_cast<size_t>(i)].validate();
        if (steps[static_cast<size_t>(i)].src != fibers[static_cast<size_t>(i)] ||
            steps[static_cast<size_t>(i)].tgt != fibers[static_cast<size_t>(i) + 1])
            throw InvalidParameter("grothendieck: step endpoints mismatch");
    }
    // transition functors F_{ij}
    auto transit_obj = [&](int i, int j, int x) {
        for (int k = i; k < j; ++k) x = steps[static_cast<size_t>(k)].on_obj(x);
        return x;
    };
    auto transit_arrow = [&](int i, int j, int a) {
        for (int k = i; k < j; ++k) a = steps[static_cast<size_t>(k)].on_arrow(a);
        return a;
    };

    Grothendieck out;
    out.fibers = fibers;
    std::map<std::pair<int, int>, int> obj_of;
    for (int i = 0; i <= n; ++i)
        for (int x = 0; x < fibers[static_cast<size_t>(i)]->objects(); ++x) {
            obj_of[{i, x}] = static_cast<int>(out.objects.size());
            out.objects.emplace_back(i, x);
        }

    CatBuilder b(static_cast<int>(out.objects.size()));
    std::map<std::tuple<int, int, int, int>, int> arrow_of; // (i, x, j, phi)
    out.arrows.resize(out.objects.size()); // identities
    for (size_t o = 0; o < out.objects.size(); ++o) {
        auto [i, x] = out.objects[o];
        out.arrows[o] = {i, i, fibers[static_cast<size_t>(i)]->identity(x)};
        arrow_of[{i, x, i, fibers[static_cast<size_t>(i)]->identity(x)}] = static_cast<int>(o);
    }
    for (int i = 0; i <= n; ++i)
        for (int x = 0; x < fibers[static_cast<size_t>(i)]->objects(); ++x)
            for (int j = i; j <= n; ++j) {
                int fx = transit_obj(i, j, x);
                for (int y = 0; y < fibers[static_cast<size_t>(j)]->objects(); ++y)
                    for (int phi : fibers[static_cast<size_t>(j)]->hom(fx, y)) {
                        if (i == j && phi == fibers[static_cast<size_t>(i)]->identity(x))
                            continue; // identity, already present
                        int id = b.add_arrow(obj_of.at({i, x}), obj_of.at({j, y}),
                                             "(" + std::to_string(i) + "->" +
                                                 std::to_string(j) + ")");
                        arrow_of[{i, x, j, phi}] = id;
                        out.arrows.push_back({i, j, phi});
                    }
            }
    // composition: (j,k,psi) . (i,j,phi) = (i,k, psi . F_jk(phi))
    for (const auto& [t1, a1] : arrow_of)
        for (const auto& [t2, a2] : arrow_of) {
            auto [i, x, j, phi] = t1;
            auto [j2, y, k, psi] = t2;
            if (j != j2) continue;
            // source of t2 must be the target of t1
            int phi_dst = fibers[static_cast<size_t>(j)]->arrow(phi).dst;
            if (phi_dst != y) continue;
            int comp = fibers[static_cast<size_t>(k)]->compose(psi, transit_arrow(j, k, phi));
            b.set_composite(a2, a1, arrow_of.at({i, x, k, comp}));
        }
    out.total = b.build();

    CatFunctor proj;
    proj.src = out.total;
    proj.tgt = chain_poset(n);
    for (auto [i, x] : out.objects) {
        (void)x;
        proj.obj_map.push_back(i);
    }
    for (const auto& a : out.arrows)
        proj.arrow_map.push_back(proj.tgt->hom(a.i, a.j).front());
    proj.validate();
    out.projection = std::move(proj);
    return out;
}

GrothendieckFibration grothendieck_fibration(const std::vector<CatPtr>& fibers,
                                             const std::vector<CatFunctor>& steps) {
    GrothendieckFibration out;
    out.gr = grothendieck(fibers, steps);
    out.total_nerve = nerve(out.gr.total);
    out.base_nerve = nerve(chain_poset(static_cast<int>(steps.size())));
    out.total_marked = MarkedSSet{out.total_nerve.space, {}, -1};
    // cocartesian edges: fiber component an isomorphism
    for (size_t i = 0; i < out.total_nerve.chains[1].size(); ++i) {
        int arrow = out.total_nerve.chains[1][i][0];
        const auto& ad = out.gr.arrows[static_cast<size_t>(arrow)];
        if (out.gr.fibers[static_cast<size_t>(ad.j)]->is_iso(ad.phi))
            out.total_marked.marks.insert(static_cast<int>(i));
    }
    SimplicialMap proj = nerve_map(out.total_nerve, out.base_nerve, out.gr.projection);
    out.projection = MarkedMap{std::move(proj), out.total_marked,
                               sharp(out.base_nerve.space)};
    return out;
}

} // namespace msset
