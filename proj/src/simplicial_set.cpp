#include "msset/simplicial_set.hpp"

#include <algorithm>
#include <set>

namespace msset {

namespace surj {

std::vector<int> from_word(const std::vector<int>& word, int n) {
    // collapse set D = {word...} subset of {0..n-1}
    std::set<int> collapse(word.begin(), word.end());
    if (static_cast<int>(collapse.size()) != static_cast<int>(word.size()))
        throw InvalidParameter("degeneracy word has repeated indices");
    if (!collapse.empty() && (*collapse.rbegin() >= n || *collapse.begin() < 0))
        throw InvalidParameter("degeneracy word index out of range");
    std::vector<int> values(static_cast<size_t>(n) + 1);
    values[0] = 0;
    for (int i = 0; i < n; ++i)
        values[i + 1] = values[i] + (collapse.count(i) ? 0 : 1);
    return values;
}

std::vector<int> to_word(const std::vector<int>& values) {
    std::vector<int> word;
    for (int i = static_cast<int>(values.size()) - 2; i >= 0; --i)
        if (values[i] == values[i + 1]) word.push_back(i);
    return word;
}

std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> out(inner.size());
    for (size_t i = 0; i < inner.size(); ++i) out[i] = outer.at(static_cast<size_t>(inner[i]));
    return out;
}

bool is_surjective(const std::vector<int>& values) {
    if (values.empty()) return false;
    // monotone, starts at 0: surjective onto [max] iff steps are all <= 1
    if (values.front() != 0) return false;
    for (size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i + 1] - values[i] > 1) return false;
    return true;
}

} // namespace surj

SimplicialSet::SimplicialSet(std::vector<int> counts,
                             std::vector<std::vector<std::vector<SimplexRef>>> faces)
    : counts_(std::move(counts)), faces_(std::move(faces)) {
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
    faces_.resize(counts_.size());
}

int SimplicialSet::count(int d) const {
    if (d < 0 || d >= static_cast<int>(counts_.size())) return 0;
    return counts_[d];
}

int SimplicialSet::total_count() const {
    int t = 0;
    for (int c : counts_) t += c;
    return t;
}

const std::vector<SimplexRef>& SimplicialSet::faces_of(SimplexId id) const {
    if (id.dim < 1 || id.dim >= static_cast<int>(faces_.size()) ||
        id.idx < 0 || id.idx >= static_cast<int>(faces_[id.dim].size()))
        throw InvalidParameter("faces_of: no such simplex");
    return faces_[id.dim][id.idx];
}

SimplexRef SimplicialSet::act(const SimplexRef& r, const std::vector<int>& op) const {
    if (static_cast<int>(op.size()) == 0)
        throw InvalidParameter("act: empty operator");
    // current simplex = values applied to base; peel non-surjective parts
    std::vector<int> values = surj::compose(surj::from_word(r.word, r.dim()), op);
    SimplexId base = r.base;
    for (;;) {
        int top = base.dim;
        // largest value of [top] missing from the image
        std::vector<char> hit(static_cast<size_t>(top) + 1, 0);
        for (int v : values) hit[static_cast<size_t>(v)] = 1;
        int miss = -1;
        for (int v = top; v >= 0; --v)
            if (!hit[static_cast<size_t>(v)]) { miss = v; break; }
        if (miss < 0) break;
        // values = delta_miss . beta ; replace base by its miss-th face
        std::vector<int> beta(values.size());
        for (size_t i = 0; i < values.size(); ++i)
            beta[i] = values[i] - (values[i] > miss ? 1 : 0);
        const SimplexRef& f = faces_of(base)[static_cast<size_t>(miss)];
        values = surj::compose(surj::from_word(f.word, base.dim - 1), beta);
        base = f.base;
    }
    return SimplexRef{base, surj::to_word(values)};
}

SimplexRef SimplicialSet::face(const SimplexRef& r, int i) const {
    int n = r.dim();
    if (n < 1 || i < 0 || i > n) throw InvalidParameter("face: index out of range");
    std::vector<int> delta;
    delta.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) delta.push_back(t < i ? t : t + 1);
    return act(r, delta);
}

SimplexRef SimplicialSet::degeneracy(const SimplexRef& r, int j) const {
    int n = r.dim();
    if (j < 0 || j > n) throw InvalidParameter("degeneracy: index out of range");
    std::vector<int> sigma;
    sigma.reserve(static_cast<size_t>(n) + 2);
    for (int t = 0; t <= n + 1; ++t) sigma.push_back(t <= j ? std::min(t, j) : t - 1);
    return act(r, sigma);
}

SimplexRef SimplicialSet::vertex_of(const SimplexRef& r, int t) const {
    return act(r, {t});
}

SimplexRef SimplicialSet::edge_of(const SimplexRef& r, int a, int b) const {
    return act(r, {a, b});
}

std::vector<SimplexRef> SimplicialSet::level(int n) const {
    std::vector<SimplexRef> out;
    for (int d = 0; d <= std::min(n, dim()); ++d) {
        auto words = subsets_of_size(n - 1, n - d);
        for (int idx = 0; idx < count(d); ++idx) {
            for (const auto& sub : words) {
                std::vector<int> word(sub.rbegin(), sub.rend());
                out.push_back(SimplexRef{{d, idx}, std::move(word)});
            }
        }
    }
    return out;
}

int SimplicialSet::level_size(int n) const {
    int total = 0;
    for (int d = 0; d <= std::min(n, dim()); ++d) {
        // C(n, n-d) words
        long long c = 1;
        for (int i = 0; i < n - d; ++i) c = c * (n - i) / (i + 1);
        total += static_cast<int>(c) * count(d);
    }
    return total;
}

void SimplicialSet::validate() const {
    for (int d = 1; d <= dim(); ++d) {
        for (int idx = 0; idx < count(d); ++idx) {
            const auto& fs = faces_of({d, idx});
            if (static_cast<int>(fs.size()) != d + 1)
                throw InvalidParameter("validate: wrong face tuple size");
            for (const auto& f : fs) {
                if (f.dim() != d - 1) throw InvalidParameter("validate: face dimension mismatch");
                if (f.base.dim < 0 || f.base.idx < 0 || f.base.idx >= count(f.base.dim))
                    throw InvalidParameter("validate: face base missing");
                for (size_t t = 0; t + 1 < f.word.size(); ++t)
                    if (f.word[t] <= f.word[t + 1])
                        throw InvalidParameter("validate: face word not strictly decreasing");
                surj::from_word(f.word, f.dim()); // range check
            }
            if (d < 2) continue;
            SimplexRef r = nondeg(d, idx);
            for (int j = 1; j <= d; ++j)
                for (int i = 0; i < j; ++i)
                    if (face(face(r, j), i) != face(face(r, i), j - 1))
                        throw InvalidParameter("validate: simplicial identity fails");
        }
    }
}

bool same_presentation(const SimplicialSet& a, const SimplicialSet& b) {
    return a.counts_ == b.counts_ && a.faces_ == b.faces_;
}

SimplexId SSetBuilder::add_vertex() {
    if (counts_.empty()) { counts_.push_back(0); faces_.emplace_back(); }
    return SimplexId{0, counts_[0]++};
}

SimplexId SSetBuilder::add(int d, std::vector<SimplexRef> faces) {
    if (d < 1) throw InvalidParameter("SSetBuilder::add: use add_vertex for dimension 0");
    if (static_cast<int>(faces.size()) != d + 1)
        throw InvalidParameter("SSetBuilder::add: need d+1 faces");
    while (static_cast<int>(counts_.size()) <= d) { counts_.push_back(0); faces_.emplace_back(); }
    faces_[d].push_back(std::move(faces));
    return SimplexId{d, counts_[d]++};
}

int SSetBuilder::count(int d) const {
    if (d < 0 || d >= static_cast<int>(counts_.size())) return 0;
    return counts_[d];
}

SSetPtr SSetBuilder::build() {
    auto s = std::make_shared<SimplicialSet>(counts_, faces_);
    s->validate();
    return s;
}

SimplicialMap::SimplicialMap(SSetPtr src, SSetPtr tgt,
                             std::vector<std::vector<SimplexRef>> images)
    : src_(std::move(src)), tgt_(std::move(tgt)), images_(std::move(images)) {
    images_.resize(static_cast<size_t>(std::max(0, src_->dim())) + 1);
}

SimplexRef SimplicialMap::apply(SimplexId id) const {
    return images_.at(static_cast<size_t>(id.dim)).at(static_cast<size_t>(id.idx));
}

SimplexRef SimplicialMap::apply(const SimplexRef& r) const {
    const SimplexRef& im = apply(r.base);
    if (r.word.empty()) return im;
    auto values = surj::compose(surj::from_word(im.word, im.dim()),
                                surj::from_word(r.word, r.dim()));
    return SimplexRef{im.base, surj::to_word(values)};
}

void SimplicialMap::validate() const {
    for (int d = 0; d <= src_->dim(); ++d)
        for (int idx = 0; idx < src_->count(d); ++idx) {
            const SimplexRef& im = apply(SimplexId{d, idx});
            if (im.dim() != d) throw InvalidParameter("map: image dimension mismatch");
            if (im.base.idx < 0 || im.base.idx >= tgt_->count(im.base.dim))
                throw InvalidParameter("map: image base missing in target");
            for (int i = 0; i <= d && d >= 1; ++i)
                if (apply(src_->faces_of({d, idx})[static_cast<size_t>(i)]) != tgt_->face(im, i))
                    throw InvalidParameter("map: does not commute with faces");
        }
}

bool SimplicialMap::is_mono() const {
    // injective on nondegenerate simplices with nondegenerate images is
    // equivalent to levelwise injectivity
    std::set<SimplexRef> seen;
    for (int d = 0; d <= src_->dim(); ++d)
        for (int idx = 0; idx < src_->count(d); ++idx) {
            const SimplexRef& im = apply(SimplexId{d, idx});
            if (im.is_degenerate()) return false;
            if (!seen.insert(im).second) return false;
        }
    return true;
}

bool SimplicialMap::is_identity_like() const {
    for (int d = 0; d <= src_->dim(); ++d)
        for (int idx = 0; idx < src_->count(d); ++idx)
            if (apply(SimplexId{d, idx}) != nondeg(d, idx)) return false;
    return src_->count_vector() == tgt_->count_vector();
}

SimplicialMap SimplicialMap::identity(SSetPtr x) {
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, x->dim())) + 1);
    for (int d = 0; d <= x->dim(); ++d)
        for (int idx = 0; idx < x->count(d); ++idx)
            images[static_cast<size_t>(d)].push_back(nondeg(d, idx));
    SSetPtr copy = x;
    return SimplicialMap(std::move(copy), std::move(x), std::move(images));
}

SimplicialMap SimplicialMap::constant(SSetPtr x, SSetPtr point, SimplexId vertex) {
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, x->dim())) + 1);
    for (int d = 0; d <= x->dim(); ++d) {
        std::vector<int> word;
        for (int j = d - 1; j >= 0; --j) word.push_back(j);
        for (int idx = 0; idx < x->count(d); ++idx)
            images[static_cast<size_t>(d)].push_back(SimplexRef{vertex, word});
    }
    return SimplicialMap(std::move(x), std::move(point), std::move(images));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    std::vector<std::vector<SimplexRef>> images(f.images_.size());
    for (size_t d = 0; d < f.images_.size(); ++d)
        for (const auto& im : f.images_[d])
            images[d].push_back(g.apply(im));
    return SimplicialMap(f.src_, g.tgt_, std::move(images));
}

bool same_images(const SimplicialMap& f, const SimplicialMap& g) {
    return f.images_ == g.images_;
}

// ---- cells ----

std::vector<std::vector<int>> subsets_of_size(int n, int size) {
    std::vector<std::vector<int>> out;
    if (size < 0 || size > n + 1) return out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == size) { out.push_back(cur); return; }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

int subset_index(const std::vector<int>& subset, int n) {
    auto all = subsets_of_size(n, static_cast<int>(subset.size()));
    for (size_t i = 0; i < all.size(); ++i)
        if (all[i] == subset) return static_cast<int>(i);
    throw InvalidParameter("subset_index: not a subset of {0..n}");
}

namespace {

// Shared construction: the simplicial subset of a standard simplex spanned
// by the given vertex subsets (all faces added automatically).
SSetPtr span_of_subsets(const std::vector<std::vector<int>>& tops,
                        std::vector<std::vector<int>>* index_to_subset = nullptr) {
    std::set<std::vector<int>> keep;
    std::function<void(const std::vector<int>&)> close = [&](const std::vector<int>& s) {
        if (!keep.insert(s).second) return;
        if (s.size() <= 1) return;
        for (size_t i = 0; i < s.size(); ++i) {
            std::vector<int> f = s;
            f.erase(f.begin() + static_cast<long>(i));
            close(f);
        }
    };
    for (const auto& t : tops) close(t);

    // dimension-major, lex within a dimension
    std::vector<std::vector<std::vector<int>>> by_dim;
    for (const auto& s : keep) {
        size_t d = s.size() - 1;
        if (by_dim.size() <= d) by_dim.resize(d + 1);
        by_dim[d].push_back(s);
    }
    for (auto& v : by_dim) std::sort(v.begin(), v.end());

    std::map<std::vector<int>, int> index;
    for (size_t d = 0; d < by_dim.size(); ++d)
        for (size_t i = 0; i < by_dim[d].size(); ++i)
            index[by_dim[d][i]] = static_cast<int>(i);

    SSetBuilder b;
    for (size_t i = 0; i < by_dim[0].size(); ++i) b.add_vertex();
    for (size_t d = 1; d < by_dim.size(); ++d)
        for (const auto& s : by_dim[d]) {
            std::vector<SimplexRef> faces;
            for (size_t i = 0; i < s.size(); ++i) {
                std::vector<int> f = s;
                f.erase(f.begin() + static_cast<long>(i));
                faces.push_back(nondeg(static_cast<int>(d) - 1, index.at(f)));
            }
            b.add(static_cast<int>(d), std::move(faces));
        }
    if (index_to_subset) {
        index_to_subset->clear();
        for (const auto& v : by_dim)
            for (const auto& s : v) index_to_subset->push_back(s);
    }
    return b.build();
}

std::vector<std::vector<int>> all_faces_of_standard(int n) {
    std::vector<std::vector<int>> tops;
    tops.push_back({});
    tops.back().resize(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) tops.back()[static_cast<size_t>(i)] = i;
    return tops;
}

} // namespace

SSetPtr standard_simplex(int n) {
    if (n < 0) throw InvalidParameter("standard_simplex: negative dimension");
    return span_of_subsets(all_faces_of_standard(n));
}

SSetPtr boundary(int n) {
    if (n < 0) throw InvalidParameter("boundary: negative dimension");
    if (n == 0) return empty_sset();
    std::vector<std::vector<int>> tops;
    for (int i = 0; i <= n; ++i) {
        std::vector<int> s;
        for (int v = 0; v <= n; ++v)
            if (v != i) s.push_back(v);
        tops.push_back(s);
    }
    return span_of_subsets(tops);
}

SSetPtr horn(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw InvalidParameter("horn: bad (n, k)");
    std::vector<std::vector<int>> tops;
    for (int i = 0; i <= n; ++i) {
        if (i == k) continue;
        std::vector<int> s;
        for (int v = 0; v <= n; ++v)
            if (v != i) s.push_back(v);
        tops.push_back(s);
    }
    return span_of_subsets(tops);
}

SSetPtr empty_sset() {
    return std::make_shared<SimplicialSet>(std::vector<int>{},
                                           std::vector<std::vector<std::vector<SimplexRef>>>{});
}

namespace {

SimplicialMap span_inclusion(int n, const std::vector<std::vector<int>>& tops) {
    std::vector<std::vector<int>> subsets;
    SSetPtr sub = span_of_subsets(tops, &subsets);
    SSetPtr full = standard_simplex(n);
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, sub->dim())) + 1);
    for (const auto& s : subsets) {
        int d = static_cast<int>(s.size()) - 1;
        images[static_cast<size_t>(d)].push_back(nondeg(d, subset_index(s, n)));
    }
    return SimplicialMap(sub, full, std::move(images));
}

} // namespace

SimplicialMap boundary_inclusion(int n) {
    if (n == 0) return SimplicialMap(empty_sset(), standard_simplex(0), {});
    std::vector<std::vector<int>> tops;
    for (int i = 0; i <= n; ++i) {
        std::vector<int> s;
        for (int v = 0; v <= n; ++v)
            if (v != i) s.push_back(v);
        tops.push_back(s);
    }
    return span_inclusion(n, tops);
}

SimplicialMap horn_inclusion(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw InvalidParameter("horn_inclusion: bad (n, k)");
    std::vector<std::vector<int>> tops;
    for (int i = 0; i <= n; ++i) {
        if (i == k) continue;
        std::vector<int> s;
        for (int v = 0; v <= n; ++v)
            if (v != i) s.push_back(v);
        tops.push_back(s);
    }
    return span_inclusion(n, tops);
}

SimplicialMap classifying_map(const SSetPtr& X, const SimplexRef& r) {
    int m = r.dim();
    SSetPtr dom = standard_simplex(m);
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(m) + 1);
    for (int d = 0; d <= m; ++d) {
        for (const auto& s : subsets_of_size(m, d + 1))
            images[static_cast<size_t>(d)].push_back(X->act(r, s));
    }
    return SimplicialMap(dom, X, std::move(images));
}

SimplicialMap standard_map(int m, int n, const std::vector<int>& values) {
    if (static_cast<int>(values.size()) != m + 1)
        throw InvalidParameter("standard_map: need m+1 values");
    for (size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > n) throw InvalidParameter("standard_map: value out of range");
        if (i && values[i] < values[i - 1]) throw InvalidParameter("standard_map: not monotone");
    }
    SSetPtr tgt = standard_simplex(n);
    SimplexRef top = nondeg(n, 0);
    return classifying_map(tgt, tgt->act(top, values)); // domain standard(m)
}

// ---- enumeration ----

namespace {

struct MapSearch {
    const SimplicialSet& X;
    const SimplicialSet& Y;
    const ImageConstraint& constraint;
    std::vector<std::vector<SimplexRef>> images;
    std::vector<SimplexId> order;
    std::vector<std::vector<SimplexRef>> level_cache;
    std::vector<char> level_cached;
    std::vector<SimplicialMap>* out = nullptr;
    SSetPtr xp, yp;

    // Assignment order: a simplex becomes eligible once all of its face bases
    // are assigned; among eligible ones the highest dimension goes first, so
    // edges and higher cells prune vertex choices as early as possible.
    void plan_order() {
        std::vector<std::vector<char>> planned(images.size());
        for (int d = 0; d <= X.dim(); ++d)
            planned[static_cast<size_t>(d)].assign(static_cast<size_t>(X.count(d)), 0);
        int total = X.total_count();
        auto eligible = [&](SimplexId id) {
            if (id.dim == 0) return true;
            for (const auto& f : X.faces_of(id))
                if (!planned[static_cast<size_t>(f.base.dim)][static_cast<size_t>(f.base.idx)])
                    return false;
            return true;
        };
        while (static_cast<int>(order.size()) < total) {
            SimplexId best{-1, -1};
            for (int d = X.dim(); d >= 0; --d) {
                for (int idx = 0; idx < X.count(d); ++idx) {
                    if (planned[static_cast<size_t>(d)][static_cast<size_t>(idx)]) continue;
                    if (eligible({d, idx})) { best = {d, idx}; break; }
                }
                if (best.dim >= 0) break;
            }
            planned[static_cast<size_t>(best.dim)][static_cast<size_t>(best.idx)] = 1;
            order.push_back(best);
        }
    }

    const std::vector<SimplexRef>& level(int d) {
        if (static_cast<int>(level_cache.size()) <= d) {
            level_cache.resize(static_cast<size_t>(d) + 1);
            level_cached.resize(static_cast<size_t>(d) + 1);
        }
        if (!level_cached[static_cast<size_t>(d)]) {
            level_cache[static_cast<size_t>(d)] = Y.level(d);
            level_cached[static_cast<size_t>(d)] = 1;
        }
        return level_cache[static_cast<size_t>(d)];
    }

    SimplexRef partial_apply(const SimplexRef& r) const {
        const SimplexRef& im = images[static_cast<size_t>(r.base.dim)][static_cast<size_t>(r.base.idx)];
        if (r.word.empty()) return im;
        auto values = surj::compose(surj::from_word(im.word, im.dim()),
                                    surj::from_word(r.word, r.dim()));
        return SimplexRef{im.base, surj::to_word(values)};
    }

    void run(size_t next) {
        if (next == order.size()) {
            out->push_back(SimplicialMap(xp, yp, images));
            return;
        }
        SimplexId id = order[next];
        int d = id.dim;
        for (const auto& cand : level(d)) {
            if (constraint && !constraint(id, cand)) continue;
            bool ok = true;
            if (d >= 1) {
                const auto& fs = X.faces_of(id);
                for (int i = 0; i <= d && ok; ++i)
                    if (partial_apply(fs[static_cast<size_t>(i)]) != Y.face(cand, i)) ok = false;
            }
            if (!ok) continue;
            images[static_cast<size_t>(d)][static_cast<size_t>(id.idx)] = cand;
            run(next + 1);
        }
    }
};

} // namespace

std::vector<SimplicialMap> enumerate_maps(const SSetPtr& X, const SSetPtr& Y,
                                          const ImageConstraint& constraint) {
    std::vector<SimplicialMap> out;
    MapSearch s{*X, *Y, constraint, {}, {}, {}, {}, &out, X, Y};
    s.images.resize(static_cast<size_t>(std::max(0, X->dim())) + 1);
    for (int d = 0; d <= X->dim(); ++d)
        s.images[static_cast<size_t>(d)].resize(static_cast<size_t>(X->count(d)));
    s.plan_order();
    s.run(0);
    return out;
}

namespace {

struct IsoSearch {
    const SimplicialSet& X;
    const SimplicialSet& Y;
    const ImageConstraint& constraint;
    std::vector<std::vector<int>> assign; // per dim: X idx -> Y idx or -1
    std::vector<std::vector<char>> used;
    std::optional<SimplicialMap> result;
    SSetPtr xp, yp;

    SimplexRef rename(const SimplexRef& r) const {
        return SimplexRef{{r.base.dim, assign[static_cast<size_t>(r.base.dim)][static_cast<size_t>(r.base.idx)]},
                          r.word};
    }

    void run(int d, int idx) {
        if (result) return;
        if (d > X.dim()) {
            std::vector<std::vector<SimplexRef>> images(assign.size());
            for (size_t dd = 0; dd < assign.size(); ++dd)
                for (int a : assign[dd])
                    images[dd].push_back(nondeg(static_cast<int>(dd), a));
            result = SimplicialMap(xp, yp, std::move(images));
            return;
        }
        if (idx >= X.count(d)) { run(d + 1, 0); return; }
        SimplexId id{d, idx};
        for (int cand = 0; cand < Y.count(d); ++cand) {
            if (used[static_cast<size_t>(d)][static_cast<size_t>(cand)]) continue;
            if (assign[static_cast<size_t>(d)][static_cast<size_t>(idx)] >= 0 &&
                assign[static_cast<size_t>(d)][static_cast<size_t>(idx)] != cand)
                continue;
            if (constraint && !constraint(id, nondeg(d, cand))) continue;
            bool ok = true;
            if (d >= 1) {
                const auto& fs = X.faces_of(id);
                const auto& gs = Y.faces_of({d, cand});
                for (int i = 0; i <= d && ok; ++i)
                    if (rename(fs[static_cast<size_t>(i)]) != gs[static_cast<size_t>(i)]) ok = false;
            }
            if (!ok) continue;
            int prev = assign[static_cast<size_t>(d)][static_cast<size_t>(idx)];
            assign[static_cast<size_t>(d)][static_cast<size_t>(idx)] = cand;
            used[static_cast<size_t>(d)][static_cast<size_t>(cand)] = 1;
            run(d, idx + 1);
            used[static_cast<size_t>(d)][static_cast<size_t>(cand)] = 0;
            assign[static_cast<size_t>(d)][static_cast<size_t>(idx)] = prev;
            if (result) return;
        }
    }
};

} // namespace

std::optional<SimplicialMap> find_isomorphism(const SSetPtr& X, const SSetPtr& Y,
                                              const std::map<SimplexId, SimplexId>& forced,
                                              const ImageConstraint& constraint) {
    if (X->count_vector() != Y->count_vector()) return std::nullopt;
    IsoSearch s{*X, *Y, constraint, {}, {}, std::nullopt, X, Y};
    s.assign.resize(static_cast<size_t>(std::max(0, X->dim())) + 1);
    s.used.resize(s.assign.size());
    for (int d = 0; d <= X->dim(); ++d) {
        s.assign[static_cast<size_t>(d)].assign(static_cast<size_t>(X->count(d)), -1);
        s.used[static_cast<size_t>(d)].assign(static_cast<size_t>(Y->count(d)), 0);
    }
    for (const auto& [from, to] : forced) {
        if (from.dim != to.dim) return std::nullopt;
        s.assign[static_cast<size_t>(from.dim)][static_cast<size_t>(from.idx)] = to.idx;
    }
    s.run(0, 0);
    return s.result;
}

std::optional<SimplicialMap> is_isomorphic(const SSetPtr& X, const SSetPtr& Y) {
    return find_isomorphism(X, Y);
}

SimplicialMap inverse_of(const SimplicialMap& iso) {
    const SSetPtr& X = iso.source();
    const SSetPtr& Y = iso.target();
    std::vector<std::vector<SimplexRef>> images(static_cast<size_t>(std::max(0, Y->dim())) + 1);
    for (auto& v : images) v.clear();
    for (int d = 0; d <= Y->dim(); ++d)
        images[static_cast<size_t>(d)].resize(static_cast<size_t>(Y->count(d)));
    for (int d = 0; d <= X->dim(); ++d)
        for (int idx = 0; idx < X->count(d); ++idx) {
            SimplexRef im = iso.apply(SimplexId{d, idx});
            if (im.is_degenerate()) throw InvalidParameter("inverse_of: not an isomorphism");
            images[static_cast<size_t>(d)][static_cast<size_t>(im.base.idx)] = nondeg(d, idx);
        }
    return SimplicialMap(Y, X, std::move(images));
}

} // namespace msset
