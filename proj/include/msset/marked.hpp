#pragma once

// Marked simplicial sets: a finite simplicial set together with a set of
// marked nondegenerate edges. Degenerate edges are always marked and never
// stored. The walking isomorphism J is handled through truncations with an
// extension-forcing rule for maps out of them.

#include "msset/colimits.hpp"
#include "msset/simplicial_set.hpp"

#include <optional>
#include <set>

namespace msset {

struct MarkedSSet {
    SSetPtr space;
    std::set<int> marks; // indices of nondegenerate edges
    int j_depth = -1;    // >= 0 when this presents the walking isomorphism

    bool is_marked(const SimplexRef& e) const {
        if (e.is_degenerate()) return true;
        if (e.base.dim != 1) throw InvalidParameter("is_marked: not an edge");
        return marks.count(e.base.idx) > 0;
    }
};

MarkedSSet flat(SSetPtr X);
MarkedSSet sharp(SSetPtr X);

// Largest simplicial subset all of whose edges are marked.
struct Core {
    SSetPtr space;
    SimplicialMap inclusion; // into underlying(Xp)
};
Core core(const MarkedSSet& Xp);

struct MarkedMap {
    SimplicialMap map;
    MarkedSSet src, tgt;

    SimplexRef apply(const SimplexRef& r) const { return map.apply(r); }
    SimplexRef apply(SimplexId id) const { return map.apply(id); }
    void validate() const;
    bool is_mono() const { return map.is_mono(); }
};

MarkedMap marked_identity(const MarkedSSet& Xp);
MarkedMap marked_compose(const MarkedMap& g, const MarkedMap& f);
// Wrap an unmarked map between marked structures; validates mark preservation.
MarkedMap as_marked(SimplicialMap f, MarkedSSet src, MarkedSSet tgt);

struct MarkedProduct {
    MarkedSSet space;
    Product prod;
    MarkedMap proj_left, proj_right;
};
MarkedProduct marked_product(const MarkedSSet& Xp, const MarkedSSet& Yp);

struct MarkedPullback {
    MarkedSSet space;
    Pullback pb;
    MarkedMap to_left, to_right;
};
MarkedPullback marked_pullback(const MarkedMap& f, const MarkedMap& g);

struct MarkedPushout {
    MarkedSSet space;
    Pushout po;
    MarkedMap from_x; // S -> P
    MarkedMap from_b; // V -> P
};
// Pushout of f : U -> S along the (underlying) monomorphism i : U -> V;
// markings are the unions of the images.
MarkedPushout marked_pushout(const MarkedMap& i, const MarkedMap& f);

struct MarkedCoproduct {
    MarkedSSet space;
    Coproduct cop;
    std::vector<MarkedMap> injections;
};
MarkedCoproduct marked_coproduct(const std::vector<MarkedSSet>& parts);

struct MarkedSubcomplex {
    MarkedSSet space;
    MarkedMap inclusion;
    std::map<SimplexId, SimplexId> to_sub;
};
MarkedSubcomplex marked_subcomplex(const MarkedSSet& Xp, const std::set<SimplexId>& keep);

// Mark-compatible isomorphism (marks correspond bijectively); optionally
// required to commute with given structure maps via `forced` assignments.
std::optional<MarkedMap> marked_isomorphism(const MarkedSSet& Xp, const MarkedSSet& Yp,
                                            const std::map<SimplexId, SimplexId>& forced = {});

// ---- the walking isomorphism -------------------------------------------

// d-skeleton of the nerve of the free-standing isomorphism: two vertices and
// exactly two nondegenerate simplices in each dimension 1..d (the two
// alternating composable words).
SSetPtr walking_iso_truncation(int depth);
MarkedSSet j_flat(int depth);
MarkedSSet j_sharp(int depth);

// ---- generating families -------------------------------------------------

enum class GenFamily {
    A1,        // flat inner horn inclusions
    A2,        // J flat -> J sharp
    B1,        // marked square generator, {0} corner
    B2,        // prism generators, {0} end
    B1p,       // duals with the {1} corner
    B2p,
    InnerHorn, // unmarked horn families, flat
    LeftHorn,
    RightHorn,
    Boundary,  // flat boundary inclusions
    MarkEdge,  // (Delta^1) flat -> sharp
};

std::string to_string(GenFamily f);

struct GeneratorInstance {
    GenFamily family = GenFamily::A1;
    int n = 0;
    int k = 0;
    friend auto operator<=>(const GeneratorInstance&, const GeneratorInstance&) = default;
};

std::string describe(const GeneratorInstance& g);

// The inclusion named by the instance. A2 is produced at the given truncation
// depth; other families ignore it.
MarkedMap generator(const GeneratorInstance& g, int a2_depth = 4);

// ---- marked map enumeration ----------------------------------------------

// For ordinary sources: all mark-preserving maps. For walking-isomorphism
// truncations of depth d into a target of dimension b this requires
// d >= b + 2 and checks that images above dimension b are forced by the data
// below (maps then stand for genuine maps out of J). Between two truncations
// the maps are induced by the four functors of the free-standing isomorphism.
std::vector<MarkedMap> enumerate_marked_maps(const MarkedSSet& Xp, const MarkedSSet& Yp);

} // namespace msset
