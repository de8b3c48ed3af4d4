#pragma once

// Finite categories, their nerves, slices, and the two homotopy-category
// constructions: a filler-based one for quasi-categories and a bounded
// word-rewriting one for arbitrary finite simplicial sets.

#include "msset/marked.hpp"
#include "msset/simplicial_set.hpp"

#include <memory>
#include <optional>
#include <string>

namespace msset {

class FiniteCategory;
using CatPtr = std::shared_ptr<const FiniteCategory>;

class FiniteCategory {
public:
    struct Arrow {
        int src = 0, dst = 0;
        std::string name;
    };

    FiniteCategory(int n_objects, std::vector<Arrow> arrows, std::vector<int> identity,
                   std::vector<std::vector<int>> comp);

    int objects() const { return n_obj_; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int a) const { return arrows_.at(static_cast<size_t>(a)); }
    int identity(int obj) const { return id_of_.at(static_cast<size_t>(obj)); }
    bool is_identity(int a) const;

    // g . f for f: a -> b, g: b -> c
    int compose(int g, int f) const;
    bool composable(int g, int f) const;

    std::optional<int> inverse(int f) const;
    bool is_iso(int f) const { return inverse(f).has_value(); }
    std::vector<int> hom(int a, int b) const;

    void validate() const; // units and associativity, exhaustively

private:
    int n_obj_;
    std::vector<Arrow> arrows_;
    std::vector<int> id_of_;
    std::vector<std::vector<int>> comp_;
};

class CatBuilder {
public:
    explicit CatBuilder(int n_objects);
    int add_arrow(int src, int dst, std::string name);
    void set_composite(int g, int f, int gf);
    CatPtr build(); // adds identity composites, validates

private:
    int n_obj_;
    std::vector<FiniteCategory::Arrow> arrows_;
    std::vector<int> id_of_;
    std::map<std::pair<int, int>, int> comp_;
};

CatPtr discrete_category(int n);
CatPtr chain_poset(int n); // the ordinal [n]
CatPtr walking_iso_category();
// At most one arrow a -> b when reach[a][b]; reach must be reflexive and
// transitive.
CatPtr preorder_category(const std::vector<std::vector<bool>>& reach);

struct CatProduct {
    CatPtr cat;
    std::vector<std::pair<int, int>> object_pairs;
    std::vector<std::pair<int, int>> arrow_pairs;
};
CatProduct product_category(const CatPtr& C, const CatPtr& D);

struct CatFunctor {
    CatPtr src, tgt;
    std::vector<int> obj_map;
    std::vector<int> arrow_map;

    void validate() const;
    int on_obj(int o) const { return obj_map.at(static_cast<size_t>(o)); }
    int on_arrow(int a) const { return arrow_map.at(static_cast<size_t>(a)); }
};

CatFunctor cat_identity(CatPtr C);
CatFunctor cat_compose(const CatFunctor& G, const CatFunctor& F);
std::vector<CatFunctor> enumerate_functors(const CatPtr& C, const CatPtr& D);

struct EquivalenceWitness {
    bool essentially_surjective = false;
    bool fully_faithful = false;
    std::string detail;
    bool ok() const { return essentially_surjective && fully_faithful; }
};
EquivalenceWitness is_cat_equivalence(const CatFunctor& F);
bool is_cat_isomorphism(const CatFunctor& F);

// ---- nerve ---------------------------------------------------------------

struct Nerve {
    CatPtr cat;
    SSetPtr space;
    int depth = -1; // truncation depth, -1 when the nerve is finite as given
    // nondegenerate d-simplices are the identity-free d-chains; chains[0] is
    // empty lists, vertex i being object i
    std::vector<std::vector<std::vector<int>>> chains;
    std::map<std::vector<int>, int> chain_index; // d >= 1 chains -> idx

    // Normal form of an arbitrary composable chain (identities allowed).
    SimplexRef chain_ref(const std::vector<int>& arrows) const;
    const std::vector<int>& chain_of(SimplexId id) const;
    int chain_object(SimplexId vertex) const { return vertex.idx; }
};

// Errors with CapExceeded when the category has composable cycles of
// non-identity arrows (the nerve then has cells in every dimension).
Nerve nerve(const CatPtr& C);
Nerve nerve_truncated(const CatPtr& C, int depth);

SimplicialMap nerve_map(const Nerve& from, const Nerve& to, const CatFunctor& F);

// Nerve with exactly the isomorphism edges marked.
MarkedSSet natural_marking(const Nerve& N);

// ---- slices ----------------------------------------------------------------

struct SliceCat {
    CatPtr cat;
    CatFunctor forget;             // slice -> base
    std::vector<int> object_arrow; // slice object -> arrow of the base out of a
};
SliceCat slice_under(const CatPtr& C, int a);
// Functor (a'/C) -> (a/C) induced by f : a -> a' (precomposition).
CatFunctor slice_reindex(const SliceCat& from_aprime, const SliceCat& to_a, const CatPtr& C,
                         int f);

// ---- homotopy categories ---------------------------------------------------

struct Tau1 {
    CatPtr cat; // objects are the vertices of X
    SSetPtr space;
    std::map<SimplexRef, int> edge_arrow; // every 1-simplex -> arrow of cat
    int arrow_of(const SimplexRef& edge) const { return edge_arrow.at(edge); }
};

// Fundamental category of an arbitrary finite simplicial set by saturating
// the two-simplex relations on composable edge words. Certified by cap
// stability; throws CapExceeded when the homs do not stabilize.
Tau1 tau1(const SSetPtr& X, int max_word_len = 10, int max_classes = 400);

// Filler-based construction; X must afford fillers for all composable pairs
// (callers check is_quasi_category first). Verifies that all fillers induce
// the same composite.
Tau1 tau1_fillers(const SSetPtr& X);

CatFunctor tau1_functor(const Tau1& tx, const Tau1& ty, const SimplicialMap& f);

// The homotopy category of a quasi-category: filler-based composition with
// exhaustive independence of the chosen fillers, cross-checked against the
// word construction. Throws NotAQuasiCategory when the inner-horn check
// fails at the given cutoff (default dim + 2).
Tau1 homotopy_category(const SSetPtr& X, int cutoff = -1);

// The comparison functor C -> tau1(N(C)); an isomorphism for every C.
CatFunctor nerve_comparison(const Nerve& N, const Tau1& t);

// ---- Grothendieck construction --------------------------------------------

struct Grothendieck {
    CatPtr total;
    CatFunctor projection;                    // total -> [n]
    std::vector<std::pair<int, int>> objects; // (stage, fiber object)
    // arrow decomposition: (stage i, stage j, fiber arrow phi in fiber j)
    struct ArrowData {
        int i, j, phi;
    };
    std::vector<ArrowData> arrows;
    std::vector<CatPtr> fibers;
};

// Covariant diagram on [n] given by fibers F(0..n) and step functors
// F(i) -> F(i+1).
Grothendieck grothendieck(const std::vector<CatPtr>& fibers,
                          const std::vector<CatFunctor>& steps);

// Nerve of the total category with the cocartesian edges marked (fiberwise
// isomorphism components), over the sharp nerve of [n].
struct GrothendieckFibration {
    Grothendieck gr;
    Nerve total_nerve;
    Nerve base_nerve;
    MarkedSSet total_marked; // cocartesian marking
    MarkedMap projection;    // to sharp base
};
GrothendieckFibration grothendieck_fibration(const std::vector<CatPtr>& fibers,
                                             const std::vector<CatFunctor>& steps);

} // namespace msset
