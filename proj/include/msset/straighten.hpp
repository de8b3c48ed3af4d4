#pragma once

// Straightening and unstraightening over the sharp nerve of a finite
// category A, relative to a marked base B. The left adjoint is a finite
// coend computed as a coequalizer; the right adjoint computes relative
// mapping spaces levelwise up to an explicit truncation depth.

#include "msset/category.hpp"
#include "msset/colimits.hpp"
#include "msset/marked.hpp"

#include <optional>

namespace msset {

// The base A# x B+ together with the slice data used by both adjoints.
struct BaseProduct {
    CatPtr A;
    Nerve a_nerve;
    MarkedSSet a_sharp;
    MarkedSSet b_plus;
    MarkedProduct prod; // A# x B+
    std::vector<SliceCat> slices;
    std::vector<Nerve> slice_nerves;
    std::vector<SimplicialMap> slice_proj; // nerve(a/A) -> nerve(A)
};

BaseProduct make_base(const CatPtr& A, MarkedSSet b_plus);

struct MarkedOverBase {
    MarkedSSet total;
    MarkedMap structure;
};

struct FunctorToMarkedOverB {
    CatPtr indexing;
    MarkedSSet base;                    // B+
    std::vector<MarkedOverBase> values; // per object, over B+
    std::vector<MarkedMap> arrows;      // per arrow of the indexing category

    void validate() const; // functoriality and over-B commutation
};

// a (x) X : left Kan extension of X along {a} -> A.
FunctorToMarkedOverB atom_functor(const BaseProduct& base, int a, const MarkedOverBase& Xp);

// ---- relative mapping space -----------------------------------------------

struct MapSpace {
    MarkedOverBase result; // over B+
    int depth = 0;

    struct Elem {
        SimplexRef b;
        std::vector<std::vector<SimplexRef>> h; // X x Delta^n -> W on nondegenerates
        friend auto operator<=>(const Elem&, const Elem&) = default;
    };
    std::vector<std::vector<Elem>> elems;           // per level 0..depth
    std::vector<std::vector<SimplexRef>> elem_refs; // extraction
    std::vector<std::vector<int>> nondeg_elems;
    std::vector<Product> xprod; // X x Delta^n per level

    // domain data
    MarkedSSet x_marked;
    SSetPtr w_space;
    SSetPtr b_space;

    int find_elem(int level, const SimplexRef& b,
                  const std::vector<std::vector<SimplexRef>>& h) const;
    int op_face(int level, int elem, int i) const;
    int op_degeneracy(int level, int elem, int j) const;
    // apply a degeneracy word (descending), landing |word| levels up
    int translate(int level, int elem, const std::vector<int>& word) const;
    // the ref of an arbitrary simplex of the mapping space
    SimplexRef ref_of(int level, int elem) const {
        return elem_refs[static_cast<size_t>(level)][static_cast<size_t>(elem)];
    }
};

// n-simplices over b: marked maps X+ x (Delta^n)-flat -> W+ whose structure
// projection is (structure of X) x (the simplex b); edges are marked when the
// same map is marked against the sharp interval and b is marked.
MapSpace map_space(const MarkedOverBase& Xp, const MarkedOverBase& Wp, const BaseProduct& base,
                   int depth);

// ---- the adjoints ----------------------------------------------------------

struct Lambda {
    MarkedOverBase result; // over A# x B+
    // assembly data, kept for the unit and counit
    std::vector<MarkedProduct> summands; // (a/A)# x F(a) per object
    MarkedCoproduct parts;
    Coequalizer coeq;
    std::vector<MarkedMap> summand_structures;
};

Lambda lambda_straighten(const FunctorToMarkedOverB& F, const BaseProduct& base);

struct Rho {
    FunctorToMarkedOverB functor;
    std::vector<MapSpace> spaces; // per object
    int depth = 0;
};

Rho rho_unstraighten(const MarkedOverBase& Wp, const BaseProduct& base, int depth);

// Unit F -> rho(lambda F) at the given truncation depth; one component per
// object of A. Requires every F(a) to fit under the depth.
std::vector<MarkedMap> unit_components(const FunctorToMarkedOverB& F, const Lambda& L,
                                       const Rho& R, const BaseProduct& base);

// Counit lambda(rho W) -> W.
MarkedMap counit(const MarkedOverBase& Wp, const Rho& R, const Lambda& LR,
                 const BaseProduct& base);

// Exact fiber of W+ over {a} x B+.
struct Fiber {
    MarkedOverBase over_b;
    MarkedPullback pb;
    MarkedMap into_total; // fiber -> W
};
Fiber fiber(const MarkedOverBase& Wp, const BaseProduct& base, int a);

// The comparison Map^B((a/A)#, W+) -> W+_a: evaluation at the slice vertex.
MarkedMap fiber_comparison(const MapSpace& M, const Fiber& fib, const BaseProduct& base,
                           int a);

// Natural transformations F => G over B+, fully enumerated.
std::vector<std::vector<MarkedMap>> enumerate_natural_transformations(
    const FunctorToMarkedOverB& F, const FunctorToMarkedOverB& G);

// lambda applied to a natural transformation.
MarkedMap lambda_of_transformation(const Lambda& LF, const Lambda& LG,
                                   const std::vector<MarkedMap>& components);

// Isomorphism commuting with the structure maps and matching the markings.
std::optional<MarkedMap> isomorphic_over(const MarkedOverBase& L, const MarkedOverBase& R);

// Maps lambda-input-style: marked maps between totals commuting with the
// structures; used for the adjunction bijection.
std::vector<MarkedMap> enumerate_maps_over(const MarkedOverBase& Xp, const MarkedOverBase& Yp);

} // namespace msset
