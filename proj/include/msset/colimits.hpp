#pragma once

// Limits and colimits of finite simplicial sets. Products and pullbacks are
// computed through the shuffle description: a pair of simplices is
// nondegenerate exactly when the degeneracy words of its components are
// disjoint as collapse sets. Colimits renormalize to nondegenerate
// presentation afterwards.

#include "msset/simplicial_set.hpp"

#include <set>

namespace msset {

// Degeneracy as a pure word operation (no underlying set needed).
SimplexRef ref_degeneracy(const SimplexRef& r, int j);
// The r.word surjection applied to another ref's word, i.e. X(gamma_w)(s).
SimplexRef ref_word_action(const SimplexRef& s, const std::vector<int>& word, int result_dim);

struct Product {
    SSetPtr space;
    SSetPtr left, right;
    SimplicialMap proj_left, proj_right;
    std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> pairs; // per dim

    SimplexRef pair_ref(const SimplexRef& a, const SimplexRef& b) const;
    std::pair<SimplexRef, SimplexRef> components(const SimplexRef& r) const;

    std::map<std::pair<SimplexRef, SimplexRef>, SimplexId> index;
};

Product product(SSetPtr X, SSetPtr Y);

// <f, g> : Z -> X x Y for f : Z -> X, g : Z -> Y.
SimplicialMap pairing(const Product& P, const SimplicialMap& f, const SimplicialMap& g);

// f x g : P -> Q with P = X x Y, Q = X' x Y'.
SimplicialMap product_map(const Product& P, const Product& Q,
                          const SimplicialMap& f, const SimplicialMap& g);

struct Pullback {
    SSetPtr space;
    SimplicialMap to_left, to_right; // over f : X -> S, g : Y -> S
    std::vector<std::vector<std::pair<SimplexRef, SimplexRef>>> pairs;
    std::map<std::pair<SimplexRef, SimplexRef>, SimplexId> index;

    SimplexRef pair_ref(const SimplexRef& a, const SimplexRef& b) const;
    std::pair<SimplexRef, SimplexRef> components(const SimplexRef& r) const;
    SimplicialMap pairing(const SimplicialMap& u, const SimplicialMap& v) const;
};

Pullback pullback(const SimplicialMap& f, const SimplicialMap& g);

struct Pushout {
    SSetPtr space;
    SimplicialMap from_x; // X -> P, a monomorphism
    SimplicialMap from_b; // B -> P
};

// Pushout of f : A -> X along the monomorphism inc : A -> B. The presentation
// keeps X's simplex ids and appends B's cells missed by inc.
Pushout pushout(const SimplicialMap& inc, const SimplicialMap& f);

struct Coproduct {
    SSetPtr space;
    std::vector<SimplicialMap> injections;
};

Coproduct coproduct(const std::vector<SSetPtr>& parts);

// Map out of a coproduct with the given components.
SimplicialMap coproduct_map(const Coproduct& C, const std::vector<SimplicialMap>& legs,
                            SSetPtr target);

struct Coequalizer {
    SSetPtr space;
    SimplicialMap quotient; // Y -> Q
    // class index of every simplex of Y, per level 0..dim(Y)
    std::vector<std::map<SimplexRef, int>> class_of;
    std::vector<std::vector<SimplexRef>> class_members_rep; // per level: class -> lex-least ref
    std::vector<std::vector<SimplexRef>> elem_refs;         // per level: class -> ref in Q

    // Induced map Q -> Z from h : Y -> Z with h f = h g; checks consistency.
    SimplicialMap descend(const SimplicialMap& h) const;
};

Coequalizer coequalizer(const SimplicialMap& f, const SimplicialMap& g);

struct Subcomplex {
    SSetPtr space;
    SimplicialMap inclusion;
    std::map<SimplexId, SimplexId> to_sub; // old id -> new id
};

// Smallest subcomplex containing `keep`.
Subcomplex subcomplex(const SSetPtr& X, const std::set<SimplexId>& keep);

// ---- generic levelwise presentation extraction --------------------------

struct LevelwiseData {
    int top = -1;
    std::vector<int> sizes;                       // per level 0..top
    std::function<int(int, int, int)> face;        // (level, elem, i)
    std::function<int(int, int, int)> degeneracy;  // (level, elem, j)
};

struct Extraction {
    SSetPtr space;
    std::vector<std::vector<int>> nondeg_elems;   // per dim: element behind each id
    std::vector<std::vector<SimplexRef>> elem_refs; // per level: element -> ref
};

Extraction extract_presentation(const LevelwiseData& data);

} // namespace msset
