#pragma once

// Finite simplicial sets presented by their nondegenerate simplices.
//
// Every simplex is a degeneracy word in Eilenberg-Zilber normal form applied
// to a nondegenerate base: the word [w0, w1, ...] with w0 > w1 > ... denotes
// s_{w0} s_{w1} ... s_{wk} (base). Words are in bijection with monotone
// surjections of finite ordinals via their collapse sets, and all face and
// degeneracy arithmetic is done by composing value tables of such maps.

#include "msset/common.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace msset {

// A nondegenerate simplex of a fixed simplicial set, dimension-major.
struct SimplexId {
    int dim = 0;
    int idx = 0;
    friend auto operator<=>(const SimplexId&, const SimplexId&) = default;
};

struct SimplexRef {
    SimplexId base;
    std::vector<int> word; // strictly decreasing degeneracy indices
    int dim() const { return base.dim + static_cast<int>(word.size()); }
    bool is_degenerate() const { return !word.empty(); }
    friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

inline SimplexRef nondeg(SimplexId id) { return SimplexRef{id, {}}; }
inline SimplexRef nondeg(int dim, int idx) { return SimplexRef{{dim, idx}, {}}; }

// Monotone surjections [n] ->> [m], stored as their n+1 values.
namespace surj {

// The surjection with collapse set {word...} out of [n].
std::vector<int> from_word(const std::vector<int>& word, int n);

// Collapse set, sorted decreasing; this is the EZ degeneracy word.
std::vector<int> to_word(const std::vector<int>& values);

// outer(inner(i)); both arguments may be arbitrary monotone value tables.
std::vector<int> compose(const std::vector<int>& outer, const std::vector<int>& inner);

bool is_surjective(const std::vector<int>& values);

} // namespace surj

class SimplicialSet;
using SSetPtr = std::shared_ptr<const SimplicialSet>;

class SimplicialSet {
public:
    // faces[d][i] lists the d+1 faces (d_0, ..., d_d) of each nondegenerate
    // d-simplex, for d >= 1. counts[d] is the number of nondegenerate
    // d-simplices; counts[0] may exceed faces sizes since vertices carry none.
    SimplicialSet(std::vector<int> counts,
                  std::vector<std::vector<std::vector<SimplexRef>>> faces);

    int dim() const { return static_cast<int>(counts_.size()) - 1; } // -1 when empty
    int count(int d) const;
    int total_count() const;
    std::vector<int> count_vector() const { return counts_; }

    const std::vector<SimplexRef>& faces_of(SimplexId id) const;

    // d_i and s_j on arbitrary simplices, via the word calculus.
    SimplexRef face(const SimplexRef& r, int i) const;
    SimplexRef degeneracy(const SimplexRef& r, int j) const;

    // Contravariant action of a monotone map op: [p] -> [r.dim()] given by its
    // values; returns the p-simplex r . op.
    SimplexRef act(const SimplexRef& r, const std::vector<int>& op) const;

    SimplexRef vertex_of(const SimplexRef& r, int t) const;
    SimplexRef edge_of(const SimplexRef& r, int a, int b) const; // corner edge a < b

    // All n-simplices, degenerate ones included, in canonical order.
    std::vector<SimplexRef> level(int n) const;
    int level_size(int n) const;

    // Checks the simplicial identities d_i d_j = d_{j-1} d_i (i < j) on every
    // nondegenerate simplex, plus well-formedness of all face words.
    void validate() const;

    // Identical presentation: same counts and face tables.
    friend bool same_presentation(const SimplicialSet& a, const SimplicialSet& b);

private:
    std::vector<int> counts_;
    std::vector<std::vector<std::vector<SimplexRef>>> faces_;
};

class SSetBuilder {
public:
    SimplexId add_vertex();
    SimplexId add(int d, std::vector<SimplexRef> faces);
    SSetPtr build(); // validates
    int count(int d) const;

private:
    std::vector<int> counts_;
    std::vector<std::vector<std::vector<SimplexRef>>> faces_;
};

class SimplicialMap {
public:
    SimplicialMap() = default;
    SimplicialMap(SSetPtr src, SSetPtr tgt, std::vector<std::vector<SimplexRef>> images);

    const SSetPtr& source() const { return src_; }
    const SSetPtr& target() const { return tgt_; }

    SimplexRef apply(SimplexId id) const;
    SimplexRef apply(const SimplexRef& r) const;

    const std::vector<std::vector<SimplexRef>>& images() const { return images_; }

    void validate() const;          // commutes with all face operators
    bool is_mono() const;           // levelwise injective
    bool is_identity_like() const;  // identity on a shared presentation

    static SimplicialMap identity(SSetPtr x);
    // Unique map to a one-point target.
    static SimplicialMap constant(SSetPtr x, SSetPtr point, SimplexId vertex);

    friend SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);
    friend bool same_images(const SimplicialMap& f, const SimplicialMap& g);

private:
    SSetPtr src_, tgt_;
    std::vector<std::vector<SimplexRef>> images_; // per dim, per idx
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);
bool same_images(const SimplicialMap& f, const SimplicialMap& g);

// ---- standard cells ----------------------------------------------------

// Nondegenerate d-simplices of standard(n) are the (d+1)-subsets of {0..n}
// in lexicographic order.
SSetPtr standard_simplex(int n);
SSetPtr boundary(int n);
SSetPtr horn(int n, int k);

SimplicialMap boundary_inclusion(int n);       // boundary(n) -> standard(n)
SimplicialMap horn_inclusion(int n, int k);    // horn(n,k) -> standard(n)

SSetPtr empty_sset();

// Index of a (d+1)-subset among all (d+1)-subsets of {0..n}, lex order.
int subset_index(const std::vector<int>& subset, int n);
std::vector<std::vector<int>> subsets_of_size(int n, int size);

// The map standard(m) -> X classifying an m-simplex of X.
SimplicialMap classifying_map(const SSetPtr& X, const SimplexRef& r);

// Vertex-induced map standard(m) -> standard(n) from monotone values.
SimplicialMap standard_map(int m, int n, const std::vector<int>& values);

// ---- map enumeration and isomorphism -----------------------------------

// Optional per-simplex restriction on images; return false to prune.
using ImageConstraint = std::function<bool(SimplexId, const SimplexRef&)>;

std::vector<SimplicialMap> enumerate_maps(const SSetPtr& X, const SSetPtr& Y,
                                          const ImageConstraint& constraint = nullptr);

// Isomorphism search; `forced` pins images of selected nondegenerate simplices.
std::optional<SimplicialMap> find_isomorphism(
    const SSetPtr& X, const SSetPtr& Y,
    const std::map<SimplexId, SimplexId>& forced = {},
    const ImageConstraint& constraint = nullptr);

std::optional<SimplicialMap> is_isomorphic(const SSetPtr& X, const SSetPtr& Y);

SimplicialMap inverse_of(const SimplicialMap& iso);

} // namespace msset
