#pragma once

// Lifting problems and right-lifting-property checks against the generating
// families. All searches are bounded by an explicit cutoff recorded in the
// report; the walking-isomorphism family uses truncations at that cutoff.

#include "msset/marked.hpp"

#include <map>
#include <optional>
#include <string>

namespace msset {

struct LiftingProblem {
    MarkedMap left;   // A -> B, underlying monomorphism
    MarkedMap right;  // X -> Y
    MarkedMap top;    // A -> X
    MarkedMap bottom; // B -> Y

    void validate() const; // square commutes, left is mono
};

// Diagonal B -> X making both triangles commute and preserving marks.
// Deterministic: the first filler in canonical order.
std::optional<MarkedMap> solve_lifting(const LiftingProblem& p);

// All fillers, in canonical order.
std::vector<MarkedMap> enumerate_fillers(const LiftingProblem& p);

enum class FamilyClass {
    MarkedLeft,          // A1, A2, B1, B2
    MarkedRight,         // A1, A2, B1', B2'
    CellularMarkedLeft,  // B1, B2
    CellularMarkedRight, // B1', B2'
    InnerHorn,
    LeftHorn,
    RightHorn,
    Boundary,      // trivial fibrations
    MarkedTrivial, // flat boundaries plus the edge marking
};

std::string to_string(FamilyClass f);
std::optional<FamilyClass> family_from_string(const std::string& s);

// All instances with parameter n <= cutoff (A2 contributes one instance).
std::vector<GeneratorInstance> family_instances(FamilyClass f, int cutoff);

struct FibrationReport {
    bool verdict = false;
    int cutoff = 0;
    int a2_depth = -1; // truncation depth used for the A2 family, if any
    std::map<std::string, int> checked_counts;
    std::optional<LiftingProblem> counterexample;
    std::string note;
};

FibrationReport has_rlp_family(const MarkedMap& right, FamilyClass f, int cutoff);
FibrationReport has_rlp_instances(const MarkedMap& right,
                                  const std::vector<GeneratorInstance>& gens, int cutoff,
                                  int a2_depth);

FibrationReport is_quasi_category(const SSetPtr& X, int cutoff = -1);

enum class FibKind { Inner, Left, Right, MarkedLeft, MarkedRight, Trivial, MarkedTrivial };

std::string to_string(FibKind k);
std::optional<FibKind> fib_kind_from_string(const std::string& s);

// Default cutoff: dim(source) + 2, never below dim(target) + 2 for marked
// kinds (the A2 tests need it).
FibrationReport is_fibration(FibKind kind, const MarkedMap& f, int cutoff = -1);

// Unique map to the point, as a marked map (sharp point).
MarkedMap to_point(const MarkedSSet& Xp);

} // namespace msset
