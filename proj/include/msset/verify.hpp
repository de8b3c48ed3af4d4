#pragma once

// Desk-scale instance suites binding the structural statements to runnable
// checks. Conclusions about weak equivalences are tested through the
// strongest decidable surrogate available (certificate, then trivial-fibration
// lifting, then homotopy-category comparison plus hom-space pi0); every
// report names the surrogate used, and bounded-search misses are reported as
// unknown, never as refutations.

#include "msset/anodyne.hpp"
#include "msset/category.hpp"
#include "msset/lifting.hpp"
#include "msset/straighten.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace msset {

enum class Verdict { Pass, Fail, Unknown };
std::string to_string(Verdict v);

// ---- Joyal-equivalence surrogate -------------------------------------------

struct Pi0Hom {
    std::vector<SimplexRef> vertices; // the edges x -> y
    std::vector<int> component;
    int components = 0;
};

// pi0 of the hom-space from x to y, computed from levels 0 and 1 of the
// fiber of the interval mapping object.
Pi0Hom pi0_hom(const SSetPtr& X, int x, int y);

struct HomCheck {
    int x = 0, y = 0;
    bool tau1_bijective = false;
    std::optional<bool> pi0_bijective; // present when both sides are quasi-categories
};

struct SurrogateReport {
    bool essential_surjectivity = false;
    std::vector<HomCheck> homwise;
    bool pass = false;
    int depth = 0;
    std::string caveat;
};

// The target must be a quasi-category; the source may be arbitrary (its
// fundamental category is computed by bounded word saturation).
SurrogateReport joyal_surrogate(const SimplicialMap& f, int depth);

// ---- equivalences over the point --------------------------------------------

bool marked_homotopic(const MarkedMap& u, const MarkedMap& v);

struct PointEquivalence {
    Verdict verdict = Verdict::Unknown;
    std::string method; // identification | certificate | trivial-fibration | homotopy-equivalence
};

// f between marked-left-fibrant objects over the point. Fails honestly when
// fibrancy cannot be established.
PointEquivalence equivalent_over_point(const MarkedMap& f, int cutoff = 3);

// ---- theorem instances -------------------------------------------------------

struct InstanceBounds {
    int max_steps = 6;
    int max_param = 3;
    int cutoff = 4;
    int depth = 4;
    int max_states = 20000;
};

struct TheoremInstance {
    std::string theorem;
    InstanceBounds bounds;

    // stability-style instances; i/q double as the left/right legs of a
    // lifting problem together with top/bottom
    std::optional<MarkedMap> i;
    std::optional<MarkedMap> q;
    std::optional<MarkedMap> top;
    std::optional<MarkedMap> bottom;
    std::optional<AnodyneCertificate> input_certificate;

    // grothendieck instances
    std::vector<CatPtr> fibers;
    std::vector<CatFunctor> steps;
    int horn_k = 1;

    // straightening instances
    CatPtr A;
    std::optional<MarkedSSet> b_plus;
    std::optional<MarkedOverBase> W; // over A# x B+
    int obj_a = 0;
    std::optional<MarkedOverBase> X; // over B+

    // pullback-functor instances
    std::optional<MarkedMap> p; // a marked right fibration over A#
};

struct InstanceReport {
    std::string theorem;
    Verdict verdict = Verdict::Unknown;
    std::string surrogate;
    std::vector<std::string> lines;
};

InstanceReport run_instance(const TheoremInstance& t);

// ---- suites ------------------------------------------------------------------

struct SuiteReport {
    std::string name;
    std::uint64_t seed = 0;
    int requested = 0;
    std::vector<InstanceReport> instances;
    int passes = 0, fails = 0, unknowns = 0;
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int count);

// The instance grammar behind the theorem-backed suites, exposed so callers
// can re-run individual instances (e.g. at doubled bounds).
bool suite_is_theorem_backed(const std::string& name);
std::vector<TheoremInstance> suite_instances(const std::string& name, std::uint64_t seed,
                                             int count);

// Deterministic instance grammar, exposed for the acceptance suite.
struct InstanceSource {
    std::uint64_t state;
    explicit InstanceSource(std::uint64_t seed);
    std::uint64_t next();
    int pick(int n); // uniform-ish in [0, n)
    CatPtr random_poset(int max_objects);
    MarkedSSet random_marked_sset(int max_cells);
    GrothendieckFibration random_grothendieck(int base_n, int max_fiber_objects);
};

} // namespace msset
