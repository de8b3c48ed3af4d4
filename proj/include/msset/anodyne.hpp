#pragma once

// Relative cell complex certificates: ordered pushouts of generator instances
// witnessing membership in a saturated class. Checking replays the pushouts
// exactly; search explores attachments inside the claimed codomain and is
// bounded, so a miss is reported as unknown-within-bounds, never as a
// disproof.

#include "msset/lifting.hpp"
#include "msset/marked.hpp"

#include <optional>
#include <string>

namespace msset {

struct CellStep {
    GeneratorInstance gen;
    MarkedMap attaching; // generator source -> stage built so far
};

struct AnodyneCertificate {
    FamilyClass class_spec = FamilyClass::MarkedLeft;
    MarkedSSet start;
    std::vector<CellStep> steps;
    std::optional<MarkedMap> identification; // final stage -> claimed codomain
    int a2_depth = 4;
};

struct CheckResult {
    bool ok = false;
    std::string diagnostic;
};

// Replay the pushouts, compose the stage inclusions and verify the final
// stage against the claimed map (an isomorphism commuting with the
// inclusion). Exact, no cutoffs.
CheckResult check_certificate(const AnodyneCertificate& c, const MarkedMap& claimed);

struct SearchBounds {
    int max_steps = 6;
    int max_param = 3;
    int max_states = 20000;
    SearchBounds doubled() const { return {max_steps * 2, max_param + 1, max_states * 4}; }
};

// Iterative search for a certificate presenting the monomorphism i. Returns
// the first certificate in deterministic order, or nothing within bounds.
std::optional<AnodyneCertificate> search_certificate(const MarkedMap& i, FamilyClass cls,
                                                     const SearchBounds& bounds);

// Concatenation with identification transport; the result presents
// compose(second_map, first_map).
AnodyneCertificate compose_certificates(const AnodyneCertificate& first,
                                        const MarkedMap& first_map,
                                        const AnodyneCertificate& second,
                                        const MarkedMap& second_map);

enum class StabilityVerdict { Pass, UnknownWithinBounds, HypothesisFailure };

struct StabilityReport {
    StabilityVerdict verdict = StabilityVerdict::HypothesisFailure;
    FibrationReport fibration;
    std::optional<AnodyneCertificate> input_certificate;
    std::optional<AnodyneCertificate> output_certificate;
    std::optional<MarkedMap> comparison; // the pullback map j
    std::string note;
};

// Pulls i back along the verified fibration q and searches a certificate for
// the comparison map in class_out.
StabilityReport pullback_stability_check(const MarkedMap& i, const MarkedMap& q,
                                         FamilyClass class_in, FamilyClass class_out,
                                         const SearchBounds& bounds, FibKind q_kind,
                                         int cutoff = -1,
                                         const std::optional<AnodyneCertificate>&
                                             input_certificate = std::nullopt);

} // namespace msset
