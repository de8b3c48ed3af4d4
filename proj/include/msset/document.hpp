#pragma once

// Self-describing textual documents for every artifact kind, with a stable
// canonical serialization (simplices are already stored dimension-major, so
// serialize . parse is the canonical form). Parse errors carry line numbers.

#include "msset/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace msset {

struct ParseError : MssetError {
    int line;
    ParseError(int line_, const std::string& what)
        : MssetError("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct Document {
    int format_version = 1;
    std::string kind; // sset | marked_sset | map | category | functor |
                      // certificate | instance | report

    std::optional<MarkedSSet> marked_sset_v; // sset and marked_sset
    std::optional<MarkedMap> map_v;
    CatPtr category_v;
    std::optional<FunctorToMarkedOverB> functor_v;
    std::optional<AnodyneCertificate> certificate_v;
    std::optional<TheoremInstance> instance_v;
    std::vector<std::string> report_v;
};

Document parse_document(const std::string& text);
std::string serialize(const Document& d);

Document wrap(MarkedSSet m, bool as_plain_sset = false);
Document wrap(MarkedMap m);
Document wrap(CatPtr c);
Document wrap(FunctorToMarkedOverB f);
Document wrap(AnodyneCertificate c);
Document wrap(TheoremInstance t);
Document wrap_report(std::vector<std::string> lines);

// machine rendering
std::string to_json_text(const Document& d);

// report assembly used by the command line
std::vector<std::string> render_report(const FibrationReport& r);
std::vector<std::string> render_report(const InstanceReport& r);
std::vector<std::string> render_report(const SuiteReport& r);
std::vector<std::string> render_report(const CheckResult& r);

} // namespace msset
