#pragma once

// Analysis reports and diagram emitters.  A report captures one full
// pipeline run (indecomposables -> torsion classes -> ice subcategories ->
// wide tau-tilting pairs -> Hasse diagrams) as plain data: subcategories
// become sorted lists of indec names, modules become their "+"-joined
// names.  Reports serialize to versioned JSON and parse back to an equal
// value; diagrams serialize to DOT or JSON with byte-deterministic output.

#include "tik/ice.hpp"
#include "tik/mutation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tik {

// Effective settings echoed into every report so a run can be reproduced
// regardless of which flag / environment / file layer supplied them.
struct ConfigEcho {
    unsigned field = 0; // coefficient field F_p actually used
    int dim_bound = 0;  // per-vertex dimension bound actually used
    int max_mult = 2;   // multiplicity bound for definition-level oracles
    int jobs = 1;       // worker count (never affects output bytes)

    bool operator==(const ConfigEcho&) const = default;
};

struct ReportArrow {
    int from = 0, to = 0;  // indices into the owning node list
    std::string label;     // brick name on torsion-class arrows, else ""

    bool operator==(const ReportArrow&) const = default;
};

struct IceEntry {
    std::vector<std::string> members; // sorted indec names
    std::string progenerator;         // module expression, "0" if empty

    bool operator==(const IceEntry&) const = default;
};

struct WttiltEntry {
    std::vector<std::string> wide;  // sorted indec names
    std::string module;             // wide tau-tilting module inside it
    std::vector<std::string> heart; // the ice subcategory classified
    std::vector<std::string> interval_lower, interval_upper;

    bool operator==(const WttiltEntry&) const = default;
};

struct QuestionRow {
    std::vector<std::string> heart; // sorted indec names
    int module_size = 0;            // distinct summands of the progenerator
    int out_degree = 0;             // arrows leaving the node in the diagram
    bool ok = false;

    bool operator==(const QuestionRow&) const = default;
};

struct RigidReport {
    std::vector<std::string> modules; // node labels, canonical order
    std::vector<ReportArrow> arrows;

    bool operator==(const RigidReport&) const = default;
};

struct AnalysisReport {
    std::string schema; // see report_schema_version
    std::string source; // algebra file path (or caller-supplied tag)
    ConfigEcho config;

    // algebra summary
    std::vector<std::string> vertices;
    int arrow_count = 0;
    int relation_count = 0;

    // indecomposables, table order
    std::vector<std::string> indec_names;
    std::vector<std::vector<int>> indec_dims; // dimension vectors
    std::vector<std::string> warnings;

    // lattices (canonical order; every subcategory a sorted name list)
    std::vector<std::vector<std::string>> tors;
    std::vector<std::vector<std::string>> torf;
    std::vector<ReportArrow> tors_hasse; // labeled, indices into tors

    std::vector<IceEntry> ice;
    std::vector<ReportArrow> ice_hasse; // indices into ice

    std::vector<WttiltEntry> wttilt;

    bool hereditary = false;
    RigidReport rigid; // empty unless hereditary

    std::vector<QuestionRow> question; // one row per ice node
    bool question_holds = false;

    std::int64_t elapsed_ms = 0;

    bool operator==(const AnalysisReport&) const = default;
};

inline constexpr const char* report_schema_version = "tik-report/1";

// Run the full pipeline on an already-built table and collect the report.
// `source` is echoed verbatim; `config` should hold the effective settings.
AnalysisReport build_report(const std::string& source, const IndecTable& T,
                            const ConfigEcho& config, const Caps& caps = {});

// Versioned JSON with a fixed key order; parse(serialize(r)) == r.
// parse_report throws SchemaError on malformed input or a version mismatch.
std::string serialize_report(const AnalysisReport& r);
AnalysisReport parse_report(const std::string& json_text);

// A diagram reduced to plain labeled data, ready for DOT or JSON emission.
struct Diagram {
    std::string kind;                      // "tors" | "ice" | "rigid"
    std::vector<std::string> node_labels;  // canonical order
    std::vector<ReportArrow> arrows;       // sorted by (from, to)

    bool operator==(const Diagram&) const = default;
};

Diagram diagram_tors(const TorsCtx& ctx);
Diagram diagram_ice(const TorsCtx& ctx, const Caps& caps = {});
Diagram diagram_rigid(const TorsCtx& ctx, const Caps& caps = {}); // RigidRequiresHereditary

std::string to_dot(const Diagram& d);
std::string to_json(const Diagram& d);

// "{1, 2/1}" — members in table-name sort order; "{}" when empty.
std::string subcat_label(const IndecTable& T, Subcat S);

} // namespace tik
