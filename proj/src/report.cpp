#include "tik/report.hpp"

#include "tik/errors.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>

namespace tik {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> sorted_names(const IndecTable& T, Subcat S) {
    std::vector<std::string> out;
    for (int i : sc_members(S, T.n())) out.push_back(T.names[std::size_t(i)]);
    std::sort(out.begin(), out.end());
    return out;
}

ordered_json arrow_json(const ReportArrow& a) {
    return ordered_json{{"from", a.from}, {"to", a.to}, {"label", a.label}};
}

ReportArrow arrow_from_json(const ordered_json& j) {
    ReportArrow a;
    a.from = j.at("from").get<int>();
    a.to = j.at("to").get<int>();
    a.label = j.at("label").get<std::string>();
    return a;
}

std::vector<ReportArrow> sorted_arrows(const IndecTable& T, const HasseDiagram& hd,
                                       bool labeled) {
    std::vector<ReportArrow> out;
    for (const HasseArrow& a : hd.arrows) {
        ReportArrow r;
        r.from = a.from;
        r.to = a.to;
        if (labeled && a.label >= 0) r.label = T.names[std::size_t(a.label)];
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const ReportArrow& x, const ReportArrow& y) {
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    });
    return out;
}

std::string escape_dot(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string subcat_label(const IndecTable& T, Subcat S) {
    std::string out = "{";
    bool first = true;
    for (const std::string& n : sorted_names(T, S)) {
        if (!first) out += ", ";
        out += n;
        first = false;
    }
    return out + "}";
}

AnalysisReport build_report(const std::string& source, const IndecTable& T,
                            const ConfigEcho& config, const Caps& caps) {
    const auto t0 = std::chrono::steady_clock::now();

    AnalysisReport r;
    r.schema = report_schema_version;
    r.source = source;
    r.config = config;

    const BoundAlgebra& A = *T.alg;
    r.vertices = A.quiver.vertices;
    r.arrow_count = int(A.quiver.arrows.size());
    r.relation_count = int(A.relations.size());

    r.indec_names = T.names;
    for (const Rep& M : T.indecs) {
        std::vector<int> dv;
        for (unsigned d : M.dims) dv.push_back(int(d));
        r.indec_dims.push_back(std::move(dv));
    }
    r.warnings = T.warnings;

    TorsCtx ctx = make_tors_ctx(T, caps);
    for (Subcat U : ctx.hd.nodes) r.tors.push_back(sorted_names(T, U));
    for (Subcat F : enumerate_torf(T, caps)) r.torf.push_back(sorted_names(T, F));
    r.tors_hasse = sorted_arrows(T, ctx.hd, /*labeled=*/true);

    IceHasse ih = ice_hasse(ctx, caps);
    for (std::size_t k = 0; k < ih.hd.nodes.size(); ++k) {
        IceEntry e;
        e.members = sorted_names(T, ih.hd.nodes[k]);
        e.progenerator = expr_name(T, ih.progenerators[k]);
        r.ice.push_back(std::move(e));
    }
    r.ice_hasse = sorted_arrows(T, ih.hd, /*labeled=*/false);

    for (const WideTauTiltingPair& p : enumerate_wttilt(ctx, caps)) {
        WttiltEntry e;
        e.wide = sorted_names(T, p.wide);
        e.module = expr_name(T, p.module);
        e.heart = sorted_names(T, p.heart_cat);
        e.interval_lower = sorted_names(T, p.interval.lower);
        e.interval_upper = sorted_names(T, p.interval.upper);
        r.wttilt.push_back(std::move(e));
    }

    r.hereditary = is_hereditary(A);
    if (r.hereditary) {
        RigidHasse rh = rigid_hasse(ctx, caps);
        for (const ModuleExpr& m : rh.modules)
            r.rigid.modules.push_back(expr_name(T, m));
        r.rigid.arrows = sorted_arrows(T, rh.hd, /*labeled=*/false);
    }

    QuestionReport q = question_check(ctx, caps);
    r.question_holds = q.holds;
    for (const QuestionEntry& e : q.entries) {
        QuestionRow row;
        row.heart = sorted_names(T, e.heart);
        row.module_size = e.module_size;
        row.out_degree = e.out_degree;
        row.ok = e.ok;
        r.question.push_back(std::move(row));
    }

    const auto t1 = std::chrono::steady_clock::now();
    r.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return r;
}

std::string serialize_report(const AnalysisReport& r) {
    ordered_json j;
    j["schema"] = r.schema;
    j["source"] = r.source;
    j["config"] = ordered_json{{"field", r.config.field},
                               {"dim_bound", r.config.dim_bound},
                               {"max_mult", r.config.max_mult},
                               {"jobs", r.config.jobs}};
    j["vertices"] = r.vertices;
    j["arrow_count"] = r.arrow_count;
    j["relation_count"] = r.relation_count;
    j["indec_names"] = r.indec_names;
    j["indec_dims"] = r.indec_dims;
    j["warnings"] = r.warnings;
    j["tors"] = r.tors;
    j["torf"] = r.torf;
    j["tors_hasse"] = ordered_json::array();
    for (const ReportArrow& a : r.tors_hasse) j["tors_hasse"].push_back(arrow_json(a));
    j["ice"] = ordered_json::array();
    for (const IceEntry& e : r.ice)
        j["ice"].push_back(
            ordered_json{{"members", e.members}, {"progenerator", e.progenerator}});
    j["ice_hasse"] = ordered_json::array();
    for (const ReportArrow& a : r.ice_hasse) j["ice_hasse"].push_back(arrow_json(a));
    j["wttilt"] = ordered_json::array();
    for (const WttiltEntry& e : r.wttilt)
        j["wttilt"].push_back(ordered_json{{"wide", e.wide},
                                           {"module", e.module},
                                           {"heart", e.heart},
                                           {"interval_lower", e.interval_lower},
                                           {"interval_upper", e.interval_upper}});
    j["hereditary"] = r.hereditary;
    j["rigid"] = ordered_json{{"modules", r.rigid.modules},
                              {"arrows", ordered_json::array()}};
    for (const ReportArrow& a : r.rigid.arrows) j["rigid"]["arrows"].push_back(arrow_json(a));
    j["question"] = ordered_json::array();
    for (const QuestionRow& row : r.question)
        j["question"].push_back(ordered_json{{"heart", row.heart},
                                             {"module_size", row.module_size},
                                             {"out_degree", row.out_degree},
                                             {"ok", row.ok}});
    j["question_holds"] = r.question_holds;
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump(2);
}

AnalysisReport parse_report(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("report is not valid JSON: ") + e.what());
    }
    try {
        AnalysisReport r;
        r.schema = j.at("schema").get<std::string>();
        if (r.schema != report_schema_version)
            throw SchemaError("unsupported report schema \"" + r.schema +
                              "\" (expected \"" + report_schema_version + "\")");
        r.source = j.at("source").get<std::string>();
        const auto& c = j.at("config");
        r.config.field = c.at("field").get<unsigned>();
        r.config.dim_bound = c.at("dim_bound").get<int>();
        r.config.max_mult = c.at("max_mult").get<int>();
        r.config.jobs = c.at("jobs").get<int>();
        r.vertices = j.at("vertices").get<std::vector<std::string>>();
        r.arrow_count = j.at("arrow_count").get<int>();
        r.relation_count = j.at("relation_count").get<int>();
        r.indec_names = j.at("indec_names").get<std::vector<std::string>>();
        r.indec_dims = j.at("indec_dims").get<std::vector<std::vector<int>>>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.tors = j.at("tors").get<std::vector<std::vector<std::string>>>();
        r.torf = j.at("torf").get<std::vector<std::vector<std::string>>>();
        for (const auto& a : j.at("tors_hasse")) r.tors_hasse.push_back(arrow_from_json(a));
        for (const auto& e : j.at("ice")) {
            IceEntry entry;
            entry.members = e.at("members").get<std::vector<std::string>>();
            entry.progenerator = e.at("progenerator").get<std::string>();
            r.ice.push_back(std::move(entry));
        }
        for (const auto& a : j.at("ice_hasse")) r.ice_hasse.push_back(arrow_from_json(a));
        for (const auto& e : j.at("wttilt")) {
            WttiltEntry entry;
            entry.wide = e.at("wide").get<std::vector<std::string>>();
            entry.module = e.at("module").get<std::string>();
            entry.heart = e.at("heart").get<std::vector<std::string>>();
            entry.interval_lower = e.at("interval_lower").get<std::vector<std::string>>();
            entry.interval_upper = e.at("interval_upper").get<std::vector<std::string>>();
            r.wttilt.push_back(std::move(entry));
        }
        r.hereditary = j.at("hereditary").get<bool>();
        r.rigid.modules = j.at("rigid").at("modules").get<std::vector<std::string>>();
        for (const auto& a : j.at("rigid").at("arrows"))
            r.rigid.arrows.push_back(arrow_from_json(a));
        for (const auto& e : j.at("question")) {
            QuestionRow row;
            row.heart = e.at("heart").get<std::vector<std::string>>();
            row.module_size = e.at("module_size").get<int>();
            row.out_degree = e.at("out_degree").get<int>();
            row.ok = e.at("ok").get<bool>();
            r.question.push_back(std::move(row));
        }
        r.question_holds = j.at("question_holds").get<bool>();
        r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed report: ") + e.what());
    }
}

Diagram diagram_tors(const TorsCtx& ctx) {
    Diagram d;
    d.kind = "tors";
    for (Subcat U : ctx.hd.nodes) d.node_labels.push_back(subcat_label(*ctx.tab, U));
    d.arrows = sorted_arrows(*ctx.tab, ctx.hd, /*labeled=*/true);
    return d;
}

Diagram diagram_ice(const TorsCtx& ctx, const Caps& caps) {
    IceHasse ih = ice_hasse(ctx, caps);
    Diagram d;
    d.kind = "ice";
    for (Subcat C : ih.hd.nodes) d.node_labels.push_back(subcat_label(*ctx.tab, C));
    d.arrows = sorted_arrows(*ctx.tab, ih.hd, /*labeled=*/false);
    return d;
}

Diagram diagram_rigid(const TorsCtx& ctx, const Caps& caps) {
    RigidHasse rh = rigid_hasse(ctx, caps);
    Diagram d;
    d.kind = "rigid";
    for (const ModuleExpr& m : rh.modules)
        d.node_labels.push_back(expr_name(*ctx.tab, m));
    d.arrows = sorted_arrows(*ctx.tab, rh.hd, /*labeled=*/false);
    return d;
}

std::string to_dot(const Diagram& d) {
    std::string out = "digraph " + d.kind + " {\n";
    out += "  rankdir=TB;\n";
    out += "  node [shape=box];\n";
    for (std::size_t k = 0; k < d.node_labels.size(); ++k)
        out += "  n" + std::to_string(k) + " [label=\"" +
               escape_dot(d.node_labels[k]) + "\"];\n";
    for (const ReportArrow& a : d.arrows) {
        out += "  n" + std::to_string(a.from) + " -> n" + std::to_string(a.to);
        if (!a.label.empty()) out += " [label=\"" + escape_dot(a.label) + "\"]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

std::string to_json(const Diagram& d) {
    ordered_json j;
    j["kind"] = d.kind;
    j["nodes"] = d.node_labels;
    j["arrows"] = ordered_json::array();
    for (const ReportArrow& a : d.arrows) j["arrows"].push_back(arrow_json(a));
    return j.dump(2);
}

} // namespace tik
