#include "tik/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tik/errors.hpp"

namespace tik {

int Quiver::vertex_index(const std::string& id) const {
    for (int i = 0; i < nvert(); ++i)
        if (vertices[i] == id) return i;
    return -1;
}

int Quiver::arrow_index(const std::string& name) const {
    for (int i = 0; i < narrow(); ++i)
        if (arrows[i].name == name) return i;
    return -1;
}

namespace {

struct RawPath {
    int start = -1, end = -1;
    std::vector<int> arrows;
};

// Degreewise quotient by the relation ideal; fills basis / basis_by_pair /
// expand / saturation_length.  See the header comment for the method.
void build_basis(BoundAlgebra& A, const Caps& caps) {
    const int nv = A.nvert();
    const unsigned p = A.p;

    std::size_t max_rel_len = 0;
    for (const auto& r : A.relations)
        for (const auto& t : r) max_rel_len = std::max(max_rel_len, t.arrows.size());

    std::vector<std::vector<RawPath>> paths; // by length
    paths.emplace_back();
    for (int v = 0; v < nv; ++v) paths[0].push_back({v, v, {}});

    A.basis_by_pair.assign(nv, std::vector<std::vector<int>>(nv));

    auto note_survivor = [&](const RawPath& q) {
        int id = int(A.basis.size());
        A.basis.push_back({q.start, q.end, q.arrows});
        A.basis_by_pair[q.start][q.end].push_back(id);
        A.expand[{q.start, q.arrows}] = {{id, u8(1)}};
        return id;
    };

    // lengths 0 and 1 always survive: the ideal sits in paths of length >= 2
    for (const auto& q : paths[0]) note_survivor(q);

    for (unsigned len = 1;; ++len) {
        if (len > caps.path_length_bound)
            throw NotFiniteDimensional("no path-length saturation within bound " +
                                       std::to_string(caps.path_length_bound));
        // extend by one arrow (lex order is preserved: prefix order, then arrow index)
        paths.emplace_back();
        for (const auto& q : paths[len - 1])
            for (int a = 0; a < A.narrow(); ++a)
                if (A.quiver.arrows[a].from == q.end) {
                    RawPath e{q.start, A.quiver.arrows[a].to, q.arrows};
                    e.arrows.push_back(a);
                    paths[len].push_back(e);
                }
        if (paths[len].size() > 1000000)
            throw CapExceeded("path count explosion at length " + std::to_string(len));
        if (paths[len].empty()) {
            A.saturation_length = len;
            break;
        }
        if (len == 1) {
            for (const auto& q : paths[1]) note_survivor(q);
            continue;
        }

        // group by (from, to)
        std::vector<std::vector<int>> group(std::size_t(nv) * nv); // path indices
        for (int qi = 0; qi < int(paths[len].size()); ++qi) {
            const auto& q = paths[len][qi];
            group[std::size_t(q.start) * nv + q.end].push_back(qi);
        }

        unsigned survivors = 0;
        std::vector<int> survivor_ids(paths[len].size(), -1);
        std::vector<std::pair<RawPath, std::vector<std::pair<int, u8>>>> dead_expansions;

        for (int from = 0; from < nv; ++from)
            for (int to = 0; to < nv; ++to) {
                const auto& g = group[std::size_t(from) * nv + to];
                if (g.empty()) continue;

                // position of each path of this group in its column order
                std::map<std::vector<int>, unsigned> col;
                for (unsigned c = 0; c < g.size(); ++c) col[paths[len][g[c]].arrows] = c;

                // relation instances x . r . y of total length == len
                std::vector<std::vector<u8>> rows;
                for (const auto& rel : A.relations) {
                    if (rel.empty()) continue;
                    const std::size_t lr = rel[0].arrows.size();
                    if (lr > len) continue;
                    const int rsrc = A.quiver.arrows[rel[0].arrows.front()].from;
                    const int rtgt = A.quiver.arrows[rel[0].arrows.back()].to;
                    for (std::size_t lx = 0; lx + lr <= len; ++lx) {
                        const std::size_t ly = len - lr - lx;
                        for (const auto& x : paths[lx]) {
                            if (x.start != from || x.end != rsrc) continue;
                            for (const auto& y : paths[ly]) {
                                if (y.start != rtgt || y.end != to) continue;
                                std::vector<u8> row(g.size(), 0);
                                for (const auto& t : rel) {
                                    std::vector<int> seq = x.arrows;
                                    seq.insert(seq.end(), t.arrows.begin(), t.arrows.end());
                                    seq.insert(seq.end(), y.arrows.begin(), y.arrows.end());
                                    unsigned c = col.at(seq);
                                    row[c] = fp_add(row[c], t.coeff, p);
                                }
                                rows.push_back(std::move(row));
                            }
                        }
                    }
                }

                Mat rel_mat(unsigned(rows.size()), unsigned(g.size()), p);
                for (unsigned i = 0; i < rows.size(); ++i)
                    for (unsigned j = 0; j < g.size(); ++j) rel_mat.set(i, j, rows[i][j]);
                Rref rr = rref(rel_mat);

                std::vector<bool> is_pivot(g.size(), false);
                for (unsigned c : rr.pivots) is_pivot[c] = true;
                for (unsigned c = 0; c < g.size(); ++c)
                    if (!is_pivot[c]) {
                        survivor_ids[g[c]] = 0; // provisional; numbered below
                        ++survivors;
                    }
                for (unsigned i = 0; i < rr.pivots.size(); ++i) {
                    // dead path == -(sum over its free-column coefficients),
                    // recorded as (path index, coeff); ids resolved after numbering
                    std::vector<std::pair<int, u8>> exp;
                    for (unsigned c = 0; c < g.size(); ++c) {
                        if (is_pivot[c]) continue;
                        u8 v = rr.mat.at(i, c);
                        if (v) exp.emplace_back(g[c], fp_neg(v, p));
                    }
                    dead_expansions.emplace_back(paths[len][g[rr.pivots[i]]], std::move(exp));
                }
            }

        if (survivors == 0) {
            A.saturation_length = len;
            break;
        }

        // number the survivors of this length in (start, sequence) order
        std::vector<int> order;
        for (int qi = 0; qi < int(paths[len].size()); ++qi)
            if (survivor_ids[qi] == 0) order.push_back(qi);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const auto& qa = paths[len][a];
            const auto& qb = paths[len][b];
            if (qa.start != qb.start) return qa.start < qb.start;
            return qa.arrows < qb.arrows;
        });
        std::vector<int> id_of_path(paths[len].size(), -1);
        for (int qi : order) id_of_path[qi] = note_survivor(paths[len][qi]);

        for (auto& [q, exp_cols] : dead_expansions) {
            std::vector<std::pair<int, u8>> exp;
            for (auto& [qi, cv] : exp_cols) exp.emplace_back(id_of_path[qi], cv);
            A.expand[{q.start, q.arrows}] = std::move(exp);
        }
    }
}

unsigned parse_field(const nlohmann::json& j, std::optional<unsigned> field_override) {
    unsigned p = 2;
    if (field_override) {
        p = *field_override;
    } else {
        if (!j.contains("field") || !j["field"].is_number_integer())
            throw SchemaError("missing or non-integer \"field\"");
        long long f = j["field"].get<long long>();
        if (f < 2 || f > 251) throw SchemaError("\"field\" must be a prime in [2, 251]");
        p = unsigned(f);
    }
    if (!is_prime_modulus(p))
        throw SchemaError("field " + std::to_string(p) + " is not a prime in [2, 251]");
    return p;
}

} // namespace

BoundAlgebra parse_algebra(const std::string& json_text,
                           std::optional<unsigned> field_override, const Caps& caps) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("top level must be a JSON object");

    static const std::set<std::string> allowed = {"field", "vertices", "arrows", "relations",
                                                  "dim_bound"};
    for (const auto& item : j.items())
        if (!allowed.count(item.key())) throw SchemaError("unknown key \"" + item.key() + "\"");

    BoundAlgebra A;
    A.p = parse_field(j, field_override);

    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty())
        throw SchemaError("\"vertices\" must be a non-empty array of strings");
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw SchemaError("vertex ids must be strings");
        std::string id = v.get<std::string>();
        if (A.quiver.vertex_index(id) >= 0) throw SchemaError("duplicate vertex id \"" + id + "\"");
        A.quiver.vertices.push_back(id);
    }

    if (j.contains("arrows")) {
        if (!j["arrows"].is_array()) throw SchemaError("\"arrows\" must be an array");
        for (const auto& a : j["arrows"]) {
            if (!a.is_object() || !a.contains("name") || !a.contains("from") || !a.contains("to"))
                throw SchemaError("arrow needs \"name\", \"from\", \"to\"");
            Arrow arr;
            arr.name = a["name"].get<std::string>();
            if (A.quiver.arrow_index(arr.name) >= 0)
                throw SchemaError("duplicate arrow name \"" + arr.name + "\"");
            arr.from = A.quiver.vertex_index(a["from"].get<std::string>());
            arr.to = A.quiver.vertex_index(a["to"].get<std::string>());
            if (arr.from < 0 || arr.to < 0)
                throw SchemaError("arrow \"" + arr.name + "\" references an unknown vertex");
            A.quiver.arrows.push_back(arr);
        }
    }

    if (j.contains("relations")) {
        if (!j["relations"].is_array()) throw SchemaError("\"relations\" must be an array");
        for (const auto& rj : j["relations"]) {
            if (!rj.is_array() || rj.empty())
                throw SchemaError("each relation must be a non-empty array of terms");
            Relation rel;
            int src = -1, tgt = -1;
            std::size_t term_len = 0;
            for (const auto& tj : rj) {
                if (!tj.is_object() || !tj.contains("coeff") || !tj.contains("path"))
                    throw SchemaError("relation term needs \"coeff\" and \"path\"");
                RelTerm t;
                long long c = tj["coeff"].get<long long>() % (long long)A.p;
                if (c < 0) c += A.p;
                t.coeff = u8(c);
                if (!tj["path"].is_array()) throw SchemaError("\"path\" must be an array");
                for (const auto& an : tj["path"]) {
                    int ai = A.quiver.arrow_index(an.get<std::string>());
                    if (ai < 0) throw SchemaError("unknown arrow \"" + an.get<std::string>() +
                                                  "\" in relation");
                    t.arrows.push_back(ai);
                }
                if (t.arrows.size() < 2)
                    throw NonAdmissible("relation term of length " +
                                        std::to_string(t.arrows.size()) +
                                        " (admissible ideals need length >= 2)");
                for (std::size_t i = 0; i + 1 < t.arrows.size(); ++i)
                    if (A.quiver.arrows[t.arrows[i]].to != A.quiver.arrows[t.arrows[i + 1]].from)
                        throw NonComposablePath("relation path step " + std::to_string(i) +
                                                ": target/source mismatch");
                int tsrc = A.quiver.arrows[t.arrows.front()].from;
                int ttgt = A.quiver.arrows[t.arrows.back()].to;
                if (src < 0) {
                    src = tsrc;
                    tgt = ttgt;
                    term_len = t.arrows.size();
                } else {
                    if (tsrc != src || ttgt != tgt)
                        throw SchemaError("relation terms are not parallel");
                    if (t.arrows.size() != term_len)
                        throw NonAdmissible(
                            "relation mixes path lengths; only equal-length combinations are supported");
                }
                if (t.coeff != 0) rel.push_back(std::move(t));
            }
            if (!rel.empty()) A.relations.push_back(std::move(rel));
        }
    }

    if (j.contains("dim_bound")) {
        if (!j["dim_bound"].is_number_integer() || j["dim_bound"].get<int>() < 1)
            throw SchemaError("\"dim_bound\" must be a positive integer");
        A.file_dim_bound = j["dim_bound"].get<int>();
    }

    build_basis(A, caps);
    return A;
}

BoundAlgebra parse_algebra_file(const std::string& path,
                                std::optional<unsigned> field_override, const Caps& caps) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open algebra file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_algebra(ss.str(), field_override, caps);
}

} // namespace tik
