#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bloch/covering.hpp"
#include "bloch/errors.hpp"
#include "bloch/irreps.hpp"

namespace bloch {

using Json = nlohmann::json;  // std::map-backed: object keys are sorted

// ---------------------------------------------------------------------------
// Formatting helpers. All floating-point payload values are serialized with a
// fixed %.12e format so identical inputs produce byte-identical files.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

// ---------------------------------------------------------------------------
// JSON loading: groups with irreps, and covering models.
// ---------------------------------------------------------------------------

namespace detail {

inline Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelLoadError("cannot open '" + path + "'");
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ModelLoadError("invalid JSON in '" + path + "'");
    return doc;
}

inline Complex parse_complex(const Json& j) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ModelLoadError("complex entries must be numbers or [re, im] pairs");
}

inline Matrix parse_matrix(const Json& j) {
    if (!j.is_array() || j.empty()) throw ModelLoadError("matrix must be a nonempty 2-d array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Matrix out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            throw ModelLoadError("matrix rows must have equal length");
        for (int c = 0; c < cols; ++c) out(r, c) = parse_complex(j[r][c]);
    }
    return out;
}

}  // namespace detail

/// Group document: {"order", "table", "irreps": [{"dim", "matrices"}]}.
/// "matrices" holds one dim x dim complex matrix per group element.
inline DualSpace load_group_document(const Json& doc) {
    if (!doc.contains("table")) throw ModelLoadError("group document needs a 'table'");
    FiniteGroup g;
    try {
        g = validate_group(doc["table"].get<std::vector<std::vector<int>>>());
    } catch (const Error& e) {
        throw ModelLoadError(std::string("invalid group table: ") + e.what());
    }
    if (doc.contains("order") && doc["order"].get<int>() != g.order)
        throw ModelLoadError("declared order does not match the table");
    if (!doc.contains("irreps")) throw ModelLoadError("group document needs 'irreps'");
    std::vector<UnitaryIrrep> irreps;
    for (const auto& jrep : doc["irreps"]) {
        UnitaryIrrep rep;
        rep.dim = jrep.at("dim").get<int>();
        for (const auto& jm : jrep.at("matrices")) rep.matrices.push_back(detail::parse_matrix(jm));
        if (static_cast<int>(rep.matrices.size()) != g.order)
            throw ModelLoadError("irrep needs one matrix per group element");
        irreps.push_back(std::move(rep));
    }
    try {
        return build_dual(g, std::move(irreps));
    } catch (const Error& e) {
        throw ModelLoadError(std::string("invalid irrep data: ") + e.what());
    }
}

/// Resolve a group given as a built-in name ("Z2".."Z12", "D4", "S3") or a
/// path to a group document.
inline DualSpace load_dual(const std::string& name_or_path) {
    try {
        return builtin_dual(name_or_path);
    } catch (const ModelLoadError&) {
    }
    return load_group_document(detail::parse_json_file(name_or_path));
}

struct LoadedModel {
    CoveringModel model;
    DualSpace dual;
};

/// Model document:
/// {"group": name-or-document, "vertices": n, "fiber_dim": d,
///  "edges": [{"u", "v", "hopping": matrix, "lift": gamma}],
///  "potential": [matrix per vertex],
///  "cocycle": "trivial" | {"kind": "random_u1", "seed": s}
///           | {"kind": "table", "phases": [[matrix per cover vertex] per gamma]}}
/// Matrix elements are listed row-major; complex scalars as [re, im].
inline LoadedModel load_model_document(const Json& doc) {
    LoadedModel out;
    try {
        const Json& jg = doc.at("group");
        out.dual = jg.is_string() ? load_dual(jg.get<std::string>()) : load_group_document(jg);

        QuotientModel q;
        q.group = out.dual.group;
        q.n_vertices = doc.at("vertices").get<int>();
        q.fiber_dim = doc.value("fiber_dim", 1);
        if (q.n_vertices < 1 || q.fiber_dim < 1)
            throw ModelLoadError("vertices and fiber_dim must be positive");
        for (const auto& je : doc.at("edges")) {
            QuotientEdge e;
            e.u = je.at("u").get<int>();
            e.v = je.at("v").get<int>();
            e.lift = je.value("lift", 0);
            e.hopping = detail::parse_matrix(je.at("hopping"));
            q.edges.push_back(std::move(e));
        }
        for (const auto& jp : doc.at("potential")) q.potential.push_back(detail::parse_matrix(jp));
        if (static_cast<int>(q.potential.size()) != q.n_vertices)
            throw ModelLoadError("potential needs one matrix per vertex");
        q.weighting = doc.value("weighting", 1.0);

        CocycleSpec spec = CocycleSpec::trivial();
        if (doc.contains("cocycle") && !doc["cocycle"].is_null()) {
            const Json& jc = doc["cocycle"];
            if (jc.is_string()) {
                if (jc.get<std::string>() != "trivial")
                    throw ModelLoadError("unknown cocycle spec '" + jc.get<std::string>() + "'");
            } else if (jc.at("kind") == "random_u1") {
                std::mt19937_64 rng(jc.value("seed", 0));
                spec = CocycleSpec::random_u1(q.group, q.n_vertices, rng);
            } else if (jc.at("kind") == "table") {
                std::vector<std::vector<Matrix>> table;
                for (const auto& row : jc.at("phases")) {
                    std::vector<Matrix> mats;
                    for (const auto& jm : row) mats.push_back(detail::parse_matrix(jm));
                    table.push_back(std::move(mats));
                }
                spec = CocycleSpec::from_table(std::move(table));
            } else {
                throw ModelLoadError("unknown cocycle kind");
            }
        }
        out.model = build_covering_model(q, spec);
    } catch (const ModelLoadError&) {
        throw;
    } catch (const Json::exception& e) {
        throw ModelLoadError(std::string("malformed model document: ") + e.what());
    } catch (const Error& e) {
        throw ModelLoadError(std::string("model construction failed: ") + e.what());
    }
    return out;
}

/// Built-in demonstration models addressable as "builtin:<name>".
inline LoadedModel make_builtin_model(const std::string& name, unsigned seed) {
    LoadedModel out;
    if (name == "z2-demo") {
        // Two-sheet cover of a single vertex with one generator-crossing loop.
        QuotientModel q;
        q.n_vertices = 1;
        q.fiber_dim = 1;
        q.weighting = 0.0;
        q.group = validate_group({{0, 1}, {1, 0}});
        q.potential = {Matrix::Constant(1, 1, 3.0)};
        QuotientEdge e;
        e.u = e.v = 0;
        e.lift = 1;
        e.hopping = Matrix::Identity(1, 1);
        q.edges = {e};
        out.model = build_covering_model(q, CocycleSpec::trivial());
        out.dual = dual_cyclic(2);
        return out;
    }
    if (name == "s3-demo") {
        // Two quotient vertices over S_3 with edge lifts generating the group
        // and a seeded random U(1) cocycle.
        QuotientModel q;
        q.n_vertices = 2;
        q.fiber_dim = 1;
        q.group = symmetric_group_3();
        q.potential = {Matrix::Constant(1, 1, 0.3), Matrix::Constant(1, 1, -0.2)};
        QuotientEdge e1{0, 1, Matrix::Identity(1, 1), 0};
        QuotientEdge e2{1, 0, Matrix::Constant(1, 1, Complex(0.5, 0.25)), 1};
        QuotientEdge e3{0, 0, Matrix::Constant(1, 1, 0.7), 3};
        q.edges = {e1, e2, e3};
        std::mt19937_64 rng(seed);
        out.model = build_covering_model(q, CocycleSpec::random_u1(q.group, q.n_vertices, rng));
        out.dual = dual_s3();
        return out;
    }
    throw ModelLoadError("unknown built-in model '" + name + "'");
}

/// Resolve "builtin:<name>" or a file path to a loaded model.
inline LoadedModel load_model(const std::string& model_ref, unsigned seed) {
    if (model_ref.rfind("builtin:", 0) == 0) return make_builtin_model(model_ref.substr(8), seed);
    return load_model_document(detail::parse_json_file(model_ref));
}

// ---------------------------------------------------------------------------
// Result bundles: metadata, named tables, and check lists.
// ---------------------------------------------------------------------------

struct CheckEntry {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // cells preformatted

    void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }
};

struct ResultBundle {
    std::map<std::string, std::string> metadata;
    std::map<std::string, ResultTable> tables;
    std::vector<CheckEntry> checks;

    void add_check(const std::string& name, double measured, double tolerance) {
        checks.push_back({name, measured, tolerance, measured <= tolerance});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline std::string table_to_csv(const ResultTable& t) {
    std::ostringstream out;
    for (size_t c = 0; c < t.columns.size(); ++c)
        out << t.columns[c] << (c + 1 < t.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) out << row[c] << (c + 1 < row.size() ? "," : "");
        out << "\n";
    }
    return out.str();
}

inline ResultTable parse_csv(const std::string& text) {
    ResultTable t;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (header) {
            t.columns = std::move(cells);
            header = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
    }
    return t;
}

inline Json bundle_to_json(const ResultBundle& b) {
    Json doc;
    doc["metadata"] = Json::object();
    for (const auto& [k, v] : b.metadata) doc["metadata"][k] = v;
    doc["checks"] = Json::array();
    for (const auto& c : b.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["measured"] = format_double(c.measured);
        jc["tolerance"] = format_double(c.tolerance);
        jc["pass"] = c.pass;
        doc["checks"].push_back(jc);
    }
    doc["tables"] = Json::object();
    for (const auto& [name, t] : b.tables) {
        Json jt;
        jt["columns"] = t.columns;
        jt["rows"] = Json::array();
        for (const auto& row : t.rows) jt["rows"].push_back(row);
        doc["tables"][name] = jt;
    }
    return doc;
}

inline std::string bundle_to_json_string(const ResultBundle& b) {
    return bundle_to_json(b).dump(2) + "\n";
}

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
}

}  // namespace detail

/// Export a bundle. Format "json" writes a single JSON file at out_path.
/// Format "csv" writes the JSON file (tables replaced by file references)
/// plus one "<stem>.<table>.csv" per table next to it. Output is byte-stable
/// for identical bundles.
inline std::vector<std::string> export_bundle(const ResultBundle& b, const std::string& out_path,
                                              const std::string& format) {
    std::vector<std::string> written;
    if (format == "json") {
        detail::write_file(out_path, bundle_to_json_string(b));
        written.push_back(out_path);
        return written;
    }
    if (format != "csv") throw ConfigInvalid("format must be 'json' or 'csv'");
    std::filesystem::path p(out_path);
    std::filesystem::path stem = p.parent_path() / p.stem();
    Json doc = bundle_to_json(b);
    doc["tables"] = Json::object();
    for (const auto& [name, t] : b.tables) {
        std::string csv_path = stem.string() + "." + name + ".csv";
        detail::write_file(csv_path, table_to_csv(t));
        doc["tables"][name] = std::filesystem::path(csv_path).filename().string();
        written.push_back(csv_path);
    }
    detail::write_file(out_path, doc.dump(2) + "\n");
    written.push_back(out_path);
    return written;
}

}  // namespace bloch
