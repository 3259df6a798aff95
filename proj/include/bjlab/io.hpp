#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bjlab/errors.hpp"
#include "bjlab/faces.hpp"
#include "bjlab/kset.hpp"
#include "bjlab/operators.hpp"
#include "bjlab/orthogonality.hpp"
#include "bjlab/preservation.hpp"
#include "bjlab/space.hpp"

namespace bjlab {

// Key order is part of the wire format: reports must round-trip and diff
// byte-identically, so everything serializes through ordered_json.
using Json = nlohmann::ordered_json;

inline Json rats_to_json(const std::vector<Rat>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(format_rat(x));
    return a;
}

inline std::vector<Rat> rats_from_json(const Json& a) {
    if (!a.is_array()) throw Error("expected an array of rationals");
    std::vector<Rat> out;
    for (const auto& x : a) {
        if (!x.is_string()) throw Error("rationals are serialized as strings");
        out.push_back(parse_rat(x.get<std::string>()));
    }
    return out;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (const auto& r : m) rows.push_back(rats_to_json(r));
    return rows;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw Error("expected an array of matrix rows");
    Matrix m;
    for (const auto& r : j) m.push_back(rats_from_json(r));
    return m;
}

inline Json space_to_json(const PolyhedralSpace& s) {
    Json j;
    j["dim"] = s.dim();
    Json vs = Json::array();
    for (const auto& v : s.vertices()) vs.push_back(rats_to_json(v.c));
    j["vertices"] = vs;
    Json fs = Json::array();
    for (const auto& f : s.facets()) fs.push_back(rats_to_json(f.c));
    j["facets"] = fs;
    return j;
}

// Either representation loads; when both are present the vertex list wins
// and the facet list is recomputed (the stored pair is then revalidated by
// construction).
inline PolyhedralSpace space_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim"))
        throw Error("space file needs a \"dim\" field");
    const std::size_t n = j.at("dim").get<std::size_t>();
    if (j.contains("vertices")) {
        std::vector<Vec> vs;
        for (const auto& row : j.at("vertices")) vs.push_back(Vec(rats_from_json(row)));
        return space_from_vertices(n, vs);
    }
    if (j.contains("facets")) {
        std::vector<Covec> fs;
        for (const auto& row : j.at("facets")) fs.push_back(Covec(rats_from_json(row)));
        return space_from_facets(n, fs);
    }
    throw Error("space file needs \"vertices\" or \"facets\"");
}

inline Json operator_to_json(const LinearOperator& t) {
    Json j;
    j["matrix"] = matrix_to_json(t.m);
    return j;
}

inline LinearOperator operator_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("matrix"))
        throw Error("operator file needs a \"matrix\" field");
    const Matrix m = matrix_from_json(j.at("matrix"));
    if (m.empty()) throw Error("operator matrix is empty");
    return LinearOperator::from_rows(m);
}

inline Json face_to_json(const PolyhedralSpace& s, const Face& f) {
    Json j;
    j["dim"] = f.dim;
    Json vs = Json::array();
    for (int id : f.vertex_ids) vs.push_back(rats_to_json(s.vertices()[id].c));
    j["vertices"] = vs;
    j["vertex_ids"] = f.vertex_ids;
    return j;
}

inline Json smooth_order_report(const PolyhedralSpace& s, const Vec& x) {
    const Face& f = minimal_face(s, x);
    Json j;
    j["point"] = rats_to_json(x.c);
    j["order"] = smoothness_order(s, x);
    j["minimal_face"] = face_to_json(s, f);
    return j;
}

inline Json certificate_to_json(const PreservationCertificate& c) {
    Json j;
    j["point"] = rats_to_json(c.point.c);
    j["verdict"] = c.verdict;
    j["degenerate"] = c.degenerate;
    if (!c.degenerate) j["ratio"] = format_rat(c.ratio);
    if (c.witness) {
        Json w;
        w["functional"] = rats_to_json(c.witness->functional.c);
        w["direction"] = rats_to_json(c.witness->direction.c);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    Json rows = Json::array();
    for (const auto& row : c.containment) {
        Json r;
        r["generator_id"] = row.generator_id;
        r["functional"] = rats_to_json(row.functional.c);
        r["coefficients"] = rats_to_json(row.coefficients);
        rows.push_back(r);
    }
    j["containment"] = rows;
    return j;
}

inline Json scan_to_json(const ScanReport& rep) {
    Json j;
    j["all_preserved"] = rep.all_preserved;
    Json faces = Json::array();
    for (const auto& e : rep.entries) {
        Json f;
        f["face_index"] = e.face_index;
        f["dim"] = e.dim;
        f["vertex_ids"] = e.vertex_ids;
        f["samples"] = e.samples;
        f["all_preserved"] = e.all_preserved;
        Json fails = Json::array();
        for (const auto& p : e.failures) fails.push_back(rats_to_json(p.c));
        f["failures"] = fails;
        faces.push_back(f);
    }
    j["faces"] = faces;
    Json anomalies = Json::array();
    for (const auto& [facet, vertex] : rep.interior_vs_vertex_anomalies) {
        Json a;
        a["facet_face_index"] = facet;
        a["vertex_face_index"] = vertex;
        anomalies.push_back(a);
    }
    j["interior_vs_vertex_anomalies"] = anomalies;
    return j;
}

inline Json candidate_set_to_json(const CandidateSet& set) {
    Json j;
    switch (set.kind) {
        case CandidateSet::Kind::ExtremePoints:
            j["kind"] = "ext";
            break;
        case CandidateSet::Kind::KSmooth:
            j["kind"] = "ksmooth";
            j["k"] = set.k;
            break;
        case CandidateSet::Kind::FacetInterior:
            j["kind"] = "facet-interior";
            break;
        case CandidateSet::Kind::Points: {
            j["kind"] = "points";
            Json pts = Json::array();
            for (const auto& p : set.points) pts.push_back(rats_to_json(p.c));
            j["points"] = pts;
            break;
        }
        case CandidateSet::Kind::Hyperplane:
            j["kind"] = "hyperplane";
            j["functional"] = rats_to_json(set.functional);
            j["count"] = set.count;
            break;
    }
    return j;
}

// Canonical form: everything that must be bit-reproducible from (config,
// seed). Wall time is reporting-only and lives outside this object.
inline Json search_report_canonical_json(const SearchReport& rep) {
    Json j;
    j["schema"] = 1;
    j["space"] = rep.config.space_name;
    j["candidate_set"] = candidate_set_to_json(rep.config.set);
    j["budget"] = rep.config.budget;
    j["seed"] = rep.config.seed;
    j["perturbation_height"] = rep.config.perturbation_height;
    j["candidate_points"] = rep.candidate_points;
    j["trials"] = rep.trials;
    j["distinct_operators"] = rep.distinct_operators;
    j["preserving_total"] = rep.preserving_total;
    Json pres = Json::array();
    for (const auto& p : rep.preserving) {
        Json e;
        e["matrix"] = matrix_to_json(p.matrix);
        e["lambda"] = p.lambda ? Json(format_rat(*p.lambda)) : Json(nullptr);
        pres.push_back(e);
    }
    j["preserving"] = pres;
    Json cx = Json::array();
    for (const auto& p : rep.counterexamples) {
        Json e;
        e["matrix"] = matrix_to_json(p.matrix);
        cx.push_back(e);
    }
    j["counterexamples"] = cx;
    return j;
}

inline Json search_report_to_json(const SearchReport& rep) {
    Json j = search_report_canonical_json(rep);
    j["wall_time_ms"] = rep.wall_time_ms;
    return j;
}

inline Json repro_report_to_json(const ReproReport& rep) {
    Json j;
    j["rho_preserving_non_isometry"] = rep.rho_preserving_non_isometry;
    j["preserving_set_not_closed"] = rep.preserving_set_not_closed;
    j["identity_control"] = rep.identity_control;
    return j;
}

inline Json equivalence_row_to_json(const EquivalenceRow& row) {
    Json j;
    Json cols;
    for (const auto& [name, v] : row.columns) cols[name] = v;
    j["columns"] = cols;
    j["lambda"] = row.lambda ? Json(format_rat(*row.lambda)) : Json(nullptr);
    j["violation"] = row.violation;
    return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << dump_json(j);
    if (!out) throw Error("write failed: " + path);
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

// "1,1/2,-3" -> Vec. The CLI's point syntax.
inline std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw Error("empty coordinate in list");
        out.push_back(parse_rat(item.substr(a, b - a + 1)));
    }
    if (out.empty()) throw Error("empty coordinate list");
    return out;
}

}  // namespace bjlab
