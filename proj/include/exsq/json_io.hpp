#pragma once

// JSON serialization of the machine-readable interfaces: matrix files,
// membership reports, quadratic forms, and transvection decompositions.
// All emission uses ordered objects with fixed key order, so outputs are
// byte-deterministic.
//
// Matrix file format:
//   { "ring": "z" | "q" | "zmod:<m>", "n": <int>,
//     "indexing": "plain" | "wedge2" | "wedge4",
//     "entries": [ "<scalar>", ... ] }          // row-major
// Rows/columns of wedge files follow the lex order of subsets(n, m).

#include <string>
#include <vector>

#include <json.hpp>

#include "exsq/errors.hpp"
#include "exsq/matrix.hpp"
#include "exsq/pluecker.hpp"
#include "exsq/scheme.hpp"
#include "exsq/transvection.hpp"

namespace exsq {

using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const SquareMatrix& m) {
    Json j;
    j["ring"] = m.ring().str();
    j["n"] = m.indexing().n();
    j["indexing"] = m.indexing().str();
    Json entries = Json::array();
    for (int r = 0; r < m.side(); ++r)
        for (int c = 0; c < m.side(); ++c) entries.push_back(m.at(r, c).str());
    j["entries"] = std::move(entries);
    return j;
}

inline Indexing parse_indexing(const std::string& s, int n) {
    if (s == "plain") return Indexing::plain(n);
    if (s.rfind("wedge", 0) == 0) {
        const std::string arity = s.substr(5);
        if (arity.empty() || arity.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad indexing '" + s + "'");
        try {
            return Indexing::wedge(std::stoi(arity), n);
        } catch (const ArityOutOfRange& e) {
            throw ParseError(std::string("bad indexing: ") + e.what());
        }
    }
    throw ParseError("unknown indexing '" + s + "'");
}

inline SquareMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("n") || !j.contains("indexing") ||
        !j.contains("entries"))
        throw ParseError("matrix file needs ring, n, indexing, entries");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
        throw ParseError("matrix file field 'n' must be a positive integer");
    const RingTag ring = RingTag::parse(j["ring"].get<std::string>());
    const int n = j["n"].get<int>();
    const Indexing indexing = parse_indexing(j["indexing"].get<std::string>(), n);
    const auto& entries = j["entries"];
    if (!entries.is_array())
        throw ParseError("matrix entries must be an array of scalar strings");
    const int side = indexing.side();
    if (static_cast<int>(entries.size()) != side * side)
        throw ParseError("expected " + std::to_string(side * side) + " entries, got " +
                         std::to_string(entries.size()));
    SquareMatrix m(ring, indexing);
    int idx = 0;
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c, ++idx) {
            const auto& cell = entries[static_cast<std::size_t>(idx)];
            if (!cell.is_string())
                throw ParseError("matrix entries must be scalar strings");
            m.at(r, c) = Scalar::parse(ring, cell.get<std::string>());
        }
    }
    return m;
}

inline Json theta_to_json(const ThetaTable& t) {
    Json j = Json::object();
    if (t.side() == 0) return j;
    const auto quads = subsets(t.n(), 4);
    for (int s = 0; s < t.side(); ++s)
        for (int h = 0; h < t.side(); ++h)
            j[quads[static_cast<std::size_t>(s)].str() + "|" +
              quads[static_cast<std::size_t>(h)].str()] = t.at(s, h).str();
    return j;
}

inline Json ext_key_to_json(const ExtNumberKey& k) {
    Json j;
    j["A"] = k.A.str();
    j["C"] = k.C.str();
    j["H"] = k.H.str();
    return j;
}

inline Json violation_to_json(const Violation& v) {
    Json j = ext_key_to_json(v.key);
    j["kind"] = v.kind == Violation::Kind::ZeroConstraint ? "zero" : "consistency";
    j["value"] = v.value.str();
    if (v.conflicting_key) j["conflicting_key"] = ext_key_to_json(*v.conflicting_key);
    return j;
}

inline Json report_to_json(const MembershipReport& r, bool full_report = false) {
    Json j;
    j["verdict"] = r.accepted ? "accept" : "reject";
    if (r.theta) j["theta"] = theta_to_json(*r.theta);
    if (r.theta_det) j["theta_det"] = r.theta_det->str();
    if (!r.violations.empty()) {
        j["violation"] = violation_to_json(r.violations.front());
        if (full_report) {
            Json all = Json::array();
            for (const auto& v : r.violations) all.push_back(violation_to_json(v));
            j["violations"] = std::move(all);
        }
    }
    return j;
}

inline Json quadform_to_json(const QuadForm& f) {
    Json j = Json::object();
    for (const auto& [key, coeff] : f.coeffs())
        j[key.first.str() + "|" + key.second.str()] = coeff.str();
    return j;
}

inline Json decomposition_to_json(int n, const std::vector<Transvection>& factors) {
    Json arr = Json::array();
    const auto pairs = subsets(n, 2);
    for (const auto& t : factors) {
        Json f;
        f["row"] = pairs[static_cast<std::size_t>(t.row)].str();
        f["col"] = pairs[static_cast<std::size_t>(t.col)].str();
        f["param"] = t.param.str();
        arr.push_back(std::move(f));
    }
    return arr;
}

} // namespace exsq
