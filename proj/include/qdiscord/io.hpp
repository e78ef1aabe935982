// Copyright 2026 The qdiscord Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON density-matrix files and locale-independent number formatting.
//
// File format:
//   {"dim_a": 2, "dim_b": 2, "matrix": [[[re, im], ...], ...]}
// Rows are row-major; every entry is a [real, imaginary] pair.
//
// Requires nlohmann/json.hpp on the include path.

#pragma once

#include "qdiscord/basis.hpp"
#include "qdiscord/error.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/qstate.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace qdiscord::io {

using Json = nlohmann::ordered_json;

/// Shortest-of-general formatting with 9 significant digits, '.' separator.
inline std::string format_number(double v) {
    if (v == 0.0) return "0";  // also folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

inline Json matrix_to_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const Json &rows, Eigen::Index expected) {
    if (!rows.is_array()) throw Error(ErrorKind::Parse, "\"matrix\" must be an array of rows");
    if (static_cast<Eigen::Index>(rows.size()) != expected) {
        throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(rows.size()) + " rows, expected " +
                                                      std::to_string(expected));
    }
    CMatrix m(expected, expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
        const Json &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array()) throw Error(ErrorKind::Parse, "row " + std::to_string(i) + " is not an array");
        if (static_cast<Eigen::Index>(row.size()) != expected) {
            throw Error(ErrorKind::Parse, "ragged matrix: row " + std::to_string(i) + " has " +
                                              std::to_string(row.size()) + " entries, expected " +
                                              std::to_string(expected));
        }
        for (Eigen::Index j = 0; j < expected; ++j) {
            const Json &e = row[static_cast<std::size_t>(j)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw Error(ErrorKind::Parse, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                  ") is not a [re, im] pair of numbers");
            }
            const double re = e[0].get<double>();
            const double im = e[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im)) {
                throw Error(ErrorKind::Parse, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite");
            }
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

inline Json state_to_json(const BipartiteState &state) {
    Json j;
    j["dim_a"] = state.dim_a();
    j["dim_b"] = state.dim_b();
    j["matrix"] = matrix_to_json(state.matrix());
    return j;
}

/// Parses and validates a state document. Type errors raise Parse; the
/// density-matrix checks raise their own kinds.
inline BipartiteState state_from_json(const Json &j) {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "state document must be a JSON object");
    for (const char *key : {"dim_a", "dim_b", "matrix"}) {
        if (!j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing key \"") + key + "\"");
    }
    const Json &da = j["dim_a"];
    const Json &db = j["dim_b"];
    if (!da.is_number_integer() || !db.is_number_integer() || da.get<long long>() < 1 || db.get<long long>() < 1) {
        throw Error(ErrorKind::Parse, "dim_a and dim_b must be positive integers");
    }
    const auto na = static_cast<Eigen::Index>(da.get<long long>());
    const auto nb = static_cast<Eigen::Index>(db.get<long long>());
    return make_bipartite(matrix_from_json(j["matrix"], na * nb), na, nb);
}

inline BipartiteState parse_state(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
    }
    return state_from_json(j);
}

/// Thrown for unreadable paths; kept apart from Error so callers can report
/// file problems distinctly.
class FileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline BipartiteState load_state(const std::string &path) { return parse_state(read_file(path)); }

inline Json basis_to_json(const OrthonormalBasis &b) { return matrix_to_json(b.unitary()); }

inline Json measurement_to_json(const ProductMeasurement &m) {
    Json j;
    j["basis_a"] = basis_to_json(m.basis_a);
    j["basis_b"] = basis_to_json(m.basis_b);
    return j;
}

}  // namespace qdiscord::io
