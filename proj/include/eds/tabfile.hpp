#pragma once

// Tableau file format: a JSON document with fields
//   n, r      positive integers
//   basis     list of r x n arrays of rational strings "p/q"   (or)
//   relations t x (r*n) array of rational strings (row-major flattening)
//   name      optional string
//   phase_generators  optional list of polynomial strings in x1..xn, p1..pn
// Rational entries are strings to preserve exactness; plain JSON integers are
// accepted too.  Parse failures throw TabFileError with a message naming the
// offending field.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rational.hpp"
#include "tableau.hpp"

namespace eds {

struct TabFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TabFile {
    std::size_t n = 0, r = 0;
    std::string name;
    std::optional<Tableau> tableau;               // present when basis/relations given
    std::vector<std::string> phase_generators;    // verbatim polynomial text
};

namespace detail {

inline Rat json_rat(const nlohmann::json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_rat(v.get<std::string>());
        if (v.is_number_integer()) return Rat(v.get<long long>());
    } catch (const std::exception& e) {
        throw TabFileError(where + ": " + e.what());
    }
    throw TabFileError(where + ": entries must be rational strings like \"2/3\"");
}

inline std::size_t json_size(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) throw TabFileError(std::string("missing field '") + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
        throw TabFileError(std::string("field '") + key + "' must be a positive integer");
    return v.get<std::size_t>();
}

}  // namespace detail

inline TabFile parse_tableau_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw TabFileError(std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw TabFileError("top level must be a JSON object");

    TabFile out;
    out.n = detail::json_size(doc, "n");
    out.r = detail::json_size(doc, "r");
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw TabFileError("field 'name' must be a string");
        out.name = doc.at("name").get<std::string>();
    }

    if (doc.contains("basis") && doc.contains("relations"))
        throw TabFileError("give either 'basis' or 'relations', not both");

    if (doc.contains("basis")) {
        const auto& bs = doc.at("basis");
        if (!bs.is_array()) throw TabFileError("field 'basis' must be an array of matrices");
        std::vector<RatMat> basis;
        for (std::size_t k = 0; k < bs.size(); ++k) {
            const auto& mj = bs[k];
            std::string where = "basis[" + std::to_string(k) + "]";
            if (!mj.is_array() || mj.size() != out.r)
                throw TabFileError(where + ": expected " + std::to_string(out.r) + " rows");
            RatMat m(out.r, out.n);
            for (std::size_t a = 0; a < out.r; ++a) {
                if (!mj[a].is_array() || mj[a].size() != out.n)
                    throw TabFileError(where + ": expected " + std::to_string(out.n) +
                                       " columns per row");
                for (std::size_t i = 0; i < out.n; ++i)
                    m(a, i) = detail::json_rat(mj[a][i], where);
            }
            basis.push_back(std::move(m));
        }
        try {
            out.tableau = tableau_from_basis(out.n, out.r, std::move(basis), out.name);
        } catch (const std::exception& e) {
            throw TabFileError(std::string("basis: ") + e.what());
        }
    } else if (doc.contains("relations")) {
        const auto& rl = doc.at("relations");
        if (!rl.is_array()) throw TabFileError("field 'relations' must be an array of rows");
        RatMat rel(rl.size(), out.r * out.n);
        for (std::size_t t = 0; t < rl.size(); ++t) {
            std::string where = "relations[" + std::to_string(t) + "]";
            if (!rl[t].is_array() || rl[t].size() != out.r * out.n)
                throw TabFileError(where + ": expected r*n = " + std::to_string(out.r * out.n) +
                                   " entries");
            for (std::size_t j = 0; j < out.r * out.n; ++j)
                rel(t, j) = detail::json_rat(rl[t][j], where);
        }
        try {
            out.tableau = tableau_from_relations(out.n, out.r, rel, out.name);
        } catch (const std::exception& e) {
            throw TabFileError(std::string("relations: ") + e.what());
        }
    }

    if (doc.contains("phase_generators")) {
        const auto& pg = doc.at("phase_generators");
        if (!pg.is_array()) throw TabFileError("field 'phase_generators' must be an array");
        for (const auto& g : pg) {
            if (!g.is_string())
                throw TabFileError("phase_generators entries must be polynomial strings");
            out.phase_generators.push_back(g.get<std::string>());
        }
    }

    if (!out.tableau && out.phase_generators.empty())
        throw TabFileError("document defines neither a tableau nor phase generators");
    return out;
}

inline TabFile read_tableau_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw TabFileError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tableau_text(buf.str());
}

// Canonical rendering: two-space indent, entries as exact strings, key order
// fixed, trailing newline.  Deterministic for golden files.
inline std::string write_tableau_text(const Tableau& t) {
    nlohmann::json doc;
    if (!t.name.empty()) doc["name"] = t.name;
    doc["n"] = t.n;
    doc["r"] = t.r;
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& m : t.basis) {
        nlohmann::json mj = nlohmann::json::array();
        for (std::size_t a = 0; a < t.r; ++a) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t i = 0; i < t.n; ++i) row.push_back(rat_str(m(a, i)));
            mj.push_back(std::move(row));
        }
        bs.push_back(std::move(mj));
    }
    doc["basis"] = std::move(bs);
    return doc.dump(2) + "\n";
}

inline void write_tableau_file(const Tableau& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw TabFileError("cannot write file: " + path);
    out << write_tableau_text(t);
}

}  // namespace eds
