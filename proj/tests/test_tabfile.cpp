// Tableau file format: round-trips, the relations form, phase generators,
// and rejection of malformed documents.

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "eds/gallery.hpp"
#include "eds/prolong.hpp"
#include "eds/tabfile.hpp"

using namespace eds;

TEST_CASE("every gallery entry round-trips through the file format") {
    for (const auto& name : gallery_names()) {
        Tableau t = gallery(name);
        TabFile tf = parse_tableau_text(write_tableau_text(t));
        REQUIRE(tf.tableau.has_value());
        CHECK(tf.name == name);
        CHECK(tf.n == t.n);
        CHECK(tf.r == t.r);
        REQUIRE(tf.tableau->dim() == t.dim());
        for (std::size_t k = 0; k < t.dim(); ++k) CHECK(tf.tableau->basis[k] == t.basis[k]);
    }
}

TEST_CASE("a relations document cuts out the same subspace") {
    Tableau t = gallery("wave");
    RatMat rel = t.relations();
    nlohmann::json doc;
    doc["n"] = t.n;
    doc["r"] = t.r;
    doc["name"] = "wave-by-relations";
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rel.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < rel.cols(); ++j) row.push_back(rat_str(rel(i, j)));
        rows.push_back(std::move(row));
    }
    doc["relations"] = std::move(rows);

    TabFile tf = parse_tableau_text(doc.dump());
    REQUIRE(tf.tableau.has_value());
    CHECK(tf.tableau->dim() == t.dim());
    for (const auto& m : t.basis) CHECK(coords_in_tableau(*tf.tableau, m).has_value());
    for (const auto& m : tf.tableau->basis) CHECK(coords_in_tableau(t, m).has_value());
}

TEST_CASE("rational entries accept exact strings and plain integers") {
    TabFile tf = parse_tableau_text(R"({"n":2,"r":1,"basis":[[["2/3",-5]]]})");
    REQUIRE(tf.tableau.has_value());
    CHECK(tf.tableau->basis[0](0, 0) == Rat(2, 3));
    CHECK(tf.tableau->basis[0](0, 1) == Rat(-5));
}

TEST_CASE("phase generators are carried verbatim") {
    TabFile tf = parse_tableau_text(
        R"({"name":"probe","n":3,"r":1,"phase_generators":["p2 - x2*p1","p3"]})");
    CHECK_FALSE(tf.tableau.has_value());
    CHECK(tf.name == "probe");
    REQUIRE(tf.phase_generators.size() == 2);
    CHECK(tf.phase_generators[0] == "p2 - x2*p1");
    CHECK(tf.phase_generators[1] == "p3");
}

TEST_CASE("malformed documents are rejected with the offending field named") {
    auto rejects = [](const std::string& text, const std::string& needle) {
        try {
            parse_tableau_text(text);
            FAIL("expected TabFileError for: " << text);
        } catch (const TabFileError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    rejects("not json at all", "not valid JSON");
    rejects("[1,2,3]", "object");
    rejects(R"({"r":2,"basis":[]})", "'n'");
    rejects(R"({"n":0,"r":2,"basis":[]})", "'n'");
    rejects(R"({"n":2,"r":1,"basis":[[["1","0"]],["bad-shape"]]})", "basis[1]");
    rejects(R"({"n":2,"r":1,"basis":[[["1","1/0"]]]})", "basis[0]");
    rejects(R"({"n":2,"r":1,"basis":[[["1","x"]]]})", "basis[0]");
    rejects(R"({"n":2,"r":1,"basis":[], "relations":[]})", "not both");
    rejects(R"({"n":2,"r":1})", "neither");
    rejects(R"({"n":2,"r":1,"relations":[["1","0","0"]]})", "relations[0]");
    rejects(R"({"n":2,"r":1,"phase_generators":[7]})", "phase_generators");
    rejects(R"({"n":2,"r":1,"name":7,"basis":[]})", "'name'");
    // Linearly dependent basis matrices.
    rejects(R"({"n":2,"r":1,"basis":[[["1","0"]],[["2","0"]]]})", "basis");
}
