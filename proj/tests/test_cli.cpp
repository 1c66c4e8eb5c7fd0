// End-to-end tests of the edstab binary: gallery materialization, golden
// analysis reports, determinism, exit codes, and the moduli/eikonal
// subcommands.  The binary path arrives in EDSTAB_BIN.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "eds/gallery.hpp"
#include "eds/tabfile.hpp"

using namespace eds;

namespace {

struct CmdResult {
    int code = -1;
    std::string out;  // stdout and stderr combined
};

CmdResult run_edstab(const std::string& args) {
    const char* bin = std::getenv("EDSTAB_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult res;
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, k);
    int status = pclose(pipe);
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string golden_path(const std::string& name) {
    const char* dir = std::getenv("EDS_GOLDEN_DIR");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/edstab-cli-XXXXXX";
        char* d = mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

std::string write_text(const std::string& name, const std::string& text) {
    std::string path = scratch_dir() + "/" + name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("examples with no name lists the gallery") {
    CmdResult res = run_edstab("examples");
    CHECK(res.code == 0);
    std::string expected;
    for (const auto& name : gallery_names()) expected += name + "\n";
    CHECK(res.out == expected);
}

TEST_CASE("materialized gallery files reproduce the golden analysis reports") {
    for (const auto& name : gallery_names()) {
        std::string tab = scratch_dir() + "/" + name + ".tab";
        CmdResult mk = run_edstab("examples " + name + " --out " + tab);
        REQUIRE(mk.code == 0);
        CHECK(mk.out == tab + "\n");
        CHECK(read_file(tab) == write_tableau_text(gallery(name)));

        CmdResult an = run_edstab("analyze " + tab + " --seed 0");
        REQUIRE(an.code == 0);
        CHECK(an.out == read_file(golden_path("analyze/" + name + ".txt")));
    }
}

TEST_CASE("analyze output is byte-identical across reruns") {
    std::string tab = scratch_dir() + "/wave-rerun.tab";
    REQUIRE(run_edstab("examples wave --out " + tab).code == 0);
    CmdResult a = run_edstab("analyze " + tab);
    CmdResult b = run_edstab("analyze " + tab + " --seed 0");
    CmdResult c = run_edstab("analyze " + tab + " --seed 0");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);

    CmdResult other = run_edstab("analyze " + tab + " --seed 5");
    CHECK(other.code == 0);
    CHECK(other.out.find("seed 5") != std::string::npos);
}

TEST_CASE("analyze --out writes the report file and keeps stdout quiet") {
    std::string tab = scratch_dir() + "/hankel-out.tab";
    REQUIRE(run_edstab("examples hankel --out " + tab).code == 0);
    std::string rep = scratch_dir() + "/hankel-report.txt";
    CmdResult res = run_edstab("analyze " + tab + " --out " + rep);
    CHECK(res.code == 0);
    CHECK(res.out.empty());
    CHECK(read_file(rep) == read_file(golden_path("analyze/hankel.txt")));
}

TEST_CASE("analyze accepts the relations form of a tableau file") {
    Tableau wave = gallery("wave");
    RatMat rel = wave.relations();
    nlohmann::json doc;
    doc["n"] = wave.n;
    doc["r"] = wave.r;
    doc["name"] = "wave-by-relations";
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rel.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < rel.cols(); ++j) row.push_back(rat_str(rel(i, j)));
        rows.push_back(std::move(row));
    }
    doc["relations"] = std::move(rows);
    std::string path = write_text("wave-rel.tab", doc.dump());

    CmdResult res = run_edstab("analyze " + path);
    CHECK(res.code == 0);
    CHECK(res.out.find("characters: (3, 2, 0)") != std::string::npos);
    CHECK(res.out.find("involutive: yes") != std::string::npos);
}

TEST_CASE("a determined input gets the hyperbolicity probe section") {
    std::string text = R"({"name":"determined-demo","n":3,"r":2,"basis":[
        [["1","0","2"],["0","0","0"]],
        [["0","0","0"],["1","0","3"]],
        [["0","1","10"],["0","0","0"]],
        [["0","0","0"],["0","1","-3"]]]})";
    std::string path = write_text("determined.tab", text);
    CmdResult res = run_edstab("analyze " + path);
    CHECK(res.code == 0);
    CHECK(res.out.find("determined system; symbol-hyperbolicity probe") != std::string::npos);
    CHECK(res.out.find("probe passed") != std::string::npos);
}

TEST_CASE("moduli subcommand matches its golden output") {
    CmdResult res = run_edstab("moduli -r 3 -n 3 --chars 3,2,0 --format macaulay2");
    CHECK(res.code == 0);
    CHECK(res.out == read_file(golden_path("cli-moduli-320.txt")));

    CmdResult sing = run_edstab("moduli -r 2 -n 3 --chars 2,1,0 --format singular");
    CHECK(sing.code == 0);
    CHECK(sing.out.find("x0*x6 - x3") != std::string::npos);
    CHECK(sing.out.find("ring R = 0, (x0,x1,x2,x3,x4,x5,x6), dp;") != std::string::npos);

    CmdResult full = run_edstab("moduli -r 2 -n 2 --chars 2,2 --format singular");
    CHECK(full.code == 0);
    CHECK(full.out.find("free parameters: 0") != std::string::npos);
    CHECK(full.out.find("ideal G = 0;") != std::string::npos);
}

TEST_CASE("eikonal subcommand matches its golden output") {
    std::string path = write_text(
        "pair-probe.tab",
        R"({"name":"pair-probe","n":3,"r":1,"phase_generators":["p2 - x2*p1","p3"]})");
    CmdResult res = run_edstab("eikonal " + path + " --bound 2");
    CHECK(res.code == 0);
    CHECK(res.out == read_file(golden_path("cli-eikonal-pair.txt")));

    std::string open_path = write_text(
        "open-probe.tab",
        R"({"name":"open-probe","n":3,"r":1,"phase_generators":["p2 - x3*p1","p3"]})");
    CmdResult open = run_edstab("eikonal " + open_path);
    CHECK(open.code == 0);
    CHECK(open.out.find("not a member at this bound") != std::string::npos);
    CHECK(open.out.find("closure undecided at this bound") != std::string::npos);
}

TEST_CASE("exit code 2 covers every malformed-input path") {
    CHECK(run_edstab("analyze /nonexistent/file.tab").code == 2);
    CHECK(run_edstab("analyze " + write_text("bad.tab", "{{{")).code == 2);
    CHECK(run_edstab("analyze " + write_text("dep.tab",
                                             R"({"n":2,"r":1,"basis":[[["1","0"]],[["2","0"]]]})"))
              .code == 2);
    CHECK(run_edstab("examples no-such-entry").code == 2);
    CHECK(run_edstab("moduli -r 2 -n 3 --chars 1,2").code == 2);
    CHECK(run_edstab("moduli -r 2 -n 3 --chars 2,1,0 --format maple").code == 2);
    CHECK(run_edstab("eikonal " + write_text("nophase.tab",
                                             R"({"n":2,"r":1,"basis":[[["1","0"]]]})"))
              .code == 2);
    CHECK(run_edstab("eikonal " + write_text("badgen.tab",
                                             R"({"n":2,"r":1,"phase_generators":["p9 + 1"]})"))
              .code == 2);
    CHECK(run_edstab("analyze").code == 2);       // missing required argument
    CHECK(run_edstab("frobnicate").code == 2);    // unknown subcommand
    CHECK(run_edstab("--help").code == 0);

    CmdResult msg = run_edstab("analyze /nonexistent/file.tab");
    CHECK(msg.out.find("input stage") != std::string::npos);
}
