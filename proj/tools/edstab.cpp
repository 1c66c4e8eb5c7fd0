// edstab: exact analysis of tableaux of exterior differential systems.
//
// Subcommands:
//   analyze <file>     full report (characters, involutivity, prolongation,
//                      Spencer dims, ideals, characteristic scheme, sheets)
//   moduli             parametric endovolutive family and its involutivity
//                      ideal, exported for a computer-algebra system
//   examples [name]    list the bundled gallery or materialize one entry
//   eikonal <file>     Poisson-bracket closure probe for phase generators
//
// Exit codes: 0 success, 2 malformed input, 3 internal inconsistency.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eds/analyze.hpp"
#include "eds/eikonal.hpp"
#include "eds/gallery.hpp"
#include "eds/moduli.hpp"
#include "eds/tabfile.hpp"

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) throw eds::TabFileError("cannot write file: " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact involutivity and characteristic-variety analysis of tableaux"};
    app.require_subcommand(1);

    std::string path, out_path, format = "macaulay2", example_name;
    std::uint64_t seed = 0;
    std::size_t rows = 0, cols = 0, bound = 3;
    std::vector<std::size_t> chars;

    CLI::App* analyze = app.add_subcommand("analyze", "full analysis report for a tableau file");
    analyze->add_option("path", path, "tableau file")->required();
    analyze->add_option("--seed", seed, "seed for genericity sampling (default 0)");
    analyze->add_option("--out", out_path, "write the report to this file instead of stdout");

    CLI::App* moduli =
        app.add_subcommand("moduli", "parametric endovolutive family and involutivity ideal");
    moduli->add_option("-r", rows, "rows (dim W)")->required();
    moduli->add_option("-n", cols, "columns (dim V)")->required();
    moduli->add_option("--chars", chars, "Cartan characters, e.g. 3,2,0")
        ->required()
        ->delimiter(',');
    moduli->add_option("--format", format, "singular | macaulay2 | sage-text (default macaulay2)");
    moduli->add_option("--out", out_path, "write the output to this file instead of stdout");

    CLI::App* examples =
        app.add_subcommand("examples", "list the example gallery or materialize one entry");
    examples->add_option("name", example_name, "gallery entry to write as a tableau file");
    examples->add_option("--out", out_path, "output path (default <name>.tab)");

    CLI::App* eikonal =
        app.add_subcommand("eikonal", "pairwise Poisson-bracket closure probe");
    eikonal->add_option("path", path, "file with a phase_generators field")->required();
    eikonal->add_option("--bound", bound, "max degree of the coefficient polynomials (default 3)");
    eikonal->add_option("--out", out_path, "write the report to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) {
            eds::TabFile tf = eds::read_tableau_file(path);
            if (!tf.tableau)
                throw eds::TabFileError("file defines no tableau (only phase generators)");
            emit(eds::analysis_report(*tf.tableau, seed), out_path);
        } else if (*moduli) {
            eds::ParametricTableau pt = eds::parametric_endovolutive(rows, cols, chars);
            eds::ModuliIdeal ideal = eds::involutivity_ideal(pt);
            std::ostringstream os;
            os << eds::block_display(pt);
            os << "involutivity ideal (" << ideal.generators.size() << " generator"
               << (ideal.generators.size() == 1 ? "" : "s") << "), " << format << " form:\n";
            os << eds::export_ideal(ideal, format);
            emit(os.str(), out_path);
        } else if (*examples) {
            if (example_name.empty()) {
                std::ostringstream os;
                for (const auto& name : eds::gallery_names()) os << name << "\n";
                emit(os.str(), out_path);
            } else {
                eds::Tableau t = eds::gallery(example_name);
                std::string dest = out_path.empty() ? example_name + ".tab" : out_path;
                eds::write_tableau_file(t, dest);
                std::cout << dest << "\n";
            }
        } else if (*eikonal) {
            eds::TabFile tf = eds::read_tableau_file(path);
            if (tf.phase_generators.empty())
                throw eds::TabFileError("file has no phase_generators field");
            eds::VarTablePtr vars = eds::phase_vars(tf.n);
            std::vector<eds::MPoly> gens;
            for (const auto& text : tf.phase_generators) {
                try {
                    gens.push_back(eds::parse_poly(text, vars));
                } catch (const std::exception& e) {
                    throw eds::TabFileError("phase generator '" + text + "': " + e.what());
                }
            }
            std::ostringstream os;
            os << "== eikonal closure probe: " << (tf.name.empty() ? "(unnamed)" : tf.name)
               << " ==\n";
            os << "n = " << tf.n << ", generators = " << gens.size() << "\n";
            os << eds::closure_probe(gens, bound).str();
            emit(os.str(), out_path);
        }
        return 0;
    } catch (const eds::TabFileError& e) {
        std::cerr << "error (input stage): " << e.what() << "\n";
        return 2;
    } catch (const eds::InternalInconsistency& e) {
        std::cerr << "error (internal inconsistency): " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (input stage): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error (analysis stage): " << e.what() << "\n";
        return 3;
    }
}
