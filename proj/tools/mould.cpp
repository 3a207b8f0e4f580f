#include "moulds/json_io.hpp"
#include "moulds/linearizer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResonance = 2;
constexpr int kExitInvariant = 3;

moulds::Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    moulds::Json j;
    in >> j;
    return j;
}

void write_output(const moulds::Json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

struct Options {
    std::string input;
    std::string output;
    std::string decorations_path;
    int order = 0;
    std::string basis = "word";
    std::string scalar;
    std::string query;
    std::string mode = "sh";
    int max_grade = -1;
};

int run_linearize(const Options& opt) {
    moulds::SystemSpec spec = moulds::spec_from_json(read_json(opt.input));
    if (opt.order > 0) spec.order = opt.order;
    moulds::BasisMode basis =
        opt.basis == "forest" ? moulds::BasisMode::Forest : moulds::BasisMode::Word;
    if (!opt.scalar.empty() && opt.scalar != "exact")
        throw std::invalid_argument("linearize runs in exact scalar mode");
    moulds::LinearizationResult result = moulds::linearize(spec, basis);
    write_output(moulds::result_to_json(result), opt.output);
    if (!result.residual_zero()) {
        std::cerr << "error: conjugacy residual is nonzero from degree "
                  << result.residual_first_degree() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

int run_algebra(const Options& opt) {
    moulds::Json in = read_json(opt.input);
    moulds::Json out;
    out["query"] = opt.query;
    moulds::ArborMode amode =
        opt.mode == "qsh" ? moulds::ArborMode::Contracting : moulds::ArborMode::Plain;

    if (opt.query == "coproduct") {
        if (in.contains("forest"))
            out["result"] = moulds::forest_pair_comb_to_json(
                moulds::ck_coproduct(moulds::forest_from_json(in.at("forest"))));
        else if (in.contains("word"))
            out["result"] = moulds::word_pair_comb_to_json(
                moulds::deconcat(moulds::word_from_json(in.at("word"))));
        else
            throw std::invalid_argument("coproduct expects a \"forest\" or \"word\" input");
    } else if (opt.query == "arborify") {
        out["result"] = moulds::word_comb_to_json(
            moulds::arborify(moulds::forest_from_json(in.at("forest")), amode));
    } else if (opt.query == "antipode") {
        if (in.contains("word")) {
            moulds::Word w = moulds::word_from_json(in.at("word"));
            out["result"] = moulds::word_comb_to_json(
                opt.mode == "qsh" ? moulds::antipode_qsh(w) : moulds::antipode_sh(w));
        } else if (in.contains("forest")) {
            out["result"] = moulds::forest_comb_to_json(
                moulds::ck_antipode(moulds::forest_from_json(in.at("forest"))));
        } else {
            throw std::invalid_argument("antipode expects a \"forest\" or \"word\" input");
        }
    } else if (opt.query == "gl-product") {
        out["result"] = moulds::forest_comb_to_json(
            moulds::gl_product(moulds::forest_from_json(in.at("left")),
                               moulds::forest_from_json(in.at("right"))));
    } else if (opt.query == "symmetry") {
        out["result"] = {
            {"symmetry_factor",
             moulds::symmetry_factor(moulds::forest_from_json(in.at("forest"))).str()}};
    } else {
        throw std::invalid_argument("unknown algebra query: " + opt.query);
    }
    write_output(out, opt.output);
    return kExitOk;
}

int run_enumerate(const Options& opt) {
    if (opt.max_grade < 0) throw std::invalid_argument("enumerate requires --max-grade");
    std::vector<moulds::Decoration> decorations;
    for (const auto& d : read_json(opt.decorations_path))
        decorations.push_back(moulds::decoration_from_json(d));
    moulds::Json out;
    out["max_grade"] = opt.max_grade;
    moulds::Json forests = moulds::Json::array();
    for (const auto& f : moulds::enumerate_forests_by_grade(decorations, opt.max_grade)) {
        forests.push_back({{"forest", moulds::forest_to_json(f)},
                           {"grade", f.grade()},
                           {"weight", moulds::decoration_to_json(f.weight())},
                           {"ck_plus", moulds::in_ck_plus(f)}});
    }
    out["forests"] = forests;
    write_output(out, opt.output);
    return kExitOk;
}

int run_growth(const Options& opt) {
    moulds::SystemSpec spec = moulds::spec_from_json(read_json(opt.input));
    int max_grade = opt.order > 0 ? opt.order : spec.order;
    bool counting = opt.scalar != "exact"; // the slice check needs diagnostic scalars
    moulds::GrowthReport report = moulds::growth_report(spec, max_grade, counting);
    write_output(moulds::growth_to_json(report), opt.output);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mould-calculus engine: linearization of formal vector fields and "
                 "diffeomorphisms via word and tree expansions"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* lin = app.add_subcommand("linearize", "solve a linearization problem from a spec");
    lin->add_option("--input", opt.input, "spec JSON file")->required();
    lin->add_option("--output", opt.output, "result JSON file (stdout if omitted)");
    lin->add_option("--order", opt.order, "override the truncation order");
    lin->add_option("--basis", opt.basis, "word|forest")->check(CLI::IsMember({"word", "forest"}));
    lin->add_option("--scalar", opt.scalar, "exact|diag")->check(CLI::IsMember({"exact", "diag"}));

    CLI::App* alg = app.add_subcommand("algebra", "evaluate an algebraic operation");
    alg->add_option("--query", opt.query, "coproduct|arborify|antipode|gl-product|symmetry")
        ->required();
    alg->add_option("--input", opt.input, "object JSON file")->required();
    alg->add_option("--output", opt.output, "output JSON file (stdout if omitted)");
    alg->add_option("--mode", opt.mode, "sh|qsh (for arborify/antipode on words)")
        ->check(CLI::IsMember({"sh", "qsh"}));

    CLI::App* en = app.add_subcommand("enumerate", "list canonical forests up to a grade");
    en->add_option("--decorations", opt.decorations_path, "JSON array of decorations")->required();
    en->add_option("--max-grade", opt.max_grade, "grade bound")->required();
    en->add_option("--output", opt.output, "output JSON file (stdout if omitted)");

    CLI::App* gr = app.add_subcommand("growth", "growth diagnostics over CK+ forests");
    gr->add_option("--input", opt.input, "spec JSON file")->required();
    gr->add_option("--order", opt.order, "grade bound (defaults to the order in the input file)");
    gr->add_option("--output", opt.output, "output JSON file (stdout if omitted)");
    gr->add_option("--scalar", opt.scalar, "exact|diag")->check(CLI::IsMember({"exact", "diag"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (lin->parsed()) return run_linearize(opt);
        if (alg->parsed()) return run_algebra(opt);
        if (en->parsed()) return run_enumerate(opt);
        if (gr->parsed()) return run_growth(opt);
        return kExitUsage;
    } catch (const moulds::resonance_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResonance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
