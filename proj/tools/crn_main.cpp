#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crncert/report.hpp"

namespace {

using namespace crncert;

// exit codes
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kParse = 2;
constexpr int kConstruction = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Network load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

std::optional<KineticsClass> kinetics_from_key(const std::string& key) {
    for (KineticsClass k : {KineticsClass::GK, KineticsClass::WGK, KineticsClass::GKPlus, KineticsClass::MassAction,
                            KineticsClass::PhysicalPowerLaw})
        if (to_string(k) == key) return k;
    return std::nullopt;
}

int cmd_analyze(const std::string& file, const std::vector<std::string>& kinetics, bool as_json, bool witnesses) {
    Network net = load_network(file);
    AnalyzeOptions opt;
    for (const std::string& key : kinetics) {
        auto k = kinetics_from_key(key);
        if (!k) throw UsageError("unknown kinetics class: " + key);
        opt.kinetics.push_back(*k);
    }
    opt.witnesses = witnesses;
    AnalysisReport rep = analyze(net, opt);
    std::cout << (as_json ? render_json(rep) : render_text(rep));
    return kOk;
}

int cmd_dsr(const std::string& file, const std::string& mode, const std::string& dot_out) {
    Network net = load_network(file);
    if (mode != "single" && mode != "pairs") throw UsageError("unknown dsr mode: " + mode);
    DSRGraph g = dsr_graph(net, mode == "single" ? DSRMode::ReversibleAsSingle : DSRMode::ReversibleAsPairs);
    if (!dot_out.empty()) {
        std::ofstream out(dot_out);
        if (!out) throw UsageError("cannot write file: " + dot_out);
        out << export_dot(g);
    }
    StarVerdict v = condition_star(g);
    auto cycles = enumerate_cycles(g);
    int e_cycles = 0;
    for (const DSRCycle& c : cycles)
        if (is_e_cycle(g, c)) ++e_cycles;
    std::cout << "vertices: " << g.species_names.size() << " species + " << g.n_reactions << " reactions; edges: "
              << g.edges.size() << "\n";
    std::cout << "cycles: " << cycles.size() << " (" << e_cycles << " e-cycles)\n";
    std::cout << "condition (*): " << (v.satisfied ? "satisfied" : "violated") << "\n";
    return kOk;
}

int cmd_siphons(const std::string& file) {
    Network net = load_network(file);
    auto siphons = minimal_siphons(net);
    if (siphons.empty()) {
        std::cout << "no siphons\n";
    }
    for (const Siphon& s : siphons) {
        std::cout << "{";
        for (size_t i = 0; i < s.species.size(); ++i)
            std::cout << (i ? ", " : "") << net.species[s.species[i]];
        std::cout << "}: " << (s.critical ? "critical" : "non-critical");
        if (s.psemiflow) {
            std::cout << " (conserved combination:";
            for (size_t i = 0; i < s.psemiflow->size(); ++i)
                if ((*s.psemiflow)[i] != 0)
                    std::cout << " " << to_string((*s.psemiflow)[i]) << "*" << net.species[i];
            std::cout << ")";
        }
        std::cout << "\n";
    }
    PersistenceFlags pf = persistence_flags(net);
    std::cout << "PC1: " << (pf.pc1 ? "yes" : "no") << "; PC2: " << (pf.pc2 ? "yes" : "no") << "\n";
    return kOk;
}

int cmd_matrices(const std::string& file) {
    Network net = load_network(file);
    StoichTriple st = stoichiometric_matrices(net);
    StoichTriple ste = stoichiometric_matrices(irreversible_expansion(net));
    std::cout << "stoichiometric matrix:\n" << to_string(st.gamma);
    std::cout << "reactant matrix:\n" << to_string(st.gamma_left);
    std::cout << "product matrix:\n" << to_string(st.gamma_right);
    std::cout << "expansion stoichiometric matrix:\n" << to_string(ste.gamma);
    SignPatternMatrix p = rate_pattern(net);
    std::cout << "rate derivative pattern (reactions x species):\n";
    for (int j = 0; j < p.rows(); ++j) {
        for (int i = 0; i < p.cols(); ++i) {
            char c = '0';
            if (p.at(j, i) == SignEntry::POS) c = '+';
            else if (p.at(j, i) == SignEntry::NEG) c = '-';
            else if (p.at(j, i) == SignEntry::ANY) c = '?';
            std::cout << c << (i + 1 < p.cols() ? ' ' : '\n');
        }
    }
    return kOk;
}

int cmd_witness(const std::string& file, const std::string& type, unsigned seed, int budget) {
    Network net = load_network(file);
    StoichTriple ste = stoichiometric_matrices(irreversible_expansion(net));
    if (type == "collision") {
        auto w = collision_witness(net, ste.gamma_left, 1e-9, seed);
        if (!w) {
            std::cout << "no collision possible: minor products are single-signed\n";
            return kOk;
        }
        std::cout << "collision witness, residual " << w->residual << ", class offset " << w->class_offset << "\n";
        return kOk;
    }
    if (type == "class-mpe") {
        auto w = class_multistationarity_witness(net, 1e-9, seed);
        if (!w) {
            std::cout << "preconditions not met (network concordant or no positive equilibria)\n";
            return kOk;
        }
        std::cout << "equilibria pair witness, residuals " << w->residual_x << ", " << w->residual_y
                  << ", class offset " << w->class_offset << "\n";
        return kOk;
    }
    if (type == "open-mpe") {
        auto cert = strong_incompatibility_search(net, ste.gamma_left, budget, seed);
        if (!cert) {
            std::cerr << "no incompatibility certificate found within budget\n";
            return kConstruction;
        }
        OpenSystemWitness w = open_multistationarity_witness(net, *cert, ste.gamma_left);
        std::cout << "open-system equilibria pair witness, residuals " << w.residual_x << ", " << w.residual_y
                  << "\n";
        return kOk;
    }
    throw UsageError("unknown witness type: " + type);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural injectivity and multistationarity analysis of reaction networks"};
    app.require_subcommand(1);

    std::string file, mode = "single", dot_out, wtype;
    std::vector<std::string> kinetics;
    bool as_json = false, witnesses = false;
    unsigned seed = 1;
    int budget = 10000;

    auto* analyze_cmd = app.add_subcommand("analyze", "full structural report");
    analyze_cmd->add_option("file", file)->required();
    analyze_cmd->add_option("--kinetics", kinetics, "restrict kinetics classes");
    analyze_cmd->add_flag("--json", as_json, "structured output");
    analyze_cmd->add_flag("--witnesses", witnesses, "attach witness attempts");

    auto* dsr_cmd = app.add_subcommand("dsr", "species-reaction graph and Condition (*)");
    dsr_cmd->add_option("file", file)->required();
    dsr_cmd->add_option("--mode", mode, "single|pairs");
    dsr_cmd->add_option("--dot", dot_out, "write DOT file");

    auto* siphons_cmd = app.add_subcommand("siphons", "minimal siphons and persistence flags");
    siphons_cmd->add_option("file", file)->required();

    auto* matrices_cmd = app.add_subcommand("matrices", "dump stoichiometric matrices and rate pattern");
    matrices_cmd->add_option("file", file)->required();

    auto* witness_cmd = app.add_subcommand("witness", "construct a counterexample");
    witness_cmd->add_option("file", file)->required();
    witness_cmd->add_option("--type", wtype, "collision|class-mpe|open-mpe")->required();
    witness_cmd->add_option("--seed", seed);
    witness_cmd->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(file, kinetics, as_json, witnesses);
        if (dsr_cmd->parsed()) return cmd_dsr(file, mode, dot_out);
        if (siphons_cmd->parsed()) return cmd_siphons(file);
        if (matrices_cmd->parsed()) return cmd_matrices(file);
        if (witness_cmd->parsed()) return cmd_witness(file, wtype, seed, budget);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const ConstructionFailed& e) {
        std::cerr << "construction failed: " << e.what() << "\n";
        return kConstruction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
