#include "relip/problem.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace relip;

int main(int argc, char** argv) {
    CLI::App app{"Exact desk-scale analysis of piecewise-linear set-valued "
                 "mappings: tangent and normal cones, dual graphs, relative "
                 "Lipschitz stability, and calculus-rule verification"};
    app.require_subcommand(1);

    std::string problemPath;
    std::string epsArg, deltaArg, gridArg, nuArg, kappaArg, gammaArg;
    std::string variant = "mixed";
    std::string jsonOut;
    long budget = 0;
    int dimCap = 0;
    bool jsonFlag = false, timingFlag = false;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("problem", problemPath, "problem file (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--eps", epsArg, "relaxation parameter (rational)")
            ->envname("RELIP_EPS");
        cmd->add_option("--delta", deltaArg, "neighborhood radius (rational)")
            ->envname("RELIP_DELTA");
        cmd->add_option("--grid", gridArg, "grid step (rational)")
            ->envname("RELIP_GRID");
        cmd->add_option("--nu", nuArg, "intersection-rule tolerance")
            ->envname("RELIP_NU");
        cmd->add_option("--kappa", kappaArg, "dual bound constant")
            ->envname("RELIP_KAPPA");
        cmd->add_option("--gamma", gammaArg, "relaxed-cone parameter")
            ->envname("RELIP_GAMMA");
        cmd->add_option("--budget", budget, "enumeration budget")
            ->envname("RELIP_BUDGET");
        cmd->add_option("--dim-cap", dimCap,
                        "dimension cap for representation conversion")
            ->envname("RELIP_DIM_CAP");
        cmd->add_flag("--json", jsonFlag, "machine-readable output");
        cmd->add_option("--json-out", jsonOut, "also write the JSON report "
                                               "to a file");
        cmd->add_flag("--timing", timingFlag,
                      "append wall-clock timing (breaks byte-identical "
                      "reports)");
    };

    CLI::App* cone = app.add_subcommand(
        "cone", "tangent and normal structure at the reference pair");
    CLI::App* coder = app.add_subcommand(
        "coderivative", "limiting dual graphs and their norm");
    CLI::App* lip = app.add_subcommand(
        "lipschitz", "grid oracle, criteria, and exact bound chain");
    CLI::App* vchain = app.add_subcommand(
        "verify-chain", "composition rule verdict for S2 after S1");
    vchain->add_option("--variant", variant, "mixed | normal | strict")
        ->check(CLI::IsMember({"mixed", "normal", "strict"}));
    CLI::App* vsum = app.add_subcommand(
        "verify-sum", "sum rule verdict for S1 + S2");
    vsum->add_option("--variant", variant, "mixed | normal")
        ->check(CLI::IsMember({"mixed", "normal"}));
    CLI::App* extremal = app.add_subcommand(
        "extremal", "separation detection and witness covectors");
    CLI::App* fuzzy = app.add_subcommand(
        "fuzzy", "intersection-rule witness for a relaxed normal");
    for (CLI::App* cmd : {cone, coder, lip, vchain, vsum, extremal, fuzzy})
        addCommon(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        ProblemFile problem = loadProblem(problemPath);
        RunFlags flags;
        if (!epsArg.empty()) flags.eps = parseRational(epsArg);
        if (!deltaArg.empty()) flags.delta = parseRational(deltaArg);
        if (!gridArg.empty()) flags.grid = parseRational(gridArg);
        if (!nuArg.empty()) flags.nu = parseRational(nuArg);
        if (!kappaArg.empty()) flags.kappa = parseRational(kappaArg);
        if (!gammaArg.empty()) flags.gamma = parseRational(gammaArg);
        if (budget > 0) flags.budget = budget;
        if (dimCap > 0) flags.dimCap = dimCap;
        flags.variant = variant;
        flags.json = jsonFlag;
        flags.timing = timingFlag;

        std::string command = app.get_subcommands().front()->get_name();
        AnalysisReport rep = runCommand(command, problem, flags);
        std::cout << (flags.json ? rep.renderJson() : rep.renderHuman());
        if (!jsonOut.empty()) {
            std::ofstream out(jsonOut);
            out << rep.renderJson();
        }
        return rep.exitCode;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
