#include "daestruct/errors.hpp"
#include "daestruct/index.hpp"
#include "daestruct/membership.hpp"
#include "daestruct/parser.hpp"
#include "daestruct/reduce.hpp"
#include "daestruct/report.hpp"
#include "selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace daestruct;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void emit(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(outPath);
    if (!out) throw Error("cannot write " + outPath);
    out << text;
}

// CLI-side rational parsing: "3/5", "42", "0.001", "1e-10", "2.5e-3".
Rational parse_rational_flag(const std::string& text) {
    auto epos = text.find_first_of("eE");
    std::string mantissa = epos == std::string::npos ? text : text.substr(0, epos);
    long exp10 = epos == std::string::npos ? 0 : std::stol(text.substr(epos + 1));
    Rational base;
    auto dot = mantissa.find('.');
    if (dot == std::string::npos) {
        base = rational_from_string(mantissa);
    } else {
        std::string digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        base = rational_from_string(digits);
        exp10 -= static_cast<long>(mantissa.size() - dot - 1);
    }
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? Rational(base / Rational(p)) : Rational(base * Rational(p));
}

struct OracleFlags {
    std::string witnessPath;
    std::string oracleMode = "auto"; // auto: witness when a file is given
    uint64_t seed = 0;
    int trials = 3;
    int maxK = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--witness", witnessPath, "witness file (JSON, rational strings)");
        cmd->add_option("--oracle", oracleMode, "rank oracle: witness|generic")
            ->check(CLI::IsMember({"auto", "witness", "generic"}));
        cmd->add_option("--seed", seed, "seed for generic evaluation and free coordinates");
        cmd->add_option("--trials", trials, "random evaluations per generic rank");
        cmd->add_option("--max-k", maxK, "override the mu-iteration cap");
    }

    AnalyzeOptions resolve(const DAESystem& sys) const {
        AnalyzeOptions opts;
        opts.seed = seed;
        opts.trials = trials;
        opts.maxK = maxK;
        bool wantWitness = oracleMode == "witness" || (oracleMode == "auto" && !witnessPath.empty());
        if (wantWitness) {
            if (witnessPath.empty()) throw Error("--oracle witness requires --witness FILE");
            opts.witness = read_witness_json(sys, slurp(witnessPath));
        }
        return opts;
    }
};

int dispatch(int argc, char** argv) {
    CLI::App app{"structural analysis of polynomial DAE systems (exact arithmetic)"};
    app.set_help_flag("--help", "print help and exit"); // keep --h free for the step size
#ifdef DAESTRUCT_VERSION
    app.set_version_flag("--version", DAESTRUCT_VERSION);
#endif
    app.require_subcommand(1);

    std::string format = "json", outPath;

    auto* analyzeCmd = app.add_subcommand("analyze", "differentiation index, order, bounds");
    std::string analyzeFile;
    analyzeCmd->add_option("file", analyzeFile, "system file (DSL)")->required();
    OracleFlags analyzeOracle;
    analyzeOracle.attach(analyzeCmd);
    analyzeCmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    analyzeCmd->add_option("--out", outPath, "write output to a file");

    auto* jacobiCmd = app.add_subcommand("jacobi", "Jacobi numbers and a dual cover");
    std::string jacobiFile;
    jacobiCmd->add_option("file", jacobiFile, "system file (DSL)")->required();
    jacobiCmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    jacobiCmd->add_option("--out", outPath, "write output to a file");

    auto* memberCmd = app.add_subcommand("member", "membership bounds and representation search");
    std::string memberFile, memberExpr;
    bool memberFind = false;
    long memberDegCap = -1;
    memberCmd->add_option("file", memberFile, "system file (DSL)")->required();
    memberCmd->add_option("--f", memberExpr, "differential polynomial to test")->required();
    memberCmd->add_flag("--find", memberFind, "search for an explicit representation");
    memberCmd->add_option("--deg-cap", memberDegCap, "degree cap for the search (default deg f + 4)");
    OracleFlags memberOracle;
    memberOracle.attach(memberCmd);
    memberCmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
    memberCmd->add_option("--out", outPath, "write output to a file");

    auto* simulateCmd = app.add_subcommand("simulate", "Taylor-jet integration with projection");
    simulateCmd->set_help_flag("--help", "print help and exit");
    std::string simFile, simWitness, simH = "1/1000", simTol = "1e-10";
    long simSteps = 1000;
    int simJet = 4;
    uint64_t simSeed = 0;
    simulateCmd->add_option("file", simFile, "system file (DSL)")->required();
    simulateCmd->add_option("--witness", simWitness, "consistent initial point (JSON)")->required();
    simulateCmd->add_option("--h", simH, "step size (rational)");
    simulateCmd->add_option("--steps", simSteps, "number of steps");
    simulateCmd->add_option("--jet", simJet, "Taylor jet depth");
    simulateCmd->add_option("--tol", simTol, "projection tolerance (rational)");
    simulateCmd->add_option("--seed", simSeed, "seed for free coordinates");
    simulateCmd->add_option("--out", outPath, "write CSV to a file");

    auto* selftestCmd = app.add_subcommand("selftest", "run the brute-force oracle suites");
    uint64_t selftestSeed = 1;
    selftestCmd->add_option("--seed", selftestSeed, "seed for the random suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (analyzeCmd->parsed()) {
        DAESystem sys = parse_system(slurp(analyzeFile));
        IndexReport rep = analyze(sys, analyzeOracle.resolve(sys));
        emit(format == "json" ? analyze_report_json(sys, rep) : analyze_report_text(sys, rep),
             outPath);
        return 0;
    }
    if (jacobiCmd->parsed()) {
        DAESystem sys = parse_system(slurp(jacobiFile));
        sys.validate();
        emit(format == "json" ? jacobi_report_json(sys) : jacobi_report_text(sys), outPath);
        return 0;
    }
    if (memberCmd->parsed()) {
        DAESystem sys = parse_system(slurp(memberFile));
        DiffPoly f = parse_poly(sys, memberExpr);
        if (f.is_zero()) throw Error("f must be nonzero");
        AnalyzeOptions opts = memberOracle.resolve(sys);
        ProlongationCache cache(sys);
        RankOracle oracle = opts.witness
                                ? RankOracle::witness_oracle(*opts.witness, opts.policy())
                                : RankOracle::generic_oracle(opts.seed, opts.trials);
        int sigma = differentiation_index(cache, oracle, opts.maxK).sigma;
        MembershipBounds bounds = membership_bounds(sys, sigma, f);
        std::optional<Representation> rep;
        if (memberFind) {
            MembershipOptions mopts;
            mopts.degCap = memberDegCap;
            rep = find_representation(cache, f, bounds.N, mopts);
        }
        emit(format == "json" ? membership_report_json(sys, f, bounds, memberFind, rep)
                              : membership_report_text(sys, f, bounds, memberFind, rep),
             outPath);
        return 0;
    }
    if (simulateCmd->parsed()) {
        DAESystem sys = parse_system(slurp(simFile));
        sys.validate();
        Witness w = read_witness_json(sys, slurp(simWitness));
        SimulateOptions opts;
        opts.h = parse_rational_flag(simH);
        opts.steps = simSteps;
        opts.jetDepth = simJet;
        opts.projectionTol = parse_rational_flag(simTol);
        opts.seed = simSeed;
        ProlongationCache cache(sys);
        Trajectory traj = simulate(cache, w, opts);
        emit(trajectory_csv(sys, traj), outPath);
        return 0;
    }
    return run_selftest(selftestSeed);
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const daestruct::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const daestruct::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
