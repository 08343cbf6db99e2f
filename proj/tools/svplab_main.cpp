// Command line front end: gen / solve / exponents / bench / fit.
// Exit codes: 0 success, 1 bad parameters or input, 2 runtime failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "svplab/enumeration.hpp"
#include "svplab/experiment.hpp"
#include "svplab/exponents.hpp"
#include "svplab/lattice.hpp"

namespace {

const char* modelKey(svplab::ComplexityModel m) {
    switch (m) {
        case svplab::ComplexityModel::classical: return "classical";
        case svplab::ComplexityModel::quantum: return "quantum";
        default: return "parallel";
    }
}

svplab::ComplexityModel parseModel(const std::string& name) {
    if (name == "classical") return svplab::ComplexityModel::classical;
    if (name == "quantum") return svplab::ComplexityModel::quantum;
    if (name == "parallel") return svplab::ComplexityModel::quantumParallel;
    throw std::invalid_argument("unknown model: " + name + " (want classical|quantum|parallel)");
}

void printReportText(const svplab::ExponentReport& rep) {
    std::printf("model      %s\n", modelKey(rep.model));
    if (rep.xi) std::printf("xi         %.10g\n", *rep.xi);
    if (rep.bigR) std::printf("R          %.10g\n", *rep.bigR);
    std::printf("time exp   %.6f   (runtime ~ 2^(%.4f n))\n", rep.timeExp, rep.timeExp);
    std::printf("space exp  %.6f   (memory  ~ 2^(%.4f n))\n", rep.spaceExp, rep.spaceExp);
    for (const auto& c : rep.components)
        std::printf("  term %-22s %.6f\n", c.label.c_str(), c.value);
    if (rep.altTimeExp)
        std::printf("time exp, pair-radius c_t  %.6f\n", *rep.altTimeExp);
    if (!rep.note.empty()) std::printf("note: %s\n", rep.note.c_str());
}

void printReportCsv(const svplab::ExponentReport& rep) {
    std::printf("model,xi,bigr,time_exp,space_exp,alt_time_exp\n");
    std::printf("%s,", modelKey(rep.model));
    if (rep.xi) std::printf("%.10g,", *rep.xi); else std::printf(",");
    if (rep.bigR) std::printf("%.10g,", *rep.bigR); else std::printf(",");
    std::printf("%.10g,%.10g,", rep.timeExp, rep.spaceExp);
    if (rep.altTimeExp) std::printf("%.10g", *rep.altTimeExp);
    std::printf("\n");
}

void printVector(const char* label, const svplab::LatticeVector& v) {
    std::printf("%s [", label);
    for (std::size_t i = 0; i < v.cart.size(); ++i)
        std::printf("%s%lld", i ? " " : "", static_cast<long long>(std::llround(v.cart[i])));
    std::printf("]\n");
}

int runGen(int dim, int bits, std::uint64_t seed, const std::string& outPath) {
    svplab::LatticeBasis basis = svplab::genLattice(dim, bits, seed);
    svplab::writeBasisFile(outPath, basis);
    std::printf("wrote basis n=%d bits=%d seed=%llu -> %s\n", dim, bits,
                static_cast<unsigned long long>(seed), outPath.c_str());
    return 0;
}

int runSolve(const std::string& algoName, const std::string& engineToken,
             const std::string& basisPath, const svplab::AlgoParams& params,
             std::uint64_t seed) {
    svplab::Algo algo = svplab::parseAlgo(algoName);
    svplab::EngineMode mode = svplab::parseEngine(engineToken);
    svplab::LatticeBasis input = svplab::readBasisFile(basisPath);
    svplab::LatticeBasis reduced = svplab::lllReduce(input);

    std::optional<double> oracle;
    if (algo == svplab::Algo::ps && input.dim() <= 45) {
        oracle = static_cast<double>(svplab::enumerateShortest(reduced).shortest.normSqInt);
    }

    auto t0 = std::chrono::steady_clock::now();
    svplab::SolveOutcome out = svplab::solveOnBasis(reduced, algo, mode, params, seed, oracle);
    double wallMs =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::printf("n=%d algo=%s engine=%s seed=%llu\n", input.dim(), svplab::algoName(algo).c_str(),
                svplab::engineName(mode).c_str(), static_cast<unsigned long long>(seed));
    if (out.shortest) {
        std::printf("found_norm_sq=%.17g\n", out.shortest->normSq);
        printVector("vector", *out.shortest);
    } else {
        std::printf("no collision found this run (rerun with another seed)\n");
    }
    if (oracle) std::printf("lambda1_sq=%.17g\n", *oracle);
    if (out.truncated) std::printf("truncated=true (round cap hit)\n");
    std::printf("charged_queries=%llu predicate_evals=%llu search_invocations=%llu wall_ms=%.3f\n",
                static_cast<unsigned long long>(out.ledger.chargedQueries),
                static_cast<unsigned long long>(out.ledger.predicateEvals),
                static_cast<unsigned long long>(out.ledger.invocations), wallMs);
    return 0;
}

int runExponents(const std::string& modelToken, std::optional<double> xi,
                 std::optional<double> bigR, bool optimize, bool table1, bool csv) {
    if (table1 && !optimize && !xi && !bigR) {
        std::fputs(svplab::table1Report().c_str(), stdout);
        return 0;
    }
    svplab::ComplexityModel model = parseModel(modelToken);
    if (optimize && (xi || bigR))
        throw std::invalid_argument("--optimize conflicts with --xi/--bigr");
    if (xi.has_value() != bigR.has_value())
        throw std::invalid_argument("--xi and --bigr must be given together");

    svplab::ExponentReport rep;
    if (optimize) {
        svplab::OptimizeResult best = svplab::optimizeExponents(model);
        rep = best.report;
        if (!csv) std::printf("optimum at xi=%.6f R=%.6f\n", best.xi, best.bigR);
    } else if (xi) {
        rep = svplab::psExponents(*xi, *bigR, model);
    } else {
        throw std::invalid_argument("need --xi X --bigr R, --optimize, or --table1");
    }
    if (csv) printReportCsv(rep); else printReportText(rep);
    if (table1) std::fputs(svplab::table1Report().c_str(), stdout);
    return 0;
}

int runBench(const std::string& configPath, const std::string& outPath) {
    svplab::ExperimentConfig config = svplab::parseConfigFile(configPath);
    config.outputPath = outPath;
    std::vector<svplab::RunRecord> records = svplab::runExperiment(config);
    std::size_t ok = 0;
    for (const auto& r : records) ok += r.success ? 1 : 0;
    std::printf("wrote %zu records (%zu successes) -> %s\n", records.size(), ok, outPath.c_str());
    return 0;
}

int runFit(const std::string& inPath, const std::string& algoToken,
           const std::string& engineToken) {
    svplab::Algo algo = svplab::parseAlgo(algoToken);
    svplab::EngineMode mode = svplab::parseEngine(engineToken);
    svplab::FitResult fit = svplab::fitExponentCsv(inPath, algo, mode);
    std::printf("algo=%s engine=%s\n", svplab::algoName(algo).c_str(),
                svplab::engineName(mode).c_str());
    std::printf("slope=%.6f intercept=%.6f r2=%.6f\n", fit.slope, fit.intercept, fit.r2);
    std::printf("charged_queries ~ 2^(%.4f n + %.4f)\n", fit.slope, fit.intercept);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice shortest-vector laboratory"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate a random integer basis");
    int genDim = 0, genBits = 10;
    std::uint64_t genSeed = 1;
    std::string genOut;
    gen->add_option("--dim", genDim, "lattice dimension")->required();
    gen->add_option("--bits", genBits, "modulus bit size");
    gen->add_option("--seed", genSeed, "rng seed");
    gen->add_option("--out", genOut, "output basis path")->required();

    auto* solve = app.add_subcommand("solve", "run one solver on a basis file");
    std::string solveAlgo, solveEngine = "classical", solveBasis;
    svplab::AlgoParams solveParams;
    std::uint64_t solveSeed = 1;
    solve->add_option("--algo", solveAlgo, "nv|ps|gauss|enum")->required();
    solve->add_option("--engine", solveEngine, "classical|qcost");
    solve->add_option("--basis", solveBasis, "basis file path")->required();
    solve->add_option("--gamma", solveParams.gamma, "nv shrink factor");
    solve->add_option("--nv-mult", solveParams.nvMult, "nv list size multiplier");
    solve->add_option("--xi", solveParams.xi, "ps perturbation radius factor");
    solve->add_option("--bigr", solveParams.bigR, "ps dummy norm floor factor");
    solve->add_option("--mu-factor", solveParams.muFactor, "ps target mu / lambda1");
    solve->add_option("--collisions", solveParams.collisions, "gauss collision target");
    solve->add_option("--seed", solveSeed, "rng seed");

    auto* expo = app.add_subcommand("exponents", "leading-order complexity exponents");
    std::string expModel = "classical";
    std::optional<double> expXi, expBigR;
    bool expOptimize = false, expTable = false, expCsv = false;
    expo->add_option("--model", expModel, "classical|quantum|parallel");
    expo->add_option("--xi", expXi, "perturbation radius factor");
    expo->add_option("--bigr", expBigR, "dummy norm floor factor");
    expo->add_flag("--optimize", expOptimize, "minimize the time exponent over (xi, R)");
    expo->add_flag("--table1", expTable, "print the cross-algorithm constant table");
    expo->add_flag("--csv", expCsv, "machine-readable output");

    auto* bench = app.add_subcommand("bench", "batch runs from a config file");
    std::string benchConfig, benchOut;
    bench->add_option("--config", benchConfig, "key=value config path")->required();
    bench->add_option("--out", benchOut, "output csv path")->required();

    auto* fit = app.add_subcommand("fit", "fit log2(charged queries) against n");
    std::string fitIn, fitAlgo, fitEngine;
    fit->add_option("--in", fitIn, "input csv path")->required();
    fit->add_option("--algo", fitAlgo, "nv|ps|gauss|enum")->required();
    fit->add_option("--engine", fitEngine, "classical|qcost")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) return runGen(genDim, genBits, genSeed, genOut);
        if (solve->parsed()) return runSolve(solveAlgo, solveEngine, solveBasis, solveParams, solveSeed);
        if (expo->parsed()) return runExponents(expModel, expXi, expBigR, expOptimize, expTable, expCsv);
        if (bench->parsed()) return runBench(benchConfig, benchOut);
        if (fit->parsed()) return runFit(fitIn, fitAlgo, fitEngine);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
