#include "svplab/exponents.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "svplab/ps_saturation.hpp"

namespace svplab {

namespace {

double ctVariant(double xi, double bigR) {
    return 0.5 * std::log2(bigR / (bigR - 2.0 * xi)) + 0.401;
}

double timeFromTerms(double cb, double ct, double cg, ComplexityModel model,
                     std::vector<ExponentComponent>* components) {
    std::vector<ExponentComponent> terms;
    switch (model) {
    case ComplexityModel::classical:
        terms = {{"c_g + 2 c_t", cg + 2.0 * ct},
                 {"c_g + c_b/2 + c_t", cg + cb / 2.0 + ct},
                 {"2 c_g + c_b", 2.0 * cg + cb}};
        break;
    case ComplexityModel::quantum:
        terms = {{"c_g + 3 c_t/2", cg + 1.5 * ct},
                 {"c_g + c_b/2 + c_t/2", cg + cb / 2.0 + ct / 2.0},
                 {"c_g + c_b/2", cg + cb / 2.0}};
        break;
    case ComplexityModel::quantumParallel:
        terms = {{"c_g + 3 c_t/2", cg + 1.5 * ct}, {"c_g + c_b/2", cg + cb / 2.0}};
        break;
    }
    double t = terms.front().value;
    for (const auto& x : terms) t = std::max(t, x.value);
    if (components) *components = std::move(terms);
    return t;
}

constexpr double kEps = 1e-12;

} // namespace

ExponentReport nvExponent(double gamma, ComplexityModel model) {
    if (model == ComplexityModel::quantumParallel)
        throw std::invalid_argument("no parallel variant for the sieve exponents");
    if (!(gamma > 2.0 / 3.0 && gamma <= 1.0)) throw std::invalid_argument("gamma outside (2/3, 1]");
    const double ch = -std::log2(gamma) - 0.5 * std::log2(1.0 - gamma * gamma / 4.0);
    ExponentReport r;
    r.model = model;
    r.spaceExp = ch;
    r.timeExp = model == ComplexityModel::classical ? 2.0 * ch : 1.5 * ch;
    r.components = {{"c_h", ch}};
    return r;
}

ExponentReport psExponents(double xi, double bigR, ComplexityModel model) {
    const SatConstants c = deriveSatConstants(xi, bigR);
    ExponentReport r;
    r.model = model;
    r.xi = xi;
    r.bigR = bigR;
    r.timeExp = timeFromTerms(c.cb, c.ct, c.cg, model, &r.components);
    r.spaceExp = std::max(c.ct, c.cg + c.cb / 2.0);
    r.altTimeExp = timeFromTerms(c.cb, ctVariant(xi, bigR), c.cg, model, nullptr);
    if (model == ComplexityModel::quantum) {
        char buf[256];
        std::snprintf(buf, sizeof(buf),
                      "time uses c_t = 1/2 log2(1 + xi/(R-2xi)) + 0.401; the pair-radius variant "
                      "c_t = 1/2 log2(R/(R-2xi)) + 0.401 gives %.4f here and is the objective "
                      "optimizeExponents minimizes (altTimeExp).",
                      *r.altTimeExp);
        r.note = buf;
    }
    return r;
}

namespace {

double objectiveValue(double xi, double bigR, ComplexityModel model, ExponentObjective objective) {
    const SatConstants c = deriveSatConstants(xi, bigR);
    if (objective == ExponentObjective::space) return std::max(c.ct, c.cg + c.cb / 2.0);
    return timeFromTerms(c.cb, ctVariant(xi, bigR), c.cg, model, nullptr);
}

// Monotone-in-R lower bound on the time objective (a c_t-free max-term),
// used to cut the R scan; for space, c_g + c_b/2 is such a bound too.
double rMonotoneBound(double cg, double cb, ComplexityModel model, ExponentObjective objective) {
    if (objective == ExponentObjective::space) return cg + cb / 2.0;
    return model == ComplexityModel::classical ? 2.0 * cg + cb : cg + cb / 2.0;
}

} // namespace

OptimizeResult optimizeExponents(ComplexityModel model, ExponentObjective objective) {
    constexpr double kStep = 1e-3;
    double bestXi = 1.0, bestR = 3.5;
    double best = objectiveValue(bestXi, bestR, model, objective);

    for (int i = 1; 0.5 + i * kStep <= 4.0 + kEps; ++i) {
        const double xi = 0.5 + i * kStep;
        const double cg = 0.5 * std::log2(4.0 * xi * xi / (4.0 * xi * xi - 1.0));
        // Cheapest value this column could reach, at R just above 2 xi.
        if (rMonotoneBound(cg, std::log2(2.0 * xi + kStep) + 0.401, model, objective) >= best)
            continue;
        for (int j = 1; 2.0 * xi + j * kStep <= 12.0 + kEps; ++j) {
            const double r = 2.0 * xi + j * kStep;
            if (rMonotoneBound(cg, std::log2(r) + 0.401, model, objective) >= best) break;
            const double v = objectiveValue(xi, r, model, objective);
            if (v < best) {
                best = v;
                bestXi = xi;
                bestR = r;
            }
        }
    }

    // Pattern refinement down to the 1e-5 grid; re-centering repeats until
    // the local box no longer improves, so the kink point is pinned to the
    // final step size.
    for (double step : {1e-4, 1e-5}) {
        for (int pass = 0; pass < 60; ++pass) {
            double cXi = bestXi, cR = bestR;
            for (int di = -15; di <= 15; ++di)
                for (int dj = -15; dj <= 15; ++dj) {
                    const double xi = cXi + di * step;
                    const double r = cR + dj * step;
                    if (!(xi > 0.5) || !(r > 2.0 * xi) || xi > 4.0 || r > 12.0) continue;
                    const double v = objectiveValue(xi, r, model, objective);
                    if (v < best) {
                        best = v;
                        bestXi = xi;
                        bestR = r;
                    }
                }
            if (bestXi == cXi && bestR == cR) break;
        }
    }

    OptimizeResult out;
    out.xi = bestXi;
    out.bigR = bestR;
    out.report = psExponents(bestXi, bestR, model);
    return out;
}

namespace {

double ceil2(double x) { return std::ceil(x * 100.0 - 1e-9) / 100.0; }

} // namespace

std::string table1Report() {
    const ExponentReport nvC = nvExponent(1.0, ComplexityModel::classical);
    const ExponentReport nvQ = nvExponent(1.0, ComplexityModel::quantum);
    const ExponentReport psC = psExponents(0.9476, 3.0169, ComplexityModel::classical);
    const ExponentReport psQ = psExponents(0.9086, 3.1376, ComplexityModel::quantum);

    char line[256];
    std::string out;
    out += "Leading-order exponents: runtime 2^(t n), memory 2^(s n); 2-decimal ceilings.\n";
    out += "algorithm                          classical t/s     quantum t/s     source\n";
    std::snprintf(line, sizeof(line), "%-34s %.2f / %.2f       %.2f / %.2f     computed\n",
                  "Nguyen-Vidick sieve", ceil2(nvC.timeExp), ceil2(nvC.spaceExp), ceil2(nvQ.timeExp),
                  ceil2(nvQ.spaceExp));
    out += line;
    std::snprintf(line, sizeof(line), "%-34s %.2f / %.2f       %.2f / %.2f     computed (*)\n",
                  "Pujol-Stehle saturation", ceil2(psC.timeExp), ceil2(psC.spaceExp),
                  ceil2(*psQ.altTimeExp), ceil2(psQ.spaceExp));
    out += line;
    std::snprintf(line, sizeof(line), "%-34s %.2f / %.2f       %.2f / %.2f     cited, not derived\n",
                  "GaussSieve (Micciancio-Voulgaris)", 0.52, 0.21, 0.39, 0.21);
    out += line;
    std::snprintf(line, sizeof(line), "%-34s %.2f / %.2f       %.2f / %.2f     cited, not derived\n",
                  "two-level sieve (Wang et al.)", 0.39, 0.26, 0.32, 0.21);
    out += line;
    std::snprintf(line, sizeof(line),
                  "(*) quantum time %.2f is the pair-radius variant at (0.9086, 3.1376); the "
                  "additive-radius form prints %.2f there. Both come from psExponents.\n",
                  ceil2(*psQ.altTimeExp), ceil2(psQ.timeExp));
    out += line;
    return out;
}

} // namespace svplab
