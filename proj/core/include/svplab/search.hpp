#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "svplab/rng.hpp"

namespace svplab {

enum class EngineMode { classical, quantumCost };
enum class PickPolicy { firstMatch, randomMatch };

// Strategy object for the search subroutine. quantumCost answers exactly
// like the classical engine; only the charged cost follows the square-root
// rule. The rng is consumed by randomMatch picks only.
struct SearchEngine {
    EngineMode mode = EngineMode::classical;
    PickPolicy pickPolicy = PickPolicy::firstMatch;
    Rng rng{0};

    static SearchEngine classicalEngine(std::uint64_t seed = 0,
                                        PickPolicy pick = PickPolicy::firstMatch) {
        return SearchEngine{EngineMode::classical, pick, Rng(seed)};
    }
    static SearchEngine quantumEngine(std::uint64_t seed = 0,
                                      PickPolicy pick = PickPolicy::randomMatch) {
        return SearchEngine{EngineMode::quantumCost, pick, Rng(seed)};
    }
};

struct QueryLedger {
    std::uint64_t predicateEvals = 0; // actual predicate applications
    std::uint64_t chargedQueries = 0; // model-charged cost
    std::uint64_t invocations = 0;
};

inline std::uint64_t isqrtCeil(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r >= n && r > 0) --r; // r: largest with r^2 < n
    std::uint64_t c = r + 1;
    while (c * c < n) ++c;
    return c;
}

// One search invocation over an indexed collection; returns the index of a
// matching element, or nullopt. Classical firstMatch scans in order and
// charges one query per evaluated element; randomMatch evaluates everything,
// charges N, and picks uniformly among matches. quantumCost charges
// ceil(sqrt(N)) per invocation (0 for an empty list) and answers per policy.
template <class List, class Pred>
std::optional<std::size_t> search(const List& list, Pred&& predicate, SearchEngine& engine,
                                  QueryLedger& ledger) {
    const std::size_t n = list.size();
    ++ledger.invocations;
    const bool quantum = engine.mode == EngineMode::quantumCost;
    if (quantum) ledger.chargedQueries += isqrtCeil(n);
    if (n == 0) return std::nullopt;

    if (engine.pickPolicy == PickPolicy::firstMatch) {
        for (std::size_t i = 0; i < n; ++i) {
            ++ledger.predicateEvals;
            if (!quantum) ++ledger.chargedQueries;
            if (predicate(list[i])) return i;
        }
        return std::nullopt;
    }

    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < n; ++i) {
        ++ledger.predicateEvals;
        if (!quantum) ++ledger.chargedQueries;
        if (predicate(list[i])) hits.push_back(i);
    }
    if (hits.empty()) return std::nullopt;
    return hits[engine.rng.below(hits.size())];
}

// Search over the virtual list of all N^2 ordered pairs (row-major, diagonal
// included; predicates on pairs reject i == j through their own bounds).
// Classical charge is the number of evaluated pairs; quantumCost charges
// ceil(sqrt(N^2)) = N.
template <class List, class PairPred>
std::optional<std::pair<std::size_t, std::size_t>> pairSearch(const List& list, PairPred&& predicate,
                                                              SearchEngine& engine,
                                                              QueryLedger& ledger) {
    const std::size_t n = list.size();
    ++ledger.invocations;
    const bool quantum = engine.mode == EngineMode::quantumCost;
    if (quantum) ledger.chargedQueries += static_cast<std::uint64_t>(n);
    if (n == 0) return std::nullopt;

    if (engine.pickPolicy == PickPolicy::firstMatch) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ++ledger.predicateEvals;
                if (!quantum) ++ledger.chargedQueries;
                if (predicate(list[i], list[j])) return std::make_pair(i, j);
            }
        return std::nullopt;
    }

    std::vector<std::pair<std::size_t, std::size_t>> hits;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ++ledger.predicateEvals;
            if (!quantum) ++ledger.chargedQueries;
            if (predicate(list[i], list[j])) hits.emplace_back(i, j);
        }
    if (hits.empty()) return std::nullopt;
    return hits[engine.rng.below(hits.size())];
}

} // namespace svplab
