#pragma once

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "qpg/freealg.hpp"

namespace qpg {

/// Deterministic partial automaton over the n*n variable alphabet. Missing
/// transitions reject. Every state is reachable and lies on an accepting path
/// (for factor-closed languages every live state is final).
struct Dfa {
    int n = 0;
    int initial = 0;
    std::vector<std::vector<int32_t>> next;  // [state][variable index] -> state or -1
    std::vector<bool> is_final;
    std::vector<uint16_t> symbols_by_rank;   // variable indices, ascending rank

    int states() const { return static_cast<int>(next.size()); }
    int transition_count() const;
    bool accepts(const Monomial& w) const;
};

/// Automaton accepting exactly the words containing no lead as a factor,
/// built from the failure-link matching automaton on the prefix set of the
/// leads with matched states removed. Every remaining state is final.
Dfa forbidden_factor_dfa(const std::vector<Monomial>& leads, int n, const MonomialOrder& ord);
Dfa forbidden_factor_dfa(const std::vector<Monomial>& leads, int n);

/// Language-equivalent automaton with the minimum number of states, with
/// canonical state numbering by breadth-first discovery order (transitions
/// taken in ascending variable rank).
Dfa minimize(const Dfa& d);

struct LengthCounts {
    std::vector<Int> counts;      // counts[k] = accepted words of length exactly k
    std::vector<Int> cumulative;  // cumulative[k] = counts[0] + ... + counts[k]
};

LengthCounts count_by_length(const Dfa& d, int m);

enum class GrowthKind { finite, polynomial, exponential };

struct GrowthResult {
    double rate = 0;
    GrowthKind kind = GrowthKind::finite;
    unsigned long iterations = 0;
};

/// Dominant eigenvalue of the transition-count matrix by power iteration from
/// the all-ones vector; stops when successive Rayleigh quotients differ by
/// less than tol. Rates below 1 + 1e-9 are reported as polynomial growth.
GrowthResult growth_rate(const Dfa& d, double tol = 1e-10, unsigned long max_iterations = 1000000);

struct PathEntry {
    Monomial word;
    std::vector<int> state_trace;  // visited states, degree + 1 entries
};

/// Yields every accepted word of length <= m exactly once, in breadth-first
/// order with transitions sorted by variable rank. This order defines the
/// certifier's column numbering.
class PathEnumerator {
public:
    PathEnumerator(const Dfa& d, int m);
    std::optional<PathEntry> next();

private:
    const Dfa* dfa_;
    int max_len_;
    std::deque<PathEntry> queue_;
};

std::vector<PathEntry> enumerate_paths(const Dfa& d, int m);

std::string export_dot(const Dfa& d);

}  // namespace qpg
