#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qpg/automaton.hpp"
#include "qpg/groebner.hpp"
#include "qpg/projalg.hpp"

namespace qpg {

/// Nonzero-pattern matrix mirrored in both directions: row key -> set of
/// column indices and column -> list of row keys. Row keys are tensor-word
/// mixed-radix indices.
class PatternMatrix {
public:
    using RowKey = uint64_t;

    /// Row keys must be sorted ascending and duplicate free.
    void add_column(const std::vector<RowKey>& row_keys);

    size_t columns() const { return cols_.size(); }
    size_t rows_touched() const { return rows_.size(); }
    size_t nonzeros() const { return nonzeros_; }
    const std::vector<std::vector<RowKey>>& column_rows() const { return cols_; }
    const std::unordered_map<RowKey, std::unordered_set<uint32_t>>& rows() const { return rows_; }
    /// (r, c) in rows(r) <=> r in columns(c), both directions.
    bool mirror_ok() const;

    friend Int eliminate(PatternMatrix& mat,
                         const std::function<void(const PatternMatrix&)>& after_pivot);

private:
    std::vector<std::vector<RowKey>> cols_;
    std::unordered_map<RowKey, std::unordered_set<uint32_t>> rows_;
    size_t nonzeros_ = 0;
};

/// Cascading singleton-row pivot count; a lower bound on the rank of any
/// matrix with this pattern. Purely structural: eliminating the pivot column
/// of a singleton row cannot create cancellation elsewhere. Mutates the
/// matrix; rows emptied before being popped are skipped without counting.
/// `after_pivot`, when set, runs after each completed pivot step.
Int eliminate(PatternMatrix& mat, const std::function<void(const PatternMatrix&)>& after_pivot = {});

struct PsiOptions {
    size_t max_memory_bytes = size_t(6) << 30;
    int threads = 1;
};

struct PsiMatrix {
    int m = 0;
    uint32_t radix = 1;  // 2m+1
    PatternMatrix pattern;
    std::vector<Monomial> words;  // column words in enumeration order
    size_t peak_live_terms = 0;
    size_t approx_peak_bytes = 0;
};

/// Transformation matrix pattern of the evaluation map on the quotient basis:
/// one column per accepted word of length <= m in enumeration order, pattern
/// = support of the word evaluated in the model, computed incrementally along
/// automaton transitions with exact cancellation.
PsiMatrix build_psi(const MagicModel& model, const Dfa& dfa, int m, const PsiOptions& opts = {});

/// Column evaluations kept exactly, for oracle-scale instances.
struct ValueColumns {
    int m = 0;
    uint32_t radix = 1;
    int k = 0;
    std::vector<Monomial> words;
    std::vector<std::vector<std::pair<uint64_t, Rat>>> cols;  // sorted by row key
};

ValueColumns build_psi_values(const MagicModel& model, const Dfa& dfa, int m,
                              size_t max_columns = 5000);

/// Exact rank by integer-preserving sparse Gaussian elimination over the
/// actual coefficient values.
Int exact_rank_oracle(const ValueColumns& values);

/// A nonzero polynomial supported on the column words with zero evaluation,
/// when the value matrix has a nontrivial kernel; nullopt on full column
/// rank. The result is verified against the model before returning.
std::optional<Polynomial> kernel_vector(const ValueColumns& values, const MagicModel& model);

enum class Verdict { no_separating_polynomial, inconclusive };
std::string verdict_string(Verdict v);

struct Certificate {
    int n = 0;
    int m = 0;
    Int columns;
    Int rank_lower_bound;
    Int nonzeros;
    Verdict verdict = Verdict::inconclusive;
    double wall_seconds = 0;
    size_t peak_memory_bytes = 0;
    std::string model_sha256;
    std::string version;
};

/// Builds the pattern matrix and runs the structural elimination. The verdict
/// is one-sided: a full-rank bound excludes separating polynomials up to
/// degree m, a shortfall alone proves nothing.
Certificate certify(const MagicModel& model, const Dfa& dfa, int n, int m,
                    const PsiOptions& opts = {});

/// Convenience entry for the bundled model; only n = 4 has one.
Certificate certify(int n, int m, const PsiOptions& opts = {});

/// Smallest m whose cumulative accepted-word count exceeds (2m+1)^(k*l), or
/// nullopt within the cap. A crossing witnesses a nontrivial kernel for every
/// model of matching shape.
std::optional<long> dimension_gap(const Dfa& dfa, int k, int l, long cap);

}  // namespace qpg
