#include "qpg/certifier.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <thread>

#include "qpg/serialize.hpp"
#include "qpg/version.hpp"

namespace qpg {

void PatternMatrix::add_column(const std::vector<RowKey>& row_keys) {
    uint32_t j = static_cast<uint32_t>(cols_.size());
    cols_.push_back(row_keys);
    for (RowKey r : row_keys) rows_[r].insert(j);
    nonzeros_ += row_keys.size();
}

bool PatternMatrix::mirror_ok() const {
    size_t col_nnz = 0;
    for (size_t j = 0; j < cols_.size(); ++j) {
        col_nnz += cols_[j].size();
        for (RowKey r : cols_[j]) {
            auto it = rows_.find(r);
            if (it == rows_.end() || !it->second.count(static_cast<uint32_t>(j))) return false;
        }
    }
    size_t row_nnz = 0;
    for (const auto& [r, set] : rows_) {
        row_nnz += set.size();
        for (uint32_t j : set) {
            if (j >= cols_.size()) return false;
            if (std::find(cols_[j].begin(), cols_[j].end(), r) == cols_[j].end()) return false;
        }
    }
    return col_nnz == row_nnz;
}

Int eliminate(PatternMatrix& mat, const std::function<void(const PatternMatrix&)>& after_pivot) {
    auto& rows = mat.rows_;
    auto& cols = mat.cols_;
    std::vector<PatternMatrix::RowKey> stack;
    {
        std::vector<PatternMatrix::RowKey> keys;
        keys.reserve(rows.size());
        for (const auto& [r, set] : rows) keys.push_back(r);
        std::sort(keys.begin(), keys.end());
        for (PatternMatrix::RowKey r : keys)
            if (rows.at(r).size() == 1) stack.push_back(r);
    }
    size_t rank = 0;
    while (!stack.empty()) {
        PatternMatrix::RowKey i = stack.back();
        stack.pop_back();
        auto it = rows.find(i);
        if (it == rows.end() || it->second.size() != 1) continue;  // stale entry
        uint32_t j = *it->second.begin();
        for (PatternMatrix::RowKey k : cols[j]) {
            if (k == i) continue;
            auto kt = rows.find(k);
            if (kt == rows.end()) continue;
            if (kt->second.erase(j) && kt->second.size() == 1) stack.push_back(k);
        }
        cols[j].assign(1, i);
        ++rank;
        if (after_pivot) after_pivot(mat);
    }
    return Int(rank);
}

namespace {

constexpr size_t kBytesPerTerm = 96;     // tensor word + rational, estimated
constexpr size_t kBytesPerNonzero = 72;  // mirrored pattern entry, estimated

struct Frontier {
    std::vector<int> states;
    std::vector<AlgElement> values;
    std::vector<Monomial> words;
};

std::vector<PatternMatrix::RowKey> support_keys(const AlgElement& e, uint32_t radix) {
    std::vector<PatternMatrix::RowKey> keys;
    keys.reserve(e.term_count());
    for (const auto& [t, c] : e.terms()) keys.push_back(t.row_key(radix));
    std::sort(keys.begin(), keys.end());
    return keys;
}

/// Expands entries [begin, end) of the frontier; children are placed per
/// parent so the merged order is independent of the thread count.
void expand_range(const Frontier& cur, size_t begin, size_t end, const MagicModel& model,
                  const Dfa& dfa, std::vector<Frontier>& children) {
    for (size_t idx = begin; idx < end; ++idx) {
        Frontier& out = children[idx];
        int state = cur.states[idx];
        for (uint16_t a : dfa.symbols_by_rank) {
            int32_t t = dfa.next[state][a];
            if (t < 0) continue;
            Variable v = Variable::from_index(a, dfa.n);
            out.states.push_back(t);
            out.values.push_back(mul_elements(cur.values[idx], model.at(v.row(), v.col())));
            out.words.push_back(cur.words[idx] * Monomial(dfa.n, {a}));
        }
    }
}

}  // namespace

PsiMatrix build_psi(const MagicModel& model, const Dfa& dfa, int m, const PsiOptions& opts) {
    if (m < 0) throw InvalidSizeError("negative degree bound");
    if (model.n != dfa.n) throw ShapeError("model size does not match the automaton alphabet");

    PsiMatrix out;
    out.m = m;
    out.radix = 2 * static_cast<uint32_t>(m) + 1;

    Frontier cur;
    cur.states = {dfa.initial};
    cur.values = {AlgElement::unit_element(model.k)};
    cur.words = {Monomial::one(model.n)};
    size_t live_terms = 1;

    for (int depth = 0; depth <= m; ++depth) {
        for (size_t idx = 0; idx < cur.states.size(); ++idx) {
            out.pattern.add_column(support_keys(cur.values[idx], out.radix));
            out.words.push_back(cur.words[idx]);
        }
        size_t approx = live_terms * kBytesPerTerm + out.pattern.nonzeros() * kBytesPerNonzero;
        out.approx_peak_bytes = std::max(out.approx_peak_bytes, approx);
        out.peak_live_terms = std::max(out.peak_live_terms, live_terms);
        if (approx > opts.max_memory_bytes)
            throw BudgetExceededError(
                "memory budget exceeded while building the matrix",
                "columns=" + std::to_string(out.pattern.columns()) +
                    " depth=" + std::to_string(depth) + " live_terms=" + std::to_string(live_terms) +
                    " nonzeros=" + std::to_string(out.pattern.nonzeros()));
        if (depth == m) break;

        std::vector<Frontier> children(cur.states.size());
        int threads = std::max(1, opts.threads);
        if (threads == 1 || cur.states.size() < 2 * static_cast<size_t>(threads)) {
            expand_range(cur, 0, cur.states.size(), model, dfa, children);
        } else {
            std::vector<std::thread> pool;
            size_t chunk = (cur.states.size() + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                size_t b = t * chunk;
                size_t e = std::min(cur.states.size(), b + chunk);
                if (b >= e) break;
                pool.emplace_back(expand_range, std::cref(cur), b, e, std::cref(model),
                                  std::cref(dfa), std::ref(children));
            }
            for (auto& th : pool) th.join();
        }

        Frontier next;
        live_terms = 0;
        for (auto& ch : children) {
            for (size_t i = 0; i < ch.states.size(); ++i) {
                live_terms += ch.values[i].term_count();
                next.states.push_back(ch.states[i]);
                next.values.push_back(std::move(ch.values[i]));
                next.words.push_back(std::move(ch.words[i]));
            }
        }
        cur = std::move(next);
    }
    return out;
}

ValueColumns build_psi_values(const MagicModel& model, const Dfa& dfa, int m, size_t max_columns) {
    if (m < 0) throw InvalidSizeError("negative degree bound");
    if (model.n != dfa.n) throw ShapeError("model size does not match the automaton alphabet");
    ValueColumns out;
    out.m = m;
    out.radix = 2 * static_cast<uint32_t>(m) + 1;
    out.k = model.k;

    LengthCounts lc = count_by_length(dfa, m);
    if (lc.cumulative[m] > Int(max_columns))
        throw BudgetExceededError("value matrix too large for the exact oracle",
                                  "columns=" + lc.cumulative[m].str());

    Frontier cur;
    cur.states = {dfa.initial};
    cur.values = {AlgElement::unit_element(model.k)};
    cur.words = {Monomial::one(model.n)};
    for (int depth = 0; depth <= m; ++depth) {
        for (size_t idx = 0; idx < cur.states.size(); ++idx) {
            std::vector<std::pair<uint64_t, Rat>> col;
            col.reserve(cur.values[idx].term_count());
            for (const auto& [t, c] : cur.values[idx].terms())
                col.emplace_back(t.row_key(out.radix), c);
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            out.cols.push_back(std::move(col));
            out.words.push_back(cur.words[idx]);
        }
        if (depth == m) break;
        std::vector<Frontier> children(cur.states.size());
        expand_range(cur, 0, cur.states.size(), model, dfa, children);
        Frontier next;
        for (auto& ch : children)
            for (size_t i = 0; i < ch.states.size(); ++i) {
                next.states.push_back(ch.states[i]);
                next.values.push_back(std::move(ch.values[i]));
                next.words.push_back(std::move(ch.words[i]));
            }
        cur = std::move(next);
    }
    return out;
}

namespace {

Int content_gcd(const std::map<uint32_t, Int>& row) {
    Int g = 0;
    for (const auto& [c, v] : row) {
        g = boost::multiprecision::gcd(g, v);
        if (g == 1) break;
    }
    return g;
}

}  // namespace

Int exact_rank_oracle(const ValueColumns& values) {
    // Integer rows: per-column denominators cleared (column scaling preserves
    // the rank).
    std::unordered_map<uint64_t, std::map<uint32_t, Int>> rows;
    std::unordered_map<uint32_t, std::unordered_set<uint64_t>> col_rows;
    for (uint32_t j = 0; j < values.cols.size(); ++j) {
        Int lcm = 1;
        for (const auto& [rk, v] : values.cols[j])
            lcm = boost::multiprecision::lcm(lcm, denominator(v));
        for (const auto& [rk, v] : values.cols[j]) {
            Rat scaled = v * Rat(lcm);
            rows[rk][j] = numerator(scaled);
            col_rows[j].insert(rk);
        }
    }

    Int rank = 0;
    while (!rows.empty()) {
        // Sparsest row, then sparsest column within it.
        uint64_t pr = 0;
        size_t best = SIZE_MAX;
        for (const auto& [rk, row] : rows) {
            if (row.size() < best || (row.size() == best && rk < pr)) {
                best = row.size();
                pr = rk;
            }
        }
        const auto& prow = rows.at(pr);
        uint32_t pc = 0;
        size_t best_c = SIZE_MAX;
        for (const auto& [c, v] : prow) {
            size_t nnz = col_rows.at(c).size();
            if (nnz < best_c || (nnz == best_c && c < pc)) {
                best_c = nnz;
                pc = c;
            }
        }
        Int pv = prow.at(pc);

        std::vector<uint64_t> victims(col_rows.at(pc).begin(), col_rows.at(pc).end());
        for (uint64_t rk : victims) {
            if (rk == pr) continue;
            auto& row = rows.at(rk);
            Int a = row.at(pc);
            if (prow.size() == 1) {
                // Subtracting the right multiple of a singleton pivot row only
                // clears the pivot column.
                row.erase(pc);
                col_rows.at(pc).erase(rk);
            } else {
                if (pv != 1)
                    for (auto& [c, v] : row) v *= pv;
                for (const auto& [c, v] : prow) {
                    auto [it, fresh] = row.emplace(c, 0);
                    it->second -= a * v;
                    if (it->second == 0) {
                        col_rows.at(c).erase(rk);
                        row.erase(it);
                    } else if (fresh) {
                        col_rows[c].insert(rk);
                    }
                }
                Int g = content_gcd(row);
                if (g > 1)
                    for (auto& [c, v] : row) v /= g;
            }
            if (row.empty()) rows.erase(rk);
        }
        for (const auto& [c, v] : prow) col_rows.at(c).erase(pr);
        rows.erase(pr);
        ++rank;
    }
    return rank;
}

std::optional<Polynomial> kernel_vector(const ValueColumns& values, const MagicModel& model) {
    struct Pivot {
        uint64_t key;
        std::map<uint64_t, Rat> col;
        std::map<uint32_t, Rat> combo;
    };
    std::vector<Pivot> pivots;

    for (uint32_t j = 0; j < values.cols.size(); ++j) {
        std::map<uint64_t, Rat> col(values.cols[j].begin(), values.cols[j].end());
        std::map<uint32_t, Rat> combo{{j, 1}};
        for (const Pivot& p : pivots) {
            auto it = col.find(p.key);
            if (it == col.end()) continue;
            Rat f = it->second / p.col.at(p.key);
            for (const auto& [rk, v] : p.col) {
                auto [ct, fresh] = col.emplace(rk, 0);
                ct->second -= f * v;
                if (ct->second == 0) col.erase(ct);
            }
            for (const auto& [idx, v] : p.combo) {
                auto [ct, fresh] = combo.emplace(idx, 0);
                ct->second -= f * v;
                if (ct->second == 0) combo.erase(ct);
            }
        }
        if (col.empty()) {
            Polynomial sep(model.n);
            for (const auto& [idx, v] : combo) sep.add_term(values.words[idx], v);
            if (sep.is_zero() || !evaluate(sep, model).is_zero())
                throw ModelViolationError("kernel candidate fails verification");
            return sep;
        }
        pivots.push_back(Pivot{col.begin()->first, std::move(col), std::move(combo)});
    }
    return std::nullopt;
}

std::string verdict_string(Verdict v) {
    return v == Verdict::no_separating_polynomial ? "no-separating-polynomial" : "inconclusive";
}

Certificate certify(const MagicModel& model, const Dfa& dfa, int n, int m, const PsiOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    Certificate cert;
    cert.n = n;
    cert.m = m;
    cert.version = std::string(kToolVersion) + "+cert" + kCertificateFormat;
    cert.model_sha256 = sha256_hex(model_to_json(model).dump());

    PsiMatrix psi = build_psi(model, dfa, m, opts);
    cert.columns = Int(psi.pattern.columns());
    cert.nonzeros = Int(psi.pattern.nonzeros());
    cert.rank_lower_bound = eliminate(psi.pattern);
    cert.verdict = cert.rank_lower_bound == cert.columns ? Verdict::no_separating_polynomial
                                                         : Verdict::inconclusive;
    cert.peak_memory_bytes = psi.approx_peak_bytes;
    cert.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

Certificate certify(int n, int m, const PsiOptions& opts) {
    if (n != 4)
        throw MissingModelError("no bundled model for n=" + std::to_string(n) +
                                "; supply a model and automaton explicitly");
    GroebnerBasis gb = complete(magic_ideal_generators(n), MonomialOrder::row_major(n));
    Dfa dfa = minimize(forbidden_factor_dfa(gb.leading_terms(), n, gb.order()));
    MagicModel model = build_M();
    return certify(model, dfa, n, m, opts);
}

std::optional<long> dimension_gap(const Dfa& dfa, int k, int l, long cap) {
    if (k < 1 || l < 1) throw InvalidSizeError("tensor shape parameters must be at least 1");
    if (cap < 0) throw InvalidSizeError("negative search cap");
    const int S = dfa.states();
    std::vector<Int> v(S, 0);
    v[dfa.initial] = 1;
    Int cumulative = 0;
    for (long m = 0; m <= cap; ++m) {
        if (m > 0) {
            std::vector<Int> w(S, 0);
            for (int s = 0; s < S; ++s) {
                if (v[s] == 0) continue;
                for (int a = 0; a < dfa.n * dfa.n; ++a) {
                    int32_t t = dfa.next[s][a];
                    if (t >= 0) w[t] += v[s];
                }
            }
            v = std::move(w);
        }
        for (int s = 0; s < S; ++s)
            if (dfa.is_final[s]) cumulative += v[s];
        Int bound = int_pow(Int(2 * m + 1), static_cast<unsigned long>(k) * l);
        if (cumulative > bound) return m;
    }
    return std::nullopt;
}

}  // namespace qpg
