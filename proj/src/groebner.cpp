#include "qpg/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace qpg {

namespace detail {

/// Failure-link factor matcher over the current lead words. With an
/// interreduced lead set no lead is a factor of another, so occurrences can
/// never nest and the first terminal hit while scanning left to right is the
/// unique leftmost match.
class FactorMatcher {
public:
    struct Match {
        int rule = -1;
        size_t start = 0;
    };

    FactorMatcher(const std::vector<RewriteRule>& rules, const std::vector<bool>& active,
                  int alphabet)
        : alphabet_(alphabet) {
        nodes_.push_back(Node(alphabet_));
        for (size_t r = 0; r < rules.size(); ++r) {
            if (!active.empty() && !active[r]) continue;
            insert(rules[r].lead, static_cast<int>(r));
        }
        link();
    }

    Match find(const std::vector<uint16_t>& word) const {
        int32_t s = 0;
        for (size_t pos = 0; pos < word.size(); ++pos) {
            s = nodes_[s].next[word[pos]];
            int rule = nodes_[s].rule;
            if (rule >= 0) return {rule, pos + 1 - lead_len_[rule]};
        }
        return {};
    }

private:
    struct Node {
        explicit Node(int alphabet) : next(alphabet, 0) {}
        std::vector<int32_t> next;
        int32_t fail = 0;
        int32_t rule = -1;
    };

    void insert(const Monomial& lead, int rule) {
        int32_t s = 0;
        for (size_t i = 0; i < lead.degree(); ++i) {
            uint16_t a = lead.index_at(i);
            if (trie_child(s, a) == 0) {
                nodes_.push_back(Node(alphabet_));
                set_trie_child(s, a, static_cast<int32_t>(nodes_.size() - 1));
            }
            s = trie_child(s, a);
        }
        nodes_[s].rule = rule;
        if (lead_len_.size() <= static_cast<size_t>(rule)) lead_len_.resize(rule + 1, 0);
        lead_len_[rule] = lead.degree();
    }

    // During construction next[] holds raw trie children (0 = absent); link()
    // rewrites it into the full transition function.
    int32_t trie_child(int32_t s, uint16_t a) const { return nodes_[s].next[a]; }
    void set_trie_child(int32_t s, uint16_t a, int32_t c) { nodes_[s].next[a] = c; }

    void link() {
        std::deque<int32_t> bfs;
        for (int a = 0; a < alphabet_; ++a) {
            int32_t c = nodes_[0].next[a];
            if (c != 0) {
                nodes_[c].fail = 0;
                bfs.push_back(c);
            }
        }
        while (!bfs.empty()) {
            int32_t u = bfs.front();
            bfs.pop_front();
            if (nodes_[u].rule < 0) nodes_[u].rule = nodes_[nodes_[u].fail].rule;
            for (int a = 0; a < alphabet_; ++a) {
                int32_t c = nodes_[u].next[a];
                if (c != 0) {
                    nodes_[c].fail = nodes_[nodes_[u].fail].next[a];
                    bfs.push_back(c);
                } else {
                    nodes_[u].next[a] = nodes_[nodes_[u].fail].next[a];
                }
            }
        }
    }

    int alphabet_;
    std::vector<Node> nodes_;
    std::vector<size_t> lead_len_;
};

}  // namespace detail

Polynomial RewriteRule::element() const {
    Polynomial e(lead);
    e -= tail;
    return e;
}

namespace {

struct OrdLess {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->less(a, b); }
};

using WorkMap = std::map<Monomial, Rat, OrdLess>;

Monomial splice(const Monomial& outer, size_t start, size_t lead_len, const Monomial& middle) {
    std::vector<uint16_t> w;
    w.reserve(outer.degree() - lead_len + middle.degree());
    const auto& ow = outer.word();
    w.insert(w.end(), ow.begin(), ow.begin() + start);
    w.insert(w.end(), middle.word().begin(), middle.word().end());
    w.insert(w.end(), ow.begin() + start + lead_len, ow.end());
    return Monomial(outer.n(), std::move(w));
}

Polynomial reduce_with(const Polynomial& p, const std::vector<RewriteRule>& rules,
                       const detail::FactorMatcher& matcher, const MonomialOrder& ord) {
    WorkMap work{OrdLess{&ord}};
    for (const auto& [m, c] : p.terms()) work.emplace(m, c);
    Polynomial out(p.n());
    while (!work.empty()) {
        auto it = std::prev(work.end());
        Monomial mon = it->first;
        Rat c = std::move(it->second);
        work.erase(it);
        auto match = matcher.find(mon.word());
        if (match.rule < 0) {
            out.add_term(mon, c);
            continue;
        }
        const RewriteRule& r = rules[match.rule];
        for (const auto& [tm, tc] : r.tail.terms()) {
            Monomial nm = splice(mon, match.start, r.lead.degree(), tm);
            Rat nc = c * tc;
            auto [jt, fresh] = work.emplace(std::move(nm), nc);
            if (!fresh) {
                jt->second += nc;
                if (jt->second == 0) work.erase(jt);
            }
        }
    }
    return out;
}

/// Mutable rule set shared by completion; keeps the interreduction invariant:
/// no lead is a factor of another lead or of any tail monomial.
struct RuleSet {
    const MonomialOrder* ord;
    int n;
    std::vector<RewriteRule> rules;
    std::vector<bool> active;
    std::shared_ptr<detail::FactorMatcher> matcher;
    bool dirty = true;

    void refresh() {
        if (dirty) {
            matcher = std::make_shared<detail::FactorMatcher>(rules, active, n * n);
            dirty = false;
        }
    }

    Polynomial reduce(const Polynomial& p) {
        refresh();
        return reduce_with(p, rules, *matcher, *ord);
    }
};

struct Obstruction {
    int amb_deg;
    int i, j;
    int overlap;  // length of the shared suffix/prefix
};

struct ObstructionGreater {
    bool operator()(const Obstruction& a, const Obstruction& b) const {
        if (a.amb_deg != b.amb_deg) return a.amb_deg > b.amb_deg;
        if (a.i != b.i) return a.i > b.i;
        if (a.j != b.j) return a.j > b.j;
        return a.overlap > b.overlap;
    }
};

bool suffix_matches_prefix(const Monomial& a, const Monomial& b, int o) {
    const auto& wa = a.word();
    const auto& wb = b.word();
    return std::equal(wa.end() - o, wa.end(), wb.begin());
}

}  // namespace

GroebnerBasis::GroebnerBasis(std::vector<RewriteRule> rules, MonomialOrder order, bool terminated,
                             int degree_cap)
    : rules_(std::move(rules)),
      order_(std::move(order)),
      terminated_(terminated),
      degree_cap_(degree_cap) {
    matcher_ = std::make_shared<const detail::FactorMatcher>(
        rules_, std::vector<bool>(rules_.size(), true), order_.n() * order_.n());
}

std::vector<Monomial> GroebnerBasis::leading_terms() const {
    std::vector<Monomial> leads;
    leads.reserve(rules_.size());
    for (const auto& r : rules_) leads.push_back(r.lead);
    return leads;
}

int GroebnerBasis::max_lead_degree() const {
    int d = 0;
    for (const auto& r : rules_) d = std::max(d, static_cast<int>(r.lead.degree()));
    return d;
}

Polynomial reduce(const Polynomial& p, const GroebnerBasis& G) {
    if (p.n() != G.n()) throw AlphabetMismatchError("polynomial over a different alphabet than basis");
    return reduce_with(p, G.rules(), G.matcher(), G.order());
}

bool is_member(const Polynomial& p, const GroebnerBasis& G) {
    if (!G.terminated() && p.degree() > G.complete_up_to())
        throw UncertifiedDegreeError("membership uncertified beyond degree " +
                                     std::to_string(G.complete_up_to()));
    return reduce(p, G).is_zero();
}

namespace {

class Completion {
public:
    Completion(const std::vector<Polynomial>& generators, const MonomialOrder& ord, int cap)
        : ord_(ord), cap_(cap) {
        if (generators.empty()) throw InvalidSizeError("no generators");
        rs_.ord = &ord_;
        rs_.n = ord_.n();
        for (const auto& g : generators) {
            if (g.is_zero()) throw ZeroPolynomialError("zero polynomial among the generators");
            if (g.n() != ord_.n())
                throw AlphabetMismatchError("generator over a different alphabet than the order");
            if (g.degree() > cap_)
                throw InvalidSizeError("degree cap below a generator degree");
            pending_.push_back(g);
        }
    }

    GroebnerBasis run() {
        while (true) {
            if (!pending_.empty()) {
                process_pending();
                continue;
            }
            if (!obstructions_.empty()) {
                Obstruction ob = obstructions_.top();
                if (!rs_.active[ob.i] || !rs_.active[ob.j]) {
                    obstructions_.pop();
                    continue;
                }
                if (ob.amb_deg > cap_) {
                    throw CapExceededError(
                        "pending obstruction of degree " + std::to_string(ob.amb_deg) +
                            " exceeds the degree cap " + std::to_string(cap_),
                        freeze(false));
                }
                obstructions_.pop();
                process_obstruction(ob);
                continue;
            }
            break;
        }
        return freeze(true);
    }

private:
    void process_pending() {
        // Smallest leading term first, for a degree-ascending run.
        size_t best = 0;
        for (size_t i = 1; i < pending_.size(); ++i) {
            auto lt_i = leading_term(pending_[i], ord_).first;
            auto lt_b = leading_term(pending_[best], ord_).first;
            if (ord_.less(lt_i, lt_b)) best = i;
        }
        Polynomial p = std::move(pending_[best]);
        pending_.erase(pending_.begin() + best);
        Polynomial nf = rs_.reduce(p);
        if (!nf.is_zero()) add_rule(std::move(nf));
    }

    void process_obstruction(const Obstruction& ob) {
        const RewriteRule& ri = rs_.rules[ob.i];
        const RewriteRule& rj = rs_.rules[ob.j];
        // Ambiguity word: lead_i overlapping lead_j on `overlap` letters.
        Monomial a = ri.lead.prefix(ri.lead.degree() - ob.overlap);
        Monomial b = rj.lead.suffix_from(ob.overlap);
        Polynomial s = multiply(ri.tail, Polynomial(b));
        s -= multiply(Polynomial(a), rj.tail);
        Polynomial nf = rs_.reduce(s);
        if (!nf.is_zero()) add_rule(std::move(nf));
    }

    void add_rule(Polynomial nf) {
        auto [lead, lc] = leading_term(nf, ord_);
        nf *= Rat(1) / lc;
        Polynomial tail(lead);
        tail -= nf;
        int idx = static_cast<int>(rs_.rules.size());
        rs_.rules.push_back(RewriteRule{lead, std::move(tail)});
        rs_.active.push_back(true);
        rs_.dirty = true;

        // Retire rules whose lead now reduces; their elements re-enter the queue.
        for (int s = 0; s < idx; ++s) {
            if (!rs_.active[s]) continue;
            if (rs_.rules[s].lead.contains_factor(lead)) {
                rs_.active[s] = false;
                rs_.dirty = true;
                pending_.push_back(rs_.rules[s].element());
            }
        }
        // Keep tails in normal form. A tail monomial never contains the rule's
        // own lead (it is strictly smaller), so in-place reduction is sound.
        for (int s = 0; s < idx; ++s) {
            if (!rs_.active[s]) continue;
            bool touched = false;
            for (const auto& [m, c] : rs_.rules[s].tail.terms()) {
                if (m.contains_factor(lead)) {
                    touched = true;
                    break;
                }
            }
            if (touched) rs_.rules[s].tail = rs_.reduce(rs_.rules[s].tail);
        }

        for (int s = 0; s <= idx; ++s) {
            if (!rs_.active[s]) continue;
            enqueue_overlaps(idx, s);
            if (s != idx) enqueue_overlaps(s, idx);
        }
    }

    void enqueue_overlaps(int i, int j) {
        const Monomial& li = rs_.rules[i].lead;
        const Monomial& lj = rs_.rules[j].lead;
        int max_o = static_cast<int>(std::min(li.degree(), lj.degree())) - 1;
        for (int o = 1; o <= max_o; ++o) {
            if (!suffix_matches_prefix(li, lj, o)) continue;
            int amb = static_cast<int>(li.degree() + lj.degree()) - o;
            obstructions_.push(Obstruction{amb, i, j, o});
        }
    }

    GroebnerBasis freeze(bool terminated) {
        std::vector<RewriteRule> out;
        for (size_t i = 0; i < rs_.rules.size(); ++i)
            if (rs_.active[i]) out.push_back(rs_.rules[i]);
        std::sort(out.begin(), out.end(), [&](const RewriteRule& a, const RewriteRule& b) {
            return ord_.less(a.lead, b.lead);
        });
        return GroebnerBasis(std::move(out), ord_, terminated, cap_);
    }

    MonomialOrder ord_;
    int cap_;
    RuleSet rs_;
    std::vector<Polynomial> pending_;
    std::priority_queue<Obstruction, std::vector<Obstruction>, ObstructionGreater> obstructions_;
};

}  // namespace

GroebnerBasis complete(const std::vector<Polynomial>& generators, const MonomialOrder& ord,
                       int degree_cap) {
    return Completion(generators, ord, degree_cap).run();
}

namespace {

// Sparse row over monomial codes, kept sorted descending; code order equals
// the monomial order.
using SparseRow = std::vector<std::pair<uint64_t, Rat>>;

SparseRow axpy(const SparseRow& x, const Rat& c, const SparseRow& y) {
    // x + c*y, both sorted descending
    SparseRow out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first > y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first > x[i].first) {
            out.emplace_back(y[j].first, c * y[j].second);
            ++j;
        } else {
            Rat v = x[i].second + c * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Int quotient_slice_dimension_oracle(const std::vector<Polynomial>& generators, int d,
                                    const MonomialOrder& ord, const SliceOracleBudget& budget) {
    const int n = ord.n();
    const uint64_t alphabet = static_cast<uint64_t>(n) * n;
    if (d < 0) throw InvalidSizeError("negative degree");

    // offsets[k] = number of monomials of degree < k
    std::vector<uint64_t> offset(d + 2, 0);
    uint64_t pw = 1, total = 0;
    for (int k = 0; k <= d; ++k) {
        offset[k] = total;
        total += pw;
        pw *= alphabet;
    }
    offset[d + 1] = total;
    if (total > budget.max_monomials)
        throw BudgetExceededError("slice oracle monomial budget exceeded",
                                  "monomials=" + std::to_string(total));

    auto code_of = [&](const std::vector<uint16_t>& ranks) {
        uint64_t v = 0;
        for (uint16_t r : ranks) v = v * alphabet + r;
        return offset[ranks.size()] + v;
    };

    // Echelon basis: pivot code -> row index.
    std::vector<SparseRow> rows;
    std::unordered_map<uint64_t, uint32_t> pivots;
    size_t rank = 0;

    auto insert_row = [&](SparseRow row) {
        while (!row.empty()) {
            uint64_t lead = row.front().first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                Rat lc = row.front().second;
                if (lc != 1) {
                    Rat inv = Rat(1) / lc;
                    for (auto& [cd, v] : row) v *= inv;
                }
                pivots.emplace(lead, static_cast<uint32_t>(rows.size()));
                rows.push_back(std::move(row));
                ++rank;
                return;
            }
            row = axpy(row, -row.front().second, rows[it->second]);
        }
    };

    size_t products = 0;
    std::vector<uint16_t> a_ranks, b_ranks;
    // Enumerate padding words by rank digits directly.
    auto for_each_word = [&](int len, auto&& body) {
        std::vector<uint16_t> w(len, 0);
        while (true) {
            body(w);
            int i = len - 1;
            while (i >= 0 && w[i] == alphabet - 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
        }
    };

    for (const auto& g : generators) {
        if (g.is_zero()) throw ZeroPolynomialError("zero polynomial among the generators");
        int dg = g.degree();
        if (dg > d) continue;
        // Pre-rank the generator's terms once.
        std::vector<std::pair<std::vector<uint16_t>, Rat>> gterms;
        for (const auto& [m, c] : g.terms()) {
            std::vector<uint16_t> ranks(m.degree());
            for (size_t i = 0; i < m.degree(); ++i)
                ranks[i] = static_cast<uint16_t>(ord.rank(m.index_at(i)));
            gterms.emplace_back(std::move(ranks), c);
        }
        for (int la = 0; la + dg <= d; ++la) {
            for_each_word(la, [&](const std::vector<uint16_t>& wa) {
                for (int lb = 0; la + dg + lb <= d; ++lb) {
                    for_each_word(lb, [&](const std::vector<uint16_t>& wb) {
                        if (++products > budget.max_products)
                            throw BudgetExceededError("slice oracle product budget exceeded",
                                                      "products=" + std::to_string(products));
                        SparseRow row;
                        row.reserve(gterms.size());
                        for (const auto& [ranks, c] : gterms) {
                            std::vector<uint16_t> word;
                            word.reserve(wa.size() + ranks.size() + wb.size());
                            word.insert(word.end(), wa.begin(), wa.end());
                            word.insert(word.end(), ranks.begin(), ranks.end());
                            word.insert(word.end(), wb.begin(), wb.end());
                            row.emplace_back(code_of(word), c);
                        }
                        std::sort(row.begin(), row.end(),
                                  [](const auto& x, const auto& y) { return x.first > y.first; });
                        insert_row(std::move(row));
                    });
                }
            });
        }
    }
    return Int(total) - Int(rank);
}

}  // namespace qpg
