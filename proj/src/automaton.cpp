#include "qpg/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace qpg {

int Dfa::transition_count() const {
    int count = 0;
    for (const auto& row : next)
        for (int32_t t : row)
            if (t >= 0) ++count;
    return count;
}

bool Dfa::accepts(const Monomial& w) const {
    if (w.n() != n) throw AlphabetMismatchError("word over a different alphabet than automaton");
    int32_t s = initial;
    for (size_t i = 0; i < w.degree(); ++i) {
        s = next[s][w.index_at(i)];
        if (s < 0) return false;
    }
    return is_final[s];
}

Dfa forbidden_factor_dfa(const std::vector<Monomial>& leads, int n) {
    return forbidden_factor_dfa(leads, n, MonomialOrder::row_major(n));
}

Dfa forbidden_factor_dfa(const std::vector<Monomial>& leads, int n, const MonomialOrder& ord) {
    if (leads.empty()) throw InvalidSizeError("empty lead set");
    const int alphabet = n * n;
    for (const auto& lead : leads) {
        if (lead.n() != n) throw AlphabetMismatchError("lead over a different alphabet");
        if (lead.is_one())
            throw DegenerateLanguageError("the empty word as a forbidden factor empties the language");
    }

    // Trie of lead prefixes with failure links.
    struct Node {
        std::vector<int32_t> child;
        int32_t fail = 0;
        bool matched = false;
        explicit Node(int a) : child(a, -1) {}
    };
    std::vector<Node> trie;
    trie.emplace_back(alphabet);
    for (const auto& lead : leads) {
        int32_t s = 0;
        for (size_t i = 0; i < lead.degree(); ++i) {
            uint16_t a = lead.index_at(i);
            if (trie[s].child[a] < 0) {
                trie.emplace_back(alphabet);
                trie[s].child[a] = static_cast<int32_t>(trie.size() - 1);
            }
            s = trie[s].child[a];
        }
        trie[s].matched = true;
    }
    // Breadth-first failure links; a node whose failure chain hits a matched
    // node has a lead as a suffix and is itself matched.
    std::vector<int32_t> bfs;
    for (int a = 0; a < alphabet; ++a)
        if (trie[0].child[a] >= 0) bfs.push_back(trie[0].child[a]);
    std::vector<std::vector<int32_t>> go(trie.size(), std::vector<int32_t>(alphabet, 0));
    for (int a = 0; a < alphabet; ++a)
        if (trie[0].child[a] >= 0) go[0][a] = trie[0].child[a];
    for (size_t head = 0; head < bfs.size(); ++head) {
        int32_t u = bfs[head];
        trie[u].matched = trie[u].matched || trie[trie[u].fail].matched;
        for (int a = 0; a < alphabet; ++a) {
            int32_t c = trie[u].child[a];
            if (c >= 0) {
                trie[c].fail = go[trie[u].fail][a];
                go[u][a] = c;
                bfs.push_back(c);
            } else {
                go[u][a] = go[trie[u].fail][a];
            }
        }
    }

    // Keep live (unmatched) states; canonical numbering by breadth-first
    // discovery with symbols in ascending rank.
    std::vector<uint16_t> symbols(alphabet);
    for (int idx = 0; idx < alphabet; ++idx) symbols[ord.rank(idx)] = static_cast<uint16_t>(idx);

    std::vector<int32_t> id(trie.size(), -1);
    std::vector<int32_t> order_vec;
    id[0] = 0;
    order_vec.push_back(0);
    for (size_t head = 0; head < order_vec.size(); ++head) {
        int32_t u = order_vec[head];
        for (uint16_t a : symbols) {
            int32_t v = go[u][a];
            if (trie[v].matched || id[v] >= 0) continue;
            id[v] = static_cast<int32_t>(order_vec.size());
            order_vec.push_back(v);
        }
    }

    Dfa d;
    d.n = n;
    d.initial = 0;
    d.symbols_by_rank = symbols;
    d.next.assign(order_vec.size(), std::vector<int32_t>(alphabet, -1));
    d.is_final.assign(order_vec.size(), true);
    for (size_t i = 0; i < order_vec.size(); ++i) {
        int32_t u = order_vec[i];
        for (int a = 0; a < alphabet; ++a) {
            int32_t v = go[u][a];
            if (!trie[v].matched) d.next[i][a] = id[v];
        }
    }
    return d;
}

Dfa minimize(const Dfa& d) {
    const int S = d.states();
    const int alphabet = d.n * d.n;
    bool any_final = false, any_nonfinal = false;
    std::vector<int> cls(S);
    for (int s = 0; s < S; ++s) {
        cls[s] = d.is_final[s] ? 0 : 1;
        (d.is_final[s] ? any_final : any_nonfinal) = true;
    }
    int classes = (any_final && any_nonfinal) ? 2 : 1;

    while (true) {
        std::map<std::vector<int>, int> fresh;
        std::vector<int> next_cls(S);
        for (int s = 0; s < S; ++s) {
            std::vector<int> sig;
            sig.reserve(alphabet + 1);
            sig.push_back(cls[s]);
            for (int a = 0; a < alphabet; ++a) {
                int32_t t = d.next[s][a];
                sig.push_back(t < 0 ? -1 : cls[t]);
            }
            auto [it, fresh_class] = fresh.emplace(std::move(sig), static_cast<int>(fresh.size()));
            (void)fresh_class;
            next_cls[s] = it->second;
        }
        int count = static_cast<int>(fresh.size());
        cls = std::move(next_cls);
        if (count == classes) break;
        classes = count;
    }

    // One representative per class, then canonical breadth-first renumbering.
    std::vector<int> rep(classes, -1);
    for (int s = 0; s < S; ++s)
        if (rep[cls[s]] < 0) rep[cls[s]] = s;

    std::vector<int32_t> id(classes, -1);
    std::vector<int> order_vec;
    id[cls[d.initial]] = 0;
    order_vec.push_back(cls[d.initial]);
    for (size_t head = 0; head < order_vec.size(); ++head) {
        int c = order_vec[head];
        int s = rep[c];
        for (uint16_t a : d.symbols_by_rank) {
            int32_t t = d.next[s][a];
            if (t < 0) continue;
            int tc = cls[t];
            if (id[tc] < 0) {
                id[tc] = static_cast<int32_t>(order_vec.size());
                order_vec.push_back(tc);
            }
        }
    }

    Dfa out;
    out.n = d.n;
    out.initial = 0;
    out.symbols_by_rank = d.symbols_by_rank;
    out.next.assign(order_vec.size(), std::vector<int32_t>(alphabet, -1));
    out.is_final.assign(order_vec.size(), false);
    for (size_t i = 0; i < order_vec.size(); ++i) {
        int s = rep[order_vec[i]];
        out.is_final[i] = d.is_final[s];
        for (int a = 0; a < alphabet; ++a) {
            int32_t t = d.next[s][a];
            if (t >= 0) out.next[i][a] = id[cls[t]];
        }
    }
    return out;
}

LengthCounts count_by_length(const Dfa& d, int m) {
    if (m < 0) throw InvalidSizeError("negative length bound");
    const int S = d.states();
    LengthCounts lc;
    std::vector<Int> v(S, 0);
    v[d.initial] = 1;
    Int running = 0;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) {
            std::vector<Int> w(S, 0);
            for (int s = 0; s < S; ++s) {
                if (v[s] == 0) continue;
                for (int a = 0; a < d.n * d.n; ++a) {
                    int32_t t = d.next[s][a];
                    if (t >= 0) w[t] += v[s];
                }
            }
            v = std::move(w);
        }
        Int c = 0;
        for (int s = 0; s < S; ++s)
            if (d.is_final[s]) c += v[s];
        running += c;
        lc.counts.push_back(std::move(c));
        lc.cumulative.push_back(running);
    }
    return lc;
}

namespace {

// Growth classification from the cycle structure: with no cycle the language
// is finite; when every strongly connected component is a simple cycle the
// transition-count matrix has spectral radius exactly 1 and path counts grow
// polynomially; any component with an extra edge doubles up paths and forces
// exponential growth.
GrowthKind classify_growth(const Dfa& d) {
    const int S = d.states();
    std::vector<std::vector<int32_t>> adj(S);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < d.n * d.n; ++a)
            if (d.next[s][a] >= 0) adj[s].push_back(d.next[s][a]);

    // Iterative Tarjan.
    std::vector<int> index(S, -1), low(S, 0), comp(S, -1);
    std::vector<bool> on_stack(S, false);
    std::vector<int> stack;
    int next_index = 0, components = 0;
    struct Frame {
        int v;
        size_t edge;
    };
    for (int root = 0; root < S; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[f.v].size()) {
                int w = adj[f.v][f.edge++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = components;
                        if (w == f.v) break;
                    }
                    ++components;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }

    std::vector<int> comp_size(components, 0), comp_edges(components, 0);
    std::vector<bool> has_loop(components, false);
    for (int s = 0; s < S; ++s) {
        ++comp_size[comp[s]];
        for (int32_t t : adj[s])
            if (comp[t] == comp[s]) {
                ++comp_edges[comp[s]];
                if (t == s) has_loop[comp[s]] = true;
            }
    }
    bool any_cycle = false;
    for (int c = 0; c < components; ++c) {
        bool cyclic = comp_size[c] > 1 || has_loop[c];
        if (!cyclic) continue;
        any_cycle = true;
        if (comp_edges[c] > comp_size[c]) return GrowthKind::exponential;
    }
    return any_cycle ? GrowthKind::polynomial : GrowthKind::finite;
}

}  // namespace

GrowthResult growth_rate(const Dfa& d, double tol, unsigned long max_iterations) {
    if (tol <= 0) throw InvalidSizeError("tolerance must be positive");
    GrowthKind kind = classify_growth(d);
    if (kind == GrowthKind::finite) return {0.0, kind, 0};
    if (kind == GrowthKind::polynomial) return {1.0, kind, 0};

    const int S = d.states();
    std::vector<std::pair<int32_t, int32_t>> edges;
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < d.n * d.n; ++a)
            if (d.next[s][a] >= 0) edges.emplace_back(s, d.next[s][a]);

    std::vector<double> v(S, 1.0), w(S);
    double prev = -1, lambda = 0;
    for (unsigned long it = 1; it <= max_iterations; ++it) {
        std::fill(w.begin(), w.end(), 0.0);
        for (auto [s, t] : edges) w[t] += v[s];
        double num = 0, den = 0, norm2 = 0;
        for (int s = 0; s < S; ++s) {
            num += w[s] * v[s];
            den += v[s] * v[s];
            norm2 += w[s] * w[s];
        }
        if (norm2 == 0) return {0.0, GrowthKind::finite, it};
        lambda = num / den;
        double norm = std::sqrt(norm2);
        for (int s = 0; s < S; ++s) v[s] = w[s] / norm;
        if (prev >= 0 && std::abs(lambda - prev) < tol) return {lambda, kind, it};
        prev = lambda;
    }
    return {lambda, kind, max_iterations};
}

PathEnumerator::PathEnumerator(const Dfa& d, int m) : dfa_(&d), max_len_(m) {
    if (m < 0) throw InvalidSizeError("negative length bound");
    queue_.push_back(PathEntry{Monomial::one(d.n), {d.initial}});
}

std::optional<PathEntry> PathEnumerator::next() {
    while (!queue_.empty()) {
        PathEntry cur = std::move(queue_.front());
        queue_.pop_front();
        int state = cur.state_trace.back();
        if (static_cast<int>(cur.word.degree()) < max_len_) {
            for (uint16_t a : dfa_->symbols_by_rank) {
                int32_t t = dfa_->next[state][a];
                if (t < 0) continue;
                PathEntry child{cur.word * Monomial(dfa_->n, {a}), cur.state_trace};
                child.state_trace.push_back(t);
                queue_.push_back(std::move(child));
            }
        }
        if (dfa_->is_final[state]) return cur;
    }
    return std::nullopt;
}

std::vector<PathEntry> enumerate_paths(const Dfa& d, int m) {
    std::vector<PathEntry> out;
    PathEnumerator en(d, m);
    while (auto e = en.next()) out.push_back(std::move(*e));
    return out;
}

std::string export_dot(const Dfa& d) {
    std::ostringstream os;
    os << "digraph quotient_basis {\n  rankdir=LR;\n  __start [shape=none, label=\"\"];\n";
    for (int s = 0; s < d.states(); ++s)
        os << "  s" << s << " [shape=" << (d.is_final[s] ? "doublecircle" : "circle")
           << ", label=\"" << s << "\"];\n";
    os << "  __start -> s" << d.initial << ";\n";
    for (int s = 0; s < d.states(); ++s) {
        for (uint16_t a : d.symbols_by_rank) {
            int32_t t = d.next[s][a];
            if (t < 0) continue;
            os << "  s" << s << " -> s" << t << " [label=\""
               << Variable::from_index(a, d.n).str() << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace qpg
