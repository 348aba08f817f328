#include "qpg/projalg.hpp"

#include <algorithm>
#include <sstream>

namespace qpg {

std::string AltWord::str() const {
    if (len_ == 0) return "1";
    std::string s;
    Letter l = first_;
    for (uint32_t i = 0; i < len_; ++i) {
        s += (l == Letter::p ? 'p' : 'q');
        l = other(l);
    }
    return s;
}

AltWord mul_alt(AltWord a, AltWord b) {
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    uint32_t len = a.length() + b.length();
    if (a.last() == b.first()) --len;  // idempotent merge at the seam
    return AltWord(len, a.first());
}

uint32_t TensorWord::max_leg_length() const {
    uint32_t m = 0;
    for (size_t i = 0; i < legs.size(); ++i) m = std::max(m, leg(i).length());
    return m;
}

uint64_t TensorWord::row_key(uint32_t radix) const {
    uint64_t key = 0;
    for (size_t i = legs.size(); i-- > 0;) {
        key = key * radix + legs[i];
    }
    return key;
}

std::string TensorWord::str() const {
    std::string s;
    for (size_t i = 0; i < legs.size(); ++i) {
        if (i) s += "(x)";
        s += leg(i).str();
    }
    return s;
}

uint32_t AlgElement::max_leg_length() const {
    uint32_t m = 0;
    for (const auto& [t, c] : terms_) m = std::max(m, t.max_leg_length());
    return m;
}

void AlgElement::add_term(const TensorWord& t, const Rat& c) {
    if (static_cast<int>(t.k()) != k_) throw ShapeError("tensor word with wrong leg count");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

AlgElement& AlgElement::operator+=(const AlgElement& other) {
    if (k_ != other.k_) throw ShapeError("adding elements with different leg counts");
    for (const auto& [t, c] : other.terms_) add_term(t, c);
    return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& other) {
    if (k_ != other.k_) throw ShapeError("subtracting elements with different leg counts");
    for (const auto& [t, c] : other.terms_) add_term(t, -c);
    return *this;
}

AlgElement& AlgElement::operator*=(const Rat& c) {
    if (c == 0) {
        *this = AlgElement(k_);
        return *this;
    }
    for (auto& term : terms_) term.second *= c;
    return *this;
}

std::string AlgElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [t, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += rat_to_string(c) + "*" + t.str();
    }
    return s;
}

AlgElement mul_elements(const AlgElement& a, const AlgElement& b) {
    if (a.k() != b.k()) throw ShapeError("multiplying elements with different leg counts");
    AlgElement out(a.k());
    for (const auto& [ta, ca] : a.terms()) {
        for (const auto& [tb, cb] : b.terms()) {
            TensorWord t;
            t.legs.resize(ta.legs.size());
            for (size_t i = 0; i < ta.legs.size(); ++i)
                t.legs[i] = mul_alt(ta.leg(i), tb.leg(i)).index();
            out.add_term(t, ca * cb);
        }
    }
    return out;
}

AlgElement tensor_product(const AlgElement& a, const AlgElement& b) {
    AlgElement out(a.k() + b.k());
    for (const auto& [ta, ca] : a.terms()) {
        for (const auto& [tb, cb] : b.terms()) {
            TensorWord t;
            t.legs = ta.legs;
            t.legs.insert(t.legs.end(), tb.legs.begin(), tb.legs.end());
            out.add_term(t, ca * cb);
        }
    }
    return out;
}

namespace {

AlgElement letter_element(Letter l) {
    AlgElement e(1);
    TensorWord t;
    t.legs.push_back(AltWord::single(l).index());
    e.add_term(t, 1);
    return e;
}

AlgElement one_minus(Letter l) {
    AlgElement e = AlgElement::unit_element(1);
    e -= letter_element(l);
    return e;
}

}  // namespace

MagicModel build_R() {
    MagicModel r;
    r.n = 4;
    r.k = 1;
    r.max_word_length = 1;
    AlgElement P = letter_element(Letter::p);
    AlgElement Q = letter_element(Letter::q);
    AlgElement cP = one_minus(Letter::p);
    AlgElement cQ = one_minus(Letter::q);
    AlgElement Z = AlgElement::zero(1);
    r.entries = {P, Z, cP, Z,   //
                 cP, Z, P, Z,   //
                 Z, Q, Z, cQ,   //
                 Z, cQ, Z, Q};
    return r;
}

MagicModel operp(const MagicModel& a, const MagicModel& b) {
    if (a.n != b.n) throw ShapeError("matrix sizes differ");
    MagicModel out;
    out.n = a.n;
    out.k = a.k + b.k;
    out.max_word_length = std::max(a.max_word_length, b.max_word_length);
    out.entries.assign(static_cast<size_t>(out.n) * out.n, AlgElement(out.k));
    for (int i = 1; i <= out.n; ++i) {
        for (int j = 1; j <= out.n; ++j) {
            AlgElement sum(out.k);
            for (int l = 1; l <= out.n; ++l) sum += tensor_product(a.at(i, l), b.at(l, j));
            out.at(i, j) = std::move(sum);
        }
    }
    return out;
}

MagicModel build_M() {
    MagicModel r = build_R();
    return operp(r, operp(r, r));
}

bool is_magic_unitary(const MagicModel& m, std::string* first_violation) {
    auto fail = [&](const std::string& what) {
        if (first_violation) *first_violation = what;
        return false;
    };
    const AlgElement unit = AlgElement::unit_element(m.k);
    for (int i = 1; i <= m.n; ++i) {
        for (int j = 1; j <= m.n; ++j) {
            const AlgElement& e = m.at(i, j);
            if (!(mul_elements(e, e) == e))
                return fail("entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is not idempotent");
        }
    }
    for (int i = 1; i <= m.n; ++i) {
        AlgElement row(m.k), col(m.k);
        for (int j = 1; j <= m.n; ++j) {
            row += m.at(i, j);
            col += m.at(j, i);
        }
        if (!(row == unit)) return fail("row " + std::to_string(i) + " does not sum to 1");
        if (!(col == unit)) return fail("column " + std::to_string(i) + " does not sum to 1");
    }
    for (int i = 1; i <= m.n; ++i)
        for (int j = 1; j <= m.n; ++j)
            for (int l = 1; l <= m.n; ++l) {
                if (j == l) continue;
                if (!mul_elements(m.at(i, j), m.at(i, l)).is_zero())
                    return fail("row " + std::to_string(i) + " entries " + std::to_string(j) +
                                "," + std::to_string(l) + " do not annihilate");
                if (!mul_elements(m.at(j, i), m.at(l, i)).is_zero())
                    return fail("column " + std::to_string(i) + " entries " + std::to_string(j) +
                                "," + std::to_string(l) + " do not annihilate");
            }
    return true;
}

AlgElement evaluate(const Polynomial& p, const MagicModel& m) {
    if (p.n() != m.n) throw ShapeError("polynomial alphabet does not match the model size");
    AlgElement out(m.k);
    for (const auto& [mon, c] : p.terms()) {
        AlgElement prod = AlgElement::unit_element(m.k);
        for (size_t i = 0; i < mon.degree(); ++i) {
            Variable v = mon.at(i);
            prod = mul_elements(prod, m.at(v.row(), v.col()));
            if (prod.is_zero()) break;
        }
        prod *= c;
        out += prod;
    }
    return out;
}

namespace {

int alt_word_value(AltWord w, const LegAssignment& bits) {
    if (w.is_one()) return 1;
    int first = w.first() == Letter::p ? bits.p : bits.q;
    if (w.length() == 1) return first;
    int second = w.first() == Letter::p ? bits.q : bits.p;
    return first & second;
}

}  // namespace

std::vector<std::vector<int>> character_matrix(const MagicModel& m, const Assignment& a) {
    if (static_cast<int>(a.size()) != m.k) throw ShapeError("assignment length differs from leg count");
    std::vector<std::vector<int>> mat(m.n, std::vector<int>(m.n, 0));
    for (int i = 1; i <= m.n; ++i) {
        for (int j = 1; j <= m.n; ++j) {
            Rat v = 0;
            for (const auto& [t, c] : m.at(i, j).terms()) {
                int prod = 1;
                for (size_t leg = 0; leg < t.k() && prod; ++leg)
                    prod &= alt_word_value(t.leg(leg), a[leg]);
                if (prod) v += c;
            }
            if (v == 0)
                mat[i - 1][j - 1] = 0;
            else if (v == 1)
                mat[i - 1][j - 1] = 1;
            else
                throw ModelViolationError("character value outside {0,1} at entry (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    permutation_of_matrix(mat);  // validates
    return mat;
}

Permutation permutation_of_matrix(const std::vector<std::vector<int>>& mat) {
    const int n = static_cast<int>(mat.size());
    Permutation perm(n, -1);
    std::vector<int> col_used(n, 0);
    for (int i = 0; i < n; ++i) {
        int ones = 0;
        for (int j = 0; j < n; ++j) {
            if (mat[i][j] == 1) {
                ++ones;
                perm[i] = j;
                col_used[j] += 1;
            }
        }
        if (ones != 1) throw ModelViolationError("character matrix row without a unique 1");
    }
    for (int j = 0; j < n; ++j)
        if (col_used[j] != 1) throw ModelViolationError("character matrix column without a unique 1");
    return perm;
}

namespace {

Assignment assignment_from_counter(uint64_t counter, int k) {
    Assignment a(k);
    // Bits are (p1, q1, p2, q2, ...) from the most significant end.
    for (int leg = 0; leg < k; ++leg) {
        a[leg].p = static_cast<uint8_t>((counter >> (2 * k - 1 - 2 * leg)) & 1);
        a[leg].q = static_cast<uint8_t>((counter >> (2 * k - 2 - 2 * leg)) & 1);
    }
    return a;
}

}  // namespace

std::set<Permutation> spectrum(const MagicModel& m) {
    std::set<Permutation> perms;
    const uint64_t count = uint64_t(1) << (2 * m.k);
    for (uint64_t c = 0; c < count; ++c)
        perms.insert(permutation_of_matrix(character_matrix(m, assignment_from_counter(c, m.k))));
    return perms;
}

std::vector<CharacterRow> character_table(const MagicModel& m) {
    std::vector<CharacterRow> rows;
    std::set<Permutation> seen;
    const uint64_t count = uint64_t(1) << (2 * m.k);
    for (uint64_t c = 0; c < count; ++c) {
        Assignment a = assignment_from_counter(c, m.k);
        Permutation perm = permutation_of_matrix(character_matrix(m, a));
        if (seen.insert(perm).second) rows.push_back(CharacterRow{std::move(a), std::move(perm)});
    }
    return rows;
}

std::string cycles_string(const Permutation& p) {
    const int n = static_cast<int>(p.size());
    std::vector<bool> seen(n, false);
    std::string s;
    for (int i = 0; i < n; ++i) {
        if (seen[i] || p[i] == i) continue;
        std::string cycle = "(" + std::to_string(i + 1);
        seen[i] = true;
        for (int j = p[i]; j != i; j = p[j]) {
            seen[j] = true;
            cycle += std::to_string(j + 1);
        }
        cycle += ")";
        s += cycle;
    }
    return s.empty() ? "()" : s;
}

Permutation permutation_from_cycles(const std::string& s, int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::vector<int> cycle;
    auto close_cycle = [&]() {
        for (size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
        cycle.clear();
    };
    for (char c : s) {
        if (c == '(') {
            cycle.clear();
        } else if (c == ')') {
            close_cycle();
        } else if (c >= '1' && c <= '9') {
            int v = c - '1';
            if (v >= n) throw InvalidSizeError("cycle element out of range");
            cycle.push_back(v);
        } else if (c != ' ') {
            throw InvalidSizeError("unexpected character in cycle notation");
        }
    }
    return p;
}

}  // namespace qpg
