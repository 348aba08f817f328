#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qpg/freealg.hpp"

namespace qpg {

enum class Letter : uint8_t { p = 0, q = 1 };

inline Letter other(Letter l) { return l == Letter::p ? Letter::q : Letter::p; }

/// Alternating product of two idempotent letters, determined by its length
/// and first letter. Length 0 is the unit.
class AltWord {
public:
    AltWord() : len_(0), first_(Letter::p) {}
    AltWord(uint32_t length, Letter first) : len_(length), first_(first) {}
    static AltWord one() { return AltWord(); }
    static AltWord single(Letter l) { return AltWord(1, l); }

    uint32_t length() const { return len_; }
    bool is_one() const { return len_ == 0; }
    Letter first() const { return first_; }
    Letter last() const { return len_ % 2 == 1 ? first_ : other(first_); }

    /// 0 for the unit; length l starting with p -> 2l-1, starting with q -> 2l.
    uint32_t index() const {
        if (len_ == 0) return 0;
        return first_ == Letter::p ? 2 * len_ - 1 : 2 * len_;
    }
    static AltWord from_index(uint32_t idx) {
        if (idx == 0) return one();
        return idx % 2 == 1 ? AltWord((idx + 1) / 2, Letter::p) : AltWord(idx / 2, Letter::q);
    }

    friend bool operator==(const AltWord& a, const AltWord& b) {
        return a.index() == b.index();
    }

    std::string str() const;  // "1", "p", "pqp", ...

private:
    uint32_t len_;
    Letter first_;
};

/// Concatenation with idempotent absorption at the seam: equal adjacent
/// letters merge into one.
AltWord mul_alt(AltWord a, AltWord b);

/// Elementary tensor of alternating words, one per leg; stored as per-leg
/// indices.
struct TensorWord {
    boost::container::small_vector<uint32_t, 4> legs;

    static TensorWord unit(size_t k) {
        TensorWord t;
        t.legs.assign(k, 0);
        return t;
    }
    size_t k() const { return legs.size(); }
    AltWord leg(size_t i) const { return AltWord::from_index(legs[i]); }
    uint32_t max_leg_length() const;

    /// Mixed-radix index, leg 0 least significant. Requires every per-leg
    /// index to be below the radix.
    uint64_t row_key(uint32_t radix) const;

    friend bool operator==(const TensorWord& a, const TensorWord& b) { return a.legs == b.legs; }
    std::string str() const;  // "p(x)qp(x)1"
};

struct TensorWordLess {
    bool operator()(const TensorWord& a, const TensorWord& b) const {
        return std::lexicographical_compare(a.legs.begin(), a.legs.end(), b.legs.begin(),
                                            b.legs.end());
    }
};

/// Exact element of the k-fold tensor power of the two-projection algebra,
/// expanded over elementary tensors of alternating words.
class AlgElement {
public:
    using TermMap = std::map<TensorWord, Rat, TensorWordLess>;

    explicit AlgElement(int k) : k_(k) {}
    static AlgElement zero(int k) { return AlgElement(k); }
    static AlgElement unit_element(int k) {
        AlgElement e(k);
        e.terms_.emplace(TensorWord::unit(k), 1);
        return e;
    }

    int k() const { return k_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    uint32_t max_leg_length() const;

    void add_term(const TensorWord& t, const Rat& c);
    AlgElement& operator+=(const AlgElement& other);
    AlgElement& operator-=(const AlgElement& other);
    AlgElement& operator*=(const Rat& c);
    friend bool operator==(const AlgElement& a, const AlgElement& b) {
        return a.k_ == b.k_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    int k_;
    TermMap terms_;
};

/// Bilinear extension of the leg-wise alternating-word product.
AlgElement mul_elements(const AlgElement& a, const AlgElement& b);
/// Tensor product: legs of b appended after legs of a.
AlgElement tensor_product(const AlgElement& a, const AlgElement& b);

/// n x n matrix over the k-fold tensor algebra.
struct MagicModel {
    int n = 0;
    int k = 0;
    int max_word_length = 0;
    std::vector<AlgElement> entries;  // row-major

    const AlgElement& at(int i, int j) const { return entries[(i - 1) * n + (j - 1)]; }
    AlgElement& at(int i, int j) { return entries[(i - 1) * n + (j - 1)]; }
};

/// The 4x4 initial magic unitary over the algebra generated by two
/// projections p and q.
MagicModel build_R();

/// Matrix product of corepresentations: (a (.) b)_ij = sum_l a_il (x) b_lj.
MagicModel operp(const MagicModel& a, const MagicModel& b);

/// The bundled concrete model: the threefold iterate of R.
MagicModel build_M();

/// Exact algebraic check: entries idempotent, row and column sums equal the
/// unit, same-row and same-column cross products vanish. On failure the first
/// violated relation is reported.
bool is_magic_unitary(const MagicModel& m, std::string* first_violation = nullptr);

/// Substitution homomorphism sending x_ij to the model entry.
AlgElement evaluate(const Polynomial& p, const MagicModel& m);

struct LegAssignment {
    uint8_t p = 0, q = 0;
};
using Assignment = std::vector<LegAssignment>;
using Permutation = std::vector<int>;  // sigma[i] = image of i, 0-based

/// Scalar character: substitutes the per-leg bits into every entry; the
/// result must be a permutation matrix, anything else signals an arithmetic
/// bug in the model.
std::vector<std::vector<int>> character_matrix(const MagicModel& m, const Assignment& a);
Permutation permutation_of_matrix(const std::vector<std::vector<int>>& mat);

std::set<Permutation> spectrum(const MagicModel& m);

struct CharacterRow {
    Assignment assignment;
    Permutation perm;
};
/// One witnessing assignment per distinct permutation, assignments enumerated
/// as a big-endian bit counter over (p1, q1, p2, q2, ...).
std::vector<CharacterRow> character_table(const MagicModel& m);

std::string cycles_string(const Permutation& p);         // "(13)(24)", "()" for identity
Permutation permutation_from_cycles(const std::string& s, int n);

}  // namespace qpg
