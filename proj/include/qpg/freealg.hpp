#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qpg/errors.hpp"
#include "qpg/numeric.hpp"

namespace qpg {

/// One symbol x_ij of the n x n variable alphabet, identified with its
/// row-major index (row-1)*n + (col-1).
class Variable {
public:
    Variable(int row, int col, int n);
    static Variable from_index(int index, int n);

    int row() const { return row_; }
    int col() const { return col_; }
    int n() const { return n_; }
    int index() const { return (row_ - 1) * n_ + (col_ - 1); }

    friend bool operator==(const Variable& a, const Variable& b) {
        return a.n_ == b.n_ && a.row_ == b.row_ && a.col_ == b.col_;
    }

    std::string str() const;  // "x11"

private:
    int row_, col_, n_;
};

/// A word over the variable alphabet; the empty word is the unit 1.
class Monomial {
public:
    explicit Monomial(int n) : n_(n) {}
    Monomial(int n, std::vector<uint16_t> word) : n_(n), word_(std::move(word)) {}
    Monomial(std::initializer_list<Variable> vars);
    static Monomial one(int n) { return Monomial(n); }

    int n() const { return n_; }
    size_t degree() const { return word_.size(); }
    bool is_one() const { return word_.empty(); }
    Variable at(size_t i) const { return Variable::from_index(word_[i], n_); }
    uint16_t index_at(size_t i) const { return word_[i]; }
    const std::vector<uint16_t>& word() const { return word_; }

    Monomial operator*(const Monomial& other) const;  // concatenation
    Monomial prefix(size_t len) const;
    Monomial suffix_from(size_t pos) const;

    /// True when `factor` occurs as a contiguous subword.
    bool contains_factor(const Monomial& factor) const;
    bool matches_at(const Monomial& factor, size_t pos) const;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.n_ == b.n_ && a.word_ == b.word_;
    }

    std::string str() const;  // "x11.x12", "1" for the unit

private:
    int n_;
    std::vector<uint16_t> word_;
};

/// Degree-lexicographic order induced by a permutation of the variables.
/// rank(v) is the position of v in the ascending variable list; the default
/// ranks variables by row-major index (x11 < x12 < ... < xnn).
class MonomialOrder {
public:
    static MonomialOrder row_major(int n);
    /// `ascending` lists all n*n variables from smallest to largest.
    static MonomialOrder from_permutation(int n, const std::vector<Variable>& ascending);

    int n() const { return n_; }
    int rank(uint16_t var_index) const { return rank_[var_index]; }
    /// Variables from smallest to largest rank.
    std::vector<Variable> ascending_variables() const;

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == std::strong_ordering::less;
    }

private:
    MonomialOrder(int n, std::vector<int> rank) : n_(n), rank_(std::move(rank)) {}
    int n_;
    std::vector<int> rank_;  // rank_[variable index] = position in the order
};

std::strong_ordering compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord);

/// Order-independent canonical ordering used for term storage: degree first,
/// then left-to-right on raw variable indices.
struct MonomialCanonicalLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Element of the free associative algebra over the rationals: a finite map
/// from monomials to nonzero coefficients.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rat, MonomialCanonicalLess>;

    explicit Polynomial(int n) : n_(n) {}
    Polynomial(const Monomial& m, const Rat& c = 1);
    static Polynomial zero(int n) { return Polynomial(n); }
    static Polynomial constant(int n, const Rat& c);

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    /// -1 for the zero polynomial.
    int degree() const;

    Rat coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Rat& c);

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rat& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rat& c) { return a *= c; }
    friend Polynomial operator*(const Rat& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    int n_;
    TermMap terms_;
};

Polynomial multiply(const Polynomial& p, const Polynomial& q);
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return multiply(p, q); }

/// The order-largest monomial of a nonzero polynomial together with its
/// coefficient.
std::pair<Monomial, Rat> leading_term(const Polynomial& p, const MonomialOrder& ord);

/// Generators of the two-sided ideal cutting out the n x n magic unitary
/// relations: idempotents, row and column sums, and row/column orthogonality
/// (one generator per ordered pair of distinct indices).
std::vector<Polynomial> magic_ideal_generators(int n);

}  // namespace qpg
