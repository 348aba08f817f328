#include <doctest.h>

#include <random>

#include "qpg/freealg.hpp"

using namespace qpg;

namespace {

Variable x(int i, int j, int n = 4) { return Variable(i, j, n); }

Monomial random_word(std::mt19937& rng, int n, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> var(0, n * n - 1);
    std::vector<uint16_t> w(len(rng));
    for (auto& a : w) a = static_cast<uint16_t>(var(rng));
    return Monomial(n, std::move(w));
}

Polynomial random_poly(std::mt19937& rng, int n, int max_len, int max_terms) {
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::uniform_int_distribution<int> coeff(-5, 5);
    Polynomial p(n);
    int t = terms(rng);
    for (int i = 0; i < t; ++i) p.add_term(random_word(rng, n, max_len), coeff(rng));
    return p;
}

}  // namespace

TEST_CASE("degree-lex comparison basics") {
    MonomialOrder ord = MonomialOrder::row_major(4);
    CHECK(ord.compare(Monomial::one(4), Monomial{x(1, 1)}) == std::strong_ordering::less);
    CHECK(ord.compare(Monomial{x(1, 1), x(2, 2)}, Monomial{x(1, 2)}) ==
          std::strong_ordering::greater);
    // lexicographic tiebreak: rank(x22) > rank(x21)
    CHECK(ord.compare(Monomial{x(1, 1), x(2, 2)}, Monomial{x(1, 1), x(2, 1)}) ==
          std::strong_ordering::greater);
    CHECK(ord.compare(Monomial{x(1, 2)}, Monomial{x(1, 2)}) == std::strong_ordering::equal);
}

TEST_CASE("comparing words over mismatched alphabets fails") {
    MonomialOrder ord = MonomialOrder::row_major(4);
    CHECK_THROWS_AS(ord.compare(Monomial::one(3), Monomial::one(4)), AlphabetMismatchError);
    CHECK_THROWS_AS(Monomial{x(1, 1, 3)} * Monomial{x(1, 1, 4)}, AlphabetMismatchError);
}

TEST_CASE("compare is a total well-order compatible with concatenation") {
    MonomialOrder ord = MonomialOrder::row_major(3);
    std::mt19937 rng(7);
    Monomial one = Monomial::one(3);
    for (int trial = 0; trial < 400; ++trial) {
        Monomial a = random_word(rng, 3, 4), b = random_word(rng, 3, 4), c = random_word(rng, 3, 4);
        // antisymmetry
        auto ab = ord.compare(a, b);
        auto ba = ord.compare(b, a);
        CHECK(ab == (ba == std::strong_ordering::less      ? std::strong_ordering::greater
                     : ba == std::strong_ordering::greater ? std::strong_ordering::less
                                                           : std::strong_ordering::equal));
        CHECK((ab == std::strong_ordering::equal) == (a == b));
        // transitivity
        if (ord.less(a, b) && ord.less(b, c)) CHECK(ord.less(a, c));
        // 1 is the minimum
        if (!(a == one)) CHECK(ord.less(one, a));
        // multiplication compatibility
        if (ord.less(a, b)) {
            CHECK(ord.less(c * a, c * b));
            CHECK(ord.less(a * c, b * c));
        }
    }
}

TEST_CASE("free product follows concatenation") {
    CHECK(Monomial{x(1, 2)} * Monomial{x(2, 4)} == Monomial{x(1, 2), x(2, 4)});

    // (x11 - 1)(x11 + 1) = x11^2 - 1
    Polynomial a(Monomial{x(1, 1)});
    a -= Polynomial::constant(4, 1);
    Polynomial b(Monomial{x(1, 1)});
    b += Polynomial::constant(4, 1);
    Polynomial expected(Monomial{x(1, 1), x(1, 1)});
    expected -= Polynomial::constant(4, 1);
    CHECK(a * b == expected);

    Polynomial p(Monomial{x(1, 3), x(2, 2)}, Rat(3, 2));
    CHECK(Polynomial::zero(4) * p == Polynomial::zero(4));
}

TEST_CASE("product is associative, distributive, degree-additive") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial a = random_poly(rng, 2, 3, 4);
        Polynomial b = random_poly(rng, 2, 3, 4);
        Polynomial c = random_poly(rng, 2, 3, 4);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero() && !b.is_zero()) {
            // no zero divisors in the free algebra
            CHECK(!(a * b).is_zero());
            CHECK((a * b).degree() == a.degree() + b.degree());
        }
    }
}

TEST_CASE("leading terms under the default order") {
    MonomialOrder ord = MonomialOrder::row_major(4);

    Polynomial p(Monomial{x(1, 2)});
    p += Polynomial(Monomial{x(1, 1)});
    auto [lt1, c1] = leading_term(p, ord);
    CHECK(lt1 == Monomial{x(1, 2)});
    CHECK(c1 == 1);

    Polynomial q(Monomial{x(1, 1), x(2, 2)}, 3);
    q -= Polynomial(Monomial{x(4, 4)});
    auto [lt2, c2] = leading_term(q, ord);
    CHECK(lt2 == Monomial{x(1, 1), x(2, 2)});
    CHECK(c2 == 3);

    Polynomial row(4);
    for (int k = 1; k <= 4; ++k) row += Polynomial(Monomial{x(1, k)});
    row -= Polynomial::constant(4, 1);
    auto [lt3, c3] = leading_term(row, ord);
    CHECK(lt3 == Monomial{x(1, 4)});
    CHECK(c3 == 1);

    CHECK_THROWS_AS(leading_term(Polynomial::zero(4), ord), ZeroPolynomialError);
}

TEST_CASE("leading term respects a custom variable order") {
    // Reverse order: x11 is the largest variable.
    std::vector<Variable> asc;
    for (int idx = 15; idx >= 0; --idx) asc.push_back(Variable::from_index(idx, 4));
    MonomialOrder ord = MonomialOrder::from_permutation(4, asc);
    Polynomial row(4);
    for (int k = 1; k <= 4; ++k) row += Polynomial(Monomial{x(1, k)});
    row -= Polynomial::constant(4, 1);
    CHECK(leading_term(row, ord).first == Monomial{x(1, 1)});
}

TEST_CASE("magic unitary relation generators") {
    SUBCASE("n = 1") {
        auto gens = magic_ideal_generators(1);
        REQUIRE(gens.size() == 3);
        Variable y(1, 1, 1);
        Polynomial sq(Monomial{y, y});
        sq -= Polynomial(Monomial{y});
        Polynomial lin(Monomial{y});
        lin -= Polynomial::constant(1, 1);
        CHECK(gens[0] == sq);
        CHECK(gens[1] == lin);
        CHECK(gens[2] == lin);
    }
    SUBCASE("n = 4 family counts") {
        auto gens = magic_ideal_generators(4);
        CHECK(gens.size() == 16 + 8 + 96);
        size_t squares = 0, sums = 0, orth = 0;
        for (const auto& g : gens) {
            if (g.term_count() == 2 && g.degree() == 2)
                ++squares;
            else if (g.term_count() == 5)
                ++sums;
            else if (g.term_count() == 1)
                ++orth;
        }
        CHECK(squares == 16);
        CHECK(sums == 8);
        CHECK(orth == 96);
    }
    SUBCASE("n = 2 contains the row orthogonality product x11*x12") {
        auto gens = magic_ideal_generators(2);
        Polynomial target(Monomial{x(1, 1, 2), x(1, 2, 2)});
        CHECK(std::count(gens.begin(), gens.end(), target) == 1);
    }
    SUBCASE("invalid size") { CHECK_THROWS_AS(magic_ideal_generators(0), InvalidSizeError); }
}
