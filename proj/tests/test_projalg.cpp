#include <doctest.h>

#include <algorithm>
#include <random>

#include "qpg/groebner.hpp"
#include "qpg/projalg.hpp"

using namespace qpg;

namespace {

AlgElement letter(Letter l) {
    AlgElement e(1);
    TensorWord t;
    t.legs.push_back(AltWord::single(l).index());
    e.add_term(t, 1);
    return e;
}

AlgElement one_minus(Letter l) {
    AlgElement e = AlgElement::unit_element(1);
    e -= letter(l);
    return e;
}

AlgElement elementary(std::initializer_list<AlgElement> legs) {
    AlgElement out(0);
    bool first = true;
    for (const auto& leg : legs) {
        out = first ? leg : tensor_product(out, leg);
        first = false;
    }
    return out;
}

AltWord alt(uint32_t len, Letter first) { return AltWord(len, first); }

}  // namespace

TEST_CASE("alternating word product with idempotent seam") {
    AltWord p = AltWord::single(Letter::p);
    AltWord q = AltWord::single(Letter::q);

    CHECK(mul_alt(p, p) == p);
    CHECK(mul_alt(p, q) == alt(2, Letter::p));
    // pq * qp = p q q p = pqp
    CHECK(mul_alt(alt(2, Letter::p), alt(2, Letter::q)) == alt(3, Letter::p));
    CHECK(mul_alt(AltWord::one(), alt(5, Letter::q)) == alt(5, Letter::q));
    CHECK(mul_alt(alt(5, Letter::q), AltWord::one()) == alt(5, Letter::q));
}

TEST_CASE("alternating word index is a bijection with 2m+1 words up to length m") {
    for (uint32_t idx = 0; idx <= 41; ++idx) CHECK(AltWord::from_index(idx).index() == idx);
    for (uint32_t m = 0; m <= 6; ++m) {
        // indices 0..2m enumerate exactly the words of length <= m
        for (uint32_t idx = 0; idx <= 2 * m; ++idx)
            CHECK(AltWord::from_index(idx).length() <= m);
        CHECK(AltWord::from_index(2 * m + 1).length() == m + 1);
    }
}

TEST_CASE("alternating word product is associative up to length 6") {
    std::vector<AltWord> words;
    for (uint32_t idx = 0; idx <= 12; ++idx) words.push_back(AltWord::from_index(idx));
    for (const AltWord& a : words)
        for (const AltWord& b : words)
            for (const AltWord& c : words)
                CHECK(mul_alt(mul_alt(a, b), c) == mul_alt(a, mul_alt(b, c)));
}

TEST_CASE("element products") {
    // (1-p) * p = 0
    CHECK(mul_elements(one_minus(Letter::p), letter(Letter::p)).is_zero());

    // ((1-p) (x) q) * (p (x) (1-q)) = 0
    AlgElement a = elementary({one_minus(Letter::p), letter(Letter::q)});
    AlgElement b = elementary({letter(Letter::p), one_minus(Letter::q)});
    CHECK(mul_elements(a, b).is_zero());

    // (p (x) p (x) p) * (q (x) q (x) q) = pq (x) pq (x) pq
    AlgElement ppp = elementary({letter(Letter::p), letter(Letter::p), letter(Letter::p)});
    AlgElement qqq = elementary({letter(Letter::q), letter(Letter::q), letter(Letter::q)});
    AlgElement prod = mul_elements(ppp, qqq);
    REQUIRE(prod.term_count() == 1);
    TensorWord expect;
    for (int i = 0; i < 3; ++i) expect.legs.push_back(alt(2, Letter::p).index());
    CHECK(prod.terms().begin()->first == expect);
    CHECK(prod.terms().begin()->second == 1);

    CHECK_THROWS_AS(mul_elements(ppp, letter(Letter::p)), ShapeError);
}

TEST_CASE("support lengths add under multiplication") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> idx(0, 8), coeff(-3, 3), terms(1, 5);
    for (int trial = 0; trial < 50; ++trial) {
        AlgElement a(2), b(2);
        for (int t = terms(rng); t-- > 0;) {
            TensorWord w;
            w.legs = {static_cast<uint32_t>(idx(rng)), static_cast<uint32_t>(idx(rng))};
            a.add_term(w, coeff(rng));
        }
        for (int t = terms(rng); t-- > 0;) {
            TensorWord w;
            w.legs = {static_cast<uint32_t>(idx(rng)), static_cast<uint32_t>(idx(rng))};
            b.add_term(w, coeff(rng));
        }
        AlgElement ab = mul_elements(a, b);
        CHECK(ab.max_leg_length() <= a.max_leg_length() + b.max_leg_length());
    }
}

TEST_CASE("initial model R") {
    MagicModel r = build_R();
    CHECK(r.n == 4);
    CHECK(r.k == 1);
    CHECK(r.at(1, 1) == letter(Letter::p));
    CHECK(r.at(1, 2).is_zero());
    CHECK(r.at(1, 3) == one_minus(Letter::p));
    CHECK(r.at(3, 2) == letter(Letter::q));
    AlgElement unit = AlgElement::unit_element(1);
    for (int i = 1; i <= 4; ++i) {
        AlgElement row(1), col(1);
        for (int j = 1; j <= 4; ++j) {
            row += r.at(i, j);
            col += r.at(j, i);
        }
        CHECK(row == unit);
        CHECK(col == unit);
    }
    CHECK(is_magic_unitary(r));
}

TEST_CASE("twofold iterate matches the displayed matrix") {
    MagicModel r = build_R();
    MagicModel r2 = operp(r, r);
    REQUIRE(r2.k == 2);

    auto e = [&](const AlgElement& a, const AlgElement& b) { return elementary({a, b}); };
    AlgElement P = letter(Letter::p), Q = letter(Letter::q);
    AlgElement cP = one_minus(Letter::p), cQ = one_minus(Letter::q);
    // row 1: p(x)p, (1-p)(x)q, p(x)(1-p), (1-p)(x)(1-q)
    CHECK(r2.at(1, 1) == e(P, P));
    CHECK(r2.at(1, 2) == e(cP, Q));
    CHECK(r2.at(1, 3) == e(P, cP));
    CHECK(r2.at(1, 4) == e(cP, cQ));
    // row 2: (1-p)(x)p, p(x)q, (1-p)(x)(1-p), p(x)(1-q)
    CHECK(r2.at(2, 1) == e(cP, P));
    CHECK(r2.at(2, 2) == e(P, Q));
    CHECK(r2.at(2, 3) == e(cP, cP));
    CHECK(r2.at(2, 4) == e(P, cQ));
    // row 3: q(x)(1-p), (1-q)(x)(1-q), q(x)p, (1-q)(x)q
    CHECK(r2.at(3, 1) == e(Q, cP));
    CHECK(r2.at(3, 2) == e(cQ, cQ));
    CHECK(r2.at(3, 3) == e(Q, P));
    CHECK(r2.at(3, 4) == e(cQ, Q));
    // row 4: (1-q)(x)(1-p), q(x)(1-q), (1-q)(x)p, q(x)q
    CHECK(r2.at(4, 1) == e(cQ, cP));
    CHECK(r2.at(4, 2) == e(Q, cQ));
    CHECK(r2.at(4, 3) == e(cQ, P));
    CHECK(r2.at(4, 4) == e(Q, Q));

    CHECK(is_magic_unitary(r2));
}

TEST_CASE("threefold iterate") {
    MagicModel m = build_M();
    CHECK(m.n == 4);
    CHECK(m.k == 3);
    CHECK(is_magic_unitary(m));

    // entry (1,1) = p(x)p(x)p + (1-p)(x)q(x)(1-p), 5 basis terms
    AlgElement expected =
        elementary({letter(Letter::p), letter(Letter::p), letter(Letter::p)});
    expected += elementary({one_minus(Letter::p), letter(Letter::q), one_minus(Letter::p)});
    CHECK(m.at(1, 1) == expected);
    CHECK(m.at(1, 1).term_count() == 5);

    // Each entry is a sum of two elementary tensors over {p,q,1-p,1-q};
    // expanding (1-p)(x)(1-p)(x)(1-q) + p(x)(1-q)(x)q style entries gives 8+2
    // raw terms with one overlap, so the densest entries carry 9 terms.
    size_t max_terms = 0;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) max_terms = std::max(max_terms, m.at(i, j).term_count());
    CHECK(max_terms == 9);
    CHECK(m.at(2, 4).term_count() == 9);

    // every entry lies in the span of single-letter legs
    for (const auto& entry : m.entries) CHECK(entry.max_leg_length() <= 1);
}

TEST_CASE("tampered model is rejected with a report") {
    MagicModel r = build_R();
    r.at(1, 1) = letter(Letter::q);
    std::string report;
    CHECK_FALSE(is_magic_unitary(r, &report));
    CHECK(!report.empty());
}

TEST_CASE("evaluation of the separating polynomials of the lower iterates") {
    MagicModel r = build_R();
    MagicModel r2 = operp(r, r);
    MagicModel r3 = build_M();

    Polynomial p1(Monomial{Variable(1, 2, 4)});
    Polynomial p2(Monomial{Variable(1, 2, 4), Variable(2, 4, 4)});

    CHECK(evaluate(p1, r).is_zero());
    CHECK(evaluate(p2, r2).is_zero());
    CHECK_FALSE(evaluate(p2, r3).is_zero());

    // magic unitary row relation vanishes on every iterate
    Polynomial row(4);
    for (int k = 1; k <= 4; ++k) row += Polynomial(Monomial{Variable(1, k, 4)});
    row -= Polynomial::constant(4, 1);
    CHECK(evaluate(row, r3).is_zero());

    CHECK_THROWS_AS(evaluate(Polynomial::constant(3, 1), r), ShapeError);
}

TEST_CASE("evaluation is a ring homomorphism") {
    MagicModel m = build_M();
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> var(0, 15), len(0, 3), coeff(-2, 2), terms(0, 4);
    auto random_poly = [&]() {
        Polynomial p(4);
        for (int t = terms(rng); t-- > 0;) {
            std::vector<uint16_t> w(len(rng));
            for (auto& a : w) a = static_cast<uint16_t>(var(rng));
            p.add_term(Monomial(4, std::move(w)), coeff(rng));
        }
        return p;
    };
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial a = random_poly(), b = random_poly();
        AlgElement lhs = evaluate(a * b, m);
        AlgElement rhs = mul_elements(evaluate(a, m), evaluate(b, m));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("characters reproduce the printed rows") {
    MagicModel m = build_M();
    auto perm_of = [&](std::initializer_list<int> bits) {
        Assignment a;
        auto it = bits.begin();
        while (it != bits.end()) {
            LegAssignment leg;
            leg.p = static_cast<uint8_t>(*it++);
            leg.q = static_cast<uint8_t>(*it++);
            a.push_back(leg);
        }
        return permutation_of_matrix(character_matrix(m, a));
    };

    CHECK(perm_of({0, 1, 0, 1, 0, 1}) == permutation_from_cycles("()", 4));
    CHECK(perm_of({0, 1, 0, 1, 1, 0}) == permutation_from_cycles("(13)(24)", 4));
    CHECK(perm_of({0, 0, 1, 1, 0, 1}) == permutation_from_cycles("(234)", 4));
}

TEST_CASE("spectrum of the threefold iterate is the full symmetric group") {
    MagicModel m = build_M();
    std::set<Permutation> perms = spectrum(m);
    CHECK(perms.size() == 24);

    // still full when p of leg 1 is pinned to zero
    std::set<Permutation> restricted;
    for (uint64_t c = 0; c < 64; ++c) {
        if (c & 32) continue;  // p1 bit
        Assignment a(3);
        for (int leg = 0; leg < 3; ++leg) {
            a[leg].p = static_cast<uint8_t>((c >> (5 - 2 * leg)) & 1);
            a[leg].q = static_cast<uint8_t>((c >> (4 - 2 * leg)) & 1);
        }
        restricted.insert(permutation_of_matrix(character_matrix(m, a)));
    }
    CHECK(restricted.size() == 24);
}

TEST_CASE("spectrum of the initial model") {
    std::set<Permutation> perms = spectrum(build_R());
    std::set<Permutation> expected{
        permutation_from_cycles("(23)", 4),
        permutation_from_cycles("(234)", 4),
        permutation_from_cycles("(132)", 4),
        permutation_from_cycles("(1342)", 4),
    };
    CHECK(perms == expected);
}

TEST_CASE("character evaluation of a valid model is always a permutation") {
    MagicModel r2 = operp(build_R(), build_R());
    for (uint64_t c = 0; c < 16; ++c) {
        Assignment a(2);
        for (int leg = 0; leg < 2; ++leg) {
            a[leg].p = static_cast<uint8_t>((c >> (3 - 2 * leg)) & 1);
            a[leg].q = static_cast<uint8_t>((c >> (2 - 2 * leg)) & 1);
        }
        CHECK_NOTHROW(character_matrix(r2, a));
    }
}

TEST_CASE("cycle notation round trip") {
    CHECK(cycles_string({0, 1, 2, 3}) == "()");
    CHECK(cycles_string({2, 3, 0, 1}) == "(13)(24)");
    CHECK(cycles_string(permutation_from_cycles("(234)", 4)) == "(234)");
    CHECK(cycles_string(permutation_from_cycles("(1342)", 4)) == "(1342)");
}
