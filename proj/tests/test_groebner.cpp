#include <doctest.h>

#include <random>

#include "qpg/groebner.hpp"

using namespace qpg;

namespace {

Variable x(int i, int j, int n = 4) { return Variable(i, j, n); }

const GroebnerBasis& basis4() {
    static GroebnerBasis g = complete(magic_ideal_generators(4), MonomialOrder::row_major(4));
    return g;
}

Polynomial row_sum(int i, int n) {
    Polynomial p(n);
    for (int k = 1; k <= n; ++k) p += Polynomial(Monomial{Variable(i, k, n)});
    p -= Polynomial::constant(n, 1);
    return p;
}

// Count words of the given degree containing no lead as a factor.
long count_normal_words(const std::vector<Monomial>& leads, int n, int degree) {
    long count = 0;
    std::vector<uint16_t> word(degree, 0);
    const int alphabet = n * n;
    while (true) {
        Monomial mono(n, word);
        bool normal = true;
        for (const auto& lead : leads)
            if (mono.contains_factor(lead)) {
                normal = false;
                break;
            }
        if (normal) ++count;
        int i = degree - 1;
        while (i >= 0 && word[i] == alphabet - 1) word[i--] = 0;
        if (i < 0) break;
        ++word[i];
    }
    return count;
}

Polynomial random_poly(std::mt19937& rng, int n, int max_len, int max_terms) {
    std::uniform_int_distribution<int> terms(0, max_terms), len(0, max_len), var(0, n * n - 1),
        coeff(-4, 4);
    Polynomial p(n);
    for (int t = terms(rng); t-- > 0;) {
        std::vector<uint16_t> w(len(rng));
        for (auto& a : w) a = static_cast<uint16_t>(var(rng));
        p.add_term(Monomial(n, std::move(w)), coeff(rng));
    }
    return p;
}

}  // namespace

TEST_CASE("completion for n = 1 forces the single variable to 1") {
    GroebnerBasis g = complete(magic_ideal_generators(1), MonomialOrder::row_major(1));
    CHECK(g.terminated());
    REQUIRE(g.rules().size() == 1);
    CHECK(g.rules()[0].lead == Monomial{x(1, 1, 1)});
    CHECK(g.rules()[0].tail == Polynomial::constant(1, 1));
}

TEST_CASE("completion for n = 4 terminates with interreduced monic rules") {
    const GroebnerBasis& g = basis4();
    CHECK(g.terminated());
    CHECK(g.max_lead_degree() == 3);

    auto leads = g.leading_terms();
    for (size_t i = 0; i < leads.size(); ++i)
        for (size_t j = 0; j < leads.size(); ++j) {
            if (i == j) continue;
            CHECK_FALSE(leads[i].contains_factor(leads[j]));
        }
    for (const auto& r : g.rules()) {
        for (const auto& [m, c] : r.tail.terms()) {
            CHECK(g.order().less(m, r.lead));
            for (const auto& lead : leads) CHECK_FALSE(m.contains_factor(lead));
        }
    }
}

TEST_CASE("every generator reduces to zero") {
    const GroebnerBasis& g = basis4();
    for (const auto& gen : magic_ideal_generators(4)) CHECK(reduce(gen, g).is_zero());
}

TEST_CASE("all obstruction differences of the final basis resolve") {
    const GroebnerBasis& g = basis4();
    const auto& rules = g.rules();
    for (size_t i = 0; i < rules.size(); ++i) {
        for (size_t j = 0; j < rules.size(); ++j) {
            const Monomial& li = rules[i].lead;
            const Monomial& lj = rules[j].lead;
            size_t max_o = std::min(li.degree(), lj.degree()) - 1;
            for (size_t o = 1; o <= max_o; ++o) {
                bool match = true;
                for (size_t t = 0; t < o && match; ++t)
                    match = li.index_at(li.degree() - o + t) == lj.index_at(t);
                if (!match) continue;
                Polynomial s = rules[i].tail * Polynomial(lj.suffix_from(o));
                s -= Polynomial(li.prefix(li.degree() - o)) * rules[j].tail;
                CHECK(reduce(s, g).is_zero());
            }
        }
    }
}

TEST_CASE("normal form examples") {
    const GroebnerBasis& g = basis4();

    Polynomial sq(Monomial{x(1, 1), x(1, 1)});
    sq -= Polynomial(Monomial{x(1, 1)});
    CHECK(reduce(sq, g).is_zero());

    Polynomial x12(Monomial{x(1, 2)});
    CHECK(reduce(x12, g) == x12);

    CHECK(reduce(Polynomial(Monomial{x(1, 1), x(1, 2)}), g).is_zero());
}

TEST_CASE("membership verdicts") {
    const GroebnerBasis& g = basis4();
    CHECK(is_member(row_sum(1, 4), g));
    CHECK_FALSE(is_member(Polynomial(Monomial{x(1, 2)}), g));
    CHECK_FALSE(is_member(Polynomial(Monomial{x(1, 2), x(2, 4)}), g));
    // but its normal form is a genuinely different representative
    Polynomial nf = reduce(Polynomial(Monomial{x(1, 2), x(2, 4)}), g);
    CHECK_FALSE(nf.is_zero());
}

TEST_CASE("reduction is idempotent and linear") {
    const GroebnerBasis& g = basis4();
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = random_poly(rng, 4, 4, 5);
        Polynomial q = random_poly(rng, 4, 4, 5);
        Polynomial rp = reduce(p, g);
        CHECK(reduce(rp, g) == rp);
        Rat a = coeff(rng), b = coeff(rng);
        CHECK(reduce(a * p + b * q, g) == a * rp + b * reduce(q, g));
    }
}

TEST_CASE("normal word counts per degree are the odd squares") {
    const GroebnerBasis& g = basis4();
    auto leads = g.leading_terms();
    CHECK(count_normal_words(leads, 4, 0) == 1);
    CHECK(count_normal_words(leads, 4, 1) == 9);
    CHECK(count_normal_words(leads, 4, 2) == 25);
    CHECK(count_normal_words(leads, 4, 3) == 49);
}

TEST_CASE("degree-slice oracle matches the quotient dimensions") {
    MonomialOrder ord = MonomialOrder::row_major(4);
    auto gens = magic_ideal_generators(4);
    CHECK(quotient_slice_dimension_oracle(gens, 0, ord) == 1);
    CHECK(quotient_slice_dimension_oracle(gens, 1, ord) == 10);
    CHECK(quotient_slice_dimension_oracle(gens, 2, ord) == 35);
    CHECK(quotient_slice_dimension_oracle(gens, 3, ord) == 84);
}

TEST_CASE("degree-slice oracle for n = 2 pins the tiny quotient") {
    MonomialOrder ord = MonomialOrder::row_major(2);
    auto gens = magic_ideal_generators(2);
    // quotient is spanned by 1 and a single idempotent class
    CHECK(quotient_slice_dimension_oracle(gens, 0, ord) == 1);
    CHECK(quotient_slice_dimension_oracle(gens, 1, ord) == 2);
    CHECK(quotient_slice_dimension_oracle(gens, 2, ord) == 2);
    CHECK(quotient_slice_dimension_oracle(gens, 3, ord) == 2);
    CHECK(quotient_slice_dimension_oracle(gens, 4, ord) == 2);

    GroebnerBasis g2 = complete(gens, ord);
    CHECK(g2.terminated());
    auto leads = g2.leading_terms();
    CHECK(count_normal_words(leads, 2, 0) == 1);
    CHECK(count_normal_words(leads, 2, 1) == 1);
    CHECK(count_normal_words(leads, 2, 2) == 0);
}

TEST_CASE("degree-slice oracle budget") {
    SliceOracleBudget tiny;
    tiny.max_products = 10;
    CHECK_THROWS_AS(quotient_slice_dimension_oracle(magic_ideal_generators(4), 2,
                                                    MonomialOrder::row_major(4), tiny),
                    BudgetExceededError);
}

TEST_CASE("degree cap is an explicit error carrying the partial basis") {
    auto gens = magic_ideal_generators(4);
    MonomialOrder ord = MonomialOrder::row_major(4);
    try {
        complete(gens, ord, 2);
        FAIL("expected the cap to be exceeded");
    } catch (const CapExceededError& e) {
        CHECK_FALSE(e.partial.terminated());
        CHECK(e.partial.complete_up_to() == 2);
        CHECK(!e.partial.rules().empty());
        // degree-2 membership is still certified on the partial basis
        CHECK(is_member(row_sum(2, 4), e.partial));
        Polynomial deep(Monomial{x(1, 1), x(1, 1), x(1, 1)});
        CHECK_THROWS_AS(is_member(deep, e.partial), UncertifiedDegreeError);
    }
    CHECK_THROWS_AS(complete(gens, ord, 1), InvalidSizeError);  // cap below generator degree
}

TEST_CASE("completion is deterministic") {
    GroebnerBasis a = complete(magic_ideal_generators(4), MonomialOrder::row_major(4));
    GroebnerBasis b = complete(magic_ideal_generators(4), MonomialOrder::row_major(4));
    REQUIRE(a.rules().size() == b.rules().size());
    for (size_t i = 0; i < a.rules().size(); ++i) {
        CHECK(a.rules()[i].lead == b.rules()[i].lead);
        CHECK(a.rules()[i].tail == b.rules()[i].tail);
    }
}

TEST_CASE("zero generators are rejected") {
    std::vector<Polynomial> gens{Polynomial::zero(2)};
    CHECK_THROWS_AS(complete(gens, MonomialOrder::row_major(2)), ZeroPolynomialError);
}
