#pragma once

#include <memory>
#include <vector>

#include "qpg/freealg.hpp"

namespace qpg {

namespace detail {
class FactorMatcher;
}

/// Rewrite rule lead -> tail. The represented basis element is lead - tail,
/// monic, with every tail monomial strictly below the lead and in normal form
/// with respect to the rest of the basis.
struct RewriteRule {
    Monomial lead;
    Polynomial tail;
    Polynomial element() const;  // lead - tail
};

class GroebnerBasis {
public:
    GroebnerBasis(std::vector<RewriteRule> rules, MonomialOrder order, bool terminated,
                  int degree_cap);

    const std::vector<RewriteRule>& rules() const { return rules_; }
    const MonomialOrder& order() const { return order_; }
    int n() const { return order_.n(); }
    /// True when completion halted with no pending obstructions at all.
    bool terminated() const { return terminated_; }
    /// Degree up to which normal forms are certified when not terminated.
    int complete_up_to() const { return degree_cap_; }
    std::vector<Monomial> leading_terms() const;
    int max_lead_degree() const;

    const detail::FactorMatcher& matcher() const { return *matcher_; }

private:
    std::vector<RewriteRule> rules_;
    MonomialOrder order_;
    bool terminated_;
    int degree_cap_;
    std::shared_ptr<const detail::FactorMatcher> matcher_;
};

class CapExceededError : public Error {
public:
    CapExceededError(const std::string& msg, GroebnerBasis partial_basis)
        : Error(msg), partial(std::move(partial_basis)) {}
    GroebnerBasis partial;
};

/// Normal form: no monomial of the result contains any lead as a factor, and
/// p - result lies in the ideal generated by the basis. Deterministic: always
/// rewrites the order-largest reducible monomial at its leftmost reducible
/// position.
Polynomial reduce(const Polynomial& p, const GroebnerBasis& G);

/// Requires a terminated basis, or deg p within the certified range.
bool is_member(const Polynomial& p, const GroebnerBasis& G);

/// Interreduced monic completion of the generators, processing obstructions
/// in increasing degree of the ambiguity word. Throws CapExceededError
/// (carrying the partial basis) when an obstruction above the cap is reached.
GroebnerBasis complete(const std::vector<Polynomial>& generators, const MonomialOrder& ord,
                       int degree_cap = 12);

struct SliceOracleBudget {
    size_t max_products = 150000;
    size_t max_monomials = 90000;
};

/// Codimension of the span of {a*g*b : g generator, deg(a*g*b) <= d} inside
/// the degree-<=d slice of the free algebra, by exact row reduction. An upper
/// bound for the dimension of the degree-<=d quotient slice; matches the
/// normal-word count when the basis is complete.
Int quotient_slice_dimension_oracle(const std::vector<Polynomial>& generators, int d,
                                    const MonomialOrder& ord, const SliceOracleBudget& budget = {});

}  // namespace qpg
