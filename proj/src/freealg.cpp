#include "qpg/freealg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qpg {

Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int result = 1;
    for (unsigned long i = 1; i <= k; ++i) {
        result *= Int(n - k + i);
        result /= Int(i);
    }
    return result;
}

Int int_pow(const Int& base, unsigned long exp) {
    Int result = 1;
    Int b = base;
    while (exp) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

std::string rat_to_string(const Rat& r) { return r.str(); }

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

Variable::Variable(int row, int col, int n) : row_(row), col_(col), n_(n) {
    if (n < 1) throw InvalidSizeError("matrix size must be at least 1");
    if (row < 1 || row > n || col < 1 || col > n)
        throw InvalidSizeError("variable index out of range for n=" + std::to_string(n));
}

Variable Variable::from_index(int index, int n) {
    return Variable(index / n + 1, index % n + 1, n);
}

std::string Variable::str() const {
    std::ostringstream os;
    os << 'x' << row_ << col_;
    return os.str();
}

Monomial::Monomial(std::initializer_list<Variable> vars) : n_(0) {
    for (const Variable& v : vars) {
        if (n_ == 0)
            n_ = v.n();
        else if (v.n() != n_)
            throw AlphabetMismatchError("variables over different alphabets in one word");
        word_.push_back(static_cast<uint16_t>(v.index()));
    }
    if (n_ == 0) throw InvalidSizeError("cannot infer alphabet from an empty list; use Monomial::one(n)");
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (n_ != other.n_) throw AlphabetMismatchError("concatenating words over different alphabets");
    std::vector<uint16_t> w = word_;
    w.insert(w.end(), other.word_.begin(), other.word_.end());
    return Monomial(n_, std::move(w));
}

Monomial Monomial::prefix(size_t len) const {
    return Monomial(n_, std::vector<uint16_t>(word_.begin(), word_.begin() + len));
}

Monomial Monomial::suffix_from(size_t pos) const {
    return Monomial(n_, std::vector<uint16_t>(word_.begin() + pos, word_.end()));
}

bool Monomial::matches_at(const Monomial& factor, size_t pos) const {
    if (pos + factor.word_.size() > word_.size()) return false;
    return std::equal(factor.word_.begin(), factor.word_.end(), word_.begin() + pos);
}

bool Monomial::contains_factor(const Monomial& factor) const {
    if (factor.word_.empty()) return true;
    if (factor.word_.size() > word_.size()) return false;
    for (size_t pos = 0; pos + factor.word_.size() <= word_.size(); ++pos)
        if (matches_at(factor, pos)) return true;
    return false;
}

std::string Monomial::str() const {
    if (word_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < word_.size(); ++i) {
        if (i) s += '.';
        s += at(i).str();
    }
    return s;
}

MonomialOrder MonomialOrder::row_major(int n) {
    if (n < 1) throw InvalidSizeError("matrix size must be at least 1");
    std::vector<int> rank(static_cast<size_t>(n) * n);
    std::iota(rank.begin(), rank.end(), 0);
    return MonomialOrder(n, std::move(rank));
}

MonomialOrder MonomialOrder::from_permutation(int n, const std::vector<Variable>& ascending) {
    if (n < 1) throw InvalidSizeError("matrix size must be at least 1");
    const size_t total = static_cast<size_t>(n) * n;
    if (ascending.size() != total)
        throw InvalidSizeError("variable permutation must list all n*n variables");
    std::vector<int> rank(total, -1);
    for (size_t pos = 0; pos < ascending.size(); ++pos) {
        const Variable& v = ascending[pos];
        if (v.n() != n) throw AlphabetMismatchError("permutation variable over wrong alphabet");
        if (rank[v.index()] != -1) throw InvalidSizeError("duplicate variable in permutation");
        rank[v.index()] = static_cast<int>(pos);
    }
    return MonomialOrder(n, std::move(rank));
}

std::vector<Variable> MonomialOrder::ascending_variables() const {
    std::vector<Variable> vars(rank_.size(), Variable(1, 1, n_));
    for (size_t idx = 0; idx < rank_.size(); ++idx)
        vars[rank_[idx]] = Variable::from_index(static_cast<int>(idx), n_);
    return vars;
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    if (a.n() != n_ || b.n() != n_)
        throw AlphabetMismatchError("comparing words over a different alphabet than the order");
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (size_t i = 0; i < a.degree(); ++i) {
        int ra = rank_[a.index_at(i)];
        int rb = rank_[b.index_at(i)];
        if (ra != rb) return ra <=> rb;
    }
    return std::strong_ordering::equal;
}

std::strong_ordering compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
    return ord.compare(a, b);
}

bool MonomialCanonicalLess::operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.word() < b.word();
}

Polynomial::Polynomial(const Monomial& m, const Rat& c) : n_(m.n()) {
    if (c != 0) terms_.emplace(m, c);
}

Polynomial Polynomial::constant(int n, const Rat& c) {
    Polynomial p(n);
    if (c != 0) p.terms_.emplace(Monomial::one(n), c);
    return p;
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.degree());
}

Rat Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
    if (m.n() != n_) throw AlphabetMismatchError("term over a different alphabet");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (n_ != other.n_) throw AlphabetMismatchError("adding polynomials over different alphabets");
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    if (n_ != other.n_) throw AlphabetMismatchError("subtracting polynomials over different alphabets");
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += rat_to_string(it->second) + "*" + it->first.str();
    }
    return s;
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) {
    if (p.n() != q.n()) throw AlphabetMismatchError("multiplying polynomials over different alphabets");
    Polynomial result(p.n());
    for (const auto& [mp, cp] : p.terms())
        for (const auto& [mq, cq] : q.terms()) result.add_term(mp * mq, cp * cq);
    return result;
}

std::pair<Monomial, Rat> leading_term(const Polynomial& p, const MonomialOrder& ord) {
    if (p.is_zero()) throw ZeroPolynomialError("leading term of the zero polynomial");
    auto it = p.terms().begin();
    const Monomial* best = &it->first;
    const Rat* best_c = &it->second;
    for (++it; it != p.terms().end(); ++it) {
        if (ord.less(*best, it->first)) {
            best = &it->first;
            best_c = &it->second;
        }
    }
    return {*best, *best_c};
}

std::vector<Polynomial> magic_ideal_generators(int n) {
    if (n < 1) throw InvalidSizeError("magic unitary relations need n >= 1");
    std::vector<Polynomial> gens;
    // x_ij^2 - x_ij
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Variable x(i, j, n);
            Polynomial g(Monomial{x, x});
            g -= Polynomial(Monomial{x});
            gens.push_back(std::move(g));
        }
    // sum_k x_ik - 1
    for (int i = 1; i <= n; ++i) {
        Polynomial g(n);
        for (int k = 1; k <= n; ++k) g += Polynomial(Monomial{Variable(i, k, n)});
        g -= Polynomial::constant(n, 1);
        gens.push_back(std::move(g));
    }
    // sum_k x_kj - 1
    for (int j = 1; j <= n; ++j) {
        Polynomial g(n);
        for (int k = 1; k <= n; ++k) g += Polynomial(Monomial{Variable(k, j, n)});
        g -= Polynomial::constant(n, 1);
        gens.push_back(std::move(g));
    }
    // x_ij * x_ik, j != k  (row orthogonality, one generator per ordered pair)
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (j == k) continue;
                gens.push_back(Polynomial(Monomial{Variable(i, j, n), Variable(i, k, n)}));
            }
    // x_ji * x_ki, j != k  (column orthogonality)
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                if (j == k) continue;
                gens.push_back(Polynomial(Monomial{Variable(j, i, n), Variable(k, i, n)}));
            }
    return gens;
}

}  // namespace qpg
