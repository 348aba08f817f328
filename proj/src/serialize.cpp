#include "qpg/serialize.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <sstream>

namespace qpg {

Json poly_to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json mono = Json::array();
        for (size_t i = 0; i < m.degree(); ++i) {
            Variable v = m.at(i);
            mono.push_back(Json::array({v.row(), v.col()}));
        }
        terms.push_back(Json{{"monomial", mono}, {"coeff", rat_to_string(c)}});
    }
    return terms;
}

Polynomial poly_from_json(const Json& j, int n) {
    Polynomial p(n);
    for (const auto& term : j) {
        std::vector<uint16_t> word;
        for (const auto& v : term.at("monomial"))
            word.push_back(static_cast<uint16_t>(
                Variable(v.at(0).get<int>(), v.at(1).get<int>(), n).index()));
        p.add_term(Monomial(n, std::move(word)), rat_from_string(term.at("coeff").get<std::string>()));
    }
    return p;
}

Json order_to_json(const MonomialOrder& ord) {
    Json perm = Json::array();
    for (const Variable& v : ord.ascending_variables())
        perm.push_back(Json::array({v.row(), v.col()}));
    return perm;
}

MonomialOrder order_from_json(const Json& j) {
    size_t total = j.size();
    int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(total))));
    if (static_cast<size_t>(n) * n != total)
        throw InvalidSizeError("order permutation length is not a perfect square");
    std::vector<Variable> asc;
    for (const auto& v : j) asc.emplace_back(v.at(0).get<int>(), v.at(1).get<int>(), n);
    return MonomialOrder::from_permutation(n, asc);
}

Json gb_to_json(const GroebnerBasis& g) {
    Json basis = Json::array();
    for (const auto& r : g.rules()) basis.push_back(poly_to_json(r.element()));
    return Json{{"n", g.n()},
                {"order", order_to_json(g.order())},
                {"terminated", g.terminated()},
                {"degree_cap", g.complete_up_to()},
                {"basis", basis}};
}

GroebnerBasis gb_from_json(const Json& j) {
    MonomialOrder ord = order_from_json(j.at("order"));
    int n = j.at("n").get<int>();
    if (n != ord.n()) throw InvalidSizeError("basis size does not match its order");
    std::vector<RewriteRule> rules;
    for (const auto& pj : j.at("basis")) {
        Polynomial e = poly_from_json(pj, n);
        auto [lead, lc] = leading_term(e, ord);
        if (lc != 1) throw InvalidSizeError("stored basis element is not monic");
        Polynomial tail(lead);
        tail -= e;
        rules.push_back(RewriteRule{lead, std::move(tail)});
    }
    return GroebnerBasis(std::move(rules), std::move(ord), j.at("terminated").get<bool>(),
                         j.at("degree_cap").get<int>());
}

Json dfa_to_json(const Dfa& d) {
    Json finals = Json::array();
    for (int s = 0; s < d.states(); ++s)
        if (d.is_final[s]) finals.push_back(s);
    Json transitions = Json::array();
    for (int s = 0; s < d.states(); ++s) {
        for (uint16_t a : d.symbols_by_rank) {
            if (d.next[s][a] < 0) continue;
            Variable v = Variable::from_index(a, d.n);
            transitions.push_back(
                Json::array({s, Json::array({v.row(), v.col()}), d.next[s][a]}));
        }
    }
    return Json{{"states", d.states()},
                {"finals", finals},
                {"transitions", transitions},
                {"initial", d.initial},
                {"n", d.n},
                {"symbol_order", [&] {
                     Json arr = Json::array();
                     for (uint16_t a : d.symbols_by_rank) {
                         Variable v = Variable::from_index(a, d.n);
                         arr.push_back(Json::array({v.row(), v.col()}));
                     }
                     return arr;
                 }()}};
}

Dfa dfa_from_json(const Json& j) {
    Dfa d;
    d.n = j.at("n").get<int>();
    d.initial = j.at("initial").get<int>();
    int states = j.at("states").get<int>();
    d.next.assign(states, std::vector<int32_t>(d.n * d.n, -1));
    d.is_final.assign(states, false);
    for (const auto& f : j.at("finals")) d.is_final[f.get<int>()] = true;
    for (const auto& t : j.at("transitions")) {
        Variable v(t.at(1).at(0).get<int>(), t.at(1).at(1).get<int>(), d.n);
        d.next[t.at(0).get<int>()][v.index()] = t.at(2).get<int>();
    }
    for (const auto& s : j.at("symbol_order")) {
        Variable v(s.at(0).get<int>(), s.at(1).get<int>(), d.n);
        d.symbols_by_rank.push_back(static_cast<uint16_t>(v.index()));
    }
    return d;
}

Json alg_to_json(const AlgElement& e) {
    Json terms = Json::array();
    for (const auto& [t, c] : e.terms()) {
        Json legs = Json::array();
        for (size_t i = 0; i < t.k(); ++i) {
            AltWord w = t.leg(i);
            std::string letter = w.is_one() ? "1" : (w.first() == Letter::p ? "p" : "q");
            legs.push_back(Json::array({w.length(), letter}));
        }
        terms.push_back(Json{{"legs", legs}, {"coeff", rat_to_string(c)}});
    }
    return Json{{"k", e.k()}, {"terms", terms}};
}

AlgElement alg_from_json(const Json& j) {
    AlgElement e(j.at("k").get<int>());
    for (const auto& term : j.at("terms")) {
        TensorWord t;
        for (const auto& leg : term.at("legs")) {
            uint32_t len = leg.at(0).get<uint32_t>();
            std::string letter = leg.at(1).get<std::string>();
            AltWord w = len == 0 ? AltWord::one()
                                 : AltWord(len, letter == "p" ? Letter::p : Letter::q);
            t.legs.push_back(w.index());
        }
        e.add_term(t, rat_from_string(term.at("coeff").get<std::string>()));
    }
    return e;
}

Json model_to_json(const MagicModel& m) {
    Json rows = Json::array();
    for (int i = 1; i <= m.n; ++i) {
        Json row = Json::array();
        for (int j = 1; j <= m.n; ++j) row.push_back(alg_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return Json{{"n", m.n}, {"k", m.k}, {"max_word_length", m.max_word_length}, {"entries", rows}};
}

MagicModel model_from_json(const Json& j) {
    MagicModel m;
    m.n = j.at("n").get<int>();
    m.k = j.at("k").get<int>();
    m.max_word_length = j.at("max_word_length").get<int>();
    for (const auto& row : j.at("entries"))
        for (const auto& e : row) m.entries.push_back(alg_from_json(e));
    if (m.entries.size() != static_cast<size_t>(m.n) * m.n)
        throw ShapeError("model entry count does not match n*n");
    return m;
}

Json certificate_to_json(const Certificate& c) {
    return Json{{"n", c.n},
                {"m", c.m},
                {"columns", c.columns.str()},
                {"rank_lower_bound", c.rank_lower_bound.str()},
                {"verdict", verdict_string(c.verdict)},
                {"nonzeros", c.nonzeros.str()},
                {"wall_seconds", c.wall_seconds},
                {"model_sha256", c.model_sha256},
                {"version", c.version}};
}

Certificate certificate_from_json(const Json& j) {
    Certificate c;
    c.n = j.at("n").get<int>();
    c.m = j.at("m").get<int>();
    c.columns = Int(j.at("columns").get<std::string>());
    c.rank_lower_bound = Int(j.at("rank_lower_bound").get<std::string>());
    c.nonzeros = Int(j.at("nonzeros").get<std::string>());
    c.verdict = j.at("verdict").get<std::string>() == "no-separating-polynomial"
                    ? Verdict::no_separating_polynomial
                    : Verdict::inconclusive;
    c.wall_seconds = j.at("wall_seconds").get<double>();
    c.model_sha256 = j.at("model_sha256").get<std::string>();
    c.version = j.at("version").get<std::string>();
    return c;
}

std::string characters_csv(const std::vector<CharacterRow>& rows) {
    std::ostringstream os;
    os << "S4";
    size_t k = rows.empty() ? 3 : rows.front().assignment.size();
    for (size_t i = 1; i <= k; ++i) os << ",p" << i << ",q" << i;
    os << '\n';
    for (const auto& row : rows) {
        os << cycles_string(row.perm);
        for (const auto& leg : row.assignment)
            os << ',' << static_cast<int>(leg.p) << ',' << static_cast<int>(leg.q);
        os << '\n';
    }
    return os.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

}  // namespace qpg
