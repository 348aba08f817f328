#pragma once

#include <string>

#include <json.hpp>

#include "qpg/automaton.hpp"
#include "qpg/certifier.hpp"
#include "qpg/groebner.hpp"
#include "qpg/projalg.hpp"

namespace qpg {

using Json = nlohmann::ordered_json;

// Polynomials: list of terms, each {"monomial": [[i,j],...], "coeff": "p/q"}.
Json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j, int n);

// Orders: the ascending variable permutation as [[i,j],...], n*n entries.
Json order_to_json(const MonomialOrder& ord);
MonomialOrder order_from_json(const Json& j);

Json gb_to_json(const GroebnerBasis& g);
GroebnerBasis gb_from_json(const Json& j);

// {"states":…, "finals":[…], "transitions":[[from,[i,j],to],…], "initial":…}
Json dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const Json& j);

// {"k":…, "terms":[{"legs":[[len,"p"|"q"|"1"],…], "coeff":"…"},…]}
Json alg_to_json(const AlgElement& e);
AlgElement alg_from_json(const Json& j);

Json model_to_json(const MagicModel& m);
MagicModel model_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

std::string characters_csv(const std::vector<CharacterRow>& rows);

std::string sha256_hex(const std::string& data);

}  // namespace qpg
