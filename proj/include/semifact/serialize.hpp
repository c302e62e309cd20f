#pragma once

#include <json.hpp>

#include "semifact/matrix.hpp"
#include "semifact/verifier.hpp"

namespace semifact {

using Json = nlohmann::ordered_json;

Json to_json(const Bounds& b);
Json to_json(const Factorization& f);
Json to_json(const Enumeration<Factorization>& e);
Json to_json(const Enumeration<Element>& e);
Json to_json(const LengthSet& ls);
Json to_json(const ChainReport& c);
/// {factors:[{type, pos:[i,j], atom}], length}; positions are 1-based.
Json to_json(const RigidFactorization& f);
Json to_json(const Enumeration<RigidFactorization>& e);
Json to_json(const AplReport& r);
Json to_json(const HfmCounterexample& h);
Json to_json(const CheckReport& r);

}  // namespace semifact
