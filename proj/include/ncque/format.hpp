#pragma once

#include <string>

#include <json.hpp>

#include "ncque/algebra.hpp"
#include "ncque/dual.hpp"
#include "ncque/hopf.hpp"
#include "ncque/lie.hpp"

namespace ncque {

// Text output is deterministic: PBW / dual exponent tuples ascend
// lexicographically, and inside one monomial the hbar terms follow the graded
// series order. Every text form except tensors and Z-coordinates parses back.

std::string format_monomial(const PBWMonomial& m);  // "Th^2*Q1", "1" for the unit
std::string format_text(const Element& x);
std::string format_text(const DualElement& u);
std::string format_text(const TensorElement& t);
std::string format_text(const ZMap& z);

nlohmann::json series_json(const Series& s);
nlohmann::json to_json(const Element& x);
nlohmann::json to_json(const DualElement& u);
nlohmann::json to_json(const TensorElement& t);
nlohmann::json to_json(const ZMap& z);
nlohmann::json to_json(const WedgeElement& w);
nlohmann::json to_json(const GroupElement& g);

/// Inverse of series_json; throws std::invalid_argument on malformed input.
Series series_from_json(const nlohmann::json& j, int truncation);
Element element_from_json(const nlohmann::json& j, const AlgebraPtr& algebra);

}  // namespace ncque
