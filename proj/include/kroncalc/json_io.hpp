#pragma once

#include <json.hpp>

#include "kroncalc/quasipoly.hpp"

namespace kroncalc {

using json = nlohmann::json;

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const QuasiPolynomial& p);
QuasiPolynomial quasipoly_from_json(const json& j);

json to_json(const HilbertSeries& h);
HilbertSeries hilbert_from_json(const json& j);

}  // namespace kroncalc
