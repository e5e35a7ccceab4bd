#pragma once

#include <nlohmann/json_fwd.hpp>

#include "tropcurves/puiseux.hpp"
#include "tropcurves/rational.hpp"

// Wire formats, shared by file I/O and the CLI.
//
//   rational   ::=  [num, den]     num/den each an integer or a decimal string
//              |    num            (input only; den = 1)
//   valuation  ::=  rational | "inf"
//   series     ::=  [term, ...]                      exact series
//              |    {"terms": [term, ...], "prec": rational}
//   term       ::=  {"e": rational, "c": rational}
//
// Output always uses the string-pair form for rationals so arbitrarily large
// values round-trip exactly.

namespace tropcurves {

nlohmann::json rat_to_json(const Rat& q);
Rat rat_from_json(const nlohmann::json& j);

nlohmann::json val_to_json(const Val& v);
Val val_from_json(const nlohmann::json& j);

nlohmann::json qvec_to_json(const QVec& v);
QVec qvec_from_json(const nlohmann::json& j);

nlohmann::json ivec_to_json(const IVec& v);
IVec ivec_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const PuiseuxSeries& s);
PuiseuxSeries series_from_json(const nlohmann::json& j);

// Fetches j[key], throwing InvalidInput with the key name when missing.
const nlohmann::json& json_require(const nlohmann::json& j, const std::string& key);

}  // namespace tropcurves
