#ifndef RISPACES_JSON_IO_HPP
#define RISPACES_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "rispaces/ideal.hpp"

namespace rispaces {

using json = nlohmann::ordered_json;

// Scalars are accepted as JSON numbers, decimal strings, or "p/q"; "inf"
// stands for +infinity.
Rat scalar_from_json(const json& j, const std::string& field);
XRat xscalar_from_json(const json& j, const std::string& field);

// {"domain": "...", "pieces": [...], "tail": {...}} or
// {"domain": "naturals", "head": [...], "tail": {...}}
AnyFn fn_from_json(const json& j);
json fn_to_json(const AnyFn& f);
json fn_to_json(const PiecewiseFn& f);
json fn_to_json(const SeqFn& x);

// generator literals carry the extra limit fields
QuasiConcaveFn phi_from_json(const json& j, bool require_concave = false);
OrliczFn orlicz_from_json(const json& j);

// nested space literal, e.g. {"kind":"cesaro","base":{...}}
SpaceSpec space_from_json(const json& j);

json eval_result_to_json(const EvalResult& r);
json dist_result_to_json(const DistResult& d);
json check_report_to_json(const CheckReport& r);
std::string check_report_to_table(const CheckReport& r);

} // namespace rispaces

#endif
