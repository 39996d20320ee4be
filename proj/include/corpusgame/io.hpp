#pragma once

#include <filesystem>
#include <string>

#include "corpusgame/dynamics.hpp"
#include "json.hpp"

namespace corpusgame {

using nlohmann::json;

// Rationals are "num/den" strings; values with an infinitesimal part are
// {"base": "a/b", "eps": "c/d"}. Parsing also accepts plain numbers.
json to_json(const Rational& v);
json to_json(const EpsRational& v);
Rational rational_from_json(const json& j);
EpsRational eps_rational_from_json(const json& j);

json to_json(const Document& d);
json to_json(const StrategyProfile& s);
json to_json(const GameSpec& g);
json to_json(const Equity& e);
json to_json(const DynamicsTrace& t);
json to_json(const ThresholdBound& b);
json to_json(const Verdict& v);

Document document_from_json(const json& j);
StrategyProfile profile_from_json(const json& j);
/// Accepts "thresholds" (list) or a scalar "t".
GameSpec game_from_json(const json& j);
Equity equity_from_json(const json& j);
DynamicsTrace trace_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace corpusgame
