#include "corpusgame/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace corpusgame {

json to_json(const Rational& v) { return to_string(v); }

json to_json(const EpsRational& v) {
  if (v.eps() == 0) return to_string(v.base());
  return json{{"base", to_string(v.base())}, {"eps", to_string(v.eps())}};
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return parse_rational(j.dump());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

EpsRational eps_rational_from_json(const json& j) {
  if (j.is_object()) {
    if (!j.contains("base")) throw std::invalid_argument("missing \"base\" in " + j.dump());
    return {rational_from_json(j.at("base")), j.contains("eps") ? rational_from_json(j.at("eps")) : Rational(0)};
  }
  return EpsRational(rational_from_json(j));
}

json to_json(const Document& d) {
  json out = json::array();
  for (const auto& w : d.weights) out.push_back(to_json(w));
  return out;
}

json to_json(const StrategyProfile& s) {
  json docs = json::array();
  for (const auto& d : s.documents) docs.push_back(to_json(d));
  return json{{"documents", docs}};
}

json to_json(const GameSpec& g) {
  json t = json::array();
  for (const auto& v : g.thresholds) t.push_back(to_json(v));
  return json{{"n", g.n}, {"m", g.m}, {"p", to_json(g.p)}, {"thresholds", t}, {"peak_fn", to_string(g.peak)}};
}

json to_json(const Equity& e) { return e.is_infinite() ? json("inf") : to_json(*e.value); }

json to_json(const ThresholdBound& b) {
  return json{{"value", to_json(b.value)}, {"strict", b.strict}, {"region", to_string(b.region)}};
}

json to_json(const Verdict& v) {
  json out{{"is_equilibrium", v.is_equilibrium}};
  if (v.player) out["player"] = *v.player;
  if (v.witness) {
    out["witness"] = json{{"strategy", to_json(v.witness->strategy)},
                          {"utility", to_json(v.witness->utility)},
                          {"deviation_type", to_string(v.witness->deviation_type)}};
  }
  return out;
}

namespace {

json to_json_list(const std::vector<int>& v) { return json(v); }

json utilities_json(const std::vector<Rational>& u) {
  json out = json::array();
  for (const auto& x : u) out.push_back(to_json(x));
  return out;
}

DeviationType parse_deviation_type(const std::string& s) {
  if (s == "type1") return DeviationType::Type1;
  if (s == "type2") return DeviationType::Type2;
  if (s == "none") return DeviationType::None;
  throw std::invalid_argument("unknown deviation type: " + s);
}

Terminal::Kind parse_terminal(const std::string& s) {
  if (s == "converged") return Terminal::Kind::Converged;
  if (s == "cycle-detected") return Terminal::Kind::CycleDetected;
  if (s == "budget-exhausted") return Terminal::Kind::BudgetExhausted;
  throw std::invalid_argument("unknown terminal: " + s);
}

}  // namespace

json to_json(const DynamicsTrace& t) {
  json steps = json::array();
  for (const auto& st : t.steps) {
    steps.push_back(json{{"index", st.index},
                         {"player", st.player},
                         {"old_document", to_json(st.old_document)},
                         {"new_document", to_json(st.new_document)},
                         {"deviation_type", to_string(st.deviation_type)},
                         {"deviation_equity", to_json(st.equity)},
                         {"utilities", utilities_json(st.utilities)},
                         {"improvers", to_json_list(st.improvers)}});
  }
  return json{{"initial", to_json(t.initial)},
              {"steps", steps},
              {"terminal",
               {{"kind", to_string(t.terminal.kind)},
                {"step", t.terminal.step},
                {"first_repeat", t.terminal.first_repeat},
                {"period", t.terminal.period}}},
              {"final", to_json(t.final_profile)},
              {"final_improvers", to_json_list(t.final_improvers)}};
}

Document document_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("a document is a list of weights");
  Document d;
  for (const auto& w : j) d.weights.push_back(eps_rational_from_json(w));
  return d;
}

StrategyProfile profile_from_json(const json& j) {
  const json& docs = j.is_object() ? j.at("documents") : j;
  if (!docs.is_array()) throw std::invalid_argument("a profile is a list of documents");
  StrategyProfile s;
  for (const auto& d : docs) s.documents.push_back(document_from_json(d));
  return s;
}

GameSpec game_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  const Rational p = rational_from_json(j.at("p"));
  GameSpec g;
  if (j.contains("thresholds")) {
    std::vector<EpsRational> t;
    for (const auto& v : j.at("thresholds")) t.push_back(eps_rational_from_json(v));
    g = GameSpec::with_thresholds(n, m, p, std::move(t));
  } else if (j.contains("t")) {
    g = GameSpec::uniform(n, m, p, eps_rational_from_json(j.at("t")));
  } else {
    throw std::invalid_argument("game needs \"thresholds\" or \"t\"");
  }
  if (j.contains("peak_fn")) {
    g.peak = parse_peak_function(j.at("peak_fn").get<std::string>());
  }
  g.validate();
  return g;
}

Equity equity_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Equity::infinity();
  return Equity{rational_from_json(j)};
}

DynamicsTrace trace_from_json(const json& j) {
  DynamicsTrace t;
  t.initial = profile_from_json(j.at("initial"));
  for (const auto& st : j.at("steps")) {
    DynamicsStep step;
    step.index = st.at("index").get<int>();
    step.player = st.at("player").get<int>();
    step.old_document = document_from_json(st.at("old_document"));
    step.new_document = document_from_json(st.at("new_document"));
    step.deviation_type = parse_deviation_type(st.at("deviation_type").get<std::string>());
    step.equity = equity_from_json(st.at("deviation_equity"));
    for (const auto& u : st.at("utilities")) step.utilities.push_back(rational_from_json(u));
    step.improvers = st.at("improvers").get<std::vector<int>>();
    t.steps.push_back(std::move(step));
  }
  const json& term = j.at("terminal");
  t.terminal.kind = parse_terminal(term.at("kind").get<std::string>());
  t.terminal.step = term.at("step").get<int>();
  t.terminal.first_repeat = term.at("first_repeat").get<int>();
  t.terminal.period = term.at("period").get<int>();
  t.final_profile = profile_from_json(j.at("final"));
  t.final_improvers = j.at("final_improvers").get<std::vector<int>>();
  return t;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace corpusgame
