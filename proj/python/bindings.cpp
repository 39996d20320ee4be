#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corpusgame/harness.hpp"
#include "corpusgame/io.hpp"

namespace py = pybind11;
using namespace corpusgame;

// Values cross the boundary as JSON text; the Python wrapper decodes them.
namespace {

std::string bound_json(const ThresholdBound& b) { return to_json(b).dump(); }

Rational rat(const std::string& s) { return parse_rational(s); }

std::string thresholds_json(const std::vector<EpsRational>& t) {
  json out = json::array();
  for (const auto& x : t) out.push_back(to_json(x));
  return out.dump();
}

DynamicsOptions options(const std::string& scheduler, const std::string& responder, int max_steps,
                        const std::string& cycle_mode) {
  DynamicsOptions o;
  o.scheduler = parse_scheduler(scheduler);
  o.responder = parse_responder(responder);
  o.max_steps = max_steps;
  o.cycle_mode = parse_cycle_mode(cycle_mode);
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<nlohmann::json::exception>(m, "JsonError", PyExc_ValueError);

  m.def("uniform_min_threshold", [](int n, int q, const std::string& p) { return bound_json(uniform_min_threshold(n, q, rat(p))); });
  m.def("general_min_threshold_norm",
        [](int n, int q, const std::string& p) { return bound_json(general_min_threshold_norm(n, q, rat(p))); });
  m.def("uniform_threshold_vector",
        [](int n, int q, const std::string& p) { return thresholds_json(uniform_threshold_vector(n, q, rat(p))); });
  m.def("construct_threshold_vector",
        [](int n, int q, const std::string& p) { return thresholds_json(construct_threshold_vector(n, q, rat(p))); });
  m.def("construct_equilibrium", [](const std::string& game, const std::string& mode) {
    const GameSpec g = game_from_json(json::parse(game));
    return to_json(construct_equilibrium(g.n, g.m, g.p, g.thresholds, parse_enrichment_mode(mode))).dump();
  });
  m.def("evaluate", [](const std::string& game, const std::string& profile) {
    const ProfileOutcome out = evaluate(game_from_json(json::parse(game)), profile_from_json(json::parse(profile)));
    json u = json::array();
    for (const auto& x : out.utility) u.push_back(to_json(x));
    json w = json::array();
    for (const auto& q : out.queries) w.push_back(to_json(q.winning_value));
    return json{{"utilities", u}, {"winning_values", w}}.dump();
  });
  m.def("social_welfare", [](const std::string& game, const std::string& profile) {
    return to_json(social_welfare(game_from_json(json::parse(game)), profile_from_json(json::parse(profile)))).dump();
  });
  m.def("best_response", [](const std::string& game, const std::string& profile, int i) {
    const BestResponseResult r = best_response(game_from_json(json::parse(game)), profile_from_json(json::parse(profile)), i);
    return json{{"utility", to_json(r.utility)}, {"document", to_json(r.strategy)}, {"type", to_string(r.deviation_type)}}.dump();
  });
  m.def("verify_equilibrium", [](const std::string& game, const std::string& profile) {
    return to_json(verify_equilibrium(game_from_json(json::parse(game)), profile_from_json(json::parse(profile)))).dump();
  });
  m.def("run_dynamics", [](const std::string& game, const std::string& profile, const std::string& scheduler,
                           const std::string& responder, int max_steps, const std::string& cycle_mode) {
    return to_json(run_dynamics(game_from_json(json::parse(game)), profile_from_json(json::parse(profile)),
                                options(scheduler, responder, max_steps, cycle_mode)))
        .dump();
  });
  m.def("random_profile", [](int n, int q, std::uint64_t seed) { return to_json(random_profile(n, q, seed)).dump(); });
  m.def("fixture_names", &fixture_names);
  m.def("replay", [](const std::string& name, const std::string& dir) {
    const ReplayResult r = replay_fixture(name, dir);
    return json{{"fixture", r.name}, {"passed", r.passed}, {"notes", r.notes}, {"detail", r.detail}}.dump();
  });
}
