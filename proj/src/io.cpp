#include "nshardy/io.hpp"

#include <vector>

#include "nshardy/error.hpp"

namespace nshardy {

using nlohmann::json;

json scenario_to_json(const Scenario& s) {
  return {{"dA", {s.alice(0), s.alice(1)}}, {"dB", {s.bob(0), s.bob(1)}}};
}

Scenario scenario_from_json(const json& j) {
  try {
    const auto dA = j.at("dA").get<std::vector<int>>();
    const auto dB = j.at("dB").get<std::vector<int>>();
    if (dA.size() != 2 || dB.size() != 2) throw ValidationError("scenario needs two cardinalities per party");
    return Scenario({dA[0], dA[1]}, {dB[0], dB[1]});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scenario: ") + e.what());
  }
}

json box_to_json(const JointBox& box) {
  const Scenario& s = box.scenario();
  json table = json::array();
  for (std::size_t i = 0; i < s.num_coords(); ++i) {
    const Event e = event_at(s, i);
    table.push_back({{"x", e.x}, {"y", e.y}, {"a", e.a + 1}, {"b", e.b + 1}, {"p", box.table()[i].to_string()}});
  }
  return {{"scenario", scenario_to_json(s)}, {"table", std::move(table)}};
}

JointBox box_from_json(const json& j) {
  if (!j.is_object() || !j.contains("scenario") || !j.contains("table")) {
    throw ValidationError("box JSON needs 'scenario' and 'table'");
  }
  const Scenario s = scenario_from_json(j.at("scenario"));
  JointBox box(s);
  std::vector<bool> seen(s.num_coords(), false);
  try {
    for (const auto& entry : j.at("table")) {
      const Event e{entry.at("x").get<int>(), entry.at("y").get<int>(), entry.at("a").get<int>() - 1,
                    entry.at("b").get<int>() - 1};
      const std::size_t idx = index_of(s, e);
      if (seen[idx]) throw ValidationError("duplicate table entry " + to_string(e));
      seen[idx] = true;
      const auto& p = entry.at("p");
      box.set(e, p.is_string() ? Rational::parse(p.get<std::string>()) : Rational(p.get<long>()));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed table entry: ") + e.what());
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ValidationError("incomplete table: missing " + to_string(event_at(s, i)));
  }
  return box;
}

json event_to_json(const Event& e) {
  return {{"x", e.x}, {"y", e.y}, {"a", e.a + 1}, {"b", e.b + 1}};
}

json argument_to_json(const HardyArgument& arg) {
  auto events = [](const std::vector<Event>& es) {
    json out = json::array();
    for (const auto& e : es) out.push_back(event_to_json(e));
    return out;
  };
  auto perm = [](const std::vector<int>& p) {
    json out = json::array();
    for (int v : p) out.push_back(v + 1);
    return out;
  };
  const Relabeling& r = arg.relabeling;
  return {{"kind", to_string(arg.kind)},
          {"scenario", scenario_to_json(arg.scenario)},
          {"p", arg.bound.to_string()},
          {"reversed", arg.reversed},
          {"relabeling",
           {{"alice", {perm(r.alice[0]), perm(r.alice[1])}},
            {"bob", {perm(r.bob[0]), perm(r.bob[1])}},
            {"swap_alice_inputs", r.swap_alice_inputs},
            {"swap_bob_inputs", r.swap_bob_inputs}}},
          {"success_events", events(arg.events.success)},
          {"zero_events", {events(arg.events.zero[0]), events(arg.events.zero[1]), events(arg.events.zero[2])}}};
}

json report_to_json(const OptimizationReport& report) {
  return {{"argument", argument_to_json(report.argument)},
          {"optimum", report.optimum.to_string()},
          {"optimum_decimal", report.optimum.to_decimal(6)},
          {"regime", to_string(report.regime)},
          {"witness", box_to_json(report.witness)}};
}

json vertex_to_json(const Vertex& v) {
  json j = box_to_json(v.box);
  return {{"kind", to_string(v.kind)}, {"label", v.label}, {"scenario", j["scenario"]}, {"table", j["table"]}};
}

}  // namespace nshardy
