#include "effopt/json_io.hpp"

namespace effopt {

Json dyadic_to_json(const Dyadic& d) {
  return Json{{"m", d.mant().get_str()}, {"e", d.exp()}};
}

Dyadic dyadic_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("e"))
    throw std::invalid_argument("dyadic json must be {\"m\": text, \"e\": int}");
  mpz_class m(j.at("m").get<std::string>());
  return Dyadic(m, j.at("e").get<long>());
}

Json interval_to_json(const Interval& v) {
  return Json{{"lo", dyadic_to_json(v.lo())}, {"hi", dyadic_to_json(v.hi())}};
}

Interval interval_from_json(const Json& j) {
  return Interval(dyadic_from_json(j.at("lo")), dyadic_from_json(j.at("hi")));
}

Json trace_to_json(const Trace& t) {
  Json j;
  Json iterates = Json::array();
  for (const auto& x : t.iterates) {
    Json point = Json::array();
    for (const auto& c : x) point.push_back(dyadic_to_json(c));
    iterates.push_back(std::move(point));
  }
  j["iterates"] = std::move(iterates);
  Json values = Json::array();
  for (const auto& v : t.values) {
    if (v.exact)
      values.push_back(dyadic_to_json(v.v.lo()));
    else
      values.push_back(interval_to_json(v.v));
  }
  j["values"] = std::move(values);
  j["stop_reason"] = to_string(t.stop_reason);
  j["sweeps"] = t.sweeps;
  Json inner = Json::array();
  for (const auto& sweep : t.inner_steps) {
    Json steps = Json::array();
    for (const auto& s : sweep) {
      Json step{{"coord", s.coord}, {"value", dyadic_to_json(s.value)}};
      if (s.enclosure) step["enclosure"] = interval_to_json(*s.enclosure);
      steps.push_back(std::move(step));
    }
    inner.push_back(std::move(steps));
  }
  j["inner_steps"] = std::move(inner);
  j["heuristic_stop"] = t.heuristic_stop;
  return j;
}

Trace trace_from_json(const Json& j) {
  Trace t;
  for (const auto& point : j.at("iterates")) {
    std::vector<Dyadic> x;
    for (const auto& c : point) x.push_back(dyadic_from_json(c));
    t.iterates.push_back(std::move(x));
  }
  for (const auto& v : j.at("values")) {
    if (v.contains("lo"))
      t.values.push_back({false, interval_from_json(v)});
    else
      t.values.push_back({true, Interval(dyadic_from_json(v))});
  }
  auto reason = stop_reason_from_string(j.at("stop_reason").get<std::string>());
  if (!reason) throw std::invalid_argument("unknown stop_reason");
  t.stop_reason = *reason;
  t.sweeps = j.at("sweeps").get<int>();
  if (j.contains("inner_steps")) {
    for (const auto& sweep : j.at("inner_steps")) {
      std::vector<InnerStep> steps;
      for (const auto& s : sweep) {
        InnerStep step;
        step.coord = s.at("coord").get<int>();
        step.value = dyadic_from_json(s.at("value"));
        if (s.contains("enclosure"))
          step.enclosure = interval_from_json(s.at("enclosure"));
        steps.push_back(std::move(step));
      }
      t.inner_steps.push_back(std::move(steps));
    }
  }
  if (j.contains("heuristic_stop")) t.heuristic_stop = j.at("heuristic_stop").get<bool>();
  return t;
}

Json trace_schema() {
  return Json{
      {"$comment", "optimization run trace"},
      {"type", "object"},
      {"properties",
       Json{{"iterates",
             Json{{"type", "array"},
                  {"items", Json{{"type", "array"},
                                 {"items", Json{{"$ref", "#/$defs/dyadic"}}}}}}},
            {"values",
             Json{{"type", "array"},
                  {"items", Json{{"oneOf", Json::array({Json{{"$ref", "#/$defs/dyadic"}},
                                                        Json{{"$ref", "#/$defs/interval"}}})}}}}},
            {"stop_reason",
             Json{{"enum", Json::array({"FixedPoint", "MaxIter", "TargetMet",
                                        "NoCertifiedSign"})}}},
            {"sweeps", Json{{"type", "integer"}}},
            {"inner_steps", Json{{"type", "array"}}},
            {"heuristic_stop", Json{{"type", "boolean"}}}}},
      {"required", Json::array({"iterates", "values", "stop_reason", "sweeps"})},
      {"$defs",
       Json{{"dyadic",
             Json{{"type", "object"},
                  {"properties", Json{{"m", Json{{"type", "string"}}},
                                      {"e", Json{{"type", "integer"}}}}},
                  {"required", Json::array({"m", "e"})}}},
            {"interval",
             Json{{"type", "object"},
                  {"properties", Json{{"lo", Json{{"$ref", "#/$defs/dyadic"}}},
                                      {"hi", Json{{"$ref", "#/$defs/dyadic"}}}}},
                  {"required", Json::array({"lo", "hi"})}}}}}};
}

Json report_schema() {
  return Json{
      {"$comment", "experiment report"},
      {"type", "object"},
      {"properties",
       Json{{"name", Json{{"type", "string"}}},
            {"parameters", Json{{"type", "object"}}},
            {"records", Json{{"type", "array"}}},
            {"verdict", Json{{"type", "boolean"}}},
            {"artifacts", Json{{"type", "array"}, {"items", Json{{"type", "string"}}}}}}},
      {"required",
       Json::array({"name", "parameters", "records", "verdict", "artifacts"})}};
}

}  // namespace effopt
