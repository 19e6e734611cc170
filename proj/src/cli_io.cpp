#include "swr/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace swr {

using nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

namespace {

double require_number(const json& j, const std::string& where,
                      const std::string& key) {
  if (!j.contains(key)) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "problem file: missing field " + where + "." + key);
  }
  if (!j.at(key).is_number()) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "problem file: field " + where + "." + key +
                          " must be a number");
  }
  return j.at(key).get<double>();
}

json state_to_json(const HydraulicState& s) {
  return json{{"h", s.h}, {"u", s.u}};
}

HydraulicState state_from_json(const json& j) {
  return {j.at("h").get<double>(), j.at("u").get<double>()};
}

}  // namespace

RiemannProblem parse_problem_json(const std::string& text,
                                  std::optional<double> g_flag,
                                  std::optional<double> g_env) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SolverError(ErrorCode::InvalidArgument,
                      std::string("problem file: JSON parse error: ") +
                          e.what());
  }
  RiemannProblem p;
  for (const char* side : {"left", "right"}) {
    if (!j.contains(side) || !j.at(side).is_object()) {
      throw SolverError(ErrorCode::InvalidArgument,
                        std::string("problem file: missing object ") + side);
    }
    const json& s = j.at(side);
    HydraulicState hs{require_number(s, side, "h"), require_number(s, side, "u")};
    TerrainSide ts{require_number(s, side, "theta"),
                   require_number(s, side, "z")};
    if (std::string(side) == "left") {
      p.left = hs;
      p.terrain_left = ts;
    } else {
      p.right = hs;
      p.terrain_right = ts;
    }
  }
  if (g_flag) {
    p.g = *g_flag;
  } else if (j.contains("g")) {
    if (!j.at("g").is_number()) {
      throw SolverError(ErrorCode::InvalidArgument,
                        "problem file: field g must be a number");
    }
    p.g = j.at("g").get<double>();
  } else if (g_env) {
    p.g = *g_env;
  } else {
    p.g = 9.81;
  }
  return p;
}

json solution_to_json(const WaveStructure& ws, const RiemannProblem& p) {
  json waves = json::array();
  for (const auto& w : ws.waves) {
    waves.push_back(json{{"kind", wave_kind_name(w.kind)},
                         {"s_head", w.s_head},
                         {"s_tail", w.s_tail},
                         {"upstream", state_to_json(w.upstream)},
                         {"downstream", state_to_json(w.downstream)}});
  }
  json states = json::array();
  for (const auto& s : ws.states) states.push_back(state_to_json(s));
  const StructureDiagnostics d = verify_structure(ws, p);
  json out{{"status", "ok"},
           {"type", type_label_name(ws.type_label)},
           {"g", p.g},
           {"waves", waves},
           {"states", states},
           {"diagnostics",
            json{{"max_rh_residual", d.max_rh_residual},
                 {"grh_mass", d.grh_mass},
                 {"grh_momentum", d.grh_momentum},
                 {"max_intersection_residual", d.max_intersection_residual},
                 {"speeds_ordered", d.speeds_ordered},
                 {"contact_signs_ok", d.contact_signs_ok},
                 {"endpoints_match", d.endpoints_match}}}};
  if (!ws.notes.empty()) out["notes"] = ws.notes;
  return out;
}

WaveStructure solution_from_json(const json& j) {
  WaveStructure ws;
  const std::string type = j.at("type").get<std::string>();
  if (type == "TypeI") ws.type_label = TypeLabel::TypeI;
  else if (type == "TypeII") ws.type_label = TypeLabel::TypeII;
  else if (type == "TypeIII") ws.type_label = TypeLabel::TypeIII;
  else ws.type_label = TypeLabel::ConstantTerrain;
  for (const auto& w : j.at("waves")) {
    const std::string kind = w.at("kind").get<std::string>();
    WaveKind k = WaveKind::TerrainContact;
    if (kind == "Rarefaction1") k = WaveKind::Rarefaction1;
    else if (kind == "Shock1") k = WaveKind::Shock1;
    else if (kind == "Rarefaction2") k = WaveKind::Rarefaction2;
    else if (kind == "Shock2") k = WaveKind::Shock2;
    ws.waves.push_back({k, w.at("s_head").get<double>(),
                        w.at("s_tail").get<double>(),
                        state_from_json(w.at("upstream")),
                        state_from_json(w.at("downstream"))});
  }
  for (const auto& s : j.at("states")) ws.states.push_back(state_from_json(s));
  return ws;
}

json classification_to_json(const Classification& c) {
  json thresholds = json::object();
  for (const auto& [name, value] : c.thresholds) thresholds[name] = value;
  json out{{"case", theorem_case_name(c.theorem_case)},
           {"thresholds", thresholds},
           {"h_sharp", c.h_sharp},
           {"h_max", c.h_max},
           {"verdict", verdict_name(c.solvable)}};
  if (c.h_c) out["h_c"] = *c.h_c;
  return out;
}

json report_to_json(const NoSolutionReport& report, const RiemannProblem& p) {
  json out{{"status", "no_solution"}, {"g", p.g}};
  if (report.classification) {
    out["classification"] = classification_to_json(*report.classification);
    const auto& c = *report.classification;
    std::ostringstream cites;
    cites << "Theorem case " << theorem_case_name(c.theorem_case);
    if (c.theorem_case == TheoremCase::A || c.theorem_case == TheoremCase::B1) {
      cites << ", item 2";
    } else if (c.theorem_case == TheoremCase::B2 ||
               c.theorem_case == TheoremCase::C ||
               c.theorem_case == TheoremCase::D1) {
      cites << ", item 1";
    }
    out["cites"] = cites.str();
  }
  if (report.gap) {
    out["gap"] = json{{"h_lo", report.gap->first}, {"h_hi", report.gap->second}};
  }
  json failures = json::object();
  for (const auto& [algo, why] : report.failures) failures[algo] = why;
  out["failures"] = failures;
  return out;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows) {
  os << "x,h,u,surface,fr2\n";
  for (const auto& r : rows) {
    os << format_number(r.x) << ',' << format_number(r.h) << ','
       << format_number(r.u) << ',' << format_number(r.surface) << ','
       << format_number(r.fr2) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& rows,
                     double g) {
  os << "h,u,branch,froude2\n";
  for (const auto& r : rows) {
    os << format_number(r.h) << ',' << format_number(r.u) << ','
       << (r.branch == BranchTag::Rarefaction ? "rarefaction" : "shock") << ','
       << format_number(r.u * r.u / (g * r.h)) << '\n';
  }
}

void write_composite_csv(std::ostream& os, const CompositeCurve& curve) {
  os << "h,u,branch,froude2\n";
  // rows appear in curve order (descending parameter); gap rows carry the
  // failed parameter heights with empty u and froude2 fields
  std::size_t branch_of_sample = 0;
  std::vector<std::size_t> branch_index(curve.samples.size(), 0);
  for (std::size_t bi = 0; bi < curve.branches.size(); ++bi) {
    for (std::size_t k = curve.branches[bi].first;
         k < curve.branches[bi].second; ++k) {
      branch_index[k] = bi;
    }
  }
  (void)branch_of_sample;
  for (std::size_t k = 0; k < curve.samples.size(); ++k) {
    const auto& s = curve.samples[k];
    os << format_number(s.downstream.h) << ',' << format_number(s.downstream.u)
       << ",b" << branch_index[k] << ',' << format_number(s.fr2_plus) << '\n';
  }
  if (curve.gap) {
    os << format_number(curve.gap->first) << ",,gap,\n";
    os << format_number(curve.gap->second) << ",,gap,\n";
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "h_R,verdict,type,h_star,rh_residual,grh_residual\n";
  for (const auto& r : rows) {
    os << format_number(r.h_r) << ',' << r.verdict << ',' << r.type << ',';
    if (r.h_star) os << format_number(*r.h_star);
    os << ',' << format_number(r.rh_residual) << ','
       << format_number(r.grh_residual) << '\n';
  }
}

}  // namespace swr
