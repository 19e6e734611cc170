#include "swr/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "swr/rootfind.hpp"
#include "swr/wave_curves.hpp"

namespace swr {

const char* theorem_case_name(TheoremCase c) {
  switch (c) {
    case TheoremCase::ConstantTerrain: return "ConstantTerrain";
    case TheoremCase::A: return "a";
    case TheoremCase::B1: return "b1";
    case TheoremCase::B2: return "b2";
    case TheoremCase::C: return "c";
    case TheoremCase::D1: return "d1";
    case TheoremCase::D2: return "d2";
    case TheoremCase::Unclassified: return "Unclassified";
  }
  return "Unknown";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::TypeI: return "TypeI";
    case Verdict::TypeII: return "TypeII";
    case Verdict::TypeIII: return "TypeIII";
    case Verdict::NoSolution: return "NoSolution";
  }
  return "Unknown";
}

namespace {

bool states_equal(const HydraulicState& a, const HydraulicState& b) {
  return std::fabs(a.h - b.h) <= 1e-13 * std::max(a.h, b.h) &&
         std::fabs(a.u - b.u) <=
             1e-13 * std::max({1.0, std::fabs(a.u), std::fabs(b.u)});
}

// 1-wave from `from` to the point (h, u) on its curve; empty when degenerate.
std::optional<ElementaryWave> make_wave1(const HydraulicState& from,
                                         const HydraulicState& to, double g) {
  if (states_equal(from, to)) return std::nullopt;
  if (to.h < from.h) {
    return ElementaryWave{WaveKind::Rarefaction1,
                          eigenvalue(Family::Family1, from, g),
                          eigenvalue(Family::Family1, to, g), from, to};
  }
  const double sigma = shock_speed(Family::Family1, to.h, from, g);
  return ElementaryWave{WaveKind::Shock1, sigma, sigma, from, to};
}

// 2-wave from the middle state to the right anchor.
std::optional<ElementaryWave> make_wave2(const HydraulicState& from,
                                         const HydraulicState& right,
                                         double g) {
  if (states_equal(from, right)) return std::nullopt;
  if (from.h > right.h) {
    const double sigma =
        shock_speed(Family::Family2Backward, from.h, right, g);
    return ElementaryWave{WaveKind::Shock2, sigma, sigma, from, right};
  }
  return ElementaryWave{WaveKind::Rarefaction2,
                        eigenvalue(Family::Family2Backward, from, g),
                        eigenvalue(Family::Family2Backward, right, g), from,
                        right};
}

struct Assembly {
  std::vector<std::optional<ElementaryWave>> waves;
  std::vector<HydraulicState> chain;
};

WaveStructure finish_assembly(const Assembly& a, TypeLabel label) {
  WaveStructure ws;
  ws.type_label = label;
  ws.states.push_back(a.chain.front());
  for (std::size_t i = 0; i < a.waves.size(); ++i) {
    if (a.waves[i]) {
      ws.waves.push_back(*a.waves[i]);
      ws.states.push_back(a.chain[i + 1]);
    } else if (ws.states.size() > 1) {
      ws.states.back() = a.chain[i + 1];
    }
  }
  if (ws.waves.empty()) ws.states.assign(1, a.chain.front());
  return ws;
}

bool speeds_admissible(const WaveStructure& ws, std::string* why) {
  double span = 1.0;
  for (const auto& w : ws.waves) {
    span = std::max({span, std::fabs(w.s_head), std::fabs(w.s_tail)});
  }
  const double tol = 1e-9 * span;
  double prev = -std::numeric_limits<double>::infinity();
  bool before_contact = true;
  for (const auto& w : ws.waves) {
    if (w.s_tail < w.s_head - tol) {
      if (why) *why = "wave head speed exceeds tail speed";
      return false;
    }
    if (w.s_head < prev - tol) {
      if (why) *why = "wave speeds not nondecreasing";
      return false;
    }
    prev = w.s_tail;
    if (w.kind == WaveKind::TerrainContact) before_contact = false;
  }
  if (!before_contact) {
    bool seen_contact = false;
    for (const auto& w : ws.waves) {
      if (w.kind == WaveKind::TerrainContact) {
        seen_contact = true;
        continue;
      }
      if (!seen_contact && w.s_tail > tol) {
        if (why) *why = "positive wave speed left of the terrain contact";
        return false;
      }
      if (seen_contact && w.s_head < -tol) {
        if (why) *why = "negative wave speed right of the terrain contact";
        return false;
      }
    }
  }
  return true;
}

double select_beta(const std::vector<double>& roots,
                   const TerrainJumpParams& p) {
  double beta = roots.back();
  double energy = selection_energy(beta, p);
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    const double e = selection_energy(*it, p);
    if (e < energy) {
      beta = *it;
      energy = e;
    }
  }
  return beta;
}

bool terrain_continuous(const RiemannProblem& p) {
  return p.terrain_left.theta == p.terrain_right.theta &&
         p.terrain_left.z == p.terrain_right.z;
}

struct TypeAttempt {
  std::optional<WaveStructure> ws;
  ErrorCode err = ErrorCode::NoIntersection;
  std::string msg;
};

struct Ctx {
  RiemannProblem p;
  HydraulicState sonic;
  CompositeCurve curve;
  std::map<std::size_t, BoundaryReason> boundary_at;  // by index_before

  std::optional<BoundaryReason> boundary_reason(std::size_t i) const {
    const auto it = boundary_at.find(i);
    if (it == boundary_at.end()) return std::nullopt;
    return it->second;
  }
};

Ctx make_ctx(const RiemannProblem& p) {
  Ctx ctx{p,
          sonic_point_on_w1(p.left, p.g),
          build_composite_curve(p.left, p.terrain_left, p.terrain_right, p.g),
          {}};
  for (const auto& b : ctx.curve.boundaries) {
    ctx.boundary_at.emplace(b.index_before, b.reason);
  }
  return ctx;
}

// Downstream state of the 3-wave as a function of the 1-curve parameter.
std::optional<HydraulicState> landing_at(const Ctx& ctx, double h) {
  const HydraulicState up{h, eval_w1(h, ctx.p.left, ctx.p.g)};
  const auto w3 =
      solve_w3(up, ctx.p.terrain_left, ctx.p.terrain_right, ctx.p.g);
  if (!w3) return std::nullopt;
  return w3->plus_state;
}

// Refines the parameter at which the landing crosses Fr = 1 inside
// [h_small, h_big]; returns the parameter and the sonic landing state.
std::optional<std::pair<double, HydraulicState>> refine_sonic_crossing(
    const Ctx& ctx, double h_small, double h_big) {
  auto sfr = [&](double h) -> double {
    const auto dn = landing_at(ctx, h);
    if (!dn) return std::numeric_limits<double>::quiet_NaN();
    return froude_signed(*dn, ctx.p.g) - 1.0;
  };
  double lo = h_small, hi = h_big;
  double fhi = sfr(hi);
  if (std::isnan(fhi)) return std::nullopt;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = sfr(mid);
    if (std::isnan(fm)) return std::nullopt;
    if ((fm < 0.0) == (fhi < 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
    }
  }
  const double h1 = 0.5 * (lo + hi);
  const auto dn = landing_at(ctx, h1);
  if (!dn) return std::nullopt;
  return std::pair{h1, *dn};
}

// Bisection on the composite-curve parameter h for the condition
// downstream.u == w2b(downstream.h). Returns the refined parameter.
double refine_type1(const Ctx& ctx, const HydraulicState& right, double h_lo,
                    double h_hi, double f_hi_sign) {
  const auto& p = ctx.p;
  auto F = [&](double h) {
    const HydraulicState up{h, eval_w1(h, p.left, p.g)};
    const auto w3 = solve_w3(up, p.terrain_left, p.terrain_right, p.g);
    if (!w3) return std::numeric_limits<double>::quiet_NaN();
    return w3->plus_state.u - eval_w2b(w3->plus_state.h, right, p.g);
  };
  double lo = h_lo, hi = h_hi;
  double fhi = f_hi_sign;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = F(mid);
    if (std::isnan(fm)) break;
    if ((fm < 0.0) == (fhi < 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
    }
    if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

TypeAttempt try_type1(const Ctx& ctx, const HydraulicState& right) {
  TypeAttempt out;
  const auto& p = ctx.p;
  const auto& samples = ctx.curve.samples;
  int hits = 0;
  std::optional<std::pair<double, double>> bracket;  // (h_small, h_big)
  double f_big = 0.0;
  auto miss = [&](const CompositeSample& s) {
    return s.downstream.u - eval_w2b(s.downstream.h, right, p.g);
  };
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const auto reason = ctx.boundary_reason(i);
    if (reason == BoundaryReason::Gap ||
        reason == BoundaryReason::SelectionJump) {
      continue;
    }
    const auto& s0 = samples[i];      // larger h
    const auto& s1 = samples[i + 1];  // smaller h
    if (reason == BoundaryReason::FroudeCrossing) {
      // the subcritical branch really extends to the refined Fr = 1 point;
      // scan the partial segment so the type-I and type-II domains meet at
      // the same right state
      const auto sonic = refine_sonic_crossing(ctx, s1.h_on_w1, s0.h_on_w1);
      if (!sonic) continue;
      const bool sub_first =
          froude_signed(s0.downstream, p.g) <= 1.0 + 1e-12;
      const auto& sub = sub_first ? s0 : s1;
      const double f_sub = miss(sub);
      const double f_sonic =
          sonic->second.u - eval_w2b(sonic->second.h, right, p.g);
      if (f_sub == 0.0 || (f_sub < 0.0) != (f_sonic < 0.0)) {
        ++hits;
        if (!bracket) {
          if (sub_first) {
            bracket = {sonic->first, sub.h_on_w1};
            f_big = f_sub;
          } else {
            bracket = {sub.h_on_w1, sonic->first};
            f_big = f_sonic;
          }
        }
      }
      continue;
    }
    if (froude_signed(s0.downstream, p.g) > 1.0 + 1e-12 ||
        froude_signed(s1.downstream, p.g) > 1.0 + 1e-12) {
      continue;  // supercritical landings belong to types II/III
    }
    const double f0 = miss(s0);
    const double f1 = miss(s1);
    if (f0 == 0.0 || (f0 < 0.0) != (f1 < 0.0)) {
      ++hits;
      if (!bracket) {
        bracket = {s1.h_on_w1, s0.h_on_w1};
        f_big = f0;
      }
    }
  }
  if (!bracket) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "backward 2-curve does not meet the subcritical composite curve";
    return out;
  }
  const double h_star =
      refine_type1(ctx, right, bracket->first, bracket->second, f_big);
  const HydraulicState m1{h_star, eval_w1(h_star, p.left, p.g)};
  const auto w3 = solve_w3(m1, p.terrain_left, p.terrain_right, p.g);
  if (!w3) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "terrain jump unsolvable at the refined intersection";
    return out;
  }
  const HydraulicState plus = w3->plus_state;
  const double resid = std::fabs(plus.u - eval_w2b(plus.h, right, p.g));
  if (resid > 1e-9 * std::max(1.0, std::fabs(plus.u))) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "intersection refinement did not converge";
    return out;
  }
  Assembly a;
  a.chain = {p.left, m1, plus, right};
  a.waves = {make_wave1(p.left, m1, p.g),
             ElementaryWave{WaveKind::TerrainContact, 0.0, 0.0, m1, plus},
             make_wave2(plus, right, p.g)};
  WaveStructure ws = finish_assembly(a, TypeLabel::TypeI);
  if (hits > 1) {
    std::ostringstream note;
    note << "w2b_composite_intersections=" << hits;
    ws.notes.push_back(note.str());
  }
  std::string why;
  if (!speeds_admissible(ws, &why)) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "inadmissible wave speeds: " + why;
    return out;
  }
  out.ws = std::move(ws);
  return out;
}

TypeAttempt try_type2(const Ctx& ctx, const HydraulicState& right) {
  TypeAttempt out;
  const auto& p = ctx.p;
  const auto& samples = ctx.curve.samples;
  std::optional<std::size_t> cross;
  for (const auto& b : ctx.curve.boundaries) {
    if (b.reason == BoundaryReason::FroudeCrossing) {
      cross = b.index_before;
      break;  // boundaries are ordered by descending h; take the largest h
    }
  }
  if (!cross) {
    out.err = ErrorCode::NoSonicLanding;
    out.msg = "composite curve has no continuous Fr = 1 crossing";
    return out;
  }
  const auto sonic = refine_sonic_crossing(ctx, samples[*cross + 1].h_on_w1,
                                           samples[*cross].h_on_w1);
  if (!sonic ||
      std::fabs(froude_signed(sonic->second, p.g) - 1.0) > 1e-9) {
    out.err = ErrorCode::NoSonicLanding;
    out.msg = "could not land the terrain contact at Fr = 1";
    return out;
  }
  const double h1 = sonic->first;
  const HydraulicState m1{h1, eval_w1(h1, p.left, p.g)};
  const HydraulicState u2 = sonic->second;
  auto F = [&](double h) { return eval_w1(h, u2, p.g) - eval_w2b(h, right, p.g); };
  if (!(F(u2.h) < 0.0)) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "sonic landing is not below the backward 2-curve";
    return out;
  }
  const auto brackets =
      detail::sign_change_scan(F, u2.h, 1e-9 * u2.h, 2048);  // descending
  if (brackets.empty()) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "continuation 1-wave does not meet the backward 2-curve";
    return out;
  }
  const auto [ha, hb] = brackets.front();  // largest-h crossing first
  const double h_star = detail::bisect(F, std::min(ha, hb), std::max(ha, hb),
                                       F(std::min(ha, hb)));
  const HydraulicState mstar{h_star, eval_w1(h_star, u2, p.g)};
  Assembly a;
  a.chain = {p.left, m1, u2, mstar, right};
  a.waves = {make_wave1(p.left, m1, p.g),
             ElementaryWave{WaveKind::TerrainContact, 0.0, 0.0, m1, u2},
             make_wave1(u2, mstar, p.g), make_wave2(mstar, right, p.g)};
  WaveStructure ws = finish_assembly(a, TypeLabel::TypeII);
  std::string why;
  if (!speeds_admissible(ws, &why)) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "inadmissible wave speeds: " + why;
    return out;
  }
  out.ws = std::move(ws);
  return out;
}

TypeAttempt try_type3(const Ctx& ctx, const HydraulicState& right) {
  TypeAttempt out;
  const auto& p = ctx.p;
  const auto w3 =
      solve_w3(ctx.sonic, p.terrain_left, p.terrain_right, p.g);
  if (!w3) {
    out.err = ErrorCode::NoTerrainSolution;
    out.msg = "terrain jump unsolvable at the sonic point";
    return out;
  }
  const HydraulicState u2 = w3->plus_state;
  if (!(froude_signed(u2, p.g) > 1.0)) {
    out.err = ErrorCode::NoIntersection;
    out.msg = "sonic landing is not supercritical";
    return out;
  }
  // h0: where the 1-shock from u2 becomes stationary
  auto sig1 = [&](double h) {
    return u2.u - std::sqrt(p.g * h) * std::sqrt(0.5 * (1.0 + h / u2.h));
  };
  double hi = 2.0 * u2.h;
  while (sig1(hi) > 0.0) hi *= 2.0;
  const double h0 = detail::bisect(sig1, u2.h, hi, sig1(u2.h));
  auto F = [&](double h) { return eval_w1(h, u2, p.g) - eval_w2b(h, right, p.g); };
  auto brackets = detail::sign_change_scan(F, h0, 1e-9 * u2.h, 4096);
  if (brackets.empty()) {
    // would an intersection exist on the inadmissible shock extension?
    const auto beyond = detail::sign_change_scan(F, 8.0 * h0, h0, 4096);
    if (!beyond.empty()) {
      out.err = ErrorCode::NegativeInterposedShockSpeed;
      out.msg = "interposed 1-shock would have negative speed";
    } else {
      out.err = ErrorCode::NoIntersection;
      out.msg = "interposed 1-wave does not meet the backward 2-curve";
    }
    return out;
  }
  const auto [ha, hb] = brackets.front();
  const double h3 = detail::bisect(F, std::min(ha, hb), std::max(ha, hb),
                                   F(std::min(ha, hb)));
  const HydraulicState m3{h3, eval_w1(h3, u2, p.g)};
  Assembly a;
  a.chain = {p.left, ctx.sonic, u2, m3, right};
  a.waves = {make_wave1(p.left, ctx.sonic, p.g),
             ElementaryWave{WaveKind::TerrainContact, 0.0, 0.0, ctx.sonic, u2},
             make_wave1(u2, m3, p.g), make_wave2(m3, right, p.g)};
  WaveStructure ws = finish_assembly(a, TypeLabel::TypeIII);
  std::string why;
  if (!speeds_admissible(ws, &why)) {
    out.err = ErrorCode::NegativeInterposedShockSpeed;
    out.msg = "inadmissible wave speeds: " + why;
    return out;
  }
  out.ws = std::move(ws);
  return out;
}

}  // namespace

CompositeCurve build_composite_curve(const HydraulicState& left,
                                     const TerrainSide& tl,
                                     const TerrainSide& tr, double g,
                                     std::optional<double> h_lo_opt,
                                     int n_samples) {
  if (n_samples < 2) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "composite curve needs n_samples >= 2");
  }
  const HydraulicState sonic = sonic_point_on_w1(left, g);
  const double h_lo = h_lo_opt.value_or(sonic.h);
  if (h_lo < sonic.h * (1.0 - 1e-12) || h_lo > left.h) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "composite curve needs h_lo in [sonic height, h_L]");
  }
  CompositeCurve curve;
  curve.samples.reserve(n_samples);
  double gap_lo = 0.0, gap_hi = 0.0;
  bool have_gap = false;
  bool have_prev = false;
  double prev_beta = 0.0;
  double prev_sfr = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double s = static_cast<double>(i) / (n_samples - 1);
    const double h = left.h + s * (h_lo - left.h);  // descending
    const HydraulicState up{h, eval_w1(h, left, g)};
    const TerrainJumpParams params = make_jump_params(up, tl, tr, g);
    const RootClassification cls = classify_and_solve(params);
    if (cls.roots.empty()) {
      if (!have_gap) {
        gap_lo = gap_hi = h;
        have_gap = true;
      } else {
        gap_lo = std::min(gap_lo, h);
        gap_hi = std::max(gap_hi, h);
      }
      if (have_prev && !curve.samples.empty()) {
        curve.boundaries.push_back(
            {curve.samples.size() - 1, BoundaryReason::Gap});
      }
      have_prev = false;
      continue;
    }
    const double beta = select_beta(cls.roots, params);
    const HydraulicState down{beta * up.h, up.u / (params.theta * beta)};
    const double sfr = froude_signed(down, g);
    bool jumped = false;
    if (have_prev) {
      double nearest = cls.roots.front();
      for (double r : cls.roots) {
        if (std::fabs(r - prev_beta) < std::fabs(nearest - prev_beta)) {
          nearest = r;
        }
      }
      if (nearest != beta &&
          std::fabs(nearest - beta) > 1e-12 * std::max(1.0, beta)) {
        curve.boundaries.push_back(
            {curve.samples.size() - 1, BoundaryReason::SelectionJump});
        jumped = true;
      }
      if (!jumped && (prev_sfr - 1.0) * (sfr - 1.0) < 0.0) {
        curve.boundaries.push_back(
            {curve.samples.size() - 1, BoundaryReason::FroudeCrossing});
      }
    }
    curve.samples.push_back({h, up, down, beta, sfr * sfr});
    have_prev = true;
    prev_beta = beta;
    prev_sfr = sfr;
  }
  if (have_gap) curve.gap = {gap_lo, gap_hi};
  std::size_t begin = 0;
  for (const auto& b : curve.boundaries) {
    curve.branches.emplace_back(begin, b.index_before + 1);
    begin = b.index_before + 1;
  }
  if (begin < curve.samples.size()) {
    curve.branches.emplace_back(begin, curve.samples.size());
  }
  return curve;
}

double find_h_c(const HydraulicState& left, const TerrainSide& tl,
                const TerrainSide& tr, double g) {
  if (!(tr.theta < tl.theta) || !(tr.z > tl.z)) {
    throw SolverError(
        ErrorCode::WrongRegime,
        "h_c is defined for theta_R < theta_L with z_R > z_L only");
  }
  auto solvable = [&](double h) {
    const HydraulicState up{h, eval_w1(h, left, g)};
    return solve_w3(up, tl, tr, g).has_value();
  };
  if (!solvable(left.h)) {
    throw SolverError(ErrorCode::NeverSolvable,
                      "the terrain jump is unsolvable even at h = h_L");
  }
  const HydraulicState sonic = sonic_point_on_w1(left, g);
  if (solvable(sonic.h)) return sonic.h;
  const auto [lo, hi] = detail::bisect_predicate(solvable, sonic.h, left.h,
                                                 false, 1e-10 * left.h);
  return hi;  // the solvable side
}

WaveStructure solve_constant_terrain(const RiemannProblem& p0) {
  const RiemannProblem p = validate_problem(p0);
  if (!terrain_continuous(p)) {
    throw SolverError(ErrorCode::InvalidArgument,
                      "solve_constant_terrain requires continuous terrain");
  }
  if (states_equal(p.left, p.right)) {
    WaveStructure ws;
    ws.type_label = TypeLabel::ConstantTerrain;
    ws.states.push_back(p.left);
    return ws;
  }
  // wet intersection exists iff the curves cross above h = 0
  const double f_at_zero = p.left.u + 2.0 * std::sqrt(p.g * p.left.h) -
                           p.right.u + 2.0 * std::sqrt(p.g * p.right.h);
  if (f_at_zero <= 0.0) {
    throw SolverError(ErrorCode::NoWetIntersection,
                      "initial states pull apart into a dry bed");
  }
  auto F = [&](double h) {
    return eval_w1(h, p.left, p.g) - eval_w2b(h, p.right, p.g);
  };
  double lo = kDryHeight;
  double hi = std::max(p.left.h, p.right.h);
  while (F(hi) > 0.0) hi *= 2.0;
  const double h_star = detail::bisect(F, lo, hi, F(lo));
  const HydraulicState mid{h_star, eval_w1(h_star, p.left, p.g)};
  const double resid = std::fabs(F(h_star));
  if (resid > 1e-10 * std::max(1.0, std::fabs(mid.u))) {
    throw SolverError(ErrorCode::NoWetIntersection,
                      "two-wave intersection did not converge");
  }
  Assembly a;
  a.chain = {p.left, mid, p.right};
  a.waves = {make_wave1(p.left, mid, p.g), make_wave2(mid, p.right, p.g)};
  return finish_assembly(a, TypeLabel::ConstantTerrain);
}

WaveStructure solve_type1(const RiemannProblem& p) {
  const Ctx ctx = make_ctx(validate_problem(p));
  TypeAttempt att = try_type1(ctx, p.right);
  if (!att.ws) throw SolverError(att.err, att.msg);
  return *att.ws;
}

WaveStructure solve_type2(const RiemannProblem& p) {
  const Ctx ctx = make_ctx(validate_problem(p));
  TypeAttempt att = try_type2(ctx, p.right);
  if (!att.ws) throw SolverError(att.err, att.msg);
  return *att.ws;
}

WaveStructure solve_type3(const RiemannProblem& p) {
  const Ctx ctx = make_ctx(validate_problem(p));
  TypeAttempt att = try_type3(ctx, p.right);
  if (!att.ws) throw SolverError(att.err, att.msg);
  return *att.ws;
}

namespace {

Verdict empirical_verdict(const Ctx& ctx, const HydraulicState& right) {
  if (try_type1(ctx, right).ws) return Verdict::TypeI;
  if (try_type2(ctx, right).ws) return Verdict::TypeII;
  if (try_type3(ctx, right).ws) return Verdict::TypeIII;
  return Verdict::NoSolution;
}

double threshold_bisect(const std::function<bool(double)>& pred, double lo,
                        double hi, double abs_tol) {
  const bool plo = pred(lo);
  if (plo == pred(hi)) return plo ? lo : hi;  // no flip: degenerate
  const auto [a, b] = detail::bisect_predicate(pred, lo, hi, plo, abs_tol);
  return 0.5 * (a + b);
}

}  // namespace

Classification classify_dambreak(const RiemannProblem& p0) {
  const RiemannProblem p = validate_problem(p0);
  if (p.left.u != 0.0 || p.right.u != 0.0) {
    throw SolverError(ErrorCode::NotDamBreak,
                      "dam-break data requires u_L = u_R = 0");
  }
  const double zl = p.terrain_left.z, zr = p.terrain_right.z;
  if (!(p.left.h + zl > p.right.h + zr)) {
    throw SolverError(ErrorCode::NotDamBreak,
                      "dam-break data requires h_L + z_L > h_R + z_R");
  }
  Classification out;
  out.h_max = p.left.h + zl - zr;
  if (terrain_continuous(p)) {
    out.theorem_case = TheoremCase::ConstantTerrain;
    out.h_sharp = 4.0 * p.left.h / 9.0;
    out.solvable = Verdict::TypeI;  // algorithm I degenerates to two waves
    return out;
  }
  const Ctx ctx = make_ctx(p);
  out.h_sharp = ctx.sonic.h;
  const double tl = p.terrain_left.theta, tr = p.terrain_right.theta;
  const double theta = tr / tl;
  out.theorem_case = TheoremCase::Unclassified;
  if (tr > tl && zr > zl) {
    if (out.h_sharp > (zr - zl) * tr / (tr - tl)) out.theorem_case = TheoremCase::A;
  } else if (tr > tl && zr < zl) {
    const double tf = tilde_fr(theta, (zr - zl) / out.h_sharp);
    if (tf < 1.0) out.theorem_case = TheoremCase::B1;
    if (tf > 1.0) out.theorem_case = TheoremCase::B2;
  } else if (tr < tl && zr < zl) {
    if (p.left.h < (zr - zl) * tr / (tr - tl)) out.theorem_case = TheoremCase::C;
  } else if (tr < tl && zr > zl) {
    const double h_c = find_h_c(p.left, p.terrain_left, p.terrain_right, p.g);
    out.h_c = h_c;
    const HydraulicState up{h_c, eval_w1(h_c, p.left, p.g)};
    const auto w3 = solve_w3(up, p.terrain_left, p.terrain_right, p.g);
    if (w3) {
      const double fr = froude_signed(w3->plus_state, p.g);
      if (fr < 1.0) out.theorem_case = TheoremCase::D1;
      if (fr > 1.0) out.theorem_case = TheoremCase::D2;
    }
  }
  const double lo = 1e-6 * out.h_max;
  const double hi = out.h_max * (1.0 - 1e-9);
  const double tol = 1e-8 * out.h_max;
  auto p1 = [&](double hR) {
    return try_type1(ctx, HydraulicState{hR, 0.0}).ws.has_value();
  };
  auto p3 = [&](double hR) {
    return try_type3(ctx, HydraulicState{hR, 0.0}).ws.has_value();
  };
  switch (out.theorem_case) {
    case TheoremCase::A:
    case TheoremCase::B1: {
      const double xi1 = threshold_bisect(p3, lo, hi, tol);
      const double xi2 = threshold_bisect(p1, lo, hi, tol);
      out.thresholds = {{"xi1", xi1}, {"xi2", xi2}};
      if (p.right.h <= xi1) {
        out.solvable = Verdict::TypeIII;
      } else if (p.right.h < xi2) {
        out.solvable = Verdict::NoSolution;
      } else {
        out.solvable = Verdict::TypeI;
      }
      break;
    }
    case TheoremCase::B2:
    case TheoremCase::C:
    case TheoremCase::D1: {
      const double xi = threshold_bisect(p1, lo, hi, tol);
      out.thresholds = {{"xi", xi}};
      out.solvable =
          p.right.h < xi ? Verdict::NoSolution : Verdict::TypeI;
      break;
    }
    case TheoremCase::D2: {
      const double xi = threshold_bisect(p1, lo, hi, tol);
      out.thresholds = {{"xi", xi}};
      out.solvable = p.right.h < xi ? Verdict::TypeII : Verdict::TypeI;
      break;
    }
    default:
      out.solvable = empirical_verdict(ctx, p.right);
      break;
  }
  return out;
}

SolveResult solve(const RiemannProblem& p0) {
  const RiemannProblem p = validate_problem(p0);
  if (terrain_continuous(p)) {
    try {
      return solve_constant_terrain(p);
    } catch (const SolverError& e) {
      if (e.code() != ErrorCode::NoWetIntersection) throw;
      NoSolutionReport report;
      report.failures.emplace_back("constant_terrain", e.what());
      return report;
    }
  }
  if (froude_squared(p.left, p.g) >= 1.0) {
    throw SolverError(ErrorCode::SupercriticalData,
                      "left state is supercritical (Fr^2 >= 1); the composite "
                      "constructions require subcritical data");
  }
  if (froude_squared(p.right, p.g) >= 1.0) {
    throw SolverError(ErrorCode::SupercriticalData,
                      "right state is supercritical (Fr^2 >= 1); the composite "
                      "constructions require subcritical data");
  }
  const Ctx ctx = make_ctx(p);
  NoSolutionReport report;
  report.gap = ctx.curve.gap;
  {
    TypeAttempt att = try_type1(ctx, p.right);
    if (att.ws) return *att.ws;
    report.failures.emplace_back("type1", att.msg);
  }
  {
    TypeAttempt att = try_type2(ctx, p.right);
    if (att.ws) return *att.ws;
    report.failures.emplace_back("type2", att.msg);
  }
  {
    TypeAttempt att = try_type3(ctx, p.right);
    if (att.ws) return *att.ws;
    report.failures.emplace_back("type3", att.msg);
  }
  if (p.left.u == 0.0 && p.right.u == 0.0 &&
      p.left.h + p.terrain_left.z > p.right.h + p.terrain_right.z) {
    report.classification = classify_dambreak(p);
  }
  return report;
}

StructureDiagnostics verify_structure(const WaveStructure& ws,
                                      const RiemannProblem& p, int n_quad) {
  StructureDiagnostics d{};
  d.max_rh_residual = 0.0;
  d.grh_mass = 0.0;
  d.grh_momentum = 0.0;
  d.max_intersection_residual = 0.0;
  for (const auto& w : ws.waves) {
    const auto& up = w.upstream;
    const auto& dn = w.downstream;
    switch (w.kind) {
      case WaveKind::Shock1:
      case WaveKind::Shock2: {
        const double sigma = w.s_head;
        const double r1 = -sigma * (dn.h - up.h) + (dn.h * dn.u - up.h * up.u);
        const double r2 =
            -sigma * (dn.h * dn.u - up.h * up.u) +
            (dn.h * dn.u * dn.u + 0.5 * p.g * dn.h * dn.h) -
            (up.h * up.u * up.u + 0.5 * p.g * up.h * up.h);
        d.max_rh_residual =
            std::max({d.max_rh_residual, std::fabs(r1), std::fabs(r2)});
        break;
      }
      case WaveKind::TerrainContact: {
        const GrhResiduals r = verify_generalized_rh(
            up, dn, p.terrain_left, p.terrain_right, p.g, n_quad);
        const double scale = p.terrain_left.theta * up.h * up.u * up.u +
                             0.5 * p.g * up.h * up.h;
        d.grh_mass = r.mass / scale;
        d.grh_momentum = r.momentum / scale;
        break;
      }
      default:
        break;
    }
    // curve consistency: each moving wave's far state lies on the curve of
    // its near anchor
    double resid = 0.0;
    if (w.kind == WaveKind::Rarefaction1 || w.kind == WaveKind::Shock1) {
      resid = std::fabs(dn.u - eval_w1(dn.h, up, p.g));
    } else if (w.kind == WaveKind::Rarefaction2 || w.kind == WaveKind::Shock2) {
      resid = std::fabs(up.u - eval_w2b(up.h, dn, p.g));
    }
    d.max_intersection_residual = std::max(d.max_intersection_residual, resid);
  }
  std::string why;
  d.speeds_ordered = true;
  d.contact_signs_ok = true;
  if (!speeds_admissible(ws, &why)) {
    if (why.find("contact") != std::string::npos) {
      d.contact_signs_ok = false;
    } else {
      d.speeds_ordered = false;
    }
  }
  d.endpoints_match =
      !ws.states.empty() && states_equal(ws.states.front(), p.left) &&
      (ws.waves.empty() || states_equal(ws.states.back(), p.right));
  return d;
}

}  // namespace swr
