#ifndef SWR_CLI_IO_HPP
#define SWR_CLI_IO_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "swr/constructor.hpp"
#include "swr/core.hpp"
#include "swr/sampler.hpp"
#include "swr/wave_curves.hpp"

// Problem-file parsing and the output bundle formats. CSV columns use '.'
// decimals and 15 significant digits; headers are part of the contract.

namespace swr {

/// Gravity resolution order: explicit flag, then the problem file's "g",
/// then the SWE_RIEMANN_G environment value, then 9.81.
RiemannProblem parse_problem_json(const std::string& text,
                                  std::optional<double> g_flag,
                                  std::optional<double> g_env);

nlohmann::json solution_to_json(const WaveStructure& ws,
                                const RiemannProblem& p);
nlohmann::json report_to_json(const NoSolutionReport& report,
                              const RiemannProblem& p);
nlohmann::json classification_to_json(const Classification& c);

/// Rebuilds a wave structure from solution_to_json output (for re-checking
/// emitted solutions).
WaveStructure solution_from_json(const nlohmann::json& j);

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows);
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& rows,
                     double g);
void write_composite_csv(std::ostream& os, const CompositeCurve& curve);

struct SweepRow {
  double h_r;
  std::string verdict;  // "solved" or "no_solution"
  std::string type;
  std::optional<double> h_star;  // height just left of the 2-wave
  double rh_residual;
  double grh_residual;
};

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// 15-significant-digit decimal formatting shared by all CSV output.
std::string format_number(double v);

}  // namespace swr

#endif
