#pragma once

#include "coxcss/css_code.hpp"
#include "coxcss/spheres.hpp"

#include <json.hpp>

#include <vector>

namespace coxcss {

/// Split of one check row into arms A_1..A_{b+1} joined by b bridge qubits.
/// Bridge i links arm i and arm i+1 and is added to the dual rows listed in
/// bridge_rows[i]. Column and row indices are 0-based.
struct BridgePlan {
  CheckType side = CheckType::X;
  std::size_t row = 0;
  std::vector<std::vector<std::size_t>> arms;
  std::vector<std::vector<std::size_t>> bridge_rows;

  std::size_t bridges() const { return arms.empty() ? 0 : arms.size() - 1; }
  /// Weight of each new row: |A_i| plus the adjacent bridges.
  std::vector<std::size_t> arm_weights() const;
};

/// Dual rows that must receive bridge i: those meeting A_1 u ... u A_i oddly.
std::vector<std::vector<std::size_t>> required_bridge_rows(const CssCode& code, CheckType side, std::size_t row,
                                                           const std::vector<std::vector<std::size_t>>& arms);

Verdict validate_plan(const CssCode& code, const BridgePlan& plan);

/// Anchor: lowest-index overlapping dual row gets the bridge, other columns
/// are placed greedily. MinBridges (two arms only): first arm chosen to
/// minimise the number of dual rows receiving the bridge.
enum class SplitPolicy { Anchor, MinBridges };

/// Deterministic plan for target arm weights (m_1, ..., m_{b+1}).
BridgePlan propose_split(const CssCode& code, CheckType side, std::size_t row, const std::vector<std::size_t>& arm_weights,
                         SplitPolicy policy = SplitPolicy::Anchor);

/// Arm 1 replaces the row in place, other arms are appended, bridge columns
/// are appended after the existing qubits.
CssCode apply_bridge(const CssCode& code, const BridgePlan& plan);

struct HeavyRow {
  CheckType side = CheckType::X;
  std::size_t row = 0;
  std::size_t weight = 0;
  std::string reason;  // empty if the row was never attempted
};

struct ReductionResult {
  CssCode code;
  std::size_t steps = 0;
  bool converged = false;
  std::vector<HeavyRow> residual;  // rows still above w_max when the loop stopped
};

/// Splits the heaviest splittable row (X first on ties) until every row has
/// weight <= w_max, no heavy row admits a plan, or max_steps bridges were applied.
ReductionResult reduce_to_threshold(const CssCode& code, std::size_t w_max, std::size_t max_steps = 1000,
                                    SplitPolicy policy = SplitPolicy::MinBridges);
nlohmann::json to_json(const ReductionResult& r);

/// Fixture format: 1-based indices, {"side","row","arms","bridge_rows"}.
nlohmann::json plan_to_json(const BridgePlan& plan);
BridgePlan plan_from_json(const nlohmann::json& j);

}  // namespace coxcss
