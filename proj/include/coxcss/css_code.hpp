#pragma once

#include "coxcss/bit_matrix.hpp"
#include "coxcss/bruhat.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coxcss {

enum class CheckType { X, Z };
std::string_view to_string(CheckType t);
inline CheckType opposite(CheckType t) { return t == CheckType::X ? CheckType::Z : CheckType::X; }

/// Which layer supplies X checks. LowerX: layer p-1 -> H_X, layer p+1 -> H_Z.
enum class SideConvention { LowerX, LowerZ };

/// CSS code with H_X H_Z^T = 0. Qubit labels are kept on the code, row labels
/// on the check matrices.
struct CssCode {
  BitMatrix hx;
  BitMatrix hz;
  std::vector<std::string> qubit_labels;
  nlohmann::json provenance = nlohmann::json::array();

  std::size_t n() const { return hx.cols(); }
  const BitMatrix& checks(CheckType t) const { return t == CheckType::X ? hx : hz; }
  BitMatrix& checks(CheckType t) { return t == CheckType::X ? hx : hz; }
};

/// Validates shapes and orthogonality (throws Error(Structural)).
CssCode make_css_code(BitMatrix hx, BitMatrix hz, nlohmann::json provenance = nlohmann::json::array());
bool is_orthogonal(const CssCode& code);

/// H_X = B_p, H_Z = B_{p+1}^T (swapped under LowerZ). Qubits are layer p.
CssCode css_from_triple(const LayeredSubposet& subposet, int p, SideConvention convention = SideConvention::LowerX);
/// Three-layer subposet centred at its middle rank.
CssCode css_from_triple(const LayeredSubposet& subposet3, SideConvention convention = SideConvention::LowerX);

/// k = n - rank H_X - rank H_Z.
std::size_t logical_count(const CssCode& code);

struct WeightStats {
  std::size_t max_x = 0;
  std::size_t max_z = 0;
  double mean_x = 0.0;
  double mean_z = 0.0;
  std::size_t max_qubit_degree_x = 0;
  std::size_t max_qubit_degree_z = 0;
  std::map<std::size_t, std::size_t> histogram_x;
  std::map<std::size_t, std::size_t> histogram_z;
  std::size_t max() const { return max_x > max_z ? max_x : max_z; }
};
WeightStats weight_stats(const CssCode& code);

/// Logical bases: x rows in ker H_Z outside rowspace(H_X), z rows in ker H_X
/// outside rowspace(H_Z); each has k independent rows modulo stabilizers.
struct LogicalBasis {
  BitMatrix x;
  BitMatrix z;
};
LogicalBasis logical_operators(const CssCode& code);

/// Removes qubits whose column is zero in H_X or in H_Z, then zero rows.
CssCode prune_decoupled_qubits(const CssCode& code);

/// True iff for every chosen lower row x (layer p-1) and upper row z (layer
/// p+1) the open interval (x, z) lies inside the qubit set or misses it.
/// Empty qubit list means the whole layer p.
bool validate_subcode_selection(const LayeredSubposet& subposet, int p, const std::vector<std::size_t>& lower_rows,
                                const std::vector<std::size_t>& upper_rows,
                                const std::vector<std::size_t>& qubits = {});

/// Restriction to the selected rows and qubits (layer positions).
CssCode subcode(const LayeredSubposet& subposet, int p, const std::vector<std::size_t>& lower_rows,
                const std::vector<std::size_t>& upper_rows, const std::vector<std::size_t>& qubits,
                SideConvention convention = SideConvention::LowerX);

nlohmann::json code_summary(const CssCode& code);

/// Bundle: one JSON header line followed by the two alist blocks.
void write_bundle(std::ostream& os, const CssCode& code, const nlohmann::json& extra = nlohmann::json::object());
CssCode read_bundle(std::istream& is);
std::string to_bundle(const CssCode& code, const nlohmann::json& extra = nlohmann::json::object());
CssCode from_bundle(const std::string& text);

/// FNV-1a 64 of the check matrices and labels, as hex.
std::string code_hash(const CssCode& code);

}  // namespace coxcss
