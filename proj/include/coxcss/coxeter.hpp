#pragma once

#include "coxcss/number_field.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coxcss {

enum class Backend { Permutation, Bitvector, Geometric };
enum class Side { Left, Right };
enum class GroupClass { Finite, Affine, Indefinite };

std::string_view to_string(Backend b);
std::string_view to_string(GroupClass c);

/// Generator indices are 0-based internally and printed 1-based ("s1").
using Word = std::vector<int>;
using ElementKey = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const ElementKey& key) const noexcept;
};

/// Symmetric Coxeter matrix; 0 encodes m = infinity.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(std::vector<std::vector<int>> entries);

  int rank() const { return static_cast<int>(m_.size()); }
  int operator()(int i, int j) const { return m_[i][j]; }
  const std::vector<std::vector<int>>& entries() const { return m_; }
  bool operator==(const CoxeterMatrix&) const = default;

  static CoxeterMatrix type_a(int n);
  static CoxeterMatrix type_e8();
  static CoxeterMatrix boolean(int n);
  static CoxeterMatrix triangle(int a, int b, int c);
  static CoxeterMatrix complete(int rank, int m);

  bool is_type_a_pattern() const;
  bool is_commuting() const;

 private:
  std::vector<std::vector<int>> m_;
};

struct Classification {
  GroupClass kind = GroupClass::Finite;
  std::vector<double> leading_minors;
  double min_eigenvalue = 0.0;
  bool ambiguous = false;
};

/// Group element in canonical form. The key identifies the element uniquely
/// within its system; word is the canonical reduced word.
struct GroupElement {
  ElementKey key;
  int length = 0;
  Word word;

  bool operator==(const GroupElement& o) const { return key == o.key; }
};

class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix, std::optional<Backend> backend = std::nullopt,
                         std::string spec = {});

  int rank() const { return matrix_.rank(); }
  Backend backend() const { return backend_; }
  const CoxeterMatrix& matrix() const { return matrix_; }
  const std::string& spec() const { return spec_; }
  const RealCyclotomicRing& ring() const { return *ring_; }
  std::string generator_name(int i) const { return "s" + std::to_string(i + 1); }

  GroupElement identity() const;

  // Key-level primitives used by the interval builder.
  ElementKey identity_key() const;
  void multiply_key(ElementKey& key, int gen, Side side) const;
  bool right_descent_key(const ElementKey& key, int gen) const;
  int smallest_right_descent(const ElementKey& key) const;
  Word canonical_word(ElementKey key, int length) const;
  GroupElement make_element(ElementKey key, int length) const;

  /// Product of generators; returns key and length (the word need not be reduced).
  std::pair<ElementKey, int> evaluate_word(const Word& word) const;

 private:
  CoxeterMatrix matrix_;
  Backend backend_;
  std::string spec_;
  std::shared_ptr<const RealCyclotomicRing> ring_;
  // coupling_[i * rank + j]: multiplication matrix of 2cos(pi/m_ij); empty when m_ij = 2.
  std::vector<CoeffMatrix> coupling_;
  std::vector<std::vector<int>> neighbors_;

  void right_multiply_geometric(ElementKey& key, int gen) const;
  void left_multiply_geometric(ElementKey& key, int gen) const;
  bool negative_root(const ElementKey& key, int column) const;
  void guard_magnitude(const ElementKey& key) const;
};

/// Grammar: A<n> | E8 | C2^<n> | triangle <a> <b> <c> | complete4:<m> |
/// matrix [[...],[...]] (inf allowed). Backend: permutation for A_n,
/// bitvector for C2^n, geometric otherwise.
CoxeterSystem parse_group_spec(std::string_view text);

Classification classify(const CoxeterMatrix& matrix, double tol = 1e-9);
inline Classification classify(const CoxeterSystem& s, double tol = 1e-9) { return classify(s.matrix(), tol); }

GroupElement apply_generator(const CoxeterSystem& system, const GroupElement& w, int gen, Side side);
bool descent_test(const CoxeterSystem& system, const GroupElement& w, int gen, Side side);
GroupElement reduce_word(const CoxeterSystem& system, const Word& word);
GroupElement inverse(const CoxeterSystem& system, const GroupElement& w);

/// Longest element of a finite group; throws Error(CapExceeded) if the
/// length exceeds the cap (infinite group).
GroupElement longest_element(const CoxeterSystem& system, int length_cap = 10000);

/// Word syntax: "s1s2s3", "1 2 3", "(s1s2s3)^10", "id", "prod" (= s1...sn).
Word parse_word(std::string_view text, int rank);
std::string format_word(const Word& word);

struct ParsedElement {
  GroupElement element;
  std::size_t input_length = 0;
  bool input_reduced = true;
};

/// parse_word plus the keyword "longest".
ParsedElement parse_element(const CoxeterSystem& system, std::string_view text);

nlohmann::json to_json(const CoxeterSystem& system);
nlohmann::json to_json(const GroupElement& w);
nlohmann::json to_json(const Classification& c);

}  // namespace coxcss
