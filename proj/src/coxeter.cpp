#include "coxcss/coxeter.hpp"

#include "coxcss/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>

namespace coxcss {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Permutation: return "permutation";
    case Backend::Bitvector: return "bitvector";
    case Backend::Geometric: return "geometric";
  }
  return "unknown";
}

std::string_view to_string(GroupClass c) {
  switch (c) {
    case GroupClass::Finite: return "finite";
    case GroupClass::Affine: return "affine";
    case GroupClass::Indefinite: return "indefinite";
  }
  return "unknown";
}

std::size_t KeyHash::operator()(const ElementKey& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
  for (std::int64_t v : key) {
    std::uint64_t x = static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    h ^= x;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- matrices

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries) : m_(std::move(entries)) {
  const std::size_t r = m_.size();
  if (r == 0) throw Error(ErrorKind::InvalidInput, "Coxeter matrix must have rank >= 1");
  for (std::size_t i = 0; i < r; ++i) {
    if (m_[i].size() != r) throw Error(ErrorKind::InvalidInput, "Coxeter matrix must be square");
    if (m_[i][i] != 1) throw Error(ErrorKind::InvalidInput, "Coxeter matrix diagonal must be 1");
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      const int v = m_[i][j];
      if (v != 0 && v < 2)
        throw Error(ErrorKind::InvalidInput, "off-diagonal Coxeter entries must be >= 2 or inf");
      if (m_[j][i] != v) throw Error(ErrorKind::InvalidInput, "Coxeter matrix must be symmetric");
    }
  }
}

namespace {

std::vector<std::vector<int>> all_twos(int r) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(r), 2));
  for (int i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

CoxeterMatrix CoxeterMatrix::type_a(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "A_n needs n >= 1");
  auto m = all_twos(n);
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  return CoxeterMatrix(std::move(m));
}

CoxeterMatrix CoxeterMatrix::type_e8() {
  auto m = all_twos(8);
  const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto& e : edges) m[e[0] - 1][e[1] - 1] = m[e[1] - 1][e[0] - 1] = 3;
  return CoxeterMatrix(std::move(m));
}

CoxeterMatrix CoxeterMatrix::boolean(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "C2^n needs n >= 1");
  return CoxeterMatrix(all_twos(n));
}

CoxeterMatrix CoxeterMatrix::triangle(int a, int b, int c) {
  auto m = all_twos(3);
  m[0][1] = m[1][0] = a;
  m[0][2] = m[2][0] = b;
  m[1][2] = m[2][1] = c;
  return CoxeterMatrix(std::move(m));
}

CoxeterMatrix CoxeterMatrix::complete(int rank, int mval) {
  auto m = all_twos(rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (i != j) m[i][j] = mval;
  return CoxeterMatrix(std::move(m));
}

bool CoxeterMatrix::is_type_a_pattern() const {
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (m_[i][j] != (j == i + 1 ? 3 : 2)) return false;
  return true;
}

bool CoxeterMatrix::is_commuting() const {
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (m_[i][j] != 2) return false;
  return true;
}

// ---------------------------------------------------------------- system

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix, std::optional<Backend> backend, std::string spec)
    : matrix_(std::move(matrix)), spec_(std::move(spec)) {
  const int r = matrix_.rank();
  if (backend) {
    backend_ = *backend;
    if (backend_ == Backend::Permutation && !matrix_.is_type_a_pattern())
      throw Error(ErrorKind::InvalidInput, "permutation backend requires an A_n Coxeter matrix");
    if (backend_ == Backend::Bitvector && (!matrix_.is_commuting() || r > 62))
      throw Error(ErrorKind::InvalidInput, "bitvector backend requires commuting generators (rank <= 62)");
  } else if (matrix_.is_commuting() && r <= 62) {
    backend_ = Backend::Bitvector;
  } else if (matrix_.is_type_a_pattern()) {
    backend_ = Backend::Permutation;
  } else {
    backend_ = Backend::Geometric;
  }
  if (spec_.empty()) spec_ = to_json(*this)["matrix"].dump();

  int conductor = 1;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && matrix_(i, j) != 0) conductor = std::lcm(conductor, matrix_(i, j));
  conductor = std::max(conductor, 2);
  ring_ = std::make_shared<RealCyclotomicRing>(conductor);

  neighbors_.assign(static_cast<std::size_t>(r), {});
  coupling_.assign(static_cast<std::size_t>(r * r), CoeffMatrix());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j || matrix_(i, j) == 2) continue;
      neighbors_[i].push_back(j);
      coupling_[i * r + j] = ring_->multiplication_matrix(ring_->two_cos_pi_over(matrix_(i, j)));
    }
}

ElementKey CoxeterSystem::identity_key() const {
  const int r = rank();
  switch (backend_) {
    case Backend::Bitvector: return ElementKey{0};
    case Backend::Permutation: {
      ElementKey k(static_cast<std::size_t>(r + 1));
      std::iota(k.begin(), k.end(), 0);
      return k;
    }
    case Backend::Geometric: {
      const int d = ring_->degree();
      ElementKey k(static_cast<std::size_t>(d * r * r), 0);
      // block j, coordinate j, constant term
      for (int j = 0; j < r; ++j) k[static_cast<std::size_t>((j * r + j) * d)] = 1;
      return k;
    }
  }
  return {};
}

GroupElement CoxeterSystem::identity() const { return GroupElement{identity_key(), 0, {}}; }

void CoxeterSystem::guard_magnitude(const ElementKey& key) const {
  constexpr std::int64_t limit = std::int64_t{1} << 40;
  for (std::int64_t v : key)
    if (v > limit || v < -limit)
      throw Error(ErrorKind::Overflow, "reflection representation coefficients exceed 2^40");
}

void CoxeterSystem::right_multiply_geometric(ElementKey& key, int gen) const {
  const int r = rank();
  const int d = ring_->degree();
  Eigen::Map<CoeffMatrix> m(key.data(), d, r * r);
  for (int j : neighbors_[gen]) m.middleCols(j * r, r).noalias() += coupling_[gen * r + j] * m.middleCols(gen * r, r);
  m.middleCols(gen * r, r) *= -1;
  guard_magnitude(key);
}

void CoxeterSystem::left_multiply_geometric(ElementKey& key, int gen) const {
  const int r = rank();
  const int d = ring_->degree();
  Eigen::Map<CoeffMatrix> m(key.data(), d, r * r);
  CoeffVector acc(d);
  for (int j = 0; j < r; ++j) {
    acc = -m.col(j * r + gen);
    for (int k : neighbors_[gen]) acc.noalias() += coupling_[gen * r + k] * m.col(j * r + k);
    m.col(j * r + gen) = acc;
  }
  guard_magnitude(key);
}

bool CoxeterSystem::negative_root(const ElementKey& key, int column) const {
  const int r = rank();
  const int d = ring_->degree();
  Eigen::Map<const CoeffMatrix> m(key.data(), d, r * r);
  long double best = 0.0L;
  long double best_err = 0.0L;
  for (int c = 0; c < r; ++c) {
    const auto [v, err] = ring_->evaluate_with_error(m.col(column * r + c));
    if (std::fabs(v) > std::fabs(best)) {
      best = v;
      best_err = err;
    }
  }
  if (std::fabs(best) <= best_err)
    throw Error(ErrorKind::Overflow, "root sign undecidable in long double");
  return best < 0;
}

void CoxeterSystem::multiply_key(ElementKey& key, int gen, Side side) const {
  if (gen < 0 || gen >= rank()) throw Error(ErrorKind::InvalidInput, "generator index out of range");
  switch (backend_) {
    case Backend::Bitvector: key[0] ^= std::int64_t{1} << gen; return;
    case Backend::Permutation:
      if (side == Side::Right) {
        std::swap(key[gen], key[gen + 1]);
      } else {
        for (auto& v : key) {
          if (v == gen) v = gen + 1;
          else if (v == gen + 1) v = gen;
        }
      }
      return;
    case Backend::Geometric:
      if (side == Side::Right) right_multiply_geometric(key, gen);
      else left_multiply_geometric(key, gen);
      return;
  }
}

bool CoxeterSystem::right_descent_key(const ElementKey& key, int gen) const {
  switch (backend_) {
    case Backend::Bitvector: return (key[0] >> gen) & 1;
    case Backend::Permutation: return key[gen] > key[gen + 1];
    case Backend::Geometric: return negative_root(key, gen);
  }
  return false;
}

int CoxeterSystem::smallest_right_descent(const ElementKey& key) const {
  for (int i = 0; i < rank(); ++i)
    if (right_descent_key(key, i)) return i;
  return -1;
}

Word CoxeterSystem::canonical_word(ElementKey key, int length) const {
  Word w(static_cast<std::size_t>(length));
  for (int pos = length - 1; pos >= 0; --pos) {
    const int i = smallest_right_descent(key);
    if (i < 0) throw Error(ErrorKind::Structural, "element length inconsistent with descents");
    w[pos] = i;
    multiply_key(key, i, Side::Right);
  }
  if (key != identity_key()) throw Error(ErrorKind::Structural, "element length inconsistent with key");
  return w;
}

GroupElement CoxeterSystem::make_element(ElementKey key, int length) const {
  Word w = canonical_word(key, length);
  return GroupElement{std::move(key), length, std::move(w)};
}

std::pair<ElementKey, int> CoxeterSystem::evaluate_word(const Word& word) const {
  ElementKey key = identity_key();
  int len = 0;
  for (int g : word) {
    if (g < 0 || g >= rank()) throw Error(ErrorKind::InvalidInput, "generator index out of range");
    len += right_descent_key(key, g) ? -1 : 1;
    multiply_key(key, g, Side::Right);
  }
  return {std::move(key), len};
}

// ---------------------------------------------------------------- free functions

GroupElement apply_generator(const CoxeterSystem& system, const GroupElement& w, int gen, Side side) {
  const bool down = descent_test(system, w, gen, side);
  ElementKey key = w.key;
  system.multiply_key(key, gen, side);
  return system.make_element(std::move(key), w.length + (down ? -1 : 1));
}

bool descent_test(const CoxeterSystem& system, const GroupElement& w, int gen, Side side) {
  if (gen < 0 || gen >= system.rank()) throw Error(ErrorKind::InvalidInput, "generator index out of range");
  if (side == Side::Right) return system.right_descent_key(w.key, gen);
  switch (system.backend()) {
    case Backend::Bitvector: return (w.key[0] >> gen) & 1;
    case Backend::Permutation: {
      const auto a = std::find(w.key.begin(), w.key.end(), gen);
      const auto b = std::find(w.key.begin(), w.key.end(), gen + 1);
      return a > b;
    }
    case Backend::Geometric: {
      Word rev(w.word.rbegin(), w.word.rend());
      return system.right_descent_key(system.evaluate_word(rev).first, gen);
    }
  }
  return false;
}

GroupElement reduce_word(const CoxeterSystem& system, const Word& word) {
  auto [key, len] = system.evaluate_word(word);
  return system.make_element(std::move(key), len);
}

GroupElement inverse(const CoxeterSystem& system, const GroupElement& w) {
  return reduce_word(system, Word(w.word.rbegin(), w.word.rend()));
}

GroupElement longest_element(const CoxeterSystem& system, int length_cap) {
  const Classification cls = classify(system);
  if (cls.kind != GroupClass::Finite && !cls.ambiguous)
    throw Error(ErrorKind::CapExceeded, "infinite group has no longest element");
  ElementKey key = system.identity_key();
  int len = 0;
  for (;;) {
    int ascent = -1;
    for (int i = 0; i < system.rank() && ascent < 0; ++i)
      if (!system.right_descent_key(key, i)) ascent = i;
    if (ascent < 0) break;
    system.multiply_key(key, ascent, Side::Right);
    if (++len > length_cap)
      throw Error(ErrorKind::CapExceeded, "no longest element within length cap (infinite group?)");
  }
  return system.make_element(std::move(key), len);
}

Classification classify(const CoxeterMatrix& matrix, double tol) {
  const int r = matrix.rank();
  Eigen::MatrixXd s(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const int m = matrix(i, j);
      s(i, j) = i == j ? 1.0 : (m == 0 ? -1.0 : -std::cos(std::numbers::pi / m));
    }
  Classification c;
  bool minors_positive = true;
  for (int k = 1; k <= r; ++k) {
    const double det = s.topLeftCorner(k, k).determinant();
    c.leading_minors.push_back(det);
    if (det <= tol) minors_positive = false;
    if (std::fabs(det) <= tol) c.ambiguous = true;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = eig.eigenvalues().minCoeff();
  if (minors_positive) c.kind = GroupClass::Finite;
  else if (c.min_eigenvalue >= -tol) c.kind = GroupClass::Affine;
  else c.kind = GroupClass::Indefinite;
  if (std::fabs(c.min_eigenvalue) <= tol) c.ambiguous = true;
  return c;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

int parse_m(const std::string& tok) {
  if (tok == "inf" || tok == "oo" || tok == "infinity" || tok == "0") return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw Error(ErrorKind::Parse, "bad Coxeter entry '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "bad Coxeter entry '" + tok + "'");
  }
}

CoxeterMatrix parse_matrix_body(const std::string& body) {
  std::vector<std::vector<int>> rows;
  std::vector<int> cur;
  std::string tok;
  int depth = 0;
  bool nested = false;
  auto flush_tok = [&] {
    if (!tok.empty()) {
      cur.push_back(parse_m(tok));
      tok.clear();
    }
  };
  auto flush_row = [&] {
    flush_tok();
    if (!cur.empty()) rows.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : body) {
    if (ch == '[') {
      flush_tok();
      if (++depth >= 2) nested = true;
    } else if (ch == ']') {
      if (nested && depth == 2) flush_row();
      else flush_tok();
      --depth;
    } else if (ch == ';') {
      flush_row();
    } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush_tok();
    } else {
      tok.push_back(ch);
    }
  }
  flush_row();
  if (depth != 0) throw Error(ErrorKind::Parse, "unbalanced brackets in matrix spec");
  if (rows.size() == 1) {
    // flat list: must be a perfect square
    const auto flat = rows[0];
    const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (r * r != flat.size()) throw Error(ErrorKind::Parse, "flat matrix spec is not square");
    rows.assign(r, {});
    for (std::size_t i = 0; i < r; ++i) rows[i].assign(flat.begin() + i * r, flat.begin() + (i + 1) * r);
  }
  return CoxeterMatrix(std::move(rows));
}

}  // namespace

CoxeterSystem parse_group_spec(std::string_view text) {
  const std::string s = trim(text);
  std::smatch m;
  static const std::regex re_a(R"(^A\s*(\d+)$)");
  static const std::regex re_c2(R"(^C2\s*\^\s*(\d+)$)");
  static const std::regex re_tri(R"(^triangle[\s:]+(\w+)[\s,]+(\w+)[\s,]+(\w+)$)");
  static const std::regex re_complete(R"(^complete(\d+)\s*:\s*(\w+)$)");
  try {
    if (std::regex_match(s, m, re_a))
      return CoxeterSystem(CoxeterMatrix::type_a(std::stoi(m[1])), Backend::Permutation, s);
    if (s == "E8") return CoxeterSystem(CoxeterMatrix::type_e8(), Backend::Geometric, s);
    if (std::regex_match(s, m, re_c2)) {
      const int n = std::stoi(m[1]);
      return CoxeterSystem(CoxeterMatrix::boolean(n), n <= 62 ? Backend::Bitvector : Backend::Geometric, s);
    }
    if (std::regex_match(s, m, re_tri))
      return CoxeterSystem(CoxeterMatrix::triangle(parse_m(m[1]), parse_m(m[2]), parse_m(m[3])), std::nullopt, s);
    if (std::regex_match(s, m, re_complete))
      return CoxeterSystem(CoxeterMatrix::complete(std::stoi(m[1]), parse_m(m[2])), std::nullopt, s);
    if (s.rfind("matrix", 0) == 0) return CoxeterSystem(parse_matrix_body(s.substr(6)), std::nullopt, s);
  } catch (const std::out_of_range&) {
    throw Error(ErrorKind::Parse, "number out of range in group spec '" + s + "'");
  }
  throw Error(ErrorKind::Parse, "unrecognized group spec '" + s + "'");
}

ParsedElement parse_element(const CoxeterSystem& system, std::string_view text) {
  const std::string t = trim(text);
  if (t == "longest" || t == "w0") {
    auto w = longest_element(system);
    return {w, static_cast<std::size_t>(w.length), true};
  }
  const Word word = parse_word(t, system.rank());
  ParsedElement out{reduce_word(system, word), word.size(), true};
  out.input_reduced = static_cast<std::size_t>(out.element.length) == word.size();
  return out;
}

nlohmann::json to_json(const CoxeterSystem& system) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : system.matrix().entries()) {
    nlohmann::json r = nlohmann::json::array();
    for (int v : row) {
      if (v == 0) r.push_back("inf");
      else r.push_back(v);
    }
    rows.push_back(r);
  }
  nlohmann::json gens = nlohmann::json::array();
  for (int i = 0; i < system.rank(); ++i) gens.push_back(system.generator_name(i));
  return {{"spec", system.spec()},
          {"rank", system.rank()},
          {"backend", std::string(to_string(system.backend()))},
          {"generators", gens},
          {"matrix", rows}};
}

nlohmann::json to_json(const GroupElement& w) {
  return {{"word", format_word(w.word)}, {"length", w.length}};
}

nlohmann::json to_json(const Classification& c) {
  return {{"class", std::string(to_string(c.kind))},
          {"leading_minors", c.leading_minors},
          {"min_eigenvalue", c.min_eigenvalue},
          {"ambiguous", c.ambiguous}};
}

}  // namespace coxcss
