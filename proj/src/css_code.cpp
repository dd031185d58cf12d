#include "coxcss/css_code.hpp"

#include "coxcss/chain.hpp"
#include "coxcss/error.hpp"
#include "coxcss/matrix_io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace coxcss {

std::string_view to_string(CheckType t) { return t == CheckType::X ? "X" : "Z"; }

bool is_orthogonal(const CssCode& code) { return (code.hx * code.hz.transpose()).is_zero(); }

CssCode make_css_code(BitMatrix hx, BitMatrix hz, nlohmann::json provenance) {
  if (hx.cols() != hz.cols())
    throw Error(ErrorKind::Structural, "H_X and H_Z have different column counts");
  CssCode c;
  c.qubit_labels = hx.col_labels.empty() ? hz.col_labels : hx.col_labels;
  hx.col_labels.clear();
  hz.col_labels.clear();
  c.hx = std::move(hx);
  c.hz = std::move(hz);
  c.provenance = std::move(provenance);
  if (!is_orthogonal(c)) throw Error(ErrorKind::Structural, "H_X H_Z^T != 0");
  return c;
}

CssCode css_from_triple(const LayeredSubposet& subposet, int p, SideConvention convention) {
  BitMatrix lower = boundary_matrix(subposet, p);             // l_{p-1} x l_p
  BitMatrix upper = boundary_matrix(subposet, p + 1).transpose();  // l_{p+1} x l_p
  nlohmann::json prov = nlohmann::json::array();
  prov.push_back({{"op", "triple"},
                  {"group", subposet.interval->system->spec()},
                  {"bottom", format_word(subposet.interval->bottom.word)},
                  {"top", format_word(subposet.interval->top.word)},
                  {"p", p},
                  {"convention", convention == SideConvention::LowerX ? "lower-x" : "lower-z"}});
  if (convention == SideConvention::LowerX) return make_css_code(std::move(lower), std::move(upper), prov);
  return make_css_code(std::move(upper), std::move(lower), prov);
}

CssCode css_from_triple(const LayeredSubposet& subposet3, SideConvention convention) {
  if (subposet3.num_layers() != 3) throw Error(ErrorKind::InvalidInput, "triple needs exactly three layers");
  return css_from_triple(subposet3, subposet3.center(), convention);
}

std::size_t logical_count(const CssCode& code) {
  const std::size_t rx = rank_gf2(code.hx);
  const std::size_t rz = rank_gf2(code.hz);
  if (rx + rz > code.n()) throw Error(ErrorKind::Structural, "rank H_X + rank H_Z exceeds n");
  return code.n() - rx - rz;
}

WeightStats weight_stats(const CssCode& code) {
  WeightStats s;
  auto fill = [](const BitMatrix& h, std::size_t& mx, double& mean, std::size_t& qdeg,
                 std::map<std::size_t, std::size_t>& hist) {
    std::size_t total = 0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      const std::size_t w = h.row_weight(r);
      mx = std::max(mx, w);
      total += w;
      ++hist[w];
    }
    mean = h.rows() ? static_cast<double>(total) / static_cast<double>(h.rows()) : 0.0;
    const BitMatrix t = h.transpose();
    for (std::size_t c = 0; c < t.rows(); ++c) qdeg = std::max(qdeg, t.row_weight(c));
  };
  fill(code.hx, s.max_x, s.mean_x, s.max_qubit_degree_x, s.histogram_x);
  fill(code.hz, s.max_z, s.mean_z, s.max_qubit_degree_z, s.histogram_z);
  return s;
}

namespace {

BitMatrix logical_side(const BitMatrix& h_same, const BitMatrix& h_other, std::size_t k) {
  // logicals of this type commute with the other type's checks
  const BitMatrix ker = kernel_basis(h_other);
  RowReducer stab(h_same);
  BitMatrix out(0, h_same.cols());
  for (std::size_t r = 0; r < ker.rows() && out.rows() < k; ++r) {
    const BitVector v = ker.row(r);
    if (stab.add(v)) out.append_row(v);
  }
  if (out.rows() != k) throw Error(ErrorKind::Structural, "logical basis size mismatch");
  return out;
}

}  // namespace

LogicalBasis logical_operators(const CssCode& code) {
  const std::size_t k = logical_count(code);
  return {logical_side(code.hx, code.hz, k), logical_side(code.hz, code.hx, k)};
}

CssCode prune_decoupled_qubits(const CssCode& code) {
  const BitMatrix tx = code.hx.transpose();
  const BitMatrix tz = code.hz.transpose();
  std::vector<std::size_t> keep, removed;
  for (std::size_t q = 0; q < code.n(); ++q) {
    if (tx.row_weight(q) == 0 || tz.row_weight(q) == 0) removed.push_back(q);
    else keep.push_back(q);
  }
  CssCode out;
  out.hx = code.hx.select_cols(keep);
  out.hz = code.hz.select_cols(keep);
  if (!code.qubit_labels.empty())
    for (std::size_t q : keep) out.qubit_labels.push_back(code.qubit_labels[q]);
  std::size_t dropped_x = 0, dropped_z = 0;
  auto drop_zero_rows = [](BitMatrix& h, std::size_t& dropped) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < h.rows(); ++r)
      if (h.row_weight(r) > 0) rows.push_back(r);
    dropped = h.rows() - rows.size();
    if (dropped) h = h.select_rows(rows);
  };
  drop_zero_rows(out.hx, dropped_x);
  drop_zero_rows(out.hz, dropped_z);
  out.provenance = code.provenance;
  out.provenance.push_back({{"op", "prune"},
                            {"removed_qubits", removed},
                            {"dropped_x_rows", dropped_x},
                            {"dropped_z_rows", dropped_z}});
  return out;
}

bool validate_subcode_selection(const LayeredSubposet& subposet, int p, const std::vector<std::size_t>& lower_rows,
                                const std::vector<std::size_t>& upper_rows, const std::vector<std::size_t>& qubits) {
  const BruhatInterval& iv = *subposet.interval;
  if (p - 1 < subposet.lo || p + 1 > subposet.hi)
    throw Error(ErrorKind::InvalidInput, "subcode selection needs layers p-1..p+1");
  std::vector<bool> in_q(iv.layer_size(p), qubits.empty());
  for (std::size_t q : qubits) {
    if (q >= in_q.size()) throw Error(ErrorKind::InvalidInput, "qubit position out of range");
    in_q[q] = true;
  }
  for (std::size_t xr : lower_rows) {
    const ElementId x = iv.id(p - 1, xr);
    std::set<ElementId> up_x(iv.up[x].begin(), iv.up[x].end());
    for (std::size_t zr : upper_rows) {
      const ElementId z = iv.id(p + 1, zr);
      std::size_t inside = 0, total = 0;
      for (ElementId m : iv.down[z])
        if (up_x.count(m)) {
          ++total;
          inside += in_q[iv.position(m)];
        }
      if (inside != 0 && inside != total) return false;
    }
  }
  return true;
}

CssCode subcode(const LayeredSubposet& subposet, int p, const std::vector<std::size_t>& lower_rows,
                const std::vector<std::size_t>& upper_rows, const std::vector<std::size_t>& qubits,
                SideConvention convention) {
  CssCode full = css_from_triple(subposet, p, convention);
  BitMatrix& lower = convention == SideConvention::LowerX ? full.hx : full.hz;
  BitMatrix& upper = convention == SideConvention::LowerX ? full.hz : full.hx;
  lower = lower.select_rows(lower_rows).select_cols(qubits);
  upper = upper.select_rows(upper_rows).select_cols(qubits);
  std::vector<std::string> labels;
  for (std::size_t q : qubits) labels.push_back(full.qubit_labels.at(q));
  full.qubit_labels = std::move(labels);
  full.provenance.push_back({{"op", "subcode"}, {"lower_rows", lower_rows}, {"upper_rows", upper_rows}, {"qubits", qubits}});
  if (!is_orthogonal(full)) throw Error(ErrorKind::Structural, "subcode selection breaks H_X H_Z^T = 0");
  return full;
}

nlohmann::json code_summary(const CssCode& code) {
  const WeightStats w = weight_stats(code);
  auto hist = [](const std::map<std::size_t, std::size_t>& h) {
    nlohmann::json j = nlohmann::json::object();
    for (auto [k, v] : h) j[std::to_string(k)] = v;
    return j;
  };
  return {{"n", code.n()},
          {"k", logical_count(code)},
          {"mx", code.hx.rows()},
          {"mz", code.hz.rows()},
          {"weights",
           {{"max_x", w.max_x},
            {"max_z", w.max_z},
            {"mean_x", w.mean_x},
            {"mean_z", w.mean_z},
            {"max_qubit_degree_x", w.max_qubit_degree_x},
            {"max_qubit_degree_z", w.max_qubit_degree_z},
            {"histogram_x", hist(w.histogram_x)},
            {"histogram_z", hist(w.histogram_z)}}}};
}

void write_bundle(std::ostream& os, const CssCode& code, const nlohmann::json& extra) {
  nlohmann::json header = extra;
  header["format"] = "coxcss-bundle";
  header["version"] = 1;
  header["n"] = code.n();
  header["k"] = logical_count(code);
  header["qubit_labels"] = code.qubit_labels;
  header["x_labels"] = code.hx.row_labels;
  header["z_labels"] = code.hz.row_labels;
  header["provenance"] = code.provenance;
  os << header.dump() << '\n';
  os << "# H_X\n";
  write_alist(os, code.hx);
  os << "# H_Z\n";
  write_alist(os, code.hz);
}

CssCode read_bundle(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Io, "bundle: empty input");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("bundle: bad header: ") + e.what());
  }
  if (header.value("format", "") != "coxcss-bundle") throw Error(ErrorKind::Io, "bundle: wrong format tag");
  std::string hx_text, hz_text;
  std::string* cur = nullptr;
  while (std::getline(is, line)) {
    if (line == "# H_X") cur = &hx_text;
    else if (line == "# H_Z") cur = &hz_text;
    else if (cur) *cur += line + "\n";
  }
  BitMatrix hx = from_alist(hx_text);
  BitMatrix hz = from_alist(hz_text);
  hx.row_labels = header.value("x_labels", std::vector<std::string>{});
  hz.row_labels = header.value("z_labels", std::vector<std::string>{});
  CssCode code = make_css_code(std::move(hx), std::move(hz), header.value("provenance", nlohmann::json::array()));
  code.qubit_labels = header.value("qubit_labels", std::vector<std::string>{});
  if (header.contains("n") && header["n"].get<std::size_t>() != code.n())
    throw Error(ErrorKind::Io, "bundle: header n disagrees with matrices");
  return code;
}

std::string to_bundle(const CssCode& code, const nlohmann::json& extra) {
  std::ostringstream os;
  write_bundle(os, code, extra);
  return os.str();
}

CssCode from_bundle(const std::string& text) {
  std::istringstream is(text);
  return read_bundle(is);
}

std::string code_hash(const CssCode& code) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  feed(to_alist(code.hx));
  feed(to_alist(code.hz));
  for (const auto& l : code.qubit_labels) feed(l + "\n");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coxcss
