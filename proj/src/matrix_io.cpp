#include "coxcss/matrix_io.hpp"

#include "coxcss/error.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace coxcss {

namespace {

std::vector<long> ints_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<long> out;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw Error(ErrorKind::Io, "alist: bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Io, "alist: bad integer '" + tok + "'");
    }
  }
  return out;
}

void write_list(std::ostream& os, const std::vector<std::size_t>& items, std::size_t pad) {
  for (std::size_t i = 0; i < pad; ++i) {
    if (i) os << ' ';
    os << (i < items.size() ? items[i] + 1 : 0);
  }
  os << '\n';
}

}  // namespace

void write_alist(std::ostream& os, const BitMatrix& m) {
  const BitMatrix t = m.transpose();
  std::size_t max_col = 0, max_row = 0;
  for (std::size_t c = 0; c < t.rows(); ++c) max_col = std::max(max_col, t.row_weight(c));
  for (std::size_t r = 0; r < m.rows(); ++r) max_row = std::max(max_row, m.row_weight(r));
  os << m.cols() << ' ' << m.rows() << '\n' << max_col << ' ' << max_row << '\n';
  for (std::size_t c = 0; c < t.rows(); ++c) os << (c ? " " : "") << t.row_weight(c);
  os << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) os << (r ? " " : "") << m.row_weight(r);
  os << '\n';
  for (std::size_t c = 0; c < t.rows(); ++c) write_list(os, t.row_support(c), max_col);
  for (std::size_t r = 0; r < m.rows(); ++r) write_list(os, m.row_support(r), max_row);
}

BitMatrix read_alist(std::istream& is) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  auto at = [&](std::size_t i) -> const std::string& {
    static const std::string empty;
    return i < lines.size() ? lines[i] : empty;
  };
  const auto dims = ints_of(at(0));
  const auto maxdeg = ints_of(at(1));
  if (dims.size() != 2 || maxdeg.size() != 2 || dims[0] < 0 || dims[1] < 0)
    throw Error(ErrorKind::Io, "alist: malformed header");
  const auto ncols = static_cast<std::size_t>(dims[0]);
  const auto nrows = static_cast<std::size_t>(dims[1]);
  const auto col_deg = ints_of(at(2));
  const auto row_deg = ints_of(at(3));
  if (col_deg.size() != ncols || row_deg.size() != nrows) throw Error(ErrorKind::Io, "alist: degree list length mismatch");
  BitMatrix m(nrows, ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    std::size_t count = 0;
    for (long v : ints_of(at(4 + c))) {
      if (v == 0) continue;
      if (v < 0 || static_cast<std::size_t>(v) > nrows) throw Error(ErrorKind::Io, "alist: row index out of range");
      m.set(static_cast<std::size_t>(v - 1), c);
      ++count;
    }
    if (count != static_cast<std::size_t>(col_deg[c])) throw Error(ErrorKind::Io, "alist: column degree mismatch");
  }
  for (std::size_t r = 0; r < nrows; ++r) {
    std::vector<std::size_t> sup;
    for (long v : ints_of(at(4 + ncols + r))) {
      if (v == 0) continue;
      if (v < 0 || static_cast<std::size_t>(v) > ncols) throw Error(ErrorKind::Io, "alist: column index out of range");
      sup.push_back(static_cast<std::size_t>(v - 1));
    }
    std::sort(sup.begin(), sup.end());
    if (sup != m.row_support(r) || sup.size() != static_cast<std::size_t>(row_deg[r]))
      throw Error(ErrorKind::Io, "alist: row and column lists disagree");
  }
  return m;
}

std::string to_alist(const BitMatrix& m) {
  std::ostringstream os;
  write_alist(os, m);
  return os.str();
}

BitMatrix from_alist(const std::string& text) {
  std::istringstream is(text);
  return read_alist(is);
}

void write_matrix_market(std::ostream& os, const BitMatrix& m) {
  os << "%%MatrixMarket matrix coordinate pattern general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.count_ones() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : m.row_support(r)) os << r + 1 << ' ' << c + 1 << '\n';
}

BitMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw Error(ErrorKind::Io, "MatrixMarket: missing banner");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (object != "matrix" || format != "coordinate") throw Error(ErrorKind::Io, "MatrixMarket: need coordinate matrix");
  if (field != "pattern" && field != "integer") throw Error(ErrorKind::Io, "MatrixMarket: unsupported field " + field);
  if (symmetry != "general") throw Error(ErrorKind::Io, "MatrixMarket: unsupported symmetry " + symmetry);
  do {
    if (!std::getline(is, line)) throw Error(ErrorKind::Io, "MatrixMarket: missing size line");
  } while (line.empty() || line[0] == '%');
  const auto size = ints_of(line);
  if (size.size() != 3 || size[0] < 0 || size[1] < 0 || size[2] < 0) throw Error(ErrorKind::Io, "MatrixMarket: bad size line");
  BitMatrix m(static_cast<std::size_t>(size[0]), static_cast<std::size_t>(size[1]));
  long entries = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '%') continue;
    const auto v = ints_of(line);
    if (v.size() < 2 || v[0] < 1 || v[1] < 1 || v[0] > size[0] || v[1] > size[1])
      throw Error(ErrorKind::Io, "MatrixMarket: bad entry '" + line + "'");
    const bool bit = field == "pattern" ? true : (v.size() > 2 && (v[2] % 2) != 0);
    if (bit) m.flip(static_cast<std::size_t>(v[0] - 1), static_cast<std::size_t>(v[1] - 1));
    ++entries;
  }
  if (entries != size[2]) throw Error(ErrorKind::Io, "MatrixMarket: entry count mismatch");
  return m;
}

}  // namespace coxcss
