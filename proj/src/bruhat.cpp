#include "coxcss/bruhat.hpp"

#include "coxcss/error.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_map>

namespace coxcss {

std::size_t BruhatInterval::num_covers() const {
  std::size_t n = 0;
  for (const auto& d : down) n += d.size();
  return n;
}

std::size_t BruhatInterval::layer_size(int rank) const {
  if (rank < min_rank() || rank > max_rank()) return 0;
  const auto r = static_cast<std::size_t>(rank - min_rank());
  return layer_offsets[r + 1] - layer_offsets[r];
}

std::vector<std::size_t> BruhatInterval::layer_sizes() const {
  std::vector<std::size_t> out;
  for (int r = min_rank(); r <= max_rank(); ++r) out.push_back(layer_size(r));
  return out;
}

std::span<const GroupElement> BruhatInterval::layer(int rank) const {
  if (rank < min_rank() || rank > max_rank()) return {};
  const auto r = static_cast<std::size_t>(rank - min_rank());
  return std::span<const GroupElement>(elements).subspan(layer_offsets[r], layer_offsets[r + 1] - layer_offsets[r]);
}

ElementId BruhatInterval::id(int rank, std::size_t position) const {
  if (position >= layer_size(rank)) throw Error(ErrorKind::InvalidInput, "layer position out of range");
  return static_cast<ElementId>(layer_offsets[rank - min_rank()] + position);
}

// ---------------------------------------------------------------- order

namespace {

bool leq_keys(const CoxeterSystem& sys, ElementKey u, int lu, ElementKey w, int lw) {
  for (;;) {
    if (lu > lw) return false;
    if (lw == 0) return lu == 0;
    if (lu == 0) return true;
    const int s = sys.smallest_right_descent(w);
    if (sys.right_descent_key(u, s)) {
      sys.multiply_key(u, s, Side::Right);
      --lu;
    }
    sys.multiply_key(w, s, Side::Right);
    --lw;
  }
}

}  // namespace

bool bruhat_leq(const CoxeterSystem& system, const GroupElement& u, const GroupElement& w) {
  return leq_keys(system, u.key, u.length, w.key, w.length);
}

std::vector<GroupElement> lower_covers(const CoxeterSystem& system, const GroupElement& w) {
  const Word& word = w.word;
  const std::size_t len = word.size();
  std::vector<ElementKey> prefix(len + 1);
  prefix[0] = system.identity_key();
  for (std::size_t i = 0; i < len; ++i) {
    prefix[i + 1] = prefix[i];
    system.multiply_key(prefix[i + 1], word[i], Side::Right);
  }
  std::vector<GroupElement> out;
  std::unordered_map<ElementKey, bool, KeyHash> seen;
  for (std::size_t skip = 0; skip < len; ++skip) {
    ElementKey key = prefix[skip];
    int length = static_cast<int>(skip);
    for (std::size_t j = skip + 1; j < len; ++j) {
      length += system.right_descent_key(key, word[j]) ? -1 : 1;
      system.multiply_key(key, word[j], Side::Right);
    }
    if (length != w.length - 1) continue;
    if (seen.emplace(key, true).second) out.push_back(system.make_element(std::move(key), length));
  }
  std::sort(out.begin(), out.end(), [](const GroupElement& a, const GroupElement& b) { return a.key < b.key; });
  return out;
}

namespace {

// Element table shared by the coatom recursion and the interval builder.
class CoatomEngine {
 public:
  CoatomEngine(const CoxeterSystem& sys, std::size_t cap) : sys_(sys), cap_(cap) {}

  ElementId intern(const ElementKey& key, int length) {
    auto [it, inserted] = index_.try_emplace(key, static_cast<ElementId>(keys_.size()));
    if (inserted) {
      if (keys_.size() >= cap_)
        throw Error(ErrorKind::CapExceeded, "Bruhat interval exceeds size cap of " + std::to_string(cap_) + " elements");
      keys_.push_back(key);
      lengths_.push_back(length);
      coatoms_.emplace_back();
      done_.push_back(false);
    }
    return it->second;
  }

  const std::vector<ElementId>& coatoms(ElementId id) {
    // explicit stack: follow x -> x*s until a memoized element, then unwind
    std::vector<std::pair<ElementId, int>> stack;
    ElementId cur = id;
    while (!done_[cur]) {
      if (lengths_[cur] == 0) {
        done_[cur] = true;
        break;
      }
      const int s = sys_.smallest_right_descent(keys_[cur]);
      ElementKey below = keys_[cur];
      sys_.multiply_key(below, s, Side::Right);
      const ElementId next = intern(below, lengths_[cur] - 1);
      stack.emplace_back(cur, s);
      cur = next;
    }
    while (!stack.empty()) {
      const auto [x, s] = stack.back();
      stack.pop_back();
      ElementKey ws = keys_[x];
      sys_.multiply_key(ws, s, Side::Right);
      const ElementId wsid = index_.at(ws);
      std::vector<ElementId> out{wsid};
      // copy: interning may grow coatoms_
      const std::vector<ElementId> sub = coatoms_[wsid];
      for (ElementId z : sub) {
        if (sys_.right_descent_key(keys_[z], s)) continue;
        ElementKey zs = keys_[z];
        sys_.multiply_key(zs, s, Side::Right);
        out.push_back(intern(zs, lengths_[z] + 1));
      }
      coatoms_[x] = std::move(out);
      done_[x] = true;
    }
    return coatoms_[id];
  }

  const ElementKey& key(ElementId id) const { return keys_[id]; }
  int length(ElementId id) const { return lengths_[id]; }

 private:
  const CoxeterSystem& sys_;
  std::size_t cap_;
  std::unordered_map<ElementKey, ElementId, KeyHash> index_;
  std::vector<ElementKey> keys_;
  std::vector<int> lengths_;
  std::vector<std::vector<ElementId>> coatoms_;
  std::vector<bool> done_;
};

}  // namespace

std::vector<GroupElement> coatoms(const CoxeterSystem& system, const GroupElement& w) {
  CoatomEngine engine(system, std::size_t(-1));
  const ElementId id = engine.intern(w.key, w.length);
  std::vector<GroupElement> out;
  for (ElementId c : engine.coatoms(id)) out.push_back(system.make_element(engine.key(c), engine.length(c)));
  std::sort(out.begin(), out.end(), [](const GroupElement& a, const GroupElement& b) { return a.key < b.key; });
  return out;
}

BruhatInterval build_interval(std::shared_ptr<const CoxeterSystem> system, const GroupElement& bottom,
                              const GroupElement& top, const IntervalOptions& options) {
  const CoxeterSystem& sys = *system;
  if (!bruhat_leq(sys, bottom, top))
    throw Error(ErrorKind::InvalidInput, "bottom " + format_word(bottom.word) + " is not below top " +
                                             format_word(top.word) + " in Bruhat order");
  // The recursion may touch elements below the bottom rank, so its table is
  // allowed to grow beyond the interval cap by a constant factor.
  CoatomEngine engine(sys, options.size_cap * 4);
  const int lo = bottom.length;
  const int hi = top.length;
  const auto nranks = static_cast<std::size_t>(hi - lo + 1);

  // Downward sweep from top to rank lo, recording covers.
  std::vector<std::vector<ElementId>> layers(nranks);
  std::unordered_map<ElementId, std::vector<ElementId>> down_raw;
  std::vector<bool> in_sweep;
  auto mark = [&](ElementId id) {
    if (id >= in_sweep.size()) in_sweep.resize(static_cast<std::size_t>(id) + 1, false);
    if (in_sweep[id]) return false;
    in_sweep[id] = true;
    return true;
  };
  const ElementId top_id = engine.intern(top.key, top.length);
  mark(top_id);
  layers[nranks - 1].push_back(top_id);
  std::size_t total = 1;
  for (int r = hi; r > lo; --r) {
    auto& next = layers[static_cast<std::size_t>(r - 1 - lo)];
    for (ElementId x : layers[static_cast<std::size_t>(r - lo)]) {
      const std::vector<ElementId> cs = engine.coatoms(x);
      auto& d = down_raw[x];
      d = cs;
      for (ElementId c : cs) {
        if (mark(c)) {
          next.push_back(c);
          if (++total > options.size_cap)
            throw Error(ErrorKind::CapExceeded,
                        "Bruhat interval exceeds size cap of " + std::to_string(options.size_cap) + " elements");
        }
      }
    }
  }

  // Keep elements reachable upward from bottom.
  std::unordered_map<ElementId, std::vector<ElementId>> up_raw;
  for (const auto& [x, ds] : down_raw)
    for (ElementId c : ds) up_raw[c].push_back(x);
  const ElementId bottom_id = engine.intern(bottom.key, bottom.length);
  std::unordered_map<ElementId, bool> keep;
  keep[bottom_id] = true;
  std::vector<ElementId> frontier{bottom_id};
  while (!frontier.empty()) {
    std::vector<ElementId> nxt;
    for (ElementId x : frontier) {
      auto it = up_raw.find(x);
      if (it == up_raw.end()) continue;
      for (ElementId u : it->second)
        if (keep.emplace(u, true).second) nxt.push_back(u);
    }
    frontier = std::move(nxt);
  }

  BruhatInterval out;
  out.system = system;
  out.bottom = bottom;
  out.top = top;
  out.layer_offsets.push_back(0);
  std::unordered_map<ElementId, ElementId> flat;
  std::vector<ElementId> order;
  for (std::size_t r = 0; r < nranks; ++r) {
    std::vector<ElementId> layer;
    for (ElementId x : layers[r])
      if (keep.count(x)) layer.push_back(x);
    std::sort(layer.begin(), layer.end(), [&](ElementId a, ElementId b) { return engine.key(a) < engine.key(b); });
    for (ElementId x : layer) {
      flat[x] = static_cast<ElementId>(order.size());
      order.push_back(x);
    }
    out.layer_offsets.push_back(order.size());
  }
  out.elements.reserve(order.size());
  for (ElementId x : order) out.elements.push_back(sys.make_element(engine.key(x), engine.length(x)));
  out.down.assign(order.size(), {});
  out.up.assign(order.size(), {});
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = down_raw.find(order[i]);
    if (it == down_raw.end()) continue;
    for (ElementId c : it->second) {
      auto f = flat.find(c);
      if (f == flat.end()) continue;
      out.down[i].push_back(f->second);
      out.up[f->second].push_back(static_cast<ElementId>(i));
    }
  }
  for (auto& d : out.down) std::sort(d.begin(), d.end());
  for (auto& u : out.up) std::sort(u.begin(), u.end());
  return out;
}

// ---------------------------------------------------------------- subposets

LayeredSubposet rank_range(std::shared_ptr<const BruhatInterval> interval, int lo, int hi) {
  if (lo > hi) throw Error(ErrorKind::InvalidInput, "empty rank range");
  if (lo < interval->min_rank() || hi > interval->max_rank())
    throw Error(ErrorKind::InvalidInput, "rank range [" + std::to_string(lo) + "," + std::to_string(hi) +
                                             "] outside interval ranks [" + std::to_string(interval->min_rank()) +
                                             "," + std::to_string(interval->max_rank()) + "]");
  return LayeredSubposet{std::move(interval), lo, hi};
}

LayeredSubposet layered_subposet(std::shared_ptr<const BruhatInterval> interval, int p, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "half-width must be >= 0");
  return rank_range(std::move(interval), p - k, p + k);
}

LayeredSubposet open_interval(std::shared_ptr<const BruhatInterval> interval) {
  const int lo = interval->min_rank() + 1;
  const int hi = interval->max_rank() - 1;
  return rank_range(std::move(interval), lo, hi);
}

// ---------------------------------------------------------------- export

nlohmann::json to_json(const BruhatInterval& interval) {
  nlohmann::json layers = nlohmann::json::array();
  for (int r = interval.min_rank(); r <= interval.max_rank(); ++r) {
    nlohmann::json l = nlohmann::json::array();
    for (const auto& e : interval.layer(r)) l.push_back(format_word(e.word));
    layers.push_back(l);
  }
  nlohmann::json covers = nlohmann::json::array();
  for (std::size_t i = 0; i < interval.size(); ++i)
    for (ElementId d : interval.down[i]) covers.push_back({d, i});
  return {{"group", to_json(*interval.system)},
          {"bottom", to_json(interval.bottom)},
          {"top", to_json(interval.top)},
          {"layer_sizes", interval.layer_sizes()},
          {"layers", layers},
          {"covers", covers}};
}

namespace {

constexpr char kMagic[4] = {'C', 'X', 'I', 'C'};
constexpr std::uint32_t kVersion = 1;

std::string cache_key(const CoxeterSystem& sys, const GroupElement& b, const GroupElement& t) {
  return sys.spec() + "|" + format_word(b.word) + "|" + format_word(t.word);
}

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw Error(ErrorKind::Io, "truncated interval cache");
  return v;
}

}  // namespace

void save_interval_cache(const BruhatInterval& interval, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot write " + path);
  os.write(kMagic, 4);
  put(os, kVersion);
  const std::string key = cache_key(*interval.system, interval.bottom, interval.top);
  put(os, static_cast<std::uint32_t>(key.size()));
  os.write(key.data(), static_cast<std::streamsize>(key.size()));
  put(os, static_cast<std::uint64_t>(interval.size()));
  for (const auto& e : interval.elements) {
    put(os, static_cast<std::uint16_t>(e.word.size()));
    for (int g : e.word) put(os, static_cast<std::uint16_t>(g));
  }
  for (const auto& d : interval.down) {
    put(os, static_cast<std::uint32_t>(d.size()));
    for (ElementId x : d) put(os, x);
  }
  if (!os) throw Error(ErrorKind::Io, "error writing " + path);
}

std::shared_ptr<BruhatInterval> load_interval_cache(const std::string& path,
                                                    std::shared_ptr<const CoxeterSystem> system,
                                                    const GroupElement& bottom, const GroupElement& top) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return nullptr;
  char magic[4];
  is.read(magic, 4);
  if (!is || !std::equal(magic, magic + 4, kMagic)) throw Error(ErrorKind::Io, path + " is not an interval cache");
  if (get<std::uint32_t>(is) != kVersion) throw Error(ErrorKind::Io, "unsupported interval cache version");
  const auto klen = get<std::uint32_t>(is);
  std::string key(klen, '\0');
  is.read(key.data(), klen);
  if (key != cache_key(*system, bottom, top)) return nullptr;
  auto out = std::make_shared<BruhatInterval>();
  out->system = system;
  out->bottom = bottom;
  out->top = top;
  const auto n = get<std::uint64_t>(is);
  out->elements.reserve(n);
  std::vector<std::size_t> counts(static_cast<std::size_t>(top.length - bottom.length + 1), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto len = get<std::uint16_t>(is);
    Word w(len);
    for (auto& g : w) g = get<std::uint16_t>(is);
    out->elements.push_back(reduce_word(*system, w));
    const int r = out->elements.back().length;
    if (r < bottom.length || r > top.length || static_cast<std::size_t>(r) != len)
      throw Error(ErrorKind::Io, "corrupt interval cache element");
    ++counts[static_cast<std::size_t>(r - bottom.length)];
  }
  out->layer_offsets.assign(1, 0);
  for (auto c : counts) out->layer_offsets.push_back(out->layer_offsets.back() + c);
  out->down.assign(n, {});
  out->up.assign(n, {});
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto cnt = get<std::uint32_t>(is);
    for (std::uint32_t j = 0; j < cnt; ++j) {
      const auto x = get<ElementId>(is);
      if (x >= n) throw Error(ErrorKind::Io, "corrupt interval cache cover");
      out->down[i].push_back(x);
      out->up[x].push_back(static_cast<ElementId>(i));
    }
  }
  for (auto& u : out->up) std::sort(u.begin(), u.end());
  return out;
}

}  // namespace coxcss
