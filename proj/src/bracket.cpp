#include "linkoid/bracket.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <mutex>
#include <unordered_map>

#include "linkoid/moves.hpp"
#include "linkoid/simplify.hpp"
#include "passage_edit.hpp"
#include "port_graph.hpp"

namespace linkoid {

std::optional<ExactPoly> BracketCache::find(const std::string& key) const {
  std::shared_lock lock(mutex_);
  const auto it = map_.find(key);
  if (it == map_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void BracketCache::insert(const std::string& key, const ExactPoly& value) {
  std::unique_lock lock(mutex_);
  if (map_.size() >= max_entries_) return;
  map_.emplace(key, value);
}

std::size_t BracketCache::size() const {
  std::shared_lock lock(mutex_);
  return map_.size();
}

ExactPoly kink_factor(int k) {
  return writhe_normalize(ExactPoly::constant(1), -k);
}

namespace {

using detail::PortGraph;

ExactPoly state_weight(int sigma, int k) { return d_power(k).shifted(sigma); }

// Removes crossing x by the given smoothing. Endpoint and later crossing
// ports shift down by four.
PortGraph smooth(const PortGraph& g, int x, bool b) {
  std::vector<int> link = g.link;
  int loops = g.free_loops;
  const int base = 4 * x;
  for (const int s : {0, 2}) {
    const int p = base + s;
    const int q = base + detail::smoothing_partner(s, b);
    const int a = link[p];
    const int c = link[q];
    if (a == q) {
      ++loops;
      continue;
    }
    link[a] = c;
    link[c] = a;
  }
  PortGraph out;
  out.crossings = g.crossings - 1;
  out.labels = g.labels;
  out.free_loops = loops;
  out.link.reserve(link.size() - 4);
  auto shift = [&](int port) { return port > base ? port - 4 : port; };
  for (int p = 0; p < static_cast<int>(link.size()); ++p) {
    if (p >= base && p < base + 4) continue;
    out.link.push_back(shift(link[p]));
  }
  return out;
}

// Traversal code of a loop-free port graph: strands from each endpoint in
// label order, then the remaining closed strands, crossings numbered on first
// visit.
std::string traversal_key(const PortGraph& g) {
  const int crossing_ports = 4 * g.crossings;
  std::vector<int> id(static_cast<std::size_t>(g.crossings), -1);
  std::vector<char> seen(g.link.size(), 0);
  std::vector<int> out;
  int next = 0;
  auto visit = [&](int p) {
    const int x = p >> 2;
    if (id[x] < 0) id[x] = next++;
    out.push_back(4 * id[x] + (p & 3));
    const int q = (x << 2) | ((p + 2) & 3);
    seen[p] = seen[q] = 1;
    return g.link[q];
  };
  for (int e = 1; e <= g.labels; ++e) {
    const int start = g.endpoint_port(e);
    if (seen[start]) continue;
    seen[start] = 1;
    out.push_back(-e);
    int p = g.link[start];
    while (!g.is_endpoint(p)) p = visit(p);
    seen[p] = 1;
    out.push_back(-g.label_of(p));
  }
  for (int start = 0; start < crossing_ports; ++start) {
    if (seen[start]) continue;
    out.push_back(-1000);
    int p = start;
    do {
      p = visit(p);
    } while (p != start);
  }
  std::string key(out.size() * sizeof(int), '\0');
  std::memcpy(key.data(), out.data(), key.size());
  return key;
}

class Recursion {
 public:
  ExactPoly eval(PortGraph g) {
    ExactPoly factor = ExactPoly::constant(1);
    // Curls: a port wired to its neighbour slot.
    for (bool found = true; found;) {
      found = false;
      for (int x = 0; x < g.crossings && !found; ++x) {
        for (int s = 0; s < 4; ++s) {
          const int t = (s + 1) & 3;
          if (g.link[4 * x + s] != 4 * x + t) continue;
          const bool loop_is_a = detail::smoothing_partner(s, false) == t;
          factor = factor * kink_factor(loop_is_a ? 1 : -1);
          g = smooth(g, x, loop_is_a);
          found = true;
          break;
        }
      }
    }
    const int loops = g.free_loops;
    g.free_loops = 0;
    if (g.crossings == 0 && g.labels == 0) return factor * d_power(loops - 1);
    return factor * d_power(loops) * loop_free(g);
  }

  std::uint64_t leaves = 0;

 private:
  ExactPoly loop_free(const PortGraph& g) {
    if (g.crossings == 0) {
      ++leaves;
      std::vector<int> image(static_cast<std::size_t>(g.labels));
      for (int e = 1; e <= g.labels; ++e) image[e - 1] = g.label_of(g.link[g.endpoint_port(e)]);
      return d_power(count_segment_cycles(image) - 1);
    }
    std::string key = traversal_key(g);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int x = pick(g);
    ExactPoly value = eval(smooth(g, x, false)).shifted(1) + eval(smooth(g, x, true)).shifted(-1);
    memo_.emplace(std::move(key), value);
    return value;
  }

  // Crossing sharing the most arcs with a single neighbour; smoothing one
  // side of a bigon tends to leave a curl behind.
  static int pick(const PortGraph& g) {
    int best = 0;
    int best_score = -1;
    for (int x = 0; x < g.crossings; ++x) {
      int score = 0;
      for (int s = 0; s < 4; ++s) {
        const int y = g.link[4 * x + s];
        if (g.is_endpoint(y)) continue;
        int same = 0;
        for (int t = 0; t < 4; ++t) {
          const int z = g.link[4 * x + t];
          if (!g.is_endpoint(z) && (z >> 2) == (y >> 2)) ++same;
        }
        score = std::max(score, same);
      }
      if (score > best_score) {
        best_score = score;
        best = x;
      }
    }
    return best;
  }

  std::unordered_map<std::string, ExactPoly> memo_;
};

void check_cap(const Diagram& d, int cap) {
  if (d.crossing_count() > cap) throw CrossingCapExceeded(d.crossing_count(), cap);
}

}  // namespace

ExactPoly bracket_by_enumeration(const Diagram& d, int cap, std::uint64_t* states) {
  if (d.empty()) throw DiagramError("empty collection");
  check_cap(d, cap);
  const int c = d.crossing_count();
  const auto g = PortGraph::build(d);
  detail::StateEvaluator eval(g);
  // counts[sigma + c][k]: states with A-exponent sigma and d-exponent k.
  std::vector<std::vector<std::int64_t>> counts(static_cast<std::size_t>(2 * c + 1));
  const std::uint64_t total = std::uint64_t{1} << c;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const int circ = eval.run([mask](int x) { return ((mask >> x) & 1) != 0; });
    const int cyc = g.labels > 0 ? count_segment_cycles(eval.pairing()) : 0;
    const int k = circ - 1 + cyc;
    if (k < 0) throw std::logic_error("invalid state weight");
    const int sigma = c - 2 * std::popcount(mask);
    auto& row = counts[static_cast<std::size_t>(sigma + c)];
    if (row.size() <= static_cast<std::size_t>(k)) row.resize(static_cast<std::size_t>(k) + 1, 0);
    ++row[static_cast<std::size_t>(k)];
  }
  if (states) *states = total;
  ExactPoly out;
  for (int i = 0; i <= 2 * c; ++i) {
    const auto& row = counts[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] != 0) out += state_weight(i - c, static_cast<int>(k)).scaled(Rational(row[k]));
    }
  }
  return out;
}

ExactPoly bracket_by_recursion(const Diagram& d, int cap, std::uint64_t* states) {
  if (d.empty()) throw DiagramError("empty collection");
  check_cap(d, cap);
  Recursion r;
  ExactPoly out = r.eval(PortGraph::build(d));
  if (states) *states = r.leaves;
  return out;
}

ExactPoly bracket(const Diagram& d, const BracketOptions& opts) { return jones(d, opts).bracket; }

BracketResult jones(const Diagram& d, const BracketOptions& opts) {
  if (d.empty()) throw DiagramError("empty collection");
  BracketResult out;
  out.writhe = d.writhe();
  out.crossings = d.crossing_count();
  SimplifyResult s = opts.simplify ? simplify(d) : SimplifyResult{d, 0, 0, 0};
  const Diagram& core = s.diagram;
  out.simplified_crossings = core.crossing_count();
  check_cap(core, opts.cap);

  std::string key;
  std::optional<ExactPoly> value;
  if (opts.cache) {
    key = core.signature();
    value = opts.cache->find(key);
    out.cache_hit = value.has_value();
  }
  if (!value) {
    const bool enumerate = opts.strategy == Strategy::enumerate ||
                           (opts.strategy == Strategy::automatic && core.crossing_count() <= opts.enumeration_limit);
    value = enumerate ? bracket_by_enumeration(core, opts.cap, &out.states_evaluated)
                      : bracket_by_recursion(core, opts.cap, &out.states_evaluated);
    if (opts.cache) opts.cache->insert(key, *value);
  }
  out.bracket = kink_factor(s.twist) * *value;
  out.jones_A = writhe_normalize(out.bracket, out.writhe);
  return out;
}

Diagram close_linkoid(const Diagram& d) {
  const int n = d.open_count();
  if (n == 0) return d;
  const PlanarCode& code = d.planar_code();
  const FaceStructure fs = face_structure(d);
  // Face and position of the dart arriving at each endpoint label.
  std::vector<int> face(static_cast<std::size_t>(2 * n) + 1, -1);
  std::vector<int> pos(static_cast<std::size_t>(2 * n) + 1, -1);
  for (std::size_t a = 0; a < code.arcs.size(); ++a) {
    const PlanarArc& arc = code.arcs[a];
    for (const bool at_head : {true, false}) {
      const ArcEnd& end = at_head ? arc.head : arc.tail;
      if (!end.is_endpoint()) continue;
      const int dart = static_cast<int>(2 * a) + (at_head ? 0 : 1);
      const int f = fs.face_of_dart[static_cast<std::size_t>(dart)];
      const auto& cycle = fs.faces[static_cast<std::size_t>(f)];
      face[end.label] = f;
      pos[end.label] = static_cast<int>(std::find(cycle.begin(), cycle.end(), dart) - cycle.begin());
    }
  }
  const DiagramError invalid("not a valid crossing-free closure");
  for (int k = 1; k <= n; ++k) {
    if (face[2 * k - 1] != face[2 * k]) throw invalid;
  }
  for (int k = 1; k <= n; ++k) {
    for (int m = k + 1; m <= n; ++m) {
      if (face[2 * k] != face[2 * m]) continue;
      const auto [a, b] = std::minmax(pos[2 * k - 1], pos[2 * k]);
      const auto [c, e] = std::minmax(pos[2 * m - 1], pos[2 * m]);
      if ((a < c && c < b && b < e) || (c < a && a < e && e < b)) throw invalid;
    }
  }
  // Follow head 2k into leg 2k-1 until the chain returns.
  std::vector<int> by_leg(static_cast<std::size_t>(2 * n) + 1, -1);
  for (int j = 0; j < n; ++j) by_leg[d.open_components()[j].leg] = j;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<ClosedComponent> closed;
  for (int start = 0; start < n; ++start) {
    if (used[start]) continue;
    ClosedComponent ring;
    int j = start;
    while (!used[j]) {
      used[j] = true;
      const auto& comp = d.open_components()[j];
      ring.passages.insert(ring.passages.end(), comp.passages.begin(), comp.passages.end());
      j = by_leg[comp.head - 1];
    }
    closed.push_back(std::move(ring));
  }
  closed.insert(closed.end(), d.closed_components().begin(), d.closed_components().end());
  return Diagram({}, std::move(closed), d.signs());
}

SkeinCheck skein_check(const Diagram& d, int site) {
  if (site < 0 || site >= d.crossing_count()) {
    throw DiagramError("skein site " + std::to_string(site + 1) + " out of range");
  }
  const Diagram plus = d.sign(site) > 0 ? d : switch_crossing(d, site);
  const Diagram minus = switch_crossing(plus, site);
  const Diagram zero = oriented_smoothing(plus, site);
  SkeinCheck out;
  out.f_plus = jones(plus).jones_A;
  out.f_minus = jones(minus).jones_A;
  out.f_zero = jones(zero).jones_A;
  const ExactPoly lhs = out.f_plus.shifted(4) - out.f_minus.shifted(-4);
  const ExactPoly rhs = (ExactPoly::monomial(1, -2) - ExactPoly::monomial(1, 2)) * out.f_zero;
  out.holds = lhs == rhs;
  return out;
}

}  // namespace linkoid
