#include "linkoid/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "port_graph.hpp"

namespace linkoid {

CrossingCapExceeded::CrossingCapExceeded(int crossings, int cap, const std::string& context)
    : std::runtime_error((context.empty() ? "" : context + ": ") + "diagram has " + std::to_string(crossings) +
                         " crossings after simplification, above the state-sum cap of " + std::to_string(cap)),
      crossings_(crossings),
      cap_(cap) {}

int entry_slot(Level level, int sign) {
  if (level == Level::under) return 0;
  return sign > 0 ? 3 : 1;
}

int exit_slot(Level level, int sign) {
  if (level == Level::under) return 2;
  return sign > 0 ? 1 : 3;
}

namespace {

PlanarCode build_planar_code(const std::vector<OpenComponent>& open,
                             const std::vector<ClosedComponent>& closed,
                             const std::vector<int>& signs) {
  PlanarCode code;
  code.crossings.assign(signs.size(), {-1, -1, -1, -1});
  auto slot_end = [&](const Passage& p, bool entering) {
    const int sign = signs[static_cast<std::size_t>(p.crossing)];
    return ArcEnd{p.crossing, entering ? entry_slot(p.level, sign) : exit_slot(p.level, sign), 0};
  };
  auto add_arc = [&](ArcEnd tail, ArcEnd head, int component) {
    const int id = static_cast<int>(code.arcs.size());
    code.arcs.push_back(PlanarArc{tail, head, component});
    for (const ArcEnd& end : {tail, head}) {
      if (!end.is_endpoint()) code.crossings[end.crossing][end.slot] = id;
    }
  };
  int component = 0;
  for (const auto& comp : open) {
    const auto& ps = comp.passages;
    for (std::size_t i = 0; i <= ps.size(); ++i) {
      const ArcEnd tail = i == 0 ? ArcEnd{-1, -1, comp.leg} : slot_end(ps[i - 1], false);
      const ArcEnd head = i == ps.size() ? ArcEnd{-1, -1, comp.head} : slot_end(ps[i], true);
      add_arc(tail, head, component);
    }
    ++component;
  }
  for (const auto& comp : closed) {
    const auto& ps = comp.passages;
    if (ps.empty()) ++code.free_loops;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      add_arc(slot_end(ps[i], false), slot_end(ps[(i + 1) % ps.size()], true), component);
    }
    ++component;
  }
  return code;
}

ArcEnd dart_target(const PlanarCode& code, int dart) {
  const PlanarArc& arc = code.arcs[static_cast<std::size_t>(dart / 2)];
  return dart % 2 == 0 ? arc.head : arc.tail;
}

// Successor in the face traversal: arriving at slot s, leave by slot s+1.
int next_dart(const PlanarCode& code, int dart) {
  const ArcEnd at = dart_target(code, dart);
  if (at.is_endpoint()) return dart ^ 1;
  const int slot = (at.slot + 1) % 4;
  const int arc = code.crossings[at.crossing][slot];
  const PlanarArc& a = code.arcs[static_cast<std::size_t>(arc)];
  const ArcEnd leaving{at.crossing, slot, 0};
  return a.tail == leaving ? 2 * arc : 2 * arc + 1;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

FaceStructure trace_faces(const PlanarCode& code, int endpoint_count) {
  FaceStructure fs;
  const int darts = 2 * static_cast<int>(code.arcs.size());
  fs.face_of_dart.assign(static_cast<std::size_t>(darts), -1);
  for (int d = 0; d < darts; ++d) {
    if (fs.face_of_dart[d] >= 0) continue;
    std::vector<int> face;
    int cur = d;
    do {
      fs.face_of_dart[cur] = static_cast<int>(fs.faces.size());
      face.push_back(cur);
      cur = next_dart(code, cur);
    } while (cur != d);
    fs.faces.push_back(std::move(face));
  }
  // Vertices: crossings, then endpoint labels.
  const std::size_t crossings = code.crossings.size();
  UnionFind uf(crossings + static_cast<std::size_t>(endpoint_count));
  auto vertex = [&](const ArcEnd& e) {
    return e.is_endpoint() ? crossings + static_cast<std::size_t>(e.label - 1)
                           : static_cast<std::size_t>(e.crossing);
  };
  for (const auto& arc : code.arcs) uf.unite(vertex(arc.tail), vertex(arc.head));
  for (std::size_t v = 0; v < crossings + static_cast<std::size_t>(endpoint_count); ++v) {
    if (uf.find(v) == v) ++fs.connected_pieces;
  }
  return fs;
}

}  // namespace

Diagram::Diagram(std::vector<OpenComponent> open, std::vector<ClosedComponent> closed,
                 std::vector<int> signs)
    : open_(std::move(open)), closed_(std::move(closed)), signs_(std::move(signs)) {
  const int c = crossing_count();
  for (int x = 0; x < c; ++x) {
    if (signs_[x] != 1 && signs_[x] != -1) {
      throw DiagramError("crossing " + std::to_string(x + 1) + " has sign other than +1/-1");
    }
  }
  std::vector<int> unders(static_cast<std::size_t>(c), 0);
  std::vector<int> overs(static_cast<std::size_t>(c), 0);
  auto count = [&](const std::vector<Passage>& ps) {
    for (const auto& p : ps) {
      if (p.crossing < 0 || p.crossing >= c) {
        throw DiagramError("passage refers to unknown crossing " + std::to_string(p.crossing + 1));
      }
      ++(p.level == Level::under ? unders : overs)[p.crossing];
    }
  };
  for (const auto& comp : open_) count(comp.passages);
  for (const auto& comp : closed_) count(comp.passages);
  for (int x = 0; x < c; ++x) {
    if (unders[x] != 1 || overs[x] != 1) {
      throw DiagramError("crossing " + std::to_string(x + 1) +
                         " is not met by exactly one under- and one over-passage");
    }
  }
  const int n = open_count();
  std::vector<bool> used(static_cast<std::size_t>(2 * n), false);
  auto claim = [&](int label, bool leg) {
    if (label < 1 || label > 2 * n) {
      throw DiagramError("endpoint label " + std::to_string(label) + " outside 1.." +
                         std::to_string(2 * n));
    }
    if ((label % 2 == 1) != leg) {
      throw DiagramError("endpoint label " + std::to_string(label) +
                         (leg ? " used as a leg but is even" : " used as a head but is odd"));
    }
    if (used[label - 1]) throw DiagramError("endpoint label " + std::to_string(label) + " used twice");
    used[label - 1] = true;
  };
  for (const auto& comp : open_) {
    claim(comp.leg, true);
    claim(comp.head, false);
  }
  code_ = build_planar_code(open_, closed_, signs_);
  const FaceStructure fs = trace_faces(code_, 2 * n);
  const int vertices = c + 2 * n;
  const int edges = static_cast<int>(code_.arcs.size());
  const int faces = static_cast<int>(fs.faces.size());
  if (vertices - edges + faces != 2 * fs.connected_pieces) {
    throw DiagramError("crossing data is not realizable on the sphere (V - E + F = " +
                       std::to_string(vertices - edges + faces) + ", expected " +
                       std::to_string(2 * fs.connected_pieces) + ")");
  }
}

Diagram Diagram::trivial(int n) {
  if (n < 0) throw DiagramError("negative component count");
  std::vector<OpenComponent> open;
  for (int j = 1; j <= n; ++j) open.push_back(OpenComponent{2 * j - 1, 2 * j, {}});
  return Diagram(std::move(open), {}, {});
}

int Diagram::writhe() const { return std::accumulate(signs_.begin(), signs_.end(), 0); }

Diagram Diagram::mirrored() const {
  auto flip = [](std::vector<Passage> ps) {
    for (auto& p : ps) p.level = p.level == Level::under ? Level::over : Level::under;
    return ps;
  };
  std::vector<OpenComponent> open = open_;
  for (auto& comp : open) comp.passages = flip(comp.passages);
  std::vector<ClosedComponent> closed = closed_;
  for (auto& comp : closed) comp.passages = flip(comp.passages);
  std::vector<int> signs = signs_;
  for (int& s : signs) s = -s;
  return Diagram(std::move(open), std::move(closed), std::move(signs));
}

namespace {

// Tentative relabelling while choosing a canonical traversal order.
struct Relabel {
  std::vector<int> new_id;
  int next = 0;

  int code(const Passage& p, const std::vector<int>& signs, std::vector<int>& fresh) {
    int id = new_id[p.crossing];
    if (id < 0) {
      for (std::size_t k = 0; k < fresh.size(); k += 2) {
        if (fresh[k] == p.crossing) id = fresh[k + 1];
      }
      if (id < 0) {
        id = next + static_cast<int>(fresh.size() / 2);
        fresh.push_back(p.crossing);
        fresh.push_back(id);
      }
    }
    return 4 * id + (p.level == Level::over ? 2 : 0) + (signs[p.crossing] > 0 ? 1 : 0);
  }

  // Encoding of a traversal starting at `start`, without committing ids.
  std::vector<int> encode(const std::vector<Passage>& ps, std::size_t start,
                          const std::vector<int>& signs, std::vector<int>* fresh_out = nullptr) {
    std::vector<int> fresh;
    std::vector<int> out;
    out.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) out.push_back(code(ps[(start + i) % ps.size()], signs, fresh));
    if (fresh_out) *fresh_out = std::move(fresh);
    return out;
  }

  void commit(const std::vector<int>& fresh) {
    for (std::size_t k = 0; k < fresh.size(); k += 2) new_id[fresh[k]] = fresh[k + 1];
    next += static_cast<int>(fresh.size() / 2);
  }
};

}  // namespace

Diagram Diagram::canonical() const {
  Relabel rl{std::vector<int>(signs_.size(), -1), 0};
  std::vector<OpenComponent> open = open_;
  std::sort(open.begin(), open.end(),
            [](const OpenComponent& a, const OpenComponent& b) { return a.leg < b.leg; });
  for (const auto& comp : open) {
    std::vector<int> fresh;
    rl.encode(comp.passages, 0, signs_, &fresh);
    rl.commit(fresh);
  }
  std::vector<ClosedComponent> closed;
  std::vector<bool> done(closed_.size(), false);
  for (std::size_t round = 0; round < closed_.size(); ++round) {
    std::size_t best_comp = 0;
    std::size_t best_start = 0;
    std::vector<int> best_code;
    bool have = false;
    for (std::size_t k = 0; k < closed_.size(); ++k) {
      if (done[k]) continue;
      const auto& ps = closed_[k].passages;
      const std::size_t starts = std::max<std::size_t>(ps.size(), 1);
      for (std::size_t s = 0; s < starts; ++s) {
        std::vector<int> code = rl.encode(ps, s, signs_);
        // Shorter components first, then lexicographic.
        const bool better = !have || code.size() < best_code.size() ||
                            (code.size() == best_code.size() && code < best_code);
        if (better) {
          have = true;
          best_comp = k;
          best_start = s;
          best_code = std::move(code);
        }
      }
    }
    done[best_comp] = true;
    const auto& ps = closed_[best_comp].passages;
    std::vector<int> fresh;
    rl.encode(ps, best_start, signs_, &fresh);
    rl.commit(fresh);
    ClosedComponent rotated;
    for (std::size_t i = 0; i < ps.size(); ++i) rotated.passages.push_back(ps[(best_start + i) % ps.size()]);
    closed.push_back(std::move(rotated));
  }
  std::vector<int> signs(signs_.size(), 0);
  for (std::size_t x = 0; x < signs_.size(); ++x) signs[rl.new_id[x]] = signs_[x];
  auto relabel = [&](std::vector<Passage>& ps) {
    for (auto& p : ps) p.crossing = rl.new_id[p.crossing];
  };
  for (auto& comp : open) relabel(comp.passages);
  for (auto& comp : closed) relabel(comp.passages);
  return Diagram(std::move(open), std::move(closed), std::move(signs));
}

std::string Diagram::signature() const {
  const Diagram c = canonical();
  std::ostringstream out;
  auto emit = [&](const std::vector<Passage>& ps) {
    for (const auto& p : ps) {
      out << p.crossing << (p.level == Level::over ? 'o' : 'u')
          << (c.signs_[p.crossing] > 0 ? '+' : '-');
    }
  };
  for (const auto& comp : c.open_) {
    out << 'O' << comp.leg << '.' << comp.head << ':';
    emit(comp.passages);
    out << ';';
  }
  for (const auto& comp : c.closed_) {
    out << "C:";
    emit(comp.passages);
    out << ';';
  }
  return out.str();
}

FaceStructure face_structure(const Diagram& d) {
  return trace_faces(d.planar_code(), 2 * d.open_count());
}

namespace detail {

PortGraph PortGraph::build(const Diagram& d) {
  const PlanarCode& code = d.planar_code();
  PortGraph g;
  g.crossings = d.crossing_count();
  g.labels = 2 * d.open_count();
  g.free_loops = code.free_loops;
  g.link.assign(static_cast<std::size_t>(4 * g.crossings + g.labels), -1);
  auto port = [&](const ArcEnd& e) {
    return e.is_endpoint() ? g.endpoint_port(e.label) : 4 * e.crossing + e.slot;
  };
  for (const auto& arc : code.arcs) {
    const int a = port(arc.tail);
    const int b = port(arc.head);
    g.link[a] = b;
    g.link[b] = a;
  }
  return g;
}

}  // namespace detail

StateResolution resolve(const Diagram& d, const Smoothing& s) {
  if (static_cast<int>(s.size()) != d.crossing_count()) {
    throw DiagramError("smoothing has " + std::to_string(s.size()) + " choices for " +
                       std::to_string(d.crossing_count()) + " crossings");
  }
  const auto g = detail::PortGraph::build(d);
  detail::StateEvaluator eval(g);
  StateResolution out;
  out.circ = eval.run([&](int x) { return s[x] == Smooth::B; });
  if (g.labels > 0) out.pairing = Pairing(eval.pairing());
  for (Smooth choice : s) out.sigma += choice == Smooth::A ? 1 : -1;
  return out;
}

std::uint64_t for_each_state(
    const Diagram& d,
    const std::function<void(const Smoothing&, const StateResolution&)>& visit, int cap) {
  const int c = d.crossing_count();
  if (c > cap) throw CrossingCapExceeded(c, cap);
  const auto g = detail::PortGraph::build(d);
  detail::StateEvaluator eval(g);
  const std::uint64_t total = std::uint64_t{1} << c;
  Smoothing s(static_cast<std::size_t>(c), Smooth::A);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    StateResolution r;
    for (int x = 0; x < c; ++x) {
      s[x] = (mask >> x) & 1 ? Smooth::B : Smooth::A;
      r.sigma += s[x] == Smooth::A ? 1 : -1;
    }
    r.circ = eval.run([&](int x) { return ((mask >> x) & 1) != 0; });
    if (g.labels > 0) r.pairing = Pairing(eval.pairing());
    visit(s, r);
  }
  return total;
}

}  // namespace linkoid
