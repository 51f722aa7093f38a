#include "linkoid/projection.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace linkoid {

namespace {

using Vec2 = Eigen::Vector2d;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

// Closest distance between segments p0p1 and q0q1 in 3-space.
double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  const Vec3 d1 = p1 - p0;
  const Vec3 d2 = q1 - q0;
  const Vec3 r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0;
  double t = 0;
  if (a <= 0 && e <= 0) return r.norm();
  if (a <= 0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return (p0 + s * d1 - (q0 + t * d2)).norm();
}

Curve curve_from_json(const nlohmann::json& j, std::size_t index) {
  Curve c;
  c.name = j.value("name", "");
  c.closed = j.value("closed", false);
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 3) {
      throw std::invalid_argument("component " + std::to_string(index + 1) + ": points must be [x, y, z]");
    }
    c.points.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
  }
  return c;
}

struct Vertex {
  Vec2 at;
  bool open_end = false;
};

struct Segment {
  int component = 0;
  int order = 0;  // position along the component
  int tail = 0;   // vertex ids
  int head = 0;
  Vec2 a, b;
  double za = 0, zb = 0;
};

struct Hit {
  int over = 0;
  int under = 0;
  double t_over = 0;
  double t_under = 0;
  Vec2 at;
};

Degenerate degenerate(Degeneracy reason, std::vector<int> segments, std::string detail) {
  return Degenerate{reason, std::move(segments), std::move(detail)};
}

}  // namespace

std::string to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::near_parallel: return "near_parallel";
    case Degeneracy::triple_point: return "triple_point";
    case Degeneracy::endpoint_on_strand: return "endpoint_on_strand";
    case Degeneracy::vertex_coincidence: return "vertex_coincidence";
    case Degeneracy::depth_tie: return "depth_tie";
  }
  return "unknown";
}

std::vector<std::string> CurveSet::validate() const {
  if (components.empty()) throw std::invalid_argument("empty collection");
  std::vector<std::string> warnings;
  double diag = 0;
  Vec3 lo = Vec3::Constant(INFINITY), hi = Vec3::Constant(-INFINITY);
  for (std::size_t k = 0; k < components.size(); ++k) {
    const Curve& c = components[k];
    const std::string label = "component " + std::to_string(k + 1);
    const std::size_t need = c.closed ? 3 : 2;
    if (c.points.size() < need) {
      throw std::invalid_argument(label + " needs at least " + std::to_string(need) + " points");
    }
    for (const Vec3& p : c.points) {
      if (!p.allFinite()) throw std::invalid_argument(label + " has a non-finite coordinate");
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
      if (c.points[i] == c.points[i + 1]) {
        warnings.push_back(label + ": repeated point at index " + std::to_string(i + 1));
      }
    }
  }
  diag = (hi - lo).norm();
  if (diag <= 0) throw std::invalid_argument("all points coincide");
  // Self- and mutual intersections in 3-space.
  struct Seg3 {
    std::size_t comp, index;
    Vec3 a, b;
  };
  std::vector<Seg3> segs;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& pts = components[k].points;
    const std::size_t n = pts.size();
    const std::size_t count = components[k].closed ? n : n - 1;
    for (std::size_t i = 0; i < count; ++i) segs.push_back({k, i, pts[i], pts[(i + 1) % n]});
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto& s = segs[i];
      const auto& t = segs[j];
      if (s.comp == t.comp) {
        const std::size_t n = components[s.comp].points.size();
        const std::size_t gap = t.index - s.index;
        if (gap <= 1 || (components[s.comp].closed && gap == n - 1)) continue;
      }
      if (segment_distance(s.a, s.b, t.a, t.b) < 1e-9 * diag) {
        warnings.push_back("segments " + std::to_string(s.index + 1) + " of component " +
                           std::to_string(s.comp + 1) + " and " + std::to_string(t.index + 1) +
                           " of component " + std::to_string(t.comp + 1) + " intersect");
      }
    }
  }
  return warnings;
}

CurveSet curves_from_json(const nlohmann::json& j) {
  try {
    CurveSet out;
    const auto& comps = j.at("components");
    for (std::size_t k = 0; k < comps.size(); ++k) out.components.push_back(curve_from_json(comps[k], k));
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed curve JSON: ") + e.what());
  }
}

nlohmann::json curves_to_json(const CurveSet& c) {
  nlohmann::json comps = nlohmann::json::array();
  for (const Curve& curve : c.components) {
    nlohmann::json pts = nlohmann::json::array();
    for (const Vec3& p : curve.points) pts.push_back({p.x(), p.y(), p.z()});
    nlohmann::json jc{{"points", pts}, {"closed", curve.closed}};
    if (!curve.name.empty()) jc["name"] = curve.name;
    comps.push_back(jc);
  }
  return {{"components", comps}};
}

CurveSet parse_curve_listing(std::string_view text) {
  const std::string s(text);
  static const std::regex start(R"(([A-Za-z_][A-Za-z0-9_]*)\s*=\s*\[)");
  CurveSet out;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), start); it != std::sregex_iterator(); ++it) {
    const std::size_t open = static_cast<std::size_t>(it->position(0) + it->length(0)) - 1;
    int depth = 0;
    std::size_t close = open;
    for (; close < s.size(); ++close) {
      if (s[close] == '[') ++depth;
      if (s[close] == ']' && --depth == 0) break;
    }
    if (close >= s.size()) throw std::invalid_argument("unbalanced brackets in curve " + (*it)[1].str());
    nlohmann::json pts;
    try {
      pts = nlohmann::json::parse(s.substr(open, close - open + 1));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("curve " + (*it)[1].str() + ": " + e.what());
    }
    out.components.push_back(curve_from_json({{"name", (*it)[1].str()}, {"points", pts}}, out.components.size()));
  }
  if (out.components.empty()) throw std::invalid_argument("no curves found in listing");
  return out;
}

CurveSet read_curves_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open curve file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return curves_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(path.string() + ": " + e.what());
    }
  }
  return parse_curve_listing(text);
}

CurveSet interpolate_closure(const CurveSet& c, double s) {
  if (!(s >= 0 && s <= 1)) throw std::invalid_argument("closure parameter must lie in [0, 1]");
  CurveSet out = c;
  for (Curve& curve : out.components) {
    if (curve.closed) throw std::invalid_argument("interpolate_closure needs open components only");
    if (curve.points.empty()) throw std::invalid_argument("component without points");
    const Vec3 first = curve.points.front();
    const Vec3 last = curve.points.back();
    curve.points.push_back(s == 1 ? first : Vec3(last + s * (first - last)));
    curve.closed = s == 1;
  }
  return out;
}

ProjectionOutcome project(const CurveSet& c, const Vec3& xi, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (std::abs(xi.norm() - 1) > 1e-9) throw std::invalid_argument("projection direction must be a unit vector");
  if (c.components.empty()) throw std::invalid_argument("empty collection");

  Vec3 lo = Vec3::Constant(INFINITY), hi = Vec3::Constant(-INFINITY);
  for (const Curve& curve : c.components) {
    for (const Vec3& p : curve.points) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  const double diag = (hi - lo).norm();
  if (!(diag > 0)) throw std::invalid_argument("all points coincide");
  const Vec3 centre = (lo + hi) / 2;

  Eigen::Index axis = 0;
  xi.cwiseAbs().minCoeff(&axis);
  const Vec3 u = Vec3::Unit(axis).cross(xi).normalized();
  const Vec3 v = xi.cross(u);

  std::vector<Vertex> vertices;
  std::vector<Segment> segs;
  std::vector<int> open_index(c.components.size(), -1);
  int open_count = 0;
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    const Curve& curve = c.components[k];
    // Drop zero-length edges, including a closing point equal to the first.
    std::vector<Vec3> pts;
    for (const Vec3& p : curve.points) {
      const Vec3 q = (p - centre) / diag;
      if (pts.empty() || (q - pts.back()).norm() > eps) pts.push_back(q);
    }
    if (curve.closed && pts.size() > 1 && (pts.back() - pts.front()).norm() <= eps) pts.pop_back();
    if (pts.size() < (curve.closed ? 3u : 2u)) {
      throw std::invalid_argument("component " + std::to_string(k + 1) + " has too few distinct points");
    }
    if (!curve.closed) open_index[k] = open_count++;
    const int base = static_cast<int>(vertices.size());
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
      vertices.push_back({Vec2(pts[i].dot(u), pts[i].dot(v)), !curve.closed && (i == 0 || i == n - 1)});
    }
    const int count = curve.closed ? n : n - 1;
    for (int i = 0; i < count; ++i) {
      const int a = base + i;
      const int b = base + (i + 1) % n;
      segs.push_back({static_cast<int>(k), i, a, b, vertices[a].at, vertices[b].at, pts[i].dot(xi),
                      pts[(i + 1) % n].dot(xi)});
    }
  }

  ProjectionOutcome out;
  const int m = static_cast<int>(segs.size());
  auto adjacent = [&](const Segment& s, const Segment& t) {
    return s.tail == t.tail || s.tail == t.head || s.head == t.tail || s.head == t.head;
  };

  for (int i = 0; i < m; ++i) {
    if ((segs[i].b - segs[i].a).norm() <= eps) {
      out.degenerate = degenerate(Degeneracy::near_parallel, {i}, "segment is parallel to the direction");
      return out;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!adjacent(segs[i], segs[j])) continue;
      const Vec2 r = segs[i].b - segs[i].a;
      const Vec2 s = segs[j].b - segs[j].a;
      // Orient both away from the shared vertex; folding back means overlap.
      const bool share_tail = segs[i].tail == segs[j].tail || segs[i].tail == segs[j].head;
      const Vec2 ri = share_tail ? r : Vec2(-r);
      const Vec2 sj = (segs[j].tail == segs[i].tail || segs[j].tail == segs[i].head) ? s : Vec2(-s);
      if (std::abs(cross2(ri, sj)) <= eps * r.norm() * s.norm() && ri.dot(sj) > 0) {
        out.degenerate = degenerate(Degeneracy::near_parallel, {i, j}, "adjacent segments fold onto each other");
        return out;
      }
    }
  }
  for (int vtx = 0; vtx < static_cast<int>(vertices.size()); ++vtx) {
    for (int j = 0; j < m; ++j) {
      if (segs[j].tail == vtx || segs[j].head == vtx) continue;
      if (point_segment_distance(vertices[vtx].at, segs[j].a, segs[j].b) <= eps) {
        std::vector<int> involved{j};
        for (int k = 0; k < m; ++k) {
          if (segs[k].tail == vtx || segs[k].head == vtx) involved.push_back(k);
        }
        std::sort(involved.begin(), involved.end());
        out.degenerate = degenerate(
            vertices[vtx].open_end ? Degeneracy::endpoint_on_strand : Degeneracy::vertex_coincidence, involved,
            "vertex " + std::to_string(vtx) + " projects onto segment " + std::to_string(j));
        return out;
      }
    }
  }

  std::vector<Hit> hits;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (adjacent(segs[i], segs[j])) continue;
      const Segment& p = segs[i];
      const Segment& q = segs[j];
      const Vec2 r = p.b - p.a;
      const Vec2 s = q.b - q.a;
      const double denom = cross2(r, s);
      const Vec2 qp = q.a - p.a;
      if (std::abs(denom) <= eps * r.norm() * s.norm()) {
        // Nearly parallel: only a problem if they touch.
        const bool touch = std::min({point_segment_distance(p.a, q.a, q.b), point_segment_distance(p.b, q.a, q.b),
                                     point_segment_distance(q.a, p.a, p.b), point_segment_distance(q.b, p.a, p.b)}) <= eps;
        if (touch) {
          out.degenerate = degenerate(Degeneracy::near_parallel, {i, j}, "overlapping parallel segments");
          return out;
        }
        continue;
      }
      const double t = cross2(qp, s) / denom;
      const double w = cross2(qp, r) / denom;
      if (t <= 0 || t >= 1 || w <= 0 || w >= 1) continue;
      const double rn = r.norm();
      const double sn = s.norm();
      if (t * rn <= eps || (1 - t) * rn <= eps || w * sn <= eps || (1 - w) * sn <= eps) {
        const int vtx = t * rn <= eps ? p.tail : (1 - t) * rn <= eps ? p.head : w * sn <= eps ? q.tail : q.head;
        out.degenerate = degenerate(
            vertices[vtx].open_end ? Degeneracy::endpoint_on_strand : Degeneracy::vertex_coincidence, {i, j},
            "crossing within eps of a vertex");
        return out;
      }
      const double zp = p.za + t * (p.zb - p.za);
      const double zq = q.za + w * (q.zb - q.za);
      if (std::abs(zp - zq) <= eps) {
        out.degenerate = degenerate(Degeneracy::depth_tie, {i, j}, "strands meet in space");
        return out;
      }
      const bool p_over = zp > zq;
      hits.push_back({p_over ? i : j, p_over ? j : i, p_over ? t : w, p_over ? w : t, p.a + t * r});
    }
  }
  for (std::size_t a = 0; a < hits.size(); ++a) {
    for (std::size_t b = a + 1; b < hits.size(); ++b) {
      if ((hits[a].at - hits[b].at).norm() <= eps) {
        out.degenerate = degenerate(Degeneracy::triple_point, {hits[a].over, hits[a].under, hits[b].over, hits[b].under},
                                    "two crossings coincide");
        return out;
      }
    }
  }

  // Passages along each component ordered by segment and parameter.
  struct Stop {
    int order;
    double t;
    Passage passage;
  };
  std::vector<std::vector<Stop>> stops(c.components.size());
  std::vector<int> signs;
  for (std::size_t x = 0; x < hits.size(); ++x) {
    const Hit& h = hits[x];
    const Segment& o = segs[h.over];
    const Segment& un = segs[h.under];
    signs.push_back(cross2(o.b - o.a, un.b - un.a) > 0 ? 1 : -1);
    stops[o.component].push_back({o.order, h.t_over, {static_cast<int>(x), Level::over}});
    stops[un.component].push_back({un.order, h.t_under, {static_cast<int>(x), Level::under}});
  }
  std::vector<OpenComponent> open;
  std::vector<ClosedComponent> closed;
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    auto& list = stops[k];
    std::sort(list.begin(), list.end(),
              [](const Stop& a, const Stop& b) { return a.order != b.order ? a.order < b.order : a.t < b.t; });
    std::vector<Passage> ps;
    for (const Stop& s : list) ps.push_back(s.passage);
    if (open_index[k] >= 0) {
      open.push_back({2 * open_index[k] + 1, 2 * open_index[k] + 2, std::move(ps)});
    } else {
      closed.push_back({std::move(ps)});
    }
  }
  out.diagram = Diagram(std::move(open), std::move(closed), std::move(signs));
  return out;
}

}  // namespace linkoid
