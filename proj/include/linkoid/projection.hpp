#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "linkoid/diagram.hpp"

namespace linkoid {

using Vec3 = Eigen::Vector3d;

struct Curve {
  std::string name;
  std::vector<Vec3> points;
  bool closed = false;
};

// Open curves need two points, closed curves three; consecutive points must
// differ except where interpolate_closure appended a duplicate.
struct CurveSet {
  std::vector<Curve> components;

  // Throws std::invalid_argument on structural problems. Returns warnings
  // for geometry that is legal but suspicious, such as self-intersections.
  std::vector<std::string> validate() const;
};

CurveSet curves_from_json(const nlohmann::json& j);
nlohmann::json curves_to_json(const CurveSet& c);
// Accepts "R = [[0,0,0],[1,1,0], ...]" style listings; every curve is open.
CurveSet parse_curve_listing(std::string_view text);
// JSON when the file starts with '{', otherwise the listing style.
CurveSet read_curves_file(const std::filesystem::path& path);

// Appends last + s * (first - last) to every component; at s = 1 the curves
// are marked closed.
CurveSet interpolate_closure(const CurveSet& c, double s);

enum class Degeneracy { near_parallel, triple_point, endpoint_on_strand, vertex_coincidence, depth_tie };

std::string to_string(Degeneracy d);

struct Degenerate {
  Degeneracy reason;
  std::vector<int> segments;  // global segment indices involved
  std::string detail;
};

struct ProjectionOutcome {
  std::optional<Diagram> diagram;
  std::optional<Degenerate> degenerate;

  bool regular() const { return diagram.has_value(); }
};

inline constexpr double kDefaultProjectionEps = 1e-9;

// Orthogonal projection onto the plane normal to xi, viewed from +xi: the
// strand with larger depth along xi passes over. Curves are first rescaled
// to unit bounding-box diagonal, so eps is relative to the curve size.
// Open components take labels (2j-1, 2j) in the order they appear in C.
ProjectionOutcome project(const CurveSet& c, const Vec3& xi, double eps = kDefaultProjectionEps);

}  // namespace linkoid
