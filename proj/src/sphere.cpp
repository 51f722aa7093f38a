#include "linkoid/sphere.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "linkoid/simplify.hpp"

namespace linkoid {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Vec3> fibonacci_lattice(int n) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    out.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return out;
}

std::vector<Vec3> gaussian_directions(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(out.size()) < n) {
    const Vec3 g(normal(rng), normal(rng), normal(rng));
    const double len = g.norm();
    if (len > 1e-12) out.push_back(g / len);
  }
  return out;
}

std::string describe(const Vec3& xi) {
  std::ostringstream out;
  out.precision(17);
  out << "direction (" << xi.x() << ", " << xi.y() << ", " << xi.z() << ")";
  return out.str();
}

struct LocalType {
  TypeCount type;
  int first_sample = std::numeric_limits<int>::max();
};

struct CapViolation {
  int crossings = 0;
  int sample = -1;
  Vec3 direction;
};

struct WorkerResult {
  std::map<std::string, LocalType> census;
  int degenerate = 0;
  CapViolation worst;
};

enum class Quantity { jones, bracket };

void run_worker(const CurveSet& c, const SamplerConfig& cfg, const std::vector<Vec3>& dirs, Quantity q,
                BracketCache& cache, int worker, int workers, WorkerResult& out) {
  BracketOptions opts;
  opts.cap = cfg.crossing_cap;
  opts.simplify = false;
  for (int i = worker; i < static_cast<int>(dirs.size()); i += workers) {
    Vec3 xi = dirs[static_cast<std::size_t>(i)];
    ProjectionOutcome o = project(c, xi, cfg.eps);
    for (int attempt = 1; !o.regular() && attempt <= cfg.max_redraws; ++attempt) {
      ++out.degenerate;
      xi = jittered_direction(dirs[static_cast<std::size_t>(i)], i, attempt, cfg.eps);
      o = project(c, xi, cfg.eps);
    }
    if (!o.regular()) {
      throw std::runtime_error("every redraw of sample " + std::to_string(i) + " was degenerate (" +
                               to_string(o.degenerate->reason) + ": " + o.degenerate->detail +
                               "); the input looks pathological");
    }
    const SimplifyResult s = simplify(*o.diagram);
    const Diagram& core = s.diagram;
    if (core.crossing_count() > cfg.crossing_cap) {
      if (core.crossing_count() > out.worst.crossings) out.worst = {core.crossing_count(), i, xi};
      continue;
    }
    const std::string sig = core.signature();
    std::optional<ExactPoly> br = cache.find(sig);
    if (!br) {
      br = bracket(core, opts);
      cache.insert(sig, *br);
    }
    // Curls carry twist equal to their sign and bigons cancel in writhe, so the
    // simplified diagram has the same Jones polynomial as the projection.
    std::string key = sig;
    ExactPoly value;
    if (q == Quantity::jones) {
      value = writhe_normalize(*br, core.writhe());
    } else {
      key += "#" + std::to_string(s.twist);
      value = kink_factor(s.twist) * *br;
    }
    LocalType& t = out.census[key];
    if (t.type.count++ == 0) {
      t.type.value = std::move(value);
      t.type.crossings = core.crossing_count();
    }
    if (i < t.first_sample) {
      t.first_sample = i;
      t.type.direction = xi;
    }
  }
}

SphereEstimate estimate(const CurveSet& c, const SamplerConfig& cfg, Quantity q) {
  if (c.components.empty()) throw std::invalid_argument("empty collection");
  const std::vector<Vec3> dirs = sample_directions(cfg);
  BracketCache own(cfg.cache_max_entries);
  BracketCache& cache = cfg.cache ? *cfg.cache : own;
  const auto hits0 = cache.hits();
  const auto misses0 = cache.misses();

  int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, static_cast<int>(dirs.size()));
  std::vector<WorkerResult> results(static_cast<std::size_t>(workers));
  if (workers == 1) {
    run_worker(c, cfg, dirs, q, cache, 0, 1, results[0]);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_worker(c, cfg, dirs, q, cache, w, workers, results[static_cast<std::size_t>(w)]);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Merging is order-independent: counts add, representatives keep the
  // earliest sample.
  CapViolation worst;
  for (const auto& r : results) {
    const CapViolation& v = r.worst;
    if (v.crossings > worst.crossings || (v.crossings == worst.crossings && v.sample >= 0 && v.sample < worst.sample)) {
      worst = v;
    }
  }
  if (worst.sample >= 0) {
    throw CrossingCapExceeded(worst.crossings, cfg.crossing_cap,
                              "sample " + std::to_string(worst.sample) + ", " + describe(worst.direction));
  }

  SphereEstimate out;
  std::map<std::string, LocalType> merged;
  for (auto& r : results) {
    out.degenerate_count += r.degenerate;
    for (auto& [key, local] : r.census) {
      LocalType& m = merged[key];
      if (m.type.count == 0) m.type.value = local.type.value;
      m.type.count += local.type.count;
      m.type.crossings = local.type.crossings;
      if (local.first_sample < m.first_sample) {
        m.first_sample = local.first_sample;
        m.type.direction = local.type.direction;
      }
    }
  }
  const int n = static_cast<int>(dirs.size());
  out.samples_used = n;
  for (auto& [key, local] : merged) {
    out.sum += local.type.value.scaled(Rational(static_cast<std::int64_t>(local.type.count)));
    out.census.emplace(key, std::move(local.type));
  }
  out.mean = to_real(out.sum.scaled(Rational(1, n)));
  if (cfg.mode == SamplingMode::random && n > 1) {
    std::map<int, double> sq;
    for (const auto& [e, m] : out.mean.terms()) sq[e] = 0;
    for (const auto& [key, t] : out.census) {
      for (const auto& [e, v] : t.value.terms()) sq.try_emplace(e, 0.0);
    }
    for (auto& [e, acc] : sq) {
      const double mu = out.mean.coefficient(e);
      for (const auto& [key, t] : out.census) {
        const Rational r = t.value.coefficient(e);
        const double x = static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
        acc += static_cast<double>(t.count) * (x - mu) * (x - mu);
      }
      out.stderr_by_exponent[e] = std::sqrt(acc / (n - 1) / n);
    }
  }
  out.cache_hits = cache.hits() - hits0;
  out.cache_misses = cache.misses() - misses0;
  out.cache_entries = cache.size();
  return out;
}

}  // namespace

std::vector<Vec3> sample_directions(const SamplerConfig& cfg) {
  if (cfg.sample_count < 1) throw std::invalid_argument("sample count must be at least 1");
  if (cfg.max_redraws < 1) throw std::invalid_argument("max_redraws must be at least 1");
  if (cfg.antipodal && cfg.sample_count % 2 != 0) {
    throw std::invalid_argument("antipodal sampling needs an even sample count");
  }
  const int base = cfg.antipodal ? cfg.sample_count / 2 : cfg.sample_count;
  std::vector<Vec3> dirs =
      cfg.mode == SamplingMode::fibonacci ? fibonacci_lattice(base) : gaussian_directions(base, cfg.seed);
  if (cfg.antipodal) {
    for (int i = 0; i < base; ++i) dirs.push_back(-dirs[static_cast<std::size_t>(i)]);
  }
  return dirs;
}

Vec3 jittered_direction(const Vec3& xi, int sample, int attempt, double eps) {
  std::uint64_t h = splitmix64((static_cast<std::uint64_t>(sample) << 20) ^ static_cast<std::uint64_t>(attempt));
  Vec3 axis;
  for (int k = 0; k < 3; ++k) {
    h = splitmix64(h);
    axis[k] = static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  axis -= axis.dot(xi) * xi;
  if (axis.norm() < 1e-6) axis = xi.unitOrthogonal();
  const double angle = 10.0 * eps * std::pow(10.0, attempt - 1);
  return (Eigen::AngleAxisd(angle, axis.normalized()) * xi).normalized();
}

SphereEstimate estimate_jones(const CurveSet& c, const SamplerConfig& cfg) { return estimate(c, cfg, Quantity::jones); }

SphereEstimate estimate_bracket(const CurveSet& c, const SamplerConfig& cfg) {
  return estimate(c, cfg, Quantity::bracket);
}

std::vector<std::pair<double, SphereEstimate>> sweep(const CurveSet& c, const std::vector<double>& s_values,
                                                     const SamplerConfig& cfg) {
  BracketCache own(cfg.cache_max_entries);
  SamplerConfig local = cfg;
  if (!local.cache) local.cache = &own;
  std::vector<std::pair<double, SphereEstimate>> out;
  for (const double s : s_values) out.emplace_back(s, estimate_jones(interpolate_closure(c, s), local));
  return out;
}

}  // namespace linkoid
