#include "linkoid/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "linkoid/braid.hpp"
#include "linkoid/bracket.hpp"
#include "linkoid/diagram_io.hpp"
#include "linkoid/projection.hpp"
#include "linkoid/segcycle.hpp"
#include "linkoid/sphere.hpp"

#ifndef LINKOID_VERSION
#define LINKOID_VERSION "0.0.0"
#endif

namespace linkoid::cli {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("failed writing " + path);
}

Variable parse_var(const std::string& v) { return v == "t" ? Variable::t : Variable::A; }

std::string vec_str(const Vec3& v) {
  std::ostringstream out;
  out << std::setprecision(17) << "(" << v.x() << ", " << v.y() << ", " << v.z() << ")";
  return out.str();
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

std::size_t cache_limit_from_env() {
  const char* raw = std::getenv("LINKOID_CACHE_MAX");
  if (!raw || !*raw) return 1'000'000;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw InputError(std::string("LINKOID_CACHE_MAX is not a count: ") + raw);
  return static_cast<std::size_t>(v);
}

// What a command produced, before it is routed to stdout or --out.
struct Output {
  std::string payload;
  json config = json::object();
  json extra = json::object();  // run statistics for the manifest
  std::vector<std::string> inputs;
};

struct Routing {
  std::string out_path;
  std::string manifest_path;
};

void add_routing(CLI::App* cmd, Routing& r) {
  cmd->add_option("-o,--out", r.out_path, "Write the result to this file");
  cmd->add_option("--manifest", r.manifest_path,
                  "Run manifest path (default: <out>.manifest.json when --out is given)");
}

json manifest_json(const std::string& command, const std::vector<std::string>& args, const Output& o,
                   const std::vector<std::string>& outputs, double seconds) {
  json inputs = json::array();
  for (const auto& path : o.inputs) inputs.push_back({{"path", path}, {"sha256", sha256_hex(read_file(path))}});
  return {{"tool", "linkoid"},      {"version", LINKOID_VERSION}, {"command", command},
          {"arguments", args},      {"inputs", inputs},           {"config", o.config},
          {"statistics", o.extra},  {"outputs", outputs},         {"wall_time_seconds", seconds}};
}

struct Common {
  bool json_out = false;
  std::string var;
  int decimals = 2;
};

// ---------------------------------------------------------------- jones, bracket

struct DiagramArgs {
  std::string input;
  int cap = kDefaultCrossingCap;
  std::string strategy = "auto";
  bool no_simplify = false;
};

Output cmd_diagram(const DiagramArgs& a, const Common& c, bool want_jones) {
  Diagram d;
  try {
    d = read_diagram_file(a.input);
  } catch (const json::exception& e) {
    throw InputError(a.input + ": " + e.what());
  }
  BracketOptions opts;
  opts.cap = a.cap;
  opts.simplify = !a.no_simplify;
  opts.strategy = a.strategy == "enumerate" ? Strategy::enumerate
                  : a.strategy == "recurse" ? Strategy::recurse
                                            : Strategy::automatic;
  const BracketResult r = jones(d, opts);
  const Variable var = parse_var(c.var);
  Output o;
  o.inputs = {a.input};
  o.config = {{"variable", c.var}, {"cap", a.cap}, {"strategy", a.strategy}, {"simplify", !a.no_simplify}};
  o.extra = {{"states_evaluated", r.states_evaluated}};
  if (c.json_out) {
    const json j = {{"input", a.input},
                    {"bracket", to_json(r.bracket, var)},
                    {"jones", to_json(r.jones_A, var)},
                    {"writhe", r.writhe},
                    {"crossings", r.crossings},
                    {"simplified_crossings", r.simplified_crossings},
                    {"states_evaluated", r.states_evaluated}};
    o.payload = j.dump(2) + "\n";
  } else {
    o.payload = format(want_jones ? r.jones_A : r.bracket, var) + "\n";
  }
  return o;
}

// ---------------------------------------------------------------- project

struct ProjectArgs {
  std::string input;
  std::vector<double> xi;
  std::optional<double> close;
  double eps = kDefaultProjectionEps;
  int max_redraws = 8;
  bool strict = false;
};

CurveSet load_curves(const std::string& path, std::optional<double> close) {
  CurveSet c = read_curves_file(path);
  c.validate();
  return close ? interpolate_closure(c, *close) : c;
}

std::string describe(const Degenerate& d) {
  std::string s = to_string(d.reason) + ": " + d.detail + " (segments";
  for (const int k : d.segments) s += " " + std::to_string(k);
  return s + ")";
}

Output cmd_project(const ProjectArgs& a, const Common& c, std::ostream& err) {
  const CurveSet curves = load_curves(a.input, a.close);
  Vec3 xi(a.xi[0], a.xi[1], a.xi[2]);
  if (!(xi.norm() > 0)) throw InputError("projection direction must be non-zero");
  xi.normalize();
  const Vec3 requested = xi;
  ProjectionOutcome p = project(curves, xi, a.eps);
  int redraws = 0;
  if (!p.regular()) {
    if (a.strict) throw DegenerateError("degenerate projection along " + vec_str(xi) + ": " + describe(*p.degenerate));
    err << "note: direction " << vec_str(xi) << " is degenerate, " << describe(*p.degenerate) << "\n";
    while (!p.regular() && redraws < a.max_redraws) {
      ++redraws;
      xi = jittered_direction(requested, 0, redraws, a.eps);
      p = project(curves, xi, a.eps);
    }
    if (!p.regular()) {
      throw DegenerateError("every redraw was degenerate; last: " + describe(*p.degenerate));
    }
    err << "note: redrawn " << redraws << " time(s) to " << vec_str(xi) << "\n";
  }
  const Diagram& d = *p.diagram;
  Output o;
  o.inputs = {a.input};
  o.config = {{"xi", vec_json(requested)}, {"eps", a.eps}, {"max_redraws", a.max_redraws}, {"strict", a.strict}};
  if (a.close) o.config["close"] = *a.close;
  o.extra = {{"direction_used", vec_json(xi)}, {"redraws", redraws}, {"crossings", d.crossing_count()}};
  if (c.json_out) {
    json j = diagram_to_json(d);
    j["direction"] = vec_json(xi);
    o.payload = j.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << "# projected along " << vec_str(xi) << "\n";
    text << "# " << d.crossing_count() << " crossings, writhe " << d.writhe() << "\n";
    text << print_diagram(d);
    o.payload = text.str();
  }
  return o;
}

// ---------------------------------------------------------------- sphere, sweep

struct SphereArgs {
  std::string input;
  int samples = 50'000;
  std::string mode = "fib";
  std::uint64_t seed = 1;
  std::optional<double> close;
  int threads = 0;
  double eps = kDefaultProjectionEps;
  int max_redraws = 8;
  int cap = kSphereCrossingCap;
  bool antipodal = false;
  bool census = false;
  bool strict = false;
};

SamplerConfig sampler_config(const SphereArgs& a) {
  SamplerConfig cfg;
  cfg.mode = a.mode == "random" ? SamplingMode::random : SamplingMode::fibonacci;
  cfg.sample_count = a.samples;
  cfg.seed = a.seed;
  cfg.eps = a.eps;
  cfg.max_redraws = a.max_redraws;
  cfg.threads = a.threads;
  cfg.antipodal = a.antipodal;
  cfg.crossing_cap = a.cap;
  cfg.cache_max_entries = cache_limit_from_env();
  return cfg;
}

json sampler_json(const SphereArgs& a, const SamplerConfig& cfg) {
  json j = {{"mode", a.mode},       {"samples", a.samples},         {"eps", a.eps},
            {"max_redraws", a.max_redraws}, {"crossing_cap", a.cap}, {"antipodal", a.antipodal},
            {"threads", a.threads}, {"cache_max_entries", cfg.cache_max_entries}};
  if (a.mode == "random") j["seed"] = a.seed;
  if (a.close) j["close"] = *a.close;
  return j;
}

json cache_json(const SphereEstimate& e) {
  return {{"hits", e.cache_hits}, {"misses", e.cache_misses}, {"entries", e.cache_entries},
          {"hit_rate", e.cache_hit_rate()}};
}

json stderr_json(const SphereEstimate& e, Variable var) {
  json j = json::object();
  for (const auto& [exp, se] : e.stderr_by_exponent) {
    j[var == Variable::A ? std::to_string(exp) : TExponent::from_a_exponent(exp).str()] = se;
  }
  return j;
}

json census_json(const SphereEstimate& e, Variable var) {
  std::vector<const std::pair<const std::string, TypeCount>*> rows;
  for (const auto& row : e.census) rows.push_back(&row);
  std::stable_sort(rows.begin(), rows.end(), [](auto* x, auto* y) { return x->second.count > y->second.count; });
  json out = json::array();
  for (const auto* row : rows) {
    const TypeCount& t = row->second;
    out.push_back({{"signature", row->first},
                   {"count", t.count},
                   {"fraction", static_cast<double>(t.count) / e.samples_used},
                   {"crossings", t.crossings},
                   {"direction", vec_json(t.direction)},
                   {"value", to_json(t.value, var)}});
  }
  return out;
}

void report_cache(std::ostream& err, std::uint64_t hits, std::uint64_t misses, std::size_t entries) {
  char rate[32];
  std::snprintf(rate, sizeof rate, "%.1f%%", hits + misses ? 100.0 * hits / (hits + misses) : 0.0);
  err << "cache: " << hits << " hits, " << misses << " misses, " << entries << " entries, hit rate " << rate << "\n";
}

Output cmd_sphere(const SphereArgs& a, const Common& c, bool want_jones, std::ostream& err) {
  const CurveSet curves = load_curves(a.input, a.close);
  const SamplerConfig cfg = sampler_config(a);
  const SphereEstimate e = want_jones ? estimate_jones(curves, cfg) : estimate_bracket(curves, cfg);
  report_cache(err, e.cache_hits, e.cache_misses, e.cache_entries);
  if (a.strict && e.degenerate_count > 0) {
    throw DegenerateError(std::to_string(e.degenerate_count) + " degenerate direction(s) needed a redraw");
  }
  const Variable var = parse_var(c.var);
  Output o;
  o.inputs = {a.input};
  o.config = sampler_json(a, cfg);
  o.config["variable"] = c.var;
  o.extra = {{"cache", cache_json(e)}, {"degenerate_count", e.degenerate_count}};
  if (c.json_out) {
    json j = {{"command", want_jones ? "sphere-jones" : "sphere-bracket"},
              {"input", a.input},
              {"config", sampler_json(a, cfg)},
              {"mean", to_json(e.mean, var)},
              {"samples_used", e.samples_used},
              {"degenerate_count", e.degenerate_count},
              {"types", e.census.size()}};
    if (cfg.mode == SamplingMode::random) j["stderr"] = stderr_json(e, var);
    if (a.census) j["census"] = census_json(e, var);
    o.payload = j.dump(2) + "\n";
  } else {
    std::ostringstream text;
    text << format(e.mean, var, c.decimals) << "\n";
    text << "samples " << e.samples_used << ", degenerate redraws " << e.degenerate_count << ", diagram types "
         << e.census.size() << "\n";
    if (cfg.mode == SamplingMode::random) {
      double worst = 0;
      for (const auto& [exp, se] : e.stderr_by_exponent) worst = std::max(worst, se);
      text << "largest standard error " << worst << "\n";
    }
    o.payload = text.str();
  }
  return o;
}

struct SweepArgs {
  SphereArgs sphere;
  std::vector<double> s_values;
};

// Columns are s, then one per t exponent present in any row.
std::string sweep_csv(const std::vector<std::pair<double, SphereEstimate>>& rows) {
  std::set<int> a_exps;
  for (const auto& [s, e] : rows) {
    for (const auto& [exp, coef] : e.mean.terms()) a_exps.insert(exp);
  }
  std::ostringstream out;
  out << "s";
  for (auto it = a_exps.rbegin(); it != a_exps.rend(); ++it) out << "," << TExponent::from_a_exponent(*it).str();
  out << "\n";
  char buf[64];
  for (const auto& [s, e] : rows) {
    std::snprintf(buf, sizeof buf, "%.6g", s);
    out << buf;
    for (auto it = a_exps.rbegin(); it != a_exps.rend(); ++it) {
      std::snprintf(buf, sizeof buf, "%.6f", e.mean.coefficient(*it));
      out << "," << buf;
    }
    out << "\n";
  }
  return out.str();
}

Output cmd_sweep(const SweepArgs& a, const Common& c, std::ostream& err) {
  const CurveSet curves = load_curves(a.sphere.input, std::nullopt);
  SamplerConfig cfg = sampler_config(a.sphere);
  BracketCache cache(cfg.cache_max_entries);
  cfg.cache = &cache;
  const auto rows = sweep(curves, a.s_values, cfg);
  report_cache(err, cache.hits(), cache.misses(), cache.size());
  Output o;
  o.inputs = {a.sphere.input};
  o.config = sampler_json(a.sphere, cfg);
  o.config["s"] = a.s_values;
  json stats = json::array();
  for (const auto& [s, e] : rows) stats.push_back({{"s", s}, {"degenerate_count", e.degenerate_count}, {"types", e.census.size()}});
  o.extra = {{"rows", stats}, {"cache_entries", cache.size()}, {"cache_hits", cache.hits()}, {"cache_misses", cache.misses()}};
  if (c.json_out) {
    json j = json::array();
    for (const auto& [s, e] : rows) j.push_back({{"s", s}, {"mean", to_json(e.mean, parse_var(c.var))}});
    o.payload = j.dump(2) + "\n";
  } else {
    o.payload = sweep_csv(rows);
  }
  return o;
}

// ---------------------------------------------------------------- selftest

constexpr const char* kHopfLinkoid = R"(linkoid v1
open 1: a1 X1.u a2 X2.o a3
open 2: a4 X1.o a5 X2.u a6
crossing X1: (a1 a4 a2 a5) sign=-1
crossing X2: (a5 a2 a6 a3) sign=-1
)";

constexpr const char* kOpenBorromean = R"(
R = [[0,0,0],[1,1,0],[2,2,0.5],[3,3,0.5],[4,4,0],[5,5,0],[6,6,0.5],
[7,7,0.5],[8,7,0.5], [9,5,0.2],[9,3,0.2],[8,0,0.2],[8,-1,0.2],
[6,-1.5,0],[4,-2,0],[2,-1.5,0]]
B = [[1,0,0.5],[4,0,0],[5,1,0],[5,4,0.5],[4,5,0.5],[3,6,0],
[2,7,0],[-1,6,0],[-1,3,0.5]]
K = [[6,0,0.5],[7,6,0],[6,7,0],[3,7,0.5],[2,6,0.5],[2,3,0],
[3,2,0],[4,1,0.5]]
)";

ExactPoly poly_from(std::initializer_list<std::pair<int, int>> terms) {
  ExactPoly p;
  for (const auto& [e, c] : terms) p += ExactPoly::monomial(Rational(c), e);
  return p;
}

int cmd_selftest(std::ostream& out) {
  int failed = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << ": " << detail;
    out << "\n";
    if (!ok) ++failed;
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, e.what());
    }
  };

  guarded("hopf-type linkoid", [&] {
    const BracketResult r = jones(parse_diagram(kHopfLinkoid));
    const ExactPoly b = poly_from({{4, -1}, {-4, -1}});
    const ExactPoly j = poly_from({{10, -1}, {2, -1}});
    check("hopf-type linkoid", r.bracket == b && r.jones_A == j, format(r.bracket) + " / " + format(r.jones_A));
  });
  guarded("trivial linkoids", [&] {
    bool ok = true;
    for (int n = 1; n <= 6; ++n) ok = ok && bracket(Diagram::trivial(n)) == d_power(n - 1);
    check("trivial linkoids", ok);
  });
  guarded("right-handed trefoil", [&] {
    const ExactPoly t = from_t(TPoly<Rational>{{TExponent{4}, Rational(1)},
                                               {TExponent{12}, Rational(1)},
                                               {TExponent{16}, Rational(-1)}});
    const ExactPoly j = jones(braid_closure(2, {1, 1, 1})).jones_A;
    check("right-handed trefoil", j == t, format(j, Variable::t));
  });
  guarded("evaluators agree", [&] {
    const Diagram d = from_braid(3, {1, -2, 1, -2, 1, -2}, {});
    check("evaluators agree", bracket_by_enumeration(d) == bracket_by_recursion(d));
  });
  guarded("segment cycle bounds", [&] {
    bool ok = cycle_count(head_leg_pairing(5), head_leg_pairing(5)) == 5;
    const Pairing single = Pairing::parse("(1 3)(2 6)(4 5)");
    ok = ok && cycle_count(single, head_leg_pairing(3)) == 1;
    check("segment cycle bounds", ok);
  });
  guarded("closed borromean over the sphere", [&] {
    const CurveSet c = interpolate_closure(parse_curve_listing(kOpenBorromean), 1.0);
    SamplerConfig cfg;
    cfg.sample_count = 200;
    const SphereEstimate e = estimate_jones(c, cfg);
    const ExactPoly expected = poly_from({{12, -1}, {8, 3}, {4, -2}, {0, 4}, {-4, -2}, {-8, 3}, {-12, -1}});
    bool constant = true;
    for (const auto& [key, t] : e.census) constant = constant && t.value == expected;
    check("closed borromean over the sphere", constant && e.sum == expected.scaled(Rational(200)));
  });
  out << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << "\n";
  return failed ? exit_failure : exit_ok;
}

// ---------------------------------------------------------------- plumbing

void add_sphere_options(CLI::App* cmd, SphereArgs& a, bool with_close) {
  cmd->add_option("input,--curves", a.input, "Curve file (JSON or coordinate listing)")->required();
  cmd->add_option("-n,--samples", a.samples, "Number of directions")->check(CLI::PositiveNumber);
  cmd->add_option("--mode", a.mode, "Direction set")->check(CLI::IsMember({"fib", "random"}));
  cmd->add_option("--seed", a.seed, "Seed for random mode");
  if (with_close) cmd->add_option("--close", a.close, "Append the closure point at this s first")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--threads", a.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--eps", a.eps, "Projection tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-redraws", a.max_redraws, "Redraws per degenerate direction")->check(CLI::PositiveNumber);
  cmd->add_option("--cap", a.cap, "Crossing cap after simplification")->check(CLI::PositiveNumber);
  cmd->add_flag("--antipodal", a.antipodal, "Use N/2 directions and their negatives");
  cmd->add_flag("--strict", a.strict, "Fail if any direction needed a redraw");
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kauffman bracket and Jones polynomial of linkoids and open curves", "linkoid"};
  app.set_version_flag("--version", LINKOID_VERSION);
  app.require_subcommand(1);

  Common common;
  Routing routing;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", common.json_out, "Emit JSON");
    cmd->add_option("--var", common.var, "Output variable")->check(CLI::IsMember({"A", "t"}));
    add_routing(cmd, routing);
  };

  DiagramArgs diag;
  CLI::App* jones_cmd = app.add_subcommand("jones", "Jones polynomial of a diagram file");
  CLI::App* bracket_cmd = app.add_subcommand("bracket", "Kauffman bracket of a diagram file");
  for (CLI::App* cmd : {jones_cmd, bracket_cmd}) {
    cmd->add_option("input,--diagram", diag.input, "Diagram file (text or JSON)")->required();
    cmd->add_option("--cap", diag.cap, "Crossing cap after simplification")->check(CLI::PositiveNumber);
    cmd->add_option("--strategy", diag.strategy, "Evaluator")->check(CLI::IsMember({"auto", "enumerate", "recurse"}));
    cmd->add_flag("--no-simplify", diag.no_simplify, "Skip curl and bigon removal");
  }

  ProjectArgs proj;
  CLI::App* project_cmd = app.add_subcommand("project", "Project curves to a linkoid diagram");
  project_cmd->add_option("input,--curves", proj.input, "Curve file")->required();
  project_cmd->add_option("--xi", proj.xi, "Direction x,y,z")->required()->expected(3)->delimiter(',');
  project_cmd->add_option("--close", proj.close, "Append the closure point at this s first")->check(CLI::Range(0.0, 1.0));
  project_cmd->add_option("--eps", proj.eps, "Projection tolerance")->check(CLI::PositiveNumber);
  project_cmd->add_option("--max-redraws", proj.max_redraws, "Redraws when degenerate")->check(CLI::PositiveNumber);
  project_cmd->add_flag("--strict", proj.strict, "Exit 4 instead of redrawing a degenerate direction");

  SphereArgs sph;
  CLI::App* sj_cmd = app.add_subcommand("sphere-jones", "Sphere-averaged Jones polynomial of curves");
  CLI::App* sb_cmd = app.add_subcommand("sphere-bracket", "Sphere-averaged bracket of curves");
  for (CLI::App* cmd : {sj_cmd, sb_cmd}) {
    add_sphere_options(cmd, sph, true);
    cmd->add_flag("--census", sph.census, "Include the diagram-type census in JSON output");
    cmd->add_option("--decimals", common.decimals, "Decimals in text output")->check(CLI::Range(0, 12));
  }

  SweepArgs sw;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sphere-averaged Jones polynomial along the closure path");
  add_sphere_options(sweep_cmd, sw.sphere, false);
  sweep_cmd->add_option("--s", sw.s_values, "Comma-separated closure parameters")->required()->delimiter(',');

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run built-in golden checks");

  for (CLI::App* cmd : {jones_cmd, bracket_cmd, project_cmd, sj_cmd, sb_cmd, sweep_cmd}) add_common(cmd);

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  // Exact diagram results read naturally in A; sphere averages are tabulated in t.
  if (common.var.empty()) common.var = (chosen == sj_cmd || chosen == sb_cmd || chosen == sweep_cmd) ? "t" : "A";

  const auto start = std::chrono::steady_clock::now();
  try {
    if (chosen == selftest_cmd) return cmd_selftest(out);
    Output result;
    if (chosen == jones_cmd || chosen == bracket_cmd) {
      result = cmd_diagram(diag, common, chosen == jones_cmd);
    } else if (chosen == project_cmd) {
      result = cmd_project(proj, common, err);
    } else if (chosen == sj_cmd || chosen == sb_cmd) {
      result = cmd_sphere(sph, common, chosen == sj_cmd, err);
    } else {
      result = cmd_sweep(sw, common, err);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<std::string> outputs;
    if (!routing.out_path.empty()) {
      write_file(routing.out_path, result.payload);
      outputs.push_back(routing.out_path);
    } else {
      out << result.payload;
    }
    std::string manifest = routing.manifest_path;
    if (manifest.empty() && !routing.out_path.empty()) manifest = routing.out_path + ".manifest.json";
    if (!manifest.empty()) {
      write_file(manifest, manifest_json(name, std::vector<std::string>(args.begin() + 1, args.end()), result,
                                         outputs, seconds)
                                   .dump(2) +
                               "\n");
    }
    return exit_ok;
  } catch (const CrossingCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_cap;
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << "\n";
    return exit_degenerate;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const DiagramError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
}

}  // namespace linkoid::cli
