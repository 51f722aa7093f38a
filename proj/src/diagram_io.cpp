#include "linkoid/diagram_io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

namespace linkoid {

namespace {

struct RawComponent {
  bool open = true;
  int leg = 0;
  int head = 0;
  std::vector<std::string> walk;
  std::string where;
};

struct RawCrossing {
  std::string name;
  std::array<std::string, 4> slots;
  std::optional<int> sign;
  std::string where;
};

struct RawDiagram {
  std::vector<RawComponent> components;
  std::vector<RawCrossing> crossings;
};

struct ArcUse {
  int component = -1;
  int position = -1;  // index of the walk token
};

// Passage bookkeeping gathered from the walks, keyed by crossing.
struct PassageArcs {
  std::string in;
  std::string out;
  bool seen = false;
};

Diagram build(const RawDiagram& raw) {
  std::map<std::string, int> crossing_id;
  for (const auto& x : raw.crossings) {
    if (!crossing_id.emplace(x.name, static_cast<int>(crossing_id.size())).second) {
      throw ParseError(x.where + ": crossing " + x.name + " declared twice");
    }
  }
  const std::size_t c = raw.crossings.size();
  std::vector<PassageArcs> under(c), over(c);
  std::map<std::string, ArcUse> arcs;

  std::vector<OpenComponent> open;
  std::vector<ClosedComponent> closed;
  for (std::size_t k = 0; k < raw.components.size(); ++k) {
    const RawComponent& comp = raw.components[k];
    const auto& w = comp.walk;
    if (w.empty()) throw ParseError(comp.where + ": empty walk");
    const bool single_circle = !comp.open && w.size() == 1;
    if (comp.open && w.size() % 2 == 0) {
      throw ParseError(comp.where + ": open walk must start and end with an arc");
    }
    if (!comp.open && !single_circle && w.size() % 2 != 0) {
      throw ParseError(comp.where + ": closed walk must alternate arc, crossing and end on a crossing");
    }
    std::vector<Passage> passages;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const std::string& tok = w[i];
      if (i % 2 == 0) {
        if (tok.find('.') != std::string::npos) {
          throw ParseError(comp.where + ": expected an arc name, found " + tok);
        }
        if (!arcs.emplace(tok, ArcUse{static_cast<int>(k), static_cast<int>(i)}).second) {
          throw ParseError(comp.where + ": arc " + tok + " appears twice in the walks");
        }
        continue;
      }
      const auto dot = tok.rfind('.');
      if (dot == std::string::npos || dot + 2 != tok.size() || (tok[dot + 1] != 'u' && tok[dot + 1] != 'o')) {
        throw ParseError(comp.where + ": expected NAME.u or NAME.o, found " + tok);
      }
      const std::string name = tok.substr(0, dot);
      const auto it = crossing_id.find(name);
      if (it == crossing_id.end()) throw ParseError(comp.where + ": undeclared crossing " + name);
      const Level level = tok[dot + 1] == 'o' ? Level::over : Level::under;
      PassageArcs& pa = (level == Level::over ? over : under)[it->second];
      if (pa.seen) {
        throw ParseError(comp.where + ": crossing " + name + " passed " +
                         (level == Level::over ? "over" : "under") + " twice");
      }
      pa.seen = true;
      pa.in = w[i - 1];
      pa.out = i + 1 < w.size() ? w[i + 1] : w[0];
      passages.push_back(Passage{it->second, level});
    }
    if (comp.open) {
      open.push_back(OpenComponent{comp.leg, comp.head, std::move(passages)});
    } else {
      closed.push_back(ClosedComponent{std::move(passages)});
    }
  }

  std::vector<int> signs(c, 0);
  for (std::size_t x = 0; x < c; ++x) {
    const RawCrossing& rc = raw.crossings[x];
    for (const auto& a : rc.slots) {
      if (!arcs.count(a)) throw ParseError(rc.where + ": dangling arc reference " + a);
    }
    if (!under[x].seen || !over[x].seen) {
      throw ParseError(rc.where + ": crossing " + rc.name + " is not passed once under and once over");
    }
    if (rc.slots[0] != under[x].in || rc.slots[2] != under[x].out) {
      throw ParseError(rc.where + ": orientation mismatch at crossing " + rc.name +
                       " (slots 0 and 2 must be the incoming and outgoing under arcs)");
    }
    const bool positive = rc.slots[3] == over[x].in && rc.slots[1] == over[x].out;
    const bool negative = rc.slots[1] == over[x].in && rc.slots[3] == over[x].out;
    if (!positive && !negative) {
      throw ParseError(rc.where + ": orientation mismatch at crossing " + rc.name +
                       " (slots 1 and 3 must hold the over arcs)");
    }
    if (positive && negative) {
      if (!rc.sign) throw ParseError(rc.where + ": sign of crossing " + rc.name + " is ambiguous; give sign=");
      signs[x] = *rc.sign;
    } else {
      signs[x] = positive ? 1 : -1;
      if (rc.sign && *rc.sign != signs[x]) {
        throw ParseError(rc.where + ": declared sign of crossing " + rc.name +
                         " disagrees with the strand orientations");
      }
    }
  }
  try {
    return Diagram(std::move(open), std::move(closed), std::move(signs));
  } catch (const DiagramError& e) {
    throw ParseError(e.what());
  }
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(where + ": expected an integer, found '" + s + "'");
  }
}

// Names used in printed diagrams.
struct Naming {
  std::vector<std::string> arc;
  std::vector<std::string> crossing;
};

// Arcs are named in the order the printed walks visit them.
Naming names_for(const Diagram& d) {
  Naming n;
  n.arc.resize(d.planar_code().arcs.size());
  std::size_t arc = 0;
  int next = 0;
  auto name = [&](std::size_t index) { n.arc[index] = "a" + std::to_string(++next); };
  for (const auto& comp : d.open_components()) {
    for (std::size_t k = 0; k <= comp.passages.size(); ++k) name(arc++);
  }
  for (const auto& comp : d.closed_components()) {
    const std::size_t m = comp.passages.size();
    for (std::size_t k = 0; k < m; ++k) name(arc + (k + m - 1) % m);
    arc += m;
  }
  for (int x = 0; x < d.crossing_count(); ++x) n.crossing.push_back("X" + std::to_string(x + 1));
  return n;
}

// Walk tokens of each component in planar-code arc order.
std::vector<std::vector<std::string>> walks_for(const Diagram& d, const Naming& n) {
  std::vector<std::vector<std::string>> walks;
  std::size_t arc = 0;
  auto passage = [&](const Passage& p) {
    return n.crossing[p.crossing] + (p.level == Level::over ? ".o" : ".u");
  };
  for (const auto& comp : d.open_components()) {
    std::vector<std::string> w{n.arc[arc++]};
    for (const auto& p : comp.passages) {
      w.push_back(passage(p));
      w.push_back(n.arc[arc++]);
    }
    walks.push_back(std::move(w));
  }
  int circles = 0;
  for (const auto& comp : d.closed_components()) {
    std::vector<std::string> w;
    if (comp.passages.empty()) {
      // Bare circles have no arc in the planar code; give them their own names.
      w.push_back("c" + std::to_string(++circles));
    }
    // Closed arc k runs from passage k to passage k+1, so the walk opens
    // with the arc that returns to the first passage.
    const std::size_t m = comp.passages.size();
    for (std::size_t k = 0; k < m; ++k) {
      w.push_back(n.arc[arc + (k + m - 1) % m]);
      w.push_back(passage(comp.passages[k]));
    }
    arc += m;
    walks.push_back(std::move(w));
  }
  return walks;
}

}  // namespace

Diagram parse_diagram(std::string_view text) {
  RawDiagram raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  static const std::regex component_re(R"(^\s*(open|closed)\s+(\d+)\s*(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))?\s*:(.*)$)");
  static const std::regex crossing_re(R"(^\s*crossing\s+(\S+)\s*:\s*\(([^)]*)\)\s*(sign\s*=\s*([+-]?1))?\s*$)");
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!header) {
      if (split_ws(line) != std::vector<std::string>{"linkoid", "v1"}) {
        throw ParseError(where + ": expected header 'linkoid v1'");
      }
      header = true;
      continue;
    }
    std::smatch m;
    if (std::regex_match(line, m, component_re)) {
      RawComponent comp;
      comp.where = where;
      comp.open = m[1] == "open";
      comp.walk = split_ws(m[6]);
      if (comp.open) {
        const int j = parse_int(m[2], where);
        if (m[3].matched) {
          comp.leg = parse_int(m[4], where);
          comp.head = parse_int(m[5], where);
        } else {
          comp.leg = 2 * j - 1;
          comp.head = 2 * j;
        }
      } else if (m[3].matched) {
        throw ParseError(where + ": closed components carry no endpoint labels");
      }
      raw.components.push_back(std::move(comp));
    } else if (std::regex_match(line, m, crossing_re)) {
      RawCrossing x;
      x.where = where;
      x.name = m[1];
      const auto slots = split_ws(m[2]);
      if (slots.size() != 4) throw ParseError(where + ": crossing needs exactly four arcs");
      std::copy(slots.begin(), slots.end(), x.slots.begin());
      if (m[3].matched) x.sign = parse_int(m[4], where);
      raw.crossings.push_back(std::move(x));
    } else {
      throw ParseError(where + ": unrecognised line '" + line + "'");
    }
  }
  if (!header) throw ParseError("missing header 'linkoid v1'");
  return build(raw);
}

std::string print_diagram(const Diagram& input) {
  const Diagram d = input.canonical();
  const Naming n = names_for(d);
  const auto walks = walks_for(d, n);
  std::ostringstream out;
  out << "linkoid v1\n";
  std::size_t k = 0;
  for (int j = 1; j <= d.open_count(); ++j, ++k) {
    const auto& comp = d.open_components()[j - 1];
    out << "open " << j;
    if (comp.leg != 2 * j - 1 || comp.head != 2 * j) out << " (" << comp.leg << ',' << comp.head << ')';
    out << ':';
    for (const auto& tok : walks[k]) out << ' ' << tok;
    out << '\n';
  }
  for (int j = 1; j <= d.closed_count(); ++j, ++k) {
    out << "closed " << j << ':';
    for (const auto& tok : walks[k]) out << ' ' << tok;
    out << '\n';
  }
  const auto& code = d.planar_code();
  for (int x = 0; x < d.crossing_count(); ++x) {
    out << "crossing " << n.crossing[x] << ": (";
    for (int s = 0; s < 4; ++s) out << (s ? " " : "") << n.arc[code.crossings[x][s]];
    out << ") sign=" << (d.sign(x) > 0 ? "+1" : "-1") << '\n';
  }
  return out.str();
}

nlohmann::json diagram_to_json(const Diagram& input) {
  const Diagram d = input.canonical();
  const Naming n = names_for(d);
  const auto walks = walks_for(d, n);
  nlohmann::json comps = nlohmann::json::array();
  std::size_t k = 0;
  for (const auto& comp : d.open_components()) {
    comps.push_back({{"kind", "open"}, {"leg", comp.leg}, {"head", comp.head}, {"walk", walks[k++]}});
  }
  for (std::size_t j = 0; j < d.closed_components().size(); ++j) {
    comps.push_back({{"kind", "closed"}, {"walk", walks[k++]}});
  }
  nlohmann::json crossings = nlohmann::json::array();
  const auto& code = d.planar_code();
  for (int x = 0; x < d.crossing_count(); ++x) {
    nlohmann::json slots = nlohmann::json::array();
    for (int s = 0; s < 4; ++s) slots.push_back(n.arc[code.crossings[x][s]]);
    crossings.push_back({{"name", n.crossing[x]}, {"slots", slots}, {"sign", d.sign(x)}});
  }
  return {{"format", "linkoid-v1"}, {"components", comps}, {"crossings", crossings}};
}

Diagram diagram_from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "linkoid-v1") throw ParseError("JSON diagram must have format 'linkoid-v1'");
    RawDiagram raw;
    int open_index = 0;
    for (std::size_t k = 0; k < j.at("components").size(); ++k) {
      const auto& jc = j.at("components")[k];
      RawComponent comp;
      comp.where = "component " + std::to_string(k + 1);
      const std::string kind = jc.at("kind").get<std::string>();
      if (kind != "open" && kind != "closed") throw ParseError(comp.where + ": unknown kind " + kind);
      comp.open = kind == "open";
      if (comp.open) {
        ++open_index;
        comp.leg = jc.value("leg", 2 * open_index - 1);
        comp.head = jc.value("head", 2 * open_index);
      }
      comp.walk = jc.at("walk").get<std::vector<std::string>>();
      raw.components.push_back(std::move(comp));
    }
    for (const auto& jx : j.at("crossings")) {
      RawCrossing x;
      x.name = jx.at("name").get<std::string>();
      x.where = "crossing " + x.name;
      const auto slots = jx.at("slots").get<std::vector<std::string>>();
      if (slots.size() != 4) throw ParseError(x.where + ": crossing needs exactly four arcs");
      std::copy(slots.begin(), slots.end(), x.slots.begin());
      if (jx.contains("sign")) x.sign = jx.at("sign").get<int>();
      raw.crossings.push_back(std::move(x));
    }
    return build(raw);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON diagram: ") + e.what());
  }
}

Diagram read_diagram_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open diagram file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    return diagram_from_json(j);
  }
  return parse_diagram(text);
}

}  // namespace linkoid
