#include "relhyp/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "relhyp/bcp.hpp"
#include "relhyp/errors.hpp"

namespace relhyp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> splitList(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
T parseNumber(std::string_view text, const std::string& where) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError(where + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parseBool(std::string_view text, const std::string& where) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw InputError(where + ": expected true or false, got '" + std::string(text) + "'");
}

std::string joinInts(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace

PeripheralDecl parsePeripheralDecl(std::string label, std::string_view spec) {
  PeripheralDecl d;
  d.label = std::move(label);
  if (spec == "whole") {
    d.kind = PeripheralKind::Whole;
  } else if (spec.substr(0, 7) == "cyclic:") {
    d.kind = PeripheralKind::Cyclic;
    d.word = std::string(trim(spec.substr(7)));
    if (d.word.empty()) throw InputError("peripheral." + d.label + ".word: missing");
  } else if (spec.substr(0, 7) == "factor:") {
    d.kind = PeripheralKind::Factor;
    d.factor = parseNumber<std::size_t>(trim(spec.substr(7)), "peripheral." + d.label + ".index");
  } else {
    throw InputError("peripheral." + d.label + ": expected cyclic:<word>, factor:<index> or whole");
  }
  return d;
}

std::string formatPeripheralDecl(const PeripheralDecl& d) {
  switch (d.kind) {
    case PeripheralKind::Cyclic: return "cyclic:" + d.word;
    case PeripheralKind::Factor: return "factor:" + std::to_string(d.factor);
    case PeripheralKind::Whole: return "whole";
  }
  return "whole";
}

PeripheralFamily buildFamily(const GroupOracle& oracle, const std::vector<PeripheralDecl>& decls) {
  std::vector<PeripheralSpec> reps;
  for (const PeripheralDecl& d : decls) {
    const std::string where = "peripheral." + d.label;
    try {
      switch (d.kind) {
        case PeripheralKind::Cyclic: reps.push_back(PeripheralSpec::cyclic(oracle, d.label, oracle.parseWord(d.word))); break;
        case PeripheralKind::Factor: reps.push_back(PeripheralSpec::factor(oracle, d.label, d.factor)); break;
        case PeripheralKind::Whole: reps.push_back(PeripheralSpec::whole(oracle, d.label)); break;
      }
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return PeripheralFamily(std::move(reps));
}

std::pair<int, int> parseLambda(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  int num = parseNumber<int>(trim(text.substr(0, slash)), "lambda");
  int den = slash == std::string_view::npos ? 1 : parseNumber<int>(trim(text.substr(slash + 1)), "lambda");
  if (den <= 0 || num < den) throw InputError("lambda: must be a fraction >= 1, got '" + std::string(text) + "'");
  return {num, den};
}

std::string formatLambda(std::pair<int, int> lambda) {
  return lambda.second == 1 ? std::to_string(lambda.first)
                            : std::to_string(lambda.first) + "/" + std::to_string(lambda.second);
}

std::vector<int> parseRadii(std::string_view text) {
  std::vector<int> out;
  for (auto item : splitList(text)) {
    int r = parseNumber<int>(item, "radii");
    if (r < 0) throw InputError("radii: must be >= 0");
    if (!out.empty() && r <= out.back()) throw InputError("radii: must be strictly increasing, got '" + std::string(text) + "'");
    out.push_back(r);
  }
  return out;
}

RunConfig parseConfig(std::string_view text) {
  RunConfig c;
  std::string section;
  std::string peripheral;
  std::set<std::string> sections;
  std::set<std::string> seenKeys;
  std::size_t lineNo = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineNo;
    const std::string at = "line " + std::to_string(lineNo);
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw InputError(at + ": unterminated section header");
      auto name = trim(line.substr(1, line.size() - 2));
      if (name.substr(0, 11) == "peripheral ") {
        peripheral = std::string(trim(name.substr(11)));
        if (peripheral.empty()) throw InputError(at + ": peripheral section needs a label");
        for (const auto& p : c.peripherals) {
          if (p.label == peripheral) throw InputError(at + ": duplicate peripheral '" + peripheral + "'");
        }
        c.peripherals.push_back({peripheral, PeripheralKind::Cyclic, "", 0});
        section = "peripheral";
        sections.insert("peripheral " + peripheral);
        continue;
      }
      section = std::string(name);
      static const std::set<std::string> known{"group", "space", "delta", "bcp", "fineness", "boundary", "run"};
      if (!known.count(section)) throw InputError(at + ": unknown section [" + section + "]");
      if (!sections.insert(section).second) throw InputError(at + ": repeated section [" + section + "]");
      if (section == "delta") c.delta = true;
      if (section == "bcp") c.bcp = true;
      if (section == "fineness") c.fineness = true;
      if (section == "boundary") c.boundary = true;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError(at + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) throw InputError(at + ": key '" + key + "' outside any section");
    const std::string path = (section == "peripheral" ? "peripheral." + peripheral : section) + "." + key;
    if (!seenKeys.insert(path).second) throw InputError(at + ": repeated key " + path);
    auto unknown = [&] { throw InputError("unknown key " + path); };
    try {
      if (section == "group") {
        if (key == "family") c.family = std::string(value);
        else unknown();
      } else if (section == "peripheral") {
        PeripheralDecl& d = c.peripherals.back();
        if (key == "kind") {
          if (value == "cyclic") d.kind = PeripheralKind::Cyclic;
          else if (value == "factor") d.kind = PeripheralKind::Factor;
          else if (value == "whole") d.kind = PeripheralKind::Whole;
          else throw InputError(path + ": expected cyclic, factor or whole");
        } else if (key == "word") {
          d.word = std::string(value);
        } else if (key == "index") {
          d.factor = parseNumber<std::size_t>(value, path);
        } else {
          unknown();
        }
      } else if (section == "space") {
        if (key == "kind") c.space = parseSpaceKind(value);
        else if (key == "radii") c.radii = parseRadii(value);
        else if (key == "depth") c.depth = value == "auto" ? std::nullopt : std::optional<int>(parseNumber<int>(value, path));
        else if (key == "margin") c.margin = value == "auto" ? std::nullopt : std::optional<int>(parseNumber<int>(value, path));
        else if (key == "exports") {
          c.graphExports.clear();
          for (auto f : splitList(value)) {
            if (f != "dot" && f != "json" && f != "csv") throw InputError(path + ": unknown graph format '" + std::string(f) + "'");
            c.graphExports.emplace_back(f);
          }
        } else unknown();
      } else if (section == "delta") {
        if (key == "policy") c.policy = std::string(value);
        else if (key == "samples") c.samples = parseNumber<std::uint64_t>(value, path);
        else if (key == "slim") c.slim = parseBool(value, path);
        else unknown();
      } else if (section == "bcp") {
        if (key == "lambda") {
          c.lambdas.clear();
          for (auto l : splitList(value)) c.lambdas.push_back(parseLambda(l));
        } else if (key == "allow_large_lambda") {
          c.largeLambda = parseBool(value, path);
        } else if (key == "budget") {
          c.budget = parseNumber<std::uint64_t>(value, path);
        } else {
          unknown();
        }
      } else if (section == "fineness") {
        if (key == "length") c.circuitLength = parseNumber<int>(value, path);
        else if (key == "edge") c.finenessEdge = std::string(value);
        else if (key == "peripheral") c.finenessPeripheral = std::string(value);
        else unknown();
      } else if (section == "boundary") {
        if (key == "epsilon") {
          try {
            std::size_t used = 0;
            c.epsilon = std::stod(std::string(value), &used);
            if (used != value.size()) throw std::invalid_argument("trailing");
          } catch (const std::exception&) {
            throw InputError(path + ": expected a number");
          }
          if (!(c.epsilon > 0)) throw InputError(path + ": must be positive");
        } else if (key == "radius") {
          c.boundaryRadius = parseNumber<int>(value, path);
        } else {
          unknown();
        }
      } else if (section == "run") {
        if (key == "seed") c.seed = parseNumber<std::uint64_t>(value, path);
        else if (key == "vertex_cap") c.vertexCap = parseNumber<std::size_t>(value, path);
        else if (key == "output") c.output = std::string(value);
        else unknown();
      }
    } catch (const InputError& e) {
      throw InputError(at + ": " + e.what());
    }
  }

  // Semantic checks against the group.
  GroupOracle oracle = [&] {
    try {
      return GroupOracle(parseFamily(c.family));
    } catch (const InputError& e) {
      throw InputError(std::string("group.family: ") + e.what());
    }
  }();
  for (const PeripheralDecl& d : c.peripherals) {
    if (d.kind == PeripheralKind::Cyclic && d.word.empty()) throw InputError("peripheral." + d.label + ".word: missing");
  }
  PeripheralFamily family = buildFamily(oracle, c.peripherals);

  if (c.radii.empty()) throw InputError("space.radii: empty");
  if (c.depth && *c.depth < 0) throw InputError("space.depth: must be >= 0");
  if (c.margin && *c.margin < 0) throw InputError("space.margin: must be >= 0");
  if (c.margin && *c.margin > c.radii.front()) throw InputError("space.margin: larger than the smallest radius");
  if (c.delta) {
    if (c.policy != "auto" && c.policy != "exhaustive" && c.policy != "sampled") {
      throw InputError("delta.policy: expected auto, exhaustive or sampled");
    }
    if (c.samples == 0) throw InputError("delta.samples: must be positive");
    if (c.radii.size() < 3) throw InputError("space.radii: a delta scan needs at least three radii");
  }
  if (c.bcp) {
    for (auto l : c.lambdas) {
      if (l.first > 2 * l.second && !c.largeLambda) {
        throw InputError("bcp.lambda: " + formatLambda(l) + " exceeds 2; set allow_large_lambda = true");
      }
    }
    try {
      checkBcpFamily(family);
    } catch (const InputError& e) {
      throw InputError(std::string("bcp: ") + e.what());
    }
  }
  if (c.fineness) {
    if (c.circuitLength < 1) throw InputError("fineness.length: must be >= 1");
    if (c.finenessEdge != "cone" && c.finenessEdge != "identity") {
      throw InputError("fineness.edge: expected cone or identity");
    }
    if (c.finenessEdge == "cone") {
      if (c.space != SpaceKind::Coned) throw InputError("fineness.edge: cone edges need space.kind = coned");
      if (c.peripherals.empty()) throw InputError("fineness.edge: cone edges need a peripheral");
    }
    if (!c.finenessPeripheral.empty()) {
      bool found = false;
      for (const auto& d : c.peripherals) found = found || d.label == c.finenessPeripheral;
      if (!found) throw InputError("fineness.peripheral: unknown label '" + c.finenessPeripheral + "'");
    }
  }
  if (c.boundary && c.boundaryRadius && *c.boundaryRadius < 1) throw InputError("boundary.radius: must be >= 1");
  if (c.vertexCap == 0) throw InputError("run.vertex_cap: must be positive");
  if (c.output.empty()) throw InputError("run.output: empty");
  return c;
}

std::string formatConfig(const RunConfig& c) {
  std::ostringstream os;
  os << "[group]\nfamily = " << c.family << "\n";
  for (const PeripheralDecl& d : c.peripherals) {
    os << "\n[peripheral " << d.label << "]\n";
    switch (d.kind) {
      case PeripheralKind::Cyclic: os << "kind = cyclic\nword = " << d.word << "\n"; break;
      case PeripheralKind::Factor: os << "kind = factor\nindex = " << d.factor << "\n"; break;
      case PeripheralKind::Whole: os << "kind = whole\n"; break;
    }
  }
  os << "\n[space]\nkind = " << spaceKindName(c.space) << "\nradii = " << joinInts(c.radii) << "\n";
  os << "depth = " << (c.depth ? std::to_string(*c.depth) : "auto") << "\n";
  os << "margin = " << (c.margin ? std::to_string(*c.margin) : "auto") << "\n";
  if (!c.graphExports.empty()) {
    os << "exports = ";
    for (std::size_t i = 0; i < c.graphExports.size(); ++i) os << (i ? "," : "") << c.graphExports[i];
    os << "\n";
  }
  if (c.delta) {
    os << "\n[delta]\npolicy = " << c.policy << "\nsamples = " << c.samples << "\nslim = " << (c.slim ? "true" : "false")
       << "\n";
  }
  if (c.bcp) {
    os << "\n[bcp]\nlambda = ";
    for (std::size_t i = 0; i < c.lambdas.size(); ++i) os << (i ? "," : "") << formatLambda(c.lambdas[i]);
    os << "\nallow_large_lambda = " << (c.largeLambda ? "true" : "false") << "\nbudget = " << c.budget << "\n";
  }
  if (c.fineness) {
    os << "\n[fineness]\nlength = " << c.circuitLength << "\nedge = " << c.finenessEdge << "\n";
    if (!c.finenessPeripheral.empty()) os << "peripheral = " << c.finenessPeripheral << "\n";
  }
  if (c.boundary) {
    os << "\n[boundary]\n";
    if (c.epsilon > 0) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", c.epsilon);
      os << "epsilon = " << buf << "\n";
    }
    if (c.boundaryRadius) os << "radius = " << *c.boundaryRadius << "\n";
  }
  os << "\n[run]\nseed = " << c.seed << "\nvertex_cap = " << c.vertexCap << "\noutput = " << c.output << "\n";
  return os.str();
}

}  // namespace relhyp
