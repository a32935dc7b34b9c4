#include "mbs/chain.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mbs/errors.hpp"

namespace mbs {

using nlohmann::json;

std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "open";
}

Boundary boundary_from_string(std::string_view s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw Error(ErrorKind::InvalidArgument,
              "boundary must be \"open\" or \"periodic\", got \"" + std::string(s) + "\"");
}

bool at_sweet_spot(const SegmentParams& s, double tol) {
  return std::abs(s.mu) <= tol && std::abs(s.delta - s.t) <= tol;
}

int ValidatedConfig::index_of(int site) const {
  if (!contains(site)) {
    throw Error(ErrorKind::SiteOutOfRange,
                "site " + std::to_string(site) + " outside " + std::to_string(first_site()) +
                    ".." + std::to_string(last_site()));
  }
  return site + config_.left.length;
}

namespace {

void check_length(std::vector<Violation>& out, const std::string& field, int length) {
  if (length < 1) {
    out.push_back({ErrorKind::NonPositiveLength, field, "length must be >= 1, got " +
                                                            std::to_string(length)});
  }
}

void check_amplitude(std::vector<Violation>& out, const std::string& field, double value,
                     AmplitudeSigns signs) {
  if (!std::isfinite(value)) {
    out.push_back({ErrorKind::InvalidConfig, field, "must be finite"});
  } else if (signs == AmplitudeSigns::nonnegative && value < 0.0) {
    std::ostringstream msg;
    msg << "must be >= 0, got " << value;
    out.push_back({ErrorKind::NegativeAmplitude, field, msg.str()});
  }
}

}  // namespace

ValidatedConfig validate(const ChainConfig& config, AmplitudeSigns signs) {
  std::vector<Violation> violations;
  check_length(violations, "left.length", config.left.length);
  check_length(violations, "center.length", config.center.base.length);
  check_length(violations, "right.length", config.right.length);

  check_amplitude(violations, "left.t", config.left.t, signs);
  check_amplitude(violations, "left.delta", config.left.delta, signs);
  check_amplitude(violations, "center.t", config.center.base.t, signs);
  check_amplitude(violations, "center.delta", config.center.base.delta, signs);
  check_amplitude(violations, "center.t2", config.center.t2, signs);
  check_amplitude(violations, "center.delta2", config.center.delta2, signs);
  check_amplitude(violations, "right.t", config.right.t, signs);
  check_amplitude(violations, "right.delta", config.right.delta, signs);
  check_amplitude(violations, "junction.t1", config.junction.t1, signs);
  check_amplitude(violations, "junction.t2", config.junction.t2, signs);
  check_amplitude(violations, "junction.t1p", config.junction.t1p, signs);
  check_amplitude(violations, "junction.t2p", config.junction.t2p, signs);
  check_amplitude(violations, "junction.delta1", config.junction.delta1, signs);
  check_amplitude(violations, "junction.delta2", config.junction.delta2, signs);
  for (auto [field, mu] : {std::pair{"left.mu", config.left.mu},
                           std::pair{"center.mu", config.center.base.mu},
                           std::pair{"right.mu", config.right.mu}}) {
    if (!std::isfinite(mu)) violations.push_back({ErrorKind::InvalidConfig, field, "must be finite"});
  }

  if (violations.empty() && config.center.base.length < 2 &&
      (config.junction.t1p != 0.0 || config.junction.t2p != 0.0)) {
    violations.push_back({ErrorKind::InvalidConfig, "junction.t1p",
                          "long-range junction bonds need a centre of at least 2 sites"});
  }
  if (!violations.empty()) throw ConfigError(std::move(violations));

  ValidatedConfig v;
  v.config_ = config;
  v.site_count_ = config.left.length + config.center.base.length + config.right.length;
  v.left_sweet_ = at_sweet_spot(config.left);
  v.right_sweet_ = at_sweet_spot(config.right);
  if (!v.left_sweet_) v.warnings_.emplace_back("left segment is off the sweet spot (mu = 0, delta = t)");
  if (!v.right_sweet_) v.warnings_.emplace_back("right segment is off the sweet spot (mu = 0, delta = t)");
  return v;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

int line_of_byte(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

const json& require(const json& obj, const std::string& parent, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw Error(ErrorKind::SchemaError, "missing field \"" + parent + "." + key + "\"");
  }
  return *it;
}

const json& require_object(const json& root, const char* key) {
  auto it = root.find(key);
  if (it == root.end()) throw Error(ErrorKind::SchemaError, std::string("missing field \"") + key + "\"");
  if (!it->is_object()) throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\" must be an object");
  return *it;
}

double as_number(const json& value, const std::string& field) {
  if (!value.is_number()) {
    throw Error(ErrorKind::ParseError, "field \"" + field + "\" must be a number, got " + value.dump());
  }
  return value.get<double>();
}

double number_or(const json& obj, const std::string& parent, const char* key, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, parent + "." + key);
}

int as_length(const json& value, const std::string& field) {
  if (value.is_number_integer()) return value.get<int>();
  if (value.is_number_float()) {
    double d = value.get<double>();
    if (std::floor(d) == d) return static_cast<int>(d);
  }
  throw Error(ErrorKind::ParseError, "field \"" + field + "\" must be an integer, got " + value.dump());
}

SegmentParams read_segment(const json& obj, const std::string& name) {
  SegmentParams s;
  s.mu = as_number(require(obj, name, "mu"), name + ".mu");
  s.t = as_number(require(obj, name, "t"), name + ".t");
  s.delta = as_number(require(obj, name, "delta"), name + ".delta");
  s.length = as_length(require(obj, name, "length"), name + ".length");
  return s;
}

json write_segment(const SegmentParams& s) {
  return json{{"mu", s.mu}, {"t", s.t}, {"delta", s.delta}, {"length", s.length}};
}

}  // namespace

ChainConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_of_byte(json_text, e.byte)) + ": " + e.what());
  }
  if (!root.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");

  ChainConfig c;
  c.left = read_segment(require_object(root, "left"), "left");
  const json& center = require_object(root, "center");
  c.center.base = read_segment(center, "center");
  c.center.t2 = number_or(center, "center", "t2", 0.0);
  c.center.delta2 = number_or(center, "center", "delta2", 0.0);
  c.right = read_segment(require_object(root, "right"), "right");

  const json& junction = require_object(root, "junction");
  c.junction.t1 = as_number(require(junction, "junction", "t1"), "junction.t1");
  c.junction.t2 = as_number(require(junction, "junction", "t2"), "junction.t2");
  c.junction.t1p = number_or(junction, "junction", "t1p", 0.0);
  c.junction.t2p = number_or(junction, "junction", "t2p", 0.0);
  c.junction.delta1 = number_or(junction, "junction", "delta1", 0.0);
  c.junction.delta2 = number_or(junction, "junction", "delta2", 0.0);

  if (auto it = root.find("boundary"); it != root.end()) {
    if (!it->is_string()) throw Error(ErrorKind::ParseError, "field \"boundary\" must be a string");
    try {
      c.boundary = boundary_from_string(it->get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.message());
    }
  }
  return c;
}

ChainConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

std::string dump_config(const ChainConfig& c) {
  json center = write_segment(c.center.base);
  center["t2"] = c.center.t2;
  center["delta2"] = c.center.delta2;
  json root{
      {"left", write_segment(c.left)},
      {"center", center},
      {"right", write_segment(c.right)},
      {"junction",
       {{"t1", c.junction.t1},
        {"t2", c.junction.t2},
        {"t1p", c.junction.t1p},
        {"t2p", c.junction.t2p},
        {"delta1", c.junction.delta1},
        {"delta2", c.junction.delta2}}},
      {"boundary", std::string(to_string(c.boundary))},
  };
  return root.dump(2) + "\n";
}

void save_config(const ChainConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << dump_config(config);
}

}  // namespace mbs
