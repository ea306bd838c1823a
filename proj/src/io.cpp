#include "gbdp/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gbdp/errors.hpp"

namespace gbdp {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!obj.contains(k)) throw ParseError(where + ": missing key '" + k + "'");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

State get_state(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a coordinate list");
  State u;
  for (const auto& c : j) u.push_back(get_int(c, where));
  return u;
}

json parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return doc;
}

void check_version(const json& doc) {
  if (get_int(doc.at("format_version"), "format_version") != kFormatVersion) {
    throw ParseError("unsupported format_version (expected " + std::to_string(kFormatVersion) + ")");
  }
}

GridShape shape_from(const json& j) {
  check_keys(j, "shape", {"q", "dims", "l1", "l2"});
  GridShape s;
  const int q = get_int(j.at("q"), "shape.q");
  if (!j.at("dims").is_array()) throw ParseError("shape.dims: expected a list");
  for (const auto& n : j.at("dims")) s.dims.push_back(get_int(n, "shape.dims"));
  if (static_cast<int>(s.dims.size()) != q) throw ParseError("shape.q does not match dims length");
  s.l1 = get_int(j.at("l1"), "shape.l1");
  s.l2 = get_int(j.at("l2"), "shape.l2");
  validate_shape(s);
  return s;
}

json shape_to(const GridShape& s) {
  return json{{"q", s.q()}, {"dims", s.dims}, {"l1", s.l1}, {"l2", s.l2}};
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

GridShape parse_shape_json(const std::string& text) { return shape_from(parse_document(text)); }

TransitionModel parse_model(const std::string& text) {
  const json doc = parse_document(text);
  check_keys(doc, "model", {"format_version", "shape", "edges"}, {"self", "absorbing"});
  check_version(doc);
  GridShape shape = shape_from(doc.at("shape"));

  if (!doc.at("edges").is_array()) throw ParseError("edges: expected a list");
  std::vector<EdgeProb> edges;
  for (const auto& e : doc.at("edges")) {
    check_keys(e, "edge", {"from", "to", "prob"});
    edges.push_back({get_state(e.at("from"), "edge.from"), get_state(e.at("to"), "edge.to"),
                     get_number(e.at("prob"), "edge.prob")});
  }

  SelfTransition self = NoSelf{};
  if (doc.contains("self") && !doc.at("self").is_null()) {
    const json& s = doc.at("self");
    if (s.is_number()) {
      self = s.get<double>();
    } else if (s.is_array()) {
      const Grid grid(shape);
      std::vector<double> table(grid.size(), 0.0);
      std::vector<char> seen(grid.size(), 0);
      for (const auto& entry : s) {
        check_keys(entry, "self entry", {"state", "prob"});
        const State u = get_state(entry.at("state"), "self.state");
        if (!grid.contains(u)) throw ParseError("self.state " + state_label(u) + " is outside the grid");
        const std::size_t idx = grid.index_of(u);
        if (seen[idx]++) throw ParseError("self.state " + state_label(u) + " listed twice");
        table[idx] = get_number(entry.at("prob"), "self.prob");
      }
      self = std::move(table);
    } else {
      throw ParseError("self: expected null, a number or a per-state list");
    }
  }

  bool absorbing = false;
  if (doc.contains("absorbing")) {
    if (!doc.at("absorbing").is_boolean()) throw ParseError("absorbing: expected a boolean");
    absorbing = doc.at("absorbing").get<bool>();
  }
  return TransitionModel(std::move(shape), std::move(edges), std::move(self), absorbing);
}

std::string write_model(const TransitionModel& model) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["shape"] = shape_to(model.shape());
  json edges = json::array();
  for (const auto& e : model.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"prob", e.prob}});
  doc["edges"] = std::move(edges);
  if (const auto* alpha = std::get_if<double>(&model.self())) {
    doc["self"] = *alpha;
  } else if (const auto* table = std::get_if<std::vector<double>>(&model.self())) {
    json rows = json::array();
    for (std::size_t u = 0; u < table->size(); ++u) {
      rows.push_back({{"state", model.grid().state_of(u)}, {"prob", (*table)[u]}});
    }
    doc["self"] = std::move(rows);
  } else {
    doc["self"] = nullptr;
  }
  doc["absorbing"] = model.absorbing();
  return doc.dump(2) + "\n";
}

Parametrization parse_params(const std::string& text) {
  const json doc = parse_document(text);
  check_keys(doc, "parametrization", {"format_version", "shape", "alpha", "gamma"});
  check_version(doc);
  Parametrization p;
  p.shape = shape_from(doc.at("shape"));
  if (!p.shape.symmetric_jumps()) {
    throw ParseError("parametrization requires l1 == l2 (directional blocks are not symmetric otherwise)");
  }
  const Grid grid(p.shape);

  if (!doc.at("alpha").is_array()) throw ParseError("alpha: expected a list");
  p.alpha.assign(grid.size(), 0.0);
  std::vector<char> seen(grid.size(), 0);
  for (const auto& entry : doc.at("alpha")) {
    check_keys(entry, "alpha entry", {"state", "value"});
    const State u = get_state(entry.at("state"), "alpha.state");
    if (!grid.contains(u)) throw ParseError("alpha.state " + state_label(u) + " is outside the grid");
    const std::size_t idx = grid.index_of(u);
    if (seen[idx]++) throw ParseError("alpha.state " + state_label(u) + " listed twice");
    p.alpha[idx] = get_number(entry.at("value"), "alpha.value");
  }
  for (std::size_t u = 0; u < grid.size(); ++u) {
    if (!seen[u]) throw ParseError("alpha is missing state " + grid.label(u));
  }

  if (!doc.at("gamma").is_array()) throw ParseError("gamma: expected a list");
  for (const auto& entry : doc.at("gamma")) {
    check_keys(entry, "gamma entry", {"direction", "offset", "step", "value"});
    const EdgeClass c{get_int(entry.at("direction"), "gamma.direction"),
                      get_int(entry.at("offset"), "gamma.offset"), get_int(entry.at("step"), "gamma.step")};
    if (!p.gamma.emplace(c, get_number(entry.at("value"), "gamma.value")).second) {
      throw ParseError(c.label() + " listed twice");
    }
  }
  try {
    validate_parametrization(p);
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid parametrization: ") + e.what());
  }
  return p;
}

std::string write_params(const Parametrization& p) {
  const Grid grid(p.shape);
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["shape"] = shape_to(p.shape);
  json alpha = json::array();
  for (std::size_t u = 0; u < p.alpha.size(); ++u) {
    alpha.push_back({{"state", grid.state_of(u)}, {"value", p.alpha[u]}});
  }
  doc["alpha"] = std::move(alpha);
  json gamma = json::array();
  for (const auto& [c, g] : p.gamma) {
    gamma.push_back({{"direction", c.direction}, {"offset", c.offset}, {"step", c.step}, {"value", g}});
  }
  doc["gamma"] = std::move(gamma);
  return doc.dump(2) + "\n";
}

void write_matrix_csv(const Grid& grid, const Eigen::MatrixXd& m, std::ostream& out) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << "state";
  for (std::size_t v = 0; v < grid.size(); ++v) out << ',' << quoted(grid.label(v));
  out << '\n' << std::setprecision(17);
  for (std::size_t u = 0; u < grid.size(); ++u) {
    out << quoted(grid.label(u));
    for (std::size_t v = 0; v < grid.size(); ++v) out << ',' << m(u, v);
    out << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

void write_frequencies_csv(const Grid& grid, const Frequencies& f, std::ostream& out) {
  const auto prec = out.precision();
  out << "state,count,frequency\n" << std::setprecision(17);
  for (std::size_t u = 0; u < grid.size(); ++u) {
    out << quoted(grid.label(u)) << ',' << f.counts[u] << ',' << f.frequency(u) << '\n';
  }
  if (f.absorbed) {
    out << "sink," << f.absorbed << ',' << static_cast<double>(f.absorbed) / f.trials << '\n';
  }
  out.precision(prec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gbdp
