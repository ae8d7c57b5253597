#include "descriptor.hpp"

#include <set>

#include "hshift/error.hpp"

namespace hshift::cli {

  using json::Json;

  namespace {

    std::set<std::string> const known_keys{
        "group",   "alphabet", "subgroup",    "forbidden",     "other",        "patterns",
        "configurations", "window", "windows", "cells", "language", "chains", "method", "radius",
        "symbol_budget", "h_ball", "node_budget", "target_ball", "depth", "sample_cells"};

    std::optional<std::size_t> budget(Json const& j, char const* key, bool zero_ok) {
      auto it = j.find(key);
      if (it == j.end()) {
        return std::nullopt;
      }
      auto at = std::string("/") + key;
      if (!it->is_number_integer()) {
        throw ParseError(at, "expected an integer");
      }
      auto v = it->get<std::int64_t>();
      if (v < (zero_ok ? 0 : 1)) {
        throw ParseError(at, zero_ok ? "must not be negative" : "budgets must be positive");
      }
      return static_cast<std::size_t>(v);
    }

    Json cells_json(std::vector<GroupElement> const& cells) {
      Json out = Json::array();
      for (auto const& g : cells) {
        out.push_back(json::to_json(g));
      }
      return out;
    }

    Json patterns_json(std::vector<Pattern> const& ps, Alphabet const& a) {
      Json out = Json::array();
      for (auto const& p : ps) {
        out.push_back(json::to_json(p, a));
      }
      return out;
    }

  }  // namespace

  std::optional<Method> parse_method(std::string const& s) {
    if (s == "brute") {
      return Method::brute_force;
    }
    if (s == "z-exact") {
      return Method::z_exact;
    }
    if (s == "inflate") {
      return Method::inflation;
    }
    return std::nullopt;
  }

  char const* method_flag(Method m) noexcept {
    switch (m) {
      case Method::brute_force: return "brute";
      case Method::z_exact: return "z-exact";
      case Method::inflation: return "inflate";
    }
    return "inflate";
  }

  ProblemDescriptor parse_descriptor(Json const& j) {
    if (!j.is_object()) {
      throw ParseError("", "expected an object");
    }
    for (auto const& [key, value] : j.items()) {
      if (!known_keys.count(key)) {
        throw ParseError("/" + key, "unknown field");
      }
    }
    ProblemDescriptor d(json::parse_subshift(j));
    auto const&       g = d.subshift.group_ptr();
    auto const&       a = d.subshift.alphabet();

    if (auto it = j.find("other"); it != j.end()) {
      d.other = json::parse_subshift(*it, "/other");
    }
    if (auto it = j.find("patterns"); it != j.end()) {
      d.patterns = json::parse_patterns(*it, g, a, "/patterns");
    }
    if (auto it = j.find("configurations"); it != j.end()) {
      if (!it->is_array()) {
        throw ParseError("/configurations", "expected an array");
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        d.configurations.push_back(
            json::parse_configuration((*it)[i], g, a, "/configurations/" + std::to_string(i)));
      }
    }
    if (auto it = j.find("window"); it != j.end()) {
      d.window = json::parse_elements(*it, *g, "/window");
    }
    if (auto it = j.find("windows"); it != j.end()) {
      if (!it->is_array()) {
        throw ParseError("/windows", "expected an array");
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        d.windows.push_back(json::parse_elements((*it)[i], *g, "/windows/" + std::to_string(i)));
      }
    }
    if (auto it = j.find("cells"); it != j.end()) {
      d.cells = json::parse_elements(*it, *g, "/cells");
    }
    if (auto it = j.find("language"); it != j.end()) {
      d.language = json::parse_patterns(*it, g, a, "/language");
    }
    if (auto it = j.find("chains"); it != j.end()) {
      if (!it->is_array()) {
        throw ParseError("/chains", "expected an array");
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        d.chains.push_back(
            json::parse_patterns((*it)[i], g, a, "/chains/" + std::to_string(i)));
      }
    }
    if (auto it = j.find("method"); it != j.end()) {
      if (!it->is_string() || !parse_method(it->get<std::string>())) {
        throw ParseError("/method", "expected one of brute, z-exact, inflate");
      }
      d.method = parse_method(it->get<std::string>());
    }
    d.radius        = budget(j, "radius", true);
    d.symbol_budget = budget(j, "symbol_budget", false);
    d.h_ball        = budget(j, "h_ball", false);
    d.node_budget   = budget(j, "node_budget", false);
    d.target_ball   = budget(j, "target_ball", true);
    d.depth         = budget(j, "depth", true);
    d.sample_cells  = budget(j, "sample_cells", false);
    return d;
  }

  Json to_json(ProblemDescriptor const& d) {
    auto const& a   = d.subshift.alphabet();
    Json        out = json::to_json(d.subshift);
    if (d.other) {
      out["other"] = json::to_json(*d.other);
    }
    if (!d.patterns.empty()) {
      out["patterns"] = patterns_json(d.patterns, a);
    }
    if (!d.configurations.empty()) {
      Json cs = Json::array();
      for (auto const& c : d.configurations) {
        cs.push_back(json::to_json(c, a));
      }
      out["configurations"] = cs;
    }
    if (d.window) {
      out["window"] = cells_json(*d.window);
    }
    if (!d.windows.empty()) {
      Json ws = Json::array();
      for (auto const& w : d.windows) {
        ws.push_back(cells_json(w));
      }
      out["windows"] = ws;
    }
    if (!d.cells.empty()) {
      out["cells"] = cells_json(d.cells);
    }
    if (d.language) {
      out["language"] = patterns_json(*d.language, a);
    }
    if (!d.chains.empty()) {
      Json cs = Json::array();
      for (auto const& c : d.chains) {
        cs.push_back(patterns_json(c, a));
      }
      out["chains"] = cs;
    }
    if (d.method) {
      out["method"] = method_flag(*d.method);
    }
    auto put = [&](char const* key, std::optional<std::size_t> const& v) {
      if (v) {
        out[key] = *v;
      }
    };
    put("radius", d.radius);
    put("symbol_budget", d.symbol_budget);
    put("h_ball", d.h_ball);
    put("node_budget", d.node_budget);
    put("target_ball", d.target_ball);
    put("depth", d.depth);
    put("sample_cells", d.sample_cells);
    return out;
  }

}  // namespace hshift::cli
