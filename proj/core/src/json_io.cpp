#include "hshift/json_io.hpp"

#include <limits>

#include "hshift/error.hpp"

namespace hshift::json {

  namespace {

    std::string child(std::string const& at, std::string const& key) {
      return at + "/" + key;
    }
    std::string child(std::string const& at, std::size_t i) {
      return at + "/" + std::to_string(i);
    }

    [[noreturn]] void fail(std::string const& at, std::string const& what) {
      throw ParseError(at, what);
    }

    Json const& field(Json const& j, char const* key, std::string const& at) {
      if (!j.is_object()) {
        fail(at, "expected an object");
      }
      auto it = j.find(key);
      if (it == j.end()) {
        fail(child(at, key), "missing field");
      }
      return *it;
    }

    Json const& array(Json const& j, std::string const& at) {
      if (!j.is_array()) {
        fail(at, "expected an array");
      }
      return j;
    }

    std::string const& string(Json const& j, std::string const& at) {
      if (!j.is_string()) {
        fail(at, "expected a string");
      }
      return j.get_ref<std::string const&>();
    }

    std::int64_t integer(Json const& j, std::string const& at) {
      if (!j.is_number_integer()) {
        fail(at, "expected an integer");
      }
      return j.get<std::int64_t>();
    }

    std::uint32_t index(Json const& j, std::string const& at) {
      auto v = integer(j, at);
      if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
        fail(at, "expected a non-negative index");
      }
      return static_cast<std::uint32_t>(v);
    }

    std::vector<std::uint32_t> indices(Json const& j, std::string const& at) {
      array(j, at);
      std::vector<std::uint32_t> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(index(j[i], child(at, i)));
      }
      return out;
    }

    // Library errors raised while building a parsed object point at it.
    template <typename F>
    auto build(std::string const& at, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (ParseError const&) {
        throw;
      } catch (Error const& e) {
        fail(at, e.what());
      }
    }

    Json symbols_to_json(std::vector<Symbol> const& w, Alphabet const& a) {
      Json out = Json::array();
      for (auto s : w) {
        out.push_back(a.name(s));
      }
      return out;
    }

    std::vector<Symbol> parse_word(Json const& j, Alphabet const& a, std::string const& at) {
      array(j, at);
      std::vector<Symbol> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_symbol(j[i], a, child(at, i)));
      }
      return out;
    }

  }  // namespace

  std::string dump(Json const& j) {
    return j.dump(2) + "\n";
  }

  Json parse_text(std::string const& text) {
    try {
      return Json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      fail("", e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Groups and alphabets
  ////////////////////////////////////////////////////////////////////////

  GroupPtr parse_group(Json const& j, std::string const& at) {
    auto const& kind = string(field(j, "kind", at), child(at, "kind"));
    if (kind == "z_lattice") {
      auto rank = integer(field(j, "rank", at), child(at, "rank"));
      return build(child(at, "rank"), [&] {
        if (rank < 1) {
          throw StructuralError("rank must be positive");
        }
        return Group::z_lattice(static_cast<std::size_t>(rank));
      });
    }
    if (kind == "finite_cayley") {
      auto const& tj = array(field(j, "table", at), child(at, "table"));
      std::vector<std::vector<std::uint32_t>> table;
      for (std::size_t i = 0; i < tj.size(); ++i) {
        table.push_back(indices(tj[i], child(child(at, "table"), i)));
      }
      if (auto it = j.find("order"); it != j.end()) {
        if (integer(*it, child(at, "order")) != static_cast<std::int64_t>(table.size())) {
          fail(child(at, "order"), "order does not match the table");
        }
      }
      auto id   = index(field(j, "identity", at), child(at, "identity"));
      auto gens = indices(field(j, "generators", at), child(at, "generators"));
      return build(at, [&] { return Group::finite_cayley(table, id, gens); });
    }
    if (kind == "cyclic") {
      auto n = index(field(j, "order", at), child(at, "order"));
      return build(child(at, "order"), [&] { return Group::cyclic(n); });
    }
    if (kind == "gl2") {
      auto p = index(field(j, "p", at), child(at, "p"));
      return build(child(at, "p"), [&] { return make_gl2(p).group; });
    }
    if (kind == "product") {
      auto const&           fj = array(field(j, "factors", at), child(at, "factors"));
      std::vector<GroupPtr> factors;
      for (std::size_t i = 0; i < fj.size(); ++i) {
        factors.push_back(parse_group(fj[i], child(child(at, "factors"), i)));
      }
      return build(at, [&] { return Group::product(factors); });
    }
    fail(child(at, "kind"), "unknown group kind '" + kind + "'");
  }

  Json to_json(Group const& g) {
    switch (g.kind()) {
      case GroupKind::z_lattice: return {{"kind", "z_lattice"}, {"rank", g.rank()}};
      case GroupKind::finite_cayley: {
        Json gens = Json::array();
        for (auto const& e : g.generators()) {
          gens.push_back(e[0]);
        }
        return {{"kind", "finite_cayley"},
                {"order", g.table().size()},
                {"table", g.table()},
                {"identity", g.identity()[0]},
                {"generators", gens}};
      }
      case GroupKind::product: {
        Json factors = Json::array();
        for (auto const& f : g.factors()) {
          factors.push_back(to_json(*f));
        }
        return {{"kind", "product"}, {"factors", factors}};
      }
    }
    return {};
  }

  Alphabet parse_alphabet(Json const& j, std::string const& at) {
    auto names = [&](Json const& arr, std::string const& p) {
      array(arr, p);
      std::vector<std::string> out;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(string(arr[i], child(p, i)));
      }
      return build(p, [&] { return Alphabet::explicit_symbols(out); });
    };
    if (j.is_array()) {
      return names(j, at);
    }
    auto const& kind = string(field(j, "kind", at), child(at, "kind"));
    if (kind == "explicit") {
      return names(field(j, "symbols", at), child(at, "symbols"));
    }
    if (kind == "naturals") {
      std::string prefix;
      if (auto it = j.find("prefix"); it != j.end()) {
        prefix = string(*it, child(at, "prefix"));
      }
      return Alphabet::naturals(prefix);
    }
    fail(child(at, "kind"), "unknown alphabet kind '" + kind + "'");
  }

  Json to_json(Alphabet const& a) {
    if (a.is_finite()) {
      return {{"kind", "explicit"}, {"symbols", a.names()}};
    }
    return {{"kind", "naturals"}, {"prefix", a.prefix()}};
  }

  GroupElement parse_element(Json const& j, Group const& g, std::string const& at) {
    array(j, at);
    if (j.size() != g.width()) {
      fail(at, "expected " + std::to_string(g.width()) + " components");
    }
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
      c.push_back(integer(j[i], child(at, i)));
    }
    GroupElement e(c);
    if (!g.belongs(e)) {
      fail(at, "not an element of " + g.describe());
    }
    return e;
  }

  Json to_json(GroupElement const& g) {
    Json out = Json::array();
    for (auto c : g.components()) {
      out.push_back(c);
    }
    return out;
  }

  std::vector<GroupElement> parse_elements(Json const& j, Group const& g, std::string const& at) {
    array(j, at);
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(parse_element(j[i], g, child(at, i)));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroups
  ////////////////////////////////////////////////////////////////////////

  Subgroup parse_subgroup(Json const& j, GroupPtr g, std::string const& at) {
    if (j.is_string()) {
      auto const& s = j.get_ref<std::string const&>();
      if (s == "whole") {
        return Subgroup::whole(g);
      }
      if (s == "trivial") {
        return Subgroup::trivial(g);
      }
      fail(at, "unknown subgroup '" + s + "'");
    }
    if (!j.is_object() || j.size() != 1) {
      fail(at, "expected an object with exactly one of lattice_basis, elements, generators, "
               "factors");
    }
    if (auto it = j.find("lattice_basis"); it != j.end()) {
      auto      p = child(at, "lattice_basis");
      IntMatrix basis;
      if (g->kind() != GroupKind::z_lattice) {
        fail(p, "lattice bases need a z_lattice group");
      }
      array(*it, p);
      for (std::size_t i = 0; i < it->size(); ++i) {
        auto const& row = array((*it)[i], child(p, i));
        if (row.size() != g->rank()) {
          fail(child(p, i), "expected " + std::to_string(g->rank()) + " components");
        }
        IntVector v;
        for (std::size_t k = 0; k < row.size(); ++k) {
          v.push_back(integer(row[k], child(child(p, i), k)));
        }
        basis.push_back(std::move(v));
      }
      return build(p, [&] { return Subgroup::lattice(g, basis); });
    }
    if (auto it = j.find("elements"); it != j.end()) {
      auto p     = child(at, "elements");
      auto elems = build(p, [&] {
        if (!g->is_finite()) {
          throw StructuralError("explicit subgroup elements require a finite group");
        }
        return parse_elements(*it, *g, p);
      });
      return build(p, [&] { return Subgroup::elements(g, elems); });
    }
    if (auto it = j.find("generators"); it != j.end()) {
      auto p    = child(at, "generators");
      auto gens = parse_elements(*it, *g, p);
      return build(p, [&] { return Subgroup::generated(g, gens); });
    }
    if (auto it = j.find("factors"); it != j.end()) {
      auto p = child(at, "factors");
      array(*it, p);
      if (g->kind() != GroupKind::product || it->size() != g->factors().size()) {
        fail(p, "factors need a product group with as many factors");
      }
      std::vector<Subgroup> factors;
      for (std::size_t i = 0; i < it->size(); ++i) {
        factors.push_back(parse_subgroup((*it)[i], g->factors()[i], child(p, i)));
      }
      return build(p, [&] { return Subgroup::product(g, factors); });
    }
    fail(at, "expected one of lattice_basis, elements, generators, factors");
  }

  Json to_json(Subgroup const& h) {
    switch (h.kind()) {
      case Subgroup::Kind::lattice: {
        Json basis = Json::array();
        for (auto const& row : h.basis()) {
          basis.push_back(row);
        }
        return {{"lattice_basis", basis}};
      }
      case Subgroup::Kind::finite: {
        Json elems = Json::array();
        for (auto const& e : h.members()) {
          elems.push_back(to_json(e));
        }
        return {{"elements", elems}};
      }
      case Subgroup::Kind::product: {
        Json factors = Json::array();
        for (auto const& f : h.factors()) {
          factors.push_back(to_json(f));
        }
        return {{"factors", factors}};
      }
    }
    return {};
  }

  ////////////////////////////////////////////////////////////////////////
  // Patterns and configurations
  ////////////////////////////////////////////////////////////////////////

  Symbol parse_symbol(Json const& j, Alphabet const& a, std::string const& at) {
    auto s = a.lookup(string(j, at));
    if (!s) {
      fail(at, "unknown symbol '" + j.get<std::string>() + "'");
    }
    return *s;
  }

  Pattern parse_pattern(Json const& j, GroupPtr g, Alphabet const& a, std::string const& at) {
    auto const&       cj = array(field(j, "cells", at), child(at, "cells"));
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < cj.size(); ++i) {
      auto p = child(child(at, "cells"), i);
      cells.push_back(Cell{parse_element(field(cj[i], "g", p), *g, child(p, "g")),
                           parse_symbol(field(cj[i], "a", p), a, child(p, "a"))});
    }
    return build(child(at, "cells"), [&] { return Pattern(g, cells); });
  }

  Json to_json(Pattern const& p, Alphabet const& a) {
    Json cells = Json::array();
    for (auto const& c : p.cells()) {
      cells.push_back({{"g", to_json(c.g)}, {"a", a.name(c.a)}});
    }
    return {{"cells", cells}};
  }

  std::vector<Pattern> parse_patterns(Json const& j, GroupPtr g, Alphabet const& a,
                                      std::string const& at) {
    array(j, at);
    std::vector<Pattern> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(parse_pattern(j[i], g, a, child(at, i)));
    }
    return out;
  }

  Configuration parse_configuration(Json const& j, GroupPtr g, Alphabet const& a,
                                    std::string const& at) {
    auto const& kind       = string(field(j, "kind", at), child(at, "kind"));
    auto        exceptions = [&] {
      auto it = j.find("exceptions");
      return it == j.end() ? Pattern(g) : parse_pattern(*it, g, a, child(at, "exceptions"));
    };
    if (kind == "finite_support") {
      auto fill = parse_symbol(field(j, "default", at), a, child(at, "default"));
      auto e    = exceptions();
      return build(at, [&] { return Configuration::finite_support(fill, e); });
    }
    if (kind == "step") {
      auto cut   = integer(field(j, "cut", at), child(at, "cut"));
      auto left  = parse_word(field(j, "left", at), a, child(at, "left"));
      auto right = parse_word(field(j, "right", at), a, child(at, "right"));
      auto e     = exceptions();
      return build(at, [&] { return Configuration::step(cut, left, right, e); });
    }
    if (kind == "h_periodic") {
      auto period = parse_subgroup(field(j, "period", at), g, child(at, "period"));
      auto domain = parse_pattern(field(j, "domain", at), g, a, child(at, "domain"));
      return build(at, [&] { return Configuration::h_periodic(period, domain); });
    }
    if (kind == "table") {
      auto values = parse_word(field(j, "values", at), a, child(at, "values"));
      return build(child(at, "values"), [&] { return Configuration::from_table(g, values); });
    }
    if (kind == "procedural") {
      fail(child(at, "kind"), "procedural configurations are not serializable");
    }
    fail(child(at, "kind"), "unknown configuration kind '" + kind + "'");
  }

  Json to_json(Configuration const& c, Alphabet const& a) {
    switch (c.kind()) {
      case Configuration::Kind::finite_support:
        return {{"kind", "finite_support"},
                {"default", a.name(c.fill())},
                {"exceptions", to_json(c.exceptions(), a)}};
      case Configuration::Kind::step:
        return {{"kind", "step"},
                {"cut", c.cut()},
                {"left", symbols_to_json(c.left(), a)},
                {"right", symbols_to_json(c.right(), a)},
                {"exceptions", to_json(c.exceptions(), a)}};
      case Configuration::Kind::h_periodic:
        return {{"kind", "h_periodic"},
                {"period", to_json(c.period())},
                {"domain", to_json(c.domain(), a)}};
      case Configuration::Kind::procedural: break;
    }
    throw PreconditionError("procedural configurations are not serializable");
  }

  ////////////////////////////////////////////////////////////////////////
  // Subshifts and results
  ////////////////////////////////////////////////////////////////////////

  Subshift parse_subshift(Json const& j, std::string const& at) {
    auto g = parse_group(field(j, "group", at), child(at, "group"));
    auto a = parse_alphabet(field(j, "alphabet", at), child(at, "alphabet"));
    auto h = parse_subgroup(field(j, "subgroup", at), g, child(at, "subgroup"));
    std::vector<Pattern> forbidden;
    if (auto it = j.find("forbidden"); it != j.end()) {
      forbidden = parse_patterns(*it, g, a, child(at, "forbidden"));
    }
    return build(at, [&] { return Subshift(a, h, forbidden); });
  }

  Json to_json(Subshift const& x) {
    Json forbidden = Json::array();
    for (auto const& p : x.forbidden().patterns()) {
      forbidden.push_back(to_json(p, x.alphabet()));
    }
    return {{"group", to_json(x.group())},
            {"alphabet", to_json(x.alphabet())},
            {"subgroup", to_json(x.invariance())},
            {"forbidden", forbidden}};
  }

  Json to_json(Verdict const& v, Subshift const& x) {
    Json out{{"state", to_string(v.state)}, {"certificate", v.certificate}};
    if (v.is_unknown()) {
      out["radius"] = v.radius;
    }
    if (v.witness) {
      if (v.witness->kind() == Configuration::Kind::procedural) {
        out["witness"] = {{"kind", "procedural"}, {"description", v.witness->describe()}};
      } else {
        out["witness"] = to_json(*v.witness, x.alphabet());
      }
    }
    if (v.witness_pattern) {
      out["witness_pattern"] = to_json(*v.witness_pattern, x.alphabet());
    }
    if (v.violation) {
      out["violation"] = {
          {"translate", to_json(v.violation->translate)},
          {"forbidden_index", v.violation->forbidden_index},
          {"pattern",
           to_json(x.forbidden().patterns().at(v.violation->forbidden_index), x.alphabet())}};
    }
    return out;
  }

  Json to_json(RealizationTrace const& t, Alphabet const& a) {
    Json steps = Json::array();
    for (auto const& s : t.steps) {
      steps.push_back({{"cell", to_json(s.cell)},
                       {"symbol", a.name(s.symbol)},
                       {"alternatives", s.alternatives},
                       {"backtracks", s.backtracks}});
    }
    Json out{{"steps", steps}, {"nodes", t.nodes}, {"exhaustive", t.exhaustive}};
    out["witness"] = t.witness ? Json(*t.witness) : Json(nullptr);
    return out;
  }

  RealizationTrace parse_trace(Json const& j, Group const& g, Alphabet const& a,
                               std::string const& at) {
    RealizationTrace t;
    auto const&      sj = array(field(j, "steps", at), child(at, "steps"));
    for (std::size_t i = 0; i < sj.size(); ++i) {
      auto      p = child(child(at, "steps"), i);
      TraceStep s;
      s.cell         = parse_element(field(sj[i], "cell", p), g, child(p, "cell"));
      s.symbol       = parse_symbol(field(sj[i], "symbol", p), a, child(p, "symbol"));
      s.alternatives = index(field(sj[i], "alternatives", p), child(p, "alternatives"));
      s.backtracks   = index(field(sj[i], "backtracks", p), child(p, "backtracks"));
      t.steps.push_back(s);
    }
    if (auto it = j.find("nodes"); it != j.end()) {
      t.nodes = index(*it, child(at, "nodes"));
    }
    if (auto it = j.find("exhaustive"); it != j.end()) {
      if (!it->is_boolean()) {
        fail(child(at, "exhaustive"), "expected a boolean");
      }
      t.exhaustive = it->get<bool>();
    }
    if (auto it = j.find("witness"); it != j.end() && !it->is_null()) {
      t.witness = string(*it, child(at, "witness"));
    }
    return t;
  }

  Json to_json(LanguageTable const& t, Subshift const& x) {
    Json window = Json::array();
    for (auto const& g : t.window()) {
      window.push_back(to_json(g));
    }
    Json entries = Json::array();
    for (auto const& e : t.entries()) {
      entries.push_back({{"pattern", to_json(e.pattern, x.alphabet())},
                         {"verdict", to_json(e.verdict, x)}});
    }
    return {{"window", window},
            {"provenance", t.provenance()},
            {"counts",
             {{"allowed", t.count(Verdict::State::certified_allowed)},
              {"forbidden", t.count(Verdict::State::certified_forbidden)},
              {"unknown", t.count(Verdict::State::unknown)}}},
            {"entries", entries}};
  }

  Json to_json(PropertyReport const& r, Alphabet const& a) {
    Json out{{"holds", r.holds}, {"scope", r.scope}};
    if (r.counterexample) {
      out["counterexample"] = to_json(*r.counterexample, a);
    }
    if (r.missing) {
      out["missing"] = to_json(*r.missing, a);
    }
    if (r.element) {
      out["element"] = to_json(*r.element);
    }
    if (r.chain) {
      out["chain"] = *r.chain;
    }
    return out;
  }

}  // namespace hshift::json
