#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "descriptor.hpp"
#include "hshift/error.hpp"
#include "hshift/version.hpp"

namespace hshift::cli {

  using json::Json;

  namespace {

    struct Settings {
      Method                     method = Method::inflation;
      std::size_t                radius = 8;
      std::optional<std::size_t> symbol_budget;
      std::size_t                h_ball = 1000;
      std::optional<std::size_t> node_budget;
      std::optional<std::size_t> target_ball;
      bool                       l1 = false, l2 = false, l3 = false, l4 = false;
      std::string                pattern_file, language_file;

      LanguageOptions language() const {
        LanguageOptions o;
        o.method        = method;
        o.radius        = radius;
        o.symbol_budget = symbol_budget;
        o.h_budget      = h_ball;
        if (node_budget) {
          o.node_budget = *node_budget;
        }
        return o;
      }
      ExtendOptions extend() const {
        ExtendOptions o;
        o.symbol_budget = symbol_budget;
        if (node_budget) {
          o.node_budget = *node_budget;
        }
        return o;
      }
    };

    // The file being read, for error reports.
    struct Context {
      std::string file;
    };

    Json read_json(std::string const& path, Context& ctx) {
      ctx.file = path;
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw PreconditionError("cannot read " + path);
      }
      std::ostringstream text;
      text << in.rdbuf();
      return json::parse_text(text.str());
    }

    Json symbols_json(std::vector<Symbol> const& w, Alphabet const& a) {
      Json out = Json::array();
      for (auto s : w) {
        out.push_back(a.name(s));
      }
      return out;
    }

    Json optional_pattern(std::optional<Pattern> const& p, Alphabet const& a) {
      return p ? json::to_json(*p, a) : Json(nullptr);
    }

    Pattern input_pattern(ProblemDescriptor const& d, Settings const& s, Context& ctx) {
      if (!s.pattern_file.empty()) {
        auto j = read_json(s.pattern_file, ctx);
        return json::parse_pattern(j, d.subshift.group_ptr(), d.subshift.alphabet());
      }
      if (d.patterns.empty()) {
        throw PreconditionError("no pattern: pass --pattern or list one under \"patterns\"");
      }
      return d.patterns.front();
    }

    std::vector<Pattern> input_language(ProblemDescriptor const& d, Settings const& s,
                                        Context& ctx) {
      if (!s.language_file.empty()) {
        auto j = read_json(s.language_file, ctx);
        if (j.is_object()) {
          if (!j.contains("language")) {
            throw ParseError("/language", "missing field");
          }
          return json::parse_patterns(j["language"], d.subshift.group_ptr(),
                                      d.subshift.alphabet(), "/language");
        }
        return json::parse_patterns(j, d.subshift.group_ptr(), d.subshift.alphabet());
      }
      if (!d.language) {
        throw PreconditionError("no language: pass --language or give \"language\"");
      }
      return *d.language;
    }

    Json counts_json(std::size_t allowed, std::size_t forbidden, std::size_t unknown) {
      return {{"allowed", allowed}, {"forbidden", forbidden}, {"unknown", unknown}};
    }

    struct Result {
      Json body;
      int  exit = 0;
    };

    ////////////////////////////////////////////////////////////////////
    // Commands
    ////////////////////////////////////////////////////////////////////

    Result check_admissible(ProblemDescriptor const& d, Settings const& s, Context& ctx) {
      auto const& x  = d.subshift;
      auto        ps = d.patterns;
      if (!s.pattern_file.empty() || ps.empty()) {
        ps.insert(ps.begin(), input_pattern(d, s, ctx));
      }
      Json        entries = Json::array();
      std::size_t ok      = 0;
      for (auto const& p : ps) {
        auto a          = locally_admissible(p, x);
        Json violations = Json::array();
        for (auto const& v : a.violations) {
          violations.push_back(
              {{"translate", json::to_json(v.translate)}, {"forbidden_index", v.forbidden_index}});
        }
        ok += a.admissible;
        entries.push_back({{"pattern", json::to_json(p, x.alphabet())},
                           {"admissible", a.admissible},
                           {"violations", violations}});
      }
      return {{{"method", "LocalAdmissibility"},
               {"entries", entries},
               {"counts", {{"admissible", ok}, {"inadmissible", ps.size() - ok}}}},
              0};
    }

    Result member(ProblemDescriptor const& d, Settings const& s, Context&) {
      auto const& x = d.subshift;
      if (d.configurations.empty()) {
        throw PreconditionError("member needs \"configurations\"");
      }
      Json        entries = Json::array();
      std::size_t counts[3]{};
      for (auto const& c : d.configurations) {
        auto v = config_member(c, x, s.h_ball);
        ++counts[static_cast<int>(v.state)];
        entries.push_back(
            {{"configuration", json::to_json(c, x.alphabet())}, {"verdict", json::to_json(v, x)}});
      }
      return {{{"method", "ConfigMember"},
               {"entries", entries},
               {"counts", counts_json(counts[0], counts[1], counts[2])}},
              counts[2] ? 2 : 0};
    }

    Result window_language_cmd(ProblemDescriptor const& d, Settings const& s, Context&) {
      if (!d.window) {
        throw PreconditionError("window-language needs \"window\"");
      }
      auto t    = window_language(d.subshift, *d.window, s.language());
      auto body = json::to_json(t, d.subshift);
      body["method"] = t.provenance();
      body.erase("provenance");
      return {body, t.count(Verdict::State::unknown) ? 2 : 0};
    }

    Verdict single_verdict(Subshift const& x, Pattern const& p, LanguageOptions const& o) {
      if (!p.empty()) {
        return *window_language(x, p.domain(), o).find(p);
      }
      // The empty pattern is allowed iff some symbol is allowed at 1.
      auto t = window_language(x, {x.group().identity()}, o);
      for (auto const& e : t.entries()) {
        if (e.verdict.is_allowed()) {
          return e.verdict;
        }
      }
      if (t.count(Verdict::State::certified_forbidden) == t.entries().size()) {
        return Verdict::forbidden(std::nullopt, "every symbol is forbidden at the identity");
      }
      return Verdict::unknown(o.radius, "no symbol certified at the identity");
    }

    Result props(ProblemDescriptor const& d, Settings const& s, Context& ctx) {
      auto const& x  = d.subshift;
      auto const& g  = x.group();
      auto const& a  = x.alphabet();
      bool        l1 = s.l1, l2 = s.l2, l3 = s.l3, l4 = s.l4;
      if (!l1 && !l2 && !l3 && !l4) {
        l1 = l2 = l3 = l4 = true;
      }

      PatternSet  set;
      std::string source = "none";
      if (!l1 && !l2 && !l3) {
      } else if (d.language || !s.language_file.empty()) {
        for (auto const& p : input_language(d, s, ctx)) {
          set.insert(p);
        }
        source = "given";
      } else if (g.is_finite()) {
        auto bf = brute_force_subshift(x, s.language().node_budget);
        set     = extract_language(x.group_ptr(), bf.tables);
        source  = "extracted";
      } else {
        throw PreconditionError("props on an infinite group needs a language");
      }

      Json body{{"method", "PropertyCheck"}, {"language", {{"source", source}, {"size", set.size()}}}};
      int  exit = 0;
      if (l1) {
        body["L1"] = json::to_json(check_L1(set), a);
      }
      if (l2) {
        std::vector<GroupElement> cells;
        bool                      all = g.is_finite();
        if (all) {
          cells = g.elements();
        } else if (!d.cells.empty()) {
          cells = d.cells;
        } else {
          cells = g.enumerate(s.h_ball).elements;
        }
        auto r     = check_L2(set, cells);
        body["L2"] = json::to_json(r, a);
        exit       = std::max(exit, r.holds && !all ? 2 : 0);
      }
      if (l3) {
        auto const& h     = x.invariance();
        auto        r     = check_L3(set, h, s.h_ball);
        bool        whole = h.order() && *h.order() <= s.h_ball;
        body["L3"]        = json::to_json(r, a);
        exit              = std::max(exit, r.holds && !whole ? 2 : 0);
      }
      if (l4) {
        if (d.chains.empty()) {
          body["L4"] = {{"skipped", "no chains given"}};
        } else {
          std::size_t unknown = 0;
          auto        opts    = s.language();
          auto        r = check_L4(d.chains, [&](ExtendedPattern const& e) {
            auto v = single_verdict(x, e.pattern, opts);
            unknown += v.is_unknown();
            return v.is_allowed();
          });
          body["L4"]            = json::to_json(r, a);
          body["L4"]["unknown"] = unknown;
          exit                  = std::max(exit, unknown ? 2 : 0);
        }
      }
      return {body, exit};
    }

    Result compare(ProblemDescriptor const& d, Settings const& s, Context&) {
      if (!d.other) {
        throw PreconditionError("compare needs \"other\"");
      }
      auto c = language_equal(d.subshift, *d.other, d.windows, s.language());
      return {{{"method", d.subshift.group().is_finite() && d.windows.empty()
                              ? std::string("FiniteDomains")
                              : to_string(s.method, s.radius)},
               {"equal", c.equal},
               {"distinguishing", optional_pattern(c.distinguishing, d.subshift.alphabet())},
               {"sets_equal", c.sets_equal ? Json(*c.sets_equal) : Json(nullptr)},
               {"windows", d.windows.size()}},
              0};
    }

    Result compactness(ProblemDescriptor const& d, Settings const& s, Context&) {
      auto const& x = d.subshift;
      auto const& a = x.alphabet();
      auto        budget =
          s.symbol_budget ? *s.symbol_budget : (a.is_finite() ? *a.size() : std::size_t{16});
      auto opts = s.language();
      auto r    = compactness_check(x, budget, d.sample_cells.value_or(8), opts);
      Json cells = Json::array();
      for (auto const& c : r.cells) {
        cells.push_back({{"cell", json::to_json(c.cell)},
                         {"allowed", symbols_json(c.allowed, a)},
                         {"forbidden", symbols_json(c.forbidden, a)},
                         {"unknown", symbols_json(c.unknown, a)},
                         {"certified_finite", c.certified_finite}});
      }
      return {{{"method", r.method},
               {"summary", to_string(r.summary)},
               {"symbol_budget", budget},
               {"cells", cells}},
              r.summary == Compactness::compact ? 0 : 2};
    }

    std::vector<GroupElement> ball_around(Group const& g, Pattern const& p, std::size_t r) {
      auto cells = g.ball(r);
      for (auto const& c : p.domain()) {
        if (std::find(cells.begin(), cells.end(), c) == cells.end()) {
          cells.push_back(c);
        }
      }
      std::sort(cells.begin(), cells.end(),
                [&](auto const& u, auto const& v) { return g.less(u, v); });
      return cells;
    }

    Result extend(ProblemDescriptor const& d, Settings const& s, Context& ctx) {
      auto const& x      = d.subshift;
      auto        p      = input_pattern(d, s, ctx);
      auto        r      = s.target_ball.value_or(s.radius);
      auto        target = ball_around(x.group(), p, r);
      auto        e      = extend_pattern(x, p, target, s.extend());
      bool        dead   = !e.pattern && e.trace.exhaustive;
      return {{{"method", "Backtracking"},
               {"pattern", json::to_json(p, x.alphabet())},
               {"target_ball", r},
               {"extension", optional_pattern(e.pattern, x.alphabet())},
               {"non_extendable", dead},
               {"trace", json::to_json(e.trace, x.alphabet())}},
              e.pattern || dead ? 0 : 2};
    }

    Result realize(ProblemDescriptor const& d, Settings const& s, Context& ctx) {
      auto const&    x = d.subshift;
      auto           p = input_pattern(d, s, ctx);
      if (auto a = locally_admissible(p, x, true); !a.admissible) {
        auto v = Verdict::forbidden(a.violations.front(), "local violation");
        return {{{"method", "Realize(" + std::to_string(s.radius) + ")"},
                 {"pattern", json::to_json(p, x.alphabet())},
                 {"verdict", json::to_json(v, x)},
                 {"extension", nullptr},
                 {"non_extendable", true}},
                0};
      }
      RealizeOptions o;
      o.extend   = s.extend();
      o.h_budget = s.h_ball;
      auto r     = realize_witness(x, p, s.radius, o);
      return {{{"method", "Realize(" + std::to_string(s.radius) + ")"},
               {"pattern", json::to_json(p, x.alphabet())},
               {"verdict", json::to_json(r.verdict, x)},
               {"extension", optional_pattern(r.extension, x.alphabet())},
               {"non_extendable", r.non_extendable},
               {"trace", json::to_json(r.trace, x.alphabet())}},
              r.verdict.is_allowed() || r.non_extendable ? 0 : 2};
    }

    Result reconstruct(ProblemDescriptor const& d, Settings const& s, Context& ctx) {
      auto const& x = d.subshift;
      auto const& a = x.alphabet();
      auto        ps = input_language(d, s, ctx);
      PatternSet  set(ps.begin(), ps.end());
      auto        r = realize_from_language(a, x.invariance(), set, s.language().node_budget);
      Json        configs = Json::array();
      for (auto const& t : r.configurations.tables) {
        configs.push_back(symbols_json(t, a));
      }
      return {{{"method", "RealizeFromLanguage"},
               {"language_size", set.size()},
               {"equal", r.equal},
               {"difference", optional_pattern(r.difference, a)},
               {"subshift", r.subshift ? json::to_json(*r.subshift) : Json(nullptr)},
               {"count", r.configurations.tables.size()},
               {"configurations", configs}},
              0};
    }

    Result distance_cmd(ProblemDescriptor const& d, Settings const& s, Context&) {
      if (d.configurations.size() != 2) {
        throw PreconditionError("distance needs exactly two \"configurations\"");
      }
      auto depth = d.depth.value_or(s.radius);
      auto r     = distance(d.configurations[0], d.configurations[1], depth);
      char const* kind =
          r.kind == Distance::Kind::exact ? "exact"
          : r.kind == Distance::Kind::zero ? "zero" : "at_most";
      return {{{"method", "Prodiscrete"},
               {"depth", depth},
               {"kind", kind},
               {"k", r.k},
               {"value", r.value()}},
              r.kind == Distance::Kind::at_most ? 2 : 0};
    }

    Result brute_force(ProblemDescriptor const& d, Settings const& s, Context&) {
      auto const& x  = d.subshift;
      auto        bf = brute_force_subshift(x, s.language().node_budget);
      Json        elements = Json::array();
      for (auto const& g : x.group().elements()) {
        elements.push_back(json::to_json(g));
      }
      Json configs = Json::array();
      for (auto const& t : bf.tables) {
        configs.push_back(symbols_json(t, x.alphabet()));
      }
      return {{{"method", "BruteForce"},
               {"elements", elements},
               {"count", bf.tables.size()},
               {"nodes", bf.nodes},
               {"configurations", configs}},
              0};
    }

    using Handler = Result (*)(ProblemDescriptor const&, Settings const&, Context&);

    struct Command {
      char const* name;
      Handler     handler;
    };

    Command const table[] = {
        {"check-admissible", check_admissible},
        {"member", member},
        {"window-language", window_language_cmd},
        {"props", props},
        {"compare", compare},
        {"compactness", compactness},
        {"extend", extend},
        {"realize", realize},
        {"reconstruct", reconstruct},
        {"distance", distance_cmd},
        {"brute-force", brute_force},
    };

    void write_out(std::string const& out, std::string const& report) {
      std::filesystem::path path(out);
      if (path.is_relative()) {
        if (char const* dir = std::getenv("HSHIFT_OUTPUT_DIR"); dir && *dir) {
          path = std::filesystem::path(dir) / path;
        }
      }
      if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
      }
      std::ofstream f(path, std::ios::binary);
      f << report;
      if (!f) {
        throw PreconditionError("cannot write " + path.string());
      }
    }

    Json error_json(char const* kind, std::string const& message) {
      return {{"kind", kind}, {"message", message}};
    }

  }  // namespace

  std::vector<std::string> const& commands() {
    static std::vector<std::string> const names = [] {
      std::vector<std::string> out;
      for (auto const& c : table) {
        out.push_back(c.name);
      }
      return out;
    }();
    return names;
  }

  Outcome run(std::vector<std::string> const& args) {
    CLI::App app{"H-subshift toolkit", "hshift"};
    std::string command, file, method, out;
    Settings    s;
    std::size_t radius = 0, symbol_budget = 0, h_ball = 0, target_ball = 0;

    app.add_option("command", command, "operation to run")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("descriptor", file, "JSON problem descriptor")->required();
    auto* o_method = app.add_option("--method", method, "brute, z-exact or inflate")
                         ->check(CLI::IsMember({"brute", "z-exact", "inflate"}));
    auto* o_radius = app.add_option("--radius", radius, "inflation radius");
    auto* o_symbol = app.add_option("--symbol-budget", symbol_budget, "symbols tried per cell")
                         ->check(CLI::PositiveNumber);
    auto* o_hball =
        app.add_option("--h-ball", h_ball, "elements of H scanned")->check(CLI::PositiveNumber);
    auto* o_target = app.add_option("--target-ball", target_ball, "extension target radius");
    app.add_option("--pattern", s.pattern_file, "JSON pattern file");
    app.add_option("--language", s.language_file, "JSON language file");
    app.add_option("--out", out, "write the report here as well");
    app.add_flag("--l1", s.l1, "check factoriality");
    app.add_flag("--l2", s.l2, "check extendability");
    app.add_flag("--l3", s.l3, "check H-invariance");
    app.add_flag("--l4", s.l4, "check chain closure");

    Json    report{{"version", version}};
    Outcome outcome;
    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      if (e.get_exit_code() == 0) {
        return {app.help(), 0};
      }
      report["error"] = error_json("UsageError", e.what());
      return {json::dump(report), 1};
    }
    report["command"] = command;

    Context ctx;
    try {
      auto d = parse_descriptor(read_json(file, ctx));
      ctx.file.clear();
      s.method        = o_method->count() ? *parse_method(method) : d.method.value_or(s.method);
      s.radius        = o_radius->count() ? radius : d.radius.value_or(s.radius);
      s.symbol_budget = o_symbol->count() ? std::optional(symbol_budget) : d.symbol_budget;
      s.h_ball        = o_hball->count() ? h_ball : d.h_ball.value_or(s.h_ball);
      s.node_budget   = d.node_budget;
      s.target_ball   = o_target->count() ? std::optional(target_ball) : d.target_ball;

      report["budgets"] = {
          {"radius", s.radius},
          {"symbol_budget", s.symbol_budget ? Json(*s.symbol_budget) : Json(nullptr)},
          {"h_ball", s.h_ball},
          {"node_budget", s.node_budget ? Json(*s.node_budget) : Json(nullptr)}};

      auto it = std::find_if(std::begin(table), std::end(table),
                             [&](Command const& c) { return command == c.name; });
      auto r = it->handler(d, s, ctx);
      report.update(r.body);
      outcome.exit = r.exit;
    } catch (ParseError const& e) {
      auto err       = error_json("ParseError", e.what());
      err["pointer"] = e.pointer();
      err["file"]    = ctx.file;
      report["error"] = err;
      outcome.exit    = 1;
    } catch (RefusalError const& e) {
      auto err               = error_json("RefusalError", e.what());
      err["required_budget"] = e.required_budget();
      report["error"]        = err;
      outcome.exit           = 1;
    } catch (StructuralError const& e) {
      report["error"] = error_json("StructuralError", e.what());
      outcome.exit    = 1;
    } catch (IncompatibleError const& e) {
      report["error"] = error_json("IncompatibleError", e.what());
      outcome.exit    = 1;
    } catch (Error const& e) {
      report["error"] = error_json("PreconditionError", e.what());
      outcome.exit    = 1;
    }

    outcome.report = json::dump(report);
    if (!out.empty()) {
      try {
        write_out(out, outcome.report);
      } catch (std::exception const& e) {
        report["error"] = error_json("OutputError", e.what());
        outcome.report  = json::dump(report);
        outcome.exit    = 1;
      }
    }
    return outcome;
  }

}  // namespace hshift::cli
