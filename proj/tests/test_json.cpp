#include <gtest/gtest.h>

#include "hshift/error.hpp"
#include "hshift/json_io.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace hshift;
using namespace hshift::testing;
using hshift::json::Json;

namespace {

  std::string pointer_of(std::function<void()> const& f) {
    try {
      f();
    } catch (ParseError const& e) {
      return e.pointer();
    }
    return "<no error>";
  }

  std::string canonical(Subshift const& x) {
    return json::dump(json::to_json(x));
  }

}  // namespace

TEST(JsonGroups, RoundTripEveryKind) {
  std::vector<GroupPtr> groups{Group::z_lattice(1), Group::z_lattice(3), Group::cyclic(5),
                               make_gl2(3).group,
                               Group::product({Group::z_lattice(1), Group::cyclic(2)})};
  for (auto const& g : small_groups()) {
    groups.push_back(g);
  }
  for (auto const& g : groups) {
    auto j    = json::to_json(*g);
    auto back = json::parse_group(j);
    EXPECT_TRUE(same_group(*g, *back)) << g->describe();
    EXPECT_EQ(json::dump(json::to_json(*back)), json::dump(j));
  }
}

TEST(JsonGroups, ShorthandsExpand) {
  auto c = json::parse_group(Json::parse(R"({"kind":"cyclic","order":3})"));
  EXPECT_TRUE(same_group(*c, *Group::cyclic(3)));
  EXPECT_EQ(json::to_json(*c)["kind"], "finite_cayley");
  auto gl = json::parse_group(Json::parse(R"({"kind":"gl2","p":3})"));
  EXPECT_EQ(gl->order(), std::optional<std::size_t>(48));
}

TEST(JsonGroups, ErrorsPointAtTheField) {
  EXPECT_EQ(pointer_of([] { json::parse_group(Json::parse(R"({"kind":"torus"})")); }), "/kind");
  EXPECT_EQ(pointer_of([] { json::parse_group(Json::parse(R"({"rank":1})")); }), "/kind");
  EXPECT_EQ(pointer_of([] { json::parse_group(Json::parse(R"({"kind":"z_lattice","rank":"2"})")); }),
            "/rank");
  EXPECT_EQ(pointer_of([] {
              json::parse_group(Json::parse(
                  R"({"kind":"product","factors":[{"kind":"z_lattice","rank":1},{"kind":"cyclic"}]})"));
            }),
            "/factors/1/order");
  // Not a group: 1 * 1 = 1 in a table with identity 0 and two elements.
  EXPECT_EQ(pointer_of([] {
              json::parse_group(Json::parse(
                  R"({"kind":"finite_cayley","order":2,"table":[[0,1],[1,1]],"identity":0,"generators":[1]})"));
            }),
            "");
  EXPECT_EQ(pointer_of([] {
              json::parse_group(Json::parse(
                  R"({"kind":"finite_cayley","order":3,"table":[[0,1],[1,0]],"identity":0,"generators":[1]})"));
            }),
            "/order");
}

TEST(JsonSubgroups, RoundTripAndShorthands) {
  auto z2 = Group::z_lattice(2);
  auto h  = json::parse_subgroup(Json::parse(R"({"lattice_basis":[[2,0],[0,3]]})"), z2);
  EXPECT_TRUE(h.contains(GroupElement{4, -3}));
  EXPECT_FALSE(h.contains(GroupElement{1, 0}));
  EXPECT_EQ(json::parse_subgroup(json::to_json(h), z2), h);

  auto c6 = Group::cyclic(6);
  auto k  = json::parse_subgroup(Json::parse(R"({"generators":[[2]]})"), c6);
  EXPECT_EQ(k.order(), std::optional<std::size_t>(3));
  EXPECT_EQ(json::to_json(k), Json::parse(R"({"elements":[[0],[2],[4]]})"));
  EXPECT_TRUE(json::parse_subgroup("whole", c6).is_whole());
  EXPECT_TRUE(json::parse_subgroup("trivial", c6).is_trivial());

  auto p = Group::product({Group::z_lattice(1), Group::cyclic(2)});
  auto f = json::parse_subgroup(Json::parse(R"({"factors":[{"lattice_basis":[[3]]},"trivial"]})"), p);
  EXPECT_EQ(json::parse_subgroup(json::to_json(f), p), f);
}

TEST(JsonSubgroups, Errors) {
  auto c4 = Group::cyclic(4);
  EXPECT_EQ(pointer_of([&] { json::parse_subgroup(Json::parse(R"({"elements":[[0],[1]]})"), c4); }),
            "/elements");
  EXPECT_EQ(pointer_of([&] { json::parse_subgroup(Json::parse(R"({"elements":[[0],[7]]})"), c4); }),
            "/elements/1");
  EXPECT_EQ(pointer_of([&] {
              json::parse_subgroup(Json::parse(R"({"lattice_basis":[[1]]})"), c4);
            }),
            "/lattice_basis");
  EXPECT_EQ(pointer_of([&] { json::parse_subgroup(Json::parse(R"({"elements":[],"factors":[]})"), c4); }),
            "");
}

TEST(JsonPatterns, CellsAreWrittenInWellOrder) {
  auto g = z();
  auto p = json::parse_pattern(
      Json::parse(R"({"cells":[{"g":[2],"a":"1"},{"g":[-1],"a":"0"},{"g":[0],"a":"1"}]})"), g,
      binary());
  auto j = json::to_json(p, binary());
  // 0, -1, 2 in length-lex order.
  EXPECT_EQ(j, Json::parse(R"({"cells":[{"a":"1","g":[0]},{"a":"0","g":[-1]},{"a":"1","g":[2]}]})"));
  EXPECT_EQ(json::parse_pattern(j, g, binary()), p);
}

TEST(JsonPatterns, Errors) {
  auto g = z();
  EXPECT_EQ(pointer_of([&] {
              json::parse_pattern(Json::parse(R"({"cells":[{"g":[0],"a":"2"}]})"), g, binary());
            }),
            "/cells/0/a");
  EXPECT_EQ(pointer_of([&] {
              json::parse_pattern(Json::parse(R"({"cells":[{"g":[0,1],"a":"0"}]})"), g, binary());
            }),
            "/cells/0/g");
  EXPECT_EQ(pointer_of([&] {
              json::parse_pattern(Json::parse(R"({"cells":[{"g":[0],"a":"0"},{"g":[0],"a":"1"}]})"), g,
                                  binary());
            }),
            "/cells");
  EXPECT_EQ(pointer_of([&] { json::parse_pattern(Json::parse(R"({"cells":[{"a":"0"}]})"), g, binary()); }),
            "/cells/0/g");
}

TEST(JsonAlphabets, Kinds) {
  auto a = json::parse_alphabet(Json::parse(R"(["a","bb","c"])"));
  EXPECT_EQ(a.size(), std::optional<std::size_t>(3));
  EXPECT_EQ(json::to_json(a), Json::parse(R"({"kind":"explicit","symbols":["a","bb","c"]})"));
  auto n = json::parse_alphabet(Json::parse(R"({"kind":"naturals","prefix":"s"})"));
  EXPECT_FALSE(n.is_finite());
  EXPECT_EQ(json::parse_symbol("s12", n), Symbol{12});
  EXPECT_EQ(pointer_of([&] { json::parse_symbol("12", n); }), "");
  EXPECT_EQ(pointer_of([] { json::parse_alphabet(Json::parse(R"(["0","0"])")); }), "");
  EXPECT_EQ(pointer_of([] { json::parse_alphabet(Json::parse(R"({"kind":"explicit","symbols":[1,2]})")); }),
            "/symbols/0");
}

TEST(JsonConfigurations, RoundTripEachKind) {
  auto g  = z();
  auto a  = binary();
  auto fs = Configuration::finite_support(0, word(g, -2, {1, 1}));
  auto st = Configuration::step(3, {0, 1}, {1}, word(g, 0, {1}));
  auto hp = Configuration::h_periodic(Subgroup::lattice(g, {{3}}), word(g, 0, {1, 0, 0}));
  for (auto const& c : {fs, st, hp}) {
    auto j    = json::to_json(c, a);
    auto back = json::parse_configuration(j, g, a);
    EXPECT_EQ(json::dump(json::to_json(back, a)), json::dump(j));
    for (std::int64_t n = -10; n <= 10; ++n) {
      EXPECT_EQ(back.evaluate(GroupElement{n}), c.evaluate(GroupElement{n})) << c.describe();
    }
  }
  auto proc = Configuration::procedural(g, [](GroupElement const&) { return Symbol{0}; });
  EXPECT_THROW(json::to_json(proc, a), PreconditionError);
  EXPECT_EQ(pointer_of([&] { json::parse_configuration(Json::parse(R"({"kind":"procedural"})"), g, a); }),
            "/kind");
}

TEST(JsonConfigurations, TableShorthand) {
  auto g = Group::cyclic(3);
  auto c = json::parse_configuration(Json::parse(R"({"kind":"table","values":["1","0","1"]})"), g,
                                     binary());
  EXPECT_EQ(c.tabulate(), (std::vector<Symbol>{1, 0, 1}));
  EXPECT_EQ(pointer_of([&] {
              json::parse_configuration(Json::parse(R"({"kind":"table","values":["1","0"]})"), g,
                                        binary());
            }),
            "/values");
}

TEST(JsonSubshifts, FixturesRoundTripByteIdentically) {
  std::vector<Subshift> xs{even_pairs(), golden_mean(), poisoned(), poisoned_z2(), z2_no_ones(),
                           z2_constants(), determinant().shift};
  for (auto const& x : xs) {
    auto text = canonical(x);
    auto back = json::parse_subshift(json::parse_text(text));
    EXPECT_EQ(canonical(back), text);
    EXPECT_EQ(back.forbidden().patterns(), x.forbidden().patterns());
    EXPECT_EQ(back.invariance(), x.invariance());
  }
}

TEST(JsonSubshifts, RandomRoundTrips) {
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    auto x    = random_z_sft(rng);
    auto text = canonical(x);
    EXPECT_EQ(canonical(json::parse_subshift(json::parse_text(text))), text);
  }
  for (auto const& g : small_groups()) {
    auto x    = random_finite_sft(rng, g);
    auto text = canonical(x);
    EXPECT_EQ(canonical(json::parse_subshift(json::parse_text(text))), text);
  }
}

TEST(JsonSubshifts, ErrorsAreNested) {
  auto bad = Json::parse(R"({"group":{"kind":"z_lattice","rank":1},"alphabet":["0","1"],
                             "subgroup":"whole","forbidden":[{"cells":[]},{"cells":[{"g":[0],"a":"x"}]}]})");
  EXPECT_EQ(pointer_of([&] { json::parse_subshift(bad); }), "/forbidden/1/cells/0/a");
  EXPECT_EQ(pointer_of([] { json::parse_text("{\"group\": "); }), "");
  auto missing = Json::parse(R"({"group":{"kind":"z_lattice","rank":1},"alphabet":["0","1"]})");
  EXPECT_EQ(pointer_of([&] { json::parse_subshift(missing); }), "/subgroup");
}

TEST(JsonVerdicts, CarryWitnessAndViolation) {
  auto x = golden_mean();
  auto v = config_member(Configuration::finite_support(x.group_ptr(), 0), x, 10);
  auto j = json::to_json(v, x);
  EXPECT_EQ(j["state"], "CertifiedAllowed");
  EXPECT_EQ(j["witness"]["kind"], "finite_support");
  EXPECT_FALSE(j.contains("radius"));

  auto f = config_member(Configuration::finite_support(x.group_ptr(), 1), x, 10);
  auto k = json::to_json(f, x);
  EXPECT_EQ(k["state"], "CertifiedForbidden");
  EXPECT_EQ(k["violation"]["pattern"], json::to_json(x.forbidden().patterns()[0], x.alphabet()));

  auto u = json::to_json(Verdict::unknown(3, "budget"), x);
  EXPECT_EQ(u["radius"], 3);
}

TEST(JsonTraces, ReplayFromJson) {
  auto x   = golden_mean();
  auto g   = x.group_ptr();
  auto p   = word(g, 0, {1});
  auto ext = extend_pattern(x, p, g->ball(3));
  ASSERT_TRUE(ext.pattern);
  auto j     = json::to_json(ext.trace, x.alphabet());
  auto trace = json::parse_trace(json::parse_text(json::dump(j)), *g, x.alphabet());
  EXPECT_EQ(trace.steps, ext.trace.steps);
  EXPECT_EQ(trace.nodes, ext.trace.nodes);
  EXPECT_EQ(replay(p, trace), *ext.pattern);
}
