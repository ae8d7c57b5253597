#include <gtest/gtest.h>

#include <set>

#include "hshift/error.hpp"
#include "hshift/subshift.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace hshift;
using namespace hshift::testing;

namespace {
  GroupElement n(std::int64_t v) {
    return GroupElement{v};
  }
}  // namespace

TEST(ForbiddenSets, DeduplicateAndGroupDomains) {
  auto                 g = z();
  std::vector<Pattern> f{word(g, 0, {1, 1}), word(g, 0, {1, 1}), word(g, 0, {0, 1}),
                         word(g, 5, {1})};
  ForbiddenSet         s(g, f);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.domains().size(), 2u);
  EXPECT_TRUE(s.lookup(1, {1, 1}).has_value() || s.lookup(0, {1, 1}).has_value());
}

TEST(Subshifts, RejectForeignSymbolsAndGroups) {
  EXPECT_THROW(Subshift(binary(), Subgroup::whole(z()), {word(z(), 0, {2})}), StructuralError);
  EXPECT_THROW(Subshift(binary(), Subgroup::whole(z()), {cells(Group::z_lattice(2), {{GroupElement{0, 0}, 1}})}),
               StructuralError);
}

TEST(LocalAdmissibility, EvenPairsExamples) {
  auto x = even_pairs();
  auto q = word(z(), -1, {1, 0});
  auto r = locally_admissible(q, x);
  EXPECT_FALSE(r.admissible);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].translate, n(0));
  EXPECT_EQ(x.forbidden().patterns()[r.violations[0].forbidden_index], q);
  EXPECT_TRUE(locally_admissible(word(z(), 0, {1, 0}), x).admissible);
  EXPECT_TRUE(locally_admissible(Pattern(z()), x).admissible);
}

TEST(LocalAdmissibility, MatchesNaiveTranslateSearch) {
  // Independent check: scan every h in a box around the pattern.
  Rng  rng(2);
  auto g = Group::z_lattice(2);
  for (int t = 0; t < 300; ++t) {
    std::vector<Pattern> f;
    for (int i = 0; i < 3; ++i) {
      std::vector<Cell> c;
      for (int j = 0; j < 2; ++j) {
        GroupElement e{rng.between(-1, 1), rng.between(-1, 1)};
        if (std::none_of(c.begin(), c.end(), [&](Cell const& x) { return x.g == e; })) {
          c.push_back({e, static_cast<Symbol>(rng.below(2))});
        }
      }
      f.emplace_back(g, c);
    }
    auto     h = rng.coin() ? Subgroup::whole(g) : Subgroup::lattice(g, {{2, 0}, {1, 1}});
    Subshift x(binary(), h, f);
    std::vector<Cell> pc;
    for (std::int64_t i = 0; i < 3; ++i) {
      for (std::int64_t j = 0; j < 3; ++j) {
        if (rng.coin(0.7)) {
          pc.push_back({GroupElement{i, j}, static_cast<Symbol>(rng.below(2))});
        }
      }
    }
    Pattern p(g, pc);
    bool    naive = true;
    for (std::int64_t a = -5; a <= 5; ++a) {
      for (std::int64_t b = -5; b <= 5; ++b) {
        GroupElement tr{a, b};
        if (!h.contains(tr)) {
          continue;
        }
        for (auto const& q : f) {
          bool inside = true;
          for (auto const& c : q.cells()) {
            auto v = p.at(g->mul(tr, c.g));
            inside &= v && *v == c.a;
          }
          naive &= !inside;
        }
      }
    }
    auto r = locally_admissible(p, x);
    ASSERT_EQ(r.admissible, naive);
    for (auto const& v : r.violations) {
      EXPECT_TRUE(h.contains(v.translate));
      EXPECT_TRUE(subpattern_of(shift_pattern(v.translate,
                                              x.forbidden().patterns()[v.forbidden_index]),
                                p));
    }
  }
}

TEST(LocalAdmissibility, IsMonotone) {
  Rng  rng(6);
  auto x = golden_mean();
  for (int t = 0; t < 300; ++t) {
    std::vector<Symbol> w(1 + rng.below(8));
    for (auto& a : w) {
      a = static_cast<Symbol>(rng.below(2));
    }
    auto p = word(z(), rng.between(-3, 3), w);
    if (!locally_admissible(p, x).admissible) {
      continue;
    }
    for (auto const& c : p.cells()) {
      EXPECT_TRUE(locally_admissible(p.without(c.g), x).admissible);
    }
  }
}

TEST(Membership, EvenPairsStepWitness) {
  auto x = even_pairs();
  // 0 for n <= 0, 1 for n >= 1.
  auto s = Configuration::step(z(), 1, {0}, {1});
  auto v = config_member(s, x, 10);
  EXPECT_TRUE(v.is_allowed()) << v.certificate;
  // 1 0 1 0 ... with x(0) = 1.
  auto p = Configuration::h_periodic(Subgroup::lattice(z(), {{2}}), word(z(), 0, {1, 0}));
  auto w = config_member(p, x, 10);
  ASSERT_TRUE(w.is_forbidden());
  EXPECT_EQ(w.violation->translate, n(0));
  EXPECT_TRUE(config_member(p, Subshift(binary(), Subgroup::whole(z()), {}), 1).is_allowed());
}

TEST(Membership, StepWitnessMustBeAlignedWithH) {
  // The same step shifted by one is in X only if the cut sits at an odd
  // position, so that no even n sees x(n-1) != x(n).
  auto x = even_pairs();
  for (std::int64_t cut = -4; cut <= 4; ++cut) {
    auto s = Configuration::step(z(), cut, {0}, {1});
    EXPECT_EQ(config_member(s, x, 1).is_allowed(), cut % 2 != 0) << cut;
  }
}

TEST(Membership, ExactPathsAgreeWithWideProceduralScan) {
  // Finite descriptions against the same configuration wrapped as a
  // procedural rule and scanned far beyond the irregular region.
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    std::vector<Pattern> f;
    for (int i = 0; i < 1 + static_cast<int>(rng.below(3)); ++i) {
      std::vector<Symbol> w(1 + rng.below(3));
      for (auto& a : w) {
        a = static_cast<Symbol>(rng.below(2));
      }
      f.push_back(word(z(), rng.between(-2, 1), w));
    }
    auto     h = Subgroup::lattice(z(), {{static_cast<std::int64_t>(1 + rng.below(3))}});
    Subshift x(binary(), h, f);
    std::vector<Configuration> cs;
    std::vector<Symbol>        l(1 + rng.below(3)), r(1 + rng.below(3));
    for (auto& a : l) {
      a = static_cast<Symbol>(rng.below(2));
    }
    for (auto& a : r) {
      a = static_cast<Symbol>(rng.below(2));
    }
    std::vector<Symbol> ex(rng.below(4));
    for (auto& a : ex) {
      a = static_cast<Symbol>(rng.below(2));
    }
    auto exc = word(z(), rng.between(-3, 3), ex);
    cs.push_back(Configuration::step(rng.between(-3, 3), l, r, exc));
    cs.push_back(Configuration::finite_support(static_cast<Symbol>(rng.below(2)), exc));
    auto p = static_cast<std::int64_t>(1 + rng.below(4));
    std::vector<Symbol> per(static_cast<std::size_t>(p));
    for (auto& a : per) {
      a = static_cast<Symbol>(rng.below(2));
    }
    cs.push_back(Configuration::h_periodic(Subgroup::lattice(z(), {{p}}), word(z(), 0, per)));
    for (auto const& c : cs) {
      auto wrapped = Configuration::procedural(z(), [c](GroupElement const& e) {
        return c.evaluate(e);
      });
      auto exact = config_member(c, x, 1);
      auto wide  = config_member(wrapped, x, 200);
      ASSERT_FALSE(exact.is_unknown());
      ASSERT_EQ(exact.is_allowed(), wide.is_unknown()) << c.describe();
      if (exact.is_forbidden()) {
        auto const& v = *exact.violation;
        EXPECT_TRUE(h.contains(v.translate));
        EXPECT_TRUE(cylinder_contains(
            {shift_pattern(v.translate, x.forbidden().patterns()[v.forbidden_index])}, c));
      }
    }
  }
}

TEST(Membership, FiniteSupportOnLattice) {
  auto     g = Group::z_lattice(2);
  Subshift x(binary(), Subgroup::whole(g),
             {cells(g, {{GroupElement{0, 0}, 1}, {GroupElement{1, 0}, 1}})});
  auto ok  = Configuration::finite_support(0, cells(g, {{GroupElement{3, 3}, 1}}));
  auto bad = Configuration::finite_support(
      0, cells(g, {{GroupElement{3, 3}, 1}, {GroupElement{4, 3}, 1}}));
  EXPECT_TRUE(config_member(ok, x, 1).is_allowed());
  auto v = config_member(bad, x, 1);
  ASSERT_TRUE(v.is_forbidden());
  EXPECT_EQ(v.violation->translate, (GroupElement{3, 3}));
  // A fill of ones is forbidden far away from every exception.
  auto ones = Configuration::finite_support(1, cells(g, {{GroupElement{0, 0}, 0}}));
  EXPECT_TRUE(config_member(ones, x, 1).is_forbidden());
}

TEST(Membership, ProceduralOnInfiniteHIsBudgetLimited) {
  auto x = golden_mean();
  auto zeros = Configuration::procedural(z(), [](GroupElement const&) { return Symbol{0}; });
  auto v     = config_member(zeros, x, 50);
  EXPECT_TRUE(v.is_unknown());
  EXPECT_EQ(v.radius, 50u);
  auto late = Configuration::procedural(z(), [](GroupElement const& e) {
    return e[0] >= 20 ? Symbol{1} : Symbol{0};
  });
  EXPECT_TRUE(config_member(late, x, 100).is_forbidden());
  EXPECT_TRUE(config_member(late, x, 10).is_unknown());
}

TEST(Membership, PeriodicOnLatticeWithSkewPeriod) {
  auto g = Group::z_lattice(2);
  // Checkerboard: allowed in the subshift forbidding equal horizontal
  // neighbours and equal vertical neighbours.
  auto     k = Subgroup::lattice(g, {{1, 1}, {2, 0}});
  auto     board = Configuration::h_periodic(k, cells(g, {{GroupElement{0, 0}, 0},
                                                      {GroupElement{1, 0}, 1}}));
  auto     f = [&](GroupElement d, Symbol a) {
    return cells(g, {{GroupElement{0, 0}, a}, {d, a}});
  };
  Subshift x(binary(), Subgroup::whole(g),
             {f(GroupElement{1, 0}, 0), f(GroupElement{1, 0}, 1), f(GroupElement{0, 1}, 0),
              f(GroupElement{0, 1}, 1)});
  EXPECT_TRUE(config_member(board, x, 1).is_allowed());
  auto stripes = Configuration::h_periodic(Subgroup::lattice(g, {{2, 0}, {0, 1}}),
                                           cells(g, {{GroupElement{0, 0}, 0},
                                                     {GroupElement{1, 0}, 1}}));
  EXPECT_TRUE(config_member(stripes, x, 1).is_forbidden());
}

TEST(BruteForce, Examples) {
  auto r = brute_force_subshift(z2_no_ones());
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_EQ(r.tables[0], (std::vector<Symbol>{0, 0}));
  auto full = brute_force_subshift(
      Subshift(binary(), Subgroup::whole(Group::cyclic(3)), {}));
  EXPECT_EQ(full.tables.size(), 8u);
}

TEST(BruteForce, DeterminantSubshiftIsTheDeterminant) {
  auto d = determinant();
  auto r = brute_force_subshift(d.shift);
  ASSERT_EQ(r.tables.size(), 1u);
  auto const& el = d.gl.group->elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    EXPECT_EQ(r.tables[0][i] + 1, d.gl.determinant(el[i]));
  }
  EXPECT_TRUE(check_h_invariance(r.tables, d.shift.invariance()));
  EXPECT_FALSE(check_h_invariance(r.tables, Subgroup::whole(d.gl.group)));
}

TEST(BruteForce, RefusesOverBudget) {
  auto g = make_gl2(3).group;
  Subshift full(binary(), Subgroup::whole(g), {});
  try {
    brute_force_subshift(full, 1000);
    FAIL();
  } catch (RefusalError const& e) {
    EXPECT_GT(e.required_budget(), 1000u);
  }
}

TEST(BruteForce, EvenPairsOnZ4IsNotFullyInvariant) {
  auto     g = Group::cyclic(4);
  // {-1, 0} becomes {3, 0}; H = {0, 2}.
  Subshift x(binary(), Subgroup::generated(g, {GroupElement{2}}),
             {cells(g, {{GroupElement{3}, 1}, {GroupElement{0}, 0}}),
              cells(g, {{GroupElement{3}, 0}, {GroupElement{0}, 1}})});
  auto r = brute_force_subshift(x);
  EXPECT_EQ(r.tables.size(), 4u);
  EXPECT_TRUE(check_h_invariance(r.tables, x.invariance()));
  EXPECT_FALSE(check_h_invariance(r.tables, Subgroup::whole(g)));
}

TEST(BruteForce, ConstantsAreInvariantUnderAnything) {
  auto g = make_gl2(3).group;
  std::vector<std::vector<Symbol>> consts{std::vector<Symbol>(48, 0),
                                          std::vector<Symbol>(48, 1)};
  EXPECT_TRUE(check_h_invariance(consts, Subgroup::whole(g)));
  EXPECT_TRUE(check_h_invariance(consts, Subgroup::trivial(g)));
}

TEST(BruteForce, AgreesWithNaiveEnumerationAndMembership) {
  Rng rng(31);
  std::vector<GroupPtr> groups{Group::cyclic(2), Group::cyclic(3), Group::cyclic(4),
                               Group::cyclic(6),
                               Group::product({Group::cyclic(2), Group::cyclic(2)}),
                               Group::product({Group::cyclic(2), Group::cyclic(4)})};
  for (int t = 0; t < 150; ++t) {
    auto const& g  = groups[rng.below(groups.size())];
    auto        el = g->elements();
    std::vector<Pattern> f;
    for (std::size_t i = 0; i < rng.below(4); ++i) {
      std::vector<Cell> c;
      for (std::size_t j = 0; j < 1 + rng.below(3); ++j) {
        auto e = rng.pick(el);
        if (std::none_of(c.begin(), c.end(), [&](Cell const& x) { return x.g == e; })) {
          c.push_back({e, static_cast<Symbol>(rng.below(2))});
        }
      }
      f.emplace_back(g, c);
    }
    auto     h = Subgroup::generated(g, {rng.pick(el)});
    Subshift x(binary(), h, f);
    auto     r = brute_force_subshift(x);
    EXPECT_EQ(r.tables, naive_subshift(x));
    EXPECT_TRUE(check_h_invariance(r.tables, h));
    std::set<std::vector<Symbol>> in(r.tables.begin(), r.tables.end());
    for (auto const& tab : all_words(2, el.size())) {
      auto v = config_member(Configuration::from_table(g, tab), x, 1);
      ASSERT_FALSE(v.is_unknown());
      ASSERT_EQ(v.is_allowed(), in.count(tab) == 1);
      if (v.is_forbidden()) {
        // Closedness: the violation's cylinder is disjoint from X.
        auto q = shift_pattern(v.violation->translate,
                               x.forbidden().patterns()[v.violation->forbidden_index]);
        for (auto const& y : r.configurations) {
          EXPECT_FALSE(cylinder_contains({q}, y));
        }
      }
    }
  }
}
