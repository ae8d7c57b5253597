#include "support/fixtures.hpp"

namespace hshift::testing {

  GroupPtr z() {
    static GroupPtr const g = Group::z_lattice(1);
    return g;
  }

  Alphabet binary() {
    return Alphabet::explicit_symbols({"0", "1"});
  }

  Pattern word(GroupPtr g, std::int64_t start, std::vector<Symbol> const& w) {
    std::vector<Cell> c;
    for (std::size_t i = 0; i < w.size(); ++i) {
      GroupElement e = g->identity();
      e.set(0, start + static_cast<std::int64_t>(i));
      c.push_back({e, w[i]});
    }
    return Pattern(std::move(g), std::move(c));
  }

  Pattern cells(GroupPtr g, std::vector<std::pair<GroupElement, Symbol>> const& c) {
    std::vector<Cell> out;
    for (auto const& [e, a] : c) {
      out.push_back({e, a});
    }
    return Pattern(std::move(g), std::move(out));
  }

  Subshift even_pairs() {
    return Subshift(binary(), Subgroup::lattice(z(), {{2}}),
                    {word(z(), -1, {1, 0}), word(z(), -1, {0, 1})});
  }

  Subshift golden_mean() {
    return Subshift(binary(), Subgroup::whole(z()), {word(z(), 0, {1, 1})});
  }

  Subshift poisoned() {
    return Subshift(binary(), Subgroup::whole(z()),
                    {word(z(), 0, {0, 1}), word(z(), 0, {1, 0}), word(z(), 0, {1, 1})});
  }

  Subshift poisoned_z2() {
    auto g = Group::z_lattice(2);
    auto f = [&](Symbol a, Symbol b) {
      return cells(g, {{GroupElement{0, 0}, a}, {GroupElement{1, 0}, b}});
    };
    return Subshift(binary(), Subgroup::whole(g), {f(0, 1), f(1, 0), f(1, 1)});
  }

  Subshift z2_no_ones() {
    auto g = Group::cyclic(2);
    return Subshift(binary(), Subgroup::whole(g), {cells(g, {{GroupElement{0}, 1}})});
  }

  Subshift z2_constants() {
    auto g = Group::cyclic(2);
    return Subshift(binary(), Subgroup::whole(g),
                    {cells(g, {{GroupElement{0}, 0}, {GroupElement{1}, 1}}),
                     cells(g, {{GroupElement{0}, 1}, {GroupElement{1}, 0}})});
  }

  Determinant determinant() {
    auto                      gl = make_gl2(3);
    std::vector<GroupElement> sl;
    std::vector<Pattern>      f;
    for (auto const& g : gl.group->elements()) {
      auto d = gl.determinant(g);
      if (d == 1) {
        sl.push_back(g);
      }
      f.push_back(cells(gl.group, {{g, d == 1 ? Symbol{1} : Symbol{0}}}));
    }
    auto alphabet = Alphabet::explicit_symbols({"1", "2"});
    return Determinant{gl, Subshift(alphabet, Subgroup::elements(gl.group, sl), std::move(f))};
  }

}  // namespace hshift::testing
