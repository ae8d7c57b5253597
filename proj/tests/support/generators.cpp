#include "support/generators.hpp"

#include "support/fixtures.hpp"

namespace hshift::testing {

  Subshift random_z_sft(Rng& rng, ZShape const& shape) {
    auto                 g = z();
    auto                 n = rng.between(1, shape.max_period);
    std::vector<Pattern> f;
    auto                 count = rng.between(1, static_cast<std::int64_t>(shape.max_patterns));
    for (std::int64_t i = 0; i < count; ++i) {
      auto              start = rng.between(-2, 2);
      auto              span  = rng.between(1, shape.max_span);
      std::vector<Cell> cells;
      for (std::int64_t j = 0; j < span; ++j) {
        if (j == 0 || j == span - 1 || rng.coin()) {
          cells.push_back({GroupElement{start + j}, static_cast<Symbol>(rng.below(shape.symbols))});
        }
      }
      f.emplace_back(g, std::move(cells));
    }
    std::vector<std::string> names;
    for (std::size_t a = 0; a < shape.symbols; ++a) {
      names.push_back(std::to_string(a));
    }
    return Subshift(Alphabet::explicit_symbols(names),
                    Subgroup::lattice(g, {{n}}), std::move(f));
  }

  std::vector<GroupPtr> small_groups() {
    std::vector<GroupPtr> out;
    for (std::uint32_t n = 1; n <= 8; ++n) {
      out.push_back(Group::cyclic(n));
    }
    out.push_back(Group::product({Group::cyclic(2), Group::cyclic(2)}));
    out.push_back(Group::product({Group::cyclic(2), Group::cyclic(4)}));
    out.push_back(Group::product({Group::cyclic(2), Group::cyclic(2), Group::cyclic(2)}));
    // S3 on {0..5}: r^i s^j with i = k % 3, j = k / 3, s r s = r^-1.
    std::vector<std::vector<std::uint32_t>> t(6, std::vector<std::uint32_t>(6));
    for (std::uint32_t a = 0; a < 6; ++a) {
      for (std::uint32_t b = 0; b < 6; ++b) {
        std::uint32_t ia = a % 3, ja = a / 3, ib = b % 3, jb = b / 3;
        std::uint32_t i  = ja == 0 ? (ia + ib) % 3 : (ia + 3 - ib) % 3;
        t[a][b]          = i + 3 * ((ja + jb) % 2);
      }
    }
    out.push_back(Group::finite_cayley(t, 0, {1, 3}));
    return out;
  }

  Subgroup random_subgroup(Rng& rng, GroupPtr g) {
    std::vector<GroupElement> gens;
    auto                      k = rng.below(3);
    for (std::size_t i = 0; i < k; ++i) {
      gens.push_back(rng.pick(g->elements()));
    }
    return Subgroup::generated(g, gens);
  }

  Subshift random_finite_sft(Rng& rng, GroupPtr g, std::size_t max_patterns) {
    std::vector<Pattern> f;
    auto                 count = rng.below(max_patterns + 1);
    for (std::size_t i = 0; i < count; ++i) {
      auto              a = rng.pick(g->elements());
      std::vector<Cell> cells{{a, static_cast<Symbol>(rng.below(2))}};
      if (g->elements().size() > 1 && rng.coin()) {
        auto b = rng.pick(g->elements());
        if (!(b == a)) {
          cells.push_back({b, static_cast<Symbol>(rng.below(2))});
        }
      }
      f.emplace_back(g, std::move(cells));
    }
    return Subshift(binary(), random_subgroup(rng, g), std::move(f));
  }

  std::vector<Subshift> finite_corpus(std::uint64_t seed, std::size_t count) {
    Rng                   rng(seed);
    auto                  groups = small_groups();
    std::vector<Subshift> out;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(random_finite_sft(rng, groups[i % groups.size()]));
    }
    return out;
  }

}  // namespace hshift::testing
