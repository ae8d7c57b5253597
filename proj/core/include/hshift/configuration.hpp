#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "hshift/pattern.hpp"
#include "hshift/subgroup.hpp"

namespace hshift {

  // A total map G -> A with a finite description.
  //
  //   finite_support  constant `fill` outside a finite exception pattern;
  //   step            (G = Z only) x(n) = left[(n - cut) mod |left|] for n < cut
  //                   and right[(n - cut) mod |right|] for n >= cut, overridden
  //                   by exceptions; constant rays are the one-symbol case;
  //   h_periodic      x(k g) = x(g) for k in a subgroup K of finite index, given
  //                   by one cell per right coset Kg;
  //   procedural      an arbitrary pure rule, memoized.
  //
  // Copies share state; evaluation is thread-safe.
  class Configuration {
   public:
    enum class Kind { finite_support, step, h_periodic, procedural };
    using Rule = std::function<Symbol(GroupElement const&)>;

    static Configuration finite_support(GroupPtr group, Symbol fill);
    static Configuration finite_support(Symbol fill, Pattern exceptions);
    static Configuration step(GroupPtr group,
                              std::int64_t        cut,
                              std::vector<Symbol> left,
                              std::vector<Symbol> right);
    static Configuration step(std::int64_t        cut,
                              std::vector<Symbol> left,
                              std::vector<Symbol> right,
                              Pattern             exceptions);
    static Configuration h_periodic(Subgroup period, Pattern domain);
    static Configuration procedural(GroupPtr group, Rule rule);
    // Finite groups: values listed in the well-order of G.
    static Configuration from_table(GroupPtr group, std::vector<Symbol> const& values);

    Kind            kind() const noexcept;
    GroupPtr const& group_ptr() const noexcept;
    Group const&    group() const noexcept {
      return *group_ptr();
    }

    Symbol evaluate(GroupElement const& g) const;

    // finite_support / step accessors.
    Symbol                     fill() const;
    Pattern const&             exceptions() const;
    std::int64_t               cut() const;
    std::vector<Symbol> const& left() const;
    std::vector<Symbol> const& right() const;
    // h_periodic accessors.
    Subgroup const& period() const;
    Pattern const&  domain() const;

    Pattern restricted(std::span<GroupElement const> cells) const;
    // Finite groups: evaluation at every element, in well-order.
    std::vector<Symbol> tabulate() const;

    std::string describe() const;

   private:
    struct Impl;
    explicit Configuration(std::shared_ptr<Impl const> impl);
    std::shared_ptr<Impl const> _impl;
  };

  // sigma^g(x)(l) = x(g l).
  Configuration shift_config(GroupElement const& g, Configuration const& x);

  bool cylinder_contains(Cylinder const& c, Configuration const& x);

  // Decides x == y when the descriptions allow it: any pair on a finite
  // group, and finite_support/step/h_periodic pairs on Z. Also
  // finite_support pairs on any group.
  std::optional<bool> provably_equal(Configuration const& x, Configuration const& y);

  // Prodiscrete metric d(x, y) = 2^-k, k the largest n with x = y on V_n
  // (V_n the first n + 1 elements of the well-order), and d = 2 when x and
  // y already differ at the identity.
  struct Distance {
    enum class Kind { exact, at_most, zero };
    Kind kind = Kind::zero;
    // exact: d = 2^-k; at_most: d <= 2^-k.
    int k = 0;

    double value() const noexcept;
    friend bool operator==(Distance const&, Distance const&) = default;
  };

  Distance distance(Configuration const& x, Configuration const& y, std::size_t depth);

}  // namespace hshift
