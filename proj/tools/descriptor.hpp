#pragma once

#include <optional>
#include <vector>

#include "hshift/json_io.hpp"

namespace hshift::cli {

  // A subshift descriptor plus whatever inputs the command needs. Absent
  // budgets fall back to command defaults; flags override them.
  struct ProblemDescriptor {
    explicit ProblemDescriptor(Subshift x) : subshift(std::move(x)) {}

    Subshift                               subshift;
    std::optional<Subshift>                other;
    std::vector<Pattern>                   patterns;
    std::vector<Configuration>             configurations;
    std::optional<std::vector<GroupElement>> window;
    std::vector<std::vector<GroupElement>> windows;
    std::vector<GroupElement>              cells;
    std::optional<std::vector<Pattern>>    language;
    std::vector<std::vector<Pattern>>      chains;

    std::optional<Method>      method;
    std::optional<std::size_t> radius;
    std::optional<std::size_t> symbol_budget;
    std::optional<std::size_t> h_ball;
    std::optional<std::size_t> node_budget;
    std::optional<std::size_t> target_ball;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> sample_cells;
  };

  // "brute", "z-exact" or "inflate".
  std::optional<Method> parse_method(std::string const& s);
  char const*           method_flag(Method m) noexcept;

  // Unknown top-level keys are rejected. Every budget must be positive,
  // except the inflation radius and the ball radii, which may be 0.
  ProblemDescriptor parse_descriptor(json::Json const& j);
  json::Json        to_json(ProblemDescriptor const& d);

}  // namespace hshift::cli
