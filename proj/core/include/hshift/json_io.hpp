#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hshift/language.hpp"
#include "hshift/realize.hpp"
#include "hshift/subshift.hpp"

// JSON descriptors. Objects use sorted keys, so dump() output is canonical.
// Every parse_* function reports malformed input as a ParseError whose
// pointer names the offending field, relative to `at`.
namespace hshift::json {

  using Json = nlohmann::json;

  // Two-space indented with a trailing newline.
  std::string dump(Json const& j);
  // errors: ParseError at "" for text that is not JSON.
  Json parse_text(std::string const& text);

  // z_lattice, finite_cayley and product. "cyclic" {"order"} and "gl2" {"p"}
  // are accepted as shorthands and written back as finite_cayley.
  GroupPtr parse_group(Json const& j, std::string const& at = "");
  Json     to_json(Group const& g);

  // {"kind":"explicit","symbols":[...]} or {"kind":"naturals","prefix":"s"}.
  // A bare array of names is accepted for the explicit kind.
  Alphabet parse_alphabet(Json const& j, std::string const& at = "");
  Json     to_json(Alphabet const& a);

  GroupElement parse_element(Json const& j, Group const& g, std::string const& at = "");
  Json         to_json(GroupElement const& g);
  std::vector<GroupElement> parse_elements(Json const& j, Group const& g,
                                           std::string const& at = "");

  // lattice_basis, elements or factors; "generators" [...] and the strings
  // "whole" and "trivial" are shorthands.
  Subgroup parse_subgroup(Json const& j, GroupPtr g, std::string const& at = "");
  Json     to_json(Subgroup const& h);

  Symbol parse_symbol(Json const& j, Alphabet const& a, std::string const& at = "");

  // {"cells":[{"g":[...],"a":"name"},...]}, written in well-order.
  Pattern parse_pattern(Json const& j, GroupPtr g, Alphabet const& a, std::string const& at = "");
  Json    to_json(Pattern const& p, Alphabet const& a);
  std::vector<Pattern> parse_patterns(Json const& j, GroupPtr g, Alphabet const& a,
                                      std::string const& at = "");

  // finite_support {default, exceptions}, step {cut, left, right, exceptions}
  // and h_periodic {period, domain}; "table" {values} is a shorthand for an
  // h_periodic configuration with trivial period.
  Configuration parse_configuration(Json const& j, GroupPtr g, Alphabet const& a,
                                    std::string const& at = "");
  // errors: PreconditionError for procedural configurations.
  Json to_json(Configuration const& c, Alphabet const& a);

  // {"group","alphabet","subgroup","forbidden"}; a missing "forbidden"
  // means the full shift.
  Subshift parse_subshift(Json const& j, std::string const& at = "");
  Json     to_json(Subshift const& x);

  // State, certificate, radius for Unknown, the witness (procedural
  // witnesses by description only) and the violation with its pattern.
  Json to_json(Verdict const& v, Subshift const& x);

  Json             to_json(RealizationTrace const& t, Alphabet const& a);
  RealizationTrace parse_trace(Json const& j, Group const& g, Alphabet const& a,
                               std::string const& at = "");

  Json to_json(LanguageTable const& t, Subshift const& x);
  Json to_json(PropertyReport const& r, Alphabet const& a);

}  // namespace hshift::json
