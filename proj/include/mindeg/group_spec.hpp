#pragma once

#include <string>
#include <vector>

#include "mindeg/perm.hpp"
#include "mindeg/perm_group.hpp"

namespace mindeg {

// Parsed form of the group mini-language:
//
//   spec := "S"n | "A"n | "C"n | "Dih"order | named-key
//         | "deg" n ":" perm-list
//         | spec " x " spec
//         | "wr(" spec ", " spec ")"
//
// "Dih" takes the group order (Dih8 has 8 elements). Named keys are the
// named_group() catalog. The generator literal lists 1-based cycle strings
// separated by commas; "deg 3:" with no generators is the trivial group on
// 3 points. Products split on a standalone "x" outside parentheses and may
// chain. Printing with to_text() and reparsing gives back the same spec.
struct GroupSpec {
  enum class Kind { sym, alt, cyc, dih, named, literal, product, wreath };

  Kind kind = Kind::literal;
  int n = 0;                     // sym/alt/cyc degree, dih order, literal degree
  std::string key;               // named
  std::vector<Perm> gens;        // literal
  std::vector<GroupSpec> parts;  // product factors (>= 2) or wreath base, top

  std::string to_text() const;
};

// Throws input_error with the offending position on syntax errors.
GroupSpec parse_spec(const std::string& text);

// Deterministic realization of a parsed spec.
PermGroup realize_spec(const GroupSpec& spec);

// parse + realize in one step.
PermGroup group_from_spec(const std::string& text);

}  // namespace mindeg
