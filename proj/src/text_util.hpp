#pragma once

// Generator-list text helpers shared by the serialization code. A list is
// "; "-joined cycle strings; a group with no generators is written "()".

#include <string>
#include <vector>

#include "mindeg/perm_group.hpp"

namespace mindeg {

inline std::string gens_to_text(const PermGroup& g) {
  if (g.generators().empty()) return "()";
  std::string out;
  for (const Perm& p : g.generators()) {
    if (!out.empty()) out += "; ";
    out += p.cycle_string();
  }
  return out;
}

inline PermGroup gens_from_text(const std::string& text, int degree) {
  std::vector<Perm> gens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string tok = text.substr(start, end - start);
    const auto a = tok.find_first_not_of(' ');
    const auto b = tok.find_last_not_of(' ');
    if (a != std::string::npos) {
      gens.push_back(Perm::parse_cycles(tok.substr(a, b - a + 1), degree));
    }
    start = end + 1;
  }
  return PermGroup::from_generators(degree, std::move(gens));
}

}  // namespace mindeg
