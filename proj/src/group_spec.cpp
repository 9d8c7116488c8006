#include "mindeg/group_spec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <utility>
#include <vector>

#include "mindeg/actions.hpp"
#include "mindeg/constructions.hpp"
#include "mindeg/errors.hpp"

namespace mindeg {

namespace {

[[noreturn]] void fail(std::size_t pos, const std::string& msg) {
  throw input_error("spec error at offset " + std::to_string(pos) + ": " + msg);
}

bool ws(char c) { return c == ' ' || c == '\t'; }

// Trims [b, e) in place against the full text.
void trim(const std::string& t, std::size_t& b, std::size_t& e) {
  while (b < e && ws(t[b])) ++b;
  while (e > b && ws(t[e - 1])) --e;
}

// Offsets of `what` at parenthesis depth 0 within [b, e). For 'x' only the
// standalone token counts (whitespace or a bound on both sides), so cycle
// digits and names are never split.
std::vector<std::size_t> depth0(const std::string& t, std::size_t b,
                                std::size_t e, char what) {
  std::vector<std::size_t> out;
  int depth = 0;
  for (std::size_t i = b; i < e; ++i) {
    const char c = t[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (depth == 0 && c == what) {
      if (what == 'x' && !((i == b || ws(t[i - 1])) && (i + 1 == e || ws(t[i + 1]))))
        continue;
      out.push_back(i);
    }
    if (depth < 0) fail(i, "unbalanced ')'");
  }
  return out;
}

GroupSpec parse_range(const std::string& t, std::size_t b, std::size_t e);

// Parses "Dih8"-style heads: `prefix` followed by nothing but digits.
std::optional<int> head_number(const std::string& t, std::size_t b,
                               std::size_t e, std::string_view prefix) {
  if (e - b <= prefix.size()) return std::nullopt;
  if (t.compare(b, prefix.size(), prefix) != 0) return std::nullopt;
  const std::size_t nb = b + prefix.size();
  for (std::size_t i = nb; i < e; ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return std::nullopt;
  int n = 0;
  const auto res = std::from_chars(t.data() + nb, t.data() + e, n);
  if (res.ec != std::errc()) fail(nb, "number out of range");
  return n;
}

GroupSpec parse_literal(const std::string& t, std::size_t b, std::size_t e) {
  std::size_t i = b + 3;  // past "deg"
  while (i < e && ws(t[i])) ++i;
  std::size_t nb = i;
  while (i < e && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  if (i == nb) fail(nb, "expected a degree after 'deg'");
  int degree = 0;
  if (std::from_chars(t.data() + nb, t.data() + i, degree).ec != std::errc())
    fail(nb, "degree out of range");
  while (i < e && ws(t[i])) ++i;
  if (i == e || t[i] != ':') fail(i, "expected ':' after the degree");
  ++i;

  GroupSpec s;
  s.kind = GroupSpec::Kind::literal;
  s.n = degree;
  std::size_t lb = i, le = e;
  trim(t, lb, le);
  if (lb == le) return s;  // no generators: trivial group
  std::vector<std::size_t> cuts = depth0(t, lb, le, ',');
  cuts.push_back(le);
  std::size_t start = lb;
  for (std::size_t cut : cuts) {
    std::size_t gb = start, ge = cut;
    trim(t, gb, ge);
    if (gb == ge) fail(start, "empty generator");
    try {
      s.gens.push_back(Perm::parse_cycles(t.substr(gb, ge - gb), degree));
    } catch (const input_error& err) {
      fail(gb, err.what());
    }
    start = cut + 1;
  }
  return s;
}

GroupSpec parse_atom(const std::string& t, std::size_t b, std::size_t e) {
  if (e - b >= 3 && t.compare(b, 3, "wr(") == 0) {
    if (t[e - 1] != ')') fail(e - 1, "expected ')' closing wr(");
    std::size_t ib = b + 3, ie = e - 1;
    const std::vector<std::size_t> commas = depth0(t, ib, ie, ',');
    if (commas.empty()) fail(b, "wr needs two comma-separated specs");
    // A generator literal as the first argument owns some of the commas, so
    // try each split point and keep the first that parses on both sides.
    if (commas.size() == 1) {
      GroupSpec s;
      s.kind = GroupSpec::Kind::wreath;
      s.parts.push_back(parse_range(t, ib, commas[0]));
      s.parts.push_back(parse_range(t, commas[0] + 1, ie));
      return s;
    }
    std::string first_error;
    for (std::size_t c : commas) {
      try {
        GroupSpec s;
        s.kind = GroupSpec::Kind::wreath;
        s.parts.push_back(parse_range(t, ib, c));
        s.parts.push_back(parse_range(t, c + 1, ie));
        return s;
      } catch (const input_error& err) {
        if (first_error.empty()) first_error = err.what();
      }
    }
    throw input_error(first_error);
  }

  if (e - b >= 3 && t.compare(b, 3, "deg") == 0 &&
      (e - b == 3 || !std::isalnum(static_cast<unsigned char>(t[b + 3]))))
    return parse_literal(t, b, e);

  GroupSpec s;
  if (auto n = head_number(t, b, e, "Dih")) {
    s.kind = GroupSpec::Kind::dih;
    s.n = *n;
    return s;
  }
  if (auto n = head_number(t, b, e, "S")) {
    s.kind = GroupSpec::Kind::sym;
    s.n = *n;
    return s;
  }
  if (auto n = head_number(t, b, e, "A")) {
    s.kind = GroupSpec::Kind::alt;
    s.n = *n;
    return s;
  }
  if (auto n = head_number(t, b, e, "C")) {
    s.kind = GroupSpec::Kind::cyc;
    s.n = *n;
    return s;
  }

  const std::string key = t.substr(b, e - b);
  const auto keys = named_group_keys();
  if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
    s.kind = GroupSpec::Kind::named;
    s.key = key;
    return s;
  }
  fail(b, "unknown name '" + key + "'");
}

GroupSpec parse_range(const std::string& t, std::size_t b, std::size_t e) {
  trim(t, b, e);
  if (b == e) fail(b, "empty spec");
  std::vector<std::size_t> cuts = depth0(t, b, e, 'x');
  if (cuts.empty()) return parse_atom(t, b, e);
  GroupSpec s;
  s.kind = GroupSpec::Kind::product;
  cuts.push_back(e);
  std::size_t start = b;
  for (std::size_t cut : cuts) {
    s.parts.push_back(parse_range(t, start, cut));
    start = cut + 1;
  }
  return s;
}

}  // namespace

std::string GroupSpec::to_text() const {
  switch (kind) {
    case Kind::sym: return "S" + std::to_string(n);
    case Kind::alt: return "A" + std::to_string(n);
    case Kind::cyc: return "C" + std::to_string(n);
    case Kind::dih: return "Dih" + std::to_string(n);
    case Kind::named: return key;
    case Kind::literal: {
      std::string out = "deg " + std::to_string(n) + ":";
      for (std::size_t i = 0; i < gens.size(); ++i)
        out += (i == 0 ? " " : ", ") + gens[i].cycle_string();
      return out;
    }
    case Kind::product: {
      std::string out;
      for (const GroupSpec& p : parts) {
        if (!out.empty()) out += " x ";
        out += p.to_text();
      }
      return out;
    }
    case Kind::wreath:
      return "wr(" + parts[0].to_text() + ", " + parts[1].to_text() + ")";
  }
  throw std::logic_error("unhandled spec kind");
}

GroupSpec parse_spec(const std::string& text) {
  return parse_range(text, 0, text.size());
}

PermGroup realize_spec(const GroupSpec& s) {
  switch (s.kind) {
    case GroupSpec::Kind::sym: return PermGroup::symmetric(s.n);
    case GroupSpec::Kind::alt: return PermGroup::alternating(s.n);
    case GroupSpec::Kind::cyc: return PermGroup::cyclic(s.n);
    case GroupSpec::Kind::dih: return PermGroup::dihedral(s.n);
    case GroupSpec::Kind::named: return named_group(s.key);
    case GroupSpec::Kind::literal:
      return PermGroup::from_generators(s.n, s.gens);
    case GroupSpec::Kind::product: {
      PermGroup g = realize_spec(s.parts[0]);
      for (std::size_t i = 1; i < s.parts.size(); ++i)
        g = external_direct_product(g, realize_spec(s.parts[i]));
      return g;
    }
    case GroupSpec::Kind::wreath:
      return wreath_product(realize_spec(s.parts[0]), realize_spec(s.parts[1]));
  }
  throw std::logic_error("unhandled spec kind");
}

PermGroup group_from_spec(const std::string& text) {
  return realize_spec(parse_spec(text));
}

}  // namespace mindeg
