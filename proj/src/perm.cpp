#include "mindeg/perm.hpp"

#include <algorithm>
#include <numeric>

#include "mindeg/errors.hpp"

namespace mindeg {

Perm::Perm(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw input_error("degree " + std::to_string(degree) + " out of range 0.." +
                      std::to_string(kMaxDegree));
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), 0);
}

Perm Perm::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  if (n > kMaxDegree)
    throw input_error("degree " + std::to_string(n) + " exceeds supported maximum " +
                      std::to_string(kMaxDegree));
  std::vector<char> seen(n, 0);
  for (int v : images) {
    if (v < 0 || v >= n) throw input_error("image table entry out of range");
    if (seen[v]) throw input_error("image table is not a bijection");
    seen[v] = 1;
  }
  Perm p;
  p.images_ = std::move(images);
  return p;
}

namespace {

void skip_ws(std::string_view s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

}  // namespace

Perm Perm::parse_cycles(std::string_view text, int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw input_error("degree " + std::to_string(degree) + " out of range 0.." +
                      std::to_string(kMaxDegree));
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(degree, 0);

  std::size_t i = 0;
  skip_ws(text, i);
  while (i < text.size()) {
    if (text[i] != '(')
      throw input_error("expected '(' at position " + std::to_string(i) + " in \"" +
                        std::string(text) + "\"");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_ws(text, i);
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws(text, i);
      }
      if (i >= text.size())
        throw input_error("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw input_error("malformed token at position " + std::to_string(i) + " in \"" +
                          std::string(text) + "\"");
      int value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > kMaxDegree + 1) break;
        ++i;
      }
      if (value < 1 || value > degree)
        throw input_error("point " + std::to_string(value) + " out of range 1.." +
                          std::to_string(degree));
      if (used[value - 1])
        throw input_error("point " + std::to_string(value) + " repeated in \"" +
                          std::string(text) + "\"");
      used[value - 1] = 1;
      cycle.push_back(value - 1);
    }
    if (cycle.size() == 1)
      throw input_error("single-point cycle in \"" + std::string(text) + "\"");
    for (std::size_t k = 0; k < cycle.size(); ++k)
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_ws(text, i);
  }
  Perm p;
  p.images_ = std::move(images);
  return p;
}

bool Perm::is_identity() const {
  for (int x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

bool Perm::is_even() const {
  // Parity = (moved points - nontrivial cycles) mod 2.
  int transpositions = 0;
  for (const auto& c : cycles()) transpositions += static_cast<int>(c.size()) - 1;
  return transpositions % 2 == 0;
}

Perm Perm::inverse() const {
  std::vector<int> inv(images_.size());
  for (int x = 0; x < degree(); ++x) inv[images_[x]] = x;
  Perm p;
  p.images_ = std::move(inv);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw input_error("compose: degree mismatch");
  Perm p;
  p.images_.resize(a.images_.size());
  for (int x = 0; x < a.degree(); ++x) p.images_[x] = b.images_[a.images_[x]];
  return p;
}

Perm Perm::conjugated_by(const Perm& g) const {
  return compose(compose(g.inverse(), *this), g);
}

std::uint64_t Perm::order() const {
  std::uint64_t result = 1;
  for (const auto& c : cycles()) result = std::lcm(result, static_cast<std::uint64_t>(c.size()));
  return result;
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[x]; x = images_[x]) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<int> Perm::support() const {
  std::vector<int> out;
  for (int x = 0; x < degree(); ++x)
    if (images_[x] != x) out.push_back(x);
  return out;
}

std::string Perm::cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k] + 1);
    }
    out += ')';
  }
  return out;
}

std::size_t PermHash::operator()(const Perm& p) const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (int v : p.images()) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace mindeg
