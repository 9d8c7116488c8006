#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mindeg {

inline constexpr int kMaxDegree = 32;

// Permutation of the points 0..degree-1, stored as an image table.
// Immutable value type.
//
// Conventions, fixed project-wide:
//  * All text I/O (cycle notation) is 1-based; everything in memory is
//    0-based. The translation happens exactly here, at parse/print.
//  * Composition is the right action: compose(a, b) maps x to b[a[x]],
//    so a acts first. a^b denotes conjugation b^-1 * a * b.
//  * The degree is explicit and never inferred from the largest moved
//    point. Trailing fixed points are significant (centralizers in the
//    ambient symmetric group see them).
class Perm {
 public:
  Perm() = default;            // degree-0 identity, used for empty embeddings
  explicit Perm(int degree);   // identity

  // Validates that `images` is a bijection on 0..n-1, n <= kMaxDegree.
  static Perm from_images(std::vector<int> images);

  // Parses disjoint cycle notation: "(1 2 3)(4 5 6 7)", separators are
  // spaces or commas, "" and "()" are the identity. Points are 1-based and
  // must lie in 1..degree; repeats within or across cycles are rejected.
  static Perm parse_cycles(std::string_view text, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  bool is_even() const;
  Perm inverse() const;
  Perm conjugated_by(const Perm& g) const;  // g^-1 * (*this) * g
  std::uint64_t order() const;              // lcm of cycle lengths

  // Nontrivial cycles ordered by least moved point, each cycle starting at
  // its least point. Fixed points are omitted.
  std::vector<std::vector<int>> cycles() const;
  std::vector<int> support() const;  // moved points, ascending
  std::string cycle_string() const;  // 1-based; identity prints as "()"

  bool operator==(const Perm&) const = default;
  std::strong_ordering operator<=>(const Perm&) const = default;

 private:
  friend Perm compose(const Perm& a, const Perm& b);
  std::vector<int> images_;
};

// a first, then b: compose(a, b)[x] == b[a[x]]. Degrees must match.
Perm compose(const Perm& a, const Perm& b);

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

}  // namespace mindeg
