#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace grouplaw {

class Rng;

// A permutation of {0, ..., degree-1} stored as its image table.
// Products compose left to right: (a * b) applies a first, then b, i.e.
// (a * b)[x] == b[a[x]].
class Permutation {
 public:
  explicit Permutation(int degree);               // identity
  explicit Permutation(std::vector<int> images);  // validated bijection

  int degree() const { return static_cast<int>(images_.size()); }
  int operator[](int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  int first_moved() const;  // least moved point; -1 for the identity
  long long element_order() const;
  bool is_even() const;

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation conjugated_by(const Permutation& g) const;  // g^-1 * this * g
  Permutation power(long long k) const;

  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;  // lexicographic on image tables
  }

  // Disjoint-cycle notation on 0-indexed points, e.g. "(0 1 2)(3 4)".
  // Fixed points are omitted; the identity prints as "()".
  std::string cycle_string() const;
  static Permutation parse_cycles(const std::string& text, int degree);

 private:
  std::vector<int> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

// Uniform over the full symmetric group on `degree` points (Fisher-Yates).
Permutation random_permutation(int degree, Rng& rng);

}  // namespace grouplaw
