#include "grouplaw/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "grouplaw/errors.hpp"
#include "grouplaw/rng.hpp"

namespace grouplaw {

Permutation::Permutation(int degree) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n < 1) throw InputError("permutation degree must be positive");
  std::vector<char> seen(n, 0);
  for (int v : images_) {
    if (v < 0 || v >= n) throw InputError("permutation image out of range");
    if (seen[v]) throw InputError("permutation image table is not a bijection");
    seen[v] = 1;
  }
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

int Permutation::first_moved() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return i;
  return -1;
}

long long Permutation::element_order() const {
  const int n = degree();
  std::vector<char> done(n, 0);
  long long ord = 1;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    long long len = 0;
    for (int j = i; !done[j]; j = images_[j]) {
      done[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

bool Permutation::is_even() const {
  const int n = degree();
  std::vector<char> done(n, 0);
  int transpositions = 0;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    int len = 0;
    for (int j = i; !done[j]; j = images_[j]) {
      done[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw InputError("degree mismatch in permutation product");
  std::vector<int> out(images_.size());
  for (int i = 0; i < degree(); ++i) out[i] = rhs.images_[images_[i]];
  Permutation p(1);
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (int i = 0; i < degree(); ++i) out[images_[i]] = i;
  Permutation p(1);
  p.images_ = std::move(out);
  return p;
}

Permutation Permutation::conjugated_by(const Permutation& g) const {
  return g.inverse() * (*this) * g;
}

Permutation Permutation::power(long long k) const {
  Permutation base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ULL
                               : static_cast<unsigned long long>(k);
  Permutation acc(degree());
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string Permutation::cycle_string() const {
  const int n = degree();
  std::vector<char> done(n, 0);
  std::ostringstream out;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (done[i] || images_[i] == i) {
      done[i] = 1;
      continue;
    }
    any = true;
    out << '(';
    bool first = true;
    for (int j = i; !done[j]; j = images_[j]) {
      done[j] = 1;
      if (!first) out << ' ';
      out << j;
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

Permutation Permutation::parse_cycles(const std::string& text, int degree) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(degree, 0);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("cycle notation: expected '(' in \"" + text + "\"");
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw InputError("cycle notation: expected point in \"" + text + "\"");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1'000'000) throw InputError("cycle notation: point out of range");
        ++i;
      }
      if (v >= degree) throw InputError("cycle notation: point exceeds degree");
      if (used[v]) throw InputError("cycle notation: repeated point");
      used[v] = 1;
      cycle.push_back(v);
      skip_ws();
    }
    if (i >= text.size()) throw InputError("cycle notation: unterminated cycle");
    ++i;  // ')'
    for (std::size_t j = 0; j < cycle.size(); ++j)
      images[cycle[j]] = cycle[(j + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(images));
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  // FNV-1a over the image table.
  std::size_t h = 1469598103934665603ULL;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9E3779B97F4A7C15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}

Permutation random_permutation(int degree, Rng& rng) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  for (int i = degree - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(images[i], images[j]);
  }
  return Permutation(std::move(images));
}

}  // namespace grouplaw
