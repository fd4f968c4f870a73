#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplaw/perm.hpp"

namespace grouplaw {

struct Syllable {
  int letter;              // 1-based
  long long exponent;      // nonzero in reduced form
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Freely reduced word in the free group on letters x1..x_arity.
class Word {
 public:
  explicit Word(int arity = 0);
  // Frees-reduces the syllable list (merges equal adjacent letters, drops
  // zero exponents, cascades).
  static Word from_syllables(int arity, std::vector<Syllable> syllables);

  int arity() const { return arity_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }
  // Reduced length: sum of |exponent|.
  std::uint64_t length() const;

  Word operator*(const Word& rhs) const;  // concatenate, reduce
  Word inverse() const;
  Word power(long long k) const;
  static Word commutator(const Word& u, const Word& v);  // u^-1 v^-1 u v

  // Evaluate on a tuple; tuple.size() must be >= arity (extra entries are
  // padding and cannot affect the value).
  Permutation evaluate(std::span<const Permutation> tuple) const;

  std::set<int> letters() const;

  // Grammar:  word := term* ; term := atom ('^' int)? ;
  //           atom := letter | '(' word ')' | '[' word ',' word ']' ;
  //           letter := 'x' posint.   Whitespace-insensitive.
  static Word parse(const std::string& text, int min_arity = 0);
  std::string str() const;  // round-trips through parse

  friend bool operator==(const Word&, const Word&) = default;

 private:
  int arity_;
  std::vector<Syllable> syllables_;
};

struct SlpInstruction {
  enum class Op { Input, Mul, Inv, Pow, Comm };
  Op op;
  int a = 0;                // Input: 1-based letter; otherwise operand index
  int b = 0;                // second operand for Mul/Comm
  long long exponent = 0;   // Pow only
  friend bool operator==(const SlpInstruction&, const SlpInstruction&) = default;
};

// Straight-line program over x1..x_arity: an instruction DAG in topological
// order (operands reference strictly earlier instructions). output == -1
// encodes the identity (empty program).
class Slp {
 public:
  explicit Slp(int arity = 0);  // identity
  Slp(int arity, std::vector<SlpInstruction> code, int output);  // validated

  static Slp identity(int arity) { return Slp(arity); }
  static Slp input(int arity, int letter);
  static Slp from_word(const Word& w);

  int arity() const { return arity_; }
  int output() const { return output_; }
  bool is_identity_program() const { return output_ < 0; }
  std::size_t size() const { return code_.size(); }
  const std::vector<SlpInstruction>& code() const { return code_; }

  // Evaluate on a tuple of permutations; tuple.size() must be >= arity and
  // nonempty (the degree is read from the tuple).
  Permutation evaluate(std::span<const Permutation> tuple) const;
  Permutation evaluate(std::span<const Permutation> tuple, int degree) const;

  // Expand to a reduced word; nullopt if the reduced length of any
  // intermediate exceeds length_cap.
  std::optional<Word> expand(std::size_t length_cap) const;

  struct Letters {
    std::set<int> letters;
    bool upper_bound_only = false;  // true when read off reachable inputs
  };
  // Letters of the expanded word when expansion fits the cap; otherwise the
  // reachable input letters, flagged as an upper bound.
  Letters used_letters(std::size_t expand_cap) const;

  // Replace x_i by tags[i-1]; the result is a program over the tags' letters.
  // All tags must share one arity.
  Slp substitute(std::span<const Slp> tags) const;

  nlohmann::ordered_json to_json() const;
  static Slp from_json(const nlohmann::json& j);

  friend bool operator==(const Slp&, const Slp&) = default;

 private:
  int arity_;
  std::vector<SlpInstruction> code_;
  int output_;
};

// Appends instructions into one shared program; index -1 is the identity and
// is absorbed by the combinators.
class SlpBuilder {
 public:
  explicit SlpBuilder(int arity) : arity_(arity) {}

  int import_program(const Slp& s);  // -1 when s is the identity
  int input(int letter);
  int mul(int a, int b);
  int inv(int a);
  int pow(int a, long long exponent);
  int commutator(int a, int b);

  std::size_t size() const { return code_.size(); }
  Slp finish(int output) const;
  // Standalone program for one node, keeping only instructions it reaches.
  Slp extract(int node) const;

 private:
  int arity_;
  std::vector<SlpInstruction> code_;
};

}  // namespace grouplaw
