#include "grouplaw/slp.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "grouplaw/errors.hpp"

namespace grouplaw {

namespace {

unsigned long long magnitude(long long k) {
  return k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ULL
               : static_cast<unsigned long long>(k);
}

void push_reduced(std::vector<Syllable>& out, int letter, long long exponent) {
  if (exponent == 0) return;
  if (!out.empty() && out.back().letter == letter) {
    out.back().exponent += exponent;
    if (out.back().exponent == 0) out.pop_back();
    return;
  }
  out.push_back({letter, exponent});
}

using Wide = unsigned __int128;

Wide syllable_length(const std::vector<Syllable>& sylls) {
  Wide total = 0;
  for (const auto& s : sylls) total += magnitude(s.exponent);
  return total;
}

}  // namespace

// -------------------------------------------------------------------- Word

Word::Word(int arity) : arity_(arity) {
  if (arity < 0) throw InputError("word arity must be nonnegative");
}

Word Word::from_syllables(int arity, std::vector<Syllable> syllables) {
  Word w(arity);
  for (const auto& s : syllables) {
    if (s.letter < 1) throw InputError("word letter indices are 1-based");
    w.arity_ = std::max(w.arity_, s.letter);
    push_reduced(w.syllables_, s.letter, s.exponent);
  }
  w.arity_ = std::max(w.arity_, arity);
  return w;
}

std::uint64_t Word::length() const {
  std::uint64_t total = 0;
  for (const auto& s : syllables_) total += magnitude(s.exponent);
  return total;
}

Word Word::operator*(const Word& rhs) const {
  Word out(std::max(arity_, rhs.arity_));
  out.syllables_ = syllables_;
  for (const auto& s : rhs.syllables_) push_reduced(out.syllables_, s.letter, s.exponent);
  return out;
}

Word Word::inverse() const {
  Word out(arity_);
  out.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    out.syllables_.push_back({it->letter, -it->exponent});
  return out;
}

namespace {

// w^reps for reduced nonempty w and reps >= 1, without iterating reps times:
// write w = u c u^-1 with c cyclically reduced scaffolding, so the middle
// repeats with at most one merged seam syllable. Returns nullopt when the
// reduced result would exceed cap.
std::optional<std::vector<Syllable>> power_syllables(const std::vector<Syllable>& w,
                                                     unsigned long long reps,
                                                     std::uint64_t cap) {
  std::vector<Syllable> u;
  std::vector<Syllable> c(w);
  std::size_t lo = 0, hi = c.size();
  while (hi - lo >= 2 && c[lo].letter == c[hi - 1].letter &&
         c[lo].exponent + c[hi - 1].exponent == 0) {
    u.push_back(c[lo]);
    ++lo;
    --hi;
  }
  c = std::vector<Syllable>(c.begin() + lo, c.begin() + hi);
  if (c.empty()) return std::vector<Syllable>{};  // cannot happen for reduced w; safe anyway

  std::vector<Syllable> body;
  if (c.size() == 1) {
    const Wide len = Wide(magnitude(c[0].exponent)) * reps;
    if (len > cap) return std::nullopt;
    // exponent magnitude fits: len <= cap <= 2^64
    long long e = c[0].exponent < 0 ? -static_cast<long long>(len) : static_cast<long long>(len);
    body.push_back({c[0].letter, e});
  } else if (c.front().letter == c.back().letter) {
    // seam merges: c = s1 . core . sm, (s1 sm) -> one syllable, never zero here
    const Syllable s1 = c.front(), sm = c.back();
    const std::vector<Syllable> core(c.begin() + 1, c.end() - 1);
    const Syllable seam{s1.letter, s1.exponent + sm.exponent};
    const Wide exact = Wide(magnitude(s1.exponent)) + magnitude(sm.exponent) +
                       (Wide(reps) - 1) * (syllable_length(core) + magnitude(seam.exponent)) +
                       syllable_length(core);
    if (exact > cap) return std::nullopt;
    body.push_back(s1);
    for (unsigned long long r = 1; r < reps; ++r) {
      body.insert(body.end(), core.begin(), core.end());
      body.push_back(seam);
    }
    body.insert(body.end(), core.begin(), core.end());
    body.push_back(sm);
  } else {
    const Wide len = Wide(reps) * syllable_length(c);
    if (len > cap) return std::nullopt;
    for (unsigned long long r = 0; r < reps; ++r) body.insert(body.end(), c.begin(), c.end());
  }

  std::vector<Syllable> out;
  const Wide total = 2 * syllable_length(u) + syllable_length(body);
  if (total > cap) return std::nullopt;
  out.reserve(u.size() * 2 + body.size());
  for (const auto& s : u) out.push_back(s);
  for (const auto& s : body) out.push_back(s);
  for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back({it->letter, -it->exponent});
  return out;
}

std::optional<Word> word_power_capped(const Word& w, long long k, std::uint64_t cap) {
  if (k == 0 || w.empty()) return Word(w.arity());
  const Word base = k < 0 ? w.inverse() : w;
  auto body = power_syllables(base.syllables(), magnitude(k), cap);
  if (!body) return std::nullopt;
  return Word::from_syllables(w.arity(), std::move(*body));
}

}  // namespace

Word Word::power(long long k) const {
  auto r = word_power_capped(*this, k, 1'000'000'000ULL);
  if (!r) throw CapExceeded("word power exceeds the expansion safety bound");
  return *r;
}

Word Word::commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

Permutation Word::evaluate(std::span<const Permutation> tuple) const {
  if (tuple.empty()) throw InputError("cannot evaluate a word on an empty tuple");
  if (static_cast<int>(tuple.size()) < arity_)
    throw InputError("tuple shorter than word arity");
  const int degree = tuple[0].degree();
  for (const auto& p : tuple)
    if (p.degree() != degree) throw InputError("tuple entries must share one degree");
  Permutation acc(degree);
  for (const auto& s : syllables_) acc = acc * tuple[s.letter - 1].power(s.exponent);
  return acc;
}

std::set<int> Word::letters() const {
  std::set<int> out;
  for (const auto& s : syllables_) out.insert(s.letter);
  return out;
}

// ------------------------------------------------------------- word parser

namespace {

class WordParser {
 public:
  explicit WordParser(const std::string& text) : s_(text) {}

  Word parse_all() {
    Word w = word();
    ws();
    if (i_ < s_.size()) throw InputError("word syntax: unexpected '" + std::string(1, s_[i_]) + "'");
    return w;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end_of_word() {
    ws();
    return i_ >= s_.size() || s_[i_] == ')' || s_[i_] == ',' || s_[i_] == ']';
  }

  Word word() {
    Word acc(0);
    while (!at_end_of_word()) acc = acc * term();
    return acc;
  }

  Word term() {
    Word a = atom();
    ws();
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      return a.power(integer());
    }
    return a;
  }

  Word atom() {
    ws();
    if (i_ >= s_.size()) throw InputError("word syntax: unexpected end of input");
    const char c = s_[i_];
    if (c == 'x') {
      ++i_;
      const long long letter = digits();
      if (letter < 1) throw InputError("word syntax: letters are x1, x2, ...");
      return Word::from_syllables(0, {{static_cast<int>(letter), 1}});
    }
    if (c == '(') {
      ++i_;
      Word w = word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++i_;
      Word u = word();
      expect(',');
      Word v = word();
      expect(']');
      return Word::commutator(u, v);
    }
    throw InputError("word syntax: unexpected '" + std::string(1, c) + "'");
  }

  void expect(char c) {
    ws();
    if (i_ >= s_.size() || s_[i_] != c)
      throw InputError(std::string("word syntax: expected '") + c + "'");
    ++i_;
  }

  long long digits() {
    ws();
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
      throw InputError("word syntax: expected an integer");
    long long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_] - '0');
      if (v > 1'000'000'000'000LL) throw InputError("word syntax: exponent too large");
      ++i_;
    }
    return v;
  }

  long long integer() {
    ws();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    const long long v = digits();
    return neg ? -v : v;
  }
};

}  // namespace

Word Word::parse(const std::string& text, int min_arity) {
  Word w = WordParser(text).parse_all();
  w.arity_ = std::max(w.arity_, min_arity);
  return w;
}

std::string Word::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : syllables_) {
    if (!first) out << ' ';
    first = false;
    out << 'x' << s.letter;
    if (s.exponent != 1) out << '^' << s.exponent;
  }
  return out.str();
}

// --------------------------------------------------------------------- Slp

Slp::Slp(int arity) : arity_(arity), output_(-1) {
  if (arity < 0) throw InputError("program arity must be nonnegative");
}

Slp::Slp(int arity, std::vector<SlpInstruction> code, int output)
    : arity_(arity), code_(std::move(code)), output_(output) {
  if (arity < 0) throw InputError("program arity must be nonnegative");
  if (output < -1 || output >= static_cast<int>(code_.size()))
    throw InputError("program output index out of range");
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const auto& ins = code_[i];
    auto check_ref = [&](int r) {
      if (r < 0 || r >= static_cast<int>(i))
        throw InputError("program operand must reference an earlier instruction");
    };
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        if (ins.a < 1 || ins.a > arity_) throw InputError("program input letter out of range");
        break;
      case SlpInstruction::Op::Inv:
        check_ref(ins.a);
        break;
      case SlpInstruction::Op::Pow:
        check_ref(ins.a);
        break;
      case SlpInstruction::Op::Mul:
      case SlpInstruction::Op::Comm:
        check_ref(ins.a);
        check_ref(ins.b);
        break;
    }
  }
}

Slp Slp::input(int arity, int letter) {
  if (letter < 1 || letter > arity) throw InputError("program input letter out of range");
  return Slp(arity, {{SlpInstruction::Op::Input, letter, 0, 0}}, 0);
}

Slp Slp::from_word(const Word& w) {
  SlpBuilder b(w.arity());
  int acc = -1;
  for (const auto& s : w.syllables()) {
    const int x = b.input(s.letter);
    acc = b.mul(acc, s.exponent == 1 ? x : b.pow(x, s.exponent));
  }
  return b.finish(acc);
}

namespace {

std::vector<char> reachable_nodes(const std::vector<SlpInstruction>& code, int output) {
  std::vector<char> mark(code.size(), 0);
  if (output < 0) return mark;
  std::vector<int> stack{output};
  mark[output] = 1;
  while (!stack.empty()) {
    const int idx = stack.back();
    stack.pop_back();
    const auto& ins = code[idx];
    auto visit = [&](int r) {
      if (!mark[r]) {
        mark[r] = 1;
        stack.push_back(r);
      }
    };
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        break;
      case SlpInstruction::Op::Inv:
      case SlpInstruction::Op::Pow:
        visit(ins.a);
        break;
      case SlpInstruction::Op::Mul:
      case SlpInstruction::Op::Comm:
        visit(ins.a);
        visit(ins.b);
        break;
    }
  }
  return mark;
}

}  // namespace

Permutation Slp::evaluate(std::span<const Permutation> tuple) const {
  if (tuple.empty()) throw InputError("cannot evaluate a program on an empty tuple");
  return evaluate(tuple, tuple[0].degree());
}

Permutation Slp::evaluate(std::span<const Permutation> tuple, int degree) const {
  if (static_cast<int>(tuple.size()) < arity_)
    throw InputError("tuple shorter than program arity");
  for (const auto& p : tuple)
    if (p.degree() != degree) throw InputError("tuple entries must share one degree");
  if (output_ < 0) return Permutation(degree);

  const auto mark = reachable_nodes(code_, output_);
  std::vector<Permutation> value;
  std::vector<int> slot(code_.size(), -1);
  for (std::size_t i = 0; i < code_.size(); ++i) {
    if (!mark[i]) continue;
    const auto& ins = code_[i];
    Permutation v(degree);
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        v = tuple[ins.a - 1];
        break;
      case SlpInstruction::Op::Mul:
        v = value[slot[ins.a]] * value[slot[ins.b]];
        break;
      case SlpInstruction::Op::Inv:
        v = value[slot[ins.a]].inverse();
        break;
      case SlpInstruction::Op::Pow:
        v = value[slot[ins.a]].power(ins.exponent);
        break;
      case SlpInstruction::Op::Comm: {
        const Permutation& a = value[slot[ins.a]];
        const Permutation& b = value[slot[ins.b]];
        v = a.inverse() * b.inverse() * a * b;
        break;
      }
    }
    slot[i] = static_cast<int>(value.size());
    value.push_back(std::move(v));
  }
  return value[slot[output_]];
}

std::optional<Word> Slp::expand(std::size_t length_cap) const {
  if (output_ < 0) return Word(arity_);
  const std::uint64_t cap = length_cap;
  const auto mark = reachable_nodes(code_, output_);
  std::vector<std::optional<Word>> value(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    if (!mark[i]) continue;
    const auto& ins = code_[i];
    auto overflowed = [&](int r) { return !value[r].has_value(); };
    std::optional<Word> v;
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        v = Word::from_syllables(arity_, {{ins.a, 1}});
        break;
      case SlpInstruction::Op::Mul:
        if (!overflowed(ins.a) && !overflowed(ins.b)) v = *value[ins.a] * *value[ins.b];
        break;
      case SlpInstruction::Op::Inv:
        if (!overflowed(ins.a)) v = value[ins.a]->inverse();
        break;
      case SlpInstruction::Op::Pow:
        if (!overflowed(ins.a)) v = word_power_capped(*value[ins.a], ins.exponent, cap);
        break;
      case SlpInstruction::Op::Comm:
        if (!overflowed(ins.a) && !overflowed(ins.b))
          v = Word::commutator(*value[ins.a], *value[ins.b]);
        break;
    }
    if (v && v->length() > cap) v.reset();
    value[i] = std::move(v);
  }
  if (!value[output_]) return std::nullopt;
  Word out = *value[output_];
  return Word::from_syllables(arity_, out.syllables());
}

Slp::Letters Slp::used_letters(std::size_t expand_cap) const {
  Letters out;
  if (auto w = expand(expand_cap)) {
    out.letters = w->letters();
    out.upper_bound_only = false;
    return out;
  }
  out.upper_bound_only = true;
  const auto mark = reachable_nodes(code_, output_);
  for (std::size_t i = 0; i < code_.size(); ++i)
    if (mark[i] && code_[i].op == SlpInstruction::Op::Input) out.letters.insert(code_[i].a);
  return out;
}

Slp Slp::substitute(std::span<const Slp> tags) const {
  if (static_cast<int>(tags.size()) < arity_)
    throw InputError("substitution needs one program per letter");
  int tag_arity = 0;
  for (const auto& t : tags) tag_arity = std::max(tag_arity, t.arity());
  SlpBuilder b(tag_arity);
  if (output_ < 0) return b.finish(-1);
  std::vector<int> tag_node(arity_, -2);  // -2 = not yet imported
  const auto mark = reachable_nodes(code_, output_);
  std::vector<int> map(code_.size(), -2);
  for (std::size_t i = 0; i < code_.size(); ++i) {
    if (!mark[i]) continue;
    const auto& ins = code_[i];
    switch (ins.op) {
      case SlpInstruction::Op::Input: {
        int& t = tag_node[ins.a - 1];
        if (t == -2) t = b.import_program(tags[ins.a - 1]);
        map[i] = t;
        break;
      }
      case SlpInstruction::Op::Mul:
        map[i] = b.mul(map[ins.a], map[ins.b]);
        break;
      case SlpInstruction::Op::Inv:
        map[i] = b.inv(map[ins.a]);
        break;
      case SlpInstruction::Op::Pow:
        map[i] = b.pow(map[ins.a], ins.exponent);
        break;
      case SlpInstruction::Op::Comm:
        map[i] = b.commutator(map[ins.a], map[ins.b]);
        break;
    }
  }
  return b.finish(map[output_]);
}

namespace {

const char* op_name(SlpInstruction::Op op) {
  switch (op) {
    case SlpInstruction::Op::Input: return "input";
    case SlpInstruction::Op::Mul: return "mul";
    case SlpInstruction::Op::Inv: return "inv";
    case SlpInstruction::Op::Pow: return "pow";
    case SlpInstruction::Op::Comm: return "comm";
  }
  return "?";
}

}  // namespace

nlohmann::ordered_json Slp::to_json() const {
  nlohmann::ordered_json j;
  j["arity"] = arity_;
  j["output"] = output_;
  auto& ins = j["instructions"] = nlohmann::ordered_json::array();
  for (const auto& c : code_) {
    nlohmann::ordered_json e;
    e["op"] = op_name(c.op);
    switch (c.op) {
      case SlpInstruction::Op::Input:
        e["letter"] = c.a;
        break;
      case SlpInstruction::Op::Inv:
        e["a"] = c.a;
        break;
      case SlpInstruction::Op::Pow:
        e["a"] = c.a;
        e["exponent"] = c.exponent;
        break;
      case SlpInstruction::Op::Mul:
      case SlpInstruction::Op::Comm:
        e["a"] = c.a;
        e["b"] = c.b;
        break;
    }
    ins.push_back(std::move(e));
  }
  return j;
}

Slp Slp::from_json(const nlohmann::json& j) {
  try {
    const int arity = j.at("arity").get<int>();
    const int output = j.at("output").get<int>();
    std::vector<SlpInstruction> code;
    for (const auto& e : j.at("instructions")) {
      const std::string op = e.at("op").get<std::string>();
      SlpInstruction ins{};
      if (op == "input") {
        ins.op = SlpInstruction::Op::Input;
        ins.a = e.at("letter").get<int>();
      } else if (op == "mul") {
        ins.op = SlpInstruction::Op::Mul;
        ins.a = e.at("a").get<int>();
        ins.b = e.at("b").get<int>();
      } else if (op == "inv") {
        ins.op = SlpInstruction::Op::Inv;
        ins.a = e.at("a").get<int>();
      } else if (op == "pow") {
        ins.op = SlpInstruction::Op::Pow;
        ins.a = e.at("a").get<int>();
        ins.exponent = e.at("exponent").get<long long>();
      } else if (op == "comm") {
        ins.op = SlpInstruction::Op::Comm;
        ins.a = e.at("a").get<int>();
        ins.b = e.at("b").get<int>();
      } else {
        throw InputError("program JSON: unknown op '" + op + "'");
      }
      code.push_back(ins);
    }
    return Slp(arity, std::move(code), output);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("program JSON malformed: ") + e.what());
  }
}

// -------------------------------------------------------------- SlpBuilder

int SlpBuilder::import_program(const Slp& s) {
  if (s.arity() > arity_) throw InputError("imported program arity exceeds builder arity");
  if (s.is_identity_program()) return -1;
  const auto mark = reachable_nodes(s.code(), s.output());
  std::vector<int> map(s.code().size(), -2);
  for (std::size_t i = 0; i < s.code().size(); ++i) {
    if (!mark[i]) continue;
    SlpInstruction ins = s.code()[i];
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        break;
      case SlpInstruction::Op::Inv:
      case SlpInstruction::Op::Pow:
        ins.a = map[ins.a];
        break;
      case SlpInstruction::Op::Mul:
      case SlpInstruction::Op::Comm:
        ins.a = map[ins.a];
        ins.b = map[ins.b];
        break;
    }
    map[i] = static_cast<int>(code_.size());
    code_.push_back(ins);
  }
  return map[s.output()];
}

int SlpBuilder::input(int letter) {
  if (letter < 1 || letter > arity_) throw InputError("program input letter out of range");
  code_.push_back({SlpInstruction::Op::Input, letter, 0, 0});
  return static_cast<int>(code_.size()) - 1;
}

int SlpBuilder::mul(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  code_.push_back({SlpInstruction::Op::Mul, a, b, 0});
  return static_cast<int>(code_.size()) - 1;
}

int SlpBuilder::inv(int a) {
  if (a < 0) return -1;
  code_.push_back({SlpInstruction::Op::Inv, a, 0, 0});
  return static_cast<int>(code_.size()) - 1;
}

int SlpBuilder::pow(int a, long long exponent) {
  if (a < 0 || exponent == 0) return -1;
  if (exponent == 1) return a;
  code_.push_back({SlpInstruction::Op::Pow, a, 0, exponent});
  return static_cast<int>(code_.size()) - 1;
}

int SlpBuilder::commutator(int a, int b) {
  if (a < 0 || b < 0) return -1;
  code_.push_back({SlpInstruction::Op::Comm, a, b, 0});
  return static_cast<int>(code_.size()) - 1;
}

Slp SlpBuilder::finish(int output) const { return Slp(arity_, code_, output); }

Slp SlpBuilder::extract(int node) const {
  if (node < 0) return Slp(arity_);
  if (node >= static_cast<int>(code_.size())) throw InternalError("extract node out of range");
  const auto mark = reachable_nodes(code_, node);
  std::vector<int> map(code_.size(), -2);
  std::vector<SlpInstruction> kept;
  for (std::size_t i = 0; i < code_.size(); ++i) {
    if (!mark[i]) continue;
    SlpInstruction ins = code_[i];
    switch (ins.op) {
      case SlpInstruction::Op::Input:
        break;
      case SlpInstruction::Op::Inv:
      case SlpInstruction::Op::Pow:
        ins.a = map[ins.a];
        break;
      case SlpInstruction::Op::Mul:
      case SlpInstruction::Op::Comm:
        ins.a = map[ins.a];
        ins.b = map[ins.b];
        break;
    }
    map[i] = static_cast<int>(kept.size());
    kept.push_back(ins);
  }
  return Slp(arity_, std::move(kept), map[node]);
}

}  // namespace grouplaw
