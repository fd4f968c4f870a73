#include "grouplaw/group_io.hpp"

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "grouplaw/errors.hpp"
#include "grouplaw/perm.hpp"

namespace grouplaw {

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

PermutationGroup group_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
    throw InputError("a group needs \"degree\" and \"generators\" fields");
  int degree = 0;
  std::string name;
  std::vector<Permutation> gens;
  try {
    degree = j.at("degree").get<int>();
    name = j.value("name", std::string());
    for (const auto& entry : j.at("generators"))
      gens.push_back(Permutation::parse_cycles(entry.get<std::string>(), degree));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed group: ") + e.what());
  }
  if (degree < 1) throw InputError("the degree must be positive");
  return PermutationGroup(degree, std::move(gens), std::move(name));
}

nlohmann::ordered_json group_to_json(const PermutationGroup& G) {
  nlohmann::ordered_json j;
  j["name"] = G.name();
  j["degree"] = G.degree();
  auto gens = nlohmann::ordered_json::array();
  for (const Permutation& p : G.generators()) gens.push_back(p.cycle_string());
  j["generators"] = std::move(gens);
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
}

PermutationGroup read_group_file(const std::string& path) { return group_from_json(read_json_file(path)); }

void write_group_file(const std::string& path, const PermutationGroup& G) {
  write_json_file(path, group_to_json(G));
}

Slp read_word_argument(const std::string& arg, int min_arity) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    if (has_suffix(arg, ".json")) {
      try {
        Slp program = Slp::from_json(read_json_file(arg));
        if (program.arity() < min_arity) {
          // Reinterpret over more letters: substitute each input by itself.
          std::vector<Slp> tags;
          tags.reserve(static_cast<std::size_t>(program.arity()));
          for (int i = 1; i <= program.arity(); ++i) tags.push_back(Slp::input(min_arity, i));
          program = program.substitute(tags);
        }
        return program;
      } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed program file: ") + e.what());
      }
    }
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read " + arg);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return Slp::from_word(Word::parse(text, min_arity));
  }
  if (has_suffix(arg, ".json"))
    throw InputError("program file not found: " + arg);
  return Slp::from_word(Word::parse(arg, min_arity));
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw InputError("failed while writing " + path);
}

}  // namespace grouplaw
