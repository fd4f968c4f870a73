#pragma once

#include <string>

#include <json.hpp>

#include "grouplaw/group.hpp"
#include "grouplaw/slp.hpp"

namespace grouplaw {

// Group file format: { "name": str, "degree": int, "generators": ["(0 1 2)", ...] }
// with generators in disjoint-cycle notation over 0-indexed points.
PermutationGroup group_from_json(const nlohmann::json& j);
nlohmann::ordered_json group_to_json(const PermutationGroup& G);
PermutationGroup read_group_file(const std::string& path);
void write_group_file(const std::string& path, const PermutationGroup& G);

// A word argument is inline text, a text file holding a word, or (with a
// .json suffix) a program file; programs are never accepted inline.
// min_arity pads the result so it can be evaluated on longer tuples.
Slp read_word_argument(const std::string& arg, int min_arity = 0);

// Parsed JSON from a file, with parse failures reported as input errors.
nlohmann::json read_json_file(const std::string& path);

// Serialize with a stable layout (two-space indent, trailing newline) so
// identical invocations produce byte-identical files.
void write_json_file(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace grouplaw
