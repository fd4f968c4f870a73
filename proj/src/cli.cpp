#include "grouplaw/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouplaw/caps.hpp"
#include "grouplaw/errors.hpp"
#include "grouplaw/group_io.hpp"
#include "grouplaw/probability.hpp"
#include "grouplaw/synthesis.hpp"

namespace grouplaw {

namespace {

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

// Reports go to the -o file when given, otherwise to standard output.
void emit(const nlohmann::ordered_json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << j.dump(2) << '\n';
  else
    write_json_file(out_path, j);
}

int default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Caps caps;
  int jobs = default_jobs();
  std::string group_path, kernel_path, word_arg, out_path, info_path;
  int n = 0, d = 0, k = 0, orbits = 0;
  bool exact = false;
  std::uint64_t mc_samples = 0, seed = 0;
  int exit_code = 0;

  CLI::App app{"Words on finite groups: solvability-detecting and probability-targeted word synthesis, evaluation, and verification"};
  app.require_subcommand(1);
  app.add_option("--tuple-cap", caps.tuple_cap, "largest tuple enumeration size");
  app.add_option("--oracle-cap", caps.oracle_cap, "largest group order for element-level work");
  app.add_option("--word-cap", caps.word_cap, "largest expanded word length");
  app.add_option("--exact-cap", caps.exact_cap, "largest exhaustive evaluation size");
  app.add_option("--jobs", jobs, "worker threads (results never depend on this)");

  CLI::App* group = app.add_subcommand("group", "group file utilities");
  group->require_subcommand(1);
  group->fallthrough();
  CLI::App* info = group->add_subcommand("info", "print a group summary");
  info->fallthrough();
  info->add_option("path", info_path, "group file")->required();
  info->add_option("-o,--output", out_path, "write the summary here instead of stdout");
  info->callback([&] {
    const PermutationGroup G = read_group_file(info_path);
    nlohmann::ordered_json j = group_to_json(G);
    j["order"] = G.order().str();
    j["solvable"] = is_solvable(G);
    emit(j, out_path, out);
  });

  CLI::App* synth = app.add_subcommand("synth", "construct words with prescribed behavior");
  synth->require_subcommand(1);
  synth->fallthrough();

  CLI::App* solvable = synth->add_subcommand(
      "solvable", "word vanishing exactly on tuples generating a solvable subgroup");
  solvable->fallthrough();
  solvable->add_option("--group", group_path, "group file")->required();
  solvable->add_option("-n", n, "tuple length")->required();
  solvable->add_option("-o,--output", out_path, "report file");
  solvable->callback([&] {
    const PermutationGroup G = read_group_file(group_path);
    const SynthesisReport rep = synthesize_solvability_word(G, n, caps);
    emit(rep.to_json(), out_path, out);
    exit_code = rep.verified ? 0 : 1;
  });

  CLI::App* prob = synth->add_subcommand(
      "prob", "word whose satisfaction probability hits a prescribed value");
  prob->fallthrough();
  prob->add_option("--group", group_path, "group file (just nonsolvable)")->required();
  prob->add_option("-d", d, "tuple length")->required();
  prob->add_option("-k", k, "number of selected orbits the word vanishes on")->required();
  CLI::Option* orbits_opt =
      prob->add_option("--orbits", orbits, "how many generating-tuple orbits to use (default all)");
  prob->add_option("-o,--output", out_path, "report file");
  prob->callback([&] {
    const PermutationGroup G = read_group_file(group_path);
    std::optional<int> orbit_count;
    if (orbits_opt->count() > 0) orbit_count = orbits;
    const SynthesisReport rep = synthesize_probability_word(G, d, k, orbit_count, {}, caps);
    emit(rep.to_json(), out_path, out);
    exit_code = rep.verified ? 0 : 1;
  });

  CLI::App* eval = app.add_subcommand("eval", "satisfaction probability of a word");
  eval->fallthrough();
  eval->add_option("--group", group_path, "group file")->required();
  eval->add_option("--word", word_arg, "word text, word file, or program .json file")->required();
  eval->add_flag("--exact", exact, "exhaustive evaluation");
  CLI::Option* mc_opt = eval->add_option("--mc", mc_samples, "Monte Carlo with this many samples");
  eval->add_option("--seed", seed, "sampling seed");
  eval->add_option("-o,--output", out_path, "result file");
  eval->callback([&] {
    const PermutationGroup G = read_group_file(group_path);
    const Slp word = read_word_argument(word_arg);
    const bool mc = mc_opt->count() > 0;
    if (exact == mc) throw InputError("choose exactly one of --exact and --mc");
    const ProbabilityResult res = exact ? exact_probability(G, word, caps, jobs)
                                        : mc_probability(G, word, mc_samples, seed, jobs);
    emit(res.to_json(), out_path, out);
  });

  CLI::App* verify = app.add_subcommand("verify", "check a word against its contract");
  verify->require_subcommand(1);
  verify->fallthrough();
  CLI::App* vsolv = verify->add_subcommand(
      "solvable", "does the word vanish exactly on tuples generating a solvable subgroup?");
  vsolv->fallthrough();
  vsolv->add_option("--group", group_path, "group file")->required();
  vsolv->add_option("-n", n, "tuple length")->required();
  vsolv->add_option("--word", word_arg, "word text, word file, or program .json file")->required();
  vsolv->add_option("-o,--output", out_path, "report file");
  vsolv->callback([&] {
    const PermutationGroup G = read_group_file(group_path);
    const Slp word = read_word_argument(word_arg);
    const SynthesisReport rep = verify_solvability_word(G, n, word, caps);
    emit(rep.to_json(), out_path, out);
    exit_code = rep.verified ? 0 : 1;
  });

  CLI::App* check = app.add_subcommand("check", "structural checks");
  check->require_subcommand(1);
  check->fallthrough();

  CLI::App* obstruction = check->add_subcommand(
      "quotient-obstruction", "can no generating tuple satisfy the word?");
  obstruction->fallthrough();
  obstruction->add_option("--group", group_path, "group file")->required();
  obstruction->add_option("-n", n, "tuple length")->required();
  obstruction->add_option("--word", word_arg, "word text, word file, or program .json file")
      ->required();
  obstruction->add_option("-o,--output", out_path, "report file");
  obstruction->callback([&] {
    const PermutationGroup G = read_group_file(group_path);
    const Slp word = read_word_argument(word_arg);
    const ObstructionReport rep = quotient_obstruction_check(G, n, word, caps);
    emit(rep.to_json(), out_path, out);
    exit_code = rep.obstructed ? 0 : 1;
  });

  CLI::App* monotone = check->add_subcommand(
      "monotonicity", "factoring by a normal subgroup cannot lower the probability");
  monotone->fallthrough();
  monotone->add_option("--group", group_path, "group file")->required();
  monotone->add_option("--kernel", kernel_path, "normal subgroup file")->required();
  monotone->add_option("--word", word_arg, "word text, word file, or program .json file")
      ->required();
  monotone->add_option("-o,--output", out_path, "report file");
  monotone->callback([&] {
    const PermutationGroup G = read_group_file(group_path);
    const PermutationGroup K = read_group_file(kernel_path);
    const Slp word = read_word_argument(word_arg);
    const MonotonicityReport rep = quotient_monotonicity(G, K, word, caps);
    emit(rep.to_json(), out_path, out);
    exit_code = (rep.holds && rep.kernel_identity) ? 0 : 1;
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    print_error(err, "input", e.what());
    return 2;
  } catch (const CapExceeded& e) {
    print_error(err, "cap", e.what());
    return 3;
  } catch (const InputError& e) {
    print_error(err, "input", e.what());
    return 2;
  } catch (const InternalError& e) {
    print_error(err, "internal", e.what());
    return 4;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return 4;
  }
  return exit_code;
}

}  // namespace grouplaw
