// Command-line front-end for the autgroup library.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "autgroup/action.hpp"
#include "autgroup/automaton.hpp"
#include "autgroup/error.hpp"
#include "autgroup/formulas.hpp"
#include "autgroup/permutation.hpp"
#include "autgroup/reductions.hpp"
#include "autgroup/slp.hpp"

namespace {

using namespace autgroup;

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

constexpr std::uint32_t kSatOracleGuard = 20;
constexpr std::uint32_t kQbfOracleGuard = 12;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Drops '#' comment lines and joins the rest, so a .seq file can carry comments.
std::string sequence_text(const std::string& raw) {
  std::istringstream in(raw);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out += line + ' ';
  }
  return out;
}

void print_verdict(const Verdict& v) {
  if (v.is_identity()) {
    std::cout << "identity\n";
  } else {
    std::cout << "non-identity witness: " << format_word(*v.witness) << '\n';
  }
}

std::string length_text(const ExpansionLength& len) {
  return len.saturated ? ">= " + to_string(len.value) : to_string(len.value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finitary automaton groups: word problems and reductions"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads for word enumeration")
      ->check(CLI::Range(1u, 256u));

  std::string aut_path, seq_line, seq_file, word_line, slp_path, formula_path, out_prefix;
  std::size_t limit = 10'000'000;

  auto* validate = app.add_subcommand("validate", "Check an automaton and report its depth");
  validate->add_option("automaton", aut_path, "gaut file or -")->required();

  auto* eval = app.add_subcommand("eval", "Apply a state sequence to a word");
  eval->add_option("automaton", aut_path)->required();
  eval->add_option("--seq", seq_line, "Sequence such as \"x y^-1\"")->required();
  eval->add_option("--word", word_line, "Letters such as \"0 1 1\"")->required();

  auto* wp = app.add_subcommand("wp", "Decide whether a sequence acts trivially");
  wp->add_option("automaton", aut_path)->required();
  auto* seq_opt = wp->add_option("--seq", seq_line, "Sequence line");
  wp->add_option("--seq-file", seq_file, "File holding the sequence")->excludes(seq_opt);

  auto* cwp = app.add_subcommand("cwp", "Word problem for an SLP-compressed sequence");
  cwp->add_option("automaton", aut_path)->required();
  cwp->add_option("--slp", slp_path, "slp file or -")->required();

  auto* slp_len = app.add_subcommand("slp-len", "Print the expansion length of an SLP");
  slp_len->add_option("slp", slp_path)->required();

  auto* slp_expand = app.add_subcommand("slp-expand", "Print the expansion of an SLP");
  slp_expand->add_option("slp", slp_path)->required();
  slp_expand->add_option("--limit", limit, "Refuse expansions longer than this");

  auto* reduce_sat = app.add_subcommand("reduce-sat", "3-CNF to a word-problem instance");
  reduce_sat->add_option("formula", formula_path, "DIMACS file or -")->required();
  reduce_sat->add_option("-o,--out", out_prefix, "Output prefix")->required();

  auto* reduce_qbf = app.add_subcommand("reduce-qbf", "Prenex QBF to a compressed instance");
  reduce_qbf->add_option("formula", formula_path, "QDIMACS file or -")->required();
  reduce_qbf->add_option("-o,--out", out_prefix, "Output prefix")->required();

  auto* solve_sat = app.add_subcommand("solve-sat", "Decide a 3-CNF through the reduction");
  solve_sat->add_option("formula", formula_path)->required();

  auto* solve_qbf = app.add_subcommand("solve-qbf", "Decide a prenex QBF through the reduction");
  solve_qbf->add_option("formula", formula_path)->required();

  auto* find_sigma = app.add_subcommand("find-sigma", "Print the A5 triple used by the reductions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const SearchOptions search{threads};
  try {
    if (*validate) {
      const GAutomaton aut = parse_automaton(read_input(aut_path));
      std::cout << "ok\n";
      std::cout << "alphabet: " << aut.alphabet_size() << '\n';
      std::cout << "states: " << aut.state_count() << '\n';
      const bool finitary = is_finitary(aut);
      std::cout << "finitary: " << (finitary ? "yes" : "no") << '\n';
      if (finitary) std::cout << "depth: " << depth(aut) << '\n';
    } else if (*eval) {
      const GAutomaton aut = parse_automaton(read_input(aut_path));
      const Word w = parse_word(word_line, aut.alphabet_size());
      std::cout << format_word(apply(aut, parse_sequence(aut, seq_line), w)) << '\n';
    } else if (*wp) {
      const GAutomaton aut = parse_automaton(read_input(aut_path));
      if (seq_file.empty() && wp->count("--seq") == 0) {
        std::cerr << "wp: one of --seq or --seq-file is required\n";
        return kExitUsage;
      }
      const std::string text = seq_file.empty() ? seq_line : sequence_text(read_input(seq_file));
      print_verdict(decide_identity(aut, parse_sequence(aut, text), search));
    } else if (*cwp) {
      const GAutomaton aut = parse_automaton(read_input(aut_path));
      const Slp slp = parse_slp(read_input(slp_path));
      print_verdict(slp_decide_identity(aut, slp, search));
    } else if (*slp_len) {
      std::cout << length_text(expansion_length(parse_slp(read_input(slp_path)))) << '\n';
    } else if (*slp_expand) {
      const Slp slp = parse_slp(read_input(slp_path));
      const auto seq = decompress(slp, limit);
      std::string line;
      for (const TerminalSymbol& t : seq) {
        if (!line.empty()) line += ' ';
        line += slp.terminals()[t.terminal];
        if (t.sign == Sign::kNegative) line += "^-1";
      }
      std::cout << (line.empty() ? "-" : line) << '\n';
    } else if (*reduce_sat) {
      const Cnf cnf = parse_dimacs(read_input(formula_path));
      const WpInstance inst = sat_to_wp(cnf);
      const std::string meta = layout_comment(sat_layout(cnf));
      write_file(out_prefix + ".gaut", meta + serialize_automaton(inst.automaton));
      write_file(out_prefix + ".seq", meta + format_sequence(inst.automaton, inst.sequence) + '\n');
      std::cout << meta;
    } else if (*reduce_qbf) {
      const NnfQbf q = normalize_to_3qbf(parse_qdimacs(read_input(formula_path)));
      const CwpInstance inst = qbf_to_cwp(q);
      std::string meta = layout_comment(sat_layout(q.matrix));
      meta += "# expansion: " + length_text(expansion_length(inst.slp)) + '\n';
      write_file(out_prefix + ".gaut", meta + serialize_automaton(inst.automaton));
      write_file(out_prefix + ".slp", meta + serialize_slp(inst.slp));
      std::cout << meta;
    } else if (*solve_sat) {
      const Cnf cnf = parse_dimacs(read_input(formula_path));
      const WpInstance inst = sat_to_wp(cnf);
      const Verdict v = decide_identity(inst.automaton, inst.sequence, search);
      const bool sat = !v.is_identity();
      std::cout << (sat ? "SAT" : "UNSAT") << '\n';
      if (sat) std::cout << "witness: " << format_word(*v.witness) << '\n';
      if (cnf.num_vars <= kSatOracleGuard) {
        const bool oracle = brute_force_sat(cnf).has_value();
        std::cout << "oracle: " << (oracle == sat ? "agree" : "disagree") << '\n';
      } else {
        std::cout << "oracle: skipped\n";
      }
    } else if (*solve_qbf) {
      const NnfQbf q = normalize_to_3qbf(parse_qdimacs(read_input(formula_path)));
      const CwpInstance inst = qbf_to_cwp(q);
      const bool truth = !slp_decide_identity(inst.automaton, inst.slp, search).is_identity();
      std::cout << (truth ? "TRUE" : "FALSE") << '\n';
      if (q.num_vars <= kQbfOracleGuard) {
        std::cout << "oracle: " << (eval_nnf_qbf(q) == truth ? "agree" : "disagree") << '\n';
      } else {
        std::cout << "oracle: skipped\n";
      }
    } else if (*find_sigma) {
      const SigmaTriple& t = reduction_triple();
      std::cout << "sigma: " << format_permutation(t.sigma) << '\n';
      std::cout << "alpha: " << format_permutation(t.alpha) << '\n';
      std::cout << "beta: " << format_permutation(t.beta) << '\n';
      std::cout << "sigma = [sigma^beta, sigma^alpha]: "
                << (satisfies_sigma_identity(t) ? "verified" : "FAILED") << '\n';
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
