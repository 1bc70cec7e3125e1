#pragma once

// Fixtures and random generators shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "autgroup/action.hpp"
#include "autgroup/automaton.hpp"
#include "autgroup/formulas.hpp"
#include "autgroup/slp.hpp"

namespace autgroup::testing {

// Two states over {0,1}: x swaps the first letter, e is the identity.
inline constexpr const char* kF1 =
    "gaut v1\n"
    "alphabet 2\n"
    "trans x 0 1 e\n"
    "trans x 1 0 e\n"
    "trans e 0 0 e\n"
    "trans e 1 1 e\n";

inline GAutomaton f1() { return parse_automaton(kF1); }

// (G, G, delta) for G = Z/3: g --h/(g+h)--> 0.
inline GAutomaton z3_automaton() {
  AutomatonBuilder b(3);
  for (std::uint32_t g = 0; g < 3; ++g) {
    for (Letter h = 0; h < 3; ++h) b.transition(std::to_string(g), h, (g + h) % 3, "0");
  }
  return b.build();
}

inline GenSymbol pos(const GAutomaton& aut, const std::string& name) {
  return {*aut.find_state(name), Sign::kPositive};
}
inline GenSymbol neg(const GAutomaton& aut, const std::string& name) {
  return {*aut.find_state(name), Sign::kNegative};
}

using Rng = std::mt19937_64;

/*
 * Random finitary automaton: state 0 is the identity, every other state i
 * only moves to states with smaller index, outputs are random permutations.
 */
inline GAutomaton random_finitary(Rng& rng, std::size_t states, std::size_t k) {
  AutomatonBuilder b(k);
  for (std::size_t i = 0; i < states; ++i) b.state("s" + std::to_string(i));
  for (Letter a = 0; a < k; ++a) b.transition(StateId{0}, a, a, StateId{0});
  std::vector<Letter> column(k);
  for (std::uint32_t i = 1; i < states; ++i) {
    std::iota(column.begin(), column.end(), Letter{0});
    std::shuffle(column.begin(), column.end(), rng);
    for (Letter a = 0; a < k; ++a) {
      // Bias towards longer chains so depth is not always 1.
      std::uniform_int_distribution<std::uint32_t> pick(0, i - 1);
      std::uint32_t q = pick(rng);
      if (rng() % 2 == 0) q = i - 1;
      b.transition(StateId{i}, a, column[a], StateId{q});
    }
  }
  return b.build();
}

inline StateSequence random_sequence(Rng& rng, const GAutomaton& aut, std::size_t length) {
  StateSequence seq(length);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(aut.state_count() - 1));
  for (auto& s : seq) s = {StateId{pick(rng)}, rng() % 2 ? Sign::kPositive : Sign::kNegative};
  return seq;
}

inline Word random_word(Rng& rng, std::size_t k, std::size_t length) {
  Word w(length);
  std::uniform_int_distribution<Letter> pick(0, static_cast<Letter>(k - 1));
  for (auto& a : w) a = pick(rng);
  return w;
}

/*
 * Random SLP over the states of `aut`: rule R_i references only R_j with
 * j < i, start is the last rule. Symbols that would push a rule past
 * `max_length` are dropped.
 */
inline Slp random_slp(Rng& rng, const GAutomaton& aut, std::size_t rules, std::size_t max_body,
                      std::uint64_t max_length) {
  std::uniform_int_distribution<std::uint32_t> pick_state(
      0, static_cast<std::uint32_t>(aut.state_count() - 1));
  std::vector<std::uint64_t> lengths;
  SlpBuilder b;
  for (std::size_t i = 0; i < rules; ++i) {
    std::vector<SlpBuilder::Symbol> body;
    std::uint64_t length = 0;
    std::uniform_int_distribution<std::size_t> pick_size(1, max_body);
    const std::size_t size = pick_size(rng);
    for (std::size_t j = 0; j < size; ++j) {
      const Sign sign = rng() % 2 ? Sign::kPositive : Sign::kNegative;
      if (i > 0 && rng() % 4 != 0) {
        // Mostly recent rules, so expansions grow geometrically up to the cap.
        std::uniform_int_distribution<std::size_t> pick_rule(i > 3 ? i - 3 : 0, i - 1);
        const std::size_t r = pick_rule(rng);
        if (length + lengths[r] > max_length) continue;
        length += lengths[r];
        body.push_back(SlpBuilder::ref("R" + std::to_string(r), sign));
      } else {
        if (length + 1 > max_length) continue;
        length += 1;
        body.push_back(SlpBuilder::terminal(aut.name(StateId{pick_state(rng)}), sign));
      }
    }
    lengths.push_back(length);
    b.rule("R" + std::to_string(i), std::move(body));
  }
  b.start("R" + std::to_string(rules - 1));
  return b.build();
}

/// Doubling chain A_1 -> a, A_{n+1} -> A_n A_n; start A_rules.
inline Slp doubling_chain(std::size_t rules, const std::string& terminal) {
  SlpBuilder b;
  b.rule("A_1", {SlpBuilder::terminal(terminal)});
  for (std::size_t n = 1; n < rules; ++n) {
    const std::string prev = "A_" + std::to_string(n);
    b.rule("A_" + std::to_string(n + 1), {SlpBuilder::ref(prev), SlpBuilder::ref(prev)});
  }
  b.start("A_" + std::to_string(rules));
  return b.build();
}

/// Random clause over exactly three distinct variables of 1..n.
inline Clause random_3clause(Rng& rng, std::uint32_t n) {
  std::vector<std::uint32_t> vars(n);
  std::iota(vars.begin(), vars.end(), 1u);
  std::shuffle(vars.begin(), vars.end(), rng);
  Clause c;
  for (int i = 0; i < 3; ++i) c.literals.push_back({vars[i], rng() % 2 == 0});
  return c;
}

inline Cnf random_3cnf(Rng& rng, std::uint32_t n, std::size_t k) {
  Cnf cnf{n, {}};
  for (std::size_t i = 0; i < k; ++i) cnf.clauses.push_back(random_3clause(rng, n));
  return cnf;
}

/// All eight sign patterns over x1, x2, x3: unsatisfiable.
inline Cnf all_sign_patterns() {
  Cnf cnf{3, {}};
  for (int bits = 0; bits < 8; ++bits) {
    Clause c;
    for (std::uint32_t v = 1; v <= 3; ++v) c.literals.push_back({v, ((bits >> (v - 1)) & 1) != 0});
    cnf.clauses.push_back(c);
  }
  return cnf;
}

}  // namespace autgroup::testing
