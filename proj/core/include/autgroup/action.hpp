#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autgroup/automaton.hpp"

namespace autgroup {

enum class Sign : signed char { kPositive = 1, kNegative = -1 };

constexpr Sign flip(Sign s) noexcept {
  return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive;
}

/// A state or its formal inverse.
struct GenSymbol {
  StateId state;
  Sign sign = Sign::kPositive;

  friend constexpr bool operator==(const GenSymbol&, const GenSymbol&) = default;
};

/// Written left to right; the rightmost symbol acts first.
using StateSequence = std::vector<GenSymbol>;
using Word = std::vector<Letter>;

/// Outcome of a word-problem decision. A witness is a word moved by the sequence.
struct Verdict {
  std::optional<Word> witness;

  bool is_identity() const noexcept { return !witness.has_value(); }

  static Verdict identity() { return {}; }
  static Verdict moved(Word w) { return {std::move(w)}; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Knobs for the word-tree searches. `threads` partitions the first letter;
/// the reported witness does not depend on it.
struct SearchOptions {
  unsigned threads = 1;
};

/// (q_1 ... q_l)^-1 = q_l^-1 ... q_1^-1
StateSequence invert_sequence(const StateSequence& seq);

/// Reads `word` through one signed symbol, in place. Returns the state reached.
StateId transduce(const GAutomaton& aut, GenSymbol symbol, std::span<Letter> word);

/// seq o word, rightmost symbol first.
Word apply(const GAutomaton& aut, const StateSequence& seq, Word word);

/// seq o word together with the residual sequence: each symbol's state after
/// reading its input, signs preserved.
std::pair<Word, StateSequence> apply_with_residual(const GAutomaton& aut,
                                                   const StateSequence& seq, Word word);

/*
 * Uniform word problem by depth-first search over the letter tree up to
 * depth(aut). Each node keeps the transduced prefix and the residual
 * sequence; a subtree is skipped once the prefix is fixed and every residual
 * state is an identity state. A witness always has length exactly depth(aut)
 * and is the lexicographically least such word that is moved.
 *
 * Throws NotFinitaryError.
 */
Verdict decide_identity(const GAutomaton& aut, const StateSequence& seq,
                        const SearchOptions& options = {});

/// Same contract as decide_identity, by applying seq to every word of length
/// depth(aut) in lexicographic order. Used as the reference oracle.
Verdict decide_identity_exhaustive(const GAutomaton& aut, const StateSequence& seq);

/// Sequence syntax: `q` and `q^-1` tokens, `-` for the empty sequence.
StateSequence parse_sequence(const GAutomaton& aut, std::string_view text);
std::string format_sequence(const GAutomaton& aut, const StateSequence& seq);

/// Word syntax: whitespace separated integers, `-` for the empty word.
Word parse_word(std::string_view text, std::size_t alphabet_size);
std::string format_word(const Word& word);

/// Calls fn(word) for every word of `length` over [0, k) in lexicographic
/// order, optionally restricted to a fixed first letter. Stops early when fn
/// returns false. Returns false iff stopped early.
template <typename Fn>
bool for_each_word(std::size_t k, std::size_t length, Fn&& fn,
                   std::optional<Letter> first = std::nullopt) {
  Word w(length, 0);
  const std::size_t fixed = (first && length > 0) ? 1 : 0;
  if (fixed) w[0] = *first;
  while (true) {
    if (!fn(static_cast<const Word&>(w))) return false;
    std::size_t i = length;
    while (true) {
      if (i == fixed) return true;
      --i;
      if (++w[i] < k) break;
      w[i] = 0;
    }
  }
}

}  // namespace autgroup
