#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace autgroup {

using Letter = std::uint32_t;

/// Index of a state inside its owning automaton.
struct StateId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(StateId, StateId) = default;
};

/// Result of reading one letter in a state: the emitted letter and the target.
struct Transition {
  Letter output = 0;
  StateId next;

  friend constexpr bool operator==(const Transition&, const Transition&) = default;
};

/*
 * A deterministic, complete and invertible letter-to-letter transducer
 * (a G-automaton). Instances are immutable and always valid: the only way
 * to obtain one is through AutomatonBuilder::build() or parse_automaton(),
 * both of which check every invariant.
 *
 * States are numbered in insertion ("first-seen") order. Transition tables
 * are stored row-major by state, so step() and inverse_step() are O(1).
 */
class GAutomaton {
 public:
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t state_count() const noexcept { return names_.size(); }

  const std::string& name(StateId s) const { return names_.at(s.index); }
  std::optional<StateId> find_state(std::string_view name) const;

  /// The identity state named in the input, if one was declared.
  std::optional<StateId> declared_identity() const noexcept { return declared_identity_; }

  Transition step(StateId p, Letter a) const noexcept {
    return {output_[p.index * alphabet_size_ + a], StateId{next_[p.index * alphabet_size_ + a]}};
  }

  /// Reads b through p^-1: returns the input letter a with step(p, a).output == b
  /// together with the state reached by p on a.
  Transition inverse_step(StateId p, Letter b) const noexcept {
    const Letter a = input_[p.index * alphabet_size_ + b];
    return {a, StateId{next_[p.index * alphabet_size_ + a]}};
  }

  /// True when every transition of p is an a/a self-loop.
  bool is_identity(StateId p) const noexcept { return identity_flags_[p.index] != 0; }

  /// Structural equality by state name: same alphabet, same names, same
  /// transitions, same declared identity. State numbering is ignored.
  friend bool operator==(const GAutomaton& lhs, const GAutomaton& rhs);

 private:
  friend class AutomatonBuilder;
  GAutomaton() = default;

  std::size_t alphabet_size_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::vector<Letter> output_;
  std::vector<std::uint32_t> next_;
  std::vector<Letter> input_;
  std::vector<char> identity_flags_;
  std::optional<StateId> declared_identity_;
};

/// Incremental construction of a GAutomaton; build() validates.
class AutomatonBuilder {
 public:
  explicit AutomatonBuilder(std::size_t alphabet_size);

  /// Returns the id of `name`, creating the state on first use.
  StateId state(std::string_view name);

  /// Records p --a/b--> q. Throws ValidationError on a duplicate (p, a) pair
  /// or a letter outside the alphabet.
  AutomatonBuilder& transition(StateId p, Letter a, Letter b, StateId q);
  AutomatonBuilder& transition(std::string_view p, Letter a, Letter b, std::string_view q);

  AutomatonBuilder& declare_identity(StateId s);

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }

  GAutomaton build() const;

 private:
  static constexpr std::uint32_t kUnset = UINT32_MAX;

  std::size_t alphabet_size_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::vector<Letter> output_;
  std::vector<std::uint32_t> next_;
  std::optional<StateId> declared_identity_;
};

/// Parses the `gaut v1` text format. Throws ParseError or ValidationError.
GAutomaton parse_automaton(std::string_view text);

/// Canonical `gaut v1` text. The state order is derived from names and
/// transitions only, so it does not depend on how the automaton was built.
std::string serialize_automaton(const GAutomaton& aut);

/// Free-function forms of the table lookups.
inline Transition step(const GAutomaton& aut, StateId p, Letter a) { return aut.step(p, a); }
inline Transition inverse_step(const GAutomaton& aut, StateId p, Letter b) {
  return aut.inverse_step(p, b);
}

/// The least-index state whose transitions are all a/a self-loops.
std::optional<StateId> identity_state(const GAutomaton& aut);

/// True iff every cycle of the transition graph is a self-loop at an identity state.
bool is_finitary(const GAutomaton& aut);

/// Longest path to an identity state once identity self-loops are removed.
/// Throws NotFinitaryError.
std::size_t depth(const GAutomaton& aut);

}  // namespace autgroup
