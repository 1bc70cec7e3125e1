#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "autgroup/action.hpp"

namespace autgroup {

/// A right-hand-side symbol: a terminal (state name) or a nonterminal
/// reference, each with a sign. A negative nonterminal stands for the
/// mirrored, symbol-inverted expansion of its rule.
struct SymbolRef {
  enum class Kind : std::uint8_t { kTerminal, kNonTerminal };

  Kind kind = Kind::kTerminal;
  std::uint32_t index = 0;  // into Slp::terminals() or Slp::rules()
  Sign sign = Sign::kPositive;

  bool is_terminal() const noexcept { return kind == Kind::kTerminal; }
  friend bool operator==(const SymbolRef&, const SymbolRef&) = default;
};

struct SlpRule {
  std::string name;
  std::vector<SymbolRef> body;
};

/// A terminal of the expansion: index into Slp::terminals() plus sign.
struct TerminalSymbol {
  std::uint32_t terminal = 0;
  Sign sign = Sign::kPositive;

  friend bool operator==(const TerminalSymbol&, const TerminalSymbol&) = default;
};

/*
 * Straight-line program over signed state names: one rule per nonterminal,
 * acyclic reference graph, a designated start rule. Always valid once built.
 */
class Slp {
 public:
  const std::vector<SlpRule>& rules() const noexcept { return rules_; }
  const std::vector<std::string>& terminals() const noexcept { return terminals_; }
  std::uint32_t start() const noexcept { return start_; }
  std::optional<std::uint32_t> find_rule(std::string_view name) const;

  /// Rule indices with every rule after all rules it references.
  const std::vector<std::uint32_t>& bottom_up_order() const noexcept { return bottom_up_; }

  /// Same program with the start symbol re-pointed to a new rule that
  /// references the old start with the opposite sign.
  Slp inverted() const;

  /// Equality by names: same start name, same rules, same bodies.
  friend bool operator==(const Slp& lhs, const Slp& rhs);

 private:
  friend class SlpBuilder;
  Slp() = default;

  std::vector<SlpRule> rules_;
  std::vector<std::string> terminals_;
  std::uint32_t start_ = 0;
  std::vector<std::uint32_t> bottom_up_;
};

/// Collects rules by name; build() resolves references and validates.
class SlpBuilder {
 public:
  struct Symbol {
    bool nonterminal = false;
    std::string name;
    Sign sign = Sign::kPositive;
  };

  static Symbol terminal(std::string name, Sign sign = Sign::kPositive) {
    return {false, std::move(name), sign};
  }
  static Symbol ref(std::string name, Sign sign = Sign::kPositive) {
    return {true, std::move(name), sign};
  }

  /// Throws ValidationError on a duplicate rule name.
  SlpBuilder& rule(std::string name, std::vector<Symbol> body);
  SlpBuilder& start(std::string name);

  /// Throws ValidationError on a missing rule or start, or a cycle.
  Slp build() const;

 private:
  std::vector<std::pair<std::string, std::vector<Symbol>>> rules_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::optional<std::string> start_;
};

/// Parses `slp v1`. Throws ParseError, or ValidationError for a cycle.
Slp parse_slp(std::string_view text);

/// Canonical `slp v1`: rules listed parents before children, start first.
std::string serialize_slp(const Slp& slp);

__extension__ typedef unsigned __int128 uint128;

/// Expansion length, saturating at 2^128 - 1.
struct ExpansionLength {
  uint128 value = 0;
  bool saturated = false;
};

ExpansionLength expansion_length(const Slp& slp);
std::string to_string(uint128 value);

/// The generated terminal sequence. Throws LimitError when the expansion
/// is longer than `limit`; nothing is materialized in that case.
std::vector<TerminalSymbol> decompress(const Slp& slp, std::size_t limit);

/// Maps every terminal name to a state of `aut`. Throws ValidationError.
std::vector<StateId> resolve_terminals(const GAutomaton& aut, const Slp& slp);

/// decompress() followed by terminal resolution.
StateSequence decompress(const GAutomaton& aut, const Slp& slp, std::size_t limit);

struct StreamStats {
  std::size_t peak_frames = 0;
  std::uint64_t terminals_applied = 0;
};

/*
 * Applies the generated sequence to `word` without expanding it. An explicit
 * stack of (rule, position, sign) frames walks the derivation tree from the
 * rightmost terminal leftwards; a negative frame walks its rule front to back
 * with flipped signs. Since the reference graph is acyclic, a rule occurs at
 * most once on the stack, so the stack never exceeds the rule count.
 */
Word stream_apply(const GAutomaton& aut, const Slp& slp, Word word,
                  StreamStats* stats = nullptr);

/// Overload for callers that resolved terminals once up front.
Word stream_apply(const GAutomaton& aut, const Slp& slp, std::span<const StateId> terminal_states,
                  Word word, StreamStats* stats = nullptr);

/// Compressed word problem: runs stream_apply on every word of length
/// depth(aut) in lexicographic order. Throws NotFinitaryError.
Verdict slp_decide_identity(const GAutomaton& aut, const Slp& slp,
                            const SearchOptions& options = {});

}  // namespace autgroup
