#include "autgroup/slp.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <sstream>

#include "autgroup/error.hpp"
#include "text.hpp"

namespace autgroup {

std::optional<std::uint32_t> Slp::find_rule(std::string_view name) const {
  for (std::uint32_t i = 0; i < rules_.size(); ++i) {
    if (rules_[i].name == name) return i;
  }
  return std::nullopt;
}

Slp Slp::inverted() const {
  SlpBuilder builder;
  std::string fresh = rules_[start_].name + "_inv";
  while (find_rule(fresh)) fresh += "_inv";
  for (const SlpRule& rule : rules_) {
    std::vector<SlpBuilder::Symbol> body;
    for (const SymbolRef& s : rule.body) {
      body.push_back({!s.is_terminal(), s.is_terminal() ? terminals_[s.index] : rules_[s.index].name,
                      s.sign});
    }
    builder.rule(rule.name, std::move(body));
  }
  builder.rule(fresh, {SlpBuilder::ref(rules_[start_].name, Sign::kNegative)});
  builder.start(fresh);
  return builder.build();
}

bool operator==(const Slp& lhs, const Slp& rhs) {
  if (lhs.rules_.size() != rhs.rules_.size()) return false;
  if (lhs.rules_[lhs.start_].name != rhs.rules_[rhs.start_].name) return false;
  auto symbol_name = [](const Slp& slp, const SymbolRef& s) -> const std::string& {
    return s.is_terminal() ? slp.terminals_[s.index] : slp.rules_[s.index].name;
  };
  for (const SlpRule& rule : lhs.rules_) {
    auto other = rhs.find_rule(rule.name);
    if (!other) return false;
    const auto& body = rhs.rules_[*other].body;
    if (body.size() != rule.body.size()) return false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      const SymbolRef& a = rule.body[i];
      const SymbolRef& b = body[i];
      if (a.kind != b.kind || a.sign != b.sign || symbol_name(lhs, a) != symbol_name(rhs, b)) {
        return false;
      }
    }
  }
  return true;
}

SlpBuilder& SlpBuilder::rule(std::string name, std::vector<Symbol> body) {
  auto [it, fresh] = by_name_.try_emplace(name, static_cast<std::uint32_t>(rules_.size()));
  if (!fresh) throw ValidationError("duplicate rule for " + name);
  rules_.emplace_back(std::move(name), std::move(body));
  return *this;
}

SlpBuilder& SlpBuilder::start(std::string name) {
  start_ = std::move(name);
  return *this;
}

Slp SlpBuilder::build() const {
  if (!start_) throw ValidationError("SLP has no start symbol");
  auto start = by_name_.find(*start_);
  if (start == by_name_.end()) throw ValidationError("start symbol " + *start_ + " has no rule");

  Slp slp;
  slp.start_ = start->second;
  std::unordered_map<std::string, std::uint32_t> terminal_index;
  for (const auto& [name, body] : rules_) {
    SlpRule rule{name, {}};
    rule.body.reserve(body.size());
    for (const Symbol& sym : body) {
      if (sym.nonterminal) {
        auto it = by_name_.find(sym.name);
        if (it == by_name_.end()) {
          throw ValidationError("rule " + name + " references missing rule " + sym.name);
        }
        rule.body.push_back({SymbolRef::Kind::kNonTerminal, it->second, sym.sign});
      } else {
        auto [it, fresh] =
            terminal_index.try_emplace(sym.name, static_cast<std::uint32_t>(slp.terminals_.size()));
        if (fresh) slp.terminals_.push_back(sym.name);
        rule.body.push_back({SymbolRef::Kind::kTerminal, it->second, sym.sign});
      }
    }
    slp.rules_.push_back(std::move(rule));
  }

  // Post-order DFS over all rules gives children before parents.
  const std::size_t n = slp.rules_.size();
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> colour(n, kWhite);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (colour[root] != kWhite) continue;
    colour[root] = kGrey;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      auto& [r, pos] = stack.back();
      const auto& body = slp.rules_[r].body;
      if (pos == body.size()) {
        colour[r] = kBlack;
        slp.bottom_up_.push_back(r);
        stack.pop_back();
        continue;
      }
      const SymbolRef s = body[pos++];
      if (s.is_terminal()) continue;
      if (colour[s.index] == kGrey) {
        throw ValidationError("cycle detected through rule " + slp.rules_[s.index].name);
      }
      if (colour[s.index] == kWhite) {
        colour[s.index] = kGrey;
        stack.push_back({s.index, 0});
      }
    }
  }
  return slp;
}

Slp parse_slp(std::string_view text) {
  using detail::fail;
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError("empty input, expected 'slp v1'", 1, 1);
  const auto& header = lines[0];
  if (header.tokens.size() != 2 || header.tokens[0].text != "slp" || header.tokens[1].text != "v1") {
    fail("expected header 'slp v1'", header, header.tokens[0]);
  }
  if (lines.size() < 2) throw ParseError("missing 'start' line", header.number + 1, 1);
  const auto& start = lines[1];
  if (start.tokens[0].text != "start" || start.tokens.size() != 2) {
    fail("expected 'start <Name>'", start, start.tokens[0]);
  }

  SlpBuilder builder;
  std::unordered_map<std::string, std::size_t> defined_at;
  struct Reference {
    std::string name;
    const detail::Line* line;
    detail::Token token;
  };
  std::vector<Reference> references;

  constexpr std::string_view kInverse = "^-1";
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens[0].text != "rule") {
      fail("unknown directive '" + std::string(line.tokens[0].text) + "'", line, line.tokens[0]);
    }
    if (line.tokens.size() < 2) fail("expected 'rule <Name> <symbols...>'", line);
    const auto& name_token = line.tokens[1];
    std::string name(name_token.text);
    if (name.front() == '@') fail("rule names are written without '@'", line, name_token);
    auto [it, fresh] = defined_at.try_emplace(name, line.number);
    if (!fresh) {
      fail("duplicate rule for " + name + " (first defined on line " + std::to_string(it->second) +
               ")",
           line, name_token);
    }

    std::vector<SlpBuilder::Symbol> body;
    for (std::size_t t = 2; t < line.tokens.size(); ++t) {
      const auto& token = line.tokens[t];
      std::string_view sym = token.text;
      Sign sign = Sign::kPositive;
      if (sym.size() > kInverse.size() && sym.ends_with(kInverse)) {
        sym.remove_suffix(kInverse.size());
        sign = Sign::kNegative;
      }
      const bool nonterminal = sym.front() == '@';
      if (nonterminal) {
        sym.remove_prefix(1);
        if (sym.empty()) fail("empty nonterminal name", line, token);
        references.push_back({std::string(sym), &line, token});
      }
      body.push_back({nonterminal, std::string(sym), sign});
    }
    builder.rule(std::move(name), std::move(body));
  }

  for (const auto& ref : references) {
    if (!defined_at.contains(ref.name)) {
      fail("reference to missing rule " + ref.name, *ref.line, ref.token);
    }
  }
  const std::string start_name(start.tokens[1].text);
  if (!defined_at.contains(start_name)) {
    fail("start symbol " + start_name + " has no rule", start, start.tokens[1]);
  }
  builder.start(start_name);
  return builder.build();
}

namespace {

// Parents before children: reverse post-order from the start, then the same
// for rules not reachable from it, taken in name order.
std::vector<std::uint32_t> listing_order(const Slp& slp) {
  const auto& rules = slp.rules();
  std::vector<char> visited(rules.size(), 0);

  auto reverse_postorder = [&](std::uint32_t root) {
    std::vector<std::uint32_t> post;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
    visited[root] = 1;
    while (!stack.empty()) {
      auto& [r, pos] = stack.back();
      if (pos == rules[r].body.size()) {
        post.push_back(r);
        stack.pop_back();
        continue;
      }
      const SymbolRef s = rules[r].body[pos++];
      if (!s.is_terminal() && !visited[s.index]) {
        visited[s.index] = 1;
        stack.push_back({s.index, 0});
      }
    }
    std::reverse(post.begin(), post.end());
    return post;
  };

  std::vector<std::uint32_t> order = reverse_postorder(slp.start());
  std::vector<std::uint32_t> rest;
  for (std::uint32_t i = 0; i < rules.size(); ++i) {
    if (!visited[i]) rest.push_back(i);
  }
  std::sort(rest.begin(), rest.end(),
            [&](std::uint32_t a, std::uint32_t b) { return rules[a].name < rules[b].name; });
  for (std::uint32_t r : rest) {
    if (visited[r]) continue;
    auto part = reverse_postorder(r);
    order.insert(order.end(), part.begin(), part.end());
  }
  return order;
}

}  // namespace

std::string serialize_slp(const Slp& slp) {
  std::ostringstream out;
  out << "slp v1\n";
  out << "start " << slp.rules()[slp.start()].name << '\n';
  for (std::uint32_t r : listing_order(slp)) {
    const SlpRule& rule = slp.rules()[r];
    out << "rule " << rule.name;
    for (const SymbolRef& s : rule.body) {
      out << ' ';
      if (s.is_terminal()) {
        out << slp.terminals()[s.index];
      } else {
        out << '@' << slp.rules()[s.index].name;
      }
      if (s.sign == Sign::kNegative) out << "^-1";
    }
    out << '\n';
  }
  return out.str();
}

ExpansionLength expansion_length(const Slp& slp) {
  using u128 = uint128;
  constexpr u128 kMax = ~u128{0};
  std::vector<ExpansionLength> lengths(slp.rules().size());
  for (std::uint32_t r : slp.bottom_up_order()) {
    ExpansionLength total;
    for (const SymbolRef& s : slp.rules()[r].body) {
      const ExpansionLength part = s.is_terminal() ? ExpansionLength{1, false} : lengths[s.index];
      if (part.saturated || total.value > kMax - part.value) {
        total = {kMax, true};
      } else {
        total.value += part.value;
      }
    }
    lengths[r] = total;
  }
  return lengths[slp.start()];
}

std::string to_string(uint128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

struct Frame {
  std::uint32_t rule;
  std::uint32_t position;  // symbols already visited
  Sign sign;
};

constexpr Sign times(Sign a, Sign b) { return a == b ? Sign::kPositive : Sign::kNegative; }

// Visits the terminals of the expansion. Direction kLeftToRight yields the
// sequence in written order; kRightToLeft yields the order of action.
enum class Direction { kLeftToRight, kRightToLeft };

template <typename Fn>
std::size_t walk(const Slp& slp, Direction direction, Fn&& fn) {
  const auto& rules = slp.rules();
  std::vector<Frame> stack{{slp.start(), 0, Sign::kPositive}};
  std::size_t peak = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& body = rules[f.rule].body;
    if (f.position == body.size()) {
      stack.pop_back();
      continue;
    }
    // A negative frame reads its rule mirrored.
    const bool forward = (direction == Direction::kLeftToRight) == (f.sign == Sign::kPositive);
    const std::size_t idx = forward ? f.position : body.size() - 1 - f.position;
    ++f.position;
    const SymbolRef s = body[idx];
    const Sign sign = times(f.sign, s.sign);
    if (s.is_terminal()) {
      fn(TerminalSymbol{s.index, sign});
    } else {
      stack.push_back({s.index, 0, sign});
      peak = std::max(peak, stack.size());
    }
  }
  return peak;
}

}  // namespace

std::vector<TerminalSymbol> decompress(const Slp& slp, std::size_t limit) {
  const ExpansionLength len = expansion_length(slp);
  if (len.saturated || len.value > limit) {
    throw LimitError("expansion length " + (len.saturated ? std::string(">= 2^128-1") : to_string(len.value)) +
                     " exceeds limit " + std::to_string(limit));
  }
  std::vector<TerminalSymbol> out;
  out.reserve(static_cast<std::size_t>(len.value));
  walk(slp, Direction::kLeftToRight, [&out](TerminalSymbol t) { out.push_back(t); });
  return out;
}

std::vector<StateId> resolve_terminals(const GAutomaton& aut, const Slp& slp) {
  std::vector<StateId> states;
  states.reserve(slp.terminals().size());
  for (const std::string& name : slp.terminals()) {
    auto s = aut.find_state(name);
    if (!s) throw ValidationError("SLP terminal " + name + " is not a state of the automaton");
    states.push_back(*s);
  }
  return states;
}

StateSequence decompress(const GAutomaton& aut, const Slp& slp, std::size_t limit) {
  const auto states = resolve_terminals(aut, slp);
  const auto symbols = decompress(slp, limit);
  StateSequence seq;
  seq.reserve(symbols.size());
  for (const TerminalSymbol& t : symbols) seq.push_back({states[t.terminal], t.sign});
  return seq;
}

Word stream_apply(const GAutomaton& aut, const Slp& slp, std::span<const StateId> terminal_states,
                  Word word, StreamStats* stats) {
  std::uint64_t applied = 0;
  const std::size_t peak = walk(slp, Direction::kRightToLeft, [&](TerminalSymbol t) {
    transduce(aut, GenSymbol{terminal_states[t.terminal], t.sign}, word);
    ++applied;
  });
  if (stats) {
    stats->peak_frames = std::max(stats->peak_frames, peak);
    stats->terminals_applied += applied;
  }
  return word;
}

Word stream_apply(const GAutomaton& aut, const Slp& slp, Word word, StreamStats* stats) {
  const auto states = resolve_terminals(aut, slp);
  return stream_apply(aut, slp, states, std::move(word), stats);
}

namespace {

std::optional<Word> first_moved(const GAutomaton& aut, const Slp& slp,
                                std::span<const StateId> states, std::size_t length,
                                Letter first) {
  std::optional<Word> witness;
  for_each_word(
      aut.alphabet_size(), length,
      [&](const Word& w) {
        if (stream_apply(aut, slp, states, w) != w) {
          witness = w;
          return false;
        }
        return true;
      },
      first);
  return witness;
}

}  // namespace

Verdict slp_decide_identity(const GAutomaton& aut, const Slp& slp, const SearchOptions& options) {
  const std::size_t d = depth(aut);
  const auto states = resolve_terminals(aut, slp);
  if (d == 0) return Verdict::identity();

  const std::size_t k = aut.alphabet_size();
  const unsigned threads = std::max(1u, options.threads);
  for (Letter base = 0; base < k; base += threads) {
    const Letter end = static_cast<Letter>(std::min<std::size_t>(k, base + threads));
    std::optional<Word> found;
    if (threads == 1) {
      found = first_moved(aut, slp, states, d, base);
    } else {
      std::vector<std::future<std::optional<Word>>> jobs;
      for (Letter a = base; a < end; ++a) {
        jobs.push_back(std::async(std::launch::async, [&, a] {
          return first_moved(aut, slp, states, d, a);
        }));
      }
      for (auto& job : jobs) {
        auto w = job.get();
        if (!found && w) found = std::move(w);
      }
    }
    if (found) return Verdict::moved(std::move(*found));
  }
  return Verdict::identity();
}

}  // namespace autgroup
