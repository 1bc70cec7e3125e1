#include "autgroup/automaton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "autgroup/error.hpp"
#include "text.hpp"

namespace autgroup {

std::optional<StateId> GAutomaton::find_state(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return StateId{it->second};
}

bool operator==(const GAutomaton& lhs, const GAutomaton& rhs) {
  if (lhs.alphabet_size_ != rhs.alphabet_size_ || lhs.names_.size() != rhs.names_.size()) {
    return false;
  }
  auto identity_name = [](const GAutomaton& a) -> std::optional<std::string> {
    if (!a.declared_identity_) return std::nullopt;
    return a.names_[a.declared_identity_->index];
  };
  if (identity_name(lhs) != identity_name(rhs)) return false;

  const std::size_t k = lhs.alphabet_size_;
  for (std::uint32_t p = 0; p < lhs.names_.size(); ++p) {
    auto other = rhs.find_state(lhs.names_[p]);
    if (!other) return false;
    for (Letter a = 0; a < k; ++a) {
      const Transition t = lhs.step(StateId{p}, a);
      const Transition u = rhs.step(*other, a);
      if (t.output != u.output || lhs.names_[t.next.index] != rhs.names_[u.next.index]) {
        return false;
      }
    }
  }
  return true;
}

AutomatonBuilder::AutomatonBuilder(std::size_t alphabet_size) : alphabet_size_(alphabet_size) {
  if (alphabet_size == 0) throw ValidationError("alphabet size must be positive");
}

StateId AutomatonBuilder::state(std::string_view name) {
  std::string key(name);
  auto [it, inserted] = by_name_.try_emplace(key, static_cast<std::uint32_t>(names_.size()));
  if (inserted) {
    names_.push_back(std::move(key));
    output_.resize(output_.size() + alphabet_size_, kUnset);
    next_.resize(next_.size() + alphabet_size_, kUnset);
  }
  return StateId{it->second};
}

AutomatonBuilder& AutomatonBuilder::transition(StateId p, Letter a, Letter b, StateId q) {
  if (p.index >= names_.size() || q.index >= names_.size()) {
    throw ValidationError("transition references an unknown state");
  }
  if (a >= alphabet_size_ || b >= alphabet_size_) {
    throw ValidationError("letter out of range in transition from " + names_[p.index]);
  }
  const std::size_t slot = p.index * alphabet_size_ + a;
  if (next_[slot] != kUnset) {
    throw ValidationError("duplicate transition for state " + names_[p.index] + " on letter " +
                          std::to_string(a));
  }
  output_[slot] = b;
  next_[slot] = q.index;
  return *this;
}

AutomatonBuilder& AutomatonBuilder::transition(std::string_view p, Letter a, Letter b,
                                               std::string_view q) {
  const StateId from = state(p);
  const StateId to = state(q);
  return transition(from, a, b, to);
}

AutomatonBuilder& AutomatonBuilder::declare_identity(StateId s) {
  if (s.index >= names_.size()) throw ValidationError("identity references an unknown state");
  declared_identity_ = s;
  return *this;
}

GAutomaton AutomatonBuilder::build() const {
  const std::size_t k = alphabet_size_;
  if (names_.empty()) throw ValidationError("automaton has no states");

  GAutomaton aut;
  aut.alphabet_size_ = k;
  aut.names_ = names_;
  aut.by_name_ = by_name_;
  aut.output_ = output_;
  aut.next_ = next_;
  aut.input_.assign(names_.size() * k, 0);
  aut.identity_flags_.assign(names_.size(), 0);
  aut.declared_identity_ = declared_identity_;

  std::vector<char> seen(k);
  for (std::uint32_t p = 0; p < names_.size(); ++p) {
    std::fill(seen.begin(), seen.end(), 0);
    bool identity = true;
    for (Letter a = 0; a < k; ++a) {
      const std::size_t slot = p * k + a;
      if (next_[slot] == kUnset) {
        throw ValidationError("missing transition for state " + names_[p] + " on letter " +
                              std::to_string(a));
      }
      const Letter b = output_[slot];
      if (seen[b]) {
        throw ValidationError("non-bijective output column at state " + names_[p]);
      }
      seen[b] = 1;
      aut.input_[p * k + b] = a;
      identity = identity && b == a && next_[slot] == p;
    }
    aut.identity_flags_[p] = identity ? 1 : 0;
  }

  if (declared_identity_ && !aut.identity_flags_[declared_identity_->index]) {
    throw ValidationError("declared identity state " + names_[declared_identity_->index] +
                          " is not an identity");
  }
  return aut;
}

GAutomaton parse_automaton(std::string_view text) {
  using detail::fail;
  const auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError("empty input, expected 'gaut v1'", 1, 1);

  const auto& header = lines[0];
  if (header.tokens.size() != 2 || header.tokens[0].text != "gaut" || header.tokens[1].text != "v1") {
    fail("expected header 'gaut v1'", header, header.tokens[0]);
  }
  if (lines.size() < 2) throw ParseError("missing 'alphabet' line", header.number + 1, 1);

  const auto& alpha = lines[1];
  if (alpha.tokens[0].text != "alphabet") fail("expected 'alphabet <k>'", alpha, alpha.tokens[0]);
  if (alpha.tokens.size() != 2) fail("expected 'alphabet <k>'", alpha);
  const auto k = detail::parse_int<std::uint32_t>(alpha.tokens[1].text);
  if (!k || *k == 0) fail("alphabet size must be a positive integer", alpha, alpha.tokens[1]);

  AutomatonBuilder builder(*k);
  std::optional<std::pair<std::string, const detail::Line*>> identity;
  std::map<std::pair<std::uint32_t, Letter>, std::size_t> defined_at;

  auto state_token = [&](const detail::Line& line, const detail::Token& token) {
    if (token.text.front() == '@') fail("state names must not start with '@'", line, token);
    return builder.state(token.text);
  };
  auto letter_token = [&](const detail::Line& line, const detail::Token& token) {
    const auto v = detail::parse_int<Letter>(token.text);
    if (!v || *v >= *k) {
      fail("letter '" + std::string(token.text) + "' is not in [0, " + std::to_string(*k) + ")",
           line, token);
    }
    return *v;
  };

  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto keyword = line.tokens[0].text;
    if (keyword == "identity") {
      if (line.tokens.size() != 2) fail("expected 'identity <state>'", line);
      if (identity) fail("identity declared twice", line, line.tokens[0]);
      identity.emplace(std::string(line.tokens[1].text), &line);
      state_token(line, line.tokens[1]);
    } else if (keyword == "trans") {
      if (line.tokens.size() != 5) fail("expected 'trans <p> <a> <b> <q>'", line);
      const StateId p = state_token(line, line.tokens[1]);
      const Letter a = letter_token(line, line.tokens[2]);
      const Letter b = letter_token(line, line.tokens[3]);
      const StateId q = state_token(line, line.tokens[4]);
      auto [it, fresh] = defined_at.try_emplace({p.index, a}, line.number);
      if (!fresh) {
        fail("duplicate transition for state " + std::string(line.tokens[1].text) + " on letter " +
                 std::to_string(a) + " (first defined on line " + std::to_string(it->second) + ")",
             line, line.tokens[0]);
      }
      builder.transition(p, a, b, q);
    } else {
      fail("unknown directive '" + std::string(keyword) + "'", line, line.tokens[0]);
    }
  }

  if (identity) builder.declare_identity(builder.state(identity->first));
  return builder.build();
}

namespace {

// Canonical state order: start from the declared identity (if any), then
// breadth-first in order of first appearance in the emitted transition
// lines. When the frontier runs dry, restart at the unvisited state with the
// smallest name. The result depends only on names and transitions.
std::vector<StateId> canonical_order(const GAutomaton& aut) {
  const std::size_t n = aut.state_count();
  std::vector<std::uint32_t> by_name(n);
  for (std::uint32_t i = 0; i < n; ++i) by_name[i] = i;
  std::sort(by_name.begin(), by_name.end(), [&](std::uint32_t x, std::uint32_t y) {
    return aut.name(StateId{x}) < aut.name(StateId{y});
  });

  std::vector<char> visited(n, 0);
  std::vector<StateId> order;
  order.reserve(n);
  auto visit = [&](StateId s) {
    if (!visited[s.index]) {
      visited[s.index] = 1;
      order.push_back(s);
    }
  };
  if (auto id = aut.declared_identity()) visit(*id);

  std::size_t head = 0;
  std::size_t root_cursor = 0;
  while (order.size() < n || head < order.size()) {
    if (head == order.size()) {
      while (visited[by_name[root_cursor]]) ++root_cursor;
      visit(StateId{by_name[root_cursor]});
    }
    const StateId p = order[head++];
    for (Letter a = 0; a < aut.alphabet_size(); ++a) visit(aut.step(p, a).next);
  }
  return order;
}

}  // namespace

std::string serialize_automaton(const GAutomaton& aut) {
  std::ostringstream out;
  out << "gaut v1\n";
  out << "alphabet " << aut.alphabet_size() << '\n';
  if (auto id = aut.declared_identity()) out << "identity " << aut.name(*id) << '\n';
  for (StateId p : canonical_order(aut)) {
    for (Letter a = 0; a < aut.alphabet_size(); ++a) {
      const Transition t = aut.step(p, a);
      out << "trans " << aut.name(p) << ' ' << a << ' ' << t.output << ' ' << aut.name(t.next)
          << '\n';
    }
  }
  return out.str();
}

std::optional<StateId> identity_state(const GAutomaton& aut) {
  for (std::uint32_t i = 0; i < aut.state_count(); ++i) {
    if (aut.is_identity(StateId{i})) return StateId{i};
  }
  return std::nullopt;
}

namespace {

// Longest path (in edges) from each state to an identity state, or nullopt
// when a cycle other than an identity self-loop is reachable.
std::optional<std::vector<std::size_t>> longest_paths(const GAutomaton& aut) {
  const std::size_t n = aut.state_count();
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> colour(n, kWhite);
  std::vector<std::size_t> height(n, 0);

  // Iterative DFS; frames hold (state, next letter to explore).
  std::vector<std::pair<std::uint32_t, Letter>> stack;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (colour[root] != kWhite) continue;
    stack.push_back({root, 0});
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto& [p, a] = stack.back();
      const StateId state{p};
      if (aut.is_identity(state) || a == aut.alphabet_size()) {
        colour[p] = kBlack;
        const std::size_t h = height[p];
        stack.pop_back();
        if (!stack.empty()) {
          auto& parent = height[stack.back().first];
          parent = std::max(parent, h + 1);
        }
        continue;
      }
      const StateId q = aut.step(state, a++).next;
      if (colour[q.index] == kGrey) return std::nullopt;
      if (colour[q.index] == kBlack) {
        height[p] = std::max(height[p], height[q.index] + 1);
        continue;
      }
      colour[q.index] = kGrey;
      stack.push_back({q.index, 0});
    }
  }
  return height;
}

}  // namespace

bool is_finitary(const GAutomaton& aut) { return longest_paths(aut).has_value(); }

std::size_t depth(const GAutomaton& aut) {
  auto heights = longest_paths(aut);
  if (!heights) throw NotFinitaryError("automaton is not finitary");
  return heights->empty() ? 0 : *std::max_element(heights->begin(), heights->end());
}

}  // namespace autgroup
