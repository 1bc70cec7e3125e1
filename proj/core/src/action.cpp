#include "autgroup/action.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "autgroup/error.hpp"
#include "text.hpp"

namespace autgroup {

StateSequence invert_sequence(const StateSequence& seq) {
  StateSequence out;
  out.reserve(seq.size());
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back({it->state, flip(it->sign)});
  return out;
}

StateId transduce(const GAutomaton& aut, GenSymbol symbol, std::span<Letter> word) {
  StateId state = symbol.state;
  for (Letter& letter : word) {
    if (aut.is_identity(state)) break;
    const Transition t = symbol.sign == Sign::kPositive ? aut.step(state, letter)
                                                        : aut.inverse_step(state, letter);
    letter = t.output;
    state = t.next;
  }
  return state;
}

Word apply(const GAutomaton& aut, const StateSequence& seq, Word word) {
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) transduce(aut, *it, word);
  return word;
}

std::pair<Word, StateSequence> apply_with_residual(const GAutomaton& aut,
                                                   const StateSequence& seq, Word word) {
  StateSequence residual(seq.size());
  for (std::size_t i = seq.size(); i-- > 0;) {
    residual[i] = {transduce(aut, seq[i], word), seq[i].sign};
  }
  return {std::move(word), std::move(residual)};
}

namespace {

/*
 * Depth-first search below one first letter. levels[m] holds the residual
 * sequence after the first m letters, with identity-state symbols removed
 * (they act trivially on everything that follows).
 */
class WordTreeSearch {
 public:
  WordTreeSearch(const GAutomaton& aut, std::size_t depth) : aut_(aut), depth_(depth) {
    levels_.resize(depth + 1);
    prefix_.resize(depth, 0);
  }

  std::optional<Word> run(const StateSequence& root, Letter first) {
    levels_[0].clear();
    for (const GenSymbol& s : root) {
      if (!aut_.is_identity(s.state)) levels_[0].push_back(s);
    }
    if (levels_[0].empty()) return std::nullopt;
    if (visit(0, first)) return prefix_;
    return std::nullopt;
  }

 private:
  // Reads letter a at position m. Returns true when a witness was found.
  bool visit(std::size_t m, Letter a) {
    const StateSequence& current = levels_[m];
    StateSequence& next = levels_[m + 1];
    next.assign(current.size(), GenSymbol{});
    Letter x = a;
    for (std::size_t i = current.size(); i-- > 0;) {
      const GenSymbol s = current[i];
      const Transition t = s.sign == Sign::kPositive ? aut_.step(s.state, x)
                                                     : aut_.inverse_step(s.state, x);
      x = t.output;
      next[i] = {t.next, s.sign};
    }
    prefix_[m] = a;
    if (x != a) {
      std::fill(prefix_.begin() + static_cast<std::ptrdiff_t>(m) + 1, prefix_.end(), 0);
      return true;
    }
    if (m + 1 == depth_) return false;
    std::erase_if(next, [this](const GenSymbol& s) { return aut_.is_identity(s.state); });
    if (next.empty()) return false;
    for (Letter b = 0; b < aut_.alphabet_size(); ++b) {
      if (visit(m + 1, b)) return true;
    }
    return false;
  }

  const GAutomaton& aut_;
  std::size_t depth_;
  std::vector<StateSequence> levels_;
  Word prefix_;
};

}  // namespace

Verdict decide_identity(const GAutomaton& aut, const StateSequence& seq,
                        const SearchOptions& options) {
  const std::size_t d = depth(aut);
  if (d == 0 || seq.empty()) return Verdict::identity();

  const std::size_t k = aut.alphabet_size();
  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || k == 1) {
    WordTreeSearch search(aut, d);
    for (Letter a = 0; a < k; ++a) {
      if (auto w = search.run(seq, a)) return Verdict::moved(std::move(*w));
    }
    return Verdict::identity();
  }

  // Letters are handed out in batches of `threads`; the least letter with a
  // witness wins, so the answer matches the sequential search.
  for (Letter base = 0; base < k; base += threads) {
    std::vector<std::future<std::optional<Word>>> jobs;
    for (Letter a = base; a < std::min<std::size_t>(k, base + threads); ++a) {
      jobs.push_back(std::async(std::launch::async, [&aut, &seq, d, a] {
        WordTreeSearch search(aut, d);
        return search.run(seq, a);
      }));
    }
    std::optional<Word> found;
    for (auto& job : jobs) {
      auto w = job.get();
      if (!found && w) found = std::move(w);
    }
    if (found) return Verdict::moved(std::move(*found));
  }
  return Verdict::identity();
}

Verdict decide_identity_exhaustive(const GAutomaton& aut, const StateSequence& seq) {
  const std::size_t d = depth(aut);
  std::optional<Word> witness;
  for_each_word(aut.alphabet_size(), d, [&](const Word& w) {
    if (apply(aut, seq, w) != w) {
      witness = w;
      return false;
    }
    return true;
  });
  if (witness) return Verdict::moved(std::move(*witness));
  return Verdict::identity();
}

StateSequence parse_sequence(const GAutomaton& aut, std::string_view text) {
  const auto tokens = detail::split_words(text);
  if (tokens.size() == 1 && tokens[0] == "-") return {};
  StateSequence seq;
  seq.reserve(tokens.size());
  for (std::string_view token : tokens) {
    constexpr std::string_view kInverse = "^-1";
    if (token.size() > kInverse.size() && token.ends_with(kInverse)) {
      if (auto s = aut.find_state(token.substr(0, token.size() - kInverse.size()))) {
        seq.push_back({*s, Sign::kNegative});
        continue;
      }
    }
    auto s = aut.find_state(token);
    if (!s) {
      const auto column = static_cast<std::size_t>(token.data() - text.data()) + 1;
      throw ParseError("unknown state '" + std::string(token) + "' in sequence", 1, column);
    }
    seq.push_back({*s, Sign::kPositive});
  }
  return seq;
}

std::string format_sequence(const GAutomaton& aut, const StateSequence& seq) {
  if (seq.empty()) return "-";
  std::string out;
  for (const GenSymbol& s : seq) {
    if (!out.empty()) out += ' ';
    out += aut.name(s.state);
    if (s.sign == Sign::kNegative) out += "^-1";
  }
  return out;
}

Word parse_word(std::string_view text, std::size_t alphabet_size) {
  const auto tokens = detail::split_words(text);
  if (tokens.size() == 1 && tokens[0] == "-") return {};
  Word word;
  word.reserve(tokens.size());
  for (std::string_view token : tokens) {
    const auto v = detail::parse_int<Letter>(token);
    if (!v || *v >= alphabet_size) {
      const auto column = static_cast<std::size_t>(token.data() - text.data()) + 1;
      throw ParseError("letter '" + std::string(token) + "' is not in [0, " +
                           std::to_string(alphabet_size) + ")",
                       1, column);
    }
    word.push_back(*v);
  }
  return word;
}

std::string format_word(const Word& word) {
  if (word.empty()) return "-";
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << word[i];
  }
  return out.str();
}

}  // namespace autgroup
