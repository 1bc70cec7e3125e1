#include <string>

#include "autgroup/error.hpp"
#include "autgroup/slp.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace autgroup;
using namespace autgroup::testing;

namespace {

std::string terminals(const Slp& slp, const std::vector<TerminalSymbol>& seq) {
  std::string out;
  for (const TerminalSymbol& t : seq) {
    if (!out.empty()) out += ' ';
    out += slp.terminals()[t.terminal];
    if (t.sign == Sign::kNegative) out += "^-1";
  }
  return out;
}

// Naive reference: recursive expansion into a fresh vector per rule.
StateSequence expand(const GAutomaton& aut, const Slp& slp, std::uint32_t rule, Sign sign) {
  StateSequence out;
  for (const SymbolRef& s : slp.rules()[rule].body) {
    if (s.is_terminal()) {
      out.push_back({*aut.find_state(slp.terminals()[s.index]), s.sign});
    } else {
      const auto part = expand(aut, slp, s.index, s.sign);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return sign == Sign::kPositive ? out : invert_sequence(out);
}

}  // namespace

TEST_CASE("parse and decompress") {
  const Slp slp = parse_slp(
      "slp v1\n"
      "start A\n"
      "rule A @B^-1\n"
      "rule B p q\n");
  CHECK(slp.rules().size() == 2);
  CHECK(terminals(slp, decompress(slp, 100)) == "q^-1 p^-1");
  CHECK(expansion_length(slp).value == 2);
}

TEST_CASE("q q^-1 q has length three") {
  const Slp slp = parse_slp("slp v1\nstart A\nrule A q q^-1 q\n");
  CHECK(expansion_length(slp).value == 3);
  CHECK(terminals(slp, decompress(slp, 3)) == "q q^-1 q");
  CHECK_THROWS_AS(decompress(slp, 2), LimitError);
}

TEST_CASE("empty rules and empty expansion") {
  const Slp slp = parse_slp("slp v1\nstart A\nrule A @B @B^-1\nrule B\n");
  CHECK(expansion_length(slp).value == 0);
  CHECK(decompress(slp, 0).empty());
}

TEST_CASE("parse errors") {
  SUBCASE("cycle") {
    CHECK_THROWS_WITH_AS(parse_slp("slp v1\nstart A\nrule A @B\nrule B @A\n"),
                         doctest::Contains("cycle detected through rule"), ValidationError);
  }
  SUBCASE("self reference") {
    CHECK_THROWS_AS(parse_slp("slp v1\nstart A\nrule A x @A\n"), ValidationError);
  }
  SUBCASE("duplicate rule") {
    try {
      parse_slp("slp v1\nstart A\nrule A x\nrule A y\n");
      FAIL("expected parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
  }
  SUBCASE("missing rule") {
    CHECK_THROWS_AS(parse_slp("slp v1\nstart A\nrule A @C\n"), ParseError);
  }
  SUBCASE("missing start") {
    CHECK_THROWS_AS(parse_slp("slp v1\nrule A x\n"), ParseError);
    CHECK_THROWS_AS(parse_slp("slp v1\nstart Z\nrule A x\n"), ParseError);
  }
  SUBCASE("bad header") {
    CHECK_THROWS_AS(parse_slp("slp v2\nstart A\nrule A x\n"), ParseError);
  }
}

TEST_CASE("builder rejects duplicates") {
  SlpBuilder b;
  b.rule("A", {SlpBuilder::terminal("x")});
  CHECK_THROWS_AS(b.rule("A", {}), ValidationError);
}

TEST_CASE("doubling chain") {
  for (std::size_t n = 1; n <= 40; ++n) {
    const Slp slp = doubling_chain(n, "a");
    const ExpansionLength len = expansion_length(slp);
    CHECK_FALSE(len.saturated);
    CHECK(len.value == (uint128{1} << (n - 1)));
  }
  CHECK(terminals(doubling_chain(4, "a"), decompress(doubling_chain(4, "a"), 8)) ==
        "a a a a a a a a");
  CHECK(to_string(expansion_length(doubling_chain(65, "a")).value) == "18446744073709551616");
  CHECK(expansion_length(doubling_chain(128, "a")).value == (uint128{1} << 127));
  CHECK_FALSE(expansion_length(doubling_chain(128, "a")).saturated);
  CHECK(expansion_length(doubling_chain(129, "a")).saturated);
  CHECK_THROWS_AS(decompress(doubling_chain(60, "a"), 1'000'000), LimitError);
}

TEST_CASE("inverted program") {
  Rng rng(31);
  const GAutomaton aut = f1();
  for (int trial = 0; trial < 50; ++trial) {
    const Slp slp = random_slp(rng, aut, 1 + trial % 6, 4, 500);
    const Slp inv = slp.inverted();
    CHECK(decompress(aut, inv, 1000) == invert_sequence(decompress(aut, slp, 1000)));
    CHECK(expansion_length(inv).value == expansion_length(slp).value);
  }
}

TEST_CASE("decompress matches the naive expansion") {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto aut = random_finitary(rng, 2 + trial % 5, 2 + trial % 3);
    const Slp slp = random_slp(rng, aut, 1 + trial % 8, 5, 2000);
    const auto expected = expand(aut, slp, slp.start(), Sign::kPositive);
    CHECK(decompress(aut, slp, 2000) == expected);
    CHECK(expansion_length(slp).value == expected.size());
  }
}

TEST_CASE("stream_apply agrees with apply after decompression") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto aut = random_finitary(rng, 2 + trial % 6, 2 + trial % 4);
    const Slp slp = random_slp(rng, aut, 1 + trial % 10, 5, 5000);
    const auto word = random_word(rng, aut.alphabet_size(), trial % 7);
    StreamStats stats;
    const Word streamed = stream_apply(aut, slp, word, &stats);
    CHECK(streamed == apply(aut, decompress(aut, slp, 5000), word));
    CHECK(stats.peak_frames <= slp.rules().size());
  }
}

TEST_CASE("doubling chain on F1") {
  const GAutomaton aut = f1();
  for (std::size_t n = 1; n <= 16; ++n) {
    const Slp slp = doubling_chain(n, "x");
    StreamStats stats;
    // 2^(n-1) swaps of the first letter.
    const Word expected{n == 1 ? Letter{1} : Letter{0}};
    CHECK(stream_apply(aut, slp, {0}, &stats) == expected);
    CHECK(stats.peak_frames <= n);
    CHECK(slp_decide_identity(aut, slp).is_identity() == (n > 1));
  }
}

TEST_CASE("unknown terminal") {
  const GAutomaton aut = f1();
  const Slp slp = parse_slp("slp v1\nstart A\nrule A x y\n");
  CHECK_THROWS_AS(resolve_terminals(aut, slp), ValidationError);
  CHECK_THROWS_AS(stream_apply(aut, slp, {0}), ValidationError);
}

TEST_CASE("slp_decide_identity agrees with decide_identity") {
  Rng rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const auto aut = random_finitary(rng, 2 + trial % 5, 2 + trial % 3);
    Slp slp = random_slp(rng, aut, 1 + trial % 6, 4, 300);
    if (trial % 3 == 0) {
      const std::string start = slp.rules()[slp.start()].name;
      std::string text = serialize_slp(slp);
      text.replace(text.find("start " + start), 6 + start.size(), "start Z");
      slp = parse_slp(text + "rule Z @" + start + "^-1 @" + start + "\n");
    }
    const Verdict expected = decide_identity(aut, decompress(aut, slp, 1000));
    CHECK(slp_decide_identity(aut, slp) == expected);
    CHECK(slp_decide_identity(aut, slp, {3}) == expected);
  }
}

TEST_CASE("serialization round-trip") {
  Rng rng(47);
  const GAutomaton aut = f1();
  for (int trial = 0; trial < 60; ++trial) {
    const Slp slp = random_slp(rng, aut, 1 + trial % 9, 5, 1000);
    const std::string text = serialize_slp(slp);
    const Slp back = parse_slp(text);
    CHECK(back == slp);
    CHECK(serialize_slp(back) == text);
  }
  const std::string text = serialize_slp(parse_slp("slp v1\nstart A\nrule B p q\nrule A @B^-1 p\n"));
  CHECK(text == "slp v1\nstart A\nrule A @B^-1 p\nrule B p q\n");
}
