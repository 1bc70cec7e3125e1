#include "autgroup/error.hpp"
#include "autgroup/formulas.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace autgroup;
using namespace autgroup::testing;

namespace {

Clause clause(std::initializer_list<int> lits) {
  Clause c;
  for (int l : lits) c.literals.push_back({static_cast<std::uint32_t>(l < 0 ? -l : l), l < 0});
  return c;
}

// Bottom-up table evaluation of the not-forall chain: start from the
// matrix on all 2^N assignments and fold out x_1, then x_2, ...
bool eval_flat(const NnfQbf& q) {
  const std::uint32_t n = q.num_vars;
  std::vector<bool> table(std::size_t{1} << n);
  for (std::size_t bits = 0; bits < table.size(); ++bits) {
    Assignment a{std::vector<bool>(n)};
    for (std::uint32_t i = 0; i < n; ++i) a.values[i] = (bits >> i) & 1;
    table[bits] = satisfies(a, q.matrix);
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    std::vector<bool> next(table.size() / 2);
    for (std::size_t rest = 0; rest < next.size(); ++rest) {
      next[rest] = !(table[rest * 2] && table[rest * 2 + 1]);
    }
    table = std::move(next);
  }
  return table[0];
}

PrenexQbf random_prenex(Rng& rng, std::uint32_t vars, std::size_t clauses, std::size_t max_len) {
  PrenexQbf q;
  q.matrix.num_vars = vars;
  std::vector<std::uint32_t> order(vars);
  std::iota(order.begin(), order.end(), 1u);
  std::shuffle(order.begin(), order.end(), rng);
  // Leave some variables free.
  for (std::uint32_t v : order) {
    if (rng() % 4 == 0) continue;
    q.prefix.push_back({rng() % 2 ? Quantifier::kExists : Quantifier::kForall, v});
  }
  std::uniform_int_distribution<std::uint32_t> pick(1, vars);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  for (std::size_t i = 0; i < clauses; ++i) {
    Clause c;
    const std::size_t l = len(rng);
    for (std::size_t j = 0; j < l; ++j) c.literals.push_back({pick(rng), rng() % 2 == 0});
    q.matrix.clauses.push_back(c);
  }
  return q;
}

}  // namespace

TEST_CASE("DIMACS parsing") {
  const Cnf cnf = parse_dimacs(
      "c example\n"
      "p cnf 3 2\n"
      "1 -2 3 0\n"
      "-1 2\n"
      " 3 0\n"
      "%\n"
      "garbage after the end marker\n");
  CHECK(cnf.num_vars == 3);
  REQUIRE(cnf.clauses.size() == 2);
  CHECK(cnf.clauses[0] == clause({1, -2, 3}));
  CHECK(cnf.clauses[1] == clause({-1, 2, 3}));
  CHECK(parse_dimacs("p cnf 2 1\n0\n").clauses[0].literals.empty());
}

TEST_CASE("DIMACS errors") {
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\ne 1 0\n1 0\n"), ParseError);
  try {
    parse_dimacs("p cnf 2 1\n1 -5 0\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("QDIMACS parsing") {
  const PrenexQbf q = parse_qdimacs("p cnf 4 1\ne 1 2 0\na 3 0\n1 -3 4 0\n");
  REQUIRE(q.prefix.size() == 3);
  CHECK(q.prefix[0] == QuantifiedVariable{Quantifier::kExists, 1});
  CHECK(q.prefix[2] == QuantifiedVariable{Quantifier::kForall, 3});
  CHECK(q.matrix.clauses.size() == 1);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\ne 1 0\na 1 0\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\n1 0\ne 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_qdimacs("p cnf 2 1\ne 1\n1 0\n"), ParseError);
}

TEST_CASE("brute_force_sat") {
  const Cnf single{3, {clause({1, 2, 3})}};
  const auto a = brute_force_sat(single);
  REQUIRE(a.has_value());
  CHECK(*a == Assignment{{true, false, false}});
  CHECK_FALSE(brute_force_sat(all_sign_patterns()).has_value());
  CHECK(*brute_force_sat(Cnf{2, {}}) == Assignment{{false, false}});
  CHECK_FALSE(brute_force_sat(Cnf{2, {Clause{}}}).has_value());
  CHECK_THROWS_AS(brute_force_sat(Cnf{31, {}}), LimitError);
}

TEST_CASE("eval_nnf_qbf") {
  // not forall x3 not forall x2 not forall x1: (x1 v x2 v x3) is false.
  CHECK_FALSE(eval_nnf_qbf(NnfQbf{3, {3, {clause({3, 2, 1})}}}));
  // A tautological matrix: not forall x1: true is false.
  CHECK_FALSE(eval_nnf_qbf(NnfQbf{1, {1, {}}}));
  CHECK(eval_nnf_qbf(NnfQbf{2, {2, {}}}));
  // not forall x1: (not x1) is true.
  CHECK(eval_nnf_qbf(NnfQbf{1, {1, {clause({-1})}}}));
  CHECK_THROWS_AS(eval_nnf_qbf(NnfQbf{21, {21, {}}}), LimitError);
}

TEST_CASE("recursive and table evaluation agree") {
  Rng rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t n = 3 + trial % 8;
    const NnfQbf q{n, random_3cnf(rng, n, trial % 12)};
    CHECK(eval_nnf_qbf(q) == eval_flat(q));
  }
}

TEST_CASE("eval_prenex_qbf") {
  CHECK(eval_prenex_qbf({{{Quantifier::kExists, 1}}, {1, {clause({1})}}}));
  CHECK_FALSE(eval_prenex_qbf({{{Quantifier::kForall, 1}}, {1, {clause({1})}}}));
  // forall x1 exists x2: x1 xor x2
  const Cnf xor2{2, {clause({1, 2}), clause({-1, -2})}};
  CHECK(eval_prenex_qbf({{{Quantifier::kForall, 1}, {Quantifier::kExists, 2}}, xor2}));
  CHECK_FALSE(eval_prenex_qbf({{{Quantifier::kExists, 2}, {Quantifier::kForall, 1}}, xor2}));
  // Free variables read as outermost existentials.
  CHECK(eval_prenex_qbf({{}, xor2}));
}

TEST_CASE("preprocess_3cnf") {
  const Cnf in{4, {clause({1, -3, 4}), clause({2, -2, 3}), clause({2, 2, 3, 1})}};
  const Cnf out = preprocess_3cnf(in);
  REQUIRE(out.clauses.size() == 2);
  CHECK(out.clauses[0] == clause({4, -3, 1}));
  CHECK(out.clauses[1] == clause({3, 2, 1}));
  CHECK_THROWS_AS(preprocess_3cnf(Cnf{4, {clause({1, 2})}}), ValidationError);
  CHECK_THROWS_AS(preprocess_3cnf(Cnf{4, {clause({1, 2, 3, 4})}}), ValidationError);
  CHECK_THROWS_AS(preprocess_3cnf(Cnf{2, {clause({1, 2, 3})}}), ValidationError);
  CHECK_THROWS_AS(preprocess_3cnf(Cnf{3, {clause({1, 1, 2})}}), ValidationError);
}

TEST_CASE("split_clause") {
  const auto [head, tail] = split_clause(clause({1, -2, 3, 4, -5}), 6);
  CHECK(head == clause({1, -2, 6}));
  CHECK(tail == clause({-6, 3, 4, -5}));
  CHECK_THROWS_AS(split_clause(clause({1, 2, 3}), 4), ValidationError);

  // The split pair is equisatisfiable once z is existentially bound.
  for (unsigned bits = 0; bits < 32; ++bits) {
    Assignment a{std::vector<bool>(6)};
    for (unsigned i = 0; i < 5; ++i) a.values[i] = (bits >> i) & 1;
    bool some = false;
    for (bool z : {false, true}) {
      a.values[5] = z;
      some = some || (satisfies(a, head) && satisfies(a, tail));
    }
    CHECK(some == satisfies(a, clause({1, -2, 3, 4, -5})));
  }
}

TEST_CASE("normalize_to_3qbf shape") {
  SUBCASE("exists x1: x1") {
    const NnfQbf q = normalize_to_3qbf({{{Quantifier::kExists, 1}}, {1, {clause({1})}}});
    CHECK(q.num_vars % 2 == 0);
    CHECK(q.matrix.num_vars == q.num_vars);
    CHECK(eval_nnf_qbf(q));
  }
  SUBCASE("five literals split twice") {
    const PrenexQbf in{{}, {5, {clause({1, 2, 3, 4, 5})}}};
    const NnfQbf q = normalize_to_3qbf(in);
    CHECK(q.matrix.clauses.size() == 3);
    CHECK(eval_nnf_qbf(q) == eval_prenex_qbf(in));
  }
  SUBCASE("empty clause") {
    const PrenexQbf in{{{Quantifier::kExists, 1}}, {1, {Clause{}}}};
    const NnfQbf q = normalize_to_3qbf(in);
    CHECK_FALSE(eval_nnf_qbf(q));
  }
  SUBCASE("no clauses") {
    const NnfQbf q = normalize_to_3qbf({{}, {0, {}}});
    CHECK(q.num_vars >= 2);
    CHECK(eval_nnf_qbf(q));
  }
  SUBCASE("every clause is 3-CNF with exact variable count") {
    Rng rng(59);
    for (int trial = 0; trial < 50; ++trial) {
      const NnfQbf q = normalize_to_3qbf(random_prenex(rng, 4, 3, 5));
      CHECK(q.num_vars % 2 == 0);
      for (const Clause& c : q.matrix.clauses) CHECK(c.literals.size() == 3);
      CHECK_NOTHROW(preprocess_3cnf(q.matrix));
    }
  }
}

TEST_CASE("normalize_to_3qbf preserves truth") {
  Rng rng(61);
  int trues = 0, falses = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::uint32_t vars = 1 + trial % 4;
    const PrenexQbf in = random_prenex(rng, vars, 1 + trial % 3, 5);
    const NnfQbf q = normalize_to_3qbf(in);
    if (q.num_vars > kMaxQbfOracleVars) continue;
    const bool expected = eval_prenex_qbf(in);
    CHECK(eval_nnf_qbf(q) == expected);
    (expected ? trues : falses) += 1;
  }
  CHECK(trues > 50);
  CHECK(falses > 50);
}
