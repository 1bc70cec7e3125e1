#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace autgroup {

struct Literal {
  std::uint32_t variable = 1;  // 1-based
  bool negated = false;

  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Cnf {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

enum class Quantifier : std::uint8_t { kExists, kForall };

struct QuantifiedVariable {
  Quantifier quantifier = Quantifier::kExists;
  std::uint32_t variable = 1;

  friend bool operator==(const QuantifiedVariable&, const QuantifiedVariable&) = default;
};

/// Prefix is written outermost first. Variables of the matrix that are not
/// quantified are free and read as outermost existentials.
struct PrenexQbf {
  std::vector<QuantifiedVariable> prefix;
  Cnf matrix;
};

/// not forall x_N not forall x_{N-1} ... not forall x_1 : matrix, with the
/// matrix in clean 3-CNF (see preprocess_3cnf).
struct NnfQbf {
  std::uint32_t num_vars = 0;
  Cnf matrix;
};

/// Truth values of x_1..x_N; values[i] belongs to x_{i+1}.
struct Assignment {
  std::vector<bool> values;

  bool operator[](std::uint32_t variable) const { return values.at(variable - 1); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// DIMACS CNF (`p cnf N M`). Throws ParseError.
Cnf parse_dimacs(std::string_view text);

/// QDIMACS: DIMACS with `e`/`a` quantifier lines, outermost first. Throws ParseError.
PrenexQbf parse_qdimacs(std::string_view text);

bool satisfies(const Assignment& a, const Clause& clause);
bool satisfies(const Assignment& a, const Cnf& cnf);

/// Limits on the deliberately naive oracles.
inline constexpr std::uint32_t kMaxSatOracleVars = 30;
inline constexpr std::uint32_t kMaxQbfOracleVars = 20;

/// First satisfying assignment in binary counting order with x_1 as the
/// least significant bit. Throws LimitError when N > kMaxSatOracleVars.
std::optional<Assignment> brute_force_sat(const Cnf& cnf);

/// Recursive evaluation of the not-forall chain. Throws LimitError when
/// N > kMaxQbfOracleVars.
bool eval_nnf_qbf(const NnfQbf& q);

/// Direct evaluation of a prenex formula by expanding its quantifiers.
/// Throws LimitError when more than kMaxQbfOracleVars variables are involved.
bool eval_prenex_qbf(const PrenexQbf& q);

/*
 * Drops tautological clauses, removes repeated literals and requires every
 * remaining clause to mention exactly three distinct variables. Literals are
 * sorted by descending variable. Throws ValidationError otherwise.
 */
Cnf preprocess_3cnf(const Cnf& cnf);

/// One splitting step for a clause of four or more literals:
/// (L1 v L2 v z) and (not z v L3 v ... v Ll). Throws ValidationError for
/// clauses of three literals or fewer.
std::pair<Clause, Clause> split_clause(const Clause& clause, std::uint32_t fresh_variable);

/*
 * Rewrites a prenex CNF formula into the not-forall chain with a 3-CNF
 * matrix:
 *   1. clauses longer than three are split with fresh innermost exists;
 *   2. shorter clauses are padded with fresh innermost forall;
 *   3. dummy variables make the prefix alternate exists/forall, starting
 *      with exists and ending with forall;
 *   4. each "exists z forall y" pair becomes "not forall z not forall y".
 * Variables are renumbered so the innermost is x_1. Fresh variables are
 * allocated in clause order.
 */
NnfQbf normalize_to_3qbf(const PrenexQbf& q);

}  // namespace autgroup
