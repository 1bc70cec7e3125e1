#include "autgroup/formulas.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "autgroup/error.hpp"
#include "text.hpp"

namespace autgroup {

namespace {

struct DimacsBody {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<QuantifiedVariable> prefix;
};

DimacsBody parse_dimacs_body(std::string_view text, bool allow_quantifiers) {
  using detail::fail;
  const auto lines = detail::tokenize(text);
  DimacsBody out;
  std::optional<std::size_t> declared_clauses;
  Clause current;
  bool open_clause = false;
  const detail::Line* last_line = nullptr;
  std::set<std::uint32_t> quantified;

  for (const auto& line : lines) {
    const auto head = line.tokens[0].text;
    if (head == "c") continue;
    if (head == "%") break;
    last_line = &line;
    if (head == "p") {
      if (declared_clauses) fail("duplicate problem line", line, line.tokens[0]);
      if (line.tokens.size() != 4 || line.tokens[1].text != "cnf") {
        fail("expected 'p cnf <vars> <clauses>'", line, line.tokens[0]);
      }
      const auto n = detail::parse_int<std::uint32_t>(line.tokens[2].text);
      const auto m = detail::parse_int<std::size_t>(line.tokens[3].text);
      if (!n) fail("malformed variable count", line, line.tokens[2]);
      if (!m) fail("malformed clause count", line, line.tokens[3]);
      out.num_vars = *n;
      declared_clauses = *m;
      continue;
    }
    if (!declared_clauses) fail("clause or quantifier before the 'p cnf' header", line, line.tokens[0]);

    if (head == "e" || head == "a") {
      if (!allow_quantifiers) fail("quantifier line in plain DIMACS input", line, line.tokens[0]);
      if (!out.clauses.empty() || open_clause) {
        fail("quantifier line after the first clause", line, line.tokens[0]);
      }
      const Quantifier q = head == "e" ? Quantifier::kExists : Quantifier::kForall;
      if (line.tokens.back().text != "0") fail("quantifier line must end with 0", line);
      for (std::size_t i = 1; i + 1 < line.tokens.size(); ++i) {
        const auto v = detail::parse_int<std::uint32_t>(line.tokens[i].text);
        if (!v || *v == 0 || *v > out.num_vars) {
          fail("variable out of range", line, line.tokens[i]);
        }
        if (!quantified.insert(*v).second) {
          fail("variable " + std::to_string(*v) + " quantified twice", line, line.tokens[i]);
        }
        out.prefix.push_back({q, *v});
      }
      continue;
    }

    for (const auto& token : line.tokens) {
      const auto v = detail::parse_int<std::int64_t>(token.text);
      if (!v) fail("malformed literal '" + std::string(token.text) + "'", line, token);
      if (*v == 0) {
        out.clauses.push_back(std::move(current));
        current = {};
        open_clause = false;
        continue;
      }
      const auto var = static_cast<std::uint64_t>(*v < 0 ? -*v : *v);
      if (var > out.num_vars) fail("variable out of range", line, token);
      current.literals.push_back({static_cast<std::uint32_t>(var), *v < 0});
      open_clause = true;
    }
  }

  if (!declared_clauses) throw ParseError("missing 'p cnf' header", 0, 0);
  if (open_clause) {
    throw ParseError("last clause is not terminated by 0", last_line ? last_line->number : 0, 1);
  }
  if (out.clauses.size() != *declared_clauses) {
    throw ParseError("header declares " + std::to_string(*declared_clauses) + " clauses, found " +
                         std::to_string(out.clauses.size()),
                     0, 0);
  }
  return out;
}

}  // namespace

Cnf parse_dimacs(std::string_view text) {
  auto body = parse_dimacs_body(text, false);
  return {body.num_vars, std::move(body.clauses)};
}

PrenexQbf parse_qdimacs(std::string_view text) {
  auto body = parse_dimacs_body(text, true);
  return {std::move(body.prefix), {body.num_vars, std::move(body.clauses)}};
}

bool satisfies(const Assignment& a, const Clause& clause) {
  return std::any_of(clause.literals.begin(), clause.literals.end(),
                     [&](const Literal& l) { return a[l.variable] != l.negated; });
}

bool satisfies(const Assignment& a, const Cnf& cnf) {
  return std::all_of(cnf.clauses.begin(), cnf.clauses.end(),
                     [&](const Clause& c) { return satisfies(a, c); });
}

std::optional<Assignment> brute_force_sat(const Cnf& cnf) {
  if (cnf.num_vars > kMaxSatOracleVars) {
    throw LimitError("brute-force SAT is limited to " + std::to_string(kMaxSatOracleVars) +
                     " variables");
  }
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  Assignment a{std::vector<bool>(cnf.num_vars, false)};
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (std::uint32_t i = 0; i < cnf.num_vars; ++i) a.values[i] = (bits >> i) & 1;
    if (satisfies(a, cnf)) return a;
  }
  return std::nullopt;
}

bool eval_nnf_qbf(const NnfQbf& q) {
  if (q.num_vars > kMaxQbfOracleVars) {
    throw LimitError("QBF evaluation is limited to " + std::to_string(kMaxQbfOracleVars) +
                     " variables");
  }
  Assignment a{std::vector<bool>(q.num_vars, false)};
  // level(n) = not (level(n-1)[x_n = 0] and level(n-1)[x_n = 1]); level(0) = matrix.
  std::function<bool(std::uint32_t)> level = [&](std::uint32_t n) -> bool {
    if (n == 0) return satisfies(a, q.matrix);
    bool all = true;
    for (bool value : {false, true}) {
      a.values[n - 1] = value;
      if (!level(n - 1)) {
        all = false;
        break;
      }
    }
    return !all;
  };
  return level(q.num_vars);
}

bool eval_prenex_qbf(const PrenexQbf& q) {
  std::vector<QuantifiedVariable> prefix;
  std::set<std::uint32_t> bound;
  for (const auto& qv : q.prefix) bound.insert(qv.variable);
  std::uint32_t max_var = q.matrix.num_vars;
  for (const auto& qv : q.prefix) max_var = std::max(max_var, qv.variable);
  for (const Clause& c : q.matrix.clauses) {
    for (const Literal& l : c.literals) {
      max_var = std::max(max_var, l.variable);
      if (bound.insert(l.variable).second) prefix.push_back({Quantifier::kExists, l.variable});
    }
  }
  std::sort(prefix.begin(), prefix.end(),
            [](const auto& x, const auto& y) { return x.variable < y.variable; });
  prefix.insert(prefix.end(), q.prefix.begin(), q.prefix.end());
  if (prefix.size() > kMaxQbfOracleVars) {
    throw LimitError("QBF evaluation is limited to " + std::to_string(kMaxQbfOracleVars) +
                     " variables");
  }

  Assignment a{std::vector<bool>(max_var, false)};
  std::function<bool(std::size_t)> eval = [&](std::size_t i) -> bool {
    if (i == prefix.size()) return satisfies(a, q.matrix);
    const auto& qv = prefix[i];
    for (bool value : {false, true}) {
      a.values[qv.variable - 1] = value;
      const bool r = eval(i + 1);
      if (qv.quantifier == Quantifier::kExists && r) return true;
      if (qv.quantifier == Quantifier::kForall && !r) return false;
    }
    return qv.quantifier == Quantifier::kForall;
  };
  return eval(0);
}

namespace {

// Removes repeated literals; returns nullopt for a tautology.
std::optional<Clause> clean_clause(const Clause& clause) {
  std::vector<Literal> lits = clause.literals;
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i) {
    if (lits[i].variable == lits[i - 1].variable) return std::nullopt;
  }
  return Clause{std::move(lits)};
}

}  // namespace

Cnf preprocess_3cnf(const Cnf& cnf) {
  Cnf out{cnf.num_vars, {}};
  for (std::size_t i = 0; i < cnf.clauses.size(); ++i) {
    auto clause = clean_clause(cnf.clauses[i]);
    if (!clause) continue;
    if (clause->literals.size() != 3) {
      throw ValidationError("clause " + std::to_string(i + 1) + " has " +
                            std::to_string(clause->literals.size()) +
                            " distinct variables, expected 3");
    }
    for (const Literal& l : clause->literals) {
      if (l.variable == 0 || l.variable > cnf.num_vars) {
        throw ValidationError("clause " + std::to_string(i + 1) + " uses variable out of range");
      }
    }
    std::sort(clause->literals.begin(), clause->literals.end(),
              [](const Literal& x, const Literal& y) { return x.variable > y.variable; });
    out.clauses.push_back(std::move(*clause));
  }
  return out;
}

std::pair<Clause, Clause> split_clause(const Clause& clause, std::uint32_t fresh_variable) {
  const auto& lits = clause.literals;
  if (lits.size() <= 3) throw ValidationError("only clauses of four or more literals are split");
  Clause head{{lits[0], lits[1], {fresh_variable, false}}};
  Clause tail{{{fresh_variable, true}}};
  tail.literals.insert(tail.literals.end(), lits.begin() + 2, lits.end());
  return {std::move(head), std::move(tail)};
}

NnfQbf normalize_to_3qbf(const PrenexQbf& q) {
  // Working variable ids continue after every id seen so far.
  std::uint32_t next_var = q.matrix.num_vars;
  std::set<std::uint32_t> bound;
  for (const auto& qv : q.prefix) {
    if (!bound.insert(qv.variable).second) {
      throw ValidationError("variable " + std::to_string(qv.variable) + " quantified twice");
    }
    next_var = std::max(next_var, qv.variable);
  }
  std::vector<QuantifiedVariable> prefix;
  std::set<std::uint32_t> free;
  for (const Clause& c : q.matrix.clauses) {
    for (const Literal& l : c.literals) {
      next_var = std::max(next_var, l.variable);
      if (!bound.contains(l.variable)) free.insert(l.variable);
    }
  }
  for (std::uint32_t v : free) prefix.push_back({Quantifier::kExists, v});
  prefix.insert(prefix.end(), q.prefix.begin(), q.prefix.end());
  auto fresh = [&next_var] { return ++next_var; };

  std::vector<Clause> clauses;
  for (const Clause& c : q.matrix.clauses) {
    if (auto cleaned = clean_clause(c)) clauses.push_back(std::move(*cleaned));
  }

  // 1. L1 v ... v Ll  ==  exists z: (L1 v L2 v z) and (not z v L3 v ... v Ll)
  std::vector<Clause> split;
  for (Clause& c : clauses) {
    Clause rest = std::move(c);
    while (rest.literals.size() > 3) {
      const std::uint32_t z = fresh();
      prefix.push_back({Quantifier::kExists, z});
      auto [head, tail] = split_clause(rest, z);
      split.push_back(std::move(head));
      rest = std::move(tail);
    }
    split.push_back(std::move(rest));
  }

  // 2. C == forall z: (C v z)
  for (Clause& c : split) {
    while (c.literals.size() < 3) {
      const std::uint32_t z = fresh();
      prefix.push_back({Quantifier::kForall, z});
      c.literals.push_back({z, false});
    }
  }

  // 3. Strict alternation exists, forall, ..., exists, forall.
  std::vector<QuantifiedVariable> alternating;
  Quantifier expected = Quantifier::kExists;
  auto toggle = [](Quantifier x) {
    return x == Quantifier::kExists ? Quantifier::kForall : Quantifier::kExists;
  };
  for (const auto& qv : prefix) {
    if (qv.quantifier != expected) alternating.push_back({expected, fresh()});
    alternating.push_back(qv);
    expected = toggle(qv.quantifier);
  }
  if (alternating.empty()) alternating.push_back({Quantifier::kExists, fresh()});
  if (alternating.back().quantifier == Quantifier::kExists) {
    alternating.push_back({Quantifier::kForall, fresh()});
  }

  // 4. exists z forall y: psi == not forall z not forall y: psi, so the
  // alternating prefix reads as a plain chain. Innermost becomes x_1.
  const auto n = static_cast<std::uint32_t>(alternating.size());
  std::vector<std::uint32_t> renumber(next_var + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i) renumber[alternating[i].variable] = n - i;

  Cnf matrix{n, {}};
  for (const Clause& c : split) {
    Clause out;
    for (const Literal& l : c.literals) out.literals.push_back({renumber[l.variable], l.negated});
    matrix.clauses.push_back(std::move(out));
  }
  return {n, preprocess_3cnf(matrix)};
}

}  // namespace autgroup
