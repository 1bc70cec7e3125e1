#include "autgroup/reductions.hpp"

#include <sstream>

#include "autgroup/commutator.hpp"
#include "autgroup/error.hpp"

namespace autgroup {

std::size_t ReductionLayout::constructed_state_count() const noexcept {
  return 1 + 3 * (std::size_t{num_vars} + 1) + num_clauses * num_vars;
}

std::size_t ReductionLayout::reference_state_count() const noexcept {
  return (3 + num_clauses) * (std::size_t{num_vars} + 1) + 1;
}

Word encode_assignment(const Assignment& a) {
  const auto n = static_cast<std::uint32_t>(a.values.size());
  Word w(n);
  for (std::uint32_t i = 0; i < n; ++i) w[i] = a[n - i] ? kTop : kBottom;
  return w;
}

const SigmaTriple& reduction_triple() {
  static const SigmaTriple triple = find_sigma_triple();
  return triple;
}

namespace {

std::string indexed(std::string_view stem, std::size_t n) {
  return std::string(stem) + "_" + std::to_string(n);
}

std::string clause_state(std::size_t k, std::size_t n) {
  return n == 0 ? std::string("id") : "c_" + std::to_string(k) + "_" + std::to_string(n);
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t d = 1;
  while (d < n) d <<= 1;
  return d;
}

struct SatConstruction {
  AutomatonBuilder builder{kReductionAlphabet};
  ReductionLayout layout;
  Cnf clauses;
};

// Everything of the SAT automaton, without building it, so the QBF
// reduction can add its t-states to the same builder.
SatConstruction build_sat_part(const Cnf& input) {
  SatConstruction c;
  c.clauses = preprocess_3cnf(input);
  const std::uint32_t n_vars = c.clauses.num_vars;
  if (n_vars == 0) throw ValidationError("reduction needs at least one variable");

  c.layout.num_vars = n_vars;
  c.layout.num_clauses = c.clauses.clauses.size();
  c.layout.padded_entries = next_power_of_two(c.layout.num_clauses);
  c.layout.triple = reduction_triple();
  const SigmaTriple& t = c.layout.triple;
  auto& b = c.builder;

  const StateId id = b.state("id");
  b.declare_identity(id);
  for (Letter a = 0; a < kReductionAlphabet; ++a) b.transition(id, a, a, id);

  // alpha_N .. alpha_0 and beta_N .. beta_0: copy, then apply the permutation.
  for (const auto& [stem, perm] : {std::pair{"alpha", &t.alpha}, std::pair{"beta", &t.beta}}) {
    for (std::uint32_t n = n_vars; n > 0; --n) {
      for (Letter a = 0; a < kReductionAlphabet; ++a) {
        b.transition(indexed(stem, n), a, a, indexed(stem, n - 1));
      }
    }
    for (Letter a = 0; a < kReductionAlphabet; ++a) {
      b.transition(indexed(stem, 0), a, (*perm)(a), "id");
    }
  }

  // sigma_N .. sigma_0: only 0/1 continue the chain.
  for (std::uint32_t n = n_vars; n > 0; --n) {
    for (Letter a = 0; a < kReductionAlphabet; ++a) {
      const bool boolean = a == kBottom || a == kTop;
      b.transition(indexed("sigma", n), a, a, boolean ? indexed("sigma", n - 1) : "id");
    }
  }
  for (Letter a = 0; a < kReductionAlphabet; ++a) {
    b.transition(indexed("sigma", 0), a, t.sigma(a), "id");
  }

  // c_k_n reads the letter of x_n. A satisfying literal hands over to
  // sigma_{n-1}; otherwise the check continues with c_k_{n-1}.
  for (std::size_t k = 1; k <= c.layout.num_clauses; ++k) {
    const Clause& clause = c.clauses.clauses[k - 1];
    for (std::uint32_t n = n_vars; n > 0; --n) {
      std::optional<Letter> satisfying;
      for (const Literal& l : clause.literals) {
        if (l.variable == n) satisfying = l.negated ? kBottom : kTop;
      }
      const std::string self = clause_state(k, n);
      for (Letter a = 0; a < kReductionAlphabet; ++a) {
        if (a != kBottom && a != kTop) {
          b.transition(self, a, a, "id");
        } else if (satisfying && a == *satisfying) {
          b.transition(self, a, a, indexed("sigma", n - 1));
        } else {
          b.transition(self, a, a, clause_state(k, n - 1));
        }
      }
    }
  }
  return c;
}

StateSequence sat_sequence(const GAutomaton& aut, const ReductionLayout& layout) {
  auto state = [&aut](const std::string& name) {
    return GenSymbol{*aut.find_state(name), Sign::kPositive};
  };
  const std::uint32_t n = layout.num_vars;
  if (layout.num_clauses == 0) return {state(indexed("sigma", n))};

  BalancedSpec spec;
  spec.alpha = {state(indexed("alpha", n))};
  spec.beta = {state(indexed("beta", n))};
  // Written B[q_D, ..., q_1] with q_k = c_k_N; q_{K+1..D} repeat c_K_N.
  for (std::size_t i = layout.padded_entries; i > 0; --i) {
    const std::size_t k = std::min(i, layout.num_clauses);
    spec.entries.push_back({state(clause_state(k, n))});
  }
  return balanced_commutator(spec);
}

}  // namespace

ReductionLayout sat_layout(const Cnf& cnf3) {
  const Cnf clauses = preprocess_3cnf(cnf3);
  ReductionLayout layout;
  layout.num_vars = clauses.num_vars;
  layout.num_clauses = clauses.clauses.size();
  layout.padded_entries = next_power_of_two(layout.num_clauses);
  layout.triple = reduction_triple();
  return layout;
}

WpInstance sat_to_wp(const Cnf& cnf3) {
  SatConstruction c = build_sat_part(cnf3);
  GAutomaton aut = c.builder.build();
  StateSequence seq = sat_sequence(aut, c.layout);
  return {std::move(aut), std::move(seq)};
}

CwpInstance qbf_to_cwp(const NnfQbf& q) {
  if (q.num_vars == 0) throw ValidationError("QBF reduction needs N >= 1");
  Cnf matrix = q.matrix;
  matrix.num_vars = q.num_vars;
  SatConstruction c = build_sat_part(matrix);
  const std::uint32_t n_vars = q.num_vars;
  auto& b = c.builder;

  // t_n passes n boolean letters and flips the next one.
  for (std::uint32_t n = n_vars - 1; n > 0; --n) {
    for (Letter a = 0; a < kReductionAlphabet; ++a) {
      const bool boolean = a == kBottom || a == kTop;
      b.transition(indexed("t", n), a, a, boolean ? indexed("t", n - 1) : "id");
    }
  }
  for (Letter a = 0; a < kReductionAlphabet; ++a) {
    const Letter out = a == kBottom ? kTop : a == kTop ? kBottom : a;
    b.transition(indexed("t", 0), a, out, "id");
  }

  GAutomaton aut = b.build();
  const StateSequence q0 = sat_sequence(aut, c.layout);

  using S = SlpBuilder;
  constexpr Sign kPos = Sign::kPositive;
  constexpr Sign kNeg = Sign::kNegative;
  SlpBuilder slp;
  std::vector<S::Symbol> a0;
  a0.reserve(q0.size());
  for (const GenSymbol& s : q0) a0.push_back(S::terminal(aut.name(s.state), s.sign));
  slp.rule("A_0", std::move(a0));

  const std::string alpha = indexed("alpha", n_vars);
  const std::string beta = indexed("beta", n_vars);
  const std::string sigma = indexed("sigma", n_vars);
  for (std::uint32_t n = 1; n <= n_vars; ++n) {
    const std::string t = indexed("t", n_vars - n);
    const std::string prev = indexed("A", n - 1);
    // [ (A^t)^beta, A^alpha ] with A^t = t^-1 A t.
    slp.rule(indexed("Ap", n),
             {S::terminal(beta, kNeg), S::terminal(t, kNeg), S::ref(prev, kNeg), S::terminal(t, kPos),
              S::terminal(beta, kPos), S::terminal(alpha, kNeg), S::ref(prev, kNeg),
              S::terminal(alpha, kPos), S::terminal(beta, kNeg), S::terminal(t, kNeg),
              S::ref(prev, kPos), S::terminal(t, kPos), S::terminal(beta, kPos),
              S::terminal(alpha, kNeg), S::ref(prev, kPos), S::terminal(alpha, kPos)});
    slp.rule(indexed("A", n), {S::ref(indexed("Ap", n), kNeg), S::terminal(sigma, kPos)});
  }
  slp.start(indexed("A", n_vars));
  return {std::move(aut), slp.build()};
}

std::string layout_comment(const ReductionLayout& layout) {
  std::ostringstream out;
  out << "# N: " << layout.num_vars << '\n';
  out << "# K: " << layout.num_clauses << '\n';
  out << "# D: " << layout.padded_entries << '\n';
  out << "# sigma: " << format_permutation(layout.triple.sigma) << '\n';
  out << "# alpha: " << format_permutation(layout.triple.alpha) << '\n';
  out << "# beta: " << format_permutation(layout.triple.beta) << '\n';
  out << "# states: " << layout.constructed_state_count() << " (reference formula "
      << layout.reference_state_count() << ")\n";
  return out.str();
}

}  // namespace autgroup
