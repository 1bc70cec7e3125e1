#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "autgroup/action.hpp"
#include "autgroup/automaton.hpp"
#include "autgroup/formulas.hpp"
#include "autgroup/permutation.hpp"
#include "autgroup/slp.hpp"

namespace autgroup {

inline constexpr Letter kBottom = 0;
inline constexpr Letter kTop = 1;
inline constexpr std::size_t kReductionAlphabet = 5;

/// Word-problem instance: the sequence is trivial iff the source formula is unsatisfiable.
struct WpInstance {
  GAutomaton automaton;
  StateSequence sequence;
};

/// Compressed instance: the SLP's sequence is non-trivial iff the formula is true.
struct CwpInstance {
  GAutomaton automaton;
  Slp slp;
};

/*
 * Shape of a constructed instance. State names:
 *   id                      identity
 *   alpha_n, beta_n         0 <= n <= N, copy n letters then apply alpha/beta
 *   sigma_n                 0 <= n <= N, check n letters are in {0, 1} then apply sigma
 *   c_k_n                   1 <= k <= K, 1 <= n <= N, clause k reading x_n
 *   t_n                     0 <= n < N, QBF only: flip letter n + 1
 */
struct ReductionLayout {
  std::uint32_t num_vars = 0;       // N
  std::size_t num_clauses = 0;      // K after preprocessing
  std::size_t padded_entries = 0;   // D, next power of two >= K (1 when K = 0)
  SigmaTriple triple;

  /// 1 + 3(N+1) + K*N: c_k_0 is the identity state.
  std::size_t constructed_state_count() const noexcept;
  /// (3 + K)(N + 1) + 1, the count quoted for the construction with separate c_k_0.
  std::size_t reference_state_count() const noexcept;
};

/// <A> = A(x_N) ... A(x_1) over {0, 1}.
Word encode_assignment(const Assignment& a);

/// The lexicographically least triple, computed once.
const SigmaTriple& reduction_triple();

ReductionLayout sat_layout(const Cnf& cnf3);

/*
 * 3-CNF satisfiability to the word problem. The input is run through
 * preprocess_3cnf first. The sequence is the balanced commutator over
 * c_K_N ... c_1_N with conjugators alpha_N and beta_N; the entry list is
 * padded to a power of two by repeating c_K_N. When every clause is a
 * tautology the sequence is sigma_N alone.
 *
 * Throws ValidationError for preprocessing failures or N = 0.
 */
WpInstance sat_to_wp(const Cnf& cnf3);

/*
 * 3-QBF to the compressed word problem. Extends the sat_to_wp automaton of
 * the matrix with t_0 ... t_{N-1}; the SLP has rules
 *   A_0  -> sequence of sat_to_wp
 *   Ap_n -> B_N[ A_{n-1}^{t_{N-n}}, A_{n-1} ]       (1 <= n <= N)
 *   A_n  -> @Ap_n^-1 sigma_N
 * with start A_N. Throws ValidationError for N = 0.
 */
CwpInstance qbf_to_cwp(const NnfQbf& q);

/// `# key: value` lines describing the instance, for the CLI outputs.
std::string layout_comment(const ReductionLayout& layout);

}  // namespace autgroup
