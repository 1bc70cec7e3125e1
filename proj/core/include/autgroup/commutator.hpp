#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "autgroup/action.hpp"
#include "autgroup/permutation.hpp"

namespace autgroup {

/*
 * Balanced iterated commutator B_{beta,alpha}[q_D, ..., q_1] with D = 2^d.
 * `entries` is written in that order, so q_1 is entries.back().
 *
 *   B[q_1] = q_1
 *   B[q_D..q_1] = [ B(upper)^beta, B(lower)^alpha ]
 *               = beta^-1 U^-1 beta  alpha^-1 L^-1 alpha  beta^-1 U beta  alpha^-1 L alpha
 *
 * with upper = q_D..q_{D/2+1} and lower = q_{D/2}..q_1.
 */
struct BalancedSpec {
  std::vector<StateSequence> entries;
  StateSequence alpha;
  StateSequence beta;
};

bool is_power_of_two(std::size_t n) noexcept;

/// Streams the expansion symbol by symbol. Memory is one recursion path.
/// Throws ValidationError when entries.size() is not a power of two.
void for_each_commutator_symbol(const BalancedSpec& spec,
                                const std::function<void(GenSymbol)>& sink);

StateSequence balanced_commutator(const BalancedSpec& spec);

/// Length of the expansion without generating it.
std::size_t balanced_commutator_length(const BalancedSpec& spec);

/// The same recursion evaluated in the permutation group.
Permutation balanced_commutator(std::span<const Permutation> entries, const Permutation& alpha,
                                const Permutation& beta);

}  // namespace autgroup
