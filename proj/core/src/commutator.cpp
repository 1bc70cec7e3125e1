#include "autgroup/commutator.hpp"

#include <array>

#include "autgroup/error.hpp"

namespace autgroup {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

namespace {

enum class Part { kAlpha, kBeta, kUpper, kLower };

struct SignedPart {
  Part part;
  Sign sign;
};

// The twelve factors of [U^beta, L^alpha].
constexpr std::array<SignedPart, 12> kExpansion = {{
    {Part::kBeta, Sign::kNegative},  {Part::kUpper, Sign::kNegative}, {Part::kBeta, Sign::kPositive},
    {Part::kAlpha, Sign::kNegative}, {Part::kLower, Sign::kNegative}, {Part::kAlpha, Sign::kPositive},
    {Part::kBeta, Sign::kNegative},  {Part::kUpper, Sign::kPositive}, {Part::kBeta, Sign::kPositive},
    {Part::kAlpha, Sign::kNegative}, {Part::kLower, Sign::kPositive}, {Part::kAlpha, Sign::kPositive},
}};

void emit_sequence(const StateSequence& seq, Sign sign, const std::function<void(GenSymbol)>& sink) {
  if (sign == Sign::kPositive) {
    for (const GenSymbol& s : seq) sink(s);
  } else {
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) sink({it->state, flip(it->sign)});
  }
}

void emit(const BalancedSpec& spec, std::size_t lo, std::size_t hi, Sign sign,
          const std::function<void(GenSymbol)>& sink) {
  if (hi - lo == 1) {
    emit_sequence(spec.entries[lo], sign, sink);
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  auto emit_part = [&](SignedPart p) {
    const Sign s = sign == Sign::kPositive ? p.sign : flip(p.sign);
    switch (p.part) {
      case Part::kAlpha: emit_sequence(spec.alpha, s, sink); break;
      case Part::kBeta: emit_sequence(spec.beta, s, sink); break;
      case Part::kUpper: emit(spec, lo, mid, s, sink); break;
      case Part::kLower: emit(spec, mid, hi, s, sink); break;
    }
  };
  if (sign == Sign::kPositive) {
    for (const SignedPart& p : kExpansion) emit_part(p);
  } else {
    for (auto it = kExpansion.rbegin(); it != kExpansion.rend(); ++it) emit_part(*it);
  }
}

void require_power_of_two(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw ValidationError("balanced commutator needs a power-of-two entry count, got " +
                          std::to_string(n));
  }
}

std::size_t length_of(const BalancedSpec& spec, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return spec.entries[lo].size();
  const std::size_t mid = lo + (hi - lo) / 2;
  return 2 * length_of(spec, lo, mid) + 2 * length_of(spec, mid, hi) +
         4 * (spec.alpha.size() + spec.beta.size());
}

Permutation evaluate(std::span<const Permutation> entries, const Permutation& alpha,
                     const Permutation& beta) {
  if (entries.size() == 1) return entries.front();
  const std::size_t mid = entries.size() / 2;
  const Permutation upper = evaluate(entries.first(mid), alpha, beta);
  const Permutation lower = evaluate(entries.subspan(mid), alpha, beta);
  return commutator(conjugate(upper, beta), conjugate(lower, alpha));
}

}  // namespace

void for_each_commutator_symbol(const BalancedSpec& spec,
                                const std::function<void(GenSymbol)>& sink) {
  require_power_of_two(spec.entries.size());
  emit(spec, 0, spec.entries.size(), Sign::kPositive, sink);
}

StateSequence balanced_commutator(const BalancedSpec& spec) {
  StateSequence out;
  out.reserve(balanced_commutator_length(spec));
  for_each_commutator_symbol(spec, [&out](GenSymbol s) { out.push_back(s); });
  return out;
}

std::size_t balanced_commutator_length(const BalancedSpec& spec) {
  require_power_of_two(spec.entries.size());
  return length_of(spec, 0, spec.entries.size());
}

Permutation balanced_commutator(std::span<const Permutation> entries, const Permutation& alpha,
                                const Permutation& beta) {
  require_power_of_two(entries.size());
  return evaluate(entries, alpha, beta);
}

}  // namespace autgroup
