#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "autgroup/automaton.hpp"

namespace autgroup {

/// A bijection on [0, k), stored as its image array.
class Permutation {
 public:
  Permutation() = default;
  /// Throws ValidationError unless `images` is a bijection on [0, images.size()).
  explicit Permutation(std::vector<Letter> images);

  static Permutation identity(std::size_t k);

  std::size_t size() const noexcept { return images_.size(); }
  Letter operator()(Letter a) const { return images_.at(a); }
  const std::vector<Letter>& images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Letter> images_;
};

/// a -> g(h(a)); h acts first, matching a sequence "g h".
Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
/// g^k = k^-1 g k
Permutation conjugate(const Permutation& g, const Permutation& k);
/// [h, g] = h^-1 g^-1 h g
Permutation commutator(const Permutation& h, const Permutation& g);
/// 0 for even, 1 for odd.
int parity(const Permutation& g);

/// All even permutations of k points in lexicographic order of image arrays.
std::vector<Permutation> alternating_group(std::size_t k);

/// sigma != 1 in A5 with sigma = [sigma^beta, sigma^alpha].
struct SigmaTriple {
  Permutation sigma;
  Permutation alpha;
  Permutation beta;
};

bool satisfies_sigma_identity(const SigmaTriple& t);

/// Least triple over A5^3 in lexicographic order of (sigma, alpha, beta).
SigmaTriple find_sigma_triple();

/// `(i0 i1 ... )`
std::string format_permutation(const Permutation& g);

}  // namespace autgroup
