#include "autgroup/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "autgroup/error.hpp"

namespace autgroup {

Permutation::Permutation(std::vector<Letter> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (Letter b : images_) {
    if (b >= images_.size() || hit[b]) throw ValidationError("image array is not a bijection");
    hit[b] = 1;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<Letter> images(k);
  std::iota(images.begin(), images.end(), Letter{0});
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a] != a) return false;
  }
  return true;
}

namespace {

void require_same_size(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) {
    throw ValidationError("permutation size mismatch: " + std::to_string(g.size()) + " vs " +
                          std::to_string(h.size()));
  }
}

}  // namespace

Permutation compose(const Permutation& g, const Permutation& h) {
  require_same_size(g, h);
  std::vector<Letter> images(g.size());
  for (Letter a = 0; a < images.size(); ++a) images[a] = g(h(a));
  return Permutation(std::move(images));
}

Permutation inverse(const Permutation& g) {
  std::vector<Letter> images(g.size());
  for (Letter a = 0; a < images.size(); ++a) images[g(a)] = a;
  return Permutation(std::move(images));
}

Permutation conjugate(const Permutation& g, const Permutation& k) {
  return compose(inverse(k), compose(g, k));
}

Permutation commutator(const Permutation& h, const Permutation& g) {
  return compose(inverse(h), compose(inverse(g), compose(h, g)));
}

int parity(const Permutation& g) {
  // n - (number of cycles) transpositions.
  std::vector<char> seen(g.size(), 0);
  std::size_t cycles = 0;
  for (Letter a = 0; a < g.size(); ++a) {
    if (seen[a]) continue;
    ++cycles;
    for (Letter b = a; !seen[b]; b = g(b)) seen[b] = 1;
  }
  return static_cast<int>((g.size() - cycles) % 2);
}

std::vector<Permutation> alternating_group(std::size_t k) {
  std::vector<Letter> images(k);
  std::iota(images.begin(), images.end(), Letter{0});
  std::vector<Permutation> out;
  do {
    Permutation p(images);
    if (parity(p) == 0) out.push_back(std::move(p));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

bool satisfies_sigma_identity(const SigmaTriple& t) {
  return !t.sigma.is_identity() &&
         t.sigma == commutator(conjugate(t.sigma, t.beta), conjugate(t.sigma, t.alpha));
}

SigmaTriple find_sigma_triple() {
  const auto a5 = alternating_group(5);
  for (const auto& sigma : a5) {
    if (sigma.is_identity()) continue;
    for (const auto& alpha : a5) {
      const Permutation lower = conjugate(sigma, alpha);
      for (const auto& beta : a5) {
        if (commutator(conjugate(sigma, beta), lower) == sigma) return {sigma, alpha, beta};
      }
    }
  }
  throw Error("no sigma triple in A5");  // unreachable
}

std::string format_permutation(const Permutation& g) {
  std::string out = "(";
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (a) out += ' ';
    out += std::to_string(g(static_cast<Letter>(a)));
  }
  return out + ")";
}

}  // namespace autgroup
