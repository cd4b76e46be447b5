#pragma once

#include <cstdint>
#include <vector>

#include "groundwork/design.hpp"

namespace fixtures {

// Number of designs within a depth bound, by recurrence on the number of
// addresses in the context. Only the sizes of the ramifications matter.
class CountOracle {
 public:
  explicit CountOracle(const std::vector<groundwork::ludics::Ramification>& pool) {
    for (const auto& I : pool) sizes_.push_back(I.size());
  }

  // Designs on ⊢ Δ with |Δ| = n.
  std::uint64_t positive(std::size_t n, int depth) const {
    if (depth < 1) return 0;
    std::uint64_t total = 2;
    for (std::size_t s : sizes_) {
      if (s == 0) {
        total += n;
        continue;
      }
      if (depth < 2 || n == 0) continue;
      total += n * spread(n - 1, s, depth - 1);
    }
    return total;
  }

  // Designs on ξ ⊢ Δ with |Δ| = m, any use of Δ.
  std::uint64_t negative(std::size_t m, int depth) const {
    if (depth < 1) return 0;
    std::uint64_t total = 1;
    for (std::size_t s : sizes_) total *= 1 + positive(m + s, depth - 1);
    return total;
  }

  // Designs on ξ ⊢ Δ acting on every address of Δ.
  std::uint64_t negative_exact(std::size_t m, int depth) const {
    std::int64_t total = 0;
    for (std::size_t j = 0; j <= m; ++j) {
      const std::int64_t term = static_cast<std::int64_t>(binom(m, j) * negative(j, depth));
      total += ((m - j) % 2 ? -term : term);
    }
    return static_cast<std::uint64_t>(total);
  }

 private:
  std::vector<std::size_t> sizes_;

  static std::uint64_t binom(std::size_t n, std::size_t k) {
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }

  // Ways to hand `others` addresses to `premises` premises (or to none),
  // each premise acting on all it receives.
  std::uint64_t spread(std::size_t others, std::size_t premises, int depth) const {
    std::vector<std::size_t> slot(others, 0);
    std::uint64_t total = 0;
    for (;;) {
      std::vector<std::size_t> load(premises + 1, 0);
      for (auto s : slot) ++load[s];
      std::uint64_t ways = 1;
      for (std::size_t k = 1; k <= premises; ++k) ways *= negative_exact(load[k], depth);
      total += ways;
      std::size_t k = 0;
      while (k < slot.size() && ++slot[k] == premises + 1) slot[k++] = 0;
      if (k == slot.size()) break;
    }
    return total;
  }
};

}  // namespace fixtures
