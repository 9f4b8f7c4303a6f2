#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cdsort {

// A bijection on {0..N}. Hosts the products C_pi (cds) and D_pi (cdr).
class CyclePermutation {
 public:
  // map[x] is the image of x. Throws Error{NotABijection}.
  explicit CyclePermutation(std::vector<int> map);

  static CyclePermutation identity(int size);
  // Product of cycles given in cycle notation, rightmost applied first.
  static CyclePermutation from_cycles(int size, const std::vector<std::vector<int>>& cycles);

  int size() const noexcept { return static_cast<int>(map_.size()); }
  int operator()(int x) const { return map_.at(static_cast<std::size_t>(x)); }
  std::span<const int> map() const noexcept { return map_; }

  // Canonical form: each cycle starts at its minimum, cycles sorted by minimum.
  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;
  bool same_cycle(int a, int b) const;
  // The cycle through x, starting at x.
  std::vector<int> orbit(int x) const;

  CyclePermutation inverse() const;
  // Conjugate by a relabelling: the result maps relabel(x) to relabel(this(x)).
  CyclePermutation relabel(const std::function<int(int)>& relabel) const;

  // "(0 7 5 2 1 4 3)(6)"
  std::string to_string() const;

  friend bool operator==(const CyclePermutation&, const CyclePermutation&) = default;

 private:
  std::vector<int> map_;
};

// this o other, apply other first.
CyclePermutation operator*(const CyclePermutation& lhs, const CyclePermutation& rhs);

}  // namespace cdsort
