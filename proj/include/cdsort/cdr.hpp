#pragma once

// Context directed reversals (cdr) on signed permutations: the operation,
// the expansion pi* and the product D_pi, fixed-point structure, and
// memoized search for sortability and reachable fixed points.

#include <array>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdsort/cycle.hpp"
#include "cdsort/perm.hpp"

namespace cdsort {

// The pointer pair +-(low, low+1); cuts are the two cut positions, c1 < c2.
struct CdrContext {
  int low = 1;
  std::array<int, 2> cuts{};

  // "(x,x+1)"
  std::string to_string() const;
  friend bool operator==(const CdrContext&, const CdrContext&) = default;
};

// Ascending pointer order; empty iff the input is a cdr fixed point.
std::vector<CdrContext> list_cdr_contexts(std::span<const int> letters);
inline std::vector<CdrContext> list_cdr_contexts(const SignedPermutation& sp) {
  return list_cdr_contexts(sp.letters());
}
std::optional<CdrContext> find_cdr_context(std::span<const int> letters, int low);

// Reverses and negates the letters strictly between the two cuts.
// Throws Error{InvalidContext}.
Letters apply_cdr(std::span<const int> letters, const CdrContext& ctx);
SignedPermutation apply_cdr(const SignedPermutation& sp, const CdrContext& ctx);

// All letters share one sign.
bool is_cdr_fixed_point(std::span<const int> letters);
inline bool is_cdr_fixed_point(const SignedPermutation& sp) { return is_cdr_fixed_point(sp.letters()); }

// pi* = f(a_1) || ... || f(a_n), f(m) = [2m-1 2m] (m > 0), [-2m -(2m+1)] (m < 0).
struct ExpandedString {
  std::vector<int> values;
  std::string to_string() const { return format_letters(values); }
};

ExpandedString expand_star(const SignedPermutation& sp);

// D_pi = V_pi U on {0..2n+1}, U = (0 1)(2 3)...(2n 2n+1),
// V_pi = (0 b_1)(b_2 b_3)...(b_2n 2n+1).
CyclePermutation build_d(const SignedPermutation& sp);

// 0 and 2n lie in different cycles of D_pi. Necessary for cdr-sortability,
// not sufficient.
bool cdr_necessary_condition(const SignedPermutation& sp);

// Entries read after 2n on its D_pi cycle up to 0; empty when 0 and 2n are in
// different cycles. Exposed for inspection only.
std::vector<int> d_pile_segment(const SignedPermutation& sp);

enum class CdrTarget { Identity, ReversedNegative };

std::string_view to_string(CdrTarget t);
Letters target_letters(CdrTarget t, int n);

// Memoized "can this state still reach the target by cdr?" for one (n, target).
// Safe for concurrent use: verdicts are deterministic, so concurrent writers
// store identical values.
class CdrReachability {
 public:
  CdrReachability(int n, CdrTarget target);

  // Process-wide instance shared by every query for the same (n, target).
  static CdrReachability& shared(int n, CdrTarget target);

  int size() const noexcept { return n_; }
  CdrTarget target() const noexcept { return target_; }

  bool can_reach(std::span<const int> letters);
  // First witness in ascending pointer order, or nullopt.
  std::optional<std::vector<CdrContext>> witness(std::span<const int> letters);
  std::size_t memo_size() const;

 private:
  int n_;
  CdrTarget target_;
  StateKey target_key_;
  mutable std::shared_mutex mu_;
  std::unordered_map<StateKey, bool> memo_;
};

std::optional<std::vector<CdrContext>> search_cdr_sort(const SignedPermutation& sp,
                                                       CdrTarget target);

// Memoized map from state to the set of cdr fixed points reachable from it.
// Not thread-safe; one index per worker.
class CdrFixedPointIndex {
 public:
  explicit CdrFixedPointIndex(int n);

  // Sorted by one-line form.
  std::vector<SignedPermutation> reachable(const SignedPermutation& sp);
  const std::vector<StateKey>& reachable_keys(std::span<const int> letters);
  int size() const noexcept { return n_; }

 private:
  int n_;
  std::unordered_map<StateKey, std::vector<StateKey>> memo_;
};

std::vector<SignedPermutation> reachable_cdr_fixed_points(const SignedPermutation& sp);

inline ParityClass signed_parity_class(const SignedPermutation& sp) {
  return classify_parity(sp.letters());
}

// mu_n is the n-cycle (n n-1 ... 1), one-line [2 3 ... n 1]; nu_n is
// [-n ... -1]. Together they generate the 2n uniformly signed cds fixed points.
std::pair<SignedPermutation, SignedPermutation> dihedral_generators(int n);

// [k ... n 1 ... k-1] and [-(k-1) ... -1 -n ... -k] for k = 1..n.
std::vector<SignedPermutation> dihedral_family(int n);

}  // namespace cdsort
