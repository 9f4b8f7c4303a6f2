#pragma once

// Context directed swaps (cds): the operation itself, the cycle product C_pi,
// the strategic pile, and the decision procedures built on them.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdsort/cycle.hpp"
#include "cdsort/perm.hpp"

namespace cdsort {

// Pointers p and q whose occurrences alternate p ... q ... p ... q. The
// cuts are the positions of those four marks in string order; they are
// non-decreasing and two marks may share a cut (right pointer of one letter,
// left pointer of the next).
struct CdsContext {
  Pointer p;
  Pointer q;
  std::array<int, 4> cuts{};

  // "{(3,4),(5,6)}", lower pointer first.
  std::string to_string() const;
  std::pair<int, int> lows() const;
  friend bool operator==(const CdsContext&, const CdsContext&) = default;
};

// "{(x,x+1),(y,y+1)}" -> {x, y}; negative forms "-(x+1,x)" accepted.
std::pair<int, int> parse_cds_context(std::string_view text);

// Every alternating pointer pair, ordered by cut positions. In a signed
// permutation both occurrences of each pointer must carry the same sign.
std::vector<CdsContext> list_cds_contexts(std::span<const int> letters);
inline std::vector<CdsContext> list_cds_contexts(const Permutation& p) {
  return list_cds_contexts(p.letters());
}
inline std::vector<CdsContext> list_cds_contexts(const SignedPermutation& p) {
  return list_cds_contexts(p.letters());
}

// The context for pointers (a,a+1) and (b,b+1), if they alternate.
std::optional<CdsContext> find_cds_context(std::span<const int> letters, int low_a, int low_b);

// Swaps the blocks between cuts[0]..cuts[1] and cuts[2]..cuts[3].
// Throws Error{InvalidContext} if ctx is not a context of the input.
Letters apply_cds(std::span<const int> letters, const CdsContext& ctx);
Permutation apply_cds(const Permutation& p, const CdsContext& ctx);
SignedPermutation apply_cds(const SignedPermutation& p, const CdsContext& ctx);

bool is_cds_fixed_point(std::span<const int> letters);
inline bool is_cds_fixed_point(const Permutation& p) { return is_cds_fixed_point(p.letters()); }
inline bool is_cds_fixed_point(const SignedPermutation& p) {
  return is_cds_fixed_point(p.letters());
}

// C_pi = Y_pi X on {0..n}, X = (0 1 ... n), Y_pi = (a_n ... a_1 0).
CyclePermutation build_c(const Permutation& pi);

struct StrategicPile {
  // b_1..b_r in the order they follow n on the cycle of C_pi through 0 and n.
  std::vector<int> elements;

  bool empty() const noexcept { return elements.empty(); }
  std::size_t size() const noexcept { return elements.size(); }
  bool contains(int x) const;
  std::vector<int> sorted() const;
  // "{5,2,1,4,3}"
  std::string to_string() const;
};

StrategicPile strategic_pile(const Permutation& pi);

// Linear time: walks the cycle of C_pi through 0 looking for n.
bool is_cds_sortable(std::span<const int> letters);
inline bool is_cds_sortable(const Permutation& pi) { return is_cds_sortable(pi.letters()); }

// Rotation starts k of every cds fixed point reachable from pi, ascending.
std::vector<int> reachable_cds_fixed_points(const Permutation& pi);

// Number of cds applications from pi to a fixed point (the same for every
// play); 0 when pi is already a fixed point.
int cds_duration(const Permutation& pi);

// Takes the first listed context at every step. Throws Error{NotSortable}.
std::vector<CdsContext> sort_by_cds(const Permutation& pi);

// Lexicographically least context whose result drops x from the pile.
// Throws Error{PileTooSmall} if |SP| <= 1, Error{NotInPile} if x is not in it.
CdsContext removal_move(const Permutation& pi, int x);
// Lexicographically least context whose result keeps x in the pile.
CdsContext retention_move(const Permutation& pi, int x);

// C_{pi^{-1}} from C_pi^{-1} by replacing each i >= 1 with pi(i).
CyclePermutation c_of_inverse(const Permutation& pi);

inline ParityClass parity_class(const Permutation& p) { return classify_parity(p.letters()); }
inline ParityClass parity_class(const SignedPermutation& p) { return classify_parity(p.letters()); }

}  // namespace cdsort
