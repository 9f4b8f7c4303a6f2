#pragma once

// Unsigned and signed permutations in one-line inverse-image notation
// [a_1 ... a_n], with a_i = pi^{-1}(i), plus the pointer machinery that both
// sorting operations are defined on.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdsort {

using Letters = std::vector<int>;

class Permutation {
 public:
  // Throws Error{NotABijection | ZeroEntry | SignedEntryInUnsignedMode}.
  explicit Permutation(Letters letters);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(letters_.size()); }
  // 1-based, as in all external text.
  int at(int i) const { return letters_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const int> letters() const noexcept { return letters_; }
  bool is_identity() const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  Letters letters_;
};

class SignedPermutation {
 public:
  // Throws Error{NotABijection | ZeroEntry}.
  explicit SignedPermutation(Letters letters);
  explicit SignedPermutation(const Permutation& unsigned_perm);

  static SignedPermutation identity(int n);
  // [-n -(n-1) ... -1]
  static SignedPermutation reversed_negative(int n);

  int size() const noexcept { return static_cast<int>(letters_.size()); }
  int at(int i) const { return letters_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const int> letters() const noexcept { return letters_; }
  bool all_positive() const noexcept;
  bool all_negative() const noexcept;
  bool is_identity() const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  Letters letters_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);
std::ostream& operator<<(std::ostream& os, const SignedPermutation& p);

// "[a_1 a_2 ... a_n]"; brackets optional on input, whitespace separated.
Letters parse_letters(std::string_view text);
Permutation parse_permutation(std::string_view text);
SignedPermutation parse_signed_permutation(std::string_view text);
std::string format_letters(std::span<const int> letters);

// A pointer (x, x+1) in positive form, or its negative -(x+1, x).
struct Pointer {
  int low = 1;
  bool negative = false;

  std::string to_string() const;
  friend auto operator<=>(const Pointer&, const Pointer&) = default;
};

// "(x,x+1)" or "-(x+1,x)", whitespace-insensitive. Throws Error{ParseError}.
Pointer parse_pointer(std::string_view text);

enum class Side { Left, Right };

// Cut positions are the n+1 gaps 0..n between letters. A left pointer of the
// letter at index i sits at cut i-1, a right pointer at cut i.
struct PointerOccurrence {
  Pointer pointer;
  int element_index = 1;
  Side side = Side::Left;
  int cut = 0;

  // Total order of pointer marks along the string: at a shared cut the right
  // pointer of the earlier letter comes before the left pointer of the next.
  int mark() const noexcept { return 2 * cut + (side == Side::Left ? 1 : 0); }
  friend bool operator==(const PointerOccurrence&, const PointerOccurrence&) = default;
};

std::vector<PointerOccurrence> pointer_occurrences(std::span<const int> letters);
inline std::vector<PointerOccurrence> pointer_occurrences(const Permutation& p) {
  return pointer_occurrences(p.letters());
}
inline std::vector<PointerOccurrence> pointer_occurrences(const SignedPermutation& p) {
  return pointer_occurrences(p.letters());
}

struct Adjacency {
  int position = 1;
  friend bool operator==(const Adjacency&, const Adjacency&) = default;
};

std::vector<Adjacency> adjacencies(std::span<const int> letters);
inline std::vector<Adjacency> adjacencies(const Permutation& p) { return adjacencies(p.letters()); }
inline std::vector<Adjacency> adjacencies(const SignedPermutation& p) {
  return adjacencies(p.letters());
}

Permutation inverse(const Permutation& p);
SignedPermutation inverse(const SignedPermutation& p);

// outer o inner: apply inner first. Throws Error{SizeMismatch}.
Permutation compose(const Permutation& outer, const Permutation& inner);
SignedPermutation compose(const SignedPermutation& outer, const SignedPermutation& inner);

// [k (k+1) ... n 1 ... (k-1)]. Throws Error{OutOfRange} unless 1 <= k <= n.
Permutation rotation_fixed_point(int n, int k);

enum class ParityClass { Preserving, Switching, Neither };

std::string_view to_string(ParityClass c);

// Compares |a_i| with i; since pi(a_i) = i this is the pi(j) vs j test.
ParityClass classify_parity(std::span<const int> letters);

// Largest n for which pack_state fits into 64 bits (5 bits per letter).
inline constexpr int kMaxPackedSize = 12;

using StateKey = std::uint64_t;

// Injective encoding of a (signed) one-line form with n <= kMaxPackedSize.
StateKey pack_state(std::span<const int> letters);
Letters unpack_state(StateKey key, int n);

}  // namespace cdsort
