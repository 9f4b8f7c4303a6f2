#include "cdsort/perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "cdsort/error.hpp"

namespace cdsort {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::ZeroEntry: return "ZeroEntry";
    case ErrorCode::SignedEntryInUnsignedMode: return "SignedEntryInUnsignedMode";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::NotSortable: return "NotSortable";
    case ErrorCode::PileTooSmall: return "PileTooSmall";
    case ErrorCode::NotInPile: return "NotInPile";
    case ErrorCode::InvalidF: return "InvalidF";
    case ErrorCode::FNotSubsetOfPile: return "FNotSubsetOfPile";
    case ErrorCode::NoMove: return "NoMove";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::Finished: return "Finished";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

namespace {

void check_magnitudes(const Letters& letters) {
  const int n = static_cast<int>(letters.size());
  if (n < 1) throw Error(ErrorCode::NotABijection, "permutation must have at least one letter");
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int a : letters) {
    if (a == 0) throw Error(ErrorCode::ZeroEntry, "0 is not a letter");
    const int m = std::abs(a);
    if (m > n) {
      throw Error(ErrorCode::NotABijection,
                  "letter " + std::to_string(a) + " out of range for n=" + std::to_string(n));
    }
    if (seen[m]) throw Error(ErrorCode::NotABijection, "duplicate letter " + std::to_string(m));
    seen[m] = true;
  }
}

}  // namespace

Permutation::Permutation(Letters letters) : letters_(std::move(letters)) {
  check_magnitudes(letters_);
  for (int a : letters_) {
    if (a < 0) {
      throw Error(ErrorCode::SignedEntryInUnsignedMode,
                  "negative letter " + std::to_string(a) + " in an unsigned permutation");
    }
  }
}

Permutation Permutation::identity(int n) {
  Letters l(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) l[i] = i + 1;
  return Permutation(std::move(l));
}

bool Permutation::is_identity() const noexcept {
  for (int i = 0; i < size(); ++i)
    if (letters_[i] != i + 1) return false;
  return true;
}

std::string Permutation::to_string() const { return format_letters(letters_); }

SignedPermutation::SignedPermutation(Letters letters) : letters_(std::move(letters)) {
  check_magnitudes(letters_);
}

SignedPermutation::SignedPermutation(const Permutation& unsigned_perm)
    : letters_(unsigned_perm.letters().begin(), unsigned_perm.letters().end()) {}

SignedPermutation SignedPermutation::identity(int n) {
  return SignedPermutation(Permutation::identity(n));
}

SignedPermutation SignedPermutation::reversed_negative(int n) {
  Letters l(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) l[i] = -(n - i);
  return SignedPermutation(std::move(l));
}

bool SignedPermutation::all_positive() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(), [](int a) { return a > 0; });
}

bool SignedPermutation::all_negative() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(), [](int a) { return a < 0; });
}

bool SignedPermutation::is_identity() const noexcept {
  for (int i = 0; i < size(); ++i)
    if (letters_[i] != i + 1) return false;
  return true;
}

std::string SignedPermutation::to_string() const { return format_letters(letters_); }

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }
std::ostream& operator<<(std::ostream& os, const SignedPermutation& p) {
  return os << p.to_string();
}

Letters parse_letters(std::string_view text) {
  std::string body(text);
  auto first = body.find_first_not_of(" \t\r\n");
  auto last = body.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw Error(ErrorCode::ParseError, "empty permutation text");
  body = body.substr(first, last - first + 1);
  if (body.front() == '[') {
    if (body.back() != ']') throw Error(ErrorCode::ParseError, "unbalanced bracket in '" + body + "'");
    body = body.substr(1, body.size() - 2);
  } else if (body.back() == ']') {
    throw Error(ErrorCode::ParseError, "unbalanced bracket in '" + body + "'");
  }
  // Commas are tolerated as separators so JSON-ish input also parses.
  std::replace(body.begin(), body.end(), ',', ' ');

  Letters out;
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "not an integer: '" + tok + "'");
    }
    if (used != tok.size()) throw Error(ErrorCode::ParseError, "not an integer: '" + tok + "'");
    out.push_back(value);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "permutation has no letters");
  return out;
}

Permutation parse_permutation(std::string_view text) { return Permutation(parse_letters(text)); }

SignedPermutation parse_signed_permutation(std::string_view text) {
  return SignedPermutation(parse_letters(text));
}

std::string format_letters(std::span<const int> letters) {
  std::string s = "[";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(letters[i]);
  }
  s += ']';
  return s;
}

std::string Pointer::to_string() const {
  if (negative) return "-(" + std::to_string(low + 1) + "," + std::to_string(low) + ")";
  return "(" + std::to_string(low) + "," + std::to_string(low + 1) + ")";
}

Pointer parse_pointer(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  const auto fail = [&]() { return Error(ErrorCode::ParseError, "not a pointer: '" + std::string(text) + "'"); };
  bool negative = false;
  if (!t.empty() && t.front() == '-') {
    negative = true;
    t.erase(0, 1);
  }
  if (t.size() < 5 || t.front() != '(' || t.back() != ')') throw fail();
  const auto comma = t.find(',');
  if (comma == std::string::npos) throw fail();
  int first = 0;
  int second = 0;
  try {
    std::size_t used1 = 0;
    std::size_t used2 = 0;
    const std::string a = t.substr(1, comma - 1);
    const std::string b = t.substr(comma + 1, t.size() - comma - 2);
    first = std::stoi(a, &used1);
    second = std::stoi(b, &used2);
    if (used1 != a.size() || used2 != b.size()) throw fail();
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw fail();
  }
  if (!negative && second == first + 1 && first >= 1) return Pointer{first, false};
  if (negative && first == second + 1 && second >= 1) return Pointer{second, true};
  throw fail();
}

std::vector<PointerOccurrence> pointer_occurrences(std::span<const int> letters) {
  const int n = static_cast<int>(letters.size());
  std::vector<PointerOccurrence> out;
  out.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const int a = letters[i - 1];
    const int m = std::abs(a);
    if (a > 0) {
      if (m > 1) out.push_back({Pointer{m - 1, false}, i, Side::Left, i - 1});
      if (m < n) out.push_back({Pointer{m, false}, i, Side::Right, i});
    } else {
      // lambda(a) = -(|a|+1, |a|), rho(a) = -(|a|, |a|-1)
      if (m < n) out.push_back({Pointer{m, true}, i, Side::Left, i - 1});
      if (m > 1) out.push_back({Pointer{m - 1, true}, i, Side::Right, i});
    }
  }
  return out;
}

std::vector<Adjacency> adjacencies(std::span<const int> letters) {
  std::vector<Adjacency> out;
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    if (letters[i] + 1 == letters[i + 1]) out.push_back({static_cast<int>(i) + 1});
  return out;
}

namespace {

Letters inverse_letters(std::span<const int> a) {
  // pi(|a_i|) = sign(a_i) * i
  Letters out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int v = a[i];
    const int idx = static_cast<int>(i) + 1;
    out[static_cast<std::size_t>(std::abs(v) - 1)] = v > 0 ? idx : -idx;
  }
  return out;
}

Letters compose_letters(std::span<const int> outer, std::span<const int> inner) {
  if (outer.size() != inner.size()) {
    throw Error(ErrorCode::SizeMismatch, "cannot compose permutations of sizes " +
                                             std::to_string(outer.size()) + " and " +
                                             std::to_string(inner.size()));
  }
  // (s o p)^{-1}(i) = p^{-1}(s^{-1}(i)), extended by p^{-1}(-j) = -p^{-1}(j).
  Letters out(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const int s = outer[i];
    const int v = inner[static_cast<std::size_t>(std::abs(s) - 1)];
    out[i] = s > 0 ? v : -v;
  }
  return out;
}

}  // namespace

Permutation inverse(const Permutation& p) { return Permutation(inverse_letters(p.letters())); }

SignedPermutation inverse(const SignedPermutation& p) {
  return SignedPermutation(inverse_letters(p.letters()));
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  return Permutation(compose_letters(outer.letters(), inner.letters()));
}

SignedPermutation compose(const SignedPermutation& outer, const SignedPermutation& inner) {
  return SignedPermutation(compose_letters(outer.letters(), inner.letters()));
}

Permutation rotation_fixed_point(int n, int k) {
  if (n < 1 || k < 1 || k > n) {
    throw Error(ErrorCode::OutOfRange,
                "rotation start " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  Letters l;
  l.reserve(static_cast<std::size_t>(n));
  for (int v = k; v <= n; ++v) l.push_back(v);
  for (int v = 1; v < k; ++v) l.push_back(v);
  return Permutation(std::move(l));
}

std::string_view to_string(ParityClass c) {
  switch (c) {
    case ParityClass::Preserving: return "preserving";
    case ParityClass::Switching: return "switching";
    case ParityClass::Neither: return "neither";
  }
  return "neither";
}

ParityClass classify_parity(std::span<const int> letters) {
  bool preserving = true;
  bool switching = true;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const bool same = (std::abs(letters[i]) % 2) == static_cast<int>((i + 1) % 2);
    preserving = preserving && same;
    switching = switching && !same;
  }
  if (preserving) return ParityClass::Preserving;
  if (switching) return ParityClass::Switching;
  return ParityClass::Neither;
}

StateKey pack_state(std::span<const int> letters) {
  if (static_cast<int>(letters.size()) > kMaxPackedSize) {
    throw Error(ErrorCode::TooLarge, "state packing supports at most " +
                                         std::to_string(kMaxPackedSize) + " letters");
  }
  StateKey key = 0;
  for (int a : letters) {
    const StateKey code = static_cast<StateKey>(std::abs(a) - 1) | (a < 0 ? 0x10u : 0u);
    key = (key << 5) | code;
  }
  return key;
}

Letters unpack_state(StateKey key, int n) {
  Letters out(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const auto code = static_cast<int>(key & 0x1f);
    const int m = (code & 0xf) + 1;
    out[i] = (code & 0x10) ? -m : m;
    key >>= 5;
  }
  return out;
}

}  // namespace cdsort
