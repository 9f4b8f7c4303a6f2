#include "cdsort/cdr.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>

#include "cdsort/error.hpp"

namespace cdsort {

std::string CdrContext::to_string() const { return Pointer{low, false}.to_string(); }

namespace {

// For pointer value x the two occurrences come from the letters of magnitude
// x and x+1; a cdr context needs them to carry opposite signs.
std::optional<CdrContext> context_at(std::span<const int> a, const std::vector<int>& pos, int x) {
  const int i = pos[x];          // 1-based index of +-x
  const int j = pos[x + 1];      // 1-based index of +-(x+1)
  const bool neg_x = a[i - 1] < 0;
  const bool neg_y = a[j - 1] < 0;
  if (neg_x == neg_y) return std::nullopt;
  // +x carries (x,x+1) on its right; -x carries -(x+1,x) on its left.
  const int cut_x = neg_x ? i - 1 : i;
  // +(x+1) carries (x,x+1) on its left; -(x+1) carries -(x+1,x) on its right.
  const int cut_y = neg_y ? j : j - 1;
  CdrContext ctx;
  ctx.low = x;
  ctx.cuts = {std::min(cut_x, cut_y), std::max(cut_x, cut_y)};
  return ctx;
}

std::vector<int> positions(std::span<const int> a) {
  std::vector<int> pos(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) pos[static_cast<std::size_t>(std::abs(a[i]))] = static_cast<int>(i) + 1;
  return pos;
}

Letters reverse_negate(std::span<const int> a, const std::array<int, 2>& cuts) {
  Letters out(a.begin(), a.end());
  std::reverse(out.begin() + cuts[0], out.begin() + cuts[1]);
  for (int k = cuts[0]; k < cuts[1]; ++k) out[k] = -out[k];
  return out;
}

}  // namespace

std::vector<CdrContext> list_cdr_contexts(std::span<const int> letters) {
  const int n = static_cast<int>(letters.size());
  std::vector<CdrContext> out;
  const auto pos = positions(letters);
  for (int x = 1; x < n; ++x)
    if (auto ctx = context_at(letters, pos, x)) out.push_back(*ctx);
  return out;
}

std::optional<CdrContext> find_cdr_context(std::span<const int> letters, int low) {
  const int n = static_cast<int>(letters.size());
  if (low < 1 || low >= n) return std::nullopt;
  return context_at(letters, positions(letters), low);
}

Letters apply_cdr(std::span<const int> letters, const CdrContext& ctx) {
  const auto actual = find_cdr_context(letters, ctx.low);
  if (!actual || actual->cuts != ctx.cuts) {
    throw Error(ErrorCode::InvalidContext,
                "+-" + ctx.to_string() + " is not a cdr context of " + format_letters(letters));
  }
  return reverse_negate(letters, ctx.cuts);
}

SignedPermutation apply_cdr(const SignedPermutation& sp, const CdrContext& ctx) {
  return SignedPermutation(apply_cdr(sp.letters(), ctx));
}

bool is_cdr_fixed_point(std::span<const int> letters) {
  const bool first_negative = letters.front() < 0;
  return std::all_of(letters.begin(), letters.end(),
                     [&](int a) { return (a < 0) == first_negative; });
}

ExpandedString expand_star(const SignedPermutation& sp) {
  ExpandedString out;
  out.values.reserve(2 * static_cast<std::size_t>(sp.size()));
  for (int m : sp.letters()) {
    if (m > 0) {
      out.values.push_back(2 * m - 1);
      out.values.push_back(2 * m);
    } else {
      out.values.push_back(-2 * m);
      out.values.push_back(-(2 * m + 1));
    }
  }
  return out;
}

CyclePermutation build_d(const SignedPermutation& sp) {
  const int n = sp.size();
  const int top = 2 * n + 1;
  const auto b = expand_star(sp).values;
  std::vector<int> u(static_cast<std::size_t>(top) + 1);
  for (int x = 0; x <= top; ++x) u[x] = x ^ 1;
  // V pairs the boundary 0 with b_1, b_{2k} with b_{2k+1}, and b_{2n} with 2n+1.
  std::vector<int> v(static_cast<std::size_t>(top) + 1);
  const auto pair = [&](int x, int y) {
    v[x] = y;
    v[y] = x;
  };
  pair(0, b.front());
  for (int k = 1; k + 1 < 2 * n; k += 2) pair(b[k], b[k + 1]);
  pair(b.back(), top);
  std::vector<int> d(static_cast<std::size_t>(top) + 1);
  for (int x = 0; x <= top; ++x) d[x] = v[u[x]];
  return CyclePermutation(std::move(d));
}

bool cdr_necessary_condition(const SignedPermutation& sp) {
  return !build_d(sp).same_cycle(0, 2 * sp.size());
}

std::vector<int> d_pile_segment(const SignedPermutation& sp) {
  const CyclePermutation d = build_d(sp);
  const int two_n = 2 * sp.size();
  std::vector<int> seg;
  if (!d.same_cycle(0, two_n)) return seg;
  for (int x = d(two_n); x != 0; x = d(x)) seg.push_back(x);
  return seg;
}

std::string_view to_string(CdrTarget t) {
  return t == CdrTarget::Identity ? "identity" : "reverse";
}

Letters target_letters(CdrTarget t, int n) {
  const SignedPermutation p = t == CdrTarget::Identity ? SignedPermutation::identity(n)
                                                       : SignedPermutation::reversed_negative(n);
  return Letters(p.letters().begin(), p.letters().end());
}

CdrReachability::CdrReachability(int n, CdrTarget target)
    : n_(n), target_(target), target_key_(pack_state(target_letters(target, n))) {}

CdrReachability& CdrReachability::shared(int n, CdrTarget target) {
  static std::mutex registry_mu;
  static std::map<std::pair<int, CdrTarget>, std::unique_ptr<CdrReachability>> registry;
  std::lock_guard lock(registry_mu);
  auto& slot = registry[{n, target}];
  if (!slot) slot = std::make_unique<CdrReachability>(n, target);
  return *slot;
}

bool CdrReachability::can_reach(std::span<const int> letters) {
  if (static_cast<int>(letters.size()) != n_) {
    throw Error(ErrorCode::SizeMismatch, "reachability table is for n=" + std::to_string(n_));
  }
  const StateKey key = pack_state(letters);
  if (key == target_key_) return true;
  {
    std::shared_lock lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  bool ok = false;
  for (const auto& ctx : list_cdr_contexts(letters)) {
    if (can_reach(reverse_negate(letters, ctx.cuts))) {
      ok = true;
      break;
    }
  }
  std::unique_lock lock(mu_);
  memo_[key] = ok;
  return ok;
}

std::optional<std::vector<CdrContext>> CdrReachability::witness(std::span<const int> letters) {
  if (!can_reach(letters)) return std::nullopt;
  std::vector<CdrContext> seq;
  Letters cur(letters.begin(), letters.end());
  while (pack_state(cur) != target_key_) {
    for (const auto& ctx : list_cdr_contexts(cur)) {
      Letters next = reverse_negate(cur, ctx.cuts);
      if (can_reach(next)) {
        seq.push_back(ctx);
        cur = std::move(next);
        break;
      }
    }
  }
  return seq;
}

std::size_t CdrReachability::memo_size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

std::optional<std::vector<CdrContext>> search_cdr_sort(const SignedPermutation& sp,
                                                       CdrTarget target) {
  return CdrReachability::shared(sp.size(), target).witness(sp.letters());
}

CdrFixedPointIndex::CdrFixedPointIndex(int n) : n_(n) {}

const std::vector<StateKey>& CdrFixedPointIndex::reachable_keys(std::span<const int> letters) {
  const StateKey key = pack_state(letters);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  std::vector<StateKey> out;
  const auto ctxs = list_cdr_contexts(letters);
  if (ctxs.empty()) {
    out.push_back(key);
  } else {
    for (const auto& ctx : ctxs) {
      const auto& sub = reachable_keys(reverse_negate(letters, ctx.cuts));
      out.insert(out.end(), sub.begin(), sub.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  // References into an unordered_map stay valid across rehashing.
  return memo_.emplace(key, std::move(out)).first->second;
}

std::vector<SignedPermutation> CdrFixedPointIndex::reachable(const SignedPermutation& sp) {
  if (sp.size() != n_) throw Error(ErrorCode::SizeMismatch, "index is for n=" + std::to_string(n_));
  std::vector<SignedPermutation> out;
  for (StateKey k : reachable_keys(sp.letters())) out.emplace_back(unpack_state(k, n_));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedPermutation> reachable_cdr_fixed_points(const SignedPermutation& sp) {
  CdrFixedPointIndex index(sp.size());
  return index.reachable(sp);
}

std::pair<SignedPermutation, SignedPermutation> dihedral_generators(int n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "n must be positive");
  Letters mu(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mu[i] = i + 2 > n ? 1 : i + 2;
  return {SignedPermutation(std::move(mu)), SignedPermutation::reversed_negative(n)};
}

std::vector<SignedPermutation> dihedral_family(int n) {
  std::vector<SignedPermutation> out;
  for (int k = 1; k <= n; ++k) out.emplace_back(rotation_fixed_point(n, k));
  for (int k = 1; k <= n; ++k) {
    Letters l;
    for (int v = k - 1; v >= 1; --v) l.push_back(-v);
    for (int v = n; v >= k; --v) l.push_back(-v);
    out.emplace_back(std::move(l));
  }
  return out;
}

}  // namespace cdsort
