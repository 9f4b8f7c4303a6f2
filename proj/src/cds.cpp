#include "cdsort/cds.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <tuple>

#include "cdsort/error.hpp"

namespace cdsort {

namespace {

// Both marks of one pointer value, in string order.
struct PointerMarks {
  int count = 0;
  std::array<int, 2> mark{};
  std::array<bool, 2> negative{};
};

std::vector<PointerMarks> collect_marks(std::span<const int> letters) {
  const int n = static_cast<int>(letters.size());
  std::vector<PointerMarks> by_low(static_cast<std::size_t>(std::max(n, 1)));
  const auto add = [&](int low, bool neg, int mark) {
    auto& m = by_low[static_cast<std::size_t>(low)];
    m.mark[m.count] = mark;
    m.negative[m.count] = neg;
    ++m.count;
  };
  for (int i = 1; i <= n; ++i) {
    const int a = letters[i - 1];
    const int m = std::abs(a);
    const int left = 2 * (i - 1) + 1;
    const int right = 2 * i;
    if (a > 0) {
      if (m > 1) add(m - 1, false, left);
      if (m < n) add(m, false, right);
    } else {
      if (m < n) add(m, true, left);
      if (m > 1) add(m - 1, true, right);
    }
  }
  // Letters are visited left to right, so mark[0] < mark[1] for every pointer.
  return by_low;
}

bool usable(const PointerMarks& m) { return m.count == 2 && m.negative[0] == m.negative[1]; }

std::optional<CdsContext> context_for(const std::vector<PointerMarks>& marks, int a, int b) {
  const auto& ma = marks[static_cast<std::size_t>(a)];
  const auto& mb = marks[static_cast<std::size_t>(b)];
  if (!usable(ma) || !usable(mb)) return std::nullopt;
  const PointerMarks* first = &ma;
  const PointerMarks* second = &mb;
  int first_low = a;
  int second_low = b;
  if (mb.mark[0] < ma.mark[0]) {
    std::swap(first, second);
    std::swap(first_low, second_low);
  }
  if (!(first->mark[0] < second->mark[0] && second->mark[0] < first->mark[1] &&
        first->mark[1] < second->mark[1])) {
    return std::nullopt;
  }
  CdsContext ctx;
  ctx.p = Pointer{first_low, first->negative[0]};
  ctx.q = Pointer{second_low, second->negative[0]};
  ctx.cuts = {first->mark[0] / 2, second->mark[0] / 2, first->mark[1] / 2, second->mark[1] / 2};
  return ctx;
}

Letters swap_blocks(std::span<const int> a, const std::array<int, 4>& c) {
  Letters out;
  out.reserve(a.size());
  out.insert(out.end(), a.begin(), a.begin() + c[0]);
  out.insert(out.end(), a.begin() + c[2], a.begin() + c[3]);
  out.insert(out.end(), a.begin() + c[1], a.begin() + c[2]);
  out.insert(out.end(), a.begin() + c[0], a.begin() + c[1]);
  out.insert(out.end(), a.begin() + c[3], a.end());
  return out;
}

}  // namespace

std::string CdsContext::to_string() const {
  const Pointer& lo = p.low < q.low ? p : q;
  const Pointer& hi = p.low < q.low ? q : p;
  return "{" + lo.to_string() + "," + hi.to_string() + "}";
}

std::pair<int, int> CdsContext::lows() const {
  return {std::min(p.low, q.low), std::max(p.low, q.low)};
}

std::pair<int, int> parse_cds_context(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') {
    throw Error(ErrorCode::ParseError, "cds context must look like {(x,x+1),(y,y+1)}: '" +
                                           std::string(text) + "'");
  }
  t = t.substr(1, t.size() - 2);
  // Split at the comma that follows the first closing parenthesis.
  const auto close = t.find(')');
  if (close == std::string::npos || close + 1 >= t.size() || t[close + 1] != ',') {
    throw Error(ErrorCode::ParseError, "cds context needs two pointers: '" + std::string(text) + "'");
  }
  const Pointer a = parse_pointer(t.substr(0, close + 1));
  const Pointer b = parse_pointer(t.substr(close + 2));
  if (a.low == b.low) throw Error(ErrorCode::ParseError, "cds context pointers must differ");
  return {a.low, b.low};
}

std::vector<CdsContext> list_cds_contexts(std::span<const int> letters) {
  const int n = static_cast<int>(letters.size());
  std::vector<CdsContext> out;
  if (n < 3) return out;
  const auto marks = collect_marks(letters);
  for (int a = 1; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (auto ctx = context_for(marks, a, b)) out.push_back(*ctx);
    }
  }
  std::sort(out.begin(), out.end(), [](const CdsContext& x, const CdsContext& y) {
    return std::tie(x.cuts, x.p.low, x.q.low) < std::tie(y.cuts, y.p.low, y.q.low);
  });
  return out;
}

std::optional<CdsContext> find_cds_context(std::span<const int> letters, int low_a, int low_b) {
  const int n = static_cast<int>(letters.size());
  if (low_a == low_b || low_a < 1 || low_b < 1 || low_a >= n || low_b >= n) return std::nullopt;
  return context_for(collect_marks(letters), low_a, low_b);
}

Letters apply_cds(std::span<const int> letters, const CdsContext& ctx) {
  const auto actual = find_cds_context(letters, ctx.p.low, ctx.q.low);
  if (!actual || actual->cuts != ctx.cuts || actual->p != ctx.p || actual->q != ctx.q) {
    throw Error(ErrorCode::InvalidContext,
                ctx.to_string() + " is not a cds context of " + format_letters(letters));
  }
  return swap_blocks(letters, ctx.cuts);
}

Permutation apply_cds(const Permutation& p, const CdsContext& ctx) {
  return Permutation(apply_cds(p.letters(), ctx));
}

SignedPermutation apply_cds(const SignedPermutation& p, const CdsContext& ctx) {
  return SignedPermutation(apply_cds(p.letters(), ctx));
}

bool is_cds_fixed_point(std::span<const int> letters) {
  const int n = static_cast<int>(letters.size());
  if (n < 3) return true;
  const auto marks = collect_marks(letters);
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (context_for(marks, a, b)) return false;
  return true;
}

CyclePermutation build_c(const Permutation& pi) {
  const int n = pi.size();
  const auto a = pi.letters();
  // Y: 0 -> a_n, a_i -> a_{i-1}, a_1 -> 0
  std::vector<int> y(static_cast<std::size_t>(n) + 1);
  y[0] = a[n - 1];
  for (int i = 1; i < n; ++i) y[a[i]] = a[i - 1];
  y[a[0]] = 0;
  std::vector<int> c(static_cast<std::size_t>(n) + 1);
  for (int x = 0; x <= n; ++x) c[x] = y[(x + 1) % (n + 1)];
  return CyclePermutation(std::move(c));
}

bool StrategicPile::contains(int x) const {
  return std::find(elements.begin(), elements.end(), x) != elements.end();
}

std::vector<int> StrategicPile::sorted() const {
  std::vector<int> s = elements;
  std::sort(s.begin(), s.end());
  return s;
}

std::string StrategicPile::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(elements[i]);
  }
  return s + "}";
}

StrategicPile strategic_pile(const Permutation& pi) {
  const int n = pi.size();
  const CyclePermutation c = build_c(pi);
  StrategicPile pile;
  if (!c.same_cycle(0, n)) return pile;
  for (int x = c(n); x != 0; x = c(x)) pile.elements.push_back(x);
  return pile;
}

bool is_cds_sortable(std::span<const int> letters) {
  const int n = static_cast<int>(letters.size());
  constexpr int kStack = 64;
  int pos_stack[kStack + 1];
  std::vector<int> pos_heap;
  int* pos = pos_stack;
  if (n > kStack) {
    pos_heap.resize(static_cast<std::size_t>(n) + 1);
    pos = pos_heap.data();
  }
  for (int i = 0; i < n; ++i) pos[letters[i]] = i;
  // C(x) = Y(x+1 mod n+1); Y(0) = a_n, Y(a_1) = 0, Y(a_i) = a_{i-1}.
  int x = 0;
  do {
    const int up = x == n ? 0 : x + 1;
    if (up == 0) {
      x = letters[n - 1];
    } else {
      const int i = pos[up];
      x = i == 0 ? 0 : letters[i - 1];
    }
    if (x == n) return false;
  } while (x != 0);
  return true;
}

std::vector<int> reachable_cds_fixed_points(const Permutation& pi) {
  const StrategicPile pile = strategic_pile(pi);
  if (pile.empty()) return {1};
  std::vector<int> ks;
  for (int x : pile.sorted()) ks.push_back(x + 1);
  return ks;
}

int cds_duration(const Permutation& pi) {
  if (is_cds_fixed_point(pi)) return 0;
  const int n = pi.size();
  const int steps = (n + 1 - build_c(pi).cycle_count()) / 2;
  return is_cds_sortable(pi) ? steps : steps - 1;
}

std::vector<CdsContext> sort_by_cds(const Permutation& pi) {
  if (!is_cds_sortable(pi)) {
    throw Error(ErrorCode::NotSortable, pi.to_string() + " is not cds-sortable");
  }
  std::vector<CdsContext> seq;
  Letters cur(pi.letters().begin(), pi.letters().end());
  for (;;) {
    const auto ctxs = list_cds_contexts(cur);
    if (ctxs.empty()) break;
    seq.push_back(ctxs.front());
    cur = swap_blocks(cur, ctxs.front().cuts);
  }
  return seq;
}

namespace {

template <typename Keep>
CdsContext pile_move(const Permutation& pi, int x, Keep wanted, const char* what) {
  const StrategicPile pile = strategic_pile(pi);
  if (pile.size() <= 1) {
    throw Error(ErrorCode::PileTooSmall, "strategic pile of " + pi.to_string() + " is " +
                                             pile.to_string() + "; need more than one element");
  }
  if (!pile.contains(x)) {
    throw Error(ErrorCode::NotInPile, std::to_string(x) + " is not in " + pile.to_string());
  }
  for (const auto& ctx : list_cds_contexts(pi)) {
    const Permutation sigma(swap_blocks(pi.letters(), ctx.cuts));
    if (wanted(strategic_pile(sigma))) return ctx;
  }
  // Unreachable by the pile removal/retention theorems; kept as a hard error.
  throw Error(ErrorCode::NoMove, std::string("no ") + what + " move for " + std::to_string(x) +
                                     " in " + pi.to_string());
}

}  // namespace

CdsContext removal_move(const Permutation& pi, int x) {
  const StrategicPile before = strategic_pile(pi);
  return pile_move(
      pi, x,
      [&](const StrategicPile& after) {
        if (after.contains(x)) return false;
        for (int e : after.elements)
          if (!before.contains(e)) return false;
        return true;
      },
      "removal");
}

CdsContext retention_move(const Permutation& pi, int x) {
  return pile_move(pi, x, [&](const StrategicPile& after) { return after.contains(x); },
                   "retention");
}

CyclePermutation c_of_inverse(const Permutation& pi) {
  const int n = pi.size();
  std::vector<int> image(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) image[pi.at(i)] = i;  // pi(a_i) = i
  return build_c(pi).inverse().relabel([&](int v) { return image[v]; });
}

}  // namespace cdsort
