#include "cdsort/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>

#include "cdsort/cds.hpp"
#include "cdsort/error.hpp"

namespace cdsort {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_range(int n, int max, const char* what) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "n must be positive");
  if (n > max) {
    throw Error(ErrorCode::TooLarge, std::string(what) + " sweeps are bounded at n <= " +
                                         std::to_string(max));
  }
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Calls visit(letters) for every signed permutation of size n.
template <typename Visit>
void for_each_signed(int n, Visit visit) {
  Letters base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 1);
  Letters l(base.size());
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      for (int i = 0; i < n; ++i) l[i] = (mask >> i & 1u) ? -base[i] : base[i];
      visit(std::span<const int>(l));
    }
  } while (std::next_permutation(base.begin(), base.end()));
}

}  // namespace

CountReport count_cds_sortable_serial(int n) {
  require_range(n, kMaxCdsSweep, "cds");
  const auto t0 = Clock::now();
  Letters l(static_cast<std::size_t>(n));
  std::iota(l.begin(), l.end(), 1);
  std::uint64_t count = 0;
  do {
    if (is_cds_sortable(l)) ++count;
  } while (std::next_permutation(l.begin(), l.end()));
  return {n, count, ms_since(t0), "exhaustive"};
}

CountReport count_cds_sortable(int n) {
  require_range(n, kMaxCdsSweep, "cds");
  if (n < 3) return count_cds_sortable_serial(n);
  const auto t0 = Clock::now();
  // Chunk c fixes a_1 = c / (n-1) + 1 and a_2 = the (c % (n-1))-th remaining
  // letter; the rest is swept lexicographically inside the chunk.
  const int chunks = n * (n - 1);
  std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : count)
  for (int c = 0; c < chunks; ++c) {
    Letters l;
    l.reserve(static_cast<std::size_t>(n));
    const int first = c / (n - 1) + 1;
    l.push_back(first);
    Letters rest;
    for (int v = 1; v <= n; ++v)
      if (v != first) rest.push_back(v);
    const int second = rest[static_cast<std::size_t>(c % (n - 1))];
    l.push_back(second);
    for (int v : rest)
      if (v != second) l.push_back(v);
    std::uint64_t local = 0;
    do {
      if (is_cds_sortable(l)) ++local;
    } while (std::next_permutation(l.begin() + 2, l.end()));
    count += local;
  }
  return {n, count, ms_since(t0), "exhaustive-parallel"};
}

std::uint64_t holmes_plummer_value(int k) {
  return static_cast<std::uint64_t>(k + 1) * factorial(2 * k);
}

bool holmes_plummer_check(int k) {
  if (k < 1) throw Error(ErrorCode::OutOfRange, "k must be positive");
  return count_cds_sortable(2 * k + 1).count == holmes_plummer_value(k);
}

CountReport count_cdr(int n, CdrTarget target) {
  require_range(n, kMaxCdrSweep, "cdr");
  const auto t0 = Clock::now();
  auto& table = CdrReachability::shared(n, target);
  std::uint64_t count = 0;
  for_each_signed(n, [&](std::span<const int> l) {
    if (table.can_reach(l)) ++count;
  });
  return {n, count, ms_since(t0), "exhaustive"};
}

std::string_view to_string(FixedPointOp op) { return op == FixedPointOp::Cds ? "cds" : "cdr"; }

CountReport count_fixed_points(int n, FixedPointOp op, bool is_signed) {
  require_range(n, kMaxFixedPointSweep, "fixed-point");
  const auto t0 = Clock::now();
  std::uint64_t count = 0;
  if (!is_signed) {
    if (op == FixedPointOp::Cdr) {
      throw Error(ErrorCode::BadRequest, "cdr acts on signed permutations only");
    }
    Letters l(static_cast<std::size_t>(n));
    std::iota(l.begin(), l.end(), 1);
    do {
      if (is_cds_fixed_point(l)) ++count;
    } while (std::next_permutation(l.begin(), l.end()));
  } else {
    for_each_signed(n, [&](std::span<const int> l) {
      if (op == FixedPointOp::Cds ? is_cds_fixed_point(l) : is_cdr_fixed_point(l)) ++count;
    });
  }
  return {n, count, ms_since(t0), "exhaustive"};
}

CountReport count_uniform_cds_fixed_points(int n) {
  require_range(n, kMaxFixedPointSweep, "fixed-point");
  const auto t0 = Clock::now();
  std::uint64_t count = 0;
  for_each_signed(n, [&](std::span<const int> l) {
    if (is_cdr_fixed_point(l) && is_cds_fixed_point(l)) ++count;
  });
  return {n, count, ms_since(t0), "exhaustive"};
}

std::string format_table(const std::vector<CountReport>& rows) {
  std::string out = "   n                count   elapsed_ms  method\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%4d %20llu %12.2f  %s\n", r.n,
                  static_cast<unsigned long long>(r.count), r.elapsed_ms, r.method.c_str());
    out += buf;
  }
  return out;
}

}  // namespace cdsort
