#pragma once

// Exhaustive counts over S_n and S_n^+-: sortable permutations, cdr targets,
// fixed points. The cds sweep has an OpenMP kernel and a serial reference.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cdsort/cdr.hpp"

namespace cdsort {

struct CountReport {
  int n = 0;
  std::uint64_t count = 0;
  double elapsed_ms = 0.0;
  std::string method;  // "exhaustive" | "exhaustive-parallel" | "formula"
};

inline constexpr int kMaxCdsSweep = 11;
inline constexpr int kMaxCdrSweep = 6;
inline constexpr int kMaxFixedPointSweep = 8;

// OpenMP sweep partitioned by the first two letters. Throws Error{TooLarge}.
CountReport count_cds_sortable(int n);
// Single-threaded lexicographic sweep; the reference the parallel kernel is
// tested against.
CountReport count_cds_sortable_serial(int n);

// count_cds_sortable(2k+1) == (k+1)(2k)!. Throws Error{TooLarge}.
bool holmes_plummer_check(int k);
std::uint64_t holmes_plummer_value(int k);

// Members of S_n^+- that reach the target by cdr. Throws Error{TooLarge}.
CountReport count_cdr(int n, CdrTarget target);

enum class FixedPointOp { Cds, Cdr };
std::string_view to_string(FixedPointOp op);

// Exhaustive count of fixed points of op over S_n (or S_n^+- when signed).
// Throws Error{TooLarge}; Error{BadRequest} for unsigned cdr.
CountReport count_fixed_points(int n, FixedPointOp op, bool is_signed);
// Signed cds fixed points whose letters share one sign.
CountReport count_uniform_cds_fixed_points(int n);

std::string format_table(const std::vector<CountReport>& rows);

}  // namespace cdsort
