#include "cdsort/cycle.hpp"

#include "cdsort/error.hpp"

namespace cdsort {

CyclePermutation::CyclePermutation(std::vector<int> map) : map_(std::move(map)) {
  std::vector<bool> hit(map_.size(), false);
  for (int v : map_) {
    if (v < 0 || v >= size() || hit[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::NotABijection, "cycle permutation map is not a bijection");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
}

CyclePermutation CyclePermutation::identity(int size) {
  std::vector<int> m(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) m[i] = i;
  return CyclePermutation(std::move(m));
}

CyclePermutation CyclePermutation::from_cycles(int size,
                                               const std::vector<std::vector<int>>& cycles) {
  CyclePermutation result = identity(size);
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    std::vector<int> m = identity(size).map_;
    const auto& c = *it;
    for (std::size_t i = 0; i < c.size(); ++i) m.at(static_cast<std::size_t>(c[i])) = c[(i + 1) % c.size()];
    result = CyclePermutation(std::move(m)) * result;
  }
  return result;
}

std::vector<std::vector<int>> CyclePermutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(map_.size(), false);
  // Scanning x upward makes x the minimum of each new cycle.
  for (int x = 0; x < size(); ++x) {
    if (seen[x]) continue;
    std::vector<int> c;
    for (int y = x; !seen[y]; y = map_[y]) {
      seen[y] = true;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

int CyclePermutation::cycle_count() const {
  int count = 0;
  std::vector<bool> seen(map_.size(), false);
  for (int x = 0; x < size(); ++x) {
    if (seen[x]) continue;
    ++count;
    for (int y = x; !seen[y]; y = map_[y]) seen[y] = true;
  }
  return count;
}

bool CyclePermutation::same_cycle(int a, int b) const {
  int y = a;
  do {
    if (y == b) return true;
    y = map_.at(static_cast<std::size_t>(y));
  } while (y != a);
  return false;
}

std::vector<int> CyclePermutation::orbit(int x) const {
  std::vector<int> out;
  int y = x;
  do {
    out.push_back(y);
    y = map_.at(static_cast<std::size_t>(y));
  } while (y != x);
  return out;
}

CyclePermutation CyclePermutation::inverse() const {
  std::vector<int> m(map_.size());
  for (int x = 0; x < size(); ++x) m[map_[x]] = x;
  return CyclePermutation(std::move(m));
}

CyclePermutation CyclePermutation::relabel(const std::function<int(int)>& relabel) const {
  std::vector<int> m(map_.size());
  for (int x = 0; x < size(); ++x) m.at(static_cast<std::size_t>(relabel(x))) = relabel(map_[x]);
  return CyclePermutation(std::move(m));
}

std::string CyclePermutation::to_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(c[i]);
    }
    s += ')';
  }
  return s;
}

CyclePermutation operator*(const CyclePermutation& lhs, const CyclePermutation& rhs) {
  if (lhs.size() != rhs.size()) throw Error(ErrorCode::SizeMismatch, "cycle permutation sizes differ");
  std::vector<int> m(static_cast<std::size_t>(lhs.size()));
  for (int x = 0; x < lhs.size(); ++x) m[x] = lhs(rhs(x));
  return CyclePermutation(std::move(m));
}

}  // namespace cdsort
