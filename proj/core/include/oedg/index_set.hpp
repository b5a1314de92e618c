#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace oedg {

using Index = std::size_t;

/// Sorted, duplicate-free list of variable indices.
using IndexSet = std::vector<Index>;

inline IndexSet make_set(std::vector<Index> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

inline IndexSet make_set(std::initializer_list<Index> values) { return make_set(std::vector<Index>(values)); }

/// {0, 1, ..., n-1}
inline IndexSet full_set(std::size_t n) {
  IndexSet all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return all;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(const IndexSet& a, const IndexSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

inline bool contains(const IndexSet& set, Index value) { return std::binary_search(set.begin(), set.end(), value); }

inline bool disjoint(const IndexSet& a, const IndexSet& b) { return intersection_size(a, b) == 0; }

inline bool is_subset(const IndexSet& sub, const IndexSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace oedg
