#pragma once

#include <initializer_list>
#include <vector>

#include "tfree/arrangement.hpp"

namespace tfree::test {

inline Arrangement arr(std::size_t dim, std::initializer_list<std::initializer_list<long>> normals) {
  std::vector<Hyperplane> hs;
  for (const auto& n : normals) {
    std::vector<Integer> v;
    for (long c : n) v.emplace_back(c);
    hs.push_back(Hyperplane::from_coefficients(std::span<const Integer>(v)));
  }
  return Arrangement(dim, std::move(hs));
}

inline std::vector<long> normal_of(const Arrangement& a, std::size_t i) {
  std::vector<long> out;
  for (const auto& c : a[i].normal()) out.push_back(c.get_si());
  return out;
}

// {x, y, x - y}
inline Arrangement a2_triple() { return arr(2, {{1, 0}, {0, 1}, {1, -1}}); }

}  // namespace tfree::test
