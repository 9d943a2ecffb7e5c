#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "stablecentres/matfq.hpp"
#include "stablecentres/types.hpp"

namespace stc {

// Sorted, duplicate-free list of packed matrices.
struct GroupTable {
  Family family = Family::GL;
  unsigned q = 2;
  int n = 0;
  int N = 0;
  const Field* F = nullptr;  // entry field; GF(q^2) for unitary groups
  std::size_t words = 1;
  std::vector<std::uint64_t> elems;

  std::size_t size() const { return words ? elems.size() / words : 0; }
  const std::uint64_t* packed(std::size_t i) const { return elems.data() + i * words; }
  Mat element(std::size_t i) const { return unpack(*F, N, N, packed(i)); }
  std::optional<std::size_t> find(const std::uint64_t* key) const;
  std::optional<std::size_t> find(const Mat& m) const;
  void sort_unique();
};

inline std::optional<std::size_t> GroupTable::find(const std::uint64_t* key) const {
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const std::uint64_t* p = packed(mid);
    int c = 0;
    for (std::size_t w = words; w-- > 0;)
      if (p[w] != key[w]) {
        c = p[w] < key[w] ? -1 : 1;
        break;
      }
    if (c == 0) return mid;
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> GroupTable::find(const Mat& m) const {
  if (m.rows() != N || m.cols() != N) return std::nullopt;
  std::vector<std::uint64_t> k(words);
  pack_into(m, k.data());
  return find(k.data());
}

}  // namespace stc
