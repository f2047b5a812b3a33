#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace belief {

// Subsets of a finite carrier (worlds, runs, points at one time).
using Bits = boost::dynamic_bitset<std::uint64_t>;

template <class F>
void for_each_bit(const Bits& b, F&& f) {
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) f(i);
}

inline Bits make_bits(std::size_t size, std::initializer_list<std::size_t> members) {
  Bits b(size);
  for (auto m : members) b.set(m);
  return b;
}

inline Bits full_bits(std::size_t size) {
  Bits b(size);
  b.set();
  return b;
}

inline std::vector<std::size_t> members(const Bits& b) {
  std::vector<std::size_t> out;
  out.reserve(b.count());
  for_each_bit(b, [&](std::size_t i) { out.push_back(i); });
  return out;
}

// Bits over `size` elements with the i-th listed element set iff bit i of mask.
inline Bits subset_of(const std::vector<std::size_t>& elements, std::uint64_t mask,
                      std::size_t size) {
  Bits b(size);
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (mask >> i & 1u) b.set(elements[i]);
  return b;
}

}  // namespace belief
