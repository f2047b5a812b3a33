#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "belief/prop.hpp"

namespace belief {

// Readable gtest output for world sets: the bits of each member.
inline void PrintTo(const Extension& e, std::ostream* os) {
  *os << "{";
  bool first = true;
  for (World w : e.worlds()) {
    *os << (first ? "" : ", ") << w.index;
    first = false;
  }
  *os << "}";
}

inline void PrintTo(const Formula& f, std::ostream* os) { *os << f.str(); }

}  // namespace belief

namespace belief::fixtures {

// Extension from world names such as "10".
inline Extension worlds(const Vocabulary& v, std::initializer_list<const char*> names) {
  Extension e(v.world_count());
  for (const char* n : names) e.insert(*v.parse_world(n));
  return e;
}

inline World world(const Vocabulary& v, const char* name) { return *v.parse_world(name); }

inline Formula f(const char* text) { return parse_formula(text); }

inline std::vector<Formula> fs(std::initializer_list<const char*> texts) {
  std::vector<Formula> out;
  for (const char* t : texts) out.push_back(parse_formula(t));
  return out;
}

}  // namespace belief::fixtures
