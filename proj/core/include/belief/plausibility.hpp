#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "belief/bits.hpp"
#include "belief/prop.hpp"
#include "belief/report.hpp"

namespace belief {

enum class Ordering { Less, Equal, Greater, Incomparable };
std::string_view to_string(Ordering o);

// Lower rank means more plausible; infinity marks implausible elements.
using Rank = std::uint32_t;
inline constexpr Rank kInfiniteRank = std::numeric_limits<Rank>::max();

// A plausibility measure over the subsets of a finite carrier {0..n-1},
// exposed only through set comparison.
class PlausibilityMeasure {
 public:
  enum class Kind { Ranked, Preferential, Custom };
  using CompareFn = std::function<Ordering(const Bits&, const Bits&)>;

  static PlausibilityMeasure ranked(std::vector<Rank> ranks);

  // Element i belongs to class key_of[i]; preferred[k] holds the classes that
  // are strictly preferred to class k. Elements of one class are mutually
  // incomparable and relate to others only through their class.
  static PlausibilityMeasure preferential(std::vector<std::uint32_t> key_of,
                                          std::vector<Bits> preferred);
  static PlausibilityMeasure custom(std::size_t carrier_size, CompareFn compare);

  Kind kind() const;
  std::size_t carrier_size() const { return size_; }

  Ordering compare(const Bits& a, const Bits& b) const;
  bool at_least(const Bits& a, const Bits& b) const;  // Pl(a) >= Pl(b)
  bool exceeds(const Bits& a, const Bits& b) const;   // Pl(a) > Pl(b)
  bool is_bottom(const Bits& a) const;

  // Element-level strict preference x < y (x more plausible).
  bool prefers(std::size_t x, std::size_t y) const;

  // Ranked only.
  Rank rank(std::size_t element) const;
  Rank rank_of(const Bits& a) const;

  // Elements of `a` not beaten by another element of `a`; for ranked measures
  // the finite minimum-rank elements. Custom measures throw.
  Bits most_plausible(const Bits& a) const;

  // The same measure seen on a sub-carrier: local element i is elements[i].
  PlausibilityMeasure restrict(const std::vector<std::size_t>& elements) const;

  // Summary of the class in which an element sits (for witnesses).
  std::uint32_t key(std::size_t element) const;

  // Preferential only: the same order on the classes themselves, one element
  // per class.
  PlausibilityMeasure key_measure() const;

 private:
  struct Ranked {
    std::vector<Rank> ranks;
  };
  struct Preferential {
    std::vector<std::uint32_t> key_of;
    std::vector<Bits> preferred;
    Bits keys_of(const Bits& elements) const;
  };
  struct Custom {
    CompareFn compare;
  };

  PlausibilityMeasure(std::size_t size, std::variant<Ranked, Preferential, Custom> rep)
      : size_(size), rep_(std::make_shared<const std::variant<Ranked, Preferential, Custom>>(std::move(rep))) {}
  void check(const Bits& a) const;
  bool preferential_at_least(const Preferential& p, const Bits& a, const Bits& b) const;

  std::size_t size_ = 0;
  std::shared_ptr<const std::variant<Ranked, Preferential, Custom>> rep_;
};

// Preferential measure of a strict order given by pairs (x, y) meaning x < y.
// The order is transitively closed; cycles are rejected.
PlausibilityMeasure from_preference(std::size_t carrier_size,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& order);

struct QualitativeBudget {
  std::size_t exhaustive_up_to = 8;  // carriers up to this size are enumerated
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
};

// First violation of the union axioms (disjoint-union and bottom-union), if any.
std::optional<std::string> qualitative_violation(const PlausibilityMeasure& m,
                                                 const QualitativeBudget& budget = {});
bool is_qualitative(const PlausibilityMeasure& m, const QualitativeBudget& budget = {});

// A plausibility measure over elements labelled with worlds.
struct PlausibilityStructure {
  Vocabulary vocab;
  PlausibilityMeasure measure;
  std::vector<World> labels;

  // Measure directly over all worlds of the vocabulary.
  static PlausibilityStructure over_worlds(Vocabulary vocab, PlausibilityMeasure measure);

  Bits elements_of(const Extension& e) const;
  bool conditional(const Extension& phi, const Extension& psi) const;
  bool conditional(const Formula& phi, const Formula& psi) const;
};

bool conditional_holds(const PlausibilityStructure& s, const Formula& phi, const Formula& psi);
bool believes(const PlausibilityStructure& s, const Formula& phi);

// LLE, RW, REF, AND, OR and CM over the given formulas.
Report check_klm_closure(const PlausibilityStructure& s, const std::vector<Formula>& formulas);

}  // namespace belief
