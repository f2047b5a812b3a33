#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "belief/bits.hpp"

namespace belief {

// A proposition, optionally tagged with the time it talks about (p@2).
struct Atom {
  std::string name;
  std::optional<int> time;

  std::string str() const;
  auto operator<=>(const Atom&) const = default;
};

// A truth assignment, stored as its position in the canonical enumeration:
// the first proposition is the most significant bit.
struct World {
  std::uint32_t index = 0;
  auto operator<=>(const World&) const = default;
};

// Ordered propositions. A timestamped vocabulary holds p@0..p@H for every
// base proposition p, laid out time-major.
class Vocabulary {
 public:
  static constexpr std::size_t kMaxAtoms = 16;

  explicit Vocabulary(std::vector<std::string> props);
  static Vocabulary timestamped(std::vector<std::string> props, int horizon);

  const std::vector<std::string>& props() const { return props_; }
  std::optional<int> horizon() const { return horizon_; }
  bool is_timestamped() const { return horizon_.has_value(); }

  std::size_t atom_count() const;
  std::size_t world_count() const { return std::size_t{1} << atom_count(); }

  // Bit position of an atom, or nullopt if it is not part of the vocabulary.
  std::optional<std::size_t> position(const Atom& atom) const;
  Atom atom_at(std::size_t position) const;

  bool value(World w, std::size_t position) const {
    return (w.index >> (atom_count() - 1 - position)) & 1u;
  }
  World with(World w, std::size_t position, bool v) const;

  // Bit string in vocabulary order, e.g. "10" for p=1,q=0.
  std::string world_name(World w) const;
  std::optional<World> parse_world(std::string_view bits) const;

  bool operator==(const Vocabulary&) const = default;

 private:
  Vocabulary() = default;
  std::vector<std::string> props_;
  std::optional<int> horizon_;
};

// Set of worlds over a fixed vocabulary: a formula's denotation or the model
// set of a belief set.
class Extension {
 public:
  Extension() = default;
  explicit Extension(std::size_t world_count) : bits_(world_count) {}
  explicit Extension(Bits bits) : bits_(std::move(bits)) {}
  static Extension all(std::size_t world_count);
  static Extension of(std::size_t world_count, std::initializer_list<std::uint32_t> worlds);

  std::size_t universe() const { return bits_.size(); }
  bool contains(World w) const { return bits_.test(w.index); }
  void insert(World w) { bits_.set(w.index); }
  void erase(World w) { bits_.reset(w.index); }
  bool empty() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  bool subset_of(const Extension& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const Extension& other) const { return bits_.intersects(other.bits_); }
  std::vector<World> worlds() const;
  const Bits& bits() const { return bits_; }

  Extension operator&(const Extension& o) const { return Extension(bits_ & o.bits_); }
  Extension operator|(const Extension& o) const { return Extension(bits_ | o.bits_); }
  Extension operator-(const Extension& o) const { return Extension(bits_ - o.bits_); }
  Extension operator~() const { return Extension(~bits_); }

  bool operator==(const Extension&) const = default;
  bool operator<(const Extension& o) const { return bits_ < o.bits_; }

 private:
  Bits bits_;
};

enum class Op : std::uint8_t { True, False, Atom, Not, And, Or, Implies, Iff };

// Immutable propositional formula with structural equality.
class Formula {
 public:
  Formula();  // true
  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string name, std::optional<int> time = std::nullopt);
  static Formula atom(Atom a);
  static Formula negation(Formula f);
  static Formula binary(Op op, Formula left, Formula right);

  Op op() const;
  const Atom& atom() const;
  const Formula& left() const;   // the operand of a negation
  const Formula& right() const;

  bool is_timestamped() const;   // contains a timestamped atom
  std::size_t depth() const;     // connective nesting; atoms and constants are 0
  std::vector<Atom> atoms() const;

  // Canonical text with minimal parentheses; parse_formula(str()) == *this.
  std::string str() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula implies(const Formula& a, const Formula& b);
Formula iff(const Formula& a, const Formula& b);

// Grammar: ! > & > | > -> > <->, with -> right-associative and the rest left.
Formula parse_formula(std::string_view text);
Formula parse_formula(std::string_view text, const Vocabulary& vocab);

// Throws UnknownAtomError for the first atom outside the vocabulary.
void check_atoms(const Formula& f, const Vocabulary& vocab);

std::vector<World> enumerate_worlds(const Vocabulary& vocab);

// Recursive evaluation at one world.
bool evaluate(const Formula& f, const Vocabulary& vocab, World w);

Extension extension(const Formula& f, const Vocabulary& vocab);

bool entails(const Extension& gamma, const Formula& f, const Vocabulary& vocab);

// Conjunction of one literal per atom, in vocabulary order.
Formula characteristic_formula(World w, const Vocabulary& vocab);

// Full DNF with worlds in enumeration order; false for the empty set and true
// for the full set.
Formula formula_of_extension(const Extension& e, const Vocabulary& vocab);

// A second formula with the same extension but a different shape (a CNF, or a
// tautology for the full set).
Formula alternate_formula_of_extension(const Extension& e, const Vocabulary& vocab);

// Every atom p becomes p@m.
Formula timestamp(const Formula& f, int m);

// All formulas with connective nesting at most `depth`, built from the
// constants and the plain atoms of the vocabulary.
std::vector<Formula> formulas_up_to_depth(const Vocabulary& vocab, std::size_t depth);

// All subsets of the worlds in `universe`, in increasing mask order.
std::vector<Extension> all_subsets(const Extension& universe);

// {10, 00}; large sets list their first worlds and a count.
std::string describe(const Extension& e, const Vocabulary& vocab);

}  // namespace belief
