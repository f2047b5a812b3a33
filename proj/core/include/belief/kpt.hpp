#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "belief/prop.hpp"

namespace belief {

enum class KOp : std::uint8_t { Prop, Learn, Not, And, Or, Implies, Iff, Know, Believe, Next, Cond };

// Epistemic-temporal formulas: propositional facts about the environment,
// learn(φ) atoms, knowledge, belief, next and the plausibility conditional.
class KptFormula {
 public:
  KptFormula();  // the fact `true`
  static KptFormula fact(Formula f);
  static KptFormula learn(Formula f);
  static KptFormula negation(KptFormula f);
  static KptFormula binary(KOp op, KptFormula left, KptFormula right);
  static KptFormula know(KptFormula f);
  static KptFormula believe(KptFormula f);
  static KptFormula next(KptFormula f);
  static KptFormula cond(KptFormula given, KptFormula then);

  KOp op() const;
  const Formula& base() const;  // Prop and Learn
  const KptFormula& left() const;
  const KptFormula& right() const;

  // Longest chain of nested next operators.
  std::size_t next_depth() const;
  std::string str() const;
  bool operator==(const KptFormula& other) const;

 private:
  struct Node;
  explicit KptFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

KptFormula operator!(const KptFormula& f);
KptFormula operator&(const KptFormula& a, const KptFormula& b);
KptFormula operator|(const KptFormula& a, const KptFormula& b);
KptFormula implies(const KptFormula& a, const KptFormula& b);
KptFormula iff(const KptFormula& a, const KptFormula& b);

}  // namespace belief
