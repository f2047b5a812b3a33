#include "belief/kpt.hpp"

#include <algorithm>

#include "belief/error.hpp"

namespace belief {

struct KptFormula::Node {
  KOp op;
  Formula base;
  KptFormula left;
  KptFormula right;
};

KptFormula::KptFormula() : KptFormula(fact(Formula::truth())) {}

KptFormula KptFormula::fact(Formula f) {
  return KptFormula(std::make_shared<const Node>(Node{KOp::Prop, std::move(f), KptFormula(nullptr), KptFormula(nullptr)}));
}

KptFormula KptFormula::learn(Formula f) {
  return KptFormula(std::make_shared<const Node>(Node{KOp::Learn, std::move(f), KptFormula(nullptr), KptFormula(nullptr)}));
}

KptFormula KptFormula::negation(KptFormula f) {
  return KptFormula(std::make_shared<const Node>(Node{KOp::Not, Formula(), std::move(f), KptFormula(nullptr)}));
}

KptFormula KptFormula::binary(KOp op, KptFormula left, KptFormula right) {
  if (op != KOp::And && op != KOp::Or && op != KOp::Implies && op != KOp::Iff && op != KOp::Cond)
    throw PreconditionError("not a binary connective");
  return KptFormula(std::make_shared<const Node>(Node{op, Formula(), std::move(left), std::move(right)}));
}

KptFormula KptFormula::know(KptFormula f) {
  return KptFormula(std::make_shared<const Node>(Node{KOp::Know, Formula(), std::move(f), KptFormula(nullptr)}));
}

KptFormula KptFormula::believe(KptFormula f) {
  return KptFormula(std::make_shared<const Node>(Node{KOp::Believe, Formula(), std::move(f), KptFormula(nullptr)}));
}

KptFormula KptFormula::next(KptFormula f) {
  return KptFormula(std::make_shared<const Node>(Node{KOp::Next, Formula(), std::move(f), KptFormula(nullptr)}));
}

KptFormula KptFormula::cond(KptFormula given, KptFormula then) {
  return binary(KOp::Cond, std::move(given), std::move(then));
}

KOp KptFormula::op() const { return node_->op; }
const Formula& KptFormula::base() const { return node_->base; }
const KptFormula& KptFormula::left() const { return node_->left; }
const KptFormula& KptFormula::right() const { return node_->right; }

std::size_t KptFormula::next_depth() const {
  switch (op()) {
    case KOp::Prop:
    case KOp::Learn:
      return 0;
    case KOp::Next:
      return 1 + left().next_depth();
    case KOp::Not:
    case KOp::Know:
    case KOp::Believe:
      return left().next_depth();
    default:
      return std::max(left().next_depth(), right().next_depth());
  }
}

std::string KptFormula::str() const {
  switch (op()) {
    case KOp::Prop: {
      Op o = base().op();
      bool simple = o == Op::True || o == Op::False || o == Op::Atom || o == Op::Not;
      return simple ? base().str() : "(" + base().str() + ")";
    }
    case KOp::Learn: return "learn(" + base().str() + ")";
    case KOp::Not: return "!" + left().str();
    case KOp::Know: return "K" + left().str();
    case KOp::Believe: return "B" + left().str();
    case KOp::Next: return "X" + left().str();
    case KOp::And: return "(" + left().str() + " & " + right().str() + ")";
    case KOp::Or: return "(" + left().str() + " | " + right().str() + ")";
    case KOp::Implies: return "(" + left().str() + " -> " + right().str() + ")";
    case KOp::Iff: return "(" + left().str() + " <-> " + right().str() + ")";
    case KOp::Cond: return "(" + left().str() + " ~> " + right().str() + ")";
  }
  return "?";
}

bool KptFormula::operator==(const KptFormula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_ || op() != other.op()) return false;
  switch (op()) {
    case KOp::Prop:
    case KOp::Learn:
      return base() == other.base();
    case KOp::Not:
    case KOp::Know:
    case KOp::Believe:
    case KOp::Next:
      return left() == other.left();
    default:
      return left() == other.left() && right() == other.right();
  }
}

KptFormula operator!(const KptFormula& f) { return KptFormula::negation(f); }
KptFormula operator&(const KptFormula& a, const KptFormula& b) { return KptFormula::binary(KOp::And, a, b); }
KptFormula operator|(const KptFormula& a, const KptFormula& b) { return KptFormula::binary(KOp::Or, a, b); }
KptFormula implies(const KptFormula& a, const KptFormula& b) { return KptFormula::binary(KOp::Implies, a, b); }
KptFormula iff(const KptFormula& a, const KptFormula& b) { return KptFormula::binary(KOp::Iff, a, b); }

}  // namespace belief
