#include "belief/prop.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "belief/error.hpp"

namespace belief {

std::string Atom::str() const {
  return time ? name + "@" + std::to_string(*time) : name;
}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void check_names(const std::vector<std::string>& props) {
  if (props.empty()) throw PreconditionError("vocabulary must not be empty");
  std::set<std::string> seen;
  for (const auto& p : props) {
    if (!is_identifier(p)) throw PreconditionError("invalid proposition name '" + p + "'");
    if (p == "true" || p == "false")
      throw PreconditionError("proposition name '" + p + "' is reserved");
    if (!seen.insert(p).second) throw PreconditionError("duplicate proposition '" + p + "'");
  }
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> props) : props_(std::move(props)) {
  check_names(props_);
  if (props_.size() > kMaxAtoms)
    throw PreconditionError("vocabulary has more than 16 propositions");
}

Vocabulary Vocabulary::timestamped(std::vector<std::string> props, int horizon) {
  check_names(props);
  if (horizon < 0) throw PreconditionError("negative horizon");
  Vocabulary v;
  v.props_ = std::move(props);
  v.horizon_ = horizon;
  if (v.atom_count() > kMaxAtoms)
    throw PreconditionError("timestamped vocabulary has more than 16 atoms");
  return v;
}

std::size_t Vocabulary::atom_count() const {
  return horizon_ ? props_.size() * static_cast<std::size_t>(*horizon_ + 1) : props_.size();
}

std::optional<std::size_t> Vocabulary::position(const Atom& atom) const {
  auto it = std::find(props_.begin(), props_.end(), atom.name);
  if (it == props_.end()) return std::nullopt;
  auto p = static_cast<std::size_t>(it - props_.begin());
  if (!horizon_) {
    if (atom.time) return std::nullopt;
    return p;
  }
  if (!atom.time || *atom.time < 0 || *atom.time > *horizon_) return std::nullopt;
  return static_cast<std::size_t>(*atom.time) * props_.size() + p;
}

Atom Vocabulary::atom_at(std::size_t position) const {
  if (!horizon_) return Atom{props_.at(position), std::nullopt};
  return Atom{props_.at(position % props_.size()), static_cast<int>(position / props_.size())};
}

World Vocabulary::with(World w, std::size_t position, bool v) const {
  std::uint32_t bit = 1u << (atom_count() - 1 - position);
  return World{v ? (w.index | bit) : (w.index & ~bit)};
}

std::string Vocabulary::world_name(World w) const {
  std::string s;
  for (std::size_t i = 0; i < atom_count(); ++i) s += value(w, i) ? '1' : '0';
  return s;
}

std::optional<World> Vocabulary::parse_world(std::string_view bits) const {
  if (!bits.empty() && bits[0] == 'w') bits.remove_prefix(1);
  if (bits.size() != atom_count()) return std::nullopt;
  std::uint32_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') return std::nullopt;
    index = index << 1 | static_cast<std::uint32_t>(c == '1');
  }
  return World{index};
}

Extension Extension::all(std::size_t world_count) { return Extension(full_bits(world_count)); }

Extension Extension::of(std::size_t world_count, std::initializer_list<std::uint32_t> worlds) {
  Extension e(world_count);
  for (auto w : worlds) e.insert(World{w});
  return e;
}

std::vector<World> Extension::worlds() const {
  std::vector<World> out;
  for_each_bit(bits_, [&](std::size_t i) { out.push_back(World{static_cast<std::uint32_t>(i)}); });
  return out;
}

// ---------------------------------------------------------------------------
// Formula nodes

struct Formula::Node {
  Op op;
  belief::Atom atom;
  Formula left;
  Formula right;
};

Formula::Formula() : Formula(truth()) {}

Formula Formula::truth() {
  static const auto node = std::make_shared<const Node>(Node{Op::True, {}, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::falsity() {
  static const auto node = std::make_shared<const Node>(Node{Op::False, {}, Formula(nullptr), Formula(nullptr)});
  return Formula(node);
}

Formula Formula::atom(std::string name, std::optional<int> time) {
  return atom(belief::Atom{std::move(name), time});
}

Formula Formula::atom(belief::Atom a) {
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(a), Formula(nullptr), Formula(nullptr)}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Op::Not, {}, std::move(f), Formula(nullptr)}));
}

Formula Formula::binary(Op op, Formula left, Formula right) {
  if (op != Op::And && op != Op::Or && op != Op::Implies && op != Op::Iff)
    throw PreconditionError("not a binary connective");
  return Formula(std::make_shared<const Node>(Node{op, {}, std::move(left), std::move(right)}));
}

Op Formula::op() const { return node_->op; }
const Atom& Formula::atom() const { return node_->atom; }
const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (op() != other.op()) return false;
  switch (op()) {
    case Op::True:
    case Op::False:
      return true;
    case Op::Atom:
      return atom() == other.atom();
    case Op::Not:
      return left() == other.left();
    default:
      return left() == other.left() && right() == other.right();
  }
}

bool Formula::is_timestamped() const {
  switch (op()) {
    case Op::True:
    case Op::False:
      return false;
    case Op::Atom:
      return atom().time.has_value();
    case Op::Not:
      return left().is_timestamped();
    default:
      return left().is_timestamped() || right().is_timestamped();
  }
}

std::size_t Formula::depth() const {
  switch (op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
      return 1 + left().depth();
    default:
      return 1 + std::max(left().depth(), right().depth());
  }
}

std::vector<Atom> Formula::atoms() const {
  std::vector<Atom> out;
  auto walk = [&](const Formula& f, auto&& self) -> void {
    switch (f.op()) {
      case Op::True:
      case Op::False:
        return;
      case Op::Atom:
        if (std::find(out.begin(), out.end(), f.atom()) == out.end()) out.push_back(f.atom());
        return;
      case Op::Not:
        self(f.left(), self);
        return;
      default:
        self(f.left(), self);
        self(f.right(), self);
    }
  };
  walk(*this, walk);
  return out;
}

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Not: return 5;
    default: return 6;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::Iff: return " <-> ";
    case Op::Implies: return " -> ";
    case Op::Or: return " | ";
    default: return " & ";
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence(f.op());
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Atom: out += f.atom().str(); break;
    case Op::Not:
      out += '!';
      print(f.left(), 5, out);
      break;
    case Op::Implies:
      print(f.left(), prec + 1, out);
      out += symbol(f.op());
      print(f.right(), prec, out);
      break;
    default:
      print(f.left(), prec, out);
      out += symbol(f.op());
      print(f.right(), prec + 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Formula::str() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::binary(Op::And, a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::binary(Op::Or, a, b); }
Formula implies(const Formula& a, const Formula& b) { return Formula::binary(Op::Implies, a, b); }
Formula iff(const Formula& a, const Formula& b) { return Formula::binary(Op::Iff, a, b); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_iff();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("syntax error: " + what, pos_);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (accept("<->")) f = iff(f, parse_implies());
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (accept("->")) return implies(f, parse_implies());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = f | parse_and();
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = f & parse_unary();
    return f;
  }

  Formula parse_unary() {
    if (accept("!")) return !parse_unary();
    return parse_primary();
  }

  Formula parse_primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("(")) {
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    char c = text_[pos_];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
      fail("unexpected '" + std::string(1, c) + "'");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      std::size_t digits = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (digits == pos_) fail("expected time index after '@'");
      if (pos_ - digits > 6) fail("time index too large");
      if (name == "true" || name == "false") fail("constants cannot be timestamped");
      return Formula::atom(name, std::stoi(std::string(text_.substr(digits, pos_ - digits))));
    }
    if (name == "true") return Formula::truth();
    if (name == "false") return Formula::falsity();
    return Formula::atom(name);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  Formula f = parse_formula(text);
  check_atoms(f, vocab);
  return f;
}

void check_atoms(const Formula& f, const Vocabulary& vocab) {
  for (const auto& a : f.atoms())
    if (!vocab.position(a)) throw UnknownAtomError(a.str());
}

// ---------------------------------------------------------------------------
// Semantics

std::vector<World> enumerate_worlds(const Vocabulary& vocab) {
  std::vector<World> out(vocab.world_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = World{static_cast<std::uint32_t>(i)};
  return out;
}

bool evaluate(const Formula& f, const Vocabulary& vocab, World w) {
  switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: {
      auto p = vocab.position(f.atom());
      if (!p) throw UnknownAtomError(f.atom().str());
      return vocab.value(w, *p);
    }
    case Op::Not: return !evaluate(f.left(), vocab, w);
    case Op::And: return evaluate(f.left(), vocab, w) && evaluate(f.right(), vocab, w);
    case Op::Or: return evaluate(f.left(), vocab, w) || evaluate(f.right(), vocab, w);
    case Op::Implies: return !evaluate(f.left(), vocab, w) || evaluate(f.right(), vocab, w);
    case Op::Iff: return evaluate(f.left(), vocab, w) == evaluate(f.right(), vocab, w);
  }
  return false;
}

namespace {

Bits atom_bits(std::size_t position, const Vocabulary& vocab) {
  Bits b(vocab.world_count());
  std::size_t shift = vocab.atom_count() - 1 - position;
  for (std::size_t i = 0; i < b.size(); ++i)
    if ((i >> shift) & 1u) b.set(i);
  return b;
}

Bits extension_bits(const Formula& f, const Vocabulary& vocab) {
  switch (f.op()) {
    case Op::True: return full_bits(vocab.world_count());
    case Op::False: return Bits(vocab.world_count());
    case Op::Atom: {
      auto p = vocab.position(f.atom());
      if (!p) throw UnknownAtomError(f.atom().str());
      return atom_bits(*p, vocab);
    }
    case Op::Not: return ~extension_bits(f.left(), vocab);
    case Op::And: return extension_bits(f.left(), vocab) & extension_bits(f.right(), vocab);
    case Op::Or: return extension_bits(f.left(), vocab) | extension_bits(f.right(), vocab);
    case Op::Implies: return ~extension_bits(f.left(), vocab) | extension_bits(f.right(), vocab);
    case Op::Iff: {
      Bits a = extension_bits(f.left(), vocab);
      Bits b = extension_bits(f.right(), vocab);
      return ~(a ^ b);
    }
  }
  return Bits(vocab.world_count());
}

}  // namespace

Extension extension(const Formula& f, const Vocabulary& vocab) {
  return Extension(extension_bits(f, vocab));
}

bool entails(const Extension& gamma, const Formula& f, const Vocabulary& vocab) {
  return gamma.subset_of(extension(f, vocab));
}

namespace {

Formula literal(const Vocabulary& vocab, std::size_t position, bool value) {
  Formula a = Formula::atom(vocab.atom_at(position));
  return value ? a : !a;
}

Formula fold(Op op, const std::vector<Formula>& parts) {
  Formula f = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) f = Formula::binary(op, f, parts[i]);
  return f;
}

}  // namespace

Formula characteristic_formula(World w, const Vocabulary& vocab) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < vocab.atom_count(); ++i) lits.push_back(literal(vocab, i, vocab.value(w, i)));
  return fold(Op::And, lits);
}

Formula formula_of_extension(const Extension& e, const Vocabulary& vocab) {
  if (e.empty()) return Formula::falsity();
  if (e.size() == vocab.world_count()) return Formula::truth();
  std::vector<Formula> terms;
  for (World w : e.worlds()) terms.push_back(characteristic_formula(w, vocab));
  return fold(Op::Or, terms);
}

Formula alternate_formula_of_extension(const Extension& e, const Vocabulary& vocab) {
  if (e.size() == vocab.world_count()) {
    Formula a = Formula::atom(vocab.atom_at(0));
    return a | !a;
  }
  std::vector<Formula> clauses;
  for (World w : (~e).worlds()) {
    std::vector<Formula> lits;
    for (std::size_t i = 0; i < vocab.atom_count(); ++i)
      lits.push_back(literal(vocab, i, !vocab.value(w, i)));
    clauses.push_back(fold(Op::Or, lits));
  }
  return fold(Op::And, clauses);
}

Formula timestamp(const Formula& f, int m) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
      if (f.atom().time) throw PreconditionError("formula is already timestamped: " + f.str());
      return Formula::atom(f.atom().name, m);
    case Op::Not:
      return !timestamp(f.left(), m);
    default:
      return Formula::binary(f.op(), timestamp(f.left(), m), timestamp(f.right(), m));
  }
}

std::vector<Formula> formulas_up_to_depth(const Vocabulary& vocab, std::size_t depth) {
  if (vocab.is_timestamped()) throw PreconditionError("formula generation needs a plain vocabulary");
  std::vector<Formula> all{Formula::truth(), Formula::falsity()};
  for (const auto& p : vocab.props()) all.push_back(Formula::atom(p));
  std::size_t previous_end = 0;  // formulas before this index have smaller depth
  for (std::size_t d = 1; d <= depth; ++d) {
    std::size_t end = all.size();
    std::vector<Formula> next;
    for (std::size_t i = previous_end; i < end; ++i) next.push_back(!all[i]);
    for (Op op : {Op::And, Op::Or, Op::Implies, Op::Iff})
      for (std::size_t i = 0; i < end; ++i)
        for (std::size_t j = 0; j < end; ++j)
          if (i >= previous_end || j >= previous_end) next.push_back(Formula::binary(op, all[i], all[j]));
    previous_end = end;
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

std::vector<Extension> all_subsets(const Extension& universe) {
  std::vector<World> ws = universe.worlds();
  if (ws.size() > 20) throw BudgetExceeded("too many worlds to enumerate all subsets");
  std::vector<Extension> out;
  out.reserve(std::size_t{1} << ws.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ws.size()); ++mask) {
    Extension e(universe.universe());
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (mask >> i & 1u) e.insert(ws[i]);
    out.push_back(std::move(e));
  }
  return out;
}

std::string describe(const Extension& e, const Vocabulary& vocab) {
  constexpr std::size_t kShown = 8;
  const std::size_t total = e.size();
  std::string s = "{";
  std::size_t listed = 0;
  for (World w : e.worlds()) {
    if (listed > 0) s += ", ";
    if (total > 2 * kShown && listed == kShown) {
      s += "... " + std::to_string(total) + " worlds";
      break;
    }
    s += vocab.world_name(w);
    ++listed;
  }
  return s + "}";
}

}  // namespace belief
