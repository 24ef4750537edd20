#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ethex {

/// Grounded propositions the ethical principles reason about.
enum class AtomKind {
  kBad,           // Bad(action): the action is intrinsically bad
  kCausesHarm,    // CausesHarm(action, fact): the action made a harm true
  kMeans,         // Means(fact): the fact feeds a causal link
  kGoalHarm,      // GoalHarm(fact): a harmful fact is part of the goal
  kDominated,     // Dominated: some alternative plan has higher utility
  kProportional,  // Proportional: final-state utility is positive
};

struct Atom {
  AtomKind kind = AtomKind::kBad;
  std::string action;
  std::string fact;

  static Atom bad(std::string action) { return {AtomKind::kBad, std::move(action), {}}; }
  static Atom causes_harm(std::string action, std::string fact) {
    return {AtomKind::kCausesHarm, std::move(action), std::move(fact)};
  }
  static Atom means(std::string fact) { return {AtomKind::kMeans, {}, std::move(fact)}; }
  static Atom goal_harm(std::string fact) {
    return {AtomKind::kGoalHarm, {}, std::move(fact)};
  }
  static Atom dominated() { return {AtomKind::kDominated, {}, {}}; }
  static Atom proportional() { return {AtomKind::kProportional, {}, {}}; }

  /// `Bad(lie_frank)`, `CausesHarm(treat, side_pain)`, `Means(f)`,
  /// `GoalHarm(f)`, `Dominated`, `Proportional`.
  std::string to_string() const;

  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  Atom atom;
  bool positive = true;

  Literal negated() const { return {atom, !positive}; }
  std::string to_string() const;  // `¬` prefix when negative

  // Atom order first; the positive literal precedes its negation.
  std::strong_ordering operator<=>(const Literal& other) const {
    if (auto c = atom <=> other.atom; c != 0) return c;
    return other.positive <=> positive;
  }
  bool operator==(const Literal&) const = default;
};

using Assignment = std::map<Atom, bool>;

/// Propositional formula in negation normal form: negation appears only on
/// literals. An empty conjunction is true and an empty disjunction false.
class Formula {
 public:
  enum class Kind { kTrue, kFalse, kLiteral, kAnd, kOr };

  static Formula truth() { return Formula(Kind::kTrue); }
  static Formula falsity() { return Formula(Kind::kFalse); }
  static Formula literal(Literal lit);
  static Formula literal(Atom atom, bool positive = true) {
    return literal(Literal{std::move(atom), positive});
  }
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);

  Kind kind() const { return kind_; }
  const Literal& lit() const { return literal_; }
  const std::vector<Formula>& children() const { return children_; }

  /// De Morgan dual; the result is again in NNF.
  Formula negated() const;

  /// Throws std::out_of_range when an atom has no assignment entry.
  bool evaluate(const Assignment& assignment) const;

  std::set<Atom> atoms() const;
  std::string to_string() const;

  bool operator==(const Formula&) const = default;

 private:
  explicit Formula(Kind kind) : kind_(kind) {}

  void collect_atoms(std::set<Atom>& out) const;

  Kind kind_;
  Literal literal_;
  std::vector<Formula> children_;
};

}  // namespace ethex
