#include "ethex/formula.hpp"

#include <algorithm>

namespace ethex {

std::string Atom::to_string() const {
  switch (kind) {
    case AtomKind::kBad: return "Bad(" + action + ")";
    case AtomKind::kCausesHarm: return "CausesHarm(" + action + ", " + fact + ")";
    case AtomKind::kMeans: return "Means(" + fact + ")";
    case AtomKind::kGoalHarm: return "GoalHarm(" + fact + ")";
    case AtomKind::kDominated: return "Dominated";
    case AtomKind::kProportional: return "Proportional";
  }
  return "?";
}

std::string Literal::to_string() const {
  return (positive ? "" : "¬") + atom.to_string();
}

Formula Formula::literal(Literal lit) {
  Formula f(Kind::kLiteral);
  f.literal_ = std::move(lit);
  return f;
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) return truth();
  if (children.size() == 1) return std::move(children.front());
  Formula f(Kind::kAnd);
  f.children_ = std::move(children);
  return f;
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) return falsity();
  if (children.size() == 1) return std::move(children.front());
  Formula f(Kind::kOr);
  f.children_ = std::move(children);
  return f;
}

Formula Formula::negated() const {
  switch (kind_) {
    case Kind::kTrue: return falsity();
    case Kind::kFalse: return truth();
    case Kind::kLiteral: return literal(literal_.negated());
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> negs;
      negs.reserve(children_.size());
      for (const auto& c : children_) negs.push_back(c.negated());
      return kind_ == Kind::kAnd ? disjunction(std::move(negs))
                                 : conjunction(std::move(negs));
    }
  }
  return truth();
}

bool Formula::evaluate(const Assignment& assignment) const {
  switch (kind_) {
    case Kind::kTrue: return true;
    case Kind::kFalse: return false;
    case Kind::kLiteral:
      return assignment.at(literal_.atom) == literal_.positive;
    case Kind::kAnd:
      return std::all_of(children_.begin(), children_.end(),
                         [&](const Formula& c) { return c.evaluate(assignment); });
    case Kind::kOr:
      return std::any_of(children_.begin(), children_.end(),
                         [&](const Formula& c) { return c.evaluate(assignment); });
  }
  return false;
}

void Formula::collect_atoms(std::set<Atom>& out) const {
  if (kind_ == Kind::kLiteral) out.insert(literal_.atom);
  for (const auto& c : children_) c.collect_atoms(out);
}

std::set<Atom> Formula::atoms() const {
  std::set<Atom> out;
  collect_atoms(out);
  return out;
}

std::string Formula::to_string() const {
  switch (kind_) {
    case Kind::kTrue: return "⊤";
    case Kind::kFalse: return "⊥";
    case Kind::kLiteral: return literal_.to_string();
    case Kind::kAnd:
    case Kind::kOr: {
      std::string out = "(";
      const char* sep = kind_ == Kind::kAnd ? " & " : " | ";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i > 0) out += sep;
        out += children_[i].to_string();
      }
      return out + ")";
    }
  }
  return "";
}

}  // namespace ethex
