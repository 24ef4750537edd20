#include "ethex/reasons.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>

#include "ethex/error.hpp"

namespace ethex {
namespace {

std::string join_literals(const std::vector<Literal>& literals,
                          const char* separator) {
  std::string out = "(";
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i > 0) out += separator;
    out += literals[i].to_string();
  }
  return out + ")";
}

// Sorts and dedups; returns false when the set holds an atom in both
// polarities.
bool canonicalize(std::vector<Literal>& literals) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i) {
    if (literals[i].atom == literals[i - 1].atom) return false;
  }
  return true;
}

template <typename T>
bool canonical_less(const T& a, const T& b) {
  if (a.literals.size() != b.literals.size()) {
    return a.literals.size() < b.literals.size();
  }
  return a.literals < b.literals;
}

[[noreturn]] void too_many_clauses() {
  throw Error(ErrorCode::kSizeExceeded,
              "more than " + std::to_string(kMaxClauses) + " clauses");
}

std::vector<Clause> cnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::kTrue: return {};
    case Formula::Kind::kFalse: return {Clause{}};
    case Formula::Kind::kLiteral: return {Clause{{f.lit()}}};
    case Formula::Kind::kAnd: {
      std::vector<Clause> out;
      for (const auto& child : f.children()) {
        auto part = cnf(child);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > kMaxClauses) too_many_clauses();
      }
      return out;
    }
    case Formula::Kind::kOr: {
      std::vector<Clause> acc = {Clause{}};
      for (const auto& child : f.children()) {
        auto part = cnf(child);
        std::vector<Clause> next;
        for (const auto& left : acc) {
          for (const auto& right : part) {
            Clause merged = left;
            merged.literals.insert(merged.literals.end(), right.literals.begin(),
                                   right.literals.end());
            if (!canonicalize(merged.literals)) continue;
            next.push_back(std::move(merged));
            if (next.size() > kMaxClauses) too_many_clauses();
          }
        }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

// Clause over at most 64 indexed atoms.
struct Bits {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;

  bool subsumes(const Bits& other) const {
    return (pos & ~other.pos) == 0 && (neg & ~other.neg) == 0;
  }
  bool operator==(const Bits&) const = default;
};

class Saturation {
 public:
  void add(const Bits& c) {
    for (const auto& s : live_) {
      if (s.subsumes(c)) return;
    }
    std::erase_if(live_, [&](const Bits& s) { return c.subsumes(s); });
    live_.push_back(c);
    agenda_.push_back(c);
    if (live_.size() > kMaxClauses) too_many_clauses();
  }

  std::vector<Bits> run() {
    while (!agenda_.empty()) {
      Bits c = agenda_.front();
      agenda_.pop_front();
      if (std::find(live_.begin(), live_.end(), c) == live_.end()) continue;
      const std::vector<Bits> snapshot = live_;
      for (const auto& s : snapshot) {
        std::uint64_t clash = (c.pos & s.neg) | (c.neg & s.pos);
        // Two or more clashing atoms give a tautological resolvent.
        if (std::popcount(clash) != 1) continue;
        add({(c.pos | s.pos) & ~clash, (c.neg | s.neg) & ~clash});
      }
    }
    return live_;
  }

 private:
  std::vector<Bits> live_;
  std::deque<Bits> agenda_;
};

}  // namespace

std::string Clause::to_string() const { return join_literals(literals, " | "); }
std::string Term::to_string() const { return join_literals(literals, " & "); }

std::vector<Clause> to_clausal_form(const Formula& formula) {
  std::vector<Clause> out = cnf(formula);
  for (auto& c : out) canonicalize(c.literals);
  return out;
}

std::vector<Clause> prime_implicates(const std::vector<Clause>& clauses) {
  std::set<Atom> atom_set;
  for (const auto& c : clauses) {
    for (const auto& l : c.literals) atom_set.insert(l.atom);
  }
  if (atom_set.size() > kMaxAtoms) {
    throw Error(ErrorCode::kSizeExceeded,
                "more than " + std::to_string(kMaxAtoms) + " atoms");
  }
  const std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
  auto index_of = [&](const Atom& a) {
    return static_cast<std::size_t>(
        std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin());
  };

  Saturation saturation;
  for (const auto& c : clauses) {
    Bits bits;
    for (const auto& l : c.literals) {
      (l.positive ? bits.pos : bits.neg) |= std::uint64_t{1} << index_of(l.atom);
    }
    if (bits.pos & bits.neg) continue;
    saturation.add(bits);
  }

  std::vector<Clause> out;
  for (const auto& bits : saturation.run()) {
    Clause c;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      std::uint64_t bit = std::uint64_t{1} << i;
      if (bits.pos & bit) c.literals.push_back({atoms[i], true});
      if (bits.neg & bit) c.literals.push_back({atoms[i], false});
    }
    canonicalize(c.literals);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), canonical_less<Clause>);
  return out;
}

std::vector<Term> prime_implicants(const Formula& formula) {
  std::vector<Term> out;
  for (const auto& clause :
       prime_implicates(to_clausal_form(formula.negated()))) {
    Term t;
    for (const auto& l : clause.literals) t.literals.push_back(l.negated());
    canonicalize(t.literals);
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), canonical_less<Term>);
  return out;
}

Formula reason_target(const Verdict& verdict) {
  return verdict.permissible ? verdict.formula.formula
                             : verdict.formula.formula.negated();
}

ReasonSet reasons_for(const Verdict& verdict) {
  const Formula target = reason_target(verdict);
  const Assignment& assignment = verdict.formula.assignment;
  auto holds = [&](const Literal& l) {
    return assignment.at(l.atom) == l.positive;
  };

  ReasonSet out;
  for (auto& term : prime_implicants(target)) {
    if (std::all_of(term.literals.begin(), term.literals.end(), holds)) {
      out.sufficient.push_back(std::move(term));
    }
  }

  std::vector<Clause> restricted;
  for (const auto& clause : prime_implicates(to_clausal_form(target))) {
    Clause c;
    std::copy_if(clause.literals.begin(), clause.literals.end(),
                 std::back_inserter(c.literals), holds);
    restricted.push_back(std::move(c));
  }
  std::sort(restricted.begin(), restricted.end(), canonical_less<Clause>);
  restricted.erase(std::unique(restricted.begin(), restricted.end()),
                   restricted.end());
  for (const auto& c : restricted) {
    bool subsumed = std::any_of(
        out.necessary.begin(), out.necessary.end(), [&](const Clause& kept) {
          return std::includes(c.literals.begin(), c.literals.end(),
                               kept.literals.begin(), kept.literals.end());
        });
    if (!subsumed) out.necessary.push_back(c);
  }

  for (const auto& term : out.sufficient) {
    for (const auto& clause : out.necessary) {
      if (term.literals == clause.literals) {
        out.sufficient_and_necessary.push_back(term);
      }
    }
  }
  return out;
}

}  // namespace ethex
