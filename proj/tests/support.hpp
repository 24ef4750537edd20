#pragma once

// Test-only generators and brute-force oracles. Nothing here calls the
// planner, the resolution engine or the compiler it is used to check: states
// are bitmasks and entailment is decided by truth tables.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ethex/formula.hpp"
#include "ethex/model.hpp"

namespace ethex::testing {

// ---------------------------------------------------------------------------
// Random planning models

struct ModelShape {
  int max_facts = 6;
  int max_actions = 5;
  int max_cost = 3;
};

inline PlanningModel random_model(std::mt19937& rng, ModelShape shape = {}) {
  std::uniform_int_distribution<int> n_facts_dist(1, shape.max_facts);
  std::uniform_int_distribution<int> n_actions_dist(1, shape.max_actions);
  std::uniform_int_distribution<int> coin(0, 3);
  std::uniform_int_distribution<int> cost_dist(0, shape.max_cost);
  std::uniform_int_distribution<int> intrinsic_dist(0, 2);
  std::uniform_int_distribution<int> utility_dist(-6, 6);

  PlanningModel m;
  m.domain_name = "rand";
  m.problem_name = "rand_problem";
  const int n_facts = n_facts_dist(rng);
  std::vector<std::string> facts;
  for (int i = 0; i < n_facts; ++i) facts.push_back("f" + std::to_string(i));
  m.facts.insert(facts.begin(), facts.end());

  const int n_actions = n_actions_dist(rng);
  for (int a = 0; a < n_actions; ++a) {
    Action action;
    action.name = "a" + std::to_string(a);
    for (const auto& f : facts) {
      int c = coin(rng);
      if (c == 0) action.preconditions.insert(f);
      int e = coin(rng);
      if (e == 0) action.add_effects.insert(f);
      if (e == 1) action.del_effects.insert(f);
    }
    action.cost = cost_dist(rng);
    action.intrinsic = static_cast<IntrinsicValue>(intrinsic_dist(rng));
    action.normalize();
    m.actions.push_back(std::move(action));
  }
  for (const auto& f : facts) {
    if (coin(rng) == 0) m.init.insert(f);
    if (coin(rng) == 0) m.goal.insert(f);
    if (coin(rng) <= 1) m.utility.set(f, utility_dist(rng));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Bitmask planning oracle

struct BitAction {
  std::string name;
  std::uint32_t pre = 0, add = 0, del = 0;
  std::int64_t cost = 0;
};

struct BitModel {
  std::vector<BitAction> actions;
  std::uint32_t init = 0;
  std::uint32_t goal = 0;
};

inline BitModel to_bits(const PlanningModel& m) {
  std::map<std::string, int> index;
  for (const auto& f : m.facts) index.emplace(f, static_cast<int>(index.size()));
  auto mask = [&](const std::set<Fact>& s) {
    std::uint32_t out = 0;
    for (const auto& f : s) out |= 1u << index.at(f);
    return out;
  };
  BitModel b;
  b.init = mask(m.init);
  b.goal = mask(m.goal);
  for (const auto& a : m.actions) {
    b.actions.push_back({a.name, mask(a.preconditions), mask(a.add_effects),
                         mask(a.del_effects), a.cost});
  }
  return b;
}

struct BrutePlan {
  std::vector<std::string> steps;
  std::int64_t cost = 0;
  bool operator==(const BrutePlan&) const = default;
};

/// Visits every action sequence of at most `depth` steps (no pruning).
inline void for_each_sequence(
    const BitModel& b, int depth,
    const std::function<void(const std::vector<int>&, std::uint32_t,
                             std::int64_t, bool simple)>& visit) {
  std::vector<int> seq;
  std::vector<std::uint32_t> states = {b.init};
  std::function<void(std::int64_t, bool)> rec = [&](std::int64_t cost,
                                                    bool simple) {
    visit(seq, states.back(), cost, simple);
    if (static_cast<int>(seq.size()) == depth) return;
    for (int i = 0; i < static_cast<int>(b.actions.size()); ++i) {
      const auto& a = b.actions[i];
      std::uint32_t s = states.back();
      if ((s & a.pre) != a.pre) continue;
      std::uint32_t next = (s & ~a.del) | a.add;
      bool still_simple = simple;
      for (auto prev : states) still_simple = still_simple && prev != next;
      seq.push_back(i);
      states.push_back(next);
      rec(cost + a.cost, still_simple);
      states.pop_back();
      seq.pop_back();
    }
  };
  rec(0, true);
}

/// Minimum cost over all goal-reaching sequences of at most `depth` steps;
/// -1 when there is none.
inline std::int64_t brute_min_cost(const PlanningModel& m, int depth) {
  const BitModel b = to_bits(m);
  std::int64_t best = -1;
  for_each_sequence(b, depth, [&](const auto&, std::uint32_t s,
                                  std::int64_t cost, bool) {
    if ((s & b.goal) == b.goal && (best < 0 || cost < best)) best = cost;
  });
  return best;
}

/// Every goal-reaching sequence of at most `depth` steps that never repeats
/// a state, sorted by (cost, steps).
inline std::vector<BrutePlan> brute_simple_plans(const PlanningModel& m,
                                                 int depth) {
  const BitModel b = to_bits(m);
  std::vector<BrutePlan> out;
  for_each_sequence(b, depth, [&](const std::vector<int>& seq, std::uint32_t s,
                                  std::int64_t cost, bool simple) {
    if (!simple || (s & b.goal) != b.goal) return;
    BrutePlan p;
    for (int i : seq) p.steps.push_back(b.actions[i].name);
    p.cost = cost;
    out.push_back(std::move(p));
  });
  std::sort(out.begin(), out.end(), [](const BrutePlan& x, const BrutePlan& y) {
    return std::tie(x.cost, x.steps) < std::tie(y.cost, y.steps);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Random formulas and truth-table oracles

inline std::vector<Atom> letters(int n) {
  std::vector<Atom> out;
  for (int i = 0; i < n; ++i) out.push_back(Atom::bad(std::string(1, char('a' + i))));
  return out;
}

inline Formula random_formula(std::mt19937& rng, const std::vector<Atom>& atoms,
                              int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 0 : 9);
  std::uniform_int_distribution<int> atom(0, static_cast<int>(atoms.size()) - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> arity(0, 3);
  int k = kind(rng);
  if (k == 9) return coin(rng) ? Formula::truth() : Formula::falsity();
  if (k <= 2) return Formula::literal(atoms[atom(rng)], coin(rng) == 1);
  std::vector<Formula> children;
  int n = arity(rng);
  for (int i = 0; i < n; ++i) children.push_back(random_formula(rng, atoms, depth - 1));
  return k <= 5 ? Formula::conjunction(std::move(children))
                : Formula::disjunction(std::move(children));
}

inline Assignment assignment_from_bits(const std::vector<Atom>& atoms,
                                       unsigned bits) {
  Assignment a;
  for (std::size_t i = 0; i < atoms.size(); ++i) a[atoms[i]] = (bits >> i) & 1u;
  return a;
}

/// Literal sets over `atoms`, each atom absent, positive or negative.
inline std::vector<std::vector<Literal>> all_literal_sets(
    const std::vector<Atom>& atoms) {
  std::vector<std::vector<Literal>> out = {{}};
  for (const auto& atom : atoms) {
    std::vector<std::vector<Literal>> next;
    for (const auto& s : out) {
      next.push_back(s);
      auto pos = s;
      pos.push_back({atom, true});
      next.push_back(std::move(pos));
      auto neg = s;
      neg.push_back({atom, false});
      next.push_back(std::move(neg));
    }
    out = std::move(next);
  }
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

inline bool literal_holds(const Literal& l, const Assignment& a) {
  return a.at(l.atom) == l.positive;
}

inline bool subset_of(const std::vector<Literal>& small,
                      const std::vector<Literal>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Minimal clauses entailed by `f`, by truth table.
inline std::set<std::vector<Literal>> brute_prime_implicates(
    const Formula& f, const std::vector<Atom>& atoms) {
  const unsigned n_rows = 1u << atoms.size();
  std::vector<std::vector<Literal>> entailed;
  for (const auto& clause : all_literal_sets(atoms)) {
    bool ok = true;
    for (unsigned r = 0; r < n_rows && ok; ++r) {
      Assignment a = assignment_from_bits(atoms, r);
      if (!f.evaluate(a)) continue;
      ok = std::any_of(clause.begin(), clause.end(),
                       [&](const Literal& l) { return literal_holds(l, a); });
    }
    if (ok) entailed.push_back(clause);
  }
  std::set<std::vector<Literal>> out;
  for (const auto& c : entailed) {
    bool minimal = std::none_of(entailed.begin(), entailed.end(), [&](const auto& d) {
      return d.size() < c.size() && subset_of(d, c);
    });
    if (minimal) out.insert(c);
  }
  return out;
}

/// Minimal terms entailing `f`, by truth table.
inline std::set<std::vector<Literal>> brute_prime_implicants(
    const Formula& f, const std::vector<Atom>& atoms) {
  const unsigned n_rows = 1u << atoms.size();
  std::vector<std::vector<Literal>> entailing;
  for (const auto& term : all_literal_sets(atoms)) {
    bool ok = true;
    for (unsigned r = 0; r < n_rows && ok; ++r) {
      Assignment a = assignment_from_bits(atoms, r);
      bool term_true = std::all_of(term.begin(), term.end(),
                                   [&](const Literal& l) { return literal_holds(l, a); });
      if (term_true && !f.evaluate(a)) ok = false;
    }
    if (ok) entailing.push_back(term);
  }
  std::set<std::vector<Literal>> out;
  for (const auto& t : entailing) {
    bool minimal = std::none_of(entailing.begin(), entailing.end(), [&](const auto& d) {
      return d.size() < t.size() && subset_of(d, t);
    });
    if (minimal) out.insert(t);
  }
  return out;
}

/// Formula evaluation with atoms missing from `a` read as false.
inline Assignment complete(const Assignment& a, const std::vector<Atom>& atoms) {
  Assignment out = a;
  for (const auto& atom : atoms) out.emplace(atom, false);
  return out;
}

}  // namespace ethex::testing
