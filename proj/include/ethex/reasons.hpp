#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ethex/ethics.hpp"
#include "ethex/formula.hpp"

namespace ethex {

/// Disjunction of literals; sorted, duplicate-free, never a tautology.
struct Clause {
  std::vector<Literal> literals;

  std::string to_string() const;  // `(Bad(a) | ¬Bad(b))`, `()` when empty
  auto operator<=>(const Clause&) const = default;
};

/// Conjunction of literals; sorted, duplicate-free.
struct Term {
  std::vector<Literal> literals;

  std::string to_string() const;  // `(Bad(a) & Bad(b))`, `()` when empty
  auto operator<=>(const Term&) const = default;
};

inline constexpr std::size_t kMaxClauses = 10'000;
inline constexpr std::size_t kMaxAtoms = 64;

/// Exact CNF by distribution. Tautologies are dropped. Throws
/// Error(kSizeExceeded) past kMaxClauses clauses.
std::vector<Clause> to_clausal_form(const Formula& formula);

/// All prime implicates of the clause set, by resolution saturation with
/// forward and backward subsumption. Sorted by size, then literal order. An
/// unsatisfiable input yields the single empty clause.
std::vector<Clause> prime_implicates(const std::vector<Clause>& clauses);

/// Prime implicants of `formula`: dual of the prime implicates of its
/// negation. Same ordering as prime_implicates.
std::vector<Term> prime_implicants(const Formula& formula);

/// Reasons behind a verdict. The target is the principle formula when the
/// plan is permissible and its negation otherwise.
///
/// `sufficient`: prime implicants of the target whose literals all hold.
/// `necessary`: the holding part of each prime implicate of the target,
/// subsumption-minimised. The target, together with the actual values of the
/// dropped literals, entails each of these clauses.
/// `sufficient_and_necessary`: literal sets present in both lists.
struct ReasonSet {
  std::vector<Term> sufficient;
  std::vector<Clause> necessary;
  std::vector<Term> sufficient_and_necessary;

  bool operator==(const ReasonSet&) const = default;
};

Formula reason_target(const Verdict& verdict);
ReasonSet reasons_for(const Verdict& verdict);

}  // namespace ethex
