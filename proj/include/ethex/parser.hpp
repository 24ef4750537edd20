#pragma once

#include <string>

#include "ethex/model.hpp"

namespace ethex {

struct SourceDocument {
  std::string text;
  std::string origin = "<inline>";
};

struct SourcePair {
  SourceDocument domain;
  SourceDocument problem;
};

/// Reads a domain and a problem document into a validated, grounded model.
///
/// Domain grammar:
///   (define (domain NAME)
///     (:types (TYPE obj ...) ...)                      ; optional
///     (:facts f ...)
///     (:action NAME [:parameters (?x - TYPE ...)]
///                   :pre (f ...) :add (f ...) :del (f ...)
///                   :cost INT :intrinsic good|neutral|bad) ...)
/// Problem grammar:
///   (define (problem NAME) (:domain NAME) (:init (f ...)) (:goal (f ...))
///     (:utility (f INT) ...) (:display (name "phrase") ...))
///
/// A fact is a symbol or a list `(pred arg ...)`, which names the fact
/// `pred_arg_...`. Parameterized actions are grounded over every combination
/// of typed objects; a grounding is named `NAME_obj_...`. Lines of the form
/// `;; provenance: ID` in the domain document restore HModel provenance.
///
/// Throws SyntaxError or SemanticError, both carrying line and column.
PlanningModel parse_model(const SourceDocument& domain,
                          const SourceDocument& problem);

/// Canonical text form; parse_model(serialize_model(m)) == m.
SourcePair serialize_model(const PlanningModel& model);

SourceDocument read_source(const std::string& path);

}  // namespace ethex
