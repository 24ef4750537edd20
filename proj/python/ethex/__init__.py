"""Plan ethics evaluation and contrastive explanation.

Models are passed as domain and problem text. Results are decoded from the
same JSON payloads the command-line tool and the service emit.
"""

import json

from . import _ethex
from ._ethex import EthexError

__all__ = ["EthexError", "normalize", "plan", "enumerate_plans", "evaluate", "compile", "explain"]


def normalize(domain, problem):
    """Canonical text form of a model as {"domain", "problem"}."""
    return json.loads(_ethex.normalize(domain, problem))


def plan(domain, problem, objective="min-cost", max_depth=20, max_expansions=1_000_000):
    return json.loads(_ethex.plan(domain, problem, objective, max_depth, max_expansions))


def enumerate_plans(domain, problem, max_depth=20, max_expansions=1_000_000):
    return json.loads(_ethex.enumerate_plans(domain, problem, max_depth, max_expansions))


def evaluate(domain, problem, principle, plan=None, objective="min-cost", max_depth=20,
             max_expansions=1_000_000):
    """Verdict and reasons for `plan`, or for the planner's plan when omitted."""
    return json.loads(_ethex.evaluate(domain, problem, principle, plan, objective, max_depth,
                                      max_expansions))


def compile(domain, problem, suggestions):
    """Compile suggestions into an HModel; returns its text and provenance."""
    if isinstance(suggestions, str):
        suggestions = [suggestions]
    return json.loads(_ethex.compile(domain, problem, list(suggestions)))


def explain(domain, problem, suggestion, principle, plan=None, objective="min-cost",
            max_depth=20, max_expansions=1_000_000):
    """Contrastive explanation; the sentence is under "nl"."""
    return json.loads(_ethex.explain(domain, problem, suggestion, principle, plan, objective,
                                     max_depth, max_expansions))
