"""
Canonical text for every parsed term. `parse(render(t)) == t` holds for
algebras, morphisms and functors, and for elements given their ambient.
"""

import shlex

from .parser import CommandInvocation, ParsedTerm


def render(term: ParsedTerm) -> str:
    if isinstance(term, CommandInvocation):
        return shlex.join((term.name,) + term.args)
    return str(term)
