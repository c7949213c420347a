"""Positive boolean formulas over arbitrary hashable atoms.

Formulas are immutable trees built from :class:`Atom`, :class:`And`,
:class:`Or` and the two constants :data:`TRUE` / :data:`FALSE`. There is no
negation node, so every formula is monotone in its atoms.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass
from typing import Union

from osc.errors import ContractError

__all__ = [
    "Atom", "And", "Or", "Const", "TRUE", "FALSE", "Pbf",
    "evaluate", "evaluate_with", "atoms", "substitute", "classify", "render",
    "conj", "disj",
]


@dataclass(frozen=True, slots=True)
class Const:
    value: bool


@dataclass(frozen=True, slots=True)
class Atom:
    atom: Hashable


@dataclass(frozen=True, slots=True)
class And:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ContractError("And needs at least one child")


@dataclass(frozen=True, slots=True)
class Or:
    children: tuple

    def __post_init__(self):
        if not self.children:
            raise ContractError("Or needs at least one child")


TRUE = Const(True)
FALSE = Const(False)

Pbf = Union[Const, Atom, And, Or]


def conj(*children: Pbf) -> Pbf:
    """Build an ``And`` node; a single child is still wrapped."""
    return And(tuple(children))


def disj(*children: Pbf) -> Pbf:
    return Or(tuple(children))


def evaluate_with(f: Pbf, value: Callable[[Hashable], bool]) -> bool:
    """Evaluate ``f`` with atom truth values supplied lazily by ``value``.

    Evaluation short-circuits, so ``value`` may be an expensive recursive
    game evaluation.
    """
    if type(f) is Atom:
        return bool(value(f.atom))
    if type(f) is Or:
        return any(evaluate_with(c, value) for c in f.children)
    if type(f) is And:
        return all(evaluate_with(c, value) for c in f.children)
    if type(f) is Const:
        return f.value
    raise TypeError(f"not a formula: {f!r}")


def evaluate(f: Pbf, assignment: Mapping[Hashable, bool]) -> bool:
    def lookup(atom):
        try:
            return assignment[atom]
        except KeyError:
            raise ContractError(f"assignment has no value for atom {atom!r}") from None

    # every atom must be assigned, even those a short-circuit would skip
    missing = atoms(f) - assignment.keys()
    if missing:
        raise ContractError(f"assignment has no value for atoms {sorted(map(repr, missing))}")
    return evaluate_with(f, lookup)


def atoms(f: Pbf) -> frozenset:
    out: set = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if type(g) is Atom:
            out.add(g.atom)
        elif type(g) in (And, Or):
            stack.extend(g.children)
    return frozenset(out)


def iter_atoms(f: Pbf) -> Iterable[Hashable]:
    """Atoms in left-to-right order, with repetitions."""
    if type(f) is Atom:
        yield f.atom
    elif type(f) in (And, Or):
        for c in f.children:
            yield from iter_atoms(c)


def substitute(f: Pbf, g: Callable[[Hashable], Pbf]) -> Pbf:
    """Replace every atom leaf ``x`` by the formula ``g(x)``."""
    if type(f) is Atom:
        return g(f.atom)
    if type(f) is And:
        return And(tuple(substitute(c, g) for c in f.children))
    if type(f) is Or:
        return Or(tuple(substitute(c, g) for c in f.children))
    return f


def _flat(children) -> bool:
    return all(type(c) in (Atom, Const) for c in children)


def classify(f: Pbf) -> str:
    """One of ``atomic``, ``constant``, ``disjunctive``, ``conjunctive``, ``general``."""
    if type(f) is Atom:
        return "atomic"
    if type(f) is Const:
        return "constant"
    if type(f) is Or and _flat(f.children):
        return "disjunctive"
    if type(f) is And and _flat(f.children):
        return "conjunctive"
    return "general"


def render(f: Pbf, name: Callable[[Hashable], str] = str) -> str:
    """Debug rendering: ``&`` / ``|`` for nodes, ``T`` / ``F`` for constants."""
    if type(f) is Atom:
        return name(f.atom)
    if type(f) is Const:
        return "T" if f.value else "F"
    sep = " & " if type(f) is And else " | "
    inner = sep.join(render(c, name) for c in f.children)
    return inner if len(f.children) == 1 else f"({inner})"
