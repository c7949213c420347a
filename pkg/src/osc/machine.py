"""Online machines with formula-valued transitions and game semantics.

A machine reads its input once, left to right. Each transition yields a
positive boolean formula over successor states; Prover resolves
disjunctions, Verifier resolves conjunctions, and a word is accepted when
Prover wins the resulting game. Deterministic, nondeterministic and
universal machines are the special cases where every formula is atomic,
disjunctive or conjunctive respectively.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import NamedTuple

from osc import pbf
from osc.alphabet import Alphabet, Word
from osc.errors import ContractError, InputError, RefusalError

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

KINDS = ("deterministic", "nondeterministic", "universal", "alternating")


class State(NamedTuple):
    """Symbolic machine state: a tag, an integer tuple and a letter tuple."""

    tag: str
    ints: tuple = ()
    syms: tuple = ()

    def __str__(self):
        parts = [str(i) for i in self.ints]
        if self.syms:
            parts.append("w=" + "".join(map(str, self.syms)))
        return f"{self.tag}({','.join(parts)})" if parts else self.tag


def state(tag: str, *ints: int, syms: tuple = ()) -> State:
    """Build a state, refusing integers outside the signed 64-bit range."""
    for x in ints:
        if not (INT64_MIN <= x <= INT64_MAX):
            raise OverflowError(f"state counter {x} leaves the 64-bit range")
    return State(tag, ints, syms)


def at(tag: str, *ints: int, syms: tuple = ()) -> pbf.Atom:
    return pbf.Atom(state(tag, *ints, syms=syms))


@dataclass(frozen=True)
class Machine:
    name: str
    alphabet: Alphabet
    init: pbf.Pbf
    delta: Callable[[State, int], pbf.Pbf]
    accepting: Callable[[State], bool]
    describe: str = field(default="", compare=False)

    def __repr__(self):
        return f"Machine({self.name!r}, alphabet={self.alphabet.symbols!r})"


@dataclass
class StateCountCurve:
    machine: str
    entries: list[tuple[int, int]]

    def counts(self) -> list[int]:
        return [s for _, s in self.entries]


def _word(m: Machine, w) -> Word:
    try:
        return m.alphabet.word(w)
    except ContractError as exc:
        raise InputError(str(exc)) from None


def accepts(m: Machine, w) -> bool:
    """Game value by memoized backward induction over (state, position)."""
    w = _word(m, w)
    n = len(w)
    memo: dict[tuple[State, int], bool] = {}
    delta, accepting = m.delta, m.accepting

    def acc(q: State, i: int) -> bool:
        key = (q, i)
        v = memo.get(key)
        if v is None:
            if i == n:
                v = bool(accepting(q))
            else:
                v = pbf.evaluate_with(delta(q, w[i]), lambda p: acc(p, i + 1))
            memo[key] = v
        return v

    return pbf.evaluate_with(m.init, lambda q: acc(q, 0))


def game_tree_value(m: Machine, w, max_len: int = 8) -> bool:
    """Naive exists/forall recursion over the game tree, without memoization.

    Independent check for :func:`accepts`; exponential in ``len(w)`` so
    guarded by ``max_len``.
    """
    w = _word(m, w)
    if len(w) > max_len:
        raise RefusalError(f"game tree on a word of length {len(w)} exceeds guard {max_len}",
                           required=len(w), limit=max_len)

    def formula(f, i):
        if isinstance(f, pbf.Const):
            return f.value
        if isinstance(f, pbf.Atom):
            return position(f.atom, i)
        values = [formula(c, i) for c in f.children]
        return any(values) if isinstance(f, pbf.Or) else all(values)

    def position(q, i):
        if i == len(w):
            return bool(m.accepting(q))
        return formula(m.delta(q, w[i]), i + 1)

    return formula(m.init, 0)


def run_deterministic(m: Machine, w) -> State | None:
    """Follow the unique run; ``None`` once a ``FALSE`` transition kills it."""
    w = _word(m, w)
    f = m.init
    for i in range(len(w) + 1):
        if isinstance(f, pbf.Const):
            if not f.value:
                return None
            raise ContractError("TRUE transition has no successor state to report")
        if not isinstance(f, pbf.Atom):
            raise ContractError(f"formula {pbf.render(f)} is not deterministic")
        q = f.atom
        if i == len(w):
            return q
        f = m.delta(q, w[i])
    return None  # unreachable


def _successors(m: Machine, frontier: Iterable[State]) -> set[State]:
    out: set[State] = set()
    letters = range(m.alphabet.size)
    for q in frontier:
        for a in letters:
            out.update(pbf.atoms(m.delta(q, a)))
    return out


def reachable_layers(m: Machine, n: int):
    """Yield ``R_0, R_1, ..., R_n`` (each a fresh set) by frontier expansion."""
    reached = set(pbf.atoms(m.init))
    frontier = set(reached)
    yield set(reached)
    for _ in range(n):
        new = _successors(m, frontier) - reached
        reached |= new
        frontier = new
        yield set(reached)


def reachable_states(m: Machine, n: int) -> set[State]:
    """States appearing in some game on a word of length at most ``n``.

    Every atom of every applied transition formula counts as appearing.
    """
    if n < 0:
        raise InputError("length bound must be nonnegative")
    return deque(reachable_layers(m, n), maxlen=1)[0]


def state_count_curve(m: Machine, n_max: int) -> StateCountCurve:
    if n_max < 0:
        raise InputError("length bound must be nonnegative")
    entries = [(n, len(r)) for n, r in enumerate(reachable_layers(m, n_max))]
    return StateCountCurve(m.name, entries)


def classify_machine(m: Machine, depth: int) -> str:
    """Most specific kind consistent with all formulas seen up to ``depth``."""
    shapes = {pbf.classify(m.init)}
    for q in reachable_states(m, depth):
        for a in range(m.alphabet.size):
            shapes.add(pbf.classify(m.delta(q, a)))
    shapes -= {"atomic", "constant"}
    if not shapes:
        return "deterministic"
    if shapes == {"disjunctive"}:
        return "nondeterministic"
    if shapes == {"conjunctive"}:
        return "universal"
    return "alternating"


def verify_against_oracle(m: Machine, oracle, max_len: int, cap: int | None = None) -> list[Word]:
    """Exhaustively compare ``accepts`` with the oracle on ``A^{<=max_len}``.

    Returns mismatching words in length-lexicographic order, at most ``cap``
    of them when a cap is given.
    """
    if oracle.alphabet.symbols != m.alphabet.symbols:
        raise InputError(f"alphabet mismatch: machine {m.alphabet.symbols!r} "
                         f"vs oracle {oracle.alphabet.symbols!r}")
    bad: list[Word] = []
    for w in m.alphabet.words(max_len):
        if accepts(m, w) != oracle.member(w):
            bad.append(w)
            if cap is not None and len(bad) >= cap:
                break
    return bad


def trace(m: Machine, w) -> list[str]:
    """Human-readable game layers: for each position, the formulas applied."""
    w = _word(m, w)
    name = str
    lines = [f"init: {pbf.render(m.init, name)}"]
    current = set(pbf.atoms(m.init))
    for i, a in enumerate(w):
        nxt: set[State] = set()
        for q in sorted(current, key=str):
            f = m.delta(q, a)
            lines.append(f"{i} {m.alphabet.symbols[a]} {q} -> {pbf.render(f, name)}")
            nxt.update(pbf.atoms(f))
        current = nxt
    for q in sorted(current, key=str):
        lines.append(f"end {q}: {'accepting' if m.accepting(q) else 'rejecting'}")
    lines.append(f"value: {accepts(m, w)}")
    return lines
