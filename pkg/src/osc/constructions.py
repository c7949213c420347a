"""Concrete machines, each paired with the oracle of the language it recognizes.

Transitions not listed for a construction are ``FALSE`` (a rejecting dead
end). States are :class:`~osc.machine.State` values; the tag names the
component of the state space the state lives in.
"""

from __future__ import annotations

from itertools import combinations

from osc import langs, pbf
from osc.alphabet import AB, PADDED, SEPARATED, Word
from osc.errors import CapacityError, InputError
from osc.machine import Machine, State, at
from osc.pbf import FALSE, And, Or

SHARP = 2
PAD = 3
BOT = -1  # "no letter declared yet"
BEFORE, AFTER = 0, 1  # separator not yet read / already read


def det_count_eq_all3() -> Machine:
    """Two counters holding ``(|w|_a - |w|_b, |w|_a - |w|_c)``."""
    moves = {0: (1, 1), 1: (-1, 0), 2: (0, -1)}

    def delta(q: State, x: int):
        p, r = q.ints
        dp, dr = moves[x]
        return at("cnt", p + dp, r + dr)

    return Machine(
        "counteq3-det", langs.count_eq_all(3).alphabet, at("cnt", 0, 0), delta,
        lambda q: q.ints == (0, 0),
    )


def _check_ell(ell: int, hi: int = 6) -> None:
    if not 1 <= ell <= hi:
        raise InputError(f"ell must be in 1..{hi}, got {ell}")


def det_count_eq_exists(ell: int) -> Machine:
    _check_ell(ell)
    alphabet = langs.count_eq_exists(ell).alphabet

    def delta(q: State, x: int):
        if x == 0:
            return at("vec", *(c + 1 for c in q.ints))
        ints = list(q.ints)
        ints[x - 1] -= 1
        return at("vec", *ints)

    return Machine(
        f"counteq-exists-det:{ell}", alphabet, at("vec", *([0] * ell)), delta,
        lambda q: 0 in q.ints,
    )


def nd_count_eq_exists(ell: int) -> Machine:
    """Guess a branch ``i`` up front, then keep one counter ``|w|_a - |w|_{a_i}``."""
    _check_ell(ell)
    alphabet = langs.count_eq_exists(ell).alphabet

    def delta(q: State, x: int):
        i, c = q.ints
        if x == 0:
            return at("br", i, c + 1)
        if x == i:
            return at("br", i, c - 1)
        return pbf.Atom(q)

    init = Or(tuple(at("br", i, 0) for i in range(1, ell + 1)))
    return Machine(f"counteq-exists-nd:{ell}", alphabet, init, delta, lambda q: q.ints[1] == 0)


def nd_not_eq() -> Machine:
    """Guess a mismatch position, or count lengths on the undeclared branch.

    States are ``(p, a, side)`` with ``a = -1`` for undeclared, plus ``top``.
    """

    def delta(q: State, x: int):
        if q.tag == "top":
            return FALSE if x == SHARP else at("top")
        p, a, side = q.ints
        if side == BEFORE:
            if x == SHARP:
                return at("ne", p, a, AFTER)
            if a == BOT:
                return Or((at("ne", p + 1, x, BEFORE), at("ne", p + 1, BOT, BEFORE)))
            return pbf.Atom(q)
        if x == SHARP:
            return FALSE
        if a == BOT:
            return at("ne", p - 1, BOT, AFTER) if p > 0 else at("top")
        # stored letter a at 1-based position p of u
        if p > 1:
            return at("ne", p - 1, a, AFTER)
        return at("top") if (p == 1 and a != x) else FALSE

    def accepting(q: State) -> bool:
        if q.tag == "top":
            return True
        p, a, side = q.ints
        return side == AFTER and a == BOT and p != 0

    return Machine("noteq-nd", SEPARATED, at("ne", 0, BOT, BEFORE), delta, accepting)


def nd_not_eq_multi(ell: int) -> Machine:
    """Nondeterministic machine for ``u#u_1#...#u_ell`` with ``u != u_i`` for all ``i``.

    While reading ``u`` the machine guesses, for each block, either a
    position of ``u`` where that block will differ (storing position and
    letter) or nothing, meaning the block will differ in length. Blocks are
    then checked one after the other against their own guess.
    State ints: ``(len, p_1, a_1, ..., p_ell, a_ell)`` while reading ``u``
    and ``(b, c, len, p_1, a_1, ...)`` in block ``b`` at offset ``c``.
    """
    _check_ell(ell, 4)

    def guesses(ints):
        return ints[-2 * ell:]

    def block_cap(length, p):
        return length + 1 if p == BOT else p + 1

    def block_ok(c, length, p):
        return c != length if p == BOT else c > p

    def delta(q: State, x: int):
        if q.tag == "rd":
            length, g = q.ints[0], list(q.ints[1:])
            if x == SHARP:
                return at("bk", 1, 0, length, *g)
            free = [i for i in range(ell) if g[2 * i] == BOT]
            options = []
            for r in range(len(free) + 1):
                for chosen in combinations(free, r):
                    h = list(g)
                    for i in chosen:
                        h[2 * i], h[2 * i + 1] = length, x
                    options.append(at("rd", length + 1, *h))
            return Or(tuple(options))
        b, c, length = q.ints[:3]
        g = guesses(q.ints)
        p, a = g[2 * (b - 1)], g[2 * (b - 1) + 1]
        if x == SHARP:
            if b == ell or not block_ok(c, length, p):
                return FALSE
            return at("bk", b + 1, 0, length, *g)
        if p != BOT and c == p and x == a:
            return FALSE
        return at("bk", b, min(c + 1, block_cap(length, p)), length, *g)

    def accepting(q: State) -> bool:
        if q.tag != "bk":
            return False
        b, c, length = q.ints[:3]
        g = guesses(q.ints)
        return b == ell and block_ok(c, length, g[2 * (b - 1)])

    init = at("rd", 0, *([BOT] * (2 * ell)))
    return Machine(f"noteq-nd:{ell}", SEPARATED, init, delta, accepting)


def alt_lexicographic() -> Machine:
    """Unravel ``u <= v``: ``(u0 = 0 and v0 = 1) or (u0 = v0 and tail(u) <= tail(v))``.

    Tags: ``lex(p)``, ``eq(p, a, side)``, ``sm(p, side)`` and ``top``.
    """

    def delta(q: State, x: int):
        tag = q.tag
        if tag == "top":
            return FALSE if x == SHARP else at("top")
        if tag == "lex":
            (p,) = q.ints
            if x == SHARP:
                return at("top")
            keep = And((at("eq", p, x, BEFORE), at("lex", p + 1)))
            if x == 0:
                return Or((at("sm", p, BEFORE), keep))
            return keep
        if tag == "eq":
            p, a, side = q.ints
            if side == BEFORE:
                return at("eq", p, a, AFTER) if x == SHARP else pbf.Atom(q)
            if x == SHARP:
                return FALSE
            if p > 0:
                return at("eq", p - 1, a, AFTER)
            return at("top") if x == a else FALSE
        # tag == "sm"
        p, side = q.ints
        if side == BEFORE:
            return at("sm", p, AFTER) if x == SHARP else pbf.Atom(q)
        if x == SHARP:
            return FALSE
        if p > 0:
            return at("sm", p - 1, AFTER)
        return at("top") if x == 1 else FALSE

    return Machine("lex-alt", SEPARATED, at("lex", 0), delta, lambda q: q.tag == "top")


def alt_hierarchy(ell: int) -> Machine:
    """Three phases: count the padding, guess ``j <= p^ell``, then check ``u = u_j``.

    * ``cnt(p)`` reads the padding; on the first other letter it guesses
      ``j`` (a disjunction) and immediately applies the phase-two step.
    * ``u(q, j)`` spawns, for each letter of ``u``, a copy ``c(q, j; a)``
      remembering position and letter (a conjunction); on ``#`` it becomes a
      length checker ``len(q, r)`` for block ``j``.
    * ``seek(q, r; a)`` skips ``r`` blocks and checks letter ``q`` of the
      target block; ``len(q, r)`` checks the target block has length ``q``.
    """
    if not 2 <= ell <= 3:
        raise InputError(f"ell must be 2 or 3, got {ell}")

    def phase2(q: int, j: int, x: int):
        if x == PAD:
            return FALSE
        if x == SHARP:
            return at("len", q, j - 1)
        return And((at("u", q + 1, j), at("c", q, j, syms=(x,))))

    def delta(q: State, x: int):
        tag = q.tag
        if tag == "cnt":
            (p,) = q.ints
            if x == PAD:
                return at("cnt", p + 1)
            if p == 0:
                return FALSE
            return Or(tuple(phase2(0, j, x) for j in range(1, p ** ell + 1)))
        if tag == "u":
            return phase2(q.ints[0], q.ints[1], x)
        if x == PAD:
            return FALSE
        if tag == "done":
            return at("done")
        if tag == "c":
            pos, j = q.ints
            return at("seek", pos, j - 1, syms=q.syms) if x == SHARP else pbf.Atom(q)
        if tag == "seek":
            pos, r = q.ints
            if r > 0:
                return at("seek", pos, r - 1, syms=q.syms) if x == SHARP else pbf.Atom(q)
            if x == SHARP:
                return FALSE
            if pos > 0:
                return at("seek", pos - 1, 0, syms=q.syms)
            return at("done") if x == q.syms[0] else FALSE
        # tag == "len"
        left, r = q.ints
        if r > 0:
            return at("len", left, r - 1) if x == SHARP else pbf.Atom(q)
        if x == SHARP:
            return at("done") if left == 0 else FALSE
        return at("len", left - 1, 0) if left > 0 else FALSE

    def accepting(q: State) -> bool:
        return q.tag == "done" or (q.tag == "len" and q.ints == (0, 0))

    return Machine(f"hierarchy-alt:{ell}", PADDED, at("cnt", 0), delta, accepting)


def det_maj2() -> Machine:
    def delta(q: State, x: int):
        return at("z", q.ints[0] + (1 if x == 0 else -1))

    return Machine("maj2-det", AB, at("z", 0), delta, lambda q: q.ints[0] > 0)


def det_universal(oracle: langs.LanguageOracle, cap: int) -> Machine:
    """States are the words read so far; accepting exactly the member words."""

    def delta(q: State, x: int):
        if len(q.syms) >= cap:
            raise CapacityError(f"universal machine depth cap {cap} reached")
        return pbf.Atom(State("w", (), q.syms + (x,)))

    return Machine(
        f"universal:{oracle.name}:{cap}", oracle.alphabet, pbf.Atom(State("w", (), ())), delta,
        lambda q: oracle.member(q.syms),
    )


HORIZON = State("horizon")


def quotient_automaton(oracle: langs.LanguageOracle, n: int, m: int,
                       budget: int | None = None) -> Machine:
    """Deterministic machine on probe-bounded quotient classes of ``A^{<=n}``.

    ``u ~ v`` iff ``L(ux) = L(vx)`` for every probe ``|x| <= m``. Each class
    is named by its length-lexicographically least member; from a
    representative of length ``n`` every letter leads to the ``horizon``
    sink.
    """
    from osc.qtable import quotient_classes

    classes = quotient_classes(oracle, n, m, budget=budget)
    rep_of: dict[Word, Word] = {}
    for cls in classes:
        for u in cls.members:
            rep_of[u] = cls.rep
    accepting_reps = {cls.rep for cls in classes if oracle.member(cls.rep)}

    def delta(q: State, x: int):
        if q.tag == "horizon" or len(q.syms) >= n:
            return pbf.Atom(HORIZON)
        return pbf.Atom(State("q", (), rep_of[q.syms + (x,)]))

    return Machine(
        f"quotient:{oracle.name}:{n}:{m}", oracle.alphabet, pbf.Atom(State("q", (), ())), delta,
        lambda q: q.tag == "q" and q.syms in accepting_reps,
    )


# -- registry -----------------------------------------------------------------

def _split_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"bad {what} {text!r}") from None


def machine_by_name(name: str, budget: int | None = None) -> tuple[Machine, langs.LanguageOracle]:
    """Resolve a registry name to ``(machine, oracle)``."""
    base, _, rest = name.partition(":")
    if base == "counteq3-det" and not rest:
        return det_count_eq_all3(), langs.count_eq_all(3)
    if base == "noteq-nd":
        if not rest:
            return nd_not_eq(), langs.not_eq(1)
        ell = _split_int(rest, "ell")
        return nd_not_eq_multi(ell), langs.not_eq(ell)
    if base == "lex-alt" and not rest:
        return alt_lexicographic(), langs.lexicographic()
    if base == "maj2-det" and not rest:
        return det_maj2(), langs.maj2()
    if base in ("counteq-exists-det", "counteq-exists-nd") and rest:
        ell = _split_int(rest, "ell")
        build = det_count_eq_exists if base.endswith("det") else nd_count_eq_exists
        return build(ell), langs.count_eq_exists(ell)
    if base == "hierarchy-alt" and rest:
        ell = _split_int(rest, "ell")
        return alt_hierarchy(ell), langs.hierarchy(ell)
    if base == "universal" and rest:
        lang, sep, cap = rest.rpartition(":")
        if sep:
            oracle = langs.by_name(lang)
            return det_universal(oracle, _split_int(cap, "cap")), oracle
    if base == "quotient" and rest:
        parts = rest.rsplit(":", 2)
        if len(parts) == 3:
            oracle = langs.by_name(parts[0])
            n, m = _split_int(parts[1], "order"), _split_int(parts[2], "probe depth")
            return quotient_automaton(oracle, n, m, budget=budget), oracle
    raise InputError(f"unknown machine {name!r}; known: {', '.join(MACHINE_NAMES)}")


MACHINE_NAMES = [
    "counteq3-det", "counteq-exists-det:<l>", "counteq-exists-nd:<l>", "noteq-nd",
    "noteq-nd:<l>", "lex-alt", "hierarchy-alt:<l>", "maj2-det", "universal:<lang>:<cap>",
    "quotient:<lang>:<n>:<m>",
]

# registered instances with the exhaustive depth each must pass
REGISTERED: list[tuple[str, int]] = [
    ("counteq3-det", 8),
    ("counteq-exists-det:1", 12),
    ("counteq-exists-det:2", 8),
    ("counteq-exists-det:3", 7),
    ("counteq-exists-nd:1", 12),
    ("counteq-exists-nd:2", 8),
    ("counteq-exists-nd:3", 7),
    ("noteq-nd", 9),
    ("noteq-nd:1", 8),
    ("noteq-nd:2", 8),
    ("noteq-nd:3", 7),
    ("lex-alt", 9),
    ("hierarchy-alt:2", 8),
    ("hierarchy-alt:3", 7),
    ("maj2-det", 12),
    ("universal:primes:12", 10),
    ("universal:lexicographic:8", 7),
    ("quotient:maj2:9:9", 9),
    ("quotient:parity-a:9:9", 9),
]
