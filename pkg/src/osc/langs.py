"""Ground-truth membership oracles, defined directly on words.

None of these look at any machine: they parse the word and test the
defining property. Malformed shapes (wrong number of separators, padding
after content) are simply non-members.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

from osc.alphabet import AB, BINARY, PADDED, SEPARATED, Alphabet, Word
from osc.errors import CapacityError, InputError

MAX_PRIME_WORD = 63


@dataclass(frozen=True)
class LanguageOracle:
    name: str
    alphabet: Alphabet
    fn: Callable[[Word], bool] = field(repr=False, compare=False)

    def member(self, word: Word) -> bool:
        self.alphabet.check(word)
        return bool(self.fn(word))

    def __call__(self, word: str | Word) -> bool:
        return self.member(self.alphabet.word(word))


def count_eq_all(k: int = 3) -> LanguageOracle:
    """Words over the first ``k`` letters of ``abc...`` where all counts agree."""
    if not 2 <= k <= 9:
        raise InputError(f"count_eq_all needs 2 <= k <= 9, got {k}")
    alphabet = Alphabet("abcdefghi"[:k])

    def fn(w: Word) -> bool:
        c0 = w.count(0)
        return all(w.count(i) == c0 for i in range(1, k))

    return LanguageOracle(f"count-eq-all:{k}", alphabet, fn)


def count_eq_exists(ell: int) -> LanguageOracle:
    """Alphabet ``a, 1..ell``; member iff ``|w|_a = |w|_{a_i}`` for some ``i``."""
    if not 1 <= ell <= 8:
        raise InputError(f"count_eq_exists needs 1 <= ell <= 8, got {ell}")
    alphabet = Alphabet("a" + "".join(str(i) for i in range(1, ell + 1)))

    def fn(w: Word) -> bool:
        ca = w.count(0)
        return any(w.count(i) == ca for i in range(1, ell + 1))

    return LanguageOracle(f"count-eq-exists:{ell}", alphabet, fn)


_SEP = 2  # id of '#' in both separator alphabets
_PAD = 3  # id of '*' in the padded alphabet


def _blocks(w: Word) -> list[bytes]:
    return bytes(w).split(b"\x02")


def not_eq(ell: int = 1) -> LanguageOracle:
    """``u#u_1#...#u_ell`` with every ``u_i`` different from ``u``."""
    if not 1 <= ell <= 8:
        raise InputError(f"not_eq needs 1 <= ell <= 8, got {ell}")

    def fn(w: Word) -> bool:
        blocks = _blocks(w)
        if len(blocks) != ell + 1:
            return False
        u = blocks[0]
        return all(b != u for b in blocks[1:])

    return LanguageOracle("not-eq" if ell == 1 else f"not-eq:{ell}", SEPARATED, fn)


def lex_leq(u: bytes, v: bytes) -> bool:
    """``u`` is a prefix of ``v`` or smaller at the first difference."""
    for x, y in zip(u, v):
        if x != y:
            return x < y
    return len(u) <= len(v)


def lexicographic() -> LanguageOracle:
    def fn(w: Word) -> bool:
        blocks = _blocks(w)
        return len(blocks) == 2 and lex_leq(blocks[0], blocks[1])

    return LanguageOracle("lexicographic", SEPARATED, fn)


def reverse_membership() -> LanguageOracle:
    """``u#u_1#...#u_k`` (``k >= 1``) where some block reversed equals ``u``."""

    def fn(w: Word) -> bool:
        blocks = _blocks(w)
        if len(blocks) < 2:
            return False
        u = blocks[0]
        return any(b[::-1] == u for b in blocks[1:])

    return LanguageOracle("reverse-membership", SEPARATED, fn)


def hierarchy(ell: int) -> LanguageOracle:
    """``*^p u#u_1#...#u_k`` with ``u = u_j`` for some ``j <= min(p^ell, k)``."""
    if not 2 <= ell <= 4:
        raise InputError(f"hierarchy needs 2 <= ell <= 4, got {ell}")

    def fn(w: Word) -> bool:
        p = 0
        while p < len(w) and w[p] == _PAD:
            p += 1
        rest = w[p:]
        if _PAD in rest:
            return False
        blocks = _blocks(rest)
        if len(blocks) < 2:
            return False
        u = blocks[0]
        limit = min(p ** ell, len(blocks) - 1)
        return any(blocks[j] == u for j in range(1, limit + 1))

    return LanguageOracle(f"hierarchy:{ell}", PADDED, fn)


def bin_value(w: Word) -> int:
    """LSB-first binary value; capped at 63 letters."""
    if len(w) > MAX_PRIME_WORD:
        raise CapacityError(f"word of length {len(w)} exceeds the {MAX_PRIME_WORD}-letter capacity")
    x = 0
    for i, b in enumerate(w):
        if b:
            x |= 1 << i
    return x


def primes() -> LanguageOracle:
    from osc.kernels import is_prime

    def fn(w: Word) -> bool:
        return is_prime(bin_value(w))

    return LanguageOracle("primes", BINARY, fn)


def maj2() -> LanguageOracle:
    def fn(w: Word) -> bool:
        return w.count(0) > w.count(1)

    return LanguageOracle("maj2", AB, fn)


def sq() -> LanguageOracle:
    def fn(w: Word) -> bool:
        h, r = divmod(len(w), 2)
        return r == 0 and w[:h] == w[h:]

    return LanguageOracle("sq", AB, fn)


def parity_a() -> LanguageOracle:
    """Even number of ``a``: a regular helper with two quotient classes."""

    def fn(w: Word) -> bool:
        return w.count(0) % 2 == 0

    return LanguageOracle("parity-a", AB, fn)


def _param(arg: str | None, default: int | None, name: str) -> int:
    if arg is None:
        if default is None:
            raise InputError(f"language {name!r} needs a parameter, e.g. {name}:2")
        return default
    try:
        return int(arg)
    except ValueError:
        raise InputError(f"bad parameter {arg!r} for language {name!r}") from None


_FAMILIES: dict[str, tuple[Callable[..., LanguageOracle], int | None]] = {
    "count-eq-all": (count_eq_all, 3),
    "count-eq-exists": (count_eq_exists, None),
    "not-eq": (not_eq, 1),
    "hierarchy": (hierarchy, None),
}
_PLAIN: dict[str, Callable[[], LanguageOracle]] = {
    "lexicographic": lexicographic,
    "reverse-membership": reverse_membership,
    "primes": primes,
    "maj2": maj2,
    "sq": sq,
    "parity-a": parity_a,
}

LANGUAGE_NAMES = [
    "count-eq-all:<k>", "count-eq-exists:<l>", "not-eq", "not-eq:<l>", "lexicographic",
    "reverse-membership", "hierarchy:<l>", "primes", "maj2", "sq", "parity-a",
]


def by_name(name: str) -> LanguageOracle:
    """Look a language up by registry name such as ``hierarchy:2``."""
    base, _, arg = name.partition(":")
    if base in _PLAIN and not arg:
        return _PLAIN[base]()
    if base in _FAMILIES:
        builder, default = _FAMILIES[base]
        return builder(_param(arg or None, default, base))
    raise InputError(f"unknown language {name!r}; known: {', '.join(LANGUAGE_NAMES)}")
