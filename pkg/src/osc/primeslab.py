"""Number theory behind the prime-number lower bounds.

Words over ``{0,1}`` are read least significant digit first. Everything is
restricted to 63-bit values; exceeding that raises :class:`CapacityError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from osc import kernels
from osc.alphabet import BINARY, Word
from osc.errors import CapacityError, InputError
from osc.langs import MAX_PRIME_WORD, bin_value

is_prime = kernels.is_prime


def bin(w) -> int:  # noqa: A001 - mirrors the usual name for the encoding
    """LSB-first value of a binary word (string or id tuple)."""
    return bin_value(BINARY.word(w))


def encode(x: int, width: int | None = None) -> Word:
    """Inverse of :func:`bin`, zero-padded to ``width`` (minimal width if omitted)."""
    if x < 0:
        raise InputError("cannot encode a negative number")
    if width is None:
        width = x.bit_length()
    if width > MAX_PRIME_WORD:
        raise CapacityError(f"width {width} exceeds {MAX_PRIME_WORD} letters")
    if x >> width:
        raise InputError(f"{x} does not fit in {width} bits")
    return tuple((x >> i) & 1 for i in range(width))


def small_primes(limit: int) -> list[int]:
    """Primes ``<= limit`` by a plain sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


@dataclass(frozen=True)
class IsolatedPrimeResult:
    residue: int
    modulus: int
    k: int
    p: int
    radius: int

    @property
    def window(self) -> tuple[int, int]:
        return (self.p - self.radius, self.p + self.radius)

    def verify(self) -> bool:
        """Independent rescan of the whole window with :func:`is_prime`."""
        lo, hi = self.window
        others = [x for x in range(max(lo, 0), hi + 1) if x != self.p and is_prime(x)]
        return (is_prime(self.p) and not others
                and self.p == self.residue + self.modulus * self.k)

    def to_json(self) -> dict:
        lo, hi = self.window
        return {"residue": self.residue, "modulus": self.modulus, "radius": self.radius,
                "k": self.k, "p": self.p, "window": [lo, hi], "verified": self.verify()}


def find_isolated_prime(a: int, b: int, radius: int, search_bound: int) -> IsolatedPrimeResult | None:
    """Least ``k <= search_bound`` such that ``a + b k`` is the only prime within ``radius``."""
    if b < 1:
        raise InputError("modulus must be at least 1")
    if radius < 1:
        raise InputError("radius must be at least 1")
    if a < 0 or search_bound < 0:
        raise InputError("residue and search bound must be nonnegative")
    if gcd(a, b) != 1:
        raise InputError(f"residue {a} and modulus {b} are not coprime")
    k = kernels.find_isolated(a, b, radius, search_bound)
    if k < 0:
        return None
    return IsolatedPrimeResult(a, b, k, a + b * k, radius)


@dataclass(frozen=True)
class ProfileWitness:
    u: Word
    word: Word
    isolated: IsolatedPrimeResult

    def to_json(self) -> dict:
        return {"u": BINARY.render(self.u), "w": BINARY.render(self.word),
                **self.isolated.to_json()}


def profile_witness_holds(u: Word, w: Word) -> bool:
    """``bin(v w)`` is prime for exactly ``v = u`` among odd ``v`` of length ``|u|``."""
    n = len(u)
    for v in BINARY.words_of_length(n):
        if v[0] != 1:
            continue
        if is_prime(bin_value(v + w)) != (v == u):
            return False
    return True


def prime_profile_witness(u, search_bound: int) -> ProfileWitness | None:
    """A word ``w`` whose row in the order-``|u|`` table of primes singles out ``u``.

    Searches an isolated prime ``p = bin(u) + 2^n k`` of radius ``2^n`` and
    returns ``w = encode(k)``; the profile condition is checked before
    returning.
    """
    u = BINARY.word(u)
    n = len(u)
    if n < 1 or u[0] != 1:
        raise InputError("u must be a nonempty binary word starting with 1 (an odd number)")
    if n > 20:
        raise InputError(f"|u| = {n} exceeds the supported 20")
    found = find_isolated_prime(bin_value(u), 1 << n, 1 << n, search_bound)
    if found is None:
        return None
    w = encode(found.k)
    if n + len(w) > MAX_PRIME_WORD:
        raise CapacityError("witness word exceeds the 63-letter capacity")
    if not profile_witness_holds(u, w):
        raise AssertionError(f"profile condition failed for u={BINARY.render(u)}, k={found.k}")
    return ProfileWitness(u, w, found)


def covering_prime(S, b: int) -> int | None:
    """Least prime dividing ``prod_{a in S} (b k + a)`` for every ``k``, if any.

    For ``p | b`` the product mod ``p`` is ``prod a``; otherwise ``p`` divides
    it for all ``k`` iff the roots ``-a / b mod p`` cover ``Z_p``, which
    needs ``p <= |S|``.
    """
    S = sorted(set(S))
    if b < 1:
        raise InputError("modulus must be at least 1")
    if not S:
        return None
    for p in small_primes(max(len(S), b)):
        if b % p == 0:
            if any(a % p == 0 for a in S):
                return p
        elif p <= len(S):
            inv = pow(b, -1, p)
            if len({(-a * inv) % p for a in S}) == p:
                return p
    return None


def check_divisibility_condition(S, b: int) -> bool:
    """True iff no prime divides ``prod_{a in S} (b k + a)`` for every ``k``."""
    return covering_prime(S, b) is None


def constellation_search(n: int, S, search_bound: int) -> int | None:
    """Least ``k`` with ``2^n k + a`` prime exactly for the odd ``a < 2^n`` in ``S``."""
    if not 1 <= n <= 20:
        raise InputError(f"n must be in 1..20, got {n}")
    b = 1 << n
    S = set(S)
    bad = [a for a in S if a % 2 == 0 or not 0 < a < b]
    if bad:
        raise InputError(f"residues must be odd and below {b}: {sorted(bad)}")
    p = covering_prime(S, b)
    if p is not None:
        raise InputError(f"prime {p} divides the product for every k; the set is inadmissible")
    residues = list(range(1, b, 2))
    k = kernels.constellation(b, residues, [a in S for a in residues], search_bound)
    return None if k < 0 else k


def constellation_holds(n: int, S, k: int) -> bool:
    b = 1 << n
    return all(is_prime(b * k + a) == (a in set(S)) for a in range(1, b, 2))
