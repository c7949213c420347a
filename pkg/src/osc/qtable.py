"""Left quotients, query tables and lower-bound witnesses.

The query table of order ``n`` has one column per word ``u`` of length at
most ``n`` (standing for the quotient ``u^-1 L``) and one row per probe
word ``w``; the cell is ``L(u w)``. Only probes of length at most ``m`` are
enumerated, so the number of distinct rows is a lower bound on the true
table size that can only grow with ``m``.
"""

from __future__ import annotations

import hashlib
import os
import time
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from osc.alphabet import SEPARATED, Alphabet, Word
from osc.errors import InputError, RefusalError
from osc.langs import LanguageOracle, hierarchy, reverse_membership

DEFAULT_BUDGET = 1 << 28
CHUNK_ROWS = 2048


def default_budget() -> int:
    raw = os.environ.get("OSC_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise InputError(f"OSC_BUDGET must be an integer, got {raw!r}") from None
        if value <= 0:
            raise InputError("OSC_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


def _check_budget(required: int, budget: int | None, what: str) -> None:
    limit = default_budget() if budget is None else budget
    if required > limit:
        raise RefusalError(
            f"{what} needs {required} membership queries, budget is {limit} "
            f"(raise it with --budget or OSC_BUDGET)", required=required, limit=limit)


def left_quotient(oracle: LanguageOracle, u) -> LanguageOracle:
    u = oracle.alphabet.word(u)
    fn = oracle.fn
    label = oracle.alphabet.render(u) or "eps"
    return LanguageOracle(f"({label})^-1 {oracle.name}", oracle.alphabet, lambda w: fn(u + w))


@dataclass
class QueryTableReport:
    language: str
    order: int
    probe_depth: int
    distinct_rows: int
    distinct_cols: int
    query_count: int
    elapsed_ms: float = 0.0
    profiles: list[tuple[str, str]] | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "command": "qtable",
            "language": self.language,
            "order": self.order,
            "probe_depth": self.probe_depth,
            "distinct_rows": self.distinct_rows,
            "distinct_cols": self.distinct_cols,
            "query_count": self.query_count,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.profiles is not None:
            out["profiles"] = [{"word": w, "profile": bits} for w, bits in self.profiles]
        return out


def _block(fn, rows: list[Word], cols: list[Word]) -> np.ndarray:
    out = np.empty((len(rows), len(cols)), dtype=bool)
    for i, w in enumerate(rows):
        out[i] = [fn(u + w) for u in cols]
    return out


def query_matrix(oracle: LanguageOracle, n: int, m: int, budget: int | None = None):
    """Full ``(rows, cols, matrix)`` for small instances; ``matrix[i, j] = L(cols[j] rows[i])``."""
    a = oracle.alphabet
    _check_budget(a.count_upto(n) * a.count_upto(m), budget, "query matrix")
    rows, cols = list(a.words(m)), list(a.words(n))
    return rows, cols, _block(oracle.fn, rows, cols)


def _digest(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=16).digest()


def query_table(oracle: LanguageOracle, n: int, m: int, parallelism: int = 1,
                keep_profiles: bool = False, budget: int | None = None) -> QueryTableReport:
    """Count distinct rows and columns of the order-``n`` table over probes ``A^{<=m}``.

    Rows are processed in fixed-size chunks; ``parallelism`` only decides how
    many chunks are in flight, and results are merged in chunk order, so the
    output does not depend on it.
    """
    if n < 0 or m < 0:
        raise InputError("order and probe depth must be nonnegative")
    if parallelism < 1:
        raise InputError("parallelism must be at least 1")
    a = oracle.alphabet
    queries = a.count_upto(n) * a.count_upto(m)
    _check_budget(queries, budget, "query table")
    start = time.perf_counter()
    cols = list(a.words(n))
    rows = list(a.words(m))
    chunks = [rows[i:i + CHUNK_ROWS] for i in range(0, len(rows), CHUNK_ROWS)]
    fn = oracle.fn

    def work(chunk):
        block = _block(fn, chunk, cols)
        row_keys = [_digest(r.tobytes()) for r in np.packbits(block, axis=1)]
        col_bits = np.packbits(block, axis=0).T.copy()
        texts = ["".join("1" if b else "0" for b in r) for r in block] if keep_profiles else None
        return row_keys, col_bits, texts

    distinct_rows: set[bytes] = set()
    col_hashers = [hashlib.blake2b(digest_size=16) for _ in cols]
    kept: list[tuple[str, str]] = []
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        for chunk, (row_keys, col_bits, texts) in zip(chunks, pool.map(work, chunks)):
            distinct_rows.update(row_keys)
            for h, bits in zip(col_hashers, col_bits):
                h.update(bits.tobytes())
            if texts is not None:
                kept.extend((a.render(w), t) for w, t in zip(chunk, texts))
    distinct_cols = len({h.digest() for h in col_hashers})
    return QueryTableReport(
        oracle.name, n, m, len(distinct_rows), distinct_cols, queries,
        (time.perf_counter() - start) * 1000.0, kept if keep_profiles else None,
    )


def count_distinct_rows(matrix: np.ndarray) -> int:
    if matrix.shape[0] == 0:
        return 0
    return len(np.unique(np.packbits(matrix, axis=1), axis=0))


def count_distinct_cols(matrix: np.ndarray) -> int:
    return count_distinct_rows(matrix.T)


def profile_of(oracle: LanguageOracle, n: int, w) -> tuple[bool, ...]:
    """Row of ``w`` in the order-``n`` table (columns in length-lex order)."""
    w = oracle.alphabet.word(w)
    return tuple(oracle.fn(u + w) for u in oracle.alphabet.words(n))


def profiles_over(oracle: LanguageOracle, columns: list[Word], words: Iterable[Word]) -> list[tuple[bool, ...]]:
    fn = oracle.fn
    return [tuple(fn(u + w) for u in columns) for w in words]


def separating_word(oracle: LanguageOracle, u, v, max_len: int) -> Word | None:
    """Length-lex least ``w`` with ``|w| <= max_len`` and ``L(uw) != L(vw)``."""
    a = oracle.alphabet
    u, v = a.word(u), a.word(v)
    fn = oracle.fn
    for w in a.words(max_len):
        if fn(u + w) != fn(v + w):
            return w
    return None


@dataclass
class QuotientClass:
    rep: Word
    members: list[Word]


def quotient_classes(oracle: LanguageOracle, n: int, m: int,
                     budget: int | None = None) -> list[QuotientClass]:
    """Classes of ``A^{<=n}`` under ``u ~ v`` iff ``L(ux) = L(vx)`` for all ``|x| <= m``.

    Classes are listed in order of their length-lex least member, which is
    also their representative.
    """
    rows, cols, matrix = query_matrix(oracle, n, m, budget)
    packed = np.packbits(matrix, axis=0).T
    by_key: dict[bytes, QuotientClass] = {}
    for u, bits in zip(cols, packed):
        key = bits.tobytes()
        cls = by_key.get(key)
        if cls is None:
            by_key[key] = QuotientClass(u, [u])
        else:
            cls.members.append(u)
    return list(by_key.values())


def check_alt_bound(report: QueryTableReport, s_n: int) -> bool:
    """``QTlow <= 2^s(n)``: what any machine with ``s(n)`` states must satisfy."""
    return report.distinct_rows <= 2 ** s_n


# -- witnesses ----------------------------------------------------------------

def _binary_block_set(S: Iterable, what: str) -> tuple[list[Word], int | None]:
    words = sorted({SEPARATED.word(s) for s in S}, key=lambda w: (len(w), w))
    for w in words:
        if 2 in w:
            raise InputError(f"{what}: blocks must be binary, got {SEPARATED.render(w)!r}")
    lengths = {len(w) for w in words}
    if len(lengths) > 1:
        raise InputError(f"{what}: all words must have the same length, got {sorted(lengths)}")
    return words, (lengths.pop() if lengths else None)


def witness_reverse_membership(S: Iterable) -> Word:
    """``#rev(u_1)#rev(u_2)...`` so that ``u w`` is a member exactly for ``u`` in ``S``."""
    words, _ = _binary_block_set(S, "witness_reverse_membership")
    out: list[int] = []
    for u in words:
        out.append(2)
        out.extend(reversed(u))
    return tuple(out) if out else (2,)


def hierarchy_padding(ell: int, n: int) -> Word:
    if n < 1 or n % ell:
        raise InputError(f"n must be a positive multiple of ell={ell}, got {n}")
    return (3,) * (2 ** (n // ell))


def witness_hierarchy(ell: int, n: int, S: Iterable) -> tuple[Word, Word]:
    """Return ``(padding, w)``; test sites are ``padding + u`` for ``u`` in ``{0,1}^n``.

    With ``p = 2^(n/ell)`` padding letters, ``p^ell = 2^n`` blocks are
    admissible, enough for any subset ``S``. Blocks are not reversed since
    membership asks for ``u = u_j``.
    """
    pad = hierarchy_padding(ell, n)
    words, length = _binary_block_set(S, "witness_hierarchy")
    if length is not None and length != n:
        raise InputError(f"witness_hierarchy: words must have length {n}, got {length}")
    out: list[int] = []
    for u in words:
        out.append(2)
        out.extend(u)
    return pad, (tuple(out) if out else (2,))


def all_subsets(universe: list[Word]) -> Iterable[tuple[Word, ...]]:
    for r in range(len(universe) + 1):
        yield from combinations(universe, r)


@dataclass
class WitnessDemo:
    language: str
    n: int
    order: int
    witnesses: int
    distinct_test_profiles: int
    postconditions_ok: bool
    distinct_full_profiles: int | None  # over every column of the order, when affordable
    target: int
    qtable: QueryTableReport | None = None

    @property
    def ok(self) -> bool:
        full_ok = self.distinct_full_profiles is None or self.distinct_full_profiles >= self.target
        return self.postconditions_ok and self.distinct_test_profiles >= self.target and full_ok

    def to_json(self) -> dict:
        out = {
            "command": "demo",
            "language": self.language,
            "n": self.n,
            "order": self.order,
            "witnesses": self.witnesses,
            "distinct_test_profiles": self.distinct_test_profiles,
            "distinct_full_profiles": self.distinct_full_profiles,
            "target": self.target,
            "postconditions_ok": self.postconditions_ok,
            "ok": self.ok,
        }
        if self.qtable is not None:
            out["qtable"] = self.qtable.to_json()
        return out


def _run_demo(oracle, universe, order, tests, witness_words, budget):
    """Profiles of every witness over the test columns, and over all columns if cheap.

    Returns ``(distinct_test_profiles, postconditions_ok, distinct_full_profiles)``.
    """
    fn = oracle.fn
    seen: set[tuple] = set()
    ok = True
    for S, w in witness_words:
        members = set(S)
        row = tuple(fn(col + w) for col in tests)
        ok &= all(bit == (u in members) for bit, u in zip(row, universe))
        seen.add(row)
    full = None
    cost = oracle.alphabet.count_upto(order) * len(witness_words)
    if cost <= min(FULL_PROFILE_BUDGET, default_budget() if budget is None else budget):
        columns = list(oracle.alphabet.words(order))
        full = len({tuple(fn(u + w) for u in columns) for _, w in witness_words})
    return len(seen), ok, full


def _binary_universe(n: int) -> list[Word]:
    return list(Alphabet("01").words_of_length(n))


FULL_PROFILE_BUDGET = 1 << 22


def expalt_demo(n: int, probe_depth: int | None = None, budget: int | None = None) -> WitnessDemo:
    """One witness per subset of ``{0,1}^n`` for the reverse-membership language."""
    if not 1 <= n <= 4:
        raise InputError(f"expalt demo supports 1 <= n <= 4, got {n}")
    oracle = reverse_membership()
    universe = _binary_universe(n)
    witnesses = [(S, witness_reverse_membership(S)) for S in all_subsets(universe)]
    distinct, ok, full = _run_demo(oracle, universe, n, universe, witnesses, budget)
    report = None
    if probe_depth is not None:
        report = query_table(oracle, n, probe_depth, budget=budget)
    return WitnessDemo(oracle.name, n, n, len(witnesses), distinct, ok, full, 2 ** (2 ** n), report)


def hierarchy_demo(ell: int, n: int, budget: int | None = None) -> WitnessDemo:
    """One witness per subset of ``{0,1}^n``, tested at ``*^(2^(n/ell)) u``."""
    oracle = hierarchy(ell)
    pad = hierarchy_padding(ell, n)
    if n > 4:
        raise InputError(f"hierarchy demo supports n <= 4, got {n}")
    universe = _binary_universe(n)
    tests = [pad + u for u in universe]
    witnesses = [(S, witness_hierarchy(ell, n, S)[1]) for S in all_subsets(universe)]
    order = n + len(pad)
    distinct, ok, full = _run_demo(oracle, universe, order, tests, witnesses, budget)
    return WitnessDemo(oracle.name, n, order, len(witnesses), distinct, ok, full, 2 ** (2 ** n))


__all__ = [
    "QueryTableReport", "QuotientClass", "WitnessDemo", "all_subsets",
    "check_alt_bound", "count_distinct_cols", "count_distinct_rows", "expalt_demo",
    "hierarchy_demo", "left_quotient", "profile_of", "profiles_over", "query_matrix",
    "query_table", "quotient_classes", "separating_word", "witness_hierarchy",
    "witness_reverse_membership",
]
