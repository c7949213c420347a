"""Alphabets and words.

A word is a plain ``tuple`` of letter ids; ids are dense ``0..k-1`` and each
letter has a one-character display symbol used for parsing and printing
(``#`` stands for the separator, ``*`` for the padding letter).
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import product

from osc.errors import ContractError, InputError

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    symbols: str
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.symbols:
            raise InputError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise InputError(f"duplicate display symbols in {self.symbols!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.symbols)})

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def letter(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise InputError(f"letter {symbol!r} not in alphabet {self.symbols!r}") from None

    def parse(self, text: str) -> Word:
        return tuple(self.letter(ch) for ch in text)

    def render(self, word: Word) -> str:
        return "".join(self.symbols[i] for i in word)

    def word(self, w: str | Word) -> Word:
        """Coerce a display string or id tuple to a checked word."""
        if isinstance(w, str):
            return self.parse(w)
        w = tuple(w)
        self.check(w)
        return w

    def check(self, word: Word) -> None:
        k = len(self.symbols)
        for x in word:
            if not (0 <= x < k):
                raise ContractError(f"letter id {x!r} outside alphabet {self.symbols!r}")

    def words(self, max_len: int) -> Iterator[Word]:
        """All words of length at most ``max_len`` in length-lexicographic order."""
        for n in range(max_len + 1):
            yield from product(range(len(self.symbols)), repeat=n)

    def words_of_length(self, n: int) -> Iterator[Word]:
        return product(range(len(self.symbols)), repeat=n)

    def count_upto(self, n: int) -> int:
        """``|A^{<=n}|``."""
        k = len(self.symbols)
        if k == 1:
            return n + 1
        return (k ** (n + 1) - 1) // (k - 1)


def length_lex_key(word: Word) -> tuple[int, Word]:
    return (len(word), word)


BINARY = Alphabet("01")
SEPARATED = Alphabet("01#")
PADDED = Alphabet("01#*")
AB = Alphabet("ab")
