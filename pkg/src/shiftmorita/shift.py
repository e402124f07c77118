"""Transition matrices, the allowed-word language, and follower vectors.

A Markov shift is given by a 0/1 transition matrix over a finite ordered
alphabet; entry (a, b) says whether letter b may follow letter a.  Follower
vectors (bitmasks over the alphabet) are the workhorse encoding everywhere
downstream: the idempotent generated by letters a1..ak acts as the identity
on the words whose first letter lies in row(a1) & ... & row(ak), so the
nonzero AND-closure of the rows indexes the nonzero D-classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Word = tuple[int, ...]


class MatrixFormatError(ValueError):
    """Raised for malformed matrix input text."""


class InvariantViolation(RuntimeError):
    """A structural fact guaranteed by the theory failed to hold."""


@dataclass(frozen=True)
class TransitionMatrix:
    """Ordered alphabet plus one follower bitmask per letter.

    Bit i of every mask refers to ``symbols[i]``; the input order of the
    symbols is authoritative and fixes bit positions for all outputs.
    """

    symbols: tuple[str, ...]
    rows: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.symbols)

    def index(self, letter: str) -> int:
        try:
            return self.symbols.index(letter)
        except ValueError:
            raise ValueError(f"unknown letter {letter!r}") from None

    def letters_of(self, mask: int) -> tuple[str, ...]:
        return tuple(s for i, s in enumerate(self.symbols) if mask >> i & 1)

    def mask_of(self, letters: Iterable[str]) -> int:
        mask = 0
        for s in letters:
            mask |= 1 << self.index(s)
        return mask

    def fmt_vec(self, mask: int) -> str:
        return "{%s}" % ",".join(self.letters_of(mask))

    def fmt_word(self, word: Word) -> str:
        return "".join(self.symbols[i] for i in word) if word else "ε"

    def full_mask(self) -> int:
        return (1 << self.n) - 1


def parse_matrix(text: str) -> TransitionMatrix:
    """Parse the matrix file format; every defect gets its own diagnostic.

    Line 1: whitespace-separated symbols.  Lines 2..n+1: n characters of
    '0'/'1' each (whitespace inside a row is ignored).
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not lines[0].strip():
        raise MatrixFormatError("malformed header: no alphabet line")
    symbols = tuple(lines[0].split())
    seen = set()
    for s in symbols:
        if s in seen:
            raise MatrixFormatError(f"duplicate symbol {s!r} in header")
        seen.add(s)
    n = len(symbols)
    body = [ln for ln in lines[1:]]
    if len(body) != n:
        raise MatrixFormatError(
            f"non-square body: expected {n} rows, got {len(body)}"
        )
    rows = []
    for i, ln in enumerate(body):
        bits = ln.replace(" ", "").replace("\t", "")
        if len(bits) != n:
            raise MatrixFormatError(
                f"non-square body: row {i + 1} has {len(bits)} entries, expected {n}"
            )
        mask = 0
        for j, ch in enumerate(bits):
            if ch == "1":
                mask |= 1 << j
            elif ch != "0":
                raise MatrixFormatError(
                    f"invalid character {ch!r} in row {i + 1}"
                )
        if mask == 0:
            raise MatrixFormatError(f"zero row for symbol {symbols[i]!r}")
        rows.append(mask)
    return TransitionMatrix(symbols, tuple(rows))


def parse_word(T: TransitionMatrix, text: str) -> Word:
    """Read a word as a string of single-character symbols."""
    return tuple(T.index(ch) for ch in text)


def as_word(T: TransitionMatrix, w: "str | Sequence[int]") -> Word:
    if isinstance(w, str):
        return parse_word(T, w)
    word = tuple(w)
    for i in word:
        if not 0 <= i < T.n:
            raise ValueError(f"letter index {i} out of range")
    return word


def word_allowed(T: TransitionMatrix, w: "str | Sequence[int]") -> bool:
    """True iff w is empty or every consecutive transition is permitted."""
    word = as_word(T, w)
    return all(T.rows[a] >> b & 1 for a, b in zip(word, word[1:]))


def follower_of(T: TransitionMatrix, a: "str | int") -> int:
    """The follower vector (row bitmask) of a single letter."""
    i = T.index(a) if isinstance(a, str) else a
    if not 0 <= i < T.n:
        raise ValueError(f"letter index {i} out of range")
    return T.rows[i]


@lru_cache(maxsize=None)
def f_classes(T: TransitionMatrix) -> tuple[int, ...]:
    """All nonzero intersections of rows: the closure of the rows under
    bitwise AND with the zero vector removed.  One entry per nonzero
    D-class of the inverse hull."""
    classes = set(T.rows)
    changed = True
    while changed:
        changed = False
        for u in list(classes):
            for v in list(classes):
                w = u & v
                if w and w not in classes:
                    classes.add(w)
                    changed = True
    return tuple(sorted(classes))


def natural_leq(v1: int, v2: int) -> bool:
    """Subset order on follower vectors (= natural order of their
    idempotents)."""
    return v1 & v2 == v1


def allowed_words(T: TransitionMatrix, maxlen: int) -> list[Word]:
    """All allowed words of length 1..maxlen, shortest first."""
    out: list[Word] = []
    level: list[Word] = [(a,) for a in range(T.n)]
    for _ in range(maxlen):
        if not level:
            break
        out.extend(level)
        level = [
            w + (b,)
            for w in level
            for b in range(T.n)
            if T.rows[w[-1]] >> b & 1
        ]
    return out
