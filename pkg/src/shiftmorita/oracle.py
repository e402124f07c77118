"""Truncated partial-bijection oracle for the inverse hull.

The hull is generated by the prepend maps theta_a : w -> aw on allowed
words.  Truncating the language at a fixed depth N makes every generator a
finite partial injection, so arbitrary generator words can be evaluated by
literal composition and compared pointwise.  Compositions that would push a
word beyond length N drop it from the graph; equality of truncated maps is
only ever asserted between maps built at the same depth.

This module is the validation side of the hull: the canonical-form algebra
in ``hull`` is checked against it, never the other way round.
"""

from __future__ import annotations

from .hull import HullIdempotent, fclass_witness
from .shift import TransitionMatrix, Word, allowed_words

# A generator token: (letter index, +1) is theta_a, (letter index, -1) its
# inverse.  A generator word [g1, g2, ..., gk] denotes g1 o g2 o ... o gk,
# i.e. the rightmost token applies first.
GenWord = list[tuple[int, int]]

PartialMap = dict[Word, Word]


def compose(f: PartialMap, g: PartialMap) -> PartialMap:
    """f o g restricted to where both sides are defined."""
    return {x: f[y] for x, y in g.items() if y in f}


class Oracle:
    """Generator maps of one matrix at one truncation depth, with caches."""

    def __init__(self, T: TransitionMatrix, depth: int):
        if depth < 2:
            raise ValueError("oracle depth must be >= 2")
        self.T = T
        self.depth = depth
        self.words = allowed_words(T, depth)
        self._theta: dict[int, PartialMap] = {}
        self._theta_inv: dict[int, PartialMap] = {}
        for a in range(T.n):
            fwd = {
                w: (a,) + w
                for w in self.words
                if len(w) < depth and T.rows[a] >> w[0] & 1
            }
            self._theta[a] = fwd
            self._theta_inv[a] = {v: w for w, v in fwd.items()}
        self._prefix_cache: dict[Word, tuple[PartialMap, PartialMap]] = {}
        self._fclass_cache: dict[int, PartialMap] = {}

    def theta(self, a: int) -> PartialMap:
        return self._theta[a]

    def theta_inv(self, a: int) -> PartialMap:
        return self._theta_inv[a]

    def identity(self) -> PartialMap:
        return {w: w for w in self.words}

    def eval(self, expr: GenWord) -> PartialMap:
        """Evaluate a formal word in the generators by composition."""
        if not expr:
            return self.identity()
        maps = [self._theta[a] if s > 0 else self._theta_inv[a] for a, s in expr]
        cur = maps[-1]
        for m in reversed(maps[:-1]):
            cur = compose(m, cur)
        return cur

    def idem_expr(self, e: HullIdempotent) -> GenWord:
        """Canonical generator word theta_w (prod theta_x^-1 theta_x) theta_w^-1."""
        witness = fclass_witness(self.T, e.vec)
        expr: GenWord = [(a, +1) for a in e.word]
        for x in witness:
            expr += [(x, -1), (x, +1)]
        expr += [(a, -1) for a in reversed(e.word)]
        return expr

    def _word_maps(self, word: Word) -> tuple[PartialMap, PartialMap]:
        """(theta_word, theta_word^-1) as honest compositions, cached."""
        if word not in self._prefix_cache:
            if not word:
                raise KeyError("empty word has no generator map")
            if len(word) == 1:
                pair = (self._theta[word[0]], self._theta_inv[word[0]])
            else:
                head_fwd, head_inv = self._word_maps(word[:-1])
                pair = (
                    compose(head_fwd, self._theta[word[-1]]),
                    compose(self._theta_inv[word[-1]], head_inv),
                )
            self._prefix_cache[word] = pair
        return self._prefix_cache[word]

    def fclass_map(self, vec: int) -> PartialMap:
        """Map of the depth-0 idempotent with follower vector ``vec``."""
        if vec not in self._fclass_cache:
            expr: GenWord = []
            for x in fclass_witness(self.T, vec):
                expr += [(x, -1), (x, +1)]
            self._fclass_cache[vec] = self.eval(expr)
        return self._fclass_cache[vec]

    def idem_map(self, e: HullIdempotent) -> PartialMap:
        """Truncated map of a canonical idempotent, composed from caches."""
        core = self.fclass_map(e.vec)
        if not e.word:
            return core
        fwd, inv = self._word_maps(e.word)
        return compose(fwd, compose(core, inv))

    def predicted_domain(self, e: HullIdempotent) -> set[Word]:
        """{w.t : t allowed, first(t) in vec} under the truncation rule.

        Evaluating the canonical generator word lifts the tail t to x.t for
        each witness letter x, so tails of length depth survive only up to
        depth - 1; the composed map cannot contain them and neither does
        the prediction.
        """
        k = len(e.word)
        return {
            x
            for x in self.words
            if len(x) > k
            and x[:k] == e.word
            and e.vec >> x[k] & 1
            and len(x) - k <= self.depth - 1
        }

    def matches(self, e: HullIdempotent) -> bool:
        """True iff the composed generator word is the identity on exactly
        the predicted domain (within the truncation)."""
        if self.depth < len(e.word) + 2:
            raise ValueError(
                f"depth {self.depth} too small for |word| = {len(e.word)}"
            )
        m = self.idem_map(e)
        if any(x != y for x, y in m.items()):
            return False
        return set(m) == self.predicted_domain(e)

    def clip(self, m: PartialMap) -> PartialMap:
        """Restrict a map to words of length <= depth - 1.

        Every idempotent map is complete down to that length regardless of
        its word length, so clipped maps are exact truncations of the true
        partial bijections and may be compared or composed freely.
        """
        lim = self.depth - 1
        return {x: y for x, y in m.items() if len(x) <= lim and len(y) <= lim}


def oracle_build(T: TransitionMatrix, depth: int) -> dict[int, PartialMap]:
    """Per-letter prepend maps, truncated at ``depth``."""
    return dict(Oracle(T, depth)._theta)


def oracle_eval(T: TransitionMatrix, expr: GenWord, depth: int) -> PartialMap:
    return Oracle(T, depth).eval(expr)


def oracle_matches(T: TransitionMatrix, e: HullIdempotent, depth: int) -> bool:
    return Oracle(T, depth).matches(e)


def dump_map(T: TransitionMatrix, m: PartialMap) -> str:
    """Sorted ``input -> output`` lines, for golden tests."""
    lines = [
        f"{T.fmt_word(x)} -> {T.fmt_word(y)}"
        for x, y in sorted(m.items())
    ]
    return "\n".join(lines)
