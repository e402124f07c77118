"""Idempotents of the Morita-equivalent triple semigroup and the
combinatorial data CD.

A diagonal triple [u, g, u] pairs a nonzero D-class u with a hull
idempotent g below u's representative; two triples are the same element
exactly when the middles agree and the outer classes have nonzero meet, so
each element is stored with the least class that represents it.  Products
insert the representative of the meet between the middles.

CD consists of the class representatives themselves plus the guarded
covers [b, f, b]; it is closed under products, its guarded covers are
exactly its primitive idempotents, and a D-class preserving isomorphism of
two CDs is what the decision procedure's graph search must agree with.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core_order import CoreOrder, cached_order
from .hull import (
    HullIdempotent,
    base_idem,
    covers_below,
    dclass_rep,
    enumerate_idems,
    fmt_idem,
    idem_leq,
    idem_product,
)
from .shift import InvariantViolation, TransitionMatrix


@dataclass(frozen=True)
class SIdem:
    """Canonical form of a diagonal triple [u, g, u]; zero is None."""

    u: int
    g: HullIdempotent

    def key(self) -> tuple:
        return (self.u, self.g.key())


def make_sidem(
    T: TransitionMatrix, order: CoreOrder, u: int, g: "HullIdempotent | None"
) -> "SIdem | None":
    """Normalize [u, g, u] to its least equivalent outer class.

    Valid classes for the middle g are those whose representative sits
    above g; the equality class of [u, g, u] is closed under meets, so the
    fold of the connected valid classes is the canonical representative.
    """
    if g is None:
        return None
    if len(g.word) > 1:
        raise ValueError("middles are restricted to word length <= 1")
    if u not in order.classes or not idem_leq(T, g, base_idem(T, u)):
        raise ValueError("middle does not sit below the outer class")
    valid = [
        v for v in order.classes if idem_leq(T, g, base_idem(T, v))
    ]
    group = {u}
    changed = True
    while changed:
        changed = False
        for v in valid:
            if v not in group and any(
                order.meet(v, w) is not None for w in group
            ):
                group.add(v)
                changed = True
    least = None
    for v in group:
        least = v if least is None else order.meet(least, v)
        if least is None:
            raise InvariantViolation("equality class of a triple has no meet")
    assert least in group and idem_leq(T, g, base_idem(T, least))
    return SIdem(least, g)


def sidem_equal(x: "SIdem | None", y: "SIdem | None", order: CoreOrder) -> bool:
    """s = t with both outer meets nonzero, or both zero."""
    if x is None or y is None:
        return x is None and y is None
    return x.g == y.g and order.meet(x.u, y.u) is not None


def sidem_leq(
    T: TransitionMatrix, order: CoreOrder, x: "SIdem | None", y: "SIdem | None"
) -> bool:
    if x is None:
        return True
    if y is None:
        return False
    return idem_leq(T, x.g, y.g) and order.meet(x.u, y.u) is not None


def sidem_product(
    T: TransitionMatrix, order: CoreOrder, x: "SIdem | None", y: "SIdem | None"
) -> "SIdem | None":
    """[u, g e_{u^v} h, v], renormalized; zero when anything collapses."""
    if x is None or y is None:
        return None
    m = order.meet(x.u, y.u)
    if m is None:
        return None
    mid = idem_product(T, idem_product(T, x.g, base_idem(T, m)), y.g)
    if mid is None:
        return None
    return make_sidem(T, order, m, mid)


class CDSet:
    """C (class representatives) and Cll (guarded covers) with products."""

    def __init__(self, T: TransitionMatrix):
        self.matrix = T
        self.order = cached_order(T)
        order = self.order
        self.C: tuple[SIdem, ...] = tuple(
            sorted(
                (make_sidem(T, order, v, base_idem(T, v)) for v in order.classes),
                key=SIdem.key,
            )
        )
        cll: list[SIdem] = []
        for b in order.classes:
            for f in covers_below(T, b):
                if f.word == () and order.leq(f.vec, b):
                    continue
                s = make_sidem(T, order, b, f)
                assert s.u == b, "guarded covers canonicalize to their own class"
                cll.append(s)
        self.Cll: tuple[SIdem, ...] = tuple(sorted(cll, key=SIdem.key))
        for x in self.C:
            assert x.u == dclass_rep(x.g) == x.g.vec
        if set(self.C) & set(self.Cll):
            raise InvariantViolation("C and Cll are not disjoint")
        self.elements: tuple[SIdem, ...] = self.C + self.Cll

    def product(self, x: "SIdem | None", y: "SIdem | None") -> "SIdem | None":
        p = sidem_product(self.matrix, self.order, x, y)
        if p is not None and p not in self.elements:
            raise InvariantViolation(
                f"CD is not closed under products: {self.fmt(x)} * {self.fmt(y)}"
            )
        return p

    def dtag(self, x: SIdem) -> int:
        """The D-class of a CD element, read off its middle."""
        return dclass_rep(x.g)

    def fmt(self, x: "SIdem | None") -> str:
        if x is None:
            return "0"
        T = self.matrix
        return f"[{T.fmt_vec(x.u)},{fmt_idem(T, x.g)}]"


def build_cd(T: TransitionMatrix) -> CDSet:
    return CDSet(T)


def coherent_check(T: TransitionMatrix) -> bool:
    """Verify that the class representatives form a coherent set: closed
    under products, interval-closed, and absorbing products of incomparable
    covers."""
    order = cached_order(T)
    cd = CDSet(T)
    cset = set(cd.C)

    def in_c(x: "SIdem | None") -> bool:
        return x is not None and any(
            sidem_equal(x, c, order) for c in cset
        )

    # (1) products of representatives stay representatives
    for x in cd.C:
        for y in cd.C:
            p = sidem_product(T, order, x, y)
            if p is not None and not in_c(p):
                return False

    # (2) interval closure over every diagonal triple with short middles
    all_sidems = {
        make_sidem(T, order, u, g)
        for u in order.classes
        for g in enumerate_idems(T, 1)
        if idem_leq(T, g, base_idem(T, u))
    }
    for f in all_sidems:
        if in_c(f):
            continue
        for lo in cd.C:
            for hi in cd.C:
                if sidem_leq(T, order, lo, f) and sidem_leq(T, order, f, hi):
                    return False

    # (3) products of incomparable covers of a representative land in C
    for v in order.classes:
        covers = [make_sidem(T, order, v, g) for g in covers_below(T, v)]
        for f, g in combinations(covers, 2):
            if sidem_leq(T, order, f, g) or sidem_leq(T, order, g, f):
                continue
            p = sidem_product(T, order, f, g)
            if p is not None and not in_c(p):
                return False
    return True


def cd_isomorphic(cd1: CDSet, cd2: CDSet) -> "dict | None":
    """Search for a D-class preserving isomorphism CD1 -> CD2.

    The class bijection must be an order isomorphism and carry the guarded
    covers grouped by (outer class, D-class) onto matching groups; any such
    data determines the map, which is then re-verified on the full product
    table before being returned.
    """
    o1, o2 = cd1.order, cd2.order
    if len(o1.classes) != len(o2.classes) or len(cd1.Cll) != len(cd2.Cll):
        return None

    def groups(cd: CDSet) -> dict[tuple[int, int], list[SIdem]]:
        out: dict[tuple[int, int], list[SIdem]] = {}
        for x in cd.Cll:
            out.setdefault((x.u, cd.dtag(x)), []).append(x)
        for g in out.values():
            g.sort(key=SIdem.key)
        return out

    g1, g2 = groups(cd1), groups(cd2)

    def profile(order: CoreOrder, grp, v: int) -> tuple:
        return (
            sum(order.leq(w, v) for w in order.classes),
            sum(order.leq(v, w) for w in order.classes),
            sum(len(g) for (u, _), g in grp.items() if u == v),
        )

    cands = {
        a: [
            b
            for b in o2.classes
            if profile(o1, g1, a) == profile(o2, g2, b)
        ]
        for a in o1.classes
    }
    if any(not c for c in cands.values()):
        return None

    def extend(i: int, sigma: dict[int, int], used: set[int]) -> "dict | None":
        if i == len(o1.classes):
            return _assemble_and_verify(cd1, cd2, sigma, g1, g2)
        a = o1.classes[i]
        for b in cands[a]:
            if b in used:
                continue
            if any(
                o1.leq(a, c) != o2.leq(b, sigma[c])
                or o1.leq(c, a) != o2.leq(sigma[c], b)
                for c in sigma
            ):
                continue
            if len(g1.get((a, a), ())) != len(g2.get((b, b), ())) or any(
                len(g1.get((a, c), ())) != len(g2.get((b, sigma[c]), ()))
                or len(g1.get((c, a), ())) != len(g2.get((sigma[c], b), ()))
                for c in sigma
            ):
                continue
            sigma[a] = b
            found = extend(i + 1, sigma, used | {b})
            if found is not None:
                return found
            del sigma[a]
        return None

    return extend(0, {}, set())


def _assemble_and_verify(cd1, cd2, sigma, g1, g2) -> "dict | None":
    pi: dict[SIdem, SIdem] = {}
    for c1 in cd1.C:
        pi[c1] = make_sidem(
            cd2.matrix, cd2.order, sigma[c1.u], base_idem(cd2.matrix, sigma[c1.u])
        )
    for (a, d), elems in g1.items():
        partners = g2.get((sigma[a], sigma[d]), [])
        if len(partners) != len(elems):
            return None
        for x, y in zip(elems, partners):
            pi[x] = y
    if len(set(pi.values())) != len(pi):
        return None
    for x in cd1.elements:
        if sigma[cd1.dtag(x)] != cd2.dtag(pi[x]):
            return None
        for y in cd1.elements:
            p = cd1.product(x, y)
            q = cd2.product(pi[x], pi[y])
            if (pi[p] if p is not None else None) != q:
                return None
    return {"classes": dict(sigma), "elements": pi}
