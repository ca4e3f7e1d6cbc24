"""
TOTO formula builders for the interval statistics.

Intervals are passed around as pairs of variables ``(lo, hi)`` meaning
``{lo, ..., hi}``.  A vertex of ``I_k(I)`` is represented by the left point
``u`` of its gap: ``u`` in ``W_k(I)`` and not the largest such point; the gap
is the set of positions strictly between ``u`` and the next point of
``W_k(I)``.  This also covers empty gaps, which a pair of endpoints cannot.

Every builder takes its bound names from one :class:`Fresh` supply, so
outputs are reproducible and free of variable capture.
"""

from __future__ import annotations

__all__ = [
    "Family", "build_zeta", "build_zeta_prefix", "build_j1_witness", "build_k1_witness",
    "build_rho", "build_lambda", "build_vertex", "build_arc", "build_arith",
    "build_even_size", "build_bigger", "build_nonconvergence_phi", "build_omega",
    "build_xi1", "build_xi2", "build_universal_phi", "interval_family",
]

from collections.abc import Callable
from dataclasses import dataclass

from ..logic.formula import (
    EQ, LT1, LT2, And, Atom, Exists, ForAll, Formula, Fresh, Iff, Implies, Not, Or,
    conj, le1,
)
from ..logic.transform import relativize_to_witness, reverse_formula, succ_formula

Mem = Callable[[str], Formula]
Rel = Callable[[str, str], Formula]


def _lt1(a: str, b: str) -> Formula:
    return Atom(LT1, a, b)


def _in(lo: str, hi: str) -> Mem:
    return lambda x: And(le1(lo, x), le1(x, hi))


def _w_member(k: int, i: str, mem: Mem, fresh: Fresh) -> Formula:
    """``i`` in ``W_k(A)`` where ``A`` is given by ``mem``.

    Each of ``p(i) + 1, ..., p(i) + k - 1`` must be the image of a position
    in ``A``; asking for that position to exist also rules out values above ``n``.
    """
    parts = [mem(i)]
    for t in range(1, k):
        c = fresh("c")
        parts.append(Exists(c, And(succ_formula(2, t, i, c, fresh), mem(c))))
    return conj(*parts)


def build_zeta(k: int, i: str = "i", lo: str = "a", hi: str = "b", fresh: Fresh | None = None) -> Formula:
    """Free ``i, lo, hi``: ``i`` in ``W_k({lo..hi})``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    fresh = fresh if fresh is not None else Fresh({i, lo, hi})
    fresh.avoid.update((i, lo, hi))
    return _w_member(k, i, _in(lo, hi), fresh)


def build_zeta_prefix(k: int, i: str = "i", hi: str = "b", fresh: Fresh | None = None) -> Formula:
    """Free ``i, hi``: ``i`` in ``W_k([hi])``."""
    fresh = fresh if fresh is not None else Fresh({i, hi})
    fresh.avoid.update((i, hi))
    return _w_member(k, i, lambda x: le1(x, hi), fresh)


def build_j1_witness(x: str = "x", fresh: Fresh | None = None) -> Formula:
    """Free ``x``; holds exactly at ``x = J1(p)``."""
    fresh = fresh if fresh is not None else Fresh({x})
    fresh.avoid.add(x)
    z1, w, z2 = fresh("z"), fresh("w"), fresh("z")
    has = Exists(z1, build_zeta_prefix(2, z1, x, fresh))
    none_before = ForAll(w, Implies(_lt1(w, x), Not(Exists(z2, build_zeta_prefix(2, z2, w, fresh)))))
    return And(has, none_before)


def build_k1_witness(x: str = "x", fresh: Fresh | None = None) -> Formula:
    """Free ``x``; holds exactly at ``x = K1(p)``: the ``J1`` witness relativised to the ``J1`` prefix."""
    fresh = fresh if fresh is not None else Fresh({x})
    fresh.avoid.add(x)
    xi = build_j1_witness(fresh("x"), fresh)
    return relativize_to_witness(xi, build_j1_witness(x, fresh), fresh)


def build_rho(fresh: Fresh | None = None) -> Formula:
    """Sentence true iff ``p(1) > p(n)``."""
    fresh = fresh if fresh is not None else Fresh()
    x, y, w1, w2 = fresh("x"), fresh("y"), fresh("w"), fresh("w")
    first = Not(Exists(w1, _lt1(w1, x)))
    last = Not(Exists(w2, _lt1(y, w2)))
    return Exists(x, Exists(y, conj(first, last, Atom(LT2, y, x))))


def build_lambda(y: str = "y", fresh: Fresh | None = None) -> Formula:
    """Free ``y``: ``y + 1`` is the position of the value 1."""
    fresh = fresh if fresh is not None else Fresh({y})
    fresh.avoid.add(y)
    z, w = fresh("z"), fresh("w")
    return Exists(z, And(succ_formula(1, 1, y, z, fresh), Not(Exists(w, Atom(LT2, w, z)))))


# ----------------------------------------------------------------------------
# vertex families and induced digraphs


@dataclass
class Family:
    """An ordered vertex set given by formulas.

    ``vertex(u)`` says that ``u`` names a vertex (vertices are ordered by
    ``<1`` on their names) and ``gap(u)`` returns the membership formula of
    the interval of positions belonging to vertex ``u``.
    """

    vertex: Mem
    gap: Callable[[str], Mem]


def interval_family(k: int, lo: str, hi: str, fresh: Fresh) -> Family:
    """Vertices of ``I_k({lo..hi})``."""
    mem = _in(lo, hi)

    def in_w(i: str) -> Formula:
        return _w_member(k, i, mem, fresh)

    def next_w(u: str, v: str) -> Formula:
        t = fresh("t")
        between = Exists(t, conj(_lt1(u, t), _lt1(t, v), in_w(t)))
        return conj(_lt1(u, v), in_w(v), Not(between))

    def vertex(u: str) -> Formula:
        v = fresh("v")
        return And(in_w(u), Exists(v, And(_lt1(u, v), in_w(v))))

    def gap(u: str) -> Mem:
        def mem_gap(x: str) -> Formula:
            v = fresh("v")
            return Exists(v, conj(next_w(u, v), _lt1(u, x), _lt1(x, v)))

        return mem_gap

    return Family(vertex, gap)


def _union(f1: Family, f2: Family) -> Family:
    """Concatenated family; the two underlying intervals are assumed disjoint."""

    def vertex(u: str) -> Formula:
        return Or(f1.vertex(u), f2.vertex(u))

    def gap(u: str) -> Mem:
        return lambda x: Or(And(f1.vertex(u), f1.gap(u)(x)), And(f2.vertex(u), f2.gap(u)(x)))

    return Family(vertex, gap)


def _y_value(y: str, mem_a: Mem, mem_b: Mem, fresh: Fresh) -> Formula:
    """``y = y(A, B)``."""
    x, x2, y2 = fresh("x"), fresh("x"), fresh("y")
    earlier = Exists(x2, conj(_lt1(x2, x), mem_a(x2), Exists(y2, And(succ_formula(2, 1, x2, y2, fresh), mem_b(y2)))))
    return Exists(x, conj(mem_a(x), succ_formula(2, 1, x, y, fresh), mem_b(y), Not(earlier)))


def _edge(u1: str, u2: str, fam: Family, mem_j: Mem, fresh: Fresh) -> Formula:
    """``e(Ical; J) = (u1, u2)`` with ``u1 != u2`` (loops are dropped)."""
    v0, ys = fresh("v"), fresh("y")
    all_defined = ForAll(v0, Implies(fam.vertex(v0), Exists(ys, _y_value(ys, fam.gap(v0), mem_j, fresh))))

    def extreme(u: str, smallest: bool) -> Formula:
        y1, v, y = fresh("y"), fresh("v"), fresh("y")
        bound = le1(y1, y) if smallest else le1(y, y1)
        others = ForAll(v, ForAll(y, Implies(And(fam.vertex(v), _y_value(y, fam.gap(v), mem_j, fresh)), bound)))
        return Exists(y1, And(_y_value(y1, fam.gap(u), mem_j, fresh), others))

    return conj(
        fam.vertex(u1), fam.vertex(u2), Not(Atom(EQ, u1, u2)), all_defined,
        extreme(u1, True), extreme(u2, False),
    )


def _arc(fam: Family, jfam: Family, fresh: Fresh) -> Rel:
    """Arc relation of ``H(fam; jfam)``."""

    def arc(u1: str, u2: str) -> Formula:
        w = fresh("u")
        return Exists(w, And(jfam.vertex(w), _edge(u1, u2, fam, jfam.gap(w), fresh)))

    return arc


def build_vertex(k: int, u: str = "u", lo: str = "a", hi: str = "b", fresh: Fresh | None = None) -> Formula:
    """Free ``u, lo, hi``: ``u`` is the left point of a gap of ``I_k({lo..hi})``."""
    fresh = fresh if fresh is not None else Fresh({u, lo, hi})
    fresh.avoid.update((u, lo, hi))
    return interval_family(k, lo, hi, fresh).vertex(u)


def build_arc(k: int, u1: str = "u", u2: str = "v", i_lo: str = "a", i_hi: str = "b",
              j_lo: str = "c", j_hi: str = "d", fresh: Fresh | None = None) -> Formula:
    """Free ``u1, u2`` and the interval ends: arc ``u1 -> u2`` of ``H(I_k(I); I_k(J))``."""
    names = {u1, u2, i_lo, i_hi, j_lo, j_hi}
    fresh = fresh if fresh is not None else Fresh(set(names))
    fresh.avoid.update(names)
    fam = interval_family(k, i_lo, i_hi, fresh)
    jfam = interval_family(k, j_lo, j_hi, fresh)
    return _arc(fam, jfam, fresh)(u1, u2)


# ----------------------------------------------------------------------------
# arithmetic on an ordered family


@dataclass
class _Order:
    fam: Family
    fresh: Fresh

    def first(self, u: str) -> Formula:
        t = self.fresh("t")
        return And(self.fam.vertex(u), Not(Exists(t, And(self.fam.vertex(t), _lt1(t, u)))))

    def last(self, u: str) -> Formula:
        t = self.fresh("t")
        return And(self.fam.vertex(u), Not(Exists(t, And(self.fam.vertex(t), _lt1(u, t)))))

    def succ(self, u: str, v: str) -> Formula:
        t = self.fresh("t")
        between = Exists(t, conj(self.fam.vertex(t), _lt1(u, t), _lt1(t, v)))
        return conj(self.fam.vertex(u), self.fam.vertex(v), _lt1(u, v), Not(between))

    def succ2(self, u: str, v: str) -> Formula:
        t = self.fresh("t")
        return Exists(t, And(self.succ(u, t), self.succ(t, v)))

    def second(self, v: str) -> Formula:
        u = self.fresh("t")
        return Exists(u, And(self.first(u), self.succ(u, v)))


def _recursion(o: _Order, arc: Rel, step: Rel) -> Formula:
    """``arc(1, j) <-> j = 2`` and ``(arc(i, j) & i != 1) <-> exists i', j' (i' + 1 = i & step(j', j) & arc(i', j'))``."""
    f = o.fresh
    i, j, i2, j2 = f("i"), f("j"), f("i"), f("j")
    base = Implies(o.first(i), Iff(arc(i, j), o.second(j)))
    back = Exists(i2, Exists(j2, conj(o.succ(i2, i), o.fam.vertex(j2), step(j2, j), arc(i2, j2))))
    inductive = Iff(And(arc(i, j), Not(o.first(i))), back)
    return ForAll(i, ForAll(j, Implies(And(o.fam.vertex(i), o.fam.vertex(j)), And(base, inductive))))


def build_arith(fam: Family, arcs: tuple[Rel, Rel, Rel, Rel], fresh: Fresh) -> Formula:
    """The four arcs relations encode ``2i``, ``2**i``, ``T(i)``, ``W(i)`` on the ordered family."""
    o = _Order(fam, fresh)
    d, e, t, w = arcs
    return conj(_recursion(o, d, o.succ2), _recursion(o, e, d), _recursion(o, t, e), _recursion(o, w, t))


def build_even_size(fam: Family, arcs: tuple[Rel, Rel, Rel, Rel], fresh: Fresh) -> Formula:
    """Given correct arithmetic arcs, ``log** log** |family|`` is even."""
    o = _Order(fam, fresh)
    d, _, _, w = arcs

    def triple(x: str, y: str, z: str) -> Formula:
        return conj(fam.vertex(x), fam.vertex(y), fam.vertex(z), w(y, x), w(z, y))

    def z_even(z: str) -> Formula:
        v = fresh("w")
        return Exists(v, And(fam.vertex(v), d(v, z)))

    x, y, z = fresh("x"), fresh("y"), fresh("z")
    x2, y2, z2 = fresh("x"), fresh("y"), fresh("z")
    largest = Not(Exists(x2, Exists(y2, Exists(z2, And(triple(x2, y2, z2), _lt1(x, x2))))))
    parity = Or(And(o.last(x), z_even(z)), And(Not(o.last(x)), Not(z_even(z))))
    with_triple = Exists(x, Exists(y, Exists(z, conj(triple(x, y, z), largest, parity))))
    x3, y3, z3 = fresh("x"), fresh("y"), fresh("z")
    a, b, c = fresh("t"), fresh("t"), fresh("t")
    no_triple = Not(Exists(x3, Exists(y3, Exists(z3, triple(x3, y3, z3)))))
    third = Exists(a, Exists(b, Exists(c, conj(fam.vertex(a), fam.vertex(b), fam.vertex(c), _lt1(a, b), _lt1(b, c)))))
    return Or(with_triple, And(no_triple, Not(third)))


def build_bigger(k: int, i_lo: str, i_hi: str, i2_lo: str, i2_hi: str, fresh: Fresh) -> Formula:
    """``|I_k(I)| > |I_k(I')|`` witnessed by an interval ``J``: in
    ``H((I_k(I), I_k(I')); I_k(J))`` every ``I'``-vertex has out-degree one,
    every ``I``-vertex in-degree at most one, some ``I``-vertex in-degree zero,
    and every arc runs from ``I'`` to ``I``.
    """
    fam_a = interval_family(k, i_lo, i_hi, fresh)
    fam_b = interval_family(k, i2_lo, i2_hi, fresh)
    both = _union(fam_a, fam_b)
    disjoint = Or(_lt1(i_hi, i2_lo), _lt1(i2_hi, i_lo))
    c, d = fresh("c"), fresh("d")
    arc = _arc(both, interval_family(k, c, d, fresh), fresh)
    u, v, v2 = fresh("u"), fresh("v"), fresh("v")
    out_one = ForAll(u, Implies(fam_b.vertex(u), And(
        Exists(v, arc(u, v)),
        ForAll(v, ForAll(v2, Implies(And(arc(u, v), arc(u, v2)), Atom(EQ, v, v2)))),
    )))
    u, v, v2 = fresh("u"), fresh("v"), fresh("v")
    in_le_one = ForAll(u, Implies(fam_a.vertex(u), ForAll(v, ForAll(v2, Implies(
        And(arc(v, u), arc(v2, u)), Atom(EQ, v, v2))))))
    u, v = fresh("u"), fresh("v")
    free_a = Exists(u, And(fam_a.vertex(u), Not(Exists(v, arc(v, u)))))
    u, v = fresh("u"), fresh("v")
    direction = ForAll(u, ForAll(v, Implies(arc(u, v), And(fam_b.vertex(u), fam_a.vertex(v)))))
    return And(disjoint, Exists(c, Exists(d, conj(out_one, in_le_one, free_a, direction))))


def _certified(k: int, ends: list[str], fresh: Fresh) -> tuple[Formula, Family, tuple[Rel, ...]]:
    """Conditions shared by the two halves of the sentence for ``I = (ends[0], ends[1])``
    and arithmetic intervals ``ends[2:]``: ``w_{k+1}(I) = 0``, every gap meets
    ``W_{k-1}``, and the four induced graphs satisfy the arithmetic recursions."""
    lo, hi = ends[0], ends[1]
    fam = interval_family(k, lo, hi, fresh)
    i = fresh("i")
    no_k1 = Not(Exists(i, _w_member(k + 1, i, _in(lo, hi), fresh)))
    u, i2 = fresh("u"), fresh("i")
    gaps_ok = ForAll(u, Implies(fam.vertex(u), Exists(i2, _w_member(k - 1, i2, fam.gap(u), fresh))))
    arcs = tuple(_arc(fam, interval_family(k, ends[2 + 2 * g], ends[3 + 2 * g], fresh), fresh) for g in range(4))
    return And(no_k1, gaps_ok), fam, arcs


def build_nonconvergence_phi(k: int, fresh: Fresh | None = None) -> Formula:
    """``exists x1 y1 .. x5 y5 (phi0 & forall x6 y6 .. x10 y10 (phi1 -> phi2))``.

    ``phi0``: the first five intervals certify that ``log** log** |I_k(I)|``
    is even; ``phi1``: the last five certify that ``log** log** |I_k(I')|`` is
    odd; ``phi2``: ``I_k(I)`` is bigger than ``I_k(I')``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    fresh = fresh if fresh is not None else Fresh()
    outer = [fresh(s) for g in range(5) for s in ("x", "y")]
    inner = [fresh(s) for g in range(5) for s in ("x", "y")]
    base0, fam0, arcs0 = _certified(k, outer, fresh)
    phi0 = conj(base0, build_arith(fam0, arcs0, fresh), build_even_size(fam0, arcs0, fresh))
    base1, fam1, arcs1 = _certified(k, inner, fresh)
    phi1 = conj(base1, build_arith(fam1, arcs1, fresh), Not(build_even_size(fam1, arcs1, fresh)))
    phi2 = build_bigger(k, outer[0], outer[1], inner[0], inner[1], fresh)
    body = ForAll(inner[0], Implies(phi1, phi2))
    for v in reversed(inner[1:]):
        body = ForAll(v, body)
    body = Exists(outer[-1], And(phi0, body))
    for v in reversed(outer[:-1]):
        body = Exists(v, body)
    return body


def build_omega(k: int, fresh: Fresh | None = None) -> Formula:
    """``exists z (psi(z) & phi_le(z))``: the non-convergence sentence read on the ``K1`` prefix."""
    fresh = fresh if fresh is not None else Fresh()
    psi = build_k1_witness(fresh("x"), fresh)
    return relativize_to_witness(psi, build_nonconvergence_phi(k, fresh), fresh)


def build_xi1(k: int, fresh: Fresh | None = None) -> Formula:
    """``exists z (lambda(z) & omega_le(z))``: ``omega`` on the prefix before the value 1."""
    fresh = fresh if fresh is not None else Fresh()
    lam = build_lambda(fresh("y"), fresh)
    return relativize_to_witness(lam, build_omega(k, fresh), fresh)


def build_xi2(k: int, fresh: Fresh | None = None) -> Formula:
    return reverse_formula(build_xi1(k, fresh))


def build_universal_phi(k: int) -> Formula:
    """``(rho -> xi2) & (~rho -> xi1)``."""
    fresh = Fresh()
    rho = build_rho(fresh)
    xi1 = build_xi1(k, fresh)
    xi2 = reverse_formula(xi1)
    return And(Implies(rho, xi2), Implies(Not(rho), xi1))

