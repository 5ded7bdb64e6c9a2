"""Finite groups as explicit multiplication tables, plus group actions.

Elements of a group of order n are the integers 0..n-1.  ``table[a][b]`` is
the product a*b, so ``table[a][table[b][x]] == table[table[a][b]][x]`` and
actions below are left actions: ``act(a, act(b, x)) == act(a*b, x)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

__all__ = [
    "FiniteGroup",
    "GroupAction",
    "validate_group",
    "validate_action",
    "trivial_group",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "direct_product",
    "from_permutations",
    "gl2_f2",
    "gl2_f2_upper_triangular",
    "subgroup_closure",
    "is_subgroup",
    "is_normal",
    "induced_subgroup",
    "quotient_group",
    "is_automorphism",
    "is_involutive_automorphism",
    "identity_automorphism",
    "inversion_automorphism",
    "conjugation_automorphism",
    "left_multiplication_action",
    "trivial_point_action",
    "orbits_under",
]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table."""

    table: tuple[tuple[int, ...], ...]
    identity: int
    inv_table: tuple[int, ...]
    name: str = field(default="G", compare=False)
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return f"g{a}"

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


def validate_group(g: FiniteGroup) -> list[str]:
    """Group axioms as a report; empty means valid."""
    n = g.order
    report = []
    if len(g.inv_table) != n:
        report.append(f"shape: inv table has length {len(g.inv_table)}, expected {n}")
        return report
    for a in range(n):
        if len(g.table[a]) != n:
            report.append(f"shape: row {a} has length {len(g.table[a])}")
            return report
        for b in range(n):
            if not 0 <= g.table[a][b] < n:
                report.append(f"shape: entry ({a},{b}) out of range")
                return report
    if not 0 <= g.identity < n:
        report.append("shape: identity out of range")
        return report
    for a in range(n):
        if g.mul(g.identity, a) != a or g.mul(a, g.identity) != a:
            report.append(f"identity: {a} is not fixed by the identity")
    for a in range(n):
        if g.mul(a, g.inv(a)) != g.identity or g.mul(g.inv(a), a) != g.identity:
            report.append(f"inverse: inv({a}) is not a two-sided inverse")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
                    report.append(f"associativity: ({a},{b},{c})")
    return report


def _from_table(table, name, labels=None) -> FiniteGroup:
    n = len(table)
    identity = None
    for e in range(n):
        if all(table[e][a] == a for a in range(n)) and all(table[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise ValueError("table has no identity element")
    inv = []
    for a in range(n):
        hits = [b for b in range(n) if table[a][b] == identity and table[b][a] == identity]
        if len(hits) != 1:
            raise ValueError(f"element {a} has no unique inverse")
        inv.append(hits[0])
    return FiniteGroup(
        table=tuple(tuple(row) for row in table),
        identity=identity,
        inv_table=tuple(inv),
        name=name,
        labels=None if labels is None else tuple(labels),
    )


def trivial_group() -> FiniteGroup:
    return FiniteGroup(table=((0,),), identity=0, inv_table=(0,), name="1", labels=("e",))


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    labels = tuple(str(a) for a in range(n))
    return FiniteGroup(table=table, identity=0, inv_table=inv, name=f"C{n}", labels=labels)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n.  Element 2k is r^k, 2k+1 is r^k s."""
    if n < 1:
        raise ValueError("n must be positive")

    def enc(k, s):
        return 2 * (k % n) + s

    table = []
    for a in range(2 * n):
        k1, s1 = a // 2, a % 2
        row = []
        for b in range(2 * n):
            k2, s2 = b // 2, b % 2
            # r^k1 s^s1 . r^k2 s^s2 = r^(k1 + (-1)^s1 k2) s^(s1+s2)
            k = k1 + (k2 if s1 == 0 else -k2)
            row.append(enc(k, (s1 + s2) % 2))
        table.append(tuple(row))
    labels = []
    for a in range(2 * n):
        k, s = a // 2, a % 2
        word = ("" if k == 0 else "r" if k == 1 else f"r{k}") + ("s" if s else "")
        labels.append(word or "e")
    g = _from_table(table, f"D{n}", labels)
    return g


def _perm_label(p: tuple[int, ...]) -> str:
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        cycles.append("(" + "".join(str(i) for i in cyc) + ")")
    return "".join(cycles) or "e"


def symmetric_group(n: int) -> FiniteGroup:
    """All permutations of 0..n-1 in lexicographic order; product p*q applies q first."""
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms
    )
    labels = tuple(_perm_label(p) for p in perms)
    return _from_table(table, f"S{n}", labels)


def from_permutations(degree: int, generators: Sequence[Sequence[int]], name: str = "P") -> FiniteGroup:
    """Close a set of permutations (one-line image notation) under composition."""
    gens = []
    for p in generators:
        p = tuple(p)
        if sorted(p) != list(range(degree)):
            raise ValueError(f"not a permutation of 0..{degree - 1}: {p}")
        gens.append(p)
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                r = tuple(p[q[i]] for i in range(degree))
                if r not in elems:
                    elems.add(r)
                    nxt.append(r)
        frontier = nxt
    ordered = sorted(elems)
    index = {p: i for i, p in enumerate(ordered)}
    table = tuple(
        tuple(index[tuple(p[q[i]] for i in range(degree))] for q in ordered) for p in ordered
    )
    labels = tuple(_perm_label(p) for p in ordered)
    return _from_table(table, name, labels)


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Product group; element (x, y) is encoded as x * b.order + y."""
    nb = b.order
    table = []
    for x1 in a.elements():
        for y1 in b.elements():
            row = []
            for x2 in a.elements():
                for y2 in b.elements():
                    row.append(a.mul(x1, x2) * nb + b.mul(y1, y2))
            table.append(tuple(row))
    identity = a.identity * nb + b.identity
    inv = tuple(a.inv(x) * nb + b.inv(y) for x in a.elements() for y in b.elements())
    labels = tuple(
        f"({a.label(x)},{b.label(y)})" for x in a.elements() for y in b.elements()
    )
    return FiniteGroup(
        table=tuple(table),
        identity=identity,
        inv_table=inv,
        name=f"{a.name}x{b.name}",
        labels=labels,
    )


def gl2_f2() -> FiniteGroup:
    """Invertible 2x2 matrices over the field with two elements.

    Elements are ordered by the bit tuple (a, b, c, d) of the matrix
    [[a, b], [c, d]]; labels are those bit strings.
    """
    mats = []
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    if (a * d + b * c) % 2 == 1:
                        mats.append((a, b, c, d))
    index = {m: i for i, m in enumerate(mats)}

    def mmul(m, n):
        a, b, c, d = m
        e, f, g, h = n
        return ((a * e + b * g) % 2, (a * f + b * h) % 2,
                (c * e + d * g) % 2, (c * f + d * h) % 2)

    table = tuple(tuple(index[mmul(m, n)] for n in mats) for m in mats)
    labels = tuple("".join(str(x) for x in m) for m in mats)
    return _from_table(table, "GL2(F2)", labels)


def gl2_f2_upper_triangular(g: FiniteGroup) -> tuple[int, ...]:
    """Element ids of the upper-triangular subgroup of ``gl2_f2()``."""
    return tuple(a for a in g.elements() if g.label(a)[2] == "0")


def subgroup_closure(g: FiniteGroup, subset: Sequence[int]) -> tuple[int, ...]:
    elems = {g.identity}
    elems.update(subset)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elems):
                for c in (g.mul(a, b), g.mul(b, a), g.inv(a)):
                    if c not in elems:
                        elems.add(c)
                        nxt.append(c)
        frontier = nxt
    return tuple(sorted(elems))


def is_subgroup(g: FiniteGroup, subset: Sequence[int]) -> bool:
    s = set(subset)
    if g.identity not in s:
        return False
    return all(g.mul(a, b) in s for a in s for b in s) and all(g.inv(a) in s for a in s)


def is_normal(g: FiniteGroup, subset: Sequence[int]) -> bool:
    s = set(subset)
    return all(g.mul(g.mul(x, n), g.inv(x)) in s for x in g.elements() for n in s)


def induced_subgroup(g: FiniteGroup, elements: Sequence[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Subgroup on the given elements with the induced table.

    Returns the new group together with the embedding: local element i sits at
    ``embedding[i]`` in ``g``.  The elements must already form a subgroup.
    """
    emb = tuple(sorted(set(elements)))
    if not is_subgroup(g, emb):
        raise ValueError(f"{emb} is not a subgroup of {g.name}")
    index = {a: i for i, a in enumerate(emb)}
    table = tuple(tuple(index[g.mul(a, b)] for b in emb) for a in emb)
    labels = tuple(g.label(a) for a in emb)
    sub = FiniteGroup(
        table=table,
        identity=index[g.identity],
        inv_table=tuple(index[g.inv(a)] for a in emb),
        name=f"{g.name}<{len(emb)}>",
        labels=labels,
    )
    return sub, emb


def quotient_group(g: FiniteGroup, normal: Sequence[int]) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Quotient by a normal subgroup; cosets are represented by their least element.

    Returns the quotient and the projection table element -> coset id.
    """
    n = set(normal)
    if not is_subgroup(g, tuple(n)):
        raise ValueError("cannot quotient by a non-subgroup")
    if not is_normal(g, tuple(n)):
        raise ValueError("cannot quotient by a non-normal subgroup")
    cosets = {}
    for a in g.elements():
        rep = min(g.mul(x, a) for x in n)
        cosets.setdefault(rep, []).append(a)
    reps = sorted(cosets)
    coset_id = {rep: i for i, rep in enumerate(reps)}
    proj = [0] * g.order
    for rep, members in cosets.items():
        for a in members:
            proj[a] = coset_id[rep]
    table = tuple(
        tuple(proj[g.mul(a, b)] for b in reps) for a in reps
    )
    labels = tuple(f"[{g.label(rep)}]" for rep in reps)
    q = FiniteGroup(
        table=table,
        identity=proj[g.identity],
        inv_table=tuple(proj[g.inv(rep)] for rep in reps),
        name=f"{g.name}/N",
        labels=labels,
    )
    return q, tuple(proj)


def is_automorphism(g: FiniteGroup, f: Sequence[int]) -> bool:
    if sorted(f) != list(g.elements()):
        return False
    return all(f[g.mul(a, b)] == g.mul(f[a], f[b]) for a in g.elements() for b in g.elements())


def is_involutive_automorphism(g: FiniteGroup, f: Sequence[int]) -> bool:
    return is_automorphism(g, f) and all(f[f[a]] == a for a in g.elements())


def identity_automorphism(g: FiniteGroup) -> tuple[int, ...]:
    return tuple(g.elements())


def inversion_automorphism(g: FiniteGroup) -> tuple[int, ...]:
    """x -> x^-1; an automorphism exactly for abelian groups."""
    return tuple(g.inv_table)


def conjugation_automorphism(g: FiniteGroup, s: int) -> tuple[int, ...]:
    """x -> s x s^-1; involutive when s^2 is central, e.g. s an involution."""
    si = g.inv(s)
    return tuple(g.mul(g.mul(s, x), si) for x in g.elements())


@dataclass(frozen=True)
class GroupAction:
    """Left action of a group on the finite set 0..n_points-1, fully tabulated."""

    group: FiniteGroup
    n_points: int
    act_table: tuple[tuple[int, ...], ...]
    point_labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def act(self, g: int, x: int) -> int:
        return self.act_table[g][x]

    def point_label(self, x: int) -> str:
        if self.point_labels is not None:
            return self.point_labels[x]
        return f"p{x}"


def validate_action(a: GroupAction) -> list[str]:
    report = []
    g = a.group
    if len(a.act_table) != g.order:
        report.append("shape: one row per group element expected")
        return report
    for row in a.act_table:
        if len(row) != a.n_points or any(not 0 <= x < a.n_points for x in row):
            report.append("shape: action rows must be maps into the point set")
            return report
    for x in range(a.n_points):
        if a.act(g.identity, x) != x:
            report.append(f"identity: point {x} moves under the identity")
    for p in g.elements():
        for q in g.elements():
            pq = g.mul(p, q)
            for x in range(a.n_points):
                if a.act(p, a.act(q, x)) != a.act(pq, x):
                    report.append(f"compatibility: ({p},{q}) at point {x}")
    return report


def left_multiplication_action(g: FiniteGroup) -> GroupAction:
    return GroupAction(
        group=g,
        n_points=g.order,
        act_table=g.table,
        point_labels=tuple(g.label(a) for a in g.elements()),
    )


def trivial_point_action(g: FiniteGroup) -> GroupAction:
    return GroupAction(
        group=g,
        n_points=1,
        act_table=tuple((0,) for _ in g.elements()),
        point_labels=("*",),
    )


def orbits_under(a: GroupAction, elements: Optional[Sequence[int]] = None) -> list[list[int]]:
    """Orbits of the given group elements (default: all), sorted by least point."""
    gens = list(a.group.elements()) if elements is None else list(elements)
    seen = [False] * a.n_points
    out = []
    for x in range(a.n_points):
        if seen[x]:
            continue
        orbit = {x}
        frontier = [x]
        seen[x] = True
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = a.act(g, y)
                    if z not in orbit:
                        orbit.add(z)
                        seen[z] = True
                        nxt.append(z)
            frontier = nxt
        out.append(sorted(orbit))
    return out
