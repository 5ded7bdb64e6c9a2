"""Finite groupoids with fully tabulated structure maps.

Objects and morphisms are dense integer ids.  Composition is stored
diagrammatically: ``comp[(m1, m2)]`` is "m1 then m2" and is defined exactly
when ``tgt[m1] == src[m2]``.  Everything is finite and explicit; validation
returns reports rather than trusting constructors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .groups import FiniteGroup, GroupAction, is_normal, is_subgroup, left_multiplication_action, orbits_under, quotient_group, trivial_point_action
from .util import UnionFind

__all__ = [
    "FiniteGroupoid",
    "GroupoidMap",
    "NotNormalError",
    "NotFreeError",
    "InvariantViolation",
    "QuotientComparison",
    "validate_groupoid",
    "validate_functor",
    "identity_map",
    "empty_groupoid",
    "terminal_groupoid",
    "discrete_groupoid",
    "build_action_groupoid",
    "action_mor",
    "action_mor_parts",
    "build_eg",
    "build_bg",
    "components",
    "component_index",
    "is_fibration",
    "is_weak_equivalence",
    "groupoid_cardinality",
    "quotient_comparison",
    "disjoint_union",
    "disjoint_union_map",
    "union_offsets",
    "product",
    "relabel",
    "automorphism_group",
]


class InvariantViolation(RuntimeError):
    """An internal invariant failed; this indicates a bug, not bad input."""


class NotNormalError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotFreeError(ValueError):
    def __init__(self, message: str, element: int, point: int):
        super().__init__(message)
        self.element = element
        self.point = point


class FiniteGroupoid:
    """A finite groupoid: objects 0..n_objects-1, morphisms 0..n_morphisms-1.

    ``id_of[x]`` is the identity at x, ``inv[m]`` the inverse morphism, and
    ``comp`` the full diagrammatic composition table.  Labels are optional
    and never take part in equality.
    """

    __slots__ = ("n_objects", "src", "tgt", "id_of", "inv", "comp",
                 "obj_labels", "mor_labels", "_hom")

    def __init__(self, n_objects, src, tgt, id_of, inv, comp,
                 obj_labels=None, mor_labels=None):
        self.n_objects = int(n_objects)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.id_of = tuple(id_of)
        self.inv = tuple(inv)
        self.comp = dict(comp)
        self.obj_labels = None if obj_labels is None else tuple(obj_labels)
        self.mor_labels = None if mor_labels is None else tuple(mor_labels)
        self._hom = None

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def objects(self) -> range:
        return range(self.n_objects)

    def morphisms(self) -> range:
        return range(self.n_morphisms)

    def compose(self, m1: int, m2: int) -> int:
        return self.comp[(m1, m2)]

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        if self._hom is None:
            table = {}
            for m in self.morphisms():
                table.setdefault((self.src[m], self.tgt[m]), []).append(m)
            self._hom = {k: tuple(v) for k, v in table.items()}
        return self._hom.get((x, y), ())

    def aut(self, x: int) -> tuple[int, ...]:
        return self.hom(x, x)

    def obj_label(self, x: int) -> str:
        if self.obj_labels is not None:
            return self.obj_labels[x]
        return f"x{x}"

    def mor_label(self, m: int) -> str:
        if self.mor_labels is not None:
            return self.mor_labels[m]
        return f"m{m}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (self.n_objects == other.n_objects and self.src == other.src
                and self.tgt == other.tgt and self.id_of == other.id_of
                and self.inv == other.inv and self.comp == other.comp)

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __repr__(self) -> str:
        return f"FiniteGroupoid(objects={self.n_objects}, morphisms={self.n_morphisms})"


def validate_groupoid(g: FiniteGroupoid) -> list[str]:
    """All groupoid axioms, reported one violation per line; empty means valid."""
    report = []
    n, m = g.n_objects, g.n_morphisms
    if len(g.tgt) != m or len(g.inv) != m or len(g.id_of) != n:
        report.append("shape: src/tgt/inv/id tables have inconsistent lengths")
        return report
    if any(not 0 <= x < n for x in g.src) or any(not 0 <= x < n for x in g.tgt):
        report.append("shape: src/tgt entry out of range")
        return report
    if any(not 0 <= k < m for k in g.id_of) or any(not 0 <= k < m for k in g.inv):
        report.append("shape: id/inv entry out of range")
        return report
    for x in g.objects():
        e = g.id_of[x]
        if g.src[e] != x or g.tgt[e] != x:
            report.append(f"identity: id_of[{x}] is not an endomorphism of {x}")
    for (m1, m2), m3 in g.comp.items():
        if not (0 <= m1 < m and 0 <= m2 < m and 0 <= m3 < m):
            report.append(f"composition-domain: entry ({m1},{m2}) out of range")
            return report
        if g.tgt[m1] != g.src[m2]:
            report.append(f"composition-domain: ({m1},{m2}) is not composable")
        elif g.src[m3] != g.src[m1] or g.tgt[m3] != g.tgt[m2]:
            report.append(f"composition: comp({m1},{m2}) has wrong endpoints")
    for m1 in g.morphisms():
        for m2 in g.morphisms():
            if g.tgt[m1] == g.src[m2] and (m1, m2) not in g.comp:
                report.append(f"composition-domain: missing entry for ({m1},{m2})")
    if report:
        return report
    for k in g.morphisms():
        if g.comp[(g.id_of[g.src[k]], k)] != k:
            report.append(f"unit: id . {k} != {k}")
        if g.comp[(k, g.id_of[g.tgt[k]])] != k:
            report.append(f"unit: {k} . id != {k}")
    for k in g.morphisms():
        if g.comp[(k, g.inv[k])] != g.id_of[g.src[k]]:
            report.append(f"inverse: {k} then inv({k}) is not the identity")
        if g.comp[(g.inv[k], k)] != g.id_of[g.tgt[k]]:
            report.append(f"inverse: inv({k}) then {k} is not the identity")
    for m1 in g.morphisms():
        for m2 in g.morphisms():
            if g.tgt[m1] != g.src[m2]:
                continue
            left = g.comp[(m1, m2)]
            for m3 in g.morphisms():
                if g.tgt[m2] != g.src[m3]:
                    continue
                if g.comp[(left, m3)] != g.comp[(m1, g.comp[(m2, m3)])]:
                    report.append(f"associativity: ({m1},{m2},{m3})")
    return report


@dataclass(frozen=True)
class GroupoidMap:
    """A functor between finite groupoids, as object and morphism tables."""

    dom: FiniteGroupoid
    cod: FiniteGroupoid
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def then(self, other: "GroupoidMap") -> "GroupoidMap":
        if self.cod is not other.dom and self.cod != other.dom:
            raise ValueError("maps are not composable")
        return GroupoidMap(
            dom=self.dom,
            cod=other.cod,
            obj_map=tuple(other.obj_map[x] for x in self.obj_map),
            mor_map=tuple(other.mor_map[m] for m in self.mor_map),
        )


def identity_map(g: FiniteGroupoid) -> GroupoidMap:
    return GroupoidMap(g, g, tuple(g.objects()), tuple(g.morphisms()))


def validate_functor(f: GroupoidMap) -> list[str]:
    report = []
    dom, cod = f.dom, f.cod
    if len(f.obj_map) != dom.n_objects or len(f.mor_map) != dom.n_morphisms:
        report.append("shape: map tables do not match the domain")
        return report
    if any(not 0 <= y < cod.n_objects for y in f.obj_map):
        report.append("shape: object image out of range")
        return report
    if any(not 0 <= k < cod.n_morphisms for k in f.mor_map):
        report.append("shape: morphism image out of range")
        return report
    for m in dom.morphisms():
        if cod.src[f.mor_map[m]] != f.obj_map[dom.src[m]]:
            report.append(f"src: morphism {m}")
        if cod.tgt[f.mor_map[m]] != f.obj_map[dom.tgt[m]]:
            report.append(f"tgt: morphism {m}")
    for x in dom.objects():
        if f.mor_map[dom.id_of[x]] != cod.id_of[f.obj_map[x]]:
            report.append(f"identity: object {x}")
    if report:
        return report
    for (m1, m2), m3 in dom.comp.items():
        if cod.comp[(f.mor_map[m1], f.mor_map[m2])] != f.mor_map[m3]:
            report.append(f"composition: ({m1},{m2})")
    for m in dom.morphisms():
        if f.mor_map[dom.inv[m]] != cod.inv[f.mor_map[m]]:
            report.append(f"inverse: morphism {m}")
    return report


def empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(0, (), (), (), (), {})


def terminal_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(1, (0,), (0,), (0,), (0,), {(0, 0): 0},
                          obj_labels=("*",), mor_labels=("id",))


def discrete_groupoid(n: int, labels: Optional[Sequence[str]] = None) -> FiniteGroupoid:
    rng = tuple(range(n))
    return FiniteGroupoid(
        n, rng, rng, rng, rng, {(i, i): i for i in rng},
        obj_labels=labels,
        mor_labels=None if labels is None else tuple(f"id_{l}" for l in labels),
    )


def action_mor(a: GroupAction, g: int, x: int) -> int:
    """Morphism id of (g, x) in the action groupoid of ``a``."""
    return g * a.n_points + x


def action_mor_parts(a: GroupAction, m: int) -> tuple[int, int]:
    return divmod(m, a.n_points)


def build_action_groupoid(a: GroupAction) -> FiniteGroupoid:
    """The action groupoid: objects are points, morphisms are pairs (g, x).

    The morphism (g, x) runs from x to g.x and is encoded as g * n_points + x.
    """
    grp = a.group
    nx = a.n_points
    src, tgt, mor_labels = [], [], []
    for g in grp.elements():
        for x in range(nx):
            src.append(x)
            tgt.append(a.act(g, x))
            mor_labels.append(f"{grp.label(g)}.{a.point_label(x)}")
    id_of = tuple(action_mor(a, grp.identity, x) for x in range(nx))
    inv = tuple(
        action_mor(a, grp.inv(g), a.act(g, x))
        for g in grp.elements() for x in range(nx)
    )
    comp = {}
    for g in grp.elements():
        for x in range(nx):
            gx = a.act(g, x)
            m1 = action_mor(a, g, x)
            for h in grp.elements():
                comp[(m1, action_mor(a, h, gx))] = action_mor(a, grp.mul(h, g), x)
    return FiniteGroupoid(
        nx, src, tgt, id_of, inv, comp,
        obj_labels=tuple(a.point_label(x) for x in range(nx)),
        mor_labels=mor_labels,
    )


def build_eg(g: FiniteGroup) -> FiniteGroupoid:
    """The action groupoid of g on itself by left multiplication."""
    return build_action_groupoid(left_multiplication_action(g))


def build_bg(g: FiniteGroup) -> FiniteGroupoid:
    """One object, one morphism per group element; morphism ids are element ids."""
    return build_action_groupoid(trivial_point_action(g))


def components(g: FiniteGroupoid) -> list[list[int]]:
    """Isomorphism classes of objects as sorted lists, ordered by least object."""
    uf = UnionFind(g.objects())
    for m in g.morphisms():
        uf.union(g.src[m], g.tgt[m])
    return uf.classes()


def component_index(g: FiniteGroupoid) -> list[int]:
    out = [0] * g.n_objects
    for i, cls in enumerate(components(g)):
        for x in cls:
            out[x] = i
    return out


def is_fibration(f: GroupoidMap) -> bool:
    """Every morphism out of an image object lifts to a morphism out of the source."""
    dom, cod = f.dom, f.cod
    images_by_src: dict[int, set[int]] = {x: set() for x in dom.objects()}
    for b in dom.morphisms():
        images_by_src[dom.src[b]].add(f.mor_map[b])
    cod_by_src: dict[int, list[int]] = {y: [] for y in cod.objects()}
    for m in cod.morphisms():
        cod_by_src[cod.src[m]].append(m)
    for x in dom.objects():
        available = images_by_src[x]
        for alpha in cod_by_src[f.obj_map[x]]:
            if alpha not in available:
                return False
    return True


def is_weak_equivalence(f: GroupoidMap) -> bool:
    """Fully faithful (bijective on each ordered hom set) and essentially surjective."""
    dom, cod = f.dom, f.cod
    for x in dom.objects():
        fx = f.obj_map[x]
        for y in dom.objects():
            ms = dom.hom(x, y)
            images = {f.mor_map[k] for k in ms}
            if len(images) != len(ms):
                return False
            if len(ms) != len(cod.hom(fx, f.obj_map[y])):
                return False
    comp_of = component_index(cod)
    hit = {comp_of[f.obj_map[x]] for x in dom.objects()}
    return all(comp_of[y] in hit for y in cod.objects())


def groupoid_cardinality(g: FiniteGroupoid) -> Fraction:
    """Sum of 1/|Aut| over isomorphism classes, as an exact rational."""
    total = Fraction(0)
    for cls in components(g):
        total += Fraction(1, len(g.aut(cls[0])))
    return total


@dataclass(frozen=True)
class QuotientComparison:
    map: GroupoidMap
    is_fibration: bool
    is_weak_equivalence: bool

    @property
    def is_acyclic_fibration(self) -> bool:
        return self.is_fibration and self.is_weak_equivalence


def quotient_comparison(a: GroupAction, normal: Sequence[int]) -> QuotientComparison:
    """Canonical map from the action groupoid of ``a`` to the quotient action
    groupoid by a normal subgroup acting freely, with both verdicts.
    """
    grp = a.group
    nset = tuple(sorted(set(normal)))
    if not is_subgroup(grp, nset):
        raise NotNormalError(f"{nset} is not a subgroup", witness=nset)
    if not is_normal(grp, nset):
        bad = next(
            (x, n) for x in grp.elements() for n in nset
            if grp.mul(grp.mul(x, n), grp.inv(x)) not in set(nset)
        )
        raise NotNormalError(f"conjugate of {bad[1]} by {bad[0]} leaves the subgroup",
                             witness=bad)
    for n in nset:
        if n == grp.identity:
            continue
        for x in range(a.n_points):
            if a.act(n, x) == x:
                raise NotFreeError(f"element {n} fixes point {x}", element=n, point=x)

    q, proj = quotient_group(grp, nset)
    point_orbits = orbits_under(a, nset)
    point_class = [0] * a.n_points
    for i, orbit in enumerate(point_orbits):
        for x in orbit:
            point_class[x] = i
    coset_rep = [min(g for g in grp.elements() if proj[g] == c) for c in range(q.order)]
    act_table = tuple(
        tuple(point_class[a.act(coset_rep[c], orbit[0])] for orbit in point_orbits)
        for c in range(q.order)
    )
    qa = GroupAction(
        group=q,
        n_points=len(point_orbits),
        act_table=act_table,
        point_labels=tuple(f"[{a.point_label(orbit[0])}]" for orbit in point_orbits),
    )
    dom = build_action_groupoid(a)
    cod = build_action_groupoid(qa)
    obj_map = tuple(point_class[x] for x in range(a.n_points))
    mor_map = tuple(
        action_mor(qa, proj[g], point_class[x])
        for g in grp.elements() for x in range(a.n_points)
    )
    f = GroupoidMap(dom, cod, obj_map, mor_map)
    return QuotientComparison(map=f, is_fibration=is_fibration(f),
                              is_weak_equivalence=is_weak_equivalence(f))


def union_offsets(gs: Sequence[FiniteGroupoid]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Object and morphism id offsets of each summand inside ``disjoint_union(gs)``."""
    obj_off, mor_off = [], []
    o = m = 0
    for g in gs:
        obj_off.append(o)
        mor_off.append(m)
        o += g.n_objects
        m += g.n_morphisms
    return tuple(obj_off), tuple(mor_off)


def disjoint_union(gs: Sequence[FiniteGroupoid]) -> FiniteGroupoid:
    obj_off, mor_off = union_offsets(gs)
    src, tgt, id_of, inv, comp = [], [], [], [], {}
    obj_labels, mor_labels = [], []
    for i, g in enumerate(gs):
        oo, mo = obj_off[i], mor_off[i]
        src.extend(oo + x for x in g.src)
        tgt.extend(oo + x for x in g.tgt)
        id_of.extend(mo + k for k in g.id_of)
        inv.extend(mo + k for k in g.inv)
        for (m1, m2), m3 in g.comp.items():
            comp[(mo + m1, mo + m2)] = mo + m3
        obj_labels.extend(g.obj_label(x) for x in g.objects())
        mor_labels.extend(g.mor_label(k) for k in g.morphisms())
    return FiniteGroupoid(sum(g.n_objects for g in gs), src, tgt, id_of, inv, comp,
                          obj_labels=obj_labels, mor_labels=mor_labels)


def disjoint_union_map(fs: Sequence[GroupoidMap]) -> GroupoidMap:
    """The summand-wise map between disjoint unions of the domains and of the
    codomains."""
    dom = disjoint_union([f.dom for f in fs])
    cod = disjoint_union([f.cod for f in fs])
    cobj, cmor = union_offsets([f.cod for f in fs])
    obj_map, mor_map = [], []
    for i, f in enumerate(fs):
        obj_map.extend(cobj[i] + y for y in f.obj_map)
        mor_map.extend(cmor[i] + k for k in f.mor_map)
    return GroupoidMap(dom, cod, tuple(obj_map), tuple(mor_map))


def product(g: FiniteGroupoid, h: FiniteGroupoid) -> FiniteGroupoid:
    """Product groupoid; object (x, y) is x * h.n_objects + y and morphism
    (m, k) is m * h.n_morphisms + k."""
    no, nm = h.n_objects, h.n_morphisms

    def obj(x, y):
        return x * no + y

    def mor(m, k):
        return m * nm + k

    src = [obj(g.src[m], h.src[k]) for m in g.morphisms() for k in h.morphisms()]
    tgt = [obj(g.tgt[m], h.tgt[k]) for m in g.morphisms() for k in h.morphisms()]
    id_of = [mor(g.id_of[x], h.id_of[y]) for x in g.objects() for y in h.objects()]
    inv = [mor(g.inv[m], h.inv[k]) for m in g.morphisms() for k in h.morphisms()]
    comp = {}
    for (a1, a2), a3 in g.comp.items():
        for (b1, b2), b3 in h.comp.items():
            comp[(mor(a1, b1), mor(a2, b2))] = mor(a3, b3)
    obj_labels = [f"({g.obj_label(x)},{h.obj_label(y)})"
                  for x in g.objects() for y in h.objects()]
    mor_labels = [f"({g.mor_label(m)},{h.mor_label(k)})"
                  for m in g.morphisms() for k in h.morphisms()]
    return FiniteGroupoid(g.n_objects * no, src, tgt, id_of, inv, comp,
                          obj_labels=obj_labels, mor_labels=mor_labels)


def relabel(g: FiniteGroupoid, obj_perm: Sequence[int], mor_perm: Sequence[int]) -> FiniteGroupoid:
    """The same groupoid with object x renamed obj_perm[x] and morphism m
    renamed mor_perm[m]."""
    n, m = g.n_objects, g.n_morphisms
    src = [0] * m
    tgt = [0] * m
    inv = [0] * m
    id_of = [0] * n
    obj_labels = [""] * n if g.obj_labels else None
    mor_labels = [""] * m if g.mor_labels else None
    for k in g.morphisms():
        nk = mor_perm[k]
        src[nk] = obj_perm[g.src[k]]
        tgt[nk] = obj_perm[g.tgt[k]]
        inv[nk] = mor_perm[g.inv[k]]
        if mor_labels is not None:
            mor_labels[nk] = g.mor_labels[k]
    for x in g.objects():
        id_of[obj_perm[x]] = mor_perm[g.id_of[x]]
        if obj_labels is not None:
            obj_labels[obj_perm[x]] = g.obj_labels[x]
    comp = {(mor_perm[a], mor_perm[b]): mor_perm[c] for (a, b), c in g.comp.items()}
    return FiniteGroupoid(n, src, tgt, id_of, inv, comp,
                          obj_labels=obj_labels, mor_labels=mor_labels)


def automorphism_group(g: FiniteGroupoid, x: int) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Aut(x) as a finite group, together with the list of morphism ids.

    The multiplication is arranged so that ``build_bg`` of the result maps
    into ``g`` functorially: mul(a, b) is the composite "b then a".
    """
    mors = g.aut(x)
    index = {k: i for i, k in enumerate(mors)}
    table = tuple(
        tuple(index[g.comp[(mors[b], mors[a])]] for b in range(len(mors)))
        for a in range(len(mors))
    )
    grp = FiniteGroup(
        table=table,
        identity=index[g.id_of[x]],
        inv_table=tuple(index[g.inv[k]] for k in mors),
        name=f"Aut({g.obj_label(x)})",
        labels=tuple(g.mor_label(k) for k in mors),
    )
    return grp, mors
