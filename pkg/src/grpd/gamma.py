"""Involutions on finite groupoids and their homotopy fixed points.

An involution is a strict action of the two-element group: object and
morphism permutations, each squaring to the identity and commuting with all
structure maps.

Composition here is diagrammatic, so the classical right-to-left fixed-point
condition "phi1 . alpha = bar(alpha) . phi" reads
``comp(alpha, phi1) == comp(phi, bar(alpha))`` throughout this module.  That
is the only place the two conventions need translating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    FiniteGroupoid,
    GroupoidMap,
    discrete_groupoid,
    is_weak_equivalence,
    product,
)

__all__ = [
    "GammaAction",
    "HfpObject",
    "HomotopyFixedPoints",
    "EquivariantMap",
    "NotEquivariantError",
    "SwapComparison",
    "validate_gamma_action",
    "trivial_action",
    "set_as_groupoid",
    "hfp",
    "iota",
    "equivariance_witness",
    "validate_equivariant",
    "hfp_map",
    "equivariant_identity",
    "swap_action",
    "swap_comparison",
    "gamma_union",
    "gamma_product",
    "gamma_relabel",
]


class NotEquivariantError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class GammaAction:
    """An involution of a finite groupoid: bar on objects and on morphisms."""

    carrier: FiniteGroupoid
    bar_obj: tuple[int, ...]
    bar_mor: tuple[int, ...]


def validate_gamma_action(a: GammaAction) -> list[str]:
    g = a.carrier
    report = []
    if len(a.bar_obj) != g.n_objects or len(a.bar_mor) != g.n_morphisms:
        report.append("shape: bar tables do not match the carrier")
        return report
    if sorted(a.bar_obj) != list(g.objects()) or sorted(a.bar_mor) != list(g.morphisms()):
        report.append("shape: bar tables are not permutations")
        return report
    for x in g.objects():
        if a.bar_obj[a.bar_obj[x]] != x:
            report.append(f"involution: object {x}")
    for m in g.morphisms():
        if a.bar_mor[a.bar_mor[m]] != m:
            report.append(f"involution: morphism {m}")
    for m in g.morphisms():
        bm = a.bar_mor[m]
        if g.src[bm] != a.bar_obj[g.src[m]] or g.tgt[bm] != a.bar_obj[g.tgt[m]]:
            report.append(f"src/tgt: morphism {m}")
        if a.bar_mor[g.inv[m]] != g.inv[bm]:
            report.append(f"inverse: morphism {m}")
    for x in g.objects():
        if a.bar_mor[g.id_of[x]] != g.id_of[a.bar_obj[x]]:
            report.append(f"identity: object {x}")
    for (m1, m2), m3 in g.comp.items():
        key = (a.bar_mor[m1], a.bar_mor[m2])
        if key not in g.comp:
            report.append(f"composition: bar image of ({m1},{m2}) is not composable")
        elif g.comp[key] != a.bar_mor[m3]:
            report.append(f"composition: ({m1},{m2})")
    return report


def trivial_action(g: FiniteGroupoid) -> GammaAction:
    return GammaAction(g, tuple(g.objects()), tuple(g.morphisms()))


def set_as_groupoid(involution: Sequence[int], labels: Optional[Sequence[str]] = None) -> GammaAction:
    """A finite set with involution, viewed as a discrete groupoid with action."""
    bar = tuple(involution)
    g = discrete_groupoid(len(bar), labels=labels)
    return GammaAction(g, bar, bar)


@dataclass(frozen=True)
class HfpObject:
    """A fixed-point datum: an object together with phi: base -> bar(base)."""

    base: int
    phi: int


class HomotopyFixedPoints:
    """The homotopy fixed point groupoid of an involution.

    Objects are pairs (x, phi) with phi: x -> bar(x) and bar(phi) = inv(phi),
    ordered lexicographically by (x, phi).  There is one morphism
    (x, phi) -> (x1, phi1) for each alpha: x -> x1 of the carrier with
    comp(alpha, phi1) == comp(phi, bar(alpha)); ``underlying[m]`` records
    that alpha.
    """

    def __init__(self, action: GammaAction, groupoid: FiniteGroupoid,
                 objects: tuple[HfpObject, ...], underlying: tuple[int, ...],
                 obj_index, mor_index):
        self.action = action
        self.groupoid = groupoid
        self.objects = objects
        self.underlying = underlying
        self._obj_index = obj_index
        self._mor_index = mor_index

    def object_id(self, base: int, phi: int) -> int:
        return self._obj_index[(base, phi)]

    def has_object(self, base: int, phi: int) -> bool:
        return (base, phi) in self._obj_index

    def morphism_id(self, src_obj: int, alpha: int) -> int:
        return self._mor_index[(src_obj, alpha)]

    def has_morphism(self, src_obj: int, alpha: int) -> bool:
        return (src_obj, alpha) in self._mor_index

    def iota(self) -> GroupoidMap:
        """The forgetful map to the carrier: (x, phi) -> x, alpha -> alpha."""
        return GroupoidMap(
            dom=self.groupoid,
            cod=self.action.carrier,
            obj_map=tuple(o.base for o in self.objects),
            mor_map=self.underlying,
        )

    def __repr__(self) -> str:
        return (f"HomotopyFixedPoints(objects={len(self.objects)}, "
                f"morphisms={len(self.underlying)})")


def hfp(a: GammaAction) -> HomotopyFixedPoints:
    """Compute the homotopy fixed point groupoid of an involution."""
    g = a.carrier
    objs: list[HfpObject] = []
    for x in g.objects():
        for phi in g.hom(x, a.bar_obj[x]):
            if a.bar_mor[phi] == g.inv[phi]:
                objs.append(HfpObject(x, phi))
    obj_index = {(o.base, o.phi): i for i, o in enumerate(objs)}

    src, tgt, underlying = [], [], []
    mor_index = {}
    for i, o in enumerate(objs):
        for j, o1 in enumerate(objs):
            for alpha in g.hom(o.base, o1.base):
                if g.comp[(alpha, o1.phi)] == g.comp[(o.phi, a.bar_mor[alpha])]:
                    key = (i, alpha)
                    assert key not in mor_index, "phi1 is determined by (phi, alpha)"
                    mor_index[key] = len(src)
                    src.append(i)
                    tgt.append(j)
                    underlying.append(alpha)

    id_of = []
    for i, o in enumerate(objs):
        key = (i, g.id_of[o.base])
        assert key in mor_index, "identities satisfy the fixed-point condition"
        id_of.append(mor_index[key])
    inv = []
    for m in range(len(src)):
        key = (tgt[m], g.inv[underlying[m]])
        assert key in mor_index, "inverses satisfy the fixed-point condition"
        inv.append(mor_index[key])
    comp = {}
    for m1 in range(len(src)):
        for m2 in range(len(src)):
            if tgt[m1] != src[m2]:
                continue
            key = (src[m1], g.comp[(underlying[m1], underlying[m2])])
            assert key in mor_index, "composites satisfy the fixed-point condition"
            comp[(m1, m2)] = mor_index[key]

    groupoid = FiniteGroupoid(
        len(objs), src, tgt, id_of, inv, comp,
        obj_labels=tuple(f"({g.obj_label(o.base)},{g.mor_label(o.phi)})" for o in objs),
        mor_labels=tuple(g.mor_label(k) for k in underlying),
    )
    return HomotopyFixedPoints(a, groupoid, tuple(objs), tuple(underlying),
                               obj_index, mor_index)


def iota(a: GammaAction) -> GroupoidMap:
    return hfp(a).iota()


@dataclass(frozen=True)
class EquivariantMap:
    """A functor together with the involutions it is supposed to commute with."""

    map: GroupoidMap
    dom_action: GammaAction
    cod_action: GammaAction


def equivariance_witness(e: EquivariantMap):
    """None if equivariant, else ('object'|'morphism', id) where it fails."""
    f = e.map
    for x in f.dom.objects():
        if f.obj_map[e.dom_action.bar_obj[x]] != e.cod_action.bar_obj[f.obj_map[x]]:
            return ("object", x)
    for m in f.dom.morphisms():
        if f.mor_map[e.dom_action.bar_mor[m]] != e.cod_action.bar_mor[f.mor_map[m]]:
            return ("morphism", m)
    return None


def validate_equivariant(e: EquivariantMap) -> list[str]:
    w = equivariance_witness(e)
    if w is None:
        return []
    return [f"equivariance: {w[0]} {w[1]}"]


def equivariant_identity(a: GammaAction) -> EquivariantMap:
    from .core import identity_map

    return EquivariantMap(identity_map(a.carrier), a, a)


def hfp_map(e: EquivariantMap,
            dom_fp: Optional[HomotopyFixedPoints] = None,
            cod_fp: Optional[HomotopyFixedPoints] = None) -> GroupoidMap:
    """The induced map on homotopy fixed points.

    Precomputed fixed points may be passed to avoid recomputation; they must
    come from ``hfp`` of the corresponding actions.
    """
    w = equivariance_witness(e)
    if w is not None:
        raise NotEquivariantError(f"map fails equivariance at {w[0]} {w[1]}", witness=w)
    if dom_fp is None:
        dom_fp = hfp(e.dom_action)
    if cod_fp is None:
        cod_fp = hfp(e.cod_action)
    f = e.map
    obj_map = tuple(
        cod_fp.object_id(f.obj_map[o.base], f.mor_map[o.phi]) for o in dom_fp.objects
    )
    mor_map = tuple(
        cod_fp.morphism_id(obj_map[dom_fp.groupoid.src[m]], f.mor_map[dom_fp.underlying[m]])
        for m in dom_fp.groupoid.morphisms()
    )
    return GroupoidMap(dom_fp.groupoid, cod_fp.groupoid, obj_map, mor_map)


def swap_action(x: FiniteGroupoid) -> GammaAction:
    """The coordinate swap involution on the product of x with itself."""
    p = product(x, x)
    n, m = x.n_objects, x.n_morphisms
    bar_obj = tuple(b * n + a for a in range(n) for b in range(n))
    bar_mor = tuple(k2 * m + k1 for k1 in range(m) for k2 in range(m))
    return GammaAction(p, bar_obj, bar_mor)


@dataclass(frozen=True)
class SwapComparison:
    fixed_points: HomotopyFixedPoints
    map: GroupoidMap
    is_weak_equivalence: bool


def swap_comparison(x: FiniteGroupoid) -> SwapComparison:
    """The canonical map from x to the fixed points of the swap involution.

    An object a goes to ((a, a), (id_a, id_a)); a morphism goes to the arrow
    with underlying (alpha, alpha).
    """
    fp = hfp(swap_action(x))
    n, m = x.n_objects, x.n_morphisms
    obj_map = tuple(
        fp.object_id(a * n + a, x.id_of[a] * m + x.id_of[a]) for a in x.objects()
    )
    mor_map = tuple(
        fp.morphism_id(obj_map[x.src[k]], k * m + k) for k in x.morphisms()
    )
    f = GroupoidMap(x, fp.groupoid, obj_map, mor_map)
    return SwapComparison(fixed_points=fp, map=f,
                          is_weak_equivalence=is_weak_equivalence(f))


def gamma_union(parts: Sequence[GammaAction]) -> GammaAction:
    """Disjoint union of involutions, bar acting within each summand."""
    from .core import disjoint_union, union_offsets

    gs = [a.carrier for a in parts]
    obj_off, mor_off = union_offsets(gs)
    bar_obj, bar_mor = [], []
    for i, a in enumerate(parts):
        bar_obj.extend(obj_off[i] + x for x in a.bar_obj)
        bar_mor.extend(mor_off[i] + k for k in a.bar_mor)
    return GammaAction(disjoint_union(gs), tuple(bar_obj), tuple(bar_mor))


def gamma_product(a: GammaAction, b: GammaAction) -> GammaAction:
    """Product of involutions, bar acting coordinatewise."""
    p = product(a.carrier, b.carrier)
    no, nm = b.carrier.n_objects, b.carrier.n_morphisms
    bar_obj = tuple(a.bar_obj[x] * no + b.bar_obj[y]
                    for x in range(a.carrier.n_objects) for y in range(no))
    bar_mor = tuple(a.bar_mor[k] * nm + b.bar_mor[l]
                    for k in range(a.carrier.n_morphisms) for l in range(nm))
    return GammaAction(p, bar_obj, bar_mor)


def gamma_relabel(a: GammaAction, obj_perm: Sequence[int], mor_perm: Sequence[int]) -> GammaAction:
    """Transport an involution along a renaming of the carrier."""
    from .core import relabel

    g = relabel(a.carrier, obj_perm, mor_perm)
    bar_obj = [0] * len(obj_perm)
    bar_mor = [0] * len(mor_perm)
    for x, nx in enumerate(obj_perm):
        bar_obj[nx] = obj_perm[a.bar_obj[x]]
    for m, nm in enumerate(mor_perm):
        bar_mor[nm] = mor_perm[a.bar_mor[m]]
    return GammaAction(g, tuple(bar_obj), tuple(bar_mor))
