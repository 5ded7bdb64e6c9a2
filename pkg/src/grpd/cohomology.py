"""First nonabelian cohomology of an involution on a finite group.

For an involutive automorphism bar of G, the cocycles are
Z1 = {s in G : s * bar(s) = e}, the twisted conjugation action is
g . s = bar(g) * s * g^-1, and H1 is the set of orbits.  The stabilizer
K_s = {g : bar(g) * s = s * g} of a cocycle is the automorphism group of the
corresponding fixed point of the one-object groupoid of G.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    FiniteGroupoid,
    GroupoidMap,
    automorphism_group,
    build_bg,
    components,
    disjoint_union,
    is_weak_equivalence,
    union_offsets,
)
from .gamma import GammaAction, HomotopyFixedPoints, hfp
from .groups import FiniteGroup, induced_subgroup, is_involutive_automorphism

__all__ = [
    "GroupGammaAction",
    "CocycleClass",
    "BgDecomposition",
    "SkeletonPart",
    "Skeleton",
    "validate_group_gamma_action",
    "bg_gamma_action",
    "z1",
    "h1",
    "bg_hfp_decomposition",
    "skeletonize",
]


@dataclass(frozen=True)
class GroupGammaAction:
    """An involutive automorphism of a finite group, as an element table."""

    group: FiniteGroup
    bar: tuple[int, ...]


def validate_group_gamma_action(a: GroupGammaAction) -> list[str]:
    g = a.group
    if len(a.bar) != g.order:
        return ["shape: bar table has the wrong length"]
    if not is_involutive_automorphism(g, a.bar):
        return ["involution: bar is not an involutive automorphism"]
    return []


def bg_gamma_action(a: GroupGammaAction) -> GammaAction:
    """The induced involution on the one-object groupoid of the group."""
    return GammaAction(build_bg(a.group), (0,), tuple(a.bar))


def z1(a: GroupGammaAction) -> tuple[int, ...]:
    """Cocycles: elements with s * bar(s) = e, in increasing order."""
    g = a.group
    return tuple(s for s in g.elements() if g.mul(s, a.bar[s]) == g.identity)


@dataclass(frozen=True)
class CocycleClass:
    """A twisted conjugation orbit with its least representative and stabilizer."""

    representative: int
    members: tuple[int, ...]
    stabilizer: tuple[int, ...]


def _twisted(a: GroupGammaAction, g: int, s: int) -> int:
    grp = a.group
    return grp.mul(grp.mul(a.bar[g], s), grp.inv(g))


def h1(a: GroupGammaAction) -> list[CocycleClass]:
    """Orbits of twisted conjugation on the cocycles, sorted by representative."""
    grp = a.group
    cocycles = z1(a)
    remaining = set(cocycles)
    out = []
    for s in cocycles:
        if s not in remaining:
            continue
        orbit = {s}
        frontier = [s]
        while frontier:
            nxt = []
            for t in frontier:
                for g in grp.elements():
                    u = _twisted(a, g, t)
                    if u not in orbit:
                        orbit.add(u)
                        nxt.append(u)
            frontier = nxt
        remaining -= orbit
        stab = tuple(
            g for g in grp.elements()
            if grp.mul(a.bar[g], s) == grp.mul(s, g)
        )
        out.append(CocycleClass(representative=s, members=tuple(sorted(orbit)),
                                stabilizer=stab))
    return out


@dataclass(frozen=True)
class BgDecomposition:
    """The comparison from a disjoint union of stabilizer groupoids into the
    fixed points of the one-object groupoid."""

    classes: tuple[CocycleClass, ...]
    fixed_points: HomotopyFixedPoints = field(compare=False)
    source: FiniteGroupoid = field(compare=False)
    map: GroupoidMap = field(compare=False)
    is_weak_equivalence: bool = True


def bg_hfp_decomposition(a: GroupGammaAction) -> BgDecomposition:
    """Build the canonical map from the union of one-object stabilizer
    groupoids into the homotopy fixed points, one summand per cocycle class,
    and record whether it is a weak equivalence.
    """
    classes = h1(a)
    fp = hfp(bg_gamma_action(a))
    summands = []
    embeddings = []
    for cls in classes:
        sub, emb = induced_subgroup(a.group, cls.stabilizer)
        summands.append(build_bg(sub))
        embeddings.append(emb)
    source = disjoint_union(summands)
    obj_off, mor_off = union_offsets(summands)
    obj_map = [0] * source.n_objects
    mor_map = [0] * source.n_morphisms
    for i, cls in enumerate(classes):
        target_obj = fp.object_id(0, cls.representative)
        obj_map[obj_off[i]] = target_obj
        for k, g_elem in enumerate(embeddings[i]):
            mor_map[mor_off[i] + k] = fp.morphism_id(target_obj, g_elem)
    f = GroupoidMap(source, fp.groupoid, tuple(obj_map), tuple(mor_map))
    return BgDecomposition(
        classes=tuple(classes),
        fixed_points=fp,
        source=source,
        map=f,
        is_weak_equivalence=is_weak_equivalence(f),
    )


@dataclass(frozen=True)
class SkeletonPart:
    representative: int
    automorphisms: FiniteGroup
    morphisms: tuple[int, ...]


@dataclass(frozen=True)
class Skeleton:
    parts: tuple[SkeletonPart, ...]
    source: FiniteGroupoid = field(compare=False)
    map: GroupoidMap = field(compare=False)
    is_weak_equivalence: bool = True


def skeletonize(g: FiniteGroupoid) -> Skeleton:
    """Present a groupoid, up to weak equivalence, as a disjoint union of
    one-object groupoids: one per isomorphism class, at the least object."""
    parts = []
    for cls in components(g):
        rep = cls[0]
        grp, mors = automorphism_group(g, rep)
        parts.append(SkeletonPart(representative=rep, automorphisms=grp,
                                  morphisms=mors))
    summands = [build_bg(p.automorphisms) for p in parts]
    source = disjoint_union(summands)
    obj_off, mor_off = union_offsets(summands)
    obj_map = [0] * source.n_objects
    mor_map = [0] * source.n_morphisms
    for i, p in enumerate(parts):
        obj_map[obj_off[i]] = p.representative
        for k, mor in enumerate(p.morphisms):
            mor_map[mor_off[i] + k] = mor
    f = GroupoidMap(source, g, tuple(obj_map), tuple(mor_map))
    return Skeleton(parts=tuple(parts), source=source, map=f,
                    is_weak_equivalence=is_weak_equivalence(f))
