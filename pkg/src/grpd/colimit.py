"""Colimits of diagrams of groupoids over finite index categories.

The colimit is computed set-theoretically on objects and on morphisms: the
disjoint union over the nodes, quotiented by the equivalence generated by
transport along the diagram arrows.  For a filtered index this is the actual
colimit groupoid and the construction below produces complete, well-defined
tables; a non-filtered index may make composition on classes clash, which is
reported as ``NotFilteredError``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import FiniteGroupoid, GroupoidMap
from .gamma import EquivariantMap, GammaAction, HomotopyFixedPoints, hfp, hfp_map
from .util import UnionFind

__all__ = [
    "FiniteCategory",
    "FilteredDiagram",
    "NotFilteredError",
    "GroupoidColimit",
    "ColimitResult",
    "ColimitComparison",
    "validate_category",
    "filtered_witness",
    "validate_diagram",
    "colimit_groupoids",
    "colimit",
    "hfp_colimit_comparison",
]


class NotFilteredError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class FiniteCategory:
    """A finite category: arrows with src/tgt, identities, composition table.

    Like groupoid composition, ``comp[(u, v)]`` is diagrammatic "u then v".
    """

    n_objects: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    id_of: tuple[int, ...]
    comp: dict = field(hash=False)

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    def objects(self) -> range:
        return range(self.n_objects)

    def arrows(self) -> range:
        return range(self.n_arrows)

    def hom(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(u for u in self.arrows() if self.src[u] == i and self.tgt[u] == j)


def validate_category(c: FiniteCategory) -> list[str]:
    report = []
    n, m = c.n_objects, c.n_arrows
    if len(c.tgt) != m or len(c.id_of) != n:
        report.append("shape: tables have inconsistent lengths")
        return report
    if any(not 0 <= x < n for x in c.src + c.tgt):
        report.append("shape: src/tgt out of range")
        return report
    for i in c.objects():
        e = c.id_of[i]
        if not 0 <= e < m or c.src[e] != i or c.tgt[e] != i:
            report.append(f"identity: id_of[{i}]")
    for (u, v), w in c.comp.items():
        if c.tgt[u] != c.src[v]:
            report.append(f"composition-domain: ({u},{v}) is not composable")
        elif c.src[w] != c.src[u] or c.tgt[w] != c.tgt[v]:
            report.append(f"composition: comp({u},{v}) has wrong endpoints")
    for u in c.arrows():
        for v in c.arrows():
            if c.tgt[u] == c.src[v] and (u, v) not in c.comp:
                report.append(f"composition-domain: missing entry for ({u},{v})")
    if report:
        return report
    for u in c.arrows():
        if c.comp[(c.id_of[c.src[u]], u)] != u or c.comp[(u, c.id_of[c.tgt[u]])] != u:
            report.append(f"unit: arrow {u}")
    for u in c.arrows():
        for v in c.arrows():
            if c.tgt[u] != c.src[v]:
                continue
            for w in c.arrows():
                if c.tgt[v] != c.src[w]:
                    continue
                if c.comp[(c.comp[(u, v)], w)] != c.comp[(u, c.comp[(v, w)])]:
                    report.append(f"associativity: ({u},{v},{w})")
    return report


def filtered_witness(c: FiniteCategory) -> Optional[str]:
    """None if the category is filtered, else a description of a failure.

    Checked by enumeration: non-emptiness, a cocone for every pair of
    objects, and an equalizing arrow for every parallel pair.
    """
    if c.n_objects == 0:
        return "the index category is empty"
    for i in c.objects():
        for j in c.objects():
            if not any(c.hom(i, k) and c.hom(j, k) for k in c.objects()):
                return f"objects {i} and {j} admit no cocone"
    for u in c.arrows():
        for v in c.arrows():
            if u >= v or c.src[u] != c.src[v] or c.tgt[u] != c.tgt[v]:
                continue
            j = c.tgt[u]
            if not any(
                c.comp[(u, w)] == c.comp[(v, w)]
                for w in c.arrows() if c.src[w] == j
            ):
                return f"parallel arrows {u} and {v} are never equalized"
    return None


@dataclass(frozen=True)
class FilteredDiagram:
    """A diagram of groupoids with involution over a finite index category."""

    index: FiniteCategory
    nodes: tuple[GammaAction, ...]
    arrows: tuple[EquivariantMap, ...]


def validate_diagram(d: FilteredDiagram) -> list[str]:
    from .gamma import equivariance_witness, validate_gamma_action
    from .core import identity_map, validate_functor

    report = []
    c = d.index
    if len(d.nodes) != c.n_objects or len(d.arrows) != c.n_arrows:
        report.append("shape: one node per index object and one map per arrow expected")
        return report
    report.extend(
        f"node {i}: {line}" for i, a in enumerate(d.nodes)
        for line in validate_gamma_action(a)
    )
    for u in c.arrows():
        e = d.arrows[u]
        if e.dom_action is not d.nodes[c.src[u]] and e.dom_action != d.nodes[c.src[u]]:
            report.append(f"arrow {u}: domain is not the source node")
            continue
        if e.cod_action is not d.nodes[c.tgt[u]] and e.cod_action != d.nodes[c.tgt[u]]:
            report.append(f"arrow {u}: codomain is not the target node")
            continue
        report.extend(f"arrow {u}: {line}" for line in validate_functor(e.map))
        w = equivariance_witness(e)
        if w is not None:
            report.append(f"arrow {u}: not equivariant at {w[0]} {w[1]}")
    if report:
        return report
    for i in c.objects():
        if d.arrows[c.id_of[i]].map != identity_map(d.nodes[i].carrier):
            report.append(f"functoriality: identity arrow of object {i}")
    for (u, v), w in c.comp.items():
        if d.arrows[u].map.then(d.arrows[v].map) != d.arrows[w].map:
            report.append(f"functoriality: composite ({u},{v})")
    return report


@dataclass(frozen=True)
class GroupoidColimit:
    groupoid: FiniteGroupoid
    cocones: tuple[GroupoidMap, ...]


def colimit_groupoids(index: FiniteCategory, gpds: Sequence[FiniteGroupoid],
                      maps: Sequence[GroupoidMap]) -> GroupoidColimit:
    """Set-level colimit of plain groupoids over the index, with cocone maps."""
    obj_off, mor_off = [], []
    o = m = 0
    for g in gpds:
        obj_off.append(o)
        mor_off.append(m)
        o += g.n_objects
        m += g.n_morphisms
    uf_obj = UnionFind(range(o))
    uf_mor = UnionFind(range(m))
    for u in index.arrows():
        i, j = index.src[u], index.tgt[u]
        f = maps[u]
        for x in gpds[i].objects():
            uf_obj.union(obj_off[i] + x, obj_off[j] + f.obj_map[x])
        for k in gpds[i].morphisms():
            uf_mor.union(mor_off[i] + k, mor_off[j] + f.mor_map[k])

    obj_classes = uf_obj.classes()
    mor_classes = uf_mor.classes()
    obj_class = [0] * o
    for ci, cls in enumerate(obj_classes):
        for x in cls:
            obj_class[x] = ci
    mor_class = [0] * m
    for ci, cls in enumerate(mor_classes):
        for k in cls:
            mor_class[k] = ci

    def locate_mor(k_global):
        for i in reversed(range(len(gpds))):
            if k_global >= mor_off[i]:
                return i, k_global - mor_off[i]
        raise AssertionError

    n_obj = len(obj_classes)
    n_mor = len(mor_classes)
    src = [None] * n_mor
    tgt = [None] * n_mor
    inv = [None] * n_mor
    for ci, cls in enumerate(mor_classes):
        for k_global in cls:
            i, k = locate_mor(k_global)
            s = obj_class[obj_off[i] + gpds[i].src[k]]
            t = obj_class[obj_off[i] + gpds[i].tgt[k]]
            v = mor_class[mor_off[i] + gpds[i].inv[k]]
            assert src[ci] in (None, s) and tgt[ci] in (None, t) and inv[ci] in (None, v)
            src[ci], tgt[ci], inv[ci] = s, t, v
    id_of = [None] * n_obj
    for i, g in enumerate(gpds):
        for x in g.objects():
            cx = obj_class[obj_off[i] + x]
            ce = mor_class[mor_off[i] + g.id_of[x]]
            assert id_of[cx] in (None, ce)
            id_of[cx] = ce
    comp = {}
    for i, g in enumerate(gpds):
        for (m1, m2), m3 in g.comp.items():
            key = (mor_class[mor_off[i] + m1], mor_class[mor_off[i] + m2])
            val = mor_class[mor_off[i] + m3]
            if comp.get(key, val) != val:
                raise NotFilteredError(
                    f"composition on classes is not well-defined at {key}",
                    witness=key)
            comp[key] = val

    colim = FiniteGroupoid(n_obj, src, tgt, id_of, inv, comp)
    cocones = tuple(
        GroupoidMap(
            dom=gpds[i],
            cod=colim,
            obj_map=tuple(obj_class[obj_off[i] + x] for x in gpds[i].objects()),
            mor_map=tuple(mor_class[mor_off[i] + k] for k in gpds[i].morphisms()),
        )
        for i in range(len(gpds))
    )
    return GroupoidColimit(groupoid=colim, cocones=cocones)


@dataclass(frozen=True)
class ColimitResult:
    action: GammaAction
    cocones: tuple[EquivariantMap, ...]

    @property
    def groupoid(self) -> FiniteGroupoid:
        return self.action.carrier


def colimit(d: FilteredDiagram, require_filtered: bool = True) -> ColimitResult:
    """Colimit of the diagram with the induced involution and cocone maps."""
    if require_filtered:
        w = filtered_witness(d.index)
        if w is not None:
            raise NotFilteredError(w, witness=w)
    co = colimit_groupoids(d.index, [a.carrier for a in d.nodes],
                           [e.map for e in d.arrows])
    n_obj = co.groupoid.n_objects
    n_mor = co.groupoid.n_morphisms
    bar_obj = [None] * n_obj
    bar_mor = [None] * n_mor
    for i, a in enumerate(d.nodes):
        f = co.cocones[i]
        for x in a.carrier.objects():
            c, v = f.obj_map[x], f.obj_map[a.bar_obj[x]]
            assert bar_obj[c] in (None, v), "induced involution must be well-defined"
            bar_obj[c] = v
        for k in a.carrier.morphisms():
            c, v = f.mor_map[k], f.mor_map[a.bar_mor[k]]
            assert bar_mor[c] in (None, v), "induced involution must be well-defined"
            bar_mor[c] = v
    action = GammaAction(co.groupoid, tuple(bar_obj), tuple(bar_mor))
    cocones = tuple(
        EquivariantMap(co.cocones[i], d.nodes[i], action) for i in range(len(d.nodes))
    )
    return ColimitResult(action=action, cocones=cocones)


@dataclass(frozen=True)
class ColimitComparison:
    map: Optional[GroupoidMap]
    is_isomorphism: bool
    lhs: FiniteGroupoid = field(compare=False)
    rhs: HomotopyFixedPoints = field(compare=False)
    colimit: ColimitResult = field(compare=False)


def hfp_colimit_comparison(d: FilteredDiagram,
                           require_filtered: bool = True) -> ColimitComparison:
    """Compare the colimit of the fixed points with the fixed points of the
    colimit, via the canonical map; the verdict asks for a bijection on
    objects and on morphisms.
    """
    if require_filtered:
        w = filtered_witness(d.index)
        if w is not None:
            raise NotFilteredError(w, witness=w)
    co = colimit(d, require_filtered=require_filtered)
    rhs = hfp(co.action)
    fps = [hfp(a) for a in d.nodes]
    arrow_maps = [
        hfp_map(d.arrows[u], fps[d.index.src[u]], fps[d.index.tgt[u]])
        for u in d.index.arrows()
    ]
    lhs = colimit_groupoids(d.index, [fp.groupoid for fp in fps], arrow_maps)

    ok = True
    obj_map: list = [None] * lhs.groupoid.n_objects
    for i, fp in enumerate(fps):
        germ = co.cocones[i].map
        for oi, o in enumerate(fp.objects):
            c = lhs.cocones[i].obj_map[oi]
            base_c = germ.obj_map[o.base]
            phi_c = germ.mor_map[o.phi]
            if not rhs.has_object(base_c, phi_c):
                ok = False
                break
            target = rhs.object_id(base_c, phi_c)
            if obj_map[c] is not None and obj_map[c] != target:
                ok = False
                break
            obj_map[c] = target
        if not ok:
            break
    mor_map: list = [None] * lhs.groupoid.n_morphisms
    if ok:
        for i, fp in enumerate(fps):
            germ = co.cocones[i].map
            for mi in fp.groupoid.morphisms():
                c = lhs.cocones[i].mor_map[mi]
                src_c = obj_map[lhs.cocones[i].obj_map[fp.groupoid.src[mi]]]
                alpha_c = germ.mor_map[fp.underlying[mi]]
                if src_c is None or not rhs.has_morphism(src_c, alpha_c):
                    ok = False
                    break
                target = rhs.morphism_id(src_c, alpha_c)
                if mor_map[c] is not None and mor_map[c] != target:
                    ok = False
                    break
                mor_map[c] = target
            if not ok:
                break

    total = ok and all(v is not None for v in obj_map) and all(v is not None for v in mor_map)
    f = None
    if total:
        f = GroupoidMap(lhs.groupoid, rhs.groupoid, tuple(obj_map), tuple(mor_map))
    bijective = (
        total
        and len(set(obj_map)) == len(obj_map) == rhs.groupoid.n_objects
        and len(set(mor_map)) == len(mor_map) == rhs.groupoid.n_morphisms
    )
    return ColimitComparison(map=f, is_isomorphism=bijective, lhs=lhs.groupoid,
                             rhs=rhs, colimit=co)
