"""Presheaves of groupoids on finite poset sites.

A site here is a finite poset of opens (with top, bottom, and meets) together
with finitely many points, each having a principal neighborhood filter: a
least open containing it.  Presheaves are strict functors; stalks are
computed as genuine filtered colimits over the neighborhood filter, which for
principal filters must agree with the section at the least open, and that
agreement is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .colimit import (
    ColimitComparison,
    FilteredDiagram,
    FiniteCategory,
    colimit_groupoids,
    hfp_colimit_comparison,
)
from .core import (
    FiniteGroupoid,
    GroupoidMap,
    build_action_groupoid,
    action_mor,
    identity_map,
    is_fibration,
    is_weak_equivalence,
    terminal_groupoid,
    validate_functor,
)
from .gamma import (
    EquivariantMap,
    GammaAction,
    HomotopyFixedPoints,
    equivariance_witness,
    hfp,
    hfp_map,
)
from .groups import FiniteGroup, GroupAction, validate_action, validate_group

__all__ = [
    "FiniteSite",
    "GroupoidPresheaf",
    "PresheafMap",
    "PresheafGammaAction",
    "GroupPresheaf",
    "ActionPresheaf",
    "Stalk",
    "PresheafHfp",
    "validate_site",
    "site_from_open_sets",
    "sierpinski_site",
    "validate_presheaf",
    "validate_presheaf_map",
    "validate_presheaf_gamma_action",
    "validate_group_presheaf",
    "validate_action_presheaf",
    "terminal_presheaf",
    "constant_presheaf",
    "point_filter_category",
    "stalk",
    "stalk_map",
    "stalk_gamma_action",
    "diagram_at_point",
    "is_sectionwise_weq",
    "is_sectionwise_fib",
    "is_local_weq",
    "is_local_fib",
    "presheaf_hfp",
    "stalk_commutation_check",
    "build_presheaf_action_groupoid",
    "eg_action_presheaf",
    "bg_action_presheaf",
]


@dataclass(frozen=True)
class FiniteSite:
    """A finite poset of opens with points whose filters are principal.

    ``leq`` contains (u, v) when u is contained in v; ``point_open[t]`` is
    the least open containing point t.
    """

    open_labels: tuple[str, ...]
    leq: frozenset
    point_labels: tuple[str, ...]
    point_open: tuple[int, ...]

    @property
    def n_opens(self) -> int:
        return len(self.open_labels)

    @property
    def n_points(self) -> int:
        return len(self.point_labels)

    def opens(self) -> range:
        return range(self.n_opens)

    def points(self) -> range:
        return range(self.n_points)

    def is_leq(self, u: int, v: int) -> bool:
        return (u, v) in self.leq

    def filter_opens(self, t: int) -> tuple[int, ...]:
        """All opens containing the point t, in increasing id order."""
        ut = self.point_open[t]
        return tuple(u for u in self.opens() if self.is_leq(ut, u))

    def comparable_pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs (u, v) with v strictly below u: the restriction directions."""
        return tuple(
            (u, v) for u in self.opens() for v in self.opens()
            if u != v and self.is_leq(v, u)
        )


def validate_site(s: FiniteSite) -> list[str]:
    report = []
    n = s.n_opens
    for (u, v) in s.leq:
        if not (0 <= u < n and 0 <= v < n):
            report.append("shape: leq entry out of range")
            return report
    for u in s.opens():
        if not s.is_leq(u, u):
            report.append(f"poset: {u} is not below itself")
    for (u, v) in s.leq:
        if u != v and s.is_leq(v, u):
            report.append(f"poset: {u} and {v} are below each other")
    for (u, v) in s.leq:
        for w in s.opens():
            if s.is_leq(v, w) and not s.is_leq(u, w):
                report.append(f"poset: transitivity fails at ({u},{v},{w})")
    if report:
        return report
    if not any(all(s.is_leq(u, t) for u in s.opens()) for t in s.opens()):
        report.append("bounds: no top open")
    if not any(all(s.is_leq(b, u) for u in s.opens()) for b in s.opens()):
        report.append("bounds: no bottom open")
    for u in s.opens():
        for v in s.opens():
            lower = [w for w in s.opens() if s.is_leq(w, u) and s.is_leq(w, v)]
            if not any(all(s.is_leq(x, w) for x in lower) for w in lower):
                report.append(f"meets: opens {u} and {v} have no meet")
    for t in s.points():
        if not 0 <= s.point_open[t] < n:
            report.append(f"points: least open of point {t} out of range")
    seen = {}
    for u in s.opens():
        key = frozenset(t for t in s.points() if s.is_leq(s.point_open[t], u))
        if key in seen:
            report.append(f"separation: opens {seen[key]} and {u} contain the same points")
        else:
            seen[key] = u
    return report


def site_from_open_sets(point_labels: Sequence[str],
                        open_sets: Sequence[frozenset]) -> FiniteSite:
    """Build a site from opens given as sets of point indices.

    Opens are sorted by (size, sorted members); every point must have a least
    open containing it.
    """
    opens = sorted(set(frozenset(u) for u in open_sets), key=lambda u: (len(u), sorted(u)))
    labels = tuple(
        "{" + ",".join(point_labels[t] for t in sorted(u)) + "}" if u else "{}"
        for u in opens
    )
    leq = frozenset(
        (i, j) for i, u in enumerate(opens) for j, v in enumerate(opens) if u <= v
    )
    point_open = []
    for t in range(len(point_labels)):
        containing = [i for i, u in enumerate(opens) if t in u]
        if not containing:
            raise ValueError(f"point {point_labels[t]} lies in no open")
        least = min(containing, key=lambda i: len(opens[i]))
        if not all(opens[least] <= opens[i] for i in containing):
            raise ValueError(f"point {point_labels[t]} has no least open")
        point_open.append(least)
    return FiniteSite(open_labels=labels, leq=leq,
                      point_labels=tuple(point_labels), point_open=tuple(point_open))


def sierpinski_site() -> FiniteSite:
    """Two points a, b; opens {}, {a}, {a,b}."""
    return site_from_open_sets(
        ("a", "b"),
        (frozenset(), frozenset({0}), frozenset({0, 1})),
    )


@dataclass(frozen=True)
class GroupoidPresheaf:
    """A strict presheaf of groupoids: a section per open and a restriction
    functor for every strictly comparable pair of opens."""

    site: FiniteSite
    sections: tuple[FiniteGroupoid, ...]
    res: dict = field(hash=False)

    def res_map(self, u: int, v: int) -> GroupoidMap:
        if u == v:
            return identity_map(self.sections[u])
        return self.res[(u, v)]


def validate_presheaf(x: GroupoidPresheaf) -> list[str]:
    report = []
    s = x.site
    if len(x.sections) != s.n_opens:
        report.append("shape: one section per open expected")
        return report
    pairs = set(s.comparable_pairs())
    if set(x.res) != pairs:
        report.append("shape: restriction keys must be the strictly comparable pairs")
        return report
    for (u, v), f in x.res.items():
        if f.dom != x.sections[u] or f.cod != x.sections[v]:
            report.append(f"restriction ({u},{v}): wrong endpoints")
            continue
        report.extend(f"restriction ({u},{v}): {line}" for line in validate_functor(f))
    if report:
        return report
    for (u, v) in pairs:
        for w in s.opens():
            if w != v and w != u and s.is_leq(w, v):
                if x.res[(u, v)].then(x.res[(v, w)]) != x.res[(u, w)]:
                    report.append(f"functoriality: ({u},{v},{w})")
    return report


@dataclass(frozen=True)
class PresheafMap:
    dom: GroupoidPresheaf
    cod: GroupoidPresheaf
    at: tuple[GroupoidMap, ...]


def validate_presheaf_map(f: PresheafMap) -> list[str]:
    report = []
    s = f.dom.site
    if f.cod.site != s:
        report.append("shape: the presheaves live on different sites")
        return report
    if len(f.at) != s.n_opens:
        report.append("shape: one component per open expected")
        return report
    for u in s.opens():
        report.extend(f"component {u}: {line}" for line in validate_functor(f.at[u]))
    if report:
        return report
    for (u, v) in s.comparable_pairs():
        if f.at[u].then(f.cod.res[(u, v)]) != f.dom.res[(u, v)].then(f.at[v]):
            report.append(f"naturality: ({u},{v})")
    return report


@dataclass(frozen=True)
class PresheafGammaAction:
    """A presheaf of groupoids with a compatible involution on each section."""

    presheaf: GroupoidPresheaf
    at: tuple[GammaAction, ...]


def validate_presheaf_gamma_action(a: PresheafGammaAction) -> list[str]:
    from .gamma import validate_gamma_action

    report = []
    s = a.presheaf.site
    if len(a.at) != s.n_opens:
        report.append("shape: one involution per open expected")
        return report
    for u in s.opens():
        if a.at[u].carrier != a.presheaf.sections[u]:
            report.append(f"carrier: open {u}")
            continue
        report.extend(f"open {u}: {line}" for line in validate_gamma_action(a.at[u]))
    if report:
        return report
    for (u, v) in s.comparable_pairs():
        e = EquivariantMap(a.presheaf.res[(u, v)], a.at[u], a.at[v])
        w = equivariance_witness(e)
        if w is not None:
            report.append(f"equivariance: restriction ({u},{v}) at {w[0]} {w[1]}")
    return report


def terminal_presheaf(site: FiniteSite) -> GroupoidPresheaf:
    t = terminal_groupoid()
    res = {pair: identity_map(t) for pair in site.comparable_pairs()}
    return GroupoidPresheaf(site=site, sections=tuple(t for _ in site.opens()), res=res)


def constant_presheaf(site: FiniteSite, g: FiniteGroupoid) -> GroupoidPresheaf:
    res = {pair: identity_map(g) for pair in site.comparable_pairs()}
    return GroupoidPresheaf(site=site, sections=tuple(g for _ in site.opens()), res=res)


def point_filter_category(site: FiniteSite, t: int) -> tuple[FiniteCategory, tuple[int, ...]]:
    """The neighborhood filter of a point as a finite (filtered) category.

    Arrows run from larger opens to smaller ones, the restriction direction.
    Returns the category and the opens in position order.
    """
    opens = site.filter_opens(t)
    pos = {u: i for i, u in enumerate(opens)}
    arrows = []
    arrow_id = {}
    for u in opens:
        for v in opens:
            if site.is_leq(v, u):
                arrow_id[(pos[u], pos[v])] = len(arrows)
                arrows.append((pos[u], pos[v]))
    comp = {}
    for (i, j), a1 in arrow_id.items():
        for (j2, k), a2 in arrow_id.items():
            if j == j2:
                comp[(a1, a2)] = arrow_id[(i, k)]
    cat = FiniteCategory(
        n_objects=len(opens),
        src=tuple(a[0] for a in arrows),
        tgt=tuple(a[1] for a in arrows),
        id_of=tuple(arrow_id[(i, i)] for i in range(len(opens))),
        comp=comp,
    )
    return cat, opens


@dataclass(frozen=True)
class Stalk:
    groupoid: FiniteGroupoid
    opens: tuple[int, ...]
    germs: dict = field(hash=False)


def stalk(x: GroupoidPresheaf, t: int) -> Stalk:
    """The stalk at a point, as the colimit over its neighborhood filter.

    The filter is principal, so the germ map from the section at the least
    open must be an isomorphism; that is asserted, not assumed.
    """
    cat, opens = point_filter_category(x.site, t)
    gpds = [x.sections[u] for u in opens]
    maps = []
    for i in range(len(opens)):
        for j in range(len(opens)):
            if x.site.is_leq(opens[j], opens[i]):
                maps.append(x.res_map(opens[i], opens[j]))
    co = colimit_groupoids(cat, gpds, maps)
    germs = {opens[i]: co.cocones[i] for i in range(len(opens))}
    least = x.site.point_open[t]
    germ = germs[least]
    assert (len(set(germ.obj_map)) == co.groupoid.n_objects == x.sections[least].n_objects
            and len(set(germ.mor_map)) == co.groupoid.n_morphisms == x.sections[least].n_morphisms), \
        "a principal filter must have its least-open germ an isomorphism"
    return Stalk(groupoid=co.groupoid, opens=opens, germs=germs)


def stalk_map(f: PresheafMap, t: int) -> GroupoidMap:
    """The induced map on stalks at a point."""
    sd = stalk(f.dom, t)
    sc = stalk(f.cod, t)
    obj_map: list = [None] * sd.groupoid.n_objects
    mor_map: list = [None] * sd.groupoid.n_morphisms
    for u in sd.opens:
        gd, gc = sd.germs[u], sc.germs[u]
        fu = f.at[u]
        for x in f.dom.sections[u].objects():
            c, v = gd.obj_map[x], gc.obj_map[fu.obj_map[x]]
            assert obj_map[c] in (None, v), "stalk map must be independent of the germ"
            obj_map[c] = v
        for k in f.dom.sections[u].morphisms():
            c, v = gd.mor_map[k], gc.mor_map[fu.mor_map[k]]
            assert mor_map[c] in (None, v), "stalk map must be independent of the germ"
            mor_map[c] = v
    assert None not in obj_map and None not in mor_map
    return GroupoidMap(sd.groupoid, sc.groupoid, tuple(obj_map), tuple(mor_map))


def stalk_gamma_action(a: PresheafGammaAction, t: int) -> GammaAction:
    """The involution induced on the stalk of the underlying presheaf."""
    st = stalk(a.presheaf, t)
    bar_obj: list = [None] * st.groupoid.n_objects
    bar_mor: list = [None] * st.groupoid.n_morphisms
    for u in st.opens:
        germ = st.germs[u]
        act = a.at[u]
        for x in a.presheaf.sections[u].objects():
            c, v = germ.obj_map[x], germ.obj_map[act.bar_obj[x]]
            assert bar_obj[c] in (None, v)
            bar_obj[c] = v
        for k in a.presheaf.sections[u].morphisms():
            c, v = germ.mor_map[k], germ.mor_map[act.bar_mor[k]]
            assert bar_mor[c] in (None, v)
            bar_mor[c] = v
    return GammaAction(st.groupoid, tuple(bar_obj), tuple(bar_mor))


def diagram_at_point(a: PresheafGammaAction, t: int) -> FilteredDiagram:
    """The neighborhood filter of t as a diagram of groupoids with involution."""
    cat, opens = point_filter_category(a.presheaf.site, t)
    nodes = tuple(a.at[u] for u in opens)
    arrows = []
    for i in range(len(opens)):
        for j in range(len(opens)):
            if a.presheaf.site.is_leq(opens[j], opens[i]):
                arrows.append(EquivariantMap(
                    a.presheaf.res_map(opens[i], opens[j]), a.at[opens[i]], a.at[opens[j]]))
    return FilteredDiagram(index=cat, nodes=nodes, arrows=tuple(arrows))


def is_sectionwise_weq(f: PresheafMap) -> bool:
    return all(is_weak_equivalence(f.at[u]) for u in f.dom.site.opens())


def is_sectionwise_fib(f: PresheafMap) -> bool:
    return all(is_fibration(f.at[u]) for u in f.dom.site.opens())


def is_local_weq(f: PresheafMap) -> bool:
    return all(is_weak_equivalence(stalk_map(f, t)) for t in f.dom.site.points())


def is_local_fib(f: PresheafMap) -> bool:
    return all(is_fibration(stalk_map(f, t)) for t in f.dom.site.points())


@dataclass(frozen=True)
class PresheafHfp:
    presheaf: GroupoidPresheaf
    iota: PresheafMap
    fixed_points: tuple[HomotopyFixedPoints, ...]


def presheaf_hfp(a: PresheafGammaAction) -> PresheafHfp:
    """Apply homotopy fixed points open by open; restrictions are the induced
    maps, and the forgetful map is a map of presheaves."""
    x = a.presheaf
    fps = tuple(hfp(a.at[u]) for u in x.site.opens())
    sections = tuple(fp.groupoid for fp in fps)
    res = {}
    for (u, v) in x.site.comparable_pairs():
        e = EquivariantMap(x.res[(u, v)], a.at[u], a.at[v])
        res[(u, v)] = hfp_map(e, fps[u], fps[v])
    out = GroupoidPresheaf(site=x.site, sections=sections, res=res)
    iota = PresheafMap(dom=out, cod=x, at=tuple(fp.iota() for fp in fps))
    return PresheafHfp(presheaf=out, iota=iota, fixed_points=fps)


def stalk_commutation_check(a: PresheafGammaAction, t: int) -> ColimitComparison:
    """Compare the stalk of the fixed point presheaf with the fixed points of
    the stalk, over the neighborhood filter of the point."""
    return hfp_colimit_comparison(diagram_at_point(a, t))


@dataclass(frozen=True)
class GroupPresheaf:
    """A presheaf of finite groups: groups per open, homomorphisms downward."""

    site: FiniteSite
    groups: tuple[FiniteGroup, ...]
    res: dict = field(hash=False)

    def res_hom(self, u: int, v: int) -> tuple[int, ...]:
        if u == v:
            return tuple(self.groups[u].elements())
        return self.res[(u, v)]


def validate_group_presheaf(g: GroupPresheaf) -> list[str]:
    report = []
    s = g.site
    if len(g.groups) != s.n_opens:
        report.append("shape: one group per open expected")
        return report
    for u in s.opens():
        report.extend(f"group {u}: {line}" for line in validate_group(g.groups[u]))
    pairs = set(s.comparable_pairs())
    if set(g.res) != pairs:
        report.append("shape: restriction keys must be the strictly comparable pairs")
        return report
    for (u, v), h in g.res.items():
        gu, gv = g.groups[u], g.groups[v]
        if len(h) != gu.order or any(not 0 <= y < gv.order for y in h):
            report.append(f"restriction ({u},{v}): not a map of element sets")
            continue
        if h[gu.identity] != gv.identity:
            report.append(f"restriction ({u},{v}): identity not preserved")
        for p in gu.elements():
            for q in gu.elements():
                if h[gu.mul(p, q)] != gv.mul(h[p], h[q]):
                    report.append(f"restriction ({u},{v}): not a homomorphism at ({p},{q})")
    if report:
        return report
    for (u, v) in pairs:
        for w in s.opens():
            if w != v and w != u and s.is_leq(w, v):
                left = tuple(g.res[(v, w)][y] for y in g.res[(u, v)])
                if left != g.res[(u, w)]:
                    report.append(f"functoriality: ({u},{v},{w})")
    return report


@dataclass(frozen=True)
class ActionPresheaf:
    """Sets with group action, presheaf-wise: the groups restrict, the sets
    restrict, and the two restrictions intertwine the actions."""

    groups: GroupPresheaf
    actions: tuple[GroupAction, ...]
    set_res: dict = field(hash=False)

    def set_res_map(self, u: int, v: int) -> tuple[int, ...]:
        if u == v:
            return tuple(range(self.actions[u].n_points))
        return self.set_res[(u, v)]


def validate_action_presheaf(a: ActionPresheaf) -> list[str]:
    report = list(validate_group_presheaf(a.groups))
    if report:
        return report
    s = a.groups.site
    if len(a.actions) != s.n_opens:
        report.append("shape: one action per open expected")
        return report
    for u in s.opens():
        if a.actions[u].group != a.groups.groups[u]:
            report.append(f"action {u}: group mismatch")
            continue
        report.extend(f"action {u}: {line}" for line in validate_action(a.actions[u]))
    if report:
        return report
    for (u, v) in s.comparable_pairs():
        r = a.set_res[(u, v)]
        if len(r) != a.actions[u].n_points or any(
                not 0 <= y < a.actions[v].n_points for y in r):
            report.append(f"set restriction ({u},{v}): not a map of carriers")
            continue
        h = a.groups.res[(u, v)]
        for g_elem in a.groups.groups[u].elements():
            for x in range(a.actions[u].n_points):
                if r[a.actions[u].act(g_elem, x)] != a.actions[v].act(h[g_elem], r[x]):
                    report.append(f"compatibility ({u},{v}): ({g_elem},{x})")
    if report:
        return report
    for (u, v) in s.comparable_pairs():
        for w in s.opens():
            if w != v and w != u and s.is_leq(w, v):
                left = tuple(a.set_res[(v, w)][y] for y in a.set_res[(u, v)])
                if left != a.set_res[(u, w)]:
                    report.append(f"set functoriality: ({u},{v},{w})")
    return report


def build_presheaf_action_groupoid(a: ActionPresheaf) -> GroupoidPresheaf:
    """Action groupoids open by open, with the induced restriction functors."""
    s = a.groups.site
    sections = tuple(build_action_groupoid(a.actions[u]) for u in s.opens())
    res = {}
    for (u, v) in s.comparable_pairs():
        au, av = a.actions[u], a.actions[v]
        h = a.groups.res[(u, v)]
        r = a.set_res[(u, v)]
        obj_map = tuple(r)
        mor_map = tuple(
            action_mor(av, h[g_elem], r[x])
            for g_elem in a.groups.groups[u].elements()
            for x in range(au.n_points)
        )
        res[(u, v)] = GroupoidMap(sections[u], sections[v], obj_map, mor_map)
    return GroupoidPresheaf(site=s, sections=sections, res=res)


def eg_action_presheaf(g: GroupPresheaf) -> ActionPresheaf:
    """Each group acting on itself by left multiplication, restricted along
    the group homomorphisms."""
    from .groups import left_multiplication_action

    actions = tuple(left_multiplication_action(g.groups[u]) for u in g.site.opens())
    set_res = {pair: tuple(h) for pair, h in g.res.items()}
    return ActionPresheaf(groups=g, actions=actions, set_res=set_res)


def bg_action_presheaf(g: GroupPresheaf) -> ActionPresheaf:
    from .groups import trivial_point_action

    actions = tuple(trivial_point_action(g.groups[u]) for u in g.site.opens())
    set_res = {pair: (0,) for pair in g.site.comparable_pairs()}
    return ActionPresheaf(groups=g, actions=actions, set_res=set_res)
