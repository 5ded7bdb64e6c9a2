"""JSON input and output for the finite structures, plus DOT export.

Every document carries ``"schema": 1`` and a ``"kind"``.  Loaders check the
document shape only; axioms are left to the validators so that a broken
structure can still be loaded and reported on.  Dumps are deterministic:
composition tables and order relations are sorted and ``dumps`` emits sorted
keys.
"""

from __future__ import annotations

import json
from typing import Any

from .cohomology import GroupGammaAction
from .colimit import FiniteCategory, FilteredDiagram
from .core import FiniteGroupoid, GroupoidMap
from .gamma import EquivariantMap, GammaAction
from .groups import FiniteGroup, _from_table
from .presheaf import FiniteSite, GroupoidPresheaf, PresheafGammaAction
from .twisted import InvolutiveGroupData

__all__ = [
    "SchemaError",
    "SCHEMA_VERSION",
    "dump_groupoid",
    "load_groupoid",
    "dump_group",
    "load_group",
    "dump_group_involution",
    "load_group_involution",
    "dump_gamma_action",
    "load_gamma_action",
    "dump_twisted_data",
    "load_twisted_data",
    "dump_site",
    "load_site",
    "dump_presheaf_action",
    "load_presheaf_action",
    "dump_diagram",
    "load_diagram",
    "dump_document",
    "load_document",
    "dumps",
    "loads",
    "to_dot",
]

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def _require(doc: Any, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected a {kind} object, got {type(doc).__name__}")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("kind") != kind:
        raise SchemaError(f"expected kind {kind!r}, got {doc.get('kind')!r}")
    return doc


def _int_list(doc: dict, key: str, kind: str) -> tuple[int, ...]:
    val = doc.get(key)
    if not isinstance(val, list) or not all(isinstance(x, int) for x in val):
        raise SchemaError(f"{kind}: {key} must be a list of integers")
    return tuple(val)


def _str_list(doc: dict, key: str, kind: str, optional: bool = True):
    val = doc.get(key)
    if val is None and optional:
        return None
    if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
        raise SchemaError(f"{kind}: {key} must be a list of strings")
    return tuple(val)


def _triples(doc: dict, key: str, kind: str) -> dict:
    val = doc.get(key)
    if not isinstance(val, list):
        raise SchemaError(f"{kind}: {key} must be a list of triples")
    out = {}
    for row in val:
        if (not isinstance(row, list) or len(row) != 3
                or not all(isinstance(x, int) for x in row)):
            raise SchemaError(f"{kind}: {key} entries must be integer triples")
        out[(row[0], row[1])] = row[2]
    return out


# ---------------------------------------------------------------------------
# groupoids


def dump_groupoid(g: FiniteGroupoid) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": "groupoid",
        "n_objects": g.n_objects,
        "src": list(g.src),
        "tgt": list(g.tgt),
        "id_of": list(g.id_of),
        "inv": list(g.inv),
        "comp": [[a, b, c] for (a, b), c in sorted(g.comp.items())],
    }
    if g.obj_labels is not None:
        doc["obj_labels"] = list(g.obj_labels)
    if g.mor_labels is not None:
        doc["mor_labels"] = list(g.mor_labels)
    return doc


def load_groupoid(doc: Any) -> FiniteGroupoid:
    doc = _require(doc, "groupoid")
    n = doc.get("n_objects")
    if not isinstance(n, int) or n < 0:
        raise SchemaError("groupoid: n_objects must be a nonnegative integer")
    return FiniteGroupoid(
        n,
        _int_list(doc, "src", "groupoid"),
        _int_list(doc, "tgt", "groupoid"),
        _int_list(doc, "id_of", "groupoid"),
        _int_list(doc, "inv", "groupoid"),
        _triples(doc, "comp", "groupoid"),
        obj_labels=_str_list(doc, "obj_labels", "groupoid"),
        mor_labels=_str_list(doc, "mor_labels", "groupoid"),
    )


# ---------------------------------------------------------------------------
# groups


def dump_group(g: FiniteGroup) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "group",
        "name": g.name,
        "table": [list(row) for row in g.table],
        "labels": list(g.labels) if g.labels is not None else None,
    }


def load_group(doc: Any) -> FiniteGroup:
    doc = _require(doc, "group")
    table = doc.get("table")
    if (not isinstance(table, list)
            or not all(isinstance(row, list)
                       and all(isinstance(x, int) for x in row) for row in table)):
        raise SchemaError("group: table must be a list of integer rows")
    labels = doc.get("labels")
    if labels is not None:
        labels = _str_list(doc, "labels", "group")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("group: name must be a string")
    try:
        return _from_table(tuple(tuple(row) for row in table),
                           name or "G", labels)
    except ValueError as exc:
        raise SchemaError(f"group: {exc}") from exc


def dump_group_involution(a: GroupGammaAction) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "group-involution",
        "group": dump_group(a.group),
        "bar": list(a.bar),
    }


def load_group_involution(doc: Any) -> GroupGammaAction:
    doc = _require(doc, "group-involution")
    return GroupGammaAction(
        group=load_group(doc.get("group")),
        bar=_int_list(doc, "bar", "group-involution"),
    )


# ---------------------------------------------------------------------------
# involutions on groupoids


def dump_gamma_action(a: GammaAction) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "gamma-action",
        "groupoid": dump_groupoid(a.carrier),
        "bar_obj": list(a.bar_obj),
        "bar_mor": list(a.bar_mor),
    }


def load_gamma_action(doc: Any) -> GammaAction:
    doc = _require(doc, "gamma-action")
    return GammaAction(
        carrier=load_groupoid(doc.get("groupoid")),
        bar_obj=_int_list(doc, "bar_obj", "gamma-action"),
        bar_mor=_int_list(doc, "bar_mor", "gamma-action"),
    )


# ---------------------------------------------------------------------------
# twisted module data


def dump_twisted_data(d: InvolutiveGroupData) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "twisted-data",
        "group": dump_group(d.group),
        "theta": list(d.theta),
        "b_elements": list(d.b_elements),
    }


def load_twisted_data(doc: Any) -> InvolutiveGroupData:
    doc = _require(doc, "twisted-data")
    return InvolutiveGroupData(
        group=load_group(doc.get("group")),
        theta=_int_list(doc, "theta", "twisted-data"),
        b_elements=_int_list(doc, "b_elements", "twisted-data"),
    )


# ---------------------------------------------------------------------------
# sites and presheaves


def dump_site(s: FiniteSite) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "site",
        "open_labels": list(s.open_labels),
        "leq": [[u, v] for (u, v) in sorted(s.leq)],
        "point_labels": list(s.point_labels),
        "point_open": list(s.point_open),
    }


def load_site(doc: Any) -> FiniteSite:
    doc = _require(doc, "site")
    leq = doc.get("leq")
    if (not isinstance(leq, list)
            or not all(isinstance(p, list) and len(p) == 2
                       and all(isinstance(x, int) for x in p) for p in leq)):
        raise SchemaError("site: leq must be a list of integer pairs")
    open_labels = _str_list(doc, "open_labels", "site", optional=False)
    point_labels = _str_list(doc, "point_labels", "site", optional=False)
    return FiniteSite(
        open_labels=open_labels,
        leq=frozenset((p[0], p[1]) for p in leq),
        point_labels=point_labels,
        point_open=_int_list(doc, "point_open", "site"),
    )


def _dump_map_tables(f: GroupoidMap) -> dict:
    return {"obj_map": list(f.obj_map), "mor_map": list(f.mor_map)}


def _load_map_tables(doc: Any, dom, cod, kind: str) -> GroupoidMap:
    if not isinstance(doc, dict):
        raise SchemaError(f"{kind}: each map must be an object")
    return GroupoidMap(
        dom, cod,
        _int_list(doc, "obj_map", kind),
        _int_list(doc, "mor_map", kind),
    )


def dump_presheaf_action(p: PresheafGammaAction) -> dict:
    site = p.presheaf.site
    return {
        "schema": SCHEMA_VERSION,
        "kind": "presheaf",
        "site": dump_site(site),
        "sections": [dump_gamma_action(a) for a in p.at],
        "res": [
            [u, v, _dump_map_tables(p.presheaf.res[(u, v)])]
            for (u, v) in sorted(site.comparable_pairs())
        ],
    }


def load_presheaf_action(doc: Any) -> PresheafGammaAction:
    doc = _require(doc, "presheaf")
    site = load_site(doc.get("site"))
    sections = doc.get("sections")
    if not isinstance(sections, list):
        raise SchemaError("presheaf: sections must be a list")
    at = tuple(load_gamma_action(s) for s in sections)
    res_doc = doc.get("res")
    if not isinstance(res_doc, list):
        raise SchemaError("presheaf: res must be a list")
    res = {}
    for row in res_doc:
        if (not isinstance(row, list) or len(row) != 3
                or not isinstance(row[0], int) or not isinstance(row[1], int)):
            raise SchemaError("presheaf: res entries must be [u, v, map]")
        u, v = row[0], row[1]
        if not (0 <= u < len(at) and 0 <= v < len(at)):
            raise SchemaError("presheaf: res endpoints out of range")
        res[(u, v)] = _load_map_tables(row[2], at[u].carrier, at[v].carrier, "presheaf")
    x = GroupoidPresheaf(site=site, sections=tuple(a.carrier for a in at), res=res)
    return PresheafGammaAction(presheaf=x, at=at)


# ---------------------------------------------------------------------------
# diagrams


def _dump_category(c: FiniteCategory) -> dict:
    return {
        "n_objects": c.n_objects,
        "src": list(c.src),
        "tgt": list(c.tgt),
        "id_of": list(c.id_of),
        "comp": [[a, b, w] for (a, b), w in sorted(c.comp.items())],
    }


def _load_category(doc: Any) -> FiniteCategory:
    if not isinstance(doc, dict):
        raise SchemaError("diagram: index must be an object")
    n = doc.get("n_objects")
    if not isinstance(n, int) or n < 0:
        raise SchemaError("diagram: index n_objects must be a nonnegative integer")
    return FiniteCategory(
        n_objects=n,
        src=_int_list(doc, "src", "diagram"),
        tgt=_int_list(doc, "tgt", "diagram"),
        id_of=_int_list(doc, "id_of", "diagram"),
        comp=_triples(doc, "comp", "diagram"),
    )


def dump_diagram(d: FilteredDiagram) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "diagram",
        "index": _dump_category(d.index),
        "nodes": [dump_gamma_action(a) for a in d.nodes],
        "arrows": [_dump_map_tables(e.map) for e in d.arrows],
    }


def load_diagram(doc: Any) -> FilteredDiagram:
    doc = _require(doc, "diagram")
    index = _load_category(doc.get("index"))
    nodes_doc = doc.get("nodes")
    if not isinstance(nodes_doc, list) or len(nodes_doc) != index.n_objects:
        raise SchemaError("diagram: one node per index object expected")
    nodes = tuple(load_gamma_action(n) for n in nodes_doc)
    arrows_doc = doc.get("arrows")
    if not isinstance(arrows_doc, list) or len(arrows_doc) != index.n_arrows:
        raise SchemaError("diagram: one arrow map per index arrow expected")
    arrows = []
    for u, row in enumerate(arrows_doc):
        i, j = index.src[u], index.tgt[u]
        if not (0 <= i < len(nodes) and 0 <= j < len(nodes)):
            raise SchemaError("diagram: index arrow endpoints out of range")
        arrows.append(EquivariantMap(
            _load_map_tables(row, nodes[i].carrier, nodes[j].carrier, "diagram"),
            nodes[i], nodes[j]))
    return FilteredDiagram(index=index, nodes=nodes, arrows=tuple(arrows))


# ---------------------------------------------------------------------------
# dispatch


_DUMPERS = (
    (PresheafGammaAction, dump_presheaf_action),
    (FilteredDiagram, dump_diagram),
    (InvolutiveGroupData, dump_twisted_data),
    (GroupGammaAction, dump_group_involution),
    (GammaAction, dump_gamma_action),
    (FiniteSite, dump_site),
    (FiniteGroup, dump_group),
    (FiniteGroupoid, dump_groupoid),
)

_LOADERS = {
    "groupoid": load_groupoid,
    "group": load_group,
    "group-involution": load_group_involution,
    "gamma-action": load_gamma_action,
    "twisted-data": load_twisted_data,
    "site": load_site,
    "presheaf": load_presheaf_action,
    "diagram": load_diagram,
}


def dump_document(obj: Any) -> dict:
    for cls, dumper in _DUMPERS:
        if isinstance(obj, cls):
            return dumper(obj)
    raise SchemaError(f"no serialization for {type(obj).__name__}")


def load_document(doc: Any):
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    kind = doc.get("kind")
    if kind not in _LOADERS:
        raise SchemaError(f"unknown kind {kind!r}")
    return _LOADERS[kind](doc)


def dumps(obj: Any) -> str:
    return json.dumps(dump_document(obj), indent=2, sort_keys=True) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    return load_document(doc)


# ---------------------------------------------------------------------------
# DOT export


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(g: FiniteGroupoid, name: str = "groupoid") -> str:
    """The groupoid as a directed graph; identity loops are left out."""
    identities = set(g.id_of)
    lines = [f'digraph "{_dot_escape(name)}" {{']
    for x in g.objects():
        lines.append(f'  o{x} [label="{_dot_escape(g.obj_label(x))}"];')
    for m in g.morphisms():
        if m in identities:
            continue
        lines.append(
            f'  o{g.src[m]} -> o{g.tgt[m]} [label="{_dot_escape(g.mor_label(m))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
