"""JSON instance files.

Schema (all keys except ``groups``, ``vertices`` and ``edges`` optional)::

    {
      "name": "s3-c2-c4",
      "groups": {
        "S3": {"permutations": [[1, 0, 2], [1, 2, 0]]},   # 0-based image lists
        "C4": {"cyclic": 4},
        "G":  {"table": [[0, 1], [1, 0]], "names": ["1", "t"]}
      },
      "vertices": [{"name": "u", "group": "S3"}, ...],
      "edges": [{"name": "e", "from": "u", "to": "w", "group": "C2",
                 "alpha": {"a": "(1,2)"}, "omega": {"a": "a^2"}}, ...],
      "k": 1, "C": 2, "depth_cap": 8, "step_budget": null, "path_check_length": 6,
      "generating_tuple": [{"start": "u", "items": ["(1,2,3)"]},
                           {"start": "u", "items": ["()", "e", "a", "e^-1", "()"]}]
    }

Boundary maps are given on generators of the edge group; elements are
referenced by display name or index.  Permutation groups name their elements
in 1-based cycle notation, cyclic groups as ``1, a, a^2, ...``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import InstanceError
from .graphs import APath, Graph, GraphOfGroups, check_apath, default_generating_tuple
from .groups import GroupMap, GroupTable, verify_group_axioms


@dataclass
class Instance:
    name: str
    A: GraphOfGroups
    k: int | None = None
    C: int | None = None
    depth_cap: int = 8
    step_budget: int | None = None
    path_check_length: int = 6
    tuple_: list[APath] | None = None
    raw: dict = field(default_factory=dict, repr=False)

    def generating_tuple(self) -> list[APath]:
        if self.tuple_ is not None:
            return list(self.tuple_)
        return [p for p, _ in default_generating_tuple(self.A)]


def _group(name: str, spec: Any) -> GroupTable:
    if not isinstance(spec, dict):
        raise InstanceError(f"group {name!r}: expected an object")
    try:
        if "cyclic" in spec:
            return GroupTable.cyclic(int(spec["cyclic"]), name)
        if "permutations" in spec:
            return GroupTable.from_permutations(spec["permutations"], name)
        if "table" in spec:
            rep = verify_group_axioms(spec["table"])
            if not rep:
                raise InstanceError(f"group {name!r}: {rep.message}")
            return GroupTable.from_table(spec["table"], spec.get("names"), name, validate=False)
    except (ValueError, TypeError, IndexError) as exc:
        raise InstanceError(f"group {name!r}: {exc}") from exc
    raise InstanceError(f"group {name!r}: need one of cyclic, permutations, table")


def _require(d: dict, key: str, where: str):
    if key not in d:
        raise InstanceError(f"{where}: missing {key!r}")
    return d[key]


def parse_instance(doc: dict, name: str = "instance") -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    groups = {gn: _group(gn, gs) for gn, gs in _require(doc, "groups", "instance").items()}

    def group_ref(gname, where):
        if gname not in groups:
            raise InstanceError(f"{where}: unknown group {gname!r}")
        return groups[gname]

    vnames: dict[str, int] = {}
    vgroups: dict[int, GroupTable] = {}
    for i, v in enumerate(_require(doc, "vertices", "instance")):
        vn = str(_require(v, "name", f"vertex {i}"))
        if vn in vnames:
            raise InstanceError(f"duplicate vertex {vn!r}")
        vnames[vn] = i
        vgroups[i] = group_ref(_require(v, "group", f"vertex {vn}"), f"vertex {vn}")
    if not vnames:
        raise InstanceError("instance has no vertices")

    alpha: dict[int, int] = {}
    egroups: dict[int, GroupTable] = {}
    maps: dict[int, dict] = {}
    enames: dict[int, str] = {}
    for p, e in enumerate(doc.get("edges", [])):
        en = str(_require(e, "name", f"edge {p}"))
        if en in enames.values():
            raise InstanceError(f"duplicate edge {en!r}")
        for key in ("from", "to"):
            if _require(e, key, f"edge {en}") not in vnames:
                raise InstanceError(f"edge {en}: unknown vertex {e[key]!r}")
        alpha[2 * p], alpha[2 * p + 1] = vnames[e["from"]], vnames[e["to"]]
        egroups[p] = group_ref(_require(e, "group", f"edge {en}"), f"edge {en}")
        # each pair gets its own table object so boundary maps can be checked by identity
        g = egroups[p]
        egroups[p] = GroupTable(g.product, g.inverse, g.names, g.label)
        maps[2 * p] = _require(e, "alpha", f"edge {en}")
        maps[2 * p + 1] = _require(e, "omega", f"edge {en}")
        enames[p] = en

    boundary = {}
    for f, gens in maps.items():
        src, tgt = egroups[f >> 1], vgroups[alpha[f]]
        try:
            m = GroupMap.from_generators(src, tgt, gens)
        except ValueError as exc:
            raise InstanceError(f"edge {enames[f >> 1]}: {'alpha' if f % 2 == 0 else 'omega'} map: {exc}") from exc
        if not m.is_monomorphism():
            raise InstanceError(f"edge {enames[f >> 1]}: boundary map is not injective")
        boundary[f] = m
    try:
        A = GraphOfGroups(Graph(tuple(range(len(vnames))), alpha), vgroups, egroups, boundary,
                          {i: n for n, i in vnames.items()}, enames)
    except ValueError as exc:
        raise InstanceError(str(exc)) from exc
    if len(A.graph.components()) != 1:
        raise InstanceError("underlying graph is not connected")

    tup = None
    if doc.get("generating_tuple") is not None:
        tup = [_parse_path(A, entry, i) for i, entry in enumerate(doc["generating_tuple"])]

    def opt_int(key, default):
        val = doc.get(key, default)
        if val is None:
            return None
        if isinstance(val, bool) or not isinstance(val, int) or val < 0:
            raise InstanceError(f"{key} must be a non-negative integer")
        return val

    return Instance(
        name=str(doc.get("name", name)), A=A, k=opt_int("k", None), C=opt_int("C", None),
        depth_cap=opt_int("depth_cap", 8), step_budget=opt_int("step_budget", None),
        path_check_length=opt_int("path_check_length", 6), tuple_=tup, raw=doc,
    )


def _parse_path(A: GraphOfGroups, entry: Any, i: int) -> APath:
    where = f"generating_tuple[{i}]"
    if not isinstance(entry, dict):
        raise InstanceError(f"{where}: expected an object")
    try:
        v = A.vertex_ref(_require(entry, "start", where))
        items = list(_require(entry, "items", where))
        if len(items) % 2 != 1:
            raise InstanceError(f"{where}: items must alternate element, edge, ..., element")
        edges = [A.edge_ref(str(x)) for x in items[1::2]]
        verts = [v]
        for e in edges:
            verts.append(A.graph.omega(e))
        els = [A.vgroup(u).element(x) for u, x in zip(verts, items[0::2])]
        p = APath(v, tuple(els), tuple(edges))
        check_apath(A, p)
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from exc
    return p


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InstanceError(f"{path}: {exc}") from exc
    return parse_instance(doc, path.stem)
