"""JSON documents for spaces, value functions, unions and family directories.

All matrices are row-major full symmetric; every document is validated on
load through the library constructors, so malformed files fail with a
path-and-field diagnostic before any computation runs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .errors import ConstructionError
from .gluing import UnionMetric
from .sequences import SequenceFamily
from .space import (
    FuzzySpace,
    make_standard_space,
    make_stationary_space,
    make_step_space,
)
from .tnorm import BUILTIN_KINDS, TNorm
from .valuefn import Standard, Stationary, Step, ValueFn, is_steplike


def tnorm_to_str(norm: TNorm) -> str:
    if norm.kind not in BUILTIN_KINDS:
        raise ConstructionError(f"t-norm kind {norm.kind!r} is not serializable")
    return norm.kind


def tnorm_from_str(text: str) -> TNorm:
    if text not in BUILTIN_KINDS:
        raise ConstructionError(
            f"unknown t-norm {text!r}; expected one of {', '.join(BUILTIN_KINDS)}"
        )
    return TNorm(text)


def valuefn_to_doc(f: ValueFn) -> dict:
    if isinstance(f, Step):
        return {"kind": "step", "breakpoints": list(f.breakpoints), "values": list(f.values)}
    if isinstance(f, Standard):
        return {"kind": "standard", "d": f.d}
    if isinstance(f, Stationary):
        return {"kind": "stationary", "c": f.c}
    raise ConstructionError(f"unknown value-function type {type(f)!r}")


def valuefn_from_doc(doc: dict) -> ValueFn:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ConstructionError("value-function document needs a 'kind' field")
    kind = doc["kind"]
    if kind == "step":
        return Step(tuple(doc["breakpoints"]), tuple(doc["values"]))
    if kind == "standard":
        return Standard(float(doc["d"]))
    if kind == "stationary":
        return Stationary(float(doc["c"]))
    raise ConstructionError(f"unknown value-function kind {kind!r}")


def space_to_doc(space: FuzzySpace) -> dict:
    pairs = space.pairs
    doc: dict = {
        "name": space.name,
        "points": list(space.labels),
        "tnorm": tnorm_to_str(space.norm),
    }
    n = space.n
    if all(isinstance(f, Standard) for f in pairs) and n > 1:
        mat = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                mat[i][j] = mat[j][i] = space.entry(i, j).d  # type: ignore[union-attr]
        doc["metric"] = {"kind": "standard", "distances": mat}
    elif all(isinstance(f, Stationary) for f in pairs):
        mat = [[1.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                mat[i][j] = mat[j][i] = space.entry(i, j).c  # type: ignore[union-attr]
        doc["metric"] = {"kind": "stationary", "values": mat}
    elif all(is_steplike(f) for f in pairs):
        rows = []
        for i in range(n):
            for j in range(i + 1, n):
                f = space.entry(i, j)
                if isinstance(f, Stationary):
                    f = Step((), (f.c,))
                rows.append(
                    {
                        "i": i,
                        "j": j,
                        "breakpoints": list(f.breakpoints),
                        "values": list(f.values),
                    }
                )
        doc["metric"] = {"kind": "step", "pairs": rows}
    else:
        raise ConstructionError(
            "space mixes analytic and step entries; not representable in the document schema"
        )
    return doc


def _require(doc: dict, field: str, where: str):
    if field not in doc:
        raise ConstructionError(f"{where}: missing field {field!r}")
    return doc[field]


def space_from_doc(doc: dict) -> FuzzySpace:
    where = f"space {doc.get('name', '?')!r}"
    labels = [str(l) for l in _require(doc, "points", where)]
    norm = tnorm_from_str(_require(doc, "tnorm", where))
    metric = _require(doc, "metric", where)
    kind = _require(metric, "kind", where)
    name = str(doc.get("name", ""))
    n = len(labels)
    if kind == "standard":
        mat = _require(metric, "distances", where)
        return make_standard_space(labels, mat, norm, name=name)
    if kind == "stationary":
        mat = _require(metric, "values", where)
        return make_stationary_space(labels, mat, norm, name=name)
    if kind == "step":
        rows = _require(metric, "pairs", where)
        entries = {}
        for row in rows:
            i, j = int(_require(row, "i", where)), int(_require(row, "j", where))
            if (i, j) in entries:
                raise ConstructionError(f"{where}: duplicate step entry for pair ({i}, {j})")
            step_bps = tuple(_require(row, "breakpoints", where))
            step_vals = tuple(_require(row, "values", where))
            entries[(i, j)] = Step(step_bps, step_vals)
        expected = n * (n - 1) // 2
        if len(entries) != expected:
            raise ConstructionError(
                f"{where}: step metric needs one entry per unordered pair "
                f"({expected} expected, {len(entries)} given)"
            )
        return make_step_space(labels, entries, norm, name=name)
    raise ConstructionError(f"{where}: unknown metric kind {kind!r}")


def union_to_doc(u: UnionMetric) -> dict:
    return {
        "left": space_to_doc(u.left),
        "right": space_to_doc(u.right),
        "cross": [[valuefn_to_doc(f) for f in row] for row in u.cross],
    }


def union_from_doc(doc: dict) -> UnionMetric:
    left = space_from_doc(_require(doc, "left", "union"))
    right = space_from_doc(_require(doc, "right", "union"))
    cross_doc = _require(doc, "cross", "union")
    cross = tuple(tuple(valuefn_from_doc(d) for d in row) for row in cross_doc)
    return UnionMetric(left, right, cross)


# ---------------------------------------------------------------------------
# files


def load_json(path: Union[str, Path]) -> dict:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConstructionError(f"{path}: invalid JSON: {exc}") from exc


def load_space(path: Union[str, Path]) -> FuzzySpace:
    return space_from_doc(load_json(path))


def save_space(space: FuzzySpace, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_report(space_to_doc(space)) + "\n", encoding="utf-8")


def load_valuefn(path: Union[str, Path]) -> ValueFn:
    return valuefn_from_doc(load_json(path))


FAMILY_MANIFEST = "family.json"


def load_family(directory: Union[str, Path]) -> SequenceFamily:
    """Family directory: one JSON space per file plus a ``family.json`` manifest
    with the ordered file list, an optional floor and optional net registrations."""
    directory = Path(directory)
    manifest_path = directory / FAMILY_MANIFEST
    if not manifest_path.exists():
        raise ConstructionError(f"{directory}: missing {FAMILY_MANIFEST}")
    manifest = load_json(manifest_path)
    files = _require(manifest, "spaces", FAMILY_MANIFEST)
    spaces = tuple(load_space(directory / fname) for fname in files)
    floor = None
    if manifest.get("floor") is not None:
        floor = valuefn_from_doc(manifest["floor"])
    family = SequenceFamily(spaces, floor=floor)
    for entry in manifest.get("nets", []):
        t = float(_require(entry, "t", "nets"))
        eps = float(_require(entry, "eps", "nets"))
        indices = [tuple(int(i) for i in row) for row in _require(entry, "indices", "nets")]
        family.nets[(t, eps)] = tuple(indices)
    return family


def save_family(family: SequenceFamily, directory: Union[str, Path]) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    files = []
    for k, sp in enumerate(family.spaces):
        fname = f"space_{k:03d}.json"
        save_space(sp, directory / fname)
        files.append(fname)
    manifest: dict = {"spaces": files}
    manifest["floor"] = valuefn_to_doc(family.floor) if family.floor is not None else None
    manifest["nets"] = [
        {"t": t, "eps": eps, "indices": [list(row) for row in nets]}
        for (t, eps), nets in sorted(family.nets.items())
    ]
    (directory / FAMILY_MANIFEST).write_text(dumps_report(manifest) + "\n", encoding="utf-8")


def dumps_report(obj) -> str:
    """Canonical JSON: sorted keys, stable indentation, full double precision."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)
