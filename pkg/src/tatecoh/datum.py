"""JSON datum files: path-tagged parsing and deterministic serialization.

One document describes one object.  The envelope is

    {"version": 1, "kind": "<kind>", "name": "...", ...payload}

with kind one of group, gmodule, torus, formation, frobmodule,
filtration.  Matrices are row-major arrays of integer rows; group
elements are indices into the multiplication table; cocycle tables are
indexed [g][h] with module coordinate vectors as entries.  Integers
beyond 53-bit float safety are written as decimal strings, and the
parser accepts either form everywhere an integer is expected.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .cohomology import BarComplex, FormationTwist, TwoCocycle
from .frobloop import FiltrationDatum, FrobeniusModule
from .gaction import FiniteGroup, GModule, GroupMap, Subgroup
from .langlands import AmbientDatum, ClassFormationDatum, TorusDatum, induced_torus
from .zmodule import FgAbelianGroup, Mat

INT_SAFE = 2 ** 53
KINDS = ("group", "gmodule", "torus", "formation", "frobmodule", "filtration")
VERSION = 1


class DatumError(ValueError):
    """Structural failure in a datum document, located by a path."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"at {path}: {message}")


# ------------------------------------------------------------- decoding


def _need(doc: Any, key: str, path: str) -> tuple[Any, str]:
    if not isinstance(doc, dict):
        raise DatumError(path, "expected an object")
    if key not in doc:
        raise DatumError(path, f"missing field {key!r}")
    return doc[key], f"{path}.{key}"


def _as_int(node: Any, path: str) -> int:
    if isinstance(node, bool):
        raise DatumError(path, "expected an integer, found a boolean")
    if isinstance(node, int):
        return node
    if isinstance(node, str):
        s = node.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit():
            return int(s)
    raise DatumError(path, "expected an integer or a decimal string")


def _as_str(node: Any, path: str) -> str:
    if not isinstance(node, str):
        raise DatumError(path, "expected a string")
    return node


def _as_grid(node: Any, path: str, rows: int | None = None,
             cols: int | None = None) -> list[list[int]]:
    if not isinstance(node, list):
        raise DatumError(path, "expected an array of rows")
    out = []
    width = cols
    for i, row in enumerate(node):
        if not isinstance(row, list):
            raise DatumError(f"{path}[{i}]", "expected a row array")
        if width is None:
            width = len(row)
        if len(row) != width:
            raise DatumError(f"{path}[{i}]", f"row has {len(row)} entries, expected {width}")
        out.append([_as_int(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    if rows is not None and len(out) != rows:
        raise DatumError(path, f"expected {rows} rows, found {len(out)}")
    return out


def _as_matrix(node: Any, path: str, rows: int | None = None,
               cols: int | None = None) -> Mat:
    grid = _as_grid(node, path, rows=rows, cols=cols)
    width = cols if cols is not None else (len(grid[0]) if grid else 0)
    return Mat(len(grid), width, grid)


def _as_vector(node: Any, path: str, length: int) -> list[int]:
    if not isinstance(node, list):
        raise DatumError(path, "expected an array of integers")
    if len(node) != length:
        raise DatumError(path, f"expected {length} entries, found {len(node)}")
    return [_as_int(x, f"{path}[{j}]") for j, x in enumerate(node)]


def _as_indices(node: Any, path: str, bound: int) -> list[int]:
    if not isinstance(node, list):
        raise DatumError(path, "expected an array of element indices")
    out = []
    for j, x in enumerate(node):
        v = _as_int(x, f"{path}[{j}]")
        if not 0 <= v < bound:
            raise DatumError(f"{path}[{j}]", f"element index {v} out of range 0..{bound - 1}")
        out.append(v)
    return out


def _build(path: str, make, *args, **kwargs):
    """Run a library constructor, converting its complaint into a path error."""
    try:
        return make(*args, **kwargs)
    except ValueError as err:
        raise DatumError(path, str(err)) from None


# ------------------------------------------------------- kind parsers


def _parse_group(doc: Any, path: str) -> FiniteGroup:
    table, p = _need(doc, "table", path)
    grid = _as_grid(table, p)
    if not grid:
        raise DatumError(p, "a group needs at least the identity")
    if len(grid) != len(grid[0]):
        raise DatumError(p, "multiplication table must be square")
    return _build(p, FiniteGroup, grid)


def _parse_module(doc: Any, path: str) -> FgAbelianGroup:
    gens, p1 = _need(doc, "generators", path)
    n = _as_int(gens, p1)
    if n < 0:
        raise DatumError(p1, "generator count must be non-negative")
    rel, p2 = _need(doc, "relations", path)
    return _build(p2, FgAbelianGroup, n, _as_matrix(rel, p2, rows=n))


def _parse_action(doc: Any, path: str, group: FiniteGroup, ngens: int) -> list[Mat]:
    node, p = _need(doc, "action", path)
    if not isinstance(node, list):
        raise DatumError(p, "expected an array of matrices")
    if len(node) != group.n:
        raise DatumError(p, f"need one matrix per group element ({group.n}), found {len(node)}")
    return [_as_matrix(m, f"{p}[{g}]", rows=ngens, cols=ngens) for g, m in enumerate(node)]


def _parse_gmodule(doc: Any, path: str, name: str) -> GModule:
    grp_doc, p1 = _need(doc, "group", path)
    group = _parse_group(grp_doc, p1)
    mod_doc, p2 = _need(doc, "module", path)
    module = _parse_module(mod_doc, p2)
    mats = _parse_action(doc, path, group, module.ngens)
    return _build(f"{path}.action", GModule, group, module, mats, name=name)


def _parse_ambient(doc: Any, path: str, inertia: FiniteGroup) -> AmbientDatum:
    group = _parse_group(doc, path)
    emb, p = _need(doc, "embedding", path)
    images = _as_indices(emb, p, group.n)
    if len(images) != inertia.n:
        raise DatumError(p, f"need one image per inertia element ({inertia.n})")
    embedding = _build(p, GroupMap, inertia, group, images)
    frob, p = _need(doc, "frobenius", path)
    return _build(path, AmbientDatum, group, embedding, _as_int(frob, p))


def _parse_torus(doc: Any, path: str, name: str) -> TorusDatum:
    grp_doc, p = _need(doc, "inertia", path)
    inertia = _parse_group(grp_doc, p)
    ambient = None
    if doc.get("ambient") is not None:
        ambient = _parse_ambient(doc["ambient"], f"{path}.ambient", inertia)

    frobenius = None
    induced = doc.get("induced")
    if induced is not None:
        if "rank" in doc or "action" in doc:
            raise DatumError(f"{path}.induced",
                             "an induced torus derives rank and action, drop those fields")
        elems, p = _need(induced, "subgroup", f"{path}.induced")
        sub = _build(p, Subgroup, inertia, _as_indices(elems, p, inertia.n))
        base_doc, p = _need(induced, "base", f"{path}.induced")
        base_mod = _parse_module(base_doc, p)
        base_mats = _parse_action(base_doc, p, sub.as_group, base_mod.ngens)
        base = _build(f"{p}.action", GModule, sub.as_group, base_mod, base_mats)
        if doc.get("frobenius") is not None:
            rank = base_mod.ngens * sub.index
            frobenius = _as_matrix(doc["frobenius"], f"{path}.frobenius", rows=rank, cols=rank)
        return _build(path, induced_torus, name, sub, base,
                      frobenius=frobenius, ambient=ambient)

    rank_node, p = _need(doc, "rank", path)
    rank = _as_int(rank_node, p)
    if rank < 0:
        raise DatumError(p, "rank must be non-negative")
    mats = _parse_action(doc, path, inertia, rank)
    lattice = _build(f"{path}.action", GModule, inertia, FgAbelianGroup.free(rank), mats)
    if doc.get("frobenius") is not None:
        frobenius = _as_matrix(doc["frobenius"], f"{path}.frobenius", rows=rank, cols=rank)
    return _build(path, TorusDatum, name, lattice, frobenius=frobenius, ambient=ambient)


def _parse_cocycle(doc: Any, path: str, m: GModule) -> TwoCocycle:
    node, p = _need(doc, "cocycle", path)
    n, d = m.group.n, m.module.ngens
    if not isinstance(node, list) or len(node) != n:
        raise DatumError(p, f"expected a {n}x{n} table of module elements")
    values = {}
    for g, row in enumerate(node):
        if not isinstance(row, list) or len(row) != n:
            raise DatumError(f"{p}[{g}]", f"expected {n} entries")
        for h, entry in enumerate(row):
            vec = _as_vector(entry, f"{p}[{g}][{h}]", d)
            if g == 0 or h == 0:
                if not m.module.same_element(vec, [0] * d):
                    raise DatumError(f"{p}[{g}][{h}]",
                                     "normalized cocycles vanish on the identity")
            else:
                values[(g, h)] = vec
    vec = BarComplex(m).build(2, values)
    return _build(p, TwoCocycle, m, vec)


def _parse_formation(doc: Any, path: str, name: str) -> ClassFormationDatum:
    mod_doc, p = _need(doc, "class_module", path)
    m = _parse_gmodule(mod_doc, p, name="")
    cocycle = _parse_cocycle(doc, path, m)
    twist = None
    if doc.get("twist") is not None:
        tw, p = doc["twist"], f"{path}.twist"
        from .cohomology import ExtensionGroup

        ext = _build(p, ExtensionGroup, cocycle)
        images, p1 = _need(tw, "base_map", p)
        base_map = _build(p1, GroupMap, m.group, m.group,
                          _as_indices(images, p1, m.group.n))
        kmat_node, p2 = _need(tw, "kernel_map", p)
        kernel_map = _as_matrix(kmat_node, p2, rows=m.module.ngens, cols=m.module.ngens)
        shift = None
        if tw.get("shift") is not None:
            shift = _as_vector(tw["shift"], f"{p}.shift",
                               len(BarComplex(m).zero(1)))
        twist = _build(p, FormationTwist, ext, base_map, kernel_map, shift=shift)
    return _build(path, ClassFormationDatum, name, cocycle, twist)


def _parse_frobmodule(doc: Any, path: str) -> FrobeniusModule:
    mod_doc, p = _need(doc, "module", path)
    module = _parse_module(mod_doc, p)
    frob, p = _need(doc, "frobenius", path)
    mat = _as_matrix(frob, p, rows=module.ngens, cols=module.ngens)
    return _build(path, FrobeniusModule, module, mat)


def _parse_filtration(doc: Any, path: str) -> FiltrationDatum:
    base_doc, p = _need(doc, "base", path)
    base = _parse_frobmodule(base_doc, p)
    node, p = _need(doc, "chain", path)
    if not isinstance(node, list):
        raise DatumError(p, "expected an array of submodule matrices")
    ngens = base.underlying.ngens
    chain = [_as_matrix(q, f"{p}[{i}]", rows=ngens) for i, q in enumerate(node)]
    return _build(p, FiltrationDatum, base, chain)


_PARSERS = {
    "group": lambda doc, path, name: _parse_group(doc, path),
    "gmodule": _parse_gmodule,
    "torus": _parse_torus,
    "formation": _parse_formation,
    "frobmodule": lambda doc, path, name: _parse_frobmodule(doc, path),
    "filtration": lambda doc, path, name: _parse_filtration(doc, path),
}


def parse_datum(doc: Any, expect: str | None = None):
    """Turn a decoded JSON document into the object it describes."""
    if not isinstance(doc, dict):
        raise DatumError("$", "expected a JSON object")
    version, p = _need(doc, "version", "$")
    if _as_int(version, p) != VERSION:
        raise DatumError(p, f"unsupported version, this tool reads {VERSION}")
    kind_node, p = _need(doc, "kind", "$")
    kind = _as_str(kind_node, p)
    if kind not in KINDS:
        raise DatumError(p, f"unknown kind {kind!r}, expected one of {', '.join(KINDS)}")
    if expect is not None and kind != expect:
        raise DatumError(p, f"expected a {expect} datum, found {kind!r}")
    name = _as_str(doc["name"], "$.name") if "name" in doc else ""
    return _PARSERS[kind](doc, "$", name)


def data_dir():
    return resources.files("tatecoh").joinpath("data")


def load_datum(spec: str, expect: str | None = None):
    """Load a datum from a filesystem path, or by name from shipped data."""
    path = Path(spec)
    if path.exists():
        text = path.read_text(encoding="utf-8")
    else:
        packaged = data_dir().joinpath(spec)
        if not packaged.is_file():
            raise DatumError("$", f"no such file: {spec}")
        text = packaged.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise DatumError("$", f"not valid JSON: {err}") from None
    return parse_datum(doc, expect=expect)


# ----------------------------------------------------------- encoding


def encode_int(x: int):
    return x if -INT_SAFE < x < INT_SAFE else str(x)


def matrix_payload(mat: Mat) -> list[list]:
    return [[encode_int(x) for x in row] for row in mat.a]


def group_payload(group: FiniteGroup) -> dict:
    return {"table": [list(row) for row in group.table]}


def module_payload(module: FgAbelianGroup) -> dict:
    return {"generators": module.ngens, "relations": matrix_payload(module.relations)}


def gmodule_payload(m: GModule) -> dict:
    return {
        "group": group_payload(m.group),
        "module": module_payload(m.module),
        "action": [matrix_payload(m.act_mat(g)) for g in range(m.group.n)],
    }


def _ambient_payload(ambient: AmbientDatum) -> dict:
    return {
        "table": [list(row) for row in ambient.group.table],
        "embedding": list(ambient.embedding.images),
        "frobenius": ambient.frobenius,
    }


def torus_payload(t: TorusDatum) -> dict:
    out: dict = {"inertia": group_payload(t.inertia_group)}
    if t.induced_from is not None:
        sub, base = t.induced_from
        out["induced"] = {
            "subgroup": list(sub.elements),
            "base": {
                **module_payload(base.module),
                "action": [matrix_payload(base.act_mat(g)) for g in range(sub.as_group.n)],
            },
        }
    else:
        out["rank"] = t.cochar_rank
        out["action"] = [matrix_payload(t.lattice.act_mat(g))
                         for g in range(t.inertia_group.n)]
    if t.frobenius.a != Mat.identity(t.cochar_rank).a:
        out["frobenius"] = matrix_payload(t.frobenius)
    if t.ambient is not None:
        out["ambient"] = _ambient_payload(t.ambient)
    return out


def formation_payload(f: ClassFormationDatum) -> dict:
    m = f.class_module
    n = m.group.n
    table = [[[encode_int(x) for x in m.module.normal_form(f.cocycle(g, h))]
              for h in range(n)] for g in range(n)]
    out = {"class_module": gmodule_payload(m), "cocycle": table}
    tw = f.twist
    identity = (tw.base_map.images == list(range(n))
                and tw.kernel_map.a == Mat.identity(m.module.ngens).a
                and all(x == 0 for x in tw.shift))
    if not identity:
        payload = {"base_map": list(tw.base_map.images),
                   "kernel_map": matrix_payload(tw.kernel_map)}
        if any(x != 0 for x in tw.shift):
            payload["shift"] = [encode_int(x) for x in tw.shift]
        out["twist"] = payload
    return out


def frobmodule_payload(p: FrobeniusModule) -> dict:
    return {"module": module_payload(p.underlying),
            "frobenius": matrix_payload(p.frobenius)}


def filtration_payload(f: FiltrationDatum) -> dict:
    return {"base": frobmodule_payload(f.base),
            "chain": [matrix_payload(q) for q in f.chain]}


_PAYLOADS = (
    (TorusDatum, "torus", torus_payload),
    (ClassFormationDatum, "formation", formation_payload),
    (FiltrationDatum, "filtration", filtration_payload),
    (FrobeniusModule, "frobmodule", frobmodule_payload),
    (GModule, "gmodule", gmodule_payload),
    (FiniteGroup, "group", group_payload),
)


def datum_document(obj, name: str = "") -> dict:
    for cls, kind, payload in _PAYLOADS:
        if isinstance(obj, cls):
            doc = {"version": VERSION, "kind": kind, **payload(obj)}
            label = name or getattr(obj, "name", "")
            if label:
                doc["name"] = label
            return doc
    raise TypeError(f"no datum serialization for {type(obj).__name__}")


def dump_datum(obj, name: str = "") -> str:
    return json.dumps(datum_document(obj, name=name), indent=2, sort_keys=True) + "\n"
