"""File formats: algebras, structure constants, embeddings, modules, reports.

All documents are JSON.  Schemas:

  quiver algebra:  {"field": p, "vertices": [names],
                    "arrows": [{"name", "from", "to"}],
                    "relations": [[{"coeff": c, "path": [arrow names]}, ...], ...]}
  structure constants: {"field": p, "dim": d, "unit": [c...],
                        "table": d x d array of coefficient arrays}
  embedding:       {"ambient": "<path to sc file>" | inline sc object,
                    "sub_basis": [coeff arrays (columns)]}
  quiver module:   {"dims": {vertex: n}, "maps": {arrow: [[row], ...]}}
  sc module:       {"dim": n, "actions": [[[row], ...] per algebra basis element]}

Matrices are arrays of rows; entries are residues mod p.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .algebra import Embedding, Path, Quiver, QuiverAlgebra, SCAlgebra
from .linalg import FieldMat
from .modules import ActionModule, QuiverRep, rep_to_action


class ParseError(ValueError):
    pass


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    return doc[key]


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def parse_quiver_algebra(doc: dict, where: str = "algebra") -> QuiverAlgebra:
    p = int(_require(doc, "field", where))
    vertices = tuple(str(v) for v in _require(doc, "vertices", where))
    arrows = tuple(
        (str(a["name"]), str(a["from"]), str(a["to"])) for a in _require(doc, "arrows", where)
    )
    quiver = Quiver(vertices, arrows)
    relations = []
    for ri, rel in enumerate(doc.get("relations", [])):
        terms = []
        for t in rel:
            arrows_ = tuple(str(x) for x in t["path"])
            if not arrows_:
                raise ParseError(f"{where}: relation {ri} has an empty path")
            terms.append((int(t["coeff"]), Path(arrows=arrows_)))
        relations.append(terms)
    return QuiverAlgebra(quiver, relations, p)


def parse_sc_algebra(doc: dict, where: str = "sc algebra") -> SCAlgebra:
    p = int(_require(doc, "field", where))
    d = int(_require(doc, "dim", where))
    table = np.array(_require(doc, "table", where), dtype=np.int64)
    unit = np.array(_require(doc, "unit", where), dtype=np.int64)
    a = SCAlgebra(p, d, table, unit)
    a.validate()
    return a


def load_algebra(path: str) -> QuiverAlgebra | SCAlgebra:
    doc = load_json(path)
    if "vertices" in doc:
        return parse_quiver_algebra(doc, path)
    return parse_sc_algebra(doc, path)


def load_sc(path: str) -> SCAlgebra:
    doc = load_json(path)
    if "vertices" in doc:
        return parse_quiver_algebra(doc, path).to_sc()
    return parse_sc_algebra(doc, path)


def load_embedding(path: str) -> Embedding:
    doc = load_json(path)
    amb = _require(doc, "ambient", path)
    if isinstance(amb, str):
        amb_path = amb if os.path.isabs(amb) else os.path.join(os.path.dirname(path), amb)
        ambient = load_sc(amb_path)
    else:
        ambient = parse_sc_algebra(amb, path)
    sub = np.array(_require(doc, "sub_basis", path), dtype=np.int64).T  # rows in file = columns here
    return Embedding(ambient, sub)


def load_module(path: str, algebra: QuiverAlgebra | SCAlgebra) -> ActionModule:
    doc = load_json(path)
    if "dims" in doc:
        if not isinstance(algebra, QuiverAlgebra):
            raise ParseError(f"{path}: quiver module file needs a quiver algebra")
        dims = {str(k): int(v) for k, v in doc["dims"].items()}
        maps = {
            str(k): FieldMat(algebra.p, np.array(v, dtype=np.int64).reshape(dims[algebra.quiver.arrow(str(k))[2]], dims[algebra.quiver.arrow(str(k))[1]]))
            for k, v in doc.get("maps", {}).items()
        }
        return rep_to_action(QuiverRep(algebra, dims, maps), algebra)
    sc = algebra.to_sc() if isinstance(algebra, QuiverAlgebra) else algebra
    n = int(_require(doc, "dim", path))
    actions = [np.array(m, dtype=np.int64).reshape(n, n) for m in _require(doc, "actions", path)]
    if len(actions) != sc.dim:
        raise ParseError(f"{path}: expected {sc.dim} action matrices, got {len(actions)}")
    mod = ActionModule(sc, actions)
    mod.validate()
    return mod


# -- writers -------------------------------------------------------------------------


def quiver_algebra_doc(qa: QuiverAlgebra) -> dict:
    return {
        "field": qa.p,
        "vertices": list(qa.quiver.vertices),
        "arrows": [{"name": n, "from": s, "to": t} for n, s, t in qa.quiver.arrows],
        "relations": [
            [{"coeff": int(c), "path": list(path.arrows)} for c, path in rel]
            for rel in qa.relations
        ],
    }


def sc_algebra_doc(a: SCAlgebra) -> dict:
    return {
        "field": a.p,
        "dim": a.dim,
        "unit": a.unit.tolist(),
        "table": a.table.tolist(),
    }


def embedding_doc(e: Embedding, ambient_path: str) -> dict:
    return {"ambient": ambient_path, "sub_basis": e.sub_basis.T.tolist()}


def quiver_module_doc(qa: QuiverAlgebra, dims: dict[str, int], maps: dict[str, list]) -> dict:
    return {"dims": dims, "maps": maps}


def sc_module_doc(m: ActionModule) -> dict:
    return {"dim": m.dim, "actions": [a.tolist() for a in m.acts]}


def write_json(path: str, doc: dict):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def dump_report(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"
