#!/usr/bin/env python3
"""Regenerate the bundled corpus/ directory: every algebra, module and embedding
file the acceptance suite and the CLI examples refer to."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from findim import corpus as C
from findim.io import (
    embedding_doc,
    quiver_algebra_doc,
    sc_algebra_doc,
    sc_module_doc,
    write_json,
)
from findim.modules import regular_module


def main():
    out = os.path.join(os.path.dirname(__file__), "..", "corpus")
    os.makedirs(out, exist_ok=True)

    def w(name, doc):
        write_json(os.path.join(out, name), doc)
        print("wrote", name)

    # algebras
    a2 = C.a2()
    two = C.two_sources()
    kx2 = C.kxn(2)
    kx3 = C.kxn(3)
    kx4 = C.kxn(4)
    aus = C.a2_auslander()
    w("a2.alg.json", quiver_algebra_doc(a2))
    w("two_sources.alg.json", quiver_algebra_doc(two))
    w("kx2.alg.json", quiver_algebra_doc(kx2))
    w("kx3.alg.json", quiver_algebra_doc(kx3))
    w("kx4.alg.json", quiver_algebra_doc(kx4))
    w("a2_auslander.alg.json", quiver_algebra_doc(aus))

    ut2 = C.upper_triangular_2()
    m2 = C.full_matrix_2()
    w("ut2.sc.json", sc_algebra_doc(ut2))
    w("m2.sc.json", sc_algebra_doc(m2))

    # embeddings
    w("dualnum_in_ut2.emb.json", embedding_doc(C.embed_dual_numbers_in_ut2(), "ut2.sc.json"))
    w("ut2_in_m2.emb.json", embedding_doc(C.embed_ut2_in_m2(), "ut2_in_m2_ambient.sc.json"))
    w("ut2_in_m2_ambient.sc.json", sc_algebra_doc(m2))

    # modules (quiver form where available, sc form otherwise)
    w("a2_P1.mod.json", {"dims": {"1": 1, "2": 1}, "maps": {"a": [[1]]}})
    w("a2_S1.mod.json", {"dims": {"1": 1, "2": 0}, "maps": {}})
    w("a2_S2.mod.json", {"dims": {"1": 0, "2": 1}, "maps": {}})
    w("a2_V.mod.json", {"dims": {"1": 2, "2": 2}, "maps": {"a": [[1, 0], [0, 0]]}})
    w("a2_M.mod.json", {"dims": {"1": 2, "2": 1}, "maps": {"a": [[1, 0]]}})

    w("two_sources_S1.mod.json", {"dims": {"1": 1, "2": 0, "3": 0}, "maps": {}})
    w("two_sources_S1S2.mod.json", {"dims": {"1": 1, "2": 1, "3": 0}, "maps": {}})

    w("kx2_S.mod.json", {"dims": {"v": 1}, "maps": {"x": [[0]]}})
    w("kx2_A.mod.json", {"dims": {"v": 2}, "maps": {"x": [[0, 0], [1, 0]]}})
    w("kx2_V.mod.json", {"dims": {"v": 3}, "maps": {"x": [[0, 0, 0], [1, 0, 0], [0, 0, 0]]}})

    w("kx3_M23.mod.json", {"dims": {"v": 5}, "maps": {"x": [
        [0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
    ]}})
    w("kx3_V.mod.json", {"dims": {"v": 6}, "maps": {"x": [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
    ]}})

    # sc modules over the matrix-unit algebras
    sub = C.embed_dual_numbers_in_ut2().subalgebra()
    w("dualnum_regular.mod.json", sc_module_doc(regular_module(sub)))
    from findim.krull_schmidt import enumerate_indecomposables
    from findim.igusa_todorov import auslander_generator

    reg = enumerate_indecomposables(ut2, 2)
    w("ut2_auslander_generator.mod.json", sc_module_doc(auslander_generator(ut2, reg.registry)))

    # a malformed relation file for the parse-error smoke test
    w("malformed.alg.json", {
        "field": 2,
        "vertices": ["1", "2", "3"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "1", "to": "3"}],
        "relations": [[{"coeff": 1, "path": ["a", "b"]}]],
    })


if __name__ == "__main__":
    main()
