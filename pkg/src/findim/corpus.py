"""Builders for the small algebras and modules used by the tests and the CLI corpus.

Everything here is constructed from first principles (quivers with relations
or explicit structure constants); nothing is loaded from disk.
"""

from __future__ import annotations

import numpy as np

from .algebra import Embedding, Path, Quiver, QuiverAlgebra, SCAlgebra
from .linalg import FieldMat
from .modules import ActionModule, QuiverRep, rep_to_action


def a2(p: int = 2) -> QuiverAlgebra:
    """Path algebra of 1 -> 2 (arrow a); hereditary, dim 3."""
    q = Quiver(("1", "2"), (("a", "1", "2"),))
    return QuiverAlgebra(q, [], p)


def two_sources(p: int = 2) -> QuiverAlgebra:
    """Path algebra of 1 -> 3 <- 2 (arrows a, b); dim 5."""
    q = Quiver(("1", "2", "3"), (("a", "1", "3"), ("b", "2", "3")))
    return QuiverAlgebra(q, [], p)


def kxn(n: int, p: int = 2) -> QuiverAlgebra:
    """F_p[x]/(x^n): one vertex with a loop x and the relation x^n."""
    q = Quiver(("v",), (("x", "v", "v"),))
    rel = [(1, Path(arrows=("x",) * n))]
    return QuiverAlgebra(q, [rel], p)


def a2_auslander(p: int = 2) -> QuiverAlgebra:
    """Quiver 1 -> 2 -> 3 (arrows a, b) with the length-2 path killed; dim 5."""
    q = Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "2", "3")))
    rel = [(1, Path(arrows=("a", "b")))]
    return QuiverAlgebra(q, [rel], p)


def commutative_square(p: int = 2) -> QuiverAlgebra:
    """Square quiver with the commutativity relation (a then b = c then d)."""
    q = Quiver(
        ("1", "2", "3", "4"),
        (("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")),
    )
    rel = [(1, Path(arrows=("a", "b"))), (-1, Path(arrows=("c", "d")))]
    return QuiverAlgebra(q, [rel], p)


def simple_rep(qa: QuiverAlgebra, vertex: str) -> ActionModule:
    dims = {v: (1 if v == vertex else 0) for v in qa.quiver.vertices}
    return rep_to_action(QuiverRep(qa, dims, {}), qa)


def rep(qa: QuiverAlgebra, dims: dict[str, int], maps: dict[str, list[list[int]]]) -> ActionModule:
    fm = {k: FieldMat(qa.p, np.array(v, dtype=np.int64)) for k, v in maps.items()}
    return rep_to_action(QuiverRep(qa, dict(dims), fm), qa)


def jordan_module(qa: QuiverAlgebra, size: int) -> ActionModule:
    """k[x]/(x^size) over kxn(n >= size): the loop acts by a nilpotent Jordan block."""
    mat = np.zeros((size, size), dtype=np.int64)
    for i in range(size - 1):
        mat[i + 1, i] = 1
    return rep(qa, {"v": size}, {"x": mat.tolist()})


# -- matrix-unit structure-constant algebras ----------------------------------------------


def _matrix_units_sc(p: int, units: list[tuple[int, int]]) -> SCAlgebra:
    """SCAlgebra with basis the listed matrix units e_ij, e_ij e_kl = [j=k] e_il."""
    d = len(units)
    index = {u: i for i, u in enumerate(units)}
    table = np.zeros((d, d, d), dtype=np.int64)
    for x, (i, j) in enumerate(units):
        for y, (k, l) in enumerate(units):
            if j == k and (i, l) in index:
                table[x, y, index[(i, l)]] = 1
    unit = np.zeros(d, dtype=np.int64)
    for i, j in units:
        if i == j:
            unit[index[(i, j)]] = 1
    return SCAlgebra(p, d, table, unit)


def upper_triangular_2(p: int = 2) -> SCAlgebra:
    """Upper-triangular 2x2 matrices: basis e11, e12, e22."""
    return _matrix_units_sc(p, [(1, 1), (1, 2), (2, 2)])


def full_matrix_2(p: int = 2) -> SCAlgebra:
    """M_2(F_p): basis e11, e12, e21, e22."""
    return _matrix_units_sc(p, [(1, 1), (1, 2), (2, 1), (2, 2)])


def embed_dual_numbers_in_ut2(p: int = 2) -> Embedding:
    """span{1, e12} inside upper-triangular 2x2 (the subalgebra is k[x]/(x^2))."""
    r = upper_triangular_2(p)
    sub = np.array([[1, 0], [0, 1], [1, 0]], dtype=np.int64)  # columns: 1 = e11+e22, e12
    return Embedding(r, sub)


def embed_ut2_in_m2(p: int = 2) -> Embedding:
    """Upper-triangular 2x2 inside M_2(F_p)."""
    r = full_matrix_2(p)
    sub = np.array(
        [[1, 0, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1]], dtype=np.int64
    )  # columns: e11, e12, e22
    return Embedding(r, sub)
