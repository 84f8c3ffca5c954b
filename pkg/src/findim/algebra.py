"""Quivers with relations, bound quiver algebras and structure-constant algebras.

A bound quiver algebra over F_p is built degree by degree: the degree-l
component is (span of length-l paths) / (span of length-l multiples of the
relation generators).  The build terminates when a degree dies, which
certifies admissibility of the relation ideal.

Structure-constant algebras carry a d x d x d table with
b_i * b_j = sum_k table[i, j, k] b_k.  Radicals over F_p use the iterated
semilinear trace conditions (trace-coefficient chain), which is correct in
characteristic p where the plain trace form is not.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import FieldMat, _kernel, _matmul_mod, _rref, is_prime


class AlgebraError(ValueError):
    pass


# -- quivers and paths --------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)

    def __post_init__(self):
        names = list(self.vertices) + [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("vertex/arrow names must be unique")
        vset = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vset or t not in vset:
                raise AlgebraError(f"arrow {name} has undeclared endpoint")

    def arrow(self, name: str) -> tuple[str, str, str]:
        for a in self.arrows:
            if a[0] == name:
                return a
        raise AlgebraError(f"no arrow named {name}")


@dataclass(frozen=True)
class Path:
    """A path: trivial (vertex set, no arrows) or a walk of composable arrows.

    Arrow order is traversal order: the first arrow is applied first.
    """

    vertex: str | None = None
    arrows: tuple[str, ...] = ()

    def __post_init__(self):
        if (self.vertex is None) == (len(self.arrows) == 0):
            raise AlgebraError("a path is either a vertex or a nonempty arrow walk")

    @property
    def length(self) -> int:
        return len(self.arrows)

    def endpoints(self, q: Quiver) -> tuple[str, str]:
        if self.vertex is not None:
            return self.vertex, self.vertex
        src = q.arrow(self.arrows[0])[1]
        tgt = q.arrow(self.arrows[0])[2]
        for name in self.arrows[1:]:
            _, s, t = q.arrow(name)
            if s != tgt:
                raise AlgebraError(f"non-composable walk {self.arrows}")
            tgt = t
        return src, tgt


Relation = list[tuple[int, Path]]  # homogeneous parallel combination, length >= 2


def _check_relation(rel: Relation, q: Quiver, p: int):
    if not rel:
        raise AlgebraError("empty relation")
    ends = None
    length = None
    nonzero = False
    for coeff, path in rel:
        if path.length < 2:
            raise AlgebraError("relation paths must have length >= 2")
        e = path.endpoints(q)
        if ends is None:
            ends, length = e, path.length
        elif e != ends or path.length != length:
            raise AlgebraError("relation terms must be parallel paths of equal length")
        if coeff % p:
            nonzero = True
    if not nonzero:
        raise AlgebraError("relation has no nonzero coefficient")


# -- bound quiver algebra -------------------------------------------------------


class QuiverAlgebra:
    """kQ/I with a per-degree path-class basis and full multiplication table."""

    def __init__(self, quiver: Quiver, relations: list[Relation], p: int, degree_cap: int = 64):
        if not is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.quiver = quiver
        self.relations = relations
        self.p = p
        self.degree_cap = degree_cap
        for rel in relations:
            _check_relation(rel, quiver, p)
        self._build()
        self._sc: SCAlgebra | None = None

    def _build(self):
        q, p = self.quiver, self.p
        out_arrows: dict[str, list[tuple[str, str]]] = {v: [] for v in q.vertices}
        for name, s, t in q.arrows:
            out_arrows[s].append((name, t))

        # walks[l] = list of (arrow tuple, source, target) for length-l paths
        walks: list[list[tuple[tuple[str, ...], str, str]]] = [
            [((), v, v) for v in q.vertices]
        ]
        # basis[l] = indices into walks[l] of the quotient-basis paths
        # reducer[l] = (rref rows, pivot cols) for the relation span at degree l
        self.degree_paths: list[list[tuple[tuple[str, ...], str, str]]] = []
        self.degree_basis: list[list[int]] = []
        self._reducers: list[tuple[np.ndarray, list[int]]] = []

        rels_by_len: dict[int, list[Relation]] = {}
        for rel in self.relations:
            rels_by_len.setdefault(rel[0][1].length, []).append(rel)

        degree = 0
        while True:
            paths = walks[degree]
            index = {w[0]: i for i, w in enumerate(paths)}
            n = len(paths)
            # span of c * r * d at this degree:
            # consequence walks are (prefix walk) + (relation walk) + (suffix walk)
            rows = []
            for rl, rels in rels_by_len.items():
                if rl > degree:
                    continue
                for rel in rels:
                    r_src, r_tgt = rel[0][1].endpoints(q)
                    for i in range(degree - rl + 1):
                        # prefix paths of length i ending at r_src,
                        # suffix paths of length degree - rl - i starting at r_tgt
                        pre = [w for w in walks[i] if w[2] == r_src]
                        post = [w for w in walks[degree - rl - i] if w[1] == r_tgt]
                        for pw, _, _ in pre:
                            for sw, _, _ in post:
                                vec = np.zeros(n, dtype=np.int64)
                                hit = True
                                for coeff, path in rel:
                                    w = pw + path.arrows + sw
                                    j = index.get(w)
                                    if j is None:
                                        hit = False
                                        break
                                    vec[j] = (vec[j] + coeff) % p
                                if hit and vec.any():
                                    rows.append(vec)
            if rows:
                red, piv = _rref(np.array(rows, dtype=np.int64), p)
                red = red[: len(piv)]
            else:
                red, piv = np.zeros((0, n), dtype=np.int64), []
            pivset = set(piv)
            basis_idx = [i for i in range(n) if i not in pivset]

            self.degree_paths.append(paths)
            self.degree_basis.append(basis_idx)
            self._reducers.append((red, piv))

            if degree > 0 and not basis_idx:
                self.degree_paths.pop()
                self.degree_basis.pop()
                self._reducers.pop()
                break
            if degree >= self.degree_cap:
                raise AlgebraError(
                    f"relation ideal not admissible within degree cap {self.degree_cap}"
                )
            nxt = []
            for w, s, t in paths:
                for name, t2 in out_arrows[t]:
                    nxt.append((w + (name,), s, t2))
            walks.append(nxt)
            degree += 1
            if not nxt:
                break

        self.max_degree = len(self.degree_basis) - 1
        # flat basis: (degree, path index within degree)
        self.basis: list[tuple[int, int]] = []
        self._flat: dict[tuple[str, ...] | str, int] = {}
        for ell, idxs in enumerate(self.degree_basis):
            for i in idxs:
                w, s, t = self.degree_paths[ell][i]
                k = len(self.basis)
                self.basis.append((ell, i))
                self._flat[w if ell else s] = k
        self.dim = len(self.basis)

    def basis_path(self, k: int) -> tuple[tuple[str, ...], str, str]:
        ell, i = self.basis[k]
        return self.degree_paths[ell][i]

    def reduce_walk(self, walk: tuple[str, ...], vertex: str | None = None) -> dict[int, int]:
        """Coefficients of a path's class on the flat basis (empty dict if 0).

        Trivial paths are identified by `vertex` since their walk is empty.
        """
        ell = len(walk)
        if ell == 0:
            return {self._flat[vertex]: 1}
        if ell > self.max_degree:
            return {}
        paths = self.degree_paths[ell]
        index = {w[0]: i for i, w in enumerate(paths)}
        j = index.get(walk)
        if j is None:
            return {}
        n = len(paths)
        vec = np.zeros(n, dtype=np.int64)
        vec[j] = 1
        red, piv = self._reducers[ell]
        for r, c in enumerate(piv):
            if vec[c]:
                vec = (vec - vec[c] * red[r]) % self.p
        out = {}
        for i in self.degree_basis[ell]:
            if vec[i]:
                key = paths[i][0] if ell else paths[i][1]
                out[self._flat[key]] = int(vec[i])
        return out

    def to_sc(self) -> "SCAlgebra":
        """Structure constants; vertex idempotents; radical = classes of length >= 1."""
        if self._sc is not None:
            return self._sc
        d, p = self.dim, self.p
        table = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            wi, si, ti = self.basis_path(i)
            for j in range(d):
                wj, sj, tj = self.basis_path(j)
                # left modules satisfy act(b_i * b_j) = act(b_i) @ act(b_j),
                # so the product path traverses b_j first: walk wj + wi
                if tj != si:
                    continue
                for k, c in self.reduce_walk(wj + wi, vertex=sj).items():
                    table[i, j, k] = c
        unit = np.zeros(d, dtype=np.int64)
        idems = []
        for k in range(d):
            ell, _ = self.basis[k]
            if ell == 0:
                unit[k] = 1
                v = np.zeros(d, dtype=np.int64)
                v[k] = 1
                idems.append(v)
        rad_cols = [k for k in range(d) if self.basis[k][0] >= 1]
        rad = np.zeros((d, len(rad_cols)), dtype=np.int64)
        for j, k in enumerate(rad_cols):
            rad[k, j] = 1
        sc = SCAlgebra(p, d, table, unit, idempotents=idems, radical=rad)
        sc._quiver_source = self
        self._sc = sc
        return sc


def build_algebra(quiver: Quiver, relations: list[Relation], p: int, degree_cap: int = 64) -> QuiverAlgebra:
    return QuiverAlgebra(quiver, relations, p, degree_cap)


def is_monomial(qa: QuiverAlgebra) -> bool:
    """True iff every relation generator has exactly one nonzero term."""
    for rel in qa.relations:
        if sum(1 for c, _ in rel if c % qa.p) != 1:
            return False
    return True


# -- structure-constant algebras ------------------------------------------------


class SCAlgebra:
    """Associative unital algebra over F_p given by structure constants.

    The one convention used everywhere: a left module action is an algebra
    homomorphism into matrices under composition, act(u * v) = act(u) @ act(v).
    Consequently path products traverse the right factor first, and
    endomorphism algebras multiply by f * g = "apply f, then g" so that
    hom spaces Hom(M, X) become left modules under precomposition.
    """

    def __init__(self, p, dim, table, unit, idempotents=None, radical=None):
        if not is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.dim = dim
        self.table = np.mod(np.array(table, dtype=np.int64), p).reshape(dim, dim, dim)
        self.unit = np.mod(np.array(unit, dtype=np.int64), p).reshape(dim)
        self.idempotents = None
        if idempotents is not None:
            self.idempotents = [np.mod(np.array(e, dtype=np.int64), p).reshape(dim) for e in idempotents]
        self._radical = None
        if radical is not None:
            self._radical = np.mod(np.array(radical, dtype=np.int64), p).reshape(dim, -1)
        self._opposite: SCAlgebra | None = None
        self._generators: list[int] | None = None
        self._quiver_source: QuiverAlgebra | None = None
        self.cache: dict = {}

    def __repr__(self):
        return f"SCAlgebra(p={self.p}, dim={self.dim})"

    def mult(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Product of two element vectors."""
        return np.einsum("i,j,ijk->k", u % self.p, v % self.p, self.table) % self.p

    def left_mult_matrix(self, u: np.ndarray) -> np.ndarray:
        """Matrix of x -> u * x on column vectors."""
        # (u*b_j)_k = sum_i u_i table[i,j,k]
        return np.tensordot(u % self.p, self.table, axes=(0, 0)).T % self.p

    def right_mult_matrix(self, u: np.ndarray) -> np.ndarray:
        """Matrix of x -> x * u on column vectors."""
        # (b_j*u)_k = sum_i u_i table[j,i,k]
        return np.tensordot(u % self.p, self.table.transpose(1, 0, 2), axes=(0, 0)).T % self.p

    def validate(self):
        d, p = self.dim, self.p
        t = self.table
        lhs = np.einsum("ijm,mkl->ijkl", t, t) % p
        rhs = np.einsum("jkm,iml->ijkl", t, t) % p
        if not np.array_equal(lhs, rhs):
            raise AlgebraError("structure constants are not associative")
        for j in range(d):
            ej = np.zeros(d, dtype=np.int64)
            ej[j] = 1
            if not np.array_equal(self.mult(self.unit, ej), ej):
                raise AlgebraError("unit fails on the left")
            if not np.array_equal(self.mult(ej, self.unit), ej):
                raise AlgebraError("unit fails on the right")
        if self.idempotents is not None:
            s = np.zeros(d, dtype=np.int64)
            for i, e in enumerate(self.idempotents):
                if not np.array_equal(self.mult(e, e), e):
                    raise AlgebraError(f"idempotent {i} is not idempotent")
                for j, f in enumerate(self.idempotents):
                    if i != j and self.mult(e, f).any():
                        raise AlgebraError(f"idempotents {i},{j} not orthogonal")
                s = (s + e) % p
            if not np.array_equal(s, self.unit):
                raise AlgebraError("idempotents do not sum to the unit")
        if self._radical is not None:
            _verify_nilpotent_ideal(self, self._radical)

    def radical_basis(self) -> np.ndarray:
        """d x r matrix whose columns span rad(A); computed on first use."""
        if self._radical is None:
            self._radical = radical_sc(self)
        return self._radical

    def radical_power_bases(self) -> list[np.ndarray]:
        """Bases of rad^1 >= rad^2 >= ... down to zero (cached)."""
        key = "rad_powers"
        if key not in self.cache:
            out = []
            j = self.radical_basis()
            while j.shape[1]:
                out.append(j)
                j = self._ideal_product(j, self.radical_basis())
            self.cache[key] = out
        return self.cache[key]

    def _ideal_product(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        if u.shape[1] == 0 or v.shape[1] == 0:
            return np.zeros((self.dim, 0), dtype=np.int64)
        prods = []
        for i in range(u.shape[1]):
            for j in range(v.shape[1]):
                prods.append(self.mult(u[:, i], v[:, j]))
        r, piv = _rref(np.array(prods, dtype=np.int64), self.p)
        if not piv:
            return np.zeros((self.dim, 0), dtype=np.int64)
        return r[: len(piv)].T.copy()

    def generator_indices(self) -> list[int]:
        """Indices of a small unital generating set of basis elements."""
        if self._generators is not None:
            return self._generators
        d, p = self.dim, self.p
        span = self.unit.reshape(d, 1) % p
        gens: list[int] = []

        def in_span(vec, basis):
            if basis.shape[1] == 0:
                return not vec.any()
            aug = np.hstack([basis, vec.reshape(d, 1)])
            return len(_rref(aug, p)[1]) == len(_rref(basis, p)[1])

        def close(basis):
            while True:
                cols = [basis[:, i] for i in range(basis.shape[1])]
                new = []
                for u in cols:
                    for v in cols:
                        w = self.mult(u, v)
                        if not in_span(w, basis):
                            new.append(w)
                if not new:
                    return basis
                basis = np.hstack([basis] + [w.reshape(d, 1) for w in new])
                r, piv = _rref(basis.T, p)
                basis = r[: len(piv)].T.copy()

        for i in range(d):
            ei = np.zeros(d, dtype=np.int64)
            ei[i] = 1
            if not in_span(ei, span):
                gens.append(i)
                span = close(np.hstack([span, ei.reshape(d, 1)]))
                if span.shape[1] == d:
                    break
        self._generators = gens
        return gens

    def opposite(self) -> "SCAlgebra":
        """Opposite algebra; an involution on the table (cached, op(op(a)) is a)."""
        if self._opposite is None:
            op = SCAlgebra(
                self.p,
                self.dim,
                self.table.transpose(1, 0, 2).copy(),
                self.unit.copy(),
                idempotents=None if self.idempotents is None else [e.copy() for e in self.idempotents],
                radical=None if self._radical is None else self._radical.copy(),
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def fingerprint(self) -> str:
        import hashlib

        h = hashlib.sha256()
        h.update(str((self.p, self.dim)).encode())
        h.update(self.table.tobytes())
        h.update(self.unit.tobytes())
        return h.hexdigest()[:12]


def opposite(a: SCAlgebra) -> SCAlgebra:
    return a.opposite()


def to_sc(qa: QuiverAlgebra) -> SCAlgebra:
    return qa.to_sc()


# -- radical over F_p ------------------------------------------------------------


def charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    """Coefficients c[0..d] of det(tI - A) = sum c[j] t^(d-j) over F_p (c[0] = 1).

    Hessenberg reduction by similarity, then the leading-minor recurrence.
    """
    d = a.shape[0]
    if d == 0:
        return [1]
    h = a.copy() % p
    for j in range(d - 2):
        nz = np.nonzero(h[j + 1 :, j])[0]
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[j + 1, i]] = h[[i, j + 1]]
            h[:, [j + 1, i]] = h[:, [i, j + 1]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        rows = j + 2 + np.nonzero(h[j + 2 :, j])[0]
        if rows.size:
            f = h[rows, j] * inv % p
            h[rows] = (h[rows] - np.outer(f, h[j + 1])) % p
            h[:, j + 1] = (h[:, j + 1] + h[:, rows] @ f) % p
    # p_k = (t - h[k-1,k-1]) p_{k-1} - sum_i h[k-1-i,k-1] (prod subdiag) p_{k-1-i}
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, d + 1):
        prev = polys[k - 1]
        cur = np.zeros(k + 1, dtype=np.int64)
        cur[1:] += prev  # t * p_{k-1}
        cur[:k] -= h[k - 1, k - 1] * prev
        prod = 1
        for i in range(1, k):
            prod = prod * int(h[k - i, k - i - 1]) % p
            if prod == 0:
                break
            coef = int(h[k - 1 - i, k - 1]) * prod % p
            if coef:
                cur[: k - i] -= coef * polys[k - 1 - i]
        polys.append(np.mod(cur, p))
    full = polys[d]
    # full[i] is the coefficient of t^i in p_d? The recurrence above treats
    # index 0 as the constant term, so reverse to get c[j] of t^(d-j).
    return [int(c) for c in full[::-1]]


def _charpoly_coeff(a: np.ndarray, j: int, p: int) -> int:
    """e_j of the eigenvalues of a, mod p (sum of principal j x j minors)."""
    d = a.shape[0]
    if j == 0:
        return 1 % p
    if j > d:
        return 0
    if j == 1:
        return int(np.trace(a) % p)
    if j == 2:
        diag = np.diag(a).astype(object)
        s1 = (int(diag.sum()) ** 2 - int((diag * diag).sum())) // 2
        m = a.astype(object)
        t2 = int((m * m.T).sum()) - int((diag * diag).sum())
        assert t2 % 2 == 0
        return int((s1 - t2 // 2) % p)
    c = charpoly_mod(a, p)
    # det(tI - A) = sum_j (-1)^j e_j t^(d-j)
    return int((c[j] * pow(-1, j)) % p)


def _verify_nilpotent_ideal(a: SCAlgebra, basis: np.ndarray):
    d, p = a.dim, a.p
    if basis.shape[1] == 0:
        return
    span_r = _rref(basis.T, p)[0]
    rank = len(_rref(basis.T, p)[1])

    def contained(vecs):
        if not vecs:
            return True
        aug = np.vstack([span_r[:rank], np.array(vecs, dtype=np.int64)])
        return len(_rref(aug, p)[1]) == rank

    prods = []
    for i in range(d):
        ei = np.zeros(d, dtype=np.int64)
        ei[i] = 1
        for j in range(basis.shape[1]):
            prods.append(a.mult(ei, basis[:, j]))
            prods.append(a.mult(basis[:, j], ei))
    if not contained(prods):
        raise AlgebraError("claimed radical is not a two-sided ideal")
    power = basis
    for _ in range(d + 1):
        if power.shape[1] == 0:
            return
        power = a._ideal_product(power, basis)
    raise AlgebraError("claimed radical is not nilpotent")


def radical_sc(a: SCAlgebra, verify: bool = True) -> np.ndarray:
    """Basis (columns) of the Jacobson radical of a over F_p.

    Descending chain of ideals cut out by the characteristic-polynomial
    coefficients c_{p^k} of left-regular matrices; the plain trace form
    (k = 0 step) is not enough in characteristic p.
    """
    d, p = a.dim, a.p
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    basis = np.eye(d, dtype=np.int64)
    level = 0
    while p**level <= d:
        m = basis.shape[1]
        if m == 0:
            break
        j = p**level
        regs = [a.left_mult_matrix(basis[:, s]) for s in range(m)]
        cons = np.zeros((m, m), dtype=np.int64)
        for s in range(m):
            for t in range(m):
                prod = _matmul_mod(regs[s], regs[t], p)
                cons[t, s] = _charpoly_coeff(prod, j, p)
        k = _kernel(cons, p)
        basis = _matmul_mod(basis, k, p)
        r, piv = _rref(basis.T, p)
        basis = r[: len(piv)].T.copy() if piv else np.zeros((d, 0), dtype=np.int64)
        level += 1
    if verify:
        _verify_nilpotent_ideal(a, basis)
    return basis


def semisimple_quotient(a: SCAlgebra) -> tuple[SCAlgebra, np.ndarray, np.ndarray]:
    """(a / rad a, projection matrix, section matrix) in basis coordinates."""
    d, p = a.dim, a.p
    j = a.radical_basis()
    if j.shape[1] == 0:
        return a, np.eye(d, dtype=np.int64), np.eye(d, dtype=np.int64)
    red, piv = _rref(j.T, p)
    red = red[: len(piv)]
    pivset = set(piv)
    free = [c for c in range(d) if c not in pivset]
    proj = np.zeros((len(free), d), dtype=np.int64)
    eye = np.eye(d, dtype=np.int64)
    for col in range(d):
        v = eye[:, col].copy()
        for r, c in enumerate(piv):
            if v[c]:
                v = (v - v[c] * red[r]) % p
        proj[:, col] = v[free]
    sect = np.zeros((d, len(free)), dtype=np.int64)
    for i, c in enumerate(free):
        sect[c, i] = 1
    q = len(free)
    table = np.zeros((q, q, q), dtype=np.int64)
    for i in range(q):
        for jj in range(q):
            prod = a.mult(sect[:, i], sect[:, jj])
            table[i, jj] = _matmul_mod(proj, prod.reshape(d, 1), p).reshape(q)
    unit = _matmul_mod(proj, a.unit.reshape(d, 1), p).reshape(q)
    quot = SCAlgebra(p, q, table, unit, radical=np.zeros((q, 0), dtype=np.int64))
    return quot, proj, sect


# -- embeddings and idealized extensions ------------------------------------------


@dataclass
class Embedding:
    """A subalgebra A inside an ambient R, given by a basis in R-coordinates."""

    ambient: SCAlgebra
    sub_basis: np.ndarray  # dim(R) x dim(A), columns = basis of A
    _sub: SCAlgebra | None = field(default=None, repr=False)

    def __post_init__(self):
        self.sub_basis = np.mod(np.array(self.sub_basis, dtype=np.int64), self.ambient.p)
        if self.sub_basis.ndim != 2 or self.sub_basis.shape[0] != self.ambient.dim:
            raise AlgebraError("sub_basis must be dim(R) x dim(A)")
        self.validate()

    def validate(self):
        r, p = self.ambient, self.ambient.p
        b = self.sub_basis
        k = b.shape[1]
        if len(_rref(b.T, p)[1]) != k:
            raise AlgebraError("sub_basis columns are dependent")
        from .linalg import FieldMat, solve

        bm = FieldMat(p, b)
        for i in range(k):
            for j in range(k):
                prod = r.mult(b[:, i], b[:, j])
                if solve(bm, FieldMat(p, prod.reshape(-1, 1))) is None:
                    raise AlgebraError("sub_basis not closed under multiplication")
        if solve(bm, FieldMat(p, r.unit.reshape(-1, 1))) is None:
            raise AlgebraError("sub_basis does not contain the unit of the ambient algebra")

    def subalgebra(self) -> SCAlgebra:
        """The subalgebra as an SCAlgebra in its own basis coordinates."""
        if self._sub is not None:
            return self._sub
        from .linalg import FieldMat, solve

        r, p = self.ambient, self.ambient.p
        b = self.sub_basis
        k = b.shape[1]
        bm = FieldMat(p, b)
        table = np.zeros((k, k, k), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod = r.mult(b[:, i], b[:, j])
                table[i, j] = solve(bm, FieldMat(p, prod.reshape(-1, 1))).a.reshape(k)
        unit = solve(bm, FieldMat(p, r.unit.reshape(-1, 1))).a.reshape(k)
        self._sub = SCAlgebra(p, k, table, unit)
        return self._sub


@dataclass
class IdealizedCheck:
    holds: bool
    witness: tuple[np.ndarray, np.ndarray, np.ndarray] | None  # (r, x, r*x) in R coords


def idealized_extension_check(e: Embedding) -> IdealizedCheck:
    """Is rad(A) a left ideal of the ambient R?  Witness = offending product."""
    r, p = e.ambient, e.ambient.p
    sub = e.subalgebra()
    rad_a = sub.radical_basis()  # in A coordinates
    rad_in_r = _matmul_mod(e.sub_basis, rad_a, p)  # columns in R coordinates
    if rad_in_r.shape[1] == 0:
        return IdealizedCheck(True, None)
    span, piv = _rref(rad_in_r.T, p)
    span = span[: len(piv)]
    rank = len(piv)
    d = r.dim
    for i in range(d):
        ei = np.zeros(d, dtype=np.int64)
        ei[i] = 1
        for j in range(rad_in_r.shape[1]):
            prod = r.mult(ei, rad_in_r[:, j])
            aug = np.vstack([span, prod.reshape(1, d)])
            if len(_rref(aug, p)[1]) != rank:
                return IdealizedCheck(False, (ei, rad_in_r[:, j].copy(), prod))
    return IdealizedCheck(True, None)
