"""Modules over structure-constant algebras and their homomorphisms.

An ActionModule stores one action matrix per algebra basis element, acting on
column vectors; act(u * v) = act(u) @ act(v).  Quiver representations convert
losslessly.  Hom spaces are kernels of intertwining systems, set up only over
a generating set of the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import QuiverAlgebra, SCAlgebra
from .linalg import FieldMat, _kernel, _matmul_mod, _rref, solve


class ModuleError(ValueError):
    pass


class ActionModule:
    """Finitely generated left module given by action matrices."""

    __slots__ = ("algebra", "dim", "acts", "cache")

    def __init__(self, algebra: SCAlgebra, acts: list[np.ndarray] | list[FieldMat]):
        mats = []
        for m in acts:
            arr = m.a if isinstance(m, FieldMat) else np.array(m, dtype=np.int64)
            mats.append(np.mod(arr, algebra.p))
        if len(mats) != algebra.dim:
            raise ModuleError("need one action matrix per algebra basis element")
        dim = mats[0].shape[0] if mats else 0
        for m in mats:
            if m.shape != (dim, dim):
                raise ModuleError("action matrices must be square of equal size")
        self.algebra = algebra
        self.dim = dim
        self.acts = mats
        self.cache: dict = {}

    @classmethod
    def zero(cls, algebra: SCAlgebra) -> "ActionModule":
        return cls(algebra, [np.zeros((0, 0), dtype=np.int64) for _ in range(algebra.dim)])

    def is_zero(self) -> bool:
        return self.dim == 0

    def act_element(self, u: np.ndarray) -> np.ndarray:
        """Action matrix of the algebra element with coordinate vector u."""
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i, c in enumerate(np.mod(u, self.algebra.p)):
            if c:
                out = out + c * self.acts[i]
        return np.mod(out, self.algebra.p)

    def validate(self):
        a = self.algebra
        unit = self.act_element(a.unit)
        if not np.array_equal(unit, np.eye(self.dim, dtype=np.int64) % a.p):
            raise ModuleError("unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = _matmul_mod(self.acts[i], self.acts[j], a.p)
                rhs = self.act_element(a.table[i, j])
                if not np.array_equal(lhs, rhs):
                    raise ModuleError(f"action violates structure constants at ({i},{j})")

    def __repr__(self):
        return f"ActionModule(dim={self.dim}, algebra={self.algebra!r})"


def regular_module(a: SCAlgebra) -> ActionModule:
    """A as a left module over itself (cached on the algebra)."""
    if "regular" not in a.cache:
        a.cache["regular"] = ActionModule(
            a, [a.left_mult_matrix(np.eye(a.dim, dtype=np.int64)[i]) for i in range(a.dim)]
        )
    return a.cache["regular"]


@dataclass
class QuiverRep:
    """Representation: a dimension per vertex, a (target x source) matrix per arrow."""

    qa: QuiverAlgebra
    dims: dict[str, int]
    maps: dict[str, FieldMat]

    def __post_init__(self):
        q = self.qa.quiver
        for v in q.vertices:
            self.dims.setdefault(v, 0)
        for name, s, t in q.arrows:
            m = self.maps.get(name)
            if m is None:
                m = FieldMat.zeros(self.qa.p, self.dims[t], self.dims[s])
                self.maps[name] = m
            if (m.rows, m.cols) != (self.dims[t], self.dims[s]):
                raise ModuleError(f"map for arrow {name} has wrong shape")

    def evaluate_walk(self, walk: tuple[str, ...]) -> FieldMat:
        q = self.qa.quiver
        src = q.arrow(walk[0])[1]
        m = FieldMat.identity(self.qa.p, self.dims[src])
        for name in walk:
            m = self.maps[name] @ m
        return m

    def check_relations(self):
        for rel in self.qa.relations:
            acc = None
            for coeff, path in rel:
                term = self.evaluate_walk(path.arrows).scale(coeff)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise ModuleError(f"representation violates relation {rel}")


def rep_to_action(r: QuiverRep, qa: QuiverAlgebra) -> ActionModule:
    """Pack a quiver representation into a single action module over to_sc(qa)."""
    r.check_relations()
    sc = qa.to_sc()
    q = qa.quiver
    offsets = {}
    total = 0
    for v in q.vertices:
        offsets[v] = total
        total += r.dims[v]
    acts = []
    for k in range(qa.dim):
        walk, src, tgt = qa.basis_path(k)
        mat = np.zeros((total, total), dtype=np.int64)
        if walk:
            block = r.evaluate_walk(walk).a
        else:
            block = np.eye(r.dims[src], dtype=np.int64)
        ro, co = offsets[tgt], offsets[src]
        mat[ro : ro + r.dims[tgt], co : co + r.dims[src]] = block
        acts.append(mat)
    mod = ActionModule(sc, acts)
    mod.cache["vertex_dims"] = {v: r.dims[v] for v in q.vertices}
    return mod


# -- morphisms -------------------------------------------------------------------


class ModMorphism:
    """Module homomorphism as a (target-dim x source-dim) matrix over F_p."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: ActionModule, target: ActionModule, matrix: FieldMat | np.ndarray):
        if source.algebra is not target.algebra:
            raise ModuleError("source and target live over different algebras")
        m = matrix if isinstance(matrix, FieldMat) else FieldMat(source.algebra.p, matrix)
        if (m.rows, m.cols) != (target.dim, source.dim):
            raise ModuleError(f"matrix shape {(m.rows, m.cols)} != {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = m

    def validate(self):
        f = self.matrix.a
        p = self.source.algebra.p
        for i in self.source.algebra.generator_indices():
            lhs = _matmul_mod(self.target.acts[i], f, p)
            rhs = _matmul_mod(f, self.source.acts[i], p)
            if not np.array_equal(lhs, rhs):
                raise ModuleError(f"matrix does not intertwine basis element {i}")

    def compose(self, then: "ModMorphism") -> "ModMorphism":
        """self followed by `then`."""
        if then.source is not self.target and then.source.dim != self.target.dim:
            raise ModuleError("non-composable morphisms")
        return ModMorphism(self.source, then.target, then.matrix @ self.matrix)

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.matrix.is_invertible()

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __repr__(self):
        return f"ModMorphism({self.source.dim} -> {self.target.dim})"


def identity_morphism(x: ActionModule) -> ModMorphism:
    return ModMorphism(x, x, FieldMat.identity(x.algebra.p, x.dim))


def zero_morphism(x: ActionModule, y: ActionModule) -> ModMorphism:
    return ModMorphism(x, y, FieldMat.zeros(x.algebra.p, y.dim, x.dim))


# -- hom spaces --------------------------------------------------------------------


def hom_space(x: ActionModule, y: ActionModule) -> list[ModMorphism]:
    """Basis of Hom(x, y): kernel of the intertwining system over generators."""
    if x.algebra is not y.algebra:
        raise ModuleError("modules live over different algebras")
    p = x.algebra.p
    dx, dy = x.dim, y.dim
    if dx == 0 or dy == 0:
        return []
    k = None  # (dy*dx) x r basis of the running solution space
    eye_x = np.eye(dx, dtype=np.int64)
    eye_y = np.eye(dy, dtype=np.int64)
    for i in x.algebra.generator_indices():
        c = (np.kron(y.acts[i], eye_x) - np.kron(eye_y, x.acts[i].T)) % p
        if k is None:
            k = _kernel(c, p)
        else:
            k = _matmul_mod(k, _kernel(_matmul_mod(c, k, p), p), p)
        if k.shape[1] == 0:
            return []
    if k is None:  # algebra generated by the unit alone
        k = np.eye(dy * dx, dtype=np.int64)
    return [ModMorphism(x, y, FieldMat(p, k[:, j].reshape(dy, dx))) for j in range(k.shape[1])]


def hom_dim(x: ActionModule, y: ActionModule) -> int:
    return len(hom_space(x, y))


def coords_in_hom_basis(basis: list[ModMorphism], mats: list[np.ndarray]) -> np.ndarray:
    """Coordinates of each matrix in the flattened hom basis (columns)."""
    if not basis:
        if any(m.any() for m in mats):
            raise ModuleError("matrix outside the hom space")
        return np.zeros((0, len(mats)), dtype=np.int64)
    p = basis[0].matrix.p
    b = np.stack([f.matrix.a.ravel() for f in basis], axis=1)
    rhs = np.stack([np.mod(m, p).ravel() for m in mats], axis=1)
    sol = solve(FieldMat(p, b), FieldMat(p, rhs))
    if sol is None:
        raise ModuleError("matrix outside the hom space")
    return sol.a


def end_sc(x: ActionModule) -> tuple[SCAlgebra, list[ModMorphism]]:
    """End(x) as an SCAlgebra with product f * g = "apply f, then g".

    Returns the algebra and the hom basis realizing it; Hom(x, -) spaces are
    then left modules by precomposition.  Cached on the module.
    """
    if "end_sc" in x.cache:
        return x.cache["end_sc"]
    basis = hom_space(x, x)
    p = x.algebra.p
    d = len(basis)
    prods = []
    for i in range(d):
        for j in range(d):
            prods.append(_matmul_mod(basis[j].matrix.a, basis[i].matrix.a, p))
    if d:
        table = coords_in_hom_basis(basis, prods).T.reshape(d, d, d)
        unit = coords_in_hom_basis(basis, [np.eye(x.dim, dtype=np.int64)]).reshape(d)
    else:
        table = np.zeros((0, 0, 0), dtype=np.int64)
        unit = np.zeros(0, dtype=np.int64)
    e = SCAlgebra(p, d, table, unit)
    x.cache["end_sc"] = (e, basis)
    return e, basis


# -- submodules and quotients ------------------------------------------------------


def sub_module(x: ActionModule, basis: FieldMat) -> tuple[ActionModule, ModMorphism]:
    """Submodule spanned by the (invariant) columns of basis, with inclusion."""
    p = x.algebra.p
    k = basis.cols
    acts = []
    for i in range(x.algebra.dim):
        img = FieldMat(p, _matmul_mod(x.acts[i], basis.a, p))
        coords = solve(basis, img)
        if coords is None:
            raise ModuleError("subspace is not invariant under the action")
        acts.append(coords.a)
    sub = ActionModule(x.algebra, acts)
    return sub, ModMorphism(sub, x, basis)


def quotient_module(x: ActionModule, basis: FieldMat) -> tuple[ActionModule, ModMorphism]:
    """Quotient by the (invariant) span of basis columns, with projection."""
    p = x.algebra.p
    d = x.dim
    red, piv = _rref(basis.a.T, p)
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
    acts = []
    for i in range(x.algebra.dim):
        acts.append(_matmul_mod(proj, _matmul_mod(x.acts[i], sect, p), p))
    quot = ActionModule(x.algebra, acts)
    return quot, ModMorphism(x, quot, FieldMat(p, proj))


@dataclass
class MorParts:
    kernel: ActionModule
    kernel_incl: ModMorphism
    image: ActionModule
    image_incl: ModMorphism  # image -> target
    image_epi: ModMorphism  # source -> image
    cokernel: ActionModule
    cokernel_proj: ModMorphism


def mor_parts(f: ModMorphism) -> MorParts:
    """Kernel, image and cokernel of a morphism with their canonical maps."""
    p = f.source.algebra.p
    ker_basis = f.matrix.kernel_basis()
    kernel, kernel_incl = sub_module(f.source, ker_basis)
    im_basis = f.matrix.column_space_basis()
    image, image_incl = sub_module(f.target, im_basis)
    epi_mat = solve(im_basis, f.matrix)
    image_epi = ModMorphism(f.source, image, epi_mat)
    cokernel, cokernel_proj = quotient_module(f.target, im_basis)
    assert kernel.dim + image.dim == f.source.dim
    return MorParts(kernel, kernel_incl, image, image_incl, image_epi, cokernel, cokernel_proj)


def direct_sum(xs: list[ActionModule]) -> tuple[ActionModule, list[ModMorphism], list[ModMorphism]]:
    """Block-diagonal direct sum with injections and projections."""
    if not xs:
        raise ModuleError("direct_sum needs at least one summand")
    a = xs[0].algebra
    for x in xs:
        if x.algebra is not a:
            raise ModuleError("summands live over different algebras")
    total = sum(x.dim for x in xs)
    acts = []
    for i in range(a.dim):
        mat = np.zeros((total, total), dtype=np.int64)
        off = 0
        for x in xs:
            mat[off : off + x.dim, off : off + x.dim] = x.acts[i]
            off += x.dim
        acts.append(mat)
    s = ActionModule(a, acts)
    injs, projs = [], []
    off = 0
    for x in xs:
        inj = np.zeros((total, x.dim), dtype=np.int64)
        inj[off : off + x.dim] = np.eye(x.dim, dtype=np.int64)
        injs.append(ModMorphism(x, s, FieldMat(a.p, inj)))
        projs.append(ModMorphism(s, x, FieldMat(a.p, inj.T.copy())))
        off += x.dim
    return s, injs, projs


def dual(x: ActionModule) -> ActionModule:
    """The linear dual as a module over the opposite algebra (transpose actions)."""
    op = x.algebra.opposite()
    return ActionModule(op, [m.T.copy() for m in x.acts])


# -- radical, top, socle ------------------------------------------------------------


@dataclass
class RadTopSoc:
    radical: ActionModule
    radical_incl: ModMorphism
    top: ActionModule
    top_proj: ModMorphism
    socle: ActionModule
    socle_incl: ModMorphism


def radical_submodule_basis(x: ActionModule) -> FieldMat:
    p = x.algebra.p
    j = x.algebra.radical_basis()
    if j.shape[1] == 0 or x.dim == 0:
        return FieldMat.zeros(p, x.dim, 0)
    imgs = np.hstack([x.act_element(j[:, c]) for c in range(j.shape[1])])
    return FieldMat(p, imgs).column_space_basis()


def radical_top_socle(x: ActionModule) -> RadTopSoc:
    p = x.algebra.p
    rad_basis = radical_submodule_basis(x)
    radical, rad_incl = sub_module(x, rad_basis)
    top, top_proj = quotient_module(x, rad_basis)
    j = x.algebra.radical_basis()
    if j.shape[1] == 0 or x.dim == 0:
        soc_basis = FieldMat.identity(p, x.dim)
    else:
        stacked = np.vstack([x.act_element(j[:, c]) for c in range(j.shape[1])])
        soc_basis = FieldMat(p, _kernel(stacked, p))
    socle, soc_incl = sub_module(x, soc_basis)
    return RadTopSoc(radical, rad_incl, top, top_proj, socle, soc_incl)


def radical_series_dims(x: ActionModule) -> tuple[int, ...]:
    """Dims of rad^k A . x for k = 1, 2, ... down to zero (iso-invariant)."""
    p = x.algebra.p
    out = []
    for jk in x.algebra.radical_power_bases():
        imgs = np.hstack([x.act_element(jk[:, c]) for c in range(jk.shape[1])])
        d = FieldMat(p, imgs).rank()
        out.append(d)
        if d == 0:
            break
    return tuple(out)


def fingerprint(x: ActionModule) -> tuple:
    """Cheap iso-invariant: dim, action ranks, radical series, idempotent dims."""
    if "fingerprint" in x.cache:
        return x.cache["fingerprint"]
    ranks = tuple(FieldMat(x.algebra.p, m).rank() for m in x.acts)
    rad = radical_series_dims(x) if x.dim else ()
    idem = ()
    if x.algebra.idempotents is not None and x.dim:
        idem = tuple(FieldMat(x.algebra.p, x.act_element(e)).rank() for e in x.algebra.idempotents)
    fp = (x.dim, ranks, rad, idem)
    x.cache["fingerprint"] = fp
    return fp


# -- exact sequences -----------------------------------------------------------------


@dataclass
class ExactSeq:
    """A chain of composable morphisms, meant to have zero consecutive composites."""

    maps: list[ModMorphism]

    def __post_init__(self):
        for f, g in zip(self.maps, self.maps[1:]):
            if g.source is not f.target and g.source.dim != f.target.dim:
                raise ModuleError("chain is not composable")


def is_exact(s: ExactSeq) -> bool:
    """Exactness at every interior node (kernel = image as subspaces)."""
    for f, g in zip(s.maps, s.maps[1:]):
        if not f.compose(g).is_zero():
            return False
        # composite zero gives im <= ker; equality iff the ranks agree
        if f.matrix.rank() != g.matrix.cols - g.matrix.rank():
            return False
    return True


def is_exact_complex(maps: list[ModMorphism]) -> bool:
    """Exactness of 0 -> X_0 -> ... -> X_n -> 0: ends included."""
    if not maps:
        return True
    if maps[0].matrix.rank() != maps[0].source.dim:
        return False
    if maps[-1].matrix.rank() != maps[-1].target.dim:
        return False
    return is_exact(ExactSeq(maps))


def induced_hom_chain(maps: list[ModMorphism], v: ActionModule) -> list[FieldMat]:
    """Matrices of Hom(v, f) in the hom bases along the chain."""
    p = v.algebra.p
    bases = [hom_space(v, maps[0].source)] + [hom_space(v, f.target) for f in maps]
    out = []
    for idx, f in enumerate(maps):
        src_b, tgt_b = bases[idx], bases[idx + 1]
        mats = [_matmul_mod(f.matrix.a, h.matrix.a, p) for h in src_b]
        if not tgt_b:
            out.append(FieldMat.zeros(p, 0, len(src_b)))
        else:
            out.append(FieldMat(p, coords_in_hom_basis(tgt_b, mats) if src_b else np.zeros((len(tgt_b), 0), dtype=np.int64)))
    return out


def hom_induced_exactness(s: ExactSeq, v: ActionModule) -> bool:
    """Does Hom(v, -) keep the chain exact, ends included?

    The induced chain is checked as 0 -> Hom(v,X_0) -> ... -> Hom(v,X_n) -> 0
    up to the right end, i.e. injectivity at the start, exactness at interior
    nodes, surjectivity onto the last term.
    """
    chain = induced_hom_chain(s.maps, v)
    if chain[0].rank() != chain[0].cols:
        return False
    if chain[-1].rank() != chain[-1].rows:
        return False
    for f, g in zip(chain, chain[1:]):
        if not (g @ f).is_zero():
            return False
        if f.rank() != g.cols - g.rank():
            return False
    return True


def random_invertible(p: int, n: int, rng) -> FieldMat:
    while True:
        m = FieldMat(p, np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)], dtype=np.int64).reshape(n, n))
        if n == 0 or m.is_invertible():
            return m


def base_change(x: ActionModule, g: FieldMat) -> ActionModule:
    """Conjugate all action matrices by g (an isomorphic copy of x)."""
    gi = g.inv()
    return ActionModule(x.algebra, [(g @ FieldMat(x.algebra.p, m) @ gi).a for m in x.acts])
