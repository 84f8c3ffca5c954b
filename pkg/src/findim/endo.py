"""Endomorphism algebras and transport of modules along Hom(M, -).

E = End(M) carries the product f * g = "apply f, then g", which makes every
Hom(M, X) a left E-module by precomposition.  The package bundles the
decomposition of M, isotypic idempotents, the block-formula radical
(cross-checked against the general radical algorithm) and the projectives
Hom(M, M_i) of E.

Also here: minimal right add(V)-approximations, add(V)-coresolutions and the
induced-exactness test against gldim(End V); the tensor functor M x_E - as an
explicit relation quotient; and the witness construction realizing second
syzygies over E as transported hom modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import SCAlgebra, radical_sc
from .krull_schmidt import DecompReport, decompose, is_isomorphic
from .linalg import FieldMat, _matmul_mod, _rref
from .modules import (
    ActionModule,
    ModMorphism,
    ModuleError,
    coords_in_hom_basis,
    direct_sum,
    dual,
    end_sc,
    hom_space,
    identity_morphism,
    is_exact_complex,
    hom_induced_exactness,
    ExactSeq,
    mor_parts,
    quotient_module,
    regular_module,
    sub_module,
)
from .resolutions import gldim, is_projective, projective_classes, projective_cover, PdResult


class HypothesisError(RuntimeError):
    """An operation's mathematical hypothesis could not be verified."""


@dataclass
class EndoPackage:
    algebra: SCAlgebra  # the base algebra A
    module: ActionModule  # M
    e: SCAlgebra  # End(M)
    hom_basis: list[ModMorphism]
    decomp: DecompReport
    class_reps: list[ActionModule]
    seed: int
    _projectivization: list["Transported"] | None = field(default=None, repr=False)

    def projectivization(self) -> list["Transported"]:
        """Hom(M, M_i) for each indecomposable class: the projectives of E."""
        if self._projectivization is None:
            self._projectivization = [hom_transport(self, rep) for rep in self.class_reps]
        return self._projectivization


def _element_matrix(basis: list[ModMorphism], coords: np.ndarray, p: int, dim: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=np.int64)
    for c, f in zip(coords, basis):
        if c:
            out = (out + int(c) * f.matrix.a) % p
    return out


def end_algebra(m: ActionModule, seed: int = 0) -> EndoPackage:
    """End(M) with idempotent and radical data (cached on the module)."""
    key = ("endo_package", seed)
    if key in m.cache:
        return m.cache[key]
    a = m.algebra
    p = a.p
    e, basis = end_sc(m)
    decomp = decompose(m, seed=seed)
    class_reps = [cl.rep for cl in decomp.classes]

    # isotypic idempotents: sum of incl . proj over the slots of one class
    idems = []
    for cl in decomp.classes:
        mat = np.zeros((m.dim, m.dim), dtype=np.int64)
        for slot in cl.slots:
            mat = (mat + (slot.incl.matrix @ slot.proj.matrix).a) % p
        idems.append(coords_in_hom_basis(basis, [mat]).reshape(-1))

    # radical by the block formula: all homs between slots of distinct classes,
    # radical-of-End homs between slots of one class
    rad_mats: list[np.ndarray] = []
    n_classes = len(decomp.classes)
    pair_bases: dict[tuple[int, int], list[np.ndarray]] = {}
    for i in range(n_classes):
        for j in range(n_classes):
            ri, rj = decomp.classes[i].rep, decomp.classes[j].rep
            if i == j:
                e_i, b_i = end_sc(ri)
                rad = e_i.radical_basis()
                pair_bases[(i, j)] = [
                    _element_matrix(b_i, rad[:, c], p, ri.dim) for c in range(rad.shape[1])
                ]
            else:
                pair_bases[(i, j)] = [h.matrix.a for h in hom_space(ri, rj)]
    for i, ci in enumerate(decomp.classes):
        for j, cj in enumerate(decomp.classes):
            for slot_s in ci.slots:
                for slot_t in cj.slots:
                    for h in pair_bases[(i, j)]:
                        # m -> leaf_s -> rep_i -> rep_j -> leaf_t -> m
                        g = (
                            slot_t.incl.matrix
                            @ slot_t.iso_to_rep.matrix.inv()
                            @ FieldMat(p, h)
                            @ slot_s.iso_to_rep.matrix
                            @ slot_s.proj.matrix
                        )
                        rad_mats.append(g.a)
    if rad_mats:
        coords = coords_in_hom_basis(basis, rad_mats)
        r, piv = _rref(coords.T, p)
        block_rad = r[: len(piv)].T.copy() if piv else np.zeros((e.dim, 0), dtype=np.int64)
    else:
        block_rad = np.zeros((e.dim, 0), dtype=np.int64)

    general_rad = radical_sc(e)
    if general_rad.shape[1] != block_rad.shape[1]:
        raise ModuleError(
            "block-formula radical disagrees with the general radical algorithm"
        )
    if block_rad.shape[1]:
        combined = np.hstack([general_rad, block_rad])
        if len(_rref(combined.T, p)[1]) != general_rad.shape[1]:
            raise ModuleError("block-formula radical spans a different subspace")
    e._radical = block_rad
    e.idempotents = idems
    pkg = EndoPackage(a, m, e, basis, decomp, class_reps, seed)
    m.cache[key] = pkg
    return pkg


@dataclass
class Transported:
    """Hom(M, X) as a left E-module, remembering the hom basis used."""

    module: ActionModule
    basis: list[ModMorphism]


def hom_transport(pkg: EndoPackage, x: ActionModule) -> Transported:
    """Hom(M, x) with E acting by precomposition."""
    if x.algebra is not pkg.algebra:
        raise ModuleError("module lives over a different algebra than M")
    p = pkg.algebra.p
    basis = hom_space(pkg.module, x)
    k = len(basis)
    acts = []
    for f in pkg.hom_basis:
        mats = [_matmul_mod(h.matrix.a, f.matrix.a, p) for h in basis]
        acts.append(coords_in_hom_basis(basis, mats) if k else np.zeros((0, 0), dtype=np.int64))
    return Transported(ActionModule(pkg.e, acts), basis)


def hom_transport_map(
    pkg: EndoPackage, f: ModMorphism, tx: Transported, ty: Transported
) -> ModMorphism:
    """The induced E-map Hom(M, f): Hom(M, x) -> Hom(M, y)."""
    p = pkg.algebra.p
    mats = [_matmul_mod(f.matrix.a, h.matrix.a, p) for h in tx.basis]
    if ty.basis:
        mat = coords_in_hom_basis(ty.basis, mats) if tx.basis else np.zeros((len(ty.basis), 0), dtype=np.int64)
    else:
        mat = np.zeros((0, len(tx.basis)), dtype=np.int64)
    return ModMorphism(tx.module, ty.module, FieldMat(p, mat))


# -- membership in add(V) -----------------------------------------------------------


def in_add(x: ActionModule, class_reps: list[ActionModule], seed: int = 0) -> bool:
    """Does every indecomposable summand of x occur among the given classes?"""
    if x.dim == 0:
        return True
    rep = decompose(x, seed=seed)
    for cl in rep.classes:
        if not any(is_isomorphic(cl.rep, r, seed=seed) for r in class_reps):
            return False
    return True


def summand_classes(v: ActionModule, seed: int = 0) -> list[ActionModule]:
    return [cl.rep for cl in decompose(v, seed=seed).classes]


def is_generator(a: SCAlgebra, v: ActionModule, seed: int = 0) -> bool:
    """A in add(v): every indecomposable projective occurs among v's summands."""
    reps = summand_classes(v, seed=seed)
    return all(
        any(is_isomorphic(pc.projective, r, seed=seed) for r in reps)
        for pc in projective_classes(a, seed=seed)
    )


def check_gen_cogen(a: SCAlgebra, v: ActionModule, seed: int = 0) -> bool:
    """Generator-cogenerator test: all indecomposable projectives and injectives
    occur among the summands of v."""
    if not is_generator(a, v, seed=seed):
        return False
    reps = summand_classes(v, seed=seed)
    injectives = [dual(pc.projective) for pc in projective_classes(a.opposite(), seed=seed)]
    return all(any(is_isomorphic(i, r, seed=seed) for r in reps) for i in injectives)


# -- right add(V)-approximations ------------------------------------------------------


@dataclass
class Approximation:
    v0: ActionModule
    map: ModMorphism
    summand_classes: list[int]  # indices into the class list used


def add_approximation(v: ActionModule, x: ActionModule, seed: int = 0) -> Approximation:
    """Minimal right add(v)-approximation of x.

    Starts from one copy of v_i per basis hom v_i -> x and greedily drops
    summands while Hom(v_j, -) stays surjective onto Hom(v_j, x) for all j.
    """
    p = v.algebra.p
    reps = summand_classes(v, seed=seed)
    into_x = {i: hom_space(r, x) for i, r in enumerate(reps)}
    between = {}
    for j in range(len(reps)):
        for i in range(len(reps)):
            between[(j, i)] = hom_space(reps[j], reps[i])
    # summand s = (class index, hom to x)
    summands: list[tuple[int, ModMorphism]] = [
        (i, h) for i, homs in into_x.items() for h in homs
    ]
    target_dims = {j: len(into_x[j]) for j in range(len(reps))}

    def surjective(kept: list[tuple[int, ModMorphism]]) -> bool:
        for j in range(len(reps)):
            if target_dims[j] == 0:
                continue
            vecs = []
            for i, f in kept:
                for h in between[(j, i)]:
                    vecs.append(_matmul_mod(f.matrix.a, h.matrix.a, p).ravel())
            if not vecs:
                return False
            if FieldMat(p, np.stack(vecs, axis=1)).rank() != target_dims[j]:
                return False
        return True

    changed = True
    while changed:
        changed = False
        for idx in range(len(summands)):
            trial = summands[:idx] + summands[idx + 1 :]
            if surjective(trial):
                summands = trial
                changed = True
                break

    if not summands:
        z = ActionModule.zero(v.algebra)
        return Approximation(z, ModMorphism(z, x, FieldMat.zeros(p, x.dim, 0)), [])
    v0, _, _ = direct_sum([reps[i] for i, _ in summands])
    fmat = np.hstack([f.matrix.a for _, f in summands])
    return Approximation(v0, ModMorphism(v0, x, FieldMat(p, fmat)), [i for i, _ in summands])


@dataclass
class CoresolutionResult:
    success: bool
    depth: int
    chain: list[ModMorphism] | None  # V_d -> ... -> V_0 -> x on success
    exact: bool | None
    hom_exact: bool | None
    failed_kernel: ActionModule | None


def coresolution_addV(v: ActionModule, x: ActionModule, n: int, seed: int = 0) -> CoresolutionResult:
    """Resolve x by minimal right add(v)-approximations for at most n steps.

    Success at depth d <= n means the d-th kernel lies in add(v); the returned
    chain 0 -> V_d -> ... -> V_0 -> x -> 0 is verified exact and
    Hom(v, -)-exact.
    """
    if not is_generator(v.algebra, v, seed=seed):
        raise HypothesisError("v is not a generator (regular module not in add v)")
    reps = summand_classes(v, seed=seed)
    kernels = [x]
    approxs: list[Approximation] = []
    incls: list[ModMorphism] = []
    for depth in range(n + 1):
        k = kernels[-1]
        if in_add(k, reps, seed=seed):
            # assemble 0 -> V_depth -> ... -> V_0 -> x -> 0
            maps: list[ModMorphism] = []
            if depth == 0:
                maps = [identity_morphism(x)]
            else:
                top = incls[depth - 1]  # K_depth -> V_{depth-1}
                maps.append(top)
                for i in range(depth - 1, 0, -1):
                    maps.append(approxs[i].map.compose(incls[i - 1]))
                maps.append(approxs[0].map)
            exact = is_exact_complex(maps)
            hx = hom_induced_exactness(ExactSeq(maps), v)
            return CoresolutionResult(True, depth, maps, exact, hx, None)
        if depth == n:
            break
        ap = add_approximation(v, k, seed=seed)
        if ap.map.matrix.rank() != k.dim:
            raise HypothesisError("approximation by a generator failed to be surjective")
        parts = mor_parts(ap.map)
        approxs.append(ap)
        incls.append(parts.kernel_incl)
        kernels.append(parts.kernel)
    return CoresolutionResult(False, n, None, None, None, kernels[-1])


@dataclass
class EndoGldimReport:
    n: int
    gldim_endv: PdResult
    side_gldim: bool
    side_coresolution: bool
    per_member: list[bool]
    agree: bool


def gldim_endo_test(
    v: ActionModule, indecs: list[ActionModule], n: int, cutoff: int = 20, seed: int = 0
) -> EndoGldimReport:
    """Both sides of the coresolution / gldim(End v) <= n + 2 equivalence."""
    if not check_gen_cogen(v.algebra, v, seed=seed):
        raise HypothesisError("v is not a generator-cogenerator")
    pkg = end_algebra(v, seed=seed)
    g = gldim(pkg.e, cutoff=cutoff, seed=seed)
    if g.kind == "at_least" and g.cutoff <= n + 2:
        raise HypothesisError("cutoff too small to decide gldim(End v) <= n + 2")
    side1 = g.is_finite and g.n <= n + 2
    per_member = [coresolution_addV(v, x, n, seed=seed).success for x in indecs]
    side2 = all(per_member)
    return EndoGldimReport(n, g, side1, side2, per_member, side1 == side2)


# -- cokernels of transported maps -----------------------------------------------------


def coker_module(pkg: EndoPackage, g: ModMorphism) -> ActionModule:
    """Cokernel of Hom(M, g) as an E-module, for g: m1 -> m0 with m1, m0 in add M."""
    for mod in (g.source, g.target):
        if not in_add(mod, pkg.class_reps, seed=pkg.seed):
            raise ModuleError("map endpoints are not in add(M)")
    t1 = hom_transport(pkg, g.source)
    t0 = hom_transport(pkg, g.target)
    induced = hom_transport_map(pkg, g, t1, t0)
    im = induced.matrix.column_space_basis()
    coker, _ = quotient_module(t0.module, im)
    return coker


# -- tensor over E and the canonical map -----------------------------------------------


@dataclass
class TensorResult:
    module: ActionModule  # M x_E Y over A
    proj: FieldMat  # (dim T) x (dim M * dim Y) quotient map
    sect: FieldMat  # section


def tensor_over_end(pkg: EndoPackage, y: ActionModule) -> TensorResult:
    """M x_E Y: quotient of M x_k Y by the balancing relations m.e x w - m x e.w.

    A acts through the left factor.  y must live over pkg.e.
    """
    if y.algebra is not pkg.e:
        raise ModuleError("y does not live over End(M)")
    m = pkg.module
    p = pkg.algebra.p
    dm, dy = m.dim, y.dim
    big = dm * dy
    rel_cols = []
    for f, ay in zip(pkg.hom_basis, y.acts):
        me = f.matrix.a
        for i in range(dm):
            for j in range(dy):
                vec = np.zeros(big, dtype=np.int64)
                # (m_i . e) x w_j = sum_k me[k, i] m_k x w_j
                for k in np.nonzero(me[:, i])[0]:
                    vec[k * dy + j] = (vec[k * dy + j] + me[k, i]) % p
                # m_i x (e . w_j) = sum_l ay[l, j] m_i x w_l
                for l in np.nonzero(ay[:, j])[0]:
                    vec[i * dy + l] = (vec[i * dy + l] - ay[l, j]) % p
                if vec.any():
                    rel_cols.append(vec)
    if rel_cols:
        span = np.stack(rel_cols, axis=1)
    else:
        span = np.zeros((big, 0), dtype=np.int64)
    red, piv = _rref(span.T, p)
    red = red[: len(piv)]
    pivset = set(piv)
    free = [c for c in range(big) if c not in pivset]
    proj = np.zeros((len(free), big), dtype=np.int64)
    eye = np.eye(big, dtype=np.int64)
    for col in range(big):
        vv = eye[:, col].copy()
        for r, c in enumerate(piv):
            if vv[c]:
                vv = (vv - vv[c] * red[r]) % p
        proj[:, col] = vv[free]
    sect = np.zeros((big, len(free)), dtype=np.int64)
    for i, c in enumerate(free):
        sect[c, i] = 1
    eye_y = np.eye(dy, dtype=np.int64)
    acts = []
    for i in range(pkg.algebra.dim):
        bigact = np.kron(m.acts[i], eye_y) % p
        acts.append(_matmul_mod(proj, _matmul_mod(bigact, sect, p), p))
    t = ActionModule(pkg.algebra, acts)
    return TensorResult(t, FieldMat(p, proj), FieldMat(p, sect))


def tensor_induced_map(pkg: EndoPackage, f: ModMorphism, ty: TensorResult, tz: TensorResult) -> ModMorphism:
    """M x_E f for f: y -> z between E-modules."""
    p = pkg.algebra.p
    dm = pkg.module.dim
    big = np.kron(np.eye(dm, dtype=np.int64), f.matrix.a) % p
    mat = _matmul_mod(tz.proj.a, _matmul_mod(big, ty.sect.a, p), p)
    return ModMorphism(ty.module, tz.module, FieldMat(p, mat))


def canonical_map(pkg: EndoPackage, y: ActionModule) -> tuple[ModMorphism, Transported, TensorResult]:
    """The E-map y -> Hom(M, M x_E y) sending w to [t -> t x w].

    Returns the morphism together with the transported target and the tensor
    data.  An isomorphism whenever y is projective over E.
    """
    p = pkg.algebra.p
    ten = tensor_over_end(pkg, y)
    target = hom_transport(pkg, ten.module)
    dm, dy = pkg.module.dim, y.dim
    mats = []
    for j in range(dy):
        cols = [ten.proj.a[:, i * dy + j] for i in range(dm)]
        mats.append(np.stack(cols, axis=1) if dm else np.zeros((ten.module.dim, 0), dtype=np.int64))
    if target.basis:
        sigma = coords_in_hom_basis(target.basis, mats) if dy else np.zeros((len(target.basis), 0), dtype=np.int64)
    else:
        sigma = np.zeros((0, dy), dtype=np.int64)
    return ModMorphism(y, target.module, FieldMat(p, sigma)), target, ten


# -- the second-syzygy witness -----------------------------------------------------------


def strip_projective_summands(x: ActionModule, seed: int = 0) -> ActionModule:
    """Drop all projective direct summands."""
    if x.dim == 0:
        return x
    rep = decompose(x, seed=seed)
    kept = []
    for cl in rep.classes:
        if not is_projective(cl.rep, seed=seed):
            kept.extend([cl.rep] * cl.multiplicity)
    if not kept:
        return ActionModule.zero(x.algebra)
    return direct_sum(kept)[0]


@dataclass
class SyzygyWitness:
    y: ActionModule  # the A-module realizing the second syzygy
    omega2: ActionModule
    transported: ActionModule
    verdict: bool


def omega2_hom_witness(pkg: EndoPackage, x: ActionModule, seed: int = 0) -> SyzygyWitness:
    """Realize the second syzygy of an E-module as a transported hom module.

    Build the minimal projective presentation P1 -> P0 -> x over E, apply
    M x_E -, take y = kernel of the induced A-map, and compare Hom(M, y)
    with the second syzygy up to projective summands.
    """
    if x.algebra is not pkg.e:
        raise ModuleError("x does not live over End(M)")
    p0, eps0 = projective_cover(x, seed=seed)
    parts0 = mor_parts(eps0)
    k1, incl1 = parts0.kernel, parts0.kernel_incl
    p1, eps1 = projective_cover(k1, seed=seed)
    d1 = eps1.compose(incl1)  # P1 -> P0
    omega2 = mor_parts(d1).kernel

    t1 = tensor_over_end(pkg, p1)
    t0 = tensor_over_end(pkg, p0)
    induced = tensor_induced_map(pkg, d1, t1, t0)
    y = mor_parts(induced).kernel

    transported = hom_transport(pkg, y).module
    lhs = strip_projective_summands(omega2, seed=seed)
    rhs = strip_projective_summands(transported, seed=seed)
    verdict = is_isomorphic(lhs, rhs, seed=seed)
    return SyzygyWitness(y, omega2, transported, verdict)
