"""Projective covers, syzygies, and dimension computations.

Covers are built from the Krull-Schmidt decomposition of the regular module:
match the simple summands of top(x) to tops of indecomposable projectives,
then lift through x ->> top(x) by solving the intertwining system (always
solvable by projectivity).  Multiplicities come out right over extension-field
endomorphism rings because the top is decomposed honestly rather than counted
by k-dimension.

Infinite projective dimension is only ever reported with a certificate: a
syzygy isomorphism cycle reverified by the isomorphism test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import SCAlgebra
from .linalg import FieldMat, solve
from .krull_schmidt import decompose, find_isomorphism, is_isomorphic
from .modules import (
    ActionModule,
    ModMorphism,
    ModuleError,
    direct_sum,
    dual,
    fingerprint,
    hom_space,
    mor_parts,
    radical_submodule_basis,
    radical_top_socle,
    regular_module,
)


@dataclass(frozen=True)
class PdResult:
    """Exact(n), AtLeast(cutoff), or Infinite with a syzygy-cycle certificate."""

    kind: str  # "exact" | "at_least" | "infinite"
    n: int | None = None
    cutoff: int | None = None
    cycle: tuple[int, int] | None = None

    @classmethod
    def exact(cls, n: int) -> "PdResult":
        return cls("exact", n=n)

    @classmethod
    def at_least(cls, cutoff: int) -> "PdResult":
        return cls("at_least", cutoff=cutoff)

    @classmethod
    def infinite(cls, i: int, j: int) -> "PdResult":
        return cls("infinite", cycle=(i, j))

    @property
    def is_finite(self) -> bool:
        return self.kind == "exact"

    def to_jsonable(self) -> dict:
        if self.kind == "exact":
            return {"kind": "exact", "n": self.n}
        if self.kind == "at_least":
            return {"kind": "at_least", "cutoff": self.cutoff}
        return {"kind": "infinite", "cycle": list(self.cycle)}

    def __str__(self):
        if self.kind == "exact":
            return f"pd = {self.n}"
        if self.kind == "at_least":
            return f"pd >= {self.cutoff}"
        return f"pd = infinity (syzygy cycle {self.cycle})"


def pd_max(results: list[PdResult], cutoff: int) -> PdResult:
    """Max of projective dimensions: infinite dominates, then censored, then exact."""
    for r in results:
        if r.kind == "infinite":
            return r
    if any(r.kind == "at_least" for r in results):
        return PdResult.at_least(cutoff)
    if not results:
        return PdResult.exact(0)
    return PdResult.exact(max(r.n for r in results))


@dataclass
class ProjClass:
    projective: ActionModule
    top: ActionModule
    multiplicity: int  # multiplicity in the regular module


def projective_classes(a: SCAlgebra, seed: int = 0) -> list[ProjClass]:
    """Indecomposable projectives (summands of the regular module) with their tops."""
    key = ("proj_classes", seed)
    if key not in a.cache:
        reg = regular_module(a)
        report = decompose(reg, seed=seed)
        out = []
        for cl in report.classes:
            top = radical_top_socle(cl.rep).top
            out.append(ProjClass(cl.rep, top, cl.multiplicity))
        a.cache[key] = out
    return a.cache[key]


def simple_modules(a: SCAlgebra, seed: int = 0) -> list[ActionModule]:
    return [pc.top for pc in projective_classes(a, seed=seed)]


def projective_cover(x: ActionModule, seed: int = 0) -> tuple[ActionModule, ModMorphism]:
    """Minimal projective cover: p ->> x with ker inside rad(p)."""
    a = x.algebra
    p = a.p
    if x.dim == 0:
        z = ActionModule.zero(a)
        return z, ModMorphism(z, x, FieldMat.zeros(p, 0, 0))
    pcs = projective_classes(a, seed=seed)
    rts = radical_top_socle(x)
    top, top_proj = rts.top, rts.top_proj
    top_report = decompose(top, seed=seed)

    summands: list[ActionModule] = []
    top_maps: list[FieldMat] = []  # maps P_i -> top(x) hitting the slot
    for cl in top_report.classes:
        match = None
        for pc in pcs:
            iso = find_isomorphism(cl.rep, pc.top, seed=seed)
            if iso is not None:
                match = (pc, iso)
                break
        if match is None:
            raise ModuleError("top summand matches no simple module of the algebra")
        pc, iso_rep_to_simple = match
        cover_to_top = radical_top_socle(pc.projective).top_proj  # P_i ->> S_i
        for slot in cl.slots:
            # P_i ->> S_i -=-> rep -=-> slot -> top(x)
            to_rep = cover_to_top.matrix  # dim S_i x dim P_i, S_i == pc.top
            iso_inv = iso_rep_to_simple.matrix.inv()  # pc.top -> cl.rep
            g = slot.incl.matrix @ slot.iso_to_rep.matrix.inv() @ iso_inv @ to_rep
            summands.append(pc.projective)
            top_maps.append(g)

    cover, injs, _ = direct_sum(summands)
    lifted_cols = []
    for pm, g in zip(summands, top_maps):
        f = _lift_through_epi(pm, x, top_proj, g)
        lifted_cols.append(f)
    epi_mat = FieldMat(p, np.hstack([f.a for f in lifted_cols]))
    epi = ModMorphism(cover, x, epi_mat)
    # minimality: epi surjective with kernel inside rad(cover)
    if epi_mat.rank() != x.dim:
        raise ModuleError("cover map is not surjective")
    ker = epi_mat.kernel_basis()
    if ker.cols:
        rad_cover = radical_submodule_basis(cover)
        combined = np.hstack([rad_cover.a, ker.a])
        if FieldMat(p, combined).rank() != rad_cover.rank():
            raise ModuleError("cover kernel is not superfluous")
    return cover, epi


def _lift_through_epi(
    pm: ActionModule, x: ActionModule, epi: ModMorphism, g: FieldMat
) -> FieldMat:
    """f: pm -> x with epi . f = g; exists since pm is projective and epi onto."""
    p = x.algebra.p
    homs = hom_space(pm, x)
    if not homs:
        if g.is_zero():
            return FieldMat.zeros(p, x.dim, pm.dim)
        raise ModuleError("no homomorphisms available for the lift")
    cols = np.stack([(epi.matrix @ h.matrix).a.ravel() for h in homs], axis=1)
    rhs = g.a.ravel().reshape(-1, 1)
    sol = solve(FieldMat(p, cols), FieldMat(p, rhs))
    if sol is None:
        raise ModuleError("projective lift system is inconsistent")
    f = np.zeros((x.dim, pm.dim), dtype=np.int64)
    for c, h in zip(sol.a.reshape(-1), homs):
        if c:
            f = (f + c * h.matrix.a) % p
    return FieldMat(p, f)


def syzygy_step(x: ActionModule, seed: int = 0) -> ActionModule:
    """Kernel of the minimal projective cover (cached on the module)."""
    key = ("syzygy_step", seed)
    if key not in x.cache:
        cover, epi = projective_cover(x, seed=seed)
        x.cache[key] = mor_parts(epi).kernel
    return x.cache[key]


def syzygy(x: ActionModule, i: int, seed: int = 0) -> ActionModule:
    if i < 0:
        raise ValueError("syzygy index must be nonnegative")
    cur = x
    for _ in range(i):
        cur = syzygy_step(cur, seed=seed)
    return cur


def is_projective(x: ActionModule, seed: int = 0) -> bool:
    if x.dim == 0:
        return True
    return syzygy_step(x, seed=seed).dim == 0


def proj_dim(x: ActionModule, cutoff: int = 20, seed: int = 0) -> PdResult:
    """Projective dimension with syzygy-cycle detection up to the cutoff.

    Exact(n) when the resolution terminates; Infinite((i, j)) with a verified
    syzygy cycle; AtLeast(cutoff) otherwise.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    key = ("proj_dim", cutoff, seed)
    if key in x.cache:
        return x.cache[key]
    res = _proj_dim_uncached(x, cutoff, seed)
    x.cache[key] = res
    return res


def _proj_dim_uncached(x: ActionModule, cutoff: int, seed: int) -> PdResult:
    seen: list[ActionModule] = [x]
    cur = x
    for step in range(1, cutoff + 1):
        cur = syzygy_step(cur, seed=seed)
        if cur.dim == 0:
            return PdResult.exact(step - 1)
        for j, prev in enumerate(seen):
            if prev.dim and is_isomorphic(prev, cur, seed=seed):
                return PdResult.infinite(j, step)
        seen.append(cur)
    return PdResult.at_least(cutoff)


def gldim(a: SCAlgebra, cutoff: int = 20, seed: int = 0) -> PdResult:
    """Global dimension: max projective dimension of the simple modules."""
    return pd_max([proj_dim(s, cutoff=cutoff, seed=seed) for s in simple_modules(a, seed=seed)], cutoff)


def inj_dim(x: ActionModule, cutoff: int = 20, seed: int = 0) -> PdResult:
    """Injective dimension via duality: pd of the dual over the opposite algebra."""
    return proj_dim(dual(x), cutoff=cutoff, seed=seed)


def findim_rep_finite(
    a: SCAlgebra, indecs: list[ActionModule], cutoff: int = 20, seed: int = 0
) -> int:
    """Finitistic dimension over a complete list of indecomposables.

    Max of the finite projective dimensions; 0 when only projectives have
    finite pd.  Raises if a syzygy leaves the provided class list, which
    flags an incomplete list.
    """
    fps = [fingerprint(m) for m in indecs]

    def registered(mod: ActionModule) -> bool:
        if mod.dim == 0:
            return True
        rep = decompose(mod, seed=seed)
        for cl in rep.classes:
            fp = fingerprint(cl.rep)
            if not any(
                fp == f and is_isomorphic(cl.rep, m, seed=seed) for f, m in zip(fps, indecs)
            ):
                return False
        return True

    best = 0
    for m in indecs:
        if not registered(syzygy_step(m, seed=seed)):
            raise ModuleError("syzygy fell outside the provided class list; list incomplete")
        res = proj_dim(m, cutoff=cutoff, seed=seed)
        if res.kind == "at_least":
            raise ModuleError("cutoff too small to classify a member; raise it")
        if res.is_finite:
            best = max(best, res.n)
    return best
