"""Krull-Schmidt machinery: splitting, certified decomposition, isomorphism tests,
iso-class registries and brute-force enumeration of indecomposables.

Splitting strategy: cheap Fitting splits over endomorphisms first; when those
stall, compute rad(End) and either certify the quotient is a finite field
(indecomposable, witnessed by an element with irreducible full-degree minimal
polynomial) or manufacture a proper idempotent from a coprime factor split of
a minimal polynomial and lift it through the radical.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import polys
from .algebra import QuiverAlgebra, SCAlgebra, semisimple_quotient
from .linalg import FieldMat, _kernel, _matmul_mod, solve
from .modules import (
    ActionModule,
    ModMorphism,
    ModuleError,
    QuiverRep,
    end_sc,
    fingerprint,
    hom_space,
    rep_to_action,
    sub_module,
)


class DecompositionError(RuntimeError):
    pass


class IsoInconclusive(RuntimeError):
    pass


# -- Fitting splits -----------------------------------------------------------------


def _split_from_matrix(x: ActionModule, g: np.ndarray):
    """Split x = ker(g) + im(g) when both are nonzero and complementary."""
    p = x.algebra.p
    ker = _kernel(g, p)
    im = FieldMat(p, g).column_space_basis().a
    if ker.shape[1] == 0 or im.shape[1] == 0:
        return None
    if ker.shape[1] + im.shape[1] != x.dim:
        return None
    both = FieldMat(p, np.hstack([ker, im]))
    if both.rank() != x.dim:
        return None
    inv = both.inv().a
    parts = []
    for basis, off in ((ker, 0), (im, ker.shape[1])):
        sub, incl = sub_module(x, FieldMat(p, basis))
        proj = ModMorphism(x, sub, FieldMat(p, inv[off : off + basis.shape[1]].copy()))
        parts.append((sub, incl, proj))
    return parts[0], parts[1]


def fitting_split(x: ActionModule, f: ModMorphism):
    """Fitting lemma: x = ker(f^N) + im(f^N); None when one part vanishes.

    Returns ((x1, incl1, proj1), (x2, incl2, proj2)) or None.
    """
    if f.source is not x or f.target is not x:
        raise ModuleError("fitting_split needs an endomorphism of x")
    p = x.algebra.p
    g = f.matrix.a.copy()
    n = x.dim
    k = 1
    while k < n:
        g = _matmul_mod(g, g, p)
        k *= 2
    return _split_from_matrix(x, g)


# -- locality certification ------------------------------------------------------------


@dataclass
class LocalityCertificate:
    """Witness that End(leaf) is local: its radical plus a primitive element
    of the field quotient End/rad."""

    end_dim: int
    radical_dim: int
    quotient_dim: int
    witness: list[int]  # element of End/rad in quotient coordinates
    witness_minpoly: list[int]


def _min_poly(a: SCAlgebra, u: np.ndarray) -> list[int]:
    p = a.p
    powers = [a.unit.copy()]
    cur = a.unit.copy()
    while True:
        cur = a.mult(cur, u)
        stack = np.stack(powers, axis=1)
        sol = solve(FieldMat(p, stack), FieldMat(p, cur.reshape(-1, 1)))
        if sol is not None:
            coeffs = [(-int(c)) % p for c in sol.a.reshape(-1)]
            return polys.trim(coeffs + [1])
        powers.append(cur.copy())


def _field_witness(q: SCAlgebra, rng: random.Random, budget: int = 80):
    """An element of q whose minimal polynomial is irreducible of degree dim(q),
    or None (then q is not a field)."""
    d, p = q.dim, q.p
    if d == 0:
        return None
    candidates = []
    for i in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        candidates.append(e)
    for _ in range(budget):
        candidates.append(np.array([rng.randrange(p) for _ in range(d)], dtype=np.int64))
    if p**d <= 2**20:
        candidates.extend(
            np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=d)
        )
    for u in candidates:
        if not u.any():
            continue
        m = _min_poly(q, u)
        if polys.deg(m) == d and polys.is_irreducible(m, p):
            return u, m
    return None


def _coprime_split_idempotent(e_alg: SCAlgebra, rng: random.Random, budget: int = 120):
    """A proper idempotent of e_alg, or None when End/rad is a field.

    Find z in the semisimple quotient whose (squarefree) minimal polynomial
    factors as g*h with gcd 1, build the CRT idempotent (u*g)(z), and lift it
    through the radical by the Newton iteration e -> 3e^2 - 2e^3.
    """
    p = e_alg.p
    quot, proj, sect = semisimple_quotient(e_alg)
    d = quot.dim
    if d <= 1:
        return None

    def try_element(z: np.ndarray):
        m = _min_poly(quot, z)
        g = polys.nontrivial_factor(m, p, rng)
        if g is None:
            return None
        h = polys.divmod_poly(m, g, p)[0]
        gc, u, _ = polys.xgcd_poly(g, h, p)
        if polys.deg(gc) != 0:
            return None
        ug = polys.mul(u, g, p)
        # evaluate ug at z inside the quotient algebra
        acc = np.zeros(d, dtype=np.int64)
        pw = quot.unit.copy()
        for c in ug:
            acc = (acc + c * pw) % p
            pw = quot.mult(pw, z)
        return acc

    candidates = []
    for i in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        candidates.append(e)
    for _ in range(budget):
        candidates.append(np.array([rng.randrange(p) for _ in range(d)], dtype=np.int64))
    if p**d <= 2**16:
        candidates.extend(
            np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=d)
        )
    eq = None
    for z in candidates:
        if not z.any():
            continue
        eq = try_element(z)
        if eq is not None and eq.any() and (eq != quot.unit % p).any():
            break
        eq = None
    if eq is None:
        return None
    # lift the idempotent from end/rad into end
    e = _matmul_mod(sect, eq.reshape(-1, 1), p).reshape(-1)
    for _ in range(e_alg.dim + 2):
        sq = e_alg.mult(e, e)
        if np.array_equal(sq, e):
            break
        cube = e_alg.mult(sq, e)
        e = (3 * sq - 2 * cube) % p
    else:
        raise DecompositionError("idempotent lifting did not converge")
    return e


# -- decomposition ------------------------------------------------------------------


@dataclass
class DecompSlot:
    """One direct summand in place: inclusion/projection into the input module
    and an isomorphism from the slot onto its class representative."""

    incl: ModMorphism
    proj: ModMorphism
    iso_to_rep: ModMorphism


@dataclass
class DecompClass:
    rep: ActionModule
    multiplicity: int
    certificate: LocalityCertificate
    slots: list[DecompSlot] = field(default_factory=list)


@dataclass
class DecompReport:
    module: ActionModule
    classes: list[DecompClass]
    seed: int

    def total_dim(self) -> int:
        return sum(c.rep.dim * c.multiplicity for c in self.classes)

    def multiset(self) -> list[tuple[tuple, int]]:
        return sorted((fingerprint(c.rep), c.multiplicity) for c in self.classes)


def _try_split(x: ActionModule, rng: random.Random):
    """A split of x into two complementary summands, or a locality certificate."""
    end_basis = hom_space(x, x)
    p = x.algebra.p
    n = x.dim
    if len(end_basis) == 1:
        return None, LocalityCertificate(1, 0, 1, [1], [0, 1])

    def fitting(mat: np.ndarray):
        g = mat.copy()
        k = 1
        while k < n:
            g = _matmul_mod(g, g, p)
            k *= 2
        return _split_from_matrix(x, g)

    candidates = [f.matrix.a for f in end_basis]
    for i, f in enumerate(end_basis):
        for g in end_basis[i:]:
            candidates.append(_matmul_mod(f.matrix.a, g.matrix.a, p))
    for _ in range(40):
        coeffs = [rng.randrange(p) for _ in end_basis]
        m = np.zeros((n, n), dtype=np.int64)
        for c, f in zip(coeffs, end_basis):
            if c:
                m = (m + c * f.matrix.a) % p
        candidates.append(m)
    for mat in candidates:
        split = fitting(mat)
        if split is not None:
            return split, None

    # Fitting stalled; decide via the radical of End(x)
    e_alg, basis = end_sc(x)
    idem = _coprime_split_idempotent(e_alg, rng)
    if idem is None:
        quot, _, _ = semisimple_quotient(e_alg)
        wit = _field_witness(quot, rng)
        if wit is None:
            raise DecompositionError("uncertified leaf: End/rad is not provably a field")
        u, m = wit
        rad_dim = e_alg.radical_basis().shape[1]
        cert = LocalityCertificate(e_alg.dim, rad_dim, quot.dim, [int(c) for c in u], m)
        return None, cert
    mat = np.zeros((n, n), dtype=np.int64)
    for c, f in zip(idem, basis):
        if c:
            mat = (mat + c * f.matrix.a) % p
    split = _split_from_matrix(x, mat)
    if split is None:
        raise DecompositionError("proper idempotent failed to split the module")
    return split, None


def decompose(x: ActionModule, seed: int = 0) -> DecompReport:
    """Certified indecomposable decomposition, deterministic given the seed."""
    key = ("decompose", seed)
    if key in x.cache:
        return x.cache[key]
    rng = random.Random(f"decompose:{seed}")
    from .modules import identity_morphism

    leaves: list[tuple[ActionModule, ModMorphism, ModMorphism, LocalityCertificate]] = []
    stack = [(x, identity_morphism(x), identity_morphism(x))]
    while stack:
        w, incl, proj = stack.pop()
        if w.dim == 0:
            continue
        split, cert = _try_split(w, rng)
        if split is None:
            leaves.append((w, incl, proj, cert))
            continue
        for sub, s_incl, s_proj in split:
            stack.append((sub, s_incl.compose(incl), proj.compose(s_proj)))

    classes: list[DecompClass] = []
    for w, incl, proj, cert in leaves:
        placed = False
        for cl in classes:
            iso = find_isomorphism(w, cl.rep, seed=seed)
            if iso is not None:
                cl.multiplicity += 1
                cl.slots.append(DecompSlot(incl, proj, iso))
                placed = True
                break
        if not placed:
            rep_iso = identity_morphism(w)
            classes.append(
                DecompClass(w, 1, cert, [DecompSlot(incl, proj, rep_iso)])
            )
    classes.sort(key=lambda c: fingerprint(c.rep))
    report = DecompReport(x, classes, seed)
    x.cache[key] = report
    return report


# -- isomorphism testing -----------------------------------------------------------


def find_isomorphism(
    x: ActionModule, y: ActionModule, budget: int = 64, seed: int = 0
) -> ModMorphism | None:
    """An invertible homomorphism x -> y, or None when provably none exists.

    Raises IsoInconclusive when the randomized budget is exhausted and the
    hom space is too large to scan exhaustively.
    """
    if x.algebra is not y.algebra:
        raise ModuleError("modules live over different algebras")
    if x.dim != y.dim:
        return None
    if x.dim == 0:
        return ModMorphism(x, y, FieldMat.zeros(x.algebra.p, 0, 0))
    if fingerprint(x) != fingerprint(y):
        return None
    h = hom_space(x, y)
    if not h:
        return None
    p = x.algebra.p
    for f in h:
        if f.matrix.is_invertible():
            return f
    rng = random.Random(f"iso:{seed}")
    n = x.dim
    for _ in range(budget):
        m = np.zeros((n, n), dtype=np.int64)
        for f in h:
            c = rng.randrange(p)
            if c:
                m = (m + c * f.matrix.a) % p
        fm = FieldMat(p, m)
        if fm.is_invertible():
            return ModMorphism(x, y, fm)
    if p ** len(h) <= 2**20:
        for coeffs in itertools.product(range(p), repeat=len(h)):
            m = np.zeros((n, n), dtype=np.int64)
            for c, f in zip(coeffs, h):
                if c:
                    m = (m + c * f.matrix.a) % p
            fm = FieldMat(p, m)
            if fm.is_invertible():
                return ModMorphism(x, y, fm)
        return None
    raise IsoInconclusive(
        f"no invertible hom found within budget; |hom| = {p}^{len(h)} too large to scan"
    )


def is_isomorphic(x: ActionModule, y: ActionModule, budget: int = 64, seed: int = 0) -> bool:
    return find_isomorphism(x, y, budget=budget, seed=seed) is not None


# -- registries ----------------------------------------------------------------------


@dataclass
class RegistryEntry:
    uid: int
    module: ActionModule
    fingerprint: tuple


class Registry:
    """Pairwise non-isomorphic module representatives with stable ids."""

    def __init__(self, algebra: SCAlgebra):
        self.algebra = algebra
        self.entries: list[RegistryEntry] = []

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def find(self, x: ActionModule, seed: int = 0) -> int | None:
        fp = fingerprint(x)
        for e in self.entries:
            if e.fingerprint == fp and is_isomorphic(x, e.module, seed=seed):
                return e.uid
        return None

    def add(self, x: ActionModule, seed: int = 0) -> tuple[int, bool]:
        """(uid, already_present)."""
        uid = self.find(x, seed=seed)
        if uid is not None:
            return uid, True
        uid = len(self.entries)
        self.entries.append(RegistryEntry(uid, x, fingerprint(x)))
        return uid, False

    def module(self, uid: int) -> ActionModule:
        return self.entries[uid].module

    def export(self) -> dict:
        return {
            "classes": [
                {
                    "id": e.uid,
                    "dim": e.module.dim,
                    "dimension_vector": e.module.cache.get("vertex_dims"),
                    "fingerprint": repr(e.fingerprint),
                    "actions": [m.tolist() for m in e.module.acts],
                }
                for e in self.entries
            ]
        }


# -- enumeration of indecomposables ----------------------------------------------------


@dataclass
class EnumerationResult:
    registry: Registry
    complete: bool  # syzygy/cover closure witnessed
    candidates_scanned: int


def _dim_vectors(nverts: int, total: int):
    if nverts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _dim_vectors(nverts - 1, total - first):
            yield (first,) + rest


def _enumerate_quiver_reps(qa: QuiverAlgebra, dim_cap: int, budget: int):
    q = qa.quiver
    p = qa.p
    for total in range(1, dim_cap + 1):
        for dims_tuple in _dim_vectors(len(q.vertices), total):
            dims = dict(zip(q.vertices, dims_tuple))
            entries = sum(dims[t] * dims[s] for _, s, t in q.arrows)
            count = p**entries
            if count > budget:
                raise DecompositionError(
                    f"enumeration budget exceeded: {p}^{entries} candidates at {dims}"
                )
            shapes = [(dims[t], dims[s]) for _, s, t in q.arrows]
            names = [a[0] for a in q.arrows]
            sizes = [r * c for r, c in shapes]
            for flat in itertools.product(range(p), repeat=sum(sizes)):
                maps = {}
                off = 0
                for name, (r, c), sz in zip(names, shapes, sizes):
                    maps[name] = FieldMat(p, np.array(flat[off : off + sz], dtype=np.int64).reshape(r, c))
                    off += sz
                rep = QuiverRep(qa, dict(dims), maps)
                try:
                    rep.check_relations()
                except ModuleError:
                    continue
                yield rep_to_action(rep, qa)


def _sc_generator_words(a: SCAlgebra):
    """Expressions of every basis element as polynomials in a generating set."""
    gens = a.generator_indices()
    d, p = a.dim, a.p
    # words: vectors known to be products of generators; track as (vector, build fn)
    known: list[np.ndarray] = [a.unit.copy()]
    builders: list[list[int]] = [[]]  # list of generator positions, applied in product order
    frontier = list(range(len(known)))
    while True:
        new = []
        for idx in frontier:
            for gpos, gi in enumerate(gens):
                gvec = np.zeros(d, dtype=np.int64)
                gvec[gi] = 1
                w = a.mult(known[idx], gvec)
                stack = np.stack(known, axis=1)
                if solve(FieldMat(p, stack), FieldMat(p, w.reshape(-1, 1))) is None:
                    known.append(w)
                    builders.append(builders[idx] + [gpos])
                    new.append(len(known) - 1)
        if not new:
            break
        frontier = new
    stack = np.stack(known, axis=1)
    coords = solve(FieldMat(p, stack), FieldMat(p, np.eye(d, dtype=np.int64)))
    if coords is None:
        raise DecompositionError("generators do not span the algebra")
    return gens, builders, coords.a  # basis_j = sum_w coords[w, j] * word_w


def _enumerate_sc_modules(a: SCAlgebra, dim_cap: int, budget: int):
    gens, builders, coords = _sc_generator_words(a)
    p, d = a.p, a.dim
    for m in range(1, dim_cap + 1):
        count = p ** (len(gens) * m * m)
        if count > budget:
            raise DecompositionError(
                f"enumeration budget exceeded: {p}^{len(gens) * m * m} candidates at dim {m}"
            )
        sz = m * m
        for flat in itertools.product(range(p), repeat=len(gens) * sz):
            gmats = [
                np.array(flat[i * sz : (i + 1) * sz], dtype=np.int64).reshape(m, m)
                for i in range(len(gens))
            ]
            # realize each word, then each basis element
            word_mats = []
            ok = True
            for word in builders:
                wm = np.eye(m, dtype=np.int64)
                for gpos in word:
                    wm = _matmul_mod(wm, gmats[gpos], p)
                word_mats.append(wm)
            acts = []
            for j in range(d):
                mat = np.zeros((m, m), dtype=np.int64)
                for w, c in enumerate(coords[:, j]):
                    if c:
                        mat = (mat + c * word_mats[w]) % p
                acts.append(mat)
            cand = ActionModule(a, acts)
            try:
                cand.validate()
            except ModuleError:
                ok = False
            if ok:
                yield cand


def enumerate_indecomposables(
    a: SCAlgebra | QuiverAlgebra,
    dim_cap: int,
    budget: int = 2**22,
    seed: int = 0,
) -> EnumerationResult:
    """All indecomposables of total dimension <= dim_cap, up to isomorphism.

    Enumerates action tuples satisfying the relations, filters candidates to
    new iso classes by fingerprint + iso test, keeps the indecomposable ones,
    then witnesses completeness by closure: covers, syzygies, radicals and
    socle quotients of registry members must decompose inside the registry.
    """
    if isinstance(a, QuiverAlgebra):
        sc = a.to_sc()
        gen = _enumerate_quiver_reps(a, dim_cap, budget)
    else:
        sc = a
        gen = _enumerate_sc_modules(a, dim_cap, budget)
    seen = Registry(sc)  # all iso classes encountered (incl. decomposables)
    registry = Registry(sc)
    scanned = 0
    for cand in gen:
        scanned += 1
        _, present = seen.add(cand, seed=seed)
        if present:
            continue
        rep = decompose(cand, seed=seed)
        if len(rep.classes) == 1 and rep.classes[0].multiplicity == 1:
            registry.add(cand, seed=seed)
    complete = _closure_complete(sc, registry, seed=seed)
    return EnumerationResult(registry, complete, scanned)


def _closure_complete(a: SCAlgebra, registry: Registry, seed: int = 0) -> bool:
    from .modules import mor_parts, quotient_module, radical_top_socle
    from .resolutions import projective_cover

    def in_registry(x: ActionModule) -> bool:
        if x.dim == 0:
            return True
        rep = decompose(x, seed=seed)
        return all(registry.find(c.rep, seed=seed) is not None for c in rep.classes)

    for e in list(registry):
        x = e.module
        p_mod, epi = projective_cover(x)
        if not in_registry(p_mod):
            return False
        if not in_registry(mor_parts(epi).kernel):
            return False
        rts = radical_top_socle(x)
        if not in_registry(rts.radical):
            return False
        soc_quot, _ = quotient_module(x, rts.socle_incl.matrix)
        if not in_registry(soc_quot):
            return False
    return True
