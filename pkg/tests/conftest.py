import pytest

from findim import corpus as C
from findim.krull_schmidt import enumerate_indecomposables
from findim.modules import direct_sum, dual, regular_module


@pytest.fixture(scope="session")
def a2():
    return C.a2()


@pytest.fixture(scope="session")
def two_sources():
    return C.two_sources()


@pytest.fixture(scope="session")
def kx2():
    return C.kxn(2)


@pytest.fixture(scope="session")
def kx3():
    return C.kxn(3)


@pytest.fixture(scope="session")
def a2_auslander():
    return C.a2_auslander()


@pytest.fixture(scope="session")
def a2_modules(a2):
    p1 = C.rep(a2, {"1": 1, "2": 1}, {"a": [[1]]})
    s1 = C.simple_rep(a2, "1")
    s2 = C.simple_rep(a2, "2")
    return {"P1": p1, "S1": s1, "S2": s2}


@pytest.fixture(scope="session")
def registries(a2, two_sources, kx2, kx3, a2_auslander):
    out = {}
    for name, qa, cap in [
        ("a2", a2, 2),
        ("two_sources", two_sources, 3),
        ("kx2", kx2, 2),
        ("kx3", kx3, 3),
        ("a2_auslander", a2_auslander, 2),
    ]:
        out[name] = enumerate_indecomposables(qa, cap)
    return out


@pytest.fixture(scope="session")
def gen_cogen_modules(a2, kx2, kx3, registries):
    """Full additive generators (one copy of every indecomposable) per algebra."""
    gens = {}
    for name in ("a2", "two_sources", "kx2", "kx3", "a2_auslander"):
        reg = registries[name].registry
        gens[name] = direct_sum([e.module for e in reg])[0]
    return gens
