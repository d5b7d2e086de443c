import pytest

from oddunitary import MaxParameter, make_hyperbolic, make_ring, make_space


@pytest.fixture(scope="session")
def z2():
    return make_ring("residue", 2, involution="identity")


@pytest.fixture(scope="session")
def z3():
    return make_ring("residue", 3, involution="identity")


@pytest.fixture(scope="session")
def z3n():
    return make_ring("residue", 3, involution="negation")


@pytest.fixture(scope="session")
def z5():
    return make_ring("residue", 5, involution="identity")


@pytest.fixture(scope="session")
def z5n():
    return make_ring("residue", 5, involution="negation")


@pytest.fixture(scope="session")
def m2z2():
    return make_ring("matrix", 2, 2, "transpose")


@pytest.fixture(scope="session")
def hs_z2_n3(z2):
    return make_hyperbolic(z2, 3)


@pytest.fixture(scope="session")
def hs_z3_n3(z3):
    return make_hyperbolic(z3, 3)


@pytest.fixture(scope="session")
def hs_z3n_n3(z3n):
    return make_hyperbolic(z3n, 3)


@pytest.fixture(scope="session")
def hs_z2_n4(z2):
    return make_hyperbolic(z2, 4)


@pytest.fixture(scope="session")
def hs_rich(z3):
    """Z/3 with a rank-2 symplectic V0 and maximal parameter: the short
    generators carry nonzero vectors and the form is not symmetric."""
    v0 = make_space(z3, ((0, 1), (2, 0)), MaxParameter())
    return make_hyperbolic(z3, 3, v0)


@pytest.fixture(scope="session")
def plane_z5(z5):
    return make_hyperbolic(z5, 1)


@pytest.fixture(scope="session")
def eu_z2_n3(hs_z2_n3):
    from oddunitary import enumerate_eu

    return enumerate_eu(hs_z2_n3)
