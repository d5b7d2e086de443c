import itertools
import random

import pytest

from oddunitary import (
    WorkbenchError,
    build_section,
    check_dagger,
    comm_preimages,
    eu_generators,
    make_hyperbolic,
    product_extension,
    s_i,
    s_ij,
    verify_section,
)
from oddunitary.extensions import (
    chooser_agreement,
    mutate_section,
    section_generators,
)
from oddunitary.generators import Xi, Xij
from oddunitary.steinberg import gen_matrix


@pytest.fixture(scope="module")
def ext_z2(hs_z2_n4):
    return product_extension(hs_z2_n4, 2)


@pytest.fixture(scope="module")
def ext_z3(hs_z2_n4):
    return product_extension(hs_z2_n4, 3)


@pytest.fixture(scope="module")
def section_z2(ext_z2):
    return build_section(ext_z2)


@pytest.fixture(scope="module")
def section_z3(ext_z3):
    return build_section(ext_z3)


def test_trivial_central_factor_is_base(hs_z2_n4):
    ext = product_extension(hs_z2_n4, 1)
    g = gen_matrix(hs_z2_n4, Xij(1, 2, 1))
    assert ext.chooser(g) == (g, 0)
    assert ext.central_elements() == [(hs_z2_n4.identity, 0)]


def test_kernel_is_central(ext_z3, hs_z2_n4):
    mats = [m for _, m in eu_generators(hs_z2_n4)][:10]
    assert ext_z3.kernel_is_central(mats)
    assert len(ext_z3.central_elements()) == 3


def test_randomized_chooser_is_a_section(hs_z2_n4):
    ext = product_extension(hs_z2_n4, 3, chooser_seed=99)
    for _, m in eu_generators(hs_z2_n4)[:20]:
        assert ext.eps(ext.chooser(m)) == m


def test_comm_preimages_identity(ext_z3, hs_z2_n4):
    ident = hs_z2_n4.identity
    g = gen_matrix(hs_z2_n4, Xij(1, 2, 1))
    assert comm_preimages(ext_z3, ident, g) == ext_z3.identity


def test_comm_preimages_central_parts_cancel(hs_z2_n4):
    ext = product_extension(hs_z2_n4, 3, chooser_seed=5)
    x = gen_matrix(hs_z2_n4, Xij(1, 2, 1))
    y = gen_matrix(hs_z2_n4, Xij(2, 3, 1))
    base_comm = x * y * x.inv() * y.inv()
    assert comm_preimages(ext, x, y) == (base_comm, 0)


def test_chooser_agreement_hundred_pairs(hs_z2_n4):
    rep = chooser_agreement(hs_z2_n4, 3, seed=3293, pairs=100)
    assert rep.ok


def test_dagger_needs_n4(hs_z2_n3):
    ext = product_extension(hs_z2_n3, 2)
    with pytest.raises(WorkbenchError):
        check_dagger(ext)


def test_dagger_exhaustive_n4(ext_z2):
    rep = check_dagger(ext_z2)
    assert rep.ok
    assert "1536" in rep.results[0].witness


def test_s_ij_examples(ext_z2, hs_z2_n4):
    # in a product extension the section element is the bare transvection
    assert s_ij(ext_z2, 1, 2, 1) == (gen_matrix(hs_z2_n4, Xij(1, 2, 1)), 0)
    assert s_ij(ext_z2, 1, 2, 0) == ext_z2.identity


def test_s_ij_witness_independence(ext_z2, hs_z2_n4):
    for i, j in ((1, 2), (2, -1), (-3, 4)):
        admissible = [w for w in hs_z2_n4.omega if w not in (i, -i, j, -j)]
        results = {s_ij(ext_z2, i, j, 1, witness=w) for w in admissible}
        assert len(results) == 1


def test_s_i_examples(ext_z2, hs_z2_n4):
    xi0 = hs_z2_n4.v0.heis_identity
    assert s_i(ext_z2, 1, xi0) == ext_z2.identity


def test_s_i_witness_independence_z3(z3):
    hs = make_hyperbolic(z3, 4)
    ext = product_extension(hs, 3, chooser_seed=1)
    xi = ((), 1)  # l0 over (Z/3, id) is {(0,0),(0,1),(0,2)}
    admissible = [w for w in hs.omega if w not in (2, -2)]
    results = {s_i(ext, 2, xi, witness=w) for w in admissible}
    assert len(results) == 1
    assert results.pop() == (gen_matrix(hs, Xi(2, xi)), 0)


def test_s_ij_witness_independence_n5(z2):
    hs = make_hyperbolic(z2, 5)
    ext = product_extension(hs, 2, chooser_seed=3)
    admissible = [w for w in hs.omega if w not in (1, -1, 2, -2)]
    assert len(admissible) == 6
    results = {s_ij(ext, 1, 2, 1, witness=w) for w in admissible}
    assert len(results) == 1


def test_section_over_z3neg_ring_sampled(z3n):
    hs = make_hyperbolic(z3n, 4)
    ext = product_extension(hs, 2)
    table = build_section(ext)
    rep = verify_section(ext, table, strategy="sampled", seed=3293, samples=256)
    assert rep.ok, rep.to_json_lines()


def test_trivial_factor_section_is_the_transvection_table(hs_z2_n4):
    ext = product_extension(hs_z2_n4, 1)
    table = build_section(ext)
    for g, total in table.items():
        assert total == (gen_matrix(hs_z2_n4, g), 0)


def test_lemma9_bracket_forms_agree(ext_z2, hs_z2_n4):
    hs = hs_z2_n4
    quads = [
        (i, j, k, h)
        for i, j, k, h in itertools.product(hs.omega, repeat=4)
        if len({i, -i, j, -j, k, -k, h, -h}) == 8
    ]
    rng = random.Random(4)
    for i, j, k, h in rng.sample(quads, 40):
        a = b = 1
        lhs = comm_preimages(
            ext_z2,
            gen_matrix(hs, Xij(k, i, a)),
            gen_matrix(hs, Xij(i, h, b)),
        )
        rhs = comm_preimages(
            ext_z2,
            gen_matrix(hs, Xij(k, j, hs.ring.mul(a, b))),
            gen_matrix(hs, Xij(j, h, 1)),
        )
        assert lhs == rhs


def test_lemma7_analog_disjoint_commutators_vanish(ext_z2, hs_z2_n4):
    hs = hs_z2_n4
    count = 0
    for i, j, h, k in itertools.product(hs.omega, repeat=4):
        if j in (i, -i) or k in (h, -h) or h in (j, -i) or k in (i, -j):
            continue
        got = comm_preimages(
            ext_z2, gen_matrix(hs, Xij(i, j, 1)), gen_matrix(hs, Xij(h, k, 1))
        )
        assert got == ext_z2.identity
        count += 1
        if count >= 60:
            break


def test_build_section_needs_n4(hs_z2_n3):
    with pytest.raises(WorkbenchError):
        build_section(product_extension(hs_z2_n3, 2))


def test_sections_have_zero_central_parts(section_z2, section_z3):
    for table in (section_z2, section_z3):
        assert all(c == 0 for _, c in table.values())


def test_section_chooser_independence(hs_z2_n4, section_z2):
    randomized = build_section(product_extension(hs_z2_n4, 2, chooser_seed=77))
    assert randomized == section_z2


def test_verify_section_passes(ext_z2, section_z2, ext_z3, section_z3):
    assert verify_section(ext_z2, section_z2).ok
    rep = verify_section(ext_z3, section_z3, strategy="sampled",
                         seed=3293, samples=64)
    assert rep.ok


def test_section_covers_all_generators(hs_z2_n4, section_z2):
    gens = list(section_generators(hs_z2_n4))
    assert len(gens) == len(section_z2)
    assert all(g in section_z2 for g in gens)


def test_every_mutation_is_detected(ext_z2, section_z2):
    for g in section_z2:
        bad = mutate_section(ext_z2, section_z2, g, 1)
        assert not verify_section(ext_z2, bad, stop_on_fail=True).ok, g


def test_mutation_rejects_trivial_delta(ext_z2, section_z2):
    gen = next(iter(section_z2))
    with pytest.raises(ValueError):
        mutate_section(ext_z2, section_z2, gen, 2)  # 2 == 0 in Z/2


def test_section_eval_is_multiplicative(ext_z2, section_z2):
    from oddunitary.extensions import section_eval

    rng = random.Random(9)
    gens = list(section_z2)
    for _ in range(100):
        w1 = tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(3))
        w2 = tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(3))
        assert section_eval(ext_z2, section_z2, w1 + w2) == ext_z2.mul(
            section_eval(ext_z2, section_z2, w1),
            section_eval(ext_z2, section_z2, w2),
        )
