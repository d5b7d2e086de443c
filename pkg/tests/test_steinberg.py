import random

import pytest

from oddunitary import (
    WorkbenchError,
    eu_generators,
    make_hyperbolic,
    relation_instance,
    u1_decompose,
    u1_uniqueness_check,
    verify_relations,
)
from oddunitary.generators import Xi, Xij, format_word, parse_word, winv, wmul, word
from oddunitary.steinberg import (
    U1NormalForm,
    embed_matrix,
    eval_word,
    gen_matrix,
    normal_form_word,
    perfect_witness,
    relation_params,
    remark2_witness_search,
    stabilize,
    u1_alphabet,
    validate_gen,
)


def test_eval_empty_word_is_identity(hs_z2_n3):
    assert eval_word(hs_z2_n3, ()) == hs_z2_n3.identity


def test_eval_single_generator(hs_z2_n3):
    w = word(Xij(1, 2, 1))
    assert eval_word(hs_z2_n3, w) == hs_z2_n3.transvection_ij(1, 2, 1)


def test_eval_r1_char2(hs_z2_n3):
    w = word(Xij(1, 2, 1), Xij(1, 2, 1))
    assert eval_word(hs_z2_n3, w) == hs_z2_n3.identity


def test_eval_is_homomorphism(hs_z3_n3):
    rng = random.Random(11)
    gens = [g for g, _ in eu_generators(hs_z3_n3)]
    for _ in range(40):
        w1 = tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(4))
        w2 = tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(4))
        assert eval_word(hs_z3_n3, wmul(w1, w2)) == eval_word(
            hs_z3_n3, w1
        ) * eval_word(hs_z3_n3, w2)
        assert eval_word(hs_z3_n3, winv(w1)) == eval_word(hs_z3_n3, w1).inv()


def test_validate_gen(hs_z2_n3):
    validate_gen(hs_z2_n3, Xij(1, -2, 1))
    validate_gen(hs_z2_n3, Xi(1, ((), 0)))
    with pytest.raises(ValueError):
        validate_gen(hs_z2_n3, Xij(1, 1, 1))
    with pytest.raises(WorkbenchError):
        validate_gen(hs_z2_n3, Xi(1, ((), 1)))


def test_relation_instance_r1(hs_z3_n3):
    lhs, rhs = relation_instance(hs_z3_n3, "R1", (1, 2, 1, 2))
    assert lhs == word(Xij(1, 2, 1), Xij(1, 2, 2))
    assert rhs == word(Xij(1, 2, 0))


def test_relation_instance_r0(hs_z3n_n3):
    # rhs argument is eps_-2 bar(a) eps_1 = (-1)(-a)(lam^-1)
    lhs, rhs = relation_instance(hs_z3n_n3, "R0", (1, 2, 1))
    r = hs_z3n_n3.ring
    expected = r.prod(hs_z3n_n3.eps(-2), r.bar(1), hs_z3n_n3.eps(1))
    assert rhs == word(Xij(-2, -1, expected))


def test_relation_instance_r2_trivial(hs_z2_n3):
    xi = hs_z2_n3.v0.heis_identity
    lhs, rhs = relation_instance(hs_z2_n3, "R2", (1, xi, xi))
    assert eval_word(hs_z2_n3, lhs) == eval_word(hs_z2_n3, rhs) == hs_z2_n3.identity


def test_relation_side_conditions_raise(hs_z2_n3):
    with pytest.raises(ValueError):
        relation_instance(hs_z2_n3, "R3", (1, 2, 2, 1, 1, 1))  # h = j
    with pytest.raises(ValueError):
        relation_instance(hs_z2_n3, "R5", (1, 2, -1, 1, 1))
    with pytest.raises(ValueError):
        relation_instance(hs_z2_n3, "Rx", ())


@pytest.mark.parametrize("preset", ["z2", "z3n", "z3", "rich"])
def test_relations_exhaustive(preset, hs_z2_n3, hs_z3n_n3, hs_z3_n3, hs_rich):
    hs = {"z2": hs_z2_n3, "z3n": hs_z3n_n3, "z3": hs_z3_n3, "rich": hs_rich}[preset]
    rep = verify_relations(hs)
    assert rep.ok, rep.to_json_lines()


def test_relations_sampled_n4(hs_z2_n4):
    rep = verify_relations(hs_z2_n4, strategy="sampled", seed=3293, samples=64)
    assert rep.ok


def test_relations_exhaustive_n4(hs_z2_n4, z3n):
    assert verify_relations(hs_z2_n4).ok
    assert verify_relations(make_hyperbolic(z3n, 4)).ok


def test_corrupted_representation_fails_r5(hs_z3_n3):
    hs = hs_z3_n3

    def corrupted(gen):
        if isinstance(gen, Xij) and (gen.i, gen.j) == (1, 3):
            return hs.transvection_ij(1, 3, hs.ring.neg(gen.a))  # wrong sign
        return gen_matrix(hs, gen)

    rep = verify_relations(hs, rep=corrupted, relation_ids=("R5",))
    assert not rep.ok
    assert rep.failures()[0].check == "relations.R5"
    assert rep.failures()[0].witness.startswith("R5")


def test_remark1_consequences(hs_z3_n3):
    hs = hs_z3_n3
    assert eval_word(hs, word(Xij(2, -1, 0))).is_identity()
    for xi in hs.l0:
        neg = hs.v0.heis_neg(xi)
        assert eval_word(hs, word(Xi(2, neg))) == eval_word(
            hs, word(Xi(2, xi))
        ).inv()


def test_remark2_witness(hs_rich, hs_z2_n3):
    # the rich preset has an asymmetric form on V0, so a witness exists
    found = remark2_witness_search(hs_rich)
    assert found is not None
    i, xi, zeta = found
    lhs = eval_word(
        hs_rich,
        wmul(word(Xi(i, xi), Xi(i, zeta)), winv(word(Xi(i, xi))), winv(word(Xi(i, zeta)))),
    )
    assert not lhs.is_identity()
    # over Z/2 with trivial parameter everything commutes
    assert remark2_witness_search(hs_z2_n3) is None


# -- U1 normal form ----------------------------------------------------------


def test_u1_decompose_r1_collapse(hs_z3_n3):
    w = word(Xij(3, 1, 1), Xij(3, 1, 1))
    nf = u1_decompose(hs_z3_n3, w)
    assert nf.zeta == hs_z3_n3.v0.heis_identity
    assert dict(nf.coeffs)[1] == 2
    assert all(v == 0 for i, v in nf.coeffs if i != 1)


def test_u1_decompose_empty(hs_z3_n3):
    nf = u1_decompose(hs_z3_n3, ())
    assert nf.zeta == hs_z3_n3.v0.heis_identity
    assert all(v == 0 for _, v in nf.coeffs)


def test_u1_decompose_swap_preserves_eval(hs_z2_n3):
    w = word(Xij(3, -1, 1), Xij(3, 1, 1))
    nf = u1_decompose(hs_z2_n3, w)
    assert eval_word(hs_z2_n3, normal_form_word(hs_z2_n3, nf)) == eval_word(
        hs_z2_n3, w
    )


def test_u1_decompose_rejects_foreign_generators(hs_z2_n3):
    with pytest.raises(ValueError):
        u1_decompose(hs_z2_n3, word(Xij(1, 2, 1)))


def test_u1_decompose_random_words_all_presets(
    hs_z2_n3, hs_z3_n3, hs_z3n_n3, hs_rich
):
    for hs in (hs_z2_n3, hs_z3_n3, hs_z3n_n3, hs_rich):
        alpha = u1_alphabet(hs)
        rng = random.Random(23)
        for _ in range(300):
            w = tuple(
                (rng.choice(alpha), rng.choice((1, -1)))
                for _ in range(rng.randint(0, 8))
            )
            nf = u1_decompose(hs, w)
            nfw = normal_form_word(hs, nf)
            assert eval_word(hs, nfw) == eval_word(hs, w)
            assert u1_decompose(hs, nfw) == nf  # idempotent


def test_u1_uniqueness_check(hs_z2_n3):
    w1 = word(Xij(3, 1, 1))
    assert u1_uniqueness_check(hs_z2_n3, w1, w1)
    w2 = wmul(w1, word(Xij(3, 1, 1), Xij(3, 1, 1)))  # append a trivial square
    assert u1_uniqueness_check(hs_z2_n3, w1, w2)
    w3 = word(Xij(3, 2, 1))
    assert u1_uniqueness_check(hs_z2_n3, w1, w3)


def test_u1_distinct_normal_forms_have_distinct_evals(hs_z3_n3):
    hs = hs_z3_n3
    order = [i for i in hs.omega if i not in (hs.n, -hs.n)]
    seen = {}
    for zeta in hs.l0:
        for a1 in hs.ring.elements():
            for am1 in hs.ring.elements():
                coeffs = tuple(
                    (i, a1 if i == 1 else am1 if i == -1 else 0) for i in order
                )
                nf = U1NormalForm(zeta, coeffs)
                key = eval_word(hs, normal_form_word(hs, nf)).key()
                assert key not in seen or seen[key] == nf
                seen[key] = nf


# -- perfectness and stabilization -------------------------------------------


def test_perfect_witness_examples(hs_z3_n3):
    hs = hs_z3_n3
    # the minimal admissible witness index for X_13(a) is 2
    assert perfect_witness(hs, Xij(1, 3, 2)) == wmul(
        word(Xij(1, 2, 2), Xij(2, 3, 1)),
        winv(word(Xij(1, 2, 2))),
        winv(word(Xij(2, 3, 1))),
    )
    assert perfect_witness(hs, Xij(1, 2, 0)) == ()
    assert perfect_witness(hs, Xi(1, hs.v0.heis_identity)) == ()


def test_perfect_witnesses_evaluate(hs_z3_n3, hs_rich):
    for hs in (hs_z3_n3, hs_rich):
        cache = {}
        for gen, mat in eu_generators(hs):
            assert eval_word(hs, perfect_witness(hs, gen), cache=cache) == mat


def test_stabilize(hs_z2_n3, hs_z2_n4, z2):
    assert stabilize(()) == ()
    w = word(Xij(1, 2, 1))
    assert stabilize(w) == w
    assert eval_word(hs_z2_n4, stabilize(w)) == embed_matrix(
        hs_z2_n3, hs_z2_n4, eval_word(hs_z2_n3, w)
    )


def test_stabilized_relations_still_hold(hs_z2_n3, hs_z2_n4):
    for rid in ("R1", "R5", "R9"):
        params = next(iter(relation_params(hs_z2_n3, rid)))
        lhs, rhs = relation_instance(hs_z2_n3, rid, params)
        assert eval_word(hs_z2_n4, stabilize(lhs)) == eval_word(
            hs_z2_n4, stabilize(rhs)
        )


# -- word grammar -------------------------------------------------------------


def test_word_tokens_roundtrip(hs_z2_n3, hs_rich):
    w = word(Xij(3, 1, 1), Xij(3, -1, 1), Xi(3, hs_z2_n3.v0.heis_identity))
    text = format_word(w, hs_z2_n3)
    assert text == "X31(1) X3-1(1) X3(;0)"
    assert parse_word(text, hs_z2_n3) == w

    xi = hs_rich.l0[-1]
    w2 = wmul(word(Xi(-2, xi)), winv(word(Xij(1, -3, 2))))
    text2 = format_word(w2, hs_rich)
    assert parse_word(text2, hs_rich) == w2


def test_parse_word_rejects_garbage(hs_z2_n3):
    with pytest.raises(ValueError):
        parse_word("Y12(1)", hs_z2_n3)
    with pytest.raises(ValueError):
        parse_word("X123(1)", hs_z2_n3)
