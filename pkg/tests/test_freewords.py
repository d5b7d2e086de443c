import random

import pytest

from oddunitary.freewords import (
    IDENTITY_IDS,
    comm,
    concat,
    conj,
    gen,
    inverse,
    random_assignment,
    reduce_word,
    substitute,
    verify_identities,
    verify_identity,
)

x, y = gen("x"), gen("y")


def test_reduce_examples():
    assert reduce_word(concat(x, inverse(x))) == ()
    assert reduce_word(concat(x, y, inverse(y), x)) == (("x", 1), ("x", 1))
    c = comm(x, y)
    assert reduce_word(concat(c, inverse(c))) == ()


def test_reduce_idempotent_and_nonincreasing():
    rng = random.Random(5)
    for _ in range(200):
        w = tuple(
            (rng.choice("abc"), rng.choice((1, -1))) for _ in range(rng.randint(0, 12))
        )
        r = reduce_word(w)
        assert reduce_word(r) == r
        assert len(r) <= len(w)


def test_conj_comm_examples():
    assert comm(x, x) == ()
    assert conj((), y) == y  # conjugating by the empty word
    assert reduce_word(concat(comm(y, x), comm(x, y))) == ()
    assert comm(y, x) == inverse(comm(x, y))


@pytest.mark.parametrize("cid", IDENTITY_IDS)
def test_identities_with_letters(cid):
    assert verify_identity(cid)


def test_c3_all_supported_lengths():
    for m in range(2, 9):
        assert verify_identity("C3", m=m)
    with pytest.raises(ValueError):
        verify_identity("C3", m=9)


def test_unknown_identity():
    with pytest.raises(ValueError):
        verify_identity("C7")


@pytest.mark.parametrize("cid", IDENTITY_IDS)
def test_identities_under_random_substitution(cid):
    rng = random.Random(17)
    for _ in range(100):
        m = rng.randint(2, 8) if cid == "C3" else 4
        assignment = random_assignment(cid, rng, m)
        assert verify_identity(cid, assignment, m=m)


def test_verify_identities_report():
    rep = verify_identities(seed=3293, rounds=100)
    assert rep.ok
    assert len(rep) == 6


def test_substitute_is_homomorphism():
    rng = random.Random(3)
    assignment = {v: random_assignment("C1", rng)[v] for v in ("x", "y", "z")}
    w1 = comm(gen("x"), gen("y"))
    w2 = conj(gen("z"), gen("x"))
    lhs = substitute(reduce_word(concat(w1, w2)), assignment)
    rhs = reduce_word(concat(substitute(w1, assignment), substitute(w2, assignment)))
    assert lhs == rhs
