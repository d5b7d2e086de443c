"""The 2n-index presentation: generators X_ij(a), X_i(xi) and relations R0-R9.

Words are free sequences of generators with formal inverses; nothing is
auto-reduced.  Evaluation sends a word to the product of transvection
matrices (formal inverses become genuine matrix inverses), left-to-right.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .generators import Word, Xi, Xij, commutator_word, wmul, word
from .hyperbolic import HyperbolicSpace
from .matrices import Mat
from .report import DEFAULT_SEED, Report, WorkbenchError

RELATION_IDS = ("R0", "R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9")


def validate_gen(hs: HyperbolicSpace, gen):
    if isinstance(gen, Xij):
        hs.col(gen.i)
        hs.col(gen.j)
        if gen.j in (gen.i, -gen.i):
            raise ValueError(f"invalid generator {gen!r}")
    elif isinstance(gen, Xi):
        hs.col(gen.i)
        if gen.xi not in hs.l0_set:
            raise WorkbenchError(f"{gen!r}: argument outside the form parameter")
    else:
        raise ValueError(f"not a generator: {gen!r}")


def gen_matrix(hs: HyperbolicSpace, gen) -> Mat:
    if isinstance(gen, Xij):
        return hs.transvection_ij(gen.i, gen.j, gen.a)
    if isinstance(gen, Xi):
        return hs.transvection_i(gen.i, gen.xi)
    raise ValueError(f"not a generator: {gen!r}")


def eval_word(hs: HyperbolicSpace, w: Word, rep=None, cache=None) -> Mat:
    """Defining representation; eval(w1 w2) = eval(w1) * eval(w2)."""
    if rep is None:
        rep = lambda g: gen_matrix(hs, g)
    if cache is None:
        cache = {}
    acc = hs.identity
    for g, e in w:
        m = cache.get((g, e))
        if m is None:
            base = cache.get((g, 1))
            if base is None:
                base = rep(g)
                cache[(g, 1)] = base
            m = base if e == 1 else base.inv()
            cache[(g, e)] = m
        acc = acc * m
    return acc


# -- relation instances -----------------------------------------------------


def relation_instance(hs: HyperbolicSpace, rid: str, params) -> tuple[Word, Word]:
    """Both sides of one relation, commutators expanded as a b a' b'."""
    r = hs.ring
    if rid == "R0":
        i, j, a = params
        rhs_val = r.prod(hs.eps(-j), r.bar(a), hs.eps(i))
        return word(Xij(i, j, a)), word(Xij(-j, -i, rhs_val))
    if rid == "R1":
        i, j, a, b = params
        return (
            word(Xij(i, j, a), Xij(i, j, b)),
            word(Xij(i, j, r.add(a, b))),
        )
    if rid == "R2":
        i, xi, zeta = params
        return (
            word(Xi(i, xi), Xi(i, zeta)),
            word(Xi(i, hs.v0.heis_add(xi, zeta))),
        )
    if rid == "R3":
        i, j, h, k, a, b = params
        if h in (j, -i) or k in (i, -j):
            raise ValueError("R3 side condition violated")
        return commutator_word(word(Xij(i, j, a)), word(Xij(h, k, b))), ()
    if rid == "R4":
        i, xi, j, k, a = params
        if j == -i or k == i:
            raise ValueError("R4 side condition violated")
        return commutator_word(word(Xi(i, xi)), word(Xij(j, k, a))), ()
    if rid == "R5":
        i, j, k, a, b = params
        if len({i, -i, j, -j, k, -k}) != 6:
            raise ValueError("R5 needs pairwise disjoint index pairs")
        return (
            commutator_word(word(Xij(i, j, a)), word(Xij(j, k, b))),
            word(Xij(i, k, r.mul(a, b))),
        )
    if rid == "R6":
        i, j, xi, zeta = params
        if j in (i, -i):
            raise ValueError("R6 needs i outside {j, -j}")
        u, _ = xi
        v, _ = zeta
        return (
            commutator_word(word(Xi(i, xi)), word(Xi(j, zeta))),
            word(Xij(i, -j, r.mul(hs.eps(i), hs.v0.form(u, v)))),
        )
    if rid == "R7":
        i, xi, zeta = params
        u, _ = xi
        v, _ = zeta
        val = r.sub(hs.v0.form(u, v), hs.v0.form(v, u))
        return (
            commutator_word(word(Xi(i, xi)), word(Xi(i, zeta))),
            word(Xi(i, (hs.v0.zero_vec, val))),
        )
    if rid == "R8":
        i, j, xi, b = params
        if j in (i, -i):
            raise ValueError("R8 needs j outside {i, -i}")
        u, a = xi
        acted = hs.v0.heis_act((u, r.neg(r.bar(a))), b)
        return (
            commutator_word(word(Xi(i, xi)), word(Xij(-i, j, b))),
            word(Xij(i, j, r.prod(hs.eps(i), a, b)), Xi(-j, acted)),
        )
    if rid == "R9":
        i, j, a, b = params
        if j in (i, -i):
            raise ValueError("R9 needs j outside {i, -i}")
        val = r.add(
            r.neg(r.prod(hs.eps(-i), r.lam, a, b)),
            r.prod(r.bar(b), r.lam_inv, r.bar(a), hs.eps(i)),
        )
        return (
            commutator_word(word(Xij(i, j, a)), word(Xij(j, -i, b))),
            word(Xi(i, (hs.v0.zero_vec, val))),
        )
    raise ValueError(f"unknown relation id {rid!r}")


def _index_tuples(hs: HyperbolicSpace, rid: str):
    om = hs.omega
    if rid in ("R0", "R1", "R9"):
        for i in om:
            for j in om:
                if j not in (i, -i):
                    yield (i, j)
    elif rid in ("R2", "R7"):
        for i in om:
            yield (i,)
    elif rid == "R3":
        for i in om:
            for j in om:
                if j in (i, -i):
                    continue
                for h in om:
                    if h in (j, -i):
                        continue
                    for k in om:
                        if k in (h, -h, i, -j):
                            continue
                        yield (i, j, h, k)
    elif rid == "R4":
        for i in om:
            for j in om:
                if j == -i:
                    continue
                for k in om:
                    if k in (j, -j, i):
                        continue
                    yield (i, j, k)
    elif rid == "R5":
        for i in om:
            for j in om:
                if j in (i, -i):
                    continue
                for k in om:
                    if k in (i, -i, j, -j):
                        continue
                    yield (i, j, k)
    elif rid in ("R6", "R8"):
        for i in om:
            for j in om:
                if j not in (i, -i):
                    yield (i, j)
    else:
        raise ValueError(f"unknown relation id {rid!r}")


def relation_params(hs: HyperbolicSpace, rid: str):
    """Every admissible parameter tuple, exhaustively."""
    ring_vals = list(hs.ring.elements())
    l0 = list(hs.l0)
    for idx in _index_tuples(hs, rid):
        if rid == "R0":
            for a in ring_vals:
                yield idx + (a,)
        elif rid in ("R1", "R9"):
            for a in ring_vals:
                for b in ring_vals:
                    yield idx + (a, b)
        elif rid in ("R2", "R7"):
            for xi in l0:
                for zeta in l0:
                    yield idx + (xi, zeta)
        elif rid == "R3":
            for a in ring_vals:
                for b in ring_vals:
                    yield idx + (a, b)
        elif rid == "R4":
            i, j, k = idx
            for xi in l0:
                for a in ring_vals:
                    yield (i, xi, j, k, a)
        elif rid == "R5":
            for a in ring_vals:
                for b in ring_vals:
                    yield idx + (a, b)
        elif rid == "R6":
            for xi in l0:
                for zeta in l0:
                    yield idx + (xi, zeta)
        elif rid == "R8":
            for xi in l0:
                for b in ring_vals:
                    yield idx + (xi, b)


def sample_relation_params(hs: HyperbolicSpace, rid: str, rng: random.Random):
    idx_pool = list(_index_tuples(hs, rid))
    idx = rng.choice(idx_pool)
    ring_vals = list(hs.ring.elements())
    l0 = list(hs.l0)
    if rid == "R0":
        return idx + (rng.choice(ring_vals),)
    if rid in ("R1", "R3", "R5", "R9"):
        return idx + (rng.choice(ring_vals), rng.choice(ring_vals))
    if rid in ("R2", "R6", "R7"):
        return idx + (rng.choice(l0), rng.choice(l0))
    if rid == "R4":
        i, j, k = idx
        return (i, rng.choice(l0), j, k, rng.choice(ring_vals))
    if rid == "R8":
        return idx + (rng.choice(l0), rng.choice(ring_vals))
    raise ValueError(rid)


def relation_cases(hs, rid, strategy="exhaustive", seed=DEFAULT_SEED, samples=256):
    """Yield (params, lhs, rhs) for one relation family."""
    if strategy == "exhaustive":
        for params in relation_params(hs, rid):
            yield (params,) + relation_instance(hs, rid, params)
    elif strategy == "sampled":
        rng = random.Random(f"{seed}|{rid}")
        for _ in range(samples):
            params = sample_relation_params(hs, rid, rng)
            yield (params,) + relation_instance(hs, rid, params)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")


def describe_params(rid, params):
    return f"{rid}{params!r}"


def verify_relations(hs: HyperbolicSpace, strategy="exhaustive",
                     seed=DEFAULT_SEED, samples=256, rep=None,
                     relation_ids=RELATION_IDS) -> Report:
    """Evaluate every relation instance in the defining representation."""
    report = Report()
    cache = {}
    used_seed = seed if strategy == "sampled" else None
    for rid in relation_ids:
        count = 0
        witness = None
        for params, lhs, rhs in relation_cases(hs, rid, strategy, seed, samples):
            count += 1
            if eval_word(hs, lhs, rep, cache) != eval_word(hs, rhs, rep, cache):
                witness = describe_params(rid, params)
                break
        report.add(
            f"relations.{rid}",
            "pass" if witness is None else "fail",
            witness=witness if witness is not None else f"{count} instances",
            seed=used_seed,
        )
    return report


# -- U1 normal form ----------------------------------------------------------


@dataclass(frozen=True)
class U1NormalForm:
    """X_n(zeta) * prod X_{n,i}(a_i) with i running over 1..n-1, -(n-1)..-1."""

    zeta: tuple
    coeffs: tuple  # ((i, value), ...) in the fixed collection order


def u1_order(hs: HyperbolicSpace):
    return tuple(i for i in hs.omega if i not in (hs.n, -hs.n))


def _u1_swap_scalar(hs: HyperbolicSpace, j, c, b):
    """Scalar of [X_{n,-j}(c), X_{n,j}(b)] = X_n(0, s), via R0 then R9.

    R0 turns X_{n,j}(b) into X_{-j,-n}(d) with d = eps_-j bar(b) eps_n, and
    R9 with the pair (n, -j) yields s = -eps_-n lam c d + bar(d) lam^-1 bar(c) eps_n.
    """
    r = hs.ring
    d = r.prod(hs.eps(-j), r.bar(b), hs.eps(hs.n))
    return r.add(
        r.neg(r.prod(hs.eps(-hs.n), r.lam, c, d)),
        r.prod(r.bar(d), r.lam_inv, r.bar(c), hs.eps(hs.n)),
    )


def u1_alphabet(hs: HyperbolicSpace):
    gens = [Xi(hs.n, xi) for xi in hs.l0]
    for i in u1_order(hs):
        for a in hs.ring.elements():
            gens.append(Xij(hs.n, i, a))
    return gens


def u1_decompose(hs: HyperbolicSpace, w: Word) -> U1NormalForm:
    """Collect a word over {X_{n,i}(a), X_n(zeta)} into the normal form.

    Central X_n factors float to the front; disjoint long factors commute;
    moving X_{n,j} (j > 0) past the stored X_{n,-j} emits the X_n correction
    computed by the R0+R9 rewrite.
    """
    r = hs.ring
    v0 = hs.v0
    n = hs.n
    order = u1_order(hs)
    coeffs = {i: r.zero for i in order}
    zeta = v0.heis_identity
    for g, e in w:
        if isinstance(g, Xi):
            if g.i != n:
                raise ValueError(f"{g!r} is outside the U1 alphabet")
            xi = g.xi if e == 1 else v0.heis_neg(g.xi)
            zeta = v0.heis_add(zeta, xi)
        elif isinstance(g, Xij):
            if g.i != n or g.j in (n, -n):
                raise ValueError(f"{g!r} is outside the U1 alphabet")
            j = g.j
            b = g.a if e == 1 else r.neg(g.a)
            if j > 0:
                c = coeffs[-j]
                if c != r.zero and b != r.zero:
                    s = _u1_swap_scalar(hs, j, c, b)
                    zeta = v0.heis_add(zeta, (v0.zero_vec, s))
            coeffs[j] = r.add(coeffs[j], b)
        else:
            raise ValueError(f"{g!r} is outside the U1 alphabet")
    if zeta not in hs.l0_set:
        raise WorkbenchError(f"collected X_n argument {zeta!r} left the parameter")
    return U1NormalForm(zeta, tuple((i, coeffs[i]) for i in order))


def normal_form_word(hs: HyperbolicSpace, nf: U1NormalForm) -> Word:
    parts = []
    if nf.zeta != hs.v0.heis_identity:
        parts.append(Xi(hs.n, nf.zeta))
    for i, a in nf.coeffs:
        if a != hs.ring.zero:
            parts.append(Xij(hs.n, i, a))
    return word(*parts)


def u1_uniqueness_check(hs: HyperbolicSpace, w1: Word, w2: Word) -> bool:
    """True iff evaluation equality and normal-form equality agree."""
    same_eval = eval_word(hs, w1) == eval_word(hs, w2)
    same_nf = u1_decompose(hs, w1) == u1_decompose(hs, w2)
    return same_eval == same_nf


# -- perfectness and stabilization -------------------------------------------


def _pick(hs, excluded):
    for l in hs.omega:
        if l not in excluded:
            return l
    raise WorkbenchError("no admissible witness index; rank too small")


def perfect_witness(hs: HyperbolicSpace, gen) -> Word:
    """A product of commutators of generators evaluating like [gen].

    X_ik(a) = [X_il(a), X_lk(1)]; X_k(u, c) is rebuilt from the commutator
    shape of the mixed relation, solved for its one-index factor.
    """
    r = hs.ring
    if isinstance(gen, Xij):
        if gen.a == r.zero:
            return ()
        l = _pick(hs, {gen.i, -gen.i, gen.j, -gen.j})
        return commutator_word(
            word(Xij(gen.i, l, gen.a)), word(Xij(l, gen.j, r.one))
        )
    if isinstance(gen, Xi):
        if gen.xi == hs.v0.heis_identity:
            return ()
        k = gen.i
        u, c = gen.xi
        i0 = _pick(hs, {k, -k})
        m0 = _pick(hs, {k, -k, i0, -i0})
        cbar = r.bar(c)
        part1 = commutator_word(
            word(Xij(i0, m0, r.mul(hs.eps(i0), cbar))),
            word(Xij(m0, -k, r.one)),
        )
        part2 = commutator_word(
            word(Xi(i0, (u, r.neg(cbar)))), word(Xij(-i0, -k, r.one))
        )
        return wmul(part1, part2)
    raise ValueError(f"not a generator: {gen!r}")


def stabilize(w: Word) -> Word:
    """Reinterpret a rank-n word at rank n+1 (the generator data is unchanged)."""
    return tuple(w)


def embed_matrix(small: HyperbolicSpace, big: HyperbolicSpace, m: Mat) -> Mat:
    """Block-extend a rank-n matrix to rank n+1 (identity on the new plane)."""
    if big.n != small.n + 1 or big.v0.rank != small.v0.rank:
        raise ValueError("embedding expects ranks n and n+1 with the same V0")
    r = small.ring
    rows = [list(row) for row in big.identity.rows]
    def newcol(c):
        # e_1..e_n keep their columns; e_-n..e_-1 and V0 shift past the new pair
        return c if c < small.n else c + 2
    for a in range(small.dim):
        for b in range(small.dim):
            rows[newcol(a)][newcol(b)] = m.rows[a][b]
    return Mat.from_rows(r, rows)


def remark2_witness_search(hs: HyperbolicSpace, limit=2000):
    """Search for non-commuting X_i(u, a), X_i(v, b); None when all commute."""
    count = 0
    cache = {}
    for i in hs.omega:
        for xi in hs.l0:
            for zeta in hs.l0:
                count += 1
                if count > limit:
                    return None
                lhs = commutator_word(word(Xi(i, xi)), word(Xi(i, zeta)))
                if not eval_word(hs, lhs, cache=cache).is_identity():
                    return (i, xi, zeta)
    return None
