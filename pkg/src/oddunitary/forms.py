"""Odd quadratic spaces: anti-Hermitian forms, Heisenberg group, form parameters.

A Heisenberg element is a pair (u, a) of a module vector and a ring scalar,
with composition (u, a) + (v, b) = (u + v, a + b + B(u, v)), negation
-(u, a) = (-u, -a + B(u, u)) and right action (u, a) <- b = (ub, bar(b) lam^-1 a b).
"""

from __future__ import annotations

import itertools
import random

from .report import DEFAULT_CAP, DEFAULT_SEED, CapExceeded, Report, WorkbenchError


class FormParameter:
    kind = "abstract"

    def contains(self, space, xi) -> bool:
        raise NotImplementedError

    def elements(self, space, cap=DEFAULT_CAP) -> frozenset:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind


class MinParameter(FormParameter):
    """{(0, a + bar(a))}: the smallest admissible parameter."""

    kind = "min"

    def contains(self, space, xi):
        u, a = xi
        return u == space.zero_vec and a in space.lmin_scalars

    def elements(self, space, cap=DEFAULT_CAP):
        return frozenset((space.zero_vec, s) for s in space.lmin_scalars)


class MaxParameter(FormParameter):
    """{(u, a) : a - bar(a) = B(u, u)}: the largest admissible parameter."""

    kind = "max"

    def contains(self, space, xi):
        u, a = xi
        r = space.ring
        return r.sub(a, r.bar(a)) == space.form(u, u)

    def elements(self, space, cap=DEFAULT_CAP):
        total = space.ring.card ** (space.rank + 1)
        if total > cap:
            raise CapExceeded(f"maximal parameter needs {total} candidates")
        return frozenset(
            (u, a)
            for u in space.vectors()
            for a in space.ring.elements()
            if self.contains(space, (u, a))
        )


class ExplicitParameter(FormParameter):
    kind = "explicit"

    def __init__(self, elems):
        self.set = frozenset(elems)

    def contains(self, space, xi):
        return xi in self.set

    def elements(self, space, cap=DEFAULT_CAP):
        return self.set

    def describe(self):
        return f"explicit({len(self.set)})"


class OddQuadraticSpace:
    """Free right module with an anti-Hermitian Gram matrix and a form parameter."""

    def __init__(self, ring, gram, parameter=None):
        self.ring = ring
        self.gram = tuple(tuple(v for v in row) for row in gram)
        self.rank = len(self.gram)
        if any(len(row) != self.rank for row in self.gram):
            raise ValueError("gram matrix must be square")
        self.zero_vec = tuple(ring.zero for _ in range(self.rank))
        self.heis_identity = (self.zero_vec, ring.zero)
        self.lmin_scalars = frozenset(
            ring.add(a, ring.bar(a)) for a in ring.elements()
        )
        self.parameter = parameter if parameter is not None else MinParameter()

    # -- form ------------------------------------------------------------

    def form(self, u, v):
        """B(u, v) = sum_{i,j} bar(u_i) lam^-1 G[i][j] v_j."""
        r = self.ring
        if len(u) != self.rank or len(v) != self.rank:
            raise ValueError("vector length does not match rank")
        lam_inv = r.lam_inv
        acc = r.zero
        for i, ui in enumerate(u):
            if ui == r.zero:
                continue
            bui = r.mul(r.bar(ui), lam_inv)
            for j, vj in enumerate(v):
                if vj == r.zero or self.gram[i][j] == r.zero:
                    continue
                acc = r.add(acc, r.prod(bui, self.gram[i][j], vj))
        return acc

    def vectors(self):
        return (
            tuple(v)
            for v in itertools.product(list(self.ring.elements()), repeat=self.rank)
        )

    def vector_count(self):
        return self.ring.card ** self.rank

    def vec_add(self, u, v):
        return tuple(self.ring.add(a, b) for a, b in zip(u, v))

    def vec_neg(self, u):
        return tuple(self.ring.neg(a) for a in u)

    def vec_scale(self, u, b):
        """u * b with the scalar on the right."""
        return tuple(self.ring.mul(a, b) for a in u)

    # -- Heisenberg group --------------------------------------------------

    def heis_add(self, xi, zeta):
        (u, a), (v, b) = xi, zeta
        r = self.ring
        return (self.vec_add(u, v), r.sum(a, b, self.form(u, v)))

    def heis_neg(self, xi):
        u, a = xi
        r = self.ring
        return (self.vec_neg(u), r.add(r.neg(a), self.form(u, u)))

    def heis_act(self, xi, b):
        u, a = xi
        r = self.ring
        return (self.vec_scale(u, b), r.prod(r.bar(b), r.lam_inv, a, b))

    def heis_elements(self):
        for u in self.vectors():
            for a in self.ring.elements():
                yield (u, a)

    # -- parameter ---------------------------------------------------------

    def lmin_member(self, xi):
        return MinParameter().contains(self, xi)

    def lmax_member(self, xi):
        return MaxParameter().contains(self, xi)

    def param_contains(self, xi):
        return self.parameter.contains(self, xi)

    def param_elements(self, cap=DEFAULT_CAP):
        return self.parameter.elements(self, cap)


def make_space(ring, gram, parameter=None) -> OddQuadraticSpace:
    return OddQuadraticSpace(ring, gram, parameter)


def zero_space(ring) -> OddQuadraticSpace:
    return OddQuadraticSpace(ring, (), MinParameter())


def form_eval(space, u, v):
    return space.form(u, v)


def heis_add(space, xi, zeta):
    return space.heis_add(xi, zeta)


def heis_neg(space, xi):
    return space.heis_neg(xi)


def heis_act(space, xi, b):
    return space.heis_act(xi, b)


def verify_antihermitian(space, seed=DEFAULT_SEED, pair_cap=10**5) -> Report:
    """Gram anti-Hermitian on basis pairs; B(u, v) = -bar(B(v, u)) on vector pairs."""
    rep = Report()
    r = space.ring
    bad = next(
        (
            (i, j)
            for i in range(space.rank)
            for j in range(space.rank)
            if space.gram[i][j] != r.neg(r.bar(space.gram[j][i]))
        ),
        None,
    )
    rep.add(
        "space.gram_antihermitian",
        "pass" if bad is None else "fail",
        witness=None if bad is None else f"basis pair {bad}",
    )

    total = space.vector_count() ** 2
    used_seed = None
    if total <= pair_cap:
        pairs = ((u, v) for u in space.vectors() for v in space.vectors())
    else:
        rng = random.Random(seed)
        used_seed = seed
        elems = list(r.elements())
        def rand_vec():
            return tuple(rng.choice(elems) for _ in range(space.rank))
        pairs = ((rand_vec(), rand_vec()) for _ in range(4096))
    bad = next(
        (
            (u, v)
            for u, v in pairs
            if space.form(u, v) != r.neg(r.bar(space.form(v, u)))
        ),
        None,
    )
    rep.add(
        "space.form_skew_axiom",
        "pass" if bad is None else "fail",
        witness=None if bad is None else f"(u, v) = {bad!r}",
        seed=used_seed,
    )
    return rep


def span_form_parameter(space, seeds, cap=DEFAULT_CAP) -> ExplicitParameter:
    """Smallest subgroup containing lmin and the seeds, stable under the action."""
    for s in seeds:
        if not space.lmax_member(s):
            raise WorkbenchError(f"seed {s!r} lies outside the maximal parameter")
    ring_elems = list(space.ring.elements())
    current = set(MinParameter().elements(space))
    current.add(space.heis_identity)
    current.update(tuple(s) if not isinstance(s, tuple) else s for s in seeds)
    while True:
        new = set()
        for x in current:
            y = space.heis_neg(x)
            if y not in current:
                new.add(y)
            for b in ring_elems:
                y = space.heis_act(x, b)
                if y not in current:
                    new.add(y)
        for x in current:
            for y in current:
                z = space.heis_add(x, y)
                if z not in current:
                    new.add(z)
        if not new:
            break
        current |= new
        if len(current) > cap:
            raise CapExceeded(f"parameter closure exceeded cap {cap}")
    return ExplicitParameter(current)


def verify_form_parameter(space, cap=DEFAULT_CAP, seed=DEFAULT_SEED) -> Report:
    """lmin <= L <= lmax, closure under the group operations, action stability."""
    rep = Report()
    elems = space.param_elements(cap)
    bad = next(
        (s for s in space.lmin_scalars if (space.zero_vec, s) not in elems), None
    )
    rep.add("param.contains_min", "pass" if bad is None else "fail",
            witness=None if bad is None else f"(0, {bad!r})")
    bad = next((x for x in elems if not space.lmax_member(x)), None)
    rep.add("param.inside_max", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad))
    bad = next((x for x in elems if space.heis_neg(x) not in elems), None)
    rep.add("param.closed_under_neg", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad))

    used_seed = None
    if len(elems) ** 2 <= 4 * 10**6:
        pairs = ((x, y) for x in elems for y in elems)
    else:
        rng = random.Random(seed)
        used_seed = seed
        listed = sorted(elems)
        pairs = (
            (rng.choice(listed), rng.choice(listed)) for _ in range(4096)
        )
    bad = next(
        ((x, y) for x, y in pairs if space.heis_add(x, y) not in elems), None
    )
    rep.add("param.closed_under_add", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad), seed=used_seed)
    bad = next(
        (
            (x, b)
            for x in elems
            for b in space.ring.elements()
            if space.heis_act(x, b) not in elems
        ),
        None,
    )
    rep.add("param.action_stable", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad))
    return rep


def orthogonal_sum(s1: OddQuadraticSpace, s2: OddQuadraticSpace,
                   cap=DEFAULT_CAP) -> OddQuadraticSpace:
    """Block-diagonal form; parameter = pairwise sums of the two parameters."""
    r = s1.ring
    if ring_key(r) != ring_key(s2.ring):
        raise WorkbenchError("orthogonal sum needs both spaces over the same ring")
    n1, n2 = s1.rank, s2.rank
    gram = [
        [
            s1.gram[i][j] if i < n1 and j < n1
            else s2.gram[i - n1][j - n1] if i >= n1 and j >= n1
            else r.zero
            for j in range(n1 + n2)
        ]
        for i in range(n1 + n2)
    ]
    p1 = s1.param_elements(cap)
    p2 = s2.param_elements(cap)
    if len(p1) * len(p2) > cap:
        raise CapExceeded("parameter of the sum exceeds cap")
    elems = frozenset(
        (u + v, r.add(a, b)) for (u, a) in p1 for (v, b) in p2
    )
    return OddQuadraticSpace(r, gram, ExplicitParameter(elems))


def ring_key(ring):
    return (ring.kind, getattr(ring, "modulus", None),
            getattr(ring, "base_modulus", None), ring.degree, ring.involution,
            getattr(ring, "table", None))
