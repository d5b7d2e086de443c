"""Central extensions of the elementary group and the splitting construction.

A product extension is base x A with componentwise product, epsilon the
first projection, and pluggable preimage choosers.  Commutators of
preimages do not depend on the chooser (central trick), which is asserted
on every call.  Section elements S_ij(a), S_i(u, a) are built from
commutators of preimages and verified against every relation family.
"""

from __future__ import annotations

import hashlib
import itertools
import random

from .generators import Xi, Xij
from .hyperbolic import HyperbolicSpace
from .matrices import Mat
from .report import DEFAULT_SEED, Report, WorkbenchError
from .steinberg import (
    RELATION_IDS,
    describe_params,
    gen_matrix,
    relation_cases,
)


class ProductExtension:
    """base x Z/a_order; epsilon is the first projection."""

    def __init__(self, hs: HyperbolicSpace, a_order: int, chooser_seed=None,
                 closure=None):
        if a_order < 1:
            raise ValueError("the central factor must have positive order")
        self.hs = hs
        self.a_order = a_order
        self.chooser_seed = chooser_seed
        self.closure = closure  # optional enumerated base, when it fits the cap
        self.identity = (hs.identity, 0)

    def mul(self, x, y):
        return (x[0] * y[0], (x[1] + y[1]) % self.a_order)

    def inv(self, x):
        return (x[0].inv(), (-x[1]) % self.a_order)

    def eps(self, x) -> Mat:
        return x[0]

    def _central_part(self, g: Mat, seed) -> int:
        if seed is None:
            return 0
        digest = hashlib.sha256(
            repr(seed).encode() + repr(g.key()).encode()
        ).digest()
        return int.from_bytes(digest[:8], "big") % self.a_order

    def chooser(self, g: Mat):
        return (g, self._central_part(g, self.chooser_seed))

    def alt_chooser(self, g: Mat):
        alt_seed = 1 if self.chooser_seed is None else (self.chooser_seed, "alt")
        return (g, self._central_part(g, alt_seed))

    def commutator(self, x, y):
        return self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))

    def central_elements(self):
        return [(self.hs.identity, c) for c in range(self.a_order)]

    def kernel_is_central(self, sample_mats) -> bool:
        for z in self.central_elements():
            for g in sample_mats:
                x = self.chooser(g)
                if self.mul(z, x) != self.mul(x, z):
                    return False
        return True


def product_extension(hs: HyperbolicSpace, a_order: int, chooser_seed=None,
                      closure=None) -> ProductExtension:
    return ProductExtension(hs, a_order, chooser_seed, closure)


def comm_preimages(E: ProductExtension, x: Mat, y: Mat):
    """[chooser(x), chooser(y)]; re-evaluated with a second chooser and compared."""
    c1 = E.commutator(E.chooser(x), E.chooser(y))
    c2 = E.commutator(E.alt_chooser(x), E.alt_chooser(y))
    if c1 != c2:
        raise WorkbenchError("commutator of preimages depended on the chooser")
    return c1


def _dagger_quadruples(hs: HyperbolicSpace):
    for i, j, k, h in itertools.product(hs.omega, repeat=4):
        if len({i, -i, j, -j, k, -k, h, -h}) == 8:
            yield (i, j, k, h)


def check_dagger(E: ProductExtension, strategy="exhaustive",
                 seed=DEFAULT_SEED, samples=256) -> Report:
    """Preimage commutators vanish on index quadruples with all eight signs distinct."""
    hs = E.hs
    if hs.n < 4:
        raise WorkbenchError("property-dagger needs n >= 4 (no admissible quadruple)")
    rep = Report()
    ring_vals = list(hs.ring.elements())
    if strategy == "exhaustive":
        cases = (
            (q, a, b)
            for q in _dagger_quadruples(hs)
            for a in ring_vals
            for b in ring_vals
        )
        used_seed = None
    else:
        rng = random.Random(f"{seed}|dagger")
        quads = list(_dagger_quadruples(hs))
        cases = (
            (rng.choice(quads), rng.choice(ring_vals), rng.choice(ring_vals))
            for _ in range(samples)
        )
        used_seed = seed
    count = 0
    witness = None
    for (i, j, k, h), a, b in cases:
        count += 1
        t1 = gen_matrix(hs, Xij(i, j, a))
        t2 = gen_matrix(hs, Xij(k, h, b))
        if comm_preimages(E, t1, t2) != E.identity:
            witness = f"(i,j,k,h,a,b)=({i},{j},{k},{h},{a!r},{b!r})"
            break
    rep.add("extension.dagger", "pass" if witness is None else "fail",
            witness=witness if witness else f"{count} quadruple instances",
            seed=used_seed)
    return rep


def _witness_for(hs, excluded):
    for l in hs.omega:
        if l not in excluded:
            return l
    raise WorkbenchError("no admissible witness index")


def s_ij(E: ProductExtension, i, j, a, witness=None):
    """S_ij(a) = [eps^-1 X_iw(a), eps^-1 X_wj(1)] for a witness w outside +-i, +-j."""
    hs = E.hs
    if hs.n < 4:
        raise WorkbenchError("section elements need n >= 4")
    if j in (i, -i):
        raise ValueError("S_ij needs j outside {i, -i}")
    w = witness if witness is not None else _witness_for(hs, {i, -i, j, -j})
    if w in (i, -i, j, -j):
        raise ValueError("witness collides with the target indices")
    x = gen_matrix(hs, Xij(i, w, a))
    y = gen_matrix(hs, Xij(w, j, hs.ring.one))
    return comm_preimages(E, x, y)


def s_i(E: ProductExtension, k, xi, witness=None):
    """S_k(u, a) = S_{w,-k}(eps_w bar(a)) * [eps^-1 X_w(u, -bar(a)), eps^-1 X_{-w,-k}(1)]."""
    hs = E.hs
    r = hs.ring
    if hs.n < 4:
        raise WorkbenchError("section elements need n >= 4")
    u, a = xi
    w = witness if witness is not None else _witness_for(hs, {k, -k})
    if w in (k, -k):
        raise ValueError("witness collides with the target index")
    abar = r.bar(a)
    head = s_ij(E, w, -k, r.mul(hs.eps(w), abar))
    x = gen_matrix(hs, Xi(w, (u, r.neg(abar))))
    y = gen_matrix(hs, Xij(-w, -k, r.one))
    return E.mul(head, comm_preimages(E, x, y))


def section_generators(hs: HyperbolicSpace):
    for i in hs.omega:
        for j in hs.omega:
            if j in (i, -i):
                continue
            for a in hs.ring.elements():
                yield Xij(i, j, a)
    for k in hs.omega:
        for xi in hs.l0:
            yield Xi(k, xi)


def build_section(E: ProductExtension) -> dict:
    """Full S-table; the dagger check is mandatory at n = 4, skipped for n >= 5."""
    hs = E.hs
    if hs.n < 4:
        raise WorkbenchError("the splitting construction needs n >= 4")
    if hs.n == 4:
        dag = check_dagger(E)
        if not dag.ok:
            raise WorkbenchError(
                f"property-dagger failed: {dag.failures()[0].witness}"
            )
    table = {}
    for g in section_generators(hs):
        if isinstance(g, Xij):
            table[g] = s_ij(E, g.i, g.j, g.a)
        else:
            table[g] = s_i(E, g.i, g.xi)
    return table


def section_eval(E: ProductExtension, table: dict, w):
    acc = E.identity
    for g, e in w:
        t = table[g]
        acc = E.mul(acc, t if e == 1 else E.inv(t))
    return acc


def verify_section(E: ProductExtension, table: dict, strategy="exhaustive",
                   seed=DEFAULT_SEED, samples=256,
                   relation_ids=RELATION_IDS, stop_on_fail=False) -> Report:
    """Every relation family with S substituted for X, plus eps(sigma) = id."""
    hs = E.hs
    rep = Report()
    used_seed = seed if strategy == "sampled" else None
    bad = next(
        (g for g, t in table.items() if E.eps(t) != gen_matrix(hs, g)), None
    )
    rep.add("section.eps_sigma", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad))
    if bad is not None and stop_on_fail:
        return rep
    for rid in relation_ids:
        count = 0
        witness = None
        for params, lhs, rhs in relation_cases(hs, rid, strategy, seed, samples):
            count += 1
            if section_eval(E, table, lhs) != section_eval(E, table, rhs):
                witness = describe_params(rid, params)
                break
        rep.add(f"section.{rid}", "pass" if witness is None else "fail",
                witness=witness if witness else f"{count} instances",
                seed=used_seed)
        if witness is not None and stop_on_fail:
            break
    return rep


def mutate_section(E: ProductExtension, table: dict, gen, delta: int) -> dict:
    """Multiply one S-entry by a central element (id, delta)."""
    if delta % E.a_order == 0:
        raise ValueError("mutation must use a nontrivial central element")
    out = dict(table)
    out[gen] = E.mul(out[gen], (E.hs.identity, delta % E.a_order))
    return out


def chooser_agreement(hs: HyperbolicSpace, a_order: int, seed=DEFAULT_SEED,
                      pairs=100) -> Report:
    """Two independently seeded choosers give equal preimage commutators."""
    e1 = ProductExtension(hs, a_order, chooser_seed=(seed, 1))
    e2 = ProductExtension(hs, a_order, chooser_seed=(seed, 2))
    rng = random.Random(f"{seed}|pairs")
    gens = [m for _, m in _pair_pool(hs)]
    witness = None
    for _ in range(pairs):
        x = _random_product(hs, gens, rng)
        y = _random_product(hs, gens, rng)
        c1 = e1.commutator(e1.chooser(x), e1.chooser(y))
        c2 = e2.commutator(e2.chooser(x), e2.chooser(y))
        if c1 != c2:
            witness = "choosers disagreed"
            break
    rep = Report()
    rep.add("extension.central_trick", "pass" if witness is None else "fail",
            witness=witness or f"{pairs} pairs", seed=seed)
    return rep


def _pair_pool(hs: HyperbolicSpace):
    pool = []
    r = hs.ring
    for i in hs.omega:
        for j in hs.omega:
            if j in (i, -i):
                continue
            for a in r.elements():
                if a != r.zero:
                    pool.append((Xij(i, j, a), gen_matrix(hs, Xij(i, j, a))))
    return pool


def _random_product(hs, gens, rng, max_len=4):
    acc = hs.identity
    for _ in range(rng.randint(1, max_len)):
        acc = acc * rng.choice(gens)
    return acc
