"""Finite rings with pseudo-involution.

A pseudo-involution is an additive map a -> bar(a) with bar(1) invertible,
bar(bar(a)) = a and bar(a*b) = bar(b) * bar(1)^-1 * bar(a).  lam denotes
bar(1) throughout.
"""

from __future__ import annotations

import itertools
import random
from math import gcd

from .matrices import inv_mod, invert_rows_mod
from .report import DEFAULT_SEED, CapExceeded, NotInvertible, Report

ENUM_THRESHOLD = 10**6
PAIR_THRESHOLD = 10**3
SAMPLE_PAIRS = 4096


class Ring:
    """Common interface; element values are hashable immutables, fully reduced."""

    modulus = None  # set for residue rings (numpy fast path for matrices over them)

    def elements(self):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        try:
            self.inv(a)
            return True
        except NotInvertible:
            return False

    @property
    def lam(self):
        return self.bar(self.one)

    @property
    def lam_inv(self):
        return self.inv(self.lam)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def prod(self, *xs):
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def sum(self, *xs):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc


def _make_bar(kind, table, m):
    if kind == "identity":
        return lambda a: a
    if kind == "negation":
        return lambda a: (-a) % m
    if kind == "table":
        return lambda a: table[a]
    raise ValueError(f"unsupported involution {kind!r} for residue ring")


class ResidueRing(Ring):
    """Z/m with elements stored as ints in [0, m)."""

    def __init__(self, m, involution="identity", table=None):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = m
        self.degree = 1
        self.kind = "residue"
        self.involution = involution
        self.zero = 0
        self.one = 1
        if involution == "table":
            if table is None or sorted(table) != list(range(m)):
                raise ValueError("involution table must be a bijection on [0, m)")
            table = tuple(int(v) % m for v in table)
            for a in range(m):
                for b in range(m):
                    if table[(a + b) % m] != (table[a] + table[b]) % m:
                        raise ValueError(
                            f"involution table is not additive at ({a}, {b})"
                        )
        self.table = table
        self.bar = _make_bar(involution, table, m)
        self._lam = self.bar(1)
        if gcd(self._lam, m) != 1:
            raise NotInvertible("bar(1) is not invertible")

    @property
    def card(self):
        return self.modulus

    def elements(self):
        return range(self.modulus)

    def add(self, a, b):
        return (a + b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def inv(self, a):
        return inv_mod(a, self.modulus)

    def format_scalar(self, a):
        return str(a)

    def parse_scalar(self, text):
        return int(text) % self.modulus

    def __repr__(self):
        return f"Z/{self.modulus}({self.involution})"


class MatrixRing(Ring):
    """k x k matrices over Z/m; bar = transpose composed with an entrywise involution."""

    def __init__(self, m, k, entry_involution="identity", table=None):
        if m < 2:
            raise ValueError("modulus must be at least 2")
        if k < 1:
            raise ValueError("degree must be at least 1")
        self.base = ResidueRing(m, entry_involution, table)
        self.base_modulus = m
        self.degree = k
        self.kind = "matrix"
        self.involution = f"transpose:{entry_involution}"
        self.table = self.base.table
        self.zero = tuple(tuple(0 for _ in range(k)) for _ in range(k))
        self.one = tuple(
            tuple(1 if i == j else 0 for j in range(k)) for i in range(k)
        )
        self._lam = self.bar(self.one)
        try:
            self.inv(self._lam)
        except NotInvertible:
            raise NotInvertible("bar(1) is not invertible")

    @property
    def card(self):
        return self.base_modulus ** (self.degree * self.degree)

    def elements(self):
        k, m = self.degree, self.base_modulus
        for vals in itertools.product(range(m), repeat=k * k):
            yield tuple(vals[i * k:(i + 1) * k] for i in range(k))

    def add(self, a, b):
        m = self.base_modulus
        return tuple(
            tuple((x + y) % m for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
        )

    def neg(self, a):
        m = self.base_modulus
        return tuple(tuple((-x) % m for x in row) for row in a)

    def mul(self, a, b):
        k, m = self.degree, self.base_modulus
        return tuple(
            tuple(sum(a[i][l] * b[l][j] for l in range(k)) % m for j in range(k))
            for i in range(k)
        )

    def bar(self, a):
        k, ebar = self.degree, self.base.bar
        return tuple(tuple(ebar(a[j][i]) for j in range(k)) for i in range(k))

    def inv(self, a):
        return invert_rows_mod(a, self.base_modulus)

    def format_scalar(self, a):
        return ";".join(",".join(str(v) for v in row) for row in a)

    def parse_scalar(self, text):
        m = self.base_modulus
        rows = tuple(
            tuple(int(v) % m for v in row.split(",")) for row in text.split(";")
        )
        if len(rows) != self.degree or any(len(r) != self.degree for r in rows):
            raise ValueError(f"scalar {text!r} has wrong shape")
        return rows

    def __repr__(self):
        return f"M{self.degree}(Z/{self.base_modulus})({self.involution})"


def make_ring(kind="residue", modulus=2, degree=1, involution="identity", table=None):
    """Build a ring descriptor; validates the involution spec and caches lam."""
    if kind == "residue":
        if degree != 1:
            raise ValueError("residue rings have degree 1")
        return ResidueRing(modulus, involution, table)
    if kind == "matrix":
        if involution.startswith("transpose"):
            entry = involution.split(":", 1)[1] if ":" in involution else "identity"
        else:
            raise ValueError(
                f"unsupported involution {involution!r} for matrix ring"
            )
        return MatrixRing(modulus, degree, entry, table)
    raise ValueError(f"unsupported ring kind {kind!r}")


def involve(ring, a):
    """bar(a); the element must belong to the carrier."""
    if ring.kind == "residue":
        if not (isinstance(a, int) and 0 <= a < ring.modulus):
            raise ValueError(f"{a!r} is not in the carrier of {ring!r}")
    return ring.bar(a)


def _pairs(ring, seed):
    """All (a, b) pairs when the carrier is small, else a seeded sample."""
    if ring.card <= PAIR_THRESHOLD:
        elems = list(ring.elements())
        return [(a, b) for a in elems for b in elems], "exhaustive", None
    if ring.card > ENUM_THRESHOLD:
        raise CapExceeded("carrier too large to enumerate")
    rng = random.Random(seed)
    elems = list(ring.elements())
    return (
        [(rng.choice(elems), rng.choice(elems)) for _ in range(SAMPLE_PAIRS)],
        "sampled",
        seed,
    )


def verify_pseudo_involution(ring, seed=DEFAULT_SEED) -> Report:
    """Check lam invertible, bar∘bar = id, additivity, bar(ab) = bar(b) lam^-1 bar(a)."""
    rep = Report()
    try:
        lam_inv = ring.lam_inv
        rep.add("ring.lam_invertible", "pass")
    except NotInvertible:
        rep.add("ring.lam_invertible", "fail", witness=f"lam = {ring.lam!r}")
        return rep

    bad = next(
        (a for a in ring.elements() if ring.bar(ring.bar(a)) != a), None
    )
    if bad is None:
        rep.add("ring.bar_involutive", "pass")
    else:
        rep.add(
            "ring.bar_involutive", "fail",
            witness=f"bar(bar({bad!r})) = {ring.bar(ring.bar(bad))!r}",
        )

    pairs, strategy, used_seed = _pairs(ring, seed)
    bad = next(
        (
            (a, b)
            for a, b in pairs
            if ring.bar(ring.add(a, b)) != ring.add(ring.bar(a), ring.bar(b))
        ),
        None,
    )
    rep.add(
        "ring.bar_additive",
        "pass" if bad is None else "fail",
        witness=None if bad is None else f"(a, b) = {bad!r}",
        seed=used_seed,
    )

    bad = next(
        (
            (a, b)
            for a, b in pairs
            if ring.bar(ring.mul(a, b))
            != ring.prod(ring.bar(b), lam_inv, ring.bar(a))
        ),
        None,
    )
    rep.add(
        "ring.bar_antimultiplicative",
        "pass" if bad is None else "fail",
        witness=None if bad is None else f"(a, b) = {bad!r}",
        seed=used_seed,
    )
    return rep


def verify_ring_axioms(ring, seed=DEFAULT_SEED) -> Report:
    """Associativity, distributivity, identity; exhaustive on small carriers."""
    rep = Report()
    pairs, _, used_seed = _pairs(ring, seed)
    elems = list(ring.elements())
    if ring.card <= 100:
        triples = [(a, b, c) for a in elems for b in elems for c in elems]
    else:
        rng = random.Random(seed)
        triples = [
            (rng.choice(elems), rng.choice(elems), rng.choice(elems))
            for _ in range(SAMPLE_PAIRS)
        ]
    bad = next(
        (
            t
            for t in triples
            if ring.mul(ring.mul(t[0], t[1]), t[2])
            != ring.mul(t[0], ring.mul(t[1], t[2]))
        ),
        None,
    )
    rep.add("ring.mul_associative", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad), seed=used_seed)
    bad = next(
        (
            t
            for t in triples
            if ring.mul(t[0], ring.add(t[1], t[2]))
            != ring.add(ring.mul(t[0], t[1]), ring.mul(t[0], t[2]))
            or ring.mul(ring.add(t[0], t[1]), t[2])
            != ring.add(ring.mul(t[0], t[2]), ring.mul(t[1], t[2]))
        ),
        None,
    )
    rep.add("ring.distributive", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad), seed=used_seed)
    bad = next(
        (
            a
            for a in elems
            if ring.mul(ring.one, a) != a or ring.mul(a, ring.one) != a
        ),
        None,
    )
    rep.add("ring.identity", "pass" if bad is None else "fail",
            witness=None if bad is None else repr(bad))
    return rep
