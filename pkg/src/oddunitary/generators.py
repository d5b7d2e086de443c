"""Formal Steinberg generators and their word token grammar.

Tokens: `Xij(a)` for the two-index generator, `Xi(u;a)` for the one-index
generator (u = comma-separated coordinates of the anisotropic part, empty
when that part has rank 0), suffix `'` for a formal inverse.  Indices are
single signed digits, so ranks up to 9 serialize unambiguously; an optional
comma between the two indices is accepted on input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple

Word = Tuple[tuple, ...]  # sequence of (generator, +1 | -1)


@dataclass(frozen=True)
class Xij:
    """Two-index generator X_ij(a); requires j not in {i, -i}."""
    i: int
    j: int
    a: object


@dataclass(frozen=True)
class Xi:
    """One-index generator X_i(xi); xi = (u, a) with u in V0 coordinates.

    Keeping the vector in V0 coordinates makes the generator data identical
    at every hyperbolic rank, so rank stabilization is the identity on words.
    """
    i: int
    xi: tuple


def word(*gens) -> Word:
    return tuple((g, 1) for g in gens)


def winv(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def wmul(*ws) -> Word:
    out = []
    for w in ws:
        out.extend(w)
    return tuple(out)


def commutator_word(w1: Word, w2: Word) -> Word:
    """Left-normed commutator [a, b] = a b a^-1 b^-1."""
    return wmul(w1, w2, winv(w1), winv(w2))


def format_gen(gen, hs=None) -> str:
    """Render a generator as a token; `hs` supplies the scalar formatting."""
    fmt = hs.ring.format_scalar if hs is not None else str
    if isinstance(gen, Xij):
        return f"X{gen.i}{gen.j}({fmt(gen.a)})"
    u, a = gen.xi
    u_txt = ",".join(fmt(c) for c in u)
    return f"X{gen.i}({u_txt};{fmt(a)})"


def format_word(w: Word, hs=None) -> str:
    return " ".join(
        format_gen(g, hs) + ("'" if e < 0 else "") for g, e in w
    )


_TOKEN = re.compile(r"^X(-?\d+)(?:,?(-?\d+))?\((.*)\)('?)$")


def parse_gen(token: str, hs):
    m = _TOKEN.match(token.strip())
    if m is None:
        raise ValueError(f"cannot parse generator token {token!r}")
    first, second, arg, prime = m.groups()
    exp = -1 if prime else 1
    if ";" in arg:
        if second is not None:
            raise ValueError(f"one-index token with two indices: {token!r}")
        i = int(first)
        u_txt, a_txt = arg.split(";", 1)
        coords = (
            tuple(hs.ring.parse_scalar(c) for c in u_txt.split(","))
            if u_txt.strip()
            else ()
        )
        if len(coords) != hs.v0.rank:
            raise ValueError(
                f"{token!r}: expected {hs.v0.rank} anisotropic coordinates"
            )
        return Xi(i, (coords, hs.ring.parse_scalar(a_txt))), exp
    if second is None:
        # indices glued together, e.g. X31 or X3-1: split after one signed digit
        m2 = re.match(r"^(-?\d)(-?\d)$", first)
        if m2 is None:
            raise ValueError(f"cannot split indices in token {token!r}")
        i, j = int(m2.group(1)), int(m2.group(2))
    else:
        i, j = int(first), int(second)
    return Xij(i, j, hs.ring.parse_scalar(arg)), exp


def parse_word(text: str, hs) -> Word:
    return tuple(parse_gen(tok, hs) for tok in text.split())
