"""Workbench configuration: `[section]` headers, `key = value` lines.

Lists are comma-separated, matrices are semicolon-separated rows, `#`
starts a comment.  Heisenberg elements are written `(c1 c2 ...|a)` with the
coordinates space-separated before the bar and the scalar after it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import (
    MaxParameter,
    MinParameter,
    OddQuadraticSpace,
    span_form_parameter,
    zero_space,
)
from .hyperbolic import HyperbolicSpace, make_hyperbolic
from .report import DEFAULT_CAP, DEFAULT_SEED, ConfigError, NotInvertible
from .rings import make_ring

_SECTIONS = {
    "ring": {"kind", "modulus", "degree", "involution"},
    "space": {"n", "v0_gram", "v0_parameter", "parameter"},
    "run": {"strategy", "seed", "cap", "samples"},
}

_DEFAULTS = {
    "ring": {"kind": "residue", "modulus": "2", "degree": "1",
             "involution": "identity"},
    "space": {"n": "3", "v0_gram": "", "v0_parameter": "min",
              "parameter": "hyperbolic"},
    "run": {"strategy": "exhaustive", "seed": str(DEFAULT_SEED),
            "cap": str(DEFAULT_CAP), "samples": "256"},
}

DEFAULT_CONFIG = """\
[ring]
kind = residue
modulus = 2
involution = identity
[space]
n = 3
parameter = hyperbolic
[run]
strategy = exhaustive
"""


@dataclass
class WorkbenchConfig:
    ring: dict = field(default_factory=dict)
    space: dict = field(default_factory=dict)
    run: dict = field(default_factory=dict)

    def section(self, name):
        return getattr(self, name)


def parse_config(text: str) -> WorkbenchConfig:
    cfg = WorkbenchConfig(
        dict(_DEFAULTS["ring"]), dict(_DEFAULTS["space"]), dict(_DEFAULTS["run"])
    )
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any section")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SECTIONS[section]:
            raise ConfigError(f"line {lineno}: unknown key {key!r} in [{section}]")
        cfg.section(section)[key] = value
    _validate(cfg)
    return cfg


def _validate(cfg: WorkbenchConfig):
    try:
        modulus = int(cfg.ring["modulus"])
        degree = int(cfg.ring["degree"])
    except ValueError as exc:
        raise ConfigError(f"ring: {exc}") from None
    if modulus < 2:
        raise ConfigError("modulus: ring must have at least 2 elements")
    if degree < 1:
        raise ConfigError("degree: must be at least 1")
    inv = cfg.ring["involution"]
    base = inv.split(":", 1)[0]
    if cfg.ring["kind"] == "residue" and base not in ("identity", "negation", "table"):
        raise ConfigError(f"involution: unknown name {inv!r}")
    if cfg.ring["kind"] == "matrix" and base != "transpose":
        raise ConfigError(f"involution: unknown name {inv!r} for matrix ring")
    if cfg.ring["kind"] not in ("residue", "matrix"):
        raise ConfigError(f"kind: unknown ring kind {cfg.ring['kind']!r}")
    if int(cfg.space["n"]) < 1:
        raise ConfigError("n: hyperbolic rank must be at least 1")
    if cfg.run["strategy"] not in ("exhaustive", "sampled"):
        raise ConfigError(f"strategy: unknown value {cfg.run['strategy']!r}")
    for key in ("seed", "cap", "samples"):
        try:
            int(cfg.run[key])
        except ValueError:
            raise ConfigError(f"{key}: expected an integer") from None


def format_config(cfg: WorkbenchConfig) -> str:
    lines = []
    for name in ("ring", "space", "run"):
        lines.append(f"[{name}]")
        for key in sorted(_SECTIONS[name]):
            lines.append(f"{key} = {cfg.section(name)[key]}")
    return "\n".join(lines) + "\n"


def build_ring(cfg: WorkbenchConfig):
    spec = cfg.ring
    inv = spec["involution"]
    table = None
    if spec["kind"] == "residue" and inv.startswith("table:"):
        table = tuple(int(v) for v in inv.split(":", 1)[1].split(","))
        inv = "table"
    if spec["kind"] == "matrix" and inv.startswith("transpose:table:"):
        table = tuple(int(v) for v in inv.split(":", 2)[2].split(","))
        inv = "transpose:table"
    try:
        return make_ring(spec["kind"], int(spec["modulus"]),
                         int(spec["degree"]), inv, table)
    except (ValueError, NotInvertible) as exc:
        raise ConfigError(f"ring: {exc}") from exc


def _parse_heis(text: str, ring, length: int):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")") and "|" in text):
        raise ConfigError(f"cannot parse Heisenberg element {text!r}")
    body = text[1:-1]
    coords_txt, scalar_txt = body.rsplit("|", 1)
    coords = tuple(
        ring.parse_scalar(c) for c in coords_txt.split()
    ) if coords_txt.strip() else ()
    if len(coords) != length:
        raise ConfigError(f"{text!r}: expected {length} coordinates")
    return (coords, ring.parse_scalar(scalar_txt))


def _split_heis_list(text: str):
    depth = 0
    items, cur = [], []
    for ch in text:
        if ch == "(":
            depth += 1
        if ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        items.append("".join(cur))
    return [s for s in (i.strip() for i in items) if s]


def build_space(cfg: WorkbenchConfig, ring=None) -> HyperbolicSpace:
    if ring is None:
        ring = build_ring(cfg)
    spec = cfg.space
    cap = int(cfg.run["cap"])
    gram_txt = spec["v0_gram"].strip()
    if gram_txt:
        gram = tuple(
            tuple(ring.parse_scalar(v) for v in row.split(","))
            for row in gram_txt.split(";")
        )
        v0_param = spec["v0_parameter"]
        if v0_param == "min":
            param = MinParameter()
        elif v0_param == "max":
            param = MaxParameter()
        elif v0_param.startswith("seeds:"):
            scratch = OddQuadraticSpace(ring, gram)
            seeds = [
                _parse_heis(item, ring, scratch.rank)
                for item in _split_heis_list(v0_param.split(":", 1)[1])
            ]
            param = span_form_parameter(scratch, seeds, cap)
        else:
            raise ConfigError(f"v0_parameter: unknown value {v0_param!r}")
        v0 = OddQuadraticSpace(ring, gram, param)
    else:
        v0 = zero_space(ring)

    n = int(spec["n"])
    param_txt = spec["parameter"]
    if param_txt == "hyperbolic":
        return make_hyperbolic(ring, n, v0)
    if param_txt == "min":
        return make_hyperbolic(ring, n, v0, MinParameter())
    if param_txt == "max":
        return make_hyperbolic(ring, n, v0, MaxParameter())
    if param_txt.startswith("span:"):
        dim = 2 * n + v0.rank
        hs = make_hyperbolic(ring, n, v0)
        seeds = [
            _parse_heis(item, ring, dim)
            for item in _split_heis_list(param_txt.split(":", 1)[1])
        ]
        spanned = span_form_parameter(hs.space, seeds, cap)
        return make_hyperbolic(ring, n, v0, spanned)
    raise ConfigError(f"parameter: unknown value {param_txt!r}")
