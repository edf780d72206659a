"""Mini-language parsing for CLI vector, test-function, and run specs."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import heisenberg as hb
from . import mollify as mo
from . import torus as tr
from .config import QuadratureSpec, ToleranceTable
from .errors import SpecParseError
from .groups import GroupModel
from .vectors import CoefficientVector


def get_model(group: str) -> GroupModel:
    if group == "torus":
        return tr.TORUS
    if group == "heisenberg":
        return hb.HEISENBERG
    raise SpecParseError(f"unknown group {group!r}")


def _numeric(token: str, spec: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise SpecParseError(f"bad numeric token {token!r} in spec {spec!r}") from None


def _integer(token: str, spec: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SpecParseError(f"bad integer token {token!r} in spec {spec!r}") from None


TORUS_FORMULAS = {
    "invsq": lambda: tr.inverse_quadratic(1),
    "invsq2": lambda: tr.inverse_quadratic(2),
    "alternating": lambda: tr.alternating(),
}


def parse_vector(group: str, spec: str) -> CoefficientVector:
    head, _, rest = spec.partition(":")
    if head == "json":
        try:
            payload = json.loads(Path(rest).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecParseError(f"cannot load vector file {rest!r}: {exc}") from None
        return CoefficientVector.from_json(payload)
    if group == "torus":
        if head == "unit":
            return tr.unit(_integer(rest, spec))
        if head == "comb":
            return tr.comb()
        if head == "poly":
            return tr.poly(_integer(rest, spec))
        if head == "geometric":
            return tr.geometric(_numeric(rest, spec))
        if head == "formula":
            if rest not in TORUS_FORMULAS:
                raise SpecParseError(f"unknown formula name {rest!r} in spec {spec!r}")
            return TORUS_FORMULAS[rest]()
        raise SpecParseError(f"unknown torus vector token {head!r} in spec {spec!r}")
    if group == "heisenberg":
        if head == "e":
            return hb.unit_vector(_integer(rest, spec))
        if head == "delta":
            return hb.dirac_delta()
        if head == "gauss":
            sigma = _numeric(rest, spec) if rest else 0.75
            return hb.gaussian_vector(sigma)
        if head == "poly-growth":
            return hb.poly_growth_vector(_numeric(rest, spec))
        raise SpecParseError(f"unknown heisenberg vector token {head!r} in spec {spec!r}")
    raise SpecParseError(f"unknown group {group!r}")


def _parse_band(spec: str) -> tr.TorusTestFunction:
    parts = spec.split(":")
    if len(parts) != 3:
        raise SpecParseError(f"band spec needs band:B:<profile>, got {spec!r}")
    B = _integer(parts[1], spec)
    profile = parts[2]
    if profile in ("ones", "fejer", "gauss"):
        return tr.band(B, profile)
    coeffs = []
    for token in profile.split(","):
        try:
            coeffs.append(complex(token))
        except ValueError:
            raise SpecParseError(f"bad coefficient token {token!r} in spec {spec!r}") from None
    if len(coeffs) != 2 * B + 1:
        raise SpecParseError(
            f"band:{B} needs {2 * B + 1} coefficients, got {len(coeffs)} in {spec!r}"
        )
    return tr.TorusTestFunction(np.array(coeffs, dtype=np.complex128))


def _parse_bump3(spec: str) -> hb.HTestFunction:
    center = (0.0, 0.0, 0.0)
    radius = 0.25
    mass = 1.0
    for part in spec.split(":")[1:]:
        key, _, value = part.partition("=")
        if key == "center":
            value = value.strip()
            if not (value.startswith("(") and value.endswith(")")):
                raise SpecParseError(f"bad center token {value!r} in spec {spec!r}")
            bits = value[1:-1].split(",")
            if len(bits) != 3:
                raise SpecParseError(f"center needs three coordinates in {spec!r}")
            center = tuple(_numeric(b, spec) for b in bits)
        elif key == "radius":
            radius = _numeric(value, spec)
        elif key == "mass":
            mass = _numeric(value, spec)
        else:
            raise SpecParseError(f"unknown bump3 key {key!r} in spec {spec!r}")
    if radius <= 0:
        raise SpecParseError(f"bump radius must be positive in spec {spec!r}")
    f = mo.standard_mollifier(hb.HEISENBERG, n=1, radius=radius)
    if mass != 1.0:
        f = mass * f
    c = hb.HeisenbergElement(*center)
    if c != hb.IDENTITY:
        f = f.left_translate(c)
    return f


def parse_test_function(group: str, spec: str):
    head = spec.split(":", 1)[0]
    if group == "torus":
        if head == "band":
            return _parse_band(spec)
        raise SpecParseError(f"unknown torus test-function token {head!r} in spec {spec!r}")
    if group == "heisenberg":
        if head == "bump3":
            return _parse_bump3(spec)
        raise SpecParseError(
            f"unknown heisenberg test-function token {head!r} in spec {spec!r}"
        )
    raise SpecParseError(f"unknown group {group!r}")


def parse_mollifier(spec: str) -> tuple[int, float]:
    """"mollifier:n=<k>:radius=<rho>" -> (n, radius)."""
    parts = spec.split(":")
    if parts[0] != "mollifier":
        raise SpecParseError(f"expected mollifier spec, got {spec!r}")
    n, radius = None, 0.25
    for part in parts[1:]:
        key, _, value = part.partition("=")
        if key == "n":
            n = _integer(value, spec)
        elif key == "radius":
            radius = _numeric(value, spec)
        else:
            raise SpecParseError(f"unknown mollifier key {key!r} in spec {spec!r}")
    if n is None or n < 1:
        raise SpecParseError(f"mollifier spec needs n >= 1: {spec!r}")
    return n, radius


def parse_grid(spec: str) -> tuple[np.ndarray, np.ndarray]:
    """"p0:p1:np,q0:q1:nq" -> (p values, q values)."""
    parts = spec.split(",")
    if len(parts) != 2:
        raise SpecParseError(f"grid spec needs two axes, got {spec!r}")
    axes = []
    for part in parts:
        bits = part.split(":")
        if len(bits) != 3:
            raise SpecParseError(f"bad grid axis {part!r} in spec {spec!r}")
        lo, hi = _numeric(bits[0], spec), _numeric(bits[1], spec)
        count = _integer(bits[2], spec)
        if count < 1:
            raise SpecParseError(f"grid axis needs at least one point in {spec!r}")
        axes.append(np.linspace(lo, hi, count))
    return axes[0], axes[1]


def parse_n_list(spec: str) -> list[int]:
    out = []
    for token in spec.split(","):
        n = _integer(token, spec)
        if n < 1:
            raise SpecParseError(f"mollifier index must be >= 1, got {token!r}")
        out.append(n)
    if not out:
        raise SpecParseError("empty n list")
    return out


# --------------------------------------------------------------------------
# run configuration
# --------------------------------------------------------------------------

_RUNCONFIG_KEYS = {"group", "truncation", "seed", "output", "tolerances", "quadrature"}


@dataclass
class RunConfig:
    group: str = "torus"
    truncation: int = 40
    seed: int = 20260808
    output: str | None = None
    tolerances: dict = field(default_factory=dict)
    quadrature: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.group not in ("torus", "heisenberg"):
            raise SpecParseError(f"unknown group {self.group!r}")
        if self.truncation < 1:
            raise SpecParseError("truncation must be positive")
        if self.seed < 0:
            raise SpecParseError("seed must be a nonnegative integer")
        for key, value in {**self.tolerances}.items():
            if key not in ToleranceTable.__dataclass_fields__:
                raise SpecParseError(f"unknown tolerance key {key!r}")
            if not (isinstance(value, (int, float)) and value > 0):
                raise SpecParseError(f"tolerance {key!r} must be positive")
        for key, value in {**self.quadrature}.items():
            if key not in QuadratureSpec.__dataclass_fields__:
                raise SpecParseError(f"unknown quadrature key {key!r}")
            if key != "self_check" and not (isinstance(value, (int, float)) and value > 0):
                raise SpecParseError(f"quadrature {key!r} must be positive")

    @staticmethod
    def from_json(path: str) -> "RunConfig":
        try:
            payload = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecParseError(f"cannot load config {path!r}: {exc}") from None
        unknown = set(payload) - _RUNCONFIG_KEYS
        if unknown:
            raise SpecParseError(f"unknown config keys: {sorted(unknown)}")
        return RunConfig(**payload)

    def tolerance_table(self) -> ToleranceTable:
        return ToleranceTable().override(**self.tolerances)

    def quadrature_spec(self) -> QuadratureSpec:
        return QuadratureSpec().override(**self.quadrature)
