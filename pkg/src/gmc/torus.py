"""Circle group acting on two-sided sequences by frequency-wise phases.

The n-th coefficient of a sequence picks up exp(2 pi i n t) under the group
action and a factor (2 pi i n)^m under the m-th power of the Lie generator.
Test functions are band-limited Fourier sums, so every identity in this model
is a finite spectral computation, exact up to float roundoff.

Conventions: fhat(n) = integral of f(t) exp(-2 pi i n t) dt, left translation
L(s)f(t) = f(t - s), right translation R(s)f(t) = f(t + s), and the dual
(contragredient) actions on sequences are act_group(-t, .) and
act_algebra(transpose(D), .).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import PreconditionError
from .groups import GroupModel
from .uea import LieStructure, UEAElement, uea_transpose
from .vectors import (
    CoefficientVector,
    GrowthClass,
    GrowthEnvelope,
    IndexDomain,
    Tail,
    pair,
    vector_from_prefix,
)

TORUS_STRUCTURE = LieStructure(labels=("X",))

TWO_PI = 2.0 * math.pi

# Sequences over Z; an alias to keep signatures readable.
TorusSequence = CoefficientVector


def _require_torus(a: CoefficientVector) -> None:
    if a.domain is not IndexDomain.INTEGERS:
        raise PreconditionError("torus sequences are indexed by the two-sided integers")


# --------------------------------------------------------------------------
# sequence constructors
# --------------------------------------------------------------------------


def unit(n: int) -> TorusSequence:
    return CoefficientVector(
        domain=IndexDomain.INTEGERS,
        start=n,
        prefix=np.array([1.0 + 0j]),
        envelope=GrowthEnvelope(1.0, 0.0, all_orders=True),
        growth=GrowthClass.RAPID_DECAY,
    )


def comb(extent: int = 64) -> TorusSequence:
    """The constant sequence of ones (the Dirac-comb distribution vector)."""
    return CoefficientVector(
        domain=IndexDomain.INTEGERS,
        start=-extent,
        prefix=np.ones(2 * extent + 1, dtype=np.complex128),
        envelope=GrowthEnvelope(1.0, 0.0),
        growth=GrowthClass.POLYNOMIAL_GROWTH,
        tail=Tail.formula("const", 1.0),
    )


ones = comb


def poly(r: int, extent: int = 64) -> TorusSequence:
    """a_n = n^r (with a_0 = 1 for r = 0); polynomial growth of degree r."""
    ns = np.arange(-extent, extent + 1)
    if r == 0:
        vals = np.ones_like(ns, dtype=np.complex128)
    else:
        vals = (ns.astype(float) ** r).astype(np.complex128)
    return CoefficientVector(
        domain=IndexDomain.INTEGERS,
        start=-extent,
        prefix=vals,
        envelope=GrowthEnvelope(1.0, float(r)),
        growth=GrowthClass.POLYNOMIAL_GROWTH,
        tail=Tail.formula("power", float(r)),
    )


def geometric(ratio: float, extent: int = 64) -> TorusSequence:
    """a_n = ratio^{|n|}, rapid decay for |ratio| < 1."""
    if not 0 < abs(ratio) < 1:
        raise PreconditionError("geometric ratio must satisfy 0 < |ratio| < 1")
    ns = np.arange(-extent, extent + 1)
    vals = (abs(ratio) ** np.abs(ns)).astype(np.complex128)
    if ratio < 0:
        vals *= (-1.0) ** np.abs(ns)
    degree = -8.0
    scan = np.arange(0, max(2048, int(200.0 / -math.log(abs(ratio)))) + 1)
    constant = float(np.max(abs(ratio) ** scan * (1.0 + scan) ** -degree)) * (1 + 1e-12)
    return CoefficientVector(
        domain=IndexDomain.INTEGERS,
        start=-extent,
        prefix=vals,
        envelope=GrowthEnvelope(constant, degree, all_orders=True),
        growth=GrowthClass.RAPID_DECAY,
        tail=Tail.formula("geometric", ratio),
    )


def inverse_quadratic(power: int = 1, extent: int = 64) -> TorusSequence:
    """a_n = (1+n^2)^{-power}; square-summable for power >= 1."""
    ns = np.arange(-extent, extent + 1)
    vals = ((1.0 + ns.astype(float) ** 2) ** (-power)).astype(np.complex128)
    # (1+k^2)^{-p} <= 2^p (1+|k|)^{-2p} since 1+k^2 >= (1+|k|)^2 / 2
    return CoefficientVector(
        domain=IndexDomain.INTEGERS,
        start=-extent,
        prefix=vals,
        envelope=GrowthEnvelope(2.0**power * (1 + 1e-12), -2.0 * power),
        growth=GrowthClass.SQUARE_SUMMABLE,
        tail=Tail.formula("inv_quadratic", power),
    )


def alternating(extent: int = 64) -> TorusSequence:
    ns = np.arange(-extent, extent + 1)
    return CoefficientVector(
        domain=IndexDomain.INTEGERS,
        start=-extent,
        prefix=((-1.0) ** np.abs(ns)).astype(np.complex128),
        envelope=GrowthEnvelope(1.0, 0.0),
        growth=GrowthClass.POLYNOMIAL_GROWTH,
        tail=Tail.formula("alternating"),
    )


# --------------------------------------------------------------------------
# band-limited test functions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusTestFunction:
    """f(t) = sum_{|n| <= B} coeffs[n] exp(2 pi i n t); coeffs index -B..B."""

    coeffs: np.ndarray
    real_valued: bool = False

    def __post_init__(self):
        arr = np.ascontiguousarray(self.coeffs, dtype=np.complex128).copy()
        if len(arr) % 2 != 1:
            raise PreconditionError("coefficient array must have odd length 2B+1")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)
        if self.real_valued:
            flipped = np.conj(arr[::-1])
            if not np.allclose(arr, flipped, atol=1e-14):
                raise PreconditionError(
                    "declared real-valued but fhat(-n) != conj(fhat(n))"
                )

    @property
    def bandwidth(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def fhat(self, n: int) -> complex:
        B = self.bandwidth
        if -B <= n <= B:
            return complex(self.coeffs[n + B])
        return 0j

    def __call__(self, t):
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        ns = np.arange(-self.bandwidth, self.bandwidth + 1)
        vals = np.exp(2j * np.pi * np.outer(ts, ns)) @ self.coeffs
        return complex(vals[0]) if np.ndim(t) == 0 else vals

    def integral(self) -> complex:
        return self.fhat(0)

    # translations and Lie derivatives act diagonally on the band
    def _scaled(self, factors: np.ndarray) -> "TorusTestFunction":
        return TorusTestFunction(self.coeffs * factors)

    def left_translate(self, s: float) -> "TorusTestFunction":
        ns = np.arange(-self.bandwidth, self.bandwidth + 1)
        return self._scaled(np.exp(-2j * np.pi * ns * s))

    def right_translate(self, s: float) -> "TorusTestFunction":
        ns = np.arange(-self.bandwidth, self.bandwidth + 1)
        return self._scaled(np.exp(2j * np.pi * ns * s))

    def left_derive(self, d: UEAElement) -> "TorusTestFunction":
        return self._scaled(_spectral_factors(d, self.bandwidth, sign=-1.0))

    def right_derive(self, d: UEAElement) -> "TorusTestFunction":
        return self._scaled(_spectral_factors(d, self.bandwidth, sign=+1.0))

    def __add__(self, other: "TorusTestFunction") -> "TorusTestFunction":
        B = max(self.bandwidth, other.bandwidth)
        out = np.zeros(2 * B + 1, dtype=np.complex128)
        out[B - self.bandwidth : B + self.bandwidth + 1] += self.coeffs
        out[B - other.bandwidth : B + other.bandwidth + 1] += other.coeffs
        return TorusTestFunction(out)

    def __rmul__(self, scalar) -> "TorusTestFunction":
        return TorusTestFunction(scalar * self.coeffs)


def band(B: int, profile: str | Sequence[complex] = "ones") -> TorusTestFunction:
    """Named band-limited profiles, or an explicit coefficient list of length 2B+1."""
    ns = np.arange(-B, B + 1)
    if isinstance(profile, str):
        if profile == "ones":
            coeffs = np.ones(2 * B + 1, dtype=np.complex128)
        elif profile == "fejer":
            coeffs = (1.0 - np.abs(ns) / (B + 1.0)).astype(np.complex128)
        elif profile == "gauss":
            coeffs = np.exp(-((2.0 * ns / max(B, 1)) ** 2)).astype(np.complex128)
        else:
            raise PreconditionError(f"unknown band profile {profile!r}")
        return TorusTestFunction(coeffs, real_valued=True)
    coeffs = np.asarray(list(profile), dtype=np.complex128)
    if len(coeffs) != 2 * B + 1:
        raise PreconditionError(
            f"explicit band profile needs {2 * B + 1} coefficients, got {len(coeffs)}"
        )
    return TorusTestFunction(coeffs)


def _spectral_factors(d: UEAElement, B: int, sign: float) -> np.ndarray:
    """Band factors of L(D) (sign=-1) or R(D) (sign=+1): sum_m c_m (sign 2 pi i n)^m."""
    if d.structure.labels != TORUS_STRUCTURE.labels:
        raise PreconditionError("expected an element over the 1-generator torus basis")
    ns = np.arange(-B, B + 1)
    z = sign * 2j * np.pi * ns
    out = np.zeros(2 * B + 1, dtype=np.complex128)
    for alpha, c in d.sorted_terms():
        out += c * z ** alpha[0]
    return out


# --------------------------------------------------------------------------
# representation operations
# --------------------------------------------------------------------------


def act_group(t: float, a: TorusSequence, **_ignored) -> TorusSequence:
    """(pi(T_t) a)_n = a_n exp(2 pi i n t); growth class and envelope unchanged."""
    _require_torus(a)
    ns = np.arange(a.start, a.stop)
    prefix = a.prefix * np.exp(2j * np.pi * ns * t)
    tail = a.tail
    if not tail.is_zero:
        base = tail
        tail = Tail.closure(lambda k, _b=base, _t=t: _b(k) * np.exp(2j * np.pi * k * _t))
    return CoefficientVector(a.domain, a.start, prefix, a.envelope, a.growth, tail)


def dual_act_group(t: float, b: TorusSequence, **_ignored) -> TorusSequence:
    """Contragredient action pi*(T_t) b = act_group(-t, b)."""
    return act_group(-t, b)


def act_algebra(d: UEAElement, a: TorusSequence) -> TorusSequence:
    """X^m multiplies the n-th coefficient by (2 pi i n)^m."""
    _require_torus(a)
    B_needed = a.stop - 1
    ns = np.arange(a.start, a.stop)
    z = 2j * np.pi * ns
    factors = np.zeros(len(ns), dtype=np.complex128)
    coeff_l1 = 0.0
    deg = 0
    for alpha, c in d.sorted_terms():
        factors += c * z ** alpha[0]
        coeff_l1 += abs(c) * TWO_PI ** alpha[0]
        deg = max(deg, alpha[0])
    prefix = a.prefix * factors

    tail = a.tail
    if not tail.is_zero:
        terms = list(d.sorted_terms())

        def tail_fn(k, _b=a.tail, _terms=terms):
            zk = 2j * np.pi * k
            return _b(k) * sum(c * zk ** alpha[0] for alpha, c in _terms)

        tail = Tail.closure(tail_fn)

    if deg == 0:
        envelope = GrowthEnvelope(
            a.envelope.constant * max(coeff_l1, 1e-300),
            a.envelope.degree,
            a.envelope.all_orders,
        )
        growth = a.growth
    else:
        envelope = GrowthEnvelope(
            a.envelope.constant * coeff_l1,
            a.envelope.degree + deg,
            a.envelope.all_orders,
        )
        growth = (
            GrowthClass.RAPID_DECAY
            if a.growth is GrowthClass.RAPID_DECAY
            else GrowthClass.POLYNOMIAL_GROWTH
        )
    return CoefficientVector(a.domain, a.start, prefix, envelope, growth, tail)


def dual_act_algebra(d: UEAElement, b: TorusSequence) -> TorusSequence:
    """pi*(D) b = act_algebra(transpose(D), b)."""
    return act_algebra(uea_transpose(d), b)


def smooth_by(f: TorusTestFunction, a: TorusSequence, **_ignored) -> TorusSequence:
    """(pi(f) a)_n = a_n fhat(-n); band-limited, hence rapid decay, output."""
    _require_torus(a)
    B = f.bandwidth
    ns = np.arange(-B, B + 1)
    vals = a.coeffs(ns) * f.coeffs[::-1]
    return vector_from_prefix(
        IndexDomain.INTEGERS, -B, vals, GrowthClass.RAPID_DECAY, degree=-8.0
    )


def gmc_eval(a: TorusSequence, b: TorusSequence, f: TorusTestFunction, **_ignored) -> complex:
    """<pi(f) a, b> = sum over the band of a_n fhat(-n) b_n (finite, exact)."""
    return pair(smooth_by(f, a), b)


def series_partial_sum(a: TorusSequence, m: int, f: TorusTestFunction) -> complex:
    """Pairing of the order-m partial Fourier sum of a against f.

    For m >= bandwidth this is bit-identical to gmc_eval(a, ones, f): the same
    terms are added in the same order.
    """
    if m < 0:
        raise PreconditionError("partial-sum order must be nonnegative")
    smoothed = smooth_by(f, a)
    truncated = project_subrep(smoothed, lambda n: abs(n) <= m)
    return pair(truncated, comb())


def dominated_sequence_check(
    a: TorusSequence,
    b_list: Sequence[TorusSequence],
    b: TorusSequence,
    f: TorusTestFunction,
    envelope: GrowthEnvelope | None = None,
) -> list[float]:
    """Residuals |gmc_eval(a, b_m, f) - gmc_eval(a, b, f)| under a common envelope."""
    env = envelope if envelope is not None else b.envelope
    for m, bm in enumerate(b_list):
        for k in range(bm.start, bm.stop):
            if abs(bm.coeff(k)) > env.bound(k) * (1 + 1e-9):
                raise PreconditionError(
                    f"sequence #{m} violates the common envelope at index {k}"
                )
    base = gmc_eval(a, b, f)
    return [abs(gmc_eval(a, bm, f) - base) for bm in b_list]


def factorize_torus(a: TorusSequence) -> tuple[UEAElement, TorusSequence]:
    """Constructive factorization a = pi(D) u with u square-summable.

    D = (1 - X^2 / 4 pi^2)^m and u_n = a_n / (1+n^2)^m with m = floor(r/2)+1,
    so that applying D multiplies the n-th coefficient by (1+n^2)^m exactly.
    """
    _require_torus(a)
    r = a.envelope.degree
    m = int(math.floor(r / 2.0)) + 1
    base = UEAElement(TORUS_STRUCTURE, {(0,): 1.0, (2,): -1.0 / (4.0 * math.pi**2)})
    D = base**m

    ns = np.arange(a.start, a.stop)
    prefix = a.prefix / (1.0 + ns.astype(float) ** 2) ** m
    tail = a.tail
    if not tail.is_zero:
        tail = Tail.closure(lambda k, _b=a.tail, _m=m: _b(k) / (1.0 + float(k) ** 2) ** _m)
    envelope = GrowthEnvelope(
        a.envelope.constant * 2.0**m, r - 2.0 * m, a.envelope.all_orders
    )
    u = CoefficientVector(
        a.domain, a.start, prefix, envelope, GrowthClass.SQUARE_SUMMABLE, tail
    )
    return D, u


def project_subrep(a: TorusSequence, keep: Callable[[int], bool]) -> TorusSequence:
    """Zero all coefficients outside the index predicate; commutes with actions."""
    _require_torus(a)
    ns = np.arange(a.start, a.stop)
    mask = np.array([bool(keep(int(n))) for n in ns])
    prefix = np.where(mask, a.prefix, 0j)
    tail = a.tail
    if not tail.is_zero:
        tail = Tail.closure(lambda k, _b=a.tail, _keep=keep: _b(k) if _keep(k) else 0j)
    return CoefficientVector(a.domain, a.start, prefix, a.envelope, a.growth, tail)


def pointwise_coefficient(a: TorusSequence, b: TorusSequence) -> Callable[[float], complex]:
    """The smooth function t -> sum_n a_n b_n exp(2 pi i n t).

    Any summable pair works on the circle (the series route); the adaptive
    pairing rejects two polynomial-growth vectors on its own.
    """
    if (
        a.growth is GrowthClass.POLYNOMIAL_GROWTH
        and b.growth is GrowthClass.POLYNOMIAL_GROWTH
    ):
        raise PreconditionError("pointwise view needs a summable pair")

    def view(t: float) -> complex:
        return pair(act_group(t, a), b)

    return view


# --------------------------------------------------------------------------
# the model bundle
# --------------------------------------------------------------------------


def _haar(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Equispaced circle rule: exact for band-limited integrands below order nodes."""
    pts = np.arange(nodes) / nodes
    return pts, np.full(nodes, 1.0 / nodes)


def _circle_distance(s: float, t: float) -> float:
    d = abs((float(s) - float(t)) % 1.0)
    return min(d, 1.0 - d)


TORUS = GroupModel(
    name="torus",
    dim=1,
    structure=TORUS_STRUCTURE,
    identity=0.0,
    multiply=lambda s, t: (s + t) % 1.0,
    inverse=lambda t: (-t) % 1.0,
    exp=lambda x: float(np.atleast_1d(x)[0]) % 1.0,
    haar=_haar,
    modular_function=lambda g: 1.0,
    act_group=act_group,
    act_algebra=act_algebra,
    dual_act_group=dual_act_group,
    dual_act_algebra=dual_act_algebra,
    smooth_by=smooth_by,
    gmc_eval=gmc_eval,
    pointwise_coefficient=pointwise_coefficient,
    factorization=factorize_torus,
    distance=_circle_distance,
)
