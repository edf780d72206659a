"""Named verification suites driving the per-module property sets.

Each suite returns PropertyResult rows; a row passes when its measured value
is within the bound (kind "max") or reaches it (kind "min"). The CLI's
verify subcommand prints one line per row and exits nonzero when any fails.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import heisenberg as hb
from . import mollify as mo
from . import torus as tr
from .config import DEFAULT_QUADRATURE, QuadratureSpec, ToleranceTable
from .groups import factorize
from .uea import UEAElement, uea_antipode, uea_multiply, uea_transpose
from .vectors import (
    GrowthClass,
    IndexDomain,
    fitted_decay_exponent,
    pair,
    vector_from_prefix,
)

HP = UEAElement.generator(hb.HEISENBERG_STRUCTURE, "P")
HQ = UEAElement.generator(hb.HEISENBERG_STRUCTURE, "Q")
HZ = UEAElement.generator(hb.HEISENBERG_STRUCTURE, "Z")
TX = UEAElement.generator(tr.TORUS_STRUCTURE, "X")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    value: float
    bound: float
    kind: str = "max"  # "max": value <= bound passes; "min": value >= bound passes

    @property
    def passed(self) -> bool:
        if self.kind == "max":
            return self.value <= self.bound
        return self.value >= self.bound

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        rel = "<=" if self.kind == "max" else ">="
        return f"{status} {self.name}: value={self.value:.6e} {rel} bound={self.bound:.6e}"


def _element_gap(a: UEAElement, b: UEAElement) -> float:
    keys = set(a.terms) | set(b.terms)
    return max((abs(a.coefficient(k) - b.coefficient(k)) for k in keys), default=0.0)


def _random_uea(structure, rng, degree=2, span=4) -> UEAElement:
    terms = {}
    for _ in range(span):
        alpha = tuple(int(rng.integers(0, degree + 1)) for _ in structure.labels)
        if sum(alpha) <= degree:
            terms[alpha] = complex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4)))
    return UEAElement(structure, terms)


# --------------------------------------------------------------------------


def suite_uea(seed: int, tolerances: ToleranceTable) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    confluence = 0.0
    involution = 0.0
    antihom = 0.0
    antipode = 0.0
    for _ in range(30):
        a, b, c = (_random_uea(hb.HEISENBERG_STRUCTURE, rng) for _ in range(3))
        confluence = max(
            confluence, _element_gap(uea_multiply(uea_multiply(a, b), c), uea_multiply(a, uea_multiply(b, c)))
        )
        involution = max(involution, _element_gap(uea_transpose(uea_transpose(a)), a))
        antihom = max(
            antihom,
            _element_gap(
                uea_transpose(uea_multiply(a, b)),
                uea_multiply(uea_transpose(b), uea_transpose(a)),
            ),
        )
        antipode = max(antipode, _element_gap(uea_antipode(a), uea_transpose(a)))
    torus_sq = _element_gap(TX * TX, UEAElement.monomial(tr.TORUS_STRUCTURE, (2,)))
    qp = _element_gap(
        HQ * HP, UEAElement(hb.HEISENBERG_STRUCTURE, {(1, 1, 0): 1.0, (0, 0, 1): -1.0})
    )
    # [P, Q] = Z through the representation
    vals = rng.normal(size=12) + 1j * rng.normal(size=12)
    phi = vector_from_prefix(IndexDomain.NATURALS, 0, vals, GrowthClass.RAPID_DECAY)
    comm = hb.act_algebra(HP * HQ - HQ * HP, phi)
    zphi = hb.act_algebra(HZ, phi)
    weyl = max(abs(comm.coeff(k) - zphi.coeff(k)) for k in range(16))
    return [
        PropertyResult("normal-ordering-confluence", confluence, 0.0),
        PropertyResult("transpose-involution", involution, 0.0),
        PropertyResult("transpose-antiautomorphism", antihom, 0.0),
        PropertyResult("antipode-equals-transpose", antipode, 0.0),
        PropertyResult("torus-relation-table", torus_sq, 0.0),
        PropertyResult("heisenberg-qp-normal-form", qp, 0.0),
        PropertyResult("weyl-relation-representation", weyl, 1e-12),
    ]


def suite_torus_covariance(
    seed: int, tolerances: ToleranceTable, cases: int = 200
) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    worst = [0.0, 0.0, 0.0, 0.0]
    for _ in range(cases):
        B = int(rng.integers(1, 17))
        extent = B + int(rng.integers(0, 6))
        size = 2 * extent + 1
        a = vector_from_prefix(
            IndexDomain.INTEGERS,
            -extent,
            rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size),
            GrowthClass.POLYNOMIAL_GROWTH,
            degree=0.0,
        )
        b = vector_from_prefix(
            IndexDomain.INTEGERS,
            -extent,
            rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size),
            GrowthClass.POLYNOMIAL_GROWTH,
            degree=0.0,
        )
        f = tr.TorusTestFunction(
            rng.uniform(-1, 1, 2 * B + 1) + 1j * rng.uniform(-1, 1, 2 * B + 1)
        )
        terms = {}
        for m in range(4):
            w = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
            terms[(m,)] = w / (1.0 + (2 * math.pi * B) ** m)
        D = UEAElement(tr.TORUS_STRUCTURE, terms)
        s = float(rng.uniform(0, 1))
        worst[0] = max(
            worst[0],
            abs(
                tr.gmc_eval(tr.act_group(s, a), b, f)
                - tr.gmc_eval(a, b, f.right_translate(-s))
            ),
        )
        worst[1] = max(
            worst[1],
            abs(
                tr.gmc_eval(a, tr.dual_act_group(s, b), f)
                - tr.gmc_eval(a, b, f.left_translate(-s))
            ),
        )
        worst[2] = max(
            worst[2],
            abs(
                tr.gmc_eval(a, tr.dual_act_algebra(D, b), f)
                - tr.gmc_eval(a, b, f.left_derive(uea_transpose(D)))
            ),
        )
        worst[3] = max(
            worst[3],
            abs(
                tr.gmc_eval(tr.act_algebra(D, a), b, f)
                - tr.gmc_eval(a, b, f.right_derive(uea_antipode(D)))
            ),
        )
    tol = tolerances.torus_exact
    names = [
        "right-translation-covariance",
        "left-translation-covariance",
        "left-derivative-covariance",
        "right-derivative-covariance",
    ]
    return [PropertyResult(n, w, tol) for n, w in zip(names, worst)]


def suite_heisenberg_covariance(
    seed: int,
    tolerances: ToleranceTable,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    tol = tolerances.heisenberg_fd
    f = mo.standard_mollifier(hb.HEISENBERG, n=2, radius=0.8)
    phi, psi = hb.unit_vector(0), hb.unit_vector(1)
    N = quad.truncation

    worst_rt, worst_lt = 0.0, 0.0
    for _ in range(3):
        h = hb.HeisenbergElement(*rng.uniform(-0.6, 0.6, 3))
        lhs = hb.gmc_eval(hb.act_group(h, phi, N=N + 16, quad=quad), psi, f, N=N, quad=quad)
        rhs = hb.gmc_eval(phi, psi, f.right_translate(hb.group_inv(h)), N=N, quad=quad)
        worst_rt = max(worst_rt, abs(lhs - rhs))
        lhs2 = hb.gmc_eval(phi, hb.dual_act_group(h, psi, N=N + 16, quad=quad), f, N=N, quad=quad)
        rhs2 = hb.gmc_eval(phi, psi, f.left_translate(hb.group_inv(h)), N=N, quad=quad)
        worst_lt = max(worst_lt, abs(lhs2 - rhs2))

    worst_rd, worst_ld = 0.0, 0.0
    for D in (HP, HQ, HZ):
        lhs = hb.gmc_eval(hb.act_algebra(D, phi), psi, f, N=N, quad=quad)
        rhs = hb.gmc_eval(phi, psi, f.right_derive(uea_antipode(D)), N=N, quad=quad)
        worst_rd = max(worst_rd, abs(lhs - rhs))
        lhs2 = hb.gmc_eval(phi, hb.dual_act_algebra(D, psi), f, N=N, quad=quad)
        rhs2 = hb.gmc_eval(phi, psi, f.left_derive(uea_transpose(D)), N=N, quad=quad)
        worst_ld = max(worst_ld, abs(lhs2 - rhs2))

    # functoriality of composed right translations
    h1 = hb.HeisenbergElement(0.2, -0.3, 0.1)
    h2 = hb.HeisenbergElement(-0.1, 0.25, -0.2)
    f12 = f.right_translate(hb.group_inv(h1)).right_translate(hb.group_inv(h2))
    f_prod = f.right_translate(hb.group_inv(hb.group_mul(h1, h2)))
    functorial = abs(
        hb.gmc_eval(phi, psi, f12, N=N, quad=quad)
        - hb.gmc_eval(phi, psi, f_prod, N=N, quad=quad)
    )
    return [
        PropertyResult("right-translation-covariance", worst_rt, tol),
        PropertyResult("left-translation-covariance", worst_lt, tol),
        PropertyResult("right-derivative-covariance", worst_rd, tol),
        PropertyResult("left-derivative-covariance", worst_ld, tol),
        PropertyResult("right-translation-functoriality", functorial, tol),
    ]


def suite_smoothing(
    seed: int,
    tolerances: ToleranceTable,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> list[PropertyResult]:
    tol = tolerances.heisenberg_fd
    N = quad.truncation
    f = mo.standard_mollifier(hb.HEISENBERG, n=2, radius=0.8)
    results = []
    for name, phi in (("ground-state", hb.unit_vector(0)), ("delta", hb.dirac_delta())):
        worst_left, worst_right = 0.0, 0.0
        for D in (HP, HQ, HZ):
            inner = hb.smooth_by(f, phi, N=N + D.degree + 2, quad=quad)
            lhs = hb.act_algebra(D, inner)
            rhs = hb.smooth_by(f.left_derive(D), phi, N=N, quad=quad)
            worst_left = max(
                worst_left,
                float(np.linalg.norm(lhs.dense(0, N - 1) - rhs.dense(0, N - 1))),
            )
            lhs2 = hb.smooth_by(f, hb.act_algebra(D, phi), N=N, quad=quad)
            rhs2 = hb.smooth_by(f.right_derive(uea_antipode(D)), phi, N=N, quad=quad)
            worst_right = max(
                worst_right,
                float(np.linalg.norm(lhs2.dense(0, N - 1) - rhs2.dense(0, N - 1))),
            )
        results.append(PropertyResult(f"left-derivative-route-{name}", worst_left, tol))
        results.append(PropertyResult(f"right-derivative-route-{name}", worst_right, tol))
    # the smoothed output carries a certified rapid-decay signature at two truncations
    for N_cert in (N, N + 16):
        out = hb.smooth_by(f, hb.unit_vector(0), N=N_cert, quad=quad)
        results.append(
            PropertyResult(
                f"rapid-decay-certificate-ground-state-N{N_cert}",
                fitted_decay_exponent(out, floor=1e-12),
                -4.0,
            )
        )
        out_d = hb.smooth_by(f, hb.dirac_delta(), N=N_cert, quad=quad)
        results.append(
            PropertyResult(
                f"rapid-decay-certificate-delta-N{N_cert}",
                fitted_decay_exponent(out_d, floor=1e-12),
                -1.0,
            )
        )
    return results


def suite_mollifier(
    seed: int,
    tolerances: ToleranceTable,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> list[PropertyResult]:
    results = []
    # unit mass on both models
    worst_mass = 0.0
    prof_t = mo.BumpProfile.standard(0.25)
    prof_h = mo.BumpProfile.standard(0.5)
    for n in (1, 2, 4, 8):
        f_t = mo.push_forward(mo.make_jn(prof_t, n, 1), tr.TORUS)
        worst_mass = max(worst_mass, abs(f_t.fhat(0) - 1.0))
        f_h = mo.push_forward(mo.make_jn(prof_h, n, 3), hb.HEISENBERG)
        worst_mass = max(worst_mass, abs(f_h.integral(96) - 1.0))
    results.append(PropertyResult("mollifier-unit-mass", worst_mass, tolerances.mass_tol))

    # torus pairing residual: monotone decrease, small at n = 64
    eta, v = tr.comb(), tr.geometric(0.005)
    base = pair(eta, v)
    resid = [
        abs(pair(mo.mollify(eta, n, tr.TORUS, profile=prof_t), v) - base)
        for n in (1, 2, 4, 8, 16, 32, 64)
    ]
    monotone_violation = max(
        [0.0] + [resid[i + 1] - resid[i] for i in range(len(resid) - 1)]
    )
    results.append(PropertyResult("torus-pairing-monotone", monotone_violation, 0.0))
    results.append(PropertyResult("torus-pairing-residual-n64", resid[-1], 1e-6))

    # distributional approximation residuals decrease on both models
    f = tr.band(8, "fejer")
    rows = mo.gmc_approx(tr.comb(), tr.comb(), f, [2, 4, 8, 16], tr.TORUS, profile=prof_t)
    r = [row[2] for row in rows]
    results.append(
        PropertyResult(
            "torus-gmc-approx-decreasing",
            max([0.0] + [r[i + 1] - r[i] for i in range(len(r) - 1)]),
            0.0,
        )
    )
    f_h = mo.standard_mollifier(hb.HEISENBERG, n=2, radius=0.8)
    rows_h = mo.gmc_approx(
        hb.dirac_delta(),
        hb.unit_vector(0),
        f_h,
        [2, 4, 8, 16],
        hb.HEISENBERG,
        profile=prof_h,
        quad=quad,
    )
    r_h = [row[2] for row in rows_h]
    results.append(
        PropertyResult(
            "heisenberg-gmc-approx-decreasing",
            max([0.0] + [r_h[i + 1] - r_h[i] for i in range(len(r_h) - 1)]),
            0.0,
        )
    )
    # smoothing certificate at two truncations
    for N_cert in (quad.truncation, quad.truncation + 16):
        out = mo.mollify(hb.dirac_delta(), 1, hb.HEISENBERG, profile=mo.BumpProfile.standard(0.8), N=N_cert, quad=quad)
        results.append(
            PropertyResult(
                f"mollify-decay-certificate-N{N_cert}",
                fitted_decay_exponent(out, floor=1e-12),
                -1.0,
            )
        )
    return results


def suite_structure(
    seed: int,
    tolerances: ToleranceTable,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    results = []

    # torus semi-invariance: each basis vector under the full circle
    f = tr.TorusTestFunction(
        rng.uniform(-1, 1, 13) + 1j * rng.uniform(-1, 1, 13)
    )
    worst = 0.0
    for k in (0, 2, 5):
        base = tr.gmc_eval(tr.unit(k), tr.comb(), f)
        for s in (0.13, 0.41, 0.77):
            shifted = tr.gmc_eval(tr.unit(k), tr.comb(), f.right_translate(-s))
            worst = max(worst, abs(shifted - np.exp(2j * np.pi * k * s) * base))
    results.append(
        PropertyResult("torus-semi-invariance", worst, tolerances.torus_exact)
    )

    # Heisenberg: delta is invariant under the position subgroup
    f_h = mo.standard_mollifier(hb.HEISENBERG, n=2, radius=0.8)
    delta = hb.dirac_delta()
    base = hb.gmc_eval(delta, hb.unit_vector(0), f_h, quad=quad)
    worst_h = 0.0
    for qv in (0.3, -0.5):
        shifted = hb.gmc_eval(
            delta,
            hb.unit_vector(0),
            f_h.right_translate(hb.group_inv(hb.HeisenbergElement(0, qv, 0))),
            quad=quad,
        )
        worst_h = max(worst_h, abs(shifted - base))
    results.append(
        PropertyResult("heisenberg-delta-semi-invariance", worst_h, tolerances.heisenberg_fd)
    )

    # orthogonality: disjoint torus supports evaluate to exactly zero
    worst_orth = max(
        abs(tr.gmc_eval(tr.unit(1), tr.unit(2), f)),
        abs(tr.gmc_eval(tr.unit(-3), tr.unit(0), f)),
    )
    results.append(PropertyResult("torus-disjoint-orthogonality", worst_orth, 0.0))

    # projections commute with the actions, exactly
    a = vector_from_prefix(
        IndexDomain.INTEGERS,
        -8,
        rng.uniform(-1, 1, 17) + 1j * rng.uniform(-1, 1, 17),
        GrowthClass.POLYNOMIAL_GROWTH,
        degree=0.0,
    )
    keep = lambda n: n % 2 == 0
    lhs = tr.project_subrep(tr.act_algebra(TX, a), keep)
    rhs = tr.act_algebra(TX, tr.project_subrep(a, keep))
    proj = max(abs(lhs.coeff(n) - rhs.coeff(n)) for n in range(-8, 9))
    results.append(PropertyResult("torus-projection-commutation", proj, 0.0))

    # injectivity witness search: a probe family separates every basis vector
    base_bump = mo.standard_mollifier(hb.HEISENBERG, n=2, radius=0.6)
    centers = [(0, 0), (0.8, 0), (0, 0.8), (0.8, 0.8), (-0.8, 0.8)]
    probes = [
        base_bump.left_translate(hb.HeisenbergElement(pp, qq, 0.0)) for pp, qq in centers
    ]
    smoothed = [hb.smooth_by(fp, hb.unit_vector(0), quad=quad) for fp in probes]
    weakest = min(
        max(abs(pair(sm, hb.unit_vector(k))) for sm in smoothed) for k in range(9)
    )
    results.append(PropertyResult("injectivity-witness-search", weakest, 1e-6, kind="min"))

    # structure theorem witness through factorization, both models
    worst_t = 0.0
    for r in (0, 1, 2):
        a = tr.poly(r)
        D, u = factorize(a, tr.TORUS)
        ft = tr.band(6, "fejer")
        lhs_v = tr.gmc_eval(a, tr.comb(), ft)
        rhs_v = tr.gmc_eval(u, tr.comb(), ft.right_derive(uea_antipode(D)))
        worst_t = max(worst_t, abs(lhs_v - rhs_v) / (1 + abs(lhs_v)))
    results.append(
        PropertyResult("torus-structure-witness", worst_t, tolerances.torus_exact)
    )
    phi = hb.poly_growth_vector(0.0)
    D, u = factorize(phi, hb.HEISENBERG)
    lhs_v = hb.gmc_eval(phi, hb.unit_vector(0), f_h, quad=quad)
    rhs_v = hb.gmc_eval(
        u, hb.unit_vector(0), f_h.right_derive(uea_antipode(D)), quad=quad
    )
    results.append(
        PropertyResult(
            "heisenberg-structure-witness", abs(lhs_v - rhs_v), tolerances.heisenberg_fd
        )
    )
    return results


SUITES = {
    "uea": suite_uea,
    "torus-covariance": suite_torus_covariance,
    "heisenberg-covariance": suite_heisenberg_covariance,
    "mollifier": suite_mollifier,
    "smoothing": suite_smoothing,
    "structure": suite_structure,
}


def run_suite(
    name: str,
    seed: int,
    tolerances: ToleranceTable | None = None,
    quad: QuadratureSpec | None = None,
) -> list[PropertyResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    tolerances = tolerances or ToleranceTable()
    fn = SUITES[name]
    if name in ("uea", "torus-covariance"):
        return fn(seed, tolerances)
    return fn(seed, tolerances, quad or DEFAULT_QUADRATURE)
