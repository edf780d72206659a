"""Generalized matrix coefficients as evaluatable functionals on test functions.

A functional holds a vector pair and a model handle and evaluates test
functions through the model's smoothing route. Translations and Lie
derivatives act on the functional by dualizing onto the test function:

    left_translate(F, h)(f)  = F(L(h^{-1}) f)
    right_translate(F, h)(f) = F(R(h^{-1}) f)
    left_derive(F, D)(f)     = F(L(tD) f)
    right_derive(F, D)(f)    = F(R(A(D)) f)

with tD the transpose and A the antipode (equal on the unimodular models
shipped here). Functionals stay closures with provenance; pointwise views
exist only when the second vector is rapid-decay.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

from .errors import PreconditionError
from .groups import GroupModel
from .uea import UEAElement, uea_antipode, uea_transpose
from .vectors import CoefficientVector, GrowthClass


@dataclass(frozen=True)
class GMCFunctional:
    phi: CoefficientVector
    psi: CoefficientVector
    model: GroupModel
    transform: Optional[Callable] = field(default=None, repr=False)
    provenance: str = "direct"
    eval_options: dict = field(default_factory=dict, repr=False)

    def evaluate(self, f) -> complex:
        ff = self.transform(f) if self.transform is not None else f
        return self.model.gmc_eval(self.phi, self.psi, ff, **self.eval_options)

    __call__ = evaluate

    def _chain(self, outer: Callable, provenance: str) -> "GMCFunctional":
        old = self.transform

        def transform(f):
            g = outer(f)
            return old(g) if old is not None else g

        return replace(self, transform=transform, provenance=f"{provenance} o {self.provenance}")


def gmc_functional(phi, psi, model: GroupModel, **eval_options) -> GMCFunctional:
    return GMCFunctional(phi, psi, model, eval_options=eval_options)


def left_translate(F: GMCFunctional, h) -> GMCFunctional:
    hinv = F.model.inverse(h)
    return F._chain(lambda f: f.left_translate(hinv), f"left-translated({h})")


def right_translate(F: GMCFunctional, h) -> GMCFunctional:
    hinv = F.model.inverse(h)
    return F._chain(lambda f: f.right_translate(hinv), f"right-translated({h})")


def left_derive(F: GMCFunctional, d: UEAElement) -> GMCFunctional:
    dt = uea_transpose(d)
    return F._chain(lambda f: f.left_derive(dt), f"left-derived({d})")


def right_derive(F: GMCFunctional, d: UEAElement) -> GMCFunctional:
    da = uea_antipode(d, F.model.structure.delta)
    return F._chain(lambda f: f.right_derive(da), f"right-derived({d})")


def smooth_function_view(F: GMCFunctional) -> Callable:
    """Pointwise evaluator g -> <pi(g) phi, psi>.

    Needs a summable pair (at least one side rapid-decay); each model may
    impose a stricter requirement on its own pointwise route.
    """
    if (
        F.phi.growth is not GrowthClass.RAPID_DECAY
        and F.psi.growth is not GrowthClass.RAPID_DECAY
    ):
        raise PreconditionError("smooth view requires a rapid-decay vector on one side")
    if F.transform is not None:
        raise PreconditionError("smooth view is defined for direct functionals only")
    return F.model.pointwise_coefficient(F.phi, F.psi)


def orthogonality_test(
    phi: CoefficientVector,
    psi: CoefficientVector,
    probes: Sequence,
    model: GroupModel,
    tol: float = 1e-10,
    **eval_options,
) -> tuple[bool, float]:
    """True when every probe evaluation vanishes below tol; reports the max."""
    if not probes:
        raise PreconditionError("need at least one probe test function")
    F = gmc_functional(phi, psi, model, **eval_options)
    worst = max(abs(F(f)) for f in probes)
    return worst < tol, worst


def semi_invariance_residual(
    phi: CoefficientVector,
    subgroup_samples: Sequence,
    chi: Callable,
    psi: CoefficientVector,
    f,
    model: GroupModel,
    **eval_options,
) -> float:
    """max_h |F(R(h^{-1}) f) - chi(h) F(f)| over the sampled subgroup."""
    F = gmc_functional(phi, psi, model, **eval_options)
    base = F(f)
    worst = 0.0
    for h in subgroup_samples:
        shifted = right_translate(F, h)(f)
        worst = max(worst, abs(shifted - chi(h) * base))
    return worst
