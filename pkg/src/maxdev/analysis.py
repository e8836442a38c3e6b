"""Weak maxitivity, minimal rate functions, and the bound equivalences.

On the finite discrete backend an up-set A can always be covered by the
principal up-sets of its own elements, and any finite cover refines to
those, so weak maxitivity reduces to the principal-cover criterion

    J(A) <= max_{x in A} J(up{x})        for every nonempty up-set A.

This criterion is equivalent to the upper set-level bound holding for the
minimal rate function I_min(x) = -J(up{x}), and (because every set here is
simultaneously open, closed and compactly generated) weak maxitivity,
finite maxitivity and complete maxitivity all coincide.  The equivalence
with genuine cover enumeration is cross-validated in the test suite.

Gap sign convention: every reported gap is >= 0 exactly when the
corresponding inequality holds, with "equal infinities differ by zero".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .extreal import NEG_INF, POS_INF, gap, min_over, validate_no_nan
from .maxitive import MaxitiveError, maxitive_integral
from .preorder import Subset, is_increasing, increasing_envelope, up_closure

MLP_TOL = 1e-9


@dataclass
class MaxitivityWitness:
    """A violating cover: A together with up-sets whose max J falls short."""

    set: Subset
    cover: list
    lhs: float
    rhs: float


@dataclass
class MaxitivityReport:
    verdict: bool
    witness: Optional[MaxitivityWitness] = None


@dataclass
class BoundReport:
    """Outcome of checking a lower/upper bound family.

    Gaps are signed so that >= 0 means the bound holds; the worst gap is
    the minimum over the checked family.
    """

    lower_ok: bool
    upper_ok: bool
    worst_gap_lower: float
    worst_gap_upper: float
    lower_witness: Optional[object] = None
    upper_witness: Optional[object] = None


def principal_cover_values(concentration, subset):
    """J over the principal up-sets of the elements of a set."""
    space = concentration.space
    return [
        concentration[Subset(space.size, space.up_masks[x])] for x in subset.indices()
    ]


def is_weakly_maxitive(concentration):
    """Principal-cover criterion for weak maxitivity, with witness on failure."""
    space = concentration.space
    for subset, value in concentration.items():
        if subset.mask == 0:
            continue
        best = max(principal_cover_values(concentration, subset))
        if value > best:
            cover = [
                Subset(space.size, space.up_masks[x]) for x in subset.indices()
            ]
            return MaxitivityReport(
                False, MaxitivityWitness(subset, cover, float(value), float(best))
            )
    return MaxitivityReport(True)


def minimal_rate(concentration):
    """I_min(x) = -J(up{x}); increasing and nonnegative by construction."""
    return -concentration.principal_values()


def possibility_distribution(rate):
    """Pointwise pi = exp(-I)."""
    return np.exp(-np.asarray(rate, dtype=float))


def _validate_rate(space, rate):
    rate = validate_no_nan(rate, "rate function")
    if rate.shape != (space.size,):
        raise MaxitiveError("rate function length does not match space size")
    if (rate < 0).any():
        raise MaxitiveError("rate function must be nonnegative")
    return rate


def check_mldp(concentration, rate):
    """Set-level bounds: -min_O I <= J_O (lower) and J_C <= -min_C I (upper).

    On this backend open and closed up-sets coincide, so both sides range
    over the same family.  The empty set is skipped (both bounds hold
    vacuously there).
    """
    rate = _validate_rate(concentration.space, rate)
    worst_lower, worst_upper = POS_INF, POS_INF
    lower_wit = upper_wit = None
    for subset, value in concentration.items():
        if subset.mask == 0:
            continue
        neg_inf_rate = -min_over(rate, subset.indices())
        g_lower = gap(float(value), neg_inf_rate)
        if g_lower < worst_lower:
            worst_lower, lower_wit = g_lower, subset
        g_upper = gap(neg_inf_rate, float(value))
        if g_upper < worst_upper:
            worst_upper, upper_wit = g_upper, subset
    return BoundReport(
        lower_ok=worst_lower >= 0,
        upper_ok=worst_upper >= 0,
        worst_gap_lower=worst_lower,
        worst_gap_upper=worst_upper,
        lower_witness=lower_wit,
        upper_witness=upper_wit,
    )


def varadhan_gap(concentration, rate, f):
    """(lower_gap, upper_gap) between phi_J(f) and sup{f - I} for one f."""
    rate = _validate_rate(concentration.space, rate)
    f = np.asarray(f, dtype=float)
    phi = maxitive_integral(concentration, f)
    best = float(np.max(f - rate))
    return gap(phi, best), gap(best, phi)


def check_mlp(concentration, rate, fns):
    """Integral-level bounds phi_J(f) vs sup{f - I} over a list of increasing f.

    Reports the worst signed lower and upper gaps separately; with the
    minimal rate of a weakly maxitive concentration both worst gaps are
    zero up to MLP_TOL.
    """
    space = concentration.space
    worst_lower, worst_upper = POS_INF, POS_INF
    lower_wit = upper_wit = None
    for k, f in enumerate(fns):
        if not is_increasing(space, f):
            raise MaxitiveError(f"test function #{k} is not increasing")
        g_lower, g_upper = varadhan_gap(concentration, rate, f)
        if g_lower < worst_lower:
            worst_lower, lower_wit = g_lower, k
        if g_upper < worst_upper:
            worst_upper, upper_wit = g_upper, k
    return BoundReport(
        lower_ok=worst_lower >= -MLP_TOL,
        upper_ok=worst_upper >= -MLP_TOL,
        worst_gap_lower=worst_lower,
        worst_gap_upper=worst_upper,
        lower_witness=lower_wit,
        upper_witness=upper_wit,
    )


@dataclass
class MinimalityReport:
    """Minimality of a candidate rate relative to I_min.

    ``lower_bound_ok`` is the precondition (set-level lower bound for the
    candidate).  When the lower bound holds, I_min <= envelope(I) must hold;
    when the upper bound holds, envelope(I) <= I_min must hold.  Both
    directions are evaluated and reported; ``minimal`` is the headline
    verdict I >= I_min given the precondition.
    """

    lower_bound_ok: bool
    upper_bound_ok: bool
    envelope_dominates_min: Optional[bool]
    min_dominates_envelope: Optional[bool]
    minimal: Optional[bool]


def rate_minimality_check(concentration, rate):
    rate = _validate_rate(concentration.space, rate)
    bounds = check_mldp(concentration, rate)
    env = increasing_envelope(concentration.space, rate)
    imin = minimal_rate(concentration)
    min_le_env = bool(np.all(imin <= env)) if bounds.lower_ok else None
    env_le_min = bool(np.all(env <= imin)) if bounds.upper_ok else None
    minimal = bool(np.all(rate >= imin)) if bounds.lower_ok else None
    return MinimalityReport(
        lower_bound_ok=bounds.lower_ok,
        upper_bound_ok=bounds.upper_ok,
        envelope_dominates_min=min_le_env,
        min_dominates_envelope=env_le_min,
        minimal=minimal,
    )


@dataclass
class TightnessCase:
    closed_set: Subset
    compact_set: Subset
    epsilon: float
    truncated_upset: Subset
    holds: bool
    lhs: float
    rhs: float


@dataclass
class TightnessReport:
    tight: bool
    cases: list = field(default_factory=list)


def tightness_check(concentration, cases=None):
    """Tightness J_C <= (J(up(C n K)) + eps) v (-1/eps) for supplied triples.

    With no cases supplied the full set serves as a universal compact
    witness on a finite space (C n E = C for every closed up-set C), so the
    concentration is reported tight outright.  The search for a good K
    given (C, eps) is not part of the contract; callers supply the triples.
    """
    space = concentration.space
    if cases is None:
        return TightnessReport(True, [])
    results = []
    for closed_set, compact_set, eps in cases:
        if eps <= 0:
            raise MaxitiveError("epsilon must be positive")
        if closed_set not in concentration.family:
            raise MaxitiveError("C must be an up-set on this backend")
        truncated = up_closure(space, closed_set.intersection(compact_set))
        lhs = concentration[closed_set]
        rhs = max(concentration[truncated] + eps, -1.0 / eps)
        results.append(
            TightnessCase(
                closed_set, compact_set, float(eps), truncated, lhs <= rhs, lhs, rhs
            )
        )
    return TightnessReport(all(c.holds for c in results), results)
