"""Concentrations, capacities, and their Shilkret / maxitive integrals.

A concentration J maps up-sets to [-inf, 0] with J of the empty set -inf,
J of the full set 0, and monotonicity under inclusion; exp(J) is a capacity.
Capacities are stored in log-domain internally (as the concentration) and
exponentiated only at the interface, so values like exp(-700) survive a
round trip exactly.

Both integrals are suprema over a continuum of cut levels; on a finite
space each supremum collapses to a maximum over the distinct values of the
integrand, because the level set {f > c} equals {f >= v} for every c just
below the next value v.  ``maxitive_integral`` evaluates the sup through
both level-set constructions (strict and non-strict) and insists they
agree, which is the finite-backend form of the statement that the two
defining branches of the integral coincide for functions that are both
increasing-lsc and increasing-usc.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .extreal import NEG_INF, validate_no_nan
from .preorder import (
    FinitePreorder,
    PreorderError,
    Subset,
    enumerate_up_sets,
    is_increasing,
    up_closure,
)


class MaxitiveError(ValueError):
    pass


_MONOTONE_ATOL = 1e-12


class Concentration:
    """Monotone set function J: up-sets -> [-inf, 0].

    Values are supplied as a mapping from up-set masks (or Subsets) to
    floats and validated exhaustively: endpoint normalization exact,
    monotonicity up to a 1e-12 slack that absorbs float noise from numeric
    constructors (log-sum-exp based functionals), nothing else.
    """

    def __init__(self, space, values):
        self.space = space
        self.family = enumerate_up_sets(space)
        table = {}
        for key, val in values.items():
            mask = key.mask if isinstance(key, Subset) else int(key)
            table[mask] = float(val)
        missing = [m for m in self.family.masks if m not in table]
        if missing:
            raise MaxitiveError(f"missing values for {len(missing)} up-sets")
        extra = set(table) - set(self.family.masks)
        if extra:
            raise MaxitiveError("values supplied for sets that are not up-sets")
        vals = np.array([table[m] for m in self.family.masks], dtype=float)
        validate_no_nan(vals, "concentration values")
        # Clamp float dust at the endpoints, then enforce the contract.
        vals[np.abs(vals) <= _MONOTONE_ATOL] = 0.0
        if (vals > 0.0).any():
            raise MaxitiveError("concentration values must lie in [-inf, 0]")
        if vals[self.family.index[0]] != NEG_INF:
            raise MaxitiveError("J of the empty set must be -inf")
        if vals[self.family.index[self.space.full_mask]] != 0.0:
            raise MaxitiveError("J of the full set must be 0")
        masks = np.array(self.family.masks, dtype=np.int64)
        contained = (masks[:, None] & ~masks[None, :]) == 0
        with np.errstate(invalid="ignore"):
            bad = contained & (vals[:, None] > vals[None, :] + _MONOTONE_ATOL)
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            raise MaxitiveError(
                f"not monotone: J({Subset(space.size, int(masks[i])).to_string()}) = "
                f"{vals[i]} > J({Subset(space.size, int(masks[j])).to_string()}) = {vals[j]}"
            )
        vals.setflags(write=False)
        self.values = vals

    def __getitem__(self, subset):
        """J at an up-set (raises if the set is not upward closed)."""
        if isinstance(subset, Subset):
            mask = subset.mask
        else:
            mask = int(subset)
        try:
            return float(self.values[self.family.index[mask]])
        except KeyError:
            raise MaxitiveError(
                f"{Subset(self.space.size, mask).to_string()} is not an up-set"
            ) from None

    def items(self):
        return zip(self.family.subsets, self.values)

    def __eq__(self, other):
        return (
            isinstance(other, Concentration)
            and self.space == other.space
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        pairs = ", ".join(f"{s.to_string()}: {v:g}" for s, v in self.items())
        return f"Concentration({pairs})"

    def principal_values(self):
        """Vector x -> J of the principal up-set of x."""
        return np.array(
            [self[Subset(self.space.size, self.space.up_masks[x])] for x in range(self.space.size)]
        )


class Capacity:
    """Capacity Pi = exp(J); stores J and exponentiates at the interface."""

    def __init__(self, concentration):
        self.concentration = concentration
        self.space = concentration.space
        self.family = concentration.family

    @classmethod
    def from_probabilities(cls, space, values):
        """Build from set probabilities in [0, 1]; 0 maps to J = -inf exactly."""
        logvals = {}
        for key, val in values.items():
            v = float(val)
            if not 0.0 <= v <= 1.0:
                raise MaxitiveError("capacity values must lie in [0, 1]")
            logvals[key] = math.log(v) if v > 0.0 else NEG_INF
        return cls(Concentration(space, logvals))

    def __getitem__(self, subset):
        return math.exp(self.concentration[subset])

    @property
    def values(self):
        return np.exp(self.concentration.values)


def capacity_from_concentration(concentration):
    return Capacity(concentration)


def concentration_from_capacity(capacity):
    return capacity.concentration


def _distinct_finite_values(f):
    vals = sorted({float(v) for v in f if v > NEG_INF})
    return vals


def _geq_mask(f, v):
    return int(sum(1 << i for i, fv in enumerate(f) if fv >= v))


def _gt_mask(f, v):
    return int(sum(1 << i for i, fv in enumerate(f) if fv > v))


def shilkret_integral(capacity, f):
    """sup_{c > 0} c * Pi({f > c}) for a nonnegative increasing f.

    Computed exactly as the max over distinct positive values v of f of
    v * Pi({f >= v}); level sets of increasing functions are up-sets.
    """
    space = capacity.space
    f = validate_no_nan(f, "integrand")
    if (f < 0).any():
        raise MaxitiveError("Shilkret integral requires a nonnegative integrand")
    if not is_increasing(space, f):
        raise MaxitiveError("integrand must be increasing")
    best = 0.0
    for v in _distinct_finite_values(f):
        if v <= 0.0:
            continue
        level = Subset(space.size, _geq_mask(f, v))
        best = max(best, v * capacity[level])
    return best


def maxitive_integral(concentration, f, check_increasing=True):
    """phi_J(f) = sup_c {c + J({f > c})} for increasing f, -inf values allowed.

    Evaluates the sup through the non-strict level sets {f >= v} and,
    independently, through the strict level sets {f > v} shifted one value
    up; the two must agree exactly on this backend.
    """
    space = concentration.space
    f = validate_no_nan(f, "integrand")
    if f.shape != (space.size,):
        raise MaxitiveError("integrand length does not match space size")
    if (f == np.inf).any():
        raise MaxitiveError("integrand must be bounded above by a real value")
    if check_increasing and not is_increasing(space, f):
        raise MaxitiveError("integrand must be increasing")
    vals = _distinct_finite_values(f)
    if not vals:
        return NEG_INF

    via_geq = NEG_INF
    for v in vals:
        via_geq = max(via_geq, v + concentration[_geq_mask(f, v)])

    via_gt = NEG_INF
    prev = NEG_INF
    for v in vals:
        via_gt = max(via_gt, v + concentration[_gt_mask(f, prev)])
        prev = v

    if via_geq != via_gt:
        raise MaxitiveError(
            f"level-set branches disagree: {via_geq} (>=) vs {via_gt} (>)"
        )
    return via_geq


def extended_concentration(concentration, subset):
    """J-bar(S) = min{J(B) : B up-set, S subset of B}; equals J(up-closure S).

    Both expressions are evaluated and compared before returning.
    """
    space = concentration.space
    if subset.size != space.size:
        raise PreorderError("subset size mismatch")
    via_closure = concentration[up_closure(space, subset)]
    via_min = min(
        (v for m, v in zip(concentration.family.masks, concentration.values)
         if subset.mask & ~m == 0),
        default=None,
    )
    if via_min is None or via_min != via_closure:
        raise MaxitiveError(
            f"extended concentration mismatch: min over covers {via_min}, "
            f"via up-closure {via_closure}"
        )
    return via_closure


def indicator_gauge(concentration, subset):
    """Recover J(A) from the integral: phi_J(-inf 1_{A^c}) and inf_r phi_J(r 1_{A^c}).

    Both evaluations are performed; they must agree with J(A) exactly.  The
    infimum over r < 0 equals max(r, J(A)) in the limit r -> -inf, so it is
    realized by evaluating at any r strictly below J(A) when J(A) is finite
    and reported as -inf otherwise.
    """
    space = concentration.space
    if subset not in concentration.family:
        raise MaxitiveError("indicator gauge requires an up-set")
    j_true = concentration[subset]

    f_hard = np.full(space.size, NEG_INF)
    f_hard[subset.indices()] = 0.0
    via_hard = maxitive_integral(concentration, f_hard)

    if j_true > NEG_INF:
        r = min(-1.0, j_true - 8.0)
        f_soft = np.full(space.size, r)
        f_soft[subset.indices()] = 0.0
        via_soft = maxitive_integral(concentration, f_soft)
    else:
        via_soft = NEG_INF

    if via_hard != j_true or via_soft != j_true:
        raise MaxitiveError(
            f"recovery identity failed: J = {j_true}, "
            f"hard indicator {via_hard}, soft limit {via_soft}"
        )
    return j_true


# -- serialization ---------------------------------------------------------
# {"poset": {"n": ..., "edges": [[x, y], ...]},
#  "upsets": ["000", "100", ...],            canonical order
#  "values": [number or "-inf", ...]}


def _render_value(v):
    if v == NEG_INF:
        return "-inf"
    return v


def _parse_value(v):
    if v == "-inf":
        return NEG_INF
    return float(v)


def concentration_to_dict(concentration):
    return {
        "poset": {
            "n": concentration.space.size,
            "edges": [list(e) for e in concentration.space.relation_pairs()],
        },
        "upsets": [s.to_string() for s in concentration.family.subsets],
        "values": [_render_value(float(v)) for v in concentration.values],
    }


def concentration_from_dict(data):
    try:
        poset = data["poset"]
        space = FinitePreorder.from_edges(
            int(poset["n"]), [tuple(e) for e in poset.get("edges", [])]
        )
        upsets = [Subset.from_string(s) for s in data["upsets"]]
        values = [_parse_value(v) for v in data["values"]]
    except (KeyError, TypeError) as exc:
        raise MaxitiveError(f"malformed concentration document: {exc}") from exc
    if len(upsets) != len(values):
        raise MaxitiveError("upsets and values have different lengths")
    family = enumerate_up_sets(space)
    given = [s.mask for s in upsets]
    if given != list(family.masks):
        raise MaxitiveError("upsets are not the canonical family of the poset")
    return Concentration(space, dict(zip(given, values)))


def concentration_to_json(concentration, indent=2):
    return json.dumps(concentration_to_dict(concentration), indent=indent)


def concentration_from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MaxitiveError(f"invalid JSON: {exc}") from exc
    return concentration_from_dict(data)
