"""Seeded random instances: preorders, concentrations, increasing functions.

Everything is driven by numpy Generators seeded through the splitmix
derivation in ``extreal``, so a root seed fully determines a suite run.

Weakly maxitive concentrations are generated from their principal values:
on the finite backend a concentration is weakly maxitive exactly when
J(A) = max_{x in A} J(up{x}), so sampling a decreasing principal vector s
with max 0 and extending by maxima produces the whole class.  General
monotone concentrations are sampled upward through the canonical family,
which also produces non-maxitive instances (the interesting ones).
"""

from __future__ import annotations

import numpy as np

from .extreal import NEG_INF, derive_seed
from .maxitive import Concentration
from .preorder import (
    FinitePreorder,
    Subset,
    enumerate_up_sets,
    increasing_envelope,
)


def rng_for(root_seed, *indices):
    return np.random.default_rng(derive_seed(root_seed, *indices))


def random_preorder(rng, size, edge_prob=None):
    """Random reflexive-transitive relation; cycles are allowed (preorder)."""
    if edge_prob is None:
        edge_prob = float(rng.uniform(0.1, 0.5))
    edges = [
        (x, y)
        for x in range(size)
        for y in range(size)
        if x != y and rng.random() < edge_prob
    ]
    return FinitePreorder.from_edges(size, edges)


def random_weakly_maxitive_concentration(rng, space, neg_inf_prob=0.15):
    """J(A) = max over A of a decreasing principal score vector with max 0."""
    n = space.size
    scores = -increasing_envelope(space, rng.uniform(0.0, 5.0, size=n))
    scores = scores - scores.max()
    family = enumerate_up_sets(space)
    if n > 1 and rng.random() < neg_inf_prob:
        # Scores set to -inf on a proper up-set make J = -inf on every
        # up-set inside it; J_A = max_A s stays weakly maxitive for any s.
        subset = family.subsets[int(rng.integers(len(family)))]
        if 0 < subset.cardinality() < n:
            scores = scores.copy()
            for i in subset.indices():
                scores[i] = NEG_INF
            scores = scores - scores.max()
    values = {}
    for subset in family:
        if subset.mask == 0:
            values[subset.mask] = NEG_INF
        else:
            values[subset.mask] = float(max(scores[i] for i in subset.indices()))
    return Concentration(space, values)


def random_concentration(rng, space, neg_inf_prob=0.2):
    """General monotone set function sampled upward through the family."""
    family = enumerate_up_sets(space)
    values = {0: NEG_INF}
    masks = np.array(family.masks, dtype=np.int64)
    for mask in family.masks:
        if mask == 0:
            continue
        below = [values[int(m)] for m in masks if m != mask and m & ~mask == 0]
        floor = max(below) if below else NEG_INF
        if mask == space.full_mask:
            values[mask] = 0.0
        elif floor == NEG_INF and rng.random() < neg_inf_prob:
            values[mask] = NEG_INF
        else:
            lo = floor if floor > NEG_INF else -6.0
            values[mask] = float(rng.uniform(lo, 0.0))
    return Concentration(space, values)


def random_increasing_fn(rng, space, lo=-5.0, hi=5.0, neg_inf_prob=0.25):
    """Increasing function, possibly with a -inf plateau off a random up-set."""
    f = increasing_envelope(space, rng.uniform(lo, hi, size=space.size))
    if rng.random() < neg_inf_prob:
        family = enumerate_up_sets(space)
        subset = family.subsets[int(rng.integers(len(family)))]
        if subset.mask != 0:
            f = f.copy()
            for i in range(space.size):
                if i not in subset:
                    f[i] = NEG_INF
    return f


def indicator_functions(space):
    """The functions -inf off A, 0 on A for every nonempty up-set A."""
    fns = []
    for subset in enumerate_up_sets(space):
        if subset.mask == 0:
            continue
        f = np.full(space.size, NEG_INF)
        f[subset.indices()] = 0.0
        fns.append(f)
    return fns


def random_rate_vector(rng, space, hi=4.0, increasing_prob=0.5, inf_prob=0.1):
    """Nonnegative candidate rate; increasing with the given probability."""
    raw = rng.uniform(0.0, hi, size=space.size)
    if rng.random() < increasing_prob:
        raw = increasing_envelope(space, raw)
        raw = raw - raw.min()
    if rng.random() < inf_prob:
        family = enumerate_up_sets(space)
        subset = family.subsets[int(rng.integers(len(family)))]
        if subset.mask not in (0, space.full_mask):
            raw = raw.copy()
            for i in subset.indices():
                raw[i] = np.inf
    return raw


def test_function_pool(rng, space, count, include_indicators=True):
    """Mixed pool of increasing functions for Laplace-principle checks.

    Indicator-type functions are included deliberately: they realize the
    set-level bounds inside the integral-level ones, which is what makes
    the bound equivalences exactly checkable on sampled families.
    """
    fns = []
    if include_indicators:
        fns.extend(indicator_functions(space))
    while len(fns) < count:
        fns.append(random_increasing_fn(rng, space))
    return fns[:count]
