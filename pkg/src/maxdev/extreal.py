"""Extended-real conventions shared across the package.

Values live in [-inf, +inf) almost everywhere (set functions in [-inf, 0],
rate functions in [0, +inf]).  Plain Python floats already implement the
conventions we need:

    c + (-inf) = -inf        max(-inf, c) = c        exp(-inf) = 0

The one arithmetic hole is inf - inf (NaN), which only shows up when we
compute signed gaps between two bounds that are both infinite.  ``gap``
closes that hole with the convention "equal infinities differ by zero",
so a gap >= 0 always means "the inequality lhs >= rhs holds".

The product convention -inf * 0 = 0 is never evaluated as arithmetic:
indicator-type functions are built by explicit placement of -inf (see
``indicator_fn``), exactly as the convention intends.
"""

import math

import numpy as np

NEG_INF = float("-inf")
POS_INF = float("inf")


def gap(lhs, rhs):
    """Signed gap lhs - rhs; >= 0 iff lhs >= rhs, with inf - inf := 0."""
    if lhs == rhs:
        return 0.0
    return lhs - rhs


def indicator_fn(size, members, on=0.0, off=NEG_INF):
    """Vector equal to `on` at members and `off` elsewhere.

    With the defaults this is the function written -inf * 1_{A^c}: zero on A
    and -inf off A.
    """
    f = np.full(size, off, dtype=float)
    f[list(members)] = on
    return f


def min_over(values, members):
    """min of values over an index set, +inf over the empty set."""
    members = list(members)
    if not members:
        return POS_INF
    return float(np.min(np.asarray(values, dtype=float)[members]))


def max_over(values, members):
    """max of values over an index set, -inf over the empty set."""
    members = list(members)
    if not members:
        return NEG_INF
    return float(np.max(np.asarray(values, dtype=float)[members]))


def validate_no_nan(values, what="values"):
    arr = np.asarray(values, dtype=float)
    if np.isnan(arr).any():
        raise ValueError(f"{what} contain NaN")
    return arr


def splitmix64(x):
    """SplitMix64 step; used to derive independent child seeds.

    Deterministic regardless of platform: per-cell seeds are
    splitmix64(root ^ (index * golden)), so parallel execution order cannot
    change any stream.
    """
    mask = (1 << 64) - 1
    x = (x + 0x9E3779B97F4A7C15) & mask
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & mask
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & mask
    return x ^ (x >> 31)


def derive_seed(root, *indices):
    """Child seed from a root seed and one or more cell indices."""
    s = int(root) & ((1 << 64) - 1)
    for k in indices:
        s = splitmix64(s ^ ((int(k) * 0x9E3779B97F4A7C15) & ((1 << 64) - 1)))
    return s


def isclose_ext(a, b, tol=0.0):
    """Equality of extended reals; infinities must match sign exactly."""
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol
