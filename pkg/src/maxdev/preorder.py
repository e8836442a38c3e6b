"""Finite preordered spaces with the discrete topology.

A space is a finite set {0, ..., n-1} with a reflexive transitive relation
``leq``.  Under the discrete topology every subset is clopen, so the three
families "open upward-closed", "closed upward-closed" and "compactly
generated closed upward-closed" all collapse to the single family of
up-sets, and every increasing function is both lower and upper
semicontinuous.  The neighborhood base at x is {{x}}.  This collapse is what
makes every statement about concentrations exactly checkable here; the
topological distinctions only matter on the Euclidean-grid backend.

The increasing envelope is computed as f^(x) = min_{y >= x} f(y): with
semicontinuity vacuous this is the greatest increasing function below f.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .extreal import validate_no_nan

UPSET_ENUMERATION_CAP = 16


class PreorderError(ValueError):
    pass


def _transitive_reflexive_closure(mat):
    """Boolean Warshall saturation of a relation matrix."""
    n = mat.shape[0]
    closed = mat.copy()
    np.fill_diagonal(closed, True)
    for k in range(n):
        closed |= np.outer(closed[:, k], closed[k, :])
    return closed


class FinitePreorder:
    """Finite set with a reflexive-transitive order table.

    ``leq[x, y]`` reads "x <= y".  The relation is validated at
    construction; use :meth:`from_edges` to build from generating pairs
    (the closure is computed for you).
    """

    def __init__(self, leq):
        leq = np.asarray(leq, dtype=bool)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise PreorderError("leq must be a square boolean matrix")
        n = leq.shape[0]
        if n == 0:
            raise PreorderError("empty space not supported")
        if not leq.diagonal().all():
            raise PreorderError("relation is not reflexive")
        comp = leq.astype(np.uint8)
        if ((comp @ comp > 0) & ~leq).any():
            raise PreorderError("relation is not transitive")
        leq.setflags(write=False)
        self.size = n
        self.leq = leq
        # Principal closures as bitmasks: bit y of up_masks[x] <=> x <= y.
        self.up_masks = tuple(
            int(sum(1 << y for y in range(n) if leq[x, y])) for x in range(n)
        )
        self.down_masks = tuple(
            int(sum(1 << y for y in range(n) if leq[y, x])) for x in range(n)
        )
        self.full_mask = (1 << n) - 1
        self._upset_family = None

    @classmethod
    def from_edges(cls, n, edges):
        """Space generated by `x <= y` pairs; saturation is constructive."""
        if n <= 0:
            raise PreorderError("size must be positive")
        mat = np.zeros((n, n), dtype=bool)
        for x, y in edges:
            if not (0 <= x < n and 0 <= y < n):
                raise PreorderError(f"edge ({x}, {y}) out of range for size {n}")
            mat[x, y] = True
        return cls(_transitive_reflexive_closure(mat))

    @classmethod
    def chain(cls, n):
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n):
        return cls.from_edges(n, [])

    @classmethod
    def vee(cls):
        """Three elements o=0, a=1, b=2 with o <= a and o <= b."""
        return cls.from_edges(3, [(0, 1), (0, 2)])

    @classmethod
    def diamond(cls):
        """Four elements o=0, a=1, b=2, t=3 with o below a, b below t."""
        return cls.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])

    def __eq__(self, other):
        return isinstance(other, FinitePreorder) and np.array_equal(
            self.leq, other.leq
        )

    def __hash__(self):
        return hash((self.size, self.leq.tobytes()))

    def __repr__(self):
        return f"FinitePreorder(size={self.size}, relations={self.relation_pairs()})"

    def relation_pairs(self):
        """Non-reflexive pairs (x, y) with x <= y, for display/serialization."""
        return [
            (x, y)
            for x in range(self.size)
            for y in range(self.size)
            if x != y and self.leq[x, y]
        ]

    # -- text format ------------------------------------------------------
    # First line: n.  Each following non-empty line: "x <= y".

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise PreorderError("empty poset text")
        try:
            n = int(lines[0])
        except ValueError as exc:
            raise PreorderError(f"first line must be the size, got {lines[0]!r}") from exc
        edges = []
        for ln in lines[1:]:
            parts = ln.split("<=")
            if len(parts) != 2:
                raise PreorderError(f"malformed relation line {ln!r}")
            try:
                x, y = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise PreorderError(f"malformed relation line {ln!r}") from exc
            edges.append((x, y))
        return cls.from_edges(n, edges)

    def to_text(self):
        lines = [str(self.size)]
        lines += [f"{x} <= {y}" for x, y in self.relation_pairs()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Subset:
    """Subset of a space of given size, stored as a bitmask."""

    size: int
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.size):
            raise PreorderError("subset mask out of range for space size")

    @classmethod
    def from_indices(cls, size, indices):
        mask = 0
        for i in indices:
            if not 0 <= i < size:
                raise PreorderError(f"element {i} out of range for size {size}")
            mask |= 1 << i
        return cls(size, mask)

    @classmethod
    def from_members(cls, members):
        members = list(members)
        return cls.from_indices(
            len(members), [i for i, b in enumerate(members) if b]
        )

    @classmethod
    def from_string(cls, s):
        """Parse a membership string like "0110" (index 0 first)."""
        if any(ch not in "01" for ch in s):
            raise PreorderError(f"bad membership string {s!r}")
        return cls.from_indices(len(s), [i for i, ch in enumerate(s) if ch == "1"])

    @classmethod
    def empty(cls, size):
        return cls(size, 0)

    @classmethod
    def full(cls, size):
        return cls(size, (1 << size) - 1)

    def indices(self):
        return [i for i in range(self.size) if (self.mask >> i) & 1]

    def members(self):
        return tuple(bool((self.mask >> i) & 1) for i in range(self.size))

    def to_string(self):
        return "".join("1" if (self.mask >> i) & 1 else "0" for i in range(self.size))

    def cardinality(self):
        return bin(self.mask).count("1")

    def __contains__(self, i):
        return bool((self.mask >> i) & 1)

    def __len__(self):
        return self.cardinality()

    def union(self, other):
        self._check(other)
        return Subset(self.size, self.mask | other.mask)

    def intersection(self, other):
        self._check(other)
        return Subset(self.size, self.mask & other.mask)

    def complement(self):
        return Subset(self.size, self.mask ^ ((1 << self.size) - 1))

    def issubset(self, other):
        self._check(other)
        return self.mask & ~other.mask == 0

    def _check(self, other):
        if self.size != other.size:
            raise PreorderError("subset size mismatch")

    def __repr__(self):
        return f"Subset({self.to_string()!r})"


def _check_space(space, subset):
    if subset.size != space.size:
        raise PreorderError(
            f"subset of size {subset.size} does not belong to space of size {space.size}"
        )


def up_closure(space, subset):
    """Smallest up-set containing the subset."""
    _check_space(space, subset)
    mask = 0
    for x in subset.indices():
        mask |= space.up_masks[x]
    return Subset(space.size, mask)


def down_closure(space, subset):
    """Smallest down-set containing the subset."""
    _check_space(space, subset)
    mask = 0
    for x in subset.indices():
        mask |= space.down_masks[x]
    return Subset(space.size, mask)


def is_up_set(space, subset):
    _check_space(space, subset)
    return up_closure(space, subset).mask == subset.mask


def is_down_set(space, subset):
    _check_space(space, subset)
    return down_closure(space, subset).mask == subset.mask


def _canonical_key(size, mask):
    # Cardinality first, then the membership vector (index 0 first) lexicographically.
    return (bin(mask).count("1"), tuple((mask >> i) & 1 for i in range(size)))


class UpSetFamily:
    """All up-sets of a space, in a deterministic canonical order.

    Contains the empty set and the full set; ordering is by cardinality and
    then lexicographic membership vector, so value tables indexed by this
    family reproduce across runs.
    """

    def __init__(self, space, masks):
        self.space = space
        self.masks = tuple(sorted(set(masks), key=lambda m: _canonical_key(space.size, m)))
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.subsets = tuple(Subset(space.size, m) for m in self.masks)

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return iter(self.subsets)

    def __contains__(self, subset):
        return subset.mask in self.index

    def position(self, subset):
        try:
            return self.index[subset.mask]
        except KeyError:
            raise PreorderError(f"{subset!r} is not an up-set of this space") from None


def enumerate_up_sets(space, cap=UPSET_ENUMERATION_CAP):
    """Family of all S with up_closure(S) == S.

    The family can be exponential in the space size (2^n for an antichain),
    so spaces above `cap` are rejected.
    """
    if space.size > cap:
        raise PreorderError(
            f"space size {space.size} exceeds up-set enumeration cap {cap}"
        )
    if space._upset_family is not None:
        return space._upset_family
    ups = space.up_masks
    masks = []
    for mask in range(1 << space.size):
        closed = 0
        rest = mask
        while rest:
            low = rest & -rest
            closed |= ups[low.bit_length() - 1]
            rest ^= low
        if closed == mask:
            masks.append(mask)
    family = UpSetFamily(space, masks)
    space._upset_family = family
    return family


def is_increasing(space, f):
    """True iff x <= y implies f(x) <= f(y).  Values may be -inf."""
    f = validate_no_nan(f, "function values")
    if f.shape != (space.size,):
        raise PreorderError("function length does not match space size")
    bad = space.leq & (f[:, None] > f[None, :])
    return not bad.any()


def increasing_envelope(space, f):
    """Greatest increasing function below f: f^(x) = min_{y >= x} f(y)."""
    f = validate_no_nan(f, "function values")
    if f.shape != (space.size,):
        raise PreorderError("function length does not match space size")
    return np.array([f[space.leq[x]].min() for x in range(space.size)])
