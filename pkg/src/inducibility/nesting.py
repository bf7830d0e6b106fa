"""Profiles of nested compositions.

Iterating G composed into itself converges to a limit object whose
repetitive profile is a stationary distribution: grouping the t sampled
vertices by their outermost coordinate splits the density into an outer
induced density times an inner marginal, which is linear in the inner
profile.  The induced map on type distributions is column stochastic and
its fixed point in the simplex is the profile of the infinitely nested
construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import masks
from .graphs import LabeledGraph, graph6_encode
from .linalg import solve_rational_kernel
from .models import from_graph
from .profiles import (
    LabeledProfile,
    ProfileVector,
    iso_table,
    labeled_induced_values,
    labeled_repetitive_profile,
)
from .spectral import SpectralProfile, fourier


class DegenerateStationaryError(RuntimeError):
    """The fixed-point space of the nesting map is not one dimensional."""


@lru_cache(maxsize=None)
def _outer_densities(G: LabeledGraph, ell: int) -> tuple:
    return labeled_induced_values(G, ell)


def compose_profile(G: LabeledGraph, inner: LabeledProfile) -> LabeledProfile:
    """Labeled repetitive profile of G composed over an inner limit with
    labeled profile `inner`.

    Sampled vertices sharing an outer coordinate form the parts of a
    partition; cross-part adjacency must be uniform per part pair and
    follow an induced pattern of G, while within-part adjacency marginalizes
    the inner profile.
    """
    if not G.is_loopless:
        raise ValueError("composition is defined over loopless outer graphs")
    if inner.flavor != "r":
        raise ValueError("inner profile must be repetitive")
    t = inner.t
    s = G.n
    m = masks.slot_count(t)
    zero = inner.values[0] * 0
    out = [zero] * (1 << m)
    st = s ** t
    for pt in masks.partition_tables(t):
        ell = pt.size
        falling = math.perm(s, ell)
        if falling == 0:
            continue
        coef = Fraction(falling, st)
        outer = _outer_densities(G, ell)
        within = pt.within_mask
        marg: dict = {}
        for mask, value in enumerate(inner.values):
            key = mask & within
            marg[key] = marg.get(key, zero) + value
        adm = pt.admissible
        quo = pt.quotient
        for mask in range(1 << m):
            if not adm[mask]:
                continue
            outer_prob = outer[quo[mask]]
            if outer_prob == 0:
                continue
            out[mask] += coef * outer_prob * marg[mask & within]
    return LabeledProfile(t=t, flavor="r", values=tuple(out), exact=inner.exact)


def iterate_profile(G: LabeledGraph, t: int, n: int) -> LabeledProfile:
    """Labeled repetitive t-profile of G composed into itself n times."""
    if n < 1:
        raise ValueError("need at least one composition level")
    lab = labeled_repetitive_profile(from_graph(G), t)
    for _ in range(n - 1):
        lab = compose_profile(G, lab)
    return lab


@dataclass(frozen=True)
class TransitionMatrix:
    """Column-stochastic action of one nesting step on type distributions."""

    t: int
    base: str
    rows: tuple

    def __post_init__(self):
        size = len(iso_table(self.t).entries)
        if len(self.rows) != size or any(len(r) != size for r in self.rows):
            raise ValueError("matrix shape does not match the type table")
        for j in range(size):
            if sum(self.rows[i][j] for i in range(size)) != 1:
                raise ValueError("columns must sum to one")

    def apply(self, values) -> tuple:
        return tuple(
            sum(r * v for r, v in zip(row, values) if v != 0) for row in self.rows
        )

    def entry(self, i: int, j: int):
        return self.rows[i][j]


def _spread(t: int, type_index: int) -> LabeledProfile:
    table = iso_table(t)
    e = table.entries[type_index]
    vals = [Fraction(0)] * (1 << masks.slot_count(t))
    share = Fraction(1, e.orbit_size)
    for mask in e.orbit:
        vals[mask] = share
    return LabeledProfile(t=t, flavor="r", values=tuple(vals), exact=True)


@lru_cache(maxsize=None)
def transition_matrix(G: LabeledGraph, t: int) -> TransitionMatrix:
    """Matrix F with F[i][j] = density of type i after composing G over a
    limit concentrated on type j."""
    table = iso_table(t)
    size = len(table.entries)
    cols = []
    for j in range(size):
        composed = compose_profile(G, _spread(t, j))
        cols.append(composed.to_unlabeled().values)
    rows = tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))
    return TransitionMatrix(t=t, base=graph6_encode(G), rows=rows)


@dataclass(frozen=True)
class NestedProfile:
    """Stationary type distribution of iterated composition of a base."""

    base: str
    profile: ProfileVector
    matrix: TransitionMatrix

    @property
    def t(self) -> int:
        return self.profile.t

    def entry(self, key):
        return self.profile.entry(key)


def stationary_profile(G: LabeledGraph, t: int) -> NestedProfile:
    """Unique fixed point of the nesting map of G in the simplex.

    Raises DegenerateStationaryError when the fixed-point space does not
    pin down a single distribution.
    """
    F = transition_matrix(G, t)
    size = len(F.rows)
    shifted = [
        [F.rows[i][j] - (1 if i == j else 0) for j in range(size)] for i in range(size)
    ]
    basis = solve_rational_kernel(shifted)
    if len(basis) != 1:
        raise DegenerateStationaryError(
            f"fixed-point space has dimension {len(basis)}"
        )
    vec = basis[0]
    total = sum(vec)
    if total == 0:
        raise DegenerateStationaryError("fixed vector has zero total mass")
    q = [v / total for v in vec]
    if any(v < 0 for v in q):
        raise DegenerateStationaryError("fixed vector leaves the simplex")
    values = tuple(q)
    if F.apply(values) != values:
        raise AssertionError("stationary residual is nonzero")
    profile = ProfileVector(t=t, flavor="repetitive", values=values)
    return NestedProfile(base=F.base, profile=profile, matrix=F)


def nested_spectral(G: LabeledGraph, t: int) -> SpectralProfile:
    """Transform of the stationary profile of nested composition of G."""
    return fourier(stationary_profile(G, t).profile)
