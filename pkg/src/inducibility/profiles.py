"""Profiles of small induced subgraphs.

The induced t-profile of a graph counts isomorphism types over t-subsets;
the repetitive t-profile of a step model samples t vertices independently
with replacement, so collisions contribute and loops matter.  Both reduce
to labeled densities indexed by edge-slot masks, and the two flavors are
linked by an exact partition identity implemented here.

Orders 2 through 5 are supported; the 4-vertex basis order is fixed as
K4, A4, T4, S4, M4, C4, Q4, V4, D4, E4, P4 and is part of the
serialization contract.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import masks
from .graphs import (
    LabeledGraph,
    build_named,
    canonical_form,
    CanonicalCode,
    graph6_encode,
    graph_from_mask,
    mask_of,
)
from .models import StepModel

MIN_ORDER = 2
MAX_ORDER = 5
DEFAULT_SUBSET_BUDGET = 10 ** 9
DEFAULT_ASSIGNMENT_BUDGET = 10 ** 10
DIRECT_ASSIGNMENT_CUTOFF = 200_000
MC_SHARDS = 32

TYPE_NAMES_4 = ("K4", "A4", "T4", "S4", "M4", "C4", "Q4", "V4", "D4", "E4", "P4")
_APPROX_TOL = 1e-9


class BudgetError(RuntimeError):
    """Exact enumeration would exceed the configured budget."""


def _check_order(t: int) -> None:
    if not MIN_ORDER <= t <= MAX_ORDER:
        raise ValueError(f"profile order must be in {MIN_ORDER}..{MAX_ORDER}")


@dataclass(frozen=True)
class IsoEntry:
    """One isomorphism type: representative mask, orbit and certificate."""

    name: str
    rep_mask: int
    orbit: tuple[int, ...]
    orbit_size: int
    aut_count: int
    code: CanonicalCode

    def edge_count(self) -> int:
        return self.rep_mask.bit_count()


@dataclass(frozen=True)
class IsoTable:
    """Isomorphism types of order t with the mask-to-type index."""

    t: int
    entries: tuple[IsoEntry, ...]
    index: tuple[int, ...]
    names: dict

    def entry(self, key) -> IsoEntry:
        return self.entries[self.type_index(key)]

    def type_index(self, key) -> int:
        if isinstance(key, int):
            return key
        if key in self.names:
            return self.names[key]
        raise KeyError(f"unknown type name {key!r} at order {self.t}")

    def type_of_graph(self, G: LabeledGraph) -> int:
        if G.n != self.t:
            raise ValueError("graph order does not match the table")
        if not G.is_loopless:
            raise ValueError("profile types are loopless")
        return self.index[mask_of(G)]

    def type_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)


@lru_cache(maxsize=None)
def iso_table(t: int) -> IsoTable:
    _check_order(t)
    raw_index, orbits = masks.orbit_index(t)
    order: list[int]
    names: list[str]
    if t == 2:
        order = [raw_index[1], raw_index[0]]
        names = ["K2", "A2"]
    elif t == 3:
        by_edges = {orbits[k][0].bit_count(): k for k in range(len(orbits))}
        order = [by_edges[3], by_edges[0], by_edges[2], by_edges[1]]
        names = ["K3", "A3", "P3", "E3"]
    elif t == 4:
        order = [raw_index[mask_of(build_named(n))] for n in TYPE_NAMES_4]
        names = list(TYPE_NAMES_4)
    else:
        order = sorted(range(len(orbits)), key=lambda k: (orbits[k][0].bit_count(), orbits[k][0]))
        names = [graph6_encode(graph_from_mask(t, orbits[k][0])) for k in order]
    entries = []
    fact = math.factorial(t)
    for name, k in zip(names, order):
        orbit = orbits[k]
        rep = orbit[0]
        aut = fact // len(orbit)
        code = canonical_form(graph_from_mask(t, rep))
        if code.aut_count != aut:
            raise AssertionError("orbit size and automorphism count disagree")
        entries.append(
            IsoEntry(name=name, rep_mask=rep, orbit=orbit, orbit_size=len(orbit), aut_count=aut, code=code)
        )
    position = {k: pos for pos, k in enumerate(order)}
    index = tuple(position[raw_index[mask]] for mask in range(len(raw_index)))
    name_map = {e.name: i for i, e in enumerate(entries)}
    if t == 5:
        for alias in ("K5", "A5", "C5", "P5", "bull"):
            g = build_named(alias) if alias == "bull" else build_named(alias[0], [5])
            name_map[alias] = index[mask_of(g)]
    return IsoTable(t=t, entries=tuple(entries), index=index, names=name_map)


def _validate_distribution(values, exact: bool, what: str) -> None:
    total = sum(values)
    if exact:
        if total != 1:
            raise ValueError(f"{what} must sum to one")
        if any(v < 0 for v in values):
            raise ValueError(f"{what} must be nonnegative")
    else:
        if abs(total - 1.0) > _APPROX_TOL:
            raise ValueError(f"{what} must sum to one")
        if any(v < -_APPROX_TOL for v in values):
            raise ValueError(f"{what} must be nonnegative")


@dataclass(frozen=True)
class ProfileVector:
    """Density per isomorphism type, aligned with iso_table(t).entries."""

    t: int
    flavor: str
    values: tuple
    exact: bool = True

    def __post_init__(self):
        if self.flavor not in ("induced", "repetitive"):
            raise ValueError("flavor must be induced or repetitive")
        if len(self.values) != len(iso_table(self.t).entries):
            raise ValueError("value count does not match the type table")
        _validate_distribution(self.values, self.exact, "profile entries")

    def entry(self, key):
        return self.values[iso_table(self.t).type_index(key)]

    def as_labeled(self) -> "LabeledProfile":
        table = iso_table(self.t)
        out = [None] * (1 << masks.slot_count(self.t))
        for e, value in zip(table.entries, self.values):
            share = value / e.orbit_size
            for mask in e.orbit:
                out[mask] = share
        flavor = "p" if self.flavor == "induced" else "r"
        return LabeledProfile(t=self.t, flavor=flavor, values=tuple(out), exact=self.exact)


@dataclass(frozen=True)
class LabeledProfile:
    """Density per labeled graph, indexed by edge-slot mask."""

    t: int
    flavor: str
    values: tuple
    exact: bool = True

    def __post_init__(self):
        if self.flavor not in ("p", "r"):
            raise ValueError("labeled flavor must be p or r")
        if len(self.values) != 1 << masks.slot_count(self.t):
            raise ValueError("value count does not match the mask space")
        _validate_distribution(self.values, self.exact, "labeled entries")
        for e in iso_table(self.t).entries:
            ref = self.values[e.rep_mask]
            for mask in e.orbit:
                v = self.values[mask]
                if self.exact:
                    if v != ref:
                        raise ValueError("labeled profile is not constant on orbits")
                elif abs(v - ref) > _APPROX_TOL:
                    raise ValueError("labeled profile is not constant on orbits")

    def to_unlabeled(self) -> ProfileVector:
        table = iso_table(self.t)
        vals = tuple(self.values[e.rep_mask] * e.orbit_size for e in table.entries)
        flavor = "induced" if self.flavor == "p" else "repetitive"
        return ProfileVector(t=self.t, flavor=flavor, values=vals, exact=self.exact)


@dataclass(frozen=True)
class QuantumGraph:
    """Rational combination of isomorphism types of one order."""

    t: int
    coefficients: tuple

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a quantum graph needs at least one term")
        seen = set()
        for idx, coeff in self.coefficients:
            if not 0 <= idx < len(iso_table(self.t).entries):
                raise ValueError("type index out of range")
            if idx in seen:
                raise ValueError("duplicate type in quantum graph")
            seen.add(idx)
            if coeff == 0:
                raise ValueError("zero coefficient in quantum graph")

    @classmethod
    def from_pairs(cls, t: int, pairs) -> "QuantumGraph":
        table = iso_table(t)
        merged: dict[int, Fraction] = {}
        for key, coeff in pairs:
            idx = table.type_index(key)
            merged[idx] = merged.get(idx, Fraction(0)) + Fraction(coeff)
        coeffs = tuple((idx, c) for idx, c in sorted(merged.items()) if c != 0)
        return cls(t=t, coefficients=coeffs)

    def describe(self) -> str:
        table = iso_table(self.t)
        parts = []
        for idx, coeff in self.coefficients:
            name = table.entries[idx].name
            if coeff == 1:
                term = name
            else:
                term = f"{coeff}*{name}"
            parts.append(term)
        return " + ".join(parts)


def quantum_density(Q: QuantumGraph, prof: ProfileVector):
    """Evaluate a quantum graph against a profile of the same order."""
    if Q.t != prof.t:
        raise ValueError("order mismatch between quantum graph and profile")
    total = None
    for idx, coeff in Q.coefficients:
        term = coeff * prof.values[idx]
        total = term if total is None else total + term
    return total


def _decorated_subset_counts(G: LabeledGraph, ell: int) -> dict:
    """Counts of ell-subsets by (edge mask, loop bits), vertices in
    increasing order."""
    if ell == 4 and G.n >= 8 and G.is_loopless:
        return {(mask, 0): c for mask, c in enumerate(_mask_counts4(G)) if c}
    rows = G.rows
    n = G.n
    slot = masks.slot_of(ell) if ell >= 2 else {}
    slots = [[slot[(i, d)] for i in range(d)] for d in range(ell)]
    counts: dict = {}
    chosen = [0] * ell

    def rec(start: int, depth: int, mask: int, loopbits: int) -> None:
        if depth == ell:
            key = (mask, loopbits)
            counts[key] = counts.get(key, 0) + 1
            return
        for v in range(start, n - (ell - depth) + 1):
            row = rows[v]
            m2 = mask
            for i in range(depth):
                if (row >> chosen[i]) & 1:
                    m2 |= 1 << slots[depth][i]
            chosen[depth] = v
            rec(v + 1, depth + 1, m2, loopbits | (((row >> v) & 1) << depth))

    rec(0, 0, 0, 0)
    return counts


def _mask_counts4(G: LabeledGraph) -> list[int]:
    """Induced 4-subset counts per mask, via triples plus bitset classes of
    the largest vertex.  Much faster than enumerating 4-subsets."""
    n = G.n
    rows = G.rows
    counts = [0] * 64
    full = (1 << n) - 1
    for u in range(n - 3):
        ru = rows[u]
        for v in range(u + 1, n - 2):
            rv = rows[v]
            b01 = (ru >> v) & 1
            for w in range(v + 1, n - 1):
                rest = (full >> (w + 1)) << (w + 1)
                base = b01 | (((ru >> w) & 1) << 1) | (((rv >> w) & 1) << 3)
                rw = rows[w]
                a = ru & rest
                b = rv & rest
                c = rw & rest
                na = rest ^ a
                nb = rest ^ b
                nc = rest ^ c
                counts[base] += (na & nb & nc).bit_count()
                counts[base | 4] += (a & nb & nc).bit_count()
                counts[base | 16] += (na & b & nc).bit_count()
                counts[base | 32] += (na & nb & c).bit_count()
                counts[base | 20] += (a & b & nc).bit_count()
                counts[base | 36] += (a & nb & c).bit_count()
                counts[base | 48] += (na & b & c).bit_count()
                counts[base | 52] += (a & b & c).bit_count()
    return counts


def induced_profile(G: LabeledGraph, t: int, budget: int = DEFAULT_SUBSET_BUDGET) -> ProfileVector:
    """Exact induced t-profile of a loopless graph on at least t vertices."""
    _check_order(t)
    if not G.is_loopless:
        raise ValueError("induced profiles are defined for loopless graphs")
    if G.n < t:
        raise ValueError("graph has fewer vertices than the profile order")
    total = math.comb(G.n, t)
    if total > budget:
        raise BudgetError(f"{total} subsets exceed the budget of {budget}")
    table = iso_table(t)
    counts = [0] * len(table.entries)
    if t == 4 and G.n >= 8:
        for mask, c in enumerate(_mask_counts4(G)):
            if c:
                counts[table.index[mask]] += c
    else:
        for (mask, _), c in _decorated_subset_counts(G, t).items():
            counts[table.index[mask]] += c
    values = tuple(Fraction(c, total) for c in counts)
    return ProfileVector(t=t, flavor="induced", values=values)


def labeled_induced_values(G: LabeledGraph, ell: int, budget: int = DEFAULT_SUBSET_BUDGET) -> tuple:
    """Labeled induced densities of G at order ell; the order-1 case is the
    trivial unit."""
    if ell == 1:
        return (Fraction(1),)
    return induced_profile(G, ell, budget).as_labeled().values


def _repetitive_by_assignments(M: StepModel, t: int) -> list:
    exact = M.exact
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    m = masks.slot_count(t)
    out = [zero] * (1 << m)
    pairs = masks.pair_slots(t)
    w = M.w
    mass = M.masses
    for assign in itertools.product(range(M.k), repeat=t):
        weight = one
        for x in assign:
            weight = weight * mass[x]
        det_mask = 0
        branch = []
        for s, (i, j) in enumerate(pairs):
            p = w[assign[i]][assign[j]]
            if p == 1:
                det_mask |= 1 << s
            elif p != 0:
                branch.append((1 << s, p))
        if not branch:
            out[det_mask] += weight
            continue
        acc = {det_mask: weight}
        for bit, p in branch:
            nxt: dict = {}
            for mk, wv in acc.items():
                hit = wv * p
                miss = wv - hit
                nxt[mk | bit] = nxt.get(mk | bit, zero) + hit
                if miss:
                    nxt[mk] = nxt.get(mk, zero) + miss
            acc = nxt
        for mk, wv in acc.items():
            out[mk] += wv
    return out


def _ordered_pattern_counts(G: LabeledGraph, ell: int) -> dict:
    """Counts of ordered tuples of distinct vertices per decorated pattern."""
    unordered = _decorated_subset_counts(G, ell)
    tables = masks.permutation_masks(ell)
    counts: dict = {}
    for (mask, loops), cnt in unordered.items():
        for sigma, table in tables.items():
            key = (table[mask], masks.permute_bits(loops, sigma))
            counts[key] = counts.get(key, 0) + cnt
    return counts


def _repetitive_by_subsets(M: StepModel, t: int, budget: int) -> list:
    """Repetitive profile of a 0/1 uniform-mass model by grouping sample
    positions that land on the same vertex: subsets of the underlying graph
    are enumerated once and lifted through every vertex partition."""
    k = M.k
    rows = tuple(
        sum(1 << j for j in range(k) if M.w[i][j] == 1) for i in range(k)
    )
    G = LabeledGraph(k, rows)
    ordered = {}
    for ell in range(1, t + 1):
        if ell <= k:
            if math.comb(k, ell) > budget:
                raise BudgetError(f"{math.comb(k, ell)} subsets exceed the budget of {budget}")
            ordered[ell] = _ordered_pattern_counts(G, ell)
        else:
            ordered[ell] = {}
    scale = Fraction(1, k ** t)
    out = [Fraction(0)] * (1 << masks.slot_count(t))
    for pt in masks.partition_tables(t):
        ell = pt.size
        for (qmask, qloops), cnt in ordered[ell].items():
            lifted = 0
            for p in range(ell):
                if (qloops >> p) & 1:
                    lifted |= pt.part_slot_masks[p]
            qbits = qmask
            s2 = 0
            while qbits:
                if qbits & 1:
                    lifted |= pt.cross_slot_masks[s2]
                qbits >>= 1
                s2 += 1
            out[lifted] += cnt * scale
    return out


def labeled_repetitive_profile(M: StepModel, t: int, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> LabeledProfile:
    _check_order(t)
    direct_cost = M.k ** t
    if (
        M.exact
        and M.is_zero_one()
        and M.has_uniform_masses()
        and direct_cost > DIRECT_ASSIGNMENT_CUTOFF
    ):
        values = _repetitive_by_subsets(M, t, budget)
    else:
        if direct_cost > budget:
            raise BudgetError(
                f"{direct_cost} assignments exceed the budget of {budget}; "
                "consider monte_carlo_profile"
            )
        values = _repetitive_by_assignments(M, t)
    return LabeledProfile(t=t, flavor="r", values=tuple(values), exact=M.exact)


def repetitive_profile(M: StepModel, t: int, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> ProfileVector:
    """Exact repetitive t-profile of a step model."""
    return labeled_repetitive_profile(M, t, budget).to_unlabeled()


def repetitive_from_induced(P: ProfileVector, s: int, t: int) -> ProfileVector:
    """Repetitive profile of a loopless s-vertex graph from its induced
    t-profile: group sample positions by the vertex they hit, which leaves
    quotient densities that marginalize out of P."""
    if P.flavor != "induced":
        raise ValueError("expected an induced profile")
    if t != P.t:
        raise ValueError("order mismatch")
    if s < t:
        raise ValueError("source graph must have at least t vertices")
    p_full = list(P.as_labeled().values)
    p_by_ell = {t: p_full}
    for ell in range(1, t):
        p_by_ell[ell] = masks.project_labeled(t, p_full, ell)
    m = masks.slot_count(t)
    out = [Fraction(0)] * (1 << m)
    st = s ** t
    for pt in masks.partition_tables(t):
        falling = math.perm(s, pt.size)
        if falling == 0:
            continue
        coef = Fraction(falling, st)
        pvals = p_by_ell[pt.size]
        adm = pt.admissible
        quo = pt.quotient
        within = pt.within_mask
        for mask in range(1 << m):
            if mask & within or not adm[mask]:
                continue
            out[mask] += coef * pvals[quo[mask]]
    return LabeledProfile(t=t, flavor="r", values=tuple(out)).to_unlabeled()


def _adjacency_array(G: LabeledGraph) -> np.ndarray:
    nbytes = (G.n + 7) // 8
    raw = np.frombuffer(
        b"".join(row.to_bytes(nbytes, "little") for row in G.rows), dtype=np.uint8
    )
    bits = np.unpackbits(raw.reshape(G.n, nbytes), axis=1, bitorder="little")
    return bits[:, : G.n].astype(np.uint8)


@dataclass(frozen=True)
class EstimatedProfile:
    """Monte Carlo estimate of a repetitive profile with binomial errors."""

    t: int
    values: tuple
    stderr: tuple
    samples: int
    seed: int
    shards: int

    def entry(self, key) -> float:
        return self.values[iso_table(self.t).type_index(key)]

    def stderr_of(self, key) -> float:
        return self.stderr[iso_table(self.t).type_index(key)]


def _shard_sizes(samples: int, shards: int) -> list[int]:
    base = samples // shards
    extra = samples % shards
    return [base + (1 if i < extra else 0) for i in range(shards)]


_BATCH = 1 << 20


def _sample_masks(source, t, rng, count, pairs):
    """Yield int64 mask arrays for `count` samples from a graph or model."""
    if isinstance(source, LabeledGraph):
        adj = _adjacency_array(source)
        n = source.n
        done = 0
        while done < count:
            batch = min(count - done, _BATCH)
            verts = rng.integers(0, n, size=(batch, t))
            mask = np.zeros(batch, dtype=np.int64)
            for slot, (i, j) in enumerate(pairs):
                mask |= adj[verts[:, i], verts[:, j]].astype(np.int64) << slot
            yield mask
            done += batch
    else:
        mass = np.array([float(mu) for mu in source.masses])
        mass = mass / mass.sum()
        wf = np.array([[float(p) for p in row] for row in source.w])
        k = source.k
        done = 0
        while done < count:
            batch = min(count - done, _BATCH)
            types = rng.choice(k, size=(batch, t), p=mass)
            mask = np.zeros(batch, dtype=np.int64)
            for slot, (i, j) in enumerate(pairs):
                p = wf[types[:, i], types[:, j]]
                bit = rng.random(batch) < p
                mask |= bit.astype(np.int64) << slot
            yield mask
            done += batch


def monte_carlo_profile(source, t: int, samples: int, seed: int, shards: int = MC_SHARDS) -> EstimatedProfile:
    """Estimate the repetitive t-profile of a graph or model by seeded
    sampling; shard seeds are derived deterministically so the result does
    not depend on how shards are scheduled."""
    _check_order(t)
    if samples < 1:
        raise ValueError("need at least one sample")
    if not isinstance(source, (LabeledGraph, StepModel)):
        raise TypeError("source must be a LabeledGraph or StepModel")
    table = iso_table(t)
    pairs = masks.pair_slots(t)
    counts = np.zeros(1 << masks.slot_count(t), dtype=np.int64)
    for seq, count in zip(np.random.SeedSequence(seed).spawn(shards), _shard_sizes(samples, shards)):
        if count == 0:
            continue
        rng = np.random.default_rng(seq)
        for mask in _sample_masks(source, t, rng, count, pairs):
            counts += np.bincount(mask, minlength=counts.size)
    type_counts = np.zeros(len(table.entries), dtype=np.int64)
    np.add.at(type_counts, np.array(table.index, dtype=np.int64), counts)
    vals = type_counts / samples
    err = np.sqrt(vals * (1.0 - vals) / samples)
    return EstimatedProfile(
        t=t,
        values=tuple(float(v) for v in vals),
        stderr=tuple(float(e) for e in err),
        samples=samples,
        seed=seed,
        shards=shards,
    )


def monte_carlo_monochromatic(source, t: int, samples: int, seed: int, shards: int = MC_SHARDS):
    """Estimate the probability that t sampled vertices induce a clique or
    an anticlique.  Unlike the profile estimator this works above order 5;
    it is the only order-6 quantity the toolkit touches."""
    if t < 2 or t > 8:
        raise ValueError("monochromatic order must be in 2..8")
    if samples < 1:
        raise ValueError("need at least one sample")
    pairs = masks.pair_slots(t)
    nslots = len(pairs)
    full = (1 << nslots) - 1
    hits = 0
    for seq, count in zip(np.random.SeedSequence(seed).spawn(shards), _shard_sizes(samples, shards)):
        if count == 0:
            continue
        rng = np.random.default_rng(seq)
        for mask in _sample_masks(source, t, rng, count, pairs):
            hits += int(np.count_nonzero(mask == full)) + int(np.count_nonzero(mask == 0))
    est = hits / samples
    err = math.sqrt(est * (1.0 - est) / samples)
    return est, err
