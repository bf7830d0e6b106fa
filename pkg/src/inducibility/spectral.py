"""Walsh-Hadamard transforms of labeled repetitive profiles.

The transform of a labeled profile r assigns to each edge set H the signed
sum rhat(H) = sum over H' of (-1)^{|H and H'|} r(H').  It turns tensor
products of step models into pointwise products, so densities in large
tensor powers reduce to a handful of per-factor spectral values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import masks
from .graphs import LabeledGraph
from .models import StepModel, from_graph
from .profiles import (
    LabeledProfile,
    ProfileVector,
    QuantumGraph,
    iso_table,
    labeled_repetitive_profile,
)

_APPROX_TOL = 1e-9


def fwht_forward(values) -> list:
    """Unnormalized Walsh-Hadamard transform; length must be a power of two."""
    vec = list(values)
    n = len(vec)
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        for i in range(0, n, h * 2):
            for j in range(i, i + h):
                x = vec[j]
                y = vec[j + h]
                vec[j] = x + y
                vec[j + h] = x - y
        h *= 2
    return vec


def fwht_inverse(values) -> list:
    vec = fwht_forward(values)
    n = len(vec)
    if isinstance(vec[0], float):
        return [v / n for v in vec]
    return [Fraction(v, n) if not isinstance(v, Fraction) else v / n for v in vec]


@dataclass(frozen=True)
class SpectralProfile:
    """Transform of a labeled repetitive profile, indexed by edge-slot mask.

    The empty mask always carries 1 (total mass) and every value lies in
    [-1, 1]; values are constant on isomorphism orbits.
    """

    t: int
    values: tuple
    exact: bool = True

    def __post_init__(self):
        if len(self.values) != 1 << masks.slot_count(self.t):
            raise ValueError("value count does not match the mask space")
        tol = 0 if self.exact else _APPROX_TOL
        if abs(self.values[0] - 1) > tol:
            raise ValueError("spectrum of a unit-mass profile must start at one")
        if any(abs(v) > 1 + tol for v in self.values):
            raise ValueError("spectral values must lie in [-1, 1]")
        for e in iso_table(self.t).entries:
            ref = self.values[e.rep_mask]
            for mask in e.orbit:
                if abs(self.values[mask] - ref) > tol:
                    raise ValueError("spectrum is not constant on orbits")

    def entry(self, key):
        return self.values[iso_table(self.t).entries[iso_table(self.t).type_index(key)].rep_mask]

    def type_values(self) -> tuple:
        return tuple(self.values[e.rep_mask] for e in iso_table(self.t).entries)


def _as_labeled_r(profile) -> LabeledProfile:
    if isinstance(profile, ProfileVector):
        profile = profile.as_labeled()
    if not isinstance(profile, LabeledProfile):
        raise TypeError("expected a labeled or unlabeled profile")
    if profile.flavor != "r":
        raise ValueError("the transform applies to repetitive profiles")
    return profile


def fourier(profile) -> SpectralProfile:
    """Transform of a repetitive profile (labeled or by-type)."""
    lab = _as_labeled_r(profile)
    return SpectralProfile(t=lab.t, values=tuple(fwht_forward(lab.values)), exact=lab.exact)


def inverse_fourier(spectrum: SpectralProfile) -> LabeledProfile:
    vals = fwht_inverse(spectrum.values)
    return LabeledProfile(t=spectrum.t, flavor="r", values=tuple(vals), exact=spectrum.exact)


def spectral_product(*spectra: SpectralProfile) -> SpectralProfile:
    """Pointwise product, the spectrum of the tensor product of models."""
    if not spectra:
        raise ValueError("need at least one spectrum")
    t = spectra[0].t
    if any(s.t != t for s in spectra):
        raise ValueError("order mismatch among spectra")
    out = list(spectra[0].values)
    for s in spectra[1:]:
        out = [a * b for a, b in zip(out, s.values)]
    return SpectralProfile(t=t, values=tuple(out), exact=all(s.exact for s in spectra))


def convolve(*profiles) -> LabeledProfile:
    """Labeled repetitive profile of the tensor product of the sources."""
    spectra = [fourier(p) for p in profiles]
    return inverse_fourier(spectral_product(*spectra))


def graph_spectrum(G: LabeledGraph, t: int) -> SpectralProfile:
    """Spectrum of the uniform step model of a graph."""
    return fourier(labeled_repetitive_profile(from_graph(G), t))


def model_spectrum(M: StepModel, t: int) -> SpectralProfile:
    return fourier(labeled_repetitive_profile(M, t))


def quantum_functional(Q: QuantumGraph) -> tuple:
    """Per-type coefficients c with R(Q) = sum of c[type] * rhat[type].

    Writing the repetitive density of Q against a labeled profile as an
    inner product with an orbit indicator, Parseval turns it into an inner
    product of transforms; the transformed indicator is orbit-constant, so
    the functional collapses to one coefficient per type.
    """
    table = iso_table(Q.t)
    size = 1 << masks.slot_count(Q.t)
    indicator = [Fraction(0)] * size
    for idx, coeff in Q.coefficients:
        for mask in table.entries[idx].orbit:
            indicator[mask] += Fraction(coeff)
    hat = fwht_forward(indicator)
    return tuple(
        Fraction(e.orbit_size, size) * hat[e.rep_mask] for e in table.entries
    )


def product_limit_density(Q: QuantumGraph, *spectra: SpectralProfile):
    """Repetitive density of Q in the tensor product of the given limits."""
    spectrum = spectral_product(*spectra)
    if spectrum.t != Q.t:
        raise ValueError("order mismatch between quantum graph and spectrum")
    coeffs = quantum_functional(Q)
    total = None
    for c, v in zip(coeffs, spectrum.type_values()):
        if c == 0:
            continue
        term = c * v
        total = term if total is None else total + term
    return total
