"""Spectral decomposition and functional calculus, per factor type.

Hermitian blocks over R and C go through ``numpy.linalg.eigh``;
quaternionic blocks through the 2n x 2n complex embedding (eigenvalues
come in pairs and the paired eigenprojections pull back to quaternionic
projections); spin blocks have the closed form

    eigenvalues a +/- |v|   with idempotents (1, +/- v/|v|) / 2.

Eigenvalues closer than ``cluster_tol`` are merged and their projections
summed, which is what makes jump functions such as the range projection
stable in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quaternion as quat
from .algebra import (
    AlgebraDescriptor,
    DomainError,
    Element,
    HermFactor,
    Ring,
    SingularElementError,
    SpinFactor,
    _element,
    _zero_block,
    sup_norm,
)

Factor = HermFactor | SpinFactor


def default_cluster_tol(x: Element) -> float:
    return 1e-8 * (1.0 + sup_norm(x))


def _block_eigenpairs(factor: Factor, b: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Finest-grained (eigenvalue, projection-block) pairs for one block.

    Quaternionic pairs are complex-rank-one pullbacks; only after summing
    a degenerate pair do they form a quaternionic projection, which the
    clustering step always does because embedded eigenvalues are doubled.
    """
    if isinstance(factor, SpinFactor):
        alpha, v = float(b[0]), b[1:]
        nv = float(np.linalg.norm(v))
        if nv < np.finfo(float).tiny:
            eblk = np.zeros(factor.d + 1)
            eblk[0] = 1.0
            return [(alpha, eblk)]
        u = v / nv
        lo = np.concatenate(([0.5], -0.5 * u))
        hi = np.concatenate(([0.5], 0.5 * u))
        return [(alpha - nv, lo), (alpha + nv, hi)]
    if factor.ring is Ring.QUATERNION:
        w, V = np.linalg.eigh(quat.to_complex(b))
        return [
            (float(w[i]), quat.from_complex(np.outer(V[:, i], V[:, i].conj())))
            for i in range(len(w))
        ]
    if factor.n == 1:
        # 1x1 fast path; the entry is real after hermitization
        lam = float(b[0, 0].real)
        return [(lam, np.ones((1, 1), dtype=b.dtype))]
    w, V = np.linalg.eigh(b)
    return [(float(w[i]), np.outer(V[:, i], V[:, i].conj())) for i in range(len(w))]


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Strictly increasing eigenvalues with orthogonal projections
    summing to the unit; Sum lam_i p_i reconstructs the element."""

    algebra: AlgebraDescriptor
    eigenvalues: tuple[float, ...]
    projections: tuple[Element, ...]
    zero_tol: float

    def apply(self, f: Callable[[float], float]) -> Element:
        """f(x) = Sum f(lam_i) p_i; raises if f is not finite on the spectrum."""
        blocks = [np.array(_zero_block(fa)) for fa in self.algebra.factors]
        for lam, p in zip(self.eigenvalues, self.projections):
            try:
                val = float(f(lam))
            except (ArithmeticError, ValueError) as exc:
                raise DomainError(f"function undefined at eigenvalue {lam}: {exc}") from exc
            if not np.isfinite(val):
                raise DomainError(f"function not finite at eigenvalue {lam}")
            for acc, pb in zip(blocks, p.blocks):
                acc += val * pb
        return _element(self.algebra, blocks)

    def reconstruct(self) -> Element:
        return self.apply(lambda t: t)

    def positive_min(self) -> float:
        """Least eigenvalue above the zero threshold; +inf if none."""
        pos = [lam for lam in self.eigenvalues if lam > self.zero_tol]
        return min(pos) if pos else float("inf")


def spectral_decompose(x: Element, cluster_tol: float | None = None) -> SpectralDecomposition:
    """Cluster the per-block eigenpairs into a global decomposition of x."""
    tol = default_cluster_tol(x) if cluster_tol is None else float(cluster_tol)
    triples: list[tuple[float, int, np.ndarray]] = []
    for i, (f, b) in enumerate(zip(x.algebra.factors, x.blocks)):
        for lam, pb in _block_eigenpairs(f, b):
            triples.append((lam, i, pb))
    triples.sort(key=lambda t: t[0])

    eigenvalues: list[float] = []
    projections: list[Element] = []
    k = 0
    while k < len(triples):
        j = k + 1
        while j < len(triples) and triples[j][0] - triples[j - 1][0] <= tol:
            j += 1
        members = triples[k:j]
        rep = members[0][0] if len(members) == 1 else float(
            sum(m[0] for m in members) / len(members)
        )
        blocks = [np.array(_zero_block(f)) for f in x.algebra.factors]
        for _, idx, pb in members:
            blocks[idx] = blocks[idx] + pb
        eigenvalues.append(rep)
        projections.append(_element(x.algebra, blocks))
        k = j
    return SpectralDecomposition(x.algebra, tuple(eigenvalues), tuple(projections), tol)


def apply_function(
    x: Element, f: Callable[[float], float], cluster_tol: float | None = None
) -> Element:
    """Continuous/Borel functional calculus f(x) on the point spectrum."""
    return spectral_decompose(x, cluster_tol).apply(f)


def extreme_eigenvalues(x: Element) -> tuple[float, float]:
    """(least, greatest) eigenvalue across all blocks in one pass."""
    lo, hi = np.inf, -np.inf
    for f, b in zip(x.algebra.factors, x.blocks):
        if isinstance(f, SpinFactor):
            nv = float(np.linalg.norm(b[1:]))
            lo = min(lo, float(b[0]) - nv)
            hi = max(hi, float(b[0]) + nv)
        elif f.ring is Ring.QUATERNION:
            w = np.linalg.eigvalsh(quat.to_complex(b))
            lo, hi = min(lo, float(w[0])), max(hi, float(w[-1]))
        elif f.n == 1:
            v = float(b[0, 0].real)
            lo, hi = min(lo, v), max(hi, v)
        else:
            w = np.linalg.eigvalsh(b)
            lo, hi = min(lo, float(w[0])), max(hi, float(w[-1]))
    return lo, hi


def min_eigenvalue(x: Element) -> float:
    """Least eigenvalue across all blocks (no clustering; cheap path)."""
    return extreme_eigenvalues(x)[0]


def max_eigenvalue(x: Element) -> float:
    return extreme_eigenvalues(x)[1]


def positive_min_eigenvalue(x: Element, cluster_tol: float | None = None) -> float:
    return spectral_decompose(x, cluster_tol).positive_min()


def range_projection(x: Element, cluster_tol: float | None = None) -> Element:
    """Smallest projection p with U_p x = x, i.e. the indicator of
    (0, inf) applied to x.  Requires x in the cone (up to tolerance)."""
    dec = spectral_decompose(x, cluster_tol)
    if dec.eigenvalues and dec.eigenvalues[0] < -dec.zero_tol:
        raise DomainError(f"not in the cone: min eigenvalue {dec.eigenvalues[0]}")
    blocks = [np.array(_zero_block(f)) for f in x.algebra.factors]
    for lam, p in zip(dec.eigenvalues, dec.projections):
        if lam > dec.zero_tol:
            for acc, pb in zip(blocks, p.blocks):
                acc += pb
    return _element(x.algebra, blocks)


def invert_element(x: Element, mode: str = "strict") -> Element:
    """Spectral inverse.

    ``strict``  : 1/x; raises SingularElementError when some eigenvalue
                  has magnitude <= 1e-10 * (1 + |x|).
    ``pseudo``  : inverts eigenvalues above the cluster threshold and
                  keeps the rest at zero.
    """
    dec = spectral_decompose(x)
    if mode == "strict":
        tol = 1e-10 * (1.0 + sup_norm(x))
        bad = [lam for lam in dec.eigenvalues if abs(lam) <= tol]
        if bad:
            raise SingularElementError(f"eigenvalue {bad[0]} within {tol} of zero")
        return dec.apply(lambda t: 1.0 / t)
    if mode == "pseudo":
        return dec.apply(lambda t: 1.0 / t if abs(t) > dec.zero_tol else 0.0)
    raise ValueError(f"unknown inversion mode: {mode!r}")


def _require_cone(dec: SpectralDecomposition) -> None:
    if dec.eigenvalues and dec.eigenvalues[0] < -dec.zero_tol:
        raise DomainError(f"not in the cone: min eigenvalue {dec.eigenvalues[0]}")


def sqrt_element(x: Element) -> Element:
    """Positive square root of a cone element (tiny negatives clamped)."""
    dec = spectral_decompose(x)
    _require_cone(dec)
    return dec.apply(lambda t: np.sqrt(t) if t > 0.0 else 0.0)


def pseudo_inv_sqrt(x: Element) -> Element:
    """t -> t^(-1/2) on the strictly positive spectrum, 0 on the kernel."""
    dec = spectral_decompose(x)
    _require_cone(dec)
    return dec.apply(lambda t: 1.0 / np.sqrt(t) if t > dec.zero_tol else 0.0)


def range_approximants(x: Element, n: int) -> tuple[Element, Element, Element]:
    """The truncated inverse-square-root family at level n.

    With f_n(t) = t^(-1/2) for t >= 1/n and n^(3/2) t below, returns

        (f_n(x),  [t f_n(t)^2](x),  [t^(1/2) f_n(t)](x)).

    The last two stabilize exactly to the range projection once
    n > 1 / min positive eigenvalue.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    dec = spectral_decompose(x)
    _require_cone(dec)
    cut = 1.0 / float(n)

    def f(t: float) -> float:
        t = max(t, 0.0)
        return t ** -0.5 if t >= cut else float(n) ** 1.5 * t

    def g(t: float) -> float:
        t = max(t, 0.0)
        return 1.0 if t >= cut else float(n) ** 3 * t ** 3

    def h(t: float) -> float:
        t = max(t, 0.0)
        return 1.0 if t >= cut else float(n) ** 1.5 * t ** 1.5

    return dec.apply(f), dec.apply(g), dec.apply(h)
