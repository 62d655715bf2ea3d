"""Cone and effect-algebra order predicates, projections, and the centre.

The partial order is x <= y iff y - x has non-negative spectrum.  Inside
the effect algebra [0, e] arbitrary sets of projections have suprema and
infima; the meet of two projections is recovered spectrally from p + q
(its eigenvalue-2 eigenspace is fixed by both), and the join by De
Morgan duality through the order anti-isomorphism x -> e - x.

The centre of a block direct sum is spanned by the factor identities, so
central projections and the induced splittings are index-set operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraDescriptor,
    DomainError,
    Element,
    _check_same_algebra,
    _element,
    _identity_block,
    _zero_block,
    _block_sup,
    canonical_trace,
    sup_norm,
    unit,
)
from .spectral import (
    min_eigenvalue,
    max_eigenvalue,
    positive_min_eigenvalue,
    range_projection,
    spectral_decompose,
)


def default_leq_tol(x: Element, y: Element) -> float:
    return 1e-9 * (1.0 + sup_norm(x) + sup_norm(y))


def leq(x: Element, y: Element, tol: float | None = None) -> bool:
    """x <= y in the cone order, up to a scale-invariant tolerance."""
    _check_same_algebra(x, y)
    if tol is None:
        tol = default_leq_tol(x, y)
    return min_eigenvalue(y - x) >= -tol


def in_cone(x: Element, tol: float | None = None) -> bool:
    if tol is None:
        tol = 1e-9 * (1.0 + sup_norm(x))
    return min_eigenvalue(x) >= -tol


def in_effect_interval(x: Element, tol: float | None = None) -> bool:
    """Membership in [0, e]."""
    if tol is None:
        tol = 1e-9 * (1.0 + sup_norm(x))
    return min_eigenvalue(x) >= -tol and max_eigenvalue(x) <= 1.0 + tol


@dataclass(frozen=True)
class OrderClass:
    in_cone: bool
    in_interior: bool
    in_effect: bool
    in_invertible_effect: bool
    is_projection: bool
    is_atom: bool


def classify(x: Element, tol: float = 1e-8) -> OrderClass:
    """Order-region flags for x; projections are detected spectrally and
    atoms are the projections of rank one (trace one)."""
    dec = spectral_decompose(x)
    lo = dec.eigenvalues[0] if dec.eigenvalues else 0.0
    hi = dec.eigenvalues[-1] if dec.eigenvalues else 0.0
    cone = lo >= -tol
    interior = lo > tol
    effect = cone and hi <= 1.0 + tol
    proj = all(abs(lam) <= tol or abs(lam - 1.0) <= tol for lam in dec.eigenvalues)
    atom = proj and abs(canonical_trace(x) - 1.0) <= 1e-6
    return OrderClass(
        in_cone=cone,
        in_interior=interior,
        in_effect=effect,
        in_invertible_effect=effect and interior,
        is_projection=proj,
        is_atom=atom,
    )


def _require_projection(p: Element, what: str) -> None:
    if not classify(p).is_projection:
        raise DomainError(f"{what} is not a projection")


def proj_meet(p: Element, q: Element) -> Element:
    """Greatest lower bound of two projections inside [0, e]: the
    spectral projection of p + q at eigenvalue 2.

    The eigenvalue-2 test is deliberately tight (1e-11, with fine
    clustering): genuine intersections sit at 2 up to ~1e-14 rounding,
    while ranges meeting at a small angle theta produce eigenvalues
    2 - theta^2/2, and wrongly including one would violate m <= p by
    about theta/2 (the square root of the gap)."""
    _check_same_algebra(p, q)
    _require_projection(p, "p")
    _require_projection(q, "q")
    dec = spectral_decompose(p + q, cluster_tol=1e-13)
    blocks = [np.array(_zero_block(f)) for f in p.algebra.factors]
    for lam, pr in zip(dec.eigenvalues, dec.projections):
        if lam >= 2.0 - 1e-11:
            for acc, pb in zip(blocks, pr.blocks):
                acc += pb
    return _element(p.algebra, blocks)


def proj_join(p: Element, q: Element) -> Element:
    """Least upper bound: e - ((e - p) meet (e - q))."""
    e = unit(p.algebra)
    return e - proj_meet(e - p, e - q)


def dominates_atom(
    x: Element, p: Element, tol: float | None = None
) -> tuple[bool, float | None]:
    """Does x dominate the atom p, i.e. does some lam > 0 give lam p <= x?

    Equivalent (in finite dimension) to p <= r(x); the reported witness
    is the least strictly positive eigenvalue of x.
    """
    _check_same_algebra(x, p)
    if not in_cone(x):
        raise DomainError("x must lie in the cone")
    if not classify(p).is_atom:
        raise DomainError("p is not an atom")
    ok = leq(p, range_projection(x), tol)
    return (True, positive_min_eigenvalue(x)) if ok else (False, None)


def central_structure(alg: AlgebraDescriptor) -> tuple[list[Element], tuple[int, ...]]:
    """Generators of the centre (the factor identities, one per factor)
    and the disengaged index set (the rank-one factors)."""
    gens = []
    for i in range(len(alg.factors)):
        blocks = [
            _identity_block(f) if j == i else _zero_block(f)
            for j, f in enumerate(alg.factors)
        ]
        gens.append(_element(alg, blocks))
    return gens, alg.disengaged_indices


def central_mask(z: Element, tol: float = 1e-8) -> tuple[bool, ...]:
    """Per-factor 0/1 pattern of a central projection; raises if some
    block is neither ~0 nor ~identity."""
    mask = []
    for f, b in zip(z.algebra.factors, z.blocks):
        if _block_sup(f, b) <= tol:
            mask.append(False)
        elif _block_sup(f, b - _identity_block(f)) <= tol:
            mask.append(True)
        else:
            raise DomainError("not a central projection (block is neither 0 nor identity)")
    return tuple(mask)


def split_by_central(x: Element, z: Element) -> tuple[Element | None, Element | None]:
    """Split x into its parts inside and outside the central projection z.

    Each part is an element of the corresponding sub-algebra; a side with
    no factors is returned as None.  ``unsplit_by_central`` recombines.
    """
    _check_same_algebra(x, z)
    mask = central_mask(z)
    ins = [b for m, b in zip(mask, x.blocks) if m]
    outs = [b for m, b in zip(mask, x.blocks) if not m]
    in_factors = tuple(f for m, f in zip(mask, x.algebra.factors) if m)
    out_factors = tuple(f for m, f in zip(mask, x.algebra.factors) if not m)
    inside = _element(AlgebraDescriptor(in_factors), ins) if in_factors else None
    outside = _element(AlgebraDescriptor(out_factors), outs) if out_factors else None
    return inside, outside


def unsplit_by_central(
    alg: AlgebraDescriptor, z: Element, inside: Element | None, outside: Element | None
) -> Element:
    """Inverse of :func:`split_by_central`; exact block reassembly."""
    mask = central_mask(z)
    it_in = iter(inside.blocks if inside is not None else ())
    it_out = iter(outside.blocks if outside is not None else ())
    blocks = [next(it_in) if m else next(it_out) for m in mask]
    return _element(alg, blocks)


def has_totally_ordered_interval(x: Element) -> bool:
    """True when [0, x] is a chain: x is zero or a positive multiple of
    an atom (one strictly positive eigenvalue, projection of rank one)."""
    if not in_cone(x):
        raise DomainError("x must lie in the cone")
    dec = spectral_decompose(x)
    pos = [
        (lam, p) for lam, p in zip(dec.eigenvalues, dec.projections) if lam > dec.zero_tol
    ]
    if not pos:
        return True
    if len(pos) > 1:
        return False
    return abs(canonical_trace(pos[0][1]) - 1.0) <= 1e-6
