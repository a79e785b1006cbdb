"""Membership, dimension, basis and intersection of generated matrix algebras.

Verdicts come from the span matrix (rank and range); human-readable word
certificates come from the word-span baseline, which can exhibit an explicit
combination where the span matrix only proves existence.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import wordspan
from .generators import GeneratorSet
from .matrix import Mat, in_range, range_basis, subspace_intersect, unvec, vec
from .resolvent import SpanMatrixReport, span_matrix


@dataclass(frozen=True)
class MembershipResult:
    """Verdict for one candidate matrix.

    ``residual`` is exactly zero for members on exact backends and a
    least-squares residual on approximate ones.  ``certificate`` (when
    requested and available) lists (word, coefficient) pairs whose
    combination reconstructs the candidate; words are tuples of 0-based
    generator indices, the empty tuple meaning the identity.
    """

    member: bool
    residual: object
    certificate: list | None = None


@dataclass(frozen=True)
class AlgebraBasis:
    """A basis of the algebra as n x n matrices."""

    dim: int
    mats: tuple[Mat, ...]
    source: str  # "resolvent" or "wordspan"


def dimension(gs: GeneratorSet, tol: float | None = None) -> int:
    """Dimension of the algebra generated by ``gs`` (rank of its span matrix)."""
    return span_matrix(gs, tol=tol).rank


def membership(
    gs: GeneratorSet,
    z: Mat,
    want_certificate: bool = False,
    tol: float | None = None,
    report: SpanMatrixReport | None = None,
) -> MembershipResult:
    """Does ``z`` lie in the algebra generated by ``gs``?

    Pass a precomputed ``report`` to amortize the span matrix across many
    candidates.
    """
    if z.rows != gs.n or z.cols != gs.n:
        raise ValueError(f"candidate must be {gs.n}x{gs.n}")
    if z.kind != gs.kind:
        raise ValueError("candidate kind differs from generator kind")
    if report is None:
        report = span_matrix(gs, tol=None)
    member, residual = in_range(report.matrix, vec(z), tol)
    certificate = None
    if member and want_certificate:
        wb = wordspan.word_span(gs)
        if wb.saturated:
            certificate = wordspan.express(wb, z, tol)
    return MembershipResult(member=member, residual=residual, certificate=certificate)


def basis(gs: GeneratorSet, tol: float | None = None) -> AlgebraBasis:
    """Basis matrices devectorized from a range basis of the span matrix."""
    report = span_matrix(gs, tol=tol)
    rb = range_basis(report.matrix, tol)
    mats = tuple(unvec(rb.col(j), gs.n, gs.n) for j in range(rb.cols))
    return AlgebraBasis(dim=len(mats), mats=mats, source="resolvent")


def intersect(gs_a: GeneratorSet, gs_b: GeneratorSet, tol: float | None = None) -> AlgebraBasis:
    """Basis of the intersection of two generated algebras."""
    if gs_a.n != gs_b.n:
        raise ValueError("intersection needs matrices of the same side")
    if gs_a.kind != gs_b.kind:
        raise ValueError("intersection needs the same scalar kind")
    if gs_a.unital != gs_b.unital:
        raise ValueError("intersection needs matching unital flags")
    u = range_basis(span_matrix(gs_a, tol=tol).matrix, tol)
    v = range_basis(span_matrix(gs_b, tol=tol).matrix, tol)
    w = subspace_intersect(u, v, tol)
    mats = tuple(unvec(w.col(j), gs_a.n, gs_a.n) for j in range(w.cols))
    return AlgebraBasis(dim=len(mats), mats=mats, source="resolvent")
