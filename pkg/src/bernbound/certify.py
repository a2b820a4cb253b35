"""Positivity certificates for rational functions over simplices.

The core predicate accepts a coefficient list when every rational Bernstein
coefficient is nonnegative and every vertex coefficient is strictly positive
(vertex coefficients are true function values, so a non-positive one refutes
positivity outright).  Certification proceeds either globally by degree
elevation or locally by subdivision at fixed degree, each with an a-priori
bound on the work needed when a positive lower bound for the function is
known.

Outcomes are three-valued: a budget is mandatory because a function that
merely touches zero admits no finite certificate, so loops must be allowed
to give up honestly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import floor
from typing import Optional, Sequence, Tuple

from .errors import DegreeTooLow, NonPositiveClaim
from .geometry import Simplex, diameter_sq
from .polypatch import BernsteinPatch
from .powerpoly import PowerPoly
from .ratpatch import ConvergenceConstants, RationalPatch, rational_patch
from .rationals import Rational, float_str, format_rational, parse_rational


class Verdict(str, Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


class Mode(str, Enum):
    SHARPNESS = "sharpness"
    GLOBAL_ELEVATION = "global-elevation"
    LOCAL_SUBDIVISION = "local-subdivision"


@dataclass(frozen=True)
class ClaimedMinimum:
    """A positive lower bound for a function, supplied or optimizer-produced."""

    value: Fraction

    def __post_init__(self):
        value = parse_rational(self.value)
        object.__setattr__(self, "value", value)
        if value <= 0:
            raise NonPositiveClaim(f"claimed minimum must be positive, got {value}")


@dataclass(frozen=True)
class Witness:
    """A point with its exact function value, plus how it arose."""

    point: Tuple[Fraction, ...]
    value: Fraction
    kind: str

    def to_json(self) -> dict:
        return {
            "point": [format_rational(c) for c in self.point],
            "value": format_rational(self.value),
            "value_float": float_str(self.value),
            "kind": self.kind,
        }


@dataclass(frozen=True)
class AprioriInfo:
    """A-priori sufficiency bounds attached to a report when claims exist."""

    d1: Optional[Fraction] = None
    d2: Optional[Fraction] = None
    degree_bound: Optional[int] = None
    depth_bound: Optional[int] = None

    def to_json(self) -> dict:
        out = {}
        if self.d1 is not None:
            out["D1"] = format_rational(self.d1)
        if self.d2 is not None:
            out["D2"] = format_rational(self.d2)
        if self.degree_bound is not None:
            out["degree_bound"] = self.degree_bound
        if self.depth_bound is not None:
            out["depth_bound"] = self.depth_bound
        return out


@dataclass(frozen=True)
class LeafRecord:
    """One visited subsimplex during local certification."""

    depth: int
    simplex: Simplex
    ratios: Tuple[Fraction, ...]
    certified: bool


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of a certification run."""

    verdict: Verdict
    mode: Mode
    degree_used: Optional[int] = None
    depth_used: Optional[int] = None
    witness: Optional[Witness] = None
    leaves: int = 0
    apriori: Optional[AprioriInfo] = None
    negated: bool = False
    leaf_log: Tuple[LeafRecord, ...] = ()
    wall_clock: float = 0.0

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "mode": self.mode.value,
            "degree_used": self.degree_used,
            "depth_used": self.depth_used,
            "witness": self.witness.to_json() if self.witness else None,
            "leaves": self.leaves,
            "apriori": self.apriori.to_json() if self.apriori else None,
            "negated": self.negated,
            "wall_clock": self.wall_clock,
        }
        return out


def cert_predicate(f: RationalPatch) -> bool:
    """All ratios nonnegative and every vertex ratio strictly positive."""
    if any(r < 0 for r in f.ratios):
        return False
    return all(r > 0 for r in f.vertex_ratios())


def _refuting_vertex(f: RationalPatch) -> Optional[Witness]:
    """First vertex whose ratio (a true function value) is non-positive."""
    for i, value in enumerate(f.vertex_ratios()):
        if value <= 0:
            return Witness(f.simplex.vertex(i), value, "vertex")
    return None


def certify_sharpness(f: RationalPatch) -> CertificateReport:
    """Certify when the minimum coefficient sits at a vertex index.

    A vertex coefficient is the function's value there, so a positive vertex
    minimum proves positivity and a non-positive vertex refutes it.  A
    minimum attained only at interior indices decides nothing.
    """
    start = time.perf_counter()
    refute = _refuting_vertex(f)
    if refute is not None:
        return CertificateReport(
            Verdict.REFUTED, Mode.SHARPNESS, degree_used=f.degree,
            witness=refute, wall_clock=time.perf_counter() - start,
        )
    lo = min(f.ratios)
    sharp = f.sharpness()
    if sharp.min_sharp:
        i = sharp.min_vertex
        witness = Witness(f.simplex.vertex(i), lo, "vertex")
        return CertificateReport(
            Verdict.CERTIFIED, Mode.SHARPNESS, degree_used=f.degree,
            witness=witness, leaves=1, wall_clock=time.perf_counter() - start,
        )
    return CertificateReport(
        Verdict.INCONCLUSIVE, Mode.SHARPNESS, degree_used=f.degree,
        wall_clock=time.perf_counter() - start,
    )


def certify_global(
    pnum: PowerPoly,
    pden: PowerPoly,
    simplex: Simplex,
    k_max: int,
) -> CertificateReport:
    """Elevate the rational form until the certificate predicate holds.

    Starts at the common polynomial degree and elevates one degree at a time.
    Termination before k_max is guaranteed only for strictly positive
    functions; a non-positive vertex value refutes immediately and is exact.
    """
    start = time.perf_counter()
    base = max(pnum.degree, pden.degree)
    if k_max < base:
        raise DegreeTooLow(f"k_max {k_max} below the function degree {base}")
    f = rational_patch(pnum, pden, simplex, base)
    refute = _refuting_vertex(f)
    if refute is not None:
        return CertificateReport(
            Verdict.REFUTED, Mode.GLOBAL_ELEVATION, degree_used=base,
            witness=refute, wall_clock=time.perf_counter() - start,
        )
    k = base
    while True:
        if cert_predicate(f):
            return CertificateReport(
                Verdict.CERTIFIED, Mode.GLOBAL_ELEVATION, degree_used=k,
                leaves=1, wall_clock=time.perf_counter() - start,
            )
        if k == k_max:
            return CertificateReport(
                Verdict.INCONCLUSIVE, Mode.GLOBAL_ELEVATION, degree_used=k_max,
                wall_clock=time.perf_counter() - start,
            )
        f = f.elevate()
        k += 1


def _refine_to(leaf: RationalPatch, threshold_sq: Fraction) -> Sequence[RationalPatch]:
    """At least one shrink round, then more until diameter^2 <= threshold."""
    pieces = leaf.split_round()
    while any(diameter_sq(p.simplex) > threshold_sq for p in pieces):
        refined = []
        for piece in pieces:
            if diameter_sq(piece.simplex) > threshold_sq:
                refined.extend(piece.split_round())
            else:
                refined.append(piece)
        pieces = refined
    return pieces


def certify_local(
    pnum: PowerPoly,
    pden: PowerPoly,
    simplex: Simplex,
    n_max: int,
    shrink: Rational = Fraction(1, 2),
) -> CertificateReport:
    """Subdivide at fixed degree until every leaf certifies.

    The degree never changes.  Depth d means every unresolved leaf has been
    refined to diameter at most shrink**d (in the domain's own coordinates),
    with at least one bisection round per depth step; certified leaves are
    pruned, a non-positive vertex value on any leaf refutes exactly, and the
    run gives up at depth n_max.
    """
    start = time.perf_counter()
    shrink = parse_rational(shrink)
    if not (0 < shrink < 1):
        raise ValueError(f"shrink factor must lie in (0, 1), got {shrink}")
    base = max(pnum.degree, pden.degree)
    root = rational_patch(pnum, pden, simplex, base)

    def report(verdict, depth, witness=None, leaves=0, log=()):
        return CertificateReport(
            verdict, Mode.LOCAL_SUBDIVISION, degree_used=base, depth_used=depth,
            witness=witness, leaves=leaves, leaf_log=tuple(log),
            wall_clock=time.perf_counter() - start,
        )

    refute = _refuting_vertex(root)
    if refute is not None:
        return report(Verdict.REFUTED, 0, witness=refute,
                      log=[LeafRecord(0, root.simplex, root.ratios, False)])
    log = []
    if cert_predicate(root):
        log.append(LeafRecord(0, root.simplex, root.ratios, True))
        return report(Verdict.CERTIFIED, 0, leaves=1, log=log)
    log.append(LeafRecord(0, root.simplex, root.ratios, False))
    pending = [root]
    certified = 0
    for depth in range(1, n_max + 1):
        threshold_sq = shrink ** (2 * depth)
        next_pending = []
        for leaf in pending:
            for piece in _refine_to(leaf, threshold_sq):
                refute = _refuting_vertex(piece)
                if refute is not None:
                    log.append(LeafRecord(depth, piece.simplex, piece.ratios, False))
                    return report(Verdict.REFUTED, depth, witness=refute,
                                  leaves=certified, log=log)
                if cert_predicate(piece):
                    certified += 1
                    log.append(LeafRecord(depth, piece.simplex, piece.ratios, True))
                else:
                    next_pending.append(piece)
                    log.append(LeafRecord(depth, piece.simplex, piece.ratios, False))
        pending = next_pending
        if not pending:
            return report(Verdict.CERTIFIED, depth, leaves=certified, log=log)
    return report(Verdict.INCONCLUSIVE, n_max, leaves=certified, log=log)


def certify_negative(
    pnum: PowerPoly,
    pden: PowerPoly,
    simplex: Simplex,
    via: str = "global",
    k_max: int = 30,
    n_max: int = 10,
    shrink: Rational = Fraction(1, 2),
) -> CertificateReport:
    """Certify negativity by certifying positivity of the negated numerator.

    Verdicts map symmetrically; the reported witness value is restored to the
    original function's sign (a refuting witness is a point where the
    function is >= 0).
    """
    negated_num = pnum.negate()
    if via == "global":
        inner = certify_global(negated_num, pden, simplex, k_max)
    elif via == "local":
        inner = certify_local(negated_num, pden, simplex, n_max, shrink)
    elif via == "sharpness":
        inner = certify_sharpness(rational_patch(negated_num, pden, simplex))
    else:
        raise ValueError(f"unknown certification mode: {via!r}")
    witness = inner.witness
    if witness is not None:
        witness = Witness(witness.point, -witness.value, witness.kind)
    return CertificateReport(
        inner.verdict, inner.mode, degree_used=inner.degree_used,
        depth_used=inner.depth_used, witness=witness, leaves=inner.leaves,
        apriori=inner.apriori, negated=True, leaf_log=inner.leaf_log,
        wall_clock=inner.wall_clock,
    )


def apriori_degree_omega(
    constants: ConvergenceConstants,
    fmin: ClaimedMinimum,
) -> int:
    """Smallest degree strictly above omega / fmin + 1 (and at least the
    function degree); sufficient for the global certificate when fmin truly
    bounds the function from below."""
    bound = constants.omega / fmin.value + 1
    return max(constants.base_degree, floor(bound) + 1)


def apriori_degree_pr(num_patch: BernsteinPatch, pmin: ClaimedMinimum) -> int:
    """Dimension-independent degree bound from the numerator alone.

    Takes the numerator's own-degree patch over the standard simplex and a
    positive lower bound for the numerator; returns the smallest admissible
    degree above l(l-1)/2 * max|coefficient| / pmin.  For degree <= 1 the
    bound is vacuous and the function degree itself suffices.
    """
    degree = num_patch.degree
    if degree <= 1:
        return degree
    peak = max(abs(c) for c in num_patch.coeffs)
    bound = Fraction(degree * (degree - 1), 2) * peak / pmin.value
    return max(degree, floor(bound) + 1)


@dataclass(frozen=True)
class CombinedDegrees:
    """Both a-priori degree bounds and the degree exceeding their maximum."""

    d1: Fraction
    d2: Fraction
    degree: int


def apriori_degree_combined(
    constants: ConvergenceConstants,
    fmin: ClaimedMinimum,
    num_patch: BernsteinPatch,
    pmin: ClaimedMinimum,
) -> CombinedDegrees:
    """D1 = omega/fmin + 1, D2 = l(l-1)/2 * max|b|/pmin, and the smallest
    integer degree strictly above max(D1, D2)."""
    d1 = constants.omega / fmin.value + 1
    degree = num_patch.degree
    peak = max(abs(c) for c in num_patch.coeffs)
    d2 = Fraction(degree * (degree - 1), 2) * peak / pmin.value
    return CombinedDegrees(d1, d2, floor(max(d1, d2)) + 1)


def apriori_depth(
    constants: ConvergenceConstants,
    fmin: ClaimedMinimum,
    shrink: Rational = Fraction(1, 2),
) -> int:
    """Smallest depth N with shrink^(2N) * 2*omega_prime < fmin.

    Uses the squared form of the sufficiency condition so no irrational
    square roots enter; sufficient for the local certificate at that depth.
    """
    shrink = parse_rational(shrink)
    if not (0 < shrink < 1):
        raise ValueError(f"shrink factor must lie in (0, 1), got {shrink}")
    factor = 2 * constants.omega_prime
    depth = 0
    while shrink ** (2 * depth) * factor >= fmin.value:
        depth += 1
    return depth
