"""Fixed directions of the rotation action, and absorbing-rotation certificates.

Every non-identity word in the rotation group fixes exactly one projective
direction (its axis).  Collecting the axes over a word ball gives a finite
stand-in for the countable fixed-point set that obstructs freeness on the
full sphere.  The second half of the module certifies, with interval
arithmetic, that an auxiliary rotation g pushes that finite set C completely
off itself: the iterates g(C), g^2(C), ... stay disjoint from C, which is the
finite shadow of the absorption argument that trades the sphere for the
sphere minus C.

Exact data (integer axes, rational or exact-binary angles) stays exact for
as long as possible.  Unit vectors and trigonometry appear only inside
interval computations, so every reported margin is a true lower bound for
the rotation by the exact stored angle.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from math import gcd
from typing import Iterator, Mapping

import mpmath
from mpmath import iv

from .errors import (
    DegenerateInputError,
    DomainError,
    InconclusiveError,
    InvariantViolationError,
)
from .exactlin import Mat3, ProjectiveDirection, Vec3, ball_matrices, integer_kernel_basis
from .words import DEFAULT_BALL_CAP, Letter, ReducedWord

# Pairs certified closer than this are reported as collisions by absorb_demo.
# Honest geometry at this scale either coincides or is separated by far more.
SEPARATION_RESOLUTION = 1e-12

DEFAULT_PRECISION_BITS = 128
MAX_PRECISION_BITS = 1024


# -- fixed directions -------------------------------------------------------


@dataclass(frozen=True)
class FixedDirectionSet:
    """All directions fixed by some non-identity word of length <= depth.

    ``witnesses`` maps each direction to the first (hence shortest) word
    found to fix it; it is informational and does not take part in equality.
    """

    depth: int
    directions: frozenset[ProjectiveDirection]
    witnesses: Mapping[ProjectiveDirection, ReducedWord] = field(
        compare=False, hash=False, repr=False, default_factory=dict
    )

    def __contains__(self, direction: ProjectiveDirection) -> bool:
        return direction in self.directions

    def __len__(self) -> int:
        return len(self.directions)

    def sorted_triples(self) -> list[tuple[int, int, int]]:
        return sorted(d.as_tuple() for d in self.directions)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "directions": [list(t) for t in self.sorted_triples()],
        }


def fixed_directions(
    depth: int,
    generators: Mapping[Letter, Mat3] | None = None,
    *,
    cap: int = DEFAULT_BALL_CAP,
) -> FixedDirectionSet:
    """Axes of every non-identity word in ball(depth), canonical and deduplicated.

    A word and its inverse share an axis, as do conjugates that happen to fall
    in the same ball, so the set grows far more slowly than the ball itself.
    Raises InvariantViolationError if any word's fixed space is not a line,
    which for special orthogonal input would mean corrupted generators.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    found: dict[ProjectiveDirection, ReducedWord] = {}
    for word, ints, den in ball_matrices(depth, generators, cap=cap):
        if not word.letters:
            continue
        rows = [
            [ints[0] - den, ints[1], ints[2]],
            [ints[3], ints[4] - den, ints[5]],
            [ints[6], ints[7], ints[8] - den],
        ]
        basis = integer_kernel_basis(rows)
        if len(basis) != 1:
            raise InvariantViolationError(
                f"fixed space of {word} is {len(basis)}-dimensional; expected a single axis"
            )
        direction = ProjectiveDirection.canonical(*basis[0])
        found.setdefault(direction, word)
    return FixedDirectionSet(depth, frozenset(found), found)


def _as_direction(v0) -> ProjectiveDirection:
    if isinstance(v0, ProjectiveDirection):
        return v0
    if isinstance(v0, Vec3):
        return ProjectiveDirection.of_vec(v0)
    x, y, z = v0
    return ProjectiveDirection.canonical(x, y, z)


def is_free_at_direct(
    v0,
    depth: int,
    generators: Mapping[Letter, Mat3] | None = None,
    *,
    cap: int = DEFAULT_BALL_CAP,
) -> bool:
    """Freeness oracle by brute evaluation: no ball word may fix v0's direction.

    Works on the primitive integer representative, so w fixes the direction
    iff the scaled integer matrix satisfies M v = d v exactly.
    """
    x, y, z = _as_direction(v0).as_tuple()
    for word, ints, den in ball_matrices(depth, generators, cap=cap):
        if not word.letters:
            continue
        image = (
            ints[0] * x + ints[1] * y + ints[2] * z,
            ints[3] * x + ints[4] * y + ints[5] * z,
            ints[6] * x + ints[7] * y + ints[8] * z,
        )
        if image == (den * x, den * y, den * z):
            return False
    return True


def is_free_at(
    v0,
    depth: int,
    generators: Mapping[Letter, Mat3] | None = None,
    *,
    cap: int = DEFAULT_BALL_CAP,
    cross_check: bool = True,
) -> bool:
    """True when no non-identity word of length <= depth fixes the direction of v0.

    Computed by membership in the assembled fixed-direction set and, unless
    disabled, cross-checked against direct evaluation of every ball word.
    The two routes share no kernel machinery, so a disagreement means a bug
    in one of them and raises rather than guessing.
    """
    direction = _as_direction(v0)
    by_set = direction not in fixed_directions(depth, generators, cap=cap)
    if cross_check:
        by_eval = is_free_at_direct(direction, depth, generators, cap=cap)
        if by_eval != by_set:
            raise InvariantViolationError(
                f"freeness oracles disagree at {direction}: set={by_set} direct={by_eval}"
            )
    return by_set


# -- interval geometry ------------------------------------------------------


@contextmanager
def interval_precision(bits: int) -> Iterator[None]:
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _iv_number(x):
    """Embed an int, exact binary float, or Fraction as a (near-)point interval."""
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    return iv.mpf(x)


def _iv_unit(triple: tuple[int, int, int]):
    n2 = sum(c * c for c in triple)
    norm = iv.sqrt(iv.mpf(n2))
    return tuple(iv.mpf(c) / norm for c in triple)


def _iv_rotate(axis_unit, cos_t, sin_t, v):
    """Rodrigues rotation of an interval vector around an interval unit axis."""
    kx, ky, kz = axis_unit
    vx, vy, vz = v
    cx = ky * vz - kz * vy
    cy = kz * vx - kx * vz
    cz = kx * vy - ky * vx
    dot = kx * vx + ky * vy + kz * vz
    w = dot * (iv.mpf(1) - cos_t)
    return (
        vx * cos_t + cx * sin_t + kx * w,
        vy * cos_t + cy * sin_t + ky * w,
        vz * cos_t + cz * sin_t + kz * w,
    )


def _iv_dist2(p, q):
    # ``** 2`` keeps each square nonnegative; ``x * x`` would not, because the
    # interval product forgets the two factors are the same number.
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2


def _shrink_lower(value: float) -> float:
    # Conservative slack for the mpf->float round trips around the bound.
    for _ in range(3):
        value = math.nextafter(value, -math.inf)
    return max(value, 0.0)


# -- absorbing rotations ----------------------------------------------------


@dataclass(frozen=True)
class AbsorbingRotation:
    """A rotation certified to keep iterates of a finite direction set apart.

    ``angle`` is an exact value in radians: a Fraction from the search, or an
    mpf when constructed deliberately (e.g. a bad angle for the control
    experiment).  The certificate applies to the stored value itself, not to
    a nearby ideal angle.  ``margin`` is a certified lower bound on every
    distance inspected up to ``depth_checked`` powers, rounded down.
    find_absorbing_rotation only returns instances with margin > 0; the
    constructor tolerates margin 0 so corrupted rotations can be fed back
    into absorb_demo.
    """

    axis: ProjectiveDirection
    angle: Fraction | mpmath.mpf
    depth_checked: int
    margin: float
    precision_bits: int

    def __post_init__(self) -> None:
        if self.margin < 0:
            raise ValueError("margin cannot be negative")
        if self.precision_bits < 1:
            raise ValueError("precision_bits must be positive")

    def angle_decimal(self, digits: int | None = None) -> str:
        if digits is None:
            digits = max(17, int(self.precision_bits * 0.302) + 1)
        with mpmath.workprec(max(self.precision_bits, 53)):
            if isinstance(self.angle, Fraction):
                x = mpmath.mpf(self.angle.numerator) / self.angle.denominator
            else:
                x = mpmath.mpf(self.angle)
            return mpmath.nstr(x, digits)

    def to_json(self) -> dict:
        return {
            "axis": list(self.axis.as_tuple()),
            "angle": self.angle_decimal(),
            "angle_exact": str(self.angle) if isinstance(self.angle, Fraction) else None,
            "depth_checked": self.depth_checked,
            "margin": self.margin,
            "precision_bits": self.precision_bits,
        }


def axis_candidates(
    excluded: frozenset[ProjectiveDirection] | set[ProjectiveDirection],
    *,
    limit: int = 3,
) -> list[ProjectiveDirection]:
    """Primitive canonical integer directions not in ``excluded``, small first.

    Ordered by largest component, then component-sum, then lexicographically,
    so coordinate axes come before diagonals.
    """
    out: list[ProjectiveDirection] = []
    for bound in range(1, limit + 1):
        batch = []
        for triple in _cartesian(range(-bound, bound + 1), repeat=3):
            if max(abs(c) for c in triple) != bound:
                continue
            if gcd(*triple) != 1:
                continue
            first = next(c for c in triple if c)
            if first < 0:
                continue
            d = ProjectiveDirection(*triple)
            if d not in excluded:
                batch.append(d)
        batch.sort(key=lambda d: (sum(abs(c) for c in d.as_tuple()), d.as_tuple()))
        out.extend(batch)
    return out


ANGLE_CANDIDATES = tuple(Fraction(1, k) for k in range(1, 9))


def certify_margin(
    axis: ProjectiveDirection,
    angle,
    directions,
    powers: int,
    precision_bits: int,
) -> float | None:
    """Certified lower bound on |g^i(unit(p)) - unit(q)| over all pairs and 1 <= i <= powers.

    Returns None as soon as some distance interval fails to stay above zero,
    which covers both genuinely bad angles and insufficient precision; the
    two are indistinguishable from inside interval arithmetic.
    """
    triples = sorted(d.as_tuple() for d in directions)
    if not triples:
        raise DegenerateInputError("no directions to separate")
    with interval_precision(precision_bits):
        axis_unit = _iv_unit(axis.as_tuple())
        points = [_iv_unit(t) for t in triples]
        theta = _iv_number(angle)
        min_low = None
        for i in range(1, powers + 1):
            ti = theta * i
            cos_t, sin_t = iv.cos(ti), iv.sin(ti)
            for p in points:
                gp = _iv_rotate(axis_unit, cos_t, sin_t, p)
                for q in points:
                    low = _iv_dist2(gp, q).a
                    if not low > 0:
                        return None
                    if min_low is None or low < min_low:
                        min_low = low
        bound = math.sqrt(float(mpmath.mpf(min_low.a)))
    return _shrink_lower(bound)


def find_absorbing_rotation(
    C: FixedDirectionSet,
    M: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    *,
    max_axes: int = 6,
) -> AbsorbingRotation:
    """Search small integer axes and simple rational angles for a certified rotation.

    Axes already fixed by some ball word are skipped during selection.  The
    angle heuristic (1, 1/2, 1/3, ... radians) avoids rational multiples of
    pi, but only the interval certificate carries the truth.  Certification
    happens at the given precision only; if nothing certifies, raises
    InconclusiveError and the caller may retry with more bits.
    """
    if M < 1:
        raise ValueError("need at least one power to check")
    if not C.directions:
        raise DegenerateInputError("empty direction set has nothing to absorb")
    for axis_dir in axis_candidates(C.directions)[:max_axes]:
        for angle in ANGLE_CANDIDATES:
            margin = certify_margin(axis_dir, angle, C.directions, M, precision_bits)
            if margin is not None and margin > 0:
                return AbsorbingRotation(axis_dir, angle, M, margin, precision_bits)
    raise InconclusiveError(
        f"no candidate rotation certified at {precision_bits} bits; raise the precision"
    )


def find_absorbing_rotation_adaptive(
    C: FixedDirectionSet,
    M: int,
    *,
    start_bits: int = DEFAULT_PRECISION_BITS,
    max_bits: int = MAX_PRECISION_BITS,
) -> AbsorbingRotation:
    """Double the interval precision until certification succeeds or the cap is hit."""
    bits = start_bits
    while True:
        try:
            return find_absorbing_rotation(C, M, bits)
        except InconclusiveError:
            if bits >= max_bits:
                raise
            bits = min(2 * bits, max_bits)


# -- truncated Hilbert-hotel demo -------------------------------------------


@dataclass(frozen=True)
class AbsorbReport:
    """Outcome of the finite absorption check D_M = C u g(C) u ... u g^M(C)."""

    depth: int
    powers: int
    precision_bits: int
    n_points: int
    certified_depth_ok: bool
    min_separation: float
    collision: tuple | None
    unresolved: tuple | None
    outcome: str

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def summary(self) -> str:
        head = (
            f"absorption demo: {self.n_points} points "
            f"({self.powers + 1} layers over {self.n_points // (self.powers + 1)} directions), "
            f"{self.precision_bits} bits"
        )
        if self.outcome == "pass":
            return f"{head}: all pairwise distances >= {self.min_separation:.6g} -> pass"
        if self.outcome == "fail":
            return f"{head}: collision {self.collision} -> fail"
        return f"{head}: unresolved pair {self.unresolved} -> inconclusive"


def absorb_demo(
    C: FixedDirectionSet,
    g: AbsorbingRotation,
    M: int,
    *,
    precision_bits: int | None = None,
) -> AbsorbReport:
    """Check the truncated absorption picture with fresh interval arithmetic.

    Builds the layers g^i(unit(P)) for 0 <= i <= M and every P in C, and
    certifies that all (M+1)*|C| points are pairwise distinct.  That both
    makes the layers honest copies of C and puts g(D_{M-1}) inside D_M minus
    the base layer; the identity g(g^i P) = g^{i+1} P needs no numerics.

    The rotation's own certificate is not trusted here: everything is
    recomputed, so a deliberately corrupted angle is diagnosed rather than
    rejected up front.  Outcome is "fail" only when two points are certified
    closer than SEPARATION_RESOLUTION, "inconclusive" when an interval
    straddles zero without resolving.
    """
    if M < 1:
        raise ValueError("need at least one rotated layer")
    if not C.directions:
        raise DegenerateInputError("empty direction set has nothing to absorb")
    bits = precision_bits if precision_bits is not None else g.precision_bits
    triples = sorted(d.as_tuple() for d in C.directions)
    labels = [(i, t) for i in range(M + 1) for t in triples]
    resolution_sq = SEPARATION_RESOLUTION**2

    collision = None
    unresolved = None
    min_low = None
    with interval_precision(bits):
        axis_unit = _iv_unit(g.axis.as_tuple())
        theta = _iv_number(g.angle)
        base = [_iv_unit(t) for t in triples]
        layers = [base]
        for i in range(1, M + 1):
            ti = theta * i
            cos_t, sin_t = iv.cos(ti), iv.sin(ti)
            layers.append([_iv_rotate(axis_unit, cos_t, sin_t, p) for p in base])
        points = [p for layer in layers for p in layer]
        for ia in range(len(points)):
            for ib in range(ia + 1, len(points)):
                d2 = _iv_dist2(points[ia], points[ib])
                if d2.a > 0:
                    if min_low is None or d2.a < min_low:
                        min_low = d2.a
                    continue
                pair = (labels[ia], labels[ib])
                if d2.b < resolution_sq:
                    collision = pair
                    break
                unresolved = pair
            if collision is not None:
                break
        if min_low is not None:
            separation = _shrink_lower(math.sqrt(float(mpmath.mpf(min_low.a))))
        else:
            separation = 0.0

    if collision is not None:
        outcome = "fail"
    elif unresolved is not None:
        outcome = "inconclusive"
    else:
        outcome = "pass"
    return AbsorbReport(
        depth=C.depth,
        powers=M,
        precision_bits=bits,
        n_points=len(labels),
        certified_depth_ok=g.depth_checked >= M,
        min_separation=separation,
        collision=collision,
        unresolved=unresolved,
        outcome=outcome,
    )


# -- bad-angle control ------------------------------------------------------


def _int_triple(v) -> tuple[int, int, int]:
    if isinstance(v, ProjectiveDirection):
        return v.as_tuple()
    x, y, z = v
    return (int(x), int(y), int(z))


def equal_latitude(axis, p, q) -> bool:
    """Exact test that integer vectors p and q lie on one circle around the axis.

    Same circle means equal signed cosine against the axis, checked without
    square roots: <p,L>^2 |q|^2 == <q,L>^2 |p|^2 with matching signs.
    """
    L = _int_triple(axis)
    tp, tq = _int_triple(p), _int_triple(q)
    dp = sum(a * b for a, b in zip(tp, L))
    dq = sum(a * b for a, b in zip(tq, L))
    np2 = sum(a * a for a in tp)
    nq2 = sum(a * a for a in tq)
    return dp * dp * nq2 == dq * dq * np2 and (dp > 0) == (dq > 0) and (dp < 0) == (dq < 0)


def bad_angle_for(axis, p, q, precision_bits: int = 256) -> mpmath.mpf:
    """The rotation angle around ``axis`` that carries unit(p) onto unit(q).

    Exists only when the two points share a latitude circle around the axis;
    use it to corrupt an absorbing rotation on purpose and watch absorb_demo
    report the collision.  The result is an exact binary float computed at
    the requested precision.
    """
    L = _int_triple(axis)
    tp, tq = _int_triple(p), _int_triple(q)
    cross_pL = (
        tp[1] * L[2] - tp[2] * L[1],
        tp[2] * L[0] - tp[0] * L[2],
        tp[0] * L[1] - tp[1] * L[0],
    )
    cross_qL = (
        tq[1] * L[2] - tq[2] * L[1],
        tq[2] * L[0] - tq[0] * L[2],
        tq[0] * L[1] - tq[1] * L[0],
    )
    if not any(cross_pL) or not any(cross_qL):
        raise DegenerateInputError("point on the axis has no rotation angle")
    if not equal_latitude(L, tp, tq):
        raise DomainError("points on different latitude circles; no rotation maps one to the other")
    if sum(a * a for a in tp) != sum(a * a for a in tq):
        # Equal latitude already forces proportional norms; with integer data
        # demand exact equality so unit(p) and unit(q) share a circle radius.
        raise DomainError("integer representatives must have equal length")
    with mpmath.workprec(precision_bits):
        ln = mpmath.sqrt(sum(a * a for a in L))
        lhat = [mpmath.mpf(a) / ln for a in L]
        dp = sum(a * b for a, b in zip(tp, L))
        # Components of p and q orthogonal to the axis; equal latitude makes
        # the two rejections equally long, so atan2 of the un-normalized
        # sine/cosine parts is the exact rotation angle.
        p_perp = [mpmath.mpf(a) - dp * lh / ln for a, lh in zip(tp, lhat)]
        dq = sum(a * b for a, b in zip(tq, L))
        q_perp = [mpmath.mpf(a) - dq * lh / ln for a, lh in zip(tq, lhat)]
        cos_part = sum(a * b for a, b in zip(p_perp, q_perp))
        cross = [
            p_perp[1] * q_perp[2] - p_perp[2] * q_perp[1],
            p_perp[2] * q_perp[0] - p_perp[0] * q_perp[2],
            p_perp[0] * q_perp[1] - p_perp[1] * q_perp[0],
        ]
        sin_part = sum(a * b for a, b in zip(lhat, cross))
        return mpmath.atan2(sin_part, cos_part)


def corrupted_rotation(p, q, precision_bits: int = 256) -> AbsorbingRotation:
    """A rotation built to collide: it carries unit(p) exactly onto unit(q).

    The half turn about p + q swaps the two unit vectors, so that bisector
    is always a legal transport axis when the integer representatives have
    equal length and are not parallel.  Feed the result to absorb_demo and
    the first two layers must collide; the demo catching it is the control.
    """
    tp, tq = _int_triple(p), _int_triple(q)
    bisector = tuple(a + b for a, b in zip(tp, tq))
    if not any(bisector):
        raise DegenerateInputError("antipodal pair: every axis in their normal plane works, pick one explicitly")
    axis = ProjectiveDirection.canonical(*bisector)
    theta = bad_angle_for(axis, p, q, precision_bits)
    return AbsorbingRotation(
        axis=axis,
        angle=theta,
        depth_checked=0,
        margin=0.0,
        precision_bits=precision_bits,
    )
