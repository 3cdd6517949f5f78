"""Finite action models, paradox witnesses, and two worked decompositions.

A :class:`FiniteActionModel` is a finite set of points with labelled maps.
Witness verifiers check the set-theoretic content of a paradoxical or
equidecomposability claim on such a model.  Infinite sets only ever appear
through finite truncations, so covering identities may be scoped to an
*interior* subset: points whose preimages stay inside the truncation.
Boundary effects are reported, never silently passed.

Two concrete decompositions are built here:

* the Sierpinski-Mazurkiewicz style planar set E = {P(e^i) : P has
  nonnegative integer coefficients}, where multiplying by e^-i and
  subtracting 1 realize a paradox using two pieces (``smp_*`` functions);

* the orbit of an integer base vector under the free rotation group
  (:func:`orbit_transport`), which transports the word-level decomposition
  to honest subsets of the sphere's orbit points.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

import mpmath

from .errors import DomainError, InvariantViolationError, ModelError, PreconditionError
from .freeness import FreenessCertificate, verify_certificate
from .report import Finding
from .words import DEFAULT_BALL_CAP, Letter, PrefixClass, ReducedWord, ball, prefix_class
from .exactlin import Vec3, ball_matrices, generator_matrix

Point = Hashable


# ---------------------------------------------------------------------------
# finite action models
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class FiniteActionModel:
    """Points plus labelled maps; ``partial`` admits truncation boundaries.

    Total models require every label to act as a bijection.  Partial models
    (finite shadows of infinite actions) require injectivity on the defined
    domain instead; the identity label must still be total.
    """

    points: frozenset
    maps: Mapping[str, Mapping[Point, Point]]
    identity: str = "e"
    partial: bool = False
    compose: Mapping[tuple[str, str], str] | None = None

    def validate(self) -> None:
        if self.identity not in self.maps:
            raise ModelError(f"identity label {self.identity!r} missing from maps")
        for label, mapping in self.maps.items():
            dom = set(mapping)
            rng = set(mapping.values())
            if not dom <= self.points or not rng <= self.points:
                raise ModelError(f"label {label!r} maps outside the point set")
            if len(rng) != len(mapping):
                raise ModelError(f"label {label!r} is not injective")
            if not self.partial and dom != self.points:
                raise ModelError(f"label {label!r} is not total on the point set")
        ident = self.maps[self.identity]
        if set(ident) != self.points or any(ident[p] != p for p in ident):
            raise ModelError("identity label must fix every point")
        if self.compose:
            for (g, h), k in self.compose.items():
                for lbl in (g, h, k):
                    if lbl not in self.maps:
                        raise ModelError(f"composition table uses unknown label {lbl!r}")
                gh, hh, kk = self.maps[g], self.maps[h], self.maps[k]
                for x, hx in hh.items():
                    if hx in gh:
                        if x not in kk or kk[x] != gh[hx]:
                            raise ModelError(f"composition {g!r}*{h!r} != {k!r} at {x!r}")

    def image(self, label: str, piece: frozenset) -> tuple[frozenset, frozenset]:
        """(image of the defined part, points where the label is undefined)."""
        if label not in self.maps:
            raise ModelError(f"unknown group label {label!r}")
        mapping = self.maps[label]
        undefined = frozenset(p for p in piece if p not in mapping)
        return frozenset(mapping[p] for p in piece if p in mapping), undefined


@dataclass(frozen=True)
class ParadoxWitness:
    """Disjoint pieces A_i, B_j with movers whose images each cover the set."""

    pieces_a: tuple[frozenset, ...]
    movers_a: tuple[str, ...]
    pieces_b: tuple[frozenset, ...]
    movers_b: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.pieces_a) != len(self.movers_a) or len(self.pieces_b) != len(self.movers_b):
            raise ModelError("each piece needs exactly one mover")
        if not self.pieces_a or not self.pieces_b:
            raise ModelError("a paradox witness needs pieces on both sides")


@dataclass(frozen=True)
class EquidecompWitness:
    pieces: tuple[frozenset, ...]
    movers: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.pieces) != len(self.movers):
            raise ModelError("each piece needs exactly one mover")
        if not self.pieces:
            raise ModelError("an equidecomposition needs at least one piece")


@dataclass(frozen=True)
class WitnessReport:
    findings: tuple[Finding, ...]
    details: dict

    @property
    def passed(self) -> bool:
        return all(f.ok for f in self.findings)


def _disjointness(pieces: Sequence[frozenset]) -> list[str]:
    problems = []
    for i, j in itertools.combinations(range(len(pieces)), 2):
        overlap = pieces[i] & pieces[j]
        if overlap:
            problems.append(f"pieces {i} and {j} share {len(overlap)} point(s)")
    return problems


def verify_paradox_witness(
    model: FiniteActionModel,
    space: frozenset,
    witness: ParadoxWitness,
    *,
    interior: frozenset | None = None,
) -> WitnessReport:
    """Check disjointness and both covering identities on a finite model.

    ``interior`` scopes the covering requirement for truncated models; the
    uncovered boundary is reported in the details either way.
    """
    model.validate()
    target = space if interior is None else interior
    if not target <= space:
        raise ModelError("interior must sit inside the space")
    findings: list[Finding] = []
    all_pieces = list(witness.pieces_a) + list(witness.pieces_b)
    contained = all(p <= space for p in all_pieces)
    findings.append(Finding("pieces_in_space", contained, "" if contained else "a piece leaves the space"))
    overlap_problems = _disjointness(all_pieces)
    findings.append(Finding("pieces_disjoint", not overlap_problems, "; ".join(overlap_problems)))

    details: dict = {"space_size": len(space), "interior_size": len(target)}
    for side, pieces, movers in (("a", witness.pieces_a, witness.movers_a), ("b", witness.pieces_b, witness.movers_b)):
        union: frozenset = frozenset()
        undefined_total = 0
        for piece, mover in zip(pieces, movers):
            img, undefined = model.image(mover, piece)
            union |= img
            undefined_total += len(undefined)
        in_space = union <= space
        covers = target <= union
        missing = target - union
        findings.append(
            Finding(
                f"moved_{side}_defined",
                undefined_total == 0,
                "" if not undefined_total else f"mover undefined on {undefined_total} point(s)",
            )
        )
        findings.append(
            Finding(
                f"moved_{side}_covers",
                covers and in_space,
                "" if covers and in_space else f"{len(missing)} interior point(s) uncovered",
            )
        )
        details[f"moved_{side}_size"] = len(union)
        details[f"boundary_{side}_leak"] = len(union - target)
    return WitnessReport(tuple(findings), details)


def two_to_one_shift_model(
    max_len: int,
) -> tuple[FiniteActionModel, frozenset, ParadoxWitness, frozenset]:
    """Truncated paradoxical shift on binary strings: (model, space, witness, interior).

    The space is all binary strings of length <= max_len.  Stripping a
    leading 0 maps the strings starting with 0 injectively onto everything of
    length <= max_len - 1, and likewise for 1, so the space carries two
    disjoint pieces each of which alone re-covers the interior.  Unlike the
    group-theoretic decompositions this one is exactly measure-balanced at
    every truncation: each string of length <= max_len - 1 has exactly one
    preimage per piece, which makes it the cleanest input for the
    measure-contradiction chain.
    """
    if max_len < 1:
        raise ValueError("need strings of length at least 1")
    space = frozenset(
        "".join(bits) for n in range(max_len + 1) for bits in itertools.product("01", repeat=n)
    )
    interior = frozenset(s for s in space if len(s) < max_len)
    piece0 = frozenset(s for s in space if s.startswith("0"))
    piece1 = frozenset(s for s in space if s.startswith("1"))
    model = FiniteActionModel(
        points=space,
        maps={
            "e": {s: s for s in space},
            "s0": {s: s[1:] for s in piece0},
            "s1": {s: s[1:] for s in piece1},
        },
        partial=True,
    )
    witness = ParadoxWitness(
        pieces_a=(piece0,), movers_a=("s0",), pieces_b=(piece1,), movers_b=("s1",)
    )
    return model, space, witness, interior


def f2_ball_model(
    depth: int,
    *,
    cap: int = DEFAULT_BALL_CAP,
) -> tuple[FiniteActionModel, frozenset, ParadoxWitness, frozenset]:
    """The four-piece free-group decomposition on a word ball: (model, space, witness, interior).

    Points are the reduced words of length <= depth; each generator letter
    acts by left multiplication where the product stays inside the ball.  The
    witness pairs the prefix classes with the movers of the covering
    identities: every word lies in W(a) or equals a * (a^-1 h) with a^-1 h in
    W(a^-1), and likewise for b.  Both identities hold exactly on the
    interior ball of radius depth - 1, which is where a truncated chain can
    be audited honestly.
    """
    if depth < 2:
        raise ValueError("depth must be at least 2 so the interior is nontrivial")
    space = frozenset(ball(depth, cap=cap))
    maps: dict[str, dict] = {"e": {w: w for w in space}}
    for letter in Letter:
        gen = ReducedWord((letter,))
        action = {}
        for w in space:
            moved = gen * w
            if len(moved.letters) <= depth:
                action[w] = moved
        maps[letter.symbol] = action
    model = FiniteActionModel(points=space, maps=maps, partial=True)

    def cls(p: PrefixClass) -> frozenset:
        return frozenset(w for w in space if prefix_class(w) is p)

    witness = ParadoxWitness(
        pieces_a=(cls(PrefixClass.W_A), cls(PrefixClass.W_A_INV)),
        movers_a=("e", Letter.A.symbol),
        pieces_b=(cls(PrefixClass.W_B), cls(PrefixClass.W_B_INV)),
        movers_b=("e", Letter.B.symbol),
    )
    interior = frozenset(w for w in space if len(w.letters) < depth)
    return model, space, witness, interior


def verify_equidecomp(
    model: FiniteActionModel,
    source: frozenset,
    target: frozenset,
    witness: EquidecompWitness,
) -> WitnessReport:
    """Pieces partition the source; moved pieces partition the target."""
    model.validate()
    findings: list[Finding] = []
    src_union: frozenset = frozenset()
    for p in witness.pieces:
        src_union |= p
    problems = _disjointness(witness.pieces)
    findings.append(Finding("pieces_disjoint", not problems, "; ".join(problems)))
    findings.append(
        Finding("pieces_partition_source", src_union == source,
                "" if src_union == source else f"source mismatch by {len(src_union ^ source)} point(s)")
    )
    images = []
    undefined_total = 0
    for piece, mover in zip(witness.pieces, witness.movers):
        img, undefined = model.image(mover, piece)
        images.append(img)
        undefined_total += len(undefined)
    findings.append(Finding("movers_defined", undefined_total == 0,
                            "" if not undefined_total else f"{undefined_total} undefined point(s)"))
    problems = _disjointness(images)
    findings.append(Finding("images_disjoint", not problems, "; ".join(problems)))
    img_union: frozenset = frozenset()
    for img in images:
        img_union |= img
    findings.append(
        Finding("images_partition_target", img_union == target,
                "" if img_union == target else f"target mismatch by {len(img_union ^ target)} point(s)")
    )
    return WitnessReport(tuple(findings), {"source_size": len(source), "target_size": len(target)})


# ---------------------------------------------------------------------------
# nonnegative integer polynomials: the planar two-piece paradox
# ---------------------------------------------------------------------------


class PolyClass(Enum):
    A = "A"  # zero constant term: P = x*Q, so P(t) = t*Q(t)
    B = "B"  # positive constant term


@dataclass(frozen=True)
class NNPoly:
    """Polynomial with nonnegative integer coefficients, low degree first."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.coeffs):
            raise ValueError("coefficients must be nonnegative")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficient; use NNPoly.from_coeffs")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "NNPoly":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        # the zero polynomial reports degree -1
        return len(self.coeffs) - 1

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = [f"{c}x^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return " + ".join(parts)


def smp_classify(p: NNPoly) -> PolyClass:
    return PolyClass.A if p.constant == 0 else PolyClass.B


def smp_g(p: NNPoly) -> NNPoly:
    """Divide by x (rotate the planar point by e^-i).  Domain: class A."""
    if smp_classify(p) is not PolyClass.A:
        raise DomainError("smp_g needs a zero constant term")
    return NNPoly(p.coeffs[1:])


def smp_h(p: NNPoly) -> NNPoly:
    """Subtract 1 (translate the planar point by -1).  Domain: class B."""
    if smp_classify(p) is not PolyClass.B:
        raise DomainError("smp_h needs a positive constant term")
    return NNPoly.from_coeffs((p.coeffs[0] - 1,) + p.coeffs[1:])


def smp_mul_x(p: NNPoly) -> NNPoly:
    """Inverse of smp_g on its image."""
    if p.is_zero:
        return p
    return NNPoly((0,) + p.coeffs)


def smp_add_one(p: NNPoly) -> NNPoly:
    """Inverse of smp_h."""
    if p.is_zero:
        return NNPoly((1,))
    return NNPoly((p.coeffs[0] + 1,) + p.coeffs[1:])


def enumerate_polys(max_degree: int, max_coeff: int) -> tuple[NNPoly, ...]:
    """All polynomials with degree <= max_degree and coefficients <= max_coeff.

    Padded coefficient tuples map one-to-one onto stripped polynomials, so
    this yields (max_coeff+1)^(max_degree+1) distinct elements.
    """
    return tuple(
        NNPoly.from_coeffs(t)
        for t in itertools.product(range(max_coeff + 1), repeat=max_degree + 1)
    )


def _closest_pair_sq(points: list[tuple[float, float]]) -> tuple[float, tuple[int, int]]:
    """Plane sweep for the closest pair; returns (squared distance, indices)."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    best = math.inf
    pair = (-1, -1)
    active: list[tuple[float, float, int]] = []  # (y, x, index), sorted
    left = 0
    for pos, idx in enumerate(order):
        x, y = points[idx]
        d = math.sqrt(best) if best < math.inf else math.inf
        while left < pos and points[order[left]][0] < x - d:
            old = order[left]
            ox, oy = points[old]
            del active[bisect_left(active, (oy, ox, old))]
            left += 1
        if best == math.inf:
            window = list(active)
        else:
            window = active[bisect_left(active, (y - d,)) : bisect_right(active, (y + d,))]
        for cy, cx, cidx in window:
            dsq = (x - cx) ** 2 + (y - cy) ** 2
            if dsq < best:
                best = dsq
                pair = (cidx, idx)
        insort(active, (y, x, idx))
    return best, pair


SEPARATION_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SMPReport:
    max_degree: int
    max_coeff: int
    precision_bits: int
    total: int
    count_a: int
    count_b: int
    min_distance: float
    min_pair: tuple[str, str]
    max_isometry_defect: float
    findings: tuple[Finding, ...]
    outcome: str

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"


def smp_verify(max_degree: int = 6, max_coeff: int = 3, precision_bits: int = 128) -> SMPReport:
    """Verify the two-piece planar paradox on a finite truncation.

    Symbolic side: A/B partition the range; g and h are injective with exact
    inverses, and their images are exactly the degree- and constant-truncated
    ranges.  Numeric side, at ``precision_bits``: all embedded points are
    pairwise distinct beyond 1e-12, and g/h act as the claimed isometries
    (rotation by e^-i, translation by -1).  Separation below threshold is
    reported as inconclusive, not failure: the embedded points are distinct
    transcendentals, only the precision can fall short.
    """
    if max_degree < 1 or max_coeff < 1:
        raise ValueError("need max_degree >= 1 and max_coeff >= 1")
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    polys = enumerate_polys(max_degree, max_coeff)
    index = {p: i for i, p in enumerate(polys)}
    part_a = [p for p in polys if smp_classify(p) is PolyClass.A]
    part_b = [p for p in polys if smp_classify(p) is PolyClass.B]
    findings: list[Finding] = []
    findings.append(
        Finding("partition", len(part_a) + len(part_b) == len(polys) and len(set(polys)) == len(polys))
    )

    g_images = [smp_g(p) for p in part_a]
    ok_g = (
        len(set(g_images)) == len(part_a)
        and all(smp_mul_x(q) == p for p, q in zip(part_a, g_images))
        and set(g_images) == {p for p in polys if p.degree <= max_degree - 1}
    )
    findings.append(Finding("g_bijection", ok_g, "" if ok_g else "shift-down failed an exactness check"))

    h_images = [smp_h(p) for p in part_b]
    ok_h = (
        len(set(h_images)) == len(part_b)
        and all(smp_add_one(q) == p for p, q in zip(part_b, h_images))
        and set(h_images) == {p for p in polys if p.constant <= max_coeff - 1}
    )
    findings.append(Finding("h_bijection", ok_h, "" if ok_h else "decrement failed an exactness check"))

    with mpmath.workprec(precision_bits):
        t = mpmath.exp(mpmath.mpc(0, 1))
        t_inv = mpmath.conj(t)
        powers = [mpmath.mpc(1)]
        for _ in range(max_degree):
            powers.append(powers[-1] * t)
        embeds = []
        for p in polys:
            acc = mpmath.mpc(0)
            for k, c in enumerate(p.coeffs):
                if c:
                    acc += c * powers[k]
            embeds.append(acc)

        floats = [(float(z.real), float(z.imag)) for z in embeds]
        best_sq, (i, j) = _closest_pair_sq(floats)
        min_distance = float(abs(embeds[i] - embeds[j]))
        # float coordinates are off by < 3e-15, so this lower bound is safe
        separated = math.sqrt(best_sq) - 1e-13 > SEPARATION_THRESHOLD
        findings.append(
            Finding(
                "separation",
                separated,
                f"min pairwise distance {min_distance:.6g} between {polys[i]} and {polys[j]}",
            )
        )

        tol = mpmath.mpf(2) ** (24 - precision_bits)
        defect = mpmath.mpf(0)
        for p, q in zip(part_a, g_images):
            defect = max(defect, abs(embeds[index[q]] - t_inv * embeds[index[p]]))
        for p, q in zip(part_b, h_images):
            defect = max(defect, abs(embeds[index[q]] - (embeds[index[p]] - 1)))
        # rotation preserves sampled pairwise distances
        stride = max(1, len(polys) // 257)
        sample = polys[::stride]
        for p, q in zip(sample, sample[1:]):
            u, v = embeds[index[p]], embeds[index[q]]
            defect = max(defect, abs(abs(t_inv * u - t_inv * v) - abs(u - v)))
        isometry_ok = defect <= tol
        findings.append(
            Finding("isometries", isometry_ok, f"max defect {mpmath.nstr(defect, 6)} vs tolerance {mpmath.nstr(tol, 6)}")
        )
        max_defect = float(defect)

    symbolic_ok = findings[0].ok and ok_g and ok_h
    if not symbolic_ok or not isometry_ok:
        outcome = "fail"
    elif not separated:
        outcome = "inconclusive"
    else:
        outcome = "pass"
    return SMPReport(
        max_degree=max_degree,
        max_coeff=max_coeff,
        precision_bits=precision_bits,
        total=len(polys),
        count_a=len(part_a),
        count_b=len(part_b),
        min_distance=min_distance,
        min_pair=(str(polys[i]), str(polys[j])),
        max_isometry_defect=max_defect,
        findings=tuple(findings),
        outcome=outcome,
    )


def smp_truncation_model(
    max_degree: int, max_coeff: int
) -> tuple[FiniteActionModel, ParadoxWitness, frozenset]:
    """The planar paradox as a finite action model.

    Returns (model, witness, interior): the partial model on the truncated
    range with labels g and h, the two-piece witness, and the interior on
    which both moved images provably cover (degree and constant one below
    their caps).
    """
    polys = enumerate_polys(max_degree, max_coeff)
    points = frozenset(polys)
    g_map = {p: smp_g(p) for p in polys if smp_classify(p) is PolyClass.A}
    h_map = {p: smp_h(p) for p in polys if smp_classify(p) is PolyClass.B}
    model = FiniteActionModel(
        points=points,
        maps={"e": {p: p for p in polys}, "g": g_map, "h": h_map},
        partial=True,
    )
    witness = ParadoxWitness(
        pieces_a=(frozenset(g_map),),
        movers_a=("g",),
        pieces_b=(frozenset(h_map),),
        movers_b=("h",),
    )
    interior = frozenset(
        p for p in polys if p.degree <= max_degree - 1 and p.constant <= max_coeff - 1
    )
    return model, witness, interior


# ---------------------------------------------------------------------------
# orbit transport: word decomposition -> sphere orbit decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitTransportResult:
    model: FiniteActionModel
    witness: ParadoxWitness
    report: WitnessReport
    orbit_size: int
    expected_size: int

    @property
    def passed(self) -> bool:
        return self.report.passed and self.orbit_size == self.expected_size


def orbit_transport(
    depth: int,
    certificate: FreenessCertificate,
    *,
    cap: int = DEFAULT_BALL_CAP,
) -> OrbitTransportResult:
    """Transport the word-level decomposition onto an orbit of the base vector.

    Requires a verified vector certificate: freeness of the action at the
    base vector is what makes w -> w*v0 injective, so the word pieces map to
    honest disjoint point sets.  Covering is checked on the interior (orbit
    points of ball(depth-1)), the one truncation concession.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if certificate.kind != "vector" or certificate.base_vector is None:
        raise PreconditionError("orbit transport needs a vector-based certificate")
    if not verify_certificate(certificate):
        raise PreconditionError("certificate does not verify")
    bx, by, bz = certificate.base_vector

    by_word: dict[ReducedWord, Vec3] = {}
    seen: dict[Vec3, ReducedWord] = {}
    for w, ints, den in ball_matrices(depth, cap=cap):
        p = Vec3(
            Fraction(ints[0] * bx + ints[1] * by + ints[2] * bz, den),
            Fraction(ints[3] * bx + ints[4] * by + ints[5] * bz, den),
            Fraction(ints[6] * bx + ints[7] * by + ints[8] * bz, den),
        )
        by_word[w] = p
        if p in seen:
            raise InvariantViolationError(
                f"orbit collision: {seen[p]} and {w} agree at the base vector despite the certificate"
            )
        seen[p] = w

    points = frozenset(seen)
    gens = {letter: generator_matrix(letter) for letter in Letter}
    maps: dict[str, dict[Point, Point]] = {"e": {p: p for p in points}}
    for letter in Letter:
        m = gens[letter]
        lab = letter.symbol
        maps[lab] = {}
        for p in points:
            q = m.apply(p)
            if q in points:
                maps[lab][p] = q
    model = FiniteActionModel(points=points, maps=maps, partial=True)

    piece: dict[PrefixClass, set[Vec3]] = {c: set() for c in PrefixClass}
    for w, p in by_word.items():
        piece[prefix_class(w)].add(p)
    witness = ParadoxWitness(
        pieces_a=(frozenset(piece[PrefixClass.W_A]), frozenset(piece[PrefixClass.W_A_INV])),
        movers_a=("e", Letter.A.symbol),
        pieces_b=(frozenset(piece[PrefixClass.W_B]), frozenset(piece[PrefixClass.W_B_INV])),
        movers_b=("e", Letter.B.symbol),
    )
    interior = frozenset(by_word[w] for w in ball(depth - 1, cap=cap))
    report = verify_paradox_witness(model, points, witness, interior=interior)
    return OrbitTransportResult(
        model=model,
        witness=witness,
        report=report,
        orbit_size=len(points),
        expected_size=len(ball(depth, cap=cap)),
    )
