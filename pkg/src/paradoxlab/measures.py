"""Finitely additive measures on finite structures, and the contradiction chain.

Everything here is exact rational arithmetic over finite carriers:

* Boolean algebras as explicit operation tables, with the axiom audit and
  the uniform-on-atoms probability measure that every finite algebra admits.
  (For infinite algebras the analogous existence statement needs choice
  principles and is out of constructive reach; only the finite content is
  built.)

* Point-weight measures on power sets, invariant measures on finite group
  tables, and the measure a free finite action induces on its acting group:
  integrate the uniform orbit measures of a piece's translates against an
  invariant measure downstairs and an invariant measure upstairs falls out.
  The report verifies additivity, total mass, and right invariance through
  the defining integral, not through the point weights it happens to equal.

* Shift-density windows and finite ergodic averages, each with its exact
  defect bound: the objects whose limits would be invariant means, kept at
  finite n where the bounds are checkable statements instead of appeals to
  compactness.

* The contradiction chain: a paradoxical decomposition and an additive
  probability measure cannot coexist.  Each inequality in
  nu(X) >= sum nu(pieces) = sum nu(moved) >= nu(union moved) = 2 nu(X)
  is evaluated against a concrete measure, and the report either confirms
  the forced conclusion nu(X) <= 0 or pinpoints the first link that breaks.
  On truncated models the final covering link is certified set-theoretically
  on an interior rather than numerically; see :func:`paradox_contradiction`.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    DomainError,
    InvariantViolationError,
    ModelError,
    PreconditionError,
    ResourceLimitError,
)
from .paradox import FiniteActionModel, ParadoxWitness
from .report import Finding

Point = Hashable


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise DomainError("floats are not exact; pass Fraction, int, or 'p/q' string")
    return Fraction(x)


def _fmt(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(map(str, x))) + "}"
    return str(x)


# ---------------------------------------------------------------------------
# Boolean algebras with explicit tables
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class FiniteBooleanAlgebra:
    """A finite Boolean algebra given by full operation tables.

    Tables are plain mappings so that tests can corrupt single entries and
    watch the audit localize the damage.  Storage is quadratic in the number
    of elements; fine for the power sets of small bases used here.
    """

    elements: frozenset
    join: Mapping[tuple, Point]
    meet: Mapping[tuple, Point]
    complement: Mapping[Point, Point]
    zero: Point
    one: Point

    def join_of(self, a, b):
        try:
            return self.join[(a, b)]
        except KeyError:
            raise ModelError(f"join table missing entry ({_fmt(a)}, {_fmt(b)})") from None

    def meet_of(self, a, b):
        try:
            return self.meet[(a, b)]
        except KeyError:
            raise ModelError(f"meet table missing entry ({_fmt(a)}, {_fmt(b)})") from None

    def compl_of(self, a):
        try:
            return self.complement[a]
        except KeyError:
            raise ModelError(f"complement table missing entry {_fmt(a)}") from None

    def leq(self, a, b) -> bool:
        return self.meet_of(a, b) == a


def power_set_algebra(base: Iterable) -> FiniteBooleanAlgebra:
    """The power set of a finite base with union, intersection, complement."""
    items = tuple(base)
    if len(set(items)) != len(items):
        raise ModelError("base elements must be distinct")
    full = frozenset(items)
    subsets = [
        frozenset(c) for r in range(len(items) + 1) for c in itertools.combinations(items, r)
    ]
    return FiniteBooleanAlgebra(
        elements=frozenset(subsets),
        join={(x, y): x | y for x in subsets for y in subsets},
        meet={(x, y): x & y for x in subsets for y in subsets},
        complement={x: full - x for x in subsets},
        zero=frozenset(),
        one=full,
    )


@dataclass(frozen=True)
class BooleanAxiomReport:
    element_count: int
    findings: tuple[Finding, ...]

    @property
    def passed(self) -> bool:
        return all(f.ok for f in self.findings)

    def summary(self) -> str:
        bad = [f.name for f in self.findings if not f.ok]
        if not bad:
            return f"boolean axioms hold on {self.element_count} elements"
        return f"boolean axioms fail on {self.element_count} elements: {', '.join(bad)}"


def verify_boolean_axioms(ba: FiniteBooleanAlgebra) -> BooleanAxiomReport:
    """Exhaustive audit of the algebra axioms; violations are reported, not raised.

    Beyond the axiom schemas this derives the constants: a /\\ ~a must be the
    same element for every a (the zero), dually for the one, and both must
    match the declared distinguished elements.
    """
    elems = sorted(ba.elements, key=_fmt)
    findings: list[Finding] = []

    missing = []
    for a in elems:
        if a not in ba.complement:
            missing.append(f"~{_fmt(a)}")
        for b in elems:
            if (a, b) not in ba.join:
                missing.append(f"join({_fmt(a)},{_fmt(b)})")
            if (a, b) not in ba.meet:
                missing.append(f"meet({_fmt(a)},{_fmt(b)})")
    findings.append(
        Finding("tables_total", not missing, "" if not missing else f"missing {missing[0]} and {len(missing) - 1} more")
    )
    if missing:
        return BooleanAxiomReport(len(elems), tuple(findings))

    def first_violation(pairs_or_triples, check, describe):
        for tup in pairs_or_triples:
            if not check(*tup):
                return describe(*tup)
        return ""

    pairs = list(itertools.product(elems, repeat=2))
    triples = list(itertools.product(elems, repeat=3))

    detail = first_violation(
        pairs,
        lambda a, b: ba.join[(a, b)] == ba.join[(b, a)] and ba.meet[(a, b)] == ba.meet[(b, a)],
        lambda a, b: f"commutativity breaks at ({_fmt(a)}, {_fmt(b)})",
    )
    findings.append(Finding("commutativity", not detail, detail))

    detail = first_violation(
        triples,
        lambda a, b, c: ba.join[(ba.join[(a, b)], c)] == ba.join[(a, ba.join[(b, c)])]
        and ba.meet[(ba.meet[(a, b)], c)] == ba.meet[(a, ba.meet[(b, c)])],
        lambda a, b, c: f"associativity breaks at ({_fmt(a)}, {_fmt(b)}, {_fmt(c)})",
    )
    findings.append(Finding("associativity", not detail, detail))

    detail = first_violation(
        triples,
        lambda a, b, c: ba.meet[(a, ba.join[(b, c)])] == ba.join[(ba.meet[(a, b)], ba.meet[(a, c)])]
        and ba.join[(a, ba.meet[(b, c)])] == ba.meet[(ba.join[(a, b)], ba.join[(a, c)])],
        lambda a, b, c: f"distributivity breaks at ({_fmt(a)}, {_fmt(b)}, {_fmt(c)})",
    )
    findings.append(Finding("distributivity", not detail, detail))

    detail = first_violation(
        pairs,
        lambda a, b: ba.join[(ba.meet[(a, b)], b)] == b and ba.meet[(ba.join[(a, b)], b)] == b,
        lambda a, b: f"absorption breaks at ({_fmt(a)}, {_fmt(b)})",
    )
    findings.append(Finding("absorption", not detail, detail))

    detail = first_violation(
        pairs,
        lambda a, b: ba.join[(ba.meet[(a, ba.complement[a])], b)] == b
        and ba.meet[(ba.join[(a, ba.complement[a])], b)] == b,
        lambda a, b: f"complement law breaks at ({_fmt(a)}, {_fmt(b)})",
    )
    findings.append(Finding("complement_bounds", not detail, detail))

    bottoms = {ba.meet[(a, ba.complement[a])] for a in elems}
    tops = {ba.join[(a, ba.complement[a])] for a in elems}
    ok = bottoms == {ba.zero} and tops == {ba.one}
    findings.append(
        Finding(
            "constants_welldefined",
            ok,
            ""
            if ok
            else f"derived bottoms {sorted(map(_fmt, bottoms))} / tops {sorted(map(_fmt, tops))} "
            f"vs declared {_fmt(ba.zero)} / {_fmt(ba.one)}",
        )
    )
    return BooleanAxiomReport(len(elems), tuple(findings))


@dataclass(eq=False)
class AlgebraMeasure:
    """Exact rational values on every element of a finite Boolean algebra."""

    algebra: FiniteBooleanAlgebra
    values: Mapping[Point, Fraction]

    def mu(self, x) -> Fraction:
        try:
            return self.values[x]
        except KeyError:
            raise ModelError(f"{_fmt(x)} is not in the algebra") from None

    def to_json(self) -> dict:
        return {"values": {_fmt(x): str(v) for x, v in sorted(self.values.items(), key=lambda kv: _fmt(kv[0]))}}


def construct_probability_measure(ba: FiniteBooleanAlgebra) -> AlgebraMeasure:
    """Uniform weight on the atoms, extended by additivity.

    Atoms are the minimal nonzero elements; in a finite Boolean algebra every
    element is the join of the atoms below it, so counting atoms below x and
    dividing by the atom total yields a finitely additive probability
    measure, exactly.
    """
    audit = verify_boolean_axioms(ba)
    if not audit.passed:
        bad = next(f.name for f in audit.findings if not f.ok)
        raise PreconditionError(f"algebra fails the axiom audit ({bad})")
    elems = sorted(ba.elements, key=_fmt)
    nonzero = [x for x in elems if x != ba.zero]
    atoms = [
        x
        for x in nonzero
        if not any(y != x and ba.meet_of(y, x) == y for y in nonzero)
    ]
    if not atoms:
        raise DomainError("degenerate algebra: zero equals one")
    total = len(atoms)
    values = {
        x: Fraction(sum(1 for a in atoms if ba.meet_of(a, x) == a), total) for x in elems
    }
    measure = AlgebraMeasure(ba, values)
    if measure.mu(ba.zero) != 0 or measure.mu(ba.one) != 1:
        raise InvariantViolationError("atom construction lost the endpoints")
    return measure


def audit_algebra_additivity(measure: AlgebraMeasure) -> Finding:
    """Independent recheck: mu(a v b) = mu(a) + mu(b) on every disjoint pair."""
    ba = measure.algebra
    elems = sorted(ba.elements, key=_fmt)
    checked = 0
    for a in elems:
        for b in elems:
            if ba.meet_of(a, b) != ba.zero:
                continue
            checked += 1
            if measure.mu(ba.join_of(a, b)) != measure.mu(a) + measure.mu(b):
                return Finding(
                    "additivity",
                    False,
                    f"mu({_fmt(a)} v {_fmt(b)}) != mu({_fmt(a)}) + mu({_fmt(b)})",
                )
    return Finding("additivity", True, f"checked {checked} disjoint pairs")


# ---------------------------------------------------------------------------
# point-weight measures on power sets
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class PointMeasure:
    """A finitely additive measure on the full power set of a finite universe.

    Determined by nonnegative point weights; additivity is then automatic,
    but :func:`audit_point_measure` rechecks it anyway on sampled pairs, as a
    guard on the evaluation code rather than on the mathematics.
    """

    universe: frozenset
    weights: Mapping[Point, Fraction]

    def __post_init__(self) -> None:
        fixed = {}
        for p, w in self.weights.items():
            if p not in self.universe:
                raise ModelError(f"weight on {_fmt(p)} outside the universe")
            w = _frac(w)
            if w < 0:
                raise ModelError(f"negative weight on {_fmt(p)}")
            fixed[p] = w
        self.weights = fixed

    @classmethod
    def uniform(cls, universe: Iterable) -> "PointMeasure":
        pts = frozenset(universe)
        if not pts:
            raise DomainError("empty universe has no uniform probability")
        w = Fraction(1, len(pts))
        return cls(pts, {p: w for p in pts})

    @classmethod
    def dirac(cls, universe: Iterable, at) -> "PointMeasure":
        pts = frozenset(universe)
        if at not in pts:
            raise ModelError(f"dirac point {_fmt(at)} outside the universe")
        return cls(pts, {at: Fraction(1)})

    def mu(self, subset: Iterable) -> Fraction:
        s = frozenset(subset)
        if not s <= self.universe:
            raise DomainError("measure evaluated outside its universe")
        return sum((self.weights.get(p, Fraction(0)) for p in s), start=Fraction(0))

    def total(self) -> Fraction:
        return self.mu(self.universe)

    def is_probability(self) -> bool:
        return self.total() == 1

    def to_json(self) -> dict:
        return {
            "universe": sorted(map(_fmt, self.universe)),
            "weights": {_fmt(p): str(w) for p, w in sorted(self.weights.items(), key=lambda kv: _fmt(kv[0])) if w},
        }


def audit_point_measure(m: PointMeasure, *, samples: int = 1000, seed: int = 0) -> Finding:
    """Additivity on random disjoint pairs: mu(A u B) = mu(A) + mu(B)."""
    rng = Random(seed)
    pts = sorted(m.universe, key=_fmt)
    if m.mu(frozenset()) != 0:
        return Finding("additivity", False, "mu(empty) != 0")
    for _ in range(samples):
        a, b = set(), set()
        for p in pts:
            lot = rng.randrange(3)
            if lot == 0:
                a.add(p)
            elif lot == 1:
                b.add(p)
        if m.mu(a | b) != m.mu(a) + m.mu(b):
            return Finding("additivity", False, f"failed on |A|={len(a)}, |B|={len(b)}")
    return Finding("additivity", True, f"{samples} random disjoint pairs")


# ---------------------------------------------------------------------------
# finite groups and invariant measures
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class GroupTable:
    """A finite group as an explicit multiplication table."""

    elements: tuple
    table: Mapping[tuple, Point]
    identity: Point

    def validate(self) -> None:
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ModelError("duplicate group elements")
        if self.identity not in elems:
            raise ModelError("identity missing from the element list")
        for g in self.elements:
            for h in self.elements:
                if (g, h) not in self.table:
                    raise ModelError(f"product {g!r}*{h!r} missing from the table")
                if self.table[(g, h)] not in elems:
                    raise ModelError(f"product {g!r}*{h!r} leaves the element set")
        for g in self.elements:
            if self.table[(self.identity, g)] != g or self.table[(g, self.identity)] != g:
                raise ModelError(f"identity fails on {g!r}")
            if not any(self.table[(g, h)] == self.identity for h in self.elements):
                raise ModelError(f"{g!r} has no inverse")
        for g in self.elements:
            for h in self.elements:
                for k in self.elements:
                    if self.table[(self.table[(g, h)], k)] != self.table[(g, self.table[(h, k)])]:
                        raise ModelError(f"associativity fails at ({g!r}, {h!r}, {k!r})")

    def mul(self, g, h):
        try:
            return self.table[(g, h)]
        except KeyError:
            raise ModelError(f"product {g!r}*{h!r} missing from the table") from None

    def inverse(self, g):
        for h in self.elements:
            if self.mul(g, h) == self.identity:
                return h
        raise ModelError(f"{g!r} has no inverse")

    def __len__(self) -> int:
        return len(self.elements)

    @classmethod
    def cyclic(cls, n: int) -> "GroupTable":
        if n < 1:
            raise ValueError("order must be positive")
        elems = tuple(range(n))
        return cls(elems, {(g, h): (g + h) % n for g in elems for h in elems}, 0)

    @classmethod
    def symmetric(cls, n: int) -> "GroupTable":
        """Permutations of range(n) as tuples, composed left-to-right outermost."""
        if not 1 <= n <= 4:
            raise ValueError("symmetric groups are built only up to n = 4 here")
        elems = tuple(itertools.permutations(range(n)))
        table = {
            (p, q): tuple(p[q[i]] for i in range(n)) for p in elems for q in elems
        }
        return cls(elems, table, tuple(range(n)))

    @classmethod
    def product(cls, a: "GroupTable", b: "GroupTable") -> "GroupTable":
        elems = tuple(itertools.product(a.elements, b.elements))
        table = {
            ((g1, g2), (h1, h2)): (a.mul(g1, h1), b.mul(g2, h2))
            for (g1, g2) in elems
            for (h1, h2) in elems
        }
        return cls(elems, table, (a.identity, b.identity))

    def to_json(self) -> dict:
        return {
            "elements": [str(g) for g in self.elements],
            "identity": str(self.identity),
            "table": {f"{g}|{h}": str(k) for (g, h), k in sorted(self.table.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1])))},
        }


def uniform_group_measure(G: GroupTable) -> PointMeasure:
    """mu(A) = |A| / |G| on the power set of the group."""
    G.validate()
    return PointMeasure.uniform(G.elements)


def audit_group_invariance(
    G: GroupTable,
    m: PointMeasure,
    *,
    samples: int = 1000,
    seed: int = 0,
) -> list[Finding]:
    """Two-sided invariance mu(gA) = mu(Ag) = mu(A): exhaustive for |G| <= 8, sampled above."""
    if frozenset(G.elements) != m.universe:
        raise ModelError("measure universe is not the group")
    n = len(G.elements)

    def translates_ok(A: frozenset) -> str:
        base = m.mu(A)
        for g in G.elements:
            if m.mu(frozenset(G.mul(g, a) for a in A)) != base:
                return f"left translate by {g!r} moves the measure of a {len(A)}-set"
            if m.mu(frozenset(G.mul(a, g) for a in A)) != base:
                return f"right translate by {g!r} moves the measure of a {len(A)}-set"
        return ""

    if n <= 8:
        elems = list(G.elements)
        for mask in range(1 << n):
            A = frozenset(elems[i] for i in range(n) if mask >> i & 1)
            detail = translates_ok(A)
            if detail:
                return [Finding("two_sided_invariance", False, detail)]
        return [Finding("two_sided_invariance", True, f"exhaustive over {1 << n} subsets")]
    rng = Random(seed)
    for _ in range(samples):
        A = frozenset(g for g in G.elements if rng.randrange(2))
        detail = translates_ok(A)
        if detail:
            return [Finding("two_sided_invariance", False, detail)]
    return [Finding("two_sided_invariance", True, f"{samples} sampled subsets")]


# ---------------------------------------------------------------------------
# the measure induced on a group by a free finite action
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class GroupAction:
    """A left action of a finite group table on a finite point set."""

    group: GroupTable
    points: frozenset
    act: Mapping[tuple, Point]

    def validate(self) -> None:
        self.group.validate()
        for g in self.group.elements:
            for x in self.points:
                if (g, x) not in self.act:
                    raise ModelError(f"action undefined at ({g!r}, {_fmt(x)})")
                if self.act[(g, x)] not in self.points:
                    raise ModelError(f"action leaves the point set at ({g!r}, {_fmt(x)})")
        for x in self.points:
            if self.act[(self.group.identity, x)] != x:
                raise ModelError(f"identity moves {_fmt(x)}")
        for g in self.group.elements:
            for h in self.group.elements:
                gh = self.group.mul(g, h)
                for x in self.points:
                    if self.act[(g, self.act[(h, x)])] != self.act[(gh, x)]:
                        raise ModelError(f"action is not compatible at ({g!r}, {h!r}, {_fmt(x)})")

    def apply(self, g, x):
        try:
            return self.act[(g, x)]
        except KeyError:
            raise ModelError(f"action undefined at ({g!r}, {_fmt(x)})") from None

    def free_violations(self) -> list[tuple]:
        e = self.group.identity
        return [
            (g, x)
            for g in self.group.elements
            if g != e
            for x in self.points
            if self.act[(g, x)] == x
        ]

    def orbits(self) -> list[frozenset]:
        seen: set = set()
        out = []
        for x in sorted(self.points, key=_fmt):
            if x in seen:
                continue
            orb = frozenset(self.apply(g, x) for g in self.group.elements)
            seen |= orb
            out.append(orb)
        return out

    @classmethod
    def translation(cls, G: GroupTable, copies: int = 1) -> "GroupAction":
        """`copies` disjoint copies of the group acting on itself by left multiplication."""
        pts = frozenset((c, g) for c in range(copies) for g in G.elements)
        act = {
            (g, (c, h)): (c, G.mul(g, h)) for g in G.elements for c in range(copies) for h in G.elements
        }
        return cls(G, pts, act)


@dataclass(frozen=True)
class InducedMeasureResult:
    sigma: PointMeasure
    findings: tuple[Finding, ...]
    orbit_sizes: tuple[int, ...]
    details: dict

    @property
    def passed(self) -> bool:
        return all(f.ok for f in self.findings)

    def summary(self) -> str:
        state = "pass" if self.passed else "fail"
        return (
            f"induced measure on a group of order {len(self.sigma.universe)} from "
            f"{len(self.orbit_sizes)} orbit(s): {state}"
        )


def induced_group_measure(action: GroupAction, mu: PointMeasure) -> InducedMeasureResult:
    """Push an invariant measure on a free action down to the acting group.

    Each orbit of a free finite action is a copy of the group and carries its
    uniform measure mu_x.  For A inside the group, f_A(x) = mu_x(A.x) and
    sigma(A) integrates f_A against mu.  The returned report verifies, via
    the f_A route and exhaustively over subsets: additivity (f over a
    disjoint union is the pointwise sum), total mass sigma(G) = 1, and right
    invariance (f_{Ag}(x) = f_A(g.x), hence sigma(Ag) = sigma(A) by
    invariance of mu).

    Preconditions are enforced: the action must be free and mu must be an
    invariant probability measure on the points.
    """
    action.validate()
    G = action.group
    if mu.universe != action.points:
        raise ModelError("measure universe differs from the action's point set")
    if not mu.is_probability():
        raise PreconditionError(f"mu has total mass {mu.total()}, not 1")
    violations = action.free_violations()
    if violations:
        g, x = violations[0]
        raise PreconditionError(f"action is not free: {g!r} fixes {_fmt(x)}")
    for g in G.elements:
        for x in action.points:
            if mu.mu({action.apply(g, x)}) != mu.mu({x}):
                raise PreconditionError(f"mu is not invariant: weight changes along ({g!r}, {_fmt(x)})")
    if (1 << len(G)) > 4096:
        raise ResourceLimitError("exhaustive subset audit is exponential in |G|; this build caps |G| at 12")

    orbits = action.orbits()
    for orb in orbits:
        if len(orb) != len(G):
            raise InvariantViolationError("free finite action produced an orbit smaller than the group")

    points = sorted(action.points, key=_fmt)
    point_mass = {x: mu.mu({x}) for x in points}

    def f(A: frozenset, x) -> Fraction:
        # mu_x is uniform on the orbit of x; freeness makes |A.x| = |A|.
        translate = {action.apply(a, x) for a in A}
        return Fraction(len(translate), len(G))

    def sigma_of(A: frozenset) -> Fraction:
        return sum((f(A, x) * point_mass[x] for x in points), start=Fraction(0))

    elems = list(G.elements)
    n = len(elems)
    subsets = [frozenset(elems[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)]

    findings: list[Finding] = []

    detail = ""
    for A in subsets:
        rest = [g for g in elems if g not in A]
        for mask in range(1 << len(rest)):
            B = frozenset(rest[i] for i in range(len(rest)) if mask >> i & 1)
            if any(f(A | B, x) != f(A, x) + f(B, x) for x in points):
                detail = f"f_(A u B) != f_A + f_B for |A|={len(A)}, |B|={len(B)}"
                break
        if detail:
            break
    findings.append(Finding("sigma_additive", not detail, detail or "pointwise over all disjoint subset pairs"))

    full = frozenset(elems)
    total = sigma_of(full)
    constant_one = all(f(full, x) == 1 for x in points)
    findings.append(
        Finding(
            "sigma_total_mass",
            total == 1 and constant_one,
            f"sigma(G) = {total}; f_G is {'constantly 1' if constant_one else 'not constant 1'}",
        )
    )

    detail = ""
    for A in subsets:
        sA = sigma_of(A)
        for g in elems:
            Ag = frozenset(G.mul(a, g) for a in A)
            if any(f(Ag, x) != f(A, action.apply(g, x)) for x in points):
                detail = f"f_(Ag) != f_A o g for |A|={len(A)}, g={g!r}"
                break
            if sigma_of(Ag) != sA:
                detail = f"sigma moves under right translation by {g!r}"
                break
        if detail:
            break
    findings.append(Finding("sigma_right_invariant", not detail, detail or f"all {len(subsets)} subsets, all {n} translators"))

    sigma = PointMeasure(frozenset(elems), {g: sigma_of(frozenset({g})) for g in elems})
    details = {
        "sigma_singletons": {str(g): str(sigma.weights[g]) for g in elems},
        "orbit_count": len(orbits),
    }
    return InducedMeasureResult(sigma, tuple(findings), tuple(len(o) for o in orbits), details)


# ---------------------------------------------------------------------------
# density windows and ergodic averages
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityWindow:
    """A finite set of integers viewed through the window {0, ..., n-1}."""

    n: int
    points: frozenset

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("window length must be positive")
        if not all(isinstance(a, int) for a in self.points):
            raise DomainError("window sets are sets of integers")


def density_measure(w: DensityWindow) -> Fraction:
    return Fraction(sum(1 for a in w.points if 0 <= a < w.n), w.n)


def shift_defect(w: DensityWindow) -> Fraction:
    """|mu_n(A + 1) - mu_n(A)|, exactly; always within the stated 2/n bound.

    Shifting changes the count through the two window edges only, so the
    bound cannot actually be attained above 1/n; it is still asserted, as the
    contract is the bound, not the sharper truth.
    """
    shifted = DensityWindow(w.n, frozenset(a + 1 for a in w.points))
    defect = abs(density_measure(shifted) - density_measure(w))
    if defect > Fraction(2, w.n):
        raise InvariantViolationError(f"shift defect {defect} exceeds 2/{w.n}")
    return defect


@dataclass(frozen=True)
class PiecewiseConstant:
    """A piecewise constant function on [0, 1) with rational breakpoints.

    ``values[i]`` holds on [breaks[i], breaks[i+1]), the last piece running
    to 1.  Construct through :meth:`of`, :meth:`constant`, or
    :meth:`indicator`, which coerce and validate.
    """

    breaks: tuple
    values: tuple

    def __post_init__(self) -> None:
        if len(self.breaks) != len(self.values) or not self.breaks:
            raise ValueError("need one value per piece")
        if self.breaks[0] != 0:
            raise ValueError("first breakpoint must be 0")
        for lo, hi in zip(self.breaks, self.breaks[1:]):
            if not lo < hi:
                raise ValueError("breakpoints must increase strictly")
        if self.breaks[-1] >= 1:
            raise ValueError("breakpoints live in [0, 1)")

    @classmethod
    def of(cls, breaks: Sequence, values: Sequence) -> "PiecewiseConstant":
        return cls(tuple(_frac(b) for b in breaks), tuple(_frac(v) for v in values))

    @classmethod
    def constant(cls, v) -> "PiecewiseConstant":
        return cls.of([0], [v])

    @classmethod
    def indicator(cls, lo, hi) -> "PiecewiseConstant":
        lo, hi = _frac(lo), _frac(hi)
        if not 0 <= lo < hi <= 1:
            raise ValueError("indicator needs 0 <= lo < hi <= 1")
        breaks, values = [Fraction(0)], []
        if lo > 0:
            values.append(Fraction(0))
            breaks.append(lo)
        values.append(Fraction(1))
        if hi < 1:
            breaks.append(hi)
            values.append(Fraction(0))
        return cls(tuple(breaks), tuple(values))

    def value_at(self, x) -> Fraction:
        x = _frac(x)
        if not 0 <= x < 1:
            raise DomainError("the function lives on [0, 1)")
        return self.values[bisect_right(self.breaks, x) - 1]

    def sup_abs(self) -> Fraction:
        return max(abs(v) for v in self.values)


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def ergodic_average(alpha, x0, f: PiecewiseConstant, n: int) -> tuple[Fraction, Fraction]:
    """Birkhoff average of f along n steps of the rotation x -> x + alpha mod 1.

    Returns (average, invariance defect), both exact.  The defect
    |F_n(f o T) - F_n(f)| telescopes to |f(T^n x0) - f(x0)| / n, so it obeys
    2 sup|f| / n; the bound is asserted, and the pair is the finite
    approximant whose limit points would be T-invariant means.
    """
    if n < 1:
        raise ValueError("need at least one orbit point")
    alpha, x0 = _frac(alpha), _frac(x0)
    orbit = [_mod1(x0 + k * alpha) for k in range(n + 1)]
    samples = [f.value_at(x) for x in orbit]
    value = sum(samples[:n], start=Fraction(0)) / n
    shifted = sum(samples[1:], start=Fraction(0)) / n
    defect = abs(shifted - value)
    if defect > 2 * f.sup_abs() / n:
        raise InvariantViolationError(f"invariance defect {defect} exceeds 2 sup|f| / {n}")
    return value, defect


# ---------------------------------------------------------------------------
# the contradiction chain
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainLink:
    """One (in)equality of the contradiction chain, with how it was justified.

    mode "numeric" means the link was evaluated exactly against nu;
    "assumed" means it is taken from the invariance hypothesis on nu (the
    computed values are still shown); "truncation" means the underlying
    covering identity was certified set-theoretically on the interior, where
    the truncated model is faithful to the infinite one.
    """

    name: str
    mode: str
    ok: bool
    lhs: Fraction | None
    rhs: Fraction | None
    detail: str = ""


@dataclass(frozen=True)
class ContradictionReport:
    links: tuple[ChainLink, ...]
    outcome: str
    first_failure: str | None
    conclusion: str

    @property
    def passed(self) -> bool:
        return self.outcome == "contradiction"

    def summary(self) -> str:
        lines = []
        for link in self.links:
            state = "ok" if link.ok else "FAILS"
            vals = "" if link.lhs is None else f" [{link.lhs} vs {link.rhs}]"
            lines.append(f"  {link.name} ({link.mode}): {state}{vals}")
        return "\n".join([f"contradiction chain -> {self.outcome}"] + lines + [f"  {self.conclusion}"])


def paradox_contradiction(
    model: FiniteActionModel,
    space: frozenset,
    witness: ParadoxWitness,
    nu: PointMeasure,
    invariant: bool,
    *,
    interior: frozenset | None = None,
) -> ContradictionReport:
    """Evaluate the chain nu(X) >= S_pieces = S_moved >= nu(unions) = 2 nu(X).

    A finitely additive probability measure nu and a paradoxical witness
    cannot both hold; this walks the chain and reports either the forced
    contradiction nu(X) <= 0 or the first link that fails for this nu.

    ``invariant`` states the hypothesis that nu gives each piece the same
    mass as its moved image; when True the middle equality is justified as
    assumed (values still computed and shown), when False it is checked
    numerically and typically breaks, which is the point of the Dirac
    counterexamples.  On truncated models pass ``interior``: the final
    covering link then certifies that each side's moved union covers the
    interior exactly, instead of demanding nu(union) = nu(X), which no
    honest truncation satisfies.
    """
    model.validate()
    pieces = list(witness.pieces_a) + list(witness.pieces_b)
    if not all(p <= space for p in pieces):
        raise ModelError("witness pieces must sit inside the space")
    if not space <= nu.universe:
        raise DomainError("nu is not defined on the whole space")
    if interior is not None and not interior <= space:
        raise ModelError("interior must sit inside the space")

    links: list[ChainLink] = []
    total = nu.mu(space)
    links.append(
        ChainLink(
            "total_mass",
            "numeric",
            total == 1,
            total,
            Fraction(1),
            "" if total == 1 else "nu is not a probability measure on the space",
        )
    )

    union_sizes = len(frozenset().union(*pieces))
    disjoint = union_sizes == sum(len(p) for p in pieces)
    sum_pieces = sum((nu.mu(p) for p in pieces), start=Fraction(0))
    links.append(
        ChainLink(
            "superadditivity",
            "numeric",
            disjoint and total >= sum_pieces,
            total,
            sum_pieces,
            "" if disjoint else "pieces overlap, so additivity gives no bound",
        )
    )

    moved: dict[str, list[frozenset]] = {"a": [], "b": []}
    undefined_counts = {"a": 0, "b": 0}
    for side, side_pieces, movers in (
        ("a", witness.pieces_a, witness.movers_a),
        ("b", witness.pieces_b, witness.movers_b),
    ):
        for piece, mover in zip(side_pieces, movers):
            img, undefined = model.image(mover, piece)
            moved[side].append(img)
            undefined_counts[side] += len(undefined)
    all_moved = moved["a"] + moved["b"]
    sum_moved = sum((nu.mu(m) for m in all_moved), start=Fraction(0))

    if invariant:
        links.append(
            ChainLink(
                "invariance",
                "assumed",
                True,
                sum_pieces,
                sum_moved,
                "equality of piece and image masses taken from the invariance hypothesis",
            )
        )
    else:
        links.append(
            ChainLink(
                "invariance",
                "numeric",
                sum_pieces == sum_moved,
                sum_pieces,
                sum_moved,
                "" if sum_pieces == sum_moved else "nu moves mass under the witness maps",
            )
        )

    union_a = frozenset().union(*moved["a"])
    union_b = frozenset().union(*moved["b"])
    nu_unions = nu.mu(union_a & space) + nu.mu(union_b & space)
    links.append(
        ChainLink(
            "subadditivity",
            "numeric",
            nu_unions <= sum_moved,
            nu_unions,
            sum_moved,
        )
    )

    if interior is None:
        covers = nu.mu(union_a & space) == total and nu.mu(union_b & space) == total
        links.append(
            ChainLink(
                "covering",
                "numeric",
                covers,
                nu_unions,
                2 * total,
                "" if covers else "a moved union misses mass, so the chain never reaches 2 nu(X)",
            )
        )
    else:
        covers = interior <= union_a and interior <= union_b
        leak_a = len(union_a - interior)
        leak_b = len(union_b - interior)
        links.append(
            ChainLink(
                "covering",
                "truncation",
                covers,
                nu_unions,
                2 * total,
                (
                    f"each side covers the {len(interior)}-point interior exactly; "
                    f"boundary excess a: {leak_a}, b: {leak_b} point(s), "
                    f"undefined a: {undefined_counts['a']}, b: {undefined_counts['b']}; "
                    "in the untruncated model the unions cover all of X"
                )
                if covers
                else "a moved union misses interior points",
            )
        )

    bad = [link.name for link in links if not link.ok]
    if bad:
        outcome = "chain-broken"
        first = bad[0]
        conclusion = f"no contradiction for this nu: the {first} link fails"
    else:
        outcome = "contradiction"
        first = None
        conclusion = (
            "all links hold, so nu(X) >= 2 nu(X); hence nu(X) <= 0, "
            "contradicting nu(X) = 1: no such invariant measure exists"
        )
    return ContradictionReport(tuple(links), outcome, first, conclusion)


# ---------------------------------------------------------------------------
# file interface for contradiction runs
# ---------------------------------------------------------------------------


def contradiction_input_to_json(
    model: FiniteActionModel,
    space: frozenset,
    witness: ParadoxWitness,
    nu: PointMeasure,
    invariant: bool,
    interior: frozenset | None = None,
) -> dict:
    """Serialize a contradiction run; points become strings, which must stay distinct."""
    names = {p: str(p) for p in model.points}
    if len(set(names.values())) != len(names):
        raise ModelError("point names collide under str(); rename the points")

    def pts(subset) -> list[str]:
        return sorted(names[p] for p in subset)

    return {
        "schema": "contradiction-input-v1",
        "space": pts(space),
        "identity": model.identity,
        "partial": model.partial,
        "maps": {
            label: {names[p]: names[q] for p, q in sorted(m.items(), key=lambda kv: names[kv[0]])}
            for label, m in sorted(model.maps.items())
        },
        "witness": {
            "pieces_a": [pts(p) for p in witness.pieces_a],
            "movers_a": list(witness.movers_a),
            "pieces_b": [pts(p) for p in witness.pieces_b],
            "movers_b": list(witness.movers_b),
        },
        "nu": {"weights": {names[p]: str(w) for p, w in sorted(nu.weights.items(), key=lambda kv: names[kv[0]]) if w}},
        "invariant": invariant,
        "interior": None if interior is None else pts(interior),
    }


def contradiction_input_from_json(data: Mapping):
    """Inverse of :func:`contradiction_input_to_json`, with located complaints."""

    def need(key):
        if key not in data:
            raise ModelError(f"contradiction input is missing {key!r}")
        return data[key]

    schema = need("schema")
    if schema != "contradiction-input-v1":
        raise ModelError(f"unsupported input schema {schema!r}")
    space = frozenset(need("space"))
    maps = {
        label: dict(mapping.items()) for label, mapping in need("maps").items()
    }
    model = FiniteActionModel(
        points=space,
        maps=maps,
        identity=need("identity"),
        partial=bool(need("partial")),
    )
    w = need("witness")
    for key in ("pieces_a", "movers_a", "pieces_b", "movers_b"):
        if key not in w:
            raise ModelError(f"witness is missing {key!r}")
    witness = ParadoxWitness(
        pieces_a=tuple(frozenset(p) for p in w["pieces_a"]),
        movers_a=tuple(w["movers_a"]),
        pieces_b=tuple(frozenset(p) for p in w["pieces_b"]),
        movers_b=tuple(w["movers_b"]),
    )
    nu_data = need("nu")
    if "weights" not in nu_data:
        raise ModelError("nu is missing 'weights'")
    nu = PointMeasure(space, {p: Fraction(v) for p, v in nu_data["weights"].items()})
    interior = data.get("interior")
    return (
        model,
        space,
        witness,
        nu,
        bool(need("invariant")),
        None if interior is None else frozenset(interior),
    )
