"""Exact rational 3x3 linear algebra and the two rotation generators.

Everything here is arithmetic over arbitrary-precision rationals (stdlib
``fractions.Fraction``); no floats appear.  The two generators

    A = (1/7) [ 6  2  3 ]        B = (1/7) [ 2 -6  3 ]
              [ 2  3 -6 ]                  [ 6  3  2 ]
              [-3  6  2 ]                  [-3  2  6 ]

are special orthogonal with inverse = transpose.  Products of k generators
have denominator dividing 7^k, which the word-evaluation fast path exploits
by carrying the integer matrix 7^k * M instead of fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Mapping, Sequence

from .errors import DegenerateInputError, DomainError, InvariantViolationError, ResourceLimitError
from .words import DEFAULT_BALL_CAP, Letter, ReducedWord

#: Alias kept for signature readability; the stdlib type already guarantees
#: lowest terms and a positive denominator.
Rational = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Vec3:
    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, x, y, z) -> "Vec3":
        return cls(_frac(x), _frac(y), _frac(z))

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __rmul__(self, scalar) -> "Vec3":
        s = _frac(scalar)
        return Vec3(s * self.x, s * self.y, s * self.z)

    def dot(self, other: "Vec3") -> Fraction:
        return self.x * other.x + self.y * other.y + self.z * other.z

    @property
    def is_zero(self) -> bool:
        return not (self.x or self.y or self.z)

    def to_json(self) -> list[str]:
        return [str(self.x), str(self.y), str(self.z)]


@dataclass(frozen=True)
class Mat3:
    """Row-major 3x3 matrix of rationals."""

    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 9:
            raise ValueError("Mat3 needs exactly 9 entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], scale=1) -> "Mat3":
        s = _frac(scale)
        return cls(tuple(_frac(e) * s for row in rows for e in row))

    @classmethod
    def identity(cls) -> "Mat3":
        one, zero = Fraction(1), Fraction(0)
        return cls((one, zero, zero, zero, one, zero, zero, zero, one))

    def row(self, i: int) -> tuple[Fraction, Fraction, Fraction]:
        return self.entries[3 * i : 3 * i + 3]

    def __matmul__(self, other: "Mat3") -> "Mat3":
        a, b = self.entries, other.entries
        return Mat3(
            tuple(
                a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
                for i in range(3)
                for j in range(3)
            )
        )

    def __sub__(self, other: "Mat3") -> "Mat3":
        return Mat3(tuple(p - q for p, q in zip(self.entries, other.entries)))

    def apply(self, v: Vec3) -> Vec3:
        e = self.entries
        return Vec3(
            e[0] * v.x + e[1] * v.y + e[2] * v.z,
            e[3] * v.x + e[4] * v.y + e[5] * v.z,
            e[6] * v.x + e[7] * v.y + e[8] * v.z,
        )

    def transpose(self) -> "Mat3":
        e = self.entries
        return Mat3((e[0], e[3], e[6], e[1], e[4], e[7], e[2], e[5], e[8]))

    def det(self) -> Fraction:
        e = self.entries
        return (
            e[0] * (e[4] * e[8] - e[5] * e[7])
            - e[1] * (e[3] * e[8] - e[5] * e[6])
            + e[2] * (e[3] * e[7] - e[4] * e[6])
        )

    def to_json(self) -> list[str]:
        return [str(e) for e in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Mat3":
        return cls(tuple(Fraction(s) for s in data))


GEN_A = Mat3.from_rows([[6, 2, 3], [2, 3, -6], [-3, 6, 2]], scale=Fraction(1, 7))
GEN_B = Mat3.from_rows([[2, -6, 3], [6, 3, 2], [-3, 2, 6]], scale=Fraction(1, 7))

DEFAULT_GENERATORS: Mapping[Letter, Mat3] = {
    Letter.A: GEN_A,
    Letter.B: GEN_B,
    Letter.A_INV: GEN_A.transpose(),
    Letter.B_INV: GEN_B.transpose(),
}


def generator_matrix(letter: Letter) -> Mat3:
    return DEFAULT_GENERATORS[letter]


def is_special_orthogonal(m: Mat3) -> bool:
    """Exact test: M * M^T = I and det M = 1."""
    return m @ m.transpose() == Mat3.identity() and m.det() == 1


# -- scaled-integer fast path ----------------------------------------------

IntMat = tuple[int, ...]


def scaled_integer_form(m: Mat3) -> tuple[IntMat, int]:
    """Return (d*M as integers, d) with d the lcm of entry denominators."""
    d = lcm(*(e.denominator for e in m.entries))
    ints = tuple(int(e * d) for e in m.entries)
    return ints, d


def _matmul_ints(a: IntMat, b: IntMat) -> IntMat:
    return tuple(
        a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
        for i in range(3)
        for j in range(3)
    )


_INT_IDENTITY: IntMat = (1, 0, 0, 0, 1, 0, 0, 0, 1)


def ball_matrices(
    depth: int,
    generators: Mapping[Letter, Mat3] | None = None,
    *,
    cap: int = DEFAULT_BALL_CAP,
) -> Iterator[tuple[ReducedWord, IntMat, int]]:
    """Yield (word, d*eval(word) as integers, d) over ball(depth) in length-lex order.

    Each word's matrix is one integer product away from its parent's, so the
    whole ball costs one 3x3 multiply per word.  With the default generators
    d = 7^len(word).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if depth > cap:
        raise ResourceLimitError(f"ball({depth}) exceeds the configured cap {cap}")
    gens = generators if generators is not None else DEFAULT_GENERATORS
    scaled = {letter: scaled_integer_form(gens[letter]) for letter in Letter}
    root = (ReducedWord(), _INT_IDENTITY, 1)
    yield root
    level = [root]
    for _ in range(depth):
        nxt = []
        for w, ints, den in level:
            last = w.letters[-1] if w.letters else None
            for letter in Letter:
                if last is not None and letter == last.inverse():
                    continue
                g_ints, g_den = scaled[letter]
                item = (ReducedWord(w.letters + (letter,)), _matmul_ints(ints, g_ints), den * g_den)
                yield item
                nxt.append(item)
        level = nxt


def eval_word(w: ReducedWord, generators: Mapping[Letter, Mat3] | None = None) -> Mat3:
    """Exact product of generator matrices in word order; identity for e."""
    gens = generators if generators is not None else DEFAULT_GENERATORS
    ints, den = _INT_IDENTITY, 1
    for letter in w.letters:
        g_ints, g_den = scaled_integer_form(gens[letter])
        ints = _matmul_ints(ints, g_ints)
        den *= g_den
    return Mat3(tuple(Fraction(v, den) for v in ints))


# -- exact kernels ----------------------------------------------------------


def row_reduce_int(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Elimination uses cross-multiplication (pivot*row - entry*pivot_row) and a
    gcd division per updated row, so entries never leave the integers and do
    not blow up.  Returns (echelon rows, pivot column indices).
    """
    work = [list(map(int, r)) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        for i in range(r + 1, len(work)):
            if work[i][c]:
                pv, ev = work[r][c], work[i][c]
                row = [pv * work[i][j] - ev * work[r][j] for j in range(ncols)]
                g = gcd(*row)
                work[i] = [v // g for v in row] if g else row
        pivots.append(c)
        r += 1
    return work[:r], pivots


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    return len(row_reduce_int(rows)[1])


def integer_kernel_basis(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Primitive integer basis of the right kernel of an integer matrix."""
    echelon, pivots = row_reduce_int(rows)
    ncols = len(rows[0])
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis: list[tuple[int, ...]] = []
    for fc in free_cols:
        sol = [Fraction(0)] * ncols
        sol[fc] = Fraction(1)
        # Back-substitute pivot variables from the bottom row up.
        for row, pc in reversed(list(zip(echelon, pivots))):
            s = sum((row[j] * sol[j] for j in range(pc + 1, ncols)), start=Fraction(0))
            sol[pc] = -s / row[pc]
        d = lcm(*(f.denominator for f in sol))
        ints = [int(f * d) for f in sol]
        g = gcd(*ints)
        basis.append(tuple(v // g for v in ints))
    return basis


@dataclass(frozen=True)
class ProjectiveDirection:
    """A projective direction as a primitive integer triple.

    Canonical form: gcd of the components is 1 and the first nonzero
    component is positive, so +/- multiples collapse to one representative.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        comps = (self.a, self.b, self.c)
        if not any(comps):
            raise DegenerateInputError("zero vector has no direction")
        if gcd(*comps) != 1:
            raise ValueError(f"{comps} is not primitive; use ProjectiveDirection.canonical")
        first = next(v for v in comps if v)
        if first < 0:
            raise ValueError(f"{comps} has negative leading sign; use ProjectiveDirection.canonical")

    @classmethod
    def canonical(cls, a, b, c) -> "ProjectiveDirection":
        fr = (_frac(a), _frac(b), _frac(c))
        if not any(fr):
            raise DegenerateInputError("zero vector has no direction")
        d = lcm(*(f.denominator for f in fr))
        ints = [int(f * d) for f in fr]
        g = gcd(*ints)
        ints = [v // g for v in ints]
        first = next(v for v in ints if v)
        if first < 0:
            ints = [-v for v in ints]
        return cls(*ints)

    @classmethod
    def of_vec(cls, v: Vec3) -> "ProjectiveDirection":
        return cls.canonical(v.x, v.y, v.z)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def as_vec3(self) -> Vec3:
        return Vec3.of(self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"[{self.a}:{self.b}:{self.c}]"


def axis(m: Mat3) -> ProjectiveDirection:
    """Rotation axis of a special orthogonal matrix, by exact kernel of M - I."""
    if not is_special_orthogonal(m):
        raise DomainError("axis is defined for special orthogonal matrices only")
    if m == Mat3.identity():
        raise DegenerateInputError("the identity rotation fixes every direction")
    diff = m - Mat3.identity()
    d = lcm(*(e.denominator for e in diff.entries))
    rows = [[int(e * d) for e in diff.row(i)] for i in range(3)]
    basis = integer_kernel_basis(rows)
    if len(basis) != 1:
        raise InvariantViolationError(
            f"fixed space of a non-identity rotation must be 1-dimensional, got {len(basis)}"
        )
    return ProjectiveDirection.canonical(*basis[0])
