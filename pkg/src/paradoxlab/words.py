"""Reduced words over two generators and the prefix-class decomposition.

Words live in the free group on {a, b}.  A word is *reduced* when no letter
stands next to its inverse.  Enumeration is length-lexicographic with letter
order a < b < a^-1 < b^-1 so that reports and "first counterexample" claims
are deterministic.

The headline check, :func:`verify_f2_paradox`, confirms at a finite depth the
two covering identities

    F2 = W(a) u a.W(a^-1)        F2 = W(b) u b.W(b^-1)

where W(x) is the set of reduced words starting with x.  Every word h outside
W(a) satisfies h = a.(a^-1 h) with a^-1 h in W(a^-1); the verifier checks that
identity literally for every ball element, so no boundary fudging is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ResourceLimitError

#: Hard cap on ball radius; |ball(14)| is ~9.5M words and past the desk scale.
DEFAULT_BALL_CAP = 14


class Letter(IntEnum):
    """Generator alphabet; values give the canonical enumeration order."""

    A = 0
    B = 1
    A_INV = 2
    B_INV = 3

    def inverse(self) -> "Letter":
        # a <-> a^-1 and b <-> b^-1 is an xor with 2 in this encoding
        return Letter(self ^ 2)

    @property
    def symbol(self) -> str:
        return "abAB"[self]

    @classmethod
    def from_symbol(cls, ch: str) -> "Letter":
        try:
            return cls("abAB".index(ch))
        except ValueError:
            raise ValueError(f"unknown letter symbol {ch!r}; expected one of a, b, A, B") from None


class PrefixClass(Enum):
    """The five-way classification of reduced words by first letter."""

    IDENTITY = "e"
    W_A = "a"
    W_B = "b"
    W_A_INV = "A"
    W_B_INV = "B"

    @classmethod
    def of_letter(cls, letter: Letter) -> "PrefixClass":
        return (cls.W_A, cls.W_B, cls.W_A_INV, cls.W_B_INV)[letter]


@dataclass(frozen=True)
class ReducedWord:
    """An immutable reduced word; the empty tuple is the identity."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        ls = self.letters
        for i in range(len(ls) - 1):
            if ls[i] == ls[i + 1].inverse():
                raise ValueError(f"word is not reduced at position {i}: {ls[i].symbol}{ls[i + 1].symbol}")

    # -- basic structure ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def first(self) -> Letter | None:
        return self.letters[0] if self.letters else None

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return concat(self, other)

    def __invert__(self) -> "ReducedWord":
        return invert(self)

    def __pow__(self, n: int) -> "ReducedWord":
        if n < 0:
            return invert(self) ** (-n)
        out = ReducedWord()
        for _ in range(n):
            out = concat(out, self)
        return out

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        return "".join(l.symbol for l in self.letters)

    def __repr__(self) -> str:
        return f"ReducedWord({str(self)!r})"

    @classmethod
    def from_string(cls, text: str) -> "ReducedWord":
        """Parse a word over the alphabet a, b, A, B (A = a^-1, B = b^-1)."""
        return reduce(Letter.from_symbol(ch) for ch in text)


IDENTITY = ReducedWord()


def reduce(letters: Iterable[Letter]) -> ReducedWord:
    """Free reduction: cancel adjacent inverse pairs until none remain."""
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return ReducedWord(tuple(stack))


def concat(w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    """Product in the free group; cancellation happens only at the seam."""
    a, b = w1.letters, w2.letters
    i = len(a)
    j = 0
    while i > 0 and j < len(b) and a[i - 1] == b[j].inverse():
        i -= 1
        j += 1
    return ReducedWord(a[:i] + b[j:])


def invert(w: ReducedWord) -> ReducedWord:
    return ReducedWord(tuple(l.inverse() for l in reversed(w.letters)))


@lru_cache(maxsize=None)
def _ball(n: int) -> tuple[ReducedWord, ...]:
    # Breadth-first by length, extending in letter order, gives length-lex order.
    out: list[ReducedWord] = [IDENTITY]
    level: list[ReducedWord] = [IDENTITY]
    for _ in range(n):
        nxt: list[ReducedWord] = []
        for w in level:
            last = w.letters[-1] if w.letters else None
            for letter in Letter:
                if last is not None and letter == last.inverse():
                    continue
                nxt.append(ReducedWord(w.letters + (letter,)))
        out.extend(nxt)
        level = nxt
    return tuple(out)


def ball(n: int, *, cap: int = DEFAULT_BALL_CAP) -> tuple[ReducedWord, ...]:
    """All reduced words of length <= n, in length-lexicographic order."""
    if n < 0:
        raise ValueError("ball radius must be >= 0")
    if n > cap:
        raise ResourceLimitError(f"ball({n}) exceeds the configured cap {cap}")
    return _ball(n)


def ball_size(n: int) -> int:
    """Closed form 1 + sum_{k=1..n} 4*3^(k-1), kept separate as an oracle."""
    return 1 + sum(4 * 3 ** (k - 1) for k in range(1, n + 1))


def prefix_class(w: ReducedWord) -> PrefixClass:
    if w.is_identity:
        return PrefixClass.IDENTITY
    return PrefixClass.of_letter(w.letters[0])


# -- decomposition checks ---------------------------------------------------


@dataclass(frozen=True)
class SplitCheck:
    """Result of checking one covering identity F2 = W(cover) u mover.W(piece)."""

    depth: int
    cover: PrefixClass
    piece: PrefixClass
    mover: ReducedWord
    checked: int
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_split(
    depth: int,
    cover: PrefixClass,
    piece: PrefixClass,
    mover: ReducedWord,
    *,
    cap: int = DEFAULT_BALL_CAP,
    max_violations: int = 10,
) -> SplitCheck:
    """Check that every word of length <= depth lies in W(cover) u mover.W(piece).

    A word h outside W(cover) is covered iff mover^-1.h starts with the piece
    letter and mover.(mover^-1.h) reproduces h.  Both facts are tested
    directly, so corrupted movers or pieces surface as explicit violations.
    """
    if cover is PrefixClass.IDENTITY or piece is PrefixClass.IDENTITY:
        raise ValueError("cover and piece must be prefix classes of nonempty words")
    mover_inv = invert(mover)
    violations: list[str] = []
    checked = 0
    for h in ball(depth, cap=cap):
        checked += 1
        if prefix_class(h) is cover:
            continue
        shifted = concat(mover_inv, h)
        if prefix_class(shifted) is not piece:
            if len(violations) < max_violations:
                violations.append(
                    f"{str(h)!r} not covered: {str(mover)!r}^-1 * h = {str(shifted)!r} "
                    f"is not in class {piece.value}"
                )
            continue
        if concat(mover, shifted) != h:
            if len(violations) < max_violations:  # pragma: no cover - group law, unreachable
                violations.append(f"reassembly failed for {str(h)!r}")
    return SplitCheck(depth, cover, piece, mover, checked, tuple(violations))


@dataclass(frozen=True)
class F2ParadoxReport:
    depth: int
    class_counts: Mapping[PrefixClass, int]
    partition_violations: tuple[str, ...]
    split_a: SplitCheck
    split_b: SplitCheck

    @property
    def passed(self) -> bool:
        return not self.partition_violations and self.split_a.passed and self.split_b.passed

    def summary(self) -> dict:
        return {
            "depth": self.depth,
            "class_counts": {c.value: n for c, n in sorted(self.class_counts.items(), key=lambda kv: kv[0].value)},
            "partition_violations": list(self.partition_violations),
            "split_a_violations": list(self.split_a.violations),
            "split_b_violations": list(self.split_b.violations),
            "passed": self.passed,
        }


def verify_f2_paradox(depth: int, *, cap: int = DEFAULT_BALL_CAP) -> F2ParadoxReport:
    """Verify the prefix-class partition and both covering identities on ball(depth)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    counts: dict[PrefixClass, int] = {c: 0 for c in PrefixClass}
    partition_violations: list[str] = []
    for w in ball(depth, cap=cap):
        # Memberships recomputed from raw structure, not trusted from prefix_class.
        flags = [
            not w.letters,
            bool(w.letters) and w.letters[0] is Letter.A,
            bool(w.letters) and w.letters[0] is Letter.B,
            bool(w.letters) and w.letters[0] is Letter.A_INV,
            bool(w.letters) and w.letters[0] is Letter.B_INV,
        ]
        if sum(flags) != 1 and len(partition_violations) < 10:  # pragma: no cover - unreachable
            partition_violations.append(f"{str(w)!r} lies in {sum(flags)} classes")
        counts[prefix_class(w)] += 1
    word_a = ReducedWord((Letter.A,))
    word_b = ReducedWord((Letter.B,))
    split_a = check_split(depth, PrefixClass.W_A, PrefixClass.W_A_INV, word_a, cap=cap)
    split_b = check_split(depth, PrefixClass.W_B, PrefixClass.W_B_INV, word_b, cap=cap)
    return F2ParadoxReport(depth, counts, tuple(partition_violations), split_a, split_b)


def brute_force_ball(n: int) -> frozenset[ReducedWord]:
    """Independent oracle: reduce every raw letter string of length <= n.

    Exponential in n (4^n strings), so only usable for small n, which is the
    point: it shares no code with the incremental enumeration in :func:`ball`.
    """
    words: set[ReducedWord] = {IDENTITY}
    level: list[tuple[Letter, ...]] = [()]
    for _ in range(n):
        nxt = [seq + (letter,) for seq in level for letter in Letter]
        words.update(reduce(seq) for seq in nxt)
        level = nxt
    return frozenset(words)
