"""Freeness of the rotation pair: exhaustive search and a mod-7 certificate.

Two independent oracles decide whether any nonempty reduced word in the two
generators evaluates to the identity rotation:

* :func:`exhaustive_check` multiplies out every word in a ball exactly and
  compares against the identity.  Complete up to the chosen depth, silent
  beyond it.

* :func:`build_certificate` certifies *all* depths at once with a finite
  automaton.  For a nonempty reduced word w and an integer base vector v0,
  track the pair (first letter of w, 7^|w| * eval(w) * v0 mod 7).  Prepending
  a letter x (with x not the inverse of the current first letter, so the word
  stays reduced) multiplies the scaled vector by the integer matrix
  7*generator(x), hence acts on the residue by a fixed mod-7 matrix.  If the
  reachable state set closes up without ever hitting the zero residue, then
  7^|w| * eval(w) * v0 is never divisible by 7, so eval(w)*v0 has a
  coordinate with denominator exactly 7^|w| >= 7 and cannot equal the integer
  vector v0.  No nonempty reduced word fixes v0; in particular none evaluates
  to the identity, and the pair generates a free group acting freely at v0.

The prepend restriction is essential: 7*gen(x) times 7*gen(x^-1) is 49 times
the identity, which vanishes mod 7, so unreduced products do collapse.

If no candidate base vector certifies, the same automaton runs on matrix
residues 7^|w| * eval(w) mod 7 (a nonzero matrix residue bounds the
denominator of the matrix the same way).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping

from .errors import InvariantViolationError
from .words import DEFAULT_BALL_CAP, Letter, ReducedWord
from .exactlin import Mat3, ball_matrices, generator_matrix, scaled_integer_form

_MOD = 7

#: Integer base vectors tried in order by :func:`build_any_certificate`.
CANDIDATE_BASE_VECTORS: tuple[tuple[int, int, int], ...] = (
    (0, 1, 0),
    (1, 0, 0),
    (0, 0, 1),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (1, 1, 1),
)

#: Reduced words admit 4 first letters and 7^3 vector residues.
MAX_VECTOR_STATES = 4 * _MOD**3

StateKey = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class FreenessVerdict:
    outcome: Literal["certified", "counterexample"]
    witness: ReducedWord | None
    depth: int
    words_checked: int

    @property
    def certified(self) -> bool:
        return self.outcome == "certified"


def exhaustive_check(
    depth: int,
    generators: Mapping[Letter, Mat3] | None = None,
    *,
    cap: int = DEFAULT_BALL_CAP,
) -> FreenessVerdict:
    """Evaluate every nonempty word of length <= depth; exact, depth-complete.

    Returns the length-lexicographically first counterexample if one exists.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    checked = 0
    for w, ints, den in ball_matrices(depth, generators, cap=cap):
        if w.is_identity:
            continue
        checked += 1
        if ints == (den, 0, 0, 0, den, 0, 0, 0, den):
            return FreenessVerdict("counterexample", w, depth, checked)
    return FreenessVerdict("certified", None, depth, checked)


# -- certificate construction ----------------------------------------------


@dataclass(frozen=True)
class FreenessCertificate:
    """Closed automaton over residue states; see the module docstring."""

    kind: Literal["vector", "matrix"]
    base_vector: tuple[int, int, int] | None
    states: frozenset[StateKey]
    transitions: Mapping[tuple[StateKey, int], StateKey]


@dataclass(frozen=True)
class CertificateFailure:
    """Path to the first zero residue reached from the base vector."""

    kind: Literal["vector", "matrix"]
    base_vector: tuple[int, int, int] | None
    path: tuple[Letter, ...]
    detail: str

    @property
    def word(self) -> ReducedWord:
        return ReducedWord(self.path)


def _transition_matrices() -> dict[Letter, tuple[int, ...]]:
    """7*generator(x) reduced mod 7, for each letter x."""
    out: dict[Letter, tuple[int, ...]] = {}
    for letter in Letter:
        ints, den = scaled_integer_form(generator_matrix(letter))
        if den != _MOD:  # pragma: no cover - fixed generators
            raise InvariantViolationError("default generators must have denominator 7")
        out[letter] = tuple(v % _MOD for v in ints)
    return out


def _matvec_mod(m: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return (
        (m[0] * v[0] + m[1] * v[1] + m[2] * v[2]) % _MOD,
        (m[3] * v[0] + m[4] * v[1] + m[5] * v[2]) % _MOD,
        (m[6] * v[0] + m[7] * v[1] + m[8] * v[2]) % _MOD,
    )


def _matmul_mod(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(
        (a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]) % _MOD
        for i in range(3)
        for j in range(3)
    )


def build_certificate(
    base_vector: tuple[int, int, int] | None = (0, 1, 0),
    *,
    use_matrix_residues: bool = False,
) -> FreenessCertificate | CertificateFailure:
    """Breadth-first closure of the residue automaton.

    With ``use_matrix_residues`` the base vector is ignored and states carry
    the 3x3 residue of the scaled product itself.
    """
    trans = _transition_matrices()
    kind: Literal["vector", "matrix"] = "matrix" if use_matrix_residues else "vector"
    if use_matrix_residues:
        base = None
        start = {letter: trans[letter] for letter in Letter}
        step = _matmul_mod
    else:
        if base_vector is None:
            raise ValueError("vector certificates need a base vector")
        base = tuple(int(v) for v in base_vector)
        if len(base) != 3:
            raise ValueError("base vector must have 3 integer components")
        v0 = tuple(v % _MOD for v in base)
        start = {letter: _matvec_mod(trans[letter], v0) for letter in Letter}
        step = _matvec_mod

    zero = tuple([0] * len(next(iter(start.values()))))
    states: set[StateKey] = set()
    transitions: dict[tuple[StateKey, int], StateKey] = {}
    queue: deque[tuple[StateKey, tuple[Letter, ...]]] = deque()
    for letter in Letter:
        residue = start[letter]
        if residue == zero:
            return CertificateFailure(kind, base, (letter,), "zero residue at depth 1")
        state = (int(letter), residue)
        if state not in states:
            states.add(state)
            queue.append((state, (letter,)))
    while queue:
        state, path = queue.popleft()
        first, residue = state
        for letter in Letter:
            if letter == Letter(first).inverse():
                continue
            nxt_residue = step(trans[letter], residue)
            if nxt_residue == zero:
                return CertificateFailure(
                    kind, base, (letter,) + path, f"zero residue after prepending {letter.symbol}"
                )
            nxt = (int(letter), nxt_residue)
            transitions[(state, int(letter))] = nxt
            if nxt not in states:
                states.add(nxt)
                queue.append((nxt, (letter,) + path))
    return FreenessCertificate(kind, base, frozenset(states), transitions)


def build_any_certificate(
    candidates: Iterable[tuple[int, int, int]] = CANDIDATE_BASE_VECTORS,
) -> FreenessCertificate:
    """First certifying candidate wins; falls back to matrix residues.

    Raises :class:`InvariantViolationError` if nothing certifies, which for
    the shipped generators would mean a transcription defect.
    """
    for v0 in candidates:
        result = build_certificate(v0)
        if isinstance(result, FreenessCertificate):
            return result
    result = build_certificate(None, use_matrix_residues=True)
    if isinstance(result, FreenessCertificate):
        return result
    raise InvariantViolationError("no residue certificate exists; generator transcription is suspect")


def verify_certificate(cert: FreenessCertificate) -> bool:
    """Re-check a certificate without trusting how it was built.

    Root states and every transition target are recomputed here from the
    generator matrices via exact rational arithmetic (not the scaled-integer
    path used during construction).  Returns False on any defect: a zero or
    out-of-range residue, a missing root, a missing/incorrect/dangling
    transition, or an oversized state set.
    """
    try:
        vector_kind = cert.kind == "vector"
        if vector_kind == (cert.base_vector is None):
            return False
        width = 3 if vector_kind else 9
        if vector_kind and len(cert.states) > MAX_VECTOR_STATES:
            return False

        # Mod-7 action of each letter, rebuilt from the rational matrices.
        mats: dict[int, list[list[int]]] = {}
        for letter in Letter:
            m = generator_matrix(letter)
            rows = []
            for i in range(3):
                row = []
                for e in m.row(i):
                    scaled = e * _MOD
                    if scaled.denominator != 1:
                        return False
                    row.append(int(scaled) % _MOD)
                rows.append(row)
            mats[int(letter)] = rows

        def act(letter_value: int, residue: tuple[int, ...]) -> tuple[int, ...]:
            m = mats[letter_value]
            if vector_kind:
                return tuple(sum(m[i][j] * residue[j] for j in range(3)) % _MOD for i in range(3))
            return tuple(
                sum(m[i][k] * residue[3 * k + j] for k in range(3)) % _MOD
                for i in range(3)
                for j in range(3)
            )

        for letter_value, residue in cert.states:
            if letter_value not in (0, 1, 2, 3):
                return False
            if len(residue) != width or any(not (0 <= v < _MOD) for v in residue):
                return False
            if all(v == 0 for v in residue):
                return False

        # Roots: one state per letter, derived from the base.
        for letter in Letter:
            if vector_kind:
                v0 = tuple(v % _MOD for v in cert.base_vector)
                root_residue = act(int(letter), v0)
            else:
                root_residue = tuple(v for row in mats[int(letter)] for v in row)
            if (int(letter), root_residue) not in cert.states:
                return False

        # Closure: every legal prepend from every state is present and correct.
        for state in cert.states:
            letter_value, residue = state
            for letter in Letter:
                if letter == Letter(letter_value).inverse():
                    continue
                key = (state, int(letter))
                if key not in cert.transitions:
                    return False
                expected = (int(letter), act(int(letter), residue))
                if cert.transitions[key] != expected or expected not in cert.states:
                    return False

        # No dangling transition entries either.
        for (state, letter_value), target in cert.transitions.items():
            if state not in cert.states or target not in cert.states:
                return False
            if letter_value not in (0, 1, 2, 3) or Letter(letter_value) == Letter(state[0]).inverse():
                return False
        return True
    except Exception:
        return False


# -- serialization ----------------------------------------------------------


def certificate_to_json(cert: FreenessCertificate) -> dict:
    def key(state: StateKey) -> list:
        return [Letter(state[0]).symbol, list(state[1])]

    states = sorted(cert.states)
    transitions = sorted(cert.transitions.items())
    return {
        "kind": cert.kind,
        "base_vector": list(cert.base_vector) if cert.base_vector is not None else None,
        "states": [key(s) for s in states],
        "transitions": [[key(s), Letter(lv).symbol, key(t)] for (s, lv), t in transitions],
    }


def certificate_from_json(data: dict) -> FreenessCertificate:
    def unkey(item: list) -> StateKey:
        return (int(Letter.from_symbol(item[0])), tuple(int(v) for v in item[1]))

    base = data.get("base_vector")
    return FreenessCertificate(
        kind=data["kind"],
        base_vector=tuple(int(v) for v in base) if base is not None else None,
        states=frozenset(unkey(s) for s in data["states"]),
        transitions={
            (unkey(s), int(Letter.from_symbol(sym))): unkey(t) for s, sym, t in data["transitions"]
        },
    )
