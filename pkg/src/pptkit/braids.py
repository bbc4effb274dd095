"""Braid words, their matrix representation and Markov-trace link invariants,
plus the product-state entangling test for two-qubit gates."""

from __future__ import annotations

import cmath
import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .baxterization import gate_inverse, r_pm_u
from .relations import check_unitary
from .scalars import EPS, EXACT, FLOAT, PoleError, QQi, format_scalar, is_zero, magnitude, to_backend
from .tensor import (
    Matrix,
    ShapeError,
    check_capacity,
    deviation,
    embed,
    is_scalar_multiple_of_identity,
    mul,
    partial_trace_last,
    trace,
)

# ---------------------------------------------------------------------------
# braid words


class BraidSyntaxError(ValueError):
    """Malformed braid word; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class BraidHeaderError(BraidSyntaxError):
    pass


class BraidLetterError(BraidSyntaxError):
    pass


class BraidIndexZeroError(BraidSyntaxError):
    pass


class BraidIndexRangeError(BraidSyntaxError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid needs at least 2 strands")
        for k in self.letters:
            if k == 0 or abs(k) > self.strands - 1:
                raise ValueError(f"generator {k} invalid on {self.strands} strands")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-k for k in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def on(self, strands: int) -> "BraidWord":
        """Same letters viewed in a braid group with more strands."""
        return BraidWord(strands, self.letters)

    def __str__(self):
        return format_braid(self)


_HEADER = re.compile(r"\s*B\s*(\d+)\s*:")
_LETTER = re.compile(r"\s*(?:([sS])\s*(\d+)|([+-]?)\s*(\d+))")


def parse_braid(text: str) -> BraidWord:
    """Grammar ``B<n>: letters``; a letter is ``s<k>`` (σ_k), ``S<k>``
    (σ_k⁻¹) or a signed integer. An empty letter list is the identity."""
    m = _HEADER.match(text)
    if not m:
        raise BraidHeaderError("expected header 'B<n>:'", 0)
    n = int(m.group(1))
    if n < 2:
        raise BraidHeaderError("a braid needs at least 2 strands", m.start(1))
    pos = m.end()
    letters = []
    while pos < len(text):
        if not text[pos:].strip():
            break
        lm = _LETTER.match(text, pos)
        if not lm:
            where = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise BraidLetterError(f"unexpected {text[where]!r}", where)
        if lm.group(1):
            k = int(lm.group(2))
            where = lm.start(2)
            sign = -1 if lm.group(1) == "S" else 1
        else:
            k = int(lm.group(4))
            where = lm.start(4)
            sign = -1 if lm.group(3) == "-" else 1
        if k == 0:
            raise BraidIndexZeroError("generator index 0", where)
        if k > n - 1:
            raise BraidIndexRangeError(f"generator index {k} >= strand count {n}", where)
        letters.append(sign * k)
        pos = lm.end()
        if pos < len(text) and not text[pos].isspace() and text[pos] not in "sS+-":
            raise BraidLetterError(f"unexpected {text[pos]!r}", pos)
    return BraidWord(n, tuple(letters))


def format_braid(b: BraidWord) -> str:
    body = " ".join(f"s{k}" if k > 0 else f"S{-k}" for k in b.letters)
    return f"B{b.strands}: {body}".rstrip()


#: closed-braid words of the links discussed with the Markov trace
LINK_ALIASES = {
    "hopf": BraidWord(2, (1, 1)),
    "trefoil": BraidWord(2, (1, 1, 1)),
    "figure8": BraidWord(3, (1, -2, 1, -2)),
    "borromean": BraidWord(3, (2, -1, 2, -1, 2, -1)),
    "whitehead": BraidWord(3, (1, 1, -2, 1, -2)),
}
_ALIAS_SPELLINGS = {"figureeight": "figure8", "figure-eight": "figure8", "figure_eight": "figure8"}


def resolve_link(name: str) -> BraidWord:
    key = name.strip().lower()
    key = _ALIAS_SPELLINGS.get(key, key)
    if key not in LINK_ALIASES:
        raise KeyError(f"unknown link {name!r}; known: {', '.join(sorted(LINK_ALIASES))}")
    return LINK_ALIASES[key]


def writhe(b: BraidWord) -> int:
    return sum(1 if k > 0 else -1 for k in b.letters)


# ---------------------------------------------------------------------------
# representation and Markov trace


def _check_pair(R: Matrix, Rinv: Matrix, tol: float):
    if R.n != 2 or Rinv.n != 2 or R.d != Rinv.d:
        raise ShapeError("R and Rinv must be two-site operators of equal d")
    Id = Matrix.identity(R.d, 2, R.backend)
    dev = deviation(mul(R, Rinv), Id)
    if (R.backend == EXACT and dev != 0) or (R.backend == FLOAT and dev > tol):
        raise ValueError("Rinv is not the inverse of R")


def represent_braid(b: BraidWord, R: Matrix, Rinv: Matrix, tol: float = EPS) -> Matrix:
    """Ordered product of embedded ``R`` (positive letters) and ``Rinv``."""
    check_capacity(R.d, b.strands)
    _check_pair(R, Rinv, tol)
    M = Matrix.identity(R.d, b.strands, R.backend)
    cache = {}
    for k in b.letters:
        if k not in cache:
            cache[k] = embed(R if k > 0 else Rinv, abs(k), b.strands)
        M = mul(M, cache[k])
    return M


class MarkovNormalizationError(ValueError):
    pass


def markov_alpha(R: Matrix, tol: float = EPS):
    """``α`` with ``Tr₂ R = α Id``."""
    if R.n != 2:
        raise ShapeError("markov_alpha needs a two-site operator")
    alpha = is_scalar_multiple_of_identity(partial_trace_last(R), tol)
    if alpha is None:
        raise MarkovNormalizationError("partial trace is not a multiple of the identity")
    return alpha


@dataclass(frozen=True)
class InvariantResult:
    word: BraidWord
    strands: int
    writhe: int
    alpha: object
    raw_trace: object
    invariant: object

    def to_dict(self) -> dict:
        return {
            "word": format_braid(self.word),
            "strands": self.strands,
            "writhe": self.writhe,
            "alpha": format_scalar(self.alpha),
            "raw_trace": format_scalar(self.raw_trace),
            "invariant": format_scalar(self.invariant),
        }


def markov_trace(b: BraidWord, R: Matrix, Rinv: Matrix, tol: float = EPS) -> InvariantResult:
    """``Z = α^{-w(b)} Tr ρ(b)``."""
    alpha = markov_alpha(R, tol)
    if is_zero(alpha):
        raise PoleError("alpha = 0: no Markov normalization")
    raw = trace(represent_braid(b, R, Rinv, tol))
    w = writhe(b)
    Z = raw * alpha ** (-w)
    return InvariantResult(b, b.strands, w, alpha, raw, Z)


def gate_pair(u, q=1, sign=+1):
    """``(Ř±(u), Ř±⁻¹(u))``; ``u = -1`` is rejected as the pole of ``α = 1 + u``."""
    if is_zero(1 + u):
        raise PoleError("u = -1 makes the Markov normalization singular")
    return r_pm_u(sign, u, q), gate_inverse(sign, u, q)


def link_invariant(b: BraidWord, u, q=1, sign=+1) -> InvariantResult:
    R, Rinv = gate_pair(u, q, sign)
    return markov_trace(b, R, Rinv)


def u_prime(u):
    """``((1 - u)/(1 + u))²``."""
    r = (1 - u) / (1 + u)
    return r * r


def trace_power_formulas(n: int, u):
    """Closed forms of ``Tr Ř^{2n}``, ``Tr Ř^{2n+1}``, ``Tr Ř^{-2n}``,
    ``Tr Ř^{-2n-1}`` for the gate ``Ř±(u)`` on two strands."""
    if n < 0:
        raise ValueError("n must be >= 0")
    even = 2 * ((1 + u) ** (2 * n) + (1 - u) ** (2 * n))
    odd = 2 * (1 + u) ** (2 * n + 1)
    if is_zero(1 - u) or is_zero(1 + u):
        raise PoleError("u = ±1 is a pole of the negative powers")
    even_neg = 2 / (1 - u) ** (2 * n) + 2 / (1 + u) ** (2 * n)
    odd_neg = 2 / (1 + u) ** (2 * n + 1)
    return even, odd, even_neg, odd_neg


# ---------------------------------------------------------------------------
# entangling test


@dataclass(frozen=True)
class GateReport:
    gate: Matrix
    unitary: bool
    rho: object
    entangling: bool
    witness: tuple | None = None  # (a, b) single-qubit amplitudes of the input
    image: tuple | None = None
    concurrence_gap: float = 0.0

    def to_dict(self) -> dict:
        out = {
            "unitary": self.unitary,
            "rho": None if self.rho is None else format_scalar(self.rho),
            "entangling": self.entangling,
            "gap": format_scalar(self.concurrence_gap),
        }
        if self.witness is not None:
            out["witness"] = {
                "first": [format_scalar(z) for z in self.witness[0]],
                "second": [format_scalar(z) for z in self.witness[1]],
                "image": [format_scalar(z) for z in self.image],
            }
        return out


def grid_states() -> list[tuple[complex, complex]]:
    """Eight single-qubit states: basis, ``±``, ``±i`` and two generic ones."""
    r = 1 / math.sqrt(2)
    return [
        (1, 0),
        (0, 1),
        (r, r),
        (r, -r),
        (r, 1j * r),
        (r, -1j * r),
        (0.6, 0.8),
        (5 / 13, 12j / 13),
    ]


def _random_state(rng: random.Random):
    v = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(2)]
    norm = math.sqrt(sum(abs(z) ** 2 for z in v))
    return tuple(z / norm for z in v)


def entangling_test(G: Matrix, seed: int = 0, random_states: int = 100, tol: float = EPS) -> GateReport:
    """Search product states ``|αβ>`` for one whose image has
    ``b00 b11 - b01 b10 != 0``: 64 grid states then seeded random ones."""
    if G.d != 2 or G.n != 2:
        raise ShapeError("entangling_test needs a two-qubit gate")
    report, rho = check_unitary(G, tol)
    M = G.to_numpy()
    rng = random.Random(seed)
    grid = grid_states()
    candidates = [(a, b) for a in grid for b in grid]
    candidates += [(_random_state(rng), _random_state(rng)) for _ in range(random_states)]
    best = (0.0, None, None)
    for a, b in candidates:
        psi = np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
        out = M @ psi
        gap = float(abs(out[0] * out[3] - out[1] * out[2]))
        if gap > best[0]:
            best = (gap, (a, b), tuple(out))
    gap, wit, image = best
    entangling = gap > tol
    return GateReport(
        G,
        report.passed,
        rho,
        entangling,
        wit if entangling else None,
        image if entangling else None,
        gap,
    )
