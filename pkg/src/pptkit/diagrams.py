"""Brauer and Temperley-Lieb diagrams on ``2n`` points.

Endpoints are ``T1..Tn`` (top, ket side) and ``B1..Bn`` (bottom, bra side).
``multiply(D1, D2)`` stacks ``D1`` above ``D2`` so that
``represent(D1 * D2) == represent(D1) @ represent(D2)``. Closed loops are
kept as an integer exponent of the loop parameter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .permutations import check_perm, from_cycles
from .scalars import EXACT, ONE, ZERO, to_backend
from .tensor import Matrix, check_capacity, partial_transpose, scale
from .operators import adjacent_swap, tl_generator, v_pi

MAX_ENUM_N = 5


class DiagramSyntaxError(ValueError):
    pass


def _label(p: int, n: int) -> str:
    return f"T{p + 1}" if p < n else f"B{p - n + 1}"


def _parse_label(text: str, n: int) -> int:
    m = re.fullmatch(r"([TB])(\d+)", text.strip())
    if not m:
        raise DiagramSyntaxError(f"bad endpoint {text!r}")
    k = int(m.group(2))
    if not 1 <= k <= n:
        raise DiagramSyntaxError(f"endpoint {text!r} out of range for n={n}")
    return k - 1 if m.group(1) == "T" else n + k - 1


@dataclass(frozen=True)
class BrauerDiagram:
    """Perfect matching on ``2n`` endpoints plus a loop exponent.

    ``mate[p]`` is the partner of endpoint ``p``; tops are ``0..n-1``,
    bottoms ``n..2n-1``.
    """

    n: int
    mate: tuple[int, ...]
    loops: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.mate) != 2 * self.n:
            raise ValueError("mate must list 2n endpoints")
        for p, q in enumerate(self.mate):
            if not 0 <= q < 2 * self.n or q == p or self.mate[q] != p:
                raise ValueError(f"not a perfect matching: {self.mate}")
        if self.loops < 0:
            raise ValueError("loop exponent must be >= 0")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], loops: int = 0) -> "BrauerDiagram":
        mate = [-1] * (2 * n)
        for a, b in pairs:
            if mate[a] != -1 or mate[b] != -1:
                raise ValueError("endpoint used twice")
            mate[a], mate[b] = b, a
        if -1 in mate:
            raise ValueError("endpoint left unmatched")
        return cls(n, tuple(mate), loops)

    @classmethod
    def from_text(cls, text: str) -> "BrauerDiagram":
        m = re.fullmatch(r"\s*n=(\d+)\s+loops=(\d+)\s+pairs=(\S*)\s*", text)
        if not m:
            raise DiagramSyntaxError(f"bad diagram text {text!r}")
        n, loops = int(m.group(1)), int(m.group(2))
        pairs = []
        for chunk in filter(None, m.group(3).split(",")):
            a, _, b = chunk.partition("-")
            pairs.append((_parse_label(a, n), _parse_label(b, n)))
        return cls.from_pairs(n, pairs, loops)

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((p, q) for p, q in enumerate(self.mate) if p < q)

    def to_text(self) -> str:
        body = ",".join(f"{_label(a, self.n)}-{_label(b, self.n)}" for a, b in self.pairs())
        return f"n={self.n} loops={self.loops} pairs={body}"

    def matching(self) -> "BrauerDiagram":
        """Same matching with the loop exponent dropped."""
        return BrauerDiagram(self.n, self.mate, 0)

    def __mul__(self, other: "BrauerDiagram") -> "BrauerDiagram":
        return multiply(self, other)

    def __str__(self):
        return self.to_text()


def identity_diagram(n: int) -> BrauerDiagram:
    return BrauerDiagram.from_pairs(n, [(k, n + k) for k in range(n)])


def diagram_from_perm(perm: Sequence[int] | str, n: int | None = None) -> BrauerDiagram:
    """Strand ``T_k``-``B_π(k)``; matches :func:`~pptkit.operators.v_pi`."""
    if isinstance(perm, str):
        perm = from_cycles(perm, n)
    perm = check_perm(perm)
    m = len(perm)
    return BrauerDiagram.from_pairs(m, [(k, m + perm[k] - 1) for k in range(m)])


def cupcap_E(i: int, n: int) -> BrauerDiagram:
    """Cup-cap ``E_i``: ``T_i-T_{i+1}``, ``B_i-B_{i+1}``, verticals elsewhere."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"E_{i} needs 1 <= i <= n-1 (n={n})")
    pairs = [(i - 1, i), (n + i - 1, n + i)]
    pairs += [(k, n + k) for k in range(n) if k not in (i - 1, i)]
    return BrauerDiagram.from_pairs(n, pairs)


def multiply(D1: BrauerDiagram, D2: BrauerDiagram) -> BrauerDiagram:
    """Stack ``D1`` above ``D2``; every closed loop in the middle adds one."""
    if D1.n != D2.n:
        raise ValueError("diagrams must have the same n")
    n = D1.n
    # nodes: ("1", p) endpoints of D1, ("2", p) of D2; D1 bottom k == D2 top k
    seen_middle = [False] * n
    result = [-1] * (2 * n)

    def walk(layer: int, p: int) -> int:
        # enter `layer` at endpoint p, follow strands until an outer endpoint
        while True:
            q = (D1 if layer == 1 else D2).mate[p]
            if layer == 1 and q < n:
                return q
            if layer == 2 and q >= n:
                return q
            if layer == 1:
                k = q - n
                seen_middle[k] = True
                layer, p = 2, k
            else:
                k = q
                seen_middle[k] = True
                layer, p = 1, n + k

    for p in range(n):
        if result[p] == -1:
            end = walk(1, p)
            result[p] = end
            result[end] = p
    for p in range(n, 2 * n):
        if result[p] == -1:
            end = walk(2, p)
            result[p] = end
            result[end] = p
    loops = 0
    for k in range(n):
        if seen_middle[k]:
            continue
        loops += 1
        layer, p = 1, n + k
        while True:
            seen_middle[p - n if layer == 1 else p] = True
            q = (D1 if layer == 1 else D2).mate[p]
            if layer == 1:
                layer, p = 2, q - n
            else:
                layer, p = 1, n + q
            if layer == 1 and p == n + k:
                break
    return BrauerDiagram(n, tuple(result), D1.loops + D2.loops + loops)


def _boundary_position(p: int, n: int) -> int:
    # T1..Tn then Bn..B1 going around the rectangle
    return p if p < n else 3 * n - 1 - p


def is_planar(D: BrauerDiagram) -> bool:
    chords = sorted(
        tuple(sorted((_boundary_position(a, D.n), _boundary_position(b, D.n)))) for a, b in D.pairs()
    )
    for i, (a, b) in enumerate(chords):
        for c, e in chords[i + 1 :]:
            if a < c < b < e:
                return False
    return True


def represent(D: BrauerDiagram, d: int, backend: str = EXACT) -> Matrix:
    """Matrix of ``D`` with loop factor ``d``: each pair identifies the two
    indices at its endpoints (tops are ket digits, bottoms bra digits)."""
    check_capacity(d, D.n)
    n = D.n
    pairs = D.pairs()

    def entry(ket, bra):
        digits = tuple(ket) + tuple(bra)
        return ONE if all(digits[a] == digits[b] for a, b in pairs) else ZERO

    m = Matrix.from_function(entry, d, n, EXACT)
    if D.loops:
        m = scale(ONE * d**D.loops, m)
    return m if backend == EXACT else m.to_float()


def theta_diagram(D: BrauerDiagram, sites: Iterable[int]) -> BrauerDiagram:
    """Partial transpose on diagrams: swap ``T_k`` and ``B_k`` for listed sites."""
    n = D.n
    sites = set(sites)
    for k in sites:
        if not 1 <= k <= n:
            raise ValueError(f"site {k} out of range for n={n}")

    def flip(p):
        k = p + 1 if p < n else p - n + 1
        if k not in sites:
            return p
        return p + n if p < n else p - n

    return BrauerDiagram.from_pairs(n, [(flip(a), flip(b)) for a, b in D.pairs()], D.loops)


def theta_on_diagram(perm: Sequence[int] | str, sites: Iterable[int], d: int, n: int | None = None):
    """``Θ_sites(V_π)`` as ``(matrix, diagram)``; both constructions agree."""
    sites = tuple(sites)
    D = diagram_from_perm(perm, n)
    check_capacity(d, D.n)
    V = v_pi(perm if not isinstance(perm, str) else from_cycles(perm, n), d)
    return partial_transpose(V, sites), theta_diagram(D, sites)


def ppt_generator_labels(n: int, i: int) -> list[str]:
    """Names of the PPTₙ(i) generators: ``V_j`` with ``E_j`` for ``j ∈ {i-1, i}``."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not 1 <= i <= n - 1:
        raise ValueError(f"i must lie in 1..{n - 1}")
    return [f"E{j}" if j in (i - 1, i) else f"V{j}" for j in range(1, n)]


def ppt_generators(n: int, i: int, d: int, backend: str = EXACT) -> list[Matrix]:
    check_capacity(d, n)
    out = []
    for name in ppt_generator_labels(n, i):
        j = int(name[1:])
        out.append(tl_generator(j, n, d, backend) if name[0] == "E" else adjacent_swap(j, n, d, backend))
    return out


def ppt_generator_diagrams(n: int, i: int) -> list[BrauerDiagram]:
    out = []
    for name in ppt_generator_labels(n, i):
        j = int(name[1:])
        out.append(cupcap_E(j, n) if name[0] == "E" else diagram_from_perm(f"({j} {j + 1})", n))
    return out


def _matchings(points: list[int]):
    if not points:
        yield []
        return
    a = points[0]
    for idx in range(1, len(points)):
        b = points[idx]
        rest = points[1:idx] + points[idx + 1 :]
        for tail in _matchings(rest):
            yield [(a, b)] + tail


def enumerate_basis(n: int, planar_only: bool = False) -> list[BrauerDiagram]:
    """All ``(2n-1)!!`` matchings (or the Catalan-many planar ones), n <= 5."""
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_ENUM_N}")
    out = [BrauerDiagram.from_pairs(n, m) for m in _matchings(list(range(2 * n)))]
    return [D for D in out if is_planar(D)] if planar_only else out


# ---------------------------------------------------------------------------
# expression language used by the CLI: "n=3: E(1)*V((12))*E(2)"

_FACTOR = re.compile(r"\s*(E|V|I)\s*\(")


def parse_diagram_expr(text: str) -> BrauerDiagram:
    m = re.fullmatch(r"\s*n\s*=\s*(\d+)\s*:(.*)", text, re.S)
    if not m:
        raise DiagramSyntaxError("expression must start with 'n=<strands>:'")
    n = int(m.group(1))
    if n < 1:
        raise DiagramSyntaxError("n must be >= 1")
    body = m.group(2)
    factors = []
    pos = 0
    while True:
        fm = _FACTOR.match(body, pos)
        if not fm:
            raise DiagramSyntaxError(f"expected E(i), V(cycles) or I() at offset {pos}")
        kind = fm.group(1)
        depth, j = 1, fm.end()
        while j < len(body) and depth:
            depth += {"(": 1, ")": -1}.get(body[j], 0)
            j += 1
        if depth:
            raise DiagramSyntaxError("unbalanced parentheses")
        arg = body[fm.end() : j - 1].strip()
        try:
            if kind == "E":
                factors.append(cupcap_E(int(arg), n))
            elif kind == "V":
                factors.append(diagram_from_perm(from_cycles(arg, n)))
            else:
                if arg:
                    raise DiagramSyntaxError("I() takes no argument")
                factors.append(identity_diagram(n))
        except DiagramSyntaxError:
            raise
        except ValueError as exc:
            raise DiagramSyntaxError(f"bad factor {kind}({arg}): {exc}") from exc
        pos = j
        rest = body[pos:].lstrip()
        if not rest:
            break
        if not rest.startswith("*"):
            raise DiagramSyntaxError(f"expected '*' at offset {len(body) - len(rest)}")
        pos = len(body) - len(rest) + 1
    result = factors[0]
    for f in factors[1:]:
        result = multiply(result, f)
    return result
