"""Checks of braid, Yang-Baxter, Temperley-Lieb, Brauer and virtual-braid
relations on concrete matrices or sampled parameter families.

Every check returns a :class:`RelationReport`. On the exact backend a pass
means the two sides agree literally (deviation ``0``); on floats it means
the worst entrywise deviation is within ``tol``.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .scalars import (
    EPS,
    EXACT,
    FLOAT,
    BackendMismatchError,
    PoleError,
    QQi,
    common_backend,
    format_scalar,
    magnitude,
    to_backend,
)
from .tensor import (
    CapacityError,
    Matrix,
    SingularMatrixError,
    adjoint,
    check_capacity,
    deviation,
    embed,
    inverse,
    is_scalar_multiple_of_identity,
    mul,
    product,
    scale,
)

CONSTRAINTS = ("free-complex", "unit-modulus", "real", "real-nonzero", "positive")

#: sampling keeps this distance from declared poles
POLE_MARGIN = 1e-3


@dataclass(frozen=True)
class RelationReport:
    name: str
    passed: bool
    deviation: float | Fraction = 0
    witness: dict | None = None
    samples: int = 1
    seed: int | None = None
    backend: str = EXACT
    parts: tuple["RelationReport", ...] = ()

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self):
        return self.passed

    def part(self, name: str) -> "RelationReport":
        for p in self.parts:
            if p.name == name:
                return p
        raise KeyError(name)

    def failed_parts(self) -> list[str]:
        return [p.name for p in self.parts if not p.passed]

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "verdict": self.verdict,
            "deviation": format_scalar(self.deviation),
            "backend": self.backend,
            "samples": self.samples,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = self.witness
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out


class FamilyEvaluationError(ArithmeticError):
    """A family could not be built at a sample point."""

    def __init__(self, family: str, point: Mapping, cause: Exception):
        self.family = family
        self.point = dict(point)
        self.cause = cause
        super().__init__(f"{family} failed at {_fmt_point(point)}: {cause}")


@dataclass(frozen=True)
class Family:
    """A named operator family ``build(*params) -> Matrix``.

    ``params`` maps parameter names (in call order) to one of
    :data:`CONSTRAINTS`; ``poles`` maps a parameter name to values the
    sampler must avoid.
    """

    name: str
    params: Mapping[str, str]
    build: Callable[..., Matrix]
    poles: Mapping[str, tuple] = field(default_factory=dict)

    def __call__(self, *args) -> Matrix:
        return self.build(*args)

    def at(self, point: Mapping) -> Matrix:
        args = [point[k] for k in self.params]
        try:
            return self.build(*args)
        except (PoleError, ZeroDivisionError, SingularMatrixError) as exc:
            raise FamilyEvaluationError(self.name, point, exc) from exc


def multiplicative_view(family: Family) -> Family:
    """``x ↦ family(log x)`` on positive ``x``: an additive-form solution in
    ``u`` becomes a multiplicative-form solution in ``x = e^u``."""
    (name,) = list(family.params)

    def build(x):
        x = complex(x)
        if x.real <= 0 or x.imag:
            raise PoleError("the multiplicative view needs x > 0")
        return family.build(math.log(x.real))

    return Family(f"{family.name}∘log", {"x": "positive"}, build)


def _fmt_point(point: Mapping) -> dict:
    return {k: format_scalar(v) for k, v in point.items()}


# ---------------------------------------------------------------------------
# sampling


def _exact_unit(rng: random.Random) -> QQi:
    # rational points on the unit circle from Pythagorean parametrisation
    while True:
        m, k = rng.randint(1, 7), rng.randint(0, 7)
        if m != k or k == 0:
            break
    norm = m * m + k * k
    z = QQi(Fraction(m * m - k * k, norm), Fraction(2 * m * k, norm))
    if rng.random() < 0.5:
        z = z.conjugate()
    if rng.random() < 0.5:
        z = -z
    return z


def _exact_real(rng: random.Random) -> QQi:
    return QQi(Fraction(rng.randint(-16, 16), rng.randint(1, 8)))


def _draw(constraint: str, rng: random.Random, backend: str):
    if backend == EXACT:
        if constraint in ("real", "real-nonzero"):
            return _exact_real(rng)
        if constraint == "positive":
            return QQi(Fraction(rng.randint(1, 16), rng.randint(1, 8)))
        if constraint == "unit-modulus":
            return _exact_unit(rng)
        if constraint == "free-complex":
            return QQi(_exact_real(rng).re, _exact_real(rng).re)
    else:
        if constraint in ("real", "real-nonzero"):
            return complex(rng.uniform(-2.0, 2.0))
        if constraint == "positive":
            return complex(math.exp(rng.uniform(-2.0, 2.0)))
        if constraint == "unit-modulus":
            return cmath.exp(1j * rng.uniform(0.0, 2 * math.pi))
        if constraint == "free-complex":
            return complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
    raise ValueError(f"unknown constraint {constraint!r}")


def _near(value, pole, backend: str) -> bool:
    return abs(complex(value) - complex(pole)) <= POLE_MARGIN


def sample_params(
    spec: Mapping[str, str],
    count: int,
    seed: int = 0,
    backend: str = FLOAT,
    poles: Mapping[str, Iterable] | None = None,
    max_tries: int = 10_000,
) -> list[dict]:
    """Deterministic constraint-respecting sample points.

    Real parameters are drawn from ``[-2, 2]`` (exact: small-denominator
    rationals in ``[-16, 16]``), unit-modulus ones by a uniform angle (exact:
    Pythagorean rational points). Values within :data:`POLE_MARGIN` of a
    declared pole, and zero for ``real-nonzero``, are rejected.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    for name, c in spec.items():
        if c not in CONSTRAINTS:
            raise ValueError(f"unsatisfiable constraint {c!r} for parameter {name!r}")
    poles = {k: tuple(v) for k, v in (poles or {}).items()}
    rng = random.Random(seed)
    points = []
    tries = 0
    while len(points) < count:
        point = {}
        ok = True
        for name, constraint in spec.items():
            value = _draw(constraint, rng, backend)
            if constraint == "real-nonzero" and _near(value, 0, backend):
                ok = False
            if any(_near(value, p, backend) for p in poles.get(name, ())):
                ok = False
            point[name] = value
        tries += 1
        if tries > max_tries:
            raise ValueError(f"could not satisfy {dict(spec)} with poles {poles}")
        if ok:
            points.append(point)
    return points


# ---------------------------------------------------------------------------
# comparison plumbing


def _tolerance_ok(dev, backend: str, tol: float) -> bool:
    return dev == 0 if backend == EXACT else dev <= tol


def _worst_entry(A: Matrix, B: Matrix) -> list[int]:
    diff = (A.to_numpy() - B.to_numpy()) if A.backend == FLOAT else None
    if diff is None:
        best, where = Fraction(-1), (0, 0)
        for idx, (x, y) in enumerate(zip(A.data.flat, B.data.flat)):
            m = magnitude(x - y)
            if m > best:
                best, where = m, divmod(idx, A.side)
        return list(where)
    return [int(k) for k in np.unravel_index(np.argmax(np.abs(diff)), diff.shape)]


def compare(name: str, lhs: Matrix, rhs: Matrix, tol: float = EPS) -> RelationReport:
    """Report on the matrix identity ``lhs == rhs``."""
    dev = deviation(lhs, rhs)
    ok = _tolerance_ok(dev, lhs.backend, tol)
    witness = None if ok else {"entry": _worst_entry(lhs, rhs)}
    return RelationReport(name, ok, dev, witness, backend=lhs.backend)


def combine(name: str, parts: Sequence[RelationReport], seed: int | None = None, samples: int | None = None) -> RelationReport:
    """Aggregate sub-reports: pass iff all pass, worst deviation, first witness."""
    parts = tuple(parts)
    if not parts:
        raise ValueError("nothing to combine")
    ok = all(p.passed for p in parts)
    dev = max((p.deviation for p in parts), key=float)
    witness = None
    if not ok:
        first = next(p for p in parts if not p.passed)
        witness = {"relation": first.name, **(first.witness or {})}
    backend = FLOAT if any(p.backend == FLOAT for p in parts) else EXACT
    return RelationReport(
        name,
        ok,
        dev,
        witness,
        samples=samples if samples is not None else max(p.samples for p in parts),
        seed=seed,
        backend=backend,
        parts=parts,
    )


def _strands(op: Matrix, N: int):
    if op.n != 2:
        raise ValueError(f"expected a two-site operator, got n={op.n}")
    check_capacity(op.d, N)
    return [embed(op, i, N) for i in range(1, N)]


def _far_allowed(d: int) -> bool:
    # far commutation needs 4 strands; only run it where that stays small
    return d == 2


def _identity_like(A: Matrix) -> Matrix:
    return Matrix.identity(A.d, A.n, A.backend)


# ---------------------------------------------------------------------------
# braid relation


def check_braid(B: Matrix, strands: int = 3, tol: float = EPS, name: str = "braid") -> RelationReport:
    """``B1 B2 B1 = B2 B1 B2`` on 3 strands, plus ``B1 B3 = B3 B1`` on 4 (d=2)."""
    if strands < 3:
        raise ValueError("the braid relation needs at least 3 strands")
    b1, b2 = _strands(B, 3)
    parts = [compare("B1B2B1=B2B1B2", product([b1, b2, b1]), product([b2, b1, b2]), tol)]
    if _far_allowed(B.d):
        f1, _, f3 = _strands(B, 4)
        parts.append(compare("B1B3=B3B1", mul(f1, f3), mul(f3, f1), tol))
    return combine(name, parts)


def check_quadratic(R: Matrix, c1, c0, tol: float = EPS, name: str = "quadratic") -> RelationReport:
    """``R² = c1 R + c0 Id`` (Hecke-type condition)."""
    rhs = scale(c1, R) + scale(c0, _identity_like(R))
    return compare(name, mul(R, R), rhs, tol)


# ---------------------------------------------------------------------------
# Yang-Baxter equations


def _family_points_report(name, family, points, build_sides, tol, seed):
    points = list(points)
    if not points:
        raise ValueError("need at least one sample point")
    worst = None
    witness = None
    ok_all = True
    backend = None
    for point in points:
        lhs, rhs = build_sides(point)
        backend = lhs.backend
        dev = deviation(lhs, rhs)
        ok = _tolerance_ok(dev, lhs.backend, tol)
        if worst is None or float(dev) > float(worst):
            worst = dev
        if not ok and ok_all:
            ok_all = False
            witness = {"point": _fmt_point(point), "entry": _worst_entry(lhs, rhs)}
    return RelationReport(f"{name}[{family.name}]", ok_all, worst, witness, len(points), seed, backend)


def check_ybe_mult(family: Family, points: Sequence[Mapping], tol: float = EPS, seed: int | None = None) -> RelationReport:
    """``R1(x) R2(xy) R1(y) = R2(y) R1(xy) R2(x)`` at each point ``{x, y}``."""

    def sides(pt):
        x, y = pt["x"], pt["y"]
        xy = x * y
        rx, rxy, ry = (family.at({_p(family): val}) for val in (x, xy, y))
        a1, a2 = _strands(rx, 3)
        c1, c2 = _strands(rxy, 3)
        b1, b2 = _strands(ry, 3)
        return product([a1, c2, b1]), product([b2, c1, a2])

    return _family_points_report("ybe-mult", family, points, sides, tol, seed)


def check_ybe_add(family: Family, points: Sequence[Mapping], tol: float = EPS, seed: int | None = None) -> RelationReport:
    """``R1(u) R2(u+v) R1(v) = R2(v) R1(u+v) R2(u)`` at each point ``{u, v}``."""

    def sides(pt):
        u, v = pt["u"], pt["v"]
        ru, ruv, rv = (family.at({_p(family): val}) for val in (u, u + v, v))
        a1, a2 = _strands(ru, 3)
        c1, c2 = _strands(ruv, 3)
        b1, b2 = _strands(rv, 3)
        return product([a1, c2, b1]), product([b2, c1, a2])

    return _family_points_report("ybe-add", family, points, sides, tol, seed)


def check_color_ordering(family: Family, points: Sequence[Mapping], tol: float = EPS, seed: int | None = None) -> RelationReport:
    """Three independent arguments: ``R1(x) R2(z) R1(y) = R2(y) R1(z) R2(x)``."""

    def sides(pt):
        rx, rz, ry = (family.at({_p(family): pt[k]}) for k in ("x", "z", "y"))
        x1, x2 = _strands(rx, 3)
        z1, z2 = _strands(rz, 3)
        y1, y2 = _strands(ry, 3)
        return product([x1, z2, y1]), product([y2, z1, x2])

    return _family_points_report("color-ordering", family, points, sides, tol, seed)


def check_colored_ybe(
    family2: Family, points: Sequence[Mapping], tol: float = EPS, seed: int | None = None, as_printed: bool = False
) -> RelationReport:
    """Coloured YBE for a two-parameter family ``R(λ, μ)``:

    ``R2(μ,ν) R1(λ,ν) R2(λ,μ) = R1(λ,μ) R2(λ,ν) R1(μ,ν)``.

    ``as_printed=True`` checks the variant whose right-hand side keeps the
    ``2,1,2`` site pattern; that variant does not hold for the standard
    solutions and is kept only to document the discrepancy.
    """
    names = list(family2.params)
    if len(names) != 2:
        raise ValueError("coloured YBE needs a two-parameter family")

    def build(a, b):
        return family2.at({names[0]: a, names[1]: b})

    def sides(pt):
        lam, mu, nu = pt["lambda"], pt["mu"], pt["nu"]
        r_mn, r_ln, r_lm = build(mu, nu), build(lam, nu), build(lam, mu)
        _, mn2 = _strands(r_mn, 3)
        ln1, ln2 = _strands(r_ln, 3)
        lm1, lm2 = _strands(r_lm, 3)
        mn1, _ = _strands(r_mn, 3)
        lhs = product([mn2, ln1, lm2])
        rhs = product([lm2, ln1, mn2]) if as_printed else product([lm1, ln2, mn1])
        return lhs, rhs

    return _family_points_report("colored-ybe", family2, points, sides, tol, seed)


def _p(family: Family) -> str:
    names = list(family.params)
    if len(names) != 1:
        raise ValueError(f"family {family.name} must have exactly one spectral parameter")
    return names[0]


# ---------------------------------------------------------------------------
# Temperley-Lieb and Brauer


def check_tl(generators: Sequence[Matrix], chi, tol: float = EPS) -> RelationReport:
    """``E_i² = χ E_i``, ``E_i† = E_i``, ``E_i E_{i±1} E_i = E_i``, far commutation."""
    gens = list(generators)
    if not gens:
        raise ValueError("no generators")
    parts = []
    for i, E in enumerate(gens, start=1):
        parts.append(compare(f"E{i}^2=chi*E{i}", mul(E, E), scale(chi, E), tol))
        parts.append(compare(f"E{i}^dag=E{i}", adjoint(E), E, tol))
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i + 1]
        parts.append(compare(f"E{i + 1}E{i + 2}E{i + 1}=E{i + 1}", product([a, b, a]), a, tol))
        parts.append(compare(f"E{i + 2}E{i + 1}E{i + 2}=E{i + 2}", product([b, a, b]), b, tol))
    for i in range(len(gens)):
        for j in range(i + 2, len(gens)):
            parts.append(compare(f"E{i + 1}E{j + 1}=E{j + 1}E{i + 1}", mul(gens[i], gens[j]), mul(gens[j], gens[i]), tol))
    return combine("tl", parts)


BRAUER_DEFINING = ("tl", "vcr", "ev/ve", "vee", "eev")
BRAUER_DERIVED = ("vve", "evv", "vev", "eve")


def check_brauer(E: Matrix, v: Matrix, x, tol: float = EPS) -> RelationReport:
    """Brauer axioms for ``E_i`` (cup-cap) and ``v_i`` (virtual crossing) on 3
    strands: TLR(x), VCR, (ev/ve), (vee), (eev), then the derived (vve),
    (evv), (vev), (eve) checked independently."""
    if E.d != v.d or E.backend != v.backend:
        raise ValueError("E and v must share d and backend")
    E1, E2 = _strands(E, 3)
    v1, v2 = _strands(v, 3)
    Id = _identity_like(E1)
    parts = [
        check_tl([E1, E2], x, tol),
        combine(
            "vcr",
            [
                compare("v1^2=1", mul(v1, v1), Id, tol),
                compare("v2^2=1", mul(v2, v2), Id, tol),
                compare("v1v2v1=v2v1v2", product([v1, v2, v1]), product([v2, v1, v2]), tol),
            ],
        ),
        combine(
            "ev/ve",
            [
                compare("E1v1=E1", mul(E1, v1), E1, tol),
                compare("v1E1=E1", mul(v1, E1), E1, tol),
                compare("E2v2=E2", mul(E2, v2), E2, tol),
                compare("v2E2=E2", mul(v2, E2), E2, tol),
            ],
        ),
        combine(
            "vee",
            [
                compare("v2E1E2=v1E2", product([v2, E1, E2]), mul(v1, E2), tol),
                compare("v1E2E1=v2E1", product([v1, E2, E1]), mul(v2, E1), tol),
            ],
        ),
        combine(
            "eev",
            [
                compare("E2E1v2=E2v1", product([E2, E1, v2]), mul(E2, v1), tol),
                compare("E1E2v1=E1v2", product([E1, E2, v1]), mul(E1, v2), tol),
            ],
        ),
        combine(
            "vve",
            [
                compare("v2v1E2=E1E2", product([v2, v1, E2]), mul(E1, E2), tol),
                compare("v1v2E1=E2E1", product([v1, v2, E1]), mul(E2, E1), tol),
            ],
        ),
        combine(
            "evv",
            [
                compare("E1v2v1=E1E2", product([E1, v2, v1]), mul(E1, E2), tol),
                compare("E2v1v2=E2E1", product([E2, v1, v2]), mul(E2, E1), tol),
            ],
        ),
        combine(
            "vev",
            [
                compare("v2E1v2=v1E2v1", product([v2, E1, v2]), product([v1, E2, v1]), tol),
            ],
        ),
        combine(
            "eve",
            [
                compare("E1v2E1=E1", product([E1, v2, E1]), E1, tol),
                compare("E2v1E2=E2", product([E2, v1, E2]), E2, tol),
            ],
        ),
    ]
    return combine("brauer", parts)


# ---------------------------------------------------------------------------
# virtual, welded, unrestricted and flat braids


def _try_inverse(M: Matrix):
    try:
        return inverse(M)
    except SingularMatrixError:
        return None


def check_virtual_braid(sigma: Matrix, v: Matrix, tol: float = EPS) -> RelationReport:
    """BGR for ``σ``, VCR for ``v``, the mixed VBR and the special detour moves
    (for ``σ`` and ``σ⁻¹``)."""
    s1, s2 = _strands(sigma, 3)
    v1, v2 = _strands(v, 3)
    Id = _identity_like(s1)
    parts = [
        check_braid(sigma, tol=tol, name="bgr"),
        combine(
            "vcr",
            [
                compare("v1^2=1", mul(v1, v1), Id, tol),
                compare("v1v2v1=v2v1v2", product([v1, v2, v1]), product([v2, v1, v2]), tol),
            ],
        ),
    ]
    vbr = [compare("v1s2v1=v2s1v2", product([v1, s2, v1]), product([v2, s1, v2]), tol)]
    if _far_allowed(sigma.d):
        f1, _, f3 = _strands(sigma, 4)
        w1, _, w3 = _strands(v, 4)
        vbr.append(compare("s1v3=v3s1", mul(f1, w3), mul(w3, f1), tol))
        vbr.append(compare("v1s3=s3v1", mul(w1, f3), mul(f3, w1), tol))
    parts.append(combine("vbr", vbr))
    detour = []
    sinv = _try_inverse(sigma)
    variants = [("+", sigma)]
    if sinv is None:
        detour.append(RelationReport("sigma-invertible", False, 0, {"reason": "sigma is singular"}, backend=sigma.backend))
    else:
        variants.append(("-", sinv))
    for tag, s in variants:
        a1, a2 = _strands(s, 3)
        detour.append(compare(f"s1{tag}v2v1=v2v1s2{tag}", product([a1, v2, v1]), product([v2, v1, a2]), tol))
        detour.append(compare(f"v1v2s1{tag}=s2{tag}v1v2", product([v1, v2, a1]), product([a2, v1, v2]), tol))
        detour.append(compare(f"v1s2{tag}v1=v2s1{tag}v2", product([v1, a2, v1]), product([v2, a1, v2]), tol))
    parts.append(combine("detour", detour))
    return combine("virtual-braid", parts)


def check_forbidden(sigma: Matrix, v: Matrix, tol: float = EPS) -> tuple[RelationReport, RelationReport]:
    """``(F1) v1 σ2 σ1 = σ2 σ1 v2`` and ``(F2) σ1 σ2 v1 = v2 σ1 σ2``."""
    s1, s2 = _strands(sigma, 3)
    v1, v2 = _strands(v, 3)
    f1 = compare("F1", product([v1, s2, s1]), product([s2, s1, v2]), tol)
    f2 = compare("F2", product([s1, s2, v1]), product([v2, s1, s2]), tol)
    return f1, f2


def _flat_assignment(name: str, c: Matrix, v: Matrix, tol: float) -> RelationReport:
    c1, c2 = _strands(c, 3)
    v1, v2 = _strands(v, 3)
    Id = _identity_like(c1)
    f1, f2 = check_forbidden(c, v, tol)
    parts = [
        compare("c^2=1", mul(c1, c1), Id, tol),
        compare("v^2=1", mul(v1, v1), Id, tol),
        compare("c1c2c1=c2c1c2", product([c1, c2, c1]), product([c2, c1, c2]), tol),
        compare("v1v2v1=v2v1v2", product([v1, v2, v1]), product([v2, v1, v2]), tol),
        compare("v1c2v1=v2c1v2", product([v1, c2, v1]), product([v2, c1, v2]), tol),
        f1,
        f2,
    ]
    return combine(name, parts)


def check_flat_unrestricted(c: Matrix, v: Matrix, tol: float = EPS) -> RelationReport:
    """Flat unrestricted relations with ``c`` flat / ``v`` virtual and with the
    roles swapped."""
    return combine(
        "flat-unrestricted",
        [_flat_assignment("flat=c,virtual=v", c, v, tol), _flat_assignment("flat=v,virtual=c", v, c, tol)],
    )


# ---------------------------------------------------------------------------
# unitarity


def check_unitary(M: Matrix, tol: float = EPS):
    """``M M† = M† M = ρ Id``; returns ``(report, ρ)`` with ``ρ = None`` when
    ``M M†`` is not a multiple of the identity."""
    MMd = mul(M, adjoint(M))
    MdM = mul(adjoint(M), M)
    rho = MMd.data[0, 0]
    target = scale(rho, _identity_like(M))
    parts = [compare("MM^dag=rho", MMd, target, tol), compare("M^dagM=rho", MdM, target, tol)]
    report = combine("unitary", parts)
    if M.backend == FLOAT:
        rho = complex(rho)
    return report, (rho if report.passed else None)


# ---------------------------------------------------------------------------
# coefficient system for a Id + u P + b P* (no solution for d > 2)


def theorem1_residuals(d: int, a, b, u, v) -> tuple:
    """Residuals of the three coefficient equations for ``a Id + u P + b P*``."""
    e1 = a * b * u - (a * b * (u + v) + b * b * v)
    e2 = a * b * v - (a * b * (u + v) + b * b * u)
    e3 = a * a * b - (a * b * (u + v) + b * b * (u + v) + b**3 + 2 * a * a * b + a * b * b * d)
    return e1, e2, e3


def check_theorem1_system(d: int, a, b, points: Sequence[Mapping], tol: float = EPS, seed: int | None = None) -> RelationReport:
    """All three coefficient equations at every sampled nonzero ``(u, v)``."""
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    backend = common_backend(a, b, *(pt["u"] for pt in points), *(pt["v"] for pt in points))
    a, b = to_backend(a, backend), to_backend(b, backend)
    worst = Fraction(0) if backend == EXACT else 0.0
    witness = None
    for pt in points:
        u, v = to_backend(pt["u"], backend), to_backend(pt["v"], backend)
        res = theorem1_residuals(d, a, b, u, v)
        dev = max(magnitude(r) for r in res)
        if float(dev) > float(worst):
            worst = dev
        if not _tolerance_ok(dev, backend, tol) and witness is None:
            bad = next(k for k, r in enumerate(res, start=1) if not _tolerance_ok(magnitude(r), backend, tol))
            witness = {"point": _fmt_point(pt), "equation": bad}
    return RelationReport(
        f"theorem1-system[d={d},a={format_scalar(a)},b={format_scalar(b)}]",
        witness is None,
        worst,
        witness,
        len(points),
        seed,
        backend,
    )
