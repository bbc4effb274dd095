"""Spectral-parameter families: Yang-Baxterization, the ``Ř±`` gates,
Hamiltonians, projector exponentials and the Hecke construction from a
projection."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .operators import _sign, identity, p_pm, pauli_suite, ppt, q_sup, swap, v_pm
from .relations import Family, RelationReport, check_braid, combine, compare
from .scalars import EPS, EXACT, FLOAT, PoleError, QQi, common_backend, is_zero, magnitude, to_backend
from .tensor import (
    Matrix,
    SingularMatrixError,
    adjoint,
    charpoly,
    deviation,
    embed,
    inverse,
    mul,
    scale,
)

#: families are plain :class:`~pptkit.relations.Family` objects
SpectralFamily = Family


class NotIdempotentError(ValueError):
    pass


class NonUnitaryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the Ř± matrices


def _check_q(q):
    if is_zero(q):
        raise PoleError("q must be nonzero")


def r_pm(sign, t, q=1) -> Matrix:
    """Braid generator ``Ř±`` with ``t`` on the diagonal and ``q, q⁻¹`` corners."""
    s = _sign(sign)
    _check_q(q)
    backend = common_backend(t, q)
    t, q = to_backend(t, backend), to_backend(q, backend)
    rows = [[t, 0, 0, q], [0, 1, s * t, 0], [0, s * t, 1, 0], [1 / q, 0, 0, t]]
    return Matrix.from_rows(rows, 2, 2, backend)


def r_pm_x(sign, x, t, q=1) -> Matrix:
    """Closed form of ``Ř± + x(1-t²)Ř±⁻¹``; defined at ``t = ±1`` too."""
    s = _sign(sign)
    _check_q(q)
    backend = common_backend(x, t, q)
    x, t, q = (to_backend(v, backend) for v in (x, t, q))
    a, c = 1 + x, t * (1 - x)
    rows = [[c, 0, 0, q * a], [0, a, s * c, 0], [0, s * c, a, 0], [a / q, 0, 0, c]]
    return Matrix.from_rows(rows, 2, 2, backend)


def r_pm_u(sign, u, q=1) -> Matrix:
    """Gate form ``Ř±(u) = u P± + Qsup(q)``."""
    s = _sign(sign)
    _check_q(q)
    backend = common_backend(u, q)
    u, q = to_backend(u, backend), to_backend(q, backend)
    rows = [[u, 0, 0, q], [0, 1, s * u, 0], [0, s * u, 1, 0], [1 / q, 0, 0, u]]
    return Matrix.from_rows(rows, 2, 2, backend)


def u_from_x(x, t):
    """``u = t (1 - x)/(1 + x)``."""
    if is_zero(1 + x):
        raise PoleError("x = -1 is a pole of u(x)")
    return t * (1 - x) / (1 + x)


def decompose_gate(sign, u, q=1):
    """Coefficients of ``Ř±(u) = c_P P± + c_Q Qsup(q)``: always ``(u, 1)``."""
    _sign(sign)
    _check_q(q)
    backend = common_backend(u, q)
    return to_backend(u, backend), to_backend(1, backend)


def gate_from_coefficients(sign, coeff_p, coeff_q, q=1) -> Matrix:
    backend = common_backend(coeff_p, coeff_q, q)
    Pm = p_pm(sign, backend)
    return scale(to_backend(coeff_p, backend), Pm) + scale(to_backend(coeff_q, backend), q_sup(to_backend(q, backend)))


def gate_inverse(sign, u, q=1) -> Matrix:
    """``Ř±⁻¹(u) = (-u P± + Qsup)/(1 - u²)``."""
    _check_q(q)
    backend = common_backend(u, q)
    u = to_backend(u, backend)
    den = 1 - u * u
    if is_zero(den):
        raise PoleError("u = ±1 is a pole of the inverse gate")
    return scale(1 / den, gate_from_coefficients(sign, -u, 1, q))


def skein_combination(sign, u, q=1) -> Matrix:
    """``Ř±(u) + (1 - u²) Ř±⁻¹(u)``; equals ``2 Qsup(q) = 2(Id - Q*)``."""
    backend = common_backend(u, q)
    u = to_backend(u, backend)
    return r_pm_u(sign, u, q) + scale(1 - u * u, gate_inverse(sign, u, q))


# ---------------------------------------------------------------------------
# Yang-Baxterization


def baxterize(R: Matrix, t, name: str = "baxterized") -> Family:
    """``x ↦ R + x(1 - t²) R⁻¹`` as a one-parameter family in ``x``."""
    Rinv = inverse(R)  # raises SingularMatrixError
    t = to_backend(t, R.backend)
    coeff = 1 - t * t

    def build(x):
        return R + scale(to_backend(x, R.backend) * coeff, Rinv)

    return Family(name, {"x": "free-complex"}, build)


def r_pm_family(sign, t, q=1) -> Family:
    """Closed-form ``Ř±(x)`` family (no inverse needed, fine at ``t = 1``)."""
    return Family(f"R{'+' if _sign(sign) > 0 else '-'}(x)", {"x": "unit-modulus"}, lambda x: r_pm_x(sign, x, t, q))


def unitarity_rho(x, t) -> float | Fraction:
    """Predicted ``ρ = |1+x|² + t²|1-x|²`` for unit ``q``."""
    a, c = 1 + x, t * (1 - x)
    if isinstance(a, QQi) or isinstance(c, QQi):
        return QQi.coerce(a).abs2() + QQi.coerce(c).abs2()
    return abs(a) ** 2 + abs(c) ** 2


def bilinear_condition(x, t):
    """``ā c + c̄ a`` with ``a = 1 + x`` and ``c = t(1 - x)``; zero on the unit circle."""
    a, c = 1 + x, t * (1 - x)
    return a.conjugate() * c + c.conjugate() * a


def isotropic_yb_family(d: int, sign) -> Family:
    """Yang-Baxterized isotropic operator in the additive parameter ``w``:

    ``Ř±(e^w) = (e^w v± - e^{-w} v∓) Id + (e^w - e^{-w}) P*``.
    """
    s = _sign(sign)
    vp, vm = (complex(v) for v in v_pm(d, FLOAT))
    v_same, v_other = (vp, vm) if s > 0 else (vm, vp)
    Id, Ps = identity(d, 2, FLOAT), ppt(d, FLOAT)

    def build(w):
        w = complex(w)
        e, ei = cmath.exp(w), cmath.exp(-w)
        return scale(e * v_same - ei * v_other, Id) + scale(e - ei, Ps)

    return Family(f"isotropic-yb{'+' if s > 0 else '-'}(d={d})", {"w": "real"}, build)


# ---------------------------------------------------------------------------
# eigenvalues via the characteristic polynomial


def _divide_root(coeffs: list, root) -> tuple[list, object]:
    """Synthetic division of ``sum c_k λ^k`` by ``(λ - root)``; returns (quotient, remainder)."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = coeffs[k] + acc * root
    return out, acc


def eigenvalue_multiplicities(R: Matrix, candidates, tol: float = 1e-7):
    """Match the spectrum of ``R`` against ``candidates``.

    Returns ``(ok, {candidate: multiplicity})``; ``ok`` means the
    multiplicities account for the full characteristic polynomial, i.e.
    every root is a candidate. Exact on the exact backend.
    """
    coeffs = charpoly(R)
    distinct = []
    for c in candidates:
        c = to_backend(c, R.backend)
        if not any(magnitude(c - e) <= (0 if R.backend == EXACT else tol) for e in distinct):
            distinct.append(c)
    mult = {}
    for c in distinct:
        m = 0
        while len(coeffs) > 1:
            quot, rem = _divide_root(coeffs, c)
            if (R.backend == EXACT and rem != 0) or (R.backend == FLOAT and abs(rem) > tol):
                break
            coeffs = quot
            m += 1
        mult[c] = m
    return len(coeffs) == 1, mult


# ---------------------------------------------------------------------------
# derivatives, Hamiltonians, exponentials


def _derivative(F, at, h):
    def central(step):
        return scale(1 / (2 * step), F(at + step) - F(at - step))

    d1, d2 = central(h), central(h / 2)
    return scale(to_backend(Fraction(1, 3), d1.backend) if d1.backend == EXACT else 1 / 3, scale(4, d2) - d1)


def hamiltonian_from_family(F: Family, at=0, h: float = 1e-4) -> Matrix:
    """``dŘ/du`` at ``at`` by a central difference with one Richardson step.

    On the exact backend the steps are rational (1/8, 1/16); the result is
    then exact for families polynomial of degree ≤ 4 in the parameter.
    """
    (name,) = list(F.params)

    def G(value):
        return F.at({name: value})

    probe = G(at)
    if probe.backend == EXACT:
        return _derivative(G, QQi.coerce(at), QQi(Fraction(1, 8)))
    return _derivative(G, complex(at), h)


def chain_hamiltonian(bond: Matrix, sites: int) -> Matrix:
    """``sum_i bond_{i,i+1}`` on ``sites`` sites."""
    out = Matrix.zeros(bond.d, sites, bond.backend)
    for i in range(1, sites):
        out = out + embed(bond, i, sites)
    return out


def _require_idempotent(A: Matrix, tol: float):
    dev = deviation(mul(A, A), A)
    if (A.backend == EXACT and dev != 0) or (A.backend == FLOAT and dev > tol):
        raise NotIdempotentError(f"A² != A (deviation {float(dev):.3g})")


def projector_exp(A: Matrix, alpha, tol: float = EPS) -> Matrix:
    """``exp(iαA) = Id - A + e^{iα} A`` for an idempotent ``A`` (float result)."""
    _require_idempotent(A, tol)
    A = A.to_float() if A.backend == EXACT else A
    Id = Matrix.identity(A.d, A.n, FLOAT)
    return Id - A + scale(cmath.exp(1j * float(alpha)), A)


def r_theta(sign, theta: float, q=None, phi: float | None = None) -> Matrix:
    """Normalized ``Ř±(θ) = Id - H± - e^{-iθ} ZZ H±`` (``t = 1``, ``x = e^{-iθ}``)."""
    suite = pauli_suite(phi) if phi is not None else pauli_suite(q=1.0 if q is None else complex(q))
    H = suite["H+"] if _sign(sign) > 0 else suite["H-"]
    Id = identity(2, 2, FLOAT)
    return Id - H - scale(cmath.exp(-1j * theta), mul(suite["zz"], H))


def schrodinger_hamiltonian(F, theta: float, h: float = 1e-4, tol: float = 1e-8) -> Matrix:
    """``H(θ) = i ∂Ř/∂θ Ř†(θ)`` for a unitary family ``F(θ)``."""
    U = F(theta)
    U = U.to_float() if U.backend == EXACT else U
    Id = Matrix.identity(U.d, U.n, FLOAT)
    if deviation(mul(U, adjoint(U)), Id) > tol:
        raise NonUnitaryError(f"family is not unitary at θ={theta}")

    def G(x):
        M = F(x.real if isinstance(x, complex) else x)
        return M.to_float() if M.backend == EXACT else M

    D = _derivative(G, float(theta), h)
    return scale(1j, mul(D, adjoint(U)))


# ---------------------------------------------------------------------------
# Hecke generators from a projection


def hecke_lambda(alpha, beta):
    """``λ = -αβ/(α - β)²``."""
    diff = alpha - beta
    if is_zero(diff):
        raise ValueError("alpha and beta must differ")
    return -alpha * beta / (diff * diff)


def hecke_from_projection(e: Matrix, alpha, beta, tol: float = EPS):
    """``σ = α e + β(Id - e)`` and its Hecke parameter ``λ``."""
    _require_idempotent(e, tol)
    lam = hecke_lambda(alpha, beta)
    backend = e.backend
    a, b = to_backend(alpha, backend), to_backend(beta, backend)
    Id = Matrix.identity(e.d, e.n, backend)
    sigma = scale(a, e) + scale(b, Id - e)
    return sigma, lam


def hecke_alpha(lam, beta=1):
    """Roots ``α`` of ``λ(α - β)² + αβ = 0`` for given ``λ, β``."""
    if common_backend(lam, beta) == EXACT and QQi.coerce(lam) == Fraction(1, 4):
        # double root, stays exact
        b = to_backend(beta, EXACT)
        return (-b, -b)
    lam, beta = complex(lam), complex(beta)
    disc = cmath.sqrt(1 - 4 * lam)
    return tuple(beta * ((2 * lam - 1) + s * disc) / (2 * lam) for s in (1, -1))


def hecke_generator_check(sign, d: int, tol: float = EPS, corrected: bool = False) -> RelationReport:
    """``(Ř±)² = (v± - v∓) Ř± + Id`` for ``Ř± = v∓ Id + P*``, as printed.

    With ``corrected=True`` the linear coefficient is ``v∓ - v±``, the
    identity that holds for every ``d`` (both agree at ``d = 2``).
    """
    from .operators import hecke_generator

    vp, vm = v_pm(d)
    s = _sign(sign)
    R = hecke_generator(d, s)
    same, other = (vp, vm) if s > 0 else (vm, vp)
    Id = Matrix.identity(d, 2, R.backend)
    tag = f"{'+' if s > 0 else '-'}(d={d})"
    if corrected:
        return compare("hecke-corrected" + tag, mul(R, R), scale(other - same, R) + Id, tol)
    return compare("hecke" + tag, mul(R, R), scale(same - other, R) + Id, tol)


def three_equivalences(p: Matrix, q: Matrix, lam, tol: float = EPS) -> RelationReport:
    """The three equivalent conditions on a pair of projections:
    ``pqp = λp``, ``[q, pqp - λp] = 0``, ``pqp - λp = qpq - λq``."""
    lam = to_backend(lam, p.backend)
    x = mul(mul(p, q), p) - scale(lam, p)
    y = mul(mul(q, p), q) - scale(lam, q)
    zero = Matrix.zeros(p.d, p.n, p.backend)
    return combine(
        "three-equivalences",
        [
            compare("pqp=lambda*p", x, zero, tol),
            compare("[q,pqp-lambda*p]=0", mul(q, x) - mul(x, q), zero, tol),
            compare("pqp-lambda*p=qpq-lambda*q", x, y, tol),
        ],
    )


def loop_from_q(q) -> complex:
    """``-q² - q⁻²``."""
    q = complex(q)
    return -(q * q) - 1 / (q * q)


def q_candidates(d: int, corrected: bool = False) -> list[complex]:
    """``q = ±c·i·sqrt(d ∓ sqrt(d² - 4))`` with ``c = 1/2`` as printed or
    ``c = 1/√2`` when ``corrected`` (the value for which ``-q² - q⁻² = d``)."""
    if d < 2:
        raise ValueError("need d >= 2")
    c = 1 / math.sqrt(2) if corrected else 0.5
    s = math.sqrt(d * d - 4)
    out = []
    for outer in (1, -1):
        for inner in (1, -1):
            out.append(outer * c * 1j * cmath.sqrt(d - inner * s))
    return out
