"""Named operators built from the identity, the swap ``P`` and its partial
transpose ``P*``.

Every constructor returns a :class:`~pptkit.tensor.Matrix`. The backend
follows the scalar arguments: Gaussian-rational parameters give exact
matrices, floats/complex give float matrices.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

from .permutations import check_perm, from_cycles
from .scalars import (
    EPS,
    EXACT,
    FLOAT,
    ONE,
    ZERO,
    PoleError,
    QQi,
    common_backend,
    to_backend,
)
from .tensor import Matrix, add, embed, embed_site, kron, linear_combination, scale


def _require_d2(name: str, d: int):
    if d != 2:
        raise ValueError(f"{name} is only defined for d=2 (got d={d})")


def identity(d: int, n: int = 2, backend: str = EXACT) -> Matrix:
    return Matrix.identity(d, n, backend)


def swap(d: int, backend: str = EXACT) -> Matrix:
    """The permutation ``P = sum |ij><ji|``."""
    m = Matrix.from_function(lambda ket, bra: ONE if ket == bra[::-1] else ZERO, d, 2, EXACT)
    return m if backend == EXACT else m.to_float()


def ppt(d: int, backend: str = EXACT) -> Matrix:
    """``P* = sum |ii><jj|``, the partial transpose of the swap."""
    m = Matrix.from_function(lambda ket, bra: ONE if ket[0] == ket[1] and bra[0] == bra[1] else ZERO, d, 2, EXACT)
    return m if backend == EXACT else m.to_float()


def p_sup(d: int, backend: str = EXACT) -> Matrix:
    """``Id - P*`` (also written with a raised star); involutive at d=2."""
    return identity(d, 2, backend) - ppt(d, backend)


def p_pm(sign: int, backend: str = EXACT) -> Matrix:
    """``P^(+)`` is the swap, ``P^(-)`` the swap with ``-1`` on ``|01>,|10>``."""
    s = _sign(sign)
    rows = [[1, 0, 0, 0], [0, 0, s, 0], [0, s, 0, 0], [0, 0, 0, 1]]
    return Matrix.from_rows(rows, 2, 2, backend)


def q_star(q) -> Matrix:
    """q-deformed partial transpose ``Q*(q)`` (d=2); hermitian iff ``|q| = 1``."""
    if q == 0:
        raise PoleError("Q*(q) needs q != 0")
    backend = common_backend(q)
    q = to_backend(q, backend)
    rows = [[1, 0, 0, -q], [0, 0, 0, 0], [0, 0, 0, 0], [-1 / q, 0, 0, 1]]
    return Matrix.from_rows(rows, 2, 2, backend)


def q_sup(q) -> Matrix:
    """``Id - Q*(q)``; involutive for every ``q != 0``."""
    Q = q_star(q)
    return identity(2, 2, Q.backend) - Q


def _sign(sign) -> int:
    if sign in (1, "+", "plus"):
        return 1
    if sign in (-1, "-", "minus"):
        return -1
    raise ValueError(f"sign must be + or -, got {sign!r}")


def basic_operators(d: int, q=None, backend: str = EXACT) -> dict[str, Matrix]:
    """Id, P, P*, Psup and, for d=2, P^(+), P^(-), Q*(q), Qsup(q).

    ``q`` defaults to 1 (exact) when ``d == 2``.
    """
    ops = {
        "Id": identity(d, 2, backend),
        "P": swap(d, backend),
        "P*": ppt(d, backend),
        "Psup": p_sup(d, backend),
    }
    if q is not None and d != 2:
        raise ValueError("Q*(q) is only defined for d=2")
    if d == 2:
        if q is None:
            q = QQi(1) if backend == EXACT else 1.0
        ops["P+"] = p_pm(+1, backend)
        ops["P-"] = p_pm(-1, backend)
        ops["Q*"] = q_star(q)
        ops["Qsup"] = q_sup(q)
    return ops


def lpa(d: int, a, u, b) -> Matrix:
    """General element ``a Id + u P + b P*``."""
    backend = common_backend(a, u, b)
    return linear_combination(
        [
            (to_backend(a, backend), identity(d, 2, backend)),
            (to_backend(u, backend), swap(d, backend)),
            (to_backend(b, backend), ppt(d, backend)),
        ]
    )


# ---------------------------------------------------------------------------
# projectors


def projectors(d: int, backend: str = EXACT):
    """``(P1, P2, P3)`` and the pair ``(P*/d, Id - P*/d)``."""
    one = to_backend(1, backend)
    Id, P, Ps = identity(d, 2, backend), swap(d, backend), ppt(d, backend)
    inv_d = one / d
    half = one / 2
    P1 = scale(inv_d, Ps)
    P2 = scale(half, Id - P)
    P3 = scale(half, Id + P) - scale(inv_d, Ps)
    return (P1, P2, P3), (P1, Id - P1)


def permutation_like(d: int, backend: str = EXACT):
    """``Id - (2/d) P*`` and ``P - (2/d) P*``; both square to Id."""
    c = to_backend(2, backend) / d
    Ps = ppt(d, backend)
    return identity(d, 2, backend) - scale(c, Ps), swap(d, backend) - scale(c, Ps)


# ---------------------------------------------------------------------------
# Werner and isotropic families


def werner(d: int, f) -> Matrix:
    """``((d-f) Id + (d f - 1) P) / (d (d+1))``; trace ``d - 1`` (unnormalized for d>2)."""
    backend = common_backend(f)
    f = to_backend(f, backend)
    denom = to_backend(d * (d + 1), backend)
    return linear_combination([((d - f) / denom, identity(d, 2, backend)), ((d * f - 1) / denom, swap(d, backend))])


def werner_display(p, as_printed: bool = False) -> Matrix:
    """Two-qubit Werner state ``p |psi-><psi-| + (1-p)/4 Id`` as a matrix.

    The off-diagonal entry is ``-p/2``. ``as_printed=True`` gives the
    ``(1-3p)/4`` entry of the commonly displayed matrix, which does not
    match the definition.
    """
    backend = common_backend(p)
    p = to_backend(p, backend)
    a, b = (1 - p) / 4, (1 + p) / 4
    c = (1 - 3 * p) / 4 if as_printed else -p / 2
    z = to_backend(0, backend)
    return Matrix.from_rows([[a, z, z, z], [z, b, c, z], [z, c, b, z], [z, z, z, a]], 2, 2, backend)


def werner_R(d: int, u) -> Matrix:
    """Werner state rewritten as ``((d-1)/(d(u+d))) (Id + u P)``."""
    backend = common_backend(u)
    u = to_backend(u, backend)
    if (backend == EXACT and u + d == 0) or (backend == FLOAT and abs(u + d) <= EPS):
        raise PoleError(f"werner_R has a pole at u = -{d}")
    pref = to_backend(d - 1, backend) / (d * (u + d))
    return scale(pref, werner_bare(d, u))


def werner_bare(d: int, u) -> Matrix:
    """``Id + u P``, the scale-free rational YBE solution."""
    backend = common_backend(u)
    u = to_backend(u, backend)
    return identity(d, 2, backend) + scale(u, swap(d, backend))


def isotropic(d: int, v) -> Matrix:
    """``Id + v P*``."""
    backend = common_backend(v)
    v = to_backend(v, backend)
    return identity(d, 2, backend) + scale(v, ppt(d, backend))


def isotropic_square_rhs(d: int, v) -> Matrix:
    """``(Id + v P*) + v (1 + v d) P*``, the closed form of ``(Id + v P*)^2``."""
    backend = common_backend(v)
    v = to_backend(v, backend)
    return isotropic(d, v) + scale(v * (1 + v * d), ppt(d, backend))


def v_pm(d: int, backend: str | None = None):
    """Roots ``v+, v-`` of ``v + 1/v = -d``: ``v± = -(d ∓ sqrt(d²-4))/2``.

    Exact only for d=2 (both roots equal -1); float otherwise.
    """
    if d < 2:
        raise ValueError("v± needs d >= 2")
    if backend is None:
        backend = EXACT if d == 2 else FLOAT
    if d == 2:
        v = to_backend(-1, backend)
        return v, v
    if backend == EXACT:
        raise ValueError(f"v± is irrational for d={d}; use the float backend")
    s = math.sqrt(d * d - 4)
    return complex(-(d - s) / 2), complex(-(d + s) / 2)


def hecke_generator(d: int, sign: int, backend: str | None = None) -> Matrix:
    """``R± = v∓ Id + P*`` (labelling as printed with the Hecke condition)."""
    vp, vm = v_pm(d, backend)
    v = vm if _sign(sign) > 0 else vp
    b = EXACT if isinstance(v, QQi) else FLOAT
    return scale(v, identity(d, 2, b)) + ppt(d, b)


# ---------------------------------------------------------------------------
# Pauli algebra (d = 2)


def pauli(backend: str = EXACT) -> dict[str, Matrix]:
    """Single-site ``sx, sy, sz``; ``sy`` is exact because ``i`` is Gaussian."""
    i = QQi(0, 1) if backend == EXACT else 1j
    z = to_backend(0, backend)
    one = to_backend(1, backend)
    return {
        "sx": Matrix.from_rows([[z, one], [one, z]], 2, 1, backend),
        "sy": Matrix.from_rows([[z, -i], [i, z]], 2, 1, backend),
        "sz": Matrix.from_rows([[one, z], [z, -one]], 2, 1, backend),
    }


def pauli_suite(phi: float | None = None, *, q=None) -> dict[str, Matrix]:
    """Rotated Pauli pairs and the projectors ``H+``, ``H-``, ``P_z``.

    ``sigma_n1 = cos(phi/2) sx + sin(phi/2) sy`` and
    ``sigma_n2 = cos((phi+pi)/2) sx + sin((phi+pi)/2) sy``. Their tensor
    squares carry ``q = exp(-i phi)`` in the corner entries. Pass ``phi``
    (float backend, single-site ``n1``/``n2`` included) or a unit-modulus
    ``q`` directly (exact when ``q`` is a Gaussian rational).
    """
    if (phi is None) == (q is None):
        raise ValueError("give exactly one of phi or q")
    out: dict[str, Matrix] = {}
    if phi is not None:
        backend = FLOAT
        q = cmath.exp(-1j * phi)
        base = pauli(FLOAT)
        c1, s1 = math.cos(phi / 2), math.sin(phi / 2)
        c2, s2 = math.cos((phi + math.pi) / 2), math.sin((phi + math.pi) / 2)
        out["n1"] = scale(c1, base["sx"]) + scale(s1, base["sy"])
        out["n2"] = scale(c2, base["sx"]) + scale(s2, base["sy"])
    else:
        backend = common_backend(q)
        q = to_backend(q, backend)
        mod2 = q.abs2() if isinstance(q, QQi) else abs(q) ** 2
        if (backend == EXACT and mod2 != 1) or (backend == FLOAT and abs(mod2 - 1) > 1e-12):
            raise ValueError(f"|q| must be 1, got |q|^2 = {mod2}")
        base = pauli(backend)
    out.update(base)
    out["q"] = q
    z = to_backend(0, backend)
    one = to_backend(1, backend)
    qi = 1 / q
    n1n1 = Matrix.from_rows([[z, z, z, q], [z, z, one, z], [z, one, z, z], [qi, z, z, z]], 2, 2, backend)
    n2n2 = scale(-1, Matrix.from_rows([[z, z, z, q], [z, z, -one, z], [z, -one, z, z], [qi, z, z, z]], 2, 2, backend))
    Id = identity(2, 2, backend)
    half = one / 2
    zz = kron(base["sz"], base["sz"])
    out["n1n1"] = n1n1
    out["n2n2"] = n2n2
    out["zz"] = zz
    out["H+"] = scale(half, Id - n1n1)
    out["H-"] = scale(half, Id + n2n2)
    out["Pz"] = scale(half, Id + zz)
    return out


def xxx_hamiltonian(N: int, backend: str = EXACT) -> Matrix:
    """``sum_i P_{i,i+1}`` on ``N + 1`` qubits."""
    if N < 1:
        raise ValueError("need at least one bond")
    P = swap(2, backend)
    return linear_combination((1, embed(P, i, N + 1)) for i in range(1, N + 1))


def xxx_hamiltonian_pauli(N: int, backend: str = EXACT) -> Matrix:
    """Same chain written as ``1/2 sum_i (Id + sx sx + sy sy + sz sz)``."""
    pl = pauli(backend)
    half = to_backend(1, backend) / 2
    bond = identity(2, 2, backend)
    for key in ("sx", "sy", "sz"):
        bond = bond + kron(pl[key], pl[key])
    return linear_combination((half, embed(bond, i, N + 1)) for i in range(1, N + 1))


def total_sz(N: int, backend: str = EXACT) -> Matrix:
    sz = pauli(backend)["sz"]
    return linear_combination((1, embed_site(sz, i, N)) for i in range(1, N + 1))


# ---------------------------------------------------------------------------
# permutation operators


def v_pi(perm: Sequence[int] | str, d: int, backend: str = EXACT) -> Matrix:
    """``V_π = sum |i_π(1) ... i_π(n)><i_1 ... i_n|``.

    Ket site ``k`` carries the bra index of site ``π(k)``, so the factor at
    site ``π(k)`` lands on site ``k``. Products reverse the order of
    composition: ``V_π V_ρ = V_{ρ∘π}`` (``π`` applied first).
    ``perm`` is one-line notation (``perm[k-1] = π(k)``) or a cycle string
    such as ``"(2)(134)"``.
    """
    if isinstance(perm, str):
        perm = from_cycles(perm)
    perm = check_perm(perm)
    n = len(perm)

    def entry(ket, bra):
        return ONE if all(ket[k] == bra[perm[k] - 1] for k in range(n)) else ZERO

    m = Matrix.from_function(entry, d, n, EXACT)
    return m if backend == EXACT else m.to_float()


def adjacent_swap(i: int, n: int, d: int, backend: str = EXACT) -> Matrix:
    """``V_i``: swap of sites ``i, i+1`` on ``n`` sites."""
    return embed(swap(d, backend), i, n)


def tl_generator(i: int, n: int, d: int, backend: str = EXACT) -> Matrix:
    """``E_i``: ``P*`` on sites ``i, i+1`` of ``n``."""
    return embed(ppt(d, backend), i, n)
