"""Independent numpy oracles shared by the test modules.

Nothing here imports the package's own tensor helpers: the oracles build
matrices from explicit index loops so they can catch convention slips.
"""

import itertools

import numpy as np
import pytest


def np_swap(d):
    M = np.zeros((d * d, d * d), dtype=complex)
    for i, j in itertools.product(range(d), repeat=2):
        M[i * d + j, j * d + i] = 1
    return M


def np_ppt(d):
    M = np.zeros((d * d, d * d), dtype=complex)
    for i, j in itertools.product(range(d), repeat=2):
        M[i * d + i, j * d + j] = 1
    return M


def np_embed(op, i, n, d):
    return np.kron(np.kron(np.eye(d ** (i - 1)), op), np.eye(d ** (n - i - 1)))


def np_index_sum(d, n, ket_of, bra_of, nfree):
    """``sum |ket_of(idx)><bra_of(idx)|`` over ``nfree`` free indices."""
    side = d**n
    M = np.zeros((side, side), dtype=complex)
    for idx in itertools.product(range(d), repeat=nfree):
        k = ket_of(*idx)
        b = bra_of(*idx)
        r = sum(v * d ** (n - 1 - p) for p, v in enumerate(k))
        c = sum(v * d ** (n - 1 - p) for p, v in enumerate(b))
        M[r, c] += 1
    return M


def as_np(M):
    return np.array(M.to_numpy(), dtype=complex)


@pytest.fixture
def oracle():
    class O:
        swap = staticmethod(np_swap)
        ppt = staticmethod(np_ppt)
        embed = staticmethod(np_embed)
        index_sum = staticmethod(np_index_sum)

    return O
