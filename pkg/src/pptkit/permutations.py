"""Permutations of ``{1..n}`` stored in one-line form ``perm[k-1] = π(k)``."""

from __future__ import annotations

import re
from typing import Sequence

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def check_perm(perm: Sequence[int]) -> Perm:
    perm = tuple(int(k) for k in perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
    return perm


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """``p∘q``: apply ``q`` first, then ``p``."""
    if len(p) != len(q):
        raise ValueError("permutations of different degree")
    return tuple(p[q[k] - 1] for k in range(len(q)))


def invert(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for k, image in enumerate(p, start=1):
        out[image - 1] = k
    return tuple(out)


def transposition(i: int, n: int) -> Perm:
    """Adjacent transposition ``(i, i+1)`` on ``n`` points."""
    if not 1 <= i < n:
        raise IndexError(f"transposition ({i},{i + 1}) out of range for n={n}")
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


_CYCLE = re.compile(r"\(([^()]*)\)")


def from_cycles(text: str, n: int | None = None) -> Perm:
    """Parse cycle notation such as ``(2)(134)`` or ``(1,3)``.

    Multi-digit labels need separators (commas or spaces). ``n`` defaults to
    the largest label that appears.
    """
    text = text.strip()
    if text in ("", "e", "()"):
        if n is None:
            raise ValueError("degree needed for the identity permutation")
        return identity_perm(n)
    pos = 0
    cycles = []
    for m in _CYCLE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"bad cycle notation {text!r}")
        body = m.group(1).strip()
        if "," in body or " " in body:
            labels = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
        else:
            labels = [int(ch) for ch in body]
        cycles.append(labels)
        pos = m.end()
    if text[pos:].strip() or not cycles:
        raise ValueError(f"bad cycle notation {text!r}")
    top = max((max(c) for c in cycles if c), default=0)
    if n is None:
        n = top
    if top > n:
        raise ValueError(f"label {top} exceeds degree {n}")
    images = list(range(1, n + 1))
    seen: set[int] = set()
    for cyc in cycles:
        if len(set(cyc)) != len(cyc) or seen & set(cyc) or any(k < 1 for k in cyc):
            raise ValueError(f"bad cycle {cyc} in {text!r}")
        seen |= set(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b
    return tuple(images)


def to_cycles(p: Sequence[int]) -> str:
    seen: set[int] = set()
    parts = []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        k = p[start - 1]
        while k != start:
            cyc.append(k)
            seen.add(k)
            k = p[k - 1]
        if len(cyc) > 1:
            sep = "," if len(p) > 9 else ""
            parts.append("(" + sep.join(map(str, cyc)) + ")")
    return "".join(parts) or "e"
