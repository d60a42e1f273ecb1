"""Integral equivalence of positive definite lattices by backtracking.

The search looks for U with U^T B U = A.  The source A is LLL-reduced first;
every basis vector must then map to a vector of the same norm in B whose
fingerprint (the distribution of inner products with the short vectors of
the lattice) agrees, and each choice must respect the inner products with
the images already fixed.  An exhausted search proves non-isometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import time

import numpy as np

from . import enumeration
from .linalg import int_det, int_inverse, lll_gram, matmul, rational_inverse, to_int_matrix, transpose


class SearchTimeout(Exception):
    pass


@dataclass
class Verdict:
    modular: object  # True, False or "undecided"
    witness: list = None
    evidence: dict = field(default_factory=dict)


def _fingerprints(V, G, S, s_norms):
    """Per-row histogram of (norm of s, |<v, s>|) over the short set S."""
    ips = np.abs(V @ G @ S.T)
    out = []
    for row in ips:
        keys = s_norms * 100003 + row
        vals, counts = np.unique(keys, return_counts=True)
        out.append((tuple(vals.tolist()), tuple(counts.tolist())))
    return out


def find_isometry(A, B, budget: float = 60.0, workers: int = 1):
    """Integral U with U^T B U = A, or None if none exists.

    Raises SearchTimeout when the time budget runs out.
    """
    A = [list(map(int, r)) for r in A]
    B = [list(map(int, r)) for r in B]
    m = len(A)
    if len(B) != m:
        return None
    if int_det(A) != int_det(B):
        return None
    deadline = time.monotonic() + budget
    Ar, C = lll_gram(A)
    norms = [Ar[i][i] // 2 for i in range(m)]
    top = max(norms)

    VA, nA = enumeration.enumerate_short(A, top, workers)
    VB, nB = enumeration.enumerate_short(B, top, workers)
    if sorted(nA.tolist()) != sorted(nB.tolist()):
        return None

    # short sets for fingerprints: smallest norm only, both signs
    lowest = int(nA.min())
    SA = VA[nA == lowest]
    SB = VB[nB == lowest]
    SA = np.vstack([SA, -SA])
    SB = np.vstack([SB, -SB])
    Anp = np.array(A, dtype=np.int64)
    Bnp = np.array(B, dtype=np.int64)
    sA = np.full(len(SA), lowest, dtype=np.int64)
    sB = np.full(len(SB), lowest, dtype=np.int64)

    Cnp = np.array(C, dtype=np.int64)
    src = Cnp.T  # rows: reduced basis vectors in A-coordinates
    src_fp = _fingerprints(src, Anp, SA, sA)

    cands = []
    for i in range(m):
        pool = VB[nB == norms[i]]
        pool = np.vstack([pool, -pool])
        fps = _fingerprints(pool, Bnp, SB, sB)
        keep = [k for k, fp in enumerate(fps) if fp == src_fp[i]]
        if not keep:
            return None
        cands.append(pool[keep])

    order = sorted(range(m), key=lambda i: len(cands[i]))
    # -1 is an isometry: the first image may be taken up to sign
    first = order[0]
    c0 = cands[first]
    nz = c0 != 0
    lead = c0[np.arange(len(c0)), nz.argmax(axis=1)]
    cands[first] = c0[lead > 0]

    CB = [c @ Bnp for c in cands]
    chosen = {}
    nodes = 0

    def rec(depth):
        nonlocal nodes
        if depth == m:
            return True
        i = order[depth]
        mask = np.ones(len(cands[i]), dtype=bool)
        for prev in order[:depth]:
            mask &= CB[i] @ chosen[prev] == Ar[i][prev]
        for k in np.nonzero(mask)[0]:
            nodes += 1
            if nodes % 256 == 0 and time.monotonic() > deadline:
                raise SearchTimeout(f"isometry search exceeded {budget}s after {nodes} nodes")
            chosen[i] = cands[i][k]
            if rec(depth + 1):
                return True
        chosen.pop(i, None)
        return False

    if not rec(0):
        return None
    Ur = np.stack([chosen[i] for i in range(m)], axis=1)  # columns = images
    U = Ur @ np.array(int_inverse(C), dtype=np.int64)
    U = U.tolist()
    if matmul(transpose(U), matmul(B, U)) != A or abs(int_det(U)) != 1:
        raise ArithmeticError("isometry search returned an invalid witness")
    return U


def scaled_dual(t, p: int) -> list:
    inv = rational_inverse(t)
    return to_int_matrix([[p * x for x in row] for row in inv])


def modularity_check(t, p: int, budget: float = 60.0, workers: int = 1) -> Verdict:
    """Is the lattice with Gram t isometric to its dual rescaled by p?"""
    t = [list(map(int, r)) for r in t]
    try:
        D = scaled_dual(t, p)
    except ValueError:
        raise ValueError(f"{p} * t^-1 is not integral") from None
    evidence = {"det": int_det(t), "det_dual_scaled": int_det(D)}
    try:
        U = find_isometry(t, D, budget=budget, workers=workers)
    except SearchTimeout as exc:
        bound = max(t[i][i] for i in range(len(t))) // 2
        ca = enumeration.norm_counts(t, bound, workers)
        cb = enumeration.norm_counts(D, bound, workers)
        evidence.update(
            reason=str(exc),
            theta_bound=bound,
            theta_agree=ca == cb,
            theta=sorted(ca.items()),
        )
        return Verdict("undecided", None, evidence)
    if U is None:
        return Verdict(False, None, evidence)
    return Verdict(True, U, evidence)
