"""Dense floating-point brute force for modular pairs, independent of the package internals.

Reads only the JSON dictionaries; used once to produce the expected outcomes
committed with the corpus.
"""

from fractions import Fraction

import numpy as np


def _num(x):
    return float(Fraction(x)) if isinstance(x, str) else float(x)


def _tensor(rows, n):
    t = np.zeros((n, n, n))
    for i, j, k, v in rows:
        t[i, j, k] = _num(v)
    return t


def load(obj):
    n = obj["dim"]
    return {
        "n": n,
        "M": _tensor(obj["mult"], n),
        "C": _tensor(obj["comult"], n),
        "S": np.array([[_num(x) for x in row] for row in obj["antipode"]]),
        "eps": np.array([_num(x) for x in obj["counit"]]),
        "one": np.array([_num(x) for x in obj["unit"]]),
        "phi": np.array([_num(x) for x in obj["left_integral"]]),
    }


def is_pair(q, s, d, tol=1e-9):
    M, C, S, phi = q["M"], q["C"], q["S"], q["phi"]

    def mul(x, y):
        return np.einsum("i,j,ijk->k", x, y, M)

    def twist(x, left, right):
        # (left -> x) <- right = left(x(3)) right(x(1)) x(2)
        c3 = np.einsum("ijk,klm->ijlm", C, C)
        return np.einsum("i,ijlm,j,m->l", x, c3, right, left)

    close = lambda a, b: np.allclose(a, b, atol=tol)
    n = q["n"]
    E = np.eye(n)
    if not close(np.einsum("i,ijk->jk", s, C), np.outer(s, s)) or not close(q["eps"] @ s, 1):
        return False
    if not close(d @ q["one"], 1) or not close(np.einsum("ijk,k->ij", M, d), np.outer(d, d)):
        return False
    sinv = S @ s
    dinv = S.T @ d
    s2inv = mul(sinv, sinv)
    if not close(np.einsum("tjk,j->tk", C, phi), np.outer(phi, s2inv)):
        return False
    conj = [mul(mul(s, E[r]), sinv) for r in range(n)]
    for r in range(n):
        tw = twist(conj[r], d, d)
        for t in range(n):
            if not close(phi @ mul(E[r], E[t]), phi @ mul(E[t], tw)):
                return False
    S2 = S @ S
    for t in range(n):
        if not close(S2[:, t], twist(conj[t], dinv, d)):
            return False
    return close(d @ s, 1)


def pairs(obj):
    q = load(obj)
    gl = [np.array([_num(x) for x in v]) for v in obj.get("grouplike_candidates", [])]
    ch = [np.array([_num(x) for x in v]) for v in obj.get("character_candidates", [])]
    return [(i, j) for i, s in enumerate(gl) for j, d in enumerate(ch) if is_pair(q, s, d)]
