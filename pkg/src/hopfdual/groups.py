"""Small finite groups given by multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]  # table[a][b] = index of a*b

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][b] == b for b in range(self.order)):
                return e
        raise ValueError("no identity element")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        e = self.identity
        return next(b for b in range(self.order) if self.table[a][b] == e)

    def element_order(self, a: int) -> int:
        e, x, k = self.identity, a, 1
        while x != e:
            x = self.table[x][a]
            k += 1
        return k


def cyclic(n: int) -> FiniteGroup:
    names = tuple("e" if k == 0 else ("g" if k == 1 else f"g{k}") for k in range(n))
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(f"Z{n}", names, table)


def symmetric3() -> FiniteGroup:
    perms = sorted(permutations(range(3)))  # identity first
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(3))] for q in perms) for p in perms)
    names = tuple("e" if p == (0, 1, 2) else "p" + "".join(map(str, p)) for p in perms)
    return FiniteGroup("S3", names, table)


def sign_characters(group: FiniteGroup) -> list[list[int]]:
    """All homomorphisms to {1, -1}, trivial first."""
    n = group.order
    out = []
    for bits in range(2 ** n):
        chi = [-1 if bits >> i & 1 else 1 for i in range(n)]
        if chi[group.identity] != 1:
            continue
        if all(chi[group.mul(a, b)] == chi[a] * chi[b] for a in range(n) for b in range(n)):
            out.append(chi)
    return out
