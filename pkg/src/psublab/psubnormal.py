"""P-subnormality: chains of prime-index steps up to the top of a lattice."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .lattice import Lattice, two_maximal_subgroups
from .numtheory import is_prime, prime_divisors


@dataclass(frozen=True)
class ChainCertificate:
    """``nodes[0] ⊂ nodes[1] ⊂ ... ⊂ nodes[-1] = top``, each step of prime index."""

    nodes: tuple[int, ...]
    indexes: tuple[int, ...]

    def orders(self, L: Lattice) -> list[int]:
        return [L.nodes[i].order for i in self.nodes]

    def to_json(self, L: Lattice) -> dict:
        return {"orders": self.orders(L), "indexes": list(self.indexes)}


def verify_certificate(L: Lattice, cert: ChainCertificate) -> bool:
    """Re-check containments and primality of every step against the lattice."""
    if not cert.nodes or cert.nodes[-1] != L.top:
        return False
    if len(cert.indexes) != len(cert.nodes) - 1:
        return False
    for a, b, idx in zip(cert.nodes, cert.nodes[1:], cert.indexes):
        A, B = L.nodes[a], L.nodes[b]
        if A.bits & B.bits != A.bits or A.bits == B.bits:
            return False
        if B.order // A.order != idx or not is_prime(idx):
            return False
    return True


class PSubnormalMap:
    """Which nodes of a lattice are P-subnormal in its top, with shortest witnesses.

    Built by breadth-first search downward from the top: a node is marked
    when some marked node contains it with prime index.  The recorded parent
    is the lowest-id marked node in the earliest layer that reaches it.
    """

    def __init__(self, L: Lattice):
        self.lattice = L
        n = len(L.nodes)
        by_order: dict[int, list[int]] = {}
        for i, h in enumerate(L.nodes):
            by_order.setdefault(h.order, []).append(i)
        by_order_arr = {k: np.array(v, dtype=np.int64) for k, v in by_order.items()}
        parent = np.full(n, -1, dtype=np.int64)
        marked = np.zeros(n, dtype=bool)
        marked[L.top] = True
        layer = [L.top]
        while layer:
            nxt = []
            for k in layer:
                ko = L.nodes[k].order
                for p in prime_divisors(ko) if ko > 1 else []:
                    ids = by_order_arr.get(ko // p)
                    if ids is None:
                        continue
                    for h in ids[L.contain[ids, k]]:
                        if not marked[h]:
                            marked[h] = True
                            parent[h] = k
                            nxt.append(int(h))
            layer = sorted(nxt)
        self.marked = marked
        self.parent = parent

    def __contains__(self, i: int) -> bool:
        return bool(self.marked[i])

    def certificate(self, i: int) -> ChainCertificate | None:
        if not self.marked[i]:
            return None
        chain = [i]
        while chain[-1] != self.lattice.top:
            chain.append(int(self.parent[chain[-1]]))
        orders = [self.lattice.nodes[c].order for c in chain]
        return ChainCertificate(tuple(chain), tuple(b // a for a, b in zip(orders, orders[1:])))

    @cached_property
    def unmarked(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(~self.marked)]


def psubnormal_map(L: Lattice) -> PSubnormalMap:
    cached = L.__dict__.get("_psub")
    if cached is None:
        cached = L.__dict__["_psub"] = PSubnormalMap(L)
    return cached


def is_psubnormal(L: Lattice, H: int) -> tuple[bool, ChainCertificate | None]:
    m = psubnormal_map(L)
    return bool(m.marked[H]), m.certificate(H)


def naive_is_psubnormal(L: Lattice, H: int) -> bool:
    """Plain recursive search over prime-index overgroups, without memoization."""
    if H == L.top:
        return True
    ho = L.nodes[H].order
    for K in np.flatnonzero(L.contain[H, :]):
        ko = L.nodes[K].order
        if ko != ho and is_prime(ko // ho) and naive_is_psubnormal(L, int(K)):
            return True
    return False


@dataclass(frozen=True)
class LhsResult:
    holds: bool
    violators: tuple[int, ...]
    representatives: tuple[int, ...]


def lhs_theorem(L: Lattice) -> LhsResult:
    """Are all 2-maximal subgroups P-subnormal?  Lists the violators."""
    m = psubnormal_map(L)
    bad = tuple(h for h in two_maximal_subgroups(L) if not m.marked[h])
    reps = tuple(sorted({min(L.classes[int(L.class_of[h])]) for h in bad}))
    return LhsResult(not bad, bad, reps)
