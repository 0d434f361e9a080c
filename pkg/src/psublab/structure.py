"""Structural predicates and derived subgroups over a subgroup lattice.

Every function takes a :class:`~psublab.lattice.Lattice` whose top node is
the group being studied; apply them to a subgroup through
``L.restrict(node)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import reduce

import numpy as np

from .lattice import Lattice
from .numtheory import factorize, is_prime, p_part
from .perm import SubgroupRef, core, generate, normalizer


def pi(L: Lattice) -> list[int]:
    return sorted(factorize(L.order)) if L.order > 1 else []


def _ids_of_order(L: Lattice, order: int) -> list[int]:
    return [i for i, h in enumerate(L.nodes) if h.order == order]


def sylow_nodes(L: Lattice, p: int) -> list[int]:
    if L.order % p:
        raise ValueError(f"{p} does not divide {L.order}")
    return _ids_of_order(L, p_part(L.order, p))


def sylow(L: Lattice, p: int) -> int:
    """First Sylow ``p``-subgroup in node order."""
    return sylow_nodes(L, p)[0]


def intersect_nodes(L: Lattice, ids) -> int:
    bits = reduce(lambda a, b: a & b, (L.nodes[i].bits for i in ids), L.top_ref.bits)
    return L.node(bits)


def frattini(L: Lattice, j: int | None = None) -> int:
    """Intersection of the maximal subgroups of node ``j`` (default: the top)."""
    j = L.top if j is None else j
    return intersect_nodes(L, L.down[j]) if L.down[j] else j


def core_node(L: Lattice, i: int) -> int:
    return L.node(core(L.group, L.nodes[i], within=L.top_ref))


def normalizer_node(L: Lattice, i: int) -> int:
    return L.node(normalizer(L.group, L.nodes[i], within=L.top_ref))


def is_abelian(L: Lattice) -> bool:
    t = L.group.table
    gens = L.top_gens
    return all(t[a, b] == t[b, a] for a in gens for b in gens)


def is_cyclic(L: Lattice) -> bool:
    return bool((L.group.element_orders[L.group.indices(L.top_ref)] == L.order).any())


def is_nilpotent(L: Lattice) -> bool:
    """Every Sylow subgroup is normal, i.e. unique."""
    return all(len(sylow_nodes(L, p)) == 1 for p in pi(L))


def derived_subgroup(L: Lattice, j: int | None = None) -> int:
    """Normal closure (in node ``j``) of the commutators of its generators."""
    j = L.top if j is None else j
    G = L.group
    t, inv = G.table, G.inverses
    gens = L.gens(j)
    comm = [int(t[t[inv[a], inv[b]], t[a, b]]) for a in gens for b in gens]
    D = generate(G, comm)
    while True:
        conj = [int(G.conj_perm(g)[x]) for g in gens for x in G.indices(D)]
        D2 = generate(G, conj, base=D)
        if D2.bits == D.bits:
            return L.node(D)
        D = D2


def is_solvable(L: Lattice) -> bool:
    j = L.top
    while j != 0:
        d = derived_subgroup(L, j)
        if d == j:
            return False
        j = d
    return True


def minimal_normal_above(L: Lattice, n: int) -> list[int]:
    """Normal nodes strictly above ``n`` that are minimal with that property."""
    cand = [i for i in np.flatnonzero(L.normal & L.contain[n, :]) if i != n]
    return [int(i) for i in cand if not any(k != i and L.contain[k, i] for k in cand)]


def _supersolvable_above(L: Lattice, n: int) -> bool:
    """Chief-factor test for the quotient of the top by the normal node ``n``."""
    cur = n
    while cur != L.top:
        step = minimal_normal_above(L, cur)[0]
        if not is_prime(L.index(cur, step)):
            return False
        cur = step
    return True


def is_supersolvable_chief(L: Lattice) -> bool:
    """All chief factors have prime order (a greedy chief series from the bottom)."""
    return _supersolvable_above(L, 0)


def is_supersolvable_huppert(L: Lattice) -> bool:
    """Every maximal subgroup has prime index."""
    return all(is_prime(L.index(m)) for m in L.down[L.top])


is_supersolvable = is_supersolvable_chief


def supersolvable_residual(L: Lattice) -> int:
    """Smallest normal node with supersolvable quotient."""
    good = [int(i) for i in np.flatnonzero(L.normal) if _supersolvable_above(L, int(i))]
    return intersect_nodes(L, good)


def has_susolv_sylow_tower(L: Lattice) -> bool:
    """Normal series with Sylow factors for the primes in decreasing order."""
    cur = 0
    size = 1
    for p in reversed(pi(L)):
        size *= p_part(L.order, p)
        nxt = [i for i in np.flatnonzero(L.normal & L.contain[cur, :]) if L.nodes[i].order == size]
        if not nxt:
            return False
        cur = int(nxt[0])
    return True


def _all_maximal(L: Lattice, pred) -> bool:
    return all(pred(L.restrict(m)) for m in L.down[L.top])


def is_schmidt(L: Lattice) -> bool:
    return not is_nilpotent(L) and _all_maximal(L, is_nilpotent)


def is_min_non_supersolvable(L: Lattice) -> bool:
    return not is_supersolvable(L) and _all_maximal(L, is_supersolvable)


def is_minimal_nonabelian(L: Lattice) -> bool:
    return not is_abelian(L) and _all_maximal(L, is_abelian)


def primitivator(L: Lattice) -> int | None:
    """A maximal subgroup with trivial core, if any."""
    for m in L.down[L.top]:
        if core_node(L, m) == 0:
            return m
    return None


def is_primitive(L: Lattice) -> bool:
    return primitivator(L) is not None


def first_non_supersolvable_maximal(L: Lattice) -> int | None:
    for m in L.down[L.top]:
        if not is_supersolvable(L.restrict(m)):
            return m
    return None


@dataclass
class StructureSummary:
    order: int
    factorization: dict[int, int]
    pi: list[int]
    abelian: bool
    nilpotent: bool
    solvable: bool
    supersolvable: bool
    schmidt: bool
    minimal_non_supersolvable: bool
    has_susolv_sylow_tower: bool
    primitive: bool
    frattini: int
    residual: int
    residual_order: int
    residual_frattini_trivial: bool

    def flags(self) -> dict[str, bool]:
        keys = ("abelian", "nilpotent", "solvable", "supersolvable", "schmidt",
                "minimal_non_supersolvable", "has_susolv_sylow_tower", "primitive",
                "residual_frattini_trivial")
        return {k: getattr(self, k) for k in keys}

    def to_json(self) -> dict:
        d = asdict(self)
        d["factorization"] = {str(p): e for p, e in self.factorization.items()}
        return d


def residual_frattini(L: Lattice) -> int:
    r = supersolvable_residual(L)
    return frattini(L, r)


def summarize(L: Lattice) -> StructureSummary:
    r = supersolvable_residual(L)
    ss = is_supersolvable(L)
    return StructureSummary(
        order=L.order,
        factorization=factorize(L.order) if L.order > 1 else {},
        pi=pi(L),
        abelian=is_abelian(L),
        nilpotent=is_nilpotent(L),
        solvable=is_solvable(L),
        supersolvable=ss,
        schmidt=is_schmidt(L),
        minimal_non_supersolvable=is_min_non_supersolvable(L) if not ss else False,
        has_susolv_sylow_tower=has_susolv_sylow_tower(L),
        primitive=is_primitive(L),
        frattini=frattini(L),
        residual=r,
        residual_order=L.nodes[r].order,
        residual_frattini_trivial=frattini(L, r) == 0,
    )


def ref(L: Lattice, i: int) -> SubgroupRef:
    return L.nodes[i]
