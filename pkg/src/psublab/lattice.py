"""Full subgroup lattices: enumeration, covering edges, conjugacy classes, depths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .numtheory import factorize
from .perm import (
    CapExceeded,
    Group,
    SubgroupRef,
    bits_to_mask,
    generators_of,
    mask_to_bits,
    masks_to_bits,
)

DEFAULT_LATTICE_CAP = 2000


@dataclass(frozen=True)
class DepthProfile:
    subgroup: int
    min_depth: int
    max_depth: int


def _cyclic_subgroups(G: Group) -> dict[int, int]:
    """Map bitset -> one generator, over all cyclic subgroups."""
    t = G.table
    out: dict[int, int] = {}
    seen = np.zeros(G.order, dtype=bool)
    for x in range(G.order):
        if seen[x]:
            continue
        powers = [0]
        y = x
        while y != 0:
            powers.append(y)
            y = int(t[y, x])
        bits = 0
        for p in powers:
            bits |= 1 << p
        if bits not in out:
            out[bits] = x
        # any generator of the same cyclic subgroup gives the same bitset
        k = len(powers)
        for j in range(1, k):
            if np.gcd(j, k) == 1:
                seen[powers[j]] = True
    return out


def _is_prime_power(n: int) -> bool:
    return n > 1 and len(factorize(n)) == 1


def enumerate_subgroups(G: Group, cap: int | None = None) -> list[tuple[int, list[int]]]:
    """All subgroups of ``G`` as ``(bits, generators)`` by join saturation.

    Seeds are the cyclic subgroups; every node is repeatedly joined with the
    cyclic subgroups of prime-power order it does not contain, until no new
    subgroup appears.
    """
    cap = DEFAULT_LATTICE_CAP if cap is None else cap
    n = G.order
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds lattice cap {cap}")
    full_bits = (1 << n) - 1
    if n == 1:
        return [(1, [])]
    minp = min(factorize(n))
    limit = n // minp  # anything larger is the whole group
    cyc = _cyclic_subgroups(G)
    pp = [(b, g) for b, g in cyc.items() if _is_prime_power(b.bit_count())]
    pp_bits = [b for b, _ in pp]
    pp_gens = np.array([g for _, g in pp], dtype=np.int32)

    found: dict[int, list[int]] = {1: []}
    for b, g in cyc.items():
        found.setdefault(b, [g])
    found.setdefault(full_bits, list(G.generator_indices))
    queue = deque(b for b in found if b != full_bits)
    table = G.table
    while queue:
        hb = queue.popleft()
        gens = found[hb]
        todo = [i for i, cb in enumerate(pp_bits) if cb & hb != cb]
        if not todo:
            continue
        base = bits_to_mask(hb, n)
        rows, sizes = kernels.join_many(table, base, gens, pp_gens[todo], limit)
        keep = np.flatnonzero(sizes > 0)
        if keep.size == 0:
            continue
        for k, bits in zip(keep, masks_to_bits(rows[keep])):
            if bits not in found:
                found[bits] = gens + [int(pp_gens[todo[k]])]
                queue.append(bits)
    return list(found.items())


class Lattice:
    """All subgroups of a group (or of a node of a parent lattice).

    Node ids follow the order ``(order, bits)``, so node 0 is the trivial
    subgroup and the last node is ``top``.
    """

    def __init__(self, group: Group, nodes: list[SubgroupRef], contain: np.ndarray,
                 top_gens: list[int], gens: list[list[int]] | None = None, parent_ids=None):
        self.group = group
        self.nodes = nodes
        self.contain = contain
        self.top = len(nodes) - 1
        self.top_gens = list(top_gens)
        self._gens = gens
        self.parent_ids = parent_ids
        self.id_of_bits = {h.bits: i for i, h in enumerate(nodes)}

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"Lattice(order={self.order}, nodes={len(self.nodes)})"

    @property
    def order(self) -> int:
        return self.nodes[self.top].order

    @property
    def top_ref(self) -> SubgroupRef:
        return self.nodes[self.top]

    def node(self, H: SubgroupRef | int) -> int:
        """Node id of a subgroup (given as a ref or a bitset)."""
        bits = H if isinstance(H, int) else H.bits
        try:
            return self.id_of_bits[bits]
        except KeyError:
            raise KeyError("subgroup is not a node of this lattice") from None

    def order_of(self, i: int) -> int:
        return self.nodes[i].order

    def index(self, i: int, j: int | None = None) -> int:
        """``|j : i|`` (``j`` defaults to the top)."""
        j = self.top if j is None else j
        return self.nodes[j].order // self.nodes[i].order

    def gens(self, i: int) -> list[int]:
        if self._gens is not None and self._gens[i] is not None:
            return self._gens[i]
        return generators_of(self.group, self.nodes[i])

    def le(self, i: int, j: int) -> bool:
        return bool(self.contain[i, j])

    @cached_property
    def masks(self) -> np.ndarray:
        n = self.group.order
        return np.array([bits_to_mask(h.bits, n) for h in self.nodes], dtype=np.uint8).reshape(len(self.nodes), n)

    @cached_property
    def cover(self) -> np.ndarray:
        """``cover[i, j]``: node ``i`` is maximal in node ``j``."""
        strict = self.contain.copy()
        np.fill_diagonal(strict, False)
        s = strict.astype(np.float32)
        between = (s @ s) > 0
        return strict & ~between

    @cached_property
    def up(self) -> list[tuple[int, ...]]:
        """``up[i]``: nodes in which ``i`` is maximal."""
        return [tuple(np.flatnonzero(row)) for row in self.cover]

    @cached_property
    def down(self) -> list[tuple[int, ...]]:
        """``down[j]``: maximal subgroups of node ``j``."""
        return [tuple(np.flatnonzero(col)) for col in self.cover.T]

    def below(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.contain[:, j])

    def above(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.contain[i, :])

    def conj_node_maps(self) -> list[np.ndarray]:
        """For each generator of the top, the induced permutation of node ids."""
        return self._conj_maps

    @cached_property
    def _conj_maps(self) -> list[np.ndarray]:
        G = self.group
        out = []
        for g in self.top_gens:
            src = G.conj_perm(g)  # mask of H^g is mask[:, src]
            bits = masks_to_bits(self.masks[:, src])
            out.append(np.array([self.id_of_bits[b] for b in bits], dtype=np.int64))
        return out

    @cached_property
    def normal(self) -> np.ndarray:
        ids = np.arange(len(self.nodes))
        ok = np.ones(len(self.nodes), dtype=bool)
        for m in self._conj_maps:
            ok &= m == ids
        return ok

    @cached_property
    def class_of(self) -> np.ndarray:
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m in self._conj_maps:
            for i, j in enumerate(m):
                a, b = find(i), find(int(j))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots = [find(i) for i in range(len(self.nodes))]
        label = {r: k for k, r in enumerate(sorted(set(roots)))}
        return np.array([label[r] for r in roots], dtype=np.int64)

    @cached_property
    def classes(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, c in enumerate(self.class_of):
            out.setdefault(int(c), []).append(i)
        return [tuple(out[c]) for c in sorted(out)]

    def restrict(self, j: int) -> "Lattice":
        """The lattice of node ``j`` (its subgroups are exactly the nodes below it)."""
        if j == self.top:
            return self
        ids = self.below(j)
        sub = self.contain[np.ix_(ids, ids)]
        gens = [self.gens(int(i)) for i in ids] if self._gens is not None else None
        pid = ids if self.parent_ids is None else self.parent_ids[ids]
        L = Lattice(self.group, [self.nodes[i] for i in ids], sub, self.gens(j), gens, pid)
        if "cover" in self.__dict__:
            L.cover = self.cover[np.ix_(ids, ids)]
        return L

    @cached_property
    def depths(self) -> tuple[np.ndarray, np.ndarray]:
        n = len(self.nodes)
        lo = np.full(n, -1, dtype=np.int64)
        hi = np.full(n, -1, dtype=np.int64)
        lo[self.top] = hi[self.top] = 0
        # node ids increase with order, so covers of i have larger ids
        for i in range(n - 2, -1, -1):
            ups = self.up[i]
            lo[i] = 1 + min(lo[k] for k in ups)
            hi[i] = 1 + max(hi[k] for k in ups)
        return lo, hi


def enumerate_lattice(G: Group, cap: int | None = None) -> Lattice:
    """Build the full subgroup lattice of ``G``."""
    found = enumerate_subgroups(G, cap)
    found.sort(key=lambda bg: (bg[0].bit_count(), bg[0]))
    nodes = [SubgroupRef(b, b.bit_count()) for b, _ in found]
    gens = [g for _, g in found]
    n = G.order
    m = np.array([bits_to_mask(h.bits, n) for h in nodes], dtype=np.float32).reshape(len(nodes), n)
    inter = m @ m.T
    orders = np.array([h.order for h in nodes], dtype=np.float32)
    contain = inter == orders[:, None]
    return Lattice(G, nodes, contain, list(G.generator_indices), gens)


def maximal_subgroups(L: Lattice) -> list[int]:
    return list(L.down[L.top])


def two_maximal_subgroups(L: Lattice) -> list[int]:
    """Nodes that are maximal in some maximal subgroup of the top."""
    out = set()
    for m in L.down[L.top]:
        out.update(L.down[m])
    return sorted(out)


def depth_profile(L: Lattice, i: int) -> DepthProfile:
    lo, hi = L.depths
    return DepthProfile(i, int(lo[i]), int(hi[i]))


def normal_subgroups(L: Lattice) -> list[int]:
    return [int(i) for i in np.flatnonzero(L.normal)]


def node_with_elements(L: Lattice, mask: np.ndarray) -> int:
    return L.node(mask_to_bits(mask))


def to_dot(L: Lattice, marked=None) -> str:
    """Hasse diagram in Graphviz DOT; labels are orders, normal nodes are boxes,
    ``marked`` nodes (e.g. P-subnormal ones) are filled."""
    marked = set() if marked is None else set(marked)
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [fontname=Helvetica];"]
    for i, h in enumerate(L.nodes):
        shape = "box" if L.normal[i] else "ellipse"
        style = ', style=filled, fillcolor="#cde4ff"' if i in marked else ""
        lines.append(f'  n{i} [label="{h.order}", shape={shape}{style}];')
    for i, ups in enumerate(L.up):
        for k in ups:
            lines.append(f"  n{i} -> n{k};")
    lines.append("}")
    return "\n".join(lines) + "\n"
