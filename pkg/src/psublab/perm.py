"""Permutations, groups by full element enumeration, and subgroup bitsets.

Every group is materialized as a list of elements in a canonical order
(breadth-first from the identity over the generator list, each layer sorted
by image arrays).  Subgroups are Python ints used as bitsets over that
order, so containment, intersection and deduplication are plain integer
operations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels

DEFAULT_ORDER_CAP = 5000


class CapExceeded(RuntimeError):
    """Raised when a group is too large for exhaustive analysis."""


def default_order_cap() -> int:
    env = os.environ.get("PSUBLAB_CAP")
    return int(env) if env else DEFAULT_ORDER_CAP


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 0-indexed cycles; cycles are applied right to left."""
        result = list(range(degree))
        for cyc in cycles:
            step = list(range(degree))
            for k, a in enumerate(cyc):
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} outside degree {degree}")
                step[a] = cyc[(k + 1) % len(cyc)]
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle {tuple(cyc)}")
            result = [step[x] for x in result]
        return cls(tuple(result))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, a in enumerate(self.images):
            inv[a] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc, j = [i], self.images[i]
            seen.add(i)
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def cycle_str(self, one_based: bool = True) -> str:
        off = 1 if one_based else 0
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(a + off) for a in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation{self.cycle_str(one_based=False)}"


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a∘b``, i.e. ``i ↦ a(b(i))``."""
    if len(a.images) != len(b.images):
        raise ValueError(f"degree mismatch: {len(a.images)} vs {len(b.images)}")
    ai = a.images
    return Permutation(tuple(ai[x] for x in b.images))


@dataclass(frozen=True, slots=True)
class SubgroupRef:
    """A subgroup as a bitset over its parent group's canonical element order."""

    bits: int
    order: int

    def __contains__(self, idx: int) -> bool:
        return bool(self.bits >> idx & 1)

    def __le__(self, other: "SubgroupRef") -> bool:
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "SubgroupRef") -> bool:
        return self.bits != other.bits and self <= other


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()


def mask_to_bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask.astype(np.uint8, copy=False), bitorder="little").tobytes(), "little")


def masks_to_bits(masks: np.ndarray) -> list[int]:
    packed = np.packbits(masks.astype(np.uint8, copy=False), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def bits_to_indices(bits: int, n: int) -> np.ndarray:
    return np.flatnonzero(bits_to_mask(bits, n))


def indices_to_bits(idx: Iterable[int]) -> int:
    out = 0
    for i in idx:
        out |= 1 << int(i)
    return out


class Group:
    """A permutation group with its full element list in canonical order.

    Use :func:`closure` to construct one.  Element 0 is always the identity.
    The multiplication table is built on first use; call :meth:`force` before
    sharing a group between threads.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], elements: Sequence[Permutation]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.order = len(self.elements)
        self._index = {p.images: i for i, p in enumerate(self.elements)}

    def __repr__(self):
        gens = ", ".join(g.cycle_str() for g in self.generators)
        return f"Group(degree={self.degree}, order={self.order}, gens=[{gens}])"

    def __len__(self):
        return self.order

    def index(self, p: Permutation | Sequence[int]) -> int:
        key = p.images if isinstance(p, Permutation) else tuple(p)
        try:
            return self._index[key]
        except KeyError:
            raise ValueError(f"{p!r} is not an element of this group") from None

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._index

    @cached_property
    def perm_array(self) -> np.ndarray:
        return np.array([p.images for p in self.elements], dtype=np.int64).reshape(self.order, self.degree)

    @cached_property
    def table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``elements[i] ∘ elements[j]``."""
        return _mult_table(self.perm_array)

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmin(self.table, axis=1).astype(np.int32)

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self.index(g) for g in self.generators)

    @cached_property
    def full(self) -> SubgroupRef:
        return SubgroupRef((1 << self.order) - 1, self.order)

    @cached_property
    def trivial(self) -> SubgroupRef:
        return SubgroupRef(1, 1)

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([p.order() for p in self.elements], dtype=np.int64)

    def force(self) -> "Group":
        self.table, self.inverses, self.generator_indices
        return self

    def conj_perm(self, g: int) -> np.ndarray:
        """Index permutation ``i ↦ index(g⁻¹ e_i g)``."""
        t = self.table
        return t[t[self.inverses[g]], g]

    def mask(self, H: SubgroupRef) -> np.ndarray:
        return bits_to_mask(H.bits, self.order)

    def indices(self, H: SubgroupRef) -> np.ndarray:
        return bits_to_indices(H.bits, self.order)


def _row_keys(rows: np.ndarray, degree: int):
    if rows.shape[1] == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    weights = degree ** np.arange(rows.shape[1], dtype=np.int64)
    return rows @ weights


def _mult_table(P: np.ndarray) -> np.ndarray:
    n, d = P.shape
    if n == 1:
        return np.zeros((1, 1), dtype=np.int32)
    # a base: points whose images already determine the element
    base: list[int] = []
    distinct = 1
    for pt in range(d):
        c = len(np.unique(P[:, base + [pt]], axis=0))
        if c > distinct:
            base.append(pt)
            distinct = c
            if distinct == n:
                break
    table = np.empty((n, n), dtype=np.int32)
    if len(base) * np.log2(max(d, 2)) < 62:
        keys = _row_keys(P[:, base], d)
        order = np.argsort(keys)
        sorted_keys = keys[order]
        pb = P[:, base]
        for i in range(n):
            k = _row_keys(P[i][pb], d)
            table[i] = order[np.searchsorted(sorted_keys, k)]
    else:  # pragma: no cover - only for huge bases
        lookup = {row.tobytes(): i for i, row in enumerate(P[:, base])}
        pb = P[:, base]
        for i in range(n):
            comp = P[i][pb]
            table[i] = [lookup[r.tobytes()] for r in comp]
    return table


def closure(degree: int, gens: Sequence[Permutation], cap: int | None = None) -> Group:
    """Enumerate the group generated by ``gens`` in canonical order.

    Raises :class:`CapExceeded` if the order passes ``cap``.
    """
    cap = default_order_cap() if cap is None else cap
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator {g!r} has degree {g.degree}, expected {degree}")
    ident = tuple(range(degree))
    seen = {ident}
    elements = [Permutation(ident)]
    layer = [ident]
    gimg = [g.images for g in gens]
    while layer:
        nxt = set()
        for x in layer:
            for gi in gimg:
                y = tuple(gi[a] for a in x)
                if y not in seen:
                    seen.add(y)
                    nxt.add(y)
        if len(seen) > cap:
            raise CapExceeded(f"group order exceeds cap {cap}")
        layer = sorted(nxt)
        elements.extend(Permutation(y) for y in layer)
    return Group(degree, gens, elements)


def generate(G: Group, gens: Iterable[int], base: SubgroupRef | None = None) -> SubgroupRef:
    """Subgroup generated by element indices ``gens`` (plus ``base`` if given)."""
    mask = np.zeros(G.order, dtype=np.uint8)
    if base is not None:
        mask[:] = G.mask(base)
    mask[0] = 1
    gens = list(gens)
    if gens:
        kernels.closure_mask(G.table, mask, gens, G.order)
    return SubgroupRef(mask_to_bits(mask), int(mask.sum()))


def subgroup_from_elements(G: Group, seed: Iterable[Permutation | int]) -> SubgroupRef:
    """Closure of ``seed`` inside ``G``; elements may be given as permutations or indices."""
    idx = [s if isinstance(s, (int, np.integer)) else G.index(s) for s in seed]
    return generate(G, idx)


def generators_of(G: Group, H: SubgroupRef) -> list[int]:
    """A small generating set of ``H`` (greedy, highest element order first)."""
    idx = G.indices(H)
    orders = G.element_orders[idx]
    gens: list[int] = []
    cur = G.trivial
    for i in idx[np.argsort(-orders, kind="stable")]:
        if cur.order == H.order:
            break
        if not (cur.bits >> int(i)) & 1:
            gens.append(int(i))
            cur = generate(G, gens)
    return gens


def conjugate(G: Group, H: SubgroupRef, g: int) -> SubgroupRef:
    """``H^g``, with permutations acting on points from the left.

    In product notation that reads the product left to right, as in
    ``(0 1)^(0 1 2) = (1 2)``, this is ``{g⁻¹ h g}``; as functions it is
    ``{g∘h∘g⁻¹}``, which relabels every cycle of ``h`` through ``g``.
    """
    c = G.conj_perm(int(G.inverses[g]))
    return SubgroupRef(indices_to_bits(c[G.indices(H)]), H.order)


def is_normal(G: Group, H: SubgroupRef, within: SubgroupRef | None = None) -> bool:
    """Whether ``H`` is normalized by ``within`` (default: all of ``G``)."""
    gens = G.generator_indices if within is None else generators_of(G, within)
    return all(conjugate(G, H, g).bits == H.bits for g in gens)


def normalizer(G: Group, H: SubgroupRef, within: SubgroupRef | None = None) -> SubgroupRef:
    """``{g ∈ G : H^g = H}`` by brute force over the element list."""
    t, inv = G.table, G.inverses
    h = G.indices(H)
    hmask = G.mask(H).astype(bool)
    cand = np.arange(G.order) if within is None else G.indices(within)
    # conj[k, j] = g_k^{-1} h_j g_k
    conj = t[t[inv[cand][:, None], h[None, :]], cand[:, None]]
    ok = hmask[conj].all(axis=1)
    return SubgroupRef(indices_to_bits(cand[ok]), int(ok.sum()))


def intersection(G: Group, A: SubgroupRef, B: SubgroupRef) -> SubgroupRef:
    bits = A.bits & B.bits
    return SubgroupRef(bits, bits.bit_count())


def core(G: Group, H: SubgroupRef, within: SubgroupRef | None = None) -> SubgroupRef:
    """Intersection of all conjugates of ``H`` (by ``within``, default ``G``)."""
    t, inv = G.table, G.inverses
    h = G.indices(H)
    cand = np.arange(G.order) if within is None else G.indices(within)
    mask = G.mask(H).astype(bool)
    for g in cand:
        if not mask.any():
            break
        conj = np.zeros(G.order, dtype=bool)
        conj[t[t[inv[g], h], g]] = True
        mask &= conj
    out = mask_to_bits(mask)
    return SubgroupRef(out, out.bit_count())


def join(G: Group, A: SubgroupRef, B: SubgroupRef) -> SubgroupRef:
    return generate(G, generators_of(G, B), base=A) if A.order > 1 else generate(G, generators_of(G, B))


def product_set_size(G: Group, A: SubgroupRef, B: SubgroupRef) -> int:
    """``|AB| = |A||B| / |A∩B|``."""
    return A.order * B.order // intersection(G, A, B).order


def is_subgroup(G: Group, bits: int) -> bool:
    """Closure check used by tests: the bitset is closed under products."""
    idx = bits_to_indices(bits, G.order)
    if idx.size == 0 or idx[0] != 0:
        return False
    mask = bits_to_mask(bits, G.order).astype(bool)
    return bool(mask[G.table[np.ix_(idx, idx)]].all())


def as_group(G: Group, H: SubgroupRef, cap: int | None = None) -> tuple[Group, np.ndarray]:
    """``H`` as a standalone group, plus the embedding (local index → index in ``G``)."""
    gens = generators_of(G, H) or [0]
    K = closure(G.degree, [G.elements[i] for i in gens], cap=cap if cap is not None else max(G.order, 1))
    emb = np.array([G.index(p) for p in K.elements], dtype=np.int64)
    return K, emb


@dataclass(frozen=True)
class Quotient:
    """``G/N`` as a permutation group on left cosets, plus the projection map."""

    group: Group
    projection: np.ndarray  # element index of G -> element index of the quotient
    kernel: SubgroupRef

    def image(self, H: SubgroupRef, G: Group) -> SubgroupRef:
        """Image ``HN/N`` of a subgroup of ``G``."""
        img = np.unique(self.projection[G.indices(H)])
        return SubgroupRef(indices_to_bits(img), int(img.size))

    def preimage(self, Hbar: SubgroupRef) -> SubgroupRef:
        mask = bits_to_mask(Hbar.bits, self.group.order).astype(bool)[self.projection]
        return SubgroupRef(mask_to_bits(mask), int(mask.sum()))


def quotient_with_map(G: Group, N: SubgroupRef) -> Quotient:
    if not is_normal(G, N):
        raise ValueError("quotient requires a normal subgroup")
    if N.order == 1:
        return Quotient(G, np.arange(G.order, dtype=np.int64), N)
    t = G.table
    n_idx = G.indices(N)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[t[g, n_idx]] = len(reps)
            reps.append(g)
    reps_arr = np.array(reps, dtype=np.int64)
    k = len(reps)
    # action of every element on the cosets: gN_c -> (g r_c)N
    action = coset_of[t[:, reps_arr]]
    gens = [Permutation(tuple(int(a) for a in action[gi])) for gi in G.generator_indices]
    Q = closure(k, gens, cap=max(k, 1))
    lookup = {p.images: i for i, p in enumerate(Q.elements)}
    proj = np.array([lookup[tuple(int(a) for a in row)] for row in action], dtype=np.int64)
    return Quotient(Q, proj, N)


def quotient(G: Group, N: SubgroupRef) -> Group:
    """``G/N`` acting on the left cosets of ``N``; degree ``|G:N|``."""
    return quotient_with_map(G, N).group
