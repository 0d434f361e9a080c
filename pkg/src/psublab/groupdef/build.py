"""Turn a group-definition AST into a permutation group."""

from __future__ import annotations

from ..numtheory import is_prime
from ..perm import Group, Permutation, closure
from .gf import MatGFp, vector_index, vectors
from .nodes import AffineSD, Alt, Cyclic, Dihedral, Direct, ElemAbelian, GroupSpec, Perm, Sym


def _cycle(degree, pts):
    return Permutation.from_cycles(degree, [pts])


def generators(spec: GroupSpec) -> tuple[int, list[Permutation]]:
    """``(degree, generators)`` of the faithful action described by ``spec``."""
    if isinstance(spec, Sym):
        n = _positive(spec.n)
        if n < 2:
            return 1, [Permutation.identity(1)]
        return n, [_cycle(n, [0, 1]), _cycle(n, list(range(n)))]
    if isinstance(spec, Alt):
        n = _positive(spec.n)
        if n < 3:
            return n, [Permutation.identity(n)]
        return n, [_cycle(n, [0, 1, i]) for i in range(2, n)]
    if isinstance(spec, Cyclic):
        n = _positive(spec.n)
        if n == 1:
            return 1, [Permutation.identity(1)]
        return n, [_cycle(n, list(range(n)))]
    if isinstance(spec, Dihedral):
        n = _positive(spec.n)
        if n == 1:
            return 2, [_cycle(2, [0, 1])]
        if n == 2:
            return 4, [_cycle(4, [0, 1]), _cycle(4, [2, 3])]
        rot = Permutation(tuple((i + 1) % n for i in range(n)))
        ref = Permutation(tuple((-i) % n for i in range(n)))
        return n, [rot, ref]
    if isinstance(spec, ElemAbelian):
        p, k = _prime(spec.p), _positive(spec.k)
        deg = p * k
        return deg, [_cycle(deg, list(range(i * p, (i + 1) * p))) for i in range(k)]
    if isinstance(spec, Direct):
        d1, g1 = generators(spec.left)
        d2, g2 = generators(spec.right)
        deg = d1 + d2
        left = [Permutation(g.images + tuple(range(d1, deg))) for g in g1]
        right = [Permutation(tuple(range(d1)) + tuple(d1 + a for a in g.images)) for g in g2]
        return deg, left + right
    if isinstance(spec, AffineSD):
        return affine_generators(spec.p, spec.k, [MatGFp(_prime(spec.p), m) for m in spec.matrices])
    if isinstance(spec, Perm):
        deg = _positive(spec.degree)
        gens = []
        for gen in spec.gens:
            cycles = []
            for cyc in gen:
                if any(not 1 <= a <= deg for a in cyc):
                    raise ValueError(f"cycle {cyc} references a point outside 1..{deg}")
                cycles.append([a - 1 for a in cyc])
            gens.append(Permutation.from_cycles(deg, cycles))
        return deg, gens or [Permutation.identity(deg)]
    raise TypeError(f"not a group spec: {spec!r}")


def affine_generators(p: int, k: int, mats: list[MatGFp]) -> tuple[int, list[Permutation]]:
    """Translations by the basis vectors plus the linear maps, on ``p^k`` points."""
    for m in mats:
        if m.p != p or m.k != k:
            raise ValueError(f"matrix is not {k}x{k} over GF({p})")
        if not m.is_invertible():
            raise ValueError(f"matrix {m.rows} is not invertible mod {p}")
    vecs = list(vectors(p, k))
    deg = len(vecs)
    gens = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        gens.append(Permutation(tuple(vector_index(tuple((a + b) % p for a, b in zip(v, e)), p) for v in vecs)))
    for m in mats:
        gens.append(Permutation(tuple(vector_index(m.apply(v), p) for v in vecs)))
    return deg, gens


def build(spec: GroupSpec, cap: int | None = None) -> Group:
    degree, gens = generators(spec)
    return closure(degree, gens, cap=cap)


def _positive(n: int) -> int:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return n


def _prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p
