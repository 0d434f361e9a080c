"""Minimal non-supersolvable groups ``[E_25](⟨a⟩⟨b⟩)`` of order 400 with ``|a| = |b| = 4``.

No subgroup of order 16 in GL(2,5) yields such a group, so ``T = ⟨a⟩⟨b⟩``
acts on ``GF(5)^2`` through an order-8 quotient; the permutation
representation appends a faithful action of ``T`` on 8 extra points
(degree 33 in total).

The three variants were found by :func:`search_order400` and frozen below;
the test-suite reruns the search and checks it still finds exactly these.
"""

from __future__ import annotations

import itertools

from ..perm import Permutation
from .build import affine_generators
from .gf import MatGFp, is_irreducible
from .nodes import Perm

# variant -> (a, b) on 8 points, (A, B) row-major 2x2 over GF(5) with a ↦ A, b ↦ B
ORDER400_VARIANTS = {
    "z4z4_a": ((0, 1, 2, 3, 6, 7, 5, 4), (2, 3, 1, 0, 4, 5, 7, 6), (0, 1, 4, 0), (0, 1, 1, 0)),
    "z4z4_b": ((0, 1, 2, 3, 6, 7, 5, 4), (2, 3, 1, 0, 4, 5, 7, 6), (0, 1, 4, 0), (0, 2, 2, 0)),
    "z4xz2_z2": ((0, 1, 3, 2, 6, 7, 5, 4), (2, 3, 1, 0, 4, 5, 7, 6), (0, 1, 1, 0), (0, 1, 4, 0)),
}

# observed Sylow 2-subgroup shape per variant
ORDER400_SYLOW2 = {"z4z4_a": "[Z4]Z4", "z4z4_b": "[Z4]Z4", "z4xz2_z2": "[Z4xZ2]Z2"}


def fixture_order400(variant: str) -> Perm:
    try:
        a, b, A, B = ORDER400_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown order-400 variant {variant!r}; expected one of {sorted(ORDER400_VARIANTS)}") from None
    return semidirect_perm(a, b, A, B)


def _mul(x, y, p):
    return ((x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p, (x[2] * y[1] + x[3] * y[3]) % p)


def _closure(gens, p, limit):
    ident = (1, 0, 0, 1)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g, p)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        return None
        frontier = nxt
    return frozenset(seen)


def _rows(m):
    return ((m[0], m[1]), (m[2], m[3]))


def _perm_mul(x, y):
    """``x∘y`` on tuples."""
    return tuple(x[i] for i in y)


def _perm_closure(gens, limit):
    ident = tuple(range(len(gens[0])))
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        return None
        frontier = nxt
    return frozenset(seen)


def _perm_order(x):
    k, y = 1, x
    ident = tuple(range(len(x)))
    while y != ident:
        y = _perm_mul(x, y)
        k += 1
    return k


# Sylow 2-subgroup of Sym(8): contains a copy of every group ⟨a⟩⟨b⟩ of order 16 used here
_SYL2_S8 = (
    (1, 0, 2, 3, 4, 5, 6, 7),
    (2, 3, 0, 1, 4, 5, 6, 7),
    (4, 5, 6, 7, 0, 1, 2, 3),
)


def factorized_groups_16():
    """Nonabelian ``T = ⟨a⟩⟨b⟩`` of order 16 with ``|a| = |b| = 4`` and
    ``⟨a⟩ ∩ ⟨b⟩ = 1``, one ``(a, b)`` pair on 8 points per isomorphism type."""
    S = sorted(_perm_closure(list(_SYL2_S8), 128))
    cyc = {x: _perm_closure([x], 8) for x in S}
    ident = tuple(range(8))
    ord4 = [x for x in S if len(cyc[x]) == 4]
    out = {}
    for a, b in itertools.product(ord4, repeat=2):
        if cyc[a] & cyc[b] != {ident} or _perm_mul(a, b) == _perm_mul(b, a):
            continue
        T = _perm_closure([a, b], 16)
        if T is None or len(T) != 16:
            continue
        inv = sum(1 for t in T if _perm_order(t) == 2)
        center = sum(1 for t in T if all(_perm_mul(t, u) == _perm_mul(u, t) for u in T))
        out.setdefault((inv, center), (a, b))
    return [out[k] for k in sorted(out)]


def irreducible_actions(a, b, p: int = 5):
    """Homomorphisms ``ρ: ⟨a, b⟩ → GL(2, p)`` with irreducible image, up to
    GL-conjugacy of ``(ρ(a), ρ(b))``; yields ``(A, B)`` pairs."""
    gl = [m for m in itertools.product(range(p), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % p]
    inv = {m: next(x for x in gl if _mul(m, x, p) == (1, 0, 0, 1)) for m in gl}
    small = [m for m in gl if _closure([m], p, 4) is not None]
    seen = set()
    for A, B in itertools.product(small, repeat=2):
        if _mul(A, B, p) == _mul(B, A, p):
            continue
        # ρ is well defined iff the diagonal subgroup has the order of ⟨a, b⟩
        diag = _pair_closure((a, A), (b, B), p)
        if diag is None or len(diag) != 16:
            continue
        key = min((_mul(_mul(inv[g], A, p), g, p), _mul(_mul(inv[g], B, p), g, p)) for g in gl)
        if key in seen:
            continue
        seen.add(key)
        if is_irreducible([MatGFp(p, _rows(A)), MatGFp(p, _rows(B))]):
            yield A, B


def _pair_closure(x, y, p, limit=16):
    ident = (tuple(range(len(x[0]))), (1, 0, 0, 1))
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for u in frontier:
            for g in (x, y):
                v = (_perm_mul(g[0], u[0]), _mul(g[1], u[1], p))
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
                    if len(seen) > limit:
                        return None
        frontier = nxt
    return seen


def semidirect_perm(a, b, A, B, p: int = 5) -> Perm:
    """``[E_{p^2}]T`` with ``T = ⟨a, b⟩`` acting on ``GF(p)^2`` through ``a ↦ A, b ↦ B``.

    Points ``1..p^2`` carry the affine action; the last ``len(a)`` points
    carry ``T`` itself, which makes the representation faithful even when
    the linear action has a kernel.
    """
    deg_v, gens = affine_generators(p, 2, [MatGFp(p, _rows(A)), MatGFp(p, _rows(B))])
    m = len(a)
    deg = deg_v + m
    full = []
    for k, g in enumerate(gens):
        tail = tuple(range(deg_v, deg))
        if k >= 2:
            t = a if k == 2 else b
            tail = tuple(deg_v + i for i in t)
        full.append(Permutation(g.images + tail))
    cycles = tuple(tuple(tuple(x + 1 for x in c) for c in g.cycles()) for g in full)
    return Perm(deg, cycles)


def sylow2_shape(L) -> str:
    """Name the order-16 group at the top of ``L`` by simple invariants."""
    from ..structure import is_abelian, is_minimal_nonabelian

    G = L.group
    orders = G.element_orders[G.indices(L.top_ref)]
    invol = int((orders == 2).sum())
    if L.order != 16:
        return f"order {L.order}"
    if is_abelian(L):
        return "abelian"
    if is_minimal_nonabelian(L) and orders.max() == 4:
        return {7: "[Z4xZ2]Z2", 3: "[Z4]Z4"}.get(invol, f"16/{invol} involutions")
    return f"nonabelian 16, exp {int(orders.max())}, {invol} involutions"


def fingerprint(L) -> tuple:
    """Isomorphism invariant of an order-400 candidate: lattice order profile
    (subgroups, classes and normal subgroups per order) plus the Sylow 2 shape."""
    from ..structure import sylow

    prof = {}
    for i, h in enumerate(L.nodes):
        s, c, n = prof.get(h.order, (0, set(), 0))
        c.add(int(L.class_of[i]))
        prof[h.order] = (s + 1, c, n + int(L.normal[i]))
    profile = tuple((o, s, len(c), n) for o, (s, c, n) in sorted(prof.items()))
    return profile, sylow2_shape(L.restrict(sylow(L, 2)))


def search_order400(p: int = 5):
    """Run the bounded search; returns ``[(fingerprint, (a, b, A, B)), ...]`` for
    the minimal non-supersolvable candidates, one per distinct fingerprint."""
    from ..lattice import enumerate_lattice
    from ..structure import is_min_non_supersolvable
    from .build import build

    found = {}
    for a, b in factorized_groups_16():
        for A, B in irreducible_actions(a, b, p):
            spec = semidirect_perm(a, b, A, B, p)
            L = enumerate_lattice(build(spec))
            if L.order != 400 or not is_min_non_supersolvable(L):
                continue
            found.setdefault(fingerprint(L), (a, b, A, B))
    return sorted(found.items())
