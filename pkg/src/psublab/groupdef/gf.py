"""Square matrices over GF(p) and linear-action helpers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..numtheory import is_prime


@dataclass(frozen=True)
class MatGFp:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        k = len(self.rows)
        if k == 0 or any(len(r) != k for r in self.rows):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", tuple(tuple(x % self.p for x in r) for r in self.rows))

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, p: int, k: int) -> "MatGFp":
        return cls(p, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @classmethod
    def companion(cls, p: int, coeffs: tuple[int, ...]) -> "MatGFp":
        """Companion matrix of ``x^k + c_{k-1}x^{k-1} + ... + c_0``; ``coeffs = (c_0, ..., c_{k-1})``."""
        k = len(coeffs)
        rows = [[0] * k for _ in range(k)]
        for i in range(1, k):
            rows[i][i - 1] = 1
        for i in range(k):
            rows[i][k - 1] = -coeffs[i]
        return cls(p, tuple(tuple(r) for r in rows))

    def __matmul__(self, other: "MatGFp") -> "MatGFp":
        p, k = self.p, self.k
        cols = list(zip(*other.rows))
        return MatGFp(p, tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.rows))

    def apply(self, v: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, v)) % self.p for r in self.rows)

    def det(self) -> int:
        p = self.p
        m = [list(r) for r in self.rows]
        k = len(m)
        d = 1
        for c in range(k):
            piv = next((r for r in range(c, k) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c] % p
            inv = pow(m[c][c], -1, p)
            for r in range(c + 1, k):
                f = m[r][c] * inv % p
                if f:
                    m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
        return d % p

    def is_invertible(self) -> bool:
        return self.det() != 0

    def order(self, limit: int = 100_000) -> int:
        ident = MatGFp.identity(self.p, self.k)
        cur, n = self, 1
        while cur != ident:
            cur = cur @ self
            n += 1
            if n > limit:
                raise ValueError("matrix order exceeds limit (singular?)")
        return n


def vectors(p: int, k: int):
    """All vectors of ``GF(p)^k`` in index order (first coordinate varies fastest)."""
    for t in itertools.product(range(p), repeat=k):
        yield tuple(reversed(t))


def vector_index(v: tuple[int, ...], p: int) -> int:
    return sum(x * p**i for i, x in enumerate(v))


def is_irreducible(mats: list[MatGFp]) -> bool:
    """True iff ``⟨mats⟩`` leaves no proper nonzero subspace invariant.

    Brute force: the invariant subspace generated by each nonzero vector must
    be the whole space.
    """
    p, k = mats[0].p, mats[0].k
    full = p**k
    for v in vectors(p, k):
        if not any(v):
            continue
        span = {tuple([0] * k)}
        frontier = [v]
        # span of the orbit closure: add vectors, close under addition and the maps
        while frontier:
            w = frontier.pop()
            if w in span:
                continue
            new = {tuple((a + t * b) % p for a, b in zip(s, w)) for s in span for t in range(p)}
            added = new - span
            span |= new
            for u in added:
                for m in mats:
                    img = m.apply(u)
                    if img not in span:
                        frontier.append(img)
        if len(span) < full:
            return False
    return True


def irreducible_cyclic_action(p: int, dim: int, q: int) -> MatGFp:
    """A ``dim×dim`` companion matrix over ``GF(p)`` of order ``q`` acting irreducibly."""
    if not is_prime(p) or not is_prime(q):
        raise ValueError("p and q must be prime")
    for tail in itertools.product(range(p), repeat=dim - 1):
        for c0 in range(1, p):
            M = MatGFp.companion(p, (c0,) + tail)
            if _has_order(M, q) and is_irreducible([M]):
                return M
    raise ValueError(f"no irreducible element of order {q} in GL({dim},{p})")


def _has_order(M: MatGFp, q: int) -> bool:
    ident = MatGFp.identity(M.p, M.k)
    if M == ident:
        return False
    cur = ident
    for _ in range(q):
        cur = cur @ M
    if cur != ident:
        return False
    # q prime: M^q = 1 and M != 1 means order exactly q
    return True
