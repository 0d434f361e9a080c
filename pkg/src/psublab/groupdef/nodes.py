"""Group-definition AST."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Sym:
    n: int


@dataclass(frozen=True)
class Alt:
    n: int


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order ``2n``."""

    n: int


@dataclass(frozen=True)
class ElemAbelian:
    p: int
    k: int


@dataclass(frozen=True)
class Direct:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class AffineSD:
    """``[E_{p^k}]⟨matrices⟩`` acting on the vectors of ``GF(p)^k``.

    Each matrix is a tuple of rows; entries are reduced mod ``p``.
    """

    p: int
    k: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class Perm:
    """Literal generators in 1-indexed cycle notation."""

    degree: int
    gens: tuple[tuple[tuple[int, ...], ...], ...]


GroupSpec = Union[Sym, Alt, Cyclic, Dihedral, ElemAbelian, Direct, AffineSD, Perm]
