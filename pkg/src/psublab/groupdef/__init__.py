"""Group constructors, GF(p) matrices and the ``.grp`` definition format."""

from .build import affine_generators, build, generators
from .dsl import GroupFile, ParseError, format_spec, parse, read_grp
from .gf import MatGFp, irreducible_cyclic_action, is_irreducible
from .nodes import AffineSD, Alt, Cyclic, Dihedral, Direct, ElemAbelian, GroupSpec, Perm, Sym
from .order400 import ORDER400_SYLOW2, ORDER400_VARIANTS, fixture_order400
from ..numtheory import zsigmondy

__all__ = [
    "AffineSD", "Alt", "Cyclic", "Dihedral", "Direct", "ElemAbelian", "GroupSpec", "Perm", "Sym",
    "GroupFile", "MatGFp", "ParseError", "ORDER400_SYLOW2", "ORDER400_VARIANTS",
    "affine_generators", "build", "fixture_order400", "format_spec", "generators",
    "irreducible_cyclic_action", "is_irreducible", "parse", "read_grp", "zsigmondy",
]
