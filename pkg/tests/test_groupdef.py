import itertools
import math
import time

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as hst

from psublab.groupdef import (
    ORDER400_SYLOW2,
    ORDER400_VARIANTS,
    AffineSD,
    Alt,
    Cyclic,
    Dihedral,
    Direct,
    ElemAbelian,
    MatGFp,
    ParseError,
    Perm,
    Sym,
    build,
    fixture_order400,
    format_spec,
    irreducible_cyclic_action,
    is_irreducible,
    parse,
    read_grp,
    zsigmondy,
)
from psublab.groupdef.order400 import fingerprint, search_order400
from psublab.lattice import enumerate_lattice
from psublab.perm import CapExceeded, generate, intersection, is_normal


def zsigmondy_oracle(a, n):
    """Least prime factor of aⁿ-1 (factored by sympy) meeting all three clauses."""
    for q in sorted(sympy.factorint(a**n - 1)):
        if n % q and all((a**i - 1) % q for i in range(1, n)):
            return q
    return None


# -- zsigmondy ------------------------------------------------------------------

def test_zsigmondy_examples():
    assert zsigmondy(2, 6) is None
    assert zsigmondy(2, 4) == 5
    assert zsigmondy(5, 3) == 31
    assert zsigmondy(5, 2) == 3
    assert zsigmondy(3, 2) is None


def test_zsigmondy_table_matches_oracle():
    exceptions = set()
    for a in range(2, 13):
        for n in range(2, 13):
            q = zsigmondy(a, n)
            assert q == zsigmondy_oracle(a, n), (a, n)
            if q is None:
                exceptions.add((a, n))
            else:
                assert (a**n - 1) % q == 0 and n % q
                assert all((a**i - 1) % q for i in range(1, n))
    assert exceptions == {(2, 6), (3, 2), (7, 2)}


@pytest.mark.parametrize("a, n", [(1, 3), (2, 1), (0, 0)])
def test_zsigmondy_bad_arguments(a, n):
    with pytest.raises(ValueError):
        zsigmondy(a, n)


# -- matrices -------------------------------------------------------------------

def test_matgfp_basics():
    M = MatGFp(5, ((0, 4), (1, 4)))
    assert M.order() == 3
    assert M.det() == 1
    assert MatGFp(5, ((1, 2), (2, 4))).det() == 0
    assert (M @ M @ M) == MatGFp.identity(5, 2)
    with pytest.raises(ValueError):
        MatGFp(4, ((1,),))
    with pytest.raises(ValueError):
        MatGFp(5, ((1, 2),))


@pytest.mark.parametrize("p, dim, q", [(5, 3, 31), (5, 2, 3), (2, 2, 3)])
def test_irreducible_cyclic_action(p, dim, q):
    M = irreducible_cyclic_action(p, dim, q)
    assert M.k == dim and M.order() == q
    # no invariant line: no eigenvector
    vecs = [v for v in itertools.product(range(p), repeat=dim) if any(v)]
    for v in vecs:
        img = M.apply(v)
        assert not any(tuple(c * x % p for x in v) == img for c in range(1, p))
    assert is_irreducible([M])


def test_irreducible_cyclic_action_small_cases_by_hand():
    # x² + x + 1 over GF(2) is the only irreducible quadratic
    assert irreducible_cyclic_action(2, 2, 3).rows == ((0, 1), (1, 1))
    M = irreducible_cyclic_action(5, 2, 3)
    assert M.rows == ((0, 4), (1, 4))  # companion of x² + x + 1


def test_reducible_action_detected():
    assert not is_irreducible([MatGFp(5, ((2, 0), (0, 3)))])
    assert not is_irreducible([MatGFp(7, ((0, 6), (1, 6)))])  # 7 ≡ 1 mod 3: eigenvalues exist


def test_no_irreducible_action_raises():
    with pytest.raises(ValueError):
        irreducible_cyclic_action(7, 2, 3)


# -- build ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_symmetric_and_alternating_orders(n):
    assert build(Sym(n)).order == math.factorial(n)
    assert build(Alt(n)).order == max(1, math.factorial(n) // 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 12])
def test_cyclic_dihedral_orders(n):
    assert build(Cyclic(n)).order == n
    assert build(Dihedral(n)).order == 2 * n


@pytest.mark.parametrize("p, k", [(2, 1), (2, 3), (3, 2), (5, 2)])
def test_elementary_abelian(p, k):
    G = build(ElemAbelian(p, k))
    assert G.order == p**k and G.degree == p * k


def test_sym4_degree():
    G = build(Sym(4))
    assert (G.order, G.degree) == (24, 4)


def test_elemab_5_2_degree():
    G = build(ElemAbelian(5, 2))
    assert (G.order, G.degree) == (25, 10)


def test_affine_order_294():
    spec = AffineSD(7, 2, (((0, 6), (1, 6)), ((0, 1), (1, 0))))
    G = build(spec)
    assert (G.order, G.degree) == (294, 49)
    assert is_irreducible([MatGFp(7, m) for m in spec.matrices])


@pytest.mark.parametrize("spec, point_group", [
    (AffineSD(7, 2, (((0, 6), (1, 6)), ((0, 1), (1, 0)))), 6),
    (AffineSD(5, 2, (((0, 4), (1, 4)),)), 3),
    (AffineSD(3, 2, (((0, 2), (1, 0)), ((1, 1), (1, 2)))), 8),
])
def test_affine_structure(spec, point_group):
    G = build(spec)
    n = spec.p**spec.k
    assert G.order == n * point_group
    translations = generate(G, list(G.generator_indices[: spec.k]))
    assert translations.order == n and is_normal(G, translations)
    stab = [i for i, g in enumerate(G.elements) if g(0) == 0]
    stab_bits = sum(1 << i for i in stab)
    assert intersection(G, translations, type(translations)(stab_bits, len(stab))).order == 1


def test_direct_product():
    G = build(Direct(Cyclic(2), Cyclic(3)))
    assert G.order == 6
    t = G.table
    assert all(t[a, b] == t[b, a] for a in range(6) for b in range(6))


def test_build_errors():
    with pytest.raises(ValueError):
        build(AffineSD(5, 2, (((1, 2), (2, 4)),)))
    with pytest.raises(ValueError):
        build(ElemAbelian(4, 2))
    with pytest.raises(ValueError):
        build(Perm(3, (((1, 4),),)))
    with pytest.raises(CapExceeded):
        build(Sym(7), cap=1000)


# -- parser ---------------------------------------------------------------------

def test_parse_examples():
    assert parse("Sym(4)") == Sym(4)
    assert parse("Perm(5; (1 2 3), (3 4 5))") == Perm(5, (((1, 2, 3),), ((3, 4, 5),)))
    spec = parse("Direct(Cyclic(2), Cyclic(3))")
    G = build(spec)
    assert G.order == 6


def test_parse_comments_and_whitespace():
    text = "# header\n  AffineSD( 5 , 2 ;\n [0 4;\n 1 4] )  # trailing\n"
    assert parse(text) == AffineSD(5, 2, (((0, 4), (1, 4)),))


@pytest.mark.parametrize("text, line, col", [
    ("Sym(", 1, 5),
    ("Foo(3)", 1, 1),
    ("ElemAbelian(4, 2)", 1, 13),
    ("Perm(3; (1 4))", 1, 12),
    ("Perm(3; (1 1))", 1, 12),
    ("Sym(3)\nSym(4)", 2, 1),
    ("AffineSD(5, 2; [1 2; 2 4])", 1, 16),
    ("AffineSD(5, 2; [1 2 3; 2 4 1])", 1, 16),
    ("Sym(0)", 1, 5),
])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert (err.value.line, err.value.col) == (line, col)


def _specs():
    leaves = hst.one_of(
        hst.builds(Sym, hst.integers(1, 6)),
        hst.builds(Alt, hst.integers(1, 6)),
        hst.builds(Cyclic, hst.integers(1, 20)),
        hst.builds(Dihedral, hst.integers(1, 20)),
        hst.builds(ElemAbelian, hst.sampled_from([2, 3, 5, 7]), hst.integers(1, 3)),
        hst.just(AffineSD(5, 2, (((0, 4), (1, 4)), ((1, 0), (0, 4))))),
        hst.lists(hst.permutations(range(1, 6)).map(lambda xs: (tuple(xs),)), min_size=1, max_size=3)
           .map(lambda gens: Perm(5, tuple(gens))),
    )
    return hst.recursive(leaves, lambda inner: hst.builds(Direct, inner, inner), max_leaves=4)


@settings(max_examples=200)
@given(_specs())
def test_parse_format_round_trip(spec):
    assert parse(format_spec(spec)) == spec


def test_read_grp_pragmas(tmp_path):
    f = tmp_path / "x.grp"
    f.write_text("# @lattice-cap 4000\n# a note\nCyclic(5)\n")
    g = read_grp(f)
    assert g.name == "x" and g.spec == Cyclic(5) and g.lattice_cap == 4000


# -- order-400 fixtures ---------------------------------------------------------

@pytest.mark.parametrize("variant", sorted(ORDER400_VARIANTS))
def test_order400_fixture(variant):
    G = build(fixture_order400(variant))
    assert (G.order, G.degree) == (400, 33)
    # two translations, then a and b, both of order 4
    assert [g.order() for g in G.generators[2:]] == [4, 4]
    a, b = G.generators[2:]
    T = generate(G, [G.index(a), G.index(b)])
    assert T.order == 16
    L = enumerate_lattice(G)
    from psublab.groupdef.order400 import sylow2_shape
    from psublab.structure import sylow
    assert sylow2_shape(L.restrict(sylow(L, 2))) == ORDER400_SYLOW2[variant]


def test_order400_unknown_variant():
    with pytest.raises(ValueError):
        fixture_order400("nope")


@pytest.mark.slow
def test_order400_search_reproduces_frozen_variants():
    t0 = time.perf_counter()
    found = search_order400()
    assert time.perf_counter() - t0 < 120
    assert len(found) == 3
    frozen = {fingerprint(enumerate_lattice(build(fixture_order400(v)))): v for v in ORDER400_VARIANTS}
    assert {fp for fp, _ in found} == set(frozen)
    shapes = sorted(fp[1] for fp, _ in found)
    assert shapes == sorted(["[Z4xZ2]Z2", "[Z4]Z4", "[Z4]Z4"])
