import json

import numpy as np
import pytest

from psublab import structure as st
from psublab import verify
from psublab.groupdef import Cyclic, GroupFile, Sym, format_spec
from psublab.perm import Permutation, quotient_with_map, subgroup_from_elements
from psublab.psubnormal import lhs_theorem, psubnormal_map
from psublab.verify import (
    FAIL,
    NA,
    PASS,
    Config,
    check_corollary,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_lemma5_3,
    check_lemma6,
    check_theorem,
    exit_status,
    run_corpus,
    strip_timing,
)
from psublab.lattice import enumerate_lattice

from conftest import corpus_names, entry, lattice

ORDER400 = ["order400_z4xz2_z2", "order400_z4z4_a", "order400_z4z4_b"]


def P(degree, *cycles):
    return Permutation.from_cycles(degree, cycles)


def node_of(L, *perms):
    return L.node(subgroup_from_elements(L.group, perms))


# -- theorem --------------------------------------------------------------------

def test_theorem_sym4():
    v = check_theorem(lattice("sym4"))
    assert (v.lhs, v.rhs, v.equivalent) == (False, False, True)
    assert not v.all_proper_supersolvable
    assert lattice("sym4").nodes[v.first_non_supersolvable].order == 12


def test_theorem_affine_294():
    v = check_theorem(lattice("e49_s3"))
    assert (v.lhs, v.rhs, v.equivalent) == (True, True, True)
    assert v.residual_frattini_trivial and v.all_proper_supersolvable


def test_theorem_dihedral6():
    v = check_theorem(lattice("dihedral6"))
    assert (v.lhs, v.rhs, v.equivalent) == (True, True, True)


@pytest.mark.parametrize("name", ["sym4", "alt5", "e9_q8", "direct_a4_c2", "e49_s3", "q8_perm"])
def test_theorem_debug_mode(name):
    check_theorem(lattice(name), debug=True)


@pytest.mark.parametrize("name", corpus_names())
def test_theorem_directions(name):
    L = lattice(name)
    v = check_theorem(L)
    assert v.equivalent
    if v.rhs:
        assert not v.violators
    if v.violators:
        assert not v.residual_frattini_trivial or v.first_non_supersolvable is not None


# -- corollary ------------------------------------------------------------------

def test_corollary():
    assert check_corollary(lattice("cyclic210")).status == PASS
    assert check_corollary(lattice("e49_s3")).status == NA
    assert check_corollary(lattice("direct_s3_c35")).status == PASS
    # four primes but the left side fails: not applicable
    assert check_corollary(lattice("direct_a4_c35")).status == NA


# -- lemma 2 --------------------------------------------------------------------

def test_lemma2_abelian():
    assert check_lemma2(lattice("elemab_2_3")).status == PASS


def test_lemma2_sym4_v4_d8_by_hand():
    L = lattice("sym4")
    G = L.group
    V4 = node_of(L, P(4, (0, 1), (2, 3)), P(4, (0, 2), (1, 3)))
    D8 = node_of(L, P(4, (0, 1, 2, 3)), P(4, (0, 2)))
    sub = L.restrict(V4)
    assert psubnormal_map(sub).marked[sub.node(L.nodes[V4].bits & L.nodes[D8].bits)]
    q = quotient_with_map(G, L.nodes[V4])
    QL = enumerate_lattice(q.group)
    assert QL.order == 6
    img = QL.node(q.image(L.nodes[D8], G))
    assert QL.nodes[img].order == 2 and psubnormal_map(QL).marked[img]
    assert check_lemma2(L).status == PASS


def test_lemma2_alt5_conjugates():
    L = lattice("alt5")
    m = psubnormal_map(L)
    A4 = next(i for i, h in enumerate(L.nodes) if h.order == 12)
    G = L.group
    for c in [P(5, (0, 1, 2, 3, 4)), P(5, (0, 2, 4, 1, 3))]:
        assert m.marked[L.node(verify.conjugate(G, L.nodes[A4], G.index(c)))]
    assert check_lemma2(L).status == PASS


def test_lemma2_sampling_is_seeded():
    L = lattice("sym6")
    a = check_lemma2(L, samples=50, seed=3)
    b = check_lemma2(L, samples=50, seed=3)
    assert a == b and a.status == PASS


# -- lemma 3 --------------------------------------------------------------------

def test_lemma3():
    L = lattice("sym4")
    assert check_lemma3(L).status == PASS
    D8 = node_of(L, P(4, (0, 1, 2, 3)), P(4, (0, 2)))
    c = st.core_node(L, D8)
    assert L.nodes[c].order == 4
    Q = enumerate_lattice(quotient_with_map(L.group, L.nodes[c]).group)
    assert st.is_supersolvable(Q)
    assert check_lemma3(lattice("alt5")).status == NA


# -- lemma 4 --------------------------------------------------------------------

def test_lemma4():
    L = lattice("sym4")
    out = check_lemma4(L)
    assert out.status == PASS and "|N_G(P)| = 6" in out.details and "2 overgroups" in out.details
    out = check_lemma4(lattice("alt5"))
    assert out.status == PASS and "|N_G(P)| = 10" in out.details
    assert check_lemma4(lattice("cyclic6")).status == NA


# -- lemma 5(3) -----------------------------------------------------------------

@pytest.mark.parametrize("name", ["sym3", "sym4", "cyclic12"])
def test_lemma5_3(name):
    assert check_lemma5_3(lattice(name)).status == PASS


def test_lemma5_3_sym4_normalizer_not_marked():
    L = lattice("sym4")
    n = st.normalizer_node(L, st.sylow(L, 3))
    assert L.nodes[n].order == 6 and not psubnormal_map(L).marked[n]


# -- lemma 6 --------------------------------------------------------------------

@pytest.mark.parametrize("name", ORDER400)
def test_lemma6_order400(name):
    out = check_lemma6(lattice(name))
    assert out.status == PASS
    assert "|P|=25" in out.details and "|Phi(P)|=1" in out.details and "|Q|=16" in out.details


def test_lemma6_affine_294():
    out = check_lemma6(lattice("e49_s3"))
    assert out.status == PASS
    assert "|P|=49" in out.details and "|Q|=6" in out.details
    L = lattice("e49_s3")
    nonprime = [m for m in L.down[L.top] if not st.is_prime(L.index(m))]
    assert {L.nodes[m].order for m in nonprime} == {6}
    assert len({int(L.class_of[m]) for m in nonprime}) == 1


def test_lemma6_not_applicable():
    assert check_lemma6(lattice("sym4")).status == NA


# -- fault injection: checkers must be able to fail -----------------------------

class _Corrupted:
    def __init__(self, real, drop):
        self.marked = real.marked.copy()
        self.marked[drop] = False
        self.certificate = real.certificate


def test_lemma_checks_detect_corrupted_marking(monkeypatch):
    L = lattice("sym3")
    real = psubnormal_map(L)
    # unmark an order-2 node: conjugation invariance and the quotient parts break
    bad = _Corrupted(real, 1)
    monkeypatch.setattr(verify, "psubnormal_map", lambda M: bad if M is L else psubnormal_map(M))
    assert check_lemma2(L).status == FAIL
    assert check_lemma5_3(L).status == FAIL


def test_lemma6_detects_wrong_residual(monkeypatch):
    L = lattice("e49_s3")
    monkeypatch.setattr(st, "supersolvable_residual", lambda M: M.top)
    assert check_lemma6(L).status == FAIL


def test_theorem_detects_broken_lhs(monkeypatch):
    L = lattice("sym4")
    fake = type(lhs_theorem(L))(True, (), ())
    monkeypatch.setattr(verify, "lhs_theorem", lambda M: fake)
    assert not check_theorem(L).equivalent


# -- corpus runner --------------------------------------------------------------

def test_order400_only_one_class_unmarked():
    for name in ORDER400:
        L = lattice(name)
        unmarked = psubnormal_map(L).unmarked
        cls = L.classes[int(L.class_of[unmarked[0]])]
        assert sorted(unmarked) == sorted(cls)
        assert all(L.nodes[i].order == 16 and i in L.down[L.top] for i in unmarked)


def test_affine_294_has_orders_14_and_21():
    L = lattice("e49_s3")
    orders = {h.order for h in L.nodes}
    assert {14, 21} <= orders


def test_run_corpus_empty():
    assert run_corpus([]) == []
    assert exit_status([]) == 0


def test_run_corpus_reports_errors_per_group():
    entries = [GroupFile("big", Sym(8), "Sym(8)"), GroupFile("c5", Cyclic(5), "Cyclic(5)")]
    reports = run_corpus(entries, Config(cap=5000))
    assert reports[0].error is not None and "CapExceeded" in reports[0].error
    assert reports[1].error is None and reports[1].ok
    assert exit_status(reports) == 2


def test_run_corpus_lattice_cap_error():
    reports = run_corpus([GroupFile("s6", Sym(6), "Sym(6)")], Config(lattice_cap=100))
    assert reports[0].error is not None


def test_report_json_schema_and_determinism():
    names = ["sym4", "e49_s3", "cyclic1", "alt5"]
    entries = [entry(n) for n in names]
    a = [strip_timing(r.to_json()) for r in run_corpus(entries, Config())]
    b = [strip_timing(r.to_json()) for r in run_corpus(entries, Config(jobs=2))]
    assert json.dumps(a) == json.dumps(b)
    for rep in a:
        for key in ("group", "order", "pi", "flags", "theorem", "lemmas", "certificates"):
            assert key in rep
        assert {"lhs", "rhs", "equivalent", "violators"} <= set(rep["theorem"])
        assert {"L2", "L3", "L4", "L5.3", "L6"} <= set(rep["lemmas"])
    assert [r["group"] for r in a] == names


def test_report_certificates_and_violators():
    rep = run_corpus([entry("sym4")])[0]
    assert rep.theorem["violators"][0]["order"] == 3
    assert rep.theorem["certificates_verified"]
    for cert in rep.certificates.values():
        assert all(st.is_prime(i) for i in cert["indexes"])
        assert cert["orders"][-1] == 24


def test_trivial_group_report():
    rep = run_corpus([entry("cyclic1")])[0]
    assert rep.order == 1 and rep.ok
    assert rep.lattice["two_maximal"] == 0
    assert rep.flags["abelian"] and rep.flags["supersolvable"] and rep.flags["solvable"]


def test_analysis_rejects_subgroup_lattice():
    L = lattice("sym4")
    with pytest.raises(ValueError):
        verify.Analysis(L.restrict(L.down[L.top][0]))


def test_spec_text_is_canonical():
    rep = run_corpus([entry("e49_s3")])[0]
    assert rep.spec == format_spec(entry("e49_s3").spec)
    assert np.isfinite(rep.timing["total_s"])
