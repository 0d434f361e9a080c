"""Theorem, corollary and lemma checks per group, and the corpus runner.

Each lemma check returns an :class:`Outcome` whose ``status`` is ``"pass"``,
``"fail"`` or ``"n/a"``; checks never gate each other.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import structure as st
from .groupdef import GroupFile, build, format_spec
from .lattice import DEFAULT_LATTICE_CAP, Lattice, enumerate_lattice, two_maximal_subgroups
from .numtheory import is_prime
from .perm import (
    CapExceeded,
    SubgroupRef,
    as_group,
    conjugate,
    generate,
    indices_to_bits,
    quotient_with_map,
)
from .psubnormal import lhs_theorem, psubnormal_map, verify_certificate

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass
class Outcome:
    status: str
    details: str = ""

    def __bool__(self):
        return self.status != FAIL


@dataclass
class TheoremVerdict:
    lhs: bool
    violators: tuple[int, ...]
    violator_representatives: tuple[int, ...]
    residual_frattini_trivial: bool
    all_proper_supersolvable: bool
    first_non_supersolvable: int | None
    rhs: bool
    equivalent: bool


class Analysis:
    """A group with its lattice and cached quotient / sub-lattice data."""

    def __init__(self, L: Lattice):
        if L.order != L.group.order:
            raise ValueError("analysis needs the lattice of a whole group, not of a subgroup")
        self.L = L
        self._quot = {}
        self._sub = {}

    @property
    def G(self):
        return self.L.group

    def quotient(self, n: int):
        """``(Quotient, lattice of G/N)`` for the normal node ``n``."""
        if n not in self._quot:
            q = quotient_with_map(self.G, self.L.nodes[n])
            if n == 0:
                self._quot[n] = (q, self.L)
            else:
                self._quot[n] = (q, enumerate_lattice(q.group, cap=max(q.group.order, DEFAULT_LATTICE_CAP)))
        return self._quot[n]

    def sub(self, j: int) -> Lattice:
        if j not in self._sub:
            self._sub[j] = self.L.restrict(j)
        return self._sub[j]


def check_theorem(L: Lattice, debug: bool = False) -> TheoremVerdict:
    lhs = lhs_theorem(L)
    r = st.supersolvable_residual(L)
    phi_trivial = st.frattini(L, r) == 0
    bad = st.first_non_supersolvable_maximal(L)
    if debug:
        proper = [i for i in range(len(L.nodes)) if i != L.top and not st.is_supersolvable(L.restrict(i))]
        if (bad is None) != (not proper):
            raise AssertionError("maximal-subgroup and all-subgroup supersolvability scans disagree")
    all_ss = bad is None
    rhs = phi_trivial and all_ss
    return TheoremVerdict(lhs.holds, lhs.violators, lhs.representatives, phi_trivial, all_ss, bad, rhs, lhs.holds == rhs)


def check_corollary(L: Lattice) -> Outcome:
    pi = st.pi(L)
    if len(pi) < 4 or not lhs_theorem(L).holds:
        return Outcome(NA, f"|pi(G)| = {len(pi)}")
    ok = st.is_supersolvable(L)
    return Outcome(PASS if ok else FAIL, f"pi = {pi}, supersolvable = {ok}")


def _sample_pairs(a, b, limit_nodes, samples, rng):
    if limit_nodes <= 200:
        return [(x, y) for x in a for y in b]
    return [(rng.choice(a), rng.choice(b)) for _ in range(samples)]


def check_lemma2(L: Lattice, samples: int = 500, seed: int = 0, analysis: Analysis | None = None) -> Outcome:
    """Closure properties of P-subnormality under intersection with and
    passage to quotients by normal subgroups, transitivity and conjugation."""
    A = analysis or Analysis(L)
    rng = random.Random(seed)
    G = L.group
    marked = psubnormal_map(L).marked
    ids = list(range(len(L.nodes)))
    normals = [int(n) for n in np.flatnonzero(L.normal) if n != 0]
    failures = []
    checked = 0

    for n, h in _sample_pairs(normals, ids, len(L.nodes), samples, rng):
        N, H = L.nodes[n], L.nodes[h]
        q, QL = A.quotient(n)
        qmark = psubnormal_map(QL).marked
        image = QL.node(q.image(H, G))
        if marked[h]:
            checked += 1
            NL = A.sub(n)
            if not psubnormal_map(NL).marked[NL.node(N.bits & H.bits)]:
                failures.append(f"(1) H={h} N={n}: H∩N not P-subnormal in N")
            if not qmark[image]:
                failures.append(f"(1) H={h} N={n}: HN/N not P-subnormal in G/N")
        if N.bits & H.bits == N.bits and qmark[image]:
            checked += 1
            if not marked[h]:
                failures.append(f"(2) H={h} N={n}: H/N P-subnormal but H is not")

    nested = [(int(h), k) for k in ids if marked[k] and k != 0 for h in L.below(k) if h != k]
    if len(L.nodes) > 200 and nested:
        nested = [rng.choice(nested) for _ in range(samples)]
    for h, k in nested:
        KL = A.sub(k)
        if psubnormal_map(KL).marked[KL.node(L.nodes[h].bits)]:
            checked += 1
            if not marked[h]:
                failures.append(f"(3) H={h} K={k}: transitivity broken")

    elems = list(range(G.order))
    for h in ids:
        if not marked[h]:
            continue
        gs = list(L.top_gens) + [rng.choice(elems) for _ in range(2)]
        for g in gs:
            checked += 1
            if not marked[L.node(conjugate(G, L.nodes[h], g))]:
                failures.append(f"(4) H={h} g={g}: conjugate not P-subnormal")
    if failures:
        return Outcome(FAIL, "; ".join(failures[:5]))
    return Outcome(PASS, f"{checked} implications checked")


def check_lemma3(L: Lattice, analysis: Analysis | None = None) -> Outcome:
    """Prime-index subgroups of solvable groups have supersolvable core quotients."""
    A = analysis or Analysis(L)
    prime_index = [i for i in range(len(L.nodes)) if is_prime(L.index(i))]
    if not prime_index or not st.is_solvable(L):
        return Outcome(NA, "not solvable" if prime_index else "no prime-index subgroup")
    bad = []
    for h in prime_index:
        c = st.core_node(L, h)
        _, QL = A.quotient(c)
        if not st.is_supersolvable(QL):
            bad.append(h)
    if bad:
        return Outcome(FAIL, f"G/H_G not supersolvable for nodes {bad}")
    return Outcome(PASS, f"{len(prime_index)} prime-index subgroups")


def check_lemma4(L: Lattice) -> Outcome:
    """Above the normalizer of a non-normal Sylow subgroup for the largest prime,
    no relative index is prime."""
    pi = st.pi(L)
    if not pi:
        return Outcome(NA, "trivial group")
    p = pi[-1]
    P = st.sylow(L, p)
    if L.normal[P]:
        return Outcome(NA, f"Sylow {p}-subgroup normal")
    npn = st.normalizer_node(L, P)
    above = L.above(npn)
    for k in above:
        for h in above:
            if L.contain[k, h] and is_prime(L.index(int(k), int(h))):
                return Outcome(FAIL, f"|{h}:{k}| = {L.index(int(k), int(h))} is prime")
    return Outcome(PASS, f"p = {p}, |N_G(P)| = {L.nodes[npn].order}, {len(above)} overgroups")


def check_lemma5_3(L: Lattice) -> Outcome:
    """Supersolvable iff every Sylow normalizer is P-subnormal."""
    marked = psubnormal_map(L).marked
    cond = all(marked[st.normalizer_node(L, s)] for p in st.pi(L) for s in st.sylow_nodes(L, p))
    ss = st.is_supersolvable(L)
    return Outcome(PASS if ss == cond else FAIL, f"supersolvable = {ss}, normalizers P-subnormal = {cond}")


def _local_bits(emb: np.ndarray, bits: int) -> SubgroupRef:
    """Bitset over a standalone copy of a subgroup, from one over the parent group."""
    local = [i for i, g in enumerate(emb) if bits >> int(g) & 1]
    return SubgroupRef(indices_to_bits(local), len(local))


def _supersolvably_embedded(L: Lattice, target: int) -> bool:
    """A chain ``1 = N_0 ⊂ ... ⊂ N_n = target`` of normal nodes with prime steps."""
    allowed = set(int(i) for i in np.flatnonzero(L.normal & L.contain[:, target]))
    frontier, seen = [0], {0}
    while frontier:
        cur = frontier.pop()
        if cur == target:
            return True
        for k in allowed:
            if k not in seen and L.contain[cur, k] and is_prime(L.index(cur, k)):
                seen.add(k)
                frontier.append(k)
    return False


def check_lemma6(L: Lattice, analysis: Analysis | None = None) -> Outcome:
    """Structure of minimal non-supersolvable groups, parts (1)-(7)."""
    if not st.is_min_non_supersolvable(L):
        return Outcome(NA, "not minimal non-supersolvable")
    A = analysis or Analysis(L)
    G = L.group
    fails = []
    pi = st.pi(L)
    # (1)
    if not (st.is_solvable(L) and len(pi) <= 3):
        fails.append("(1)")
    # (2)
    if not st.is_schmidt(L) and not st.has_susolv_sylow_tower(L):
        fails.append("(2)")
    # (3)
    normal_sylows = [(p, st.sylow(L, p)) for p in pi if len(st.sylow_nodes(L, p)) == 1]
    if len(normal_sylows) != 1:
        return Outcome(FAIL, f"(3) {len(normal_sylows)} normal Sylow subgroups")
    p, P = normal_sylows[0]
    if P != st.supersolvable_residual(L):
        fails.append("(3) P != residual")
    # (4)
    phiP = st.frattini(L, P)
    phiG = st.frattini(L)
    quot_order = L.nodes[P].order // L.nodes[phiP].order
    if not quot_order > p:
        fails.append("(4) |P/Phi(P)| <= p")
    q, QL = A.quotient(phiG)
    img = QL.node(q.image(L.nodes[P], G))
    Pg, emb = as_group(G, L.nodes[P])
    pbar = quotient_with_map(Pg, _local_bits(emb, L.nodes[phiP].bits)).group
    if pbar.order != quot_order or QL.nodes[img].order != quot_order:
        fails.append("(4) P/Phi(P) does not embed in G/Phi(G)")
    if img not in st.minimal_normal_above(QL, 0):
        fails.append("(4) P/Phi(P) not minimal normal in G/Phi(G)")
    # (5)
    if not _supersolvably_embedded(L, phiP):
        fails.append("(5)")
    # (6)
    Pn = L.nodes[P]
    comps = [i for i, h in enumerate(L.nodes) if h.order * Pn.order == L.order and h.bits & Pn.bits == 1]
    if not comps:
        return Outcome(FAIL, "no complement to P")
    Q = comps[0]
    Qn = L.nodes[Q]
    Qg, qemb = as_group(G, Qn)
    qbar = quotient_with_map(Qg, _local_bits(qemb, Qn.bits & L.nodes[phiG].bits))
    QbL = enumerate_lattice(qbar.group, cap=max(qbar.group.order, DEFAULT_LATTICE_CAP))
    qbar_order = QbL.order
    prime_power = qbar_order > 1 and len(st.pi(QbL)) == 1
    if not (st.is_minimal_nonabelian(QbL) or (st.is_cyclic(QbL) and prime_power)):
        fails.append("(6)")
    # (7)
    nonprime = [m for m in L.down[L.top] if not is_prime(L.index(m))]
    classes = {int(L.class_of[m]) for m in nonprime}
    phiPQ = L.node(generate(G, L.gens(Q), base=L.nodes[phiP]))
    if len(classes) != 1 or int(L.class_of[phiPQ]) not in classes:
        fails.append("(7)")
    detail = f"p={p} |P|={Pn.order} |Phi(P)|={L.nodes[phiP].order} |Q|={Qn.order} |Q/Q∩Phi(G)|={qbar_order}"
    if fails:
        return Outcome(FAIL, ", ".join(fails) + "; " + detail)
    return Outcome(PASS, detail)


@dataclass
class Config:
    cap: int | None = None
    lattice_cap: int | None = None
    samples: int = 500
    seed: int = 0
    jobs: int = 1
    debug: bool = False


@dataclass
class Report:
    group: str
    spec: str
    order: int | None = None
    pi: list[int] = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    structure: dict = field(default_factory=dict)
    theorem: dict = field(default_factory=dict)
    lemmas: dict = field(default_factory=dict)
    lemma_details: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    lattice: dict = field(default_factory=dict)
    error: str | None = None
    timing: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.error is None and not self.violation

    @property
    def violation(self) -> bool:
        if self.error is not None:
            return False
        return (not self.theorem.get("equivalent", False)
                or any(v == FAIL for v in self.lemmas.values())
                or not self.theorem.get("certificates_verified", False))

    def to_json(self) -> dict:
        out = {
            "group": self.group,
            "spec": self.spec,
            "order": self.order,
            "pi": self.pi,
            "flags": self.flags,
            "structure": self.structure,
            "theorem": self.theorem,
            "lemmas": self.lemmas,
            "lemma_details": self.lemma_details,
            "certificates": self.certificates,
            "lattice": self.lattice,
            "timing": self.timing,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def analyze(L: Lattice, name: str = "", spec_text: str = "", config: Config | None = None) -> Report:
    """Full per-group pipeline on an enumerated lattice."""
    config = config or Config()
    t0 = time.perf_counter()
    A = Analysis(L)
    summary = st.summarize(L)
    verdict = check_theorem(L, debug=config.debug)
    pmap = psubnormal_map(L)

    certs = {}
    cert_ok = True
    two_max = two_maximal_subgroups(L)
    reps = sorted({min(L.classes[int(L.class_of[h])]) for h in two_max})
    for h in reps:
        c = pmap.certificate(h)
        if c is not None:
            cert_ok &= verify_certificate(L, c)
            certs[str(h)] = c.to_json(L)
    outcomes = {
        "L2": check_lemma2(L, config.samples, config.seed, A),
        "L3": check_lemma3(L, A),
        "L4": check_lemma4(L),
        "L5.3": check_lemma5_3(L),
        "L6": check_lemma6(L, A),
        "Cor": check_corollary(L),
    }
    if summary.supersolvable != st.is_supersolvable_huppert(L):
        outcomes["L5.1"] = Outcome(FAIL, "chief-factor and maximal-index criteria disagree")
    else:
        outcomes["L5.1"] = Outcome(PASS, f"supersolvable = {summary.supersolvable}")

    return Report(
        group=name,
        spec=spec_text,
        order=L.order,
        pi=summary.pi,
        flags=summary.flags(),
        structure=summary.to_json(),
        theorem={
            "lhs": verdict.lhs,
            "rhs": verdict.rhs,
            "equivalent": verdict.equivalent,
            "violators": [_describe(L, v) for v in verdict.violator_representatives],
            "violator_count": len(verdict.violators),
            "residual_frattini_trivial": verdict.residual_frattini_trivial,
            "all_proper_supersolvable": verdict.all_proper_supersolvable,
            "first_non_supersolvable": None if verdict.first_non_supersolvable is None
            else _describe(L, verdict.first_non_supersolvable),
            "certificates_verified": bool(cert_ok),
        },
        lemmas={k: v.status for k, v in outcomes.items()},
        lemma_details={k: v.details for k, v in outcomes.items()},
        certificates=certs,
        lattice={
            "subgroups": len(L.nodes),
            "classes": len(L.classes),
            "normal": int(L.normal.sum()),
            "two_maximal": len(two_max),
            "p_subnormal": int(pmap.marked.sum()),
        },
        timing={"analysis_s": round(time.perf_counter() - t0, 3)},
    )


def _describe(L: Lattice, i: int) -> dict:
    return {"node": int(i), "order": L.nodes[i].order, "index": L.index(i), "class_size": len(L.classes[int(L.class_of[i])])}


def lattice_cap_for(entry: GroupFile, config: Config) -> int | None:
    """The larger of the command-line and per-file lattice caps."""
    caps = [c for c in (config.lattice_cap, entry.lattice_cap) if c is not None]
    return max(caps) if caps else None


def run_one(entry: GroupFile, config: Config) -> Report:
    text = format_spec(entry.spec)
    t0 = time.perf_counter()
    try:
        G = build(entry.spec, cap=config.cap)
        L = enumerate_lattice(G, cap=lattice_cap_for(entry, config))
        rep = analyze(L, entry.name, text, config)
    except (CapExceeded, ValueError) as exc:
        return Report(entry.name, text, error=f"{type(exc).__name__}: {exc}")
    rep.timing["total_s"] = round(time.perf_counter() - t0, 3)
    return rep


def _run_star(args):
    return run_one(*args)


def run_corpus(entries: list[GroupFile], config: Config | None = None) -> list[Report]:
    """Analyze every entry; failures are reported per group, order is preserved."""
    config = config or Config()
    if config.jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as ex:
            return list(ex.map(_run_star, [(e, config) for e in entries]))
    return [run_one(e, config) for e in entries]


def exit_status(reports: list[Report]) -> int:
    if any(r.violation for r in reports):
        return 1
    if any(r.error is not None for r in reports):
        return 2
    return 0


def strip_timing(report_json: dict) -> dict:
    return {k: v for k, v in report_json.items() if k != "timing"}


__all__ = [
    "Analysis", "Config", "Outcome", "Report", "TheoremVerdict",
    "analyze", "check_corollary", "check_lemma2", "check_lemma3", "check_lemma4",
    "check_lemma5_3", "check_lemma6", "check_theorem", "exit_status", "run_corpus", "run_one",
]
