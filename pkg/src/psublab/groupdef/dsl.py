"""Reader and printer for ``.grp`` group-definition files.

Grammar::

    spec    := "Sym(" INT ")" | "Alt(" INT ")" | "Cyclic(" INT ")" | "Dihedral(" INT ")"
             | "ElemAbelian(" INT "," INT ")"
             | "Direct(" spec "," spec ")"
             | "AffineSD(" INT "," INT ";" matrix ("," matrix)* ")"
             | "Perm(" INT ";" gen ("," gen)* ")"
    matrix  := "[" row (";" row)* "]"        row := INT+
    gen     := cycle+                        cycle := "(" INT+ ")"

``#`` starts a comment.  A comment of the form ``# @key value`` is a pragma
and is returned alongside the spec by :func:`read_grp`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from ..numtheory import is_prime
from .gf import MatGFp
from .nodes import AffineSD, Alt, Cyclic, Dihedral, Direct, ElemAbelian, GroupSpec, Perm, Sym


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


_TOKEN = re.compile(r"(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<sym>[()\[\];,])")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    lines = text.splitlines() or [""]
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0]
        pos = 0
        while True:
            while pos < len(line) and line[pos].isspace():
                pos += 1
            if pos >= len(line):
                break
            m = _TOKEN.match(line, pos)
            if not m:
                raise ParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
            toks.append(_Tok(m.lastgroup, m.group(), lineno, pos + 1))
            pos = m.end()
    toks.append(_Tok("eof", "", len(lines), len(lines[-1]) + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, got {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def integer(self) -> tuple[int, _Tok]:
        t = self.next()
        if t.kind != "int":
            raise ParseError(f"expected an integer, got {t.text or 'end of input'!r}", t.line, t.col)
        return int(t.text), t

    def prime(self) -> int:
        p, t = self.integer()
        if not is_prime(p):
            raise ParseError(f"{p} is not prime", t.line, t.col)
        return p

    def positive(self) -> int:
        n, t = self.integer()
        if n < 1:
            raise ParseError("expected a positive integer", t.line, t.col)
        return n

    def spec(self) -> GroupSpec:
        t = self.next()
        if t.kind != "name":
            raise ParseError(f"expected a group constructor, got {t.text or 'end of input'!r}", t.line, t.col)
        name = t.text
        self.expect("(")
        if name in ("Sym", "Alt", "Cyclic", "Dihedral"):
            out = {"Sym": Sym, "Alt": Alt, "Cyclic": Cyclic, "Dihedral": Dihedral}[name](self.positive())
        elif name == "ElemAbelian":
            p = self.prime()
            self.expect(",")
            out = ElemAbelian(p, self.positive())
        elif name == "Direct":
            left = self.spec()
            self.expect(",")
            out = Direct(left, self.spec())
        elif name == "AffineSD":
            out = self.affine()
        elif name == "Perm":
            out = self.perm()
        else:
            raise ParseError(f"unknown constructor {name!r}", t.line, t.col)
        self.expect(")")
        return out

    def affine(self) -> AffineSD:
        p = self.prime()
        self.expect(",")
        k = self.positive()
        self.expect(";")
        mats = [self.matrix(p, k)]
        while self.peek().text == ",":
            self.next()
            mats.append(self.matrix(p, k))
        return AffineSD(p, k, tuple(mats))

    def matrix(self, p: int, k: int):
        start = self.expect("[")
        rows = [self.row()]
        while self.peek().text == ";":
            self.next()
            rows.append(self.row())
        self.expect("]")
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ParseError(f"matrix must be {k}x{k}", start.line, start.col)
        rows = tuple(tuple(x % p for x in r) for r in rows)
        if not MatGFp(p, rows).is_invertible():
            raise ParseError(f"matrix is not invertible mod {p}", start.line, start.col)
        return rows

    def row(self) -> tuple[int, ...]:
        vals = [self.integer()[0]]
        while self.peek().kind == "int":
            vals.append(self.integer()[0])
        return tuple(vals)

    def perm(self) -> Perm:
        deg = self.positive()
        self.expect(";")
        gens = [self.gen(deg)]
        while self.peek().text == ",":
            self.next()
            gens.append(self.gen(deg))
        return Perm(deg, tuple(gens))

    def gen(self, deg: int):
        cycles = [self.cycle(deg)]
        while self.peek().text == "(":
            cycles.append(self.cycle(deg))
        return tuple(cycles)

    def cycle(self, deg: int) -> tuple[int, ...]:
        self.expect("(")
        pts = []
        while self.peek().kind == "int":
            a, t = self.integer()
            if not 1 <= a <= deg:
                raise ParseError(f"point {a} outside 1..{deg}", t.line, t.col)
            if a in pts:
                raise ParseError(f"point {a} repeated in cycle", t.line, t.col)
            pts.append(a)
        if not pts:
            t = self.peek()
            raise ParseError("empty cycle", t.line, t.col)
        self.expect(")")
        return tuple(pts)


def parse(text: str) -> GroupSpec:
    """Parse one group definition; raises :class:`ParseError` with line/column."""
    p = _Parser(text)
    out = p.spec()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.col)
    return out


def format_spec(spec: GroupSpec) -> str:
    """Canonical text for a spec; ``parse(format_spec(s)) == s``."""
    if isinstance(spec, (Sym, Alt, Cyclic, Dihedral)):
        return f"{type(spec).__name__}({spec.n})"
    if isinstance(spec, ElemAbelian):
        return f"ElemAbelian({spec.p}, {spec.k})"
    if isinstance(spec, Direct):
        return f"Direct({format_spec(spec.left)}, {format_spec(spec.right)})"
    if isinstance(spec, AffineSD):
        mats = ", ".join("[" + "; ".join(" ".join(map(str, r)) for r in m) + "]" for m in spec.matrices)
        return f"AffineSD({spec.p}, {spec.k}; {mats})"
    if isinstance(spec, Perm):
        gens = ", ".join("".join("(" + " ".join(map(str, c)) + ")" for c in g) for g in spec.gens)
        return f"Perm({spec.degree}; {gens})"
    raise TypeError(f"not a group spec: {spec!r}")


@dataclass
class GroupFile:
    name: str
    spec: GroupSpec
    text: str
    pragmas: dict[str, str] = field(default_factory=dict)

    @property
    def lattice_cap(self) -> int | None:
        v = self.pragmas.get("lattice-cap")
        return int(v) if v else None


_PRAGMA = re.compile(r"^\s*#\s*@([\w-]+)\s+(.*?)\s*$")


def read_grp(path: str | Path) -> GroupFile:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    pragmas = {}
    for line in text.splitlines():
        m = _PRAGMA.match(line)
        if m:
            pragmas[m.group(1)] = m.group(2)
    return GroupFile(path.stem, parse(text), text, pragmas)
