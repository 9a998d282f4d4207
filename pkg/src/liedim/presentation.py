"""Finitely presented Lie rings: text format, parsing, and the
pre-abelianization transform.

The file grammar is line-oriented UTF-8 text ('#' starts a comment):

    doc        := header line*
    header     := "generators:" name+
    line       := "relator:" expr
    expr       := term (("+"|"-") term)*
    term       := [int ("*")?] atom
    atom       := name | bracket | "(" expr ")"
    bracket    := "[" expr ("," expr)+ "]"      # >= 2 entries; left-normed
    int        := digits | digits "^" digits    # a^b is exponentiation

A presentation is *pre-abelian* when its relators have the shape
e_i X_i + xi_i (one per generator, e_i nonnegative, e_i dividing
e_{i+1}, each xi_i in the derived subring) followed by relators lying
entirely in the derived subring.  Every presentation can be brought to
this shape by a Smith normal form change of generators; that transform
is :func:`preabelianize`.
"""

import itertools
from dataclasses import dataclass

from .errors import EmptyBracket, NotPreabelian, ParseError, UnknownGenerator
from .exactlinalg import IntMatrix, snf
from .freealgebra import (
    Bracket,
    Gen,
    LieExpr,
    LinComb,
    eval_lie,
    lyndon_basis,
    lyndon_expr,
)


@dataclass(frozen=True)
class PreAbelianForm:
    """The (e_i, xi_i) data of a pre-abelian presentation."""

    e: tuple
    xi: tuple


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple
    preabelian: PreAbelianForm | None = None

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generator names must be unique")

    @property
    def m(self):
        return len(self.generators)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class _Tokens:
    SYMBOLS = set("[](),+-*^:")

    def __init__(self, text, line_no):
        self.line_no = line_no
        self.items = []
        col = 0
        n = len(text)
        while col < n:
            ch = text[col]
            if ch.isspace():
                col += 1
                continue
            if ch == "#":
                break
            start = col
            if ch.isdigit():
                while col < n and text[col].isdigit():
                    col += 1
                self.items.append(("INT", text[start:col], start + 1))
            elif ch.isalpha() or ch == "_":
                while col < n and (text[col].isalnum() or text[col] == "_"):
                    col += 1
                self.items.append(("NAME", text[start:col], start + 1))
            elif ch in self.SYMBOLS:
                self.items.append((ch, ch, start + 1))
                col += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", line_no, col + 1)
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self.line_no, 0)
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", self.line_no, tok[2])
        return tok

    def done(self):
        return self.pos >= len(self.items)


class _ExprParser:
    def __init__(self, tokens, gen_index):
        self.t = tokens
        self.gen_index = gen_index

    def parse_expr(self):
        terms = [self._signed_term(first=True)]
        while True:
            tok = self.t.peek()
            if tok is None or tok[0] not in "+-":
                break
            self.t.next()
            coeff, atom = self._term()
            if tok[0] == "-":
                coeff = -coeff
            terms.append((coeff, atom))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return LinComb(tuple(terms))

    def _signed_term(self, first=False):
        tok = self.t.peek()
        sign = 1
        if tok is not None and tok[0] == "-":
            self.t.next()
            sign = -1
        coeff, atom = self._term()
        return (sign * coeff, atom)

    def _term(self):
        coeff = 1
        tok = self.t.peek()
        if tok is not None and tok[0] == "INT":
            self.t.next()
            coeff = int(tok[1])
            nxt = self.t.peek()
            if nxt is not None and nxt[0] == "^":
                self.t.next()
                exp = self.t.expect("INT")
                coeff = coeff ** int(exp[1])
            nxt = self.t.peek()
            if nxt is not None and nxt[0] == "*":
                self.t.next()
        return coeff, self._atom()

    def _atom(self):
        tok = self.t.next()
        kind, value, col = tok
        if kind == "NAME":
            idx = self.gen_index.get(value)
            if idx is None:
                raise UnknownGenerator(f"unknown generator {value!r}", self.t.line_no, col)
            return Gen(idx)
        if kind == "[":
            entries = [self.parse_expr()]
            while True:
                nxt = self.t.next()
                if nxt[0] == ",":
                    entries.append(self.parse_expr())
                elif nxt[0] == "]":
                    break
                else:
                    raise ParseError(
                        f"expected ',' or ']', found {nxt[1]!r}", self.t.line_no, nxt[2]
                    )
            if len(entries) < 2:
                raise EmptyBracket(
                    "bracket needs at least two entries", self.t.line_no, col
                )
            return Bracket(tuple(entries))
        if kind == "(":
            inner = self.parse_expr()
            self.t.expect(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", self.t.line_no, col)


def parse(text):
    """Parse a presentation document into a Presentation."""
    generators = None
    relators = []
    gen_index = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = _Tokens(raw, line_no)
        head = tokens.expect("NAME")
        tokens.expect(":")
        if head[1] == "generators":
            if generators is not None:
                raise ParseError("duplicate generators header", line_no, head[2])
            names = []
            while not tokens.done():
                names.append(tokens.expect("NAME")[1])
            if not names:
                raise ParseError("at least one generator required", line_no, head[2])
            if len(set(names)) != len(names):
                raise ParseError("generator names must be unique", line_no, head[2])
            generators = tuple(names)
            gen_index = {name: i for i, name in enumerate(names)}
        elif head[1] == "relator":
            if generators is None:
                raise ParseError("relator before generators header", line_no, head[2])
            expr = _ExprParser(tokens, gen_index).parse_expr()
            if not tokens.done():
                tok = tokens.peek()
                raise ParseError(f"trailing input {tok[1]!r}", line_no, tok[2])
            relators.append(expr)
        else:
            raise ParseError(f"unknown directive {head[1]!r}", line_no, head[2])
    if generators is None:
        raise ParseError("missing generators header", 1, 1)
    return Presentation(generators, tuple(relators))


def parse_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def expr_text(expr, names):
    """Canonical text of a Lie expression: normalized coefficients, no
    redundant parentheses."""
    if isinstance(expr, LinComb):
        parts = []
        for i, (coeff, atom) in enumerate(expr.coefficients):
            mag = abs(coeff)
            body = _atom_text(atom, names)
            piece = body if mag == 1 else f"{mag}*{body}"
            if i == 0:
                parts.append(piece if coeff >= 0 else f"-{piece}")
            else:
                parts.append(f" + {piece}" if coeff >= 0 else f" - {piece}")
        return "".join(parts) if parts else "0"
    return _atom_text(expr, names)


def _atom_text(expr, names):
    if isinstance(expr, Gen):
        return names[expr.index]
    if isinstance(expr, Bracket):
        return "[" + ", ".join(expr_text(item, names) for item in expr.items) + "]"
    if isinstance(expr, LinComb):
        return "(" + expr_text(expr, names) + ")"
    raise TypeError(f"not a Lie expression: {expr!r}")


def serialize(P):
    """Canonical byte-stable document for a presentation."""
    lines = ["generators: " + " ".join(P.generators)]
    for rel in P.relators:
        lines.append("relator: " + expr_text(rel, P.generators))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structural helpers
# ---------------------------------------------------------------------------


def expr_degree_bound(expr):
    """Syntactic upper bound for the degree of any monomial in the image."""
    if isinstance(expr, Gen):
        return 1
    if isinstance(expr, Bracket):
        return sum(expr_degree_bound(item) for item in expr.items)
    if isinstance(expr, LinComb):
        return max((expr_degree_bound(a) for _, a in expr.coefficients), default=0)
    raise TypeError(f"not a Lie expression: {expr!r}")


def is_identically_zero(expr, m):
    bound = expr_degree_bound(expr)
    if bound == 0:
        return True
    return eval_lie(expr, m, bound).is_zero()


def substitute(expr, images):
    """Replace Gen(j) by images[j] everywhere in the tree."""
    if isinstance(expr, Gen):
        return images[expr.index]
    if isinstance(expr, Bracket):
        return Bracket(tuple(substitute(item, images) for item in expr.items))
    if isinstance(expr, LinComb):
        return LinComb(tuple((k, substitute(a, images)) for k, a in expr.coefficients))
    raise TypeError(f"not a Lie expression: {expr!r}")


def abelianized_matrix(P):
    """Degree-1 coefficient matrix of the relators (rows) over generators."""
    rows = []
    for rel in P.relators:
        poly = eval_lie(rel, P.m, 1)
        rows.append(tuple(poly.terms.get((j,), 0) for j in range(P.m)))
    return IntMatrix(tuple(rows), P.m)


def _divides(a, b):
    return b == 0 if a == 0 else b % a == 0


def _is_preabelian_matrix(A):
    m = A.ncols
    diag = []
    for k, row in enumerate(A.entries):
        for j, v in enumerate(row):
            if v and (k >= m or j != k):
                return None
        if k < m:
            if row[k] < 0:
                return None
            diag.append(row[k])
    diag += [0] * (m - len(diag))
    for i in range(m - 1):
        if not _divides(diag[i], diag[i + 1]):
            return None
    return tuple(diag)


def preabelianize(P):
    """Equivalent presentation with the pre-abelian (e_i, xi_i) data filled in.

    Applies the Smith normal form of the abelianized relation matrix as a
    unimodular change of relators (left transform) and of degree-one
    generators (right transform, realized as a substitution on every
    relator tree).  Presentations already in pre-abelian shape are
    returned with their relators untouched.
    """
    m = P.m
    A = abelianized_matrix(P)
    diag = _is_preabelian_matrix(A)
    if diag is not None:
        return Presentation(P.generators, P.relators, _make_form(P.relators, diag, m))

    d, U, V = snf(A)
    # new relators: unimodular combinations, then the generator substitution
    images = []
    for j in range(m):
        terms = tuple((V.entries[j][i], Gen(i)) for i in range(m) if V.entries[j][i])
        if len(terms) == 1 and terms[0][0] == 1:
            images.append(terms[0][1])
        else:
            images.append(LinComb(terms))
    new_rels = []
    for k in range(A.nrows):
        combo = tuple((U.entries[k][l], P.relators[l]) for l in range(A.nrows) if U.entries[k][l])
        if len(combo) == 1 and combo[0][0] == 1:
            rel = combo[0][1]
        else:
            rel = LinComb(combo)
        new_rels.append(substitute(rel, images))
    new_rels = [r for r in new_rels if not is_identically_zero(r, m)]
    e = tuple(d) + (0,) * (m - len(d))
    e = e[:m]
    return Presentation(P.generators, tuple(new_rels), _make_form(tuple(new_rels), e, m))


def _make_form(relators, e, m):
    xi = []
    for i in range(m):
        parts = []
        if i < len(relators):
            parts.append((1, relators[i]))
        if e[i]:
            parts.append((-e[i], Gen(i)))
        xi.append(LinComb(tuple(parts)))
    for k in range(m, len(relators)):
        xi.append(relators[k])
    return PreAbelianForm(tuple(e), tuple(xi))


def validate_preabelian(P):
    """Raise NotPreabelian unless P carries consistent pre-abelian data."""
    form = P.preabelian
    if form is None:
        raise NotPreabelian("presentation has no pre-abelian data")
    if len(form.e) != P.m:
        raise NotPreabelian("e-sequence length differs from generator count")
    for i in range(P.m - 1):
        if not _divides(form.e[i], form.e[i + 1]):
            raise NotPreabelian(f"divisibility fails at e_{i + 1}")
    for i, xi in enumerate(form.xi):
        bound = max(expr_degree_bound(xi), 1)
        poly = eval_lie(xi, P.m, bound)
        if any(len(w) < 2 for w in poly.terms):
            raise NotPreabelian(f"xi_{i + 1} has a degree-one part")


def instantiate_metabelian(P, D):
    """Append relators forcing the second derived subring to vanish up to
    degree D: brackets of all pairs of Lyndon bracketings of degree >= 2
    with total degree <= D.
    """
    if D < 4:
        raise ValueError("need D >= 4: the smallest second-derived element has degree 4")
    basis = [w for w in lyndon_basis(P.m, D - 2) if len(w) >= 2]
    extra = []
    for u, v in itertools.combinations(basis, 2):
        if len(u) + len(v) <= D:
            extra.append(Bracket((lyndon_expr(u), lyndon_expr(v))))
    extra = [r for r in extra if not is_identically_zero(r, P.m)]
    form = P.preabelian
    if form is not None:
        form = PreAbelianForm(form.e, form.xi + tuple(extra))
    return Presentation(P.generators, P.relators + tuple(extra), form)


def relator_polys(P, D):
    """Evaluations of all relators at truncation degree D, zeros dropped."""
    out = []
    for rel in P.relators:
        poly = eval_lie(rel, P.m, D)
        if poly:
            out.append(poly)
    return out
