"""The free associative algebra on m generators over Z, degree-truncated,
with the free Lie ring embedded in it via Lyndon-word bracketings.

Monomials are tuples of generator indices; the empty tuple is the algebra
unit.  Polynomials are sparse integer-coefficient combinations of
monomials.  Lie elements are stored and compared in this associative
form; coordinates over the Lyndon-bracket basis are derived by exact
integer solving, never by leading-term heuristics.

Coordinate conventions used throughout the package:

* associative coordinates: monomials of degree 1..D ordered by
  (degree, lex); the unit is excluded,
* Lie coordinates: standard bracketings of Lyndon words of degree 1..D,
  ordered by (degree, lex) on the words.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import MalformedExpr, NotLieElement, TruncationMismatch
from .exactlinalg import Echelon, IntMatrix, SubmoduleBasis, hnf_from_sparse

Monomial = tuple  # tuple of generator indices


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Sparse integer polynomial in noncommuting variables.

    ``trunc_degree`` records the degree beyond which terms have been
    discarded; None means the polynomial is exact.  Stored terms never
    have zero coefficients.
    """

    __slots__ = ("terms", "trunc_degree")

    def __init__(self, terms=None, trunc_degree=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if c and (trunc_degree is None or len(w) <= trunc_degree):
                    clean[tuple(w)] = c
        self.terms = clean
        self.trunc_degree = trunc_degree

    @classmethod
    def zero(cls, trunc_degree=None):
        return cls({}, trunc_degree)

    @classmethod
    def generator(cls, i):
        return cls({(i,): 1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def min_degree(self):
        return min((len(w) for w in self.terms), default=None)

    def max_degree(self):
        return max((len(w) for w in self.terms), default=None)

    def truncated(self, D):
        if self.trunc_degree is not None and self.trunc_degree < D:
            raise TruncationMismatch(
                f"cannot view a degree-{self.trunc_degree} truncation at degree {D}"
            )
        return Poly({w: c for w, c in self.terms.items() if len(w) <= D}, D)

    def _join_trunc(self, other):
        a, b = self.trunc_degree, other.trunc_degree
        if a is None:
            return b
        if b is None:
            return a
        if a != b:
            raise TruncationMismatch(f"mixed truncation degrees {a} and {b}")
        return a

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        trunc = self._join_trunc(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                del out[w]
        return Poly(out, trunc)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return Poly.zero(self.trunc_degree)
        return Poly({w: k * c for w, c in self.terms.items()}, self.trunc_degree)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            mono = ".".join(f"x{i}" for i in w) if w else "1"
            bits.append(f"{c:+d}*{mono}")
        return "Poly(" + " ".join(bits) + ")"


def multiply(p, q, D):
    """Concatenation product of p and q, discarding terms of degree > D.

    D may be None for an exact (untruncated) product.  Both inputs must
    be exact or truncated at >= D.
    """
    for f in (p, q):
        if f.trunc_degree is not None and (D is None or f.trunc_degree < D):
            raise TruncationMismatch("operand truncated below the requested degree")
    out = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in q.terms.items():
            if D is not None and len(w1) + len(w2) > D:
                continue
            w = w1 + w2
            s = out.get(w, 0) + c1 * c2
            if s:
                out[w] = s
            else:
                del out[w]
    return Poly(out, D)


def commutator(p, q, D):
    """[p, q] = pq - qp, truncated at D (None for exact)."""
    return multiply(p, q, D) - multiply(q, p, D)


# ---------------------------------------------------------------------------
# Lyndon words
# ---------------------------------------------------------------------------


def _is_lyndon(w):
    return len(w) > 0 and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _duval(m, maxlen):
    """All Lyndon words over {0..m-1} of length <= maxlen, lex order."""
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        base = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - base])
        while w and w[-1] == m - 1:
            w.pop()


@lru_cache(maxsize=None)
def _lyndon_list(m, d):
    return tuple(w for w in _duval(m, d) if len(w) == d)


@dataclass(frozen=True)
class LyndonWord:
    """A word strictly smaller than all of its proper rotations."""

    word: Monomial

    def __post_init__(self):
        if not _is_lyndon(self.word):
            raise ValueError(f"{self.word} is not a Lyndon word")

    @property
    def degree(self):
        return len(self.word)

    @property
    def std_factorization(self):
        """w = uv with v the longest proper Lyndon suffix (degree >= 2 only)."""
        w = self.word
        if len(w) < 2:
            return None
        for i in range(1, len(w)):
            if _is_lyndon(w[i:]):
                return LyndonWord(w[:i]), LyndonWord(w[i:])
        raise AssertionError("unreachable: every Lyndon word of degree >= 2 factors")

    def __repr__(self):
        return f"LyndonWord({''.join(map(str, self.word))})"


def lyndon_words(m, d):
    """Lyndon words of degree d over m letters, in lexicographic order."""
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    return [LyndonWord(w) for w in _lyndon_list(m, d)]


_BRACKETING_CACHE = {}


def bracketing(w):
    """Associative expansion of the standard bracketing of a Lyndon word.

    b(letter) = letter and b(uv) = b(u) b(v) - b(v) b(u) along the
    standard factorization.  Accepts a LyndonWord or a raw tuple.

    >>> bracketing((0, 1)).terms
    {(0, 1): 1, (1, 0): -1}
    """
    word = w.word if isinstance(w, LyndonWord) else tuple(w)
    cached = _BRACKETING_CACHE.get(word)
    if cached is not None:
        return cached
    lw = w if isinstance(w, LyndonWord) else LyndonWord(word)
    if lw.degree == 1:
        out = Poly.generator(word[0])
    else:
        u, v = lw.std_factorization
        out = commutator(bracketing(u), bracketing(v), None)
    _BRACKETING_CACHE[word] = out
    return out


# ---------------------------------------------------------------------------
# Lie expressions
# ---------------------------------------------------------------------------


class LieExpr:
    """Abstract syntax tree for elements of a free Lie ring."""

    __slots__ = ()

    def __add__(self, other):
        return LinComb(_terms_of(self) + _terms_of(other))

    def __sub__(self, other):
        return LinComb(_terms_of(self) + tuple((-k, a) for k, a in _terms_of(other)))

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return LinComb(tuple((k * c, a) for c, a in _terms_of(self)))


def _terms_of(e):
    if isinstance(e, LinComb):
        return e.coefficients
    if isinstance(e, LieExpr):
        return ((1, e),)
    raise MalformedExpr(f"not a Lie expression: {e!r}")


@dataclass(frozen=True)
class Gen(LieExpr):
    """A free generator, by index."""

    index: int


@dataclass(frozen=True)
class Bracket(LieExpr):
    """Left-normed bracket [e1, e2, ..., ek] = [[...[e1, e2], ...], ek]."""

    items: tuple

    def __post_init__(self):
        if len(self.items) < 2:
            raise MalformedExpr("bracket needs at least two entries")


@dataclass(frozen=True)
class LinComb(LieExpr):
    """Integer linear combination of Lie expressions."""

    coefficients: tuple  # of (int, LieExpr) pairs


def eval_lie(expr, m, D):
    """Image of a Lie expression in the truncated free associative algebra.

    Left-normed bracket lists expand as iterated commutators.  Raises
    MalformedExpr on out-of-range generator indices or malformed trees.
    """
    if isinstance(expr, Gen):
        if not 0 <= expr.index < m:
            raise MalformedExpr(f"generator index {expr.index} out of range for m={m}")
        return Poly({(expr.index,): 1}, D)
    if isinstance(expr, Bracket):
        acc = eval_lie(expr.items[0], m, D)
        for item in expr.items[1:]:
            acc = commutator(acc, eval_lie(item, m, D), D)
        return acc
    if isinstance(expr, LinComb):
        acc = Poly.zero(D)
        for k, a in expr.coefficients:
            acc = acc + k * eval_lie(a, m, D)
        return acc
    raise MalformedExpr(f"not a Lie expression: {expr!r}")


def lyndon_expr(w):
    """The standard bracketing of a Lyndon word as a LieExpr tree."""
    lw = w if isinstance(w, LyndonWord) else LyndonWord(tuple(w))
    if lw.degree == 1:
        return Gen(lw.word[0])
    u, v = lw.std_factorization
    return Bracket((lyndon_expr(u), lyndon_expr(v)))


# ---------------------------------------------------------------------------
# Lie coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LieVector:
    """Coordinates over the Lyndon bracketings of degrees 1..max_degree."""

    m: int
    max_degree: int
    coords: tuple

    def __post_init__(self):
        expected = lie_dim(self.m, self.max_degree)
        if len(self.coords) != expected:
            raise ValueError(f"expected {expected} coordinates, got {len(self.coords)}")


@lru_cache(maxsize=None)
def lie_dim(m, D):
    """Rank of the free Lie ring on m generators truncated past degree D."""
    return sum(len(_lyndon_list(m, d)) for d in range(1, D + 1))


@lru_cache(maxsize=None)
def assoc_dim(m, D):
    """Number of monomials of degree 1..D over m letters."""
    return sum(m**d for d in range(1, D + 1))


@lru_cache(maxsize=None)
def _degree_offsets(m, D):
    offs = {}
    acc = 0
    for d in range(1, D + 1):
        offs[d] = acc
        acc += m**d
    return offs


def monomial_position(w, m, D):
    """Column index of a monomial in the (degree, lex) coordinate order."""
    r = 0
    for letter in w:
        r = r * m + letter
    return _degree_offsets(m, D)[len(w)] + r


@lru_cache(maxsize=None)
def monomial_list(m, D):
    """All monomials of degree 1..D in (degree, lex) order."""
    import itertools

    out = []
    for d in range(1, D + 1):
        out.extend(itertools.product(range(m), repeat=d))
    return tuple(out)


@lru_cache(maxsize=None)
def lyndon_basis(m, D):
    """Lyndon words of degree 1..D in (degree, lex) order."""
    out = []
    for d in range(1, D + 1):
        out.extend(_lyndon_list(m, d))
    return tuple(out)


@lru_cache(maxsize=None)
def _lyndon_offsets(m, D):
    offs = {}
    acc = 0
    for d in range(1, D + 1):
        offs[d] = acc
        acc += len(_lyndon_list(m, d))
    return offs


@lru_cache(maxsize=None)
def _lyndon_index(m, D):
    return {w: i for i, w in enumerate(lyndon_basis(m, D))}


class _DegreeSolver:
    """Exact solver for coordinates over degree-d Lyndon bracketings.

    Holds an integer echelon of the block matrix [B | I], where the rows
    of B are the bracketing expansions of the degree-d Lyndon words in
    the m^d local monomial coordinates.
    """

    def __init__(self, m, d):
        self.m = m
        self.d = d
        self.width = m**d
        words = _lyndon_list(m, d)
        self.count = len(words)
        ech = Echelon()
        for i, w in enumerate(words):
            row = {self._local(mw): c for mw, c in bracketing(w).terms.items()}
            row[self.width + i] = 1
            ech.insert(row)
        self.ech = ech

    def _local(self, w):
        r = 0
        for letter in w:
            r = r * self.m + letter
        return r

    def solve(self, component):
        """Coordinates of a homogeneous degree-d poly, or None.

        ``component`` maps monomial words of degree d to coefficients.
        """
        red = {self._local(w): c for w, c in component.items()}
        tr = {}
        rows = self.ech.rows
        width = self.width
        while red:
            j = min(red)
            b = rows.get(j)
            if b is None:
                return None
            q, rem = divmod(red[j], b[j])
            if rem:
                return None
            for k, v in b.items():
                tgt = red if k < width else tr
                c = tgt.get(k, 0) - q * v
                if c:
                    tgt[k] = c
                else:
                    tgt.pop(k, None)
        return {k - width: -v for k, v in tr.items()}


@lru_cache(maxsize=None)
def _degree_solver(m, d):
    return _DegreeSolver(m, d)


def lie_coordinates_sparse(p, m, D):
    """Sparse Lie coordinates of a poly, or None when outside the span."""
    by_degree = {}
    for w, c in p.terms.items():
        if len(w) == 0 or len(w) > D:
            return None
        by_degree.setdefault(len(w), {})[w] = c
    offs = _lyndon_offsets(m, D)
    out = {}
    for d, comp in by_degree.items():
        coords = _degree_solver(m, d).solve(comp)
        if coords is None:
            return None
        base = offs[d]
        for i, c in coords.items():
            out[base + i] = c
    return out


def lie_coordinates(p, m, D):
    """Exact coordinates of p over the Lyndon bracketings of degree <= D.

    Raises NotLieElement when p is not an integer combination of them
    (including any polynomial with a constant term or terms of degree
    beyond D).
    """
    if p.trunc_degree is not None and p.trunc_degree < D:
        raise TruncationMismatch("poly truncated below the requested degree")
    sparse = lie_coordinates_sparse(p, m, D)
    if sparse is None:
        raise NotLieElement(f"{p!r} is not a Lie element at degree {D}")
    n = lie_dim(m, D)
    return LieVector(m, D, tuple(sparse.get(i, 0) for i in range(n)))


def lie_vector_poly(v):
    """The polynomial represented by a LieVector (inverse of lie_coordinates)."""
    basis = lyndon_basis(v.m, v.max_degree)
    acc = Poly.zero(v.max_degree)
    for i, c in enumerate(v.coords):
        if c:
            acc = acc + c * bracketing(basis[i]).truncated(v.max_degree)
    return acc


def is_lie_element(p, m, D):
    return lie_coordinates_sparse(p, m, D) is not None


def adjoint_action(x, w, m, D):
    """Iterated left-normed bracket of a Lie element by the letters of w.

    ``x`` must lie in the span of the Lyndon bracketings (checked);
    the empty word acts as the identity.
    """
    if not is_lie_element(x.truncated(D) if x.trunc_degree is None else x, m, D):
        raise NotLieElement("adjoint action requires a Lie element")
    acc = x if x.trunc_degree is not None else x.truncated(D)
    word = w.word if isinstance(w, LyndonWord) else tuple(w)
    for letter in word:
        acc = commutator(acc, Poly({(letter,): 1}, D), D)
    return acc


def lie_submodule_to_poly_coords(B, m, D):
    """Image of a Lie-coordinate submodule in associative coordinates."""
    if B.ambient_rank != lie_dim(m, D):
        raise TruncationMismatch("submodule does not live in the Lie coordinates of (m, D)")
    basis = lyndon_basis(m, D)
    rows = []
    for row in B.basis.entries:
        acc = {}
        for i, c in enumerate(row):
            if c:
                for mw, k in bracketing(basis[i]).terms.items():
                    col = monomial_position(mw, m, D)
                    s = acc.get(col, 0) + c * k
                    if s:
                        acc[col] = s
                    else:
                        del acc[col]
        if acc:
            rows.append(acc)
    return hnf_from_sparse(rows, assoc_dim(m, D))
