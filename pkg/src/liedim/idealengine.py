"""Saturation of two-sided ideals in the truncated enveloping algebra and
of Lie ideals in the truncated free Lie ring, plus the standard
filtration submodules (powers of the augmentation ideal, terms of the
lower central series of the free ring).

All computations happen inside a :class:`TruncatedContext`, which fixes
the generator count m and the truncation degree D and provides the two
coordinate systems (associative and Lie).  A two-sided ideal is spanned
by the products u * rho * v of its generators rho with monomials u, v,
so its truncated image is obtained by enumerating those products up to
degree D and row-reducing; a Lie ideal is saturated by a worklist that
closes the generating set under bracketing with the free generators.
"""

import itertools
from dataclasses import dataclass

from .errors import ContextMismatch, OutOfRange
from .exactlinalg import Echelon, IntMatrix, SubmoduleBasis
from .freealgebra import (
    Poly,
    assoc_dim,
    bracketing,
    commutator,
    eval_lie,
    lie_coordinates_sparse,
    lie_dim,
    lie_submodule_to_poly_coords,
    lyndon_basis,
    monomial_list,
    monomial_position,
)

KIND_ASSOCIATIVE = "associative-two-sided"
KIND_LIE = "lie-ideal"
KIND_SUBMODULE = "plain-submodule"


class TruncatedContext:
    """Coordinate bookkeeping for U(F) and F truncated past degree D."""

    __slots__ = ("m", "D", "_brk_rows")

    def __init__(self, m, D):
        if m < 1 or D < 1:
            raise OutOfRange(f"need m >= 1 and D >= 1, got m={m}, D={D}")
        self.m = m
        self.D = D
        self._brk_rows = None

    @property
    def key(self):
        return (self.m, self.D)

    def __eq__(self, other):
        return isinstance(other, TruncatedContext) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"TruncatedContext(m={self.m}, D={self.D})"

    @property
    def assoc_dim(self):
        return assoc_dim(self.m, self.D)

    @property
    def lie_dim(self):
        return lie_dim(self.m, self.D)

    @property
    def monomials(self):
        return monomial_list(self.m, self.D)

    @property
    def lyndon(self):
        return lyndon_basis(self.m, self.D)

    def poly_coords(self, p):
        """Sparse associative coordinate row of a constant-free poly."""
        out = {}
        for w, c in p.terms.items():
            if len(w) == 0:
                raise OutOfRange("constant terms have no coordinate")
            if len(w) <= self.D:
                out[monomial_position(w, self.m, self.D)] = c
        return out

    def coords_poly(self, row):
        mons = self.monomials
        return Poly({mons[j]: c for j, c in row.items()}, self.D)

    def lie_coords(self, p):
        """Sparse Lie coordinate row, or None when p is not a Lie element."""
        return lie_coordinates_sparse(
            p if p.trunc_degree is not None else p.truncated(self.D), self.m, self.D
        )

    def lie_row_poly(self, row):
        basis = self.lyndon
        acc = Poly.zero(self.D)
        for j, c in row.items():
            acc = acc + c * bracketing(basis[j]).truncated(self.D)
        return acc

    def bracketing_rows(self):
        """Associative coordinate rows of the Lyndon bracketings, basis order."""
        if self._brk_rows is None:
            rows = []
            for w in self.lyndon:
                rows.append(
                    {
                        monomial_position(mw, self.m, self.D): c
                        for mw, c in bracketing(w).terms.items()
                    }
                )
            self._brk_rows = rows
        return self._brk_rows


@dataclass(frozen=True)
class IdealBasis:
    """HNF basis of an ideal (or plain submodule) in one of the two
    coordinate systems of a context."""

    ctx: TruncatedContext
    kind: str
    basis: SubmoduleBasis


# ---------------------------------------------------------------------------
# ideal saturation
# ---------------------------------------------------------------------------


def _shift_terms(terms, u, v, D):
    """Sparse terms of u * p * v, truncated; u and v are words."""
    extra = len(u) + len(v)
    out = {}
    for w, c in terms.items():
        if len(w) + extra <= D:
            out[u + w + v] = c
    return out


def assoc_ideal_engine(relator_polys, ctx):
    """Echelon of the two-sided ideal generated by the relators.

    Spans the products u * rho * v over all monomial pairs that fit
    inside the truncation; one pass, no fixpoint iteration needed since
    the spanning set is closed under generator multiplication.
    """
    m, D = ctx.m, ctx.D
    eng = Echelon()
    for rho in relator_polys:
        terms = {w: c for w, c in rho.terms.items() if len(w) <= D}
        if not terms:
            continue
        dmin = min(len(w) for w in terms)
        for du in range(0, D - dmin + 1):
            for u in itertools.product(range(m), repeat=du):
                left = _shift_terms(terms, u, (), D) if du else terms
                if not left:
                    continue
                dmin2 = min(len(w) for w in left)
                for dv in range(0, D - dmin2 + 1):
                    for v in itertools.product(range(m), repeat=dv):
                        moved = _shift_terms(left, (), v, D) if dv else left
                        if moved:
                            eng.insert(
                                {
                                    monomial_position(w, m, D): c
                                    for w, c in moved.items()
                                }
                            )
    return eng


def assoc_ideal(relators, ctx):
    """HNF basis of the two-sided associative ideal generated by relators."""
    eng = assoc_ideal_engine(relators, ctx)
    return IdealBasis(ctx, KIND_ASSOCIATIVE, SubmoduleBasis.from_echelon(eng, ctx.assoc_dim))


def lie_ideal_engine(relator_exprs, ctx):
    """Echelon (Lie coordinates) of the Lie ideal generated by the relators.

    Worklist saturation: every element whose insertion grows the span is
    bracketed with each free generator and re-queued.  Termination is
    forced by the strictly growing span inside a finite-rank lattice.
    """
    m, D = ctx.m, ctx.D
    gens = [Poly({(i,): 1}, D) for i in range(m)]
    eng = Echelon()
    work = []
    for rel in relator_exprs:
        p = eval_lie(rel, m, D) if not isinstance(rel, Poly) else rel.truncated(D)
        if p:
            work.append(p)
    while work:
        p = work.pop()
        coords = ctx.lie_coords(p)
        if coords is None:
            raise OutOfRange("relator does not evaluate to a Lie element")
        if not coords:
            continue
        if eng.insert(coords):
            for g in gens:
                q = commutator(p, g, D)
                if q:
                    work.append(q)
    return eng


def lie_ideal(relators, ctx):
    """HNF basis (Lie coordinates) of the Lie ideal generated by relators."""
    eng = lie_ideal_engine(relators, ctx)
    return IdealBasis(ctx, KIND_LIE, SubmoduleBasis.from_echelon(eng, ctx.lie_dim))


# ---------------------------------------------------------------------------
# filtration submodules
# ---------------------------------------------------------------------------


def aug_power_positions(n, ctx):
    if not 1 <= n <= ctx.D + 1:
        raise OutOfRange(f"need 1 <= n <= D+1, got n={n} with D={ctx.D}")
    return [j for j, w in enumerate(ctx.monomials) if len(w) >= n]


def _unit_basis(positions, ambient):
    return SubmoduleBasis(
        ambient,
        IntMatrix(
            tuple(tuple(1 if j == pos else 0 for j in range(ambient)) for pos in positions),
            ambient,
        ),
    )


def aug_power(n, ctx):
    """Submodule of all monomials of degree >= n (the n-th power of the
    augmentation ideal inside the truncation); zero module at n = D+1."""
    return IdealBasis(
        ctx, KIND_ASSOCIATIVE, _unit_basis(aug_power_positions(n, ctx), ctx.assoc_dim)
    )


def gamma_free(n, ctx):
    """Lie-coordinate span of the Lyndon bracketings of degree >= n: the
    n-th lower central term of the truncated free Lie ring."""
    if not 1 <= n <= ctx.D + 1:
        raise OutOfRange(f"need 1 <= n <= D+1, got n={n} with D={ctx.D}")
    positions = [j for j, w in enumerate(ctx.lyndon) if len(w) >= n]
    return IdealBasis(ctx, KIND_LIE, _unit_basis(positions, ctx.lie_dim))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def _detect_aug_power(A, ctx):
    """The k with A = aug_power(k), or None."""
    positions = set()
    for row in A.basis.basis.entries:
        support = [(j, v) for j, v in enumerate(row) if v]
        if len(support) != 1 or support[0][1] != 1:
            return None
        positions.add(support[0][0])
    if not positions:
        return None
    degrees = {len(ctx.monomials[j]) for j in positions}
    k = min(degrees)
    if positions == set(aug_power_positions(k, ctx)):
        return k
    return None


def product_submodule(A, B, ctx):
    """HNF basis of the span of pairwise products a*b, truncated at D.

    When A is a power of the augmentation ideal the result is computed by
    left-multiplication closure instead of literal pair enumeration; both
    routes give the same module.
    """
    for X in (A, B):
        if X.ctx != ctx:
            raise ContextMismatch(f"{X.ctx!r} differs from {ctx!r}")
        if X.basis.ambient_rank != ctx.assoc_dim:
            raise ContextMismatch("product requires associative coordinates")
    m, D = ctx.m, ctx.D
    brows = [
        {j: v for j, v in enumerate(row) if v} for row in B.basis.basis.entries
    ]
    eng = Echelon()
    k = _detect_aug_power(A, ctx)
    if k is not None:
        mons = ctx.monomials
        work = []
        for brow in brows:
            terms = {mons[j]: v for j, v in brow.items()}
            for u in itertools.product(range(m), repeat=k):
                seed = _shift_terms(terms, u, (), D)
                if seed:
                    work.append(seed)
        while work:
            terms = work.pop()
            if eng.insert(
                {monomial_position(w, m, D): c for w, c in terms.items()}
            ):
                for i in range(m):
                    moved = _shift_terms(terms, (i,), (), D)
                    if moved:
                        work.append(moved)
    else:
        arows = [
            {j: v for j, v in enumerate(row) if v} for row in A.basis.basis.entries
        ]
        mons = ctx.monomials
        for arow in arows:
            aterms = {mons[j]: v for j, v in arow.items()}
            for brow in brows:
                bterms = {mons[j]: v for j, v in brow.items()}
                out = {}
                for w1, c1 in aterms.items():
                    for w2, c2 in bterms.items():
                        if len(w1) + len(w2) > D:
                            continue
                        w = w1 + w2
                        s = out.get(w, 0) + c1 * c2
                        if s:
                            out[w] = s
                        else:
                            del out[w]
                if out:
                    eng.insert(
                        {monomial_position(w, m, D): c for w, c in out.items()}
                    )
    return SubmoduleBasis.from_echelon(eng, ctx.assoc_dim)


def embed_lie_submodule(B, ctx):
    """Associative-coordinate image of a Lie-coordinate submodule."""
    return lie_submodule_to_poly_coords(B, ctx.m, ctx.D)


# ---------------------------------------------------------------------------
# closure checks (used by tests and assertions)
# ---------------------------------------------------------------------------


def is_multiplicatively_closed(ideal):
    """True when every basis row times every generator stays inside."""
    ctx = ideal.ctx
    ech = ideal.basis.to_echelon()
    mons = ctx.monomials
    for row in ideal.basis.basis.entries:
        terms = {mons[j]: v for j, v in enumerate(row) if v}
        for i in range(ctx.m):
            for u, v in (((i,), ()), ((), (i,))):
                moved = _shift_terms(terms, u, v, ctx.D)
                coords = {
                    monomial_position(w, ctx.m, ctx.D): c for w, c in moved.items()
                }
                if coords and not ech.contains(coords):
                    return False
    return True


def is_bracket_closed(ideal):
    """True when every basis row bracketed with every generator stays inside."""
    ctx = ideal.ctx
    ech = ideal.basis.to_echelon()
    for row in ideal.basis.basis.entries:
        p = ctx.lie_row_poly({j: v for j, v in enumerate(row) if v})
        for i in range(ctx.m):
            q = commutator(p, Poly({(i,): 1}, ctx.D), ctx.D)
            coords = ctx.lie_coords(q)
            if coords and not ech.contains(coords):
                return False
    return True
