"""Lower central series, dimension subrings, and their quotients for a
finitely presented Lie ring, computed exactly in a class-c truncation.

For a presentation L = F/R and a class bound c, every series term is
represented by its preimage in the Lie coordinates of F truncated past
degree c.  The lower central term gamma_n is the span of the relation
module together with all basis brackets of degree >= n.  The dimension
subring delta_n = L meet varpi^n(L) is decided inside the truncated
enveloping algebra: an element lies in delta_n exactly when its
associative image falls into varpi^n + r, where r is the two-sided
ideal generated by the relators.  That membership condition is pulled
back to Lie coordinates as an exact integer kernel computation.

The class bound is honest: all outputs describe the class-c quotient
L/gamma_{c+1}(L).  For nilpotent rings of class <= c this is L itself,
and the adequacy condition c >= n-1 guarantees that truncation never
corrupts membership in varpi^n + r: every discarded term has degree
greater than c >= n-1 and hence already lies in varpi^n.
"""

import json
import math
from dataclasses import dataclass

from .errors import ClassTooSmall, OutOfRange
from .exactlinalg import (
    Echelon,
    ElementaryDivisors,
    SubmoduleBasis,
    module_sum,
    preimage_lattice,
    quotient_structure,
)
from .freealgebra import Poly, assoc_dim, bracketing, commutator
from .idealengine import (
    IdealBasis,
    KIND_ASSOCIATIVE,
    TruncatedContext,
    assoc_ideal_engine,
    aug_power,
    gamma_free,
    lie_ideal,
    lie_ideal_engine,
    product_submodule,
)
from .presentation import relator_polys, validate_preabelian


@dataclass(frozen=True)
class NilpotentQuotient:
    """The class-c quotient of a presented Lie ring: relation module in
    Lie coordinates of degrees 1..c plus its additive group structure."""

    ctx: TruncatedContext
    class_bound: int
    relation_module: SubmoduleBasis
    structure: ElementaryDivisors


@dataclass(frozen=True)
class SeriesEntry:
    n: int
    gamma: SubmoduleBasis
    delta: SubmoduleBasis
    quotient: ElementaryDivisors
    two_delta_in_gamma: bool
    corollary_holds: bool
    sjogren_holds: bool
    low_degree_equal: bool


@dataclass(frozen=True)
class SeriesReport:
    max_n: int
    class_bound: int
    entries: tuple

    def to_json(self):
        docs = []
        for ent in self.entries:
            docs.append(
                {
                    "n": ent.n,
                    "gamma_rank": ent.gamma.rank,
                    "delta_rank": ent.delta.rank,
                    "quotient": {
                        "divisors": list(ent.quotient.divisors),
                        "free_rank": ent.quotient.free_rank,
                    },
                    "checks": {
                        "theorem1": ent.two_delta_in_gamma,
                        "corollary": ent.corollary_holds,
                        "sjogren": ent.sjogren_holds,
                    },
                }
            )
        return json.dumps(docs, indent=2)


@dataclass(frozen=True)
class SjogrenConstant:
    """The universal annihilator constant for delta_n/gamma_n."""

    n: int
    b: tuple  # b_k = lcm(1..k) for k = 1..n-2
    value: int


def sjogren(n):
    """Evaluate the constant prod_{k=1..n-2} lcm(1..k)^binom(n-2, k).

    >>> sjogren(4).value
    2
    >>> sjogren(5).value
    48
    """
    if n < 2:
        raise OutOfRange("constant defined for n >= 2")
    b = tuple(math.lcm(*range(1, k + 1)) for k in range(1, n - 1))
    value = 1
    for k in range(1, n - 1):
        value *= b[k - 1] ** math.comb(n - 2, k)
    return SjogrenConstant(n, b, value)


# ---------------------------------------------------------------------------
# core computations
# ---------------------------------------------------------------------------


def nilpotent_quotient(P, c):
    """Relation module and additive structure of L/gamma_{c+1}(L)."""
    if c < 1:
        raise OutOfRange("class bound must be at least 1")
    ctx = TruncatedContext(P.m, c)
    relation = lie_ideal(P.relators, ctx).basis
    structure = quotient_structure(SubmoduleBasis.full(ctx.lie_dim), relation)
    return NilpotentQuotient(ctx, c, relation, structure)


def gamma_n(Q, n):
    """Preimage of the n-th lower central term in the class-c coordinates."""
    if not 1 <= n <= Q.class_bound + 1:
        raise OutOfRange(f"need 1 <= n <= {Q.class_bound + 1}")
    return module_sum(gamma_free(n, Q.ctx).basis, Q.relation_module)


def _gamma_at(Q, n):
    # tolerates n beyond the window, where the free part is zero anyway
    if n <= Q.class_bound + 1:
        return gamma_n(Q, n)
    return Q.relation_module


class _DeltaPipeline:
    """Shared state for computing delta_n at several n with one class bound.

    Membership in varpi^n + r is decided in the enveloping algebra
    truncated past degree D = max(c, n-1).  The relator ideal includes
    generators for gamma_{c+1} of the free ring, so when D exceeds c the
    computation still describes the class-c quotient exactly; results are
    projected back onto the Lie coordinates of degrees 1..c at the end.
    The expensive piece, the truncated two-sided ideal, is built once.
    """

    def __init__(self, P, c, max_n):
        if c < 1:
            raise OutOfRange("class bound must be at least 1")
        self.P = P
        self.c = c
        self.ctx = TruncatedContext(P.m, max(c, max_n - 1, 1))
        self.low_ctx = TruncatedContext(P.m, c)
        gens = relator_polys(P, self.ctx.D)
        for w in self.ctx.lyndon:
            if len(w) > c:
                gens.append(bracketing(w).truncated(self.ctx.D))
        self.r_engine = assoc_ideal_engine(gens, self.ctx)
        self.bracket_rows = self.ctx.bracketing_rows()
        self._relation = None

    @property
    def relation_module(self):
        if self._relation is None:
            self._relation = lie_ideal(self.P.relators, self.low_ctx).basis
        return self._relation

    def delta(self, n):
        """delta_n of the class-c quotient, joined with the relation module."""
        if n < 1:
            raise OutOfRange("series index must be at least 1")
        ctx = self.ctx
        if n > ctx.D + 1:
            raise OutOfRange(f"pipeline built for n <= {ctx.D + 1}")
        low_dim = self.low_ctx.lie_dim
        if n == 1:
            return SubmoduleBasis.full(low_dim)
        target = _join_aug_power(self.r_engine, n, ctx)
        pulled = preimage_lattice(self.bracket_rows, target, ctx.assoc_dim)
        low = Echelon()
        for row in pulled.rows_sparse():
            low.insert({j: v for j, v in row.items() if j < low_dim})
        for row in self.relation_module.rows_sparse():
            low.insert(row)
        return SubmoduleBasis.from_echelon(low, low_dim)


def _join_aug_power(engine, n, ctx):
    """Echelon of span(engine rows) + varpi^n, exploiting the degree order.

    Coordinates of degree >= n form a trailing block that varpi^n fills
    completely, so the sum is the projection of the rows below the cut
    plus one unit row per high coordinate.  This avoids the massive
    fill-in of inserting unit vectors into a saturated basis.
    """
    cut = assoc_dim(ctx.m, n - 1) if n >= 2 else 0
    width = ctx.assoc_dim
    if cut >= width:
        return engine.copy()
    out = Echelon()
    for row in engine.rows.values():
        proj = {j: v for j, v in row.items() if j < cut}
        if proj:
            out.insert(proj)
    for pos in range(cut, width):
        out.rows[pos] = {pos: 1}
    return out


def delta_n(P, n, c):
    """Preimage of the n-th dimension subring, Lie coordinates of degrees 1..c.

    Decided inside U(F) truncated past degree max(c, n-1) modulo
    varpi^n + r, where r also carries gamma_{c+1} generators; the result
    is the full preimage of delta_n of the class-c quotient, so it
    always contains the relation module.
    """
    return _DeltaPipeline(P, c, n).delta(n)


def quotient_report(P, N, c):
    """Per-n elementary divisors of delta_n/gamma_n with all checks, n <= N."""
    if N < 1:
        raise OutOfRange("need N >= 1")
    if c < N - 1:
        raise ClassTooSmall(f"class bound {c} too small for n up to {N}")
    pipeline = _DeltaPipeline(P, c, N)
    Q = nilpotent_quotient(P, c)
    entries = []
    for n in range(1, N + 1):
        delta = pipeline.delta(n)
        gamma = _gamma_at(Q, n)
        quotient = quotient_structure(delta, gamma)
        thm, _ = _scaled_inside(delta, gamma, 2)
        sj, _ = _scaled_inside(delta, gamma, sjogren(n).value if n >= 2 else 1)
        cor = _corollary_holds(Q, delta, n)
        low = delta == gamma if n <= 3 else True
        entries.append(SeriesEntry(n, gamma, delta, quotient, thm, cor, sj, low))
    return SeriesReport(N, c, tuple(entries))


def _scaled_inside(A, B, k):
    """Whether k*A lies inside B; returns (bool, first violating row)."""
    ech = B.to_echelon()
    for row in A.basis.entries:
        scaled = {j: k * v for j, v in enumerate(row) if v}
        if not ech.contains(scaled):
            return False, tuple(row)
    return True, None


def _bracket_module(Q, A):
    """Span of [v, X_j] over rows v of A, joined with the relation module."""
    ctx = Q.ctx
    eng = Echelon()
    for row in Q.relation_module.rows_sparse():
        eng.insert(row)
    for row in A.basis.entries:
        p = ctx.lie_row_poly({j: v for j, v in enumerate(row) if v})
        for i in range(ctx.m):
            q = commutator(p, Poly({(i,): 1}, ctx.D), ctx.D)
            coords = ctx.lie_coords(q)
            if coords:
                eng.insert(coords)
    return SubmoduleBasis.from_echelon(eng, ctx.lie_dim)


def _corollary_holds(Q, delta, n):
    return _bracket_module(Q, delta) == _gamma_at(Q, n + 1)


# ---------------------------------------------------------------------------
# named checks
# ---------------------------------------------------------------------------


def check_theorem1(P, n, c):
    """Whether 2*delta_n(L) lies in gamma_n(L) for the class-c quotient.

    Returns (holds, witness): on failure the witness is the first basis
    vector of delta_n whose double falls outside gamma_n.
    """
    delta = delta_n(P, n, c)
    gamma = _gamma_at(nilpotent_quotient(P, c), n)
    return _scaled_inside(delta, gamma, 2)


def check_corollary(P, n, c):
    """Whether [delta_n(L), L] equals gamma_{n+1}(L) for the class-c quotient."""
    Q = nilpotent_quotient(P, c)
    delta = delta_n(P, n, c)
    return _corollary_holds(Q, delta, n)


def check_sjogren(P, n, c):
    """Whether c_n * delta_n(L) lies in gamma_n(L) for the class-c quotient."""
    delta = delta_n(P, n, c)
    gamma = _gamma_at(nilpotent_quotient(P, c), n)
    factor = sjogren(n).value if n >= 2 else 1
    return _scaled_inside(delta, gamma, factor)[0]


@dataclass(frozen=True)
class Lemma2Result:
    part_i: bool
    part_iii: bool


def check_lemma2(P, n, c):
    """The two module identities satisfied by M = F meet varpi(F)*s.

    Here s is the two-sided ideal generated by S = F' + R for a
    pre-abelian presentation P, and everything is computed inside the
    degree-c truncation.  Part (i): M equals the span of the e_i-scaled
    generator brackets together with [F', S].  Part (iii): the pullback
    of varpi^n + varpi*s equals gamma_n + M.
    """
    validate_preabelian(P)
    if n < 1:
        raise OutOfRange("need n >= 1")
    ctx = TruncatedContext(P.m, c)
    m, D = ctx.m, ctx.D
    e = P.preabelian.e

    # s: the ideal generated by the derived subring and the relators.
    # As a two-sided ideal the derived subring is generated by the
    # degree-2 brackets alone, since higher bracketings are iterated
    # commutators of those with generators.
    derived_gens = [
        bracketing((j, i)).truncated(D) for j in range(m) for i in range(j + 1, m)
    ]
    s_eng = assoc_ideal_engine(derived_gens + relator_polys(P, D), ctx)
    s_ideal = IdealBasis(
        ctx, KIND_ASSOCIATIVE, SubmoduleBasis.from_echelon(s_eng, ctx.assoc_dim)
    )
    ws = product_submodule(aug_power(1, ctx), s_ideal, ctx)

    bracket_rows = ctx.bracketing_rows()
    M_lhs = preimage_lattice(bracket_rows, ws.to_echelon(), ctx.assoc_dim)

    # explicit span: e_i [X_i, X_j] for i > j, plus [F', S]
    rhs = Echelon()
    lyndon_pos = {w: k for k, w in enumerate(ctx.lyndon)}
    for i in range(m):
        for j in range(i):
            if e[i]:
                rhs.insert({lyndon_pos[(j, i)]: e[i]})
    fprime = [bracketing(w).truncated(D) for w in ctx.lyndon if 2 <= len(w) <= D - 1]
    relation_polys = [
        ctx.lie_row_poly(dict(r))
        for r in lie_ideal_engine(P.relators, ctx).rows.values()
    ]
    for a, p in enumerate(fprime):
        for q in fprime[a + 1 :]:
            coords = ctx.lie_coords(commutator(p, q, D))
            if coords:
                rhs.insert(coords)
        for q in relation_polys:
            coords = ctx.lie_coords(commutator(p, q, D))
            if coords:
                rhs.insert(coords)
    M_rhs = SubmoduleBasis.from_echelon(rhs, ctx.lie_dim)
    part_i = M_lhs == M_rhs

    # part (iii): pullback of varpi^n + varpi*s versus gamma_n + M
    ws_ech = ws.to_echelon()
    t2 = _join_aug_power(ws_ech, n, ctx) if n <= D + 1 else ws_ech
    lhs3 = preimage_lattice(bracket_rows, t2, ctx.assoc_dim)
    if n <= D + 1:
        rhs3 = module_sum(gamma_free(n, ctx).basis, M_lhs)
    else:
        rhs3 = M_lhs
    part_iii = lhs3 == rhs3
    return Lemma2Result(part_i, part_iii)
