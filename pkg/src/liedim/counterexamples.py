"""The family L(n) of metabelian Lie rings (n >= 4) whose n-th lower
central term vanishes while the (2n-4)-th dimension subring still
contains a nonzero element g of additive order 2.

L(n) is presented on generators (r, a, b, c) with the chains
x_i = [x_{i-1}, a], y_i = [y_{i-1}, b], z_i = [z_{i-1}, c] starting at
x_0 = y_0 = z_0 = r.  The infinite relator families are instantiated
finitely: the bracket closure performed by the ideal engine regenerates
every omitted instance inside the truncation, so the finite set presents
the same ring up to the working degree.

`verify` produces a Certificate recording the machine-checked facts:
gamma_n(L(n)) = 0, g != 0, g has additive order 2, g lies in
delta_{2n-4}, and g equals each of its three closed forms.
"""

import json
import time
from dataclasses import dataclass

from .errors import BadParameters
from .exactlinalg import member, module_sum, hnf_from_sparse, quotient_structure
from .freealgebra import (
    Bracket,
    Gen,
    LinComb,
    assoc_dim,
    eval_lie,
    lyndon_basis,
    lyndon_expr,
)
from .idealengine import TruncatedContext
from .presentation import Presentation, is_identically_zero
from .series import delta_n, nilpotent_quotient

GENERATOR_NAMES = ("r", "a", "b", "c")
_R, _A, _B, _C = Gen(0), Gen(1), Gen(2), Gen(3)


def _chain(letter, i):
    """x_i-style element: the left-normed bracket [r, letter, ..., letter]."""
    if i == 0:
        return _R
    return Bracket((_R,) + (letter,) * i)


@dataclass(frozen=True)
class LnSpec:
    """Parameters and derived elements of the counterexample family."""

    n: int

    def __post_init__(self):
        if self.n < 4:
            raise BadParameters("the family is defined for n >= 4")

    def x(self, i):
        return _chain(_A, i)

    def y(self, i):
        return _chain(_B, i)

    def z(self, i):
        return _chain(_C, i)

    @property
    def g(self):
        n = self.n
        return LinComb(
            (
                (2 ** (2 * n - 1), Bracket((_A, _B))),
                (2 ** (2 * n - 2), Bracket((_A, _C))),
                (2 ** (2 * n - 3), Bracket((_B, _C))),
            )
        )


def build_g(n):
    """The witness element 2^{2n-1}[a,b] + 2^{2n-2}[a,c] + 2^{2n-3}[b,c]."""
    return LnSpec(n).g


def build_Ln(n, D=None):
    """Presentation of L(n), relator families instantiated up to degree D.

    D defaults to 2n-4 and may not be smaller; the augmentation-power
    membership that exhibits g needs exactly that much room.
    """
    spec = LnSpec(n)
    if D is None:
        D = 2 * n - 4
    if D < 2 * n - 4:
        raise BadParameters(f"need D >= 2n-4 = {2 * n - 4}, got {D}")
    x, y, z = spec.x, spec.y, spec.z
    rels = [
        LinComb(((2 ** (2 * n - 1), _R),)),
        LinComb(((2 ** (n + 2), _A), (-4, y(n - 3)), (-2, z(n - 3)))),
        LinComb(((2 ** n, _B), (4, x(n - 3)), (-1, z(n - 3)))),
        LinComb(((2 ** (n - 2), _C), (2, x(n - 3)), (1, y(n - 3)))),
        LinComb(((1, z(n - 2)), (-4, y(n - 2)))),
        LinComb(((1, y(n - 2)), (-4, x(n - 2)))),
        x(n - 1),
        y(n - 1),
        z(n - 1),
    ]
    # [a,b,u], [a,c,u], [b,c,u] with u over the Lyndon bracket basis
    for pair in ((_A, _B), (_A, _C), (_B, _C)):
        for w in lyndon_basis(4, D - 2):
            rels.append(Bracket(pair + (lyndon_expr(w),)))
    # chain elements bracketed with foreign generators
    for i in range(1, D - 1):
        for fam, letter in ((x, _B), (x, _C), (y, _A), (y, _C), (z, _A), (z, _B)):
            rels.append(Bracket((fam(i), letter)))
    # pairwise brackets of chain elements
    for fam_a, fam_b in ((x, x), (x, y), (x, z), (y, y), (y, z), (z, z)):
        for i in range(0, D - 1):
            for j in range(0, D - 1 - i):
                rel = Bracket((fam_a(i), fam_b(j)))
                if not is_identically_zero(rel, 4):
                    rels.append(rel)
    return Presentation(GENERATOR_NAMES, tuple(rels))


@dataclass(frozen=True)
class Certificate:
    """Machine-checked facts about L(n); passing means every claim holds."""

    n: int
    delta_index: int
    gamma_n_zero: bool
    g_nonzero: bool
    g_in_delta: bool
    order_of_g: int  # 0 marks infinite order
    identity_x: bool  # g = 2^{n+1} x_{n-2}
    identity_z: bool  # g = 2^{n-3} z_{n-2}
    identity_ab: bool  # g = 2^{2n-1} [a, b]
    assoc_width: int
    lie_width: int
    relation_rank: int
    timing_seconds: float

    @property
    def passed(self):
        return (
            self.gamma_n_zero
            and self.g_nonzero
            and self.g_in_delta
            and self.order_of_g == 2
            and self.identity_x
            and self.identity_z
            and self.identity_ab
        )

    def to_json(self, include_timing=True):
        doc = {
            "n": self.n,
            "delta_index": self.delta_index,
            "gamma_n_zero": self.gamma_n_zero,
            "g_nonzero": self.g_nonzero,
            "g_in_delta": self.g_in_delta,
            "order_of_g": self.order_of_g,
            "identities": {
                "x_form": self.identity_x,
                "z_form": self.identity_z,
                "ab_form": self.identity_ab,
            },
            "dimensions": {
                "assoc_width": self.assoc_width,
                "lie_width": self.lie_width,
                "relation_rank": self.relation_rank,
            },
            "passed": self.passed,
        }
        if include_timing:
            doc["timing_seconds"] = round(self.timing_seconds, 3)
        return json.dumps(doc, indent=2)


def _lie_row(expr, ctx):
    poly = eval_lie(expr, ctx.m, ctx.D)
    coords = ctx.lie_coords(poly)
    if coords is None:
        raise AssertionError("family element must be a Lie element")
    return coords


def verify(n, D=None):
    """Compute the full certificate for L(n), class bound n-1.

    D controls how far the relator families are instantiated (default and
    minimum 2n-4); a passing certificate does not depend on it.
    """
    t0 = time.perf_counter()
    spec = LnSpec(n)
    if D is None:
        D = 2 * n - 4
    P = build_Ln(n, D)
    c = n - 1

    # gamma_n(L(n)) = 0: in the class-n window, every basis bracket of
    # degree n must already lie in the relation module.
    Qn = nilpotent_quotient(P, n)
    ech_n = Qn.relation_module.to_echelon()
    gamma_n_zero = all(
        ech_n.contains({k: 1})
        for k, w in enumerate(Qn.ctx.lyndon)
        if len(w) == n
    )

    # the class-(n-1) window is exact once gamma_n vanishes
    Q = nilpotent_quotient(P, c)
    ctx = Q.ctx
    relation = Q.relation_module
    rel_ech = relation.to_echelon()

    g_row = _lie_row(spec.g, ctx)
    g_dense = tuple(g_row.get(j, 0) for j in range(ctx.lie_dim))
    g_nonzero = not rel_ech.contains(g_row)

    cyclic = module_sum(relation, hnf_from_sparse([dict(g_row)], ctx.lie_dim))
    structure = quotient_structure(cyclic, relation)
    if structure.free_rank:
        order = 0
    elif structure.divisors:
        order = structure.divisors[0]
    else:
        order = 1

    delta = delta_n(P, 2 * n - 4, c)
    g_in_delta = member(g_dense, delta) is not None

    identity_x = rel_ech.contains(
        _lie_row(spec.g - (2 ** (n + 1)) * spec.x(n - 2), ctx)
    )
    identity_z = rel_ech.contains(
        _lie_row(spec.g - (2 ** (n - 3)) * spec.z(n - 2), ctx)
    )
    identity_ab = rel_ech.contains(
        _lie_row(
            spec.g - LinComb(((2 ** (2 * n - 1), Bracket((_A, _B))),)), ctx
        )
    )

    return Certificate(
        n=n,
        delta_index=2 * n - 4,
        gamma_n_zero=gamma_n_zero,
        g_nonzero=g_nonzero,
        g_in_delta=g_in_delta,
        order_of_g=order,
        identity_x=identity_x,
        identity_z=identity_z,
        identity_ab=identity_ab,
        assoc_width=assoc_dim(4, max(c, 2 * n - 5)),
        lie_width=ctx.lie_dim,
        relation_rank=relation.rank,
        timing_seconds=time.perf_counter() - t0,
    )
