"""Exact computation of lower central series and dimension subrings of
finitely presented Lie rings over the integers.

All arithmetic is integer-exact.  The package provides:

* ``exactlinalg``: Hermite/Smith normal forms and submodule arithmetic,
* ``freealgebra``: the truncated free associative algebra with the free
  Lie ring embedded via Lyndon bracketings,
* ``presentation``: a small relator language and pre-abelianization,
* ``idealengine``: two-sided and Lie ideal saturation,
* ``series``: gamma_n, delta_n, quotient structure, and the named checks,
* ``counterexamples``: the L(n) family and its certificates,
* ``cli``: the ``liedim`` command.
"""

from .exactlinalg import (
    ElementaryDivisors,
    IntMatrix,
    SubmoduleBasis,
    hnf,
    member,
    module_intersect,
    module_sum,
    quotient_structure,
    snf,
)
from .freealgebra import (
    Bracket,
    Gen,
    LieExpr,
    LieVector,
    LinComb,
    LyndonWord,
    Poly,
    adjoint_action,
    bracketing,
    eval_lie,
    lie_coordinates,
    lyndon_words,
    multiply,
)
from .idealengine import (
    IdealBasis,
    TruncatedContext,
    assoc_ideal,
    aug_power,
    gamma_free,
    lie_ideal,
    product_submodule,
)
from .presentation import (
    Presentation,
    instantiate_metabelian,
    parse,
    preabelianize,
    serialize,
)
from .series import (
    NilpotentQuotient,
    SeriesReport,
    SjogrenConstant,
    check_corollary,
    check_lemma2,
    check_sjogren,
    check_theorem1,
    delta_n,
    gamma_n,
    nilpotent_quotient,
    quotient_report,
    sjogren,
)
from .counterexamples import Certificate, LnSpec, build_Ln, build_g, verify

__version__ = "0.1.0"

__all__ = [
    "Bracket",
    "Certificate",
    "ElementaryDivisors",
    "Gen",
    "IdealBasis",
    "IntMatrix",
    "LieExpr",
    "LieVector",
    "LinComb",
    "LnSpec",
    "LyndonWord",
    "NilpotentQuotient",
    "Poly",
    "Presentation",
    "SeriesReport",
    "SjogrenConstant",
    "SubmoduleBasis",
    "TruncatedContext",
    "adjoint_action",
    "assoc_ideal",
    "aug_power",
    "bracketing",
    "build_Ln",
    "build_g",
    "check_corollary",
    "check_lemma2",
    "check_sjogren",
    "check_theorem1",
    "delta_n",
    "eval_lie",
    "gamma_free",
    "gamma_n",
    "hnf",
    "instantiate_metabelian",
    "lie_coordinates",
    "lie_ideal",
    "lyndon_words",
    "member",
    "module_intersect",
    "module_sum",
    "multiply",
    "nilpotent_quotient",
    "parse",
    "preabelianize",
    "product_submodule",
    "quotient_report",
    "quotient_structure",
    "serialize",
    "sjogren",
    "snf",
    "verify",
]
