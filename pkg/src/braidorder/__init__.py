"""Bi-orderings of free groups invariant under braid automorphisms.

Exact free-group arithmetic, the Artin action, a gcd certificate for
order-preserving automorphisms in permutation-conjugacy form, constructive
completions of braids, and an explicit invariant bi-ordering built from
Magnus expansions.
"""

from .braid import (
    BraidWord,
    Permutation,
    aij_images,
    artin_action,
    compose,
    invert_braid,
    parse_braid,
    pure_braid_generator,
    underlying_permutation,
)
from .certify import (
    Certificate,
    ConjugacyForm,
    OrbitReport,
    Verdict,
    certify_all,
    certify_biorder,
    certify_braid,
    certify_left,
    extract_conjugacy_form,
)
from .magnus import fox_derivative, fox_eval0, lcs_depth, leading_tensor, magnus_expansion
from .order import OrderContext, Relation, compare_in_F, compare_in_K
from .words import ExponentHom, FreeGroup, Word, format_word, parse_word

__version__ = "0.1.0"
