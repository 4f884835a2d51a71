"""Exact commutative algebra over Z_(l) for small deformation-ring presentations.

The main entry points are re-exported here; see the submodules for details.
"""

from .scalar import DefringError, DvrScalar, FpRing, NotDivisibleError, NotIntegralError, ZlRing
from .poly import ParseError, Poly, VarContext, parse, parse_list
from .groebner import GroebnerBasis, buchberger, is_dgroebner, normal_form, normal_form_with_cofactors, s_polynomial
from .ideal import (
    EliminationOrderError,
    FlatnessCertificate,
    Ideal,
    Verdict,
    eliminate,
    equal,
    intersect,
    is_flat,
    member,
    saturate_by,
    saturate_by_l,
)
from .hilbert import HilbertData, HilbertError, hilbert_function, hilbert_polynomial, reduce_mod_l
from .galois import CaseError, CaseSpec, LinearInT, MatrixPoly, charpoly_power, relation_ideal, verify_presentation
from .bm import BMError, Cycle, RepLabel, TypeLabel, bm_solve, cycle_table, enumerate_types, reduce_mod_l_rep, sigma_of_tau, types_congruent
from .kernels import IMPLEMENTATION

__version__ = "0.1.0"
