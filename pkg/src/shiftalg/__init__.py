"""Exact computations in quantum shift-of-argument subalgebras of ``U(gl_n)``."""

from shiftalg.core import CPoly, YoungDiagram, cpoly_eval, parse_rational, rational_roots
from shiftalg.pbw import GLn, PBWElement, poisson, symbol, u_commutator
from shiftalg.diffop import DOp, cdet, dop_apply_to_one, projector_trace, power_trace, standard_matrix
from shiftalg.affine import LoopAlgebra, VacuumModule, is_ss_vector, segal_sugawara_vectors
from shiftalg.shift import (
    GeneratorTable,
    JordanData,
    SkewSelection,
    check_factorization,
    check_identities,
    check_shift,
    check_vanishing,
    gamma_diagram,
    jordan_data,
    other_tables,
    phi_table,
    row_polynomials,
    selection,
    symbol_table,
)
from shiftalg.verify import (
    VerificationReport,
    centralizer_dim,
    commutativity_suite,
    gr_suite,
    independence_rank,
    poisson_suite,
)

__version__ = "0.1.0"
