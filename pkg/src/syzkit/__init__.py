"""Exact computations with last syzygies of determinantal varieties of 1-generic matrices."""

from .exact_linalg import DualNumber, Subspace, kernel_basis, rref, subspace_equal
from .multilin import MultiVector, shuffle_sign, sym_basis, wedge
from .polyring import Poly, buchberger, graded_piece, ideal_dimension, is_projectively_empty
from .syzygy import (
    BettiTable,
    PreconditionError,
    SyzygyCocycle,
    counterexample,
    embed_last_syzygy,
    en_betti,
    eval_syzygy,
    koszul_differential,
    last_syzygy_space_oracle,
    support_test,
    syzygy_ideal,
    tangent_space,
    tangent_test,
)
from .tensor3 import (
    TripleTensor,
    catalecticant,
    check_1generic,
    exterior_minor,
    gamma_A,
    gamma_C,
    green_injectivity,
    maximal_minor,
    random_tensor,
    row_rank,
)

__version__ = "0.1.0"
