"""Dark-state existence analysis from the coupling block B alone.

A dark state exists iff B has a nontrivial right null space, i.e. iff
rank(B) < N_g, iff det(B+B) = 0.  In the exact regime these are algebraic
tests (fraction-free elimination); in the float regime rank is counted
from singular values with a relative threshold.

The excited block A never enters any of the predicates; its determinant
is reported only because the block-determinant factorization

    det H = det(A) det(-B+ A^-1 B)

assumes det(A) != 0.  When det(A) = 0 the verdict is flagged so callers
know to lean on the brute-force oracle for confirmation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import linalg, numeric
from .blocks import BlockHamiltonian, full_hamiltonian
from .network import Classification
from .scalars import ExactComplex, Regime, Scalar

#: Singular values below this fraction of the largest count as zero (float).
SINGULAR_VALUE_RTOL = 1e-10


class Criterion(Enum):
    GRAM_DET_ZERO = "det(B+B) = 0"
    RANK_DEFICIENT = "rank(B) < N_g"
    COUNTING = "N_e < N_g"


@dataclass(frozen=True)
class ExistenceVerdict:
    exists: bool
    rank_b: int
    dark_dimension: int
    criteria_fired: tuple[Criterion, ...]
    det_a_nonzero: bool | None


class SingularExcitedBlockError(ArithmeticError):
    """det(A) = 0: the block-determinant factorization does not apply."""


def _exact_b(blocks: BlockHamiltonian) -> list[list[ExactComplex]]:
    return [list(row) for row in blocks.b]


def rank_b(blocks: BlockHamiltonian) -> int:
    """Rank of the excited-ground coupling block."""
    if blocks.regime is Regime.EXACT:
        return linalg.rank(_exact_b(blocks))
    if blocks.n_excited == 0 or blocks.n_ground == 0:
        return 0
    return numeric.rank_by_singular_values(blocks.b, SINGULAR_VALUE_RTOL)


def gram_determinant(blocks: BlockHamiltonian) -> Scalar:
    """det(B+B); zero exactly when a dark state exists."""
    if blocks.regime is Regime.EXACT:
        b = _exact_b(blocks)
        if not b:
            # B has no rows: B+B is the n_ground x n_ground zero matrix.
            return ExactComplex.of(1) if blocks.n_ground == 0 else ExactComplex.of(0)
        return linalg.det(linalg.gram(b))
    b = numeric.as_complex_array(blocks.b)
    if b.size == 0:
        return 1.0 + 0j if blocks.n_ground == 0 else 0j
    return numeric.det_lu(b.conj().T @ b)


def counting_criterion(classification: Classification) -> bool:
    """True when fewer connected excited levels than ground levels.

    Sufficient for a dark state to exist, never necessary.
    """
    return classification.n_connected < classification.n_ground


def det_a(blocks: BlockHamiltonian) -> Scalar:
    """Determinant of the excited block (1 for an empty block)."""
    if blocks.regime is Regime.EXACT:
        return linalg.det([list(row) for row in blocks.a])
    return numeric.det_lu(blocks.a)


@dataclass(frozen=True)
class DeterminantIdentity:
    """Both sides of the block-determinant factorization, evaluated exactly.

    ``det_h == schur_product`` holds whenever det(A) != 0.  The Gram form
    ``det_h == (-1)**n_ground * gram_det`` additionally requires the
    coupling block to be square (N_g excited rows) or rank-deficient; the
    flag records whether it held for this matrix.
    """

    det_h: Scalar
    det_a: Scalar
    schur_product: Scalar
    gram_det: Scalar
    sign: int
    equal: bool
    gram_form_equal: bool


def determinant_identity(blocks: BlockHamiltonian) -> DeterminantIdentity:
    """Evaluate det H against det(A) det(-B+ A^-1 B) and the Gram form.

    Raises :class:`SingularExcitedBlockError` when det(A) = 0.  Exact
    regime only: the comparisons are exact equalities.
    """
    if blocks.regime is not Regime.EXACT:
        raise ValueError("determinant identity is checked in the exact regime")
    a = [list(row) for row in blocks.a]
    b = _exact_b(blocks)
    d_a = linalg.det(a)
    if d_a.is_zero:
        raise SingularExcitedBlockError("det(A) = 0")
    d_h = linalg.det([list(row) for row in full_hamiltonian(blocks)])
    n_g = blocks.n_ground
    if n_g == 0:
        schur = d_a
        gram_det = ExactComplex.of(1)
    else:
        a_inv_b = linalg.matmul(linalg.inverse(a), b) if a else [[] for _ in b]
        core = linalg.matmul(linalg.dagger(b), a_inv_b) if b else linalg.zeros(n_g, n_g)
        neg_core = [[-x for x in row] for row in core] if core else linalg.zeros(n_g, n_g)
        schur = d_a * linalg.det(neg_core)
        gram_det = linalg.det(linalg.gram(b))
    sign = -1 if n_g % 2 else 1
    return DeterminantIdentity(
        det_h=d_h,
        det_a=d_a,
        schur_product=schur,
        gram_det=gram_det,
        sign=sign,
        equal=(d_h == schur),
        gram_form_equal=(d_h == sign * gram_det),
    )


def _det_a_nonzero(blocks: BlockHamiltonian) -> bool:
    if blocks.regime is Regime.EXACT:
        value = det_a(blocks)
        return not value.is_zero
    if blocks.n_excited == 0:
        return True
    sigma, _ = numeric.singular_triplets(blocks.a)
    return bool(sigma[0] > 0.0 and sigma[-1] > SINGULAR_VALUE_RTOL * sigma[0])


def analyze(blocks: BlockHamiltonian, classification: Classification) -> ExistenceVerdict:
    """Full existence verdict from the coupling block."""
    r = rank_b(blocks)
    n_g = blocks.n_ground
    dim = n_g - r
    fired = []
    if counting_criterion(classification):
        fired.append(Criterion.COUNTING)
    if r < n_g:
        fired.append(Criterion.RANK_DEFICIENT)
    if blocks.regime is Regime.EXACT:
        gram_zero = gram_determinant(blocks).is_zero
    else:
        # det(B+B) is the product of squared singular values, so at float
        # precision "zero determinant" and "a singular value below the
        # rank threshold" are the same statement.
        gram_zero = r < n_g
    if gram_zero:
        fired.append(Criterion.GRAM_DET_ZERO)
    return ExistenceVerdict(
        exists=dim >= 1,
        rank_b=r,
        dark_dimension=dim,
        criteria_fired=tuple(fired),
        det_a_nonzero=_det_a_nonzero(blocks),
    )
