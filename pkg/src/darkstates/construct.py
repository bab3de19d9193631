"""Explicit dark-state construction from the coupling block.

Dark states are exactly the ground-manifold vectors orthogonal to the
b-vectors, the conjugated nonzero rows of B.  With N_b independent
b-vectors and N_b < N_g, a dark state is the formal determinant of the
matrix whose first row is the kept ground basis kets and whose remaining
rows are the b-vector components on the kept columns (a generalized cross
product); expanding along the first row gives the amplitudes directly.

Keeping the echelon pivot columns plus one extra non-pivot column always
preserves row independence, and ranging the extra column over all
non-pivot columns yields a basis of the whole dark subspace.  An exact
null-space routine provides the same subspace through an independent
elimination path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import linalg, numeric
from .blocks import BlockHamiltonian
from .network import Classification
from .scalars import EC_ZERO, ExactComplex, Regime, Scalar


class Method(Enum):
    CROSS_PRODUCT = "cross-product"
    PROJECTED_CROSS_PRODUCT = "projected-cross-product"
    NULL_SPACE = "null-space"


class Strategy(Enum):
    FIRST = "first"
    ALL = "all"


class NoDarkStateError(ValueError):
    """Requested a dark state but the b-vectors already span the ground manifold."""


class RankDropError(ValueError):
    """The kept columns break the independence of the b-vector rows."""


class IndependenceLostError(ValueError):
    """Deleting the requested columns collapses the b-vector rows."""


@dataclass(frozen=True)
class GroundVector:
    """Amplitudes over the ground basis (ascending ground ids).

    Exact vectors are content-reduced (primitive integer form) with the
    exact squared norm carried separately; float vectors are unit-norm
    with the first significant amplitude rotated real positive.
    """

    amplitudes: tuple[Scalar, ...]
    norm_sq: Fraction | float


@dataclass(frozen=True)
class BVectorSet:
    """Independent b-vectors plus the block geometry they came from."""

    vectors: tuple[GroundVector, ...]
    independent_count: int
    ground_ids: tuple[int, ...]
    n_excited: int
    regime: Regime


@dataclass(frozen=True)
class DarkStateResult:
    ground_part: GroundVector
    full_vector: tuple[Scalar, ...]
    method: Method
    kept_columns: tuple[int, ...]


def _ground_vector_exact(amplitudes) -> GroundVector:
    reduced = linalg.content_reduce(list(amplitudes))
    return GroundVector(tuple(reduced), linalg.norm_sq(reduced))


def _ground_vector_float(amplitudes) -> GroundVector:
    v = numeric.as_complex_vector(amplitudes)
    norm = float(np.linalg.norm(v))
    if norm > 0:
        v = v / norm
        for x in v:
            if abs(x) > 1e-12:
                v = v * (x.conjugate() / abs(x))
                break
    return GroundVector(tuple(complex(z) for z in v), 1.0 if norm > 0 else 0.0)


def _make_ground_vector(amplitudes, regime: Regime) -> GroundVector:
    if regime is Regime.EXACT:
        return _ground_vector_exact(amplitudes)
    return _ground_vector_float(amplitudes)


def b_vectors(blocks: BlockHamiltonian) -> BVectorSet:
    """Conjugated nonzero rows of B, reduced to an independent echelon set.

    Row echelon reduction preserves the span (any invertible recombination
    yields the same dark states), so the returned vectors are what the
    cross product consumes.  B = 0 gives an empty set; every ground vector
    is then dark.
    """
    regime = blocks.regime
    if regime is Regime.EXACT:
        conj_rows = [
            [x.conjugate() for x in row]
            for row in blocks.b
            if not all(x.is_zero for x in row)
        ]
        rows, _ = linalg.row_echelon(conj_rows) if conj_rows else ([], [])
        vectors = tuple(GroundVector(tuple(r), linalg.norm_sq(r)) for r in rows)
    else:
        arr = numeric.as_complex_array(blocks.b)
        if arr.size:
            scale = float(np.max(np.abs(arr))) or 1.0
            nonzero = arr.conj()[np.max(np.abs(arr), axis=1) > 1e-12 * scale]
            rows, _ = numeric.row_echelon_float(nonzero)
        else:
            rows = np.zeros((0, blocks.n_ground), np.complex128)
        vectors = tuple(
            GroundVector(tuple(complex(x) for x in r), float(np.linalg.norm(r)) ** 2)
            for r in rows
        )
    return BVectorSet(
        vectors=vectors,
        independent_count=len(vectors),
        ground_ids=blocks.ground_basis,
        n_excited=blocks.n_excited,
        regime=regime,
    )


def _numeric_rows(bset: BVectorSet) -> list[list[Scalar]]:
    """Rows of the cross-product matrix: conjugates of the b-vector amplitudes."""
    return [[x.conjugate() for x in gv.amplitudes] for gv in bset.vectors]


def _restricted(rows, positions):
    return [[row[p] for p in positions] for row in rows]


def _rank_of(rows, n_cols: int, regime: Regime) -> int:
    if regime is Regime.EXACT:
        return linalg.rank(rows) if rows else 0
    if not rows:
        return 0
    return numeric.rank_by_singular_values(rows)


def _minor_det(rows, skip_col: int, regime: Regime) -> Scalar:
    minor = [[x for j, x in enumerate(row) if j != skip_col] for row in rows]
    if regime is Regime.EXACT:
        return linalg.det(minor)
    return numeric.det_lu(minor) if minor else 1.0 + 0j


def _cross_product(
    bset: BVectorSet, kept_positions: list[int], method: Method
) -> DarkStateResult:
    """Shared engine for the plain and projected cross-product paths."""
    n_b = bset.independent_count
    n_g = len(bset.ground_ids)
    regime = bset.regime
    rows = _restricted(_numeric_rows(bset), kept_positions)
    if _rank_of(rows, n_b + 1, regime) != n_b:
        if method is Method.PROJECTED_CROSS_PRODUCT:
            raise IndependenceLostError(
                "deleted columns collapse the b-vector rows; pick different columns"
            )
        raise RankDropError("kept columns break b-vector independence; reselect")
    zero: Scalar = EC_ZERO if regime is Regime.EXACT else 0j
    amplitudes: list[Scalar] = [zero] * n_g
    for idx, pos in enumerate(kept_positions):
        cofactor = _minor_det(rows, idx, regime)
        amplitudes[pos] = -cofactor if idx % 2 else cofactor
    ground = _make_ground_vector(amplitudes, regime)
    kept_ids = tuple(bset.ground_ids[p] for p in kept_positions)
    full = (zero,) * bset.n_excited + ground.amplitudes
    return DarkStateResult(
        ground_part=ground, full_vector=full, method=method, kept_columns=kept_ids
    )


def cross_product_dark(bset: BVectorSet, kept_columns) -> DarkStateResult:
    """Dark state from the generalized cross product on the kept columns.

    ``kept_columns`` are ground level ids, N_b + 1 of them, and the
    b-vector rows restricted to them must keep rank N_b.  The resulting
    amplitude on the k-th kept column is the signed minor obtained by
    deleting that column (cofactor expansion along the symbolic first
    row); deleted columns get amplitude zero.
    """
    n_b, n_g = bset.independent_count, len(bset.ground_ids)
    if n_b >= n_g:
        raise NoDarkStateError(f"{n_b} independent b-vectors span all {n_g} ground levels")
    kept = list(kept_columns)
    if len(kept) != n_b + 1:
        raise ValueError(f"need {n_b + 1} kept columns, got {len(kept)}")
    pos = {i: p for p, i in enumerate(bset.ground_ids)}
    try:
        kept_positions = [pos[c] for c in kept]
    except KeyError as exc:
        raise ValueError(f"unknown ground level id {exc.args[0]}") from exc
    return _cross_product(bset, kept_positions, Method.CROSS_PRODUCT)


def select_kept_columns(bset: BVectorSet, strategy: Strategy = Strategy.FIRST) -> list[tuple[int, ...]]:
    """Valid kept-column choices: echelon pivot columns plus one extra.

    The pivot columns alone already witness rank N_b, so every non-pivot
    completion is valid; the cross products over all of them span the full
    dark subspace.  FIRST returns only the lexicographically smallest
    choice.  An empty list means N_b = N_g (no dark state).
    """
    n_b, n_g = bset.independent_count, len(bset.ground_ids)
    if n_b >= n_g:
        return []
    rows = _numeric_rows(bset)
    if bset.regime is Regime.EXACT:
        _, pivot_cols = linalg.row_echelon(rows) if rows else ([], [])
    else:
        _, pivot_cols = numeric.row_echelon_float(rows) if rows else (None, [])
    non_pivot = [c for c in range(n_g) if c not in pivot_cols]
    choices = []
    for extra in non_pivot:
        positions = sorted(pivot_cols + [extra])
        choices.append(tuple(bset.ground_ids[p] for p in positions))
    if strategy is Strategy.FIRST:
        return choices[:1]
    return choices


def projected_cross_product(bset: BVectorSet, delete_set) -> DarkStateResult:
    """Cross product after projecting out the given ground basis kets.

    Projecting onto the complement of coordinate kets is exactly column
    deletion, so this reduces to the plain cross product on the kept
    columns; it exists separately because the deleted set is caller-chosen
    and may destroy row independence (:class:`IndependenceLostError`).
    """
    n_b, n_g = bset.independent_count, len(bset.ground_ids)
    deleted = set(delete_set)
    unknown = deleted - set(bset.ground_ids)
    if unknown:
        raise ValueError(f"unknown ground level ids {sorted(unknown)}")
    if len(deleted) != n_g - n_b - 1:
        raise ValueError(
            f"must delete exactly {n_g - n_b - 1} columns, got {len(deleted)}"
        )
    kept_positions = [p for p, i in enumerate(bset.ground_ids) if i not in deleted]
    return _cross_product(bset, kept_positions, Method.PROJECTED_CROSS_PRODUCT)


def null_space(blocks: BlockHamiltonian) -> list[GroundVector]:
    """Basis of ``{v : B v = 0}``: the dark subspace in ground coordinates.

    Exact regime: fraction-free elimination with back substitution.  Float
    regime: right-singular vectors whose singular values fall below the
    rank threshold.  The empty list means no dark state.
    """
    n_g = blocks.n_ground
    if blocks.regime is Regime.EXACT:
        rows = [list(row) for row in blocks.b]
        basis = linalg.null_space(rows, n_cols=n_g)
        return [GroundVector(tuple(v), linalg.norm_sq(v)) for v in basis]
    b = numeric.as_complex_array(blocks.b)
    if b.size == 0:
        eye = np.eye(n_g, dtype=np.complex128)
        return [_ground_vector_float(eye[:, j]) for j in range(n_g)]
    sigma, v = numeric.singular_triplets(b)
    keep = sigma <= (sigma[0] * 1e-10 if sigma.size and sigma[0] > 0 else 0.0)
    return [_ground_vector_float(v[:, j]) for j in range(len(sigma)) if keep[j]]


def embed(ground: GroundVector, classification: Classification) -> tuple[Scalar, ...]:
    """Lift a ground-manifold vector to the full block basis.

    Excited amplitudes are exactly zero; ground amplitudes follow in
    ground-basis order.
    """
    n_excited = classification.n_connected + classification.n_disconnected
    exact = ground.amplitudes and isinstance(ground.amplitudes[0], ExactComplex)
    zero: Scalar = EC_ZERO if exact else 0j
    return (zero,) * n_excited + tuple(ground.amplitudes)


def dark_states(
    blocks: BlockHamiltonian, strategy: Strategy = Strategy.FIRST
) -> list[DarkStateResult]:
    """All dark states reachable by the cross-product route.

    Returns an empty list when rank(B) = N_g.  With strategy ALL the
    results span the entire dark subspace; FIRST returns one
    representative.
    """
    bset = b_vectors(blocks)
    if bset.independent_count >= len(bset.ground_ids):
        return []
    return [cross_product_dark(bset, kept) for kept in select_kept_columns(bset, strategy)]


def null_space_dark_states(blocks: BlockHamiltonian) -> list[DarkStateResult]:
    """Dark states via the exact null-space fallback route."""
    results = []
    zero: Scalar = EC_ZERO if blocks.regime is Regime.EXACT else 0j
    for gv in null_space(blocks):
        full = (zero,) * blocks.n_excited + tuple(gv.amplitudes)
        results.append(
            DarkStateResult(
                ground_part=gv,
                full_vector=full,
                method=Method.NULL_SPACE,
                kept_columns=blocks.ground_basis,
            )
        )
    return results
