"""Block form of the frame-transformed Hamiltonian.

The basis is reordered so ground levels come last (disconnected excited,
then connected excited, then ground).  In that order the Hamiltonian is

    H = [[A, B],
         [B+, 0]]

where A is the Hermitian excited block (detunings on the diagonal,
excited-excited couplings off it) and B holds every excited-ground
coupling.  Rows of B belonging to disconnected excited levels are zero by
construction, so B stacks as [0; Bt] with the nonzero block at the bottom.
The ground-ground block is identically zero and never stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .network import Classification, LevelNetwork, Role
from .rotating_frame import RotatingFrame
from .scalars import EC_ZERO, ExactComplex, Regime, Scalar

MatrixRows = tuple[tuple[Scalar, ...], ...]


@dataclass(frozen=True)
class BlockHamiltonian:
    basis: tuple[int, ...]
    a: MatrixRows
    b: MatrixRows
    regime: Regime

    @property
    def n_excited(self) -> int:
        return len(self.a)

    @property
    def n_ground(self) -> int:
        return len(self.basis) - len(self.a)

    @property
    def n_levels(self) -> int:
        return len(self.basis)

    @property
    def excited_basis(self) -> tuple[int, ...]:
        return self.basis[: self.n_excited]

    @property
    def ground_basis(self) -> tuple[int, ...]:
        return self.basis[self.n_excited :]


def _to_exact_amplitude(value) -> ExactComplex:
    if isinstance(value, ExactComplex):
        return value
    raise TypeError(
        f"exact regime requires exact amplitudes, got {type(value).__name__}; "
        "parse or build the network in the exact regime"
    )


def _to_exact_real(value) -> ExactComplex:
    if isinstance(value, (Fraction, int)):
        return ExactComplex(Fraction(value))
    raise TypeError(
        f"exact regime requires exact energies, got {type(value).__name__}"
    )


def _to_float_amplitude(value) -> complex:
    return complex(value)


def _to_float_real(value) -> complex:
    return complex(float(value))


def assemble(
    network: LevelNetwork,
    classification: Classification,
    frame: RotatingFrame,
    regime: Regime = Regime.EXACT,
) -> BlockHamiltonian:
    """Materialize the A and B submatrices in the block basis.

    A transition ``from -> to`` with amplitude ``omega`` sets the matrix
    element ``<to|H|from> = omega`` (and its conjugate on the mirror
    entry), so B entries equal the recorded amplitude when the transition
    points ground -> excited and its conjugate otherwise.

    The float regime accepts exact inputs and rounds them; the exact
    regime refuses float inputs rather than laundering them.
    """
    if regime is Regime.EXACT:
        amp, real = _to_exact_amplitude, _to_exact_real
        zero: Scalar = EC_ZERO
    else:
        amp, real = _to_float_amplitude, _to_float_real
        zero = 0j

    excited = classification.excited_ids
    ground = classification.ground_ids
    exc_pos = {i: p for p, i in enumerate(excited)}
    gnd_pos = {i: p for p, i in enumerate(ground)}
    role = {lv.id: lv.role for lv in network.levels}

    a = [[zero] * len(excited) for _ in excited]
    b = [[zero] * len(ground) for _ in excited]
    for i in excited:
        a[exc_pos[i]][exc_pos[i]] = real(frame.detuning[i])
    for t in network.transitions:
        omega = amp(t.amplitude)
        f_exc = role[t.from_id] is Role.EXCITED
        t_exc = role[t.to_id] is Role.EXCITED
        if f_exc and t_exc:
            a[exc_pos[t.to_id]][exc_pos[t.from_id]] = omega
            a[exc_pos[t.from_id]][exc_pos[t.to_id]] = omega.conjugate()
        elif t_exc:
            b[exc_pos[t.to_id]][gnd_pos[t.from_id]] = omega
        else:
            b[exc_pos[t.from_id]][gnd_pos[t.to_id]] = omega.conjugate()

    return BlockHamiltonian(
        basis=excited + ground,
        a=tuple(tuple(row) for row in a),
        b=tuple(tuple(row) for row in b),
        regime=regime,
    )


def full_hamiltonian(blocks: BlockHamiltonian) -> MatrixRows:
    """The N x N matrix [[A, B], [B+, 0]]; Hermitian by construction."""
    zero: Scalar = EC_ZERO if blocks.regime is Regime.EXACT else 0j
    n_exc, n_gnd = blocks.n_excited, blocks.n_ground
    rows = []
    for i in range(n_exc):
        rows.append(tuple(blocks.a[i]) + tuple(blocks.b[i]))
    for j in range(n_gnd):
        conj_col = tuple(blocks.b[i][j].conjugate() for i in range(n_exc))
        rows.append(conj_col + (zero,) * n_gnd)
    return tuple(rows)
