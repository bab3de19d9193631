"""Rotating-frame solver: per-level frequency shifts and detunings.

Transitions form a graph whose edges carry the potential differences
``drive = eps_to - eps_from``.  The solver propagates eps over a spanning
forest, demands exact consistency on every remaining edge (a drive set
that closes a cycle with the wrong sum admits no frame), and pins the
gauge so that every ground level ends up at the common energy E0, i.e.
with detuning exactly zero.  Detunings are ``E - eps - E0``.

Components without any ground level cannot host dark states, but they are
still assigned a deterministic frame (anchored at their lowest id).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .network import Classification, LevelNetwork, RealScalar, Role, validate_network

#: Relative tolerance for drive-consistency checks in the float regime.
FLOAT_CONSISTENCY_RTOL = 1e-9


class FrameError(ValueError):
    """No valid rotating frame exists for the given drives."""


class CycleInconsistentError(FrameError):
    def __init__(self, edge: tuple[int, int], mismatch):
        super().__init__(
            f"drive on {edge[0]}->{edge[1]} is inconsistent with the rest "
            f"of its cycle (mismatch {mismatch})"
        )
        self.edge = edge
        self.mismatch = mismatch


class GroundDegeneracyError(FrameError):
    def __init__(self, pair: tuple[int, int], mismatch):
        super().__init__(
            f"ground levels {pair[0]} and {pair[1]} are forced to different "
            f"frame energies (mismatch {mismatch}); no degenerate ground "
            f"manifold exists for these drives"
        )
        self.pair = pair
        self.mismatch = mismatch


class NoGroundLevelError(FrameError):
    def __init__(self) -> None:
        super().__init__("network has no ground level; no ground manifold to build")


@dataclass(frozen=True)
class RotatingFrame:
    """Frequency shifts eps per level, the common ground energy, detunings."""

    epsilon: dict[int, RealScalar]
    ground_energy: RealScalar
    detuning: dict[int, RealScalar]


def _is_exact(network: LevelNetwork) -> bool:
    return any(isinstance(lv.energy, Fraction) for lv in network.levels) or not network.levels


def _mismatch_ok(mismatch, reference, exact: bool) -> bool:
    if exact:
        return mismatch == 0
    return abs(mismatch) <= FLOAT_CONSISTENCY_RTOL * max(1.0, abs(reference))


def solve_frame(
    network: LevelNetwork, classification: Classification | None = None
) -> RotatingFrame:
    """Solve for frequency shifts that remove all drive time dependence.

    Raises :class:`NoGroundLevelError`, :class:`CycleInconsistentError` or
    :class:`GroundDegeneracyError` when no frame exists.
    """
    validate_network(network)
    del classification  # roles carry everything the solver needs
    levels = {lv.id: lv for lv in network.levels}
    ground_ids = sorted(i for i, lv in levels.items() if lv.role is Role.GROUND)
    if not ground_ids:
        raise NoGroundLevelError()
    exact = _is_exact(network)
    zero: RealScalar = Fraction(0) if exact else 0.0

    adjacency: dict[int, list[tuple[int, RealScalar]]] = {i: [] for i in levels}
    for t in network.transitions:
        adjacency[t.from_id].append((t.to_id, t.drive_frequency))
        adjacency[t.to_id].append((t.from_id, -t.drive_frequency))

    epsilon: dict[int, RealScalar] = {}
    component_of: dict[int, int] = {}
    component_grounds: dict[int, list[int]] = {}
    comp_index = 0
    for seed in ground_ids + sorted(set(levels) - set(ground_ids)):
        if seed in component_of:
            continue
        # Collect the whole component, then anchor at its lowest ground id
        # (or lowest id if it has no ground level).
        stack = [seed]
        members = []
        seen = {seed}
        while stack:
            node = stack.pop()
            members.append(node)
            for other, _ in adjacency[node]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        grounds_here = sorted(i for i in members if levels[i].role is Role.GROUND)
        anchor = grounds_here[0] if grounds_here else min(members)
        epsilon[anchor] = zero
        stack = [anchor]
        while stack:
            node = stack.pop()
            component_of[node] = comp_index
            for other, step in adjacency[node]:
                if other not in epsilon:
                    epsilon[other] = epsilon[node] + step
                    stack.append(other)
        component_grounds[comp_index] = grounds_here
        comp_index += 1

    # Every edge (tree or not) must satisfy drive = eps_to - eps_from.
    for t in network.transitions:
        mismatch = t.drive_frequency - (epsilon[t.to_id] - epsilon[t.from_id])
        if not _mismatch_ok(mismatch, t.drive_frequency, exact):
            raise CycleInconsistentError((t.from_id, t.to_id), mismatch)

    # All ground levels of one component must share E - eps.
    for grounds_here in component_grounds.values():
        if not grounds_here:
            continue
        first = grounds_here[0]
        ref = levels[first].energy - epsilon[first]
        for g in grounds_here[1:]:
            mismatch = (levels[g].energy - epsilon[g]) - ref
            if not _mismatch_ok(mismatch, ref, exact):
                raise GroundDegeneracyError((first, g), mismatch)

    # Pin the global zero at the lowest-id ground level, then shift every
    # other ground-bearing component so its grounds land on E0 too.
    g_star = ground_ids[0]
    ground_energy = levels[g_star].energy - epsilon[g_star]
    for comp, grounds_here in component_grounds.items():
        if not grounds_here:
            continue
        anchor = grounds_here[0]
        shift = (levels[anchor].energy - epsilon[anchor]) - ground_energy
        if shift != 0:
            for i in component_of:
                if component_of[i] == comp:
                    epsilon[i] = epsilon[i] + shift

    detuning: dict[int, RealScalar] = {}
    for i, lv in levels.items():
        if lv.role is Role.GROUND:
            detuning[i] = zero
        else:
            detuning[i] = lv.energy - epsilon[i] - ground_energy
    epsilon = {i: epsilon[i] for i in sorted(epsilon)}
    detuning = {i: detuning[i] for i in sorted(detuning)}
    return RotatingFrame(epsilon=epsilon, ground_energy=ground_energy, detuning=detuning)


def frame_residual(network: LevelNetwork, frame: RotatingFrame):
    """Largest drive mismatch ``|drive - (eps_to - eps_from)|`` over transitions.

    Zero means the phase-rotated Hamiltonian is genuinely time-independent;
    for a frame returned by :func:`solve_frame` in the exact regime this is
    exactly zero.
    """
    exact = _is_exact(network)
    worst: RealScalar = Fraction(0) if exact else 0.0
    for t in network.transitions:
        mismatch = abs(
            t.drive_frequency - (frame.epsilon[t.to_id] - frame.epsilon[t.from_id])
        )
        if mismatch > worst:
            worst = mismatch
    return worst
