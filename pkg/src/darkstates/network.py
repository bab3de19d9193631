"""Multi-level energy networks: levels, driven transitions, validation.

A network is a set of levels (ground or excited, with bare energies) and
directed driven transitions.  A transition recorded as ``from -> to`` with
amplitude ``omega`` contributes ``omega |to><from|`` plus its Hermitian
conjugate to the Hamiltonian, and its drive frequency must satisfy
``drive = eps_to - eps_from`` in the rotating frame.

Ground-ground transitions are forbidden; ground levels form the manifold
dark states live in.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .scalars import ExactComplex

RealScalar = Union[Fraction, float]
AmplitudeScalar = Union[ExactComplex, complex]


class Role(Enum):
    GROUND = "ground"
    EXCITED = "excited"


class Rule(Enum):
    """Structural rules checked by :func:`validate_network`."""

    DUPLICATE_ID = "duplicate-id"
    NON_CONTIGUOUS_IDS = "non-contiguous-ids"
    SELF_LOOP = "self-loop"
    DANGLING_TRANSITION = "dangling-transition"
    DUPLICATE_PAIR = "duplicate-pair"
    GROUND_GROUND_TRANSITION = "ground-ground-transition"
    ZERO_AMPLITUDE = "zero-amplitude"


class ValidationError(ValueError):
    """First violated structural rule, with the offending level ids."""

    def __init__(self, rule: Rule, ids: tuple[int, ...], message: str):
        super().__init__(f"{rule.value}: {message}")
        self.rule = rule
        self.ids = ids


@dataclass(frozen=True, slots=True)
class Level:
    """One energy level: 1-based id, bare energy (angular frequency), role."""

    id: int
    energy: RealScalar
    role: Role


@dataclass(frozen=True, slots=True)
class Transition:
    """Directed driven coupling ``from_id -> to_id``.

    ``amplitude`` multiplies ``|to><from|``; ``drive_frequency`` is the
    frequency of the radiation driving the pair.
    """

    from_id: int
    to_id: int
    amplitude: AmplitudeScalar
    drive_frequency: RealScalar


@dataclass(frozen=True)
class LevelNetwork:
    levels: tuple[Level, ...]
    transitions: tuple[Transition, ...]

    @property
    def n_levels(self) -> int:
        return len(self.levels)

    def level(self, level_id: int) -> Level:
        for lv in self.levels:
            if lv.id == level_id:
                return lv
        raise KeyError(level_id)

    def role_of(self, level_id: int) -> Role:
        return self.level(level_id).role


@dataclass(frozen=True)
class Classification:
    """Partition of level ids into ground / connected-excited / disconnected-excited.

    An excited level is connected when it has at least one direct
    transition to a ground level; multi-hop paths do not count.  Each list
    is in ascending id order.
    """

    ground_ids: tuple[int, ...]
    connected_excited_ids: tuple[int, ...]
    disconnected_excited_ids: tuple[int, ...]

    @property
    def n_ground(self) -> int:
        return len(self.ground_ids)

    @property
    def n_connected(self) -> int:
        return len(self.connected_excited_ids)

    @property
    def n_disconnected(self) -> int:
        return len(self.disconnected_excited_ids)

    @property
    def n_levels(self) -> int:
        return self.n_ground + self.n_connected + self.n_disconnected

    @property
    def excited_ids(self) -> tuple[int, ...]:
        """Excited ids in block-basis order: disconnected first, then connected.

        This puts the all-zero coupling rows of B on top, so the nonzero
        coupling block sits directly above the ground columns.
        """
        return self.disconnected_excited_ids + self.connected_excited_ids

    @property
    def basis(self) -> tuple[int, ...]:
        """Full block-basis order: excited ids followed by ground ids."""
        return self.excited_ids + self.ground_ids


def _is_zero_amplitude(amp: AmplitudeScalar) -> bool:
    if isinstance(amp, ExactComplex):
        return amp.is_zero
    return amp == 0


def validate_network(network: LevelNetwork) -> None:
    """Raise :class:`ValidationError` on the first violated rule.

    Checks, in order: unique ids, contiguous 1..N ids, then per transition
    (input order): no self loops, endpoints exist, at most one transition
    per unordered pair, no ground-ground coupling, nonzero amplitude.
    """
    ids = [lv.id for lv in network.levels]
    seen: set[int] = set()
    for i in ids:
        if i in seen:
            raise ValidationError(Rule.DUPLICATE_ID, (i,), f"level id {i} repeats")
        seen.add(i)
    n = len(ids)
    if seen != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - seen)
        raise ValidationError(
            Rule.NON_CONTIGUOUS_IDS,
            tuple(sorted(seen)),
            f"ids must form 1..{n}; missing {missing}",
        )
    role = {lv.id: lv.role for lv in network.levels}
    pairs: set[frozenset[int]] = set()
    for t in network.transitions:
        if t.from_id == t.to_id:
            raise ValidationError(
                Rule.SELF_LOOP, (t.from_id,), f"transition {t.from_id}->{t.to_id}"
            )
        for endpoint in (t.from_id, t.to_id):
            if endpoint not in role:
                raise ValidationError(
                    Rule.DANGLING_TRANSITION,
                    (t.from_id, t.to_id),
                    f"transition references unknown level {endpoint}",
                )
        pair = frozenset((t.from_id, t.to_id))
        if pair in pairs:
            raise ValidationError(
                Rule.DUPLICATE_PAIR,
                (t.from_id, t.to_id),
                f"second transition for pair {t.from_id}<->{t.to_id}",
            )
        pairs.add(pair)
        if role[t.from_id] is Role.GROUND and role[t.to_id] is Role.GROUND:
            raise ValidationError(
                Rule.GROUND_GROUND_TRANSITION,
                (t.from_id, t.to_id),
                f"ground levels {t.from_id} and {t.to_id} may not couple",
            )
        if _is_zero_amplitude(t.amplitude):
            raise ValidationError(
                Rule.ZERO_AMPLITUDE,
                (t.from_id, t.to_id),
                f"transition {t.from_id}->{t.to_id} has zero amplitude",
            )


def classify(network: LevelNetwork) -> Classification:
    """Partition levels; validates the network first."""
    validate_network(network)
    role = {lv.id: lv.role for lv in network.levels}
    touches_ground: set[int] = set()
    for t in network.transitions:
        a, b = t.from_id, t.to_id
        if role[a] is Role.GROUND and role[b] is Role.EXCITED:
            touches_ground.add(b)
        elif role[b] is Role.GROUND and role[a] is Role.EXCITED:
            touches_ground.add(a)
    ground = tuple(sorted(i for i, r in role.items() if r is Role.GROUND))
    connected = tuple(
        sorted(i for i, r in role.items() if r is Role.EXCITED and i in touches_ground)
    )
    disconnected = tuple(
        sorted(
            i for i, r in role.items() if r is Role.EXCITED and i not in touches_ground
        )
    )
    return Classification(ground, connected, disconnected)
