# weyl/frames.py
# The three coordinate frames of the KvN oscillator and their commutation
# tables. Variables are listed in normal order; every frame consists of two
# conjugate pairs (position-like, momentum-like) with [position, momentum] = i
# and all other generator pairs commuting.

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from weyl.coefficients import Coefficient


class Frame(str, Enum):
    KVN = "qQpP"
    SPLIT = "frame12"
    LIOUVILLE = "xlambda"

    @property
    def variables(self) -> tuple[str, ...]:
        return _LAYOUT[self][0]

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """(position index, momentum index) of each conjugate pair."""
        return _LAYOUT[self][1]

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"{name!r} is not a variable of frame {self.value}") from None


_LAYOUT: dict[Frame, tuple[tuple[str, ...], tuple[tuple[int, int], ...]]] = {
    # q, Q, p, P with [q, P] = i and [Q, p] = i
    Frame.KVN: (("q", "Q", "p", "P"), ((0, 3), (1, 2))),
    Frame.SPLIT: (("q1", "p1", "q2", "p2"), ((0, 1), (2, 3))),
    Frame.LIOUVILLE: (("x", "p", "lambda_x", "lambda_p"), ((0, 2), (1, 3))),
}

ALL_VARIABLES: frozenset[str] = frozenset(name for frame in Frame for name in frame.variables)


@dataclass(frozen=True, slots=True)
class CanonicalVariable:
    frame: Frame
    label: str

    def __post_init__(self) -> None:
        self.frame.index(self.label)

    @property
    def index(self) -> int:
        return self.frame.index(self.label)


def frames_containing(name: str) -> list[Frame]:
    return [frame for frame in Frame if name in frame.variables]


def commutation_value(frame: Frame, left: int, right: int) -> Coefficient:
    """[v_left, v_right] for two generators of ``frame``."""
    for position, momentum in frame.pairs:
        if (left, right) == (position, momentum):
            return Coefficient.imaginary_unit()
        if (left, right) == (momentum, position):
            return -Coefficient.imaginary_unit()
    return Coefficient.zero()
