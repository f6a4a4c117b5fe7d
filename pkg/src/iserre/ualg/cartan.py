from __future__ import annotations

from dataclasses import dataclass

from ..qcomb import QBase


class InvalidCartan(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    """Rank-2 Cartan data: a12, a21 <= 0 with eps1*a12 = eps2*a21."""

    eps1: int = 1
    eps2: int = 1
    a12: int = -1
    a21: int | None = None

    def __post_init__(self):
        if self.a21 is None:
            if (self.eps1 * self.a12) % self.eps2:
                raise InvalidCartan("cannot symmetrize")
            object.__setattr__(self, "a21", self.eps1 * self.a12 // self.eps2)
        if self.eps1 < 1 or self.eps2 < 1:
            raise InvalidCartan("eps must be positive")
        if self.a12 > 0 or self.a21 > 0:
            raise InvalidCartan("off-diagonal entries must be <= 0")
        if (self.a12 == 0) != (self.a21 == 0):
            raise InvalidCartan("a12 = 0 iff a21 = 0")
        if self.eps1 * self.a12 != self.eps2 * self.a21:
            raise InvalidCartan("eps1*a12 must equal eps2*a21")

    @classmethod
    def symmetric(cls, a12: int) -> "CartanData":
        return cls(1, 1, a12, a12)

    @property
    def serre_degree(self) -> int:
        """M = 1 - a12."""
        return 1 - self.a12

    @property
    def base1(self) -> QBase:
        return QBase(self.eps1, False)

    @property
    def base1_sq(self) -> QBase:
        return QBase(self.eps1, True)
