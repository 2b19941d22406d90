"""Explicit values for the constant hierarchy used by the lemma engines."""

from __future__ import annotations

from dataclasses import asdict, dataclass

__all__ = ["Params"]


@dataclass(frozen=True)
class Params:
    """Desk-scale constants.

    ``alpha`` is the extremality parameter, ``beta`` the splitting slack,
    ``gamma`` the degree floor ratio for the bipartite halves, ``lam`` the
    absorber budget ratio and ``c`` the density used by the dense-pair lemma.
    """

    alpha: float = 0.3
    beta: float = 0.1
    gamma: float = 0.05
    lam: float = 0.15
    c: float = 0.5

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not 0 < value < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")

    def as_dict(self) -> dict[str, float]:
        return asdict(self)
