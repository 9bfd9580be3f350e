"""The ring of integral modular forms, as recorded facts for cross-checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ModularFormsRing:
    """Z[c4, c6, Delta]/(c4^3 - c6^2 - 1728 Delta), topological degrees."""

    degrees: dict = field(default_factory=lambda: {"c4": 8, "c6": 12, "Delta": 24})
    relation_coefficient: int = 1728

    def __post_init__(self):
        if self.relation_coefficient != 12**3:
            raise ValueError("1728 must be 12^3")
        d = self.degrees
        if not (3 * d["c4"] == 2 * d["c6"] == d["Delta"]):
            raise ValueError("the relation c4^3 - c6^2 = 1728 Delta is not degree-homogeneous")

    @property
    def relation_degree(self) -> int:
        return 3 * self.degrees["c4"]

    def rational_poincare(self, n: int) -> int:
        """dim_Q of Q[c4, c6] in topological degree n (the rational homotopy)."""
        count = 0
        for a in range(n // self.degrees["c4"] + 1):
            rem = n - a * self.degrees["c4"]
            if rem % self.degrees["c6"] == 0:
                count += 1
        return count

    def rational_series(self, n_max: int) -> list:
        return [self.rational_poincare(n) for n in range(n_max + 1)]
