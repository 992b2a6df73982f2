"""Permutations on ``range(degree)``.

Composition convention, used everywhere in the package: ``f * g`` is
``f ∘ g``, i.e. ``(f * g)(x) == f(g(x))`` -- the right factor acts first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotAPermutation


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise NotAPermutation("degree must be positive")
        if sorted(self.images) != list(range(n)):
            raise NotAPermutation(f"{list(self.images)} is not a bijection on [0, {n})")

    @classmethod
    def from_array(cls, images: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) for x in images))

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise NotAPermutation("degree mismatch in composition")
        mine = self.images
        return Permutation(tuple(mine[x] for x in other.images))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, x in enumerate(self.images):
            out[x] = i
        return Permutation(tuple(out))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)


def compose(f: Permutation, g: Permutation) -> Permutation:
    """``f ∘ g``."""
    return f * g
