"""Frobenius action, T-fibration, fiber maps and the diffraction bijection.

Storage conventions:

* representatives are addressed by their position in ``T.reps`` (which is
  also their coset id);
* members of ``H`` are addressed by their position in ``H.members``;
* pairs ``<t, h>`` are numbered t-major: ``index = t_pos * |H| + h_pos``.

Public functions take and return global element indices.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import (
    FibrationMismatch,
    IndexOutOfRange,
    InvalidSpectrum,
    NotARepresentative,
    RequiresTransversal,
)
from .group import FiniteGroup, Subgroup
from .perm import Permutation
from .transversal import Transversal


class Spectrum(NamedTuple):
    t: int
    h: int


@dataclass(frozen=True, eq=False)
class Fibration:
    transversal: Transversal
    delta: np.ndarray  # |G| x |T|, H positions
    gamma: np.ndarray  # |G| x |T|, T positions
    hmul: np.ndarray   # |H| x |H|, H positions

    @property
    def group(self) -> FiniteGroup:
        return self.transversal.group

    @property
    def subgroup(self) -> Subgroup:
        return self.transversal.subgroup

    @property
    def reps(self) -> tuple[int, ...]:
        return self.transversal.reps

    @property
    def h_members(self) -> np.ndarray:
        return np.asarray(self.subgroup.members, dtype=np.int64)

    @property
    def t_size(self) -> int:
        return len(self.transversal.reps)

    @property
    def h_size(self) -> int:
        return self.subgroup.order

    @property
    def degree(self) -> int:
        return self.t_size * self.h_size

    @property
    def is_transversal(self) -> bool:
        return self.transversal.is_transversal

    def t_pos(self, t: int) -> int:
        try:
            return self.transversal.t_index(t)
        except (KeyError, IndexError):
            raise NotARepresentative(f"{t} is not a representative") from None

    def h_pos(self, h: int) -> int:
        if not 0 <= h < self.group.order or h not in self.subgroup:
            raise InvalidSpectrum(f"{h} is not in H")
        return int(self.subgroup.position[h])

    def pair_index(self, s: Spectrum) -> int:
        t, h = s
        return self.t_pos(t) * self.h_size + self.h_pos(h)

    def pair(self, k: int) -> Spectrum:
        i, j = divmod(k, self.h_size)
        return Spectrum(self.reps[i], self.subgroup.members[j])

    def pairs(self) -> list[Spectrum]:
        return [self.pair(k) for k in range(self.degree)]

    def with_delta(self, delta) -> "Fibration":
        """Copy carrying a replaced δ table (used by mutation tests)."""
        d = np.array(delta, dtype=np.int64)
        d.setflags(write=False)
        return replace(self, delta=d)

    def with_gamma(self, gamma) -> "Fibration":
        """Copy carrying a replaced γ table (used by mutation tests)."""
        g = np.array(gamma, dtype=np.int64)
        g.setflags(write=False)
        return replace(self, gamma=g)


def build_fibration(T: Transversal) -> Fibration:
    """Tabulate δ(g, t) = bar(g t)^-1 g t and g^γ(t) = bar(g t) for all g, t."""
    G, H = T.group, T.subgroup
    reps = np.asarray(T.reps, dtype=np.int64)
    gt = G.table[:, reps]                       # g t
    bar_gt = T.bar_of[gt]
    prod = G.table[G.inverses[bar_gt], gt]      # bar(gt)^-1 g t
    hpos = H.position[prod]
    if (hpos < 0).any():
        g, i = np.argwhere(hpos < 0)[0]
        raise AssertionError(f"δ({g},{reps[i]}) = {prod[g, i]} escaped H")
    gamma = T.decomposition.coset_of[bar_gt]
    hm = np.asarray(H.members)
    hmul = H.position[G.table[np.ix_(hm, hm)]]
    for a in (hpos, gamma, hmul):
        a.setflags(write=False)
    return Fibration(T, hpos, gamma, hmul)


def _check_g(F: Fibration, g: int):
    if not 0 <= g < F.group.order:
        raise IndexOutOfRange(f"element {g} out of range")


def _require_transversal(F: Fibration):
    if not F.is_transversal:
        raise RequiresTransversal("this operation needs the identity among the representatives")


def gamma(T, g: int) -> Permutation:
    """Frobenius permutation of ``g`` on representative positions."""
    if isinstance(T, Fibration):
        _check_g(T, g)
        return Permutation.from_array(T.gamma[g])
    G = T.group
    if not 0 <= g < G.order:
        raise IndexOutOfRange(f"element {g} out of range")
    reps = np.asarray(T.reps)
    return Permutation.from_array(T.decomposition.coset_of[T.bar_of[G.table[g, reps]]])


def delta(F: Fibration, g: int, t: int) -> int:
    _check_g(F, g)
    i = F.t_pos(t)
    return F.subgroup.members[F.delta[g, i]]


def delta_zero(F: Fibration, g: int) -> int:
    _require_transversal(F)
    return delta(F, g, F.group.identity)


def nabla(F: Fibration, g: int) -> Spectrum:
    _require_transversal(F)
    _check_g(F, g)
    return Spectrum(int(F.transversal.bar_of[g]), delta_zero(F, g))


def nabla_inv(F: Fibration, s: Spectrum) -> int:
    _require_transversal(F)
    t, h = s
    if not 0 <= t < F.group.order or F.transversal.bar_of[t] != t:
        raise InvalidSpectrum(f"{t} is not a representative")
    F.h_pos(h)
    return int(F.group.table[t, h])


def nabla_table(F: Fibration) -> np.ndarray:
    """Pair index of ∇(g) for every g, read from the stored tables."""
    _require_transversal(F)
    e_pos = F.t_pos(F.group.identity)
    tpos = F.transversal.decomposition.coset_of
    return tpos * F.h_size + F.delta[:, e_pos]


# fiber maps --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiberMap:
    """An element of H^T; ``values[i]`` is the H position of f(reps[i])."""

    fibration: Fibration
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.fibration.t_size:
            raise FibrationMismatch("fiber map length differs from |T|")
        if any(not 0 <= v < self.fibration.h_size for v in self.values):
            raise FibrationMismatch("fiber map value outside H")

    @classmethod
    def identity(cls, F: Fibration) -> "FiberMap":
        return cls(F, (0,) * F.t_size)

    def elements(self) -> tuple[int, ...]:
        m = self.fibration.subgroup.members
        return tuple(m[v] for v in self.values)

    def inverse(self) -> "FiberMap":
        F = self.fibration
        hinv = np.argmax(F.hmul == 0, axis=1)
        return FiberMap(F, tuple(int(hinv[v]) for v in self.values))

    def is_identity(self) -> bool:
        return all(v == 0 for v in self.values)

    def __mul__(self, other: "FiberMap") -> "FiberMap":
        return fibermap_mul(self, other)

    def __eq__(self, other):
        return (isinstance(other, FiberMap) and other.fibration is self.fibration
                and other.values == self.values)

    def __hash__(self):
        return hash(self.values)


def dual_delta(F: Fibration, g: int) -> FiberMap:
    _check_g(F, g)
    return FiberMap(F, tuple(int(x) for x in F.delta[g]))


def fibermap_mul(f1: FiberMap, f2: FiberMap) -> FiberMap:
    if f1.fibration is not f2.fibration:
        raise FibrationMismatch("fiber maps belong to different fibrations")
    hm = f1.fibration.hmul
    return FiberMap(f1.fibration, tuple(int(hm[a, b]) for a, b in zip(f1.values, f2.values)))


def beta(f: FiberMap) -> Permutation:
    """<t, h> -> <t, f(t) h> on t-major pair indices."""
    F = f.fibration
    m = F.h_size
    vals = np.asarray(f.values, dtype=np.int64)
    images = np.arange(F.t_size)[:, None] * m + F.hmul[vals]
    return Permutation.from_array(images.ravel())


def alpha(F: Fibration, g: int) -> Permutation:
    """<t, h> -> <g^γ(t), δ(g, t) h> on t-major pair indices."""
    _check_g(F, g)
    return Permutation.from_array(alpha_table(F)[g])


def alpha_table(F: Fibration) -> np.ndarray:
    """Row g holds the images of α(g)."""
    m = F.h_size
    # hmul[delta[g, i], j] for every (g, i, j)
    fib = F.hmul[F.delta]
    return (F.gamma[:, :, None] * m + fib).reshape(F.group.order, F.degree)


def beta_table(F: Fibration) -> np.ndarray:
    """Row g holds the images of β(δ_g)."""
    m = F.h_size
    fib = F.hmul[F.delta]
    return (np.arange(F.t_size)[None, :, None] * m + fib).reshape(F.group.order, F.degree)


def frobenius_lift_table(F: Fibration) -> np.ndarray:
    """Row g holds the images of γ(g) × id_H."""
    m = F.h_size
    return (F.gamma[:, :, None] * m + np.arange(m)[None, None, :]).reshape(F.group.order, F.degree)
