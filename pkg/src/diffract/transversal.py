"""Representative systems for left cosets and the representative map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import IndexOutOfRange, NotARepresentativeSystem, ParseError
from .group import CosetDecomposition
from .report import failed, passed

LCG_MUL = 6364136223846793005
LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1


class Lcg64:
    """64-bit linear congruential generator; draws take the high 32 bits."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next32(self) -> int:
        self.state = (self.state * LCG_MUL + LCG_INC) & _MASK64
        return self.state >> 32

    def below(self, k: int) -> int:
        return self.next32() % k


@dataclass(frozen=True)
class TransversalStrategy:
    kind: str  # "min_index" | "random" | "explicit"
    seed: int = 0
    elements: tuple[int, ...] = ()

    @classmethod
    def parse(cls, text: str, group=None) -> "TransversalStrategy":
        """CLI syntax: ``min``, ``random:SEED`` or ``list:i1,i2,...``."""
        kind, _, arg = text.strip().partition(":")
        if kind in ("min", "min_index") and not arg:
            return cls("min_index")
        if kind == "random":
            try:
                return cls("random", seed=int(arg, 10))
            except ValueError:
                raise ParseError(f"bad seed in strategy {text!r}") from None
        if kind in ("list", "explicit"):
            toks = [t for t in arg.split(",") if t.strip()]
            if group is not None:
                elems = tuple(group.element(t) for t in toks)
            else:
                try:
                    elems = tuple(int(t) for t in toks)
                except ValueError:
                    raise ParseError(f"bad element list in {text!r}") from None
            return cls("explicit", elements=elems)
        raise ParseError(f"unknown strategy {text!r}")

    def describe(self) -> str:
        if self.kind == "random":
            return f"random:{self.seed}"
        if self.kind == "explicit":
            return "list:" + ",".join(str(x) for x in self.elements)
        return "min"


@dataclass(frozen=True, eq=False)
class Transversal:
    decomposition: CosetDecomposition
    reps: tuple[int, ...]
    bar_of: np.ndarray
    is_transversal: bool

    @property
    def group(self):
        return self.decomposition.group

    @property
    def subgroup(self):
        return self.decomposition.subgroup

    @property
    def size(self) -> int:
        return len(self.reps)

    def t_index(self, x: int) -> int:
        """Position of a representative in ``reps`` (equal to its coset id)."""
        c = int(self.decomposition.coset_of[x])
        if self.reps[c] != x:
            raise KeyError(x)
        return c

    def bar(self, g: int) -> int:
        return bar(self, g)


def make_transversal(decomposition: CosetDecomposition, reps) -> Transversal:
    """Wrap a list of representatives indexed by coset id, validating it."""
    reps = tuple(int(r) for r in reps)
    coset_of = decomposition.coset_of
    if len(reps) != decomposition.index:
        raise NotARepresentativeSystem(f"need {decomposition.index} representatives, got {len(reps)}")
    for c, r in enumerate(reps):
        if not 0 <= r < len(coset_of) or coset_of[r] != c:
            raise NotARepresentativeSystem(f"representative {r} does not lie in coset {c}")
    bar_of = np.asarray(reps, dtype=np.int64)[coset_of]
    bar_of.setflags(write=False)
    ident = decomposition.group.identity
    return Transversal(decomposition, reps, bar_of, ident in reps)


def choose(decomposition: CosetDecomposition, strategy: TransversalStrategy,
           allow_non_transversal: bool = False) -> Transversal:
    cosets = decomposition.cosets
    if strategy.kind == "min_index":
        reps = [c[0] for c in cosets]
    elif strategy.kind == "random":
        rng = Lcg64(strategy.seed)
        reps = [c[rng.below(len(c))] for c in cosets]
        if not allow_non_transversal:
            ident = decomposition.group.identity
            reps[int(decomposition.coset_of[ident])] = ident
    elif strategy.kind == "explicit":
        reps = [-1] * len(cosets)
        for x in strategy.elements:
            if not 0 <= x < len(decomposition.coset_of):
                raise NotARepresentativeSystem(f"element {x} out of range")
            c = int(decomposition.coset_of[x])
            if reps[c] != -1:
                raise NotARepresentativeSystem(f"coset {c} represented twice ({reps[c]} and {x})")
            reps[c] = x
        missing = [c for c, r in enumerate(reps) if r == -1]
        if missing:
            raise NotARepresentativeSystem(f"cosets {missing} have no representative")
    else:
        raise ValueError(f"unknown strategy kind {strategy.kind!r}")
    return make_transversal(decomposition, reps)


def bar(T: Transversal, g: int) -> int:
    if not 0 <= g < len(T.bar_of):
        raise IndexOutOfRange(f"element {g} out of range")
    return int(T.bar_of[g])


def check_representative_calculus(T: Transversal, bar_of: Optional[np.ndarray] = None):
    """Both representative-calculus identities, exhaustively.

    (i)  ``g`` and ``bar(g)`` share a coset;
    (ii) ``bar(g1 * bar(g2)) == bar(g1 * g2)``.

    ``bar_of`` may override the transversal's own table (mutation tests).
    """
    law = "rep-calculus"
    G = T.group
    coset_of = T.decomposition.coset_of
    b = T.bar_of if bar_of is None else np.asarray(bar_of)
    n = G.order
    checks = n + n * n
    bad = np.flatnonzero(coset_of[b] != coset_of)
    if len(bad):
        g = int(bad[0])
        return failed(law, checks, {"item": "i", "g": g, "bar_g": int(b[g])})
    lhs = b[G.table[:, b]]
    rhs = b[G.table]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        g1, g2 = (int(x) for x in bad[0])
        return failed(law, checks, {"item": "ii", "g1": g1, "g2": g2,
                                    "lhs": int(lhs[g1, g2]), "rhs": int(rhs[g1, g2])})
    return passed(law, checks)
