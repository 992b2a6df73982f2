"""The diffracted group T▽H and internal rewriting of products."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .diffraction import Fibration, Spectrum, nabla, nabla_table
from .errors import IndexOutOfRange, NotAGroup, RequiresTransversal
from .group import FiniteGroup, from_table, validate_table
from .report import failed, passed


def _require_transversal(F: Fibration):
    if not F.is_transversal:
        raise RequiresTransversal("the diffracted group needs a transversal (identity in T)")


@dataclass(frozen=True, eq=False)
class DiffractedGroup:
    fibration: Fibration
    pairs: tuple[Spectrum, ...]
    table: np.ndarray
    identity: int
    inverses: np.ndarray

    @property
    def order(self) -> int:
        return len(self.pairs)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def index_of(self, s: Spectrum) -> int:
        return self.fibration.pair_index(Spectrum(*s))

    def with_table(self, table) -> "DiffractedGroup":
        """Unvalidated copy with a replaced table (mutation tests)."""
        t = np.array(table, dtype=np.int64)
        t.setflags(write=False)
        return replace(self, table=t)

    def as_group(self) -> FiniteGroup:
        G = self.fibration.group
        labels = [f"<{G.label(t)},{G.label(h)}>" for t, h in self.pairs]
        return from_table(self.table, labels=labels, name="diffracted")

    def to_json_dict(self) -> dict:
        F = self.fibration
        return {
            "order": self.order,
            "t_size": F.t_size,
            "h_size": F.h_size,
            "pairs": [[int(t), int(h)] for t, h in self.pairs],
            "table": self.table.tolist(),
            "identity": int(self.identity),
        }


def bequeath_table(F: Fibration) -> np.ndarray:
    """Full product table of T×H under the bequeath product.

    ``<t1,h1> <t2,h2> = < t1^γ(h1^γ(t2)), δ(t1 h1, t2) h2 >`` evaluated on the
    stored γ and δ tables.
    """
    G, m = F.group, F.h_size
    reps = np.asarray(F.reps, dtype=np.int64)
    hm = F.h_members
    t1 = np.repeat(reps, m)
    h1 = np.tile(hm, F.t_size)
    g1 = G.table[t1, h1]
    first = F.gamma[t1[:, None], F.gamma[h1]]          # (N, |T|)
    second = F.hmul[F.delta[g1]]                        # (N, |T|, |H|)
    return (first[:, :, None] * m + second).reshape(F.degree, F.degree)


def bequeath_product(F: Fibration, p1: Spectrum, p2: Spectrum) -> Spectrum:
    _require_transversal(F)
    (t1, h1), (t2, h2) = p1, p2
    i2 = F.t_pos(t2)
    F.t_pos(t1)
    j1, j2 = F.h_pos(h1), F.h_pos(h2)
    G = F.group
    first = F.gamma[t1, F.gamma[h1, i2]]
    second = F.hmul[F.delta[G.table[t1, h1], i2], j2]
    return Spectrum(F.reps[first], F.subgroup.members[second])


def build(F: Fibration) -> DiffractedGroup:
    """Materialise T▽H and re-run the full group validator on it."""
    _require_transversal(F)
    table = bequeath_table(F)
    e, inverses = validate_table(table)
    expected = F.pair_index(Spectrum(F.group.identity, F.group.identity))
    if e != expected:
        raise NotAGroup("no-identity", (e,), detail=f"identity should be <e,e> at {expected}")
    table.setflags(write=False)
    inverses = np.asarray(inverses, dtype=np.int64)
    inverses.setflags(write=False)
    return DiffractedGroup(F, tuple(F.pairs()), table, int(e), inverses)


def iota1(F: Fibration, h: int) -> int:
    F.h_pos(h)
    return h


def iota2(F: Fibration, h: int) -> int:
    return F.pair_index(Spectrum(F.group.identity, h))


def iso_check(F: Fibration, D: DiffractedGroup):
    """∇ : G -> T▽H is a bijective homomorphism compatible with the embeddings of H."""
    law = "diffracted-iso"
    _require_transversal(F)
    G = F.group
    n = G.order
    hm = F.h_members
    checks = n * n + n + len(hm) + n
    nab = nabla_table(F)
    lhs = np.asarray(D.table)[nab[:, None], nab[None, :]]
    rhs = nab[G.table]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        a, b = (int(x) for x in bad[0])
        return failed(law, checks, {"part": "homomorphism", "g1": a, "g2": b,
                                    "nabla_product": int(rhs[a, b]), "bequeath": int(lhs[a, b])})
    if len(np.unique(nab)) != n or D.order != n:
        seen = {}
        for g, k in enumerate(nab.tolist()):
            if k in seen:
                return failed(law, checks, {"part": "bijective", "g1": seen[k], "g2": g})
            seen[k] = g
        return failed(law, checks, {"part": "bijective", "order": D.order})
    emb = np.array([iota2(F, int(h)) for h in hm])
    bad = np.flatnonzero(nab[hm] != emb)
    if len(bad):
        h = int(hm[bad[0]])
        return failed(law, checks, {"part": "embedding", "h": h})
    bad = np.flatnonzero(np.asarray(D.inverses)[nab] != nab[G.inverses])
    if len(bad):
        return failed(law, checks, {"part": "inverse", "g": int(bad[0])})
    return passed(law, checks)


@dataclass(frozen=True)
class RewriteTrace:
    g1: int
    g2: int
    t1: int
    h1: int
    t2: int
    h2: int
    rep_part: int
    fib_part: int
    h_tail: int
    result: int

    def to_dict(self) -> dict:
        return {k: int(v) for k, v in self.__dict__.items()}


def rewrite_product(F: Fibration, g1: int, g2: int) -> RewriteTrace:
    """Rewrite ``g1 g2`` as ``bar(t1 h1 t2) · δ(t1 h1, t2) · h2``."""
    _require_transversal(F)
    G = F.group
    for g in (g1, g2):
        if not 0 <= g < G.order:
            raise IndexOutOfRange(f"element {g} out of range")
    t1, h1 = nabla(F, g1)
    t2, h2 = nabla(F, g2)
    t1h1 = int(G.table[t1, h1])
    rep_part = int(F.transversal.bar_of[G.table[t1h1, t2]])
    fib_part = int(F.subgroup.members[F.delta[t1h1, F.t_pos(t2)]])
    result = int(G.table[g1, g2])
    return RewriteTrace(g1, g2, t1, h1, t2, h2, rep_part, fib_part, h2, result)


def trace_holds(F: Fibration, tr: RewriteTrace) -> bool:
    """Factor membership plus ``rep_part * fib_part * h_tail == g1 * g2``."""
    G, H = F.group, F.subgroup
    if F.transversal.bar_of[tr.rep_part] != tr.rep_part:
        return False
    if tr.fib_part not in H or tr.h_tail not in H:
        return False
    if G.table[tr.t1, tr.h1] != tr.g1 or G.table[tr.t2, tr.h2] != tr.g2:
        return False
    return int(G.table[G.table[tr.rep_part, tr.fib_part], tr.h_tail]) == tr.result
