"""Finite groups as dense multiplication tables.

Elements are the integers ``0..n-1`` and the identity is always index 0.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    GroupTooLarge,
    IndexOutOfRange,
    NotAGroup,
    NotAPermutation,
    NotASubgroup,
)
from .perm import Permutation

DEFAULT_MAX_ORDER = 20000
EXHAUSTIVE_ASSOC_LIMIT = 200
ASSOC_SAMPLE_FACTOR = 10
ASSOC_SAMPLE_SEED = 0


def max_order_cap() -> int:
    """Closure cap, overridable through ``DIFFRACT_MAX_ORDER``."""
    raw = os.environ.get("DIFFRACT_MAX_ORDER")
    if raw:
        return int(raw)
    return DEFAULT_MAX_ORDER


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    table: np.ndarray
    identity: int
    inverses: np.ndarray
    labels: Optional[tuple[str, ...]] = None
    name: str = ""

    def _check(self, *xs):
        for x in xs:
            if not 0 <= x < self.order:
                raise IndexOutOfRange(f"element {x} not in [0, {self.order})")

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        self._check(a)
        return int(self.inverses[a])

    def label(self, g: int) -> str:
        if self.labels is None:
            return str(g)
        return self.labels[g]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, g: int) -> int:
        self._check(g)
        k, x = 1, g
        while x != self.identity:
            x = int(self.table[x, g])
            k += 1
        return k

    def element(self, token) -> int:
        """Resolve a label or a decimal index to an element index."""
        if isinstance(token, (int, np.integer)):
            self._check(int(token))
            return int(token)
        token = str(token).strip()
        if self.labels is not None and token in self.labels:
            return self.labels.index(token)
        try:
            g = int(token)
        except ValueError:
            raise IndexOutOfRange(f"unknown element {token!r}") from None
        self._check(g)
        return g

    def __len__(self):
        return self.order

    def __repr__(self):
        nm = self.name or "FiniteGroup"
        return f"<{nm} of order {self.order}>"


# validation ---------------------------------------------------------------


def _latin_witness(table: np.ndarray):
    n = table.shape[0]
    ref = np.arange(n)
    for axis in (1, 0):
        srt = np.sort(table, axis=axis)
        bad = np.argwhere(srt != (ref[None, :] if axis == 1 else ref[:, None]))
        if len(bad):
            r, c = bad[0]
            line = table[r] if axis == 1 else table[:, c]
            counts = np.bincount(line, minlength=n)
            dup = int(np.argmax(counts > 1))
            pos = np.flatnonzero(line == dup)[:2]
            if axis == 1:
                return (int(r), int(pos[0]), int(pos[1]))
            return (int(pos[0]), int(pos[1]), int(c))
    return None


def _assoc_witness(table: np.ndarray):
    n = table.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            lhs = table[table[a]]          # (ab)c over all b, c
            rhs = table[a][table]          # a(bc)
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                b, c = bad[0]
                return (a, int(b), int(c))
        return None
    rng = np.random.default_rng(ASSOC_SAMPLE_SEED)
    remaining = ASSOC_SAMPLE_FACTOR * n * n
    while remaining > 0:
        k = min(remaining, 1 << 20)
        a, b, c = rng.integers(0, n, size=(3, k))
        lhs = table[table[a, b], c]
        rhs = table[a, table[b, c]]
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            i = bad[0]
            return (int(a[i]), int(b[i]), int(c[i]))
        remaining -= k
    return None


def validate_table(table) -> tuple[int, np.ndarray]:
    """Check the group axioms; return ``(identity, inverses)``.

    Raises :class:`NotAGroup` with the first violating tuple.  Associativity
    is exhaustive up to order 200 and sampled (``10 n^2`` seeded triples)
    above that.
    """
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup("non-latin-square", detail="table must be a non-empty square")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        raise NotAGroup("out-of-range", bad[0], detail=f"entry {t[tuple(bad[0])]}")
    t = t.astype(np.int64)
    w = _latin_witness(t)
    if w is not None:
        raise NotAGroup("non-latin-square", w)
    ref = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], ref) and np.array_equal(t[:, e], ref)]
    if not ids:
        raise NotAGroup("no-identity")
    e = ids[0]
    w = _assoc_witness(t)
    if w is not None:
        raise NotAGroup("non-associative", w)
    inverses = np.argmax(t == e, axis=1)
    for a in range(n):
        x = inverses[a]
        if t[a, x] != e or t[x, a] != e:
            raise NotAGroup("missing-inverse", (a,))
    return e, inverses


def from_table(raw: Sequence[Sequence[int]], labels=None, name: str = "") -> FiniteGroup:
    table = np.asarray(raw, dtype=np.int64)
    e, inverses = validate_table(table)
    if e != 0:
        raise NotAGroup("no-identity", (e,), detail="identity must be element 0")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != table.shape[0]:
            raise ValueError("need exactly one label per element")
    return FiniteGroup(
        order=int(table.shape[0]),
        table=_readonly(table),
        identity=0,
        inverses=_readonly(inverses),
        labels=labels,
        name=name,
    )


def _perm_table(elems, index) -> np.ndarray:
    """``table[i, j]`` = index of ``elems[i] ∘ elems[j]``."""
    n = len(elems)
    degree = len(elems[0])
    table = np.empty((n, n), dtype=np.int64)
    if degree <= 15:
        perms = np.asarray(elems, dtype=np.int64).reshape(n, degree)
        # mixed-radix keys allow a vectorised reverse lookup
        weights = degree ** np.arange(degree, dtype=np.int64)
        keys = perms @ weights
        order = np.argsort(keys)
        sorted_keys = keys[order]
        for i in range(n):
            comp = perms[i][perms]
            table[i] = order[np.searchsorted(sorted_keys, comp @ weights)]
    else:
        for i, p in enumerate(elems):
            for j, q in enumerate(elems):
                table[i, j] = index[tuple(p[x] for x in q)]
    return table


def from_permutations(degree: int, generators, cap: Optional[int] = None,
                      labels: str = "cycles", name: str = "") -> FiniteGroup:
    """Close a set of permutations under composition.

    Elements are indexed in breadth-first discovery order starting from the
    identity at 0; each dequeued element ``x`` is extended by ``gen ∘ x`` for
    the generators in input order.  ``table[i, j]`` is the index of
    ``p_i ∘ p_j``.
    """
    if cap is None:
        cap = max_order_cap()
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree:
            raise NotAPermutation(f"generator {list(g)} has degree {len(g)}, expected {degree}")
        gens.append(Permutation(g))
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g.images[i] for i in x)
            if y not in index:
                if len(elems) >= cap:
                    raise GroupTooLarge(f"closure exceeds {cap} elements")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    table = _perm_table(elems, index)
    lab = None
    if labels == "cycles":
        lab = tuple(Permutation(p).cycle_notation() for p in elems)
    return from_table(table, labels=lab, name=name)


def mul(G: FiniteGroup, a: int, b: int) -> int:
    return G.mul(a, b)


def cayley_rho(G: FiniteGroup, g: int) -> Permutation:
    """Left-multiplication permutation ``h -> g h``."""
    G._check(g)
    return Permutation.from_array(G.table[g])


# subgroups and cosets -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        G, m = self.parent, self.members
        if list(m) != sorted(set(m)):
            raise NotASubgroup("members must be sorted and distinct")
        if not m or m[0] != G.identity:
            raise NotASubgroup("subgroup must contain the identity")
        mset = np.zeros(G.order, dtype=bool)
        mset[list(m)] = True
        idx = np.asarray(m)
        prods = G.table[np.ix_(idx, idx)]
        if not mset[prods].all():
            a, b = np.argwhere(~mset[prods])[0]
            raise NotASubgroup(f"not closed: {m[a]}*{m[b]} leaves the set")
        if not mset[G.inverses[idx]].all():
            raise NotASubgroup("not closed under inverses")
        if G.order % len(m):
            raise NotASubgroup(f"|H|={len(m)} does not divide |G|={G.order}")
        mask = mset
        object.__setattr__(self, "_mask", mask)
        pos = np.full(G.order, -1, dtype=np.int64)
        pos[idx] = np.arange(len(m))
        pos.setflags(write=False)
        mask.setflags(write=False)
        object.__setattr__(self, "position", pos)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g) -> bool:
        return bool(self._mask[g])

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def subgroup_generate(G: FiniteGroup, gens) -> Subgroup:
    gens = [int(g) for g in gens]
    G._check(*gens)
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.table[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(seen)))


@dataclass(frozen=True, eq=False)
class CosetDecomposition:
    group: FiniteGroup
    subgroup: Subgroup
    coset_of: np.ndarray
    cosets: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.cosets)


def left_cosets(G: FiniteGroup, H: Subgroup) -> CosetDecomposition:
    """Left cosets ``gH``; ids follow the ascending order of each coset's minimum."""
    if H.parent is not G:
        raise NotASubgroup("subgroup belongs to another group")
    coset_of = np.full(G.order, -1, dtype=np.int64)
    cosets = []
    hidx = np.asarray(H.members)
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        members = np.sort(G.table[g, hidx])
        coset_of[members] = len(cosets)
        cosets.append(tuple(int(x) for x in members))
    coset_of.setflags(write=False)
    return CosetDecomposition(G, H, coset_of, tuple(cosets))
