"""Builtin group families.

Element orderings (identity is always index 0):

* ``cyclic(n)``: index ``i`` is ``a^i``.
* ``dihedral(n)``: order ``2n``; index ``i + n*j`` is ``r^i s^j`` with
  ``s r s = r^-1``.
* ``symmetric(n)`` / ``alternating(n)``: permutations of ``0..n-1`` in
  lexicographic order of their image tuples (even ones only for
  ``alternating``); ``table[i, j]`` is ``p_i ∘ p_j``.
* ``quaternion()``: ``1, -1, i, -i, j, -j, k, -k``.
* ``klein4()``: ``e, a, b, ab`` with index ``x + 2y`` for ``a^x b^y``.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ParamOutOfRange, UnknownBuiltin
from .group import FiniteGroup, _perm_table, from_table, max_order_cap
from .perm import Permutation

MAX_SYMMETRIC_DEGREE = 6


def _power_label(base: str, k: int) -> str:
    if k == 0:
        return "e"
    return base if k == 1 else f"{base}^{k}"


def cyclic(n: int) -> FiniteGroup:
    if not 1 <= n <= max_order_cap():
        raise ParamOutOfRange(f"cyclic order must be in [1, {max_order_cap()}], got {n}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return from_table(table, labels=[_power_label("a", k) for k in range(n)], name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    if not 1 <= n <= max_order_cap() // 2:
        raise ParamOutOfRange(f"dihedral parameter must be in [1, {max_order_cap() // 2}], got {n}")
    i = np.arange(2 * n) % n
    j = np.arange(2 * n) // n
    # r^a s^b . r^c s^d = r^(a + (-1)^b c) s^(b + d)
    sign = np.where(j == 0, 1, -1)
    rot = (i[:, None] + sign[:, None] * i[None, :]) % n
    refl = (j[:, None] + j[None, :]) % 2
    table = rot + n * refl
    labels = []
    for k in range(2 * n):
        r, s = k % n, k // n
        if s == 0:
            labels.append(_power_label("r", r))
        else:
            labels.append("s" if r == 0 else f"{_power_label('r', r)} s")
    return from_table(table, labels=labels, name=f"D{n}")


def _perm_family(perms, name) -> FiniteGroup:
    index = {p: k for k, p in enumerate(perms)}
    table = _perm_table(perms, index)
    labels = [Permutation(p).cycle_notation() for p in perms]
    return from_table(table, labels=labels, name=name)


def _is_even(p) -> bool:
    return sum(len(c) - 1 for c in Permutation(p).cycles()) % 2 == 0


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise ParamOutOfRange(f"symmetric degree must be in [1, {MAX_SYMMETRIC_DEGREE}], got {n}")
    return _perm_family(list(itertools.permutations(range(n))), f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise ParamOutOfRange(f"alternating degree must be in [1, {MAX_SYMMETRIC_DEGREE}], got {n}")
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _perm_family(perms, f"A{n}")


# quaternion units 1, i, j, k as 0..3; product u*v = sign * w
_QMUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion() -> FiniteGroup:
    table = np.empty((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            ua, sa = divmod(a, 2)
            ub, sb = divmod(b, 2)
            sgn, w = _QMUL[ua, ub]
            neg = (sa + sb + (sgn < 0)) % 2
            table[a, b] = 2 * w + neg
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return from_table(table, labels=labels, name="Q8")


def klein4() -> FiniteGroup:
    idx = np.arange(4)
    return from_table(idx[:, None] ^ idx[None, :], labels=["e", "a", "b", "ab"], name="V4")


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "quaternion": quaternion,
    "klein4": klein4,
}


def builtin(name: str, *params: int) -> FiniteGroup:
    try:
        ctor = FAMILIES[name]
    except KeyError:
        raise UnknownBuiltin(f"unknown builtin {name!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return ctor(*params)
    except TypeError:
        raise ParamOutOfRange(f"wrong number of parameters for {name}: {params}") from None


def parse_builtin(spec: str) -> FiniteGroup:
    """``"cyclic:6"``, ``"dihedral:4"``, ``"quaternion"`` ..."""
    name, _, rest = spec.partition(":")
    params = []
    for tok in filter(None, rest.split(",")):
        try:
            params.append(int(tok))
        except ValueError:
            raise ParamOutOfRange(f"non-integer parameter {tok!r} in {spec!r}") from None
    return builtin(name.strip(), *params)
