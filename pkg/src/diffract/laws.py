"""Exhaustive verification of the rewriting machinery on one instance.

An instance is a group ``G``, a subgroup ``H`` and a representative system
``T``.  Every law reads the *stored* tables of the fibration (and of the
diffracted group, if one is supplied), so a corrupted table is reported as
a failure with a witness rather than silently recomputed.

Law ids and the tuple counts reported in ``checks_run`` (``n = |G|``,
``N = |T||H| = n``):

=====================  ==========================================
cayley-faithful        ``2 n^2 + n``
rep-calculus           ``n + n^2``
gamma-hom              ``n^2 + n``
delta-containment      ``n |T|``
nabla-decomposition    ``n``                         (transversal)
beta-action            ``n``
beta-faithful          ``2 n^2 + n``
cocycle                ``n^2 |T|``
alpha-faithful         ``n^2 + 2 n``
gset-square            ``n^2``                       (transversal)
diffracted-group       ``N^2 + |T|^2 |H| + n^2``     (transversal)
diffracted-iso         ``n^2 + 2 n + |H|``           (transversal)
=====================  ==========================================
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .diffracted import DiffractedGroup, bequeath_table, iso_check
from .diffraction import (
    Fibration,
    alpha_table,
    beta_table,
    build_fibration,
    frobenius_lift_table,
    nabla_table,
)
from .errors import InstanceTooLarge, NotAGroup, UnknownLawId
from .group import FiniteGroup, Subgroup, validate_table
from .report import LawReport, failed, passed, skipped
from .transversal import Transversal, check_representative_calculus

MAX_EXHAUSTIVE_ORDER = 200


@dataclass
class Instance:
    group: FiniteGroup
    subgroup: Subgroup
    transversal: Transversal
    fibration: Fibration
    diffracted: Optional[DiffractedGroup] = None
    diffracted_error: Optional[NotAGroup] = None

    @property
    def n(self) -> int:
        return self.group.order


def _first(mask: np.ndarray):
    idx = np.argwhere(mask)
    return tuple(int(x) for x in idx[0]) if len(idx) else None


def scan_factorization(G: FiniteGroup, reps, members):
    """Brute-force ``g = t h``: returns (t positions, h positions, hits per g)."""
    reps = np.asarray(reps, dtype=np.int64)
    members = np.asarray(members, dtype=np.int64)
    prods = G.table[reps[:, None], members[None, :]]
    hits = np.bincount(prods.ravel(), minlength=G.order)
    tpos = np.full(G.order, -1, dtype=np.int64)
    hpos = np.full(G.order, -1, dtype=np.int64)
    ii, jj = np.indices(prods.shape)
    tpos[prods.ravel()] = ii.ravel()
    hpos[prods.ravel()] = jj.ravel()
    return tpos, hpos, hits


# individual laws ------------------------------------------------------------


def law_cayley(inst: Instance):
    law = "cayley-faithful"
    G = inst.group
    n = G.order
    R = G.table  # row g is the left-multiplication permutation of g
    checks = 2 * n * n + n
    ar = np.arange(n)
    hom = R[G.table]                          # rho(ab)[x]
    comp = R[ar[:, None, None], R[None, :, :]]  # rho(a)(rho(b)(x))
    w = _first(hom != comp)
    if w:
        return failed(law, checks, {"part": "homomorphism", "g1": w[0], "g2": w[1], "x": w[2]})
    for g in range(n):
        row = R[g]
        for h in range(n):
            if G.mul(g, h) != row[h]:
                return failed(law, checks, {"part": "action-square", "g": g, "h": h})
    if len(np.unique(R, axis=0)) != n:
        _, first = np.unique(R, axis=0, return_index=True)
        dup = sorted(set(range(n)) - set(first.tolist()))[0]
        return failed(law, checks, {"part": "injective", "g": dup})
    return passed(law, checks)


def law_rep_calculus(inst: Instance):
    return check_representative_calculus(inst.transversal)


def law_gamma(inst: Instance):
    law = "gamma-hom"
    G, F = inst.group, inst.fibration
    n = G.order
    checks = n * n + n
    Gm = F.gamma
    k = F.t_size
    srt = np.sort(Gm, axis=1)
    w = _first(srt != np.arange(k)[None, :])
    if w:
        return failed(law, checks, {"part": "bijection", "g": w[0]})
    if not np.array_equal(Gm[G.identity], np.arange(k)):
        return failed(law, checks, {"part": "identity", "g": G.identity})
    lhs = Gm[G.table]                                     # (g1 g2)^γ(i)
    rhs = Gm[np.arange(n)[:, None, None], Gm[None, :, :]]  # g1^γ(g2^γ(i))
    w = _first(lhs != rhs)
    if w:
        return failed(law, checks, {"part": "homomorphism", "g1": w[0], "g2": w[1],
                                    "t": F.reps[w[2]]})
    return passed(law, checks)


def law_containment(inst: Instance):
    law = "delta-containment"
    G, F, T = inst.group, inst.fibration, inst.transversal
    n = G.order
    checks = n * F.t_size
    reps = np.asarray(F.reps)
    gt = G.table[:, reps]
    val = G.table[G.inverses[T.bar_of[gt]], gt]
    pos = inst.subgroup.position[val]
    w = _first(pos < 0)
    if w:
        return failed(law, checks, {"part": "in-H", "g": w[0], "t": int(reps[w[1]]),
                                    "value": int(val[w])})
    w = _first(pos != F.delta)
    if w:
        return failed(law, checks, {"part": "stored-value", "g": w[0], "t": int(reps[w[1]]),
                                    "stored": int(F.subgroup.members[F.delta[w]]),
                                    "expected": int(val[w])})
    return passed(law, checks)


def law_nabla(inst: Instance):
    law = "nabla-decomposition"
    G, F = inst.group, inst.fibration
    n = G.order
    tpos, hpos, hits = scan_factorization(G, F.reps, F.h_members)
    w = _first(hits != 1)
    if w:
        return failed(law, n, {"part": "unique-factorization", "g": w[0], "factorizations": int(hits[w])})
    bar_pos = inst.transversal.decomposition.coset_of[inst.transversal.bar_of]
    e_pos = F.t_pos(G.identity)
    w = _first((bar_pos != tpos) | (F.delta[:, e_pos] != hpos))
    if w:
        g = w[0]
        return failed(law, n, {"g": g, "scan": [F.reps[tpos[g]], int(F.h_members[hpos[g]])],
                               "bar_delta0": [int(inst.transversal.bar_of[g]),
                                              int(F.h_members[F.delta[g, e_pos]])]})
    return passed(law, n)


def law_beta_action(inst: Instance):
    law = "beta-action"
    F = inst.fibration
    n, N, m = inst.n, F.degree, F.h_size
    B = beta_table(F)
    w = _first(np.sort(B, axis=1) != np.arange(N)[None, :])
    if w:
        return failed(law, n, {"part": "bijection", "g": w[0]})
    w = _first(B // m != (np.arange(N) // m)[None, :])
    if w:
        return failed(law, n, {"part": "fixes-t", "g": w[0], "pair": w[1]})
    return passed(law, n)


def law_beta_faithful(inst: Instance):
    law = "beta-faithful"
    F = inst.fibration
    n, N, m, k = inst.n, F.degree, F.h_size, F.t_size
    checks = 2 * n * n + n
    B = beta_table(F)
    prod = F.hmul[F.delta[:, None, :], F.delta[None, :, :]]      # (δ_g1 · δ_g2)(t)
    beta_prod = (np.arange(k)[None, None, :, None] * m + F.hmul[prod]).reshape(n, n, N)
    comp = B[np.arange(n)[:, None, None], B[None, :, :]]
    w = _first(beta_prod != comp)
    if w:
        return failed(law, checks, {"part": "homomorphism", "g1": w[0], "g2": w[1], "pair": w[2]})
    ident = np.arange(N)
    # kernel: β(f) = id exactly when f is the constant identity map
    for fmaps, perms, shape in ((F.delta, B, (n,)), (prod.reshape(n * n, k), beta_prod.reshape(n * n, N), (n, n))):
        is_id_perm = (perms == ident[None, :]).all(axis=1)
        is_const_e = (fmaps == 0).all(axis=1)
        bad = np.flatnonzero(is_id_perm != is_const_e)
        if len(bad):
            where = np.unravel_index(bad[0], shape)
            return failed(law, checks, {"part": "kernel", "g": [int(x) for x in where]})
    image = {tuple(r) for r in F.delta.tolist()}
    closed = all(tuple(r) in image for r in prod.reshape(n * n, k).tolist())
    return passed(law, checks, image_size=len(image), image_closed=closed,
                  delta_hat_injective=len(image) == n)


def law_cocycle(inst: Instance):
    law = "cocycle"
    G, F = inst.group, inst.fibration
    n, k = G.order, F.t_size
    checks = n * n * k
    lhs = F.delta[G.table]                                          # δ(g1 g2, t)
    shifted = F.delta[np.arange(n)[:, None, None], F.gamma[None, :, :]]  # δ(g1, g2^γ(t))
    rhs = F.hmul[shifted, F.delta[None, :, :]]
    w = _first(lhs != rhs)
    if w:
        hm = F.subgroup.members
        return failed(law, checks, {"g1": w[0], "g2": w[1], "t": F.reps[w[2]],
                                    "lhs": int(hm[lhs[w]]), "rhs": int(hm[rhs[w]])})
    return passed(law, checks)


def law_alpha(inst: Instance):
    law = "alpha-faithful"
    G, F = inst.group, inst.fibration
    n, N = G.order, F.degree
    checks = n * n + 2 * n
    info = {"is_transversal": F.is_transversal}
    if not F.is_transversal:
        info["note"] = "faithfulness checked exhaustively but outside the transversal hypothesis"
    A = alpha_table(F)
    w = _first(np.sort(A, axis=1) != np.arange(N)[None, :])
    if w:
        return failed(law, checks, {"part": "bijection", "g": w[0]}, **info)
    if not np.array_equal(A[G.identity], np.arange(N)):
        return failed(law, checks, {"part": "identity", "g": G.identity}, **info)
    lhs = A[G.table]
    rhs = A[np.arange(n)[:, None, None], A[None, :, :]]
    w = _first(lhs != rhs)
    if w:
        return failed(law, checks, {"part": "homomorphism", "g1": w[0], "g2": w[1], "pair": w[2]}, **info)
    uniq, first = np.unique(A, axis=0, return_index=True)
    if len(uniq) != n:
        dup = sorted(set(range(n)) - set(first.tolist()))[0]
        return failed(law, checks, {"part": "injective", "g": dup}, **info)
    L = frobenius_lift_table(F)
    B = beta_table(F)
    factored = L[np.arange(n)[:, None], B]
    w = _first(factored != A)
    if w:
        return failed(law, checks, {"part": "factored-form", "g": w[0], "pair": w[1]}, **info)
    return passed(law, checks, **info)


def law_gset(inst: Instance):
    law = "gset-square"
    G, F = inst.group, inst.fibration
    n = G.order
    nab = nabla_table(F)
    A = alpha_table(F)
    lhs = nab[G.table]                      # ∇(g k)
    rhs = A[np.arange(n)[:, None], nab[None, :]]  # α(g)(∇(k))
    w = _first(lhs != rhs)
    if w:
        return failed(law, n * n, {"g": w[0], "k": w[1], "nabla_gk": int(lhs[w]),
                                   "alpha_nabla_k": int(rhs[w])})
    return passed(law, n * n)


def _diffracted(inst: Instance) -> DiffractedGroup:
    """The supplied diffracted group, or one built without trusting the validator."""
    if inst.diffracted is not None:
        return inst.diffracted
    F = inst.fibration
    table = bequeath_table(F)
    inverses = np.argmax(table == 0, axis=1)
    return DiffractedGroup(F, tuple(F.pairs()), table, 0, inverses)


def law_diffracted_group(inst: Instance):
    law = "diffracted-group"
    G, F = inst.group, inst.fibration
    n, N, k, m = G.order, F.degree, F.t_size, F.h_size
    checks = N * N + k * k * m + n * n
    D = _diffracted(inst)
    table = np.asarray(D.table)
    try:
        e, _ = validate_table(table)
    except NotAGroup as exc:
        return failed(law, checks, {"part": "group-axioms", "reason": exc.reason,
                                    "witness": list(exc.witness)})
    if e != F.pair_index((G.identity, G.identity)) or e != D.identity:
        return failed(law, checks, {"part": "identity", "found": int(e)})
    # first coordinate of the product equals bar(t1 h1 t2)
    reps = np.asarray(F.reps)
    hm = F.h_members
    t1h1 = G.table[reps[:, None], hm[None, :]]                      # (k, m)
    lhs = F.gamma[reps[:, None, None], F.gamma[hm][None, :, :]]      # (k, m, k)
    full = G.table[t1h1[:, :, None], reps[None, None, :]]
    rhs = inst.transversal.decomposition.coset_of[full]
    w = _first(lhs != rhs)
    if w:
        return failed(law, checks, {"part": "first-coordinate", "t1": int(reps[w[0]]),
                                    "h1": int(hm[w[1]]), "t2": int(reps[w[2]])})
    # relabelling oracle: independent factorisation by scan
    tpos, hpos, _ = scan_factorization(G, reps, hm)
    nab = tpos * m + hpos
    got = table[nab[:, None], nab[None, :]]
    want = nab[G.table]
    w = _first(got != want)
    if w:
        return failed(law, checks, {"part": "relabelling", "g1": w[0], "g2": w[1],
                                    "bequeath": int(got[w]), "expected": int(want[w])})
    return passed(law, checks)


def law_iso(inst: Instance):
    return iso_check(inst.fibration, _diffracted(inst))


@dataclass(frozen=True)
class Law:
    law_id: str
    check: Callable[[Instance], object]
    needs_transversal: bool = False


LAWS = {
    law.law_id: law
    for law in [
        Law("cayley-faithful", law_cayley),
        Law("rep-calculus", law_rep_calculus),
        Law("gamma-hom", law_gamma),
        Law("delta-containment", law_containment),
        Law("nabla-decomposition", law_nabla, True),
        Law("beta-action", law_beta_action),
        Law("beta-faithful", law_beta_faithful),
        Law("cocycle", law_cocycle),
        Law("alpha-faithful", law_alpha),
        Law("gset-square", law_gset, True),
        Law("diffracted-group", law_diffracted_group, True),
        Law("diffracted-iso", law_iso, True),
    ]
}

LAW_IDS = tuple(sorted(LAWS))


def resolve_selection(selection) -> list[str]:
    if selection is None or selection == "all":
        return list(LAW_IDS)
    if isinstance(selection, str):
        selection = [s for s in selection.split(",") if s.strip()]
    ids = []
    for s in selection:
        s = s.strip()
        if s == "all":
            return list(LAW_IDS)
        if s not in LAWS:
            raise UnknownLawId(f"unknown law {s!r}; known: {', '.join(LAW_IDS)}")
        ids.append(s)
    return sorted(set(ids))


def run_laws(G: FiniteGroup, H: Subgroup, T: Transversal, selection="all",
             fibration: Optional[Fibration] = None,
             diffracted: Optional[DiffractedGroup] = None,
             descriptor: Optional[dict] = None) -> LawReport:
    """Run the selected laws exhaustively; results are ordered by law id."""
    ids = resolve_selection(selection)
    if G.order > MAX_EXHAUSTIVE_ORDER:
        raise InstanceTooLarge(
            f"|G| = {G.order} exceeds {MAX_EXHAUSTIVE_ORDER}; exhaustive verification refused")
    F = fibration if fibration is not None else build_fibration(T)
    inst = Instance(G, H, T, F, diffracted)
    results = []
    for law_id in ids:
        law = LAWS[law_id]
        if law.needs_transversal and not T.is_transversal:
            results.append(skipped(law_id, "requires-transversal"))
            continue
        results.append(law.check(inst))
    instance = {
        "group": G.name,
        "order": G.order,
        "subgroup": list(H.members),
        "reps": list(T.reps),
        "is_transversal": T.is_transversal,
    }
    if descriptor:
        instance.update(descriptor)
    return LawReport(instance, results)
