"""Self-checking micro-benchmark of three ways to multiply.

* ``table``: direct lookup in the multiplication table of G;
* ``bequeath``: the bequeath product on spectra, through the γ and δ tables;
* ``nabla-roundtrip``: spectra -> elements, multiply in G, factor again.

The last two must reproduce ∇ of the first on every sample.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .diffraction import Fibration, nabla_table


@dataclass
class BenchResult:
    reps: int
    timings: dict = field(default_factory=dict)
    agree: bool = True
    first_mismatch: Optional[int] = None

    def to_dict(self) -> dict:
        return {"reps": self.reps, "ns_per_op": self.timings, "agree": self.agree,
                "first_mismatch": self.first_mismatch}


def run_bench(F: Fibration, reps: int, seed: int = 0) -> BenchResult:
    res = BenchResult(reps)
    if reps == 0:
        return res
    G = F.group
    m = F.h_size
    rng = np.random.default_rng(seed)
    a_s = rng.integers(0, G.order, size=reps).tolist()
    b_s = rng.integers(0, G.order, size=reps).tolist()

    tab = G.table.tolist()
    gam = F.gamma.tolist()
    dlt = F.delta.tolist()
    hmul = F.hmul.tolist()
    reps_l = list(F.reps)
    hm = F.h_members.tolist()
    nab = nabla_table(F).tolist()
    bar_of = F.transversal.bar_of.tolist()
    coset_of = F.transversal.decomposition.coset_of.tolist()
    e_pos = F.t_pos(G.identity)
    # operands as (t position, h position)
    sa = [divmod(nab[a], m) for a in a_s]
    sb = [divmod(nab[b], m) for b in b_s]

    t0 = time.perf_counter_ns()
    direct = [tab[a][b] for a, b in zip(a_s, b_s)]
    t1 = time.perf_counter_ns()
    beq = []
    for (i1, j1), (i2, j2) in zip(sa, sb):
        t1e, h1e = reps_l[i1], hm[j1]
        first = gam[t1e][gam[h1e][i2]]
        second = hmul[dlt[tab[t1e][h1e]][i2]][j2]
        beq.append(first * m + second)
    t2 = time.perf_counter_ns()
    rt = []
    for (i1, j1), (i2, j2) in zip(sa, sb):
        g = tab[tab[reps_l[i1]][hm[j1]]][tab[reps_l[i2]][hm[j2]]]
        rt.append(coset_of[bar_of[g]] * m + dlt[g][e_pos])
    t3 = time.perf_counter_ns()

    res.timings = {
        "table": (t1 - t0) / reps,
        "bequeath": (t2 - t1) / reps,
        "nabla-roundtrip": (t3 - t2) / reps,
    }
    for k, (d, b, r) in enumerate(zip(direct, beq, rt)):
        if not (nab[d] == b == r):
            res.agree = False
            res.first_mismatch = k
            break
    return res
