"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

The summary is printed at the end of the pytest run (see conftest.py).
"""

import io
import subprocess
import sys
import time

import numpy as np

from diffract.cli import main
from diffract.diffracted import build, rewrite_product
from diffract.diffraction import build_fibration, nabla, nabla_inv
from diffract.families import symmetric
from diffract.group import left_cosets, subgroup_generate
from diffract.laws import run_laws
from diffract.transversal import TransversalStrategy, choose

import corpus
import oracles
from acceptance_log import record

MUTATION_SEED = 20240607


def _cli(*argv):
    buf = io.StringIO()
    return main(list(argv), out=buf), buf.getvalue()


def _all_instances(allow=False):
    return list(corpus.instances(allow_non_transversal=allow))


def test_01_corpus_verify_all():
    start = time.perf_counter()
    failures = []
    count = 0
    for spec in corpus.GROUP_SPECS:
        for gens in corpus.subgroup_generators(spec):
            for strat in corpus.STRATEGIES:
                code, out = _cli("verify", "--builtin", spec, "--subgroup-gens",
                                 ",".join(map(str, gens)), "--strategy", strat, "--laws", "all")
                count += 1
                if code != 0:
                    failures.append((spec, gens, strat, out))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(1, "corpus: verify --laws all exits 0", ok,
           f"{count} instances, {len(failures)} failing, {elapsed:.1f}s")
    assert count == 408
    assert not failures, failures[:3]
    assert elapsed < 60


def test_02_bequeath_table_equals_relabelled_product():
    bad = []
    items = _all_instances()
    for spec, gens, strat, T in items:
        F = build_fibration(T)
        D = build(F)
        table = corpus.group(spec).table.tolist()
        reps, H = list(F.reps), list(F.subgroup.members)
        m = len(H)
        idx = []
        for g in range(len(table)):
            ((r, h),) = oracles.factor(table, g, reps, H)
            idx.append(reps.index(r) * m + H.index(h))
        d = D.table.tolist()
        n = len(table)
        if any(d[idx[a]][idx[b]] != idx[table[a][b]] for a in range(n) for b in range(n)):
            bad.append((spec, gens, strat))
    record(2, "bequeath table equals the relabelled product of G", not bad,
           f"{len(items)} instances, exact")
    assert not bad


def test_03_cocycle_including_non_transversal():
    bad = []
    checks = 0
    non_transversal = 0
    items = _all_instances(allow=True)
    for spec, gens, strat, T in items:
        G = T.group
        rep = run_laws(G, T.subgroup, T, "cocycle")
        res = rep.results[0]
        non_transversal += not T.is_transversal
        checks += res.checks_run
        if not res.passed or res.checks_run != G.order ** 2 * len(T.reps):
            bad.append((spec, gens, strat))
    record(3, "cocycle identity on every tuple", not bad and non_transversal > 0,
           f"{len(items)} instances ({non_transversal} non-transversal), {checks} tuples")
    assert not bad
    assert non_transversal > 0


def test_04_alpha_injective_homomorphism():
    bad = []
    items = _all_instances(allow=True)
    for spec, gens, strat, T in items:
        rep = run_laws(T.group, T.subgroup, T, "alpha-faithful")
        if not rep.results[0].passed:
            bad.append((spec, gens, strat))
    record(4, "alpha is injective and a homomorphism", not bad, f"{len(items)} instances")
    assert not bad


def test_05_gset_square():
    bad = []
    items = _all_instances()
    for spec, gens, strat, T in items:
        rep = run_laws(T.group, T.subgroup, T, "gset-square")
        if not rep.results[0].passed:
            bad.append((spec, gens, strat))
    record(5, "nabla(g k) = alpha(g)(nabla(k))", not bad, f"{len(items)} instances")
    assert not bad


def test_06_round_trips():
    bad = []
    items = _all_instances()
    for spec, gens, strat, T in items:
        F = build_fibration(T)
        n = T.group.order
        if [nabla_inv(F, nabla(F, g)) for g in range(n)] != list(range(n)):
            bad.append((spec, gens, strat, "G"))
        for t in F.reps:
            for h in F.subgroup.members:
                if nabla(F, nabla_inv(F, (t, h))) != (t, h):
                    bad.append((spec, gens, strat, "TxH"))
    record(6, "nabla round trips on G and on T x H", not bad, f"{len(items)} instances")
    assert not bad


def test_07_rewrite_reconstruction():
    bad = []
    pairs = 0
    items = _all_instances()
    for spec, gens, strat, T in items:
        F = build_fibration(T)
        G = T.group
        reps = set(F.reps)
        for g1 in range(G.order):
            for g2 in range(G.order):
                tr = rewrite_product(F, g1, g2)
                pairs += 1
                ok = (tr.rep_part in reps and tr.fib_part in T.subgroup
                      and tr.h_tail in T.subgroup
                      and G.mul(G.mul(tr.rep_part, tr.fib_part), tr.h_tail) == G.mul(g1, g2))
                if not ok:
                    bad.append((spec, gens, strat, g1, g2))
    record(7, "rewrite traces reconstruct every product", not bad,
           f"{pairs} pairs over {len(items)} instances")
    assert not bad


def _wrong(rng, current, size):
    choices = [v for v in range(size) if v != current]
    return int(rng.choice(choices))


def test_08_mutation_sensitivity():
    rng = np.random.default_rng(MUTATION_SEED)
    G = symmetric(3)
    survivors = []
    total = 0
    for gens in ([1], [3]):  # |H| = 2 and |H| = 3
        H = subgroup_generate(G, gens)
        T = choose(left_cosets(G, H), TransversalStrategy("min_index"))
        F = build_fibration(T)
        D = build(F)
        assert run_laws(G, H, T, fibration=F, diffracted=D).overall

        def caught(rep):
            fails = [r for r in rep.results if r.status == "fail"]
            return bool(fails) and all(r.counterexample for r in fails)

        for name, table, size, rebuild in (
            ("delta", F.delta, F.h_size, lambda t: (F.with_delta(t), D)),
            ("gamma", F.gamma, F.t_size, lambda t: (F.with_gamma(t), D)),
            ("bequeath", D.table, D.order, lambda t: (F, D.with_table(t))),
        ):
            for idx in np.ndindex(table.shape):
                mutated = np.array(table)
                mutated[idx] = _wrong(rng, int(mutated[idx]), size)
                F2, D2 = rebuild(mutated)
                total += 1
                if not caught(run_laws(G, H, T, fibration=F2, diffracted=D2)):
                    survivors.append((H.order, name, idx))
    record(8, "every single-entry mutation is caught", not survivors,
           f"{total} mutations on S3, {len(survivors)} survived")
    assert not survivors


def test_09_determinism():
    cmd = [sys.executable, "-m", "diffract", "diffract", "--builtin", "symmetric:4",
           "--subgroup-gens", "1,3", "--strategy", "random:3", "--json"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    same_bytes = runs[0] == runs[1] and len(runs[0]) > 0
    G = symmetric(4)
    C = left_cosets(G, subgroup_generate(G, [5]))
    reps_stable = all(
        choose(C, TransversalStrategy("random", seed=s)).reps
        == choose(C, TransversalStrategy("random", seed=s)).reps
        for s in range(50))
    in_process = _cli(*cmd[3:]) == _cli(*cmd[3:])
    ok = same_bytes and reps_stable and in_process
    record(9, "diffract --json is byte-identical across runs", ok)
    assert ok


def test_10_bench_self_agreement():
    cmd = [sys.executable, "-m", "diffract", "bench", "--builtin", "symmetric:4",
           "--subgroup-gens", "3,7", "--reps", "100000"]
    start = time.perf_counter()
    proc = subprocess.run(cmd, capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    lines = proc.stdout.splitlines()
    ok = (proc.returncode == 0 and elapsed < 10 and len(lines) == 5
          and lines[-1] == "agreement: ok over 100000 products")
    record(10, "bench --reps 100000 on S4/A4 agrees", ok, f"{elapsed:.2f}s")
    assert ok, proc.stdout + proc.stderr
