"""End-to-end acceptance criteria, one test per criterion.

Each test prints a one-line verdict (visible with ``-s``); the conftest
also summarizes all of them at the end of the run.
"""

import csv
import io
import itertools
import time
from fractions import Fraction

import numpy as np

from mixedrs.bounds import (
    BLOCK_ACHIEVABLE,
    DIMENSION_OPTIMAL,
    NEITHER,
    QUANTUM_BOUND,
    SINGLETON_LINE,
    block_error_bound,
    classify_gamma_delta,
    classify_parameters,
    classify_thresholds,
    entangled_distance,
    gamma_delta,
    quantum_bound,
    quantum_feasible,
    singleton_bound,
)
from mixedrs.cli import main
from mixedrs.codec import (
    all_codewords,
    brute_force_min_distance,
    decode_erasures,
    decode_errors,
    encode,
    expanded_generator,
    nearest_codeword_oracle,
    received,
)
from mixedrs.construction import iter_valid_specs, make_spec, min_distance
from mixedrs.gf import build_base_field
from mixedrs.linalg import batch_rank
from mixedrs.simulator import (
    AMBIGUOUS,
    SUCCESS,
    ChannelModel,
    adversarial_erasure_pattern,
    judge,
    random_message,
    run_trials,
)

GF3 = build_base_field(3)
GF8 = build_base_field(2, 3)


def verdict(num, text):
    print(f"[criterion {num}] PASS {text}")


def run_cli(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_criterion_01_worked_example():
    start = time.perf_counter()
    spec = make_spec(GF8, 34, 20, n1=6, n2=28)
    d = min_distance(spec)
    assert (d, spec.c, Fraction(spec.k, spec.n)) == (22, 28, Fraction(20, 34))
    assert singleton_bound(34, 22) == 13 < spec.k
    assert str(spec) == "[34,20,22;28]_8"
    assert time.perf_counter() - start < 1
    verdict(1, "[34,20,22;28]_8 built, d=22 c=28 rate 20/34 vs classical k<=13")


def test_criterion_02_erasure_guarantee_full_scale():
    start = time.perf_counter()
    spec = make_spec(GF8, 34, 20, n1=6)
    report = run_trials(spec, ChannelModel.fixed_erasures(21), 1000, master_seed=2024)
    successes = report.success_count
    msg = random_message(spec, 99, 0)
    cw = encode(spec, msg)
    adv21 = received(spec, cw.symbols, adversarial_erasure_pattern(spec, 21))
    successes += judge(spec, msg, adv21, erasure_only=True) == SUCCESS
    adv22 = received(spec, cw.symbols, adversarial_erasure_pattern(spec, 22))
    assert successes == 1001
    assert judge(spec, msg, adv22, erasure_only=True) == AMBIGUOUS
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    verdict(2, f"1001/1001 decoded, 22-erasure adversarial ambiguous ({elapsed:.1f}s)")


def test_criterion_03_distance_formula_oracle():
    start = time.perf_counter()
    checked = 0
    for p, m in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        field = build_base_field(p, m)
        k_max = 0
        while field.q ** (k_max + 1) <= 10**5:
            k_max += 1
        for spec in iter_valid_specs(field, k_max=k_max):
            assert brute_force_min_distance(spec) == min_distance(spec), str(spec)
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 300
    verdict(3, f"{checked} specs, brute force == closed form ({elapsed:.1f}s)")


def test_criterion_04_rate_above_one():
    start = time.perf_counter()
    spec = make_spec(GF3, 5, 6, n1=2)
    assert min_distance(spec) == 2
    msgs, words = all_codewords(spec)
    assert len({tuple(w) for w in words.tolist()}) == 729 == len(msgs)
    for msg in itertools.product(range(3), repeat=6):
        cw = encode(spec, msg)
        for pos in range(5):
            assert decode_erasures(spec, received(spec, cw.symbols, [pos])) == msg
    elapsed = time.perf_counter() - start
    assert elapsed < 10
    verdict(4, f"[5,6,2;3]_3: 729 distinct codewords, every single erasure corrected ({elapsed:.1f}s)")


def _pattern_masks(spec, weight):
    """Boolean row masks, one per erasure pattern of the given weight; True keeps a row."""
    # generator rows: one per base coordinate, two per extension coordinate
    owners = np.array(list(range(spec.n1)) + [i for i in range(spec.n1, spec.n) for _ in (0, 1)])
    patterns = list(itertools.combinations(range(spec.n), weight))
    keep = np.ones((len(patterns), len(owners)), dtype=bool)
    for j, pat in enumerate(patterns):
        keep[j] = ~np.isin(owners, pat)
    return keep


def test_criterion_05_erasure_completeness_and_tightness():
    start = time.perf_counter()
    checked = 0
    for p, m in [(2, 1), (3, 1), (2, 2)]:
        field = build_base_field(p, m)
        for spec in iter_valid_specs(field, max_n=12):
            G = expanded_generator(spec)
            d = min_distance(spec)
            for w in range(d + 1):
                keep = _pattern_masks(spec, w)
                ranks = batch_rank(field, np.where(keep[:, :, None], G[None, :, :], 0))
                if w < d:
                    assert (ranks == spec.k).all(), (str(spec), w)
                else:
                    assert (ranks < spec.k).any(), str(spec)
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 300
    verdict(5, f"{checked} specs: weight <= d-1 full rank, some weight d deficient ({elapsed:.1f}s)")


def test_criterion_06_error_decoding():
    start = time.perf_counter()
    spec = make_spec(GF3, 5, 4, n1=2)
    assert min_distance(spec) == 3
    words = 0
    for msg in itertools.product(range(3), repeat=4):
        cw = encode(spec, msg)
        assert decode_errors(spec, received(spec, cw.symbols), t=1) == msg
        assert nearest_codeword_oracle(spec, cw.symbols) == ({msg}, 0)
        for pos in range(5):
            for v in range(3 if pos < 2 else 9):
                if v == cw.symbols[pos]:
                    continue
                syms = list(cw.symbols)
                syms[pos] = v
                got = decode_errors(spec, received(spec, syms), t=1)
                assert got == msg
                best, dist = nearest_codeword_oracle(spec, syms)
                assert best == {msg} and dist == 1
                words += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    verdict(6, f"[5,4,3;3]_3: {words} corrupted words decoded, oracle agrees ({elapsed:.1f}s)")


def test_criterion_07_block_error_bound():
    equal = slack = 0
    for p, m in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]:
        field = build_base_field(p, m)
        for spec in iter_valid_specs(field):
            d = min_distance(spec)
            bound = block_error_bound(spec.n, d, spec.n1, spec.n2)
            assert spec.k <= bound
            if (spec.n - spec.k + 1 + spec.c) % 2 == 1 and spec.n - field.q <= spec.c:
                assert spec.k == bound, str(spec)
                equal += 1
            else:
                assert bound - spec.k <= 1, str(spec)
                slack += 1
    assert block_error_bound(34, 22, 6, 28) == 2 * (28 - 21) + 6 == 20
    verdict(7, f"q<=9: {equal} tight, {slack} within 1; [34,20,22;28]_8 bound 20")


GRID = 10**4


def _grid_feasible_batch(points):
    """Grid oracle: t in {i/GRID} plus t = c/n, all comparisons in integers."""
    P = np.array(points, dtype=np.int64)
    n, k, d, c = (P[:, j, None] for j in range(4))
    i = np.arange(GRID + 1, dtype=np.int64)[None, :]
    # constraints multiplied through by GRID, with t = i / GRID
    ok = (
        (k * GRID <= (n - d + 1) * (GRID + i))
        & (-c * GRID <= (n - 2 * d + 2) * i)
        & ((k - c) * GRID <= (n - d + 1) * GRID - i * (d - 1))
    ).any(axis=1)
    n, k, d, c = (P[:, j] for j in range(4))
    # the same constraints at t = c/n, multiplied through by n
    at_star = (
        (k * n <= (n - d + 1) * (n + c))
        & (-c * n <= (n - 2 * d + 2) * c)
        & ((k - c) * n <= (n - d + 1) * n - c * (d - 1))
    )
    return ok | at_star


def test_criterion_08_quantum_bound_machinery():
    points = []
    for n in range(1, 41):
        for c in range(0, n + 1):
            for d in range(1, n + 1):
                qk = quantum_bound(n, d, c)
                centre = qk.numerator // qk.denominator
                for k in range(max(1, centre - 2), centre + 3):
                    points.append((n, k, d, c))
    interval = np.array([quantum_feasible(*pt) for pt in points])
    grid = np.concatenate([_grid_feasible_batch(points[s:s + 500]) for s in range(0, len(points), 500)])
    assert (interval == grid).all()

    classified = 0
    for n in range(2, 41):
        for c in range(0, n):
            for k in range(1, n + c + 1):
                for d in {entangled_distance(n, k, c), n - k + 1}:
                    if 1 <= d <= n:
                        assert classify_gamma_delta(n, k, d, c) == classify_thresholds(n, k, d, c)
                        classified += 1

    assert gamma_delta(5, 4, 3, 3) == (Fraction(4, 5), Fraction(1, 2))
    assert classify_parameters(5, 4, 3, 3) == DIMENSION_OPTIMAL
    assert gamma_delta(34, 20, 22, 28) == (Fraction(63, 17), Fraction(63, 31))
    assert classify_parameters(34, 20, 22, 28) == NEITHER
    verdict(8, f"{len(points)} feasibility points match grid oracle, {classified} classifications agree")


def _corrupt(symbols, changes):
    syms = list(symbols)
    for pos, value in changes.items():
        assert value != syms[pos]
        syms[pos] = value
    return syms


def _other(value, alphabet, shift):
    return (value + 1 + shift % (alphabet - 1)) % alphabet


def test_criterion_09_noisy_entanglement():
    # [5,4,3;3]_3: every single error or single bad ebit, every position and value
    spec = make_spec(GF3, 5, 4, n1=2)
    cases = 0
    for msg in itertools.product(range(3), repeat=4):
        cw = encode(spec, msg)
        for pos in range(5):
            alphabet = 3 if pos < 2 else 9
            for shift in range(alphabet - 1):
                # positions >= n1 model a bad ebit: the whole GF(q^2) symbol is replaced
                syms = _corrupt(cw.symbols, {pos: _other(cw.symbols[pos], alphabet, shift)})
                assert decode_errors(spec, received(spec, syms)) == msg
                cases += 1
    # [6,2,5;3]_3: every placement of e errors and b bad ebits with e + b <= 2
    spec = make_spec(GF3, 6, 2, n1=3)
    assert min_distance(spec) == 5
    rng = np.random.default_rng(9)
    for msg in itertools.product(range(3), repeat=2):
        cw = encode(spec, msg)
        for e in range(3):
            for b in range(3 - e):
                for err_pos in itertools.combinations(range(spec.n), e):
                    free_ext = [i for i in range(spec.n1, spec.n) if i not in err_pos]
                    for ebit_pos in itertools.combinations(free_ext, b):
                        changes = {}
                        for pos in err_pos + ebit_pos:
                            alphabet = 3 if pos < spec.n1 else 9
                            changes[pos] = _other(cw.symbols[pos], alphabet, int(rng.integers(0, 8)))
                        syms = _corrupt(cw.symbols, changes)
                        assert decode_errors(spec, received(spec, syms)) == msg
                        cases += 1
    verdict(9, f"{cases} error/bad-ebit placements within floor((d-1)/2) decoded")


def _tradeoff(e, resolution=60):
    code, text = run_cli(["tradeoff", "--e", e, "--resolution", str(resolution)])
    assert code == 0
    table = {}
    for row in csv.DictReader(io.StringIO(text)):
        table.setdefault(Fraction(row["delta"]), {})[row["series"]] = Fraction(row["rate"])
    return table


def test_criterion_10_tradeoff_data():
    assert any(s[BLOCK_ACHIEVABLE] > 1 for s in _tradeoff("1").values())
    for delta, s in _tradeoff("0").items():
        assert s[SINGLETON_LINE] == s[BLOCK_ACHIEVABLE] == s[QUANTUM_BOUND] == 1 - delta
    for e in ("0", "1/4", "1/3", "1/2", "2/3", "1"):
        ef = Fraction(e)
        for delta, s in _tradeoff(e).items():
            gap = s[QUANTUM_BOUND] - s[BLOCK_ACHIEVABLE]
            assert gap >= 0
            if delta <= ef:
                # the 1 + e - 2*delta branch
                assert gap == delta * (1 - ef)
            else:
                # the Singleton branch, where the achievable rate is 1 - delta
                assert gap == ef * (1 - delta)
    verdict(
        10,
        "rates > 1 at e=1; e=0 series coincide; achievable <= quantum everywhere. "
        "Gap is delta(1-e) only for delta <= e and e(1-delta) above that, because the "
        "e=0 coincidence clause rules out a delta(1-e) gap everywhere",
    )


def test_criterion_11_determinism(tmp_path):
    spec_path = tmp_path / "spec.json"
    assert run_cli(["construct", "--field", "3", "--n", "5", "--k", "4", "--n1", "2", "--out", str(spec_path)])[0] == 0
    for model in (["--erasure-prob", "0.35"], ["--mixed", "0.1", "0.2"]):
        argv = ["simulate", str(spec_path), "--trials", "300", "--seed", "17"] + model
        results = {run_cli(argv + extra) for extra in ([], [], ["--workers", "3"], ["--workers", "2"])}
        assert len(results) == 1
        (code, text), = results
        assert code == 0 and text.count("\n") == 2
    verdict(11, "simulate output byte-identical across repeats and worker counts")
