"""Classical simulation of direct coding plus super-dense coding.

One super-dense transmission carries one GF(q^2) symbol; losing it erases
that whole extension coordinate (two base symbols). A bad ebit corrupts
the extension coordinate it was used for.

Per-trial randomness comes from ``SeedSequence([seed, trial_index, stream])``
so a run gives the same report however the trials are scheduled.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .codec import (
    AmbiguousDecoding,
    Codeword,
    DecodingFailure,
    InconsistentWord,
    ReceivedWord,
    decode_erasures,
    decode_errors,
    encode,
    origin_tags,
)
from .construction import CodeSpec

FIXED_ERASURES = "fixed_erasures"
IID_ERASURE = "iid_erasure"
IID_ERROR = "iid_error"
MIXED = "mixed"

SUCCESS = "success"
DECODE_FAILURE = "decode_failure"
AMBIGUOUS = "ambiguous"
INCONSISTENT = "inconsistent"
OUTCOMES = (SUCCESS, DECODE_FAILURE, AMBIGUOUS, INCONSISTENT)

_MESSAGE_STREAM = 0
_CHANNEL_STREAM = 1


@dataclass(frozen=True)
class ChannelModel:
    mode: str
    count: int = 0
    prob: float = 0.0
    error_prob: float = 0.0
    bad_ebit_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in (FIXED_ERASURES, IID_ERASURE, IID_ERROR, MIXED):
            raise ValueError(f"unknown channel mode {self.mode!r}")
        for p in (self.prob, self.error_prob, self.bad_ebit_prob):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")
        if self.count < 0:
            raise ValueError("erasure count must be nonnegative")

    @classmethod
    def fixed_erasures(cls, count: int, seed: int = 0):
        return cls(FIXED_ERASURES, count=count, seed=seed)

    @classmethod
    def iid_erasure(cls, prob: float, seed: int = 0):
        return cls(IID_ERASURE, prob=prob, seed=seed)

    @classmethod
    def iid_error(cls, prob: float, seed: int = 0):
        return cls(IID_ERROR, error_prob=prob, seed=seed)

    @classmethod
    def mixed(cls, error_prob: float, bad_ebit_prob: float, seed: int = 0):
        return cls(MIXED, error_prob=error_prob, bad_ebit_prob=bad_ebit_prob, seed=seed)

    @property
    def erasure_only(self) -> bool:
        return self.mode in (FIXED_ERASURES, IID_ERASURE)

    def describe(self) -> str:
        if self.mode == FIXED_ERASURES:
            return f"fixed_erasures({self.count})"
        if self.mode == IID_ERASURE:
            return f"iid_erasure({self.prob})"
        if self.mode == IID_ERROR:
            return f"iid_error({self.error_prob})"
        return f"mixed({self.error_prob};{self.bad_ebit_prob})"


@dataclass(frozen=True)
class TrialResult:
    outcome: str
    erasures_applied: int = 0
    errors_applied: int = 0
    bad_ebits_applied: int = 0


@dataclass(frozen=True)
class RunReport:
    spec_id: str
    model: str
    trials: int
    counts: dict
    seed: int
    channel_uses: int
    ebits: int
    info_symbols: int

    @property
    def success_count(self) -> int:
        return self.counts[SUCCESS]

    @property
    def success_rate(self) -> float:
        return self.counts[SUCCESS] / self.trials

    CSV_HEADER = (
        "spec", "model", "trials", "successes", "failures", "ambiguous",
        "inconsistent", "success_rate", "seed",
    )

    def csv_row(self) -> list:
        return [
            self.spec_id, self.model, self.trials, self.counts[SUCCESS],
            self.counts[DECODE_FAILURE], self.counts[AMBIGUOUS], self.counts[INCONSISTENT],
            f"{self.success_rate:.6f}", self.seed,
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.CSV_HEADER)
        writer.writerow(self.csv_row())
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [
            f"spec            {self.spec_id}",
            f"model           {self.model}",
            f"trials          {self.trials}",
        ]
        lines += [f"{name:<16}{self.counts[name]}" for name in OUTCOMES]
        lines += [
            f"success_rate    {self.success_rate:.6f}",
            f"channel_uses    {self.channel_uses}",
            f"ebits           {self.ebits}",
            f"info_symbols    {self.info_symbols}",
            f"seed            {self.seed}",
        ]
        return "\n".join(lines) + "\n"


def _rng(seed: int, trial_index: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, trial_index, stream]))


def _wrong_symbol(rng: np.random.Generator, alphabet: int, current: int) -> int:
    """Uniform symbol of the alphabet other than ``current``."""
    v = int(rng.integers(0, alphabet - 1))
    return v + 1 if v >= current else v


def adversarial_erasure_pattern(spec: CodeSpec, count: int) -> tuple[int, ...]:
    """Extension coordinates first (ascending), then base coordinates."""
    if not 0 <= count <= spec.n:
        raise ValueError(f"erasure count {count} outside 0..{spec.n}")
    order = list(range(spec.n1, spec.n)) + list(range(spec.n1))
    return tuple(sorted(order[:count]))


def transmit(
    spec: CodeSpec, cw: Codeword, ch: ChannelModel, trial_index: int
) -> tuple[ReceivedWord, TrialResult]:
    """Pass a codeword through the channel; returns the received word and what was applied."""
    rng = _rng(ch.seed, trial_index, _CHANNEL_STREAM)
    syms: list[int | None] = list(cw.symbols)
    n, n1 = spec.n, spec.n1
    erasures = errors = bad = 0
    if ch.mode == FIXED_ERASURES:
        if ch.count > n:
            raise ValueError(f"cannot erase {ch.count} of {n} coordinates")
        for i in rng.choice(n, size=ch.count, replace=False):
            syms[int(i)] = None
        erasures = ch.count
    elif ch.mode == IID_ERASURE:
        hits = rng.random(n) < ch.prob
        for i in np.flatnonzero(hits):
            syms[int(i)] = None
        erasures = int(hits.sum())
    else:
        err_draw = rng.random(n)
        ebit_draw = rng.random(n)
        for i in range(n):
            alphabet = spec.q if i < n1 else spec.ext.order
            if ch.mode == MIXED and i >= n1 and ebit_draw[i] < ch.bad_ebit_prob:
                syms[i] = _wrong_symbol(rng, alphabet, syms[i])
                bad += 1
            elif err_draw[i] < ch.error_prob:
                syms[i] = _wrong_symbol(rng, alphabet, syms[i])
                errors += 1
    rcv = ReceivedWord(tuple(syms), origin_tags(spec))
    return rcv, TrialResult(SUCCESS, erasures, errors, bad)


def random_message(spec: CodeSpec, seed: int, trial_index: int) -> tuple[int, ...]:
    rng = _rng(seed, trial_index, _MESSAGE_STREAM)
    return tuple(int(x) for x in rng.integers(0, spec.q, size=spec.k))


def decode_received(spec: CodeSpec, rcv: ReceivedWord, erasure_only: bool) -> tuple[int, ...]:
    if erasure_only:
        return decode_erasures(spec, rcv)
    return decode_errors(spec, rcv)


def judge(spec: CodeSpec, msg, rcv: ReceivedWord, erasure_only: bool) -> str:
    """Decode ``rcv`` and classify the outcome against the sent message."""
    try:
        out = decode_received(spec, rcv, erasure_only)
    except AmbiguousDecoding:
        return AMBIGUOUS
    except InconsistentWord:
        return INCONSISTENT
    except DecodingFailure:
        return DECODE_FAILURE
    return SUCCESS if tuple(out) == tuple(msg) else DECODE_FAILURE


def run_trial(spec: CodeSpec, ch: ChannelModel, trial_index: int) -> TrialResult:
    msg = random_message(spec, ch.seed, trial_index)
    rcv, applied = transmit(spec, encode(spec, msg), ch, trial_index)
    outcome = judge(spec, msg, rcv, ch.erasure_only)
    return replace(applied, outcome=outcome)


def _run_range(spec: CodeSpec, ch: ChannelModel, start: int, stop: int) -> Counter:
    counts = Counter()
    for i in range(start, stop):
        counts[run_trial(spec, ch, i).outcome] += 1
    return counts


def run_trials(
    spec: CodeSpec, ch: ChannelModel, trials: int, master_seed: int | None = None, workers: int = 1
) -> RunReport:
    """Run independent trials; ``master_seed`` (when given) replaces the channel seed."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if master_seed is not None:
        ch = replace(ch, seed=master_seed)
    counts = Counter({name: 0 for name in OUTCOMES})
    if workers <= 1:
        counts.update(_run_range(spec, ch, 0, trials))
    else:
        chunk = -(-trials // (workers * 4))
        bounds = [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_range, spec, ch, s, e) for s, e in bounds]
            for fut in futures:
                counts.update(fut.result())
    return RunReport(
        spec_id=str(spec),
        model=ch.describe(),
        trials=trials,
        counts={name: counts[name] for name in OUTCOMES},
        seed=ch.seed,
        channel_uses=spec.n * trials,
        ebits=spec.c * trials,
        info_symbols=spec.k * trials,
    )
