"""Encoding and decoding of mixed-alphabet Reed-Solomon codewords.

Erasure decoding solves for the k message coefficients over GF(q): a
surviving base coordinate gives one equation, a surviving extension
coordinate gives two (one per component in the basis {1, beta}). This is
the same as interpolating at both gamma and its conjugate gamma^q, and it
keeps every recovered coefficient inside GF(q).

Error decoding enumerates candidate error supports in increasing size.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .construction import CodeSpec, min_distance
from .linalg import SingularSystem, rank, solve

DEFAULT_BRUTE_FORCE_BUDGET = 10**6
DEFAULT_ERROR_BUDGET = 10**7

DIRECT = "direct"
SUPERDENSE = "superdense"


class DecodingError(Exception):
    """Base class for decoder failures."""


class InconsistentWord(DecodingError):
    """No codeword matches the unerased coordinates: symbols were corrupted."""


class AmbiguousDecoding(DecodingError):
    """Too few surviving equations to pin down the message."""


class DecodingFailure(DecodingError):
    """No unique codeword within the requested error radius."""


class BudgetExceeded(Exception):
    """An enumeration would exceed the configured work budget."""


@dataclass(frozen=True)
class Codeword:
    base_part: tuple[int, ...]
    ext_part: tuple[int, ...]

    @property
    def symbols(self) -> tuple[int, ...]:
        return self.base_part + self.ext_part

    def __len__(self):
        return len(self.base_part) + len(self.ext_part)


@dataclass(frozen=True)
class ReceivedWord:
    """n coordinate slots; ``None`` marks an erasure."""

    symbols: tuple[int | None, ...]
    origins: tuple[str, ...] | None = dc_field(default=None, compare=False)

    @property
    def erased(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.symbols) if s is None)

    def __len__(self):
        return len(self.symbols)


def origin_tags(spec: CodeSpec) -> tuple[str, ...]:
    return (DIRECT,) * spec.n1 + (SUPERDENSE,) * spec.n2


def received(spec: CodeSpec, symbols: Sequence[int | None], erasures=()) -> ReceivedWord:
    """Wrap symbols as a received word, marking ``erasures`` and checking alphabets."""
    syms = list(symbols)
    if len(syms) != spec.n:
        raise ValueError(f"expected {spec.n} symbols, got {len(syms)}")
    for i in erasures:
        syms[i] = None
    for i, s in enumerate(syms):
        if s is None:
            continue
        size = spec.q if i < spec.n1 else spec.ext.order
        if not 0 <= s < size:
            raise ValueError(f"symbol {s} at position {i} outside alphabet of size {size}")
    return ReceivedWord(tuple(syms), origin_tags(spec))


def as_received(spec: CodeSpec, cw: Codeword) -> ReceivedWord:
    return ReceivedWord(cw.symbols, origin_tags(spec))


# -- wire format -------------------------------------------------------------

def erasure_sentinel(spec: CodeSpec) -> int:
    return spec.q * spec.q


def to_wire(spec: CodeSpec, word) -> list[int]:
    """Integers for a codeword or received word; erasures become q^2."""
    sentinel = erasure_sentinel(spec)
    syms = word.symbols if hasattr(word, "symbols") else word
    return [sentinel if s is None else int(s) for s in syms]


def from_wire(spec: CodeSpec, values: Sequence[int]) -> ReceivedWord:
    sentinel = erasure_sentinel(spec)
    return received(spec, [None if v == sentinel else int(v) for v in values])


# -- encoding ----------------------------------------------------------------

def _check_message(spec: CodeSpec, msg: Sequence[int]) -> tuple[int, ...]:
    msg = tuple(int(m) for m in msg)
    if len(msg) != spec.k:
        raise ValueError(f"message has {len(msg)} symbols, expected k={spec.k}")
    if any(not 0 <= m < spec.q for m in msg):
        raise ValueError(f"message symbols must lie in 0..{spec.q - 1}")
    return msg


def encode(spec: CodeSpec, msg: Sequence[int]) -> Codeword:
    """Evaluate f(x) = sum msg[i] x^i at every evaluation point (Horner)."""
    msg = _check_message(spec, msg)
    F, E = spec.field, spec.ext
    base = []
    for a in spec.alphas:
        acc = 0
        for coef in reversed(msg):
            acc = F.add(F.mul(acc, a), coef)
        base.append(acc)
    ext = []
    for g in spec.gammas:
        acc = 0
        for coef in reversed(msg):
            acc = E.add(E.mul(acc, g), E.embed(coef))
        ext.append(acc)
    return Codeword(tuple(base), tuple(ext))


def hamming_distance(a, b) -> int:
    """Positions where two words differ; an extension coordinate is one position."""
    sa = a.symbols if hasattr(a, "symbols") else tuple(a)
    sb = b.symbols if hasattr(b, "symbols") else tuple(b)
    if len(sa) != len(sb):
        raise ValueError(f"shape mismatch: {len(sa)} vs {len(sb)} coordinates")
    return sum(x != y for x, y in zip(sa, sb))


# -- erasure decoding ----------------------------------------------------------

@functools.lru_cache(maxsize=256)
def _coordinate_rows(spec: CodeSpec) -> tuple[np.ndarray, ...]:
    """Per coordinate, the GF(q) rows of its equations in the k coefficients."""
    F, E = spec.field, spec.ext
    rows = []
    for a in spec.alphas:
        rows.append(np.array([[F.pow(a, t) for t in range(spec.k)]], dtype=np.int64))
    for g in spec.gammas:
        powers = [E.pow(g, t) for t in range(spec.k)]
        comps = [E.components(z) for z in powers]
        rows.append(np.array([[u for u, _ in comps], [v for _, v in comps]], dtype=np.int64))
    return tuple(rows)


def expanded_generator(spec: CodeSpec) -> np.ndarray:
    """(n1 + 2*n2) x k matrix over GF(q) mapping coefficients to coordinate components."""
    return np.concatenate(_coordinate_rows(spec), axis=0)


def build_erasure_system(spec: CodeSpec, rcv: ReceivedWord) -> tuple[np.ndarray, np.ndarray]:
    """Equations ``A m = b`` over GF(q) contributed by the unerased coordinates."""
    if len(rcv) != spec.n:
        raise ValueError(f"received word has {len(rcv)} slots, expected {spec.n}")
    rows = _coordinate_rows(spec)
    A, b = [], []
    for i, s in enumerate(rcv.symbols):
        if s is None:
            continue
        A.append(rows[i])
        if i < spec.n1:
            b.append(s)
        else:
            b.extend(spec.ext.components(s))
    if not A:
        return np.zeros((0, spec.k), dtype=np.int64), np.zeros(0, dtype=np.int64)
    return np.concatenate(A, axis=0), np.array(b, dtype=np.int64)


def erasure_rank(spec: CodeSpec, erased: Sequence[int]) -> int:
    gone = set(erased)
    kept = [r for i, r in enumerate(_coordinate_rows(spec)) if i not in gone]
    if not kept:
        return 0
    return rank(spec.field, np.concatenate(kept, axis=0))


def decode_erasures(spec: CodeSpec, rcv: ReceivedWord) -> tuple[int, ...]:
    """Recover the message from the unerased coordinates."""
    A, b = build_erasure_system(spec, rcv)
    try:
        msg = solve(spec.field, A, b)
    except SingularSystem as exc:
        if not exc.consistent:
            raise InconsistentWord(f"unerased symbols match no codeword ({exc})") from None
        raise AmbiguousDecoding(
            f"{len(rcv.erased)} erasures leave rank {exc.rank} < k={spec.k}"
        ) from None
    msg = tuple(int(x) for x in msg)
    cw = encode(spec, msg).symbols
    if any(s is not None and s != c for s, c in zip(rcv.symbols, cw)):
        raise InconsistentWord("re-encoded message disagrees with unerased symbols")
    return msg


# -- error decoding ------------------------------------------------------------

def max_error_radius(spec: CodeSpec, erasures: int = 0) -> int:
    return max(-1, (min_distance(spec) - 1 - erasures) // 2)


def decode_errors(
    spec: CodeSpec,
    rcv: ReceivedWord,
    t: int | None = None,
    budget: int = DEFAULT_ERROR_BUDGET,
) -> tuple[int, ...]:
    """Bounded-distance decoding by enumeration of error supports.

    Erasure marks in ``rcv`` are fixed first; ``t`` defaults to the largest
    radius with 2t + erasures <= d - 1. Supports are tried by increasing
    size and the whole first size with any consistent candidate is
    scanned, so a tie between codewords is reported as a failure instead
    of being broken arbitrarily.
    """
    erased = set(rcv.erased)
    if t is None:
        t = max_error_radius(spec, len(erased))
        if t < 0:
            raise DecodingFailure(f"{len(erased)} erasures exceed d-1={min_distance(spec) - 1}")
    free = [i for i in range(spec.n) if i not in erased]
    t = min(t, len(free))
    supports = sum(math.comb(len(free), s) for s in range(t + 1))
    cost = supports * spec.k * (spec.n1 + 2 * spec.n2)
    if cost > budget:
        raise BudgetExceeded(
            f"error decoding needs ~{cost} elimination steps ({supports} supports), budget {budget}"
        )
    syms = list(rcv.symbols)
    for size in range(t + 1):
        found: set[tuple[int, ...]] = set()
        for support in itertools.combinations(free, size):
            trial = list(syms)
            for i in support:
                trial[i] = None
            trial_word = ReceivedWord(tuple(trial), rcv.origins)
            try:
                msg = decode_erasures(spec, trial_word)
            except InconsistentWord:
                continue
            except AmbiguousDecoding:
                # several messages agree outside this support: a tie at this radius
                raise DecodingFailure(
                    f"ambiguous: several codewords within distance {size}"
                ) from None
            found.add(msg)
            if len(found) > 1:
                raise DecodingFailure(f"ambiguous: several codewords at distance {size}")
        if found:
            return found.pop()
    raise DecodingFailure(f"no codeword within distance {t}")


# -- brute-force oracles ---------------------------------------------------------

def _enumerate_codewords(spec: CodeSpec, budget: int) -> tuple[np.ndarray, np.ndarray]:
    """All messages and codewords as (q^k, k) and (q^k, n) integer arrays.

    Built from the encodings of the unit messages, summed over all
    coefficient choices; relies only on :func:`encode` and linearity.
    """
    q, k, n = spec.q, spec.k, spec.n
    count = q**k
    if count > budget:
        raise BudgetExceeded(f"q^k = {count} codewords exceeds budget {budget}")
    F = spec.field
    # columns of base coordinates then (a, b) components of extension coordinates
    units = []
    for t in range(k):
        e = [0] * k
        e[t] = 1
        cw = encode(spec, e)
        comps = list(cw.base_part)
        for z in cw.ext_part:
            comps.extend(spec.ext.components(z))
        units.append(comps)
    units = np.array(units, dtype=np.int64).reshape(k, spec.n1 + 2 * spec.n2)
    words = np.zeros((1, spec.n1 + 2 * spec.n2), dtype=np.int64)
    msgs = np.zeros((1, 0), dtype=np.int64)
    scalars = np.arange(q, dtype=np.int64)
    for t in range(k):
        shift = F.vmul(scalars[:, None], units[t][None, :])  # (q, width)
        words = F.vadd(words[:, None, :], shift[None, :, :]).reshape(-1, units.shape[1])
        msgs = np.concatenate(
            [np.repeat(msgs, q, axis=0), np.tile(scalars, len(msgs))[:, None]], axis=1
        )
    base = words[:, : spec.n1]
    ext = words[:, spec.n1 :: 2] + q * words[:, spec.n1 + 1 :: 2] if spec.n2 else words[:, :0]
    return msgs, np.concatenate([base, ext], axis=1).reshape(count, n)


def all_codewords(spec: CodeSpec, budget: int = DEFAULT_BRUTE_FORCE_BUDGET):
    """Every (message, codeword) pair as integer arrays."""
    return _enumerate_codewords(spec, budget)


def brute_force_min_distance(spec: CodeSpec, budget: int = DEFAULT_BRUTE_FORCE_BUDGET) -> int:
    """Minimum weight over all nonzero codewords, by exhaustive enumeration."""
    msgs, words = _enumerate_codewords(spec, budget)
    nonzero = msgs.any(axis=1)
    weights = (words[nonzero] != 0).sum(axis=1)
    return int(weights.min())


def nearest_codeword_oracle(
    spec: CodeSpec, word, budget: int = DEFAULT_BRUTE_FORCE_BUDGET
) -> tuple[set[tuple[int, ...]], int]:
    """All messages whose codewords are nearest to ``word``, and that distance.

    Erased slots (``None``) are ignored when counting distance.
    """
    syms = word.symbols if hasattr(word, "symbols") else tuple(word)
    if len(syms) != spec.n:
        raise ValueError(f"shape mismatch: {len(syms)} vs {spec.n} coordinates")
    msgs, words = _enumerate_codewords(spec, budget)
    keep = [i for i, s in enumerate(syms) if s is not None]
    target = np.array([syms[i] for i in keep], dtype=np.int64)
    dist = (words[:, keep] != target[None, :]).sum(axis=1)
    best = int(dist.min())
    return {tuple(int(x) for x in m) for m in msgs[dist == best]}, best
