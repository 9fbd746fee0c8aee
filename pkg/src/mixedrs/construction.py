"""Code specifications [n, k, d; c]_q for mixed-alphabet Reed-Solomon codes.

A code evaluates polynomials over GF(q) of degree < k at n1 points of GF(q)
and at n2 points of GF(q^2) \\ GF(q), one from each chosen conjugate pair.
The n2 extension coordinates are sent by super-dense coding, each using one
ebit, so the entanglement cost is c = n2.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .gf import (
    BaseField,
    QuadraticExtension,
    build_base_field,
    build_quadratic_extension,
    field_from_descriptor,
)


class InvalidSpec(ValueError):
    """A code specification violates one of its constraints.

    ``reason`` names the constraint: ``length_cap``, ``length_mismatch``,
    ``k_range``, ``non_injective``, ``n1_exceeds_q``, ``n2_exceeds_pairs``,
    ``duplicate_point``, ``conjugate_duplicate`` or ``wrong_field``.
    """

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(message)


def num_pairs(q: int) -> int:
    """Number of conjugate pairs in GF(q^2) \\ GF(q)."""
    return (q * q - q) // 2


def max_length(q: int) -> int:
    return q + num_pairs(q)


@dataclass(frozen=True)
class CodeSpec:
    field: BaseField
    ext: QuadraticExtension
    n: int
    k: int
    n1: int
    n2: int
    alphas: tuple[int, ...]
    gammas: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def c(self) -> int:
        return self.n2

    def __str__(self):
        return f"[{self.n},{self.k},{min_distance(self)};{self.c}]_{self.q}"

    def to_dict(self) -> dict:
        return {"p": self.field.p, "m": self.field.m, "n": self.n, "k": self.k, "n1": self.n1, "n2": self.n2}


@dataclass(frozen=True)
class CodeSummary:
    spec: CodeSpec
    d: int
    rate: Fraction
    erasures: int
    errors: int
    ebits: int
    messages: int

    @property
    def degenerate(self) -> bool:
        """True when the code cannot correct even one erasure (d = 1)."""
        return self.d == 1


@functools.lru_cache(maxsize=None)
def _representatives(ext: QuadraticExtension, n2: int) -> tuple[int, ...]:
    return tuple(itertools.islice(ext.iter_representatives(), n2))


def canonical_points(field: BaseField, ext: QuadraticExtension, n1: int, n2: int):
    """First n1 base elements and first n2 conjugate-pair representatives, ascending."""
    if n1 < 0 or n2 < 0:
        raise InvalidSpec("k_range", "point counts must be nonnegative")
    if n1 > field.q:
        raise InvalidSpec("n1_exceeds_q", f"n1={n1} exceeds q={field.q}")
    if n2 > num_pairs(field.q):
        raise InvalidSpec(
            "n2_exceeds_pairs", f"n2={n2} exceeds (q^2-q)/2={num_pairs(field.q)} conjugate pairs"
        )
    return tuple(range(n1)), _representatives(ext, n2)


def validate(spec: CodeSpec) -> None:
    """Raise :class:`InvalidSpec` unless every constraint on ``spec`` holds."""
    q = spec.q
    if spec.n < 1 or spec.n > max_length(q):
        raise InvalidSpec("length_cap", f"n={spec.n} outside 1..(q^2+q)/2={max_length(q)}")
    if spec.n1 + spec.n2 != spec.n or spec.n1 < 0 or spec.n2 < 0:
        raise InvalidSpec("length_mismatch", f"n1+n2={spec.n1}+{spec.n2} != n={spec.n}")
    if spec.n1 > q:
        raise InvalidSpec("n1_exceeds_q", f"n1={spec.n1} exceeds q={q}")
    if spec.n2 > num_pairs(q):
        raise InvalidSpec("n2_exceeds_pairs", f"n2={spec.n2} exceeds (q^2-q)/2={num_pairs(q)}")
    if spec.k < 1:
        raise InvalidSpec("k_range", f"k={spec.k} must be >= 1")
    if spec.k > spec.n + spec.n2:
        raise InvalidSpec(
            "non_injective", f"k={spec.k} exceeds n1+2*n2={spec.n + spec.n2}; encoding not injective"
        )
    if len(spec.alphas) != spec.n1 or len(spec.gammas) != spec.n2:
        raise InvalidSpec("length_mismatch", "point lists do not match n1, n2")
    if any(not 0 <= a < q for a in spec.alphas):
        raise InvalidSpec("wrong_field", "base evaluation point outside GF(q)")
    if len(set(spec.alphas)) != len(spec.alphas):
        raise InvalidSpec("duplicate_point", "repeated base evaluation point")
    ext = spec.ext
    if any(not q <= g < ext.order for g in spec.gammas):
        raise InvalidSpec("wrong_field", "extension evaluation point not in GF(q^2) \\ GF(q)")
    if len(set(spec.gammas)) != len(spec.gammas):
        raise InvalidSpec("duplicate_point", "repeated extension evaluation point")
    gset = set(spec.gammas)
    for g in spec.gammas:
        if ext.frobenius(g) in gset:
            raise InvalidSpec("conjugate_duplicate", f"points {g} and {ext.frobenius(g)} are conjugate")


def make_spec(field: BaseField | str, n: int, k: int, n1: int | None = None, n2: int | None = None) -> CodeSpec:
    """Build and validate a spec with canonical evaluation points.

    Give either ``n1`` or ``n2`` (the other follows from n); with neither,
    no entanglement is used.
    """
    if isinstance(field, str):
        field = field_from_descriptor(field)
    q = field.q
    if n < 1 or n > max_length(q):
        raise InvalidSpec("length_cap", f"n={n} outside 1..(q^2+q)/2={max_length(q)}")
    if n1 is None and n2 is None:
        n1 = n
    if n1 is None:
        n1 = n - n2
    if n2 is None:
        n2 = n - n1
    if n1 + n2 != n:
        raise InvalidSpec("length_mismatch", f"n1+n2={n1}+{n2} != n={n}")
    ext = build_quadratic_extension(field)
    alphas, gammas = canonical_points(field, ext, n1, n2)
    spec = CodeSpec(field, ext, n, k, n1, n2, alphas, gammas)
    validate(spec)
    return spec


def spec_from_dict(data: dict) -> CodeSpec:
    field = build_base_field(int(data["p"]), int(data["m"]))
    return make_spec(field, int(data["n"]), int(data["k"]), n1=int(data["n1"]), n2=int(data["n2"]))


def distance_formula(n: int, k: int, n1: int, n2: int) -> int:
    """Minimum distance from the worst-case root count of a degree < k polynomial."""
    if n1 >= k - 1:
        return n - k + 1
    d = n - (n1 + (k - 1 - n1) // 2)
    closed = -(-(n - k + 1 + n2) // 2)
    assert d == closed, (n, k, n1, n2)
    return d


def min_distance(spec: CodeSpec) -> int:
    return distance_formula(spec.n, spec.k, spec.n1, spec.n2)


def feasible_splits(q: int, n: int, k: int):
    """(n1, n2) splits of length n admissible for dimension k over GF(q)."""
    for n2 in range(n + 1):
        n1 = n - n2
        if n1 <= q and n2 <= num_pairs(q) and k <= n + n2:
            yield n1, n2


def best_entanglement(field: BaseField, n: int, k: int) -> tuple[int, int, int]:
    """Split maximizing the minimum distance; ties go to fewer ebits."""
    q = field.q
    if n < 1 or n > max_length(q):
        raise InvalidSpec("length_cap", f"n={n} outside 1..(q^2+q)/2={max_length(q)}")
    if k < 1:
        raise InvalidSpec("k_range", f"k={k} must be >= 1")
    best = None
    for n1, n2 in feasible_splits(q, n, k):
        d = distance_formula(n, k, n1, n2)
        if best is None or d > best[2]:
            best = (n1, n2, d)
    if best is None:
        raise InvalidSpec("non_injective", f"no split of n={n} supports k={k} over GF({q})")
    return best


def summarize(spec: CodeSpec) -> CodeSummary:
    d = min_distance(spec)
    return CodeSummary(
        spec=spec,
        d=d,
        rate=Fraction(spec.k, spec.n),
        erasures=d - 1,
        errors=(d - 1) // 2,
        ebits=spec.c,
        messages=spec.q ** spec.k,
    )


def iter_valid_specs(field: BaseField, max_n: int | None = None, k_max: int | None = None):
    """Every valid canonical spec over ``field`` (n up to ``max_n``)."""
    q = field.q
    top = max_length(q) if max_n is None else min(max_n, max_length(q))
    for n in range(1, top + 1):
        for n2 in range(n + 1):
            n1 = n - n2
            if n1 > q or n2 > num_pairs(q):
                continue
            kmax = n + n2 if k_max is None else min(k_max, n + n2)
            for k in range(1, kmax + 1):
                yield make_spec(field, n, k, n1=n1)
