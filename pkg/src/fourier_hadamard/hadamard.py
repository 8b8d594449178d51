"""Decision procedures for Hadamard submatrices of Fourier matrices.

A selection of rows J and columns K of the m-by-m Fourier matrix
(entries e^(2*pi*i*j*k/m)) forms a complex Hadamard submatrix exactly when
the matrix is square and its rows are orthogonal.  Two distinct rows j1, j2
are orthogonal iff the column polynomial K(z) = sum of z^k vanishes at
e^(2*pi*i*(j1-j2)/m), a primitive s-th root of unity for
s = m/gcd(m, j1-j2); vanishing there is equivalent to the s-th cyclotomic
polynomial dividing K(z).  The exact oracle below is nothing more than that
divisibility test over the primitive set of J, so every decision is pure
integer arithmetic.

Alongside the oracle: an independent floating-point cross-check, two
necessary-condition screens that can rule a row set out without any K, a
sufficient-condition certificate built from a tiling complement of K, and
closed-form tests for the 2x2 and 3x3 cases phrased as p-adic balance
conditions on the primitive sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .numtheory import (
    IntPoly,
    cyclotomic,
    divisors,
    factorize,
    p_adic_extremes,
    p_adic_order,
    poly_divides,
)
from .primsets import PrimitiveSet, ResidueSet, primitive_set, size_divisor

__all__ = [
    "Decision",
    "Screen",
    "SubmatrixSpec",
    "SubmatrixVerdict",
    "RULES",
    "set_polynomial",
    "is_hadamard_exact",
    "is_hadamard_numeric",
    "is_hadamard",
    "screen_size_divisor",
    "screen_prime_powers",
    "certify_by_complement",
    "find_complement",
    "decide_2x2_power_of_two",
    "decide_2x2_twice_prime",
    "decide_2x2_general",
    "decide_3x3",
]


class Decision(Enum):
    HADAMARD = "hadamard"
    NOT_HADAMARD = "not-hadamard"
    INCONCLUSIVE = "inconclusive"


class Screen(Enum):
    """Outcome of a necessary-condition test that needs no column set."""

    RULED_OUT = "ruled-out"
    INCONCLUSIVE = "inconclusive"


# Registry of implemented decision rules; every verdict names one of these.
RULES = (
    "exact",
    "numeric",
    "2by2-power-of-two",
    "2by2-twice-prime",
    "gen2by2",
    "3by3",
)


@dataclass(frozen=True)
class SubmatrixSpec:
    """Rows j and columns k selected from the m-by-m Fourier matrix.

    Rectangular selections are representable, but the decision operations
    only accept square ones.
    """

    m: int
    j: ResidueSet
    k: ResidueSet

    def __post_init__(self):
        if self.j.modulus != self.m or self.k.modulus != self.m:
            raise ValueError("row and column sets must share the spec's modulus")

    @classmethod
    def of(cls, m: int, j_elements, k_elements) -> "SubmatrixSpec":
        return cls(m, ResidueSet(m, tuple(j_elements)), ResidueSet(m, tuple(k_elements)))


@dataclass(frozen=True)
class SubmatrixVerdict:
    """Decision plus the rule that produced it and optional witness data."""

    decision: Decision
    rule: str
    witness: dict | None = None

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")


def set_polynomial(x: ResidueSet) -> IntPoly:
    """The polynomial with a coefficient 1 at z^e for every element e of x."""
    coeffs = [0] * (x.elements[-1] + 1)
    for e in x.elements:
        coeffs[e] = 1
    return IntPoly(coeffs)


def _require_square(spec: SubmatrixSpec) -> int:
    if len(spec.j) != len(spec.k):
        raise ValueError(
            f"row set has {len(spec.j)} elements but column set has {len(spec.k)}; "
            "Hadamard submatrices are square"
        )
    return len(spec.j)


@lru_cache(maxsize=None)
def _cyclotomic_divides(s: int, coeffs: tuple[int, ...]) -> bool:
    return poly_divides(cyclotomic(s), IntPoly(coeffs))


def is_hadamard_exact(spec: SubmatrixSpec) -> SubmatrixVerdict:
    """Exact oracle: Hadamard iff the s-th cyclotomic polynomial divides the
    column polynomial for every s > 1 in the primitive set of the rows.

    Never inconclusive.  On failure the witness carries the first s whose
    cyclotomic does not divide K(z).
    """
    _require_square(spec)
    kpoly = set_polynomial(spec.k)
    for s in primitive_set(spec.j).without_one():
        if not _cyclotomic_divides(s, kpoly.coeffs):
            return SubmatrixVerdict(
                Decision.NOT_HADAMARD,
                "exact",
                {"kind": "cyclotomic", "s": s},
            )
    return SubmatrixVerdict(Decision.HADAMARD, "exact")


def is_hadamard_numeric(spec: SubmatrixSpec, tol: float = 1e-9) -> SubmatrixVerdict:
    """Floating-point cross-check: build the complex submatrix and test
    whether H*H equals n times the identity to within tol (max norm).

    Exists only to validate the exact oracle from an independent direction.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    n = _require_square(spec)
    j = np.array(spec.j.elements, dtype=np.int64)
    k = np.array(spec.k.elements, dtype=np.int64)
    # reduce exponents mod m before exponentiating to keep arguments small
    phases = np.outer(j, k) % spec.m
    h = np.exp(2j * np.pi * phases / spec.m)
    gram = h.conj().T @ h
    dev = float(np.abs(gram - n * np.eye(n)).max())
    decision = Decision.HADAMARD if dev < tol else Decision.NOT_HADAMARD
    return SubmatrixVerdict(decision, "numeric", {"kind": "gram", "deviation": dev})


def screen_size_divisor(j: ResidueSet, n: int) -> Screen:
    """Rule out a row set when its size divisor does not divide n.

    An n-by-n Hadamard submatrix with rows j forces every cyclotomic over
    the primitive set of j to divide K(z), so evaluating at 1 forces the
    size divisor to divide n = K(1).  No column set can work when it fails.
    """
    c = size_divisor(j)
    return Screen.RULED_OUT if n % c else Screen.INCONCLUSIVE


def screen_prime_powers(j: ResidueSet) -> Screen:
    """Rule out a row set whose primitive set holds every prime-power divisor
    of m yet misses some divisor of m.

    In that case the size divisor equals m, forcing the row set to be all of
    {0..m-1}, whose primitive set has every divisor; the gap is a
    contradiction.
    """
    m = j.modulus
    prims = primitive_set(j)
    prime_powers = [p**t for p, e in factorize(m) for t in range(1, e + 1)]
    if all(q in prims for q in prime_powers) and any(
        d not in prims for d in divisors(m)
    ):
        return Screen.RULED_OUT
    return Screen.INCONCLUSIVE


def certify_by_complement(j: ResidueSet, k: ResidueSet, a) -> Decision:
    """Certify Hadamard-ness from a tiling complement a of k.

    Requires k + a (all sums) to hit every residue class mod m exactly once;
    anything else is a caller error, not an inconclusive answer.  If no
    cyclotomic over the primitive set of j divides A(z), the vanishing sums
    that make the full Fourier matrix orthogonal must come from K(z), so the
    submatrix is Hadamard.  A divisible A(z) proves nothing either way.
    """
    if j.modulus != k.modulus:
        raise ValueError("row and column sets must share a modulus")
    if len(j) != len(k):
        raise ValueError("row and column sets must have equal size")
    m = j.modulus
    a_list = list(a)
    a_elems = sorted(set(a_list))
    if not a_elems:
        raise ValueError("complement must be nonempty")
    if a_elems[0] < 0:
        raise ValueError("complement elements must be nonnegative")
    if len(a_elems) != len(a_list):
        raise ValueError("complement has repeated elements")
    seen = [0] * m
    for ke in k.elements:
        for ae in a_elems:
            seen[(ke + ae) % m] += 1
    if any(count != 1 for count in seen):
        raise ValueError("k + a is not a complete residue system mod m")
    coeffs = [0] * (a_elems[-1] + 1)
    for ae in a_elems:
        coeffs[ae] = 1
    apoly = IntPoly(coeffs)
    for s in primitive_set(j).without_one():
        if _cyclotomic_divides(s, apoly.coeffs):
            return Decision.INCONCLUSIVE
    return Decision.HADAMARD


def find_complement(k: ResidueSet) -> set[int] | None:
    """Search for a tiling complement: a set A with k + A covering every
    residue class mod m exactly once.

    Backtracking that always extends at the smallest uncovered residue and
    tries candidate elements in increasing order, so the result is
    deterministic.  Returns None when |k| does not divide m or no complement
    exists; absence is a normal outcome.
    """
    m = k.modulus
    if m % len(k):
        return None
    covered = [False] * m
    chosen: list[int] = []

    def extend() -> bool:
        try:
            r = covered.index(False)
        except ValueError:
            return True
        for a in sorted({(r - ke) % m for ke in k.elements}):
            cells = [(ke + a) % m for ke in k.elements]
            if any(covered[c] for c in cells):
                continue
            for c in cells:
                covered[c] = True
            chosen.append(a)
            if extend():
                return True
            chosen.pop()
            for c in cells:
                covered[c] = False
        return False

    if extend():
        return set(chosen)
    return None


def decide_2x2_power_of_two(q: int, j: ResidueSet, k: ResidueSet) -> SubmatrixVerdict:
    """Closed form for 2x2 selections from the 2^q-point Fourier matrix.

    Both primitive sets are {1, 2^a}; the pair is Hadamard exactly when the
    two exponents add up to q + 1.
    """
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    m = 2**q
    if j.modulus != m or k.modulus != m:
        raise ValueError(f"selections must have modulus 2^{q} = {m}")
    if len(j) != 2 or len(k) != 2:
        raise ValueError("both selections must have exactly 2 elements")
    (sj,) = primitive_set(j).without_one()
    (sk,) = primitive_set(k).without_one()
    aj = sj.bit_length() - 1
    ak = sk.bit_length() - 1
    witness = {"kind": "pow2-exponents", "exponents": (aj, ak), "required_sum": q + 1}
    if aj + ak == q + 1:
        return SubmatrixVerdict(Decision.HADAMARD, "2by2-power-of-two", witness)
    return SubmatrixVerdict(Decision.NOT_HADAMARD, "2by2-power-of-two", witness)


def decide_2x2_twice_prime(p: int, j: ResidueSet, k: ResidueSet) -> SubmatrixVerdict:
    """Closed form for 2x2 selections from the 2p-point Fourier matrix, p an
    odd prime: the only Hadamard pairings of primitive sets are
    ({1,2},{1,2}) and {1,2} with {1,2p} in either order.
    """
    if p < 3 or factorize(p) != [(p, 1)]:
        raise ValueError(f"{p} is not an odd prime")
    m = 2 * p
    if j.modulus != m or k.modulus != m:
        raise ValueError(f"selections must have modulus 2*{p} = {m}")
    if len(j) != 2 or len(k) != 2:
        raise ValueError("both selections must have exactly 2 elements")
    pj = primitive_set(j)
    pk = primitive_set(k)
    two = PrimitiveSet((1, 2))
    twop = PrimitiveSet((1, 2 * p))
    good = (pj, pk) in {(two, two), (two, twop), (twop, two)}
    witness = {"kind": "pair", "pj": pj.elements, "pk": pk.elements}
    decision = Decision.HADAMARD if good else Decision.NOT_HADAMARD
    return SubmatrixVerdict(decision, "2by2-twice-prime", witness)


def _balance_verdict(
    j: ResidueSet, k: ResidueSet, size: int, special: int, rule: str
) -> SubmatrixVerdict:
    """Shared p-adic balance test behind the 2x2 and 3x3 characterizations.

    Hadamard iff, over the primitive sets minus {1}: the special prime's
    minimum and maximum orders both sum to ord(m) + 1, and every other prime
    dividing m has maximum orders summing to at most ord(m).
    """
    if j.modulus != k.modulus:
        raise ValueError("row and column sets must share a modulus")
    if len(j) != size or len(k) != size:
        raise ValueError(f"both selections must have exactly {size} elements")
    m = j.modulus
    pj = primitive_set(j).without_one()
    pk = primitive_set(k).without_one()
    for p, e in factorize(m):
        if p == special:
            continue
        hi = p_adic_extremes(p, pj)[1] + p_adic_extremes(p, pk)[1]
        if hi > e:
            witness = {"kind": "excess", "prime": p, "max_sum": hi, "limit": e}
            return SubmatrixVerdict(Decision.NOT_HADAMARD, rule, witness)
    lo_j, hi_j = p_adic_extremes(special, pj)
    lo_k, hi_k = p_adic_extremes(special, pk)
    required = p_adic_order(special, m) + 1
    if not (lo_j + lo_k == hi_j + hi_k == required):
        witness = {
            "kind": "balance",
            "prime": special,
            "min_sum": lo_j + lo_k,
            "max_sum": hi_j + hi_k,
            "required": required,
        }
        return SubmatrixVerdict(Decision.NOT_HADAMARD, rule, witness)
    return SubmatrixVerdict(Decision.HADAMARD, rule)


def decide_2x2_general(j: ResidueSet, k: ResidueSet) -> SubmatrixVerdict:
    """2x2 test for any modulus: 2-adic orders must balance to ord_2(m) + 1
    and no odd prime may overshoot its order in m.
    """
    return _balance_verdict(j, k, 2, 2, "gen2by2")


def decide_3x3(j: ResidueSet, k: ResidueSet) -> SubmatrixVerdict:
    """3x3 test for any modulus: 3-adic orders must balance to ord_3(m) + 1
    and no other prime may overshoot its order in m.
    """
    return _balance_verdict(j, k, 3, 3, "3by3")


def is_hadamard(spec: SubmatrixSpec) -> SubmatrixVerdict:
    """Dispatch to the cheapest decision rule for the selection size.

    2x2 and 3x3 go to their closed-form tests, everything else to the exact
    oracle.  All routes agree with the exact oracle; the sweep suites check
    that rather than assume it.
    """
    n = _require_square(spec)
    if n == 2:
        return decide_2x2_general(spec.j, spec.k)
    if n == 3:
        return decide_3x3(spec.j, spec.k)
    return is_hadamard_exact(spec)
