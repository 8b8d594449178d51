import random
import sys
from itertools import combinations
from math import gcd

import pytest

from fourier_hadamard.hadamard import (
    Decision,
    Screen,
    SubmatrixSpec,
    SubmatrixVerdict,
    certify_by_complement,
    find_complement,
    is_hadamard,
    is_hadamard_exact,
    is_hadamard_numeric,
    screen_prime_powers,
    screen_size_divisor,
    set_polynomial,
    decide_2x2_general,
    decide_2x2_power_of_two,
    decide_2x2_twice_prime,
    decide_3x3,
)
from fourier_hadamard.numtheory import IntPoly
from fourier_hadamard.primsets import PrimitiveSet, ResidueSet, primitive_set, shift


def spec(m, j, k):
    return SubmatrixSpec.of(m, j, k)


def test_set_polynomial():
    assert set_polynomial(ResidueSet(4, (0, 1))) == IntPoly([1, 1])
    assert set_polynomial(ResidueSet(4, (0,))) == IntPoly([1])
    assert set_polynomial(ResidueSet(10, (0, 2, 4, 6, 8))) == IntPoly(
        [1, 0, 1, 0, 1, 0, 1, 0, 1]
    )
    x = ResidueSet(30, (0, 3, 17))
    assert set_polynomial(x)(1) == len(x)


def test_exact_oracle_battery():
    assert is_hadamard_exact(spec(10, (0, 1, 7, 8, 9), (0, 2, 4, 6, 8))).decision is Decision.HADAMARD
    assert is_hadamard_exact(spec(21, (0, 2, 16), (0, 7, 14))).decision is Decision.HADAMARD
    assert is_hadamard_exact(spec(12, (0, 4, 8), (0, 1, 2))).decision is Decision.HADAMARD
    assert is_hadamard_exact(spec(4, (0, 2), (0, 1))).decision is Decision.HADAMARD
    # 1x1 selections are always Hadamard (single unimodular entry)
    assert is_hadamard_exact(spec(7, (0,), (0,))).decision is Decision.HADAMARD
    assert is_hadamard_exact(spec(9, (4,), (7,))).decision is Decision.HADAMARD


def test_exact_oracle_ruled_out_for_every_k():
    # row set {0,4} mod 6 pairs with no 2-element column set
    for k in combinations(range(6), 2):
        verdict = is_hadamard_exact(spec(6, (0, 4), k))
        assert verdict.decision is Decision.NOT_HADAMARD
        assert verdict.witness["s"] in (3, 6)


def test_exact_oracle_never_inconclusive_and_witnessed():
    rng = random.Random(20)
    for _ in range(300):
        m = rng.randint(2, 40)
        n = rng.randint(1, min(5, m))
        s = spec(m, tuple(rng.sample(range(m), n)), tuple(rng.sample(range(m), n)))
        verdict = is_hadamard_exact(s)
        assert verdict.decision in (Decision.HADAMARD, Decision.NOT_HADAMARD)
        if verdict.decision is Decision.NOT_HADAMARD:
            assert verdict.witness["s"] in primitive_set(s.j)


def test_rectangular_rejected():
    with pytest.raises(ValueError):
        is_hadamard_exact(spec(10, (0, 1), (0, 1, 2)))
    with pytest.raises(ValueError):
        is_hadamard_numeric(spec(10, (0, 1), (0, 1, 2)))
    with pytest.raises(ValueError):
        is_hadamard(spec(10, (0, 1), (0, 1, 2)))


def test_numeric_oracle():
    assert is_hadamard_numeric(spec(10, (0, 1, 7, 8, 9), (0, 2, 4, 6, 8))).decision is Decision.HADAMARD
    assert is_hadamard_numeric(spec(6, (0, 4), (0, 1))).decision is Decision.NOT_HADAMARD
    assert is_hadamard_numeric(spec(3, (1,), (2,))).decision is Decision.HADAMARD
    with pytest.raises(ValueError):
        is_hadamard_numeric(spec(4, (0, 2), (0, 1)), tol=0.0)
    with pytest.raises(ValueError):
        is_hadamard_numeric(spec(4, (0, 2), (0, 1)), tol=-1e-9)


def test_screen_size_divisor():
    assert screen_size_divisor(ResidueSet(6000, (0, 5, 375)), 3) is Screen.RULED_OUT
    assert screen_size_divisor(ResidueSet(6, (0, 4)), 2) is Screen.RULED_OUT
    assert screen_size_divisor(ResidueSet(10, (0, 1, 7, 8, 9)), 5) is Screen.INCONCLUSIVE


def test_screen_prime_powers():
    assert screen_prime_powers(ResidueSet(12, (0, 1, 6, 9))) is Screen.RULED_OUT
    assert screen_prime_powers(ResidueSet(12, tuple(range(12)))) is Screen.INCONCLUSIVE
    assert screen_prime_powers(ResidueSet(10, (0, 1, 7, 8, 9))) is Screen.INCONCLUSIVE


def test_screens_never_contradict_oracle():
    # a ruled-out row set must fail the oracle against every column set
    for m in range(2, 21):
        for n in (2, 3):
            if n > m:
                continue
            k_sets = [(0,) + t for t in combinations(range(1, m), n - 1)]
            for j_tail in combinations(range(1, m), n - 1):
                j = ResidueSet(m, (0,) + j_tail)
                if screen_size_divisor(j, n) is Screen.RULED_OUT:
                    for k in k_sets:
                        assert is_hadamard_exact(spec(m, j.elements, k)).decision is Decision.NOT_HADAMARD


def test_certify_by_complement():
    j = ResidueSet(10, (0, 1, 7, 8, 9))
    k = ResidueSet(10, (0, 2, 4, 6, 8))
    assert certify_by_complement(j, k, {0, 1}) is Decision.HADAMARD
    assert certify_by_complement(ResidueSet(2, (0, 1)), ResidueSet(2, (0, 1)), {0}) is Decision.HADAMARD
    # 2 in the primitive set of J makes the certificate silent, not negative
    j2 = ResidueSet(10, (0, 2, 4, 5, 7))
    assert 2 in primitive_set(j2)
    assert certify_by_complement(j2, k, {0, 1}) is Decision.INCONCLUSIVE
    # non-tiling complement is a caller error
    with pytest.raises(ValueError):
        certify_by_complement(j, k, {0, 2})
    with pytest.raises(ValueError):
        certify_by_complement(j, k, {0})


def test_certificate_implies_oracle():
    # whenever the certificate fires, the oracle must agree (exhaustive small)
    for m in range(2, 21):
        for n in (2, 3):
            if n > m or m % n:
                continue
            k_sets = [ResidueSet(m, (0,) + t) for t in combinations(range(1, m), n - 1)]
            j_sets = k_sets
            for k in k_sets:
                a = find_complement(k)
                if a is None:
                    continue
                for j in j_sets:
                    if certify_by_complement(j, k, a) is Decision.HADAMARD:
                        assert is_hadamard_exact(SubmatrixSpec(m, j, k)).decision is Decision.HADAMARD


def test_find_complement():
    assert find_complement(ResidueSet(10, (0, 2, 4, 6, 8))) == {0, 1}
    assert find_complement(ResidueSet(4, (0, 1, 2, 3))) == {0}
    assert find_complement(ResidueSet(4, (0, 1, 3))) is None  # 3 does not divide 4
    # {0,3} mod 6: adding a covers {a, a+3}; {0,1,2} works
    assert find_complement(ResidueSet(6, (0, 3))) == {0, 1, 2}


def test_find_complement_is_tiling():
    rng = random.Random(21)
    found = 0
    for _ in range(200):
        m = rng.randint(2, 30)
        size = rng.choice([d for d in range(1, m + 1) if m % d == 0])
        k = ResidueSet(m, tuple(rng.sample(range(m), size)))
        a = find_complement(k)
        if a is None:
            continue
        found += 1
        hits = [0] * m
        for ke in k:
            for ae in a:
                hits[(ke + ae) % m] += 1
        assert all(h == 1 for h in hits)
    assert found > 50


def test_2x2_power_of_two_cases():
    assert decide_2x2_power_of_two(2, ResidueSet(4, (0, 2)), ResidueSet(4, (0, 1))).decision is Decision.HADAMARD
    assert decide_2x2_power_of_two(4, ResidueSet(16, (0, 1)), ResidueSet(16, (0, 1))).decision is Decision.NOT_HADAMARD
    assert decide_2x2_power_of_two(1, ResidueSet(2, (0, 1)), ResidueSet(2, (0, 1))).decision is Decision.HADAMARD
    with pytest.raises(ValueError):
        decide_2x2_power_of_two(3, ResidueSet(4, (0, 2)), ResidueSet(4, (0, 1)))
    with pytest.raises(ValueError):
        decide_2x2_power_of_two(2, ResidueSet(4, (0, 1, 2)), ResidueSet(4, (0, 1)))


def test_2x2_power_of_two_matches_exact():
    for q in range(1, 6):
        m = 2**q
        pairs = [(0, x) for x in range(1, m)]
        for j in pairs:
            for k in pairs:
                fast = decide_2x2_power_of_two(q, ResidueSet(m, j), ResidueSet(m, k))
                exact = is_hadamard_exact(spec(m, j, k))
                assert fast.decision is exact.decision


def test_2x2_twice_prime_cases():
    assert decide_2x2_twice_prime(3, ResidueSet(6, (0, 3)), ResidueSet(6, (0, 3))).decision is Decision.HADAMARD
    assert decide_2x2_twice_prime(3, ResidueSet(6, (0, 4)), ResidueSet(6, (0, 3))).decision is Decision.NOT_HADAMARD
    assert decide_2x2_twice_prime(5, ResidueSet(10, (0, 5)), ResidueSet(10, (0, 1))).decision is Decision.HADAMARD
    with pytest.raises(ValueError):
        decide_2x2_twice_prime(4, ResidueSet(8, (0, 1)), ResidueSet(8, (0, 1)))
    with pytest.raises(ValueError):
        decide_2x2_twice_prime(3, ResidueSet(7, (0, 1)), ResidueSet(7, (0, 1)))


def test_2x2_twice_prime_matches_exact():
    for p in (3, 5, 7):
        m = 2 * p
        pairs = [(0, x) for x in range(1, m)]
        for j in pairs:
            for k in pairs:
                fast = decide_2x2_twice_prime(p, ResidueSet(m, j), ResidueSet(m, k))
                exact = is_hadamard_exact(spec(m, j, k))
                assert fast.decision is exact.decision


def test_2x2_general_cases():
    j = ResidueSet(180, (0, 9))
    k = ResidueSet(180, (0, 10))
    assert primitive_set(j) == PrimitiveSet([1, 20])
    assert primitive_set(k) == PrimitiveSet([1, 18])
    assert decide_2x2_general(j, k).decision is Decision.HADAMARD
    bad = decide_2x2_general(ResidueSet(180, (0, 10)), ResidueSet(180, (0, 30)))
    assert bad.decision is Decision.NOT_HADAMARD
    assert bad.witness == {"kind": "excess", "prime": 3, "max_sum": 3, "limit": 2}
    assert decide_2x2_general(ResidueSet(2, (0, 1)), ResidueSet(2, (0, 1))).decision is Decision.HADAMARD
    with pytest.raises(ValueError):
        decide_2x2_general(ResidueSet(8, (0, 1, 2)), ResidueSet(8, (0, 1, 2)))


def test_3x3_cases():
    # {1,9,45} and {1,6,12} are compatible mod 180
    j = _with_primitive_set(180, 3, (1, 9, 45))
    k = _with_primitive_set(180, 3, (1, 6, 12))
    assert decide_3x3(j, k).decision is Decision.HADAMARD
    j2 = _with_primitive_set(180, 3, (1, 15, 60))
    k2 = _with_primitive_set(180, 3, (1, 30, 60))
    assert decide_3x3(j2, k2).decision is Decision.NOT_HADAMARD
    assert decide_3x3(ResidueSet(3, (0, 1, 2)), ResidueSet(3, (0, 1, 2))).decision is Decision.HADAMARD
    with pytest.raises(ValueError):
        decide_3x3(ResidueSet(9, (0, 1)), ResidueSet(9, (0, 1)))


def _with_primitive_set(m, size, target):
    """Find a size-element selection whose primitive set is the target."""
    want = PrimitiveSet(target)
    for elems in combinations(range(m), size):
        x = ResidueSet(m, elems)
        if primitive_set(x) == want:
            return x
    raise AssertionError(f"no {size}-subset of Z_{m} has primitive set {want}")


def test_dispatcher_routes_and_agrees():
    v = is_hadamard(spec(180, (0, 9), (0, 10)))
    assert v.rule == "gen2by2"
    v = is_hadamard(spec(21, (0, 2, 16), (0, 7, 14)))
    assert v.rule == "3by3" and v.decision is Decision.HADAMARD
    v = is_hadamard(spec(30, (0, 5, 10, 15, 20, 25), (0, 1, 2, 3, 4, 5)))
    assert v.rule == "exact"
    v = is_hadamard(spec(11, (3,), (5,)))
    assert v.rule == "exact" and v.decision is Decision.HADAMARD


def test_verdict_rule_registry():
    with pytest.raises(ValueError):
        SubmatrixVerdict(Decision.HADAMARD, "made-up-rule")


def test_exact_oracle_symmetry():
    rng = random.Random(22)
    for _ in range(300):
        m = rng.randint(2, 36)
        n = rng.randint(1, min(4, m))
        j = tuple(rng.sample(range(m), n))
        k = tuple(rng.sample(range(m), n))
        assert is_hadamard_exact(spec(m, j, k)).decision is is_hadamard_exact(spec(m, k, j)).decision


def test_verdict_shift_invariance():
    rng = random.Random(23)
    for _ in range(300):
        m = rng.randint(2, 36)
        n = rng.randint(1, min(4, m))
        j = ResidueSet(m, tuple(rng.sample(range(m), n)))
        k = ResidueSet(m, tuple(rng.sample(range(m), n)))
        a, b = rng.randint(-50, 50), rng.randint(-50, 50)
        before = is_hadamard_exact(SubmatrixSpec(m, j, k)).decision
        after = is_hadamard_exact(SubmatrixSpec(m, shift(j, a), shift(k, b))).decision
        assert before is after


def test_transfer_between_equal_primitive_sets_small():
    # equal primitive sets force equal verdicts against any fixed column set;
    # full-scale sweep lives in the acceptance suite
    for m in range(2, 13):
        for n in (2, 3):
            if n > m:
                continue
            buckets = {}
            for elems in combinations(range(m), n):
                buckets.setdefault(primitive_set(ResidueSet(m, elems)), []).append(elems)
            k_sets = [(0,) + t for t in combinations(range(1, m), n - 1)]
            for k in k_sets:
                for members in buckets.values():
                    verdicts = {
                        is_hadamard_exact(spec(m, j, k)).decision for j in members
                    }
                    assert len(verdicts) == 1


def test_mutual_exclusion():
    # once a primitive set belongs to an n-by-n Hadamard row set, no larger
    # selection can realize the same primitive set (m <= 20, all sizes);
    # 0-containing subsets suffice because shifting changes neither side
    sys.setrecursionlimit(100000)
    for m in range(2, 21):
        prim_of = [m // gcd(m, d) for d in range(m)]
        sizes_of = {}
        reps = {}

        def walk(subset, prims):
            k = len(subset)
            sizes_of.setdefault(prims, set()).add(k)
            if (k, prims) not in reps:
                reps[(k, prims)] = subset
            for x in range(subset[-1] + 1, m):
                walk(subset + (x,), prims | frozenset(prim_of[x - y] for y in subset))

        walk((0,), frozenset({1}))
        by_n = {}
        for (k, prims), rep in reps.items():
            by_n.setdefault(k, {})[prims] = rep
        for n, bucket in by_n.items():
            keys = sorted(bucket, key=sorted)
            vertices = set()
            for i, p in enumerate(keys):
                for q in keys[i:]:
                    if p in vertices and q in vertices:
                        continue
                    s = SubmatrixSpec(m, ResidueSet(m, bucket[p]), ResidueSet(m, bucket[q]))
                    if is_hadamard_exact(s).decision is Decision.HADAMARD:
                        vertices.add(p)
                        vertices.add(q)
            for p in vertices:
                assert not [s for s in sizes_of[p] if s > n], (m, n, sorted(p))
