"""Verification sweeps over ranges of moduli and selection sizes.

Each sweep returns None on a clean pass or a dict describing the first
counterexample found.  The CLI runs them behind the ``verify`` subcommand;
the test suite asserts they come back clean.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graphs import build_graph, verify_disjoint_vertices, verify_scaling_containment
from .hadamard import SubmatrixSpec, is_hadamard_exact, decide_2x2_general, decide_3x3
from .numtheory import factorize, p_adic_extremes
from .primsets import ResidueSet, difference_set, primitive_set

__all__ = [
    "check_counts_power_of_two",
    "check_oracle_2x2",
    "check_oracle_3x3",
    "check_compprop",
    "compprop_violation",
    "check_disjoint",
    "check_scaling",
]


def check_counts_power_of_two(
    q_max: int, threads: int | None = None
) -> tuple[list[tuple[int, int, int]], dict | None]:
    """Vertex/edge counts of G(2^q, 2) for q up to q_max.

    Expected counts are q vertices and ceil(q/2) edges.  Returns the
    observed (q, |V|, |E|) rows plus the first mismatch, if any.
    """
    rows = []
    for q in range(1, q_max + 1):
        graph = build_graph(2**q, 2, threads=threads)
        nv, ne = len(graph.vertices), len(graph.edges)
        rows.append((q, nv, ne))
        if nv != q or ne != (q + 1) // 2:
            return rows, {
                "suite": "counts2q",
                "q": q,
                "vertices": nv,
                "edges": ne,
                "expected": (q, (q + 1) // 2),
            }
    return rows, None


def _zero_subsets(m: int, n: int):
    for tail in combinations(range(1, m), n - 1):
        yield (0,) + tail


def _oracle_equivalence(m_max: int, n: int, fast_test) -> dict | None:
    for m in range(n, m_max + 1):
        subsets = [ResidueSet(m, s) for s in _zero_subsets(m, n)]
        for i, j in enumerate(subsets):
            for k in subsets[i:]:
                fast = fast_test(j, k).decision
                exact = is_hadamard_exact(SubmatrixSpec(m, j, k)).decision
                if fast is not exact:
                    return {
                        "suite": f"oracle{n}",
                        "m": m,
                        "j": j.elements,
                        "k": k.elements,
                        "fast": fast.value,
                        "exact": exact.value,
                    }
    return None


def check_oracle_2x2(m_max: int) -> dict | None:
    """The general 2x2 test must agree with the exact oracle on every pair
    of 0-containing 2-subsets for all moduli up to m_max."""
    return _oracle_equivalence(m_max, 2, decide_2x2_general)


def check_oracle_3x3(m_max: int) -> dict | None:
    """The 3x3 test must agree with the exact oracle on every pair of
    0-containing 3-subsets for all moduli up to m_max."""
    return _oracle_equivalence(m_max, 3, decide_3x3)


def compprop_violation(x: ResidueSet) -> dict | None:
    """Check the p-adic bounds tying differences to primitive sets, for every
    prime dividing the modulus of x (|x| >= 2 required).

    With P the primitive set minus {1} and D the differences minus {0}:
      max ord_p(P) <= max(0, ord_p(m) - min ord_p(D))
      min ord_p(P) >= ord_p(m) - max ord_p(D)
      min ord_p(D) >= ord_p(m) - max ord_p(P)
      and when min ord_p(P) >= 1:
      max ord_p(D) <= ord_p(m) - min ord_p(P)
    """
    m = x.modulus
    prims = primitive_set(x).without_one()
    diffs = sorted(d for d in difference_set(x) if d)
    for p, e in factorize(m):
        lo_p, hi_p = p_adic_extremes(p, prims)
        lo_d, hi_d = p_adic_extremes(p, diffs)
        checks = [
            hi_p <= max(0, e - lo_d),
            lo_p >= e - hi_d,
            lo_d >= e - hi_p,
        ]
        if lo_p >= 1:
            checks.append(hi_d <= e - lo_p)
        if not all(checks):
            return {
                "suite": "compprop",
                "m": m,
                "x": x.elements,
                "prime": p,
                "prim_orders": (lo_p, hi_p),
                "diff_orders": (lo_d, hi_d),
            }
    return None


def check_compprop(
    m_max: int = 20,
    size_max: int = 4,
    samples: int = 10000,
    seed: int = 20260810,
    sample_m_max: int = 5000,
    sample_size_max: int = 8,
) -> dict | None:
    """Exhaustive sweep up to m_max and size_max, then random larger cases."""
    for m in range(2, m_max + 1):
        for size in range(2, min(size_max, m) + 1):
            for elems in combinations(range(m), size):
                bad = compprop_violation(ResidueSet(m, elems))
                if bad:
                    return bad
    rng = random.Random(seed)
    for _ in range(samples):
        m = rng.randint(m_max + 1, sample_m_max)
        size = rng.randint(2, min(sample_size_max, m))
        elems = tuple(rng.sample(range(m), size))
        bad = compprop_violation(ResidueSet(m, elems))
        if bad:
            return bad
    return None


def check_disjoint(
    m_values, n_values, threads: int | None = None
) -> dict | None:
    """Vertex sets of G(m,n) and G(m,n') must be disjoint for n != n'."""
    for m in m_values:
        sizes = [n for n in n_values if n <= m]
        for n, n2 in combinations(sizes, 2):
            if not verify_disjoint_vertices(m, n, n2, threads=threads):
                return {"suite": "disjoint", "m": m, "n": n, "n2": n2}
    return None


def check_scaling(
    m_max: int, v_max: int, n_max: int, threads: int | None = None
) -> dict | None:
    """V(G(m,n)) must embed in V(G(v*m,n)) for every scale factor."""
    for m in range(1, m_max + 1):
        for v in range(1, v_max + 1):
            for n in range(1, min(n_max, m) + 1):
                if not verify_scaling_containment(m, v, n, threads=threads):
                    return {"suite": "scaling", "m": m, "v": v, "n": n}
    return None
