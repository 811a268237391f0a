"""Seeded instance generators and brute-force checkers shared across tests.

Everything takes an explicit random.Random so failures replay exactly.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from depthcert.core import (
    LinearSum,
    Monomial,
    MonomialIdeal,
    Polynomial,
    RingContext,
)
from depthcert.initreg import criterion_trinomial, criterion_trinomial_family

NAMES = list("abcdefghij")


def ring_of(nvars: int) -> RingContext:
    return RingContext(NAMES[:nvars])


def ideal_of(ring: RingContext, *gens: str) -> MonomialIdeal:
    return MonomialIdeal(ring, [ring.parse_monomial(g) for g in gens])


def random_monomial(rng: random.Random, ring: RingContext, max_deg: int = 3,
                    max_exp: int = 2) -> Monomial:
    while True:
        exps = [0] * ring.nvars
        budget = rng.randint(1, max_deg)
        for _ in range(budget):
            exps[rng.randrange(ring.nvars)] += 1
        exps = [min(e, max_exp) for e in exps]
        if any(exps):
            return ring.monomial(exps)


def random_ideal(rng: random.Random, nvars: int = 4, max_gens: int = 5,
                 max_deg: int = 3, max_exp: int = 2) -> MonomialIdeal:
    ring = ring_of(nvars)
    gens = [random_monomial(rng, ring, max_deg, max_exp)
            for _ in range(rng.randint(1, max_gens))]
    return MonomialIdeal(ring, gens)


def random_squarefree_ideal(rng: random.Random, nvars: int = 6,
                            max_edges: int = 7, max_edge_size: int = 3) -> MonomialIdeal:
    """Nonzero proper square-free ideal; edges are random supports."""
    ring = ring_of(nvars)
    gens = []
    for _ in range(rng.randint(1, max_edges)):
        size = rng.randint(2, min(max_edge_size, nvars))
        support = rng.sample(range(nvars), size)
        gens.append(ring.monomial({i: 1 for i in support}))
    return MonomialIdeal(ring, gens)


def random_polynomial(rng: random.Random, ring: RingContext,
                      variables: list[int] | None = None,
                      max_terms: int = 4, max_exp: int = 2) -> Polynomial:
    """Nonzero polynomial supported on the given variables."""
    if variables is None:
        variables = list(range(ring.nvars))
    terms: dict[Monomial, Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * ring.nvars
        for v in variables:
            exps[v] = rng.randint(0, max_exp)
        terms[ring.monomial(exps)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    p = Polynomial(ring, terms)
    return p if not p.is_zero() else Polynomial.from_monomial(ring.variable(variables[0]))


def random_star_pair(rng: random.Random) -> tuple[MonomialIdeal, str, str]:
    """(I, b0, b1) satisfying condition (*) by construction.

    b0 and b1 are the first two ring variables; every generator divisible by
    b0 is b0*b1*(monomial in the rest), and b0, b1 never appear squared.
    """
    nvars = rng.randint(4, 5)
    ring = ring_of(nvars)
    free = list(range(2, nvars))
    gens = []
    b0b1 = ring.monomial({0: 1, 1: 1})
    for _ in range(rng.randint(0, 2)):
        tail_exps = {v: rng.randint(0, 1) for v in free}
        gens.append(b0b1 * ring.monomial(tail_exps))
    for _ in range(rng.randint(1, 4)):
        exps = {v: rng.randint(0, 2) for v in free}
        exps[1] = rng.randint(0, 1)
        m = ring.monomial(exps)
        if not m.is_one():
            gens.append(m)
    if not gens:
        gens = [b0b1]
    return MonomialIdeal(ring, gens), ring.names[0], ring.names[1]


def random_trinomial_pass(rng: random.Random, max_attempts: int = 200
                          ) -> tuple[MonomialIdeal, str, str, str]:
    """(I, b0, b1, b2) passing criterion_trinomial, by rejection sampling."""
    for _ in range(max_attempts):
        nvars = rng.randint(5, 7)
        ring = ring_of(nvars)
        free = list(range(3, nvars))
        gens = [ring.monomial({0: 1, 1: 1}), ring.monomial({0: 1, 2: 1})]
        # a couple of b1- or b2-divisible generators drive the hat and the
        # lcm(X, M')b2^2 branches of the closed forms
        for head in (1, 2):
            for _ in range(rng.randint(0, 2)):
                exps = {v: rng.randint(0, 1) for v in free}
                exps[head] = 1
                gens.append(ring.monomial(exps))
        for _ in range(rng.randint(0, 3)):
            exps = {v: rng.randint(0, 2) for v in free}
            m = ring.monomial(exps)
            if not m.is_one():
                gens.append(m)
        I = MonomialIdeal(ring, gens)
        outcome = criterion_trinomial(I, ring.names[0], ring.names[1], ring.names[2])
        if outcome.passed:
            return I, ring.names[0], ring.names[1], ring.names[2]
    raise AssertionError("rejection sampling failed to find a passing instance")


def random_two_block_triples(rng: random.Random):
    """(I, (0,1,2), (5,6,7)) passing criterion_trinomial_family.

    Two trinomial candidates on disjoint variable blocks a-e and f-j;
    block-local generators keep the family conditions automatic.
    """
    ring = ring_of(10)
    t1, t2 = (0, 1, 2), (5, 6, 7)
    for _ in range(300):
        gens = [
            ring.monomial({0: 1, 1: 1}),
            ring.monomial({0: 1, 2: 1}),
            ring.monomial({5: 1, 6: 1}),
            ring.monomial({5: 1, 7: 1}),
        ]
        for base, frees in ((1, (3, 4)), (2, (3, 4)), (6, (8, 9)), (7, (8, 9))):
            if rng.random() < 0.5:
                exps = {v: rng.randint(0, 1) for v in frees}
                exps[base] = 1
                gens.append(ring.monomial(exps))
        for frees in ((3, 4), (8, 9)):
            for _ in range(rng.randint(0, 2)):
                exps = {v: rng.randint(0, 2) for v in frees}
                m = ring.monomial(exps)
                if not m.is_one():
                    gens.append(m)
        I = MonomialIdeal(ring, gens)
        if criterion_trinomial_family(I, [t1, t2]).passed:
            return I, t1, t2
    raise AssertionError("no passing two-block instance found")


def bounded_exponents(k: int, bound: int):
    """All k-tuples of non-negative integers with sum <= bound."""
    if k == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in bounded_exponents(k - 1, bound - first):
            yield (first, *rest)


def _np_member(rows: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """rows[i] divisible by some generator, vectorized."""
    if gens.shape[0] == 0:
        return np.zeros(rows.shape[0], dtype=bool)
    return (rows[:, None, :] >= gens[None, :, :]).all(axis=2).any(axis=1)


def _kernel_dim_on_fiber(a: int, target_absent: list[bool]) -> int:
    """Dimension of {sum c_i b0^(a-i) b1^i m : times (b0+b1) lands in I^t}.

    Multiplying basis vector i by b0+b1 hits targets i and i+1, so each
    target outside I^t imposes c_{j-1} + c_j = 0 (indices off the ends are
    pinned to zero).  The equations form chains; rank = merges that join
    distinct components of a union-find with a zero node.
    """
    zero_node = a + 1
    parent = list(range(a + 2))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for j in range(a + 2):
        if not target_absent[j]:
            continue
        u = j - 1 if j >= 1 else zero_node
        v = j if j <= a else zero_node
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            rank += 1
    return (a + 1) - rank


def assert_colon_slices_match(I: MonomialIdeal, t: int, b0: str, b1: str,
                              J: MonomialIdeal) -> None:
    """Degree-by-degree proof that (I^t : b0+b1) == J, up to the generator bound.

    Fibers the monomials of each multidegree over the (b0, b1)-split; on each
    fiber the polynomial colon is a linear kernel whose dimension must equal
    the number of fiber monomials lying in J (J is inside the kernel for
    free, so dimensions match iff the colon has no extra, non-monomial
    elements).
    """
    ring = I.ring
    It = I.power(t)
    i0, i1 = ring.index(b0), ring.index(b1)
    others = [i for i in range(ring.nvars) if i not in (i0, i1)]
    degrees = [g.degree() for g in It.gens] + [g.degree() for g in J.gens]
    bound = max(degrees, default=0)

    fibers = []          # (a, rest) with a = total b-degree
    target_rows = []     # stacked rows of every fiber's a+2 targets
    basis_rows = []      # stacked rows of every fiber's a+1 basis monomials
    for vec in bounded_exponents(len(others) + 1, bound):
        a, rest = vec[0], vec[1:]
        fibers.append(a)
        for j in range(a + 2):
            row = [0] * ring.nvars
            row[i0], row[i1] = a + 1 - j, j
            for v, e in zip(others, rest):
                row[v] = e
            target_rows.append(row)
        for i in range(a + 1):
            row = [0] * ring.nvars
            row[i0], row[i1] = a - i, i
            for v, e in zip(others, rest):
                row[v] = e
            basis_rows.append(row)

    it_gens = np.array([g.exps for g in It.gens], dtype=np.int64).reshape(len(It.gens), ring.nvars)
    j_gens = np.array([g.exps for g in J.gens], dtype=np.int64).reshape(len(J.gens), ring.nvars)
    in_it = _np_member(np.array(target_rows, dtype=np.int64), it_gens)
    in_j = _np_member(np.array(basis_rows, dtype=np.int64), j_gens)

    t_pos = b_pos = 0
    for a in fibers:
        absent = [not in_it[t_pos + j] for j in range(a + 2)]
        expected = int(in_j[b_pos : b_pos + a + 1].sum())
        got = _kernel_dim_on_fiber(a, absent)
        assert got == expected, (
            f"colon slice mismatch: fiber b-degree {a}, kernel {got}, "
            f"monomials in J {expected}"
        )
        t_pos += a + 2
        b_pos += a + 1


def subsets_upto(items: list[int], max_size: int):
    for size in range(len(items) + 1):
        if size > max_size:
            return
        yield from itertools.combinations(items, size)
