"""Buchberger's algorithm for ideals generated by monomials and small polynomials.

The workloads here are monomial ideals extended by a few linear sums, so the
implementation keeps two cheap structural shortcuts: the S-polynomial of two
monomials is identically zero, and pairs with coprime leading terms reduce to
zero and are never enqueued.  Everything reduces deterministically: the basis
is scanned in a fixed sorted order and outputs are monic reduced bases.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import LinearSum, Monomial, MonomialIdeal, Polynomial, RingContext, TermOrder, same_ring
from .errors import PreconditionError, ResourceLimitError

DEFAULT_TERM_BUDGET = 10**6


class _Budget:
    """Counts monomials touched during reduction; trips ResourceLimitError."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def charge(self, amount: int) -> None:
        self.used += amount
        if self.used > self.limit:
            raise ResourceLimitError(
                f"Groebner computation exceeded the term budget of {self.limit}"
            )


def as_polynomial(f: Polynomial | Monomial | LinearSum) -> Polynomial:
    """Coerce generators given as monomials or linear sums."""
    if isinstance(f, Polynomial):
        return f
    if isinstance(f, Monomial):
        return Polynomial.from_monomial(f)
    if isinstance(f, LinearSum):
        return f.to_polynomial()
    raise TypeError(f"cannot use {type(f).__name__} as a polynomial")


def is_monomial(f: Polynomial) -> bool:
    return len(f) == 1


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    """S(f, g) = (lcm / lt(f)) f - (lcm / lt(g)) g after making both monic."""
    same_ring(f, g)
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of the zero polynomial")
    f = f.monic(order)
    g = g.monic(order)
    lf = f.leading_monomial(order)
    lg = g.leading_monomial(order)
    lcm = lf.lcm(lg)
    return f.scale(1, lcm / lf) - g.scale(1, lcm / lg)


def _sorted_basis(basis: Sequence[Polynomial], order: TermOrder) -> list[tuple[Monomial, Polynomial]]:
    leads = [(g.leading_monomial(order), g) for g in basis if not g.is_zero()]
    decorated = sorted(
        ((order.key(lm), pos, lm, g) for pos, (lm, g) in enumerate(leads)),
    )
    return [(lm, g) for _, _, lm, g in decorated]


def normal_form(
    f: Polynomial,
    basis: Sequence[Polynomial],
    order: TermOrder,
    budget: _Budget | None = None,
) -> Polynomial:
    """Remainder of f under full division by basis, scanned in sorted order."""
    if budget is None:
        budget = _Budget(DEFAULT_TERM_BUDGET)
    table = _sorted_basis(basis, order)
    work = dict(f.terms())
    remainder: dict[Monomial, object] = {}
    key = order.key
    while work:
        lm = max(work, key=key)
        coeff = work.pop(lm)
        reducer = None
        for lead, g in table:
            if lead.divides(lm):
                reducer = (lead, g)
                break
        if reducer is None:
            remainder[lm] = coeff
            budget.charge(1)
            continue
        lead, g = reducer
        shift = lm / lead
        scale = coeff / g.coefficient(lead)
        budget.charge(len(g))
        for m, c in g.terms():
            if m == lead:
                continue
            mm = m * shift
            new = work.get(mm, 0) - scale * c
            if new:
                work[mm] = new
            else:
                work.pop(mm, None)
    return Polynomial(f.ring, remainder)


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic elements, sorted by leading monomial."""

    ring: RingContext
    order: TermOrder
    elements: tuple[Polynomial, ...]

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def initial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.ring, self.leading_monomials())

    def reduce(self, f: Polynomial | Monomial | LinearSum) -> Polynomial:
        return normal_form(as_polynomial(f), self.elements, self.order)

    def contains(self, f: Polynomial | Monomial | LinearSum) -> bool:
        return self.reduce(f).is_zero()


def buchberger(
    gens: Iterable[Polynomial | Monomial | LinearSum],
    order: TermOrder,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> GroebnerBasis:
    """Reduced Groebner basis via the normal strategy (smallest lcm first)."""
    budget = _Budget(term_budget)
    basis: list[Polynomial] = []
    for f in gens:
        f = as_polynomial(f)
        if not f.is_zero():
            basis.append(f.monic(order))
    if not basis:
        raise PreconditionError("needs at least one nonzero generator")
    ring = same_ring(*basis)
    if ring != order.ring:
        raise ValueError("order belongs to a different ring")

    leads = [g.leading_monomial(order) for g in basis]
    pairs: list[tuple[tuple, int, int]] = []

    def push_pairs(j: int) -> None:
        # Skip both-monomial pairs (their S-polynomial is exactly zero) and
        # coprime leading terms (Buchberger's first criterion).
        for i in range(j):
            if is_monomial(basis[i]) and is_monomial(basis[j]):
                continue
            if leads[i].coprime(leads[j]):
                continue
            lcm = leads[i].lcm(leads[j])
            heapq.heappush(pairs, (order.key(lcm) + (i, j), i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        s = s_polynomial(basis[i], basis[j], order)
        if s.is_zero():
            continue
        r = normal_form(s, basis, order, budget)
        if r.is_zero():
            continue
        basis.append(r.monic(order))
        leads.append(r.leading_monomial(order))
        push_pairs(len(basis) - 1)

    return _reduce_basis(ring, basis, order, budget)


def _reduce_basis(
    ring: RingContext, basis: list[Polynomial], order: TermOrder, budget: _Budget
) -> GroebnerBasis:
    """Minimalize leading terms, then tail-reduce to the unique reduced basis."""
    decorated = sorted(
        ((order.key(g.leading_monomial(order)), pos, g) for pos, g in enumerate(basis))
    )
    minimal: list[Polynomial] = []
    minimal_leads: list[Monomial] = []
    for _, _, g in decorated:
        lm = g.leading_monomial(order)
        if not any(lead.divides(lm) for lead in minimal_leads):
            minimal.append(g)
            minimal_leads.append(lm)
    reduced = []
    for pos, g in enumerate(minimal):
        others = minimal[:pos] + minimal[pos + 1 :]
        r = normal_form(g, others, order, budget)
        assert not r.is_zero()
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return GroebnerBasis(ring, order, tuple(reduced))


def initial_ideal(
    gens: Iterable[Polynomial | Monomial | LinearSum],
    order: TermOrder,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> MonomialIdeal:
    """Ideal of leading terms, ini(gens), as a minimally generated monomial ideal."""
    return buchberger(gens, order, term_budget).initial_ideal()


def contains_poly_ideal(
    gens: Iterable[Polynomial | Monomial | LinearSum],
    order: TermOrder,
    f: Polynomial | Monomial | LinearSum,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> bool:
    """Ideal membership of f via normal form against a Groebner basis of gens."""
    return buchberger(gens, order, term_budget).contains(f)
