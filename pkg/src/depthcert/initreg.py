"""Criteria certifying linear sums as (initially) regular on squares of ideals.

A candidate is a sum of distinct variables b_0 + b_1 + ... + b_t whose head
b_0 is eliminated by the tail.  All criteria are sufficient, not necessary:
a failed check proves nothing, and every certificate this module emits can be
re-verified against the Groebner/Hilbert oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .combinatorics import neighborhood_monomials
from .core import (
    LinearSum,
    Monomial,
    MonomialIdeal,
    TermOrder,
    same_ring,
    sequence_term_order,
)
from .errors import PreconditionError
from .groebner import DEFAULT_TERM_BUDGET, initial_ideal
from .oracle import MonomialPrime, is_zerodivisor_linear, pd_witness

__all__ = [
    "StarWitness",
    "StarFailure",
    "check_star",
    "hat_substitute",
    "iterated_initial",
    "StepReport",
    "InitiallyRegularReport",
    "is_initially_regular",
    "colon_linear_binomial",
    "BinomialCheck",
    "criterion_binomial",
    "FamilyCheck",
    "criterion_binomial_family",
    "TrinomialViolation",
    "TrinomialCheck",
    "criterion_trinomial",
    "closed_form_ini_trinomial",
    "closed_form_ini_square_trinomial",
    "criterion_trinomial_family",
    "CombinedCheck",
    "criterion_combined",
    "SequenceCertificate",
    "find_sequences",
    "certified_square_depth",
]


def _var(ideal: MonomialIdeal, v: int | str) -> int:
    return v if isinstance(v, int) else ideal.ring.index(v)


# ---------------------------------------------------------------------------
# the star condition


@dataclass(frozen=True)
class StarWitness:
    """A candidate passing the star condition, with its induced term order."""

    head: int
    tail: tuple[int, ...]
    order: TermOrder


@dataclass(frozen=True)
class StarFailure:
    """Why the star condition failed: squared variables, or generators
    divisible by the head that no tail variable divides."""

    power_violations: tuple[tuple[int, Monomial], ...]
    cover_violations: tuple[Monomial, ...]


def check_star(I: MonomialIdeal, s: LinearSum) -> StarWitness | StarFailure:
    """The star condition for b_0 + ... + b_t on I: every b_i appears at most
    to the first power in the generators, and every generator divisible by
    b_0 is divisible by some tail variable."""
    same_ring(I, s)
    if I.is_unit():
        raise PreconditionError("the star condition needs a proper ideal")
    power_violations = []
    for b in s.variables:
        for g in I.sorted_gens():
            if g.exps[b] >= 2:
                power_violations.append((b, g))
    cover_violations = []
    for g in I.sorted_gens():
        if g.exps[s.head] and not any(g.exps[b] for b in s.tail):
            cover_violations.append(g)
    if power_violations or cover_violations:
        return StarFailure(tuple(power_violations), tuple(cover_violations))
    return StarWitness(s.head, s.tail, sequence_term_order(I.ring, [s]))


def hat_substitute(m: Monomial, b0: int | str, b1: int | str) -> Monomial:
    """Replace the full b0-power of a monomial by the same power of b1."""
    ring = m.ring
    i0 = b0 if isinstance(b0, int) else ring.index(b0)
    i1 = b1 if isinstance(b1, int) else ring.index(b1)
    e = m.exps[i0]
    if not e:
        return m
    return (m / (ring.variable(i0) ** e)) * (ring.variable(i1) ** e)


# ---------------------------------------------------------------------------
# iterated initial ideals and initial regularity


def iterated_initial(
    I: MonomialIdeal,
    forms: list[LinearSum],
    order: TermOrder,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> list[MonomialIdeal]:
    """[J_0, ..., J_s] with J_0 = I and J_i = ini(J_{i-1} + f_i)."""
    same_ring(I, *forms) if forms else same_ring(I)
    for f in forms:
        if not all(order.ranks_above(f.head, v) for v in f.tail):
            raise PreconditionError(f"order does not rank the head of {f} above its tail")
    chain = [I]
    for f in forms:
        chain.append(
            initial_ideal(list(chain[-1].gens) + [f.to_polynomial()], order, term_budget)
        )
    return chain


@dataclass(frozen=True)
class StepReport:
    """One step of an initial-regularity check."""

    form: LinearSum
    tested_against: MonomialIdeal
    regular: bool
    witness: MonomialPrime | None


@dataclass(frozen=True)
class InitiallyRegularReport:
    ok: bool
    steps: tuple[StepReport, ...]
    order: TermOrder


def is_initially_regular(
    I: MonomialIdeal,
    forms: list[LinearSum],
    order: TermOrder | None = None,
    displayed_indexing: bool = False,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> InitiallyRegularReport:
    """Whether f_1, ..., f_s is an initially regular sequence on R/I.

    Step i tests f_i for regularity on R/J_{i-1} where J_0 = I and
    J_i = ini(J_{i-1} + f_i); with displayed_indexing=True the test runs
    against R/J_i instead (the off-by-one variant of the same definition).
    """
    if order is None:
        order = sequence_term_order(I.ring, forms)
    chain = iterated_initial(I, forms, order, term_budget)
    steps = []
    ok = True
    for i, f in enumerate(forms):
        tested = chain[i + 1] if displayed_indexing else chain[i]
        zerodiv, witness = is_zerodivisor_linear(tested, f)
        steps.append(
            StepReport(form=f, tested_against=tested, regular=not zerodiv, witness=witness)
        )
        ok = ok and not zerodiv
    return InitiallyRegularReport(ok=ok, steps=tuple(steps), order=order)


# ---------------------------------------------------------------------------
# the colon lemma for binomial sums


def colon_linear_binomial(I: MonomialIdeal, t: int, b0: int | str, b1: int | str) -> MonomialIdeal:
    """(I^t : b0 + b1) = (I^t : b0) cap (I^t : b1), valid for t <= 3 when the
    star condition holds for (b0, b1).  Fails in general from t = 4 on."""
    i0, i1 = _var(I, b0), _var(I, b1)
    if not 1 <= t <= 3:
        raise PreconditionError("the colon identity is only available for 1 <= t <= 3")
    star = check_star(I, LinearSum(I.ring, [i0, i1]))
    if isinstance(star, StarFailure):
        raise PreconditionError(f"star condition fails for {I.ring.names[i0]} + {I.ring.names[i1]}")
    power = I.power(t)
    return power.colon(I.ring.variable(i0)).intersect(power.colon(I.ring.variable(i1)))


# ---------------------------------------------------------------------------
# binomial criterion


@dataclass(frozen=True)
class BinomialCheck:
    """Verdict for b0 + b1 on R/I^2, with the star outcome and, on failure of
    the neighborhood test, a witness pair of variables."""

    passed: bool
    star: StarWitness | StarFailure
    obstruction: tuple[int, int] | None


def _divisible(I: MonomialIdeal, m: Monomial) -> bool:
    return any(m.divides(g) for g in I.gens)


def criterion_binomial(I: MonomialIdeal, b0: int | str, b1: int | str) -> BinomialCheck:
    """Sufficient test for b0 + b1 to be regular on R/I^2.

    Requires the star condition for (b0, b1) and forbids variables z1, z2
    (possibly equal) with b1*z1, b1*z2 and z1*z2 all dividing generators.
    """
    i0, i1 = _var(I, b0), _var(I, b1)
    if i0 == i1:
        raise PreconditionError("head and tail variable must differ")
    ring = I.ring
    star = check_star(I, LinearSum(ring, [i0, i1]))
    v1 = ring.variable(i1)
    near = [z for z in range(ring.nvars) if _divisible(I, v1 * ring.variable(z))]
    obstruction = None
    for z1, z2 in itertools.combinations_with_replacement(near, 2):
        if _divisible(I, ring.variable(z1) * ring.variable(z2)):
            obstruction = (z1, z2)
            break
    passed = isinstance(star, StarWitness) and obstruction is None
    return BinomialCheck(passed=passed, star=star, obstruction=obstruction)


@dataclass(frozen=True)
class FamilyCheck:
    passed: bool
    failures: tuple[str, ...]


def _support_overlaps(forms: list[LinearSum]) -> list[str]:
    failures = []
    for (i, f), (j, g) in itertools.combinations(enumerate(forms), 2):
        if f.support() & g.support():
            failures.append(f"supports of {f} and {g} overlap")
    return failures


def criterion_binomial_family(
    I: MonomialIdeal, pairs: list[tuple[int | str, int | str]]
) -> FamilyCheck:
    """The binomial criterion for each pair, pairwise disjoint supports, and
    no generator divisible by a product of two tail variables.  Passing makes
    the sums a regular sequence on R/I^2."""
    ring = I.ring
    idx = [(_var(I, a), _var(I, b)) for a, b in pairs]
    failures = []
    for a, b in idx:
        if not criterion_binomial(I, a, b).passed:
            failures.append(f"{ring.names[a]} + {ring.names[b]} fails the pair criterion")
    failures += _support_overlaps([LinearSum(ring, [a, b]) for a, b in idx])
    for (_, b), (_, d) in itertools.combinations(idx, 2):
        if _divisible(I, ring.variable(b) * ring.variable(d)):
            failures.append(
                f"a generator is divisible by {ring.names[b]}*{ring.names[d]}"
            )
    return FamilyCheck(passed=not failures, failures=tuple(failures))


# ---------------------------------------------------------------------------
# trinomial criterion


@dataclass(frozen=True)
class TrinomialViolation:
    clause: str
    witness: tuple


@dataclass(frozen=True)
class TrinomialCheck:
    passed: bool
    violations: tuple[TrinomialViolation, ...]


def criterion_trinomial(
    I: MonomialIdeal, b0: int | str, b1: int | str, b2: int | str
) -> TrinomialCheck:
    """Sufficient test for b0 + b1 + b2 to be initially regular on R/I^2.

    Clauses: (a) no b_i squared in a generator; (b) the generators divisible
    by b0 are exactly b0*b1 and b0*b2, both present; (c) no generator
    divisible by b1*b2;
    (d) no z1, z2, possibly equal, with b1*z1, b1*z2, z1*z2 dividing
    generators; (e) no x1, x2 with b1*x1, x1*x2, x2*b2 dividing generators.
    """
    i0, i1, i2 = _var(I, b0), _var(I, b1), _var(I, b2)
    if len({i0, i1, i2}) != 3:
        raise PreconditionError("the three variables must be distinct")
    if I.is_unit():
        raise PreconditionError("needs a proper ideal")
    ring = I.ring
    v0, v1, v2 = (ring.variable(i) for i in (i0, i1, i2))
    violations: list[TrinomialViolation] = []
    for b in (i0, i1, i2):
        for g in I.sorted_gens():
            if g.exps[b] >= 2:
                violations.append(TrinomialViolation("a", (b, g)))
    # both products must be minimal generators: dropping either one lets a
    # bare b1 or a lone b0-neighbour slip through, and those break the
    # squared closed form that the regularity argument leans on
    for m in (v0 * v1, v0 * v2):
        if m not in I.gens:
            violations.append(TrinomialViolation("b", (m,)))
    for g in I.sorted_gens():
        if g.exps[i0] and g not in (v0 * v1, v0 * v2):
            violations.append(TrinomialViolation("b", (g,)))
    for g in I.sorted_gens():
        if (v1 * v2).divides(g):
            violations.append(TrinomialViolation("c", (g,)))
    # z1 = z2 matters: b1*z plus z^2 in the generators already breaks the
    # squared closed form, so the diagonal cannot be skipped
    near1 = [z for z in range(ring.nvars) if z != i1 and _divisible(I, v1 * ring.variable(z))]
    for z1, z2 in itertools.combinations_with_replacement(near1, 2):
        if _divisible(I, ring.variable(z1) * ring.variable(z2)):
            violations.append(TrinomialViolation("d", (z1, z2)))
    near2 = [z for z in range(ring.nvars) if z != i2 and _divisible(I, v2 * ring.variable(z))]
    for x1 in near1:
        for x2 in near2:
            if _divisible(I, ring.variable(x1) * ring.variable(x2)):
                violations.append(TrinomialViolation("e", (x1, x2)))
    return TrinomialCheck(passed=not violations, violations=tuple(violations))


# ---------------------------------------------------------------------------
# closed forms for trinomial initial ideals


def closed_form_ini_trinomial(
    I: MonomialIdeal,
    b0: int | str,
    b1: int | str,
    b2: int | str,
    order: TermOrder,
) -> MonomialIdeal:
    """ini(I + (b0 + b1 + b2)) without a Groebner computation.

    Needs the star condition for (b0, b1, b2), no generator divisible by
    b1*b2, and an order ranking b0 > b1 > b2.  Generators: b0 itself, the
    hat substitutes of the generators, and lcm(X, M')*b2^2 for every pair
    b1*X, b0*b2*M' of generators with b0 not dividing X.
    """
    i0, i1, i2 = _var(I, b0), _var(I, b1), _var(I, b2)
    ring = I.ring
    star = check_star(I, LinearSum(ring, [i0, i1, i2]))
    if isinstance(star, StarFailure):
        raise PreconditionError("star condition fails for the trinomial")
    v0, v1, v2 = (ring.variable(i) for i in (i0, i1, i2))
    if _divisible(I, v1 * v2):
        raise PreconditionError("a generator is divisible by b1*b2")
    if not (order.ranks_above(i0, i1) and order.ranks_above(i1, i2)):
        raise PreconditionError("order must rank b0 > b1 > b2")
    gens: list[Monomial] = [v0]
    for g in I.gens:
        gens.append(hat_substitute(g, i0, i1))
    xs = [g / v1 for g in I.gens if g.exps[i1]]
    ms = [g / (v0 * v2) for g in I.gens if g.exps[i0] and g.exps[i2]]
    for X in xs:
        if X.exps[i0]:
            continue
        for M in ms:
            gens.append(X.lcm(M) * v2 * v2)
    return MonomialIdeal(ring, gens)


def closed_form_ini_square_trinomial(
    I: MonomialIdeal,
    b0: int | str,
    b1: int | str,
    b2: int | str,
    order: TermOrder,
) -> MonomialIdeal:
    """ini(I^2 + (b0 + b1 + b2)) = (b0) + ini(I + (b0+b1+b2))^2, valid when
    the trinomial criterion passes and the order ranks b0 > b1 > b2."""
    i0, i1, i2 = _var(I, b0), _var(I, b1), _var(I, b2)
    check = criterion_trinomial(I, i0, i1, i2)
    if not check.passed:
        raise PreconditionError(
            "trinomial criterion fails: "
            + ", ".join(sorted({v.clause for v in check.violations}))
        )
    if not (order.ranks_above(i0, i1) and order.ranks_above(i1, i2)):
        raise PreconditionError("order must rank b0 > b1 > b2")
    inner = closed_form_ini_trinomial(I, i0, i1, i2, order)
    return inner.power(2).plus([I.ring.variable(i0)])


def criterion_trinomial_family(
    I: MonomialIdeal, triples: list[tuple[int | str, int | str, int | str]]
) -> FamilyCheck:
    """Each triple passes, supports are pairwise disjoint, and no variable of
    one triple is a neighbor of a tail variable of another (x*b_{j,r} is
    never a generator).  Passing makes the sums initially regular on R/I^2."""
    ring = I.ring
    idx = [tuple(_var(I, v) for v in t) for t in triples]
    failures = []
    for t in idx:
        if not criterion_trinomial(I, *t).passed:
            name = " + ".join(ring.names[v] for v in t)
            failures.append(f"{name} fails the triple criterion")
    failures += _support_overlaps([LinearSum(ring, t) for t in idx])
    for (i, ti), (j, tj) in itertools.permutations(enumerate(idx), 2):
        for r in (1, 2):
            hood = neighborhood_monomials(I, tj[r])
            for v in ti:
                if ring.variable(v) in hood:
                    failures.append(
                        f"{ring.names[v]} neighbors {ring.names[tj[r]]} (triples {i} and {j})"
                    )
    return FamilyCheck(passed=not failures, failures=tuple(failures))


# ---------------------------------------------------------------------------
# combined families and certificates


@dataclass(frozen=True)
class SequenceCertificate:
    """Forms certified (initially) regular on R/I^power, bounding its depth."""

    forms: tuple[LinearSum, ...]
    kinds: tuple[str, ...]
    verdict: str
    depth_lower_bound: int
    order: TermOrder | None
    ideal_power: int = 2


@dataclass(frozen=True)
class CombinedCheck:
    passed: bool
    failures: tuple[str, ...]
    certificate: SequenceCertificate | None


def criterion_combined(
    I: MonomialIdeal,
    pairs: list[tuple[int | str, int | str]],
    triples: list[tuple[int | str, int | str, int | str]],
) -> CombinedCheck:
    """Binomial family plus trinomial family plus the cross condition that no
    pair variable neighbors a tail variable of a triple.  Passing certifies
    depth(R/I^2) >= len(pairs) + len(triples)."""
    ring = I.ring
    pidx = [tuple(_var(I, v) for v in p) for p in pairs]
    tidx = [tuple(_var(I, v) for v in t) for t in triples]
    failures = list(criterion_binomial_family(I, pidx).failures)
    failures += criterion_trinomial_family(I, tidx).failures
    pair_forms = [LinearSum(ring, p) for p in pidx]
    triple_forms = [LinearSum(ring, t) for t in tidx]
    for pf, tf in itertools.product(pair_forms, triple_forms):
        if pf.support() & tf.support():
            failures.append(f"supports of {pf} and {tf} overlap")
    for p in pidx:
        for t in tidx:
            for r in (1, 2):
                hood = neighborhood_monomials(I, t[r])
                for v in p:
                    if ring.variable(v) in hood:
                        failures.append(
                            f"{ring.names[v]} neighbors {ring.names[t[r]]}"
                        )
    if failures:
        return CombinedCheck(passed=False, failures=tuple(failures), certificate=None)
    forms = tuple(pair_forms + triple_forms)
    order = sequence_term_order(ring, list(forms)) if forms else None
    certificate = SequenceCertificate(
        forms=forms,
        kinds=tuple(["binomial"] * len(pairs) + ["trinomial"] * len(triples)),
        verdict="initially_regular" if triples else "regular",
        depth_lower_bound=len(forms),
        order=order,
    )
    return CombinedCheck(passed=True, failures=(), certificate=certificate)


# ---------------------------------------------------------------------------
# sequence search


def _compatible(I: MonomialIdeal, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    ring = I.ring
    if set(a) & set(b):
        return False
    if len(a) == 2 and len(b) == 2:
        return not _divisible(I, ring.variable(a[1]) * ring.variable(b[1]))
    pair, triple = (a, b) if len(a) == 2 else (b, a)
    if len(pair) == 2:
        for r in (1, 2):
            hood = neighborhood_monomials(I, triple[r])
            if any(ring.variable(v) in hood for v in pair):
                return False
        return True
    # both triples: neighbor condition in both directions
    for one, other in ((a, b), (b, a)):
        for r in (1, 2):
            hood = neighborhood_monomials(I, other[r])
            if any(ring.variable(v) in hood for v in one):
                return False
    return True


def find_sequences(
    I: MonomialIdeal,
    max_exact: int = 20,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> SequenceCertificate:
    """Largest family of criterion-passing sums with compatible supports.

    Candidates are every ordered pair passing the binomial criterion and
    every ordered triple passing the trinomial one; the compatibility graph
    is searched exactly up to max_exact candidates, and by deterministic
    seeded greedy extension beyond.  The resulting certificate is re-verified
    as an initially regular sequence on R/I^2 before being returned.
    """
    if I.is_unit():
        raise PreconditionError("needs a proper ideal")
    ring = I.ring
    n = ring.nvars
    candidates: list[tuple[int, ...]] = []
    for a, b in itertools.permutations(range(n), 2):
        if criterion_binomial(I, a, b).passed:
            candidates.append((a, b))
    for t in itertools.permutations(range(n), 3):
        if criterion_trinomial(I, *t).passed:
            candidates.append(t)
    candidates.sort(key=lambda c: (len(c), c))
    if not candidates:
        return SequenceCertificate(
            forms=(), kinds=(), verdict="regular", depth_lower_bound=0, order=None
        )
    m = len(candidates)
    adj = [[False] * m for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        adj[i][j] = adj[j][i] = _compatible(I, candidates[i], candidates[j])

    best: list[int] = []
    if m <= max_exact:
        def grow(chosen: list[int], pool: list[int]) -> None:
            nonlocal best
            if len(chosen) + len(pool) <= len(best):
                return
            if not pool:
                if len(chosen) > len(best):
                    best = list(chosen)
                return
            v, rest = pool[0], pool[1:]
            grow(chosen + [v], [u for u in rest if adj[v][u]])
            grow(chosen, rest)

        grow([], list(range(m)))
    else:
        for seed in range(m):
            chosen = [seed]
            for u in range(m):
                if u != seed and all(adj[u][c] for c in chosen):
                    chosen.append(u)
            if len(chosen) > len(best):
                best = sorted(chosen)
    chosen = [candidates[i] for i in sorted(best)]
    pairs = [c for c in chosen if len(c) == 2]
    triples = [c for c in chosen if len(c) == 3]
    combined = criterion_combined(I, pairs, triples)
    assert combined.passed, combined.failures
    certificate = combined.certificate
    assert certificate is not None
    if certificate.forms:
        report = is_initially_regular(
            I.power(2), list(certificate.forms), certificate.order, term_budget=term_budget
        )
        assert report.ok, "certificate failed re-verification"
    return certificate


def certified_square_depth(
    I: MonomialIdeal,
    lattice_budget: int = 400_000,
    nerve_budget: int = 1 << 20,
) -> tuple[int, SequenceCertificate, Monomial] | None:
    """depth(R/I^2) pinned exactly by a two-sided certificate, when one exists.

    The sequence certificate bounds the depth from below by its length s;
    a multidegree with a nonzero Betti number of R/I^2 in homological degree
    n - s bounds it from above by s.  Returns None when the two sides do not
    meet, in which case a full resolution is the only route left.
    """
    certificate = find_sequences(I)
    s = certificate.depth_lower_bound
    witness = pd_witness(
        I.power(2), I.ring.nvars - s, lattice_budget=lattice_budget, nerve_budget=nerve_budget
    )
    if witness is None:
        return None
    return s, certificate, witness
