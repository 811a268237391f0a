"""Monomials, polynomials, term orders and monomial ideals over QQ[x1..xn].

Everything is immutable and exact: exponents are ints, coefficients are
fractions.Fraction, and all derived objects (ideals, Groebner bases) are
deterministic functions of their inputs.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import PreconditionError, RingMismatchError

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class RingContext:
    """A polynomial ring over QQ, identified by its ordered variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad variable name: {name!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """Index of a variable by name."""
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in ring {self}") from None

    def variable(self, var: int | str) -> Monomial:
        """The degree-one monomial for one variable."""
        i = var if isinstance(var, int) else self.index(var)
        exps = [0] * self.nvars
        exps[i] = 1
        return Monomial(self, tuple(exps))

    def one(self) -> Monomial:
        """The unit monomial."""
        return Monomial(self, (0,) * self.nvars)

    def monomial(self, exps: Mapping[int | str, int] | Sequence[int]) -> Monomial:
        """Build a monomial from an exponent sequence or a {var: exp} mapping."""
        if isinstance(exps, Mapping):
            vec = [0] * self.nvars
            for var, e in exps.items():
                i = var if isinstance(var, int) else self.index(var)
                vec[i] = int(e)
            return Monomial(self, tuple(vec))
        vec = tuple(int(e) for e in exps)
        if len(vec) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        return Monomial(self, vec)

    def parse_monomial(self, text: str) -> Monomial:
        """Parse '*'-separated variable powers, e.g. 'a^2*b'."""
        vec = [0] * self.nvars
        text = text.strip()
        if text == "1":
            return Monomial(self, tuple(vec))
        for factor in text.split("*"):
            factor = factor.strip()
            if "^" in factor:
                name, _, power = factor.partition("^")
                try:
                    e = int(power)
                except ValueError:
                    raise ValueError(f"bad exponent in {factor!r}") from None
            else:
                name, e = factor, 1
            if e < 1:
                raise ValueError(f"exponent must be positive in {factor!r}")
            vec[self.index(name.strip())] += e
        return Monomial(self, tuple(vec))

    def __eq__(self, other) -> bool:
        return isinstance(other, RingContext) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"RingContext({', '.join(self.names)})"


def same_ring(*objects) -> RingContext:
    """Return the common ring of the arguments, or raise RingMismatchError."""
    ring = objects[0].ring
    for obj in objects[1:]:
        if obj.ring != ring:
            raise RingMismatchError(f"mixed rings: {ring} vs {obj.ring}")
    return ring


class Monomial:
    """An exponent vector in a fixed ring."""

    __slots__ = ("ring", "exps", "_hash")

    def __init__(self, ring: RingContext, exps: tuple[int, ...]):
        assert len(exps) == ring.nvars
        assert all(e >= 0 for e in exps)
        self.ring = ring
        self.exps = exps
        self._hash = hash((ring.names, exps))

    def degree(self) -> int:
        return sum(self.exps)

    def degree_in(self, var: int | str) -> int:
        """The exponent of one variable (d_x of this monomial)."""
        i = var if isinstance(var, int) else self.ring.index(var)
        return self.exps[i]

    def support(self) -> frozenset[int]:
        """Indices of variables with positive exponent."""
        return frozenset(i for i, e in enumerate(self.exps) if e)

    def is_one(self) -> bool:
        return not any(self.exps)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def __mul__(self, other: Monomial) -> Monomial:
        same_ring(self, other)
        return Monomial(self.ring, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> Monomial:
        if k < 0:
            raise ValueError("negative power")
        return Monomial(self.ring, tuple(a * k for a in self.exps))

    def divides(self, other: Monomial) -> bool:
        same_ring(self, other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other: Monomial) -> Monomial:
        same_ring(self, other)
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(self.ring, tuple(a - b for a, b in zip(self.exps, other.exps)))

    def lcm(self, other: Monomial) -> Monomial:
        same_ring(self, other)
        return Monomial(self.ring, tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def gcd(self, other: Monomial) -> Monomial:
        same_ring(self, other)
        return Monomial(self.ring, tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def coprime(self, other: Monomial) -> bool:
        return self.gcd(other).is_one()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Monomial)
            and self.exps == other.exps
            and self.ring.names == other.ring.names
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if self.is_one():
            return "1"
        parts = []
        for name, e in zip(self.ring.names, self.exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


def monomial_lcm_gcd(a: Monomial, b: Monomial) -> tuple[Monomial, Monomial]:
    """Componentwise (max, min) of two exponent vectors."""
    return a.lcm(b), a.gcd(b)


class TermOrder:
    """Lexicographic order over a user-supplied variable priority.

    priority is a permutation of variable indices, highest first; monomials
    compare by the exponent of the highest-priority variable where they
    differ.  The order is total, multiplicative, and has 1 as its minimum.
    """

    __slots__ = ("ring", "priority", "_rank")

    def __init__(self, ring: RingContext, priority: Sequence[int]):
        priority = tuple(priority)
        if sorted(priority) != list(range(ring.nvars)):
            raise ValueError("priority must be a permutation of the variable indices")
        self.ring = ring
        self.priority = priority
        rank = [0] * ring.nvars
        for pos, i in enumerate(priority):
            rank[i] = pos
        self._rank = tuple(rank)

    @classmethod
    def lex(cls, ring: RingContext, front: Sequence[int | str] = ()) -> TermOrder:
        """Lex order listing `front` variables first, the rest in declaration order."""
        head = []
        seen = set()
        for var in front:
            i = var if isinstance(var, int) else ring.index(var)
            if i in seen:
                raise ValueError(f"repeated variable {ring.names[i]!r} in order")
            seen.add(i)
            head.append(i)
        tail = [i for i in range(ring.nvars) if i not in seen]
        return cls(ring, head + tail)

    def key(self, m: Monomial):
        """Sort key; larger monomials get larger keys."""
        return tuple(m.exps[i] for i in self.priority)

    def compare(self, a: Monomial, b: Monomial) -> int:
        """-1, 0 or 1 as a <, =, > b."""
        same_ring(a, b)
        for i in self.priority:
            if a.exps[i] != b.exps[i]:
                return 1 if a.exps[i] > b.exps[i] else -1
        return 0

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.compare(a, b) > 0

    def ranks_above(self, x: int | str, y: int | str) -> bool:
        """True when variable x is ranked above variable y."""
        i = x if isinstance(x, int) else self.ring.index(x)
        j = y if isinstance(y, int) else self.ring.index(y)
        return self._rank[i] < self._rank[j]

    def __repr__(self) -> str:
        return "TermOrder(lex " + " ".join(self.ring.names[i] for i in self.priority) + ")"


class Polynomial:
    """A polynomial with Fraction coefficients, stored as {monomial: coefficient}."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self._terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def zero(cls, ring: RingContext) -> Polynomial:
        return cls(ring, {})

    @classmethod
    def from_monomial(cls, m: Monomial, coeff=1) -> Polynomial:
        return cls(m.ring, {m: Fraction(coeff)})

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def monomials(self) -> set[Monomial]:
        return set(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: Polynomial) -> Polynomial:
        same_ring(self, other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Polynomial(self.ring, terms)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, coeff: Fraction | int, m: Monomial | None = None) -> Polynomial:
        """coeff * m * self."""
        coeff = Fraction(coeff)
        if coeff == 0:
            return Polynomial.zero(self.ring)
        if m is None or m.is_one():
            return Polynomial(self.ring, {t: c * coeff for t, c in self._terms.items()})
        return Polynomial(self.ring, {t * m: c * coeff for t, c in self._terms.items()})

    def __mul__(self, other: Polynomial) -> Polynomial:
        same_ring(self, other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.ring, terms)

    def leading_monomial(self, order: TermOrder) -> Monomial:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: TermOrder) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def monic(self, order: TermOrder) -> Polynomial:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def tail(self, order: TermOrder) -> Polynomial:
        """self minus its leading term."""
        lm = self.leading_monomial(order)
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if m != lm})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.ring.names, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        items = sorted(self._terms.items(), key=lambda t: (t[0].degree(), t[0].exps), reverse=True)
        parts = []
        for m, c in items:
            if c < 0:
                sign, c = " - ", -c
            else:
                sign = " + "
            if m.is_one():
                body = str(c)
            elif c == 1:
                body = str(m)
            else:
                body = f"{c}*{m}"
            parts.append(sign + body)
        text = "".join(parts)
        return text[3:] if text.startswith(" + ") else "-" + text[3:]

    def __repr__(self) -> str:
        return f"Polynomial({self})"


class LinearSum:
    """A sum of distinct variables with unit coefficients; the first is the head."""

    __slots__ = ("ring", "variables")

    def __init__(self, ring: RingContext, variables: Sequence[int | str]):
        idx = tuple(v if isinstance(v, int) else ring.index(v) for v in variables)
        if not idx:
            raise ValueError("a linear sum needs at least one variable")
        if len(set(idx)) != len(idx):
            raise ValueError("repeated variable in linear sum")
        for i in idx:
            if not 0 <= i < ring.nvars:
                raise ValueError(f"variable index {i} out of range")
        self.ring = ring
        self.variables = idx

    @property
    def head(self) -> int:
        return self.variables[0]

    @property
    def tail(self) -> tuple[int, ...]:
        return self.variables[1:]

    def support(self) -> frozenset[int]:
        return frozenset(self.variables)

    def to_polynomial(self) -> Polynomial:
        terms = {self.ring.variable(i): Fraction(1) for i in self.variables}
        return Polynomial(self.ring, terms)

    def __len__(self) -> int:
        return len(self.variables)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearSum)
            and self.ring == other.ring
            and self.variables == other.variables
        )

    def __hash__(self) -> int:
        return hash((self.ring.names, self.variables))

    def __str__(self) -> str:
        return " + ".join(self.ring.names[i] for i in self.variables)

    def __repr__(self) -> str:
        return f"LinearSum({self})"


def sequence_term_order(ring: RingContext, forms: Sequence[LinearSum]) -> TermOrder:
    """A lex order under which every form's head beats its tail, and tail
    variables keep their listed order.

    Preference: heads in form order, then tail variables in form order, then
    the rest in declaration order; a topological pass over the head>tail and
    consecutive-tail constraints repairs the preference where it conflicts.
    Raises PreconditionError when the constraints are cyclic.
    """
    forms = list(forms)
    for f in forms:
        if f.ring != ring:
            raise RingMismatchError(f"form {f} lives in {f.ring}, not {ring}")
    if not forms:
        return TermOrder.lex(ring)
    pref: list[int] = []
    seen: set[int] = set()
    for f in forms:
        if f.head not in seen:
            seen.add(f.head)
            pref.append(f.head)
    for f in forms:
        for v in f.tail:
            if v not in seen:
                seen.add(v)
                pref.append(v)
    for i in range(ring.nvars):
        if i not in seen:
            pref.append(i)
    pref_rank = {v: k for k, v in enumerate(pref)}

    succ: dict[int, set[int]] = {i: set() for i in range(ring.nvars)}
    indeg = [0] * ring.nvars
    def edge(u: int, v: int) -> None:
        if v not in succ[u]:
            succ[u].add(v)
            indeg[v] += 1

    for f in forms:
        for v in f.tail:
            edge(f.head, v)
        for u, v in zip(f.tail, f.tail[1:]):
            edge(u, v)
    heap = [pref_rank[v] for v in range(ring.nvars) if indeg[v] == 0]
    heapq.heapify(heap)
    priority: list[int] = []
    while heap:
        v = pref[heapq.heappop(heap)]
        priority.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, pref_rank[w])
    if len(priority) != ring.nvars:
        raise PreconditionError("head/tail constraints of the forms are cyclic")
    return TermOrder(ring, priority)


def minimalize(ring: RingContext, gens: Iterable[Monomial]) -> frozenset[Monomial]:
    """Drop every monomial strictly divisible by another; result is the unique
    minimal generating set of the ideal the input generates."""
    unique = sorted(set(gens), key=lambda m: (m.degree(), m.exps))
    kept: list[Monomial] = []
    for m in unique:
        assert m.ring == ring
        if not any(g.divides(m) for g in kept):
            kept.append(m)
    return frozenset(kept)


class MonomialIdeal:
    """An ideal generated by monomials, held by its minimal generators.

    The zero ideal has no generators; the unit ideal is generated by 1.
    """

    __slots__ = ("ring", "gens", "_hash")

    def __init__(self, ring: RingContext, gens: Iterable[Monomial]):
        self.ring = ring
        self.gens = minimalize(ring, gens)
        self._hash = hash((ring.names, self.gens))

    @classmethod
    def from_exponents(cls, ring: RingContext, vectors: Iterable[Sequence[int]]) -> MonomialIdeal:
        return cls(ring, [ring.monomial(v) for v in vectors])

    def sorted_gens(self) -> list[Monomial]:
        """Generators in the canonical (degree, exponent vector) order."""
        return sorted(self.gens, key=lambda m: (m.degree(), m.exps))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(m.is_one() for m in self.gens)

    def is_proper(self) -> bool:
        return not self.is_unit()

    def is_squarefree(self) -> bool:
        return all(m.is_squarefree() for m in self.gens)

    def contains(self, m: Monomial) -> bool:
        """Membership of a monomial: some generator divides it."""
        same_ring(self, m)
        return any(g.divides(m) for g in self.gens)

    def contains_polynomial(self, f: Polynomial) -> bool:
        """A polynomial lies in a monomial ideal iff every term does."""
        same_ring(self, f)
        return all(self.contains(m) for m, _ in f.terms())

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        same_ring(self, other)
        return all(self.contains(g) for g in other.gens)

    def __le__(self, other: MonomialIdeal) -> bool:
        return other.contains_ideal(self)

    def plus(self, extra: Iterable[Monomial] | MonomialIdeal) -> MonomialIdeal:
        """Ideal sum."""
        gens = extra.gens if isinstance(extra, MonomialIdeal) else extra
        return MonomialIdeal(self.ring, list(self.gens) + list(gens))

    def product(self, other: MonomialIdeal) -> MonomialIdeal:
        same_ring(self, other)
        return MonomialIdeal(self.ring, [a * b for a in self.gens for b in other.gens])

    def power(self, t: int) -> MonomialIdeal:
        """I^t for t >= 1."""
        if t < 1:
            raise ValueError("power must be >= 1")
        result = self
        for _ in range(t - 1):
            result = result.product(self)
        return result

    def colon(self, m: Monomial) -> MonomialIdeal:
        """(I : m) = <g / gcd(g, m)>."""
        same_ring(self, m)
        return MonomialIdeal(self.ring, [g / g.gcd(m) for g in self.gens])

    def intersect(self, other: MonomialIdeal) -> MonomialIdeal:
        """Pairwise lcms of generators, minimalized."""
        same_ring(self, other)
        return MonomialIdeal(self.ring, [a.lcm(b) for a in self.gens for b in other.gens])

    def degree_in(self, var: int | str) -> int:
        """d_x(I): the largest power of x dividing any minimal generator."""
        i = var if isinstance(var, int) else self.ring.index(var)
        return max((g.exps[i] for g in self.gens), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MonomialIdeal)
            and self.ring == other.ring
            and self.gens == other.gens
        )

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(str(m) for m in self.sorted_gens()) + ")"

    def __repr__(self) -> str:
        return f"MonomialIdeal{self}"


def ideal_power(ideal: MonomialIdeal, t: int) -> MonomialIdeal:
    """I^t."""
    return ideal.power(t)


def colon_by_monomial(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """(I : m)."""
    return ideal.colon(m)


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """I cap J."""
    return a.intersect(b)


def degree_in_variable(target, var: int | str) -> int:
    """d_x of a monomial or of a monomial ideal."""
    return target.degree_in(var)
