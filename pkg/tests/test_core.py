import random

import pytest

from depthcert.core import (
    LinearSum,
    Monomial,
    MonomialIdeal,
    Polynomial,
    RingContext,
    TermOrder,
    minimalize,
    monomial_lcm_gcd,
    same_ring,
    sequence_term_order,
)
from depthcert.errors import PreconditionError, RingMismatchError
from helpers import ideal_of, random_ideal, random_monomial, ring_of


def test_ring_validation():
    with pytest.raises(ValueError):
        RingContext([])
    with pytest.raises(ValueError):
        RingContext(["a", "a"])
    with pytest.raises(ValueError):
        RingContext(["1bad"])
    with pytest.raises(ValueError):
        RingContext([""])
    ring = RingContext(["x1", "X_2"])
    assert ring.nvars == 2
    assert ring.index("X_2") == 1


def test_parse_monomial_roundtrip():
    ring = ring_of(4)
    for text in ["a^2*b", "a*b*c*d", "c^3", "1", "b*b*b"]:
        m = ring.parse_monomial(text)
        assert ring.parse_monomial(str(m)) == m
    assert ring.parse_monomial("a^2*b").exps == (2, 1, 0, 0)
    assert ring.parse_monomial("b*b*b") == ring.parse_monomial("b^3")
    with pytest.raises(ValueError):
        ring.parse_monomial("a^0")
    with pytest.raises(KeyError):
        ring.parse_monomial("a*z")


def test_lcm_gcd_examples():
    ring = ring_of(4)
    m = lambda s: ring.parse_monomial(s)
    assert monomial_lcm_gcd(m("a^2*b"), m("b*c")) == (m("a^2*b*c"), m("b"))
    assert monomial_lcm_gcd(m("a*b^2"), m("1")) == (m("a*b^2"), m("1"))
    assert monomial_lcm_gcd(m("a*b"), m("c*d")) == (m("a*b*c*d"), m("1"))


def test_lcm_gcd_product_identity():
    rng = random.Random(11)
    ring = ring_of(5)
    for _ in range(50):
        a = random_monomial(rng, ring)
        b = random_monomial(rng, ring)
        lcm, gcd = monomial_lcm_gcd(a, b)
        assert lcm * gcd == a * b
        assert gcd.divides(a) and gcd.divides(b)
        assert a.divides(lcm) and b.divides(lcm)


def test_compare_examples():
    ring = RingContext(list("abcdefg"))
    order = TermOrder.lex(ring, front=list("gfdabce"))
    fg = ring.parse_monomial("f*g")
    ae = ring.parse_monomial("a*e")
    assert order.compare(fg, ae) == 1
    assert order.compare(ae, ae) == 0
    ring2 = RingContext(["a", "b"])
    lex = TermOrder.lex(ring2)
    assert lex.compare(ring2.parse_monomial("b^2"), ring2.parse_monomial("a*b")) == -1


def test_compare_is_total_multiplicative_order():
    rng = random.Random(12)
    ring = ring_of(4)
    order = TermOrder.lex(ring, front=["c", "a"])
    one = ring.one()
    for _ in range(100):
        a = random_monomial(rng, ring)
        b = random_monomial(rng, ring)
        c = random_monomial(rng, ring)
        cmp_ab = order.compare(a, b)
        assert cmp_ab == -order.compare(b, a)
        assert (cmp_ab == 0) == (a == b)
        if cmp_ab == 1:
            assert order.compare(a * c, b * c) == 1
        if a != one:
            assert order.greater(a, one)


def test_term_order_priority_must_be_permutation():
    ring = ring_of(3)
    with pytest.raises(ValueError):
        TermOrder(ring, [0, 0, 1])
    with pytest.raises(ValueError):
        TermOrder(ring, [0, 1])
    with pytest.raises(ValueError):
        TermOrder.lex(ring, front=["a", "a"])
    order = TermOrder.lex(ring, front=["c"])
    assert order.ranks_above("c", "a")
    assert order.ranks_above("a", "b")


def test_minimalize_examples():
    ring = ring_of(4)
    m = lambda s: ring.parse_monomial(s)
    assert minimalize(ring, [m("a*b"), m("a*b*c"), m("c*d")]) == {m("a*b"), m("c*d")}
    assert minimalize(ring, []) == frozenset()
    assert minimalize(ring, [m("1"), m("a*b")]) == {m("1")}


def test_minimalize_idempotent_and_order_independent():
    rng = random.Random(13)
    for _ in range(30):
        ring = ring_of(4)
        gens = [random_monomial(rng, ring) for _ in range(rng.randint(1, 8))]
        first = minimalize(ring, gens)
        assert minimalize(ring, first) == first
        rng.shuffle(gens)
        assert minimalize(ring, gens) == first


def test_ideal_power_examples():
    ring = ring_of(2)
    I = ideal_of(ring, "a", "b")
    sq = I.power(2)
    assert sq == ideal_of(ring, "a^2", "a*b", "b^2")
    assert ideal_of(ring, "a*b").power(3) == ideal_of(ring, "a^3*b^3")
    assert I.power(1) == I
    with pytest.raises(ValueError):
        I.power(0)


def test_pentagon_square_has_fifteen_generators(pentagon):
    assert len(pentagon.power(2).gens) == 15


def test_power_is_multiplicative():
    rng = random.Random(14)
    for _ in range(5):
        I = random_ideal(rng, nvars=4, max_gens=6, max_deg=2, max_exp=2)
        for s in range(1, 5):
            for t in range(1, 5):
                assert I.power(s + t) == I.power(s).product(I.power(t))


def test_colon_examples():
    ring = ring_of(4)
    b = ring.parse_monomial("b")
    assert ideal_of(ring, "a*b", "b*c").colon(b) == ideal_of(ring, "a", "c")
    assert ideal_of(ring, "a*b").colon(ring.parse_monomial("c")) == ideal_of(ring, "a*b")
    assert ideal_of(ring, "a^2*b").colon(ring.parse_monomial("a^3")) == ideal_of(ring, "b")


def test_colon_chains_and_membership():
    rng = random.Random(15)
    for _ in range(30):
        I = random_ideal(rng, nvars=4)
        ring = I.ring
        m = random_monomial(rng, ring, max_deg=2)
        mp = random_monomial(rng, ring, max_deg=2)
        assert I.colon(m * mp) == I.colon(m).colon(mp)
        # (I : m) holds exactly the multipliers into I
        probe = random_monomial(rng, ring, max_deg=3)
        assert I.colon(m).contains(probe) == I.contains(probe * m)


def test_intersect_examples_and_laws():
    ring = ring_of(4)
    assert ideal_of(ring, "a").intersect(ideal_of(ring, "b")) == ideal_of(ring, "a*b")
    assert ideal_of(ring, "a*b", "c").intersect(ideal_of(ring, "b")) == ideal_of(ring, "a*b", "b*c")
    rng = random.Random(16)
    for _ in range(20):
        A = random_ideal(rng, nvars=4)
        B = random_ideal(rng, nvars=4)
        C = random_ideal(rng, nvars=4)
        assert A.intersect(A) == A
        assert A.intersect(B) == B.intersect(A)
        assert A.intersect(B).intersect(C) == A.intersect(B.intersect(C))


def test_degree_in_examples():
    ring = ring_of(5)
    assert ring.parse_monomial("a^2*b").degree_in("a") == 2
    assert ideal_of(ring, "a^2*b", "b*c^2").degree_in("b") == 1
    assert ideal_of(ring, "a*b").degree_in("e") == 0
    assert MonomialIdeal(ring, []).degree_in("a") == 0


def test_zero_and_unit_ideals():
    ring = ring_of(3)
    zero = MonomialIdeal(ring, [])
    unit = MonomialIdeal(ring, [ring.one(), ring.parse_monomial("a*b")])
    assert zero.is_zero() and not zero.is_unit()
    assert unit.is_unit() and not unit.is_proper()
    assert unit.gens == {ring.one()}
    assert not zero.contains(ring.parse_monomial("a"))
    assert unit.contains(ring.one())
    assert zero.plus(unit) == unit
    assert zero.intersect(unit) == zero
    assert str(zero) == "(0)"


def test_ring_mismatch_raises():
    a = ring_of(3)
    b = ring_of(4)
    with pytest.raises(RingMismatchError):
        same_ring(ideal_of(a, "a*b"), ideal_of(b, "a*b"))
    with pytest.raises(RingMismatchError):
        ideal_of(a, "a*b").intersect(ideal_of(b, "a*b"))


def test_polynomial_arithmetic_is_exact():
    ring = ring_of(3)
    a = Polynomial.from_monomial(ring.parse_monomial("a"))
    b = Polynomial.from_monomial(ring.parse_monomial("b"))
    third = a.scale(1, ring.one()).scale(1, ring.one())
    assert (a + b) * (a - b) == a * a - b * b
    # coefficients cancel exactly, no residue terms
    assert ((a + b) - a - b).is_zero()
    scaled = a.scale(3).scale(1, ring.parse_monomial("b^2"))
    assert scaled.coefficient(ring.parse_monomial("a*b^2")) == 3
    assert len(third) == 1


def test_polynomial_leading_data():
    ring = ring_of(3)
    order = TermOrder.lex(ring)
    f = LinearSum(ring, ["b", "a", "c"]).to_polynomial()
    assert f.leading_monomial(order) == ring.parse_monomial("a")
    assert f.monic(order) == f
    g = f.scale(-2)
    assert g.leading_coefficient(order) == -2
    assert g.monic(order) == f
    assert g.tail(order) == LinearSum(ring, ["b", "c"]).to_polynomial().scale(-2)


def test_linear_sum_structure():
    ring = ring_of(5)
    f = LinearSum(ring, ["d", "a", "c"])
    assert f.head == ring.index("d")
    assert f.tail == (ring.index("a"), ring.index("c"))
    assert str(f) == "d + a + c"
    assert len(f) == 3
    with pytest.raises(ValueError):
        LinearSum(ring, ["a", "a"])
    with pytest.raises(ValueError):
        LinearSum(ring, [])


def test_sequence_term_order_intro_chain():
    ring = RingContext(list("abcdefg"))
    forms = [LinearSum(ring, ["g", "f"]), LinearSum(ring, ["d", "a"]),
             LinearSum(ring, ["a", "c", "e"])]
    order = sequence_term_order(ring, forms)
    assert [ring.names[i] for i in order.priority] == list("gdafceb")
    for f in forms:
        for v in f.tail:
            assert order.ranks_above(f.head, v)


def test_sequence_term_order_rejects_cycles():
    ring = ring_of(3)
    forms = [LinearSum(ring, ["a", "b"]), LinearSum(ring, ["b", "a"])]
    with pytest.raises(PreconditionError):
        sequence_term_order(ring, forms)


def test_ideal_equality_ignores_generator_presentation():
    ring = ring_of(3)
    assert ideal_of(ring, "a*b", "a*b*c") == ideal_of(ring, "a*b")
    assert hash(ideal_of(ring, "a*b", "a*b*c")) == hash(ideal_of(ring, "a*b"))
    assert ideal_of(ring, "a").plus(ideal_of(ring, "b")) == ideal_of(ring, "a", "b")
