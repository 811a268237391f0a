import sys, time

sys.path.insert(0, "/root/pkg/src")

from depthcert.core import RingContext, MonomialIdeal, LinearSum, TermOrder, sequence_term_order
from depthcert.groebner import initial_ideal, buchberger, as_polynomial
from depthcert.errors import PreconditionError
from depthcert import initreg as ir
from depthcert import oracle


def ideal(ring, *gens):
    return MonomialIdeal(ring, [ring.parse_monomial(g) for g in gens])


t0 = time.time()

# intro example: initially regular sequence of length 3
R = RingContext("a b c d e f g".split())
I = ideal(R, "a*b*c", "a*c*d", "a*e", "e*f", "f*g")
forms = [LinearSum(R, ["g", "f"]), LinearSum(R, ["d", "a"]), LinearSum(R, ["a", "c", "e"])]
order = sequence_term_order(R, forms)
assert [R.names[i] for i in order.priority] == list("gdafceb"), order.priority
rep = ir.is_initially_regular(I, forms)
assert rep.ok and all(s.regular for s in rep.steps)
print("intro initially regular (3 steps): ok", f"{time.time()-t0:.2f}s")

# displayed indexing variant runs and reports per-step ideals
rep2 = ir.is_initially_regular(I, forms, displayed_indexing=True)
print("displayed indexing ok:", rep2.ok)

# check_star failures
bad = ir.check_star(ideal(R, "a*a*b", "c*d"), LinearSum(R, ["a", "b"]))
assert isinstance(bad, ir.StarFailure) and bad.power_violations
bad2 = ir.check_star(ideal(R, "a*b", "a*c"), LinearSum(R, ["a", "b"]))
assert isinstance(bad2, ir.StarFailure) and [str(g) for g in bad2.cover_violations] == ["a*c"]
print("star failures ok")

# hat substitution
m = R.parse_monomial("a^2*b*c")
assert str(ir.hat_substitute(m, "a", "e")) == "b*c*e^2"
assert ir.hat_substitute(R.parse_monomial("b*c"), "a", "e") == R.parse_monomial("b*c")
print("hat ok")

# pentagon: closed form 1 + criterion (e)-violation + square counterexample
P = RingContext(["x1", "x2", "x3", "x4", "x5"])
pent = ideal(P, "x1*x2", "x2*x3", "x3*x4", "x4*x5", "x1*x5")
po = TermOrder.lex(P, front=["x1", "x2", "x5"])
cf = ir.closed_form_ini_trinomial(pent, "x1", "x2", "x5", po)
gb = initial_ideal([as_polynomial(g) for g in pent.gens] + [LinearSum(P, ["x1", "x2", "x5"]).to_polynomial()], po)
print("pentagon closed form:", [str(g) for g in cf.sorted_gens()])
assert cf == gb, (sorted(map(str, cf.gens)), sorted(map(str, gb.gens)))
assert cf.contains(P.parse_monomial("x3*x5^2")) and cf.contains(P.parse_monomial("x4*x5"))
chk = ir.criterion_trinomial(pent, "x1", "x2", "x5")
assert not chk.passed
ev = [v for v in chk.violations if v.clause == "e"]
assert ev and ev[0].witness == (P.index("x3"), P.index("x4")), chk.violations
print("pentagon criterion: (e) witness (x3,x4) ok")

sq = initial_ideal(
    [as_polynomial(g) for g in pent.power(2).gens] + [LinearSum(P, ["x1", "x2", "x5"]).to_polynomial()], po
)
guess = cf.power(2).plus([P.variable(P.index("x1"))])
w1 = P.parse_monomial("x3*x4*x5^2")
w2 = P.parse_monomial("x3*x4*x5^3")
assert sq.contains(w1) and not guess.contains(w1)
assert sq.contains(w2) and guess.contains(w2)
try:
    ir.closed_form_ini_square_trinomial(pent, "x1", "x2", "x5", po)
    raise SystemExit("square closed form should refuse the pentagon")
except PreconditionError as e:
    print("square closed form refuses pentagon:", e)

# graph36: (f,e) passes, (a,b) fails with witness (c,d)
G = RingContext(list("abcdef"))
g36 = ideal(G, "a*b", "b*c", "b*d", "c*d", "d*e", "e*f")
ok = ir.criterion_binomial(g36, "f", "e")
assert ok.passed, ok
no = ir.criterion_binomial(g36, "a", "b")
assert not no.passed and no.obstruction == (G.index("c"), G.index("d")), no
print("graph36 criterion verdicts ok")

# non-square-free: (a,b) fails with the repeated witness (c,c)
N = RingContext(list("abcdef"))
nsf = ideal(N, "a^2*b", "b*c^2", "b*d^2", "c*d", "d*e", "e*f")
nb = ir.criterion_binomial(nsf, "a", "b")
assert not nb.passed
assert isinstance(nb.star, ir.StarFailure)  # a^2*b has a squared head
print("nonsqfree (a,b):", nb.obstruction, [str(v) for v, _ in nb.star.power_violations])

# variant without the square on b0's generator, criterion obstruction (c,c)
nsf2 = ideal(N, "a*b", "b*c^2", "b*d^2", "c*d", "d*e", "e*f")
nb2 = ir.criterion_binomial(nsf2, "a", "b")
assert not nb2.passed and nb2.obstruction == (N.index("c"), N.index("c")), nb2
print("nonsqfree variant witness (c,c) ok")

# colon identity: ((a*b) : a+b) = (a*b) at t=1, and t=4 is refused
C = RingContext(list("ab"))
ab = ideal(C, "a*b")
col = ir.colon_linear_binomial(ab, 1, "a", "b")
assert col == ab, [str(g) for g in col.gens]
try:
    ir.colon_linear_binomial(ab, 4, "a", "b")
    raise SystemExit("t=4 should be refused")
except PreconditionError:
    pass
print("colon identity ok")

# path-6: (a+b, g+f) binomial family passes
P6 = RingContext(list("abcdefg"))
path6 = ideal(P6, "a*b", "b*c", "c*d", "d*e", "e*f", "f*g")
fam = ir.criterion_binomial_family(path6, [("a", "b"), ("g", "f")])
assert fam.passed, fam.failures
print("path-6 family ok")

# 13-variable tree: find_sequences reaches 4 and re-verifies
t1 = time.time()
T = RingContext([f"x{i}" for i in range(1, 14)])
tree = ideal(
    T, "x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x6", "x4*x7",
    "x7*x8", "x8*x9", "x9*x10", "x10*x11", "x11*x12", "x12*x13",
)
cert = ir.find_sequences(tree)
print(f"13-var certificate ({time.time()-t1:.2f}s):", [str(f) for f in cert.forms],
      cert.kinds, cert.verdict, cert.depth_lower_bound)
assert cert.depth_lower_bound >= 4

# Ex 3.8 tree: certificate of size 3
t1 = time.time()
E = RingContext([f"x{i}" for i in range(1, 9)])
ex38 = ideal(E, "x1*x2", "x2*x3", "x3*x4", "x4*x5", "x4*x6", "x6*x7", "x7*x8")
cert38 = ir.find_sequences(ex38)
print(f"ex38 certificate ({time.time()-t1:.2f}s):", [str(f) for f in cert38.forms],
      cert38.verdict, cert38.depth_lower_bound)
assert cert38.depth_lower_bound >= 3

# triangle: nothing passes
TR = RingContext(list("xyz"))
tri = ideal(TR, "x*y", "x*z", "y*z")
cert_tri = ir.find_sequences(tri)
assert cert_tri.depth_lower_bound == 0 and not cert_tri.forms
print("triangle certificate empty ok")

# star graph: 20-generator initial ideal, exact list
t1 = time.time()
S = RingContext(["b0", "b1", "b2", "b3", "b4", "b5", "x1", "x2", "x3", "x4"])
star = ideal(S, "b0*b1", "b0*b2", "b0*b3", "b0*b4", "b0*b5",
             "b1*x1", "b2*x2", "b3*x3", "b4*x4")
so = TermOrder.lex(S)
f = LinearSum(S, ["b0", "b1", "b2", "b3", "b4", "b5"])
ini = initial_ideal([as_polynomial(g) for g in star.gens] + [f.to_polynomial()], so)
got = sorted(str(g) for g in ini.gens)
expect = sorted([
    "b0", "b1*x1", "b2*x2", "b3*x3", "b4*x4",
    "b1^2", "b1*b2", "b1*b3", "b1*b4", "b1*b5",
    "b2^2*x1", "b2*b3*x1", "b2*b4*x1", "b2*b5*x1",
    "b3^2*x1*x2", "b3*b4*x1*x2", "b3*b5*x1*x2",
    "b4^2*x1*x2*x3", "b4*b5*x1*x2*x3",
    "b5^2*x1*x2*x3*x4",
])
assert got == expect, (got, expect)
print(f"star graph 20-generator list ok ({time.time()-t1:.2f}s)")

print(f"TOTAL {time.time()-t0:.2f}s")
