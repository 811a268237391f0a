"""Brute-force ground truth: decompositions, associated primes, Tor, depth, Hilbert series.

Everything here is exact.  Rank computations run over the rationals with
Fraction arithmetic, Hilbert numerators are integer polynomials, and the only
use of numpy is as a bulk engine for exponent-vector arithmetic (lcm tables,
divisibility filtering); no floats enter any result.

Three independent Tor engines are provided:

* taylor_tor        - the full subset complex, grouped by multidegree,
                      for ideals with few generators;
* taylor_tor_ungrouped - the same complex with no grouping at all, as a
                      cross-check on the grouping logic;
* lattice_tor       - multidegree-by-multidegree homology through the lcm
                      lattice, where each graded piece is reduced to the
                      nerve of its cover by maximal proper divisors.  This
                      scales to the generator counts that ideal squares
                      produce.

The engines agree on their common domain (asserted by the test suite), and
depth() dispatches between them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import (
    LinearSum,
    Monomial,
    MonomialIdeal,
    Polynomial,
    RingContext,
    TermOrder,
    same_ring,
    sequence_term_order,
)
from .errors import PreconditionError, ResourceLimitError
from .groebner import DEFAULT_TERM_BUDGET, initial_ideal


# ---------------------------------------------------------------------------
# exact linear algebra


def exact_rank(rows) -> int:
    """Rank over QQ of a matrix given as an iterable of {column: value} rows."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        while r:
            c = min(r)
            if c in pivots:
                factor = r.pop(c)
                for pc, pv in pivots[c].items():
                    if pc == c:
                        continue
                    nv = r.get(pc, Fraction(0)) - factor * pv
                    if nv:
                        r[pc] = nv
                    else:
                        r.pop(pc, None)
            else:
                inv = 1 / r[c]
                pivots[c] = {pc: pv * inv for pc, pv in r.items()}
                rank += 1
                break
    return rank


# ---------------------------------------------------------------------------
# numpy helpers for bulk exponent-vector work


def _exps_array(ideal: MonomialIdeal) -> np.ndarray:
    rows = [m.exps for m in ideal.sorted_gens()]
    n = ideal.ring.nvars
    if not rows:
        return np.zeros((0, n), dtype=np.int16)
    return np.array(rows, dtype=np.int16)


def _ideal_from_array(ring: RingContext, arr: np.ndarray) -> MonomialIdeal:
    return MonomialIdeal(ring, [ring.monomial([int(e) for e in row]) for row in arr])


def _np_minimalize(arr: np.ndarray) -> np.ndarray:
    """Minimal rows under componentwise <= (divisibility of monomials).

    Distinct rows of equal total degree are incomparable, so after sorting by
    degree each whole level is filtered against the kept set in one broadcast.
    """
    if arr.shape[0] <= 1:
        return arr
    arr = np.unique(arr, axis=0)
    deg = arr.sum(axis=1, dtype=np.int64)
    order = np.argsort(deg, kind="stable")
    arr = arr[order]
    deg = deg[order]
    boundaries = np.searchsorted(deg, np.unique(deg), side="left").tolist() + [arr.shape[0]]
    kept = np.empty_like(arr)
    nkept = 0
    for start, stop in zip(boundaries, boundaries[1:]):
        level = arr[start:stop]
        if nkept:
            mask = np.ones(level.shape[0], dtype=bool)
            block = max(1, 4_000_000 // nkept)
            for s in range(0, level.shape[0], block):
                chunk = level[s : s + block]
                dominated = (chunk[:, None, :] >= kept[None, :nkept, :]).all(axis=2).any(axis=1)
                mask[s : s + chunk.shape[0]] = ~dominated
            level = level[mask]
        kept[nkept : nkept + level.shape[0]] = level
        nkept += level.shape[0]
    return kept[:nkept].copy()


def _np_intersect(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise componentwise max of rows, minimalized."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        return a[:0]
    pieces = []
    block = max(1, 2_000_000 // max(1, b.shape[0]))
    for start in range(0, a.shape[0], block):
        chunk = a[start : start + block]
        pieces.append(
            np.maximum(chunk[:, None, :], b[None, :, :]).reshape(-1, a.shape[1])
        )
    return _np_minimalize(np.vstack(pieces))


def _np_colon_var(arr: np.ndarray, var: int) -> np.ndarray:
    out = arr.copy()
    out[:, var] = np.maximum(out[:, var] - 1, 0)
    return _np_minimalize(out)


def _np_contains_rows(ideal_arr: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """For each row, whether some ideal generator divides it."""
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if ideal_arr.shape[0] == 0:
        return np.zeros(rows.shape[0], dtype=bool)
    out = np.zeros(rows.shape[0], dtype=bool)
    block = max(1, 2_000_000 // max(1, ideal_arr.shape[0]))
    for start in range(0, rows.shape[0], block):
        chunk = rows[start : start + block]
        out[start : start + chunk.shape[0]] = (
            (chunk[:, None, :] >= ideal_arr[None, :, :]).all(axis=2).any(axis=1)
        )
    return out


# ---------------------------------------------------------------------------
# monomial primes


@dataclass(frozen=True)
class MonomialPrime:
    """A prime generated by variables, stored as a support set of indices."""

    ring: RingContext
    support: frozenset[int]

    def names(self) -> tuple[str, ...]:
        return tuple(self.ring.names[i] for i in sorted(self.support))

    def contains_support(self, support: frozenset[int]) -> bool:
        return support <= self.support

    def sort_key(self):
        return (len(self.support), tuple(sorted(self.support)))

    def __str__(self) -> str:
        return "(" + ", ".join(self.names()) + ")"


# ---------------------------------------------------------------------------
# irreducible decomposition and associated primes


def irreducible_decomposition(I: MonomialIdeal) -> list[MonomialIdeal]:
    """Irredundant irreducible components via coprime-factor splitting.

    Splitting a generator m = u*v with coprime u, v turns (J, m) into
    (J, u) cap (J, v); terminal states have pure-power generators only.
    The irredundant components are the containment-minimal ones.
    """
    if I.is_unit() or I.is_zero():
        raise PreconditionError("decomposition needs a nonzero proper ideal")
    ring = I.ring
    components: set[frozenset[Monomial]] = set()
    seen: set[frozenset[Monomial]] = set()
    stack = [I.gens]
    while stack:
        gens = stack.pop()
        split = None
        for g in sorted(gens, key=lambda m: (m.degree(), m.exps)):
            supp = sorted(g.support())
            if len(supp) >= 2:
                x = supp[0]
                e = g.exps[x]
                power = ring.variable(x) ** e
                split = (g, power, g / power)
                break
        if split is None:
            components.add(gens)
            continue
        g, left, right = split
        rest = [m for m in gens if m != g]
        for piece in (left, right):
            child = MonomialIdeal(ring, rest + [piece]).gens
            if child not in seen:
                seen.add(child)
                stack.append(child)

    ideals = [MonomialIdeal(ring, gens) for gens in components]

    def _contains(big: MonomialIdeal, small: MonomialIdeal) -> bool:
        return all(big.contains(g) for g in small.gens)

    kept = [
        q
        for q in ideals
        if not any(other is not q and _contains(q, other) for other in ideals)
    ]
    kept.sort(key=lambda q: sorted((m.degree(), m.exps) for m in q.gens))
    return kept


def _restrict_to_support(I: MonomialIdeal, keep: frozenset[int]) -> MonomialIdeal:
    """Set every variable outside `keep` to 1 in the generators."""
    ring = I.ring
    gens = []
    for g in I.gens:
        gens.append(ring.monomial([e if i in keep else 0 for i, e in enumerate(g.exps)]))
    return MonomialIdeal(ring, gens)


def _socle_nonzero(I: MonomialIdeal, variables: frozenset[int]) -> bool:
    """Whether cap_x (I : x) over the given variables strictly exceeds I."""
    arr = _exps_array(I)
    inter: np.ndarray | None = None
    for x in sorted(variables):
        colon = _np_colon_var(arr, x)
        inter = colon if inter is None else _np_intersect(inter, colon)
    if inter is None:
        return False
    return not _np_contains_rows(arr, inter).all()


def maximal_ideal_is_associated(I: MonomialIdeal) -> bool:
    """Whether the maximal ideal is an associated prime, i.e. depth R/I = 0."""
    if I.is_zero() or I.is_unit():
        raise PreconditionError("needs a nonzero proper ideal")
    return _socle_nonzero(I, frozenset(range(I.ring.nvars)))


def associated_primes(I: MonomialIdeal, method: str = "auto") -> list[MonomialPrime]:
    """Associated primes of R/I, sorted by (size, support).

    method="decomposition" reads them off as supports of the irredundant
    irreducible components.  method="localization" tests, for each candidate
    support S meeting every generator, whether the maximal ideal of the
    restriction to S (all other variables set to 1) has a nonzero socle.
    The two agree; "auto" picks by generator count.
    """
    if I.is_zero() or I.is_unit():
        raise PreconditionError("associated primes need a nonzero proper ideal")
    if method == "auto":
        method = "decomposition" if len(I.gens) <= 14 else "localization"
    if method == "decomposition":
        primes = {
            MonomialPrime(I.ring, frozenset().union(*(g.support() for g in q.gens)))
            for q in irreducible_decomposition(I)
        }
        return sorted(primes, key=MonomialPrime.sort_key)
    if method != "localization":
        raise ValueError(f"unknown method {method!r}")
    n = I.ring.nvars
    if n > 16:
        raise ResourceLimitError("localization route is limited to 16 variables")
    supports = [g.support() for g in I.gens]
    primes = []
    for bits in range(1, 1 << n):
        S = frozenset(i for i in range(n) if bits >> i & 1)
        if not all(s & S for s in supports):
            continue
        restricted = _restrict_to_support(I, S)
        if restricted.is_unit():
            continue
        if _socle_nonzero(restricted, S):
            primes.append(MonomialPrime(I.ring, S))
    return sorted(primes, key=MonomialPrime.sort_key)


def is_zerodivisor_linear(
    I: MonomialIdeal, f: LinearSum, want_witness: bool = True
) -> tuple[bool, MonomialPrime | None]:
    """Whether a linear sum is a zerodivisor on R/I.

    True iff some associated prime's support contains supp(f); computed as
    cap_{x in supp f} (I : x) reaching outside I, which exhibits a monomial
    u with f*u in I, u not in I.  The witness prime is reported when the
    associated primes are cheap to enumerate.
    """
    same_ring(I, f)
    if I.is_zero() or I.is_unit():
        return (False, None)
    if all(I.degree_in(x) == 0 for x in f.variables):
        return (False, None)
    big = len(I.gens) > 60
    if big:
        arr = _exps_array(I)
        inter = None
        for x in f.variables:
            colon = _np_colon_var(arr, x)
            inter = colon if inter is None else _np_intersect(inter, colon)
        zerodiv = not _np_contains_rows(arr, inter).all()
    else:
        inter = None
        for x in f.variables:
            colon = I.colon(I.ring.variable(x))
            inter = colon if inter is None else inter.intersect(colon)
        zerodiv = not I.contains_ideal(inter)
    if not zerodiv:
        return (False, None)
    if want_witness and len(I.gens) <= 24:
        for prime in associated_primes(I):
            if prime.contains_support(f.support()):
                return (True, prime)
    return (True, None)


# ---------------------------------------------------------------------------
# Tor profiles


@dataclass
class TorProfile:
    """Betti numbers of R/I over R, with projective dimension and depth."""

    betti: dict[int, int]
    pd: int
    depth: int


def _betti_from_masks(lcms: dict[int, bytes], p: int) -> dict[int, int]:
    """Homology of the k-tensored subset complex given each subset's lcm.

    lcms maps subset bitmasks to a hashable multidegree; the family must be
    closed under taking subsets.  Differential entries are +-1 exactly where
    dropping an index preserves the lcm, and the complex splits by
    multidegree, so ranks are computed within each group.
    """
    groups: dict[bytes, list[int]] = {}
    for mask, key in lcms.items():
        groups.setdefault(key, []).append(mask)
    betti: dict[int, int] = {}
    for key, members in groups.items():
        members.sort()
        index = {mask: i for i, mask in enumerate(members)}
        by_size: dict[int, list[int]] = {}
        for mask in members:
            by_size.setdefault(bin(mask).count("1"), []).append(mask)
        sizes = sorted(by_size)
        ranks: dict[int, int] = {}
        for s in sizes:
            if s == 0:
                continue
            rows = []
            for mask in by_size[s]:
                row = {}
                sign = 1
                for j in range(p):
                    bit = 1 << j
                    if not mask & bit:
                        continue
                    sub = mask ^ bit
                    if lcms.get(sub) == key:
                        row[index[sub]] = sign
                    sign = -sign
                rows.append(row)
            ranks[s] = exact_rank(rows)
        for s in sizes:
            h = len(by_size[s]) - ranks.get(s, 0) - ranks.get(s + 1, 0)
            if h:
                betti[s] = betti.get(s, 0) + h
    return betti


def _profile(betti: dict[int, int], nvars: int) -> TorProfile:
    pd = max((i for i, b in betti.items() if b), default=0)
    return TorProfile(betti=dict(sorted(betti.items())), pd=pd, depth=nvars - pd)


def _subset_lcm_table(exps: np.ndarray) -> np.ndarray:
    """lcm of every generator subset via doubling; row index is the bitmask."""
    p, n = exps.shape
    table = np.zeros((1 << p, n), dtype=np.int16)
    for k in range(p):
        lo, hi = 1 << k, 1 << (k + 1)
        table[lo:hi] = np.maximum(table[:lo], exps[k])
    return table


def taylor_tor(I: MonomialIdeal, max_generators: int = 16) -> TorProfile:
    """Tor of R/I from the full generator-subset complex (small ideals only)."""
    if I.is_unit():
        raise PreconditionError("Tor profile needs a proper ideal")
    p = len(I.gens)
    if p > max_generators:
        raise ResourceLimitError(f"{p} generators exceed the subset guard {max_generators}")
    if p == 0:
        return _profile({0: 1}, I.ring.nvars)
    exps = _exps_array(I)
    table = _subset_lcm_table(exps)
    lcms = {mask: table[mask].tobytes() for mask in range(1 << p)}
    return _profile(_betti_from_masks(lcms, p), I.ring.nvars)


def taylor_tor_ungrouped(I: MonomialIdeal, max_generators: int = 10) -> TorProfile:
    """Tor via raw boundary matrices over all subsets, with no multidegree split."""
    if I.is_unit():
        raise PreconditionError("Tor profile needs a proper ideal")
    p = len(I.gens)
    if p > max_generators:
        raise ResourceLimitError(f"{p} generators exceed the subset guard {max_generators}")
    if p == 0:
        return _profile({0: 1}, I.ring.nvars)
    exps = _exps_array(I)
    table = _subset_lcm_table(exps)
    masks_by_size: dict[int, list[int]] = {}
    for mask in range(1 << p):
        masks_by_size.setdefault(bin(mask).count("1"), []).append(mask)
    index = {mask: i for s in masks_by_size for i, mask in enumerate(masks_by_size[s])}
    ranks: dict[int, int] = {}
    for s in range(1, p + 1):
        rows = []
        for mask in masks_by_size.get(s, []):
            row = {}
            sign = 1
            for j in range(p):
                bit = 1 << j
                if not mask & bit:
                    continue
                sub = mask ^ bit
                if (table[sub] == table[mask]).all():
                    row[index[sub]] = sign
                sign = -sign
            rows.append(row)
        ranks[s] = exact_rank(rows)
    betti = {}
    for s in range(p + 1):
        h = len(masks_by_size.get(s, [])) - ranks.get(s, 0) - ranks.get(s + 1, 0)
        if h:
            betti[s] = h
    return _profile(betti, I.ring.nvars)


def _pack_weights(exps: np.ndarray) -> np.ndarray | None:
    """Per-column shifts packing exponent rows into single int64 keys.

    Valid for any vector whose columns stay within the generator maxima,
    which covers every lcm of generator subsets.  None when 62 bits are
    not enough.
    """
    maxes = exps.max(axis=0, initial=0)
    bits = [int(m).bit_length() for m in maxes]
    if sum(bits) > 62:
        return None
    weights = np.zeros(exps.shape[1], dtype=np.int64)
    shift = 0
    for j, b in enumerate(bits):
        weights[j] = 1 << shift
        shift += b
    return weights


def _lcm_lattice_generic(exps: np.ndarray, budget: int) -> np.ndarray:
    seen = {row.tobytes(): row for row in exps}
    frontier = np.unique(exps, axis=0)
    while frontier.shape[0]:
        fresh = {}
        block = max(1, 500_000 // max(1, exps.shape[0]))
        for start in range(0, frontier.shape[0], block):
            chunk = frontier[start : start + block]
            joins = np.maximum(chunk[:, None, :], exps[None, :, :]).reshape(-1, exps.shape[1])
            for row in np.unique(joins, axis=0):
                key = row.tobytes()
                if key not in seen:
                    seen[key] = row
                    fresh[key] = row
        if len(seen) > budget:
            raise ResourceLimitError(f"lcm lattice exceeded {budget} elements")
        frontier = (
            np.array(list(fresh.values()), dtype=exps.dtype)
            if fresh
            else np.zeros((0, exps.shape[1]), dtype=exps.dtype)
        )
    return np.unique(np.array(list(seen.values()), dtype=exps.dtype), axis=0)


def _lcm_lattice(exps: np.ndarray, budget: int) -> np.ndarray:
    """All distinct lcms of nonempty generator subsets, lex-sorted."""
    ncols = exps.shape[1]
    weights = _pack_weights(exps)
    if weights is None:
        return _lcm_lattice_generic(exps, budget)
    work = exps.astype(np.int64)
    lattice = np.unique(work, axis=0)
    keys = np.sort(lattice @ weights)
    frontier = lattice
    while frontier.shape[0]:
        block = max(1, 4_000_000 // max(1, work.shape[0]))
        rows_parts, keys_parts = [], []
        for start in range(0, frontier.shape[0], block):
            chunk = frontier[start : start + block]
            joins = np.maximum(chunk[:, None, :], work[None, :, :]).reshape(-1, ncols)
            uniq, first = np.unique(joins @ weights, return_index=True)
            rows_parts.append(joins[first])
            keys_parts.append(uniq)
        cand_keys = np.concatenate(keys_parts)
        cand_rows = np.concatenate(rows_parts)
        if len(keys_parts) > 1:
            cand_keys, first = np.unique(cand_keys, return_index=True)
            cand_rows = cand_rows[first]
        new = ~np.isin(cand_keys, keys, assume_unique=True)
        frontier = cand_rows[new]
        if frontier.shape[0]:
            keys = np.union1d(keys, cand_keys[new])
            lattice = np.concatenate([lattice, frontier])
            if lattice.shape[0] > budget:
                raise ResourceLimitError(f"lcm lattice exceeded {budget} elements")
    return np.unique(lattice, axis=0).astype(exps.dtype)


def _reduced_homology_of_faces(faces: set[int], nverts: int) -> dict[int, int]:
    """Reduced simplicial homology dims of a complex given as face bitmasks.

    Returns {degree: dim}, degree -1 included when the complex is {empty}.
    """
    by_size: dict[int, list[int]] = {}
    for mask in faces:
        by_size.setdefault(bin(mask).count("1"), []).append(mask)
    for members in by_size.values():
        members.sort()
    index = {mask: i for s in by_size for i, mask in enumerate(by_size[s])}
    ranks: dict[int, int] = {}
    top = max(by_size)
    for s in range(1, top + 1):
        rows = []
        for mask in by_size.get(s, []):
            row = {}
            sign = 1
            for j in range(nverts):
                bit = 1 << j
                if not mask & bit:
                    continue
                row[index[mask ^ bit]] = sign
                sign = -sign
            rows.append(row)
        ranks[s] = exact_rank(rows)
    homology = {}
    for s in by_size:
        h = len(by_size[s]) - ranks.get(s, 0) - ranks.get(s + 1, 0)
        if h:
            homology[s - 1] = h
    return homology


def _betti_at(exps: np.ndarray, alpha: np.ndarray, nerve_budget: int) -> dict[int, int]:
    """Graded Betti numbers of R/I in the single multidegree alpha.

    The subsets of generators whose lcm strictly divides alpha are covered by
    the full simplices on the maximal proper lattice divisors of alpha, so
    b_{i,alpha} is reduced nerve homology in degree i-2; a multidegree with
    no proper divisor is a minimal generator and contributes b_1 = 1.
    """
    dividing = (exps <= alpha).all(axis=1)
    gens_below = exps[dividing]
    if gens_below.shape[0] == 0 or (gens_below.max(axis=0) != alpha).any():
        return {}  # alpha is not an lcm of generators at all
    # candidate co-atoms: for each variable and each exponent threshold, the
    # join of the generators below alpha with bounded exponent there
    candidates: dict[bytes, np.ndarray] = {}
    for x in np.nonzero(alpha)[0]:
        col = gens_below[:, x]
        for e in range(int(alpha[x])):
            picked = gens_below[col <= e]
            if picked.shape[0] == 0:
                continue
            join = picked.max(axis=0)
            if (join == alpha).all():
                continue
            candidates.setdefault(join.tobytes(), join)
    if not candidates:
        return {1: 1}
    cands = list(candidates.values())
    coatoms = [
        c
        for c in cands
        if not any(other is not c and (c <= other).all() for other in cands)
    ]
    # cheap contractibility exits: a single cover simplex, or one generator
    # sitting inside every cover element
    if len(coatoms) == 1:
        return {}
    if len(coatoms) > 20:
        raise ResourceLimitError("nerve has too many vertices")
    memberships = []
    full = (1 << len(coatoms)) - 1
    for g in gens_below:
        a_g = 0
        for ci, beta in enumerate(coatoms):
            if (g <= beta).all():
                a_g |= 1 << ci
        if a_g == full:
            return {}
        memberships.append(a_g)
    if sum(1 << bin(m).count("1") for m in memberships) > nerve_budget:
        raise ResourceLimitError("nerve face enumeration over budget")
    faces: set[int] = {0}
    for a_g in memberships:
        bits = [j for j in range(len(coatoms)) if a_g >> j & 1]
        for r in range(1, len(bits) + 1):
            for combo in itertools.combinations(bits, r):
                mask = 0
                for j in combo:
                    mask |= 1 << j
                faces.add(mask)
    homology = _reduced_homology_of_faces(faces, len(coatoms))
    return {degree + 2: h for degree, h in homology.items()}


def lattice_betti_at(I: MonomialIdeal, alpha: Monomial, nerve_budget: int = 1 << 18) -> dict[int, int]:
    """Graded Betti numbers {i: b_{i,alpha}} of R/I at one multidegree."""
    same_ring(I, alpha)
    if I.is_unit():
        raise PreconditionError("Betti numbers need a proper ideal")
    if I.is_zero():
        return {}
    exps = _exps_array(I).astype(np.int16)
    return _betti_at(exps, np.array(alpha.exps, dtype=np.int16), nerve_budget)


def pd_witness(
    I: MonomialIdeal,
    target: int,
    lattice_budget: int = 400_000,
    nerve_budget: int = 1 << 20,
) -> Monomial | None:
    """A multidegree alpha with b_{i,alpha}(R/I) != 0 for some i >= target.

    Returns None when no such alpha exists, which proves pd(R/I) < target.
    Scans the lcm lattice in decreasing dividing-generator count and stops
    early: b_{i,alpha} != 0 forces at least i generators to divide alpha.
    """
    if I.is_unit():
        raise PreconditionError("needs a proper ideal")
    if I.is_zero() or target <= 0:
        return None
    exps = _exps_array(I).astype(np.int16)
    lattice = _lcm_lattice(exps, lattice_budget)
    counts = np.empty(lattice.shape[0], dtype=np.int64)
    block = 2048
    for start in range(0, lattice.shape[0], block):
        chunk = lattice[start : start + block]
        counts[start : start + chunk.shape[0]] = (
            (exps[None, :, :] <= chunk[:, None, :]).all(axis=2).sum(axis=1)
        )
    for idx in np.argsort(-counts, kind="stable"):
        if counts[idx] < target:
            return None
        hit = _betti_at(exps, lattice[idx], nerve_budget)
        if any(h and i >= target for i, h in hit.items()):
            return Monomial(I.ring, tuple(int(e) for e in lattice[idx]))
    return None


def lattice_tor(
    I: MonomialIdeal,
    lattice_budget: int = 400_000,
    nerve_budget: int = 1 << 18,
) -> TorProfile:
    """Tor of R/I computed multidegree by multidegree over the lcm lattice.

    Graded Betti numbers vanish outside the lcm lattice of the generators,
    so the profile is the sum of _betti_at over the lattice, plus b_0 = 1.
    """
    if I.is_unit():
        raise PreconditionError("Tor profile needs a proper ideal")
    p = len(I.gens)
    if p == 0:
        return _profile({0: 1}, I.ring.nvars)
    exps = _exps_array(I).astype(np.int16)
    lattice = _lcm_lattice(exps, lattice_budget)
    betti: dict[int, int] = {0: 1}
    for alpha in lattice:
        for i, h in _betti_at(exps, alpha, nerve_budget).items():
            betti[i] = betti.get(i, 0) + h
    return _profile(betti, I.ring.nvars)


def _support_components(I: MonomialIdeal) -> list[list[Monomial]]:
    """Generators grouped by connectivity of shared support variables."""
    gens = I.sorted_gens()
    parent = list(range(len(gens)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_var: dict[int, int] = {}
    for idx, g in enumerate(gens):
        for v in g.support():
            if v in by_var:
                ri, rj = find(idx), find(by_var[v])
                parent[ri] = rj
            else:
                by_var[v] = idx
    groups: dict[int, list[Monomial]] = {}
    for idx, g in enumerate(gens):
        groups.setdefault(find(idx), []).append(g)
    return [groups[k] for k in sorted(groups)]


def depth(I: MonomialIdeal, engine: str = "auto") -> int:
    """depth(R/I) = nvars - pd(R/I), via the Auslander-Buchsbaum formula.

    The projective dimension is additive over support-disjoint groups of
    generators, so each group is profiled separately: small groups through
    the subset complex, large ones through the lcm lattice.
    """
    if I.is_unit():
        raise PreconditionError("depth needs a proper ideal")
    n = I.ring.nvars
    if I.is_zero():
        return n
    total_pd = 0
    for gens in _support_components(I):
        piece = MonomialIdeal(I.ring, gens)
        if engine == "taylor":
            total_pd += taylor_tor(piece).pd
        elif engine == "lattice":
            total_pd += lattice_tor(piece).pd
        elif engine == "auto":
            if len(piece.gens) <= 10:
                total_pd += taylor_tor(piece).pd
            else:
                total_pd += lattice_tor(piece).pd
        else:
            raise ValueError(f"unknown engine {engine!r}")
    return n - total_pd


# ---------------------------------------------------------------------------
# Hilbert series


def _poly_add(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _poly_shift(a: dict[int, int], d: int) -> dict[int, int]:
    return {k + d: v for k, v in a.items()}


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, u in a.items():
        for j, v in b.items():
            k = i + j
            nv = out.get(k, 0) + u * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def _poly_to_list(a: dict[int, int]) -> list[int]:
    if not a:
        return [0]
    top = max(a)
    return [a.get(i, 0) for i in range(top + 1)]


def _connected_blocks(gens: tuple[tuple[int, ...], ...]) -> list[tuple[tuple[int, ...], ...]]:
    n = len(gens)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_var: dict[int, int] = {}
    for idx, g in enumerate(gens):
        for v, e in enumerate(g):
            if not e:
                continue
            if v in by_var:
                parent[find(idx)] = find(by_var[v])
            else:
                by_var[v] = idx
    blocks: dict[int, list[tuple[int, ...]]] = {}
    for idx, g in enumerate(gens):
        blocks.setdefault(find(idx), []).append(g)
    return [tuple(sorted(b)) for _, b in sorted(blocks.items())]


@lru_cache(maxsize=100_000)
def _numerator(gens: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, int], ...]:
    """Numerator of the Hilbert series of R/<gens> over (1-t)^n, sparse form."""
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    blocks = _connected_blocks(gens)
    if len(blocks) > 1:
        acc = {0: 1}
        for block in blocks:
            acc = _poly_mul(acc, dict(_numerator(block)))
        return tuple(sorted(acc.items()))
    if len(gens) == 1:
        return ((0, 1), (sum(gens[0]), -1))
    # pivot on the most shared variable: K(I) = K(I + x) + t * K(I : x)
    counts: dict[int, int] = {}
    for g in gens:
        for v, e in enumerate(g):
            if e:
                counts[v] = counts.get(v, 0) + 1
    x = max(sorted(counts), key=lambda v: counts[v])
    plus = tuple(sorted({g for g in gens if not g[x]} | {tuple(1 if v == x else 0 for v in range(len(gens[0])))}))
    colon_raw = [tuple(e - 1 if v == x and e else e for v, e in enumerate(g)) for g in gens]
    colon = _minimalize_tuples(colon_raw)
    result = _poly_add(dict(_numerator(plus)), _poly_shift(dict(_numerator(colon)), 1))
    return tuple(sorted(result.items()))


def _minimalize_tuples(rows) -> tuple[tuple[int, ...], ...]:
    rows = sorted(set(rows), key=lambda r: (sum(r), r))
    kept: list[tuple[int, ...]] = []
    for r in rows:
        if not any(all(a <= b for a, b in zip(k, r)) for k in kept):
            kept.append(r)
    return tuple(sorted(kept))


def hilbert_numerator(I: MonomialIdeal) -> list[int]:
    """Coefficients of K(t) with Hilbert series of R/I equal to K(t)/(1-t)^n."""
    gens = tuple(sorted(g.exps for g in I.gens))
    return _poly_to_list(dict(_numerator(gens)))


def hilbert_numerator_by_subsets(I: MonomialIdeal, max_generators: int = 22) -> list[int]:
    """The same numerator by inclusion-exclusion over generator subsets."""
    p = len(I.gens)
    if p > max_generators:
        raise ResourceLimitError(f"{p} generators exceed the subset guard {max_generators}")
    if p == 0:
        return [1]
    exps = _exps_array(I).astype(np.int32)
    table = _subset_lcm_table(exps.astype(np.int16)).astype(np.int64)
    degrees = table.sum(axis=1)
    sizes = np.zeros(1 << p, dtype=np.int8)
    for k in range(p):
        lo, hi = 1 << k, 1 << (k + 1)
        sizes[lo:hi] = sizes[:lo] + 1
    signs = np.where(sizes % 2 == 0, 1, -1)
    top = int(degrees.max())
    coeffs = np.bincount(degrees, weights=signs, minlength=top + 1)
    out = [int(round(c)) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def is_regular_sequence(
    I: MonomialIdeal,
    forms: list[LinearSum],
    order: TermOrder | None = None,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> bool:
    """Hilbert-series test: the forms are a regular sequence on R/I exactly
    when the numerator of ini(I + forms) equals the numerator of I times
    (1-t)^s."""
    if not forms:
        return True
    vectors = []
    for f in forms:
        same_ring(I, f)
        vectors.append({v: 1 for v in f.variables})
    if exact_rank(vectors) != len(forms):
        raise PreconditionError("forms must be linearly independent")
    if order is None:
        order = sequence_term_order(I.ring, forms)
    ini = initial_ideal(list(I.gens) + [f.to_polynomial() for f in forms], order, term_budget)
    lhs = hilbert_numerator(ini)
    rhs = dict(enumerate(hilbert_numerator(I)))
    for _ in forms:
        rhs = _poly_mul(rhs, {0: 1, 1: -1})
    return lhs == _poly_to_list(rhs)


# ---------------------------------------------------------------------------
# polarization


@dataclass
class Polarization:
    """A square-free ideal in an extended ring, with the variable collapse map."""

    ideal: MonomialIdeal
    ring: RingContext
    var_map: tuple[int, ...]


def polarize(I: MonomialIdeal) -> Polarization:
    """Replace each power x^e by a product of e distinct copies of x."""
    ring = I.ring
    max_exp = [I.degree_in(i) for i in range(ring.nvars)]
    names: list[str] = []
    var_map: list[int] = []
    copy_index: dict[tuple[int, int], int] = {}
    used = set()

    def fresh(base: str) -> str:
        candidate = base
        while candidate in used:
            candidate += "_"
        used.add(candidate)
        return candidate

    for i, name in enumerate(ring.names):
        copies = max(1, max_exp[i])
        for k in range(copies):
            label = fresh(name if k == 0 else f"{name}_{k + 1}")
            copy_index[(i, k)] = len(names)
            names.append(label)
            var_map.append(i)
    new_ring = RingContext(names)
    gens = []
    for g in I.gens:
        vec = [0] * new_ring.nvars
        for i, e in enumerate(g.exps):
            for k in range(e):
                vec[copy_index[(i, k)]] = 1
        gens.append(new_ring.monomial(vec))
    return Polarization(MonomialIdeal(new_ring, gens), new_ring, tuple(var_map))


def depolarize_prime(prime: MonomialPrime, polarization: Polarization, ring: RingContext) -> MonomialPrime:
    """Collapse a prime of the polarized ring back to the original variables."""
    support = frozenset(polarization.var_map[i] for i in prime.support)
    return MonomialPrime(ring, support)
