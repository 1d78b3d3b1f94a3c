"""Subfield lattices and the tower invariants rho, lambda, aleph and k*.

Lattices are ingested data, not computed: nodes carry degree, signature and
absolute discriminant, and edges are containments. All comparisons are exact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .field import FieldDataError


class LatticeError(FieldDataError):
    """Subfield lattice data violates a structural invariant."""


@dataclass(frozen=True)
class SubfieldNode:
    label: str
    degree: int
    signature: tuple[int, int]
    disc: int  # absolute discriminant D

    @property
    def unit_rank(self) -> int:
        return self.signature[0] + self.signature[1] - 1


@dataclass
class ExactReport:
    """Outcome of an exact (rational or integer) check."""

    name: str
    holds: bool
    details: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "verified" if self.holds else "failed"


@dataclass(eq=False)
class SubfieldLattice:
    nodes: dict  # label -> SubfieldNode
    edges: set  # (smaller, larger) containments
    top: str
    bottom: str = "Q"
    _above: dict = dc_field(default=None, repr=False)
    _lam: dict = dc_field(default=None, repr=False)

    def __post_init__(self):
        self.edges = {tuple(e) for e in self.edges}
        problems = self._problems()
        if problems:
            raise LatticeError(f"{self.top}: " + "; ".join(problems))

    @classmethod
    def build(cls, nodes: Iterable[SubfieldNode], edges: Iterable[Sequence[str]], top: str, bottom: str = "Q"):
        return cls({n.label: n for n in nodes}, set(map(tuple, edges)), top, bottom)

    def _problems(self) -> list[str]:
        out = []
        if self.bottom not in self.nodes:
            return [f"lattice is missing the bottom node {self.bottom!r}"]
        if self.top not in self.nodes:
            return [f"lattice is missing the top node {self.top!r}"]
        q = self.nodes[self.bottom]
        if q.degree != 1 or q.disc != 1:
            out.append("bottom node is not the rationals (degree 1, D = 1)")
        d = self.nodes[self.top].degree
        for n in self.nodes.values():
            if n.disc < 1:
                out.append(f"{n.label}: discriminant {n.disc} < 1")
            if d % n.degree:
                out.append(f"{n.label}: degree {n.degree} does not divide {d}")
            if n.signature[0] + 2 * n.signature[1] != n.degree:
                out.append(f"{n.label}: signature {n.signature} inconsistent with degree {n.degree}")
        for a, b in self.edges:
            if a not in self.nodes or b not in self.nodes:
                out.append(f"edge {a} -> {b} names an unknown node")
                continue
            if a == b:
                out.append(f"self-loop at {a}")
                continue
            na, nb = self.nodes[a], self.nodes[b]
            if nb.degree % na.degree or nb.degree == na.degree:
                out.append(f"edge {a} -> {b}: degree {na.degree} is not a proper divisor of {nb.degree}")
                continue
            rel = nb.degree // na.degree
            if nb.signature[0] > rel * na.signature[0]:
                out.append(f"edge {a} -> {b}: {nb.signature[0]} real places over {na.signature[0]} of degree {rel}")
            if nb.disc % (na.disc**rel):
                out.append(f"edge {a} -> {b}: D_{a}^{rel} does not divide D_{b}")
        if out:
            return out
        above = self._closure()
        if above is None:
            return ["containment graph has a cycle"]
        for lbl in self.nodes:
            if lbl != self.bottom and lbl not in above[self.bottom]:
                out.append(f"{lbl} is not above {self.bottom}")
            if lbl != self.top and self.top not in above[lbl]:
                out.append(f"{lbl} is not below {self.top}")
        return out

    def _closure(self):
        """label -> set of labels strictly above it; None if cyclic."""
        succ = {lbl: set() for lbl in self.nodes}
        for a, b in self.edges:
            succ[a].add(b)
        order = self._toposort(succ)
        if order is None:
            return None
        above = {lbl: set() for lbl in self.nodes}
        for lbl in reversed(order):
            for s in succ[lbl]:
                above[lbl] |= {s} | above[s]
        self._above = above
        return above

    @staticmethod
    def _toposort(succ):
        indeg = {v: 0 for v in succ}
        for v in succ:
            for s in succ[v]:
                indeg[s] += 1
        ready = sorted(v for v, k in indeg.items() if k == 0)
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for s in sorted(succ[v]):
                indeg[s] -= 1
                if indeg[s] == 0:
                    ready.append(s)
        return order if len(order) == len(succ) else None

    # ---------------------------------------------------------------------

    def node(self, label: str) -> SubfieldNode:
        try:
            return self.nodes[label]
        except KeyError:
            raise KeyError(f"no node {label!r} in the lattice of {self.top}") from None

    @property
    def degree(self) -> int:
        return self.nodes[self.top].degree

    def contains(self, small: str, big: str) -> bool:
        """small is a subfield of big (reflexive)."""
        self.node(small), self.node(big)
        return small == big or big in self._above[small]

    def strictly_above(self, label: str) -> set:
        self.node(label)
        return set(self._above[label])

    def rel_degree(self, small: str, big: str) -> int:
        if not self.contains(small, big):
            raise ValueError(f"{small} is not contained in {big}")
        return self.nodes[big].degree // self.nodes[small].degree

    def lam(self, label: str) -> int:
        """Length of the longest chain from the bottom node to ``label``."""
        self.node(label)
        if self._lam is None:
            below = {v: [u for u in self.nodes if v in self._above[u]] for v in self.nodes}
            memo: dict = {}

            def go(v):
                if v not in memo:
                    memo[v] = 0 if v == self.bottom else 1 + max(go(u) for u in below[v])
                return memo[v]

            for v in self.nodes:
                go(v)
            self._lam = memo
            lt = memo[self.top]
            if 2**lt > self.degree:
                raise LatticeError(f"{self.top}: tower length {lt} exceeds log2 of the degree {self.degree}")
        return self._lam[label]

    def aleph(self, label: str) -> Fraction:
        """(2 [k:k'])^(lambda(k') - lambda(k)), exactly."""
        base = 2 * self.rel_degree(label, self.top)
        return Fraction(base) ** (self.lam(label) - self.lam(self.top))

    def proper_nodes(self) -> list[SubfieldNode]:
        return [n for lbl, n in sorted(self.nodes.items()) if lbl != self.top]

    def maximal_chains(self) -> list[list[str]]:
        """Every saturated chain from bottom to top (covering relations only)."""
        cover = {
            v: sorted(w for w in self._above[v] if not any(w in self._above[u] for u in self._above[v]))
            for v in self.nodes
        }
        out = []

        def walk(path):
            v = path[-1]
            if v == self.top:
                out.append(list(path))
                return
            for w in cover[v]:
                walk(path + [w])

        walk([self.bottom])
        return out


# --------------------------------------------------------------------------
# invariants


def lambda_(lattice: SubfieldLattice, label: str) -> int:
    return lattice.lam(label)


def rho(lattice: SubfieldLattice) -> int:
    """Largest unit rank of a proper subfield."""
    if lattice.bottom not in lattice.nodes:
        raise LatticeError("lattice is missing Q")
    return max(n.unit_rank for n in lattice.proper_nodes())


def is_cm(lattice: SubfieldLattice) -> bool:
    """Rank criterion: rho(k) = r(k)."""
    return rho(lattice) == lattice.nodes[lattice.top].unit_rank


def aleph(lattice: SubfieldLattice, label: str) -> Fraction:
    return lattice.aleph(label)


def check_aleph_monotonic(lattice: SubfieldLattice, tower: Sequence[str]) -> ExactReport:
    """0 < aleph(k_0) < aleph(k_1) < ... < aleph(k_N) = 1 along a tower from Q to k."""
    tower = list(tower)
    if len(tower) < 2 or tower[0] != lattice.bottom or tower[-1] != lattice.top:
        raise ValueError("tower must run from the bottom node to the top node")
    for a, b in zip(tower, tower[1:]):
        if a == b or not lattice.contains(a, b):
            raise ValueError(f"{a} -> {b} is not a strict containment")
    vals = [lattice.aleph(x) for x in tower]
    holds = vals[0] > 0 and vals[-1] == 1 and all(x < y for x, y in zip(vals, vals[1:]))
    return ExactReport("aleph-monotonic", holds, {"tower": tower, "aleph": [str(v) for v in vals]})


def lemma72_sides(lattice: SubfieldLattice, kprime: str, kprime_alpha: str) -> tuple[Fraction, Fraction]:
    if kprime == kprime_alpha or not lattice.contains(kprime, kprime_alpha):
        raise ValueError(f"{kprime} is not strictly contained in {kprime_alpha}")
    n = lattice.rel_degree(kprime, lattice.top)
    e = lattice.lam(kprime) - lattice.lam(lattice.top)
    lhs = lattice.aleph(kprime_alpha) - lattice.aleph(kprime) * n
    rhs = Fraction(2) ** e * Fraction(n) ** (e + 1)
    return lhs, rhs


def check_lemma72(lattice: SubfieldLattice, kprime: str, kprime_alpha: str) -> ExactReport:
    """aleph(k'(a)) - aleph(k') [k:k'] >= 2^(l'-l) [k:k']^(l'-l+1), exactly."""
    lhs, rhs = lemma72_sides(lattice, kprime, kprime_alpha)
    return ExactReport(
        "aleph-gap", lhs >= rhs, {"kprime": kprime, "kprime_alpha": kprime_alpha, "lhs": str(lhs), "rhs": str(rhs)}
    )


# --------------------------------------------------------------------------
# exact comparison of D' with D^(p/q)


def compare_power(a: int, b: int, e: Fraction) -> int:
    """Sign of a - b^e for integers a, b >= 1 and rational e >= 0, decided exactly.

    Equivalent to comparing a^q with b^p. Small cases are done directly; large
    exponents use bit-length brackets, then interval logarithms refined until
    they separate (equality is settled first by an exact perfect-power test).
    """
    if a < 1 or b < 1 or e < 0:
        raise ValueError("need a, b >= 1 and e >= 0")
    p, q = e.numerator, e.denominator
    if p == 0 or b == 1:
        return (a > 1) - (a < 1)
    if a == 1:
        return -1
    # a^q vs b^p with log2 a in [la-1, la) and log2 b in [lb-1, lb)
    la, lb = a.bit_length(), b.bit_length()
    if q * la <= p * (lb - 1):
        return -1
    if q * (la - 1) >= p * lb:
        return 1
    if q * la + p * lb < 20000:
        return _sign(a**q - b**p)
    if _equal_powers(a, b, p, q):
        return 0
    prec = 128
    # distinct integers of n bits differ in log by at least 2^-n
    cap = 2 * (q * la + p * lb) + 128
    while prec <= cap:
        saved, mpmath.iv.prec = mpmath.iv.prec, prec
        try:
            lhs = q * mpmath.iv.log(a)
            rhs = p * mpmath.iv.log(b)
        finally:
            mpmath.iv.prec = saved
        if lhs.b < rhs.a:
            return -1
        if lhs.a > rhs.b:
            return 1
        prec *= 2
    return _sign(a**q - b**p)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _iroot(n: int, k: int) -> int:
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _equal_powers(a: int, b: int, p: int, q: int) -> bool:
    # gcd(p, q) = 1, so a^q = b^p forces a = c^p, b = c^q
    c = _iroot(a, p)
    if c**p != a:
        return False
    if c == 1:
        return b == 1
    if q * (c.bit_length() - 1) > b.bit_length():
        return False
    return c**q == b


def below_threshold(lattice: SubfieldLattice, label: str) -> bool:
    """D_{k'} < D_k^{aleph(k')}."""
    d_top = lattice.nodes[lattice.top].disc
    return compare_power(lattice.node(label).disc, d_top, lattice.aleph(label)) < 0


def maximal_kstar(lattice: SubfieldLattice) -> SubfieldNode:
    """A proper node below the threshold none of whose strict supersets is.

    Among candidates the largest degree wins, then the label, so the choice
    is deterministic.
    """
    eligible = {n.label for n in lattice.proper_nodes() if below_threshold(lattice, n.label)}
    if lattice.bottom not in eligible:
        raise ArithmeticError("the rationals fail D_Q < D_k^aleph(Q); is D_k = 1?")
    maximal = [x for x in eligible if not (lattice.strictly_above(x) & eligible)]
    best = max(maximal, key=lambda x: (lattice.nodes[x].degree, x))
    return lattice.nodes[best]


def verify_kstar(lattice: SubfieldLattice, label: str) -> ExactReport:
    """Re-check the defining pair of inequalities for k* by scanning every node."""
    ok = label != lattice.top and below_threshold(lattice, label)
    bad = sorted(
        x for x in lattice.strictly_above(label) if x != lattice.top and below_threshold(lattice, x)
    )
    return ExactReport("kstar", ok and not bad, {"kstar": label, "violations": bad})


# --------------------------------------------------------------------------
# synthetic lattices


def random_lattice(rng: random.Random, max_log_degree: int = 5, max_nodes: int = 8) -> SubfieldLattice:
    """Random lattice with power-of-two degrees and consistent discriminants.

    Degrees are 2^j with j <= max_log_degree; containments respect degree
    divisibility; discriminants are prime powers with exponents chosen so
    that D_a^[b:a] divides D_b along every edge.
    """
    m = rng.randint(1, max_log_degree)
    d = 2**m
    nodes = [("Q", 1), ("K", d)]
    for i in range(rng.randint(0, max_nodes - 2)):
        if m > 1:
            nodes.append((f"F{i}", 2 ** rng.randint(1, m - 1)))
    deg = dict(nodes)
    labels = [n for n, _ in nodes]
    edges = set()
    for a in labels:
        for b in labels:
            if a != b and deg[a] < deg[b] and deg[b] % deg[a] == 0:
                if a == "Q" or b == "K" or rng.random() < 0.5:
                    edges.add((a, b))
    # take the transitive closure so containment is a partial order
    changed = True
    while changed:
        changed = False
        for a, b in list(edges):
            for c, e in list(edges):
                if b == c and (a, e) not in edges:
                    edges.add((a, e))
                    changed = True
    prime = rng.choice([2, 3, 5, 7])
    expo = {"Q": 0}
    for lbl in sorted(labels, key=lambda x: deg[x]):
        if lbl == "Q":
            continue
        need = max(deg[lbl] // deg[a] * expo[a] for a, b in edges if b == lbl)
        expo[lbl] = need + rng.randint(0 if need else 1, 3)
    # fields are totally real or totally complex; anything above a complex field is complex
    cplx = {"Q": False}
    for lbl in sorted(labels, key=lambda x: deg[x]):
        if lbl != "Q":
            cplx[lbl] = any(cplx[a] for a, b in edges if b == lbl) or rng.random() < 0.3
    out = []
    for lbl in labels:
        r2 = deg[lbl] // 2 if cplx[lbl] else 0
        out.append(SubfieldNode(lbl, deg[lbl], (deg[lbl] - 2 * r2, r2), prime ** expo[lbl]))
    return SubfieldLattice.build(out, edges, "K")
