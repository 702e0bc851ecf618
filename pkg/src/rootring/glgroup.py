"""The group of quasi-invertible elements and its elementary subgroup.

For a nonunital ring R the circle operation x o y = xy + x + y makes the
quasi-invertible elements a group (with neutral element 0); in the
unitalization it is conjugate to ordinary multiplication via x <-> 1 + x.
Transvections are quasi-units supported in one off-diagonal Peirce block;
they satisfy the Steinberg relations, and the subgroup they generate plays
the role of the elementary linear group.
"""

from dataclasses import dataclass, field

from .errors import (BlockMismatch, BoundExceeded, IndexClash, InternalAlarm,
                     NotIdempotent, NotQuasiInvertible, RankTooSmall)
from .rings import is_idempotent
from .smith import solve_mod


def circ(ring, x, y):
    G = ring.additive
    return G.add(ring.mul(x, y), G.add(x, y))


def quasi_inverse(ring, x):
    """The y with x o y = y o x = 0, or NotQuasiInvertible.

    Solving x*y + y = -x is linear in y; a solution makes 1 + y a right
    inverse of 1 + x in the unitalization, and in a finite ring one-sided
    inverses are two-sided.  Both circle equations are verified anyway.
    """
    G = ring.additive
    x = G.reduce(x)
    n = G.dim
    cols = [ring.mul(x, G.gen(q)) for q in range(n)]
    M = [[cols[q][i] + (1 if q == i else 0) for q in range(n)]
         for i in range(n)]
    y = solve_mod(M, list(G.neg(x)), list(G.orders), width=n)
    if y is None:
        raise NotQuasiInvertible("element has no quasi-inverse", witness=x)
    y = G.reduce(y)
    if any(circ(ring, x, y)) or any(circ(ring, y, x)):
        raise InternalAlarm("quasi-inverse verification failed", witness=x)
    return y


class QuasiUnit:
    """A quasi-invertible element with its quasi-inverse carried along, so
    group operations never have to solve anything."""

    __slots__ = ("ring", "value", "inv")

    def __init__(self, ring, value, inv=None):
        self.ring = ring
        self.value = ring.additive.reduce(value)
        self.inv = quasi_inverse(ring, value) if inv is None \
            else ring.additive.reduce(inv)

    def circle(self, other):
        return QuasiUnit(self.ring, circ(self.ring, self.value, other.value),
                         inv=circ(self.ring, other.inv, self.inv))

    def inverse(self):
        return QuasiUnit(self.ring, self.inv, inv=self.value)

    def conjugate(self, other):
        """self o other o self^{-1}."""
        return self.circle(other).circle(self.inverse())

    def commutator(self, other):
        """self o other o self^{-1} o other^{-1}."""
        return self.circle(other).circle(self.inverse()) \
                   .circle(other.inverse())

    def act(self, v):
        """Conjugation action on ring elements: (xv + v) x' + xv + v where
        x' is the quasi-inverse; matches (1+x) v (1+x)^{-1}."""
        R, G = self.ring, self.ring.additive
        w = G.add(R.mul(self.value, v), v)
        return G.add(R.mul(w, self.inv), w)

    def is_identity(self):
        return not any(self.value)

    def __eq__(self, other):
        return (isinstance(other, QuasiUnit) and self.ring is other.ring
                and self.value == other.value)

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "QuasiUnit(%r)" % (self.value,)


def identity_unit(ring):
    z = ring.additive.zero
    return QuasiUnit(ring, z, inv=z)


def transvection(R, i, j, a):
    """Quasi-unit supported in off-diagonal block (i, j).  Its inverse is
    the transvection at -a because the block squares to zero."""
    if i == j:
        raise IndexClash("transvections need two distinct indices")
    G = R.blocks[(i, j)]
    if len(a) != G.dim:
        raise BlockMismatch("vector does not fit block (%d, %d)" % (i, j))
    a = G.reduce(a)
    return QuasiUnit(R, R.embed(i, j, a), inv=R.embed(i, j, G.neg(a)))


def eval_st_word(R, word):
    """Fold a sequence of (i, j, a) transvection letters with circle."""
    acc = identity_unit(R)
    for (i, j, a) in word:
        acc = acc.circle(transvection(R, i, j, a))
    return acc


def _transvection_letters(R, elements="generators"):
    """(i, j, a) triples: per off-diagonal block either the generators and
    their negatives, or every nonzero element."""
    out = []
    for i in range(R.rank):
        for j in range(R.rank):
            if i == j:
                continue
            G = R.blocks[(i, j)]
            if elements == "all":
                vals = [a for a in G.elements() if any(a)]
            else:
                vals = []
                for g in G.gens():
                    vals.append(g)
                    ng = G.neg(g)
                    if ng != g:
                        vals.append(ng)
            out.extend((i, j, a) for a in vals)
    return out


@dataclass
class SteinbergReport:
    additivity_failures: list = field(default_factory=list)
    commuting_failures: list = field(default_factory=list)
    composition_failures: list = field(default_factory=list)
    identity_failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self):
        return not (self.additivity_failures or self.commuting_failures
                    or self.composition_failures or self.identity_failures)


def verify_steinberg(R, identity_triples="generators", limit=8):
    """Check the Steinberg relations and the standard commutator identities
    on transvections.

    Families checked, with failures collected up to `limit` per family:
      * t_ij(a) o t_ij(b) == t_ij(a + b) for all element pairs of a block;
      * [t_ij(a), t_kl(b)] == 0 whenever j != k and i != l;
      * [t_ij(a), t_jk(b)] == t_ik(ab) for i != k;
      * circle associativity (x o y) o z == x o (y o z) and the identities
          [x o y, z] == (^x [y, z]) o [x, z]
          [x, y o z] == [x, y] o (^y [x, z])
          ^y[x,[y^-1,z]] o ^z[y,[z^-1,x]] o ^x[z,[x^-1,y]] == 0
        on triples of transvection letters (generator letters by default,
        every nonzero letter with identity_triples="all").
    """
    rep = SteinbergReport()
    l = R.rank

    blocks = [(i, j) for i in range(l) for j in range(l) if i != j]
    for (i, j) in blocks:
        G = R.blocks[(i, j)]
        elems = list(G.elements())
        for a in elems:
            ta = transvection(R, i, j, a)
            for b in elems:
                got = ta.circle(transvection(R, i, j, b))
                want = transvection(R, i, j, G.add(a, b))
                rep.checked += 1
                if got != want and len(rep.additivity_failures) < limit:
                    rep.additivity_failures.append(((i, j), a, b))

    for (i, j) in blocks:
        Gij = R.blocks[(i, j)]
        for (k, m) in blocks:
            if j == k or i == m:
                continue
            Gkm = R.blocks[(k, m)]
            for a in Gij.elements():
                if not any(a):
                    continue
                ta = transvection(R, i, j, a)
                for b in Gkm.elements():
                    if not any(b):
                        continue
                    c = ta.commutator(transvection(R, k, m, b))
                    rep.checked += 1
                    if not c.is_identity() and \
                            len(rep.commuting_failures) < limit:
                        rep.commuting_failures.append(((i, j), a, (k, m), b))

    for (i, j) in blocks:
        Gij = R.blocks[(i, j)]
        for k in range(l):
            if k == j or k == i:
                continue
            Gjk = R.blocks[(j, k)]
            for a in Gij.elements():
                ta = transvection(R, i, j, a)
                for b in Gjk.elements():
                    got = ta.commutator(transvection(R, j, k, b))
                    want = transvection(R, i, k,
                                        R.block_mul(i, j, k, a, b))
                    rep.checked += 1
                    if got != want and \
                            len(rep.composition_failures) < limit:
                        rep.composition_failures.append(((i, j), a, (j, k), b))

    letters = [transvection(R, i, j, a)
               for (i, j, a) in _transvection_letters(R, identity_triples)]
    for x in letters:
        for y in letters:
            xy = x.circle(y)
            for z in letters:
                rep.checked += 1
                if xy.circle(z) != x.circle(y.circle(z)) and \
                        len(rep.identity_failures) < limit:
                    rep.identity_failures.append(("assoc", x.value, y.value,
                                                  z.value))
                lhs = xy.commutator(z)
                rhs = x.conjugate(y.commutator(z)).circle(x.commutator(z))
                if lhs != rhs and len(rep.identity_failures) < limit:
                    rep.identity_failures.append(("L", x.value, y.value,
                                                  z.value))
                lhs = x.commutator(y.circle(z))
                rhs = x.commutator(y).circle(y.conjugate(x.commutator(z)))
                if lhs != rhs and len(rep.identity_failures) < limit:
                    rep.identity_failures.append(("R", x.value, y.value,
                                                  z.value))
                t1 = y.conjugate(x.commutator(y.inverse().commutator(z)))
                t2 = z.conjugate(y.commutator(z.inverse().commutator(x)))
                t3 = x.conjugate(z.commutator(x.inverse().commutator(y)))
                if not t1.circle(t2).circle(t3).is_identity() and \
                        len(rep.identity_failures) < limit:
                    rep.identity_failures.append(("HW", x.value, y.value,
                                                  z.value))
    return rep


def elementary_subgroup(R, size_bound=2 ** 20):
    """The set of values of the subgroup generated by all transvections,
    found by breadth-first closure.  Raises BoundExceeded past size_bound."""
    gens = [transvection(R, i, j, a)
            for (i, j, a) in _transvection_letters(R, "generators")]
    seen = {R.additive.zero: identity_unit(R)}
    frontier = list(seen.values())
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x.circle(g)
                if y.value not in seen:
                    seen[y.value] = y
                    new.append(y)
                    if len(seen) > size_bound:
                        raise BoundExceeded(
                            "elementary subgroup outgrew the bound",
                            partial_size=len(seen))
        frontier = new
    return seen


@dataclass
class CenterPerfReport:
    perfect: bool
    perfect_witness: object
    upper_size: int
    central_violations: list
    action_injective: object
    action_witness: object

    @property
    def ok(self):
        return (self.perfect and not self.central_violations
                and self.action_injective is not False)


def _upper_triangular_units(R):
    """All circle-products of transvections from blocks (i, j) with i < j,
    in lexicographic block order; for rank >= 2 each such product is
    uniquely determined by its block components."""
    blocks = [(i, j) for i in range(R.rank) for j in range(R.rank) if i < j]
    units = [identity_unit(R)]
    for (i, j) in blocks:
        G = R.blocks[(i, j)]
        units = [u.circle(transvection(R, i, j, a))
                 for u in units for a in G.elements()]
    return units


def perfectness_and_center(R, check_action=True):
    """Certify commutator generation and poke at the center.

    Every generator transvection t_ik(c) is rewritten as a product of
    commutators [t_ij(a), t_jk(b)] (possible because the ring is idempotent
    and the rank is at least 3) and the rewriting is verified by evaluation.
    Every nonzero product of strictly upper triangular transvections is
    checked to not commute with at least one generator, and optionally to
    act differently from all the others on the ring.
    """
    if R.rank < 3:
        raise RankTooSmall("need rank at least 3")
    ok, wit = is_idempotent(R)
    if not ok:
        raise NotIdempotent("ring is not idempotent at blocks %r" % (wit,))

    perfect = True
    perfect_witness = None
    for i in range(R.rank):
        for k in range(R.rank):
            if i == k:
                continue
            j = min(t for t in range(R.rank) if t not in (i, k))
            Gij, Gjk, Gik = R.blocks[(i, j)], R.blocks[(j, k)], \
                R.blocks[(i, k)]
            pairs = [(a, b) for a in range(Gij.dim) for b in range(Gjk.dim)]
            cols = [R.block_mul(i, j, k, Gij.gen(a), Gjk.gen(b))
                    for (a, b) in pairs]
            M = [[col[t] for col in cols] for t in range(Gik.dim)]
            for c in Gik.gens():
                lam = solve_mod(M, list(c), list(Gik.orders),
                                width=len(pairs))
                if lam is None:
                    perfect = False
                    perfect_witness = (i, k, c, "no decomposition")
                    continue
                prod = identity_unit(R)
                for (a, b), coeff in zip(pairs, lam):
                    ta = transvection(R, i, j, Gij.scale(coeff, Gij.gen(a)))
                    tb = transvection(R, j, k, Gjk.gen(b))
                    prod = prod.circle(ta.commutator(tb))
                if prod != transvection(R, i, k, c):
                    perfect = False
                    perfect_witness = (i, k, c, "product mismatch")

    gens = [transvection(R, i, j, a)
            for (i, j, a) in _transvection_letters(R, "generators")]
    units = _upper_triangular_units(R)
    central = []
    for u in units:
        if u.is_identity():
            continue
        if all(u.circle(g) == g.circle(u) for g in gens):
            central.append(u.value)

    action_injective = None
    action_witness = None
    if check_action:
        seen = {}
        action_injective = True
        for u in units:
            key = tuple(u.act(g) for g in R.additive.gens())
            if key in seen:
                action_injective = False
                action_witness = (seen[key], u.value)
            else:
                seen[key] = u.value

    return CenterPerfReport(perfect=perfect, perfect_witness=perfect_witness,
                            upper_size=len(units),
                            central_violations=central,
                            action_injective=action_injective,
                            action_witness=action_witness)
