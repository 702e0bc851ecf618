"""What the idempotent, firm, and reduced predicates mean on small rings,
shown on examples that pass and examples that fail, and how the structural
constructions move a ring toward them.

Run as: python3 demos/predicates_tour.py
"""

from rootring.corpus import (fullness_of_idempotents, matrix_entry,
                             morita_entry, zero_entry)
from rootring.rings import (FinRing, check_predicates, peirce_from_idempotents,
                            reduced_quotient, two_sided_annihilator,
                            universal_ring)


def section(title):
    print()
    print(title)
    print("-" * len(title))


def report(label, R):
    rep = check_predicates(R)
    print("%-24s idempotent=%-5s firm=%-5s reduced=%s" %
          (label, rep.idempotent, rep.firm, rep.reduced))
    return rep


section("the three predicates")
print("idempotent: products R_ij R_jk fill every block R_ik")
print("firm:       the balanced pairings R_ij (x)_Rjj R_jk -> R_ik are bijective")
print("reduced:    idempotent with trivial two-sided annihilator")

section("rings that pass")
for n in (2, 3):
    report("mat_3_z%d" % n, matrix_entry(3, n).ring)
report("morita context ring", morita_entry().ring)

section("a ring that fails")
Z = zero_entry(3, 2).ring
rep = report("zero multiplication", Z)
print("every product is zero, so nothing fills the blocks;")
print("the annihilator is everything: order %d of %d" %
      (two_sided_annihilator(Z).order(), Z.additive.order))

section("another failure, with a witness")
R2 = FinRing.direct_product(FinRing.zmod(2), FinRing.zmod(2))
split, _ = peirce_from_idempotents(
    R2, [R2.additive.gen(0), R2.additive.gen(1)])
print("Z/2 x Z/2 split along its two idempotents has zero off-diagonal")
print("blocks, so R_01 R_10 cannot reach R_00:")
rep = report("split Z/2 x Z/2", split)
print("witness block triple: %r" % (rep.idempotent_witness,))

section("predicates agree with fullness of the idempotent family")
print("for a ring carved out of a unital one by a complete orthogonal")
print("family, all three predicates are equivalent to every idempotent")
print("being full (R e R = R), computed here directly from products:")
for rank, n in ((2, 2), (3, 3), (4, 2)):
    entry = matrix_entry(rank, n)
    rep = check_predicates(entry.ring)
    full = fullness_of_idempotents(entry)
    agree = rep.idempotent == rep.firm == rep.reduced == full
    print("%-12s fullness=%-5s predicates agree: %s" %
          (entry.name, full, agree))

section("structural constructions")
M = matrix_entry(3, 4).ring
U, back = universal_ring(M)
print("universal_ring replaces blocks by row-column tensors; the result")
print("is always firm, and for a firm input the canonical map back is a")
print("blockwise isomorphism:")
print("  universal ring firm: %s   canonical map iso: %s" %
      (check_predicates(U).firm, back.is_blockwise_iso()))
Q, proj = reduced_quotient(M)
print("reduced_quotient divides out the annihilator; on an already")
print("reduced ring it changes nothing:")
print("  quotient reduced: %s   same size: %s" %
      (check_predicates(Q).reduced, Q.additive.order == M.additive.order))
