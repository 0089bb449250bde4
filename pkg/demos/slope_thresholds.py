"""
Slopes, the crossover delta, and large-delta agreement
======================================================

The central charge attaches a delta-dependent slope to each numerical
class.  Past a computable threshold the slope ordering is decided by
rank data alone, so the slope verdict, the generic-generation verdict,
and the basic quasimap verdict must all coincide.
"""

from fractions import Fraction

from quiverbundles import (
    InstanceSpec,
    asymptotic_equivalence_check,
    delta_threshold,
    gen_bundle,
    instance_threshold,
    numerical_class,
    slopes,
    subsheaf_degree_bound,
    threshold_inequality_holds,
)

# a stable chain instance and its numerical class (framing rank, total
# ordinary rank, total ordinary degree)
e = gen_bundle(InstanceSpec("chain", (2, 1), framing=2, seed=5))
c = numerical_class(e)
print("numerical class:", c)

# the slope table at a few (positive) delta values; mu_delta grows
# linearly while the delta-free readings stay put
for delta in (Fraction(1, 2), Fraction(5), Fraction(50)):
    table = slopes(c, delta)
    print(f"delta={delta}: mu_delta={table.mu_delta.value}, mu_st={table.mu_st.value}, "
          f"mu1={table.mu1.value}")

# the instance threshold bounds subobject degrees first, then clears
# every rank-gap denominator under both slope scalings
delta0 = instance_threshold(e)
print("instance threshold delta0:", delta0)
assert threshold_inequality_holds(
    c.v0, c.v1, Fraction(c.d, c.v1), subsheaf_degree_bound(e), delta0
)

# a worked standalone threshold: framing 1, ordinary rank 2, slope 0,
# subobject degrees bounded by 9
print("delta_threshold(1, 2, 0, 9) =", delta_threshold(1, 2, 0, 9))

# at delta0 both stability routes and the family slope check agree
report = asymptotic_equivalence_check(e)
print("routes agree at delta0:", report.agree,
      "| stable:", report.stable_quasimap,
      "| slope check refutes:", report.verdict.refutes_stability)

# below the threshold the slope check is reported as informative only
low = asymptotic_equivalence_check(e, Fraction(1, 2))
print("delta=1/2 informative only:", low.informative_only)
