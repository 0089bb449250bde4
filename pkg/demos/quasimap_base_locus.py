"""
Where a quasimap fails to be generated
======================================

A twisted bundle instance is a family of framed representations over
the projective line.  Stability asks the framing to generate every
fiber away from finitely many points; the failure locus is cut out by
one binary form per vertex.
"""

from fractions import Fraction

from quiverbundles import base_locus, fiber_at, is_stable_framed, is_stable_quasimap
from quiverbundles.bundles import SplitBundle, TwistData, TwistedQuiverBundle
from quiverbundles.generators import ADHM_DOUBLE, ADHM_TWIST
from quiverbundles.polynomials import HomogPoly, format_factored

# rank-one instance over P^1 whose generation matrix is the single form
# s*t: the framing generates every fiber except [1:0] and [0:1].  The
# frame+ entry degree is deg E1 + twist - deg E0 = 2 + 0 - 0, so E1 = O(2)
ZERO = HomogPoly.zero()
st = HomogPoly.monomial(2, 1)  # s t
e = TwistedQuiverBundle(
    ADHM_DOUBLE,
    {"0": SplitBundle((0,)), "1": SplitBundle((2,))},
    ADHM_TWIST,
    {
        "loop+": ((ZERO,),),
        "loop-": ((ZERO,),),
        "frame+": ((st,),),
        "frame-": ((ZERO,),),
    },
)

report = base_locus(e)
print("base locus polynomial:", format_factored(report.polynomial))
print("stable quasimap:", report.stable, "=", is_stable_quasimap(e))

# fibers at the two base points are unstable framed representations;
# a generic fiber is stable
for s, t in ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(1), Fraction(2))):
    fiber = fiber_at(e, (s, t))
    print(f"fiber at [{s}:{t}] stable:", is_stable_framed(fiber).stable)

# an everywhere-degenerate instance: zero generation matrix means the
# "locus" is the whole curve, reported as the zero polynomial
dead = TwistedQuiverBundle(
    ADHM_DOUBLE,
    {"0": SplitBundle((0,)), "1": SplitBundle((2,))},
    ADHM_TWIST,
    {"loop+": ((ZERO,),), "loop-": ((ZERO,),), "frame+": ((ZERO,),), "frame-": ((ZERO,),)},
)
print("degenerate instance polynomial:", format_factored(base_locus(dead).polynomial))
print("degenerate instance stable:", is_stable_quasimap(dead))
