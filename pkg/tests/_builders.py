"""Shared instance builders for the test suite."""

from __future__ import annotations

from fractions import Fraction

from quiverbundles.bundles import SplitBundle, TwistData, TwistedQuiverBundle
from quiverbundles.polynomials import HomogPoly, poly_mat, poly_zeros
from quiverbundles.quivers import Arrow, Quiver, double

ADHM_QUIVER = Quiver(
    ("0", "1"), (Arrow("loop", "1", "1"), Arrow("frame", "0", "1")), framing="0"
)
ADHM_DOUBLE = double(ADHM_QUIVER)
ADHM_TWIST = TwistData.of({"loop+": -1, "loop-": -1, "frame+": 0, "frame-": -2})

CHAIN_QUIVER = Quiver(
    ("0", "1", "2"), (Arrow("f", "0", "1"), Arrow("e", "1", "2")), framing="0"
)
CHAIN_DOUBLE = double(CHAIN_QUIVER)
CHAIN_TWIST = TwistData.of({"f+": 0, "f-": -2, "e+": 0, "e-": -2})


def form(degree: int, *coeffs) -> HomogPoly:
    return HomogPoly.of(degree, [Fraction(c) for c in coeffs])


def adhm_bundle(degrees, b1=None, b2=None, iota=None, j=None, r=1) -> TwistedQuiverBundle:
    """ADHM-shaped bundle; omitted blocks default to zero matrices."""
    n = len(degrees)
    bundles = {"0": SplitBundle((0,) * r), "1": SplitBundle(tuple(degrees))}
    phi = {
        "loop+": poly_mat(b1) if b1 else poly_zeros(n, n),
        "loop-": poly_mat(b2) if b2 else poly_zeros(n, n),
        "frame+": poly_mat(iota) if iota else poly_zeros(n, r),
        "frame-": poly_mat(j) if j else poly_zeros(r, n),
    }
    return TwistedQuiverBundle(ADHM_DOUBLE, bundles, ADHM_TWIST, phi)


def chain_bundle(deg1, deg2, f=None, e=None, r=1) -> TwistedQuiverBundle:
    """Framed chain bundle 0 -> 1 -> 2 with reverse arrows zero."""
    n1, n2 = len(deg1), len(deg2)
    bundles = {
        "0": SplitBundle((0,) * r),
        "1": SplitBundle(tuple(deg1)),
        "2": SplitBundle(tuple(deg2)),
    }
    phi = {
        "f+": poly_mat(f) if f else poly_zeros(n1, r),
        "f-": poly_zeros(r, n1),
        "e+": poly_mat(e) if e else poly_zeros(n2, n1),
        "e-": poly_zeros(n1, n2),
    }
    return TwistedQuiverBundle(CHAIN_DOUBLE, bundles, CHAIN_TWIST, phi)
