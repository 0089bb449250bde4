"""Central charges, slope functions, and the large-delta stability range.

For slope purposes a framed instance reduces to its numerical class
(v0, v1, d): framing rank, total ordinary rank, total ordinary degree.
The weighted charge Z(c) = (v1, d + delta*v0) orders subobject classes
by im/re; quasimap stability is the large-delta limit of that order,
and the crossover threshold is computable from any bound on subsheaf
degrees.  Family checks here are one-sided by design: a refutation is
exact, while consistency only covers the family supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable

from .bundles import (
    TwistedQuiverBundle,
    base_locus,
    fiber_at,
    generated_subsheaf_summary,
    hn_filtration_split,
    hn_step_indices,
    is_stable_quasimap,
    subbundle_is_arrow_invariant,
)
from .quivers import HypothesisError
from .representations import is_stable_framed

ZERO = Fraction(0)

Rational = Fraction | int


@dataclass(frozen=True)
class NumericalClass:
    """Class (v0, v1, d): framing rank, ordinary rank, ordinary degree."""

    v0: int
    v1: int
    d: int

    def __post_init__(self) -> None:
        if self.v0 < 0 or self.v1 < 0:
            raise ValueError("ranks must be nonnegative")

    @property
    def is_zero(self) -> bool:
        return self.v0 == 0 and self.v1 == 0 and self.d == 0

    def __add__(self, other: NumericalClass) -> NumericalClass:
        return NumericalClass(self.v0 + other.v0, self.v1 + other.v1, self.d + other.d)

    def __str__(self) -> str:
        return f"({self.v0}, {self.v1}, {self.d})"


@dataclass(frozen=True)
class CentralCharge:
    re: Fraction
    im: Fraction


@dataclass(frozen=True)
class Slope:
    """Element of (-inf, +inf]; +inf is encoded by value None."""

    value: Fraction | None = None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _cmp(self, other: Slope) -> int:
        if self.value is None or other.value is None:
            return (other.value is not None) - (self.value is not None)
        return (self.value > other.value) - (self.value < other.value)

    def __lt__(self, other: Slope) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Slope) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Slope) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Slope) -> bool:
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INFINITE_SLOPE = Slope(None)


def central_charge(c: NumericalClass, delta: Rational) -> CentralCharge:
    """Charge (v1, d + delta*v0); the two half-rank real contributions of
    the summands are combined into the single real part v1."""
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    return CentralCharge(Fraction(c.v1), Fraction(c.d) + delta * c.v0)


def slope_of(z: CentralCharge) -> Slope:
    """im/re on the closed right half plane; +inf on the positive
    imaginary axis."""
    if z.re > 0:
        return Slope(z.im / z.re)
    if z.re == 0 and z.im > 0:
        return INFINITE_SLOPE
    raise ValueError(f"no slope in (-inf, +inf] for charge ({z.re}, {z.im})")


def mu_delta(c: NumericalClass, delta: Rational) -> Slope:
    return slope_of(central_charge(c, delta))


@dataclass(frozen=True)
class SlopeTable:
    """All slope readings of one class.  Entries degenerate to None when
    both charge parts vanish (no ray to take a slope of)."""

    mu_delta: Slope
    mu_st: Slope | None
    mu1: Slope | None
    mu2_proof: Slope | None
    mu2_Z: Slope | None


def _ratio(re: Fraction, im: Fraction) -> Slope | None:
    if re > 0:
        return Slope(im / re)
    if re == 0 and im > 0:
        return INFINITE_SLOPE
    return None


def slopes(c: NumericalClass, delta: Rational) -> SlopeTable:
    """Weighted slope, standard slope of the underlying sheaf, and the
    two charge-part slopes.

    The part slopes come in two normalizations differing by a global
    factor 2 that never reorders anything; d/v1 and delta*v0/v1 are
    primary, the doubled variants are reported alongside.
    """
    if c.is_zero:
        raise ValueError("zero class has no slopes")
    delta = Fraction(delta)
    d = Fraction(c.d)
    return SlopeTable(
        mu_delta=mu_delta(c, delta),
        mu_st=_ratio(Fraction(c.v0 + c.v1), d),
        mu1=_ratio(Fraction(c.v1), d),
        mu2_proof=_ratio(Fraction(c.v1), delta * c.v0),
        mu2_Z=_ratio(Fraction(c.v1, 2), delta * c.v0),
    )


def n_bound(deg_l: int, g: int, rank_e: int) -> int:
    """Degree bound (|deg L| + |1 - g|) * rank on twisted global sections."""
    if rank_e < 1:
        raise ValueError("rank must be positive")
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return (abs(deg_l) + abs(1 - g)) * rank_e


def _proper_rank_pairs(v0: int, v1: int) -> list[tuple[int, int]]:
    # a subobject class either carries the whole framing or none of it
    out = []
    for v0p in sorted({0, v0}):
        for v1p in range(v1 + 1):
            if (v0p, v1p) in ((0, 0), (v0, v1)):
                continue
            out.append((v0p, v1p))
    return out


def delta_threshold(v0: int, v1: int, mu1_of_e: Rational, N: int) -> Fraction:
    """Smallest integer delta making the rank-part slope gaps dominate
    N + |mu1|, so slope comparisons against subobject classes of degree
    at most N are decided by rank parts alone.

    Computed under both charge normalizations and the larger value is
    returned, so the output is safe for either reading.  Rank pairs with
    no ordinary part have infinite gap and impose nothing.
    """
    if v0 < 1 or v1 < 1:
        raise ValueError("need positive framing and ordinary ranks")
    if N < 0:
        raise ValueError("degree bound must be nonnegative")
    mu1 = Fraction(mu1_of_e)
    best = ZERO
    for scale in (1, 2):
        gaps = [
            abs(Fraction(scale * v0, v1) - Fraction(scale * v0p, v1p))
            for v0p, v1p in _proper_rank_pairs(v0, v1)
            if v1p > 0
        ]
        bound = (N + abs(scale * mu1)) / min(gaps)
        best = max(best, Fraction(floor(bound) + 1))
    return best


def threshold_inequality_holds(
    v0: int, v1: int, mu1_of_e: Rational, N: int, delta0: Rational
) -> bool:
    """Re-substitution check: delta0 * gap > N + |mu1| strictly, for every
    admissible rank pair under both normalizations."""
    mu1 = Fraction(mu1_of_e)
    delta0 = Fraction(delta0)
    for v0p, v1p in _proper_rank_pairs(v0, v1):
        if v1p == 0:
            continue
        for scale in (1, 2):
            gap = abs(Fraction(scale * v0, v1) - Fraction(scale * v0p, v1p))
            if delta0 * gap <= N + abs(scale * mu1):
                return False
    return True


# ---------------------------------------------------------------------------
# instance-level classes, bounds, and verdicts


def numerical_class(e: TwistedQuiverBundle) -> NumericalClass:
    """Class (framing rank, total ordinary rank, total ordinary degree)."""
    framing = e.double.framing
    if framing is None:
        raise HypothesisError("numerical class needs a framing vertex")
    v1 = sum(e.bundles[i].rank for i in e.double.ordinary_vertices)
    d = sum(e.bundles[i].degree for i in e.double.ordinary_vertices)
    return NumericalClass(e.bundles[framing].rank, v1, d)


def subsheaf_degree_bound(e: TwistedQuiverBundle) -> int:
    """Bound on |deg| over saturated subsheaves of the underlying sheaf:
    twist all summand degrees above -1, bound the section count of the
    twisted sheaf, and pad by one so every degree reachable by a split
    filtration step is covered."""
    degrees = [d for v in e.double.vertices for d in e.bundles[v].multidegree]
    if not degrees:
        raise HypothesisError("degree bound needs a nonzero instance")
    rk = len(degrees)
    m0 = max(0, -1 - min(degrees))
    n0 = abs(rk + m0 * rk + sum(degrees))
    return (n0 + 1) * rk


def instance_threshold(e: TwistedQuiverBundle) -> Fraction:
    """Per-instance crossover delta from the instance's own degree bound."""
    c = numerical_class(e)
    if c.v0 < 1 or c.v1 < 1:
        raise HypothesisError("threshold needs framing and ordinary rank")
    return delta_threshold(c.v0, c.v1, Fraction(c.d, c.v1), subsheaf_degree_bound(e))


@dataclass(frozen=True)
class DeltaVerdict:
    """Slope comparison outcome against an explicit subobject family.

    One-sided: refutations are exact, while `consistent` certifies
    nothing beyond the supplied family.
    """

    delta: Fraction
    total: NumericalClass
    refutes_stability: bool
    refutes_semistability: bool
    witness: NumericalClass | None
    family_size: int

    @property
    def consistent(self) -> bool:
        return not self.refutes_stability


def _family_entry(f: NumericalClass, total: NumericalClass) -> NumericalClass:
    if not isinstance(f, NumericalClass):
        raise ValueError(f"family entry {f!r} is not a numerical class")
    if f.v0 == 0 and f.v1 == 0:
        raise ValueError(f"family entry {f} is zero or torsion")
    if f == total:
        raise ValueError("family entry equals the total class")
    if f.v0 > total.v0 or f.v1 > total.v1:
        raise ValueError(f"family entry {f} exceeds the total class ranks")
    return f


def check_delta_stability(
    e: TwistedQuiverBundle | NumericalClass,
    delta: Rational,
    family: Iterable[NumericalClass],
) -> DeltaVerdict:
    """Compare mu_delta of every family member against the total class.

    A member of slope >= (resp. >) the total refutes stability
    (resp. semistability); the witness is a slope-maximal offender.
    """
    total = e if isinstance(e, NumericalClass) else numerical_class(e)
    delta = Fraction(delta)
    mu_total = mu_delta(total, delta)
    entries = [(f, mu_delta(_family_entry(f, total), delta)) for f in family]
    witness: NumericalClass | None = None
    witness_mu: Slope | None = None
    ge = gt = False
    for f, mu in entries:
        if mu >= mu_total:
            ge = True
            gt = gt or mu > mu_total
            if witness_mu is None or mu > witness_mu:
                witness, witness_mu = f, mu
    return DeltaVerdict(delta, total, ge, gt, witness, len(entries))


def subobject_family(e: TwistedQuiverBundle) -> tuple[NumericalClass, ...]:
    """Classes of the canonical proper nonzero subobjects: the
    framing-generated subsheaf and every arrow-invariant step of the
    split Harder-Narasimhan filtration.

    Non-invariant steps are not subobjects and are dropped after an
    exact invariance check; including them would refute instances that
    are genuinely stable.
    """
    total = numerical_class(e)
    framing = e.double.framing
    fam: list[NumericalClass] = []

    summary = generated_subsheaf_summary(e)
    gen = NumericalClass(
        total.v0,
        sum(r for _, r in summary.ranks),
        sum(d for _, d in summary.degrees),
    )
    if not gen.is_zero and gen != total:
        fam.append(gen)

    strata = hn_filtration_split(e)
    for upto in range(1, len(strata)):
        idx = hn_step_indices(strata, upto, e.double.vertices)
        if not subbundle_is_arrow_invariant(e, idx):
            continue
        v0p = len(idx[framing]) if framing is not None else 0
        v1p = sum(len(idx[i]) for i in e.double.ordinary_vertices)
        dp = sum(
            e.bundles[i].multidegree[k]
            for i in e.double.ordinary_vertices
            for k in idx[i]
        )
        cls = NumericalClass(v0p, v1p, dp)
        if not cls.is_zero and cls != total and cls not in fam:
            fam.append(cls)
    return tuple(fam)


def _point_off_base_locus(e: TwistedQuiverBundle) -> tuple[Fraction, Fraction]:
    g = base_locus(e).polynomial
    if g.is_zero():
        return (Fraction(1), Fraction(1))
    k = 1
    while g.evaluate(Fraction(1), Fraction(k)) == 0:
        k += 1  # a nonzero form has finitely many roots
    return (Fraction(1), Fraction(k))


@dataclass(frozen=True)
class AsymReport:
    """Agreement record between the two stability routes and the
    family-limited slope check at one delta."""

    stable_quasimap: bool
    generically_generated: bool
    sample_point: tuple[Fraction, Fraction]
    delta: Fraction
    delta0: Fraction
    verdict: DeltaVerdict
    informative_only: bool

    @property
    def agree(self) -> bool:
        if self.stable_quasimap != self.generically_generated:
            return False
        if self.informative_only:
            return True
        return self.verdict.refutes_stability == (not self.stable_quasimap)


def asymptotic_equivalence_check(
    e: TwistedQuiverBundle, delta: Rational | None = None
) -> AsymReport:
    """Evaluate stability through two independent routes, symbolic
    generic rank and fiber closure at a sampled off-locus point, plus
    the family slope check at delta (default: the instance threshold).

    At or above the threshold all verdicts must agree; below it the
    slope check is reported as informative only.
    """
    delta0 = instance_threshold(e)
    delta = delta0 if delta is None else Fraction(delta)
    cond_rank = is_stable_quasimap(e)
    z = _point_off_base_locus(e)
    cond_fiber = is_stable_framed(fiber_at(e, z)).stable
    verdict = check_delta_stability(e, delta, subobject_family(e))
    return AsymReport(
        stable_quasimap=cond_rank,
        generically_generated=cond_fiber,
        sample_point=z,
        delta=delta,
        delta0=delta0,
        verdict=verdict,
        informative_only=delta < delta0,
    )


def hn_quotient_bound_check(e: TwistedQuiverBundle, delta: Rational) -> bool:
    """Each split Harder-Narasimhan quotient slope is at most
    max(0, mu_delta(total)) plus one maximal twist step per remaining
    stratum.

    Delta-dependent: small delta can fail the bound even on stable
    instances, so callers pick delta at or above the instance threshold.
    """
    mu = mu_delta(numerical_class(e), Fraction(delta))
    if mu.is_infinite:
        return True
    strata = hn_filtration_split(e)
    l = len(strata)
    step = max([0] + [d for _, d in e.twist.m])
    base = max(ZERO, mu.value)
    return all(
        s.slope <= base + (l - i) * step for i, s in enumerate(strata, start=1)
    )
