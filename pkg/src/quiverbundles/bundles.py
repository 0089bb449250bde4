"""Twisted quiver bundles on the projective line.

Each vertex carries a split bundle, each doubled arrow a twist degree and
a matrix of homogeneous binary forms whose entry degrees are forced by
the multidegrees and the twist.  Everything sheaf-theoretic here reduces
to exact polynomial linear algebra: relation checking, fiber evaluation,
the base locus of framing generation, quasimap stability, the split
Harder-Narasimhan filtration, and the numerical class of the subsheaf
generated by the framing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from . import linalg
from .polynomials import (
    HomogPoly,
    PolyMatrix,
    generic_rank,
    poly_det,
    poly_gcd,
    poly_mat_eval,
    poly_mat_is_zero,
    poly_matmul,
    poly_zeros,
)
from .quivers import DimensionVector, DoubleQuiver, HypothesisError
from .representations import FramedRep

ZERO = Fraction(0)


@dataclass(frozen=True)
class SplitBundle:
    """Direct sum of line bundles O(a_1) + ... + O(a_r) in a fixed order."""

    multidegree: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.multidegree)

    @property
    def degree(self) -> int:
        return sum(self.multidegree)


@dataclass(frozen=True)
class TwistData:
    """Twist line-bundle degree per doubled arrow; opposite pairs sum to -2."""

    m: tuple[tuple[str, int], ...]

    @staticmethod
    def of(twists: Mapping[str, int]) -> TwistData:
        return TwistData(tuple((a, int(d)) for a, d in twists.items()))

    def degree(self, arrow: str) -> int:
        for a, d in self.m:
            if a == arrow:
                return d
        raise KeyError(arrow)

    def pairing_violations(self, dq: DoubleQuiver, expected_sum: int = -2) -> list[str]:
        out = []
        seen = set()
        for a in dq.arrows:
            if a.base in seen:
                continue
            seen.add(a.base)
            total = self.degree(a.name) + self.degree(a.opposite)
            if total != expected_sum:
                out.append(
                    f"twist pairing on arrow {a.base!r}: {total} instead of {expected_sum}"
                )
        return out


@dataclass(frozen=True)
class TwistedQuiverBundle:
    double: DoubleQuiver
    bundles: Mapping[str, SplitBundle]
    twist: TwistData
    phi: Mapping[str, PolyMatrix]

    def __post_init__(self) -> None:
        if set(self.bundles) != set(self.double.vertices):
            raise ValueError("bundle assignment must cover exactly the vertices")
        names = {a.name for a in self.double.arrows}
        if set(self.phi) != names:
            raise ValueError("arrow matrices must cover exactly the doubled arrows")
        for a in self.double.arrows:
            self.twist.degree(a.name)  # raises KeyError if missing
            m = self.phi[a.name]
            rows = len(m)
            want_rows = self.bundles[a.head].rank
            if rows != want_rows:
                raise ValueError(
                    f"arrow {a.name!r} matrix has {rows} rows, expected {want_rows}"
                )
            for row in m:
                if len(row) != self.bundles[a.tail].rank:
                    raise ValueError(
                        f"arrow {a.name!r} matrix has a row of length {len(row)}, "
                        f"expected {self.bundles[a.tail].rank}"
                    )

    def rank_vector(self) -> DimensionVector:
        verts = self.double.vertices
        return DimensionVector(tuple(verts), tuple(self.bundles[v].rank for v in verts))

    def entry_degree(self, arrow: str, row: int, col: int) -> int:
        a = self.double.arrow(arrow)
        return (
            self.bundles[a.head].multidegree[row]
            + self.twist.degree(arrow)
            - self.bundles[a.tail].multidegree[col]
        )


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.violations


def validate(e: TwistedQuiverBundle) -> ValidationReport:
    """Check the framing trivial-bundle convention, twist pairing, and all
    entry homogeneity degrees.  Report-valued; never raises."""
    out: list[str] = []
    framing = e.double.framing
    if framing is not None and any(d != 0 for d in e.bundles[framing].multidegree):
        out.append(
            f"framing bundle must be trivial, got multidegree {e.bundles[framing].multidegree}"
        )
    out.extend(e.twist.pairing_violations(e.double))
    for a in e.double.arrows:
        m = e.phi[a.name]
        for k, row in enumerate(m):
            for l, entry in enumerate(row):
                want = e.entry_degree(a.name, k, l)
                if entry.is_zero():
                    continue
                if want < 0:
                    out.append(
                        f"arrow {a.name!r} entry ({k}, {l}) must vanish "
                        f"(forced degree {want} < 0)"
                    )
                elif entry.degree != want:
                    out.append(
                        f"arrow {a.name!r} entry ({k}, {l}) has degree {entry.degree}, "
                        f"expected {want}"
                    )
    return ValidationReport(tuple(out))


def moment_residual_sheaf(e: TwistedQuiverBundle) -> dict[str, PolyMatrix]:
    """Relation residual per ordinary vertex, valued in forms of degree
    a_{i,k} - a_{i,l} - 2; the zero matrix everywhere iff the data is a
    quiver-bundle point of the relation's zero locus."""
    out: dict[str, PolyMatrix] = {}
    for i in e.double.ordinary_vertices:
        n = e.bundles[i].rank
        acc = poly_zeros(n, n)
        for a in e.double.arrows:
            if a.head != i:
                continue
            term = poly_matmul(e.phi[a.name], e.phi[a.opposite])
            if a.sign == 0:
                acc = tuple(
                    tuple(x + y for x, y in zip(ra, rt)) for ra, rt in zip(acc, term)
                )
            else:
                acc = tuple(
                    tuple(x - y for x, y in zip(ra, rt)) for ra, rt in zip(acc, term)
                )
        out[i] = acc
    return out


def residual_is_zero(e: TwistedQuiverBundle) -> bool:
    return all(poly_mat_is_zero(m) for m in moment_residual_sheaf(e).values())


@dataclass(frozen=True)
class DegreeClass:
    beta: tuple[tuple[str, int], ...]

    def __getitem__(self, vertex: str) -> int:
        for v, d in self.beta:
            if v == vertex:
                return d
        raise KeyError(vertex)


def degree_vector(e: TwistedQuiverBundle) -> DegreeClass:
    """Degree of the determinant line per ordinary vertex."""
    return DegreeClass(
        tuple((i, e.bundles[i].degree) for i in e.double.ordinary_vertices)
    )


def fiber_at(e: TwistedQuiverBundle, z: tuple[object, object]) -> FramedRep:
    """Evaluate all arrow matrices at a rational point [s0 : t0].

    Under the standard trivializations this produces a framed
    representation whose stability class does not depend on the
    trivialization choice (rescaling moves the point inside a torus orbit).
    """
    s0, t0 = Fraction(z[0]), Fraction(z[1])
    if s0 == 0 and t0 == 0:
        raise ValueError("invalid point [0:0]")
    dims = e.rank_vector()
    x = {a.name: poly_mat_eval(e.phi[a.name], s0, t0) for a in e.double.arrows}
    return FramedRep(e.double, dims, x)


# ---------------------------------------------------------------------------
# framing generation: words, base locus, generated subsheaf


def _framing_vertex(e: TwistedQuiverBundle) -> str:
    framing = e.double.framing
    if framing is None:
        raise HypothesisError("quasimap stability needs a framing vertex")
    return framing


def _flatten_column(
    col: tuple[HomogPoly, ...], twist: int, row_degrees: tuple[int, ...]
) -> tuple[Fraction, ...]:
    # columns of one twist share a forced per-row degree pattern, so they
    # flatten to aligned coefficient vectors
    flat: list[Fraction] = []
    for r, entry in enumerate(col):
        width = max(0, row_degrees[r] + twist + 1)
        cs = list(entry.coeffs) if not entry.is_zero() else []
        assert len(cs) <= width
        flat.extend(cs + [ZERO] * (width - len(cs)))
    return tuple(flat)


def generation_columns(
    e: TwistedQuiverBundle,
) -> dict[str, list[tuple[int, tuple[HomogPoly, ...]]]]:
    """Images of the framing sections under all arrow words, as (twist,
    column) pairs per ordinary vertex.

    Words start at the framing vertex and never revisit it (revisiting
    factors through the framing fiber and adds nothing new); length is
    capped at the total ordinary rank, past which fiberwise generation has
    plateaued.  A column that is a rational linear combination of already
    kept columns of the same twist is dropped and not extended: both its
    minors contribution and all its downstream images are redundant.
    """
    framing = _framing_vertex(e)
    if any(d != 0 for d in e.bundles[framing].multidegree):
        raise HypothesisError("framing bundle must be trivial for generation analysis")
    v0 = e.bundles[framing].rank
    cap = sum(e.bundles[i].rank for i in e.double.ordinary_vertices)
    out: dict[str, list[tuple[int, tuple[HomogPoly, ...]]]] = {
        i: [] for i in e.double.ordinary_vertices
    }
    bases: dict[tuple[str, int], list[tuple[Fraction, ...]]] = {}
    frontier: list[tuple[str, int, tuple[HomogPoly, ...]]] = [
        (
            framing,
            0,
            tuple(HomogPoly.constant(1 if r == c else 0) for r in range(v0)),
        )
        for c in range(v0)
    ]
    for _ in range(cap):
        nxt: list[tuple[str, int, tuple[HomogPoly, ...]]] = []
        for vertex, twist, col in frontier:
            for a in e.double.arrows:
                if a.tail != vertex or a.head == framing:
                    continue
                image = tuple(
                    _poly_dot(row, col) for row in e.phi[a.name]
                )
                if all(x.is_zero() for x in image):
                    continue
                new_twist = twist + e.twist.degree(a.name)
                flat = _flatten_column(image, new_twist, e.bundles[a.head].multidegree)
                key = (a.head, new_twist)
                basis = bases.setdefault(key, [])
                reduced = linalg.row_space_basis(tuple(basis) + (flat,))
                if len(reduced) == len(basis):
                    continue
                bases[key] = list(reduced)
                out[a.head].append((new_twist, image))
                nxt.append((a.head, new_twist, image))
        frontier = nxt
        if not frontier:
            break
    return out


def _poly_dot(row: tuple[HomogPoly, ...], col: tuple[HomogPoly, ...]) -> HomogPoly:
    acc = HomogPoly.zero()
    for a, b in zip(row, col):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


def _as_matrix(
    columns: list[tuple[int, tuple[HomogPoly, ...]]], n: int
) -> tuple[PolyMatrix, tuple[int, ...]]:
    if not columns:
        return (tuple(() for _ in range(n)), ())
    matrix = tuple(tuple(col[r] for _, col in columns) for r in range(n))
    return matrix, tuple(tw for tw, _ in columns)


def _generation_matrices(
    e: TwistedQuiverBundle,
) -> dict[str, tuple[PolyMatrix, tuple[int, ...]]]:
    cols = generation_columns(e)
    return {
        i: _as_matrix(cols[i], e.bundles[i].rank) for i in e.double.ordinary_vertices
    }


def generation_matrix(
    e: TwistedQuiverBundle, vertex: str
) -> tuple[PolyMatrix, tuple[int, ...]]:
    """Stacked word-image columns at one vertex plus their twist degrees."""
    return _generation_matrices(e)[vertex]


@dataclass(frozen=True)
class BaseLocusReport:
    polynomial: HomogPoly
    stable: bool
    vertex_ranks: tuple[tuple[str, int], ...]
    vertex_polynomials: tuple[tuple[str, HomogPoly], ...]


def base_locus(e: TwistedQuiverBundle) -> BaseLocusReport:
    """Locus where framing generation fails, as a binary form per vertex.

    The form at a vertex is the content-normalized gcd of the maximal
    minors of the generation matrix (each minor is homogeneous because
    all columns of a fixed word twist share a degree pattern).  The
    returned product vanishes exactly where some fiber fails framed
    stability; the verdict is full generic rank everywhere, equivalently
    a nonzero product.  Multiplicities are not contractual, the zero set
    is.
    """
    if not residual_is_zero(e):
        raise HypothesisError("moment residual nonzero; not quasimap data")
    matrices = _generation_matrices(e)
    total = HomogPoly.constant(1)
    ranks: list[tuple[str, int]] = []
    polys: list[tuple[str, HomogPoly]] = []
    stable = True
    for i in e.double.ordinary_vertices:
        n = e.bundles[i].rank
        matrix, _ = matrices[i]
        cols = len(matrix[0]) if matrix else 0
        if n == 0:
            ranks.append((i, 0))
            polys.append((i, HomogPoly.constant(1)))
            continue
        g = HomogPoly.zero()
        best_rank = 0
        if cols >= n:
            for subset in combinations(range(cols), n):
                minor = poly_det(
                    tuple(tuple(row[j] for j in subset) for row in matrix)
                )
                if not minor.is_zero():
                    best_rank = n
                    g = poly_gcd(g, minor)
                    if g.degree == 0:
                        break
        if best_rank < n:
            best_rank = generic_rank(matrix)
            g = HomogPoly.zero()
            stable = False
        ranks.append((i, best_rank))
        polys.append((i, g))
        total = total * g
    return BaseLocusReport(total, stable, tuple(ranks), tuple(polys))


def is_stable_quasimap(e: TwistedQuiverBundle) -> bool:
    """Full framing generation at the generic point of every ordinary vertex."""
    if not residual_is_zero(e):
        raise HypothesisError("moment residual nonzero; not quasimap data")
    matrices = _generation_matrices(e)
    for i in e.double.ordinary_vertices:
        n = e.bundles[i].rank
        if n == 0:
            continue
        matrix, _ = matrices[i]
        if not matrix or not matrix[0] or generic_rank(matrix) < n:
            return False
    return True


@dataclass(frozen=True)
class GeneratedSummary:
    """Generic rank and degree, per ordinary vertex, of the smallest
    saturated arrow-closed subsheaf containing the framing."""

    ranks: tuple[tuple[str, int], ...]
    degrees: tuple[tuple[str, int], ...]

    def rank(self, vertex: str) -> int:
        return dict(self.ranks)[vertex]

    def degree(self, vertex: str) -> int:
        return dict(self.degrees)[vertex]


def generated_subsheaf_summary(e: TwistedQuiverBundle) -> GeneratedSummary:
    """Numerical data of the framing-generated subsheaf.

    The rank at a vertex is the generic rank of the generation matrix.
    The degree comes from the wedge trick: all rank-size minors of the
    columns indexed by a set J factor through the saturated image's
    determinant line, so the gcd over row sets has degree deg + twist(J);
    consistency across choices of J is asserted.
    """
    if not residual_is_zero(e):
        raise HypothesisError("moment residual nonzero; not quasimap data")
    matrices = _generation_matrices(e)
    ranks: list[tuple[str, int]] = []
    degs: list[tuple[str, int]] = []
    for i in e.double.ordinary_vertices:
        n = e.bundles[i].rank
        matrix, twists = matrices[i]
        cols = len(twists)
        rho = generic_rank(matrix) if (n and cols) else 0
        ranks.append((i, rho))
        if rho == 0:
            degs.append((i, 0))
            continue
        degree: int | None = None
        for j_set in combinations(range(cols), rho):
            minors = []
            for k_set in combinations(range(n), rho):
                minor = poly_det(
                    tuple(tuple(matrix[k][j] for j in j_set) for k in k_set)
                )
                if not minor.is_zero():
                    minors.append(minor)
            if not minors:
                continue
            g = minors[0]
            for m in minors[1:]:
                g = poly_gcd(g, m)
                if g.degree == 0:
                    break
            m_j = sum(twists[j] for j in j_set)
            cand = g.degree - m_j
            if degree is None:
                degree = cand
            else:
                assert degree == cand, "inconsistent generated-subsheaf degree"
        assert degree is not None
        degs.append((i, degree))
    return GeneratedSummary(tuple(ranks), tuple(degs))


# ---------------------------------------------------------------------------
# Harder-Narasimhan filtration of the underlying split sheaf


@dataclass(frozen=True)
class HNStratum:
    slope: Fraction
    piece: tuple[tuple[str, tuple[int, ...]], ...]  # summand indices per vertex

    def piece_at(self, vertex: str) -> tuple[int, ...]:
        return dict(self.piece)[vertex]


def hn_filtration_split(e: TwistedQuiverBundle) -> tuple[HNStratum, ...]:
    """Degree strata of the underlying split sheaf, strictly decreasing.

    Stratum pieces are recorded as summand indices per vertex (framing
    included); the i-th filtration step is the union of the first i
    pieces, intersecting each vertex summand-wise.
    """
    degrees = sorted(
        {d for v in e.double.vertices for d in e.bundles[v].multidegree}, reverse=True
    )
    strata = []
    for d in degrees:
        piece = tuple(
            (v, tuple(k for k, a in enumerate(e.bundles[v].multidegree) if a == d))
            for v in e.double.vertices
        )
        strata.append(HNStratum(Fraction(d), piece))
    return tuple(strata)


def hn_step_indices(
    strata: Iterable[HNStratum], upto: int, vertices: Iterable[str]
) -> dict[str, tuple[int, ...]]:
    """Summand indices per vertex of the filtration step spanning the first
    `upto` strata (1-based count)."""
    sel: dict[str, list[int]] = {v: [] for v in vertices}
    for stratum in list(strata)[:upto]:
        for v, idxs in stratum.piece:
            sel[v].extend(idxs)
    return {v: tuple(sorted(ix)) for v, ix in sel.items()}


def subbundle_is_arrow_invariant(
    e: TwistedQuiverBundle, indices: Mapping[str, tuple[int, ...]]
) -> bool:
    """Exact check that arrows map the selected summand family into itself:
    every entry from a selected column to an unselected row vanishes."""
    for a in e.double.arrows:
        m = e.phi[a.name]
        inside = set(indices.get(a.head, ()))
        for l in indices.get(a.tail, ()):
            for k in range(e.bundles[a.head].rank):
                if k not in inside and not m[k][l].is_zero():
                    return False
    return True
