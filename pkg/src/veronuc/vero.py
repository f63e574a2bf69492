"""Veronese embeddings over finite fields and their nuclei.

Coordinates: ``X = F^{m+1}`` with basis ``b_0..b_m``.  The space ``Y`` and
the symmetric power ``S^t X*`` both have dimension ``N = C(m+t, t)`` and are
indexed by exponent tuples in :mod:`veronuc.mono` order; ``Y`` uses the
basis ``c_e`` dual to the monomials ``b*^e``, so the pairing between them is
the plain dot product of coordinate vectors.

Two routes to the nucleus live here:

* :func:`nucleus_bruteforce` intersects every osculating hyperplane
  ``(F a*^t)^⊥`` by exact elimination;
* :func:`nucleus_predicted` spans the base points whose multinomial
  coefficient vanishes mod ``p``.

:func:`verify` compares them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import mono
from .errors import (
    EnumerationTooLarge,
    FieldMismatch,
    HypothesisViolated,
    ParamOutOfRange,
    PreconditionFailed,
)
from .exlin import (
    MatrixF,
    Subspace,
    contains_subspace,
    dot,
    encode_vector,
    intersect,
    matmul,
    matrix_rank,
    nullspace,
    rowspace,
    subspace_equal,
)
from .gf import Field, FieldElement

MAX_POINTS = 1_000_000


@dataclass(frozen=True)
class VeroContext:
    """Field, source dimension ``m`` and degree ``t`` of a Veronese map."""

    field: Field
    m: int
    t: int

    def __post_init__(self):
        if self.m < 0:
            raise ParamOutOfRange(f"m must be nonnegative, got {self.m}")
        if self.t < 1:
            raise ParamOutOfRange(f"t must be at least 1, got {self.t}")

    @cached_property
    def exponents(self) -> list[mono.ExponentTuple]:
        return mono.enumerate_exponents(self.m, self.t)

    @cached_property
    def index(self) -> dict[mono.ExponentTuple, int]:
        return {e: i for i, e in enumerate(self.exponents)}

    @cached_property
    def exponent_array(self) -> np.ndarray:
        return np.array(self.exponents, dtype=np.int64).reshape(-1, self.m + 1)

    @property
    def N(self) -> int:
        return len(self.exponents)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @cached_property
    def multinomial_residues(self) -> np.ndarray:
        """Multinomial coefficients embedded in the prime subfield."""
        return np.array([mono.multinomial_mod_p(self.t, e, self.p) for e in self.exponents],
                        dtype=np.int64)

    @cached_property
    def _powers(self) -> np.ndarray:
        return self.field.power_table(self.t)


# --- projective points --------------------------------------------------------

def count_projective_points(q: int, n: int) -> int:
    """Number of points of the projective space on ``GF(q)^n``."""
    return (q**n - 1) // (q - 1)


def projective_points(field: Field, n: int) -> np.ndarray:
    """One representative per point of ``P(F^n)``, as encodings.

    The first nonzero coordinate is 1.  Points are grouped by the position of
    that leading 1 (earliest first), and within a group the remaining
    coordinates run through :func:`itertools.product` of the element order.
    """
    count = count_projective_points(field.q, n)
    if count > MAX_POINTS:
        raise EnumerationTooLarge(f"P^{n - 1}(GF({field.q})) has {count} points (limit {MAX_POINTS})")
    blocks = []
    for lead in range(n):
        width = n - lead - 1
        tails = np.array(list(itertools.product(range(field.q), repeat=width)),
                         dtype=np.int64).reshape(field.q**width, width)
        block = np.zeros((tails.shape[0], n), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tails
        blocks.append(block)
    return np.vstack(blocks)


def _coerce_vector(ctx: VeroContext, x: Sequence) -> np.ndarray:
    if len(x) != ctx.m + 1:
        raise ValueError(f"expected {ctx.m + 1} coordinates, got {len(x)}")
    return encode_vector(ctx.field, x)


def _elements(field: Field, arr: np.ndarray) -> tuple[FieldElement, ...]:
    return tuple(FieldElement(field, int(v)) for v in arr)


def monomial_rows(ctx: VeroContext, points: np.ndarray) -> np.ndarray:
    """Row ``i`` holds ``prod_j x_j^{e_j}`` for every tuple ``e``, ``x = points[i]``."""
    points = np.atleast_2d(points)
    E = ctx.exponent_array
    out = ctx._powers[points[:, 0]][:, E[:, 0]]
    for j in range(1, ctx.m + 1):
        out = ctx.field.vmul(out, ctx._powers[points[:, j]][:, E[:, j]])
    return out


def dual_power_rows(ctx: VeroContext, forms: np.ndarray) -> np.ndarray:
    """Coordinates of ``(sum a_i b*_i)^t`` in the monomial basis, one row per form."""
    return ctx.field.vmul(monomial_rows(ctx, forms), ctx.multinomial_residues[None, :])


# --- single-vector operations ---------------------------------------------------

def veronese_coords(ctx: VeroContext, x: Sequence) -> tuple[FieldElement, ...]:
    """``g(x)``: all degree-``t`` monomials of ``x`` in tuple order."""
    return _elements(ctx.field, monomial_rows(ctx, _coerce_vector(ctx, x))[0])


def dual_power_coords(ctx: VeroContext, a: Sequence) -> tuple[FieldElement, ...]:
    """``a*^t`` in the basis ``b*^e``; coefficients are multinomials mod ``p``."""
    return _elements(ctx.field, dual_power_rows(ctx, _coerce_vector(ctx, a))[0])


def pairing(ctx: VeroContext, r: Sequence, y: Sequence) -> FieldElement:
    """``<r, y>`` for ``r`` in ``S^t X*`` and ``y`` in ``Y`` (dual bases)."""
    ru, yu = encode_vector(ctx.field, r), encode_vector(ctx.field, y)
    return FieldElement(ctx.field, dot(ctx.field, ru, yu))


# --- matrices over all points ------------------------------------------------

def veronese_matrix(ctx: VeroContext, points: np.ndarray | None = None) -> MatrixF:
    """Rows ``g(x)`` for every point of ``P(X)`` (or for the given points)."""
    if points is None:
        points = projective_points(ctx.field, ctx.m + 1)
    return MatrixF._wrap(ctx.field, monomial_rows(ctx, points))


def dual_power_matrix(ctx: VeroContext) -> MatrixF:
    """Rows ``a*^t`` for every point of ``P(X*)``."""
    forms = projective_points(ctx.field, ctx.m + 1)
    return MatrixF._wrap(ctx.field, dual_power_rows(ctx, forms))


def dual_power_rank(ctx: VeroContext) -> int:
    """Dimension of the span of all ``a*^t``."""
    return matrix_rank(dual_power_matrix(ctx))


# --- nuclei -------------------------------------------------------------------

def osculating_hyperplane(ctx: VeroContext, a: Sequence) -> Subspace:
    """``(F a*^t)^⊥``, the osculating hyperplane along ``ker a*``."""
    row = dual_power_rows(ctx, _coerce_vector(ctx, a))
    return nullspace(MatrixF._wrap(ctx.field, row))


def nucleus_bruteforce(ctx: VeroContext) -> Subspace:
    """Intersection of all osculating hyperplanes, by elimination."""
    return nullspace(dual_power_matrix(ctx))


def nucleus_basis_predicted(m: int, t: int, p: int) -> list[mono.ExponentTuple]:
    """Tuples whose multinomial coefficient vanishes mod ``p``, in tuple order."""
    return [e for e in mono.enumerate_exponents(m, t) if mono.multinomial_mod_p(t, e, p) == 0]


def nucleus_predicted(ctx: VeroContext) -> Subspace:
    """Span of the base points ``c_e`` from :func:`nucleus_basis_predicted`."""
    tuples = nucleus_basis_predicted(ctx.m, ctx.t, ctx.p)
    return Subspace.span_units(ctx.field, ctx.N, [ctx.index[e] for e in tuples])


def image_span(ctx: VeroContext) -> Subspace:
    """Span of ``g(X)`` inside ``Y``."""
    return rowspace(veronese_matrix(ctx))


def vanishing_form_witness(ctx: VeroContext) -> tuple[FieldElement, ...]:
    """A nonzero form of degree ``t`` vanishing on all of ``X`` when ``q < t``.

    It is ``b*_0^q b*_1^{t-q} - b*_0 b*_1^{t-1}``, which kills every ``g(x)``
    because ``x^q = x`` on ``F``.
    """
    q, t, m = ctx.q, ctx.t, ctx.m
    if q >= t or m == 0:
        raise HypothesisViolated(f"witness needs q < t and m >= 1 (q={q}, t={t}, m={m})")
    rest = (0,) * (m - 1)
    coords = [ctx.field.zero] * ctx.N
    coords[ctx.index[(q, t - q) + rest]] = ctx.field.one
    coords[ctx.index[(1, t - 1) + rest]] = -ctx.field.one
    return tuple(coords)


def _check_r(ctx: VeroContext, r: int) -> None:
    if not 0 <= r < ctx.m:
        raise ParamOutOfRange(f"need 0 <= r < m={ctx.m}, got r={r}")


def osculating_subspace(ctx: VeroContext, r: int, k: int) -> Subspace:
    """k-osculating subspace along the image of ``U = span(b_0, ..., b_r)``.

    This is the annihilator of ``S^{k+1} U° · S^{t-k-1} X*``.  With
    ``U° = span(b*_{r+1}, ..., b*_m)`` that product space is spanned by the
    monomials with at least ``k + 1`` total degree in positions ``r+1..m``.
    """
    _check_r(ctx, r)
    if not -1 <= k <= ctx.t - 1:
        raise ParamOutOfRange(f"need -1 <= k <= t-1={ctx.t - 1}, got k={k}")
    outer = ctx.exponent_array[:, r + 1:].sum(axis=1)
    idx = np.flatnonzero(outer >= k + 1)
    constraints = np.zeros((idx.size, ctx.N), dtype=np.int64)
    constraints[np.arange(idx.size), idx] = 1
    return nullspace(MatrixF._wrap(ctx.field, constraints))


def complete_basis(field: Field, vectors: Sequence[Sequence]) -> MatrixF:
    """Square matrix whose first columns are ``vectors``, completed by unit columns.

    Raises :class:`ValueError` if ``vectors`` are dependent.
    """
    vecs = MatrixF.from_rows(field, vectors)
    n = vecs.cols
    cols = [row for row in vecs.data]
    current = Subspace(field, n, vecs.data)
    if current.dim != len(cols):
        raise ValueError("vectors are linearly dependent")
    for i in range(n):
        if current.dim == n:
            break
        unit = np.zeros(n, dtype=np.int64)
        unit[i] = 1
        trial = Subspace(field, n, np.vstack([current.basis.data, unit[None, :]]))
        if trial.dim > current.dim:
            cols.append(unit)
            current = trial
    return MatrixF._wrap(field, np.array(cols, dtype=np.int64).T.copy())


def osculating_subspace_general(ctx: VeroContext, U: Sequence[Sequence], k: int) -> Subspace:
    """k-osculating subspace along the image of an arbitrary subspace ``U``.

    ``U`` is given by ``r + 1`` independent vectors.  A basis change ``f``
    sending ``b_0..b_r`` onto them moves the coordinate case into place via
    the induced map on ``Y``.
    """
    f = complete_basis(ctx.field, U)
    r = len(U) - 1
    return osculating_subspace(ctx, r, k).map(symmetric_power_map(ctx, f))


def sub_image_span(ctx: VeroContext, r: int) -> Subspace:
    """Span of ``g(U)`` in ``Y`` for ``U = span(b_0, ..., b_r)``."""
    _check_r(ctx, r)
    sub = projective_points(ctx.field, r + 1)
    points = np.zeros((sub.shape[0], ctx.m + 1), dtype=np.int64)
    points[:, :r + 1] = sub
    return rowspace(veronese_matrix(ctx, points))


def sub_nucleus(ctx: VeroContext, r: int) -> Subspace:
    """Nucleus of the sub-variety from ``U = span(b_0, ..., b_r)``, inside ``Y``.

    Spanned by the base points ``c_e`` with vanishing multinomial and
    ``e_{r+1} = ... = e_m = 0``; requires ``q >= t``.
    """
    _check_r(ctx, r)
    if ctx.q < ctx.t:
        raise HypothesisViolated(f"sub-nucleus description needs q >= t (q={ctx.q}, t={ctx.t})")
    keep = [ctx.index[e] for e in nucleus_basis_predicted(ctx.m, ctx.t, ctx.p)
            if not any(e[r + 1:])]
    return Subspace.span_units(ctx.field, ctx.N, keep)


def sub_nucleus_bruteforce(ctx: VeroContext, r: int) -> Subspace:
    """Nucleus of ``V_r^t`` computed in its own coordinates and embedded in ``Y``."""
    _check_r(ctx, r)
    inner = VeroContext(ctx.field, r, ctx.t)
    N_r = nucleus_bruteforce(inner)
    embed = [ctx.index[e + (0,) * (ctx.m - r)] for e in inner.exponents]
    rows = np.zeros((N_r.dim, ctx.N), dtype=np.int64)
    rows[:, embed] = N_r.basis.data
    return Subspace(ctx.field, ctx.N, rows)


def check_sub_nucleus(ctx: VeroContext, r: int) -> bool:
    """``N_r == N ∩ span(g(U))``, with both sides computed independently."""
    lhs = sub_nucleus(ctx, r)
    rhs = intersect(nucleus_bruteforce(ctx), sub_image_span(ctx, r))
    return subspace_equal(lhs, rhs) and subspace_equal(lhs, sub_nucleus_bruteforce(ctx, r))


# --- induced linear maps ---------------------------------------------------------

def _poly_mul(field: Field, a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = field._add(out.get(e, 0), field._mul(ca, cb))
    return {e: c for e, c in out.items() if c}


def symmetric_power_map(ctx: VeroContext, f: MatrixF) -> MatrixF:
    """Matrix ``S`` on ``Y`` with ``S g(x) = g(f x)`` for every ``x``.

    The transpose ``f^T`` sends ``b*_i`` to the linear form
    ``x -> (f x)_i``.  Expanding ``prod_i (f^T b*_i)^{e_i}`` in the monomial
    basis gives the column ``e`` of the induced map on ``S^t X*``; ``S`` is
    the transpose of that matrix because ``c_e`` and ``b*^e`` are dual.
    """
    F = ctx.field
    if f.field != F:
        raise FieldMismatch("map and context use different fields")
    n = ctx.m + 1
    if f.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {f.shape}")
    linear = []
    for i in range(n):
        form = {}
        for j in range(n):
            c = int(f.data[i, j])
            if c:
                form[tuple(int(j == s) for s in range(n))] = c
        linear.append(form)
    unit = {(0,) * n: 1}
    powers = [[unit] for _ in range(n)]
    for i in range(n):
        for _ in range(ctx.t):
            powers[i].append(_poly_mul(F, powers[i][-1], linear[i]))
    dual = np.zeros((ctx.N, ctx.N), dtype=np.int64)
    for col, e in enumerate(ctx.exponents):
        poly = unit
        for i, ei in enumerate(e):
            if ei:
                poly = _poly_mul(F, poly, powers[i][ei])
        for mono_e, c in poly.items():
            dual[ctx.index[mono_e], col] = c
    return MatrixF._wrap(F, dual.T.copy())


# --- projection counterexample ---------------------------------------------------

@dataclass
class ProjectionReport:
    """Outcome of projecting a Veronese variety from its one-point nucleus."""

    field: str
    m: int
    t: int
    nucleus_tuple: tuple
    points: int
    distinct_images: int
    lines: int
    line_span_dims: list[int]
    lines_skew_to_nucleus: int
    projected_line_span_dims: list[int]
    variety_span_dim: int
    projected_span_dim: int
    checks: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["nucleus_tuple"] = list(self.nucleus_tuple)
        d["ok"] = self.ok
        return d


def lines_of(field: Field, n: int) -> list[np.ndarray]:
    """Point sets of the hyperplanes ``ker a*`` of ``P(F^n)``; lines when ``n = 3``."""
    points = projective_points(field, n)
    forms = projective_points(field, n)
    dots = matmul(field, forms, points.T)
    return [points[np.flatnonzero(dots[i] == 0)] for i in range(forms.shape[0])]


def _normalize_rows(field: Field, rows: np.ndarray) -> list[tuple[int, ...]]:
    out = []
    for row in rows:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            out.append(None)
            continue
        lead = int(row[nz[0]])
        out.append(tuple(field.vmul(row, field._inv(lead)).tolist()))
    return out


def projection_demo(ctx: VeroContext | None = None) -> ProjectionReport:
    """Project ``V_2^3`` over GF(4) from its nucleus point.

    The composite stays injective, sends lines to curves whose spans miss
    the projection centre, yet spans only 8 dimensions projectively.
    """
    if ctx is None:
        ctx = VeroContext(Field(2, 2), 2, 3)
    F = ctx.field
    nucleus = nucleus_bruteforce(ctx)
    if nucleus.dim != 1:
        raise PreconditionFailed(f"nucleus must be a single point, has vector dim {nucleus.dim}")
    if ctx.m != 2:
        raise PreconditionFailed("the line check is written for a projective plane (m = 2)")
    centre = nucleus.basis.data[0]
    j = int(np.flatnonzero(centre)[0])  # RREF: centre[j] == 1
    keep = [c for c in range(ctx.N) if c != j]

    def project(Y: np.ndarray) -> np.ndarray:
        return F.vsub(Y, F.vmul(Y[:, j:j + 1], centre[None, :]))[:, keep]

    points = projective_points(F, ctx.m + 1)
    G = monomial_rows(ctx, points)
    PG = project(G)
    images = _normalize_rows(F, PG)
    distinct = len({im for im in images if im is not None})

    line_dims, projected_dims, skew = [], [], 0
    lines = lines_of(F, ctx.m + 1)
    for pts in lines:
        span = Subspace(F, ctx.N, monomial_rows(ctx, pts))
        line_dims.append(span.projective_dim)
        if intersect(span, nucleus).dim == 0:
            skew += 1
        projected_dims.append(Subspace(F, ctx.N - 1, project(monomial_rows(ctx, pts))).projective_dim)

    variety_dim = Subspace(F, ctx.N, G).projective_dim
    projected_dim = Subspace(F, ctx.N - 1, PG).projective_dim
    report = ProjectionReport(
        field=repr(F), m=ctx.m, t=ctx.t,
        nucleus_tuple=ctx.exponents[j],
        points=len(points), distinct_images=distinct,
        lines=len(lines), line_span_dims=line_dims,
        lines_skew_to_nucleus=skew, projected_line_span_dims=projected_dims,
        variety_span_dim=variety_dim, projected_span_dim=projected_dim,
    )
    report.checks = {
        "injective_on_points": distinct == len(points) and None not in images,
        "line_images_span_3_spaces": set(projected_dims) == {ctx.t},
        "lines_skew_to_nucleus": skew == len(lines),
        "projected_span_is_hyperplane": projected_dim == ctx.N - 2,
    }
    return report


# --- the central cross-check -------------------------------------------------------

@dataclass
class NucleusReport:
    """Formula prediction against brute force for one ``(p, k, m, t)``.

    ``basis_match`` compares the brute-force nucleus with the span of the
    predicted base points: equality when ``q >= t``, containment of the
    predicted span otherwise.
    """

    p: int
    k: int
    q: int
    m: int
    t: int
    predicted_dim: int
    bruteforce_dim: int
    basis_match: bool
    small_field: bool

    @property
    def consistent(self) -> bool:
        if not self.basis_match:
            return False
        if self.small_field:
            return self.bruteforce_dim >= self.predicted_dim
        return self.bruteforce_dim == self.predicted_dim

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "NucleusReport":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})


def verify(p: int, k: int, m: int, t: int, modulus: Sequence[int] | None = None,
           field: Field | None = None) -> NucleusReport:
    """Brute-force nucleus against the closed-form dimension and basis."""
    F = field if field is not None else Field(p, k, modulus)
    ctx = VeroContext(F, m, t)
    brute = nucleus_bruteforce(ctx)
    predicted = nucleus_predicted(ctx)
    small = F.q < t
    if small:
        match = contains_subspace(brute, predicted)
    else:
        match = subspace_equal(brute, predicted)
    return NucleusReport(
        p=F.p, k=F.k, q=F.q, m=m, t=t,
        predicted_dim=mono.nucleus_dim_formula(m, t, F.p),
        bruteforce_dim=brute.projective_dim,
        basis_match=match,
        small_field=small,
    )


def frame_collineation_counts(q: int = 2) -> tuple[int, int]:
    """``(#permutations of the q^2+q+1 points, #PGL(3, q))`` for the plane.

    For ``q = 2`` the Veronese surface is a frame of 7 points, so every
    permutation extends to a collineation of ``P(Y)``: 5040 versus 168.
    """
    n = q * q + q + 1
    pgl = (q**3 - 1) * (q**3 - q) * (q**3 - q * q) // (q - 1)
    return math.factorial(n), pgl
