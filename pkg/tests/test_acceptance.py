"""Acceptance gate. Each test carries an ``acceptance`` marker; the conftest
summary prints one PASS/FAIL line per criterion after the run."""

import math
import time

import numpy as np
import pytest

from conftest import all_vectors
from veronuc import mono
from veronuc.exlin import MatrixF, Subspace, contains, intersect, matrix_rank, subspace_equal
from veronuc.gf import Field
from veronuc.vero import (
    VeroContext,
    dual_power_matrix,
    image_span,
    nucleus_bruteforce,
    nucleus_predicted,
    pairing,
    projection_demo,
    projective_points,
    sub_image_span,
    sub_nucleus,
    symmetric_power_map,
    vanishing_form_witness,
    veronese_coords,
)


def grid_cells():
    for p in (2, 3, 5):
        k = 1
        while p**k <= 16:
            for m in (1, 2, 3):
                for t in range(2, 7):
                    if p**k >= t:
                        yield p, k, m, t
            k += 1


GRID = list(grid_cells())


def factorial_oracle(t, e):
    out = math.factorial(t)
    for x in e:
        out //= math.factorial(x)
    return out


def digit_product(m, t, p):
    """Oracle for the span-of-powers rank: product of C(m + t_l, t_l) over base-p digits."""
    out, n = 1, t
    while n:
        out *= math.comb(m + n % p, n % p)
        n //= p
    return out


def units(c, tuples):
    return Subspace.span_units(c.field, c.N, [c.index[e] for e in tuples])


@pytest.mark.acceptance("AC1: brute-force nucleus dimension equals the closed form on the q >= t grid")
def test_ac1_grid_dimension():
    assert len(GRID) == 75
    start = time.perf_counter()
    bad = []
    for p, k, m, t in GRID:
        ctx = VeroContext(Field(p, k), m, t)
        if nucleus_bruteforce(ctx).projective_dim != mono.nucleus_dim_formula(m, t, p):
            bad.append((p, k, m, t))
    elapsed = time.perf_counter() - start
    assert bad == []
    assert elapsed < 60


@pytest.mark.acceptance("AC2: brute-force nucleus equals the span of predicted unit vectors on the grid")
def test_ac2_grid_basis():
    bad = [cell for cell in GRID
           if not subspace_equal(nucleus_bruteforce(c := VeroContext(Field(*cell[:2]), *cell[2:])),
                                 nucleus_predicted(c))]
    assert bad == []


@pytest.mark.acceptance("AC3: Veronese surface over GF(2) has the plane (0,1,1),(1,0,1),(1,1,0) as nucleus")
def test_ac3_surface_gf2():
    c = VeroContext(Field(2), 2, 2)
    N = nucleus_bruteforce(c)
    assert N == units(c, [(0, 1, 1), (1, 0, 1), (1, 1, 0)])
    assert N.projective_dim == 2


@pytest.mark.acceptance("AC4: cubic Veronese surface over GF(4) has nucleus the single point (1,1,1)")
def test_ac4_cubic_surface_gf4():
    c = VeroContext(Field(2, 2), 2, 3)
    N = nucleus_bruteforce(c)
    assert N == units(c, [(1, 1, 1)])
    assert N.projective_dim == 0


@pytest.mark.acceptance("AC5: dual-power matrix rank equals the base-p digit product on the grid")
def test_ac5_dual_power_rank():
    bad = []
    for p, k, m, t in GRID:
        c = VeroContext(Field(p, k), m, t)
        if matrix_rank(dual_power_matrix(c)) != digit_product(m, t, p):
            bad.append((p, k, m, t))
    assert bad == []


@pytest.mark.acceptance("AC6: image span is full iff q >= t or m = 0, with the GF(2) twisted-cubic witness")
def test_ac6_image_span_dichotomy():
    for p, k in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)]:
        F = Field(p, k)
        for m in range(0, 3):
            for t in range(1, 7):
                if F.q >= t or m == 0:
                    c = VeroContext(F, m, t)
                    assert image_span(c).dim == math.comb(m + t, t)
    F = Field(2)
    c = VeroContext(F, 1, 3)
    assert image_span(c).dim == 3 < 4
    r = vanishing_form_witness(c)
    assert any(r)
    for x in all_vectors(F, 2):
        assert pairing(c, r, veronese_coords(c, x)) == F.zero


@pytest.mark.acceptance("AC7: 10,000 random Lucas cases agree with the big-integer oracle in under 5 s")
def test_ac7_lucas_randomized():
    rng = np.random.default_rng(2024)
    cases = []
    for _ in range(10_000):
        m = int(rng.integers(0, 7))
        t = int(rng.integers(0, 301))
        p = int(rng.choice([2, 3, 5, 7]))
        cuts = np.sort(rng.integers(0, t + 1, size=m))
        e = tuple(int(b - a) for a, b in zip(np.r_[0, cuts], np.r_[cuts, t]))
        cases.append((t, e, p))
    start = time.perf_counter()
    residues = [mono.multinomial_mod_p(t, e, p) for t, e, p in cases]
    elapsed = time.perf_counter() - start
    mismatches = sum(r != factorial_oracle(t, e) % p for r, (t, e, p) in zip(residues, cases))
    assert mismatches == 0
    assert elapsed < 5


@pytest.mark.acceptance("AC8: empty-nucleus classification agrees with the closed form, zero mismatches")
def test_ac8_classification():
    mismatches = []
    for p in (2, 3, 5):
        for m in range(1, 7):
            for t in range(2, p**3 + 1):
                empty = mono.classify_empty(m, t, p) is not mono.EmptyCase.NON_EMPTY
                if empty != (mono.nucleus_dim_formula(m, t, p) == -1):
                    mismatches.append((p, m, t))
    assert mismatches == []


@pytest.mark.acceptance("AC9: sub-variety nucleus of the GF(2) surface is (1,1,0); triangle plane is skew")
def test_ac9_sub_nucleus():
    c = VeroContext(Field(2), 2, 2)
    N = nucleus_bruteforce(c)
    Nr = sub_nucleus(c, 1)
    assert Nr == units(c, [(1, 1, 0)])
    assert Nr.projective_dim == 0
    assert Nr == intersect(N, sub_image_span(c, 1))
    triangle = units(c, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert intersect(triangle, N).dim == 0


@pytest.mark.acceptance("AC10: induced maps over GF(3) are equivariant on 13 points and functorial")
def test_ac10_equivariance():
    F = Field(3)
    c = VeroContext(F, 2, 2)
    pts = projective_points(F, 3)
    assert len(pts) == 13
    rng = np.random.default_rng(10)

    def random_invertible():
        while True:
            f = MatrixF(F, rng.integers(0, 3, size=(3, 3)))
            if matrix_rank(f) == 3:
                return f

    for _ in range(100):
        f = random_invertible()
        S = symmetric_power_map(c, f)
        for x in pts:
            assert S.apply(veronese_coords(c, x)) == veronese_coords(c, f.apply(x))
    for _ in range(100):
        f, g = random_invertible(), random_invertible()
        assert symmetric_power_map(c, f @ g) == symmetric_power_map(c, f) @ symmetric_power_map(c, g)


@pytest.mark.acceptance("AC11: projecting the GF(4) cubic surface from its nucleus is injective into a hyperplane")
def test_ac11_projection():
    report = projection_demo()
    assert report.points == 21 and report.distinct_images == 21
    assert report.lines_skew_to_nucleus == report.lines == 21
    assert report.projected_span_dim == 8
    # independent recomputation: the nucleus is a unit vector, so projecting
    # from it deletes that coordinate
    F = Field(2, 2)
    c = VeroContext(F, 2, 3)
    N = nucleus_bruteforce(c)
    drop = c.index[(1, 1, 1)]
    keep = [i for i in range(c.N) if i != drop]
    images = []
    for x in projective_points(F, 3):
        y = np.array([v.value for v in veronese_coords(c, x)])[keep]
        lead = int(y[np.flatnonzero(y)[0]])
        images.append(tuple(F.vmul(y, F._inv(lead))))
    assert len(set(images)) == 21
    assert matrix_rank(MatrixF(F, np.array(images))) - 1 == 8
    for a in projective_points(F, 3):
        line_pts = [x for x in projective_points(F, 3) if not F.vsum(F.vmul(a, x)).any()]
        span = Subspace.from_vectors(F, c.N, [veronese_coords(c, x) for x in line_pts])
        assert intersect(span, N).dim == 0
        assert not contains(span, N.vectors()[0])


@pytest.mark.acceptance("AC12: for q < t the brute-force nucleus dimension is at least the formula value")
def test_ac12_small_field_lower_bound():
    checked = 0
    for p in (2, 3):
        for k in (1, 2):
            F = Field(p, k)
            for m in (1, 2):
                for t in range(F.q + 1, F.q + 4):
                    c = VeroContext(F, m, t)
                    assert nucleus_bruteforce(c).projective_dim >= mono.nucleus_dim_formula(m, t, p)
                    checked += 1
    assert checked == 24
