"""Brute-force reference implementations of the geometric invariants.

Everything here is derived directly from definitions: point sets are
materialized, minima are read off growing balls, the covering radius
is certified by coefficient-pattern coverage at explicit depth.  The
closed-form routines elsewhere must agree exactly; these exist so that
agreement is checkable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded, PrecisionTooCoarse
from .ffcore import LaurentSeries, Poly, QExp, qpow_fraction
from .lattice import ConvexBody, reduce_lattice
from .periodic import (
    AlphaForm,
    PeriodicLattice,
    _ambient_point,
    _tail_pattern,
    fractional_points,
)
from .exactlinalg import rank_rational


def default_budget() -> int:
    raw = os.environ.get("FFLAT_BUDGET")
    if raw is not None:
        return int(raw)
    return 1 << 21


@dataclass
class Window:
    """Enumeration window: ball radius, grid depth, size budget."""

    R: int = 0
    M: int = 8
    budget: int = None

    def __post_init__(self):
        if self.budget is None:
            self.budget = default_budget()


def _exact_coords(coords):
    out = []
    for y in coords:
        if isinstance(y, LaurentSeries):
            out.append(y.to_rat())
        else:
            out.append(y)
    return out


def _poly_upto(field, deg: int):
    """All polynomials of degree <= deg (just zero when deg < 0)."""
    if deg < 0:
        yield Poly.zero(field)
        return
    q = field.q
    for n in range(q ** (deg + 1)):
        coeffs = []
        v = n
        for _ in range(deg + 1):
            coeffs.append(v % q)
            v //= q
        yield Poly(field, tuple(coeffs))


def enumerate_points(S: PeriodicLattice, R: int, C: ConvexBody = None,
                     budget: int = None, coords_only: bool = False):
    """All points of S with norm <= q^R, as ambient vectors.

    Every point splits uniquely as rep + lattice vector; in reduced
    coordinates the two parts occupy disjoint exponent ranges, so the
    point is in the ball iff the rep is and each polynomial coefficient
    a_i has deg a_i <= R - e_i.

    coords_only skips the change of frame and returns reduced-basis
    coordinate vectors; the point set is the same up to that bijection.
    """
    if budget is None:
        budget = default_budget()
    if C is None:
        C = S.base_body()
    field = S.field
    rb = reduce_lattice(S.lattice, C)
    one_ball = QExp(R)
    reps_in = [
        coords for coords, norm in fractional_points(S, C) if norm <= one_ball
    ]
    total = len(reps_in)
    for e in rb.exps:
        total *= field.q ** max(R - e + 1, 0)
    if total > budget:
        raise BudgetExceeded(
            f"window holds {total} points, budget is {budget}"
        )
    shifts = [list(_poly_upto(field, R - e)) for e in rb.exps]
    out = []
    for coords in reps_in:
        coords = _exact_coords(coords)
        stack = [coords]
        for i in range(S.d):
            nxt = []
            for c in stack:
                for a in shifts[i]:
                    cc = list(c)
                    cc[i] = cc[i].add_poly(a)
                    nxt.append(cc)
            stack = nxt
        if coords_only:
            out.extend(stack)
        else:
            out.extend(_ambient_point(rb, c) for c in stack)
    return out


def succmin_oracle(S: PeriodicLattice, C: ConvexBody = None,
                   budget: int = None):
    """Successive minima exponents read off growing balls."""
    if C is None:
        C = S.base_body()
    field = S.field
    rb = reduce_lattice(S.lattice, C)
    lows = [rb.exps[0]]
    for coords, norm in fractional_points(S, C):
        if not norm.is_zero:
            lows.append(norm.exp)
    R = min(lows) - 1
    exps = []
    while len(exps) < S.d:
        # rank is frame-invariant, so reduced coordinates suffice
        pts = enumerate_points(S, R, C, budget=budget, coords_only=True)
        rows = [[v[i] for v in pts] for i in range(S.d)]
        r = rank_rational(rows)
        while len(exps) < r:
            exps.append(R)
        R += 1
    return exps


def covrad_oracle(S: PeriodicLattice, C: ConvexBody = None, M: int = None,
                  budget: int = None) -> QExp:
    """Covering radius by descent over coefficient-pattern coverage.

    The distance from a fundamental-domain point u to S is below q^s
    iff some rep matches u's coordinate tails to depth e_i - s - 1.
    The u-grid realizes every tail pattern, so distance <= q^s holds
    for all u iff the reps realize all q^(sum of depths) patterns.
    The scan descends from s = e_d - 1 (always covered) and stops at
    the first uncovered s; only exponents above e_d - M are certified
    at grid depth M.
    """
    if budget is None:
        budget = default_budget()
    if C is None:
        C = S.base_body()
    field = S.field
    rb = reduce_lattice(S.lattice, C)
    e_d = rb.exps[-1]
    e_1 = rb.exps[0]
    if M is None:
        N = S.form.N if isinstance(S.form, AlphaForm) else S.period_size
        M = N + abs(e_1) + abs(e_d) + 4
    pts = fractional_points(S, C)
    if len(pts) * S.d * M > budget:
        raise BudgetExceeded(
            f"coverage scan needs {len(pts) * S.d * M} pattern entries, "
            f"budget is {budget}"
        )
    s = e_d - 1
    while s >= e_d - M:
        depths = [max(e - s - 1, 0) for e in rb.exps]
        want = 1
        for dep in depths:
            want *= field.q ** dep
        got = set()
        for coords, _norm in pts:
            got.add(tuple(
                _tail_pattern(y, dep) for y, dep in zip(coords, depths)
            ))
            if len(got) == want:
                break
        if len(got) != want:
            return QExp(s + 1)
        s -= 1
    raise PrecisionTooCoarse(
        f"covering radius not separated above exponent {e_d - M}; "
        f"raise the grid depth M={M}"
    )


def density_oracle(S: PeriodicLattice, C: ConvexBody = None, R: int = None,
                   budget: int = None) -> Fraction:
    """Window density of the packing by scaled copies of C.

    The packing body is x^(e_1 - 1) C, the largest scaling with
    disjoint translates; the window count divided by the window volume
    is already stationary once R clears max(e_d, 0) + 1.
    """
    if C is None:
        C = S.base_body()
    field = S.field
    rb_sup = reduce_lattice(S.lattice, S.base_body())
    floor_R = max(rb_sup.exps[-1], 0) + 1
    if R is None:
        R = floor_R
    elif R < floor_R:
        raise ValueError(
            f"window radius {R} below stationarity threshold {floor_R}"
        )
    e1 = succmin_oracle(S, C, budget=budget)[0]
    count = len(enumerate_points(S, R, budget=budget, coords_only=True))
    scale = S.d * (e1 - 1) + C.log_volume.exp - S.d * R
    return Fraction(count) * qpow_fraction(field.q, scale)
