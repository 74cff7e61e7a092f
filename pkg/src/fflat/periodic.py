"""Periodic lattices: finitely many cosets of a lattice forming an
F_q-subspace of K_inf^d.

Two construction forms.  AlphaForm is the bounded-denominator family
built from a direction vector alpha and a degree bound N: the union of
Q*alpha + Lambda over polynomials Q with deg Q <= N.  CosetForm lists
fractional coset representatives directly.

All fractional data lives in reduced-basis coordinates.  The canonical
frame is the reduced basis for the sup-norm body; operations taking a
different body convert coordinates by exact linear algebra and reduce
into that body's fundamental domain, which does not change the point
set modulo Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import (
    CapExceeded,
    InsufficientPrecision,
    NRational,
    UndefinedValue,
)
from .exactlinalg import det_rat, det_series, rank_fq, rank_rational
from .ffcore import (
    GF,
    LaurentSeries,
    Poly,
    QEXP_ZERO,
    QExp,
    Rat,
    expand_rational,
    parse_element,
    poly_lcm,
    qpow_fraction,
)
from .lattice import ConvexBody, Lattice, ReducedBasis, reduce_lattice

DEFAULT_ORBIT_CAP = 1 << 20


# --- forms and the periodic lattice type ----------------------------------


class AlphaForm:
    """S = union of Q*alpha + Lambda over deg Q <= N.

    phi holds the fractional reduced-basis coordinates of alpha in the
    canonical (sup-norm) frame.  irr_verified records whether the
    N-irrationality certificate was produced at construction.
    """

    __slots__ = ("phi", "N", "irr_verified")

    def __init__(self, phi, N: int, irr_verified: bool):
        self.phi = phi
        self.N = N
        self.irr_verified = irr_verified


class CosetForm:
    """S = Lambda + F_q-span of the listed fractional representatives."""

    __slots__ = ("reps",)

    def __init__(self, reps):
        self.reps = reps


class PeriodicLattice:
    __slots__ = ("lattice", "form", "period_size", "_coord_cache", "_points_cache")

    def __init__(self, lattice: Lattice, form, period_size: int):
        self.lattice = lattice
        self.form = form
        self.period_size = period_size
        self._coord_cache = {}
        self._points_cache = {}

    @property
    def field(self) -> GF:
        return self.lattice.field

    @property
    def d(self) -> int:
        return self.lattice.d

    def base_body(self) -> ConvexBody:
        return ConvexBody.identity(self.field, self.d)


# --- coordinate plumbing ---------------------------------------------------


def _poly_range(field: GF, N: int):
    """All polynomials of degree <= N, ascending base-q counting order."""
    q = field.q
    total = q ** (N + 1)
    for n in range(total):
        coeffs = []
        v = n
        for _ in range(N + 1):
            coeffs.append(v % q)
            v //= q
        yield Poly(field, tuple(coeffs))


def _frac_of(y):
    # Rat and LaurentSeries both expose frac_part
    return y.frac_part()


def _is_exact_zero_coord(y) -> bool:
    if isinstance(y, LaurentSeries):
        return y.is_exact_zero
    return y.is_zero


def _coord_key(y):
    if isinstance(y, LaurentSeries):
        return ("s", y.coeffs, y.floor, y.exact)
    return ("r", y.num.coeffs, y.den.coeffs)


def _frac_norm(exps, coords) -> QExp:
    """max_i |y_i| q^(e_i) with sound truncation handling."""
    best = None
    pending = []
    for e_i, y in zip(exps, coords):
        if isinstance(y, LaurentSeries):
            if y.is_exact_zero:
                continue
            if y.coeffs:
                c = y.top + e_i
                if best is None or c > best:
                    best = c
            else:
                pending.append((y.floor - 1) + e_i)
        else:
            v = y.val()
            if v.is_zero:
                continue
            c = v.exp + e_i
            if best is None or c > best:
                best = c
    if best is not None and all(best >= b for b in pending):
        return QExp(best)
    if not pending:
        return QEXP_ZERO
    raise InsufficientPrecision(
        "coordinate norm undecidable at the stored precision floor",
        needed_floor=min(b - max(exps) for b in pending) - 1,
    )


def _tail_pattern(y, depth: int):
    """Coefficients of x^-1 .. x^-depth of the fractional part of y."""
    if depth <= 0:
        return ()
    if isinstance(y, LaurentSeries):
        if not y.exact and y.eff_floor() > -depth:
            raise InsufficientPrecision(
                f"pattern needs coefficients down to x^-{depth}",
                needed_floor=-depth,
            )
        s = y
    else:
        s = expand_rational(y, -depth)
    return tuple(s.coeff_exp(-t) for t in range(1, depth + 1))


def _convert_coords(S: PeriodicLattice, rb: ReducedBasis, coords):
    """Canonical-frame fractional coords -> rb-frame fractional coords."""
    rb0 = reduce_lattice(S.lattice, S.base_body())
    if rb is rb0 or rb.body.cache_key() == rb0.body.cache_key():
        return list(coords)
    if any(isinstance(y, LaurentSeries) for y in coords):
        sc = []
        floors = [
            y.eff_floor() for y in coords
            if isinstance(y, LaurentSeries) and not y.exact
        ]
        deep = (min(floors) if floors else 0) - 4 * S.d - 8
        for y in coords:
            if isinstance(y, LaurentSeries):
                sc.append(y)
            elif y.den.degree == 0:
                sc.append(LaurentSeries.from_poly(y.num))
            else:
                sc.append(expand_rational(y, deep))
        amb = _ambient_series(rb0, sc)
        out = rb.coords_from_ambient_series(amb)
    else:
        amb = rb0.ambient_from_coords(coords)
        out = rb.coords_from_ambient_rat(amb)
    return [_frac_of(y) for y in out]


def _ambient_series(rb: ReducedBasis, coords):
    field = rb.lattice.field
    out = []
    for i in range(rb.d):
        acc = LaurentSeries.exact_zero(field)
        for j in range(rb.d):
            acc = acc + coords[j].mul_poly(rb.VP[i][j])
        out.append(acc.mul_xpow(-rb.ashift))
    return out


def _ambient_point(rb: ReducedBasis, coords):
    if any(isinstance(y, LaurentSeries) for y in coords):
        return _ambient_series(rb, coords)
    return rb.ambient_from_coords(coords)


def _alpha_coords(S: PeriodicLattice, rb: ReducedBasis):
    key = ("alpha", rb.body.cache_key())
    hit = S._coord_cache.get(key)
    if hit is None:
        hit = _convert_coords(S, rb, S.form.phi)
        S._coord_cache[key] = hit
    return hit


def _rep_coords(S: PeriodicLattice, rb: ReducedBasis):
    key = ("reps", rb.body.cache_key())
    hit = S._coord_cache.get(key)
    if hit is None:
        hit = [_convert_coords(S, rb, r) for r in S.form.reps]
        S._coord_cache[key] = hit
    return hit


# --- construction ----------------------------------------------------------


def _coords_from_input(lat: Lattice, rb0: ReducedBasis, alpha, frame: str):
    field = lat.field
    vals = []
    for a in alpha:
        if isinstance(a, (Rat, LaurentSeries)):
            vals.append(a)
        elif isinstance(a, Poly):
            vals.append(Rat.from_poly(a))
        elif isinstance(a, int):
            vals.append(Rat.from_poly(Poly.const(field, field.from_int(a))))
        elif isinstance(a, str):
            vals.append(parse_element(field, a))
        else:
            raise TypeError(f"unsupported coordinate type {type(a).__name__}")
    if len(vals) != lat.d:
        raise ValueError(f"expected {lat.d} coordinates, got {len(vals)}")
    if frame == "reduced":
        return vals
    if frame != "ambient":
        raise ValueError("frame must be 'ambient' or 'reduced'")
    if any(isinstance(v, LaurentSeries) for v in vals):
        floors = [
            v.eff_floor() for v in vals
            if isinstance(v, LaurentSeries) and not v.exact
        ]
        deep = (min(floors) if floors else 0) - 4 * lat.d - 8
        sc = []
        for v in vals:
            if isinstance(v, LaurentSeries):
                sc.append(v)
            elif v.den.degree == 0:
                sc.append(LaurentSeries.from_poly(v.num))
            else:
                sc.append(expand_rational(v, deep))
        return rb0.coords_from_ambient_series(sc)
    return rb0.coords_from_ambient_rat(vals)


def make_alpha_lattice(
    lat: Lattice,
    alpha,
    N: int,
    frame: str = "reduced",
    cap: int = DEFAULT_ORBIT_CAP,
    require_irrational: bool = True,
) -> PeriodicLattice:
    """Build Lambda(alpha, q^N), verifying N-irrationality.

    alpha is reduced modulo Lambda into the fundamental domain, which
    leaves the point set unchanged.  For rational coordinates the
    N-irrationality test is exact: alpha is N-rational iff the lcm of
    the reduced-coordinate denominators has degree <= N, and that lcm
    is returned as the witness.  For truncated coordinates every
    nonzero Q with deg Q <= N must produce a representative with a
    certified nonzero coefficient.

    require_irrational=False admits N-rational rational alpha (for
    degenerate cases such as alpha = 0); the period size is then the
    exact log-count of distinct representatives.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    field = lat.field
    if field.q ** (N + 1) > cap:
        raise CapExceeded(f"orbit size q^{N + 1} exceeds cap {cap}")
    rb0 = reduce_lattice(lat, ConvexBody.identity(field, lat.d))
    coords = _coords_from_input(lat, rb0, alpha, frame)
    phi = [_frac_of(y) for y in coords]
    if all(not isinstance(y, LaurentSeries) for y in phi):
        lcm = Poly.one(field)
        for y in phi:
            lcm = poly_lcm(lcm, y.den)
        if lcm.degree <= N:
            if require_irrational:
                raise NRational(
                    f"alpha is N-rational for N={N}: witness degree {lcm.degree}",
                    witness=lcm,
                )
            seen = set()
            for Q in _poly_range(field, N):
                key = tuple(_coord_key(_frac_of(y.mul_poly(Q))) for y in phi)
                seen.add(key)
            count = len(seen)
            size = 0
            while field.q ** size < count:
                size += 1
            if field.q ** size != count:
                raise UndefinedValue("orbit size is not a power of q")
            form = AlphaForm(phi, N, irr_verified=False)
            return PeriodicLattice(lat, form, size)
    else:
        for Q in _poly_range(field, N):
            if Q.is_zero:
                continue
            reps = [_frac_of(_mul_coord(y, Q)) for y in phi]
            decided_nonzero = False
            undecided = None
            for r in reps:
                if isinstance(r, LaurentSeries):
                    if r.coeffs:
                        decided_nonzero = True
                        break
                    if not r.exact:
                        undecided = r.floor
                elif not r.is_zero:
                    decided_nonzero = True
                    break
            if not decided_nonzero:
                if undecided is not None:
                    raise InsufficientPrecision(
                        "cannot certify N-irrationality: representative of "
                        f"Q={Q.coeffs} has no known nonzero coefficient",
                        needed_floor=undecided - 1,
                    )
                raise NRational(
                    f"alpha is N-rational for N={N}", witness=Q
                )
    form = AlphaForm(phi, N, irr_verified=True)
    return PeriodicLattice(lat, form, N + 1)


def _mul_coord(y, Q: Poly):
    return y.mul_poly(Q)


def make_coset_lattice(lat: Lattice, reps) -> PeriodicLattice:
    """Build Lambda + span of fractional representatives.

    reps are given in canonical reduced-basis coordinates, entries with
    negative valuation only.  F_q-independence (as coefficient vectors
    modulo Lambda) is certified exactly for rational entries and at the
    common precision floor for truncated ones.
    """
    field = lat.field
    rb0 = reduce_lattice(lat, ConvexBody.identity(field, lat.d))
    parsed = []
    for rep in reps:
        coords = _coords_from_input(lat, rb0, rep, "reduced")
        for y in coords:
            if isinstance(y, LaurentSeries):
                bad = bool(y.coeffs) and y.top >= 0
            else:
                bad = not y.poly_part().is_zero
            if bad:
                raise ValueError(
                    "coset representative coordinates must lie in the "
                    "fundamental domain (negative exponents only)"
                )
        parsed.append(coords)
    n = len(parsed)
    if n > 0:
        _certify_fq_independent(field, lat.d, parsed)
    return PeriodicLattice(lat, CosetForm(parsed), n)


def _certify_fq_independent(field: GF, d: int, reps):
    """Reps must be F_q-independent as coefficient vectors."""
    floors = []
    for rep in reps:
        for y in rep:
            if isinstance(y, LaurentSeries):
                if not y.exact:
                    floors.append(y.eff_floor())
    if floors:
        window = -min(floors)
    else:
        # exact data: a window below every denominator degree is enough
        # to separate distinct rational tails is NOT guaranteed; use
        # exact polynomial linear algebra instead
        window = None
    if window is None:
        # per coordinate: clear by the lcm of that coordinate's
        # denominators across reps, then compare numerator coefficient
        # vectors over F_q
        rat_reps = [
            [y.to_rat() if isinstance(y, LaurentSeries) else y for y in rep]
            for rep in reps
        ]
        mats = []
        for i in range(d):
            lcm = Poly.one(field)
            for rep in rat_reps:
                lcm = poly_lcm(lcm, rep[i].den)
            col = []
            for rep in rat_reps:
                y = rep[i]
                p = y.num * (lcm // y.den)
                col.append(p)
            width = max((p.degree for p in col), default=-1) + 1
            mats.append([
                tuple(p.coeff(k) for k in range(width)) for p in col
            ])
        fq_rows = [
            [c for i in range(d) for c in mats[i][j]]
            for j in range(len(reps))
        ]
        if rank_fq(field, fq_rows) != len(reps):
            raise ValueError(
                "coset representatives are F_q-linearly dependent"
            )
        return
    fq_rows = []
    for rep in reps:
        row = []
        for y in rep:
            row.extend(_tail_pattern(y, window))
        fq_rows.append(row)
    if rank_fq(field, fq_rows) != len(reps):
        raise InsufficientPrecision(
            "coset representatives are not certified independent at the "
            f"common floor x^{-window}",
            needed_floor=-window - 1,
        )


def from_lattice(lat: Lattice) -> PeriodicLattice:
    """The lattice itself as a periodic lattice with trivial cosets."""
    return PeriodicLattice(lat, CosetForm([]), 0)


# --- fractional point sets --------------------------------------------------


def frac_orbit(S: PeriodicLattice, C: ConvexBody = None, cap: int = DEFAULT_ORBIT_CAP):
    """(Q, coords, norm) for every Q with deg Q <= N; coords in the
    rb-frame of C, norm = max_i |coord_i| q^(e_i)."""
    if not isinstance(S.form, AlphaForm):
        raise TypeError("frac_orbit requires an AlphaForm periodic lattice")
    if C is None:
        C = S.base_body()
    field = S.field
    N = S.form.N
    if field.q ** (N + 1) > cap:
        raise CapExceeded(f"orbit size q^{N + 1} exceeds cap {cap}")
    rb = reduce_lattice(S.lattice, C)
    phi = _alpha_coords(S, rb)
    out = []
    for Q in _poly_range(field, N):
        coords = [_frac_of(_mul_coord(y, Q)) for y in phi]
        out.append((Q, coords, _frac_norm(rb.exps, coords)))
    return out


def fractional_points(S: PeriodicLattice, C: ConvexBody = None):
    """All points of the fundamental domain intersected with S, as
    rb-frame coordinate vectors with norms; exactly q^period_size."""
    if C is None:
        C = S.base_body()
    key = C.cache_key()
    hit = S._points_cache.get(key)
    if hit is not None:
        return hit
    field = S.field
    rb = reduce_lattice(S.lattice, C)
    pts = []
    if isinstance(S.form, AlphaForm):
        orbit = frac_orbit(S, C)
        if S.form.irr_verified:
            pts = [(coords, norm) for (_q, coords, norm) in orbit]
        else:
            seen = {}
            for _q, coords, norm in orbit:
                k = tuple(_coord_key(y) for y in coords)
                if k not in seen:
                    seen[k] = (coords, norm)
            pts = list(seen.values())
    else:
        reps = _rep_coords(S, rb)
        zero = [Rat.from_poly(Poly.zero(field)) for _ in range(S.d)]
        for combo in product(range(field.q), repeat=len(reps)):
            coords = list(zero)
            for k, a in enumerate(combo):
                if a == 0:
                    continue
                for i in range(S.d):
                    coords[i] = _add_coord(coords[i], _scale_coord(reps[k][i], a, field))
            coords = [_frac_of(y) for y in coords]
            pts.append((coords, _frac_norm(rb.exps, coords)))
    if len(pts) != field.q ** S.period_size:
        raise UndefinedValue(
            f"expected q^{S.period_size} fundamental-domain points, got {len(pts)}"
        )
    S._points_cache[key] = pts
    return pts


def _scale_coord(y, a: int, field: GF):
    if a == 1:
        return y
    if isinstance(y, LaurentSeries):
        return y.scale(a)
    c = Poly.const(field, a)
    return y.mul_poly(c)


def _add_coord(u, v):
    if isinstance(u, LaurentSeries) or isinstance(v, LaurentSeries):
        if not isinstance(u, LaurentSeries):
            u = _rat_as_series(u)
        if not isinstance(v, LaurentSeries):
            v = _rat_as_series(v)
    return u + v


def _rat_as_series(r: Rat) -> LaurentSeries:
    if r.den.degree == 0:
        return LaurentSeries.from_poly(r.num)
    raise TypeError("mixing truncated series with non-polynomial rationals")


# --- geometric invariants ---------------------------------------------------


def _unit_coords(field: GF, d: int, i: int):
    one = Rat.from_poly(Poly.one(field))
    zero = Rat.from_poly(Poly.zero(field))
    return [one if j == i else zero for j in range(d)]


def _rank_would_increase(field: GF, chosen, cand, d: int) -> bool:
    """Does cand leave the K_inf-span of chosen columns?"""
    cols = chosen + [cand]
    k = len(cols)
    if any(isinstance(y, LaurentSeries) for col in cols for y in col):
        floors = [
            y.eff_floor()
            for col in cols
            for y in col
            if isinstance(y, LaurentSeries) and not y.exact
        ]
        deep = (min(floors) if floors else 0) - 4 * d - 8
        scols = []
        for col in cols:
            sc = []
            for y in col:
                if isinstance(y, LaurentSeries):
                    sc.append(y)
                elif y.den.degree == 0:
                    sc.append(LaurentSeries.from_poly(y.num))
                else:
                    sc.append(expand_rational(y, deep))
            scols.append(sc)
        all_exact_zero = True
        undecided_floor = None
        for rows in combinations(range(d), k):
            minor = [[scols[j][i] for j in range(k)] for i in rows]
            det = det_series(minor)
            if det.coeffs:
                return True
            if not det.is_exact_zero:
                all_exact_zero = False
                f = det.floor
                if undecided_floor is None or f > undecided_floor:
                    undecided_floor = f
        if all_exact_zero:
            return False
        raise InsufficientPrecision(
            "linear independence undecidable at the stored precision",
            needed_floor=(undecided_floor or 0) - 1,
        )
    rows = [[cols[j][i] for j in range(k)] for i in range(d)]
    return rank_rational(rows) == k


def succ_minima_periodic(S: PeriodicLattice, C: ConvexBody = None):
    """Successive minima exponents of S for C, with witness vectors.

    Candidates are the nonzero fundamental-domain points and the
    reduced basis vectors: by the ultrametric splitting of f + w into
    its fractional and lattice parts, every ball's span is generated by
    those.  Greedy by ascending norm, keeping candidates that enlarge
    the span.
    """
    if C is None:
        C = S.base_body()
    field = S.field
    rb = reduce_lattice(S.lattice, C)
    cands = []
    for idx, (coords, norm) in enumerate(fractional_points(S, C)):
        if norm.is_zero:
            continue
        cands.append((norm, 0, idx, coords))
    for i in range(S.d):
        cands.append((QExp(rb.exps[i]), 1, i, _unit_coords(field, S.d, i)))
    cands.sort(key=lambda t: (t[0], t[1], t[2]))
    exps = []
    chosen = []
    witnesses = []
    for norm, _kind, _idx, coords in cands:
        if len(chosen) == S.d:
            break
        if _rank_would_increase(field, chosen, coords, S.d):
            chosen.append(coords)
            exps.append(norm.exp)
            witnesses.append(_ambient_point(rb, coords))
    if len(exps) != S.d:
        raise UndefinedValue("could not find d independent points")
    return exps, witnesses


def packing_radius(S: PeriodicLattice, C: ConvexBody = None) -> QExp:
    """Largest r with disjoint rC-translates around S: q^(e_1 - 1)."""
    exps, _w = succ_minima_periodic(S, C)
    return QExp(exps[0] - 1)


def packing_density(S: PeriodicLattice, C: ConvexBody = None) -> Fraction:
    """Density of the packing by packing-radius copies of C."""
    if C is None:
        C = S.base_body()
    exps, _w = succ_minima_periodic(S, C)
    e1 = exps[0]
    exp = S.period_size + S.d * e1 + C.log_volume.exp - S.lattice.log_det
    return qpow_fraction(S.field.q, exp)


def count_points(S: PeriodicLattice, C: ConvexBody = None, radius: int = None) -> int:
    """|C intersect S| (or a sup-norm ball of radius q^radius).

    Splitting across the fundamental domain: a point f + w lies in C
    iff both parts do, and the lattice part count factors through the
    reduced basis as prod_i q^max(1 - e_i, 0).
    """
    if radius is not None:
        if C is not None:
            raise ValueError("give either a body or a radius, not both")
        C = ConvexBody.ball(S.field, S.d, radius)
    elif C is None:
        C = S.base_body()
    rb = reduce_lattice(S.lattice, C)
    one = QExp(0)
    inside = sum(1 for (_c, norm) in fractional_points(S, C) if norm <= one)
    total = inside
    for e in rb.exps:
        total *= S.field.q ** max(1 - e, 0)
    return total


@dataclass
class MinkowskiReport:
    status: str                # "point" | "inapplicable" | "no_point"
    measure_exp: int           # log_q m(C + fundamental-domain points)
    threshold_exp: int         # log_q (det(Lambda) / q^(period_size + d))
    classes_log: int
    point: list = None
    point_norm: QExp = None
    point_source: str = None

    def as_dict(self):
        return {
            "status": self.status,
            "measure_exp": self.measure_exp,
            "threshold_exp": self.threshold_exp,
            "classes_log": self.classes_log,
            "point_source": self.point_source,
        }


def minkowski_search(S: PeriodicLattice, C: ConvexBody = None) -> MinkowskiReport:
    """Exact convex-body test: measure the thickened body and search.

    m(C + D cap S) = m(C) * #classes of fundamental-domain points
    modulo the group C, computed from coefficient patterns at depth
    max(e_i - 1, 0) per coordinate.  When the measure exceeds
    det(Lambda)/q^(period_size + d), search for a nonzero point of S in
    C; the search over nonzero fundamental-domain points plus the first
    reduced vector is exhaustive by the ultrametric splitting, so a
    no_point outcome is a certified counterexample to the measure
    hypothesis guaranteeing a point.
    """
    if C is None:
        C = S.base_body()
    rb = reduce_lattice(S.lattice, C)
    pts = fractional_points(S, C)
    depths = [max(e - 1, 0) for e in rb.exps]
    classes = set()
    for coords, _norm in pts:
        classes.add(tuple(_tail_pattern(y, dep) for y, dep in zip(coords, depths)))
    ncl = len(classes)
    classes_log = 0
    while S.field.q ** classes_log < ncl:
        classes_log += 1
    if S.field.q ** classes_log != ncl:
        raise UndefinedValue("class count is not a power of q")
    measure_exp = C.log_volume.exp + classes_log
    threshold_exp = S.lattice.log_det - S.period_size - S.d
    if not measure_exp > threshold_exp:
        return MinkowskiReport("inapplicable", measure_exp, threshold_exp, classes_log)
    one = QExp(0)
    for coords, norm in pts:
        if not norm.is_zero and norm <= one:
            rep = MinkowskiReport("point", measure_exp, threshold_exp, classes_log)
            rep.point = _ambient_point(rb, coords)
            rep.point_norm = norm
            rep.point_source = "fractional"
            return rep
    if rb.exps[0] <= 0:
        coords = _unit_coords(S.field, S.d, 0)
        rep = MinkowskiReport("point", measure_exp, threshold_exp, classes_log)
        rep.point = _ambient_point(rb, coords)
        rep.point_norm = QExp(rb.exps[0])
        rep.point_source = "basis"
        return rep
    return MinkowskiReport("no_point", measure_exp, threshold_exp, classes_log)


def d_invariant(S: PeriodicLattice, C: ConvexBody = None, max_d: int = 3, max_N: int = 2) -> QExp:
    """Smallest nonzero |det| over square systems of representative
    fractional coordinates; brute force over k, index subsets and
    k-subsets of the polynomials of degree <= N."""
    if not isinstance(S.form, AlphaForm):
        raise TypeError("d_invariant requires an AlphaForm periodic lattice")
    if C is None:
        C = S.base_body()
    if S.d > max_d or S.form.N > max_N:
        raise CapExceeded(
            f"d_invariant brute force is limited to d <= {max_d}, N <= {max_N}"
        )
    field = S.field
    rb = reduce_lattice(S.lattice, C)
    phi = _alpha_coords(S, rb)
    truncated = any(isinstance(y, LaurentSeries) for y in phi)
    if truncated:
        floors = [
            y.eff_floor() for y in phi
            if isinstance(y, LaurentSeries) and not y.exact
        ]
        deep = (min(floors) if floors else 0) - 4 * S.d - 8
        sphi = []
        for y in phi:
            if isinstance(y, LaurentSeries):
                sphi.append(y)
            elif y.den.degree == 0:
                sphi.append(LaurentSeries.from_poly(y.num))
            else:
                sphi.append(expand_rational(y, deep))
        phi = sphi
    qs = [Q for Q in _poly_range(field, S.form.N) if not Q.is_zero]
    best = None
    undecided = False
    for k in range(1, S.d + 1):
        for subset in combinations(range(S.d), k):
            cols = [phi[j] for j in subset]
            for qtuple in combinations(qs, k):
                if truncated:
                    minor = [
                        [y.mul_poly(Q).frac_part() for y in cols]
                        for Q in qtuple
                    ]
                    det = det_series(minor)
                    if det.coeffs:
                        v = QExp(det.top)
                    elif det.is_exact_zero:
                        continue
                    else:
                        undecided = True
                        continue
                else:
                    minor = [
                        [_frac_of(y.mul_poly(Q)) for y in cols] for Q in qtuple
                    ]
                    det = det_rat(minor)
                    v = det.val()
                    if v.is_zero:
                        continue
                if best is None or v < best:
                    best = v
    if best is None:
        if undecided:
            raise InsufficientPrecision(
                "all candidate determinants are undecided at the stored floor"
            )
        raise UndefinedValue("no nonzero determinant at any order")
    if undecided:
        # an undecided determinant might be nonzero and smaller
        raise InsufficientPrecision(
            "a candidate determinant is undecided at the stored floor; "
            f"certified minimum so far is q^{best.exp}"
        )
    return best


@dataclass
class BoundsReport:
    exps: list
    logdet: int
    logm: int
    period_size: int
    bnd_first_lhs: int
    bnd_rhs: int
    bnd_first_ok: bool
    bnd_prod_lhs: int
    bnd_prod_ok: bool
    sandwich_checked: bool = False
    dinv_exp: int = None
    sandwich_lower_ok: bool = None
    sandwich_upper_ok: bool = None

    @property
    def passed(self) -> bool:
        ok = self.bnd_first_ok and self.bnd_prod_ok
        if self.sandwich_checked:
            ok = ok and self.sandwich_lower_ok and self.sandwich_upper_ok
        return ok

    def as_dict(self):
        out = {
            "exps": list(self.exps),
            "logdet": self.logdet,
            "logm": self.logm,
            "period_size": self.period_size,
            "first_minimum_bound": {
                "lhs_exp": self.bnd_first_lhs,
                "rhs_exp": self.bnd_rhs,
                "ok": self.bnd_first_ok,
            },
            "product_bound": {
                "lhs_exp": self.bnd_prod_lhs,
                "rhs_exp": self.bnd_rhs,
                "ok": self.bnd_prod_ok,
            },
            "sandwich_checked": self.sandwich_checked,
        }
        if self.sandwich_checked:
            out["sandwich"] = {
                "dinv_exp": self.dinv_exp,
                "lower_ok": self.sandwich_lower_ok,
                "upper_ok": self.sandwich_upper_ok,
            }
        return out


def check_bounds(S: PeriodicLattice, C: ConvexBody = None) -> BoundsReport:
    """Evaluate the minima bounds, and when the hypothesis is certified
    (rational fractional coordinates with denominator degree > N in the
    frame of C) also the two-sided product sandwich."""
    if C is None:
        C = S.base_body()
    exps, _w = succ_minima_periodic(S, C)
    logdet = S.lattice.log_det
    logm = C.log_volume.exp
    rhs = logdet - logm - S.period_size
    first_lhs = S.d * exps[0]
    prod_lhs = sum(exps)
    report = BoundsReport(
        exps=exps,
        logdet=logdet,
        logm=logm,
        period_size=S.period_size,
        bnd_first_lhs=first_lhs,
        bnd_rhs=rhs,
        bnd_first_ok=first_lhs <= rhs,
        bnd_prod_lhs=prod_lhs,
        bnd_prod_ok=prod_lhs <= rhs,
    )
    if isinstance(S.form, AlphaForm) and S.form.irr_verified:
        rb = reduce_lattice(S.lattice, C)
        phi = _alpha_coords(S, rb)
        hyp = all(
            (not isinstance(y, LaurentSeries)) and y.den.degree > S.form.N
            for y in phi
        )
        if hyp:
            dinv = d_invariant(S, C)
            report.sandwich_checked = True
            report.dinv_exp = dinv.exp
            report.sandwich_lower_ok = dinv.exp + logdet - logm <= prod_lhs
            report.sandwich_upper_ok = prod_lhs <= logdet - (S.form.N + 1) - logm
    return report
