"""Per-degree constraint systems for scaled derivations and their solutions.

A graded linear map of degree ``a`` sends the basis line at ``x`` to the
line at ``a + x``; its coefficient table is the unknown vector. For each
window pair (x, y) with x, y and x + y inside the box, the defining
relation of a delta-derivation is one homogeneous linear row (a block of
rows for the generalized Witt family, whose per-index unknown is a full
dim V x dim V matrix). Solving the assembled system exactly and comparing
the solution space against the predicted spanning maps, degree by degree,
is the computational heart of the workbench.

Boundary indices of the box see fewer constraint pairs than interior
ones, so the raw solution space picks up spurious boundary-supported
vectors. All dimension comparisons therefore happen after restricting
tables to the window's inner box.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactlin
from .exactlin import NullspaceBasis, SparseMatrix, in_span
from .lattice import Window, add, box_points, zero

__all__ = [
    "CompareReport",
    "DegreeResult",
    "HalfDerivationComponent",
    "HalfDerivationSystem",
    "MissingDegreeError",
    "PredictedBasis",
    "SweepReport",
    "WindowTooSmallError",
    "assemble",
    "compare",
    "predicted",
    "solve",
    "sweep",
]

HALF = Fraction(1, 2)


class WindowTooSmallError(Exception):
    """The window admits no constraint pairs at all."""


class MissingDegreeError(Exception):
    """A per-degree family lacks a degree required by the window."""


@dataclass(frozen=True)
class HalfDerivationComponent:
    """Coefficient table of one graded component.

    ``table`` maps a box index x to the coefficient of the image at
    degree + x: a scalar for the scalar families, a dim V x dim V matrix
    (tuple of row tuples) for the generalized Witt family.
    """

    degree: tuple
    table: dict

    def describe(self) -> str:
        support = sorted(self.table)
        return "component(degree=%s, support=%s)" % (self.degree, support)


@dataclass(frozen=True)
class PredictedBasis:
    """Spanning maps the classification predicts for one degree."""

    degree: tuple
    components: tuple
    authoritative: bool = True
    names: tuple = ()


@dataclass
class HalfDerivationSystem:
    """Assembled homogeneous system for one degree on one window."""

    spec: object
    degree: tuple
    window: Window
    delta: Fraction
    columns: tuple
    matrix: SparseMatrix

    @property
    def n_unknowns(self) -> int:
        return len(self.columns)

    @property
    def n_constraints(self) -> int:
        return self.matrix.n_rows

    def column_index(self) -> dict:
        return {key: i for i, key in enumerate(self.columns)}

    def component_vector(self, component: HalfDerivationComponent):
        """Flatten a component table into this system's column order."""
        return component_vector(self.spec, self.window, component)


def _scalar_columns(spec, window):
    return tuple(box_points(window.radius, spec.rank))


def _matrix_columns(spec, window):
    dv = spec.dim_v
    return tuple((x, r, c)
                 for x in box_points(window.radius, spec.rank)
                 for r in range(dv)
                 for c in range(dv))


def columns_for(spec, window: Window):
    if spec.family == "generalized_witt":
        return _matrix_columns(spec, window)
    return _scalar_columns(spec, window)


def component_vector(spec, window: Window, component: HalfDerivationComponent):
    """Flatten a component table into the canonical column order."""
    cols = columns_for(spec, window)
    zero_f = Fraction(0)
    if spec.family == "generalized_witt":
        vec = []
        for (x, r, c) in cols:
            m = component.table.get(x)
            vec.append(Fraction(m[r][c]) if m is not None else zero_f)
        return tuple(vec)
    return tuple(Fraction(component.table.get(x, zero_f)) for x in cols)


def assemble(spec, degree, window: Window, delta=HALF, max_unknowns=None):
    """Build the homogeneous system for the degree-``degree`` component.

    One constraint row (block) per ordered pair (x, y) with x, y and
    x + y in the box. With the default delta = 1/2 the rows encode the
    half-derivation relation; a general delta replaces the factor 2 on
    the bracket-image side by 1/delta.
    """
    degree = tuple(degree)
    delta = Fraction(delta)
    if delta == 0:
        raise ValueError("delta must be nonzero")
    columns = columns_for(spec, window)
    if max_unknowns is not None and len(columns) > max_unknowns:
        raise exactlin.DimensionOverflowError(
            "%d unknowns exceed the max_unknowns limit %d"
            % (len(columns), max_unknowns))
    if spec.family == "generalized_witt":
        matrix = _assemble_witt(spec, degree, window, delta, columns)
    else:
        matrix = _assemble_scalar(spec, degree, window, delta, columns)
    if matrix.n_rows == 0:
        raise WindowTooSmallError("no constraint pairs inside the box")
    return HalfDerivationSystem(spec, degree, window, delta, columns, matrix)


def _admissible_pairs(box):
    box_set = set(box)
    for x in box:
        for y in box:
            if add(x, y) in box_set:
                yield x, y


def _assemble_scalar(spec, a, window, delta, columns):
    box = box_points(window.radius, spec.rank)
    col = {x: i for i, x in enumerate(columns)}
    inv_delta = 1 / delta
    coeff = spec.bracket_coeff
    entries = []
    row_no = 0
    for x, y in _admissible_pairs(box):
        row = {}
        c_img = coeff(x, y)
        if c_img:
            row[col[add(x, y)]] = c_img * inv_delta
        c_x = coeff(add(a, x), y)
        if c_x:
            cx_col = col[x]
            row[cx_col] = row.get(cx_col, 0) - c_x
        c_y = coeff(x, add(a, y))
        if c_y:
            cy_col = col[y]
            row[cy_col] = row.get(cy_col, 0) - c_y
        for cc, vv in row.items():
            if vv:
                entries.append((row_no, cc, vv))
        row_no += 1
    return SparseMatrix(row_no, len(columns), entries)


def _assemble_witt(spec, a, window, delta, columns):
    box = box_points(window.radius, spec.rank)
    dv = spec.dim_v
    col = {key: i for i, key in enumerate(columns)}
    pair = spec.pairing
    # Pairing columns for every index the constraints can touch.
    pcache = {}

    def pcol(x):
        v = pcache.get(x)
        if v is None:
            v = pair.gen_column(x)
            pcache[x] = v
        return v

    inv_delta = 1 / delta
    entries = []
    row_no = 0
    for x, y in _admissible_pairs(box):
        xy = add(x, y)
        px = pcol(x)
        py = pcol(y)
        pax = pcol(add(a, x))
        pay = pcol(add(a, y))
        for i in range(dv):
            for j in range(dv):
                for k in range(dv):
                    row = {}

                    def bump(key, val):
                        if val:
                            ci = col[key]
                            row[ci] = row.get(ci, 0) + val

                    bump((xy, k, j), inv_delta * py[i])
                    bump((xy, k, i), -inv_delta * px[j])
                    if j == k:
                        for l in range(dv):
                            bump((x, l, i), -py[l])
                    bump((x, k, i), pax[j])
                    bump((y, k, j), -pay[i])
                    if i == k:
                        for l in range(dv):
                            bump((y, l, j), px[l])
                    for cc, vv in row.items():
                        if vv:
                            entries.append((row_no, cc, vv))
                    row_no += 1
    return SparseMatrix(row_no, len(columns), entries)


def solve(system: HalfDerivationSystem, max_cells=None) -> NullspaceBasis:
    """Canonical exact nullspace of the assembled system."""
    return exactlin.nullspace(system.matrix, max_cells=max_cells)


def _identity_matrix(dv):
    return tuple(tuple(Fraction(1) if r == c else Fraction(0) for c in range(dv))
                 for r in range(dv))


def predicted(spec, degree, window: Window) -> PredictedBasis:
    """Spanning maps predicted for this degree by the classification.

    Block and generalized Witt predictions are authoritative; Witt type
    predictions (the shift maps that come from mutations) are flagged as
    non-authoritative and excess dimensions merely get reported.
    """
    degree = tuple(degree)
    box = box_points(window.radius, spec.rank)
    comps = []
    names = []
    if spec.family == "generalized_witt":
        if spec.dim_v > 1:
            if degree == zero(spec.rank):
                ident = _identity_matrix(spec.dim_v)
                comps.append(HalfDerivationComponent(degree, {x: ident for x in box}))
                names.append("id")
            return PredictedBasis(degree, tuple(comps), True, tuple(names))
        ident = _identity_matrix(1)
        comps.append(HalfDerivationComponent(degree, {x: ident for x in box}))
        names.append("shift")
        return PredictedBasis(degree, tuple(comps), False, tuple(names))
    if spec.family == "witt_type":
        one = Fraction(1)
        comps.append(HalfDerivationComponent(degree, {x: one for x in box}))
        names.append("shift")
        return PredictedBasis(degree, tuple(comps), False, tuple(names))
    if spec.family == "block":
        one = Fraction(1)
        if spec.g_is_zero:
            if degree == zero(spec.rank):
                comps.append(HalfDerivationComponent(degree, {x: one for x in box}))
                names.append("id")
                comps.append(HalfDerivationComponent(degree, {zero(spec.rank): one}))
                names.append("alpha")
            return PredictedBasis(degree, tuple(comps), True, tuple(names))
        if spec.h is None:
            raise ValueError("predictions for g != 0 need the (g, h) presentation")
        if degree == zero(spec.rank):
            comps.append(HalfDerivationComponent(degree, {x: one for x in box}))
            names.append("id")
        g, h = spec.g, spec.h
        for b in box:
            if g(b) == 0 and h(b) == -2:
                target = add(b, degree)
                if window.contains(target) and g(target) == 0 and h(target) == -1:
                    comps.append(HalfDerivationComponent(degree, {b: one}))
                    names.append("alpha_(%s,%s)" % (_fmt(b), _fmt(target)))
        return PredictedBasis(degree, tuple(comps), True, tuple(names))
    raise ValueError("unknown family %r" % (spec.family,))


def _fmt(point):
    return "(" + ",".join(str(x) for x in point) + ")"


def inner_column_positions(spec, window: Window):
    """Positions of the columns whose box index lies in the inner box."""
    cols = columns_for(spec, window)
    if spec.family == "generalized_witt":
        return [i for i, (x, _, _) in enumerate(cols) if window.in_inner(x)]
    return [i for i, x in enumerate(cols) if window.in_inner(x)]


def _projected_rank(vectors, positions):
    rows = [[v[p] for p in positions] for v in vectors]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return exactlin.rank(SparseMatrix.from_rows(rows))


@dataclass(frozen=True)
class CompareReport:
    """Membership and projected-dimension comparison for one degree."""

    degree: tuple
    membership: tuple
    visible: tuple
    projected_dim: int
    predicted_dim: int
    excess: tuple
    authoritative: bool

    @property
    def membership_pass(self) -> bool:
        return all(self.membership)

    @property
    def passed(self) -> bool:
        if not self.membership_pass:
            return False
        if self.authoritative:
            return self.projected_dim == self.predicted_dim
        return self.projected_dim >= self.predicted_dim


def compare(spec, window: Window, computed: NullspaceBasis,
            expected: PredictedBasis) -> CompareReport:
    """Check predictions against a computed solution space.

    Membership: every predicted component must solve all assembled
    constraints, which is equivalent to lying in the computed nullspace.
    Projection: computed and predicted vectors are restricted to inner-box
    columns and their span dimensions must agree (excess directions are
    listed; for non-authoritative families they are flagged, not failed).
    """
    vectors = [component_vector(spec, window, comp) for comp in expected.components]
    membership = tuple(in_span(v, computed) for v in vectors)
    positions = inner_column_positions(spec, window)
    visible = tuple(any(v[p] for p in positions) for v in vectors)
    projected_dim = _projected_rank(computed.vectors, positions)
    predicted_dim = _projected_rank(vectors, positions)
    excess = ()
    if projected_dim > predicted_dim:
        excess = _excess_vectors(spec, window, computed.vectors, vectors, positions)
    return CompareReport(expected.degree, membership, visible, projected_dim,
                         predicted_dim, excess, expected.authoritative)


def _excess_vectors(spec, window, computed_vectors, predicted_vectors, positions):
    cols = columns_for(spec, window)
    keys = [cols[p] for p in positions]
    pred_rows = [r for r in ([v[p] for p in positions] for v in predicted_vectors)
                 if any(r)]
    pred_basis = NullspaceBasis(len(positions), tuple(tuple(r) for r in pred_rows))
    out = []
    for v in computed_vectors:
        proj = tuple(v[p] for p in positions)
        if any(proj) and not in_span(proj, pred_basis):
            out.append({keys[i]: val for i, val in enumerate(proj) if val})
    return tuple(out)


@dataclass(frozen=True)
class DegreeResult:
    degree: tuple
    n_unknowns: int
    n_constraints: int
    computed_dim: int
    projected_dim: int
    predicted_dim: int
    membership_pass: bool
    passed: bool
    excess: tuple

    def to_json(self):
        return {
            "degree": list(self.degree),
            "n_unknowns": self.n_unknowns,
            "n_constraints": self.n_constraints,
            "computed_dim": self.computed_dim,
            "projected_dim": self.projected_dim,
            "predicted_dim": self.predicted_dim,
            "membership_pass": self.membership_pass,
            "verdict": "pass" if self.passed else "fail",
        }


@dataclass(frozen=True)
class SweepReport:
    """Aggregated per-degree comparison over a box of degrees."""

    family: str
    window: Window
    delta: Fraction
    degree_bound: int
    results: tuple
    verdict: str
    authoritative: bool

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)

    def result_for(self, degree):
        degree = tuple(degree)
        for r in self.results:
            if r.degree == degree:
                return r
        raise MissingDegreeError("degree %s not in sweep" % (degree,))

    def to_json(self):
        return {
            "family": self.family,
            "radius": self.window.radius,
            "inner_margin": self.window.inner_margin,
            "delta": exactlin.scalar_to_str(self.delta),
            "degree_bound": self.degree_bound,
            "degrees": [r.to_json() for r in self.results],
            "verdict": self.verdict,
            "authoritative": self.authoritative,
            "all_pass": self.all_pass,
        }


def solve_degrees(spec, window: Window, degree_bound: int, delta=HALF,
                  max_unknowns=None, max_cells=None) -> dict:
    """Assemble and solve every degree in Box(degree_bound).

    Returns degree -> (system, basis); systems at different degrees are
    independent, so this map is the natural unit of reuse.
    """
    if degree_bound > window.radius:
        raise ValueError("degree_bound must not exceed the window radius")
    out = {}
    for a in box_points(degree_bound, spec.rank):
        system = assemble(spec, a, window, delta=delta, max_unknowns=max_unknowns)
        out[tuple(a)] = (system, solve(system, max_cells=max_cells))
    return out


def sweep(spec, window: Window, degree_bound: int, delta=HALF,
          max_unknowns=None, max_cells=None, solved: dict = None) -> SweepReport:
    """Assemble, solve and compare every degree in Box(degree_bound)."""
    if solved is None:
        solved = solve_degrees(spec, window, degree_bound, delta=delta,
                               max_unknowns=max_unknowns, max_cells=max_cells)
    predictive = Fraction(delta) == HALF
    results = []
    span_names = []
    authoritative = predictive
    for a in box_points(degree_bound, spec.rank):
        system, computed = solved[tuple(a)]
        if predictive:
            exp = predicted(spec, a, window)
        else:
            # classifications are wired for the half scale only; other
            # scales get a dimension report with nothing asserted
            exp = PredictedBasis(tuple(a), (), authoritative=False)
        authoritative = authoritative and exp.authoritative
        rep = compare(spec, window, computed, exp)
        span_names.extend(
            name for name, vis in zip(exp.names, rep.visible) if vis)
        results.append(DegreeResult(
            degree=tuple(a),
            n_unknowns=system.n_unknowns,
            n_constraints=system.n_constraints,
            computed_dim=computed.dimension,
            projected_dim=rep.projected_dim,
            predicted_dim=rep.predicted_dim,
            membership_pass=rep.membership_pass,
            passed=rep.passed,
            excess=rep.excess,
        ))
    all_pass = all(r.passed for r in results)
    seen = []
    for name in span_names:
        if name not in seen:
            seen.append(name)
    body = "span{%s}" % ", ".join(seen) if seen else "span{}"
    if not predictive:
        verdict = "dimension report only (delta != 1/2)"
    elif authoritative:
        verdict = ("Delta = %s" % body) if all_pass else ("FAILED: expected Delta = %s" % body)
    else:
        extra = "" if all(r.projected_dim == r.predicted_dim for r in results) \
            else "; excess dimensions present"
        verdict = "Delta contains %s (non-authoritative%s)" % (body, extra)
    return SweepReport(spec.family, window, Fraction(delta), degree_bound,
                       tuple(results), verdict, authoritative)
