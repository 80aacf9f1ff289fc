"""Linking numbers of lifts of curves in the 3-fold irregular dihedral branched cover.

The cover of S³ branched along the knot is described cellularly: one
generator per arc of the knot and of a curve g whose crossings are recorded
(Wirtinger presentation), three sheets, and an edge (arc, sheet) from sheet ``s`` to
the image of ``s`` under the transposition of the arc's color. For each
lift g^j a rational 1-cochain on the knot edges is solved so that, together
with the indicator of g^j on the g edges, it is a cocycle vanishing on the
branch disks; evaluating it along a lift h^k gives lk(g^j, h^k).
When only h has its crossings recorded the block is computed the other way
round and transposed.
"""
import logging

import attrs
from sympy import ImmutableMatrix, Matrix, Rational
from sympy.combinatorics import Permutation

from .diagram import OVER_KNOT, validate_coloring
from .exceptions import (
    CoverHomologyError,
    InvalidColoringError,
    PreconditionError,
    TrivialColoringError,
    UnknownCurveError,
)

logger = logging.getLogger(__name__)

SHEETS = (1, 2, 3)
LEFT = "left"
RIGHT = "right"
RESOLUTIONS = (LEFT, RIGHT)


def transposition(color):
    """Sheet permutation of an arc: the transposition fixing the sheet equal to its color."""
    swapped = [sheet - 1 for sheet in SHEETS if sheet != color]
    return Permutation(*swapped, size=3)


def act(perm, sheet):
    return perm.array_form[sheet - 1] + 1


@attrs.frozen
class LinkingBlock:
    entries: ImmutableMatrix = attrs.field(converter=ImmutableMatrix)
    curve_g: str = ""
    curve_h: str = ""
    resolution_choices: tuple = attrs.field(converter=tuple, factory=tuple)

    def __attrs_post_init__(self):
        if self.entries.shape != (3, 3):
            raise PreconditionError(f"linking block must be 3x3, got {self.entries.shape}")

    def __getitem__(self, index):
        return self.entries[index]

    def transposed(self):
        return LinkingBlock(self.entries.T, self.curve_h, self.curve_g, self.resolution_choices)

    def negated(self):
        return attrs.evolve(self, entries=-self.entries)

    def rows(self):
        return [[_plain(value) for value in self.entries.row(r)] for r in range(3)]


def _plain(value):
    value = Rational(value)
    return int(value) if value.q == 1 else value


def pairing_matrix(meets):
    """P[j][k] = 1 when lift j meets lift meets[j] at the intersection point."""
    return ImmutableMatrix(3, 3, lambda j, k: int(meets[j] == k + 1))


def resolve_block(block, meets, sign, resolution):
    """Block under the requested resolution of an intersection point recorded for the left one."""
    if resolution == LEFT or meets is None:
        return block
    choices = block.resolution_choices + (("intersection", RIGHT),)
    return LinkingBlock(block.entries + sign * pairing_matrix(meets), block.curve_g, block.curve_h, choices)


@attrs.frozen
class CoverCellStructure:
    colors: tuple = attrs.field(converter=tuple)
    # (curve name, (sheets of lift 1, sheets of lift 2, sheets of lift 3))
    lift_tables: tuple = attrs.field(converter=tuple)
    sheets: tuple = SHEETS

    def lifts(self, name):
        for curve_name, table in self.lift_tables:
            if curve_name == name:
                return table
        raise UnknownCurveError(f"unknown curve {name!r}")


def _lift_table(code, curve):
    table = []
    for start in SHEETS:
        sheet = start
        sheets = [sheet]
        for over, tag in zip(curve.f, curve.t):
            if tag == OVER_KNOT:
                sheet = act(transposition(code.alpha_c[over]), sheet)
            sheets.append(sheet)
        if sheet != start:
            raise PreconditionError(f"curve {curve.name} does not lift to closed loops")
        table.append(tuple(sheets[:curve.arc_count]))
    return tuple(table)


def build_cover(code):
    report = validate_coloring(code)
    if not report.valid:
        positions = ", ".join(str(v.position) for v in report.violations)
        raise InvalidColoringError(f"coloring invalid at crossings {positions}")
    if not report.nontrivial:
        raise TrivialColoringError()
    tables = tuple((curve.name, _lift_table(code, curve)) for curve in code.curves)
    for name, table in tables:
        logger.debug("lifts of %s start in sheets %s", name, [lift[0] for lift in table])
    return CoverCellStructure(code.alpha_c, tables)


class _CochainSystem:
    """Lifted relations of the knot arcs, with the cochain of curve g on the right side."""

    def __init__(self, code, g, g_lifts):
        self.code = code
        self.g = g
        self.g_lifts = g_lifts
        self.m = code.arc_count
        self.rows = []
        self.terms = []
        self._build()

    def index(self, arc, sheet):
        return 3 * arc + sheet - 1

    def _equation(self, coefficients, curve_terms=()):
        row = [0] * (3 * self.m)
        for (arc, sheet), value in coefficients:
            row[self.index(arc, sheet)] += value
        self.rows.append(row)
        self.terms.append(tuple(curve_terms))

    def _build(self):
        code = self.code
        m = self.m
        for i in range(m):
            nxt = (i + 1) % m
            over, sign, tag = code.alpha_f[i], code.alpha_eps[i], code.alpha_t[i]
            tau_i = transposition(code.alpha_c[i])
            for s in SHEETS:
                if tag != OVER_KNOT:
                    # u(i+1, s) - u(i, s) = eps * (v(o, tau_i s) - v(o, s)), zero under other curves
                    terms = []
                    if code.over_curve(tag) == self.g:
                        terms = [(over, act(tau_i, s), sign), (over, s, -sign)]
                    self._equation([((nxt, s), 1), ((i, s), -1)], terms)
                    continue
                tau_o = transposition(code.alpha_c[over])
                if sign > 0:
                    self._equation([
                        ((nxt, s), 1),
                        ((over, act(tau_o, s)), 1),
                        ((i, act(tau_o, s)), -1),
                        ((over, act(tau_i, act(tau_o, s))), -1),
                    ])
                else:
                    tau_n = transposition(code.alpha_c[nxt])
                    self._equation([
                        ((nxt, s), 1),
                        ((over, s), -1),
                        ((i, act(tau_o, s)), -1),
                        ((over, act(tau_n, s)), 1),
                    ])
        for arc, color in enumerate(code.alpha_c):
            self._equation([((arc, color), 1)])
            first, second = (s for s in SHEETS if s != color)
            self._equation([((arc, first), 1), ((arc, second), 1)])

    def indicator(self, lift, arc, sheet):
        return int(self.g_lifts[lift - 1][arc] == sheet)

    def solve(self, lift):
        rhs = Matrix([
            sum(sign * self.indicator(lift, arc, sheet) for arc, sheet, sign in terms)
            for terms in self.terms
        ])
        try:
            solution, params = Matrix(self.rows).gauss_jordan_solve(rhs)
        except ValueError as exc:
            raise CoverHomologyError(
                "lifted relations are inconsistent; the cover is not a rational homology sphere"
            ) from exc
        logger.debug("cochain for lift %d: %d equations, %d free parameters", lift, len(self.rows), len(params))
        return solution, params


def _lift_value(code, h, h_sheets, solution, system, lift, resolution):
    value = 0
    for b, (over, sign, tag) in enumerate(zip(h.f, h.eps, h.t)):
        sheet = h_sheets[b]
        if tag == OVER_KNOT:
            tau = transposition(code.alpha_c[over])
            if sign > 0:
                value += solution[system.index(over, sheet)]
            else:
                value -= solution[system.index(over, act(tau, sheet))]
        elif code.over_curve(tag) != system.g or (resolution == RIGHT and b in h.x):
            continue
        else:
            value += sign * system.indicator(lift, over, sheet)
    return value


def linking_block(code, g, h, resolution=LEFT, cover=None):
    """B[j][k] = lk(g^j, h^k), lifts indexed by the sheet of their zeroth arc."""
    if resolution not in RESOLUTIONS:
        raise UnknownCurveError(f"unknown resolution {resolution!r}")
    g_curve, h_curve = code.curve(g), code.curve(h)
    if not code.records(g):
        if not code.records(h):
            raise UnknownCurveError(f"no crossings under {g!r} or {h!r} are recorded in the diagram")
        # lk(g^j, h^k) = lk(h^k, g^j)
        return linking_block(code, h, g, resolution, cover).transposed()
    cover = cover or build_cover(code)
    g_lifts, h_lifts = cover.lifts(g_curve.name), cover.lifts(h_curve.name)
    system = _CochainSystem(code, g, g_lifts)
    entries = [[0] * 3 for _ in SHEETS]
    for j in SHEETS:
        solution, params = system.solve(j)
        for k in SHEETS:
            value = _lift_value(code, h_curve, h_lifts[k - 1], solution, system, j, resolution)
            if getattr(value, "free_symbols", None) and value.free_symbols & set(params):
                raise CoverHomologyError(
                    f"lk({g}^{j}, {h}^{k}) depends on the cochain; the cover is not a rational homology sphere"
                )
            entries[j - 1][k - 1] = Rational(value)
    choices = tuple((b, RIGHT if resolution == RIGHT else LEFT) for b in h_curve.x)
    logger.info("linking block (%s, %s) computed with %s resolution", g, h, resolution)
    return LinkingBlock(entries, g, h, choices)
