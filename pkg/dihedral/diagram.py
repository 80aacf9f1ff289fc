"""Labeled diagram codes of a 3-colored knot with auxiliary curves, and Fox colorings.

A diagram code lists, for every arc ``i`` of the knot, the over-arc ``f(i)``
met at the head of the arc, the local writhe ``eps(i)`` there, the tag
``t(i)`` saying whether that over-arc belongs to the knot itself (``k``), to
the partner curve (``p``) or to the auxiliary curve of that name, and the
color ``c(i)``. Auxiliary curves carry the same (f, eps, t) lists over their
own arcs. Arcs are numbered from 0 and arc ``i + 1`` follows arc ``i`` around
each component.
"""
import itertools
import logging

import attrs
from sympy import Matrix, isprime
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .exceptions import DiagramFormatError, UnknownCurveError

logger = logging.getLogger(__name__)

OVER_CURVE = "p"
OVER_KNOT = "k"
TAGS = (OVER_CURVE, OVER_KNOT)
THREE_COLORS = (1, 2, 3)


def _check_lists(owner, f, eps, t):
    if not len(f) == len(eps) == len(t):
        raise DiagramFormatError(
            f"length mismatch in {owner}: f has {len(f)}, eps {len(eps)}, t {len(t)} entries"
        )
    for sign in eps:
        if sign not in (1, -1):
            raise DiagramFormatError(f"invalid sign {sign!r} in {owner}")


@attrs.frozen
class CurveCode:
    """An auxiliary curve; empty lists describe a loop with no under-crossings."""

    name: str
    f: tuple = attrs.field(converter=tuple, factory=tuple)
    eps: tuple = attrs.field(converter=tuple, factory=tuple)
    t: tuple = attrs.field(converter=tuple, factory=tuple)
    # heads of arcs whose under-crossing sits on an intersection point with the partner curve
    x: tuple = attrs.field(converter=tuple, factory=tuple)

    def __attrs_post_init__(self):
        _check_lists(f"curve {self.name}", self.f, self.eps, self.t)
        for i in self.x:
            if not 0 <= i < len(self.f):
                raise DiagramFormatError(f"out-of-range index {i} in resolution list of curve {self.name}")

    @property
    def arc_count(self):
        return max(len(self.f), 1)


@attrs.frozen
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int = 1


@attrs.frozen
class ArcDiagram:
    """Arcs and crossings of a link diagram, enough for Fox colorings.

    ``joins`` pairs arcs that continue under a strand which is not part of
    the branch set; the two pieces must carry the same color.
    """

    arc_count: int
    crossings: tuple = attrs.field(converter=tuple, factory=tuple)
    joins: tuple = attrs.field(converter=tuple, factory=tuple)
    components: int = 1


@attrs.frozen
class DiagramCode:
    alpha_f: tuple = attrs.field(converter=tuple)
    alpha_eps: tuple = attrs.field(converter=tuple)
    alpha_t: tuple = attrs.field(converter=tuple)
    alpha_c: tuple = attrs.field(converter=tuple)
    curves: tuple = attrs.field(converter=tuple, factory=tuple)
    # curve whose arcs the ``p`` tags refer to
    partner: str = attrs.field(default=None)

    def __attrs_post_init__(self):
        m = len(self.alpha_f)
        if m == 0 and not (self.alpha_eps or self.alpha_t or self.alpha_c):
            raise DiagramFormatError("empty diagram")
        if not m == len(self.alpha_eps) == len(self.alpha_t) == len(self.alpha_c):
            raise DiagramFormatError(
                f"length mismatch: f has {m}, eps {len(self.alpha_eps)}, "
                f"t {len(self.alpha_t)}, c {len(self.alpha_c)} entries"
            )
        _check_lists("alpha", self.alpha_f, self.alpha_eps, self.alpha_t)
        for color in self.alpha_c:
            if color not in THREE_COLORS:
                raise DiagramFormatError(f"invalid color {color!r}")
        names = [curve.name for curve in self.curves]
        if len(set(names)) != len(names):
            raise DiagramFormatError("duplicate curve names")
        if set(names) & set(TAGS):
            raise DiagramFormatError(f"curves may not be named {' or '.join(TAGS)}")
        if self.partner is None and self.curves:
            object.__setattr__(self, "partner", self.curves[0].name)
        uses_partner = OVER_CURVE in self.alpha_t or any(OVER_CURVE in c.t for c in self.curves)
        if uses_partner and self.partner not in names:
            raise UnknownCurveError(f"unknown curve {self.partner!r} referenced by p tags")
        self._check_indices("alpha", self.alpha_f, self.alpha_t, names)
        for curve in self.curves:
            self._check_indices(f"curve {curve.name}", curve.f, curve.t, names)

    def _check_indices(self, owner, f, t, names):
        for i, (over, tag) in enumerate(zip(f, t)):
            if tag not in TAGS and tag not in names:
                raise DiagramFormatError(f"unknown tag {tag!r} in {owner}")
            bound = self.arc_count if tag == OVER_KNOT else self.curve(self.over_curve(tag)).arc_count
            if not 0 <= over < bound:
                raise DiagramFormatError(f"out-of-range index {over} at position {i} of {owner}")

    def over_curve(self, tag):
        """Name of the curve an arc passes under, None when it passes under the knot."""
        if tag == OVER_KNOT:
            return None
        return self.partner if tag == OVER_CURVE else tag

    def records(self, name):
        """True when the crossings under curve ``name`` are written into the code."""
        tags = itertools.chain(self.alpha_t, *(curve.t for curve in self.curves))
        return name == self.partner or any(self.over_curve(tag) == name for tag in tags)

    @property
    def arc_count(self):
        return len(self.alpha_f)

    @property
    def curve_names(self):
        return tuple(curve.name for curve in self.curves)

    def curve(self, name):
        for curve in self.curves:
            if curve.name == name:
                return curve
        raise UnknownCurveError(f"unknown curve {name!r}")

    def arc_diagram(self):
        """Crossing structure of the knot alone; passing under a curve keeps the color."""
        m = self.arc_count
        crossings = []
        joins = []
        for i in range(m):
            if self.alpha_t[i] == OVER_KNOT:
                crossings.append(Crossing(self.alpha_f[i], i, (i + 1) % m, self.alpha_eps[i]))
            else:
                joins.append((i, (i + 1) % m))
        return ArcDiagram(m, crossings, joins)

    def recolored(self, colors):
        return attrs.evolve(self, alpha_c=tuple(colors))


@attrs.frozen
class FoxColoring:
    colors: tuple = attrs.field(converter=tuple)
    p: int = 3
    # index of the class under the affine action c -> a*c + b
    class_id: int = 0

    @property
    def nontrivial(self):
        return len(set(self.colors)) > 1


@attrs.frozen
class Violation:
    position: int
    kind: str
    over: int = None
    colors: tuple = ()


@attrs.frozen
class ColoringReport:
    valid: bool
    nontrivial: bool
    violations: tuple = ()


def _as_arc_diagram(diagram):
    if isinstance(diagram, DiagramCode):
        return diagram.arc_diagram()
    return diagram


def residue_to_color(residue, p):
    return residue % p or p


def coloring_violations(diagram, colors, p=3):
    """Crossings where b + b' = 2a fails mod p, and joins whose two pieces differ."""
    diagram = _as_arc_diagram(diagram)
    found = []
    for position, crossing in enumerate(diagram.crossings):
        a = colors[crossing.over]
        b, b2 = colors[crossing.under_in], colors[crossing.under_out]
        if (b + b2 - 2 * a) % p:
            found.append(Violation(position, "fox", crossing.over, (a, b, b2)))
    for position, (left, right) in enumerate(diagram.joins):
        if (colors[left] - colors[right]) % p:
            found.append(Violation(position, "split", None, (colors[left], colors[right])))
    return tuple(found)


def validate_coloring(code, p=3):
    violations = coloring_violations(code, code.alpha_c, p)
    if violations:
        logger.debug("coloring fails at %d places", len(violations))
    return ColoringReport(
        valid=not violations,
        nontrivial=len(set(code.alpha_c)) > 1,
        violations=violations,
    )


def coloring_system(diagram):
    """Rows of the homogeneous linear system whose solutions are the colorings."""
    diagram = _as_arc_diagram(diagram)
    n = diagram.arc_count
    rows = []
    for crossing in diagram.crossings:
        row = [0] * n
        row[crossing.under_in] += 1
        row[crossing.under_out] += 1
        row[crossing.over] -= 2
        rows.append(row)
    for left, right in diagram.joins:
        row = [0] * n
        row[left] += 1
        row[right] -= 1
        rows.append(row)
    return rows


def mod_p_nullspace(rows, ncols, p):
    """Basis of the kernel of an integer matrix reduced mod p, as residue tuples."""
    field = GF(p)
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    dm = DomainMatrix([[field(v % p) for v in row] for row in rows], (len(rows), ncols), field)
    return [
        tuple(int(field.to_sympy(entry)) % p for entry in vector)
        for vector in dm.nullspace().to_list()
    ]


def mod_p_rank(rows, ncols, p):
    if not rows:
        return 0
    field = GF(p)
    return DomainMatrix([[field(v % p) for v in row] for row in rows], (len(rows), ncols), field).rank()


def check_modulus(p, error=DiagramFormatError):
    """Colorings and the dihedral covers are taken over GF(p), so p must be an odd prime."""
    if p < 3 or not isprime(p):
        raise error(f"p must be an odd prime, got {p}")


def count_colorings(diagram, p):
    check_modulus(p)
    diagram = _as_arc_diagram(diagram)
    n = diagram.arc_count
    return p ** (n - mod_p_rank(coloring_system(diagram), n, p))


def recolor(colors, a, b, p):
    return tuple(residue_to_color(a * c + b, p) for c in colors)


def _class_key(colors, p):
    return min(recolor(colors, a, b, p) for a in range(1, p) for b in range(p))


def enumerate_colorings(diagram, p):
    """All Fox p-colorings, grouped into classes under the affine color action."""
    check_modulus(p)
    diagram = _as_arc_diagram(diagram)
    n = diagram.arc_count
    basis = mod_p_nullspace(coloring_system(diagram), n, p)
    logger.debug("coloring space of dimension %d over GF(%d)", len(basis), p)
    classes = {}
    colorings = []
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        residues = [sum(c * vector[i] for c, vector in zip(coeffs, basis)) for i in range(n)]
        colors = tuple(residue_to_color(r, p) for r in residues)
        key = _class_key(colors, p)
        class_id = classes.setdefault(key, len(classes))
        colorings.append(FoxColoring(colors, p, class_id))
    return tuple(colorings)


def determinant_from_form(Q):
    """|det Q| with exact integer arithmetic; the empty form has determinant 1."""
    matrix = Matrix(Q)
    if matrix.rows != matrix.cols:
        raise DiagramFormatError(f"form must be square, got {matrix.rows}x{matrix.cols}")
    if matrix.rows == 0:
        return 1
    return abs(int(matrix.det(method="bareiss")))
