"""Assembly of the dihedral signature defect.

Xi = (p² - 1)/(6p) · L_V(β, β) + Σ σ_β(ζ^k) + σ(W), where σ(W) is the
signature of the intersection form on the kernel of the inclusion of the
lifted surface, built from differences of lifts of curves on the surface.
"""
import logging

import attrs
from sympy import ImmutableMatrix, Matrix, Rational
from sympy.combinatorics import Permutation

from .covers import LinkingBlock, SHEETS, act, transposition
from .exceptions import AnchorDataError, DiagramFormatError, InputError, MissingBlockError

logger = logging.getLogger(__name__)


def signature(mat):
    """Signature of a symmetric rational matrix by exact congruence diagonalization."""
    M = Matrix(mat)
    if M.rows != M.cols or M != M.T:
        raise InputError("signature needs a symmetric square matrix")
    positive = negative = 0
    while M.rows:
        pivot = next((k for k in range(M.rows) if M[k, k] != 0), None)
        if pivot is None:
            pair = next(
                ((r, c) for r in range(M.rows) for c in range(r + 1, M.rows) if M[r, c] != 0),
                None,
            )
            if pair is None:
                break
            r, c = pair
            M[r, :] = M[r, :] + M[c, :]
            M[:, r] = M[:, r] + M[:, c]
            pivot = r
        d = M[pivot, pivot]
        if d > 0:
            positive += 1
        else:
            negative += 1
        rest = [k for k in range(M.rows) if k != pivot]
        column = M.extract(rest, [pivot])
        M = M.extract(rest, rest) - column * column.T / d
    return positive - negative


@attrs.frozen
class AnchorPath:
    """Path from the basepoint to a curve, by the knot arcs it passes under or their colors."""

    curve: str
    crossed_arcs: tuple = attrs.field(converter=tuple, factory=tuple)
    crossed_colors: tuple = attrs.field(default=None)

    def colors(self, code=None):
        if self.crossed_colors is not None:
            colors = tuple(self.crossed_colors)
        else:
            if code is None and self.crossed_arcs:
                raise AnchorDataError(f"anchor path of {self.curve} needs the diagram to read arc colors")
            for arc in self.crossed_arcs:
                if not 0 <= arc < code.arc_count:
                    raise DiagramFormatError(f"invalid arc reference {arc} in anchor path of {self.curve}")
            colors = tuple(code.alpha_c[arc] for arc in self.crossed_arcs)
        for color in colors:
            if color not in SHEETS:
                raise DiagramFormatError(f"invalid color {color!r} in anchor path of {self.curve}")
        return colors


@attrs.frozen
class Monodromy:
    perm: Permutation

    @property
    def is_identity(self):
        return self.perm.is_Identity

    def evaluate(self, c0):
        """Sheet reached from sheet c0 of the basepoint by following the path backwards."""
        return act(~self.perm, c0)

    def cycle_notation(self):
        if self.is_identity:
            return "Id"
        return "".join("(" + "".join(str(i + 1) for i in cycle) + ")" for cycle in self.perm.cyclic_form)

    def __str__(self):
        return self.cycle_notation()


def monodromy(path, code=None):
    perm = Permutation(2)
    for color in path.colors(code):
        perm = perm * transposition(color)
    logger.debug("monodromy of %s is %s", path.curve, Monodromy(perm))
    return Monodromy(perm)


@attrs.frozen
class KernelSelection:
    # ((name, (j, k)), ...) in basis order
    omega: tuple = attrs.field(converter=tuple)
    beta: tuple = attrs.field(converter=tuple)
    beta_name: str = "beta"

    def pairs(self):
        return self.omega + ((self.beta_name, self.beta),)

    def labels(self):
        return tuple(f"{name}^{j}-{name}^{k}" for name, (j, k) in self.pairs())


def select_kernel_curves(monodromies, c0, omega_names, beta_name="beta", right="gamma_r", left="gamma_l"):
    """Pick the two lifts of each curve whose difference lies in the kernel."""
    if c0 not in SHEETS:
        raise DiagramFormatError(f"invalid basepoint sheet {c0!r}")
    missing = [name for name in (*omega_names, right, left) if name not in monodromies]
    if missing:
        raise AnchorDataError(f"missing anchor paths for {', '.join(missing)}")
    omega = []
    for name in omega_names:
        fixed = monodromies[name].evaluate(c0)
        omega.append((name, tuple(s for s in SHEETS if s != fixed)))
    j = monodromies[right].evaluate(c0)
    excluded = monodromies[left].evaluate(c0)
    if j == excluded:
        raise AnchorDataError(f"invalid anchor data: both halves of {beta_name} evaluate to sheet {j}")
    k = next(s for s in SHEETS if s not in (j, excluded))
    selection = KernelSelection(omega, (j, k), beta_name)
    logger.info("kernel basis %s", ", ".join(selection.labels()))
    return selection


def _entries(block):
    return block.entries if isinstance(block, LinkingBlock) else ImmutableMatrix(block)


def lookup_block(blocks, u, v):
    if (u, v) in blocks:
        return _entries(blocks[(u, v)])
    if (v, u) in blocks:
        return _entries(blocks[(v, u)]).T
    raise MissingBlockError(f"missing linking block for ({u}, {v})")


def assemble_kernel_matrix(blocks, selection):
    """M[x][y] = lk(x^a - x^b, y^c - y^d) over the selected basis, mirrored from the upper triangle."""
    pairs = selection.pairs()
    n = len(pairs)
    M = Matrix.zeros(n, n)
    for x in range(n):
        u, (a, b) = pairs[x]
        for y in range(x, n):
            v, (c, d) = pairs[y]
            B = lookup_block(blocks, u, v)
            value = B[a - 1, c - 1] - B[a - 1, d - 1] - B[b - 1, c - 1] + B[b - 1, d - 1]
            M[x, y] = M[y, x] = value
    return ImmutableMatrix(M)


def negate_blocks(blocks):
    """Blocks of the mirror image: every linking number changes sign."""
    return {
        key: block.negated() if isinstance(block, LinkingBlock) else -ImmutableMatrix(block)
        for key, block in blocks.items()
    }


@attrs.frozen
class DefectReport:
    p: int
    self_linking: int
    term_selflink: Rational
    term_tl: int
    term_sigma_w: int
    xi: Rational
    kernel_matrix: ImmutableMatrix = None

    @property
    def integral(self):
        return Rational(self.xi).q == 1


def compute_defect(p, self_linking, tl_profile, sigma_w, kernel_matrix=None):
    term_selflink = Rational(p * p - 1, 6 * p) * self_linking
    term_tl = tl_profile.sum if hasattr(tl_profile, "sum") else sum(tl_profile)
    xi = term_selflink + term_tl + sigma_w
    report = DefectReport(p, self_linking, term_selflink, term_tl, sigma_w, xi, kernel_matrix)
    if not report.integral:
        logger.warning("signature defect %s is not an integer; check the anchor paths and linking data", xi)
    return report


def cover_signature(sigma_x, p, euler_number, xi):
    """Signature of the irregular p-fold cover of a 4-manifold with one singular branch point."""
    return 3 * Rational(sigma_x) - Rational(p - 1, 4) * euler_number + Rational(xi)


@attrs.frozen
class RibbonVerdict:
    xi: Rational
    bound: Rational

    @property
    def consistent(self):
        return abs(self.xi) <= self.bound

    @property
    def obstructed(self):
        return not self.consistent


def ribbon_obstruction_check(xi, p):
    """Ribbon (homotopy-ribbon) knots satisfy |Xi| <= (p - 1)/2."""
    return RibbonVerdict(Rational(xi), Rational(p - 1, 2))
