"""Seifert forms, mod p characteristic knots, self-linking and Tristram-Levine signatures."""
import itertools
import logging
from math import gcd

import attrs
import mpmath
from django.conf import settings
from sympy import ImmutableMatrix, Matrix, Rational
from sympy.matrices import MatrixBase

from .defect import signature
from .diagram import check_modulus, count_colorings, determinant_from_form, mod_p_nullspace
from .exceptions import DiagramFormatError, InputError

logger = logging.getLogger(__name__)


def _to_matrix(rows):
    if isinstance(rows, MatrixBase):
        return ImmutableMatrix(rows)
    rows = [list(row) for row in rows]
    if not rows:
        return ImmutableMatrix(0, 0, [])
    return ImmutableMatrix(rows)


@attrs.frozen
class SeifertForm:
    L: ImmutableMatrix = attrs.field(converter=_to_matrix)
    basis_labels: tuple = attrs.field(converter=tuple, factory=tuple)

    def __attrs_post_init__(self):
        if self.L.rows != self.L.cols:
            raise DiagramFormatError(f"Seifert matrix must be square, got {self.L.rows}x{self.L.cols}")
        if self.L.rows % 2:
            raise DiagramFormatError("Seifert matrix must have even size")
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"e{i + 1}" for i in range(self.L.rows)))
        elif len(self.basis_labels) != self.L.rows:
            raise DiagramFormatError("one basis label per row of the Seifert matrix is required")

    @classmethod
    def unknot(cls):
        return cls(ImmutableMatrix(0, 0, []))

    @property
    def genus(self):
        return self.L.rows // 2

    @property
    def size(self):
        return self.L.rows

    def negated(self):
        return SeifertForm(-self.L, self.basis_labels)


@attrs.frozen
class CharacteristicKnot:
    beta: tuple = attrs.field(converter=tuple)
    p: int
    self_linking: int
    beta_seifert: SeifertForm = attrs.field(factory=SeifertForm.unknot)


@attrs.frozen
class TLSignatureProfile:
    p: int
    values: tuple = attrs.field(converter=tuple)

    @property
    def sum(self):
        return sum(self.values)


@attrs.frozen
class AdmissibilityReport:
    p: int
    colorable: bool
    determinant: int
    divides_determinant: bool
    characteristic_knots: tuple

    @property
    def admissible(self):
        return self.colorable and self.divides_determinant and bool(self.characteristic_knots)


def symmetrize(form):
    L = form.L if isinstance(form, SeifertForm) else _to_matrix(form)
    return L + L.T


def _symmetric(Q):
    Q = _to_matrix(Q)
    if Q.rows != Q.cols or Q != Q.T:
        raise InputError("form must be a symmetric square matrix")
    return Q


def _lift(residues, p):
    """Smallest integer representative of a mod p vector, made primitive."""
    lifted = [r - p if r > p // 2 else r for r in residues]
    divisor = 0
    for value in lifted:
        divisor = gcd(divisor, value)
    return tuple(value // divisor for value in lifted) if divisor > 1 else tuple(lifted)


def _normalized(residues, p):
    lead = next(r for r in residues if r)
    inverse = pow(lead, -1, p)
    return tuple(r * inverse % p for r in residues)


def find_characteristic_knots(Q, p):
    """One primitive integer vector per line of ker(Q mod p)."""
    check_modulus(p, InputError)
    Q = _symmetric(Q)
    n = Q.rows
    basis = mod_p_nullspace(Q.tolist(), n, p) if n else []
    lines = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        residues = tuple(sum(c * vector[i] for c, vector in zip(coeffs, basis)) % p for i in range(n))
        if any(residues):
            lines.add(_normalized(residues, p))
    knots = sorted((_lift(line, p) for line in lines), reverse=True)
    logger.debug("%d characteristic lines mod %d", len(knots), p)
    return knots


def is_characteristic(Q, beta, p):
    Q = _symmetric(Q)
    if len(beta) != Q.rows:
        raise InputError(f"dimension mismatch: vector of length {len(beta)} for a {Q.rows}x{Q.rows} form")
    return all(entry % p == 0 for entry in Q * Matrix(beta))


def self_linking(form, beta):
    if len(beta) != form.size:
        raise InputError(f"dimension mismatch: vector of length {len(beta)} for a form of size {form.size}")
    if not beta:
        return 0
    vector = Matrix(beta)
    return int((vector.T * form.L * vector)[0, 0])


def characteristic_knot(form, p, beta=None, beta_seifert=None):
    """Check or choose the characteristic knot of a Seifert form."""
    Q = symmetrize(form)
    if beta is None:
        candidates = find_characteristic_knots(Q, p)
        if not candidates:
            return None
        beta = candidates[0]
    elif not is_characteristic(Q, beta, p):
        raise InputError(f"vector {tuple(beta)} is not a mod {p} characteristic knot")
    return CharacteristicKnot(
        beta=beta,
        p=p,
        self_linking=self_linking(form, beta),
        beta_seifert=beta_seifert or SeifertForm.unknot(),
    )


def _realified_form(A):
    # (1 - w)A + (1 - w̄)Aᵀ at w = exp(2πi/3), made real; the √3 is absorbed by congruence.
    S = Rational(3, 2) * (A + A.T)
    K = A.T - A
    top = S.row_join(-K)
    bottom = K.row_join(S / Rational(3, 4))
    return top.col_join(bottom)


def tristram_levine_at(A, p, i, dps=None):
    A = _to_matrix(A)
    if A.rows == 0:
        return 0
    if p == 3:
        return signature(_realified_form(Matrix(A))) // 2
    dps = dps or settings.DIHEDRAL["MP_DPS"]
    with mpmath.workdps(dps):
        zeta = mpmath.expjpi(mpmath.mpf(2 * i) / p)
        n = A.rows
        H = mpmath.matrix(n, n)
        for r in range(n):
            for c in range(n):
                H[r, c] = (1 - zeta) * int(A[r, c]) + (1 - mpmath.conj(zeta)) * int(A[c, r])
        spectrum = mpmath.eigh(H, eigvals_only=True)
        eigenvalues = [spectrum[k] for k in range(spectrum.rows)]
        tolerance = mpmath.mpf(10) ** (-(dps // 2))
        positive = sum(1 for value in eigenvalues if value > tolerance)
        negative = sum(1 for value in eigenvalues if value < -tolerance)
    return positive - negative


def tristram_levine(beta_form, p, dps=None):
    A = beta_form.L if isinstance(beta_form, SeifertForm) else _to_matrix(beta_form)
    values = [tristram_levine_at(A, p, i, dps) for i in range(1, p)]
    return TLSignatureProfile(p=p, values=values)


def admissibility(code, Q, p):
    """Necessary conditions for the knot to be a p-admissible singularity."""
    determinant = determinant_from_form(Q)
    return AdmissibilityReport(
        p=p,
        colorable=count_colorings(code, p) > p,
        determinant=determinant,
        divides_determinant=determinant % p == 0,
        characteristic_knots=tuple(find_characteristic_knots(Q, p)),
    )
