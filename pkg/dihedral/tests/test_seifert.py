import random
from math import gcd
from pathlib import Path

import mpmath
from django.test import SimpleTestCase
from sympy import Matrix

from dihedral.exceptions import DiagramFormatError, InputError
from dihedral.parsing import read_knot_file
from dihedral.seifert import (
    SeifertForm,
    admissibility,
    characteristic_knot,
    find_characteristic_knots,
    is_characteristic,
    self_linking,
    symmetrize,
    tristram_levine,
    tristram_levine_at,
)

SAMPLES = Path(__file__).resolve().parents[2] / "samples"

TREFOIL = ((-1, 1), (0, -1))


def oracle_signature(A, p, i, dps=40):
    """Signature of (1 - w)A + (1 - w̄)Aᵀ from mpmath eigenvalues."""
    n = len(A)
    with mpmath.workdps(dps):
        w = mpmath.exp(2j * mpmath.pi * i / p)
        H = mpmath.matrix(n, n)
        for r in range(n):
            for c in range(n):
                H[r, c] = (1 - w) * A[r][c] + (1 - mpmath.conj(w)) * A[c][r]
        spectrum = mpmath.eigh(H, eigvals_only=True)
        values = [spectrum[k] for k in range(spectrum.rows)]
        tolerance = mpmath.mpf(10) ** (-dps // 2)
        return sum(1 for v in values if v > tolerance) - sum(1 for v in values if v < -tolerance)


class SeifertFormTests(SimpleTestCase):
    def test_symmetrize(self):
        self.assertEqual(symmetrize(SeifertForm(((0, 1), (0, 0)))), Matrix([[0, 1], [1, 0]]))
        Q = symmetrize(SeifertForm(((-1, 1), (0, 2))))
        self.assertEqual(Q, Matrix([[-2, 1], [1, 4]]))
        self.assertEqual(Q, Q.T)

    def test_shape_checked(self):
        with self.assertRaises(DiagramFormatError):
            SeifertForm(((1, 2, 3), (4, 5, 6)))
        with self.assertRaises(DiagramFormatError):
            SeifertForm(((1,),))

    def test_genus_and_labels(self):
        form = read_knot_file(SAMPLES / "six_one.knot").seifert
        self.assertEqual(form.genus, 1)
        self.assertEqual(form.basis_labels, ("a", "b"))
        self.assertEqual(SeifertForm.unknot().genus, 0)


class CharacteristicKnotTests(SimpleTestCase):
    def test_six_one_characteristic_knot(self):
        knots = find_characteristic_knots(((-2, 1), (1, 4)), 3)
        self.assertIn((1, -1), knots)
        self.assertTrue(is_characteristic(((-2, 1), (1, 4)), (-1, 1), 3))

    def test_invertible_form_has_none(self):
        self.assertEqual(find_characteristic_knots(((1, 0), (0, 1)), 3), [])

    def test_non_symmetric_form_rejected(self):
        with self.assertRaises(InputError):
            find_characteristic_knots(((1, 2), (0, 1)), 3)

    def test_self_linking(self):
        six_one = SeifertForm(((-1, 1), (0, 2)))
        self.assertEqual(self_linking(six_one, (1, -1)), 0)
        self.assertEqual(self_linking(six_one, (0, 0)), 0)
        self.assertEqual(self_linking(SeifertForm(((1, 0), (0, 1))), (1, 2)), 5)
        with self.assertRaisesMessage(InputError, "dimension mismatch"):
            self_linking(six_one, (1, 2, 3))

    def test_characteristic_knot_checks_given_vector(self):
        form = SeifertForm(((-1, 1), (0, 2)))
        knot = characteristic_knot(form, 3, (1, -1))
        self.assertEqual(knot.self_linking, 0)
        self.assertEqual(knot.beta_seifert.size, 0)
        with self.assertRaises(InputError):
            characteristic_knot(form, 3, (1, 0))

    def test_random_forms(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.choice((2, 4))
            L = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            Q = symmetrize(SeifertForm(L))
            for p in (3, 5):
                for beta in find_characteristic_knots(Q, p):
                    self.assertTrue(all(v % p == 0 for v in Q * Matrix(beta)))
                    divisor = 0
                    for value in beta:
                        divisor = gcd(divisor, value)
                    self.assertEqual(divisor, 1)


class AdmissibilityTests(SimpleTestCase):
    def test_six_one_admissible(self):
        data = read_knot_file(SAMPLES / "six_one.knot")
        report = admissibility(data.code, symmetrize(data.seifert), 3)
        self.assertTrue(report.colorable)
        self.assertTrue(report.divides_determinant)
        self.assertTrue(report.characteristic_knots)
        self.assertTrue(report.admissible)

    def test_trefoil_not_five_admissible(self):
        data = read_knot_file(SAMPLES / "trefoil.knot")
        report = admissibility(data.code, ((-2, 1), (1, -2)), 5)
        self.assertEqual(report.determinant, 3)
        self.assertFalse(report.divides_determinant)
        self.assertFalse(report.admissible)


class TristramLevineTests(SimpleTestCase):
    def test_unknot_profile(self):
        profile = tristram_levine(SeifertForm.unknot(), 3)
        self.assertEqual(profile.values, (0, 0))
        self.assertEqual(profile.sum, 0)

    def test_trefoil_at_p3(self):
        self.assertEqual(tristram_levine_at(TREFOIL, 3, 1), -2)
        self.assertEqual(oracle_signature(TREFOIL, 3, 1), -2)
        profile = tristram_levine(SeifertForm(TREFOIL), 3)
        self.assertEqual(profile.values[0], profile.values[1])

    def test_exact_p3_matches_oracle(self):
        rng = random.Random(11)
        for _ in range(30):
            n = rng.choice((2, 4))
            A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
            self.assertEqual(tristram_levine_at(A, 3, 1), oracle_signature(A, 3, 1), msg=A)

    def test_higher_p_bounds_and_symmetry(self):
        rng = random.Random(5)
        for _ in range(10):
            A = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
            for p in (5, 7):
                values = tristram_levine(SeifertForm(A), p, dps=30).values
                self.assertEqual(values, tuple(reversed(values)), msg=A)
                for value in values:
                    self.assertLessEqual(abs(value), 2)
                self.assertEqual(values[0], oracle_signature(A, p, 1), msg=A)
