from pathlib import Path

from django.test import SimpleTestCase

from dihedral.exceptions import DiagramFormatError, EndpointColorMismatch, InputError, InvalidBridgeData
from dihedral.parsing import read_triplane_file
from dihedral.trisect import (
    UNLINK,
    UNVERIFIED,
    EulerData,
    PlatClosure,
    Tangle,
    TriPlaneDiagram,
    central_surface_euler,
    central_surface_genus,
    euler_char_cover,
    homotopy_cp2_constraint,
    inverse_word,
    lift_trisection_params,
    parse_braid_word,
    tangle_coloring_valid,
    unlink_status,
    validate_triplane,
)

SAMPLES = Path(__file__).resolve().parents[2] / "samples"


class TrisectionParamsTests(SimpleTestCase):
    def test_singular_three_bridge(self):
        params = lift_trisection_params(3, 3, (1, 2, 2))
        self.assertEqual(str(params), "(1;0,0,0)")

    def test_three_components_give_k_one(self):
        params = lift_trisection_params(3, 3, (1, 2, 3))
        self.assertEqual((params.k1, params.k2, params.k3), (0, 0, 1))

    def test_single_component_rejected_outside_singular_sector(self):
        with self.assertRaisesMessage(InvalidBridgeData, "invalid bridge data"):
            lift_trisection_params(3, 3, (1, 2, 2), singular_first=False)
        with self.assertRaises(InvalidBridgeData):
            lift_trisection_params(3, 3, (2, 1, 2))

    def test_unlinks_of_b_components_give_k_equal_g(self):
        for p in (3, 5, 7):
            for b in range(1, 11):
                genus = central_surface_genus(p, b)
                with self.subTest(p=p, b=b):
                    if genus < 0:
                        # two branch points cannot carry a surjective coloring
                        self.assertEqual(b, 1)
                        with self.assertRaises(InvalidBridgeData):
                            lift_trisection_params(p, b, (b, b, b), singular_first=False)
                        continue
                    params = lift_trisection_params(p, b, (b, b, b), singular_first=False)
                    self.assertEqual(params.g, genus)
                    self.assertEqual((params.k1, params.k2, params.k3), (genus, genus, genus))

    def test_one_bridge_genus_matches_central_surface(self):
        for p in (3, 5, 7):
            self.assertEqual(central_surface_genus(p, 1), -(p - 1) // 2)

    def test_central_surface(self):
        self.assertEqual(central_surface_euler(3, 3), 0)
        self.assertEqual(central_surface_genus(3, 3), 1)
        self.assertEqual(central_surface_genus(3, 2), 0)

    def test_bad_input(self):
        with self.assertRaises(InputError):
            lift_trisection_params(4, 3, (1, 2, 2))
        with self.assertRaises(InputError):
            lift_trisection_params(3, 3, (1, 2))


class EulerCharacteristicTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(euler_char_cover(EulerData(3, 2, 1)), 3)
        self.assertEqual(euler_char_cover(EulerData(3, 2, 0)), 4)
        self.assertEqual(euler_char_cover(EulerData(5, 2, 1)), 4)

    def test_linear_in_branch_euler_characteristic_and_singular_points(self):
        for p in (3, 5, 7, 11):
            half = (p - 1) // 2
            self.assertEqual(euler_char_cover(EulerData(p, 0, 0)), 2 * p)
            for chi_b in range(-4, 5):
                for m in range(0, 4):
                    with self.subTest(p=p, chi_b=chi_b, m=m):
                        chi = euler_char_cover(EulerData(p, chi_b, m))
                        self.assertEqual(euler_char_cover(EulerData(p, chi_b + 1, m)) - chi, -half)
                        self.assertEqual(euler_char_cover(EulerData(p, chi_b, m + 1)) - chi, -half)

    def test_homotopy_cp2(self):
        self.assertTrue(homotopy_cp2_constraint(3, 0, 1))
        self.assertFalse(homotopy_cp2_constraint(3, 0, 0))
        self.assertFalse(homotopy_cp2_constraint(5, 0, 1))

    def test_homotopy_cp2_with_several_singular_points(self):
        self.assertTrue(homotopy_cp2_constraint(3, 1, 3))
        self.assertTrue(homotopy_cp2_constraint(3, 2, 5))
        self.assertFalse(homotopy_cp2_constraint(3, 1, 2))
        # (p - 1) / 2 divides the left side, so only p = 3 can reach 1
        for m in range(0, 6):
            self.assertFalse(homotopy_cp2_constraint(5, 1, m))
            self.assertFalse(homotopy_cp2_constraint(7, 1, m))

    def test_bad_data(self):
        with self.assertRaises(InputError):
            EulerData(3, 2, -1)
        with self.assertRaises(InputError):
            EulerData(1, 2, 0)


class BraidWordTests(SimpleTestCase):
    def test_parse_and_invert(self):
        word = parse_braid_word("s2 -s1 s3", 4)
        self.assertEqual(word, ((2, 1), (1, -1), (3, 1)))
        self.assertEqual(inverse_word(word), ((3, -1), (1, 1), (2, -1)))

    def test_bad_letters(self):
        with self.assertRaises(DiagramFormatError):
            parse_braid_word("t1", 4)
        with self.assertRaises(DiagramFormatError):
            parse_braid_word("s4", 4)

    def test_trivial_plat_closure(self):
        closure = PlatClosure.build((), 4)
        self.assertEqual(closure.components, 2)
        self.assertEqual(closure.diagram.arc_count, 2)
        self.assertEqual(unlink_status(closure), UNLINK)
        self.assertEqual(closure.two_bridge_determinant(), 0)

    def test_trefoil_plat(self):
        closure = PlatClosure.build(parse_braid_word("s2 s2 s2", 4), 4)
        self.assertEqual(closure.components, 1)
        self.assertEqual(closure.two_bridge_determinant(), 3)

    def test_odd_strands_rejected(self):
        with self.assertRaises(DiagramFormatError):
            PlatClosure.build((), 3)


class TriPlaneTests(SimpleTestCase):
    def test_crossingless_diagram(self):
        report = validate_triplane(read_triplane_file(SAMPLES / "crossingless.triplane"))
        self.assertEqual([c.components for c in report.closures], [2, 2, 2])
        self.assertTrue(all(c.unlink_status == UNLINK for c in report.closures))
        self.assertTrue(report.coloring_valid)
        self.assertEqual(report.chi_b, 4)
        self.assertFalse(report.sphere_feasible)
        self.assertEqual(str(report.params), "(0;0,0,0)")

    def test_two_bridge_diagram_with_singular_sector(self):
        report = validate_triplane(read_triplane_file(SAMPLES / "six_one_plat.triplane"))
        first, second, third = report.closures
        self.assertEqual(first.components, 1)
        self.assertEqual(first.determinant, 9)
        self.assertTrue(first.nontrivial)
        self.assertEqual(second.components, 2)
        self.assertEqual(second.unlink_status, UNLINK)
        self.assertEqual(third.components, 1)
        self.assertTrue(report.coloring_valid)
        self.assertEqual(report.chi_b, 2)
        self.assertTrue(report.sphere_feasible)
        self.assertIsNone(report.params)
        self.assertIn("k3 = -1", report.params_error)

    def test_three_bridge_singular_diagram(self):
        with self.assertLogs("dihedral.trisect", level="WARNING") as logs:
            report = validate_triplane(read_triplane_file(SAMPLES / "six_one_bridge3.triplane"))
        self.assertEqual(len(logs.records), 3)
        self.assertEqual([c.components for c in report.closures], [1, 2, 2])
        self.assertTrue(report.coloring_valid)
        self.assertEqual(report.tangles_valid, (True, True, True))
        self.assertTrue(report.closures[0].nontrivial)
        self.assertTrue(all(c.unlink_status == UNVERIFIED for c in report.closures))
        self.assertEqual(report.chi_b, 2)
        self.assertTrue(report.sphere_feasible)
        self.assertEqual(str(report.params), "(1;0,0,0)")

    def test_three_bridge_knot_destabilizes_to_six_one(self):
        closure = PlatClosure.build(parse_braid_word("s2 -s1 -s1 s2 s1 s1 -s2", 4), 4)
        self.assertEqual(closure.components, 1)
        self.assertEqual(closure.two_bridge_determinant(), 9)
        unknotted = PlatClosure.build(parse_braid_word("s2 -s1 -s1 s1 s1 -s2", 4), 4)
        self.assertEqual(unknotted.two_bridge_determinant(), 0)

    def test_tangle_coloring(self):
        tangle = Tangle("A", parse_braid_word("s2 s2 s2 s2 -s1 s2", 4))
        self.assertTrue(tangle_coloring_valid(tangle, (3, 3, 2, 2)))
        self.assertTrue(tangle_coloring_valid(Tangle("B"), (1, 1, 2, 2)))
        self.assertFalse(tangle_coloring_valid(Tangle("B"), (1, 2, 2, 2)))

    def test_endpoint_color_mismatch(self):
        tangles = (Tangle("A", colors=(1, 1, 3, 3)), Tangle("B"), Tangle("C"))
        with self.assertRaises(EndpointColorMismatch):
            TriPlaneDiagram(2, tangles, (1, 1, 2, 2))

    def test_diagram_shape_checked(self):
        with self.assertRaises(DiagramFormatError):
            TriPlaneDiagram(2, (Tangle("A"), Tangle("B")), (1, 1, 2, 2))
        with self.assertRaises(DiagramFormatError):
            TriPlaneDiagram(2, (Tangle("A"), Tangle("B"), Tangle("C")), (1, 1, 2))
        with self.assertRaises(DiagramFormatError):
            TriPlaneDiagram(2, (Tangle("A", ((4, 1),)), Tangle("B"), Tangle("C")), (1, 1, 2, 2))
