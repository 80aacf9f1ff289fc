from pathlib import Path

from django.test import SimpleTestCase
from sympy import Matrix

from dihedral.covers import (
    LEFT,
    RIGHT,
    LinkingBlock,
    build_cover,
    linking_block,
    pairing_matrix,
    resolve_block,
    transposition,
)
from dihedral.diagram import CurveCode, DiagramCode
from dihedral.exceptions import (
    InvalidColoringError,
    PreconditionError,
    TrivialColoringError,
    UnknownCurveError,
)
from dihedral.parsing import read_knot_file

SAMPLES = Path(__file__).resolve().parents[2] / "samples"


class TranspositionTests(SimpleTestCase):
    def test_color_is_fixed_sheet(self):
        for color in (1, 2, 3):
            perm = transposition(color)
            self.assertEqual(perm.array_form[color - 1], color - 1)
            self.assertEqual(perm.order(), 2)


class BuildCoverTests(SimpleTestCase):
    def test_six_one_curves_lift_to_three_loops(self):
        code = read_knot_file(SAMPLES / "six_one.knot").code
        cover = build_cover(code)
        for name in ("beta", "beta_r"):
            lifts = cover.lifts(name)
            self.assertEqual(len(lifts), 3)
            # lift j starts in sheet j
            self.assertEqual([lift[0] for lift in lifts], [1, 2, 3])
            self.assertEqual(len(lifts[0]), code.curve(name).arc_count)

    def test_curve_missing_the_knot_stays_in_its_sheet(self):
        code = read_knot_file(SAMPLES / "trefoil.knot").code
        cover = build_cover(code)
        self.assertEqual(cover.lifts("h"), ((1,), (2,), (3,)))
        self.assertEqual(cover.lifts("g"), ((1,), (2,), (3,)))

    def test_trivial_coloring_rejected(self):
        code = read_knot_file(SAMPLES / "unknot.knot").code
        with self.assertRaisesMessage(TrivialColoringError, "coloring trivial"):
            build_cover(code)

    def test_invalid_coloring_rejected(self):
        code = read_knot_file(SAMPLES / "trefoil.knot").code
        with self.assertRaises(InvalidColoringError):
            build_cover(code.recolored((1, 1, 2)))

    def test_unknown_curve(self):
        cover = build_cover(read_knot_file(SAMPLES / "trefoil.knot").code)
        with self.assertRaises(UnknownCurveError):
            cover.lifts("omega9")


class LinkingBlockTests(SimpleTestCase):
    def test_six_one_beta_block(self):
        code = read_knot_file(SAMPLES / "six_one.knot").code
        block = linking_block(code, "beta", "beta_r")
        self.assertEqual(block.entries, Matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
        self.assertEqual(block.rows(), [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        self.assertEqual((block.curve_g, block.curve_h), ("beta", "beta_r"))

    def test_resolution_without_intersections_is_unchanged(self):
        code = read_knot_file(SAMPLES / "six_one.knot").code
        cover = build_cover(code)
        left = linking_block(code, "beta", "beta_r", LEFT, cover)
        right = linking_block(code, "beta", "beta_r", RIGHT, cover)
        self.assertEqual(left.entries, right.entries)

    def test_trefoil_unknotted_loops_link_along_diagonal(self):
        code = read_knot_file(SAMPLES / "trefoil.knot").code
        block = linking_block(code, "g", "h")
        self.assertEqual(block.entries, Matrix.eye(3))

    def test_block_is_symmetric_in_its_curves(self):
        code = read_knot_file(SAMPLES / "six_one.knot").code
        forward = linking_block(code, "beta", "beta_r")
        backward = linking_block(code, "beta_r", "beta")
        self.assertEqual(backward.entries, forward.entries.T)
        self.assertEqual((backward.curve_g, backward.curve_h), ("beta_r", "beta"))
        trefoil = read_knot_file(SAMPLES / "trefoil.knot").code
        self.assertEqual(linking_block(trefoil, "h", "g").entries, linking_block(trefoil, "g", "h").entries.T)

    def test_curve_named_tags(self):
        trefoil = read_knot_file(SAMPLES / "trefoil.knot").code
        # a Hopf link away from the knot, each loop passing once under the other
        code = DiagramCode(
            trefoil.alpha_f,
            trefoil.alpha_eps,
            trefoil.alpha_t,
            trefoil.alpha_c,
            [CurveCode("u", (0,), (1,), ("v",)), CurveCode("v", (0,), (1,), ("u",))],
        )
        self.assertTrue(code.records("u") and code.records("v"))
        self.assertEqual(linking_block(code, "u", "v").entries, Matrix.eye(3))
        self.assertEqual(linking_block(code, "v", "u").entries, Matrix.eye(3))

    def test_unknown_or_unrecorded_curves(self):
        code = read_knot_file(SAMPLES / "six_one.knot").code
        with self.assertRaises(UnknownCurveError):
            linking_block(code, "beta", "gamma")
        loose = DiagramCode(
            code.alpha_f, code.alpha_eps, code.alpha_t, code.alpha_c,
            code.curves + (CurveCode("lone"), CurveCode("far")),
        )
        with self.assertRaisesMessage(UnknownCurveError, "no crossings under"):
            linking_block(loose, "lone", "far")

    def test_transposed_block(self):
        block = LinkingBlock([[1, 1, 0], [0, 1, 1], [1, 0, 1]], "omega2", "omega4")
        flipped = block.transposed()
        self.assertEqual(flipped.entries, block.entries.T)
        self.assertEqual((flipped.curve_g, flipped.curve_h), ("omega4", "omega2"))
        self.assertEqual(flipped.transposed(), block)

    def test_block_shape_checked(self):
        with self.assertRaises(PreconditionError):
            LinkingBlock([[1, 0], [0, 1]])


class ResolutionTests(SimpleTestCase):
    def test_pairing_matrix(self):
        self.assertEqual(pairing_matrix((2, 3, 1)), Matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]]))

    def test_right_resolution_adds_signed_pairing(self):
        block = LinkingBlock([[-2, 3, 0], [0, 0, 1], [3, -2, 0]], "omega3", "omega4")
        right = resolve_block(block, (2, 3, 1), -1, RIGHT)
        self.assertEqual(right.entries, Matrix([[-2, 2, 0], [0, 0, 0], [2, -2, 0]]))
        self.assertIn(("intersection", RIGHT), right.resolution_choices)
        self.assertIs(resolve_block(block, (2, 3, 1), -1, LEFT), block)
        self.assertIs(resolve_block(block, None, -1, RIGHT), block)
