from pathlib import Path

from django.core.cache import cache
from django.test import SimpleTestCase, override_settings
from django.urls import reverse
from rest_framework.test import APIClient

SAMPLES = Path(__file__).resolve().parents[2] / "samples"


def sample_text(name):
    return (SAMPLES / name).read_text(encoding="utf-8")


class ApiTestCase(SimpleTestCase):
    def setUp(self):
        # throttle history lives in the cache
        cache.clear()
        self.client = APIClient()

    def post(self, name, payload):
        return self.client.post(reverse(name), payload, format="json")


class DefectEndpointTests(ApiTestCase):
    def test_six_one_text_document(self):
        resp = self.post("defect", {"document": sample_text("six_one.knot")})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        data = resp.json()
        self.assertEqual(data["sigma_w"], 1)
        self.assertEqual(data["xi"], 1)
        self.assertEqual(data["kernel_matrix"], [[1]])
        self.assertEqual(data["monodromies"]["gamma_l"], {"perm": "(123)", "value": 3})

    def test_text_format(self):
        resp = self.post("defect", {"document": sample_text("alpha_1_1.knot"), "format": "text"})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertIn("sigma_w: -1", resp.json()["text"].splitlines())

    def test_mirror(self):
        resp = self.post("defect", {"document": sample_text("six_one.knot"), "mirror": True})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertEqual(resp.json()["xi"], -1)

    def test_trivial_coloring_is_unprocessable(self):
        resp = self.post("defect", {"document": sample_text("unknot.knot")})
        self.assertEqual(resp.status_code, 422, msg=resp.content)
        self.assertEqual(resp.json(), {"error": "coloring trivial", "exit_code": 3})

    def test_malformed_document_is_bad_request(self):
        resp = self.post("defect", {"document": "[knott]\nname = x\n"})
        self.assertEqual(resp.status_code, 400, msg=resp.content)
        self.assertEqual(resp.json()["exit_code"], 2)

    def test_json_document(self):
        document = {
            "knot": {"name": "0_1"},
            "alpha": {"f": [0], "eps": [1], "t": ["k"], "c": [1]},
        }
        resp = self.post("colorings", {"document": document})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertEqual(resp.json()["count"], 3)

    def test_even_modulus_rejected_by_serializer(self):
        resp = self.post("colorings", {"document": sample_text("trefoil.knot"), "p": 4})
        self.assertEqual(resp.status_code, 400, msg=resp.content)
        self.assertIn("p", resp.json())

    def test_composite_modulus_rejected_by_serializer(self):
        resp = self.post("colorings", {"document": sample_text("trefoil.knot"), "p": 9})
        self.assertEqual(resp.status_code, 400, msg=resp.content)
        self.assertIn("p", resp.json())

    def test_composite_modulus_in_document(self):
        document = {"knot": {"p": 9}, "alpha": {"f": [0], "eps": [1], "t": ["k"], "c": [1]}}
        resp = self.post("colorings", {"document": document})
        self.assertEqual(resp.status_code, 400, msg=resp.content)
        self.assertEqual(resp.json()["exit_code"], 2)

    @override_settings(DIHEDRAL={"DEFAULT_P": 3, "DEFAULT_RESOLUTION": "left", "MAX_UPLOAD_BYTES": 64})
    def test_oversized_document(self):
        resp = self.post("defect", {"document": sample_text("six_one.knot")})
        self.assertEqual(resp.status_code, 413, msg=resp.content)


class KnotEndpointTests(ApiTestCase):
    def test_colorings(self):
        resp = self.post("colorings", {"document": sample_text("trefoil.knot"), "nontrivial_only": True})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        data = resp.json()
        self.assertEqual(data["count"], 9)
        self.assertEqual(len(data["colorings"]), 6)

    def test_charknots(self):
        resp = self.post("charknots", {"document": sample_text("six_one.knot")})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertEqual(resp.json()["symmetrized_form"], [[-2, 1], [1, 4]])

    def test_linking(self):
        resp = self.post("linking", {"document": sample_text("trefoil.knot"), "g": "g", "h": "h"})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertEqual(resp.json()["block"], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_linking_unknown_curve(self):
        resp = self.post("linking", {"document": sample_text("trefoil.knot"), "g": "g", "h": "k"})
        self.assertEqual(resp.status_code, 400, msg=resp.content)

    def test_document_modulus_wins_over_request(self):
        resp = self.post("colorings", {"document": sample_text("trefoil.knot"), "p": 5})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertEqual((resp.json()["p"], resp.json()["count"]), (3, 9))

    def test_linking_requires_h(self):
        resp = self.post("linking", {"document": sample_text("trefoil.knot"), "g": "g"})
        self.assertEqual(resp.status_code, 400, msg=resp.content)
        self.assertIn("h", resp.json())


class TrisectionEndpointTests(ApiTestCase):
    def test_trisect(self):
        resp = self.post("trisect", {"b": 3, "c": [1, 2, 2], "singular": True})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertEqual(resp.json()["trisection"], "(1;0,0,0)")

    def test_trisect_invalid_bridge_data(self):
        resp = self.post("trisect", {"b": 3, "c": [1, 2, 2]})
        self.assertEqual(resp.status_code, 422, msg=resp.content)

    def test_euler(self):
        resp = self.post("euler", {"chi_b": 2, "m": 1, "xi": "1"})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        data = resp.json()
        self.assertEqual(data["euler_characteristic"], 3)
        self.assertEqual(data["cover_signature"], 1)

    def test_euler_bad_xi(self):
        resp = self.post("euler", {"chi_b": 2, "xi": "1/0"})
        self.assertEqual(resp.status_code, 400, msg=resp.content)

    def test_triplane(self):
        resp = self.post("triplane", {"document": sample_text("six_one_plat.triplane")})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        data = resp.json()
        self.assertTrue(data["sphere_feasible"])
        self.assertIn("trisection_error", data)


class LiftShadowEndpointTests(ApiTestCase):
    def test_bare_words(self):
        resp = self.post("lift-shadow", {"words": ["y2 (x1 y1 y2^-1 x2 y1^-1 y2)^3i"], "i": 1, "style": "latex"})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        lifts = resp.json()["words"][0]["lifts"]
        self.assertEqual(
            lifts["2"],
            "y_2^2x_1^1y_1^1y_2^3x_2^3y_1^1y_2^1x_1^2y_1^2y_2^1x_2^1y_1^3y_2^3x_1^3y_1^3y_2^2x_2^2y_1^2y_2^2",
        )

    def test_genus_one_identification(self):
        words = [
            {"word": "y3 x1 y1 y2^-1", "color": 3, "ends": ["d", "f"]},
            {
                "word": "y2 (x1 y1 y2^-1 x2 y1^-1 y2)^3i x1 y1 y2^-1 x2 y1^-1 y2 x1 y1 y2^-1",
                "color": 1,
                "ends": ["f", "b"],
            },
            {"word": "y1", "color": 1, "ends": ["e", "c"]},
        ]
        resp = self.post("lift-shadow", {"words": words, "i": 2})
        self.assertEqual(resp.status_code, 200, msg=resp.content)
        self.assertEqual(resp.json()["genus_one"], "S4")

    def test_shadow_ends_must_meet_the_lifts(self):
        resp = self.post("lift-shadow", {"words": [{"word": "y1", "color": 1, "ends": ["a", "c"]}]})
        self.assertEqual(resp.status_code, 400, msg=resp.content)
        self.assertIn("branch point a", resp.json()["error"])

    def test_unknown_letter(self):
        resp = self.post("lift-shadow", {"words": ["x1 z9"]})
        self.assertEqual(resp.status_code, 400, msg=resp.content)
        self.assertEqual(resp.json()["exit_code"], 2)
