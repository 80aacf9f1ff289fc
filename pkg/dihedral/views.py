import json
import logging

from django.conf import settings
from rest_framework import permissions, status
from rest_framework.response import Response
from rest_framework.throttling import ScopedRateThrottle
from rest_framework.views import APIView

from . import pipeline
from .exceptions import DihedralError, InputError
from .parsing import (
    knot_data,
    knot_document_from_text,
    load_document,
    triplane_document_from_text,
    triplane_from_document,
    word_data,
    word_document_from_text,
)
from .schemas import KNOT_SCHEMA, TRIPLANE_SCHEMA, WORD_SCHEMA
from .serializers import (
    ColoringsRequestSerializer,
    DefectRequestSerializer,
    DocumentRequestSerializer,
    EulerRequestSerializer,
    LiftShadowRequestSerializer,
    LinkingRequestSerializer,
    TrisectRequestSerializer,
)

logger = logging.getLogger(__name__)


def _load(document, from_text, schema):
    fmt = "text" if isinstance(document, str) else "json"
    return load_document(document, from_text, schema, fmt)


def _word_document(document):
    if isinstance(document, str) and "=" not in document:
        document = {"word": " ".join(document.split())}
    return _load(document, word_document_from_text, WORD_SCHEMA)


class ComputeView(APIView):
    """Base for the computation endpoints: validate, compute a report, render it.

    Errors of the computation modules map to 400 (unreadable input) or
    422 (well formed input violating a mathematical precondition).
    """

    permission_classes = [permissions.AllowAny]
    throttle_classes = [ScopedRateThrottle]
    throttle_scope = "compute"
    serializer_class = None

    def compute(self, data):
        raise NotImplementedError

    def post(self, request):
        size = len(json.dumps(request.data, default=str))
        if size > settings.DIHEDRAL["MAX_UPLOAD_BYTES"]:
            return Response({"error": "Document too large."}, status=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE)
        serializer = self.serializer_class(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        try:
            report = self.compute(data)
        except DihedralError as exc:
            code = status.HTTP_400_BAD_REQUEST if isinstance(exc, InputError) else status.HTTP_422_UNPROCESSABLE_ENTITY
            logger.info("%s rejected: %s", type(self).__name__, exc.message)
            return Response({"error": exc.message, "exit_code": exc.exit_code}, status=code)
        if data.get("format") == "text":
            return Response({"text": pipeline.emit_report(report, "text")})
        return Response(pipeline.plain(report))

    def knot(self, data):
        # p from the document wins over the request, which wins over the setting
        document = _load(data["document"], knot_document_from_text, KNOT_SCHEMA)
        return knot_data(document, data.get("p") or settings.DIHEDRAL["DEFAULT_P"])


class ColoringsView(ComputeView):
    serializer_class = ColoringsRequestSerializer

    def compute(self, data):
        knot = self.knot(data)
        return pipeline.colorings_report(
            knot, knot.p, data["nontrivial_only"], settings.DIHEDRAL["MAX_COLORING_ARCS"]
        )


class CharKnotsView(ComputeView):
    serializer_class = DocumentRequestSerializer

    def compute(self, data):
        knot = self.knot(data)
        return pipeline.charknots_report(knot, knot.p)


class LinkingView(ComputeView):
    serializer_class = LinkingRequestSerializer

    def compute(self, data):
        knot = self.knot(data)
        code = pipeline.require_code(knot)
        g = data.get("g") or code.partner
        resolution = data.get("resolution") or settings.DIHEDRAL["DEFAULT_RESOLUTION"]
        return pipeline.linking_report(knot, g, data["h"], resolution)


class DefectView(ComputeView):
    serializer_class = DefectRequestSerializer

    def compute(self, data):
        resolution = data.get("resolution") or settings.DIHEDRAL["DEFAULT_RESOLUTION"]
        return pipeline.defect_report(self.knot(data), resolution, data["mirror"])


class TrisectView(ComputeView):
    serializer_class = TrisectRequestSerializer

    def compute(self, data):
        return pipeline.trisect_report(data["p"], data["b"], data["c"], data["singular"])


class EulerView(ComputeView):
    serializer_class = EulerRequestSerializer

    def compute(self, data):
        return pipeline.euler_report(
            data["p"], data["chi_b"], data["m"], data["sigma_x"], data["e"], data.get("xi")
        )


class TriPlaneView(ComputeView):
    serializer_class = DocumentRequestSerializer

    def compute(self, data):
        document = _load(data["document"], triplane_document_from_text, TRIPLANE_SCHEMA)
        return pipeline.triplane_report(
            triplane_from_document(document, data.get("p") or settings.DIHEDRAL["DEFAULT_P"])
        )


class LiftShadowView(ComputeView):
    serializer_class = LiftShadowRequestSerializer

    def compute(self, data):
        words = [word_data(_word_document(document), data.get("i")) for document in data["words"]]
        return pipeline.lift_shadow_report(words, data.get("start_sheet"), data["style"])
