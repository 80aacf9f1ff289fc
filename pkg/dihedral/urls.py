from django.urls import path

from .views import (
    CharKnotsView,
    ColoringsView,
    DefectView,
    EulerView,
    LiftShadowView,
    LinkingView,
    TriPlaneView,
    TrisectView,
)

urlpatterns = [
    # Knot documents
    path("colorings/", ColoringsView.as_view(), name="colorings"),
    path("charknots/", CharKnotsView.as_view(), name="charknots"),
    path("linking/", LinkingView.as_view(), name="linking"),
    path("defect/", DefectView.as_view(), name="defect"),
    # Trisections
    path("trisect/", TrisectView.as_view(), name="trisect"),
    path("euler/", EulerView.as_view(), name="euler"),
    path("triplane/", TriPlaneView.as_view(), name="triplane"),
    path("lift-shadow/", LiftShadowView.as_view(), name="lift-shadow"),
]
