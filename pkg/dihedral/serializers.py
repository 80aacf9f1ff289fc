from rest_framework import serializers
from sympy import isprime

from .covers import RESOLUTIONS
from .pipeline import FORMATS


class PrimeModulusField(serializers.IntegerField):
    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not isprime(value):
            raise serializers.ValidationError("p must be an odd prime.")
        return value


# Documents are posted either as the text format of the sample files or as the JSON mirror
class DocumentRequestSerializer(serializers.Serializer):
    document = serializers.JSONField(help_text="Text of a knot/tri-plane file, or the same document as a JSON object")
    format = serializers.ChoiceField(choices=FORMATS, default="json")
    p = PrimeModulusField(min_value=3, required=False)

    def validate_document(self, value):
        if not isinstance(value, (str, dict)):
            raise serializers.ValidationError("Document must be a string or an object.")
        return value


class ColoringsRequestSerializer(DocumentRequestSerializer):
    nontrivial_only = serializers.BooleanField(default=False)


class LinkingRequestSerializer(DocumentRequestSerializer):
    g = serializers.CharField(required=False)
    h = serializers.CharField()
    resolution = serializers.ChoiceField(choices=RESOLUTIONS, required=False)


class DefectRequestSerializer(DocumentRequestSerializer):
    resolution = serializers.ChoiceField(choices=RESOLUTIONS, required=False)
    mirror = serializers.BooleanField(default=False)


class TrisectRequestSerializer(serializers.Serializer):
    p = PrimeModulusField(min_value=3, default=3)
    b = serializers.IntegerField(min_value=1)
    c = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=3, max_length=3)
    singular = serializers.BooleanField(default=False)
    format = serializers.ChoiceField(choices=FORMATS, default="json")


class EulerRequestSerializer(serializers.Serializer):
    p = PrimeModulusField(min_value=3, default=3)
    chi_b = serializers.IntegerField()
    m = serializers.IntegerField(min_value=0, default=0)
    sigma_x = serializers.IntegerField(default=0)
    e = serializers.IntegerField(default=0)
    xi = serializers.CharField(required=False, help_text="Integer or fraction such as 1/3")
    format = serializers.ChoiceField(choices=FORMATS, default="json")

    def validate_xi(self, value):
        numerator, _, denominator = value.partition("/")
        try:
            int(numerator)
            if denominator and int(denominator) == 0:
                raise ValueError
        except ValueError:
            raise serializers.ValidationError("xi must be an integer or a fraction.")
        return value


class LiftShadowRequestSerializer(serializers.Serializer):
    words = serializers.ListField(
        child=serializers.JSONField(),
        min_length=1,
        max_length=3,
        help_text="Shadow word documents: {word, i?, start_sheet?, color?, ends?, identifications?}",
    )
    i = serializers.IntegerField(min_value=0, required=False)
    start_sheet = serializers.ChoiceField(choices=[1, 2, 3], required=False)
    style = serializers.ChoiceField(choices=["unicode", "latex", "ascii"], default="unicode")
    format = serializers.ChoiceField(choices=FORMATS, default="json")
