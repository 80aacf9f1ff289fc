"""JSON schemas of the input documents (the text formats are read into the same shape)."""

_INTS = {"type": "array", "items": {"type": "integer"}}
_SIGNS = {"type": "array", "items": {"enum": [1, -1]}}
_TAGS = {"type": "array", "items": {"type": "string"}}
_ROWS = {"type": "array", "items": _INTS}
_BLOCK = {"type": "array", "items": _INTS, "minItems": 3, "maxItems": 3}
_NAME = {"type": "string", "minLength": 1}
_MODULUS = {"type": "integer", "minimum": 3, "not": {"multipleOf": 2}}

CURVE_SCHEMA = {
    "type": "object",
    "properties": {
        "f": _INTS,
        "eps": _SIGNS,
        "t": _TAGS,
        "x": _INTS,
    },
    "additionalProperties": False,
}

KNOT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "knot document",
    "type": "object",
    "properties": {
        "knot": {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "p": _MODULUS,
                "c0": {"enum": [1, 2, 3]},
            },
            "additionalProperties": False,
        },
        "alpha": {
            "type": "object",
            "properties": {
                "f": _INTS,
                "eps": _SIGNS,
                "t": _TAGS,
                "c": _INTS,
                "curve": _NAME,
            },
            "required": ["f", "eps", "t", "c"],
            "additionalProperties": False,
        },
        "curves": {"type": "object", "additionalProperties": CURVE_SCHEMA},
        "seifert": {
            "type": "object",
            "properties": {
                "L": _ROWS,
                "labels": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["L"],
            "additionalProperties": False,
        },
        "beta": {
            "type": "object",
            "properties": {
                "vector": _INTS,
                "seifert": {"oneOf": [{"const": "unknot"}, _ROWS]},
                "self_linking": {"type": "integer"},
            },
            "additionalProperties": False,
        },
        "kernel": {
            "type": "object",
            "properties": {
                "omega": {"type": "array", "items": _NAME},
                "beta": _NAME,
                "right": _NAME,
                "left": _NAME,
            },
            "additionalProperties": False,
        },
        "anchors": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "properties": {
                    "arcs": _INTS,
                    "colors": {"type": "array", "items": {"enum": [1, 2, 3]}},
                },
                "additionalProperties": False,
            },
        },
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "u": _NAME,
                    "v": _NAME,
                    "g": _NAME,
                    "h": _NAME,
                    "block": _BLOCK,
                    "meets": {"type": "array", "items": {"enum": [1, 2, 3]}, "minItems": 3, "maxItems": 3},
                    "sign": {"enum": [1, -1]},
                },
                "required": ["u", "v"],
                "oneOf": [{"required": ["g", "h"]}, {"required": ["block"]}],
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

TRIPLANE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "tri-plane document",
    "type": "object",
    "properties": {
        "triplane": {
            "type": "object",
            "properties": {
                "b": {"type": "integer", "minimum": 1},
                "p": _MODULUS,
                "singular": {"type": "boolean"},
                "colors": _INTS,
            },
            "required": ["b", "colors"],
            "additionalProperties": False,
        },
        "tangles": {
            "type": "object",
            "properties": {
                name: {
                    "type": "object",
                    "properties": {"word": {"type": "string"}, "colors": _INTS},
                    "additionalProperties": False,
                }
                for name in ("A", "B", "C")
            },
            "additionalProperties": False,
        },
    },
    "required": ["triplane"],
    "additionalProperties": False,
}

WORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "shadow word document",
    "type": "object",
    "properties": {
        "word": {"type": "string"},
        "i": {"type": "integer", "minimum": 0},
        "start_sheet": {"enum": [1, 2, 3]},
        "color": {"enum": [1, 2, 3]},
        "ends": {
            "type": "array",
            "items": {"enum": ["a", "b", "c", "d", "e", "f"]},
            "minItems": 2,
            "maxItems": 2,
        },
        "identifications": {
            "type": "object",
            "propertyNames": {"enum": ["y1", "y2", "y3"]},
            "additionalProperties": {
                "type": "array",
                "items": {"enum": [1, 2, 3]},
                "maxItems": 3,
            },
        },
    },
    "required": ["word"],
    "additionalProperties": False,
}
