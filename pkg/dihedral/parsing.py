"""Readers for knot, tri-plane and shadow-word files.

Text files are INI-like: bracketed section headers and ``key = value`` lines.
List values are whitespace separated (commas and parentheses are ignored),
matrix rows are separated by ``;``. A ``.json`` file holds the same document
as a JSON object. Sections may appear in any order.

Knot files::

    [knot]        name, p, c0
    [alpha]       f, eps (+/-), t (k, p or a curve name), c, curve (partner of the p tags)
    [curve NAME]  f, eps, t, x (heads flagged as intersection points)
    [seifert]     L = rows; labels
    [beta]        vector; seifert = rows | unknot; self_linking
    [kernel]      omega = names; beta = name; right, left = anchor names
    [anchor NAME] arcs = α-arc indices | colors = crossed colors
    [pair U V]    g, h (computed)  |  block = rows, meets, sign (given)

Word files::

    [shadow]           word, i, start_sheet, color, ends (two branch points a..f)
    [identifications]  y1, y2, y3 = sheets cycled by the gluing
"""
import configparser
import json
import logging
from pathlib import Path

import attrs
from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match
from sympy.combinatorics import Permutation

from .defect import AnchorPath
from .diagram import TAGS, CurveCode, DiagramCode, check_modulus
from .exceptions import AnchorDataError, DiagramFormatError, InputError, SchemaError
from .schemas import KNOT_SCHEMA, TRIPLANE_SCHEMA, WORD_SCHEMA
from .seifert import SeifertForm
from .shadows import DEFAULT_IDENTIFICATIONS, parse_word
from .trisect import Tangle, TriPlaneDiagram, TANGLE_NAMES, parse_braid_word

logger = logging.getLogger(__name__)

_SIGN_TOKENS = {"+": 1, "-": -1, "−": -1, "+1": 1, "-1": -1, "1": 1}


def _tokens(value):
    for junk in ",()[]":
        value = value.replace(junk, " ")
    return value.split()


def _ints(value, key):
    try:
        return [int(token) for token in _tokens(value)]
    except ValueError as exc:
        raise DiagramFormatError(f"bad integer in {key}: {value!r}") from exc


def _signs(value, key):
    signs = []
    for token in _tokens(value):
        if token not in _SIGN_TOKENS:
            raise DiagramFormatError(f"invalid sign {token!r} in {key}")
        signs.append(_SIGN_TOKENS[token])
    return signs


def _tags(value):
    # k and p in any case, anything else names a curve
    return [token.lower() if token.lower() in TAGS else token for token in _tokens(value)]


def _rows(value, key):
    if value.strip().lower() == "unknot":
        return "unknot"
    return [_ints(row, key) for row in value.split(";") if row.strip()]


def _names(value):
    return _tokens(value)


def _boolean(value, key):
    states = configparser.ConfigParser.BOOLEAN_STATES
    if value.strip().lower() not in states:
        raise DiagramFormatError(f"expected yes/no for {key}, got {value!r}")
    return states[value.strip().lower()]


def _integer(value, key):
    try:
        return int(value)
    except ValueError as exc:
        raise DiagramFormatError(f"bad integer for {key}: {value!r}") from exc


def _read_sections(text, default_section=None):
    parser = configparser.ConfigParser(
        interpolation=None,
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        default_section="__defaults__",
    )
    parser.optionxform = str
    if default_section and not text.lstrip().startswith("["):
        text = f"[{default_section}]\n{text}"
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise DiagramFormatError(f"cannot read sections: {exc}") from exc
    return [(name, dict(parser[name])) for name in parser.sections()]


def _unknown_key(section, key):
    raise DiagramFormatError(f"unknown key {key!r} in section [{section}]")


def knot_document_from_text(text):
    document = {}
    for header, values in _read_sections(text):
        kind, _, rest = header.partition(" ")
        rest = rest.strip()
        if kind == "knot":
            entry = document.setdefault("knot", {})
            for key, value in values.items():
                if key == "name":
                    entry[key] = value.strip()
                elif key in ("p", "c0"):
                    entry[key] = _integer(value, key)
                else:
                    _unknown_key(header, key)
        elif kind in ("alpha", "curve"):
            if kind == "curve" and not rest:
                raise DiagramFormatError("curve section without a name")
            entry = {}
            for key, value in values.items():
                if key in ("f", "c", "x"):
                    entry[key] = _ints(value, key)
                elif key == "eps":
                    entry[key] = _signs(value, key)
                elif key == "t":
                    entry[key] = _tags(value)
                elif key == "curve" and kind == "alpha":
                    entry[key] = value.strip()
                else:
                    _unknown_key(header, key)
            if kind == "alpha":
                document["alpha"] = entry
            else:
                document.setdefault("curves", {})[rest] = entry
        elif kind == "seifert":
            entry = document.setdefault("seifert", {})
            for key, value in values.items():
                if key == "L":
                    entry[key] = _rows(value, key)
                elif key == "labels":
                    entry[key] = _names(value)
                else:
                    _unknown_key(header, key)
        elif kind == "beta":
            entry = document.setdefault("beta", {})
            for key, value in values.items():
                if key == "vector":
                    entry[key] = _ints(value, key)
                elif key == "seifert":
                    entry[key] = _rows(value, key)
                elif key == "self_linking":
                    entry[key] = _integer(value, key)
                else:
                    _unknown_key(header, key)
        elif kind == "kernel":
            entry = document.setdefault("kernel", {})
            for key, value in values.items():
                if key == "omega":
                    entry[key] = _names(value)
                elif key in ("beta", "right", "left"):
                    entry[key] = value.strip()
                else:
                    _unknown_key(header, key)
        elif kind == "anchor":
            entry = {}
            for key, value in values.items():
                if key in ("arcs", "colors"):
                    entry[key] = _ints(value, key)
                else:
                    _unknown_key(header, key)
            document.setdefault("anchors", {})[rest] = entry
        elif kind == "pair":
            names = rest.split()
            if len(names) != 2:
                raise DiagramFormatError(f"pair section needs two curve names, got [{header}]")
            entry = {"u": names[0], "v": names[1]}
            for key, value in values.items():
                if key in ("g", "h"):
                    entry[key] = value.strip()
                elif key == "block":
                    entry[key] = _rows(value, key)
                elif key == "meets":
                    entry[key] = _ints(value, key)
                elif key == "sign":
                    entry[key] = _signs(value, key)[0]
                else:
                    _unknown_key(header, key)
            document.setdefault("pairs", []).append(entry)
        else:
            raise DiagramFormatError(f"unknown section [{header}]")
    return document


def triplane_document_from_text(text):
    document = {}
    for header, values in _read_sections(text):
        kind, _, rest = header.partition(" ")
        if kind == "triplane":
            entry = document.setdefault("triplane", {})
            for key, value in values.items():
                if key in ("b", "p"):
                    entry[key] = _integer(value, key)
                elif key == "singular":
                    entry[key] = _boolean(value, key)
                elif key == "colors":
                    entry[key] = _ints(value, key)
                else:
                    _unknown_key(header, key)
        elif kind == "tangle":
            entry = {}
            for key, value in values.items():
                if key == "word":
                    entry[key] = value.strip()
                elif key == "colors":
                    entry[key] = _ints(value, key)
                else:
                    _unknown_key(header, key)
            document.setdefault("tangles", {})[rest.strip()] = entry
        else:
            raise DiagramFormatError(f"unknown section [{header}]")
    return document


def word_document_from_text(text):
    document = {}
    for header, values in _read_sections(text, default_section="shadow"):
        if header == "shadow":
            for key, value in values.items():
                if key == "word":
                    document[key] = " ".join(value.split())
                elif key in ("i", "start_sheet", "color"):
                    document[key] = _integer(value, key)
                elif key == "ends":
                    document[key] = value.split()
                else:
                    _unknown_key(header, key)
        elif header == "identifications":
            document["identifications"] = {key: _ints(value, key) for key, value in values.items()}
        else:
            raise DiagramFormatError(f"unknown section [{header}]")
    return document


def validate_document(document, schema):
    errors = list(Draft202012Validator(schema).iter_errors(document))
    if errors:
        error = best_match(errors)
        where = "/".join(str(part) for part in error.absolute_path) or "document"
        raise SchemaError(f"{schema.get('title', 'document')} invalid at {where}: {error.message}")
    return document


def _load(path, from_text, schema):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return load_document(text, from_text, schema, "json" if path.suffix == ".json" else "text")


def load_document(text, from_text, schema, fmt="text"):
    if fmt == "json":
        try:
            document = json.loads(text) if isinstance(text, str) else text
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
    else:
        document = from_text(text)
    return validate_document(document, schema)


@attrs.frozen
class PairSpec:
    u: str
    v: str
    g: str = None
    h: str = None
    block: tuple = None
    meets: tuple = None
    sign: int = 1

    @property
    def computed(self):
        return self.block is None


@attrs.frozen
class KnotData:
    name: str
    p: int
    c0: int
    code: DiagramCode = None
    seifert: SeifertForm = None
    beta: tuple = None
    # self-linking given directly when the file carries no Seifert matrix
    self_linking: int = None
    beta_seifert: SeifertForm = attrs.field(factory=SeifertForm.unknot)
    omega: tuple = ()
    beta_name: str = "beta"
    right: str = "gamma_r"
    left: str = "gamma_l"
    anchors: dict = attrs.field(factory=dict, eq=False)
    pairs: tuple = ()


def _code(document):
    alpha = document.get("alpha")
    if alpha is None:
        return None
    curves = [
        CurveCode(name, entry.get("f", ()), entry.get("eps", ()), entry.get("t", ()), entry.get("x", ()))
        for name, entry in document.get("curves", {}).items()
    ]
    return DiagramCode(alpha["f"], alpha["eps"], alpha["t"], alpha["c"], curves, alpha.get("curve"))


def parse_diagram_code(text, fmt="text"):
    """Crossing code of a knot document given as text (or its JSON mirror)."""
    code = _code(load_document(text, knot_document_from_text, KNOT_SCHEMA, fmt))
    if code is None:
        raise DiagramFormatError("no [alpha] section: the document has no diagram")
    return code


def _basepoint_sheet(knot, code):
    # the basepoint sits on the first arc of alpha, in the sheet its color fixes
    if code is None:
        return knot.get("c0", 1)
    c0 = code.alpha_c[0] if code.alpha_c else knot.get("c0", 1)
    if "c0" in knot and knot["c0"] != c0:
        raise AnchorDataError(
            f"c0 = {knot['c0']} disagrees with the color {c0} of the first arc of alpha"
        )
    return c0


def knot_data(document, default_p=3):
    knot = document.get("knot", {})
    code = _code(document)
    seifert = SeifertForm(document["seifert"]["L"], document["seifert"].get("labels", ())) if "seifert" in document else None
    beta = document.get("beta", {})
    beta_rows = beta.get("seifert", "unknot")
    kernel = document.get("kernel", {})
    anchors = {}
    for name, entry in document.get("anchors", {}).items():
        if "colors" in entry:
            anchors[name] = AnchorPath(name, crossed_colors=tuple(entry["colors"]))
        else:
            anchors[name] = AnchorPath(name, entry.get("arcs", ()))
    pairs = tuple(
        PairSpec(
            entry["u"],
            entry["v"],
            entry.get("g"),
            entry.get("h"),
            tuple(tuple(row) for row in entry["block"]) if "block" in entry else None,
            tuple(entry["meets"]) if "meets" in entry else None,
            entry.get("sign", 1),
        )
        for entry in document.get("pairs", [])
    )
    for pair in pairs:
        if pair.computed and code is None:
            raise SchemaError(f"pair ({pair.u}, {pair.v}) asks for computed linking but the file has no [alpha]")
    p = knot.get("p", default_p)
    check_modulus(p, SchemaError)
    c0 = _basepoint_sheet(knot, code)
    return KnotData(
        name=knot.get("name", ""),
        p=p,
        c0=c0,
        code=code,
        seifert=seifert,
        beta=tuple(beta["vector"]) if "vector" in beta else None,
        self_linking=beta.get("self_linking"),
        beta_seifert=SeifertForm.unknot() if beta_rows == "unknot" else SeifertForm(beta_rows),
        omega=tuple(kernel.get("omega", ())),
        beta_name=kernel.get("beta", "beta"),
        right=kernel.get("right", "gamma_r"),
        left=kernel.get("left", "gamma_l"),
        anchors=anchors,
        pairs=pairs,
    )


def read_knot_file(path, default_p=3):
    document = _load(path, knot_document_from_text, KNOT_SCHEMA)
    logger.debug("read knot document %s with sections %s", path, sorted(document))
    return knot_data(document, default_p)


def triplane_from_document(document, default_p=3):
    head = document["triplane"]
    b = head["b"]
    p = head.get("p", default_p)
    check_modulus(p, SchemaError)
    entries = document.get("tangles", {})
    tangles = []
    for name in TANGLE_NAMES:
        entry = entries.get(name, {})
        word = parse_braid_word(entry.get("word", ""), 2 * b)
        tangles.append(Tangle(name, word, tuple(entry["colors"]) if "colors" in entry else None))
    return TriPlaneDiagram(
        b=b,
        tangles=tangles,
        colors=tuple(head["colors"]),
        p=p,
        singular=head.get("singular", True),
    )


def read_triplane_file(path, default_p=3):
    return triplane_from_document(_load(path, triplane_document_from_text, TRIPLANE_SCHEMA), default_p)


@attrs.frozen
class WordData:
    word: object
    text: str
    i: int = None
    start_sheet: int = None
    color: int = None
    ends: tuple = None
    identifications: dict = attrs.field(factory=lambda: dict(DEFAULT_IDENTIFICATIONS), eq=False)


def identifications_from_cycles(cycles):
    table = dict(DEFAULT_IDENTIFICATIONS)
    for name, cycle in cycles.items():
        if len(set(cycle)) != len(cycle):
            raise InputError(f"repeated sheet in identification of {name}")
        table[name] = Permutation([[s - 1 for s in cycle]], size=3) if len(cycle) > 1 else Permutation(2)
    return table


def word_data(document, i=None):
    i = document.get("i") if i is None else i
    return WordData(
        word=parse_word(document["word"], i),
        text=document["word"],
        i=i,
        start_sheet=document.get("start_sheet"),
        color=document.get("color"),
        ends=tuple(document["ends"]) if "ends" in document else None,
        identifications=identifications_from_cycles(document.get("identifications", {})),
    )


def read_word_file(path, i=None):
    return word_data(_load(path, word_document_from_text, WORD_SCHEMA), i)
