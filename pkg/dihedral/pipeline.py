"""Command pipeline shared by the management commands and the HTTP views.

Every command turns its inputs into a plain report (nested dicts, lists,
ints and strings, in a fixed key order) that ``emit_report`` renders as text
or JSON. Rationals that are not integers are written as ``"p/q"``.
"""
import json
import logging
from collections import Counter

import attrs
from django.conf import settings
from sympy import Rational
from sympy.matrices import MatrixBase

from . import covers, defect, diagram, parsing, seifert, shadows, trisect
from .exceptions import DihedralError, InputError, PreconditionError, SchemaError

logger = logging.getLogger(__name__)

COMMANDS = (
    "colorings",
    "charknots",
    "linking",
    "defect",
    "trisect",
    "euler",
    "triplane",
    "lift_shadow",
)
FORMATS = ("text", "json")


def _default_p():
    return settings.DIHEDRAL["DEFAULT_P"]


def _default_resolution():
    return settings.DIHEDRAL["DEFAULT_RESOLUTION"]


@attrs.frozen
class PipelineConfig:
    command: str
    inputs: tuple = attrs.field(converter=tuple, factory=tuple)
    p: int = attrs.field(factory=_default_p)
    fmt: str = "text"
    resolution: str = attrs.field(factory=_default_resolution)
    options: dict = attrs.field(factory=dict, eq=False)

    def __attrs_post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        diagram.check_modulus(self.p, InputError)
        if self.fmt not in FORMATS:
            raise InputError(f"unknown output format {self.fmt!r}")
        if self.resolution not in covers.RESOLUTIONS:
            raise InputError(f"resolution must be left or right, got {self.resolution!r}")

    def option(self, name, default=None):
        value = self.options.get(name)
        return default if value is None else value


@attrs.frozen
class RunResult:
    exit_code: int
    report: dict = None
    output: str = ""
    error: str = None


def plain(value):
    """Report values as JSON-compatible primitives."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, MatrixBase):
        return [[plain(value[r, c]) for c in range(value.cols)] for r in range(value.rows)]
    if isinstance(value, dict):
        return {str(key): plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(item) for item in value]
    number = Rational(value)
    return int(number) if number.q == 1 else f"{number.p}/{number.q}"


def _single_input(config):
    if len(config.inputs) != 1:
        raise InputError(f"{config.command} takes exactly one input file, got {len(config.inputs)}")
    return config.inputs[0]


def require_code(data):
    if data.code is None:
        raise SchemaError("the knot file has no [alpha] section")
    return data.code


def colorings_report(data, p, nontrivial_only=False, max_arcs=None):
    code = require_code(data)
    if max_arcs is not None and code.arc_count > max_arcs:
        raise InputError(f"diagram has {code.arc_count} arcs; enumeration is limited to {max_arcs}")
    found = diagram.enumerate_colorings(code, p)
    if nontrivial_only:
        found = tuple(c for c in found if c.nontrivial)
    given = diagram.validate_coloring(code, p)
    sizes = Counter(c.class_id for c in found)
    return {
        "knot": data.name,
        "p": p,
        "arcs": code.arc_count,
        "count": diagram.count_colorings(code, p),
        "classes": len({c.class_id for c in found}),
        "class_sizes": [sizes[key] for key in sorted(sizes)],
        "given_coloring": {
            "valid": given.valid,
            "nontrivial": given.nontrivial,
            "violations": [
                {"position": v.position, "kind": v.kind, "colors": list(v.colors)} for v in given.violations
            ],
        },
        "colorings": [
            {"colors": list(c.colors), "class": c.class_id, "nontrivial": c.nontrivial} for c in found
        ],
    }


def _require_seifert(data):
    if data.seifert is None:
        raise SchemaError("the knot file has no [seifert] section")
    return data.seifert


def charknots_report(data, p):
    form = _require_seifert(data)
    Q = seifert.symmetrize(form)
    knots = seifert.find_characteristic_knots(Q, p)
    report = {
        "knot": data.name,
        "p": p,
        "symmetrized_form": Q,
        "determinant": diagram.determinant_from_form(Q),
        "characteristic_knots": [list(k) for k in knots],
    }
    chosen = seifert.characteristic_knot(form, p, data.beta, data.beta_seifert)
    if chosen is not None:
        report["beta"] = list(chosen.beta)
        report["self_linking"] = chosen.self_linking
    if data.code is not None:
        check = seifert.admissibility(data.code, Q, p)
        report["admissibility"] = {
            "colorable": check.colorable,
            "divides_determinant": check.divides_determinant,
            "characteristic_knot_exists": bool(check.characteristic_knots),
            "admissible": check.admissible,
        }
    return report


def linking_report(data, g, h, resolution):
    code = require_code(data)
    cover = covers.build_cover(code)
    block = covers.linking_block(code, g, h, resolution, cover)
    return {
        "knot": data.name,
        "g": g,
        "h": h,
        "resolution": resolution,
        "lift_starts": {name: [lift[0] for lift in cover.lifts(name)] for name in (g, h)},
        "block": block.entries,
    }


def collect_blocks(data, resolution, cover=None):
    """Linking blocks of every listed pair, computed from the diagram or taken from the file."""
    blocks = {}
    for pair in data.pairs:
        if pair.computed:
            block = covers.linking_block(data.code, pair.g, pair.h, resolution, cover)
        else:
            block = covers.resolve_block(
                covers.LinkingBlock(pair.block, pair.u, pair.v), pair.meets, pair.sign, resolution
            )
        blocks[(pair.u, pair.v)] = block
    return blocks


def _self_linking(data, p, mirror):
    if data.seifert is not None:
        form = data.seifert.negated() if mirror else data.seifert
        knot = seifert.characteristic_knot(form, p, data.beta, data.beta_seifert)
        if knot is None:
            raise PreconditionError(f"no mod {p} characteristic knot on this Seifert surface")
        return knot.beta, knot.self_linking
    if data.self_linking is None:
        raise SchemaError("the knot file needs [seifert] or a [beta] self_linking value")
    return data.beta, -data.self_linking if mirror else data.self_linking


def defect_report(data, resolution, mirror=False, dps=None):
    p = data.p
    if p != 3:
        raise PreconditionError(f"the kernel signature is only computed for p = 3, got p = {p}")
    cover = covers.build_cover(data.code) if data.code is not None else None
    beta, self_link = _self_linking(data, p, mirror)
    beta_form = data.beta_seifert.negated() if mirror else data.beta_seifert
    profile = seifert.tristram_levine(beta_form, p, dps)
    monodromies = {name: defect.monodromy(path, data.code) for name, path in data.anchors.items()}
    selection = defect.select_kernel_curves(
        monodromies, data.c0, data.omega, data.beta_name, data.right, data.left
    )
    blocks = collect_blocks(data, resolution, cover)
    if mirror:
        blocks = defect.negate_blocks(blocks)
    matrix = defect.assemble_kernel_matrix(blocks, selection)
    sigma_w = defect.signature(matrix)
    result = defect.compute_defect(p, self_link, profile, sigma_w, matrix)
    verdict = defect.ribbon_obstruction_check(result.xi, p)
    logger.info("defect of %s: sigma_w=%d xi=%s", data.name or "knot", sigma_w, result.xi)
    return {
        "knot": data.name,
        "p": p,
        "c0": data.c0,
        "resolution": resolution,
        "mirror": mirror,
        "beta": list(beta) if beta is not None else None,
        "self_linking": self_link,
        "tristram_levine": list(profile.values),
        "monodromies": {
            name: {"perm": mono.cycle_notation(), "value": mono.evaluate(data.c0)}
            for name, mono in monodromies.items()
        },
        "selection": {name: list(pair) for name, pair in selection.pairs()},
        "blocks": {f"{u},{v}": block.entries for (u, v), block in blocks.items()},
        "kernel_matrix": matrix,
        "sigma_w": sigma_w,
        "term_selflink": result.term_selflink,
        "term_tl": result.term_tl,
        "xi": result.xi,
        "abs_xi": abs(result.xi),
        "integral": result.integral,
        "ribbon": {"bound": verdict.bound, "consistent": verdict.consistent},
    }


def trisect_report(p, b, c, singular):
    params = trisect.lift_trisection_params(p, b, c, singular)
    return {
        "p": p,
        "b": b,
        "c": list(c),
        "singular": singular,
        "central_surface_euler": trisect.central_surface_euler(p, b),
        "g": params.g,
        "k": [params.k1, params.k2, params.k3],
        "trisection": str(params),
    }


def euler_report(p, chi_b, m, sigma_x=None, e=0, xi=None):
    data = trisect.EulerData(p, chi_b, m, e)
    report = {
        "p": p,
        "chi_b": chi_b,
        "m": m,
        "euler_characteristic": trisect.euler_char_cover(data),
    }
    if chi_b <= 2 and chi_b % 2 == 0:
        report["homotopy_cp2_possible"] = trisect.homotopy_cp2_constraint(p, (2 - chi_b) // 2, m)
    if xi is not None:
        xi = Rational(xi)
        report["cover_signature"] = defect.cover_signature(sigma_x or 0, p, e, xi)
        verdict = defect.ribbon_obstruction_check(xi, p)
        report["ribbon"] = {"bound": verdict.bound, "consistent": verdict.consistent}
    return report


def triplane_report(figure):
    result = trisect.validate_triplane(figure)
    report = {
        "b": result.b,
        "p": result.p,
        "tangles_valid": dict(zip(trisect.TANGLE_NAMES, result.tangles_valid)),
        "closures": [
            {
                "name": c.name,
                "components": c.components,
                "arcs": c.arcs,
                "crossings": c.crossings,
                "coloring_valid": c.coloring_valid,
                "nontrivial": c.nontrivial,
                "unlink_status": c.unlink_status,
                "determinant": c.determinant,
            }
            for c in result.closures
        ],
        "chi_b": result.chi_b,
        "sphere_feasible": result.sphere_feasible,
        "coloring_valid": result.coloring_valid,
        "nontrivial": result.nontrivial,
    }
    if result.params is not None:
        report["trisection"] = str(result.params)
    else:
        report["trisection_error"] = result.params_error
    return report


def lift_shadow_report(words, start_sheet=None, style="unicode"):
    """Lifts of one or more shadow words; three colored words are also identified."""
    entries = []
    classes = []
    for data in words:
        entry = {"word": data.text, "i": data.i, "letters": len(data.word)}
        if start_sheet or data.start_sheet:
            sheet = start_sheet or data.start_sheet
            entry["start_sheet"] = sheet
            entry["lift"] = shadows.lift_shadow_word(data.word, sheet, data.identifications).render(style)
        else:
            entry["lifts"] = {
                str(s): shadows.lift_shadow_word(data.word, s, data.identifications).render(style)
                for s in covers.SHEETS
            }
        if data.color:
            closed = shadows.closed_shadow(data.word, data.color, data.identifications, data.ends)
            curve = shadows.torus_class(closed)
            classes.append(curve)
            entry["closed_shadow"] = [lift.render(style) for lift in closed.lifts]
            entry["ends"] = list(closed.ends)
            entry["torus_class"] = [curve.a, curve.b]
        entries.append(entry)
    report = {"words": entries}
    if len(classes) == 3 and len(words) == 3:
        report["genus_one"] = shadows.identify_genus_one(classes)
        report["check"] = "homology classes on the torus"
    return report


def run(config):
    """Dispatch one command; errors become a nonzero exit code with the module's message."""
    logger.info("running %s on %s", config.command, ", ".join(map(str, config.inputs)) or "arguments")
    try:
        report = _dispatch(config)
    except DihedralError as exc:
        logger.info("%s failed with exit code %d: %s", config.command, exc.exit_code, exc.message)
        return RunResult(exc.exit_code, error=exc.message)
    return RunResult(0, report, emit_report(report, config.fmt))


def _dispatch(config):
    command = config.command
    if command == "colorings":
        data = parsing.read_knot_file(_single_input(config), config.p)
        return colorings_report(
            data, data.p, config.option("nontrivial_only", False), config.option("max_arcs")
        )
    if command == "charknots":
        data = parsing.read_knot_file(_single_input(config), config.p)
        return charknots_report(data, data.p)
    if command == "linking":
        data = parsing.read_knot_file(_single_input(config), config.p)
        code = require_code(data)
        h = config.option("h")
        if h is None:
            raise InputError("linking needs the curve h")
        return linking_report(data, config.option("g", code.partner), h, config.resolution)
    if command == "defect":
        data = parsing.read_knot_file(_single_input(config), config.p)
        return defect_report(data, config.resolution, config.option("mirror", False))
    if command == "trisect":
        return trisect_report(
            config.p, config.option("b", 1), config.option("c", (1, 1, 1)), config.option("singular", False)
        )
    if command == "euler":
        return euler_report(
            config.p,
            config.option("chi_b", 2),
            config.option("m", 0),
            config.option("sigma_x", 0),
            config.option("e", 0),
            config.option("xi"),
        )
    if command == "triplane":
        return triplane_report(parsing.read_triplane_file(_single_input(config), config.p))
    words = [parsing.read_word_file(path, config.option("i")) for path in config.inputs]
    if not words:
        raise InputError("lift_shadow needs at least one word file")
    return lift_shadow_report(words, config.option("start_sheet"), config.option("style", "unicode"))


def _scalar(value):
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _is_matrix(value):
    return bool(value) and all(isinstance(row, list) for row in value) and all(
        not isinstance(item, (list, dict)) for row in value for item in row
    )


def _text_lines(value, indent=0):
    pad = "  " * indent
    lines = []
    for key, item in value.items():
        if isinstance(item, dict):
            lines.append(f"{pad}{key}:" + ("" if item else " {}"))
            lines.extend(_text_lines(item, indent + 1))
        elif isinstance(item, list) and not item:
            lines.append(f"{pad}{key}: []")
        elif isinstance(item, list) and _is_matrix(item):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  " + " ".join(_scalar(x) for x in row) for row in item)
        elif isinstance(item, list) and all(isinstance(x, dict) for x in item):
            lines.append(f"{pad}{key}:")
            for entry in item:
                nested = _text_lines(entry, indent + 2)
                if nested:
                    nested[0] = f"{pad}  - " + nested[0].lstrip()
                lines.extend(nested)
        elif isinstance(item, list):
            lines.append(f"{pad}{key}: [" + ", ".join(_scalar(x) for x in item) + "]")
        else:
            lines.append(f"{pad}{key}: {_scalar(item)}")
    return lines


def emit_report(report, fmt="text"):
    report = plain(report)
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False)
    return "\n".join(_text_lines(report))
