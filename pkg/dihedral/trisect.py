"""Trisection arithmetic for dihedral covers of S⁴ and singular tri-plane diagrams.

A tangle of a tri-plane diagram is written as a braid word on 2b strands
(``s2``, ``-s1``) hanging below the standard caps (1,2), (3,4), ...; the
closure X ∪ Ȳ is the plat closure of the word of X followed by the inverse
word of Y. Colors are given on the 2b endpoints shared by all three tangles.
"""
import logging
import re

import attrs
import networkx as nx
from sympy import Matrix

from .diagram import ArcDiagram, Crossing, check_modulus, coloring_violations, residue_to_color
from .exceptions import (
    DiagramFormatError,
    EndpointColorMismatch,
    InputError,
    InvalidBridgeData,
)

logger = logging.getLogger(__name__)

TANGLE_NAMES = ("A", "B", "C")
# L₁ = A ∪ B̄, L₂ = B ∪ C̄, L₃ = C ∪ Ā
CLOSURE_PAIRS = (("A", "B"), ("B", "C"), ("C", "A"))

_LETTER = re.compile(r"^(-?)s(\d+)$")


def _check_p(p):
    check_modulus(p, InputError)


@attrs.frozen
class TrisectionParams:
    g: int
    k1: int
    k2: int
    k3: int

    def __attrs_post_init__(self):
        if self.g < 0:
            raise InvalidBridgeData(f"representation not surjective / invalid bridge data: genus {self.g}")
        for k in (self.k1, self.k2, self.k3):
            if not 0 <= k <= self.g:
                raise InvalidBridgeData(
                    f"representation not surjective / invalid bridge data: k = {k} for genus {self.g}"
                )

    def __str__(self):
        return f"({self.g};{self.k1},{self.k2},{self.k3})"


@attrs.frozen
class EulerData:
    p: int
    chi_b: int
    m: int = 0
    # normal Euler number of the branch surface, kept for the signature formula
    e: int = 0

    def __attrs_post_init__(self):
        _check_p(self.p)
        if self.m < 0:
            raise InputError(f"number of singular points must be >= 0, got {self.m}")


def euler_char_cover(data):
    half = (data.p - 1) // 2
    return 2 * data.p - half * data.chi_b - half * data.m


def homotopy_cp2_constraint(p, g_surface, m):
    return (p - 1) // 2 * (2 + 2 * g_surface - m) == 1


def central_surface_euler(p, b):
    """Euler characteristic of the cover of the bridge sphere branched at 2b points."""
    _check_p(p)
    return p * (2 - 2 * b) + 2 * b * (1 + (p - 1) // 2)


def central_surface_genus(p, b):
    return 1 - central_surface_euler(p, b) // 2


def _handlebody_parameter(p, c):
    return 1 - p * (1 - c) - c - c * (p - 1) // 2


def lift_trisection_params(p, b, c, singular_first=True):
    _check_p(p)
    c = tuple(c)
    if len(c) != 3:
        raise InputError(f"three component counts are required, got {len(c)}")
    g = 1 - p * (1 - b) - b * (1 + (p - 1) // 2)
    ks = [_handlebody_parameter(p, ci) for ci in c]
    if singular_first:
        ks[0] = 0
    for index, k in enumerate(ks, start=1):
        if k < 0:
            raise InvalidBridgeData(
                f"representation not surjective / invalid bridge data: k{index} = {k} from c{index} = {c[index - 1]}"
            )
    params = TrisectionParams(g, *ks)
    logger.info("p=%d b=%d c=%s lifts to a %s trisection", p, b, c, params)
    return params


def parse_braid_word(text, strands):
    """Tokens ``s<i>`` or ``-s<i>`` into (generator, sign) pairs."""
    letters = []
    for token in text.split() if isinstance(text, str) else text:
        match = _LETTER.match(token)
        if not match:
            raise DiagramFormatError(f"bad braid letter {token!r}")
        i = int(match.group(2))
        if not 1 <= i < strands:
            raise DiagramFormatError(f"generator s{i} out of range for {strands} strands")
        letters.append((i, -1 if match.group(1) else 1))
    return tuple(letters)


def inverse_word(word):
    return tuple((i, -sign) for i, sign in reversed(word))


@attrs.frozen
class Tangle:
    name: str
    word: tuple = attrs.field(converter=tuple, factory=tuple)
    # colors of the 2b endpoints on the bridge sphere; None to inherit the diagram's
    colors: tuple = attrs.field(default=None)

    @property
    def crossings(self):
        return len(self.word)


def _propagate_down(colors, letter, p):
    i, sign = letter
    new = list(colors)
    a, b = colors[i - 1], colors[i]
    if sign > 0:
        new[i] = a
        new[i - 1] = (2 * a - b) % p
    else:
        new[i - 1] = b
        new[i] = (2 * b - a) % p
    return new


def _propagate_up(colors, letter, p):
    i, sign = letter
    old = list(colors)
    a, b = colors[i - 1], colors[i]
    if sign > 0:
        old[i - 1] = b
        old[i] = (2 * b - a) % p
    else:
        old[i] = a
        old[i - 1] = (2 * a - b) % p
    return old


def tangle_cap_colors(tangle, boundary, p=3):
    """Endpoint colors carried up through the tangle to its caps."""
    levels = [list(boundary)]
    for letter in reversed(tangle.word):
        levels.append(_propagate_up(levels[-1], letter, p))
    return levels[-1]


def tangle_coloring_valid(tangle, boundary, p=3):
    top = tangle_cap_colors(tangle, boundary, p)
    return all((top[q] - top[q + 1]) % p == 0 for q in range(0, len(top), 2))


@attrs.frozen
class PlatClosure:
    """Plat closure of a braid word, cut into arcs and components."""

    strands: int
    word: tuple
    diagram: ArcDiagram
    # arc index of every slot (level, position)
    slot_arcs: dict = attrs.field(eq=False)
    components: int

    @classmethod
    def build(cls, word, strands):
        if strands % 2:
            raise DiagramFormatError("plat closures need an even number of strands")
        levels = len(word)
        arcs = nx.Graph()
        strings = nx.Graph()
        slots = [(t, q) for t in range(levels + 1) for q in range(1, strands + 1)]
        arcs.add_nodes_from(slots)
        strings.add_nodes_from(slots)
        unders = []
        for t, (i, sign) in enumerate(word):
            for q in range(1, strands + 1):
                if q not in (i, i + 1):
                    arcs.add_edge((t, q), (t + 1, q))
                    strings.add_edge((t, q), (t + 1, q))
            if sign > 0:
                over, under = ((t, i), (t + 1, i + 1)), ((t, i + 1), (t + 1, i))
            else:
                over, under = ((t, i + 1), (t + 1, i)), ((t, i), (t + 1, i + 1))
            arcs.add_edge(*over)
            strings.add_edge(*over)
            strings.add_edge(*under)
            unders.append((over[0], under, sign))
        for q in range(1, strands, 2):
            for t in (0, levels):
                arcs.add_edge((t, q), (t, q + 1))
                strings.add_edge((t, q), (t, q + 1))
        slot_arcs = {}
        for index, piece in enumerate(sorted(nx.connected_components(arcs), key=min)):
            for slot in piece:
                slot_arcs[slot] = index
        crossings = tuple(
            Crossing(slot_arcs[over], slot_arcs[under[0]], slot_arcs[under[1]], sign)
            for over, under, sign in unders
        )
        components = nx.number_connected_components(strings)
        diagram = ArcDiagram(len(set(slot_arcs.values())), crossings, (), components)
        return cls(strands, tuple(word), diagram, slot_arcs, components)

    def slot_colors(self, boundary_level, boundary, p=3):
        """Colors of every slot, carried both ways from one level's colors."""
        levels = {boundary_level: [c % p for c in boundary]}
        for t in range(boundary_level, len(self.word)):
            levels[t + 1] = _propagate_down(levels[t], self.word[t], p)
        for t in range(boundary_level, 0, -1):
            levels[t - 1] = _propagate_up(levels[t], self.word[t - 1], p)
        return {(t, q): colors[q - 1] for t, colors in levels.items() for q in range(1, self.strands + 1)}

    def arc_colors(self, boundary_level, boundary, p=3):
        """One color per arc, or None when some arc would carry two colors."""
        colors = [None] * self.diagram.arc_count
        for slot, color in self.slot_colors(boundary_level, boundary, p).items():
            arc = self.slot_arcs[slot]
            if colors[arc] is None:
                colors[arc] = color
            elif colors[arc] != color:
                return None
        return tuple(residue_to_color(c, p) for c in colors)

    def two_bridge_determinant(self):
        """|det| of a 4-plat read as a rational tangle; None for other widths."""
        if self.strands != 4:
            return None
        twist = {2: Matrix([[1, 1], [0, 1]]), 1: Matrix([[1, 0], [-1, 1]]), 3: Matrix([[1, 0], [-1, 1]])}
        vector = Matrix([0, 1])
        for i, sign in reversed(self.word):
            step = twist[i] if sign > 0 else twist[i].inv()
            vector = step * vector
        return abs(int(vector[0]))


UNLINK = "unlink"
UNKNOT = "unknot"
NOT_UNLINK = "not unlink"
UNVERIFIED = "unverified"


def unlink_status(closure):
    if not closure.word:
        return UNKNOT if closure.components == 1 else UNLINK
    determinant = closure.two_bridge_determinant()
    if determinant is None:
        logger.warning("unlink status of a %d-plat with crossings is unverified", closure.strands)
        return UNVERIFIED
    if determinant == 1:
        return UNKNOT
    if determinant == 0 and closure.components == 2:
        return UNLINK
    return NOT_UNLINK


@attrs.frozen
class TriPlaneDiagram:
    b: int
    tangles: tuple = attrs.field(converter=tuple)
    colors: tuple = attrs.field(converter=tuple)
    p: int = 3
    # first sector is the cone on a knot
    singular: bool = True

    def __attrs_post_init__(self):
        _check_p(self.p)
        if self.b < 1:
            raise InputError(f"bridge number must be >= 1, got {self.b}")
        if tuple(t.name for t in self.tangles) != TANGLE_NAMES:
            raise DiagramFormatError("a tri-plane diagram needs tangles A, B and C")
        if len(self.colors) != 2 * self.b:
            raise DiagramFormatError(f"{2 * self.b} endpoint colors are required, got {len(self.colors)}")
        for tangle in self.tangles:
            for i, _ in tangle.word:
                if not 1 <= i < 2 * self.b:
                    raise DiagramFormatError(f"generator s{i} out of range in tangle {tangle.name}")
            if tangle.colors is not None and tuple(tangle.colors) != tuple(self.colors):
                raise EndpointColorMismatch(
                    f"endpoint colors of tangle {tangle.name} {tuple(tangle.colors)} "
                    f"differ from {tuple(self.colors)}"
                )

    def tangle(self, name):
        return next(t for t in self.tangles if t.name == name)

    def closure(self, index):
        top, bottom = CLOSURE_PAIRS[index]
        word = self.tangle(top).word + inverse_word(self.tangle(bottom).word)
        return PlatClosure.build(word, 2 * self.b)


@attrs.frozen
class ClosureReport:
    name: str
    components: int
    arcs: int
    crossings: int
    coloring: tuple
    coloring_valid: bool
    nontrivial: bool
    unlink_status: str
    determinant: int = None


@attrs.frozen
class TriPlaneReport:
    b: int
    p: int
    tangles_valid: tuple
    closures: tuple
    chi_b: int
    sphere_feasible: bool
    params: TrisectionParams = None
    params_error: str = None

    @property
    def coloring_valid(self):
        return all(self.tangles_valid) and all(c.coloring_valid for c in self.closures)

    @property
    def nontrivial(self):
        return any(c.nontrivial for c in self.closures)


def validate_triplane(diagram):
    p = diagram.p
    tangles_valid = tuple(
        (t.name, tangle_coloring_valid(t, diagram.colors, p)) for t in diagram.tangles
    )
    closures = []
    for index, (top, bottom) in enumerate(CLOSURE_PAIRS):
        closure = diagram.closure(index)
        boundary_level = len(diagram.tangle(top).word)
        colors = closure.arc_colors(boundary_level, diagram.colors, p)
        valid = colors is not None and not coloring_violations(closure.diagram, colors, p)
        closures.append(ClosureReport(
            name=f"L{index + 1}",
            components=closure.components,
            arcs=closure.diagram.arc_count,
            crossings=len(closure.word),
            coloring=colors or (),
            coloring_valid=valid,
            nontrivial=valid and len(set(colors)) > 1,
            unlink_status=unlink_status(closure),
            determinant=closure.two_bridge_determinant(),
        ))
        logger.debug("closure %s∪%s̄: %d components", top, bottom, closure.components)
    counts = [c.components for c in closures]
    chi_b = sum(counts) - diagram.b
    params, error = None, None
    try:
        params = lift_trisection_params(p, diagram.b, counts, diagram.singular)
    except InvalidBridgeData as exc:
        error = exc.message
    return TriPlaneReport(
        b=diagram.b,
        p=p,
        tangles_valid=tuple(valid for _, valid in tangles_valid),
        closures=tuple(closures),
        chi_b=chi_b,
        sphere_feasible=chi_b <= 2,
        params=params,
        params_error=error,
    )
