"""Shadow words on the bridge sphere, their lifts to the torus, and genus-one identification.

The sphere carries a cell structure: six branch points a..f around a cycle of
edges x1..x3, y1..y3 bounding two 2-cells D and E. Cutting along the y edges
and taking three copies gives the sheets of the 3-fold cover, and the y edges
are glued across sheets by the permutations induced by the branch-point
colors. A shadow is a word in the edges it crosses; a letter with power -1
crosses against the edge's orientation, from its right side to its left.

Homology classes on the torus are not tabulated by hand: the lifted cell
structure is built from the gluings and H_1 is read off its boundary maps.
"""
import functools
import itertools
import logging
import re
from collections import Counter
from math import gcd

import attrs
import networkx as nx
from sympy import ZZ, Matrix
from sympy.combinatorics import Permutation
from sympy.matrices.normalforms import smith_normal_decomp

from .covers import SHEETS, act
from .exceptions import (
    CoverHomologyError,
    InputError,
    NonPrimitiveClassError,
    NotSurjectiveError,
    UnknownLetterError,
)

logger = logging.getLogger(__name__)

ALPHABET = ("x1", "x2", "x3", "y1", "y2", "y3")

# y-edge gluings of the default branch coloring
DEFAULT_IDENTIFICATIONS = {
    "y1": Permutation(0, 2, size=3),
    "y2": Permutation(0, 1, size=3),
    "y3": Permutation(1, 2, size=3),
}

SPHERE_VERTICES = ("a", "b", "c", "d", "e", "f")

# (tail, head); every branch point is an end of exactly one y edge
SPHERE_EDGES = {
    "x1": ("b", "c"),
    "x2": ("e", "d"),
    "x3": ("f", "a"),
    "y1": ("b", "a"),
    "y2": ("d", "c"),
    "y3": ("f", "e"),
}

# boundaries read counterclockwise from the corner at a; D lies left of x1 and x3
SPHERE_FACES = {
    "D": (("y1", -1), ("x1", 1), ("y2", -1), ("x2", -1), ("y3", -1), ("x3", 1)),
    "E": (("x3", -1), ("y3", 1), ("x2", 1), ("y2", 1), ("x1", -1), ("y1", 1)),
}

_SUBSCRIPTS = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")
_SUPERSCRIPTS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


@attrs.frozen
class ShadowLetter:
    name: str
    power: int = 1
    sheet: int = None

    def __attrs_post_init__(self):
        if self.name not in ALPHABET:
            raise UnknownLetterError(f"unknown letter {self.name!r}")
        if self.power not in (1, -1):
            raise InputError(f"letter powers are +1 or -1, got {self.power}")

    def inverse(self):
        return attrs.evolve(self, power=-self.power)

    def projected(self):
        return attrs.evolve(self, sheet=None)

    def render(self, style="unicode", markers=False):
        generator, index = self.name[0], self.name[1:]
        if style == "latex":
            text = f"{generator}_{index}" + (f"^{self.sheet}" if self.sheet else "")
            return text + ("^{-1}" if markers and self.power < 0 else "")
        if style == "ascii":
            text = self.name + (f"[{self.sheet}]" if self.sheet else "")
            return text + ("^-1" if markers and self.power < 0 else "")
        text = generator + index.translate(_SUBSCRIPTS)
        if self.sheet:
            text += str(self.sheet).translate(_SUPERSCRIPTS)
        return text + ("⁻¹" if markers and self.power < 0 else "")


@attrs.frozen
class ShadowWord:
    letters: tuple = attrs.field(converter=tuple, factory=tuple)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        return ShadowWord(self.letters + other.letters)

    def __mul__(self, times):
        return ShadowWord(self.letters * times)

    def inverse(self):
        return ShadowWord(letter.inverse() for letter in reversed(self.letters))

    def projected(self):
        return ShadowWord(letter.projected() for letter in self.letters)

    @property
    def lifted(self):
        return all(letter.sheet for letter in self.letters)

    def render(self, style="unicode", markers=False):
        return "".join(letter.render(style, markers) for letter in self.letters)

    def __str__(self):
        return self.render()


_TOKEN = re.compile(r"\s*(?:(?P<letter>[a-zA-Z]\d*)|(?P<open>\()|(?P<close>\))|(?P<power>\^\s*(?:-?\s*\d*\s*i|-?\s*\d+)))")


def _exponent(text, i):
    text = text.replace(" ", "").lstrip("^")
    if text.endswith("i"):
        if i is None:
            raise InputError("the word uses i but no value for i was given")
        coefficient = text[:-1]
        factor = -1 if coefficient == "-" else int(coefficient or 1)
        return factor * i
    return int(text)


def _power(word, exponent):
    if exponent < 0:
        return word.inverse() * -exponent
    return word * exponent


def parse_word(text, i=None):
    """Read ``y2 (x1 y1 y2^-1 x2 y1^-1 y2)^3i`` with i substituted."""
    stack = [[]]
    position = 0
    text = text.strip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match or match.end() == position:
            raise InputError(f"cannot read word at {text[position:]!r}")
        position = match.end()
        if match.group("letter"):
            stack[-1].append(ShadowWord([ShadowLetter(match.group("letter"))]))
        elif match.group("open"):
            stack.append([])
        elif match.group("close"):
            if len(stack) == 1:
                raise InputError("unbalanced parenthesis in word")
            group = stack.pop()
            stack[-1].append(sum(group, ShadowWord()))
        else:
            if not stack[-1]:
                raise InputError("power without a letter or group")
            stack[-1][-1] = _power(stack[-1][-1], _exponent(match.group("power"), i))
    if len(stack) != 1:
        raise InputError("unbalanced parenthesis in word")
    return sum(stack[0], ShadowWord())


def _gluing(identifications, name):
    return identifications.get(name, Permutation(2))


def lift_shadow_word(word, start_sheet, identifications=None):
    """Path lifting: a letter is labelled by the sheet of the edge it runs along."""
    if start_sheet not in SHEETS:
        raise InputError(f"start sheet must be 1, 2 or 3, got {start_sheet!r}")
    identifications = DEFAULT_IDENTIFICATIONS if identifications is None else identifications
    sheet = start_sheet
    lifted = []
    for letter in word.letters:
        sigma = _gluing(identifications, letter.name)
        if letter.power > 0:
            lifted.append(attrs.evolve(letter, sheet=sheet))
            sheet = act(sigma, sheet)
        else:
            sheet = act(~sigma, sheet)
            lifted.append(attrs.evolve(letter, sheet=sheet))
    return ShadowWord(lifted)


def end_sheet(word, start_sheet, identifications=None):
    identifications = DEFAULT_IDENTIFICATIONS if identifications is None else identifications
    sheet = start_sheet
    for letter in word.letters:
        sigma = _gluing(identifications, letter.name)
        sheet = act(sigma if letter.power > 0 else ~sigma, sheet)
    return sheet


def lift_orbits(word, identifications=None):
    """Lifts of a closed word chained along the orbits of its sheet permutation."""
    orbits = []
    seen = set()
    for start in SHEETS:
        if start in seen:
            continue
        chained = ShadowWord()
        sheet = start
        while sheet not in seen:
            seen.add(sheet)
            chained = chained + lift_shadow_word(word, sheet, identifications)
            sheet = end_sheet(word, sheet, identifications)
        orbits.append((start, chained))
    return orbits


def word_chain(word):
    """Signed count of the lifted edges a lifted word crosses."""
    chain = Counter()
    for letter in word.letters:
        if not letter.sheet:
            raise InputError(f"letter {letter.name} carries no sheet")
        chain[(letter.name, letter.sheet)] += letter.power
    return chain


def _cut(vertex):
    return next(name for name, ends in SPHERE_EDGES.items() if name[0] == "y" and vertex in ends)


def _orbits(perm):
    return [frozenset(s + 1 for s in cycle) for cycle in perm.full_cyclic_form]


def branch_point_of(sheets, identifications=None):
    """First branch point whose gluing exchanges the two sheets."""
    identifications = DEFAULT_IDENTIFICATIONS if identifications is None else identifications
    for vertex in SPHERE_VERTICES:
        if any(set(sheets) <= orbit for orbit in _orbits(_gluing(identifications, _cut(vertex)))):
            return vertex
    raise InputError(f"no branch point exchanges sheets {sheets[0]} and {sheets[1]}")


def _face_name(face):
    return f"{face[0]}{face[1]}"


def _zero_columns(matrix):
    return [j for j in range(matrix.cols) if not any(matrix[:, j])]


def _zero_rows(matrix):
    return [i for i in range(matrix.rows) if not any(matrix[i, :])]


class TorusComplex:
    """Three copies of the sphere cells with the y edges glued across sheets.

    A lifted edge is (letter, sheet), the sheet of the copy on its left side;
    the copy on its right side lies in the image of that sheet under the
    gluing. A lifted vertex is a branch point with the orbit of sheets that
    meet there. Shadows are dual chains: a letter crosses a lifted edge from
    the face on its left to the face on its right. The class of a closed dual
    chain is its pair of pairings with a basis of H_1 of the primal complex,
    ordered so that the determinant of two classes is their intersection.
    """

    def __init__(self, identifications):
        self.identifications = identifications
        self.edges = [(name, sheet) for name in ALPHABET for sheet in SHEETS]
        self.edge_index = {edge: j for j, edge in enumerate(self.edges)}
        self.faces = [(face, sheet) for face in SPHERE_FACES for sheet in SHEETS]
        self.vertices = [
            (vertex, orbit) for vertex in SPHERE_VERTICES for orbit in _orbits(self.gluing(_cut(vertex)))
        ]
        self.boundaries = {face: self._boundary(*face) for face in self.faces}
        self.left = {}
        self.right = {}
        for face, boundary in self.boundaries.items():
            for position, (edge, sign) in enumerate(boundary):
                (self.left if sign > 0 else self.right)[edge] = (face, position)
        self.basis = self._homology_basis()
        logger.debug(
            "torus complex with %d vertices, %d edges, %d faces",
            len(self.vertices), len(self.edges), len(self.faces),
        )

    def gluing(self, name):
        return _gluing(self.identifications, name)

    def _boundary(self, face, sheet):
        return tuple(
            ((name, sheet if sign > 0 else act(~self.gluing(name), sheet)), sign)
            for name, sign in SPHERE_FACES[face]
        )

    def vertex(self, name, sheet):
        if name not in SPHERE_VERTICES:
            raise InputError(f"unknown branch point {name!r}")
        return next(vertex for vertex in self.vertices if vertex[0] == name and sheet in vertex[1])

    def ends(self, edge):
        name, sheet = edge
        tail, head = SPHERE_EDGES[name]
        return self.vertex(tail, sheet), self.vertex(head, sheet)

    def primal_boundaries(self):
        d1 = Matrix.zeros(len(self.vertices), len(self.edges))
        for j, edge in enumerate(self.edges):
            tail, head = self.ends(edge)
            d1[self.vertices.index(head), j] += 1
            d1[self.vertices.index(tail), j] -= 1
        d2 = Matrix.zeros(len(self.edges), len(self.faces))
        for k, face in enumerate(self.faces):
            for edge, sign in self.boundaries[face]:
                d2[self.edge_index[edge], k] += sign
        return d1, d2

    def dual_boundary(self, chain):
        """Arrival faces minus departure faces of a chain of crossings."""
        total = Counter()
        for edge, n in chain.items():
            total[self.right[edge][0]] += n
            total[self.left[edge][0]] -= n
        return {face: n for face, n in total.items() if n}

    def star(self, vertex):
        """Crossings of every edge at a lifted vertex, once around it."""
        chain = Counter()
        for edge in self.edges:
            tail, head = self.ends(edge)
            chain[edge] += int(head == vertex) - int(tail == vertex)
        return {edge: n for edge, n in chain.items() if n}

    def _homology_basis(self):
        d1, d2 = self.primal_boundaries()
        a1, _, t1 = smith_normal_decomp(d1, domain=ZZ)
        free = _zero_columns(a1)
        # columns of d2 are cycles; rewrite them over the kernel basis t1[:, free]
        relations = (t1.inv() * d2)[free, :]
        a2, s2, _ = smith_normal_decomp(relations, domain=ZZ)
        factors = [a2[i, i] for i in range(min(a2.shape)) if a2[i, i]]
        rank = len(free) - len(factors)
        if rank != 2 or any(abs(d) != 1 for d in factors):
            raise CoverHomologyError(
                f"the glued sheets are not a torus: H_1 has rank {rank}"
                f" and invariant factors {[int(d) for d in factors]}"
            )
        generators = t1[:, free] * s2.inv()[:, _zero_rows(a2)]
        cycles = [tuple(int(v) for v in generators[:, k]) for k in range(2)]
        return self._oriented(cycles)

    def _dual_cycles(self):
        d1 = Matrix.zeros(len(self.faces), len(self.edges))
        for j, edge in enumerate(self.edges):
            d1[self.faces.index(self.right[edge][0]), j] += 1
            d1[self.faces.index(self.left[edge][0]), j] -= 1
        a, _, t = smith_normal_decomp(d1, domain=ZZ)
        return [
            {edge: int(t[j, k]) for j, edge in enumerate(self.edges) if t[j, k]}
            for k in _zero_columns(a)
        ]

    def _pairings(self, chain, cycles):
        return tuple(sum(n * cycle[self.edge_index[edge]] for edge, n in chain.items()) for cycle in cycles)

    def _oriented(self, cycles):
        for u, v in itertools.combinations(self._dual_cycles(), 2):
            form = self.intersection(u, v)
            if not form:
                continue
            (a, b), (c, d) = self._pairings(u, cycles), self._pairings(v, cycles)
            if abs(a * d - b * c) != abs(form):
                raise CoverHomologyError("the derived basis is not dual to the intersection form")
            return cycles if (a * d - b * c) * form > 0 else cycles[::-1]
        raise CoverHomologyError("the intersection form vanishes on the glued sheets")

    def pushoff(self, edge):
        """Primal path from the corner of the left face, past the tail of ``edge``, to the corner of the right face."""
        (face, i), (other, k) = self.left[edge], self.right[edge]
        path = Counter()
        for step, sign in self.boundaries[face][:i] + self.boundaries[other][k + 1:]:
            path[step] += sign
        return path

    def intersection(self, u, v):
        """Algebraic intersection of two closed dual chains."""
        pushed = Counter()
        for edge, n in v.items():
            for step, sign in self.pushoff(edge).items():
                pushed[step] += n * sign
        return sum(n * pushed[edge] for edge, n in u.items())

    def cycle_class(self, chain):
        if self.dual_boundary(chain):
            raise InputError("the lifted word is not a closed curve on the torus")
        return self._pairings(chain, self.basis)

    def edge_classes(self):
        """Contribution of each lifted edge to the class of a closed chain."""
        return {edge: (self.basis[0][j], self.basis[1][j]) for j, edge in enumerate(self.edges)}

    def crossing(self, letter):
        """Departure and arrival face of a lifted letter."""
        edge = (letter.name, letter.sheet)
        left, right = self.left[edge][0], self.right[edge][0]
        return (left, right) if letter.power > 0 else (right, left)

    def walk(self, word):
        if not word.letters:
            raise InputError("an empty word does not leave its branch point")
        steps = [self.crossing(letter) for letter in word.letters]
        for k in range(1, len(steps)):
            if steps[k - 1][1] != steps[k][0]:
                raise InputError(
                    f"letter {k + 1} of {word.projected()} leaves face {_face_name(steps[k][0])}"
                    f" but letter {k} arrives in {_face_name(steps[k - 1][1])}"
                )
        return steps[0][0], steps[-1][1]

    def branch_point(self, name, sheets):
        first, second = sheets
        vertex = self.vertex(name, first)
        if second not in vertex[1]:
            raise InputError(f"sheets {first} and {second} do not meet at branch point {name}")
        return vertex

    def connector(self, vertex, source, target):
        """Crossings of the edges at a lifted vertex leading around it from one face to another."""
        ring = nx.MultiGraph()
        for edge in self.edges:
            if vertex in self.ends(edge):
                ring.add_edge(self.left[edge][0], self.right[edge][0], key=edge)
        try:
            path = nx.shortest_path(ring, source, target)
        except (nx.NodeNotFound, nx.NetworkXNoPath) as exc:
            raise InputError(
                f"faces {_face_name(source)} and {_face_name(target)} do not meet at branch point {vertex[0]}"
            ) from exc
        chain = Counter()
        for here, there in zip(path, path[1:]):
            edge = next(iter(ring[here][there]))
            chain[edge] += 1 if self.left[edge][0] == here else -1
        return chain

    def shadow_cycle(self, shadow):
        """First lift, around the end point, second lift backwards, around the start point."""
        first, second = shadow.lifts
        start_first, end_first = self.walk(first)
        start_second, end_second = self.walk(second)
        start, end = shadow.ends
        cycle = word_chain(first)
        cycle.subtract(word_chain(second))
        cycle.update(self.connector(self.branch_point(end, shadow.end_sheets), end_first, end_second))
        cycle.update(self.connector(self.branch_point(start, shadow.starts), start_second, start_first))
        return {edge: n for edge, n in cycle.items() if n}


def torus_complex(identifications=None):
    identifications = DEFAULT_IDENTIFICATIONS if identifications is None else identifications
    key = tuple(sorted((name, tuple(perm.array_form)) for name, perm in identifications.items()))
    return _torus_complex(key)


@functools.lru_cache(maxsize=None)
def _torus_complex(key):
    return TorusComplex({name: Permutation(list(form)) for name, form in key})


def edge_classes(identifications=None):
    return torus_complex(identifications).edge_classes()


@attrs.frozen
class ClosedShadow:
    strand_color: int
    lifts: tuple
    starts: tuple
    # branch points the shadow leaves and reaches
    ends: tuple = ()
    end_sheets: tuple = ()
    identifications: dict = attrs.field(factory=lambda: dict(DEFAULT_IDENTIFICATIONS), eq=False)

    @property
    def loop(self):
        first, second = self.lifts
        return first + second.inverse()


def closed_shadow(word, strand_color, identifications=None, ends=None):
    """The two lifts leaving the branch point from the sheets its color swaps.

    ``ends`` names the branch points where the shadow starts and stops; by
    default the first ones in a..f exchanging the start and end sheets.
    """
    if strand_color not in SHEETS:
        raise InputError(f"strand color must be 1, 2 or 3, got {strand_color!r}")
    identifications = DEFAULT_IDENTIFICATIONS if identifications is None else identifications
    starts = tuple(s for s in SHEETS if s != strand_color)
    lifts = tuple(lift_shadow_word(word, s, identifications) for s in starts)
    end_sheets = tuple(end_sheet(word, s, identifications) for s in starts)
    if ends is None:
        ends = (branch_point_of(starts, identifications), branch_point_of(end_sheets, identifications))
    ends = tuple(ends)
    if len(ends) != 2 or not set(ends) <= set(SPHERE_VERTICES):
        raise InputError(f"ends must name two branch points among {', '.join(SPHERE_VERTICES)}, got {ends!r}")
    return ClosedShadow(strand_color, lifts, starts, ends, end_sheets, identifications)


@attrs.frozen
class TorusCurveClass:
    a: int
    b: int

    def __attrs_post_init__(self):
        if (self.a, self.b) != (0, 0) and gcd(self.a, self.b) != 1:
            raise NonPrimitiveClassError(f"class ({self.a}, {self.b}) is not primitive")

    @property
    def null(self):
        return (self.a, self.b) == (0, 0)

    def dot(self, other):
        """Algebraic intersection number on the torus."""
        return self.a * other.b - self.b * other.a

    def __neg__(self):
        return TorusCurveClass(-self.a, -self.b)

    def __str__(self):
        return f"({self.a}, {self.b})"


def torus_class(shadow, table=None):
    """Class of the closed shadow, summing the edge table over its crossings."""
    cycle_complex = torus_complex(shadow.identifications)
    cycle = cycle_complex.shadow_cycle(shadow)
    table = cycle_complex.edge_classes() if table is None else table
    a = sum(n * table.get(edge, (0, 0))[0] for edge, n in cycle.items())
    b = sum(n * table.get(edge, (0, 0))[1] for edge, n in cycle.items())
    return TorusCurveClass(a, b)


def loop_class(word, identifications=None):
    """Class of a closed lifted word, such as a chained orbit from lift_orbits."""
    a, b = torus_complex(identifications).cycle_class(word_chain(word))
    return TorusCurveClass(a, b)


@attrs.frozen
class BranchColoring:
    rho: tuple = attrs.field(converter=tuple)

    def __attrs_post_init__(self):
        for value in self.rho:
            if value not in SHEETS:
                raise InputError(f"branch colors lie in 1..3, got {value!r}")
        if len(set(self.rho)) < 2:
            raise NotSurjectiveError()


MERIDIAN = "meridian"
NULLHOMOTOPIC = "nullhomotopic"


def meridian_status(coloring):
    """Closed shadow of each strand of a 3-strand trivial tangle in the covering solid torus."""
    rho = coloring.rho
    if len(rho) != 3:
        raise InputError(f"a 3-strand tangle needs three colors, got {len(rho)}")
    if len(set(rho)) == 3:
        return (MERIDIAN,) * 3
    return tuple(NULLHOMOTOPIC if rho.count(value) == 1 else MERIDIAN for value in rho)


CP2 = "CP2"
CP2_BAR = "CP2-bar"
S4 = "S4"
S1_S3 = "S1xS3"
OTHER = "other"


def identify_genus_one(curves):
    """Genus-one trisection diagram from the classes of its three curves, up to homology."""
    curves = tuple(curves)
    if len(curves) != 3:
        raise InputError(f"a genus-one diagram has three curves, got {len(curves)}")
    for curve in curves:
        if curve.null:
            raise NonPrimitiveClassError("null class cannot bound a handlebody disk on the torus")
    logger.warning("genus-one identification compares homology classes only")
    alpha, beta, gamma = curves
    # orient beta and gamma so that alpha·beta = beta·gamma = 1 when those are ±1
    if alpha.dot(beta) < 0:
        beta = -beta
    if beta.dot(gamma) < 0:
        gamma = -gamma
    pairings = (alpha.dot(beta), beta.dot(gamma), gamma.dot(alpha))
    sizes = sorted(abs(value) for value in pairings)
    if sizes == [0, 0, 0]:
        return S1_S3
    if sizes == [0, 1, 1]:
        return S4
    if sizes == [1, 1, 1]:
        return CP2 if pairings[2] == 1 else CP2_BAR
    return OTHER
