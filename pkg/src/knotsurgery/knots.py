"""Knot group presentations with verified peripheral systems.

A KnotPresentation is a group presentation plus distinguished meridian and
longitude words.  The longitude is always 0-framed: its image in the (infinite
cyclic) abelianization vanishes.  Two independent construction routes exist,
the Wirtinger presentation of a braid closure (see braids.py) and the mapping
torus of a fibered surface automorphism (this module); agreement of their
invariants is the main cross-check of both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import InvalidMonodromyError, UnknownGeneratorError
from .fpgroup import (
    GeneratorSymbol,
    Presentation,
    Word,
    apply_mapping,
    commutator,
    cyclic_reduce,
    tietze_simplify_tracked,
    word_from_json,
    word_to_json,
)
from .homcount import evaluate_word, iter_homomorphisms
from .smith import abelianization, relation_matrix, smith_normal_form
from .targets import FiniteTarget


@dataclass(frozen=True)
class KnotPresentation:
    """A knot group with its peripheral pair (meridian, 0-framed longitude)."""

    group: Presentation
    meridian: Word
    longitude: Word
    genus_hint: int | None = None

    def __post_init__(self) -> None:
        n = len(self.group.generators)
        for label, w in (("meridian", self.meridian), ("longitude", self.longitude)):
            if w.max_index() >= n:
                raise UnknownGeneratorError(f"{label} uses out-of-range generator index")


@dataclass(frozen=True)
class FiberedKnotData:
    """A genus-g surface automorphism given by generator images both ways.

    The fiber group is free on a1, b1, ..., ag, bg (indices 0..2g-1, a_i at
    2(i-1), b_i at 2(i-1)+1).  ``forward`` maps each generator to its image
    under the surface automorphism, ``backward`` under the inverse.
    """

    genus: int
    forward: tuple[Word, ...]
    backward: tuple[Word, ...]

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise InvalidMonodromyError("fibered data needs genus >= 1")
        n = 2 * self.genus
        if len(self.forward) != n or len(self.backward) != n:
            raise InvalidMonodromyError(
                f"expected {n} forward and backward images, got "
                f"{len(self.forward)} and {len(self.backward)}"
            )
        for w in self.forward + self.backward:
            if w.max_index() >= n:
                raise UnknownGeneratorError("monodromy image uses out-of-range generator")


def fiber_generator_names(genus: int) -> tuple[str, ...]:
    names = []
    for i in range(1, genus + 1):
        names.append(f"a{i}")
        names.append(f"b{i}")
    return tuple(names)


def boundary_word(genus: int) -> Word:
    """The product of commutators [a1,b1]...[ag,bg], the fiber boundary."""
    w = Word()
    for i in range(genus):
        w = w * commutator(Word.generator(2 * i), Word.generator(2 * i + 1))
    return w


def apply_automorphism(data: FiberedKnotData, w: Word, direction: str = "forward") -> Word:
    """Image of a fiber word under the automorphism or its inverse."""
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")
    if w.max_index() >= 2 * data.genus:
        raise UnknownGeneratorError("word uses generators outside the fiber group")
    images = data.forward if direction == "forward" else data.backward
    return apply_mapping(w, dict(enumerate(images)))


def certify_monodromy(data: FiberedKnotData) -> None:
    """Check the automorphism and boundary certificates; raise on failure.

    The two image families must compose to the identity on every generator,
    and the boundary word's image must be a cyclic rotation of the boundary
    word (conjugate, with orientation preserved).
    """
    n = 2 * data.genus
    names = fiber_generator_names(data.genus)
    for i in range(n):
        g = Word.generator(i)
        if apply_automorphism(data, data.forward[i], "backward") != g:
            raise InvalidMonodromyError(
                f"backward(forward) is not the identity map on generator {names[i]}"
            )
        if apply_automorphism(data, data.backward[i], "forward") != g:
            raise InvalidMonodromyError(
                f"forward(backward) is not the identity map on generator {names[i]}"
            )
    boundary = boundary_word(data.genus)
    image = cyclic_reduce(apply_automorphism(data, boundary, "forward"))
    rotations = {
        boundary.letters[i:] + boundary.letters[:i] for i in range(len(boundary.letters))
    }
    if image.letters not in rotations:
        raise InvalidMonodromyError(
            "monodromy does not preserve the fiber boundary up to rotation"
        )


def mapping_torus_presentation(data: FiberedKnotData, meridian_name: str = "m") -> KnotPresentation:
    """Knot group of a fibered knot from its fiber automorphism.

    Generators are the 2g fiber generators plus the meridian m; relators say
    that conjugation by m realizes the automorphism: image(s) = m^-1 s m for
    each fiber generator s.  The longitude is the fiber boundary word.
    """
    certify_monodromy(data)
    n = 2 * data.genus
    names = fiber_generator_names(data.genus) + (meridian_name,)
    gens = tuple(GeneratorSymbol(name, i) for i, name in enumerate(names))
    m = Word.generator(n)
    relators = []
    for i in range(n):
        s = Word.generator(i)
        relators.append(data.forward[i].inverse() * m.inverse() * s * m)
    group = Presentation(gens, tuple(relators))
    return KnotPresentation(
        group=group,
        meridian=m,
        longitude=boundary_word(data.genus),
        genus_hint=data.genus,
    )


def fibered_knot_to_json(data: FiberedKnotData) -> dict:
    names = fiber_generator_names(data.genus)
    return {
        "genus": data.genus,
        "forward": {names[i]: word_to_json(w, names) for i, w in enumerate(data.forward)},
        "backward": {names[i]: word_to_json(w, names) for i, w in enumerate(data.backward)},
    }


def fibered_knot_from_json(payload: Mapping) -> FiberedKnotData:
    try:
        genus = int(payload["genus"])
    except (KeyError, TypeError, ValueError):
        raise InvalidMonodromyError("monodromy file needs an integer 'genus' field") from None
    names = fiber_generator_names(max(genus, 1))
    index = {name: i for i, name in enumerate(names)}

    def load_side(side: str) -> tuple[Word, ...]:
        table = payload.get(side)
        if not isinstance(table, Mapping):
            raise InvalidMonodromyError(f"monodromy file needs a '{side}' mapping")
        words = []
        for name in names:
            if name in table:
                words.append(word_from_json(table[name], index))
            else:
                raise InvalidMonodromyError(f"monodromy file missing image of {name!r} in '{side}'")
        return tuple(words)

    return FiberedKnotData(genus=genus, forward=load_side("forward"), backward=load_side("backward"))


def load_fibered_knot(path: str | Path) -> FiberedKnotData:
    with open(path, encoding="utf-8") as fh:
        return fibered_knot_from_json(json.load(fh))


TREFOIL_MONODROMY = FiberedKnotData(
    genus=1,
    forward=(
        Word(((0, 1), (1, 1))),  # a -> a b
        Word(((0, -1),)),        # b -> a^-1
    ),
    backward=(
        Word(((1, -1),)),        # a -> b^-1
        Word(((1, 1), (0, 1))),  # b -> b a
    ),
)

FIG8_MONODROMY = FiberedKnotData(
    genus=1,
    forward=(
        Word(((0, 1), (1, 1), (0, 1))),   # a -> a b a
        Word(((1, 1), (0, 1))),           # b -> b a
    ),
    backward=(
        Word(((0, 1), (1, -1))),          # a -> a b^-1
        Word(((1, 1), (1, 1), (0, -1))),  # b -> b^2 a^-1
    ),
)

BUILTIN_BRAIDS: dict[str, str] = {
    "unknot": "n=1;",
    "trefoil": "1 1 1",
    "fig8": "1 -2 1 -2",
}

_BUILTIN_GENUS = {"unknot": 0, "trefoil": 1, "fig8": 1}

_ALIASES = {"figure8": "fig8", "figure-eight": "fig8", "figure_eight": "fig8"}


def builtin_names() -> tuple[str, ...]:
    return tuple(BUILTIN_BRAIDS)


def _canonical_builtin(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in BUILTIN_BRAIDS:
        raise KeyError(f"unknown builtin knot {name!r}; available: {sorted(BUILTIN_BRAIDS)}")
    return key


def builtin_knot(name: str) -> KnotPresentation:
    """Wirtinger-route presentation of a builtin knot."""
    from .braids import parse_braid, wirtinger_from_braid  # local import avoids a cycle

    key = _canonical_builtin(name)
    kp = wirtinger_from_braid(parse_braid(BUILTIN_BRAIDS[key]))
    return KnotPresentation(kp.group, kp.meridian, kp.longitude, _BUILTIN_GENUS[key])


def builtin_monodromy(name: str) -> FiberedKnotData:
    """Bundled fiber automorphisms; certified against the Wirtinger route in tests."""
    key = _canonical_builtin(name)
    table = {"trefoil": TREFOIL_MONODROMY, "fig8": FIG8_MONODROMY}
    if key not in table:
        raise KeyError(f"no bundled monodromy for {name!r}")
    return table[key]


@dataclass(frozen=True)
class PeripheralCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class PeripheralReport:
    checks: tuple[PeripheralCheck, ...]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> tuple[PeripheralCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def format(self) -> str:
        lines = []
        for check in self.checks:
            status = "PASS" if check.passed else "FAIL"
            lines.append(f"{check.name}: {status} ({check.detail})")
        return "\n".join(lines)


def _lattices_match(base: Sequence[Sequence[int]], extra_row: Sequence[int]) -> bool:
    """True iff extra_row already lies in the integer row span of base."""
    stacked = [list(row) for row in base] + [list(extra_row)]
    a = smith_normal_form([row for row in base if any(row)] or [[0] * len(extra_row)])
    b = smith_normal_form(stacked)
    return a.rank == b.rank and a.factors == b.factors


def validate_peripheral(
    kp: KnotPresentation,
    targets: Sequence[FiniteTarget],
    budget: int = 10_000,
) -> PeripheralReport:
    """Run the three peripheral-system checks and report which fail.

    1. The abelianization is infinite cyclic and the meridian generates it.
    2. The longitude is nullhomologous (0-framed).
    3. Meridian and longitude images commute under every homomorphism into
       every given target (enumerated on a Tietze-simplified copy).
    """
    n = len(kp.group.generators)
    checks = []

    invariants = abelianization(kp.group)
    meridian_generates = False
    if invariants.is_infinite_cyclic:
        rows = relation_matrix(kp.group)
        stacked = rows + [list(kp.meridian.exponent_vector(n))]
        snf = smith_normal_form(stacked)
        meridian_generates = snf.rank == n and all(d == 1 for d in snf.factors)
    checks.append(
        PeripheralCheck(
            "abelianization-is-Z",
            invariants.is_infinite_cyclic and meridian_generates,
            f"H1 = {invariants}, meridian generates: {meridian_generates}",
        )
    )

    rows = relation_matrix(kp.group)
    longitude_vector = list(kp.longitude.exponent_vector(n))
    nullhomologous = (
        not any(longitude_vector)
        if not rows
        else _lattices_match(rows, longitude_vector)
    )
    checks.append(
        PeripheralCheck(
            "longitude-nullhomologous",
            nullhomologous,
            f"longitude exponent vector {tuple(longitude_vector)}",
        )
    )

    simplified, (meridian, longitude) = tietze_simplify_tracked(
        kp.group, (kp.meridian, kp.longitude), budget
    )
    commuting = True
    witness = ""
    total = 0
    for target in targets:
        mult = target.mult
        for images in iter_homomorphisms(simplified, target):
            total += 1
            m_img = evaluate_word(meridian.letters, images, target)
            l_img = evaluate_word(longitude.letters, images, target)
            if mult[m_img][l_img] != mult[l_img][m_img]:
                commuting = False
                witness = f"violation in {target.name}"
                break
        if not commuting:
            break
    detail = witness if witness else f"{total} homomorphisms over {len(targets)} targets"
    checks.append(PeripheralCheck("peripheral-commutation", commuting, detail))

    return PeripheralReport(tuple(checks))
