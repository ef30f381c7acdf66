"""Finite permutation groups used as homomorphism-counting targets.

Permutations act on 0..degree-1 and are stored as image tuples; composition
is (a * b)(x) = a(b(x)).  A FiniteTarget carries its fully enumerated element
list together with multiplication and inverse tables so that hom counting is
a pure table-lookup loop.  Cycle notation in files is 1-based, as usual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ClosureCapExceededError

Perm = tuple[int, ...]

DEFAULT_CLOSURE_CAP = 100_000


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(a: Perm, b: Perm) -> Perm:
    """Apply b first, then a."""
    return tuple(a[b[i]] for i in range(len(a)))


def invert_perm(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _check_perm(p: Sequence[int], degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise ValueError(f"not a permutation of degree {degree}: {p}")
    return p


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation like ``(1 2 3)(4 5)``; fixed points omitted."""
    mapping = list(range(degree))
    seen: set[int] = set()
    body = text.strip()
    if body in ("", "()"):
        return tuple(mapping)
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"bad cycle notation: {text!r}")
    for chunk in body[1:-1].split(")("):
        points = [int(tok) - 1 for tok in chunk.replace(",", " ").split()]
        if len(points) < 2:
            raise ValueError(f"cycles need at least two points: {text!r}")
        for x in points:
            if not 0 <= x < degree:
                raise ValueError(f"point {x + 1} out of range for degree {degree}")
            if x in seen:
                raise ValueError(f"point {x + 1} repeated in {text!r}")
            seen.add(x)
        for i, x in enumerate(points):
            mapping[x] = points[(i + 1) % len(points)]
    return tuple(mapping)


def cycle_string(p: Perm) -> str:
    """1-based disjoint cycle notation; identity renders as ``()``."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cycle.append(x)
            seen[x] = True
            x = p[x]
        cycles.append("(" + " ".join(str(i + 1) for i in cycle) + ")")
    return "".join(cycles) if cycles else "()"


@dataclass(frozen=True)
class FiniteTarget:
    """A finite permutation group with enumerated elements and lookup tables."""

    name: str
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    mult: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    identity_index: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteTarget({self.name}, order={self.order})"


def close_target(
    name: str,
    generators: Iterable[Sequence[int]],
    degree: int | None = None,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> FiniteTarget:
    """Saturate the generators into a full element list and build tables.

    Elements are discovered breadth-first as words in the generators; the
    full multiplication table is then filled by index lookups alone (element
    k factors as parent(k) * generator, so a*k = (a*parent(k)) * generator),
    avoiding a quadratic number of permutation compositions.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree required when no generators are given")
        degree = len(gens[0])
    gens = [_check_perm(g, degree) for g in gens]
    identity = identity_perm(degree)
    index: dict[Perm, int] = {identity: 0}
    elements: list[Perm] = [identity]
    parent: list[tuple[int, int]] = [(0, -1)]  # (parent index, generator letter)
    by_gen: list[list[int]] = [[]]  # by_gen[i][g] = index(elements[i] * gens[g])
    frontier = [0]
    while frontier:
        next_frontier = []
        for i in frontier:
            x = elements[i]
            row = [0] * len(gens)
            for g_idx, g in enumerate(gens):
                y = compose(x, g)
                j = index.get(y)
                if j is None:
                    if len(elements) >= cap:
                        raise ClosureCapExceededError(
                            f"closure of {name!r} exceeded cap {cap}"
                        )
                    j = len(elements)
                    index[y] = j
                    elements.append(y)
                    parent.append((i, g_idx))
                    by_gen.append([])
                    next_frontier.append(j)
                row[g_idx] = j
            by_gen[i] = row
        frontier = next_frontier
    order = len(elements)
    mult_rows = []
    for i in range(order):
        row = [0] * order
        row[0] = i
        for k in range(1, order):
            pk, gk = parent[k]
            row[k] = by_gen[row[pk]][gk]
        mult_rows.append(tuple(row))
    mult = tuple(mult_rows)
    inverse = tuple(index[invert_perm(a)] for a in elements)
    return FiniteTarget(
        name=name,
        degree=degree,
        generators=tuple(gens),
        elements=tuple(elements),
        mult=mult,
        inverse=inverse,
        identity_index=0,
    )


def cyclic(n: int) -> FiniteTarget:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    rotation = tuple((i + 1) % n for i in range(n))
    return close_target(f"C{n}", [rotation], degree=n)


def symmetric(n: int) -> FiniteTarget:
    if n < 2:
        raise ValueError("symmetric target needs degree >= 2")
    swap = (1, 0) + tuple(range(2, n))
    rotation = tuple((i + 1) % n for i in range(n))
    return close_target(f"S{n}", [swap, rotation], degree=n)


def alternating(n: int) -> FiniteTarget:
    if n < 3:
        raise ValueError("alternating target needs degree >= 3")
    three_cycle = (1, 2, 0) + tuple(range(3, n))
    if n % 2 == 1:
        big = tuple((i + 1) % n for i in range(n))
    else:
        big = (0,) + tuple(1 + ((i + 1) % (n - 1)) for i in range(n - 1))
    return close_target(f"A{n}", [three_cycle, big], degree=n)


def dihedral(n: int) -> FiniteTarget:
    """Symmetries of the n-gon, order 2n."""
    if n < 3:
        raise ValueError("dihedral target needs n >= 3")
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((n - i) % n for i in range(n))
    return close_target(f"D{n}", [rotation, reflection], degree=n)


@lru_cache(maxsize=None)
def standard_suite() -> tuple[FiniteTarget, ...]:
    """The fixed default target list: C2..C6, S3, S4, S5, A4, A5, D4, D5."""
    return (
        cyclic(2),
        cyclic(3),
        cyclic(4),
        cyclic(5),
        cyclic(6),
        symmetric(3),
        symmetric(4),
        symmetric(5),
        alternating(4),
        alternating(5),
        dihedral(4),
        dihedral(5),
    )


def suite_from_json(data: Sequence[dict], cap: int = DEFAULT_CLOSURE_CAP) -> tuple[FiniteTarget, ...]:
    out = []
    for entry in data:
        degree = int(entry["degree"])
        gens = [parse_cycles(text, degree) for text in entry["generators"]]
        out.append(close_target(str(entry["name"]), gens, degree=degree, cap=cap))
    return tuple(out)


def suite_to_json(suite: Iterable[FiniteTarget]) -> list[dict]:
    return [
        {
            "name": t.name,
            "degree": t.degree,
            "generators": [cycle_string(g) for g in t.generators],
        }
        for t in suite
    ]


def load_suite(path: str | Path, cap: int = DEFAULT_CLOSURE_CAP) -> tuple[FiniteTarget, ...]:
    with open(path, encoding="utf-8") as fh:
        return suite_from_json(json.load(fh), cap=cap)


@lru_cache(maxsize=None)
def escalation_suite() -> tuple[FiniteTarget, ...]:
    """Bundled larger targets, cheapest first, for separating stubborn pairs."""
    text = resources.files("knotsurgery").joinpath("data/targets_extended.json").read_text()
    return suite_from_json(json.loads(text))


def extended_suite() -> tuple[FiniteTarget, ...]:
    return standard_suite() + escalation_suite()


def resolve_suite(spec: str) -> tuple[FiniteTarget, ...]:
    """Map a CLI suite spec ("standard", "extended", or a file path) to targets."""
    if spec == "standard":
        return standard_suite()
    if spec == "extended":
        return extended_suite()
    return load_suite(spec)
