"""Exact homomorphism counting into finite permutation groups.

The count is a depth-first assignment of generator images.  Generators are
ordered so that relators acquire full support as early as possible (relators
with the smallest support are scheduled first), and a branch is pruned the
moment any fully assigned relator fails to evaluate to the identity.  The
result equals naive enumeration over all |H|^n assignments.

Generators appearing in no relator contribute an exact factor of |H| each.
The search splits cleanly on the first generator's image, so partial counts
from independent workers add up to the same total as a sequential run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import MismatchedTargetsError
from .fpgroup import Letter, Presentation
from .targets import FiniteTarget


@dataclass(frozen=True)
class _SearchPlan:
    order: tuple[int, ...]
    completes: tuple[tuple[tuple[Letter, ...], ...], ...]
    free: tuple[int, ...]


def _plan(p: Presentation) -> _SearchPlan:
    supports = [sorted(r.support()) for r in p.relators]
    by_size = sorted(range(len(supports)), key=lambda i: (len(supports[i]), i))
    order: list[int] = []
    placed: set[int] = set()
    for i in by_size:
        for g in supports[i]:
            if g not in placed:
                placed.add(g)
                order.append(g)
    free = tuple(g for g in range(len(p.generators)) if g not in placed)
    position = {g: k for k, g in enumerate(order)}
    completes: list[list[tuple[Letter, ...]]] = [[] for _ in order]
    for i, support in enumerate(supports):
        depth = max(position[g] for g in support)
        completes[depth].append(p.relators[i].letters)
    return _SearchPlan(tuple(order), tuple(tuple(c) for c in completes), free)


def evaluate_word(
    letters: Sequence[Letter], images: Sequence[int], target: FiniteTarget
) -> int:
    """Element index of a word under the given generator-image assignment."""
    mult = target.mult
    inv = target.inverse
    x = target.identity_index
    for g, e in letters:
        y = images[g]
        x = mult[x][y if e == 1 else inv[y]]
    return x


def _count(p: Presentation, target: FiniteTarget, first_image: int | None) -> int:
    plan = _plan(p)
    order, completes = plan.order, plan.completes
    mult = target.mult
    inv = target.inverse
    identity = target.identity_index
    n_elements = target.order
    images = [0] * len(p.generators)
    depth_count = len(order)

    def dfs(depth: int) -> int:
        if depth == depth_count:
            return 1
        g = order[depth]
        checks = completes[depth]
        total = 0
        if depth == 0 and first_image is not None:
            candidates: Sequence[int] = (first_image,)
        else:
            candidates = range(n_elements)
        for h in candidates:
            images[g] = h
            ok = True
            for relator in checks:
                x = identity
                for gen, e in relator:
                    y = images[gen]
                    x = mult[x][y if e == 1 else inv[y]]
                if x != identity:
                    ok = False
                    break
            if ok:
                total += dfs(depth + 1)
        return total

    return dfs(0) * n_elements ** len(plan.free)


def count_homomorphisms(p: Presentation, target: FiniteTarget) -> int:
    """Exact |Hom(G, H)| for the presented group G and finite target H."""
    return _count(p, target, None)


def count_homomorphisms_split(p: Presentation, target: FiniteTarget) -> int:
    """Same count, summed over the first searched generator's image.

    Exercises the parallel contract: the branch sets partitioned by the first
    image are independent, and exact integer addition of their counts must be
    schedule-independent.
    """
    if not _plan(p).order:
        return count_homomorphisms(p, target)
    return sum(_count(p, target, h) for h in range(target.order))


def iter_homomorphisms(p: Presentation, target: FiniteTarget) -> Iterator[tuple[int, ...]]:
    """Yield every homomorphism as a tuple of element indices per generator."""
    plan = _plan(p)
    sequence = plan.order + plan.free
    completes = plan.completes + tuple(() for _ in plan.free)
    identity = target.identity_index
    images = [0] * len(p.generators)

    def dfs(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == len(sequence):
            yield tuple(images)
            return
        g = sequence[depth]
        for h in range(target.order):
            images[g] = h
            if all(
                evaluate_word(r, images, target) == identity for r in completes[depth]
            ):
                yield from dfs(depth + 1)

    if not sequence:
        yield ()
        return
    yield from dfs(0)


@dataclass(frozen=True)
class HomSpectrum:
    """Counts |Hom(G, H)| in the requested target order."""

    entries: tuple[tuple[str, int], ...]

    @property
    def target_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(count for _, count in self.entries)

    def extended(self, more: "HomSpectrum") -> "HomSpectrum":
        return HomSpectrum(self.entries + more.entries)


def hom_spectrum(p: Presentation, targets: Sequence[FiniteTarget]) -> HomSpectrum:
    return HomSpectrum(tuple((t.name, count_homomorphisms(p, t)) for t in targets))


DISTINGUISHED = "DISTINGUISHED"
UNRESOLVED = "UNRESOLVED"


@dataclass(frozen=True)
class PairComparison:
    left: str
    right: str
    status: str
    target: str | None = None
    counts: tuple[int, int] | None = None


@dataclass(frozen=True)
class DistinguishReport:
    """Pairwise spectrum comparison; UNRESOLVED never asserts isomorphism."""

    labels: tuple[str, ...]
    target_names: tuple[str, ...]
    pairs: tuple[PairComparison, ...]

    @property
    def all_distinguished(self) -> bool:
        return all(pair.status == DISTINGUISHED for pair in self.pairs)

    @property
    def unresolved_pairs(self) -> tuple[PairComparison, ...]:
        return tuple(pair for pair in self.pairs if pair.status == UNRESOLVED)

    def status(self, left: str, right: str) -> str:
        if left == right:
            return UNRESOLVED
        for pair in self.pairs:
            if {pair.left, pair.right} == {left, right}:
                return pair.status
        raise KeyError(f"no pair ({left!r}, {right!r}) in report")

    def format(self) -> str:
        lines = [
            f"targets: {', '.join(self.target_names)}",
            f"items: {', '.join(self.labels)}",
        ]
        for pair in self.pairs:
            if pair.status == DISTINGUISHED:
                a, b = pair.counts
                lines.append(
                    f"{pair.left} vs {pair.right}: DISTINGUISHED at {pair.target}"
                    f" (counts {a} vs {b})"
                )
            else:
                lines.append(f"{pair.left} vs {pair.right}: UNRESOLVED")
        n_dist = sum(1 for pair in self.pairs if pair.status == DISTINGUISHED)
        lines.append(f"summary: {n_dist}/{len(self.pairs)} pairs distinguished")
        if n_dist < len(self.pairs):
            lines.append(
                "note: UNRESOLVED means this target suite does not separate the"
                " pair; it is not evidence that the groups are isomorphic."
            )
        return "\n".join(lines)


def distinguish_report(items: Sequence[tuple[str, HomSpectrum]]) -> DistinguishReport:
    """Compare spectra pairwise, naming the first separating target per pair."""
    if not items:
        return DistinguishReport((), (), ())
    names = items[0][1].target_names
    for label, spectrum in items:
        if spectrum.target_names != names:
            raise MismatchedTargetsError(
                f"spectrum for {label!r} covers {spectrum.target_names}, expected {names}"
            )
    pairs = []
    for i in range(len(items)):
        label_i, spec_i = items[i]
        for j in range(i + 1, len(items)):
            label_j, spec_j = items[j]
            for name, a, b in zip(names, spec_i.counts, spec_j.counts):
                if a != b:
                    pairs.append(
                        PairComparison(label_i, label_j, DISTINGUISHED, name, (a, b))
                    )
                    break
            else:
                pairs.append(PairComparison(label_i, label_j, UNRESOLVED))
    labels = tuple(label for label, _ in items)
    return DistinguishReport(labels, names, tuple(pairs))
