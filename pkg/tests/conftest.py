"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own evaluation machinery:
naive_hom_count multiplies raw permutation tuples, seifert_alexander expands
a determinant by permutation sums over dict-polynomials, and det_oracle is a
cofactor expansion.  Tests freeze values computed by these.
"""

from __future__ import annotations

import itertools

import pytest
from hypothesis import settings

from knotsurgery import builtin_knot, standard_suite
from knotsurgery.targets import FiniteTarget

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


# ---------------------------------------------------------------- oracles


def naive_hom_count(presentation, target: FiniteTarget) -> int:
    """Count homomorphisms by full enumeration over raw permutations."""
    n = len(presentation.generators)
    degree = target.degree
    identity = tuple(range(degree))

    def mul(a, b):  # apply b first, then a
        return tuple(a[b[i]] for i in range(degree))

    def inv(a):
        out = [0] * degree
        for i, j in enumerate(a):
            out[j] = i
        return tuple(out)

    count = 0
    for assignment in itertools.product(target.elements, repeat=n):
        ok = True
        for relator in presentation.relators:
            acc = identity
            for g, e in relator.letters:
                acc = mul(acc, assignment[g] if e == 1 else inv(assignment[g]))
            if acc != identity:
                ok = False
                break
        if ok:
            count += 1
    return count


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def seifert_alexander(V) -> dict:
    """det(V - t V^T) as {exponent: coefficient}, min exponent 0, positive lead."""
    n = len(V)
    M = [[{k: c for k, c in ((0, V[i][j]), (1, -V[j][i])) if c} for j in range(n)] for i in range(n)]
    total: dict[int, int] = {}
    for perm in itertools.permutations(range(n)):
        term = {0: _perm_sign(perm)}
        for i in range(n):
            term = _poly_mul(term, M[i][perm[i]])
        total = _poly_add(total, term)
    if not total:
        return {}
    shift = min(total)
    total = {e - shift: c for e, c in total.items()}
    if total[max(total)] < 0:
        total = {e: -c for e, c in total.items()}
    return total


def det_oracle(matrix) -> int:
    """Integer determinant by cofactor expansion."""
    n = len(matrix)
    if n == 0:
        return 1
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        if matrix[0][j] == 0:
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in matrix[1:]]
        total += (-1) ** j * matrix[0][j] * det_oracle(minor)
    return total


def laurent_terms(poly) -> dict:
    return {e: c for e, c in poly.terms}


# ---------------------------------------------------------------- fixtures


@pytest.fixture(scope="session")
def suite_full():
    return standard_suite()


@pytest.fixture(scope="session")
def suite_small(suite_full):
    """Standard targets of order <= 24; cheap enough for raw presentations."""
    return tuple(t for t in suite_full if t.order <= 24)


@pytest.fixture(scope="session")
def trefoil():
    return builtin_knot("trefoil")


@pytest.fixture(scope="session")
def fig8():
    return builtin_knot("fig8")


@pytest.fixture(scope="session")
def unknot():
    return builtin_knot("unknot")


@pytest.fixture(scope="session")
def spectrum_cache():
    """Shared (presentation, target name) -> count memo across the session."""
    return {}


@pytest.fixture(scope="session")
def fig8_family_run():
    """One escalating distinction run for the fig8 family q=1, p=1..6.

    Computes standard-suite spectra for all six groups, then walks the
    bundled escalation targets, counting only for groups still involved in
    an unresolved pair.  Shared session-wide because the last pair needs
    PSL(2,19).
    """
    import time

    from knotsurgery import (
        build_family,
        count_homomorphisms,
        escalation_suite,
        hom_spectrum,
        tietze_simplify,
    )

    started = time.time()
    family = build_family(builtin_knot("fig8"), 1, range(1, 7))
    groups = {m.slope.p: tietze_simplify(m.presentation) for m in family.members}
    standard_spectra = {
        p: hom_spectrum(group, standard_suite()) for p, group in groups.items()
    }
    unresolved = {
        (a, b)
        for a, b in itertools.combinations(sorted(groups), 2)
        if standard_spectra[a].counts == standard_spectra[b].counts
    }
    resolution: dict[tuple[int, int], tuple[str, int, int]] = {}
    extra_counts: dict[int, dict[str, int]] = {p: {} for p in groups}
    for target in escalation_suite():
        if not unresolved:
            break
        need = sorted({p for pair in unresolved for p in pair})
        counts = {p: count_homomorphisms(groups[p], target) for p in need}
        for p, count in counts.items():
            extra_counts[p][target.name] = count
        for a, b in sorted(unresolved):
            if counts[a] != counts[b]:
                resolution[(a, b)] = (target.name, counts[a], counts[b])
        unresolved = {(a, b) for a, b in unresolved if counts[a] == counts[b]}
    return {
        "groups": groups,
        "standard_spectra": standard_spectra,
        "extra_counts": extra_counts,
        "resolution": resolution,
        "unresolved": unresolved,
        "elapsed": time.time() - started,
    }
