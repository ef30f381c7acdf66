"""Freely reduced words and finitely presented groups.

Words are immutable sequences of (generator index, exponent) letters with
exponent +1 or -1, kept freely reduced at all times.  A presentation pairs a
tuple of named generators with cyclically reduced relator words.  Everything
here is a pure function over immutable data, so values can be shared between
threads or worker processes without synchronization.

Generators are never renamed implicitly: combinators that reindex generators
return translation maps so callers can keep track of distinguished words
(meridians, longitudes, ...) across constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateGeneratorError,
    SubstitutionCycleError,
    UnknownGeneratorError,
)

Letter = tuple[int, int]


def _reduced(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Freely reduce a letter sequence, cancelling adjacent g^e g^-e pairs."""
    stack: list[Letter] = []
    for g, e in letters:
        if e != 1 and e != -1:
            raise ValueError(f"letter exponent must be +1 or -1, got {e!r}")
        if g < 0:
            raise ValueError(f"generator index must be nonnegative, got {g!r}")
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


def _inverse_letters(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple((g, -e) for g, e in reversed(letters))


def _cyclic_reduced(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    lo, hi = 0, len(letters)
    while hi - lo >= 2:
        g1, e1 = letters[lo]
        g2, e2 = letters[hi - 1]
        if g1 == g2 and e1 == -e2:
            lo += 1
            hi -= 1
        else:
            break
    return tuple(letters[lo:hi])


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty word is the identity."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _reduced(self.letters))

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "Word":
        """The word g^exponent for a single generator g."""
        if exponent == 0:
            return cls()
        sign = 1 if exponent > 0 else -1
        return cls(((index, sign),) * abs(exponent))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        return word_power(self, n)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "Word":
        return Word(_inverse_letters(self.letters))

    def cyclically_reduced(self) -> "Word":
        return Word(_cyclic_reduced(self.letters))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def support(self) -> frozenset[int]:
        return frozenset(g for g, _ in self.letters)

    def max_index(self) -> int:
        """Largest generator index used, or -1 for the empty word."""
        return max((g for g, _ in self.letters), default=-1)

    def exponent_sum(self, index: int) -> int:
        return sum(e for g, e in self.letters if g == index)

    def exponent_vector(self, n_generators: int) -> tuple[int, ...]:
        out = [0] * n_generators
        for g, e in self.letters:
            out[g] += e
        return tuple(out)


IDENTITY = Word()


def word_multiply(w1: Word, w2: Word) -> Word:
    """Concatenate and freely reduce."""
    return w1 * w2


def word_inverse(w: Word) -> Word:
    return w.inverse()


def word_power(w: Word, n: int) -> Word:
    if n == 0:
        return IDENTITY
    base = w if n > 0 else w.inverse()
    return Word(base.letters * abs(n))


def cyclic_reduce(w: Word) -> Word:
    """Strip matching first/last letters until the word is cyclically reduced."""
    return w.cyclically_reduced()


def commutator(w1: Word, w2: Word) -> Word:
    return w1 * w2 * w1.inverse() * w2.inverse()


def substitute(w: Word, g: "GeneratorSymbol | int", r: Word, *, eliminating: bool = True) -> Word:
    """Replace every occurrence of g^{+-1} in w by r^{+-1} and reduce.

    With ``eliminating=True`` (the default, used by Tietze elimination) the
    replacement must not mention g itself; pass ``eliminating=False`` for a
    general, possibly self-referential substitution.
    """
    index = g.index if isinstance(g, GeneratorSymbol) else int(g)
    if eliminating and index in r.support():
        raise SubstitutionCycleError(
            f"replacement for generator {index} contains that same generator"
        )
    return apply_mapping(w, {index: r})


def apply_mapping(w: Word, images: Mapping[int, Word]) -> Word:
    """Simultaneously substitute images for generators (identity elsewhere)."""
    out: list[Letter] = []
    for g, e in w.letters:
        image = images.get(g)
        if image is None:
            out.append((g, e))
        elif e == 1:
            out.extend(image.letters)
        else:
            out.extend(_inverse_letters(image.letters))
    return Word(tuple(out))


def _min_rotation(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
    best = letters
    for i in range(1, len(letters)):
        rot = letters[i:] + letters[:i]
        if rot < best:
            best = rot
    return best


def cyclic_key(w: Word) -> tuple[Letter, ...]:
    """Canonical form of a relator up to cyclic rotation and inversion."""
    r = _cyclic_reduced(w.letters)
    if not r:
        return ()
    return min(_min_rotation(r), _min_rotation(_inverse_letters(r)))


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a word like ``"a b^-1 a^2"`` over the given generator names.

    Tokens are separated by whitespace or ``*``; each token is a generator
    name with an optional integer exponent after ``^``, or ``1`` for the
    identity.
    """
    index = {name: i for i, name in enumerate(names)}
    letters: list[Letter] = []
    for token in text.replace("*", " ").split():
        if token == "1":
            continue
        name, _, exp_text = token.partition("^")
        if name not in index:
            raise UnknownGeneratorError(f"unknown generator {name!r} in word {text!r}")
        try:
            exp = int(exp_text) if exp_text else 1
        except ValueError:
            raise UnknownGeneratorError(f"bad exponent {exp_text!r} in word {text!r}") from None
        letters.extend(Word.generator(index[name], exp).letters)
    return Word(tuple(letters))


@dataclass(frozen=True)
class GeneratorSymbol:
    """A named generator; index is its position within one presentation."""

    name: str
    index: int


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators; relators are kept cyclically reduced."""

    generators: tuple[GeneratorSymbol, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        names = set()
        for i, g in enumerate(gens):
            if g.index != i:
                raise ValueError(f"generator {g.name!r} has index {g.index}, expected {i}")
            if not g.name:
                raise ValueError("generator names must be nonempty")
            if g.name in names:
                raise DuplicateGeneratorError(f"duplicate generator name {g.name!r}")
            names.add(g.name)
        n = len(gens)
        relators = []
        for r in self.relators:
            if r.max_index() >= n:
                raise UnknownGeneratorError(
                    f"relator uses generator index {r.max_index()} but only {n} generators exist"
                )
            reduced = r.cyclically_reduced()
            if reduced.letters:
                relators.append(reduced)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(relators))

    @classmethod
    def from_names(cls, names: Sequence[str], relators: Sequence[Word] = ()) -> "Presentation":
        gens = tuple(GeneratorSymbol(name, i) for i, name in enumerate(names))
        return cls(gens, tuple(relators))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index_of(self, name: str) -> int:
        for g in self.generators:
            if g.name == name:
                return g.index
        raise UnknownGeneratorError(f"no generator named {name!r}")

    def word(self, text: str) -> Word:
        return parse_word(text, self.names)

    def word_str(self, w: Word) -> str:
        if not w.letters:
            return "1"
        parts = []
        run_g, run_e, run_len = None, 0, 0
        for g, e in w.letters + ((-1, 0),):
            if g == run_g and e == run_e:
                run_len += 1
                continue
            if run_g is not None and run_g >= 0:
                exp = run_e * run_len
                name = self.generators[run_g].name
                parts.append(name if exp == 1 else f"{name}^{exp}")
            run_g, run_e, run_len = g, e, 1
        return " ".join(parts)

    def __str__(self) -> str:
        gens = ", ".join(self.names)
        rels = ", ".join(self.word_str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """base itself if unused, else base1, base2, ..."""
    taken = set(taken)
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def free_product(
    p1: Presentation, p2: Presentation
) -> tuple[Presentation, tuple[int, ...], tuple[int, ...]]:
    """Disjoint union of generators and relators.

    Returns (presentation, left_map, right_map) where the maps send old
    generator indices of p1 and p2 to their indices in the result.  Name
    collisions are an error; generators are never renamed implicitly.
    """
    n1 = len(p1.generators)
    overlap = set(p1.names) & set(p2.names)
    if overlap:
        raise DuplicateGeneratorError(
            f"free product requires disjoint generator names; shared: {sorted(overlap)}"
        )
    gens = p1.generators + tuple(
        GeneratorSymbol(g.name, g.index + n1) for g in p2.generators
    )
    shifted = tuple(
        Word(tuple((g + n1, e) for g, e in r.letters)) for r in p2.relators
    )
    combined = Presentation(gens, p1.relators + shifted)
    left = tuple(range(n1))
    right = tuple(range(n1, n1 + len(p2.generators)))
    return combined, left, right


def quotient_by_relators(p: Presentation, extra: Iterable[Word]) -> Presentation:
    """Append extra relators (cyclically reduced; duplicates and identities dropped)."""
    n = len(p.generators)
    seen = {cyclic_key(r) for r in p.relators}
    new = list(p.relators)
    for w in extra:
        if w.max_index() >= n:
            raise UnknownGeneratorError(
                f"extra relator uses generator index {w.max_index()} out of range"
            )
        reduced = w.cyclically_reduced()
        if not reduced.letters:
            continue
        key = cyclic_key(reduced)
        if key in seen:
            continue
        seen.add(key)
        new.append(reduced)
    return Presentation(p.generators, tuple(new))


def adjoin_commuting_generator(
    p: Presentation, commuting: Iterable[int], name: str = "x"
) -> Presentation:
    """Adjoin one new generator x plus relators [x, s] for each chosen s.

    The new generator is appended last (index = previous generator count);
    its name gets a numeric suffix if the requested one is taken.
    """
    n = len(p.generators)
    indices = sorted(set(commuting))
    if indices and (indices[0] < 0 or indices[-1] >= n):
        raise UnknownGeneratorError(f"commuting set {indices} out of range for {n} generators")
    x_name = fresh_name(name, p.names)
    gens = p.generators + (GeneratorSymbol(x_name, n),)
    x = Word.generator(n)
    new_relators = tuple(commutator(x, Word.generator(s)) for s in indices)
    return Presentation(gens, p.relators + new_relators)


def _substitute_letters(
    letters: tuple[Letter, ...], g: int, image: tuple[Letter, ...]
) -> tuple[Letter, ...]:
    out: list[Letter] = []
    inv = _inverse_letters(image)
    for h, e in letters:
        if h != g:
            out.append((h, e))
        elif e == 1:
            out.extend(image)
        else:
            out.extend(inv)
    return _reduced(out)


def _normalize_relators(rels: list[tuple[Letter, ...]]) -> list[tuple[Letter, ...]]:
    seen: set[tuple[Letter, ...]] = set()
    out = []
    for r in rels:
        r = _cyclic_reduced(_reduced(r))
        if not r:
            continue
        key = min(_min_rotation(r), _min_rotation(_inverse_letters(r)))
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def tietze_simplify_tracked(
    p: Presentation, tracked: Sequence[Word] = (), budget: int = 10_000
) -> tuple[Presentation, tuple[Word, ...]]:
    """Tietze simplification that also rewrites the given tracked words.

    Repeatedly drops empty/duplicate relators (duplicates up to rotation and
    inversion) and eliminates a generator whenever some relator contains it
    exactly once.  The eliminating relator is chosen shortest first, ties
    broken by relator position; within a relator the highest-index eligible
    generator is eliminated, which keeps early generators (meridians and
    friends) stable.  Relators longer than twice the input's maximum relator
    length never drive an elimination, preventing blowup.  Deterministic for
    a fixed input and budget; each elimination costs one budget step.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    names = list(p.names)
    rels = _normalize_relators([r.letters for r in p.relators])
    tracked_letters = [w.letters for w in tracked]
    cap = 2 * max((len(r) for r in rels), default=1)
    steps = 0
    while steps < budget:
        choice = None
        for pos, r in enumerate(rels):
            if len(r) > cap:
                continue
            counts: dict[int, int] = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            singles = [g for g, c in counts.items() if c == 1]
            if not singles:
                continue
            key = (len(r), pos)
            if choice is None or key < choice[0]:
                choice = (key, pos, max(singles))
        if choice is None:
            break
        _, pos, g = choice
        r = rels[pos]
        at = next(i for i, (h, _) in enumerate(r) if h == g)
        alpha, (_, e), beta = r[:at], r[at], r[at + 1 :]
        if e == 1:
            image = _reduced(_inverse_letters(alpha) + _inverse_letters(beta))
        else:
            image = _reduced(beta + alpha)
        remap = {j: (j if j < g else j - 1) for j in range(len(names))}
        del remap[g]

        def rewrite(letters: tuple[Letter, ...]) -> tuple[Letter, ...]:
            substituted = _substitute_letters(letters, g, image)
            return tuple((remap[h], e2) for h, e2 in substituted)

        rels = _normalize_relators([rewrite(s) for i, s in enumerate(rels) if i != pos])
        tracked_letters = [rewrite(t) for t in tracked_letters]
        names.pop(g)
        steps += 1
    simplified = Presentation.from_names(names, [Word(r) for r in rels])
    return simplified, tuple(Word(t) for t in tracked_letters)


def tietze_simplify(p: Presentation, budget: int = 10_000) -> Presentation:
    """Simplify to an isomorphic presentation; see tietze_simplify_tracked."""
    simplified, _ = tietze_simplify_tracked(p, (), budget)
    return simplified


def word_to_json(w: Word, names: Sequence[str]) -> list[list]:
    return [[names[g], e] for g, e in w.letters]


def word_from_json(data: Sequence, name_to_index: Mapping[str, int]) -> Word:
    letters = []
    for item in data:
        name, e = item
        if name not in name_to_index:
            raise UnknownGeneratorError(f"unknown generator {name!r} in serialized word")
        letters.append((name_to_index[name], int(e)))
    return Word(tuple(letters))


def presentation_to_json(p: Presentation) -> dict:
    """Canonical, order-preserving JSON form; round-trips exactly."""
    names = p.names
    return {
        "generators": list(names),
        "relators": [word_to_json(r, names) for r in p.relators],
    }


def presentation_from_json(data: Mapping) -> Presentation:
    names = list(data["generators"])
    index = {name: i for i, name in enumerate(names)}
    relators = [word_from_json(r, index) for r in data["relators"]]
    return Presentation.from_names(names, relators)


def _script_word(p: Presentation, w: Word) -> str:
    parts = []
    run_g, run_e, run_len = None, 0, 0
    for g, e in w.letters + ((-1, 0),):
        if g == run_g and e == run_e:
            run_len += 1
            continue
        if run_g is not None and run_g >= 0:
            exp = run_e * run_len
            name = p.generators[run_g].name
            parts.append(name if exp == 1 else f"{name}^{exp}")
        run_g, run_e, run_len = g, e, 1
    return "*".join(parts)


def to_free_group_script(p: Presentation) -> str:
    """Render as a FreeGroup/relator script for computational algebra systems.

    Deterministic and order-preserving, e.g. ``F := FreeGroup("a");`` then
    ``rels := [ a^5 ];``.
    """
    gens = ", ".join(f'"{name}"' for name in p.names)
    rels = ", ".join(_script_word(p, r) for r in p.relators)
    body = f" {rels} " if rels else " "
    return f"F := FreeGroup({gens});\nrels := [{body}];\n"
