"""Words over a finite alphabet and the word problem in the ambient group.

Letters are signed 1-based generator indices: ``+i`` is generator ``i - 1``
and ``-i`` its inverse.  A :class:`Word` is always freely reduced, so in a
free group two words are equal exactly when their letter tuples agree.

The genus-2 surface group is handled by Dehn's algorithm, which is a correct
triviality test because its relator has small-cancellation type C'(1/7).
"""
from __future__ import annotations

import re
from operator import neg
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence


class WordError(ValueError):
    """Malformed word input: unknown generator, bad syntax, alphabet mismatch."""


Letters = tuple[int, ...]


def reduce_letters(letters: Iterable[int]) -> Letters:
    """Freely reduce a raw sequence of signed letters."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(map(neg, reversed(letters)))


def cyclic_reduce_letters(letters: Sequence[int]) -> Letters:
    """Cyclically reduce an already freely reduced letter tuple."""
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return tuple(letters[i:j + 1])


def substitute_letters(images: Sequence[Letters], letters: Iterable[int]) -> Letters:
    """Homomorphic image of ``letters`` where generator ``i`` maps to ``images[i-1]``.

    The images must already be reduced; the result is freely reduced.
    """
    out: list[int] = []
    inverses: dict[int, Letters] = {}
    for x in letters:
        if x > 0:
            piece = images[x - 1]
        else:
            piece = inverses.get(x)
            if piece is None:
                piece = inverses[x] = invert_letters(images[-x - 1])
        # pieces are reduced, so cancellation only happens at the seam
        k, n = 0, len(piece)
        while k < n and out and out[-1] == -piece[k]:
            out.pop()
            k += 1
        out.extend(piece[k:] if k else piece)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over ``alphabet``.

    Construct from raw letters with :func:`free_reduce` or :meth:`parse`;
    the constructor reduces its input as well, so every instance is reduced.
    """

    letters: Letters
    alphabet: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        n = len(self.alphabet)
        for x in letters:
            if not isinstance(x, int) or x == 0 or abs(x) > n:
                raise WordError(f"letter {x!r} not in alphabet {self.alphabet}")
        object.__setattr__(self, "letters", reduce_letters(letters))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @classmethod
    def identity(cls, alphabet: Sequence[str]) -> "Word":
        return cls((), tuple(alphabet))

    @classmethod
    def parse(cls, text: str, alphabet: Sequence[str]) -> "Word":
        return cls(parse_letters(text, alphabet), tuple(alphabet))

    def _check(self, other: "Word") -> None:
        if self.alphabet != other.alphabet:
            raise WordError(f"alphabet mismatch: {self.alphabet} vs {other.alphabet}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word(self.letters + other.letters, self.alphabet)

    def __invert__(self) -> "Word":
        return self.inverse()

    def inverse(self) -> "Word":
        return Word(invert_letters(self.letters), self.alphabet)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k), self.alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters, self.alphabet)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def is_identity(self) -> bool:
        return not self.letters


def free_reduce(letters: Iterable[int], alphabet: Sequence[str]) -> Word:
    """Return the freely reduced word spelled by ``letters``."""
    return Word(tuple(letters), tuple(alphabet))


def concat(u: Word, v: Word) -> Word:
    return u * v


def invert(w: Word) -> Word:
    return w.inverse()


def cyclic_reduce(w: Word) -> Word:
    return Word(cyclic_reduce_letters(w.letters), w.alphabet)


def apply_letter_map(mapping: Mapping[str, Word] | Callable[[str], Word], w: Word,
                     target: Sequence[str] | None = None) -> Word:
    """Extend a generator map homomorphically to ``w``.

    ``mapping`` sends generator names of ``w.alphabet`` to words over one
    common target alphabet.
    """
    images = []
    for name in w.alphabet:
        try:
            images.append(mapping(name) if callable(mapping) else mapping[name])
        except KeyError:
            images.append(None)
    alphabet = tuple(target) if target is not None else None
    for img in images:
        if img is not None:
            if alphabet is None:
                alphabet = img.alphabet
            elif img.alphabet != alphabet:
                raise WordError("images over different alphabets")
    used = {abs(x) for x in w.letters}
    for i in used:
        if images[i - 1] is None:
            raise WordError(f"generator {w.alphabet[i - 1]!r} is not mapped")
    if alphabet is None:
        if w.letters:
            raise WordError("no images given")
        alphabet = w.alphabet
    letters = [img.letters if img is not None else () for img in images]
    return Word(substitute_letters(letters, w.letters), alphabet)


# ---------------------------------------------------------------------------
# text format: A^-1*B^2*(C*D)^3

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<op>[*^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordError(f"cannot parse {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    return tokens


def parse_letters(text: str, alphabet: Sequence[str]) -> Letters:
    """Parse GAP-style text into reduced letters.

    Accepts products ``*``, integer powers ``^k`` on names and parenthesised
    groups, arbitrary whitespace, and ``1`` or an empty string for the identity.
    """
    index = {name: i + 1 for i, name in enumerate(alphabet)}
    tokens = _tokenize(text)
    if not tokens or tokens == [("int", "1")]:
        return ()
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise WordError(f"expected {value or kind} in {text!r}, got {tok[1]!r}")
        pos += 1
        return tok[1]

    def atom() -> Letters:
        kind, value = peek()
        if kind == "name":
            take("name")
            if value not in index:
                raise WordError(f"unknown generator {value!r}")
            return (index[value],)
        if kind == "op" and value == "(":
            take("op", "(")
            inner = product()
            take("op", ")")
            return inner
        if kind == "int" and value == "1":
            take("int")
            return ()
        raise WordError(f"unexpected token {value!r} in {text!r}")

    def term() -> Letters:
        base = atom()
        if peek() == ("op", "^"):
            take("op", "^")
            k = int(take("int"))
            if k < 0:
                base = invert_letters(base)
            base = base * abs(k)
        return base

    def product() -> Letters:
        letters = list(term())
        while peek() == ("op", "*"):
            take("op", "*")
            letters.extend(term())
        return reduce_letters(letters)

    result = product()
    if pos != len(tokens):
        raise WordError(f"trailing input in {text!r}")
    return result


def format_letters(letters: Sequence[int], alphabet: Sequence[str]) -> str:
    """Print letters as ``A^3*B*A^-1``; the identity prints as ``1``."""
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        x, k = letters[i], j - i
        name = alphabet[abs(x) - 1]
        power = k if x > 0 else -k
        parts.append(name if power == 1 else f"{name}^{power}")
        i = j
    return "*".join(parts)


# ---------------------------------------------------------------------------
# presentations and the word problem


@dataclass(frozen=True)
class GroupPresentation:
    """Generators and cyclically reduced relators (none for a free group)."""

    generators: tuple[str, ...]
    relators: tuple[Letters, ...] = ()
    name: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise WordError(f"duplicate generator names in {gens}")
        rels = tuple(tuple(r) for r in self.relators)
        for r in rels:
            if not r or reduce_letters(r) != r or cyclic_reduce_letters(r) != r:
                raise WordError(f"relator {r} is not cyclically reduced and nonempty")
            if any(x == 0 or abs(x) > len(gens) for x in r):
                raise WordError(f"relator {r} uses unknown generators")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)
        if self.relators and len(self.relators) == 1 and len(self.relators[0]) == 8:
            object.__setattr__(self, "_dehn", _DehnTable(self.relators[0]))

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def is_free(self) -> bool:
        return not self.relators

    def word(self, text: str | Iterable[int] = ()) -> Word:
        if isinstance(text, str):
            return Word.parse(text, self.generators)
        return Word(tuple(text), self.generators)

    def identity(self) -> Word:
        return Word.identity(self.generators)

    def gen(self, i: int) -> Word:
        return Word((i + 1,), self.generators)

    def relator_words(self) -> list[Word]:
        return [Word(r, self.generators) for r in self.relators]

    def is_trivial(self, w: Word | Letters) -> bool:
        return is_trivial(self, w)

    def words_equal(self, u: Word, v: Word) -> bool:
        return words_equal(self, u, v)


def free_group(names: Sequence[str] = ("A", "B")) -> GroupPresentation:
    return GroupPresentation(tuple(names), (), name="F%d" % len(names))


def surface_group() -> GroupPresentation:
    """The genus-2 surface group <A, B, C, D : [A,B][C,D]>."""
    return GroupPresentation(("A", "B", "C", "D"), ((1, 2, -1, -2, 3, 4, -3, -4),), name="Surface2")


def group_by_name(name: str) -> GroupPresentation:
    key = name.lower()
    if key in ("f2", "free", "free2"):
        return free_group()
    if key in ("surface2", "surface", "genus2", "gamma2"):
        return surface_group()
    raise WordError(f"unknown group {name!r}")


class _DehnTable:
    """Cyclic permutations of the relator and its inverse, in a fixed order."""

    def __init__(self, relator: Letters):
        n = len(relator)
        inv = invert_letters(relator)
        self.length = n
        self.rotations = [relator[i:] + relator[:i] for i in range(n)]
        self.rotations += [inv[i:] + inv[:i] for i in range(n)]
        # first letter -> candidate rotations, preserving order
        self.by_first: dict[int, list[Letters]] = {}
        for rot in self.rotations:
            self.by_first.setdefault(rot[0], []).append(rot)
        self.threshold = n // 2 + 1


def _dehn_step(w: Letters, table: _DehnTable) -> Letters | None:
    """One Dehn replacement on the cyclic word ``w``; None if none applies."""
    n = len(w)
    best = None
    best_len = table.threshold - 1
    for i in range(n):
        for rot in table.by_first.get(w[i], ()):
            k = 0
            limit = min(n, table.length)
            while k < limit and w[(i + k) % n] == rot[k]:
                k += 1
            if k > best_len:
                best_len, best = k, (i, rot)
    if best is None:
        return None
    i, rot = best
    k = best_len
    rotated = w[i:] + w[:i]
    replacement = invert_letters(rot[k:])
    return cyclic_reduce_letters(reduce_letters(replacement + rotated[k:]))


def dehn_reduce(G: GroupPresentation, w: Word | Letters) -> Letters:
    """Apply Dehn replacements to the cyclic reduction of ``w`` until none applies."""
    letters = w.letters if isinstance(w, Word) else reduce_letters(w)
    letters = cyclic_reduce_letters(letters)
    table = getattr(G, "_dehn", None)
    if table is None:
        raise WordError("Dehn's algorithm is only wired for the genus-2 relator")
    while letters:
        nxt = _dehn_step(letters, table)
        if nxt is None:
            break
        if len(nxt) >= len(letters):
            raise AssertionError("Dehn replacement failed to shorten the word")
        letters = nxt
    return letters


def is_trivial(G: GroupPresentation, w: Word | Letters) -> bool:
    """Decide whether ``w`` is the identity of ``G``."""
    letters = w.letters if isinstance(w, Word) else reduce_letters(w)
    if G.is_free:
        return not letters
    return not dehn_reduce(G, letters)


def words_equal(G: GroupPresentation, u: Word, v: Word) -> bool:
    if u.alphabet != v.alphabet:
        raise WordError("alphabet mismatch")
    return is_trivial(G, u.letters + invert_letters(v.letters))
