"""Finite-index subgroups as coset tables.

A :class:`CosetTable` is the right action of the ambient generators on the
cosets ``H w``; state 0 is ``H`` itself.  Every table in this module is
numbered by breadth-first discovery from state 0, trying letters in the
order ``A, B, ..., A^-1, B^-1, ...``.  Because of that one fixed discipline
two tables describe the same subgroup exactly when they are equal, and the
Schreier transversals and generator numbering are reproducible.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Sequence

from .words import (
    GroupPresentation,
    Letters,
    Word,
    WordError,
    invert_letters,
    reduce_letters,
    substitute_letters,
)


class DomainError(ValueError):
    """A word was handed to something that is only defined on a subgroup."""


class EnumerationError(RuntimeError):
    """Coset enumeration produced more cosets than the stated bound."""


def letter_order(rank: int) -> list[int]:
    return list(range(1, rank + 1)) + [-i for i in range(1, rank + 1)]


def _bfs_table(G: GroupPresentation, start: Hashable,
               step: Callable[[Hashable, int], Hashable],
               bound: int | None = None) -> tuple[list[Hashable], list[tuple[int, ...]]]:
    """Number the orbit of ``start`` breadth-first and record generator actions."""
    keys = [start]
    number = {start: 0}
    fwd = [dict() for _ in range(G.rank)]
    queue = deque([0])
    order = letter_order(G.rank)
    while queue:
        s = queue.popleft()
        for x in order:
            key = step(keys[s], x)
            t = number.get(key)
            if t is None:
                t = number[key] = len(keys)
                keys.append(key)
                if bound is not None and len(keys) > bound:
                    raise EnumerationError(f"more than {bound} cosets")
                queue.append(t)
            if x > 0:
                fwd[x - 1][s] = t
            else:
                fwd[-x - 1][t] = s
    n = len(keys)
    return keys, [tuple(f[s] for s in range(n)) for f in fwd]


@dataclass(frozen=True)
class CosetTable:
    """Transitive permutation action of the generators on ``n_states`` cosets."""

    group: GroupPresentation
    transitions: tuple[tuple[int, ...], ...]
    base: int = 0

    def __post_init__(self):
        trans = tuple(tuple(p) for p in self.transitions)
        object.__setattr__(self, "transitions", trans)
        if len(trans) != self.group.rank:
            raise ValueError("one permutation per generator required")
        n = len(trans[0]) if trans else 1
        for p in trans:
            if len(p) != n or sorted(p) != list(range(n)):
                raise ValueError("transition is not a permutation of the states")

    @property
    def n_states(self) -> int:
        return len(self.transitions[0]) if self.transitions else 1

    @cached_property
    def inverse_transitions(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for p in self.transitions:
            inv = [0] * len(p)
            for s, t in enumerate(p):
                inv[t] = s
            out.append(tuple(inv))
        return tuple(out)

    def step(self, state: int, x: int) -> int:
        if x > 0:
            return self.transitions[x - 1][state]
        return self.inverse_transitions[-x - 1][state]

    def act(self, state: int, letters: Sequence[int]) -> int:
        fwd, inv = self.transitions, self.inverse_transitions
        for x in letters:
            state = fwd[x - 1][state] if x > 0 else inv[-x - 1][state]
        return state

    def contains(self, w: Word | Sequence[int]) -> bool:
        letters = w.letters if isinstance(w, Word) else w
        return self.act(self.base, letters) == self.base

    def index(self) -> int:
        return self.n_states

    def check(self) -> None:
        """Assert transitivity and that every relator fixes every coset."""
        seen = {self.base}
        stack = [self.base]
        while stack:
            s = stack.pop()
            for x in letter_order(self.group.rank):
                t = self.step(s, x)
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        if len(seen) != self.n_states:
            raise ValueError("coset action is not transitive")
        for r in self.group.relators:
            for s in range(self.n_states):
                if self.act(s, r) != s:
                    raise ValueError(f"relator does not fix coset {s}")

    def canonical(self) -> "CosetTable":
        """Renumber states by the standard breadth-first discipline."""
        _, trans = _bfs_table(self.group, self.base, self.step)
        return CosetTable(self.group, trans)

    def same_subgroup(self, other: "CosetTable") -> bool:
        return self.group == other.group and self.canonical() == other.canonical()

    @cached_property
    def schreier(self) -> "SchreierData":
        return schreier(self)

    def to_json(self) -> dict:
        return {
            "generators": list(self.group.generators),
            "states": self.n_states,
            "base": self.base,
            "permutations": {g: list(p) for g, p in zip(self.group.generators, self.transitions)},
        }

    @classmethod
    def from_json(cls, G: GroupPresentation, doc: dict) -> "CosetTable":
        if list(doc["generators"]) != list(G.generators):
            raise WordError("coset table generators do not match the group")
        trans = [doc["permutations"][g] for g in G.generators]
        table = cls(G, trans, doc.get("base", 0))
        if table.n_states != doc["states"]:
            raise ValueError("state count does not match permutations")
        table.check()
        return table

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class FiniteAbelianTarget:
    """A homomorphism to Z/m_1 x ... x Z/m_k given by generator images."""

    moduli: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if any(m < 1 for m in moduli):
            raise ValueError("moduli must be positive")
        images = tuple(tuple(v % m for v, m in zip(img, moduli)) for img in self.images)
        if any(len(img) != len(moduli) for img in self.images):
            raise ValueError("each image needs one residue per modulus")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "images", images)

    def image_of(self, letters: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * len(self.moduli)
        for x in letters:
            img = self.images[abs(x) - 1]
            sgn = 1 if x > 0 else -1
            for k, v in enumerate(img):
                acc[k] += sgn * v
        return tuple(a % m for a, m in zip(acc, self.moduli))

    def to_json(self) -> dict:
        return {"moduli": list(self.moduli), "images": [list(i) for i in self.images]}

    @classmethod
    def from_json(cls, doc: dict) -> "FiniteAbelianTarget":
        return cls(tuple(doc["moduli"]), tuple(tuple(i) for i in doc["images"]))


def kernel_table(G: GroupPresentation, target: FiniteAbelianTarget) -> CosetTable:
    """Coset table of the kernel of ``G -> target``; states are image elements."""
    if len(target.images) != G.rank:
        raise ValueError("one image per generator required")
    for r in G.relators:
        if any(target.image_of(r)):
            raise ValueError("target does not define a homomorphism")
    zero = tuple(0 for _ in target.moduli)

    def step(v, x):
        img = target.images[abs(x) - 1]
        sgn = 1 if x > 0 else -1
        return tuple((a + sgn * b) % m for a, b, m in zip(v, img, target.moduli))

    _, trans = _bfs_table(G, zero, step)
    table = CosetTable(G, trans)
    table.check()
    return table


def whole_group_table(G: GroupPresentation) -> CosetTable:
    return CosetTable(G, [(0,)] * G.rank)


def intersect(H: CosetTable, K: CosetTable) -> CosetTable:
    """Product action on pairs of cosets reachable from (base, base)."""
    if H.group != K.group:
        raise ValueError("subgroups of different groups")
    _, trans = _bfs_table(H.group, (H.base, K.base),
                          lambda p, x: (H.step(p[0], x), K.step(p[1], x)))
    return CosetTable(H.group, trans)


def enumerate_by_oracle(G: GroupPresentation, member: Callable[[Word], bool],
                        bound: int) -> CosetTable:
    """Enumerate the cosets of the subgroup decided by ``member``.

    Candidates ``u`` and ``v`` name the same coset iff ``member(u * v^-1)``.
    Raises :class:`EnumerationError` if more than ``bound`` cosets appear.
    """
    reps: list[Letters] = [()]

    def step(s, x):
        v = reduce_letters(reps[s] + (x,))
        for t, r in enumerate(reps):
            if member(Word(v + invert_letters(r), G.generators)):
                return t
        reps.append(v)
        if len(reps) > bound:
            raise EnumerationError(f"more than {bound} cosets")
        return len(reps) - 1

    _, trans = _bfs_table(G, 0, step)
    return CosetTable(G, trans)


@dataclass(frozen=True)
class SchreierData:
    """Schreier transversal and generators of a coset table.

    ``generators[j]`` is ``rep(c) x rep(c x)^-1`` for the j-th non-tree pair
    ``(c, x)`` (state, positive generator), ordered by state then generator.
    Tree pairs give the identity and carry no symbol.
    """

    owner: CosetTable
    transversal: tuple[Letters, ...]
    origins: tuple[tuple[int, int], ...]
    generators: tuple[Letters, ...]
    tree_edges: frozenset
    symbol: dict = field(hash=False, compare=False)

    @property
    def group(self) -> GroupPresentation:
        return self.owner.group

    def generator_words(self) -> list[Word]:
        return [Word(g, self.group.generators) for g in self.generators]

    def rewrite(self, w: Word | Sequence[int], start: int | None = None) -> Letters:
        return reidemeister_rewrite(self, w, start)

    def expand(self, seq: Sequence[int]) -> Word:
        return Word(substitute_letters(self.generators, seq), self.group.generators)


def schreier(H: CosetTable) -> SchreierData:
    """Breadth-first Schreier transversal and the non-tree Schreier generators."""
    G = H.group
    n = H.n_states
    rep: list[Letters | None] = [None] * n
    rep[H.base] = ()
    tree = set()
    queue = deque([H.base])
    order = letter_order(G.rank)
    while queue:
        s = queue.popleft()
        for x in order:
            t = H.step(s, x)
            if rep[t] is None:
                rep[t] = rep[s] + (x,)
                tree.add((s, x) if x > 0 else (t, -x))
                queue.append(t)
    origins = []
    gens = []
    symbol = {}
    for c in range(n):
        for g in range(1, G.rank + 1):
            if (c, g) in tree:
                continue
            d = H.step(c, g)
            symbol[(c, g)] = len(gens) + 1
            origins.append((c, g))
            gens.append(reduce_letters(rep[c] + (g,) + invert_letters(rep[d])))
    return SchreierData(H, tuple(rep), tuple(origins), tuple(gens), frozenset(tree), symbol)


def reidemeister_rewrite(S: SchreierData, w: Word | Sequence[int], start: int | None = None) -> Letters:
    """Express a subgroup element over the Schreier generators.

    Returns signed 1-based indices into ``S.generators``.  With ``start``
    given, the word is read from that coset and need not close up; this is
    how relator conjugates are rewritten.
    """
    H = S.owner
    letters = w.letters if isinstance(w, Word) else tuple(w)
    c = H.base if start is None else start
    out: list[int] = []
    symbol = S.symbol
    for x in letters:
        if x > 0:
            j = symbol.get((c, x))
            c = H.step(c, x)
            if j is not None:
                out.append(j)
        else:
            c = H.step(c, x)
            j = symbol.get((c, -x))
            if j is not None:
                out.append(-j)
    if start is None and c != H.base:
        raise DomainError("word is not in the subgroup")
    return reduce_letters(out)


def expand(S: SchreierData, seq: Sequence[int]) -> Word:
    return S.expand(seq)


def surface_relators(S: SchreierData) -> list[Letters]:
    """Reidemeister-Schreier relators: each ambient relator read from every coset."""
    H = S.owner
    out = []
    for r in H.group.relators:
        for c in range(H.n_states):
            out.append(reidemeister_rewrite(S, r, start=c))
    return out


def index(H: CosetTable) -> int:
    return H.n_states


def contains(H: CosetTable, w: Word) -> bool:
    return H.contains(w)
