"""Stallings folding with witnesses, for subgroups of free groups.

Each half-edge of the graph carries a witness: a reduced word over abstract
symbols ``1..k``, one per input generator.  Reading a closed path from the
basepoint multiplies the edge labels to an element of the subgroup and the
witnesses to an expression of that element over the input generators.
Folding keeps both readings intact.  If two parallel edges ever end up with
different witnesses, the inputs satisfy a relation and do not form a basis
of the subgroup they generate; such discrepancies are recorded in
``WitnessGraph.relations``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .subgroups import CosetTable, schreier
from .words import Letters, Word, invert_letters, reduce_letters


class NotMember(Exception):
    pass


@dataclass
class WitnessGraph:
    alphabet: tuple[str, ...]
    n_symbols: int
    # adj[v][label] -> list of (target, witness)
    adj: dict[int, dict[int, list[tuple[int, Letters]]]] = field(default_factory=dict)
    base: int = 0
    relations: list[Letters] = field(default_factory=list)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def n_vertices(self) -> int:
        return len(self.adj)

    def n_edges(self) -> int:
        return sum(len(lst) for d in self.adj.values() for lst in d.values()) // 2

    def is_deterministic(self) -> bool:
        return all(len(lst) <= 1 for d in self.adj.values() for lst in d.values())

    def is_complete(self) -> bool:
        labels = set(range(1, len(self.alphabet) + 1)) | set(range(-len(self.alphabet), 0))
        return all(set(k for k, v in d.items() if v) == labels for d in self.adj.values())

    def edge(self, v: int, label: int) -> tuple[int, Letters] | None:
        lst = self.adj[v].get(label)
        return lst[0] if lst else None

    def _add(self, v: int, label: int, w: int, witness: Letters) -> None:
        self.adj.setdefault(v, {}).setdefault(label, []).append((w, witness))
        self.adj.setdefault(w, {}).setdefault(-label, []).append((v, invert_letters(witness)))

    def _remove_half(self, v: int, label: int, w: int, witness: Letters) -> None:
        lst = self.adj[v][label]
        lst.remove((w, witness))
        if not lst:
            del self.adj[v][label]

    def _merge(self, keep: int, drop: int, delta: Letters) -> set[int]:
        """Identify ``drop`` with ``keep``.

        Half-edges leaving ``drop`` get ``delta`` prepended to their witness
        and those arriving at it get ``delta^-1`` appended, so the witness of
        every path through ``drop`` is unchanged.
        """
        delta_inv = invert_letters(delta)
        halves = [(label, w, wit) for label, lst in self.adj.pop(drop).items() for w, wit in lst]
        touched = {keep}
        for label, w, wit in halves:
            if w != drop:
                self._remove_half(w, -label, drop, invert_letters(wit))
        for label, w, wit in halves:
            if w == drop:
                # self-loop; both half-edges are in ``halves``, add just one
                if label < 0:
                    continue
                self._add(keep, label, keep, reduce_letters(delta + wit + delta_inv))
            else:
                self._add(keep, label, w, reduce_letters(delta + wit))
                touched.add(w)
        return touched

    def fold(self) -> "WitnessGraph":
        """Fold in place until deterministic; returns self."""
        dirty = set(self.adj)
        while dirty:
            v = min(dirty)
            if v not in self.adj:
                dirty.discard(v)
                continue
            pair = None
            for label in sorted(self.adj[v]):
                if len(self.adj[v][label]) > 1:
                    pair = label
                    break
            if pair is None:
                dirty.discard(v)
                continue
            (t1, w1), (t2, w2) = self.adj[v][pair][:2]
            if t1 == t2:
                if w1 != w2:
                    self.relations.append(reduce_letters(invert_letters(w1) + w2))
                self._remove_half(v, pair, t2, w2)
                self._remove_half(t2, -pair, v, invert_letters(w2))
                dirty.add(t2)
                continue
            # the arrival at t2 should read w1 instead of w2
            if t2 == self.base or (t1 != self.base and t2 < t1):
                keep, drop, delta = t2, t1, reduce_letters(invert_letters(w2) + w1)
            else:
                keep, drop, delta = t1, t2, reduce_letters(invert_letters(w1) + w2)
            dirty |= self._merge(keep, drop, delta)
            dirty.discard(drop)
        self._relabel()
        return self

    def _relabel(self) -> None:
        order = sorted(self.adj, key=lambda v: (v != self.base, v))
        new = {v: i for i, v in enumerate(order)}
        self.adj = {new[v]: {l: [(new[w], wit) for w, wit in lst] for l, lst in d.items()}
                    for v, d in self.adj.items()}
        self.base = 0

    def trace(self, letters: Sequence[int]) -> tuple[int, Letters] | None:
        v = self.base
        witness: list[int] = []
        for x in letters:
            e = self.edge(v, x)
            if e is None:
                return None
            v, wit = e
            witness.extend(wit)
        return v, reduce_letters(witness)


def fold(generators: Sequence[Word], order: Sequence[int] | None = None) -> WitnessGraph:
    """Folded graph of the subgroup generated by ``generators``.

    ``order`` permutes the order in which the petals are attached; the
    folded result does not depend on it.
    """
    if not generators:
        raise ValueError("need at least one generator")
    alphabet = generators[0].alphabet
    g = WitnessGraph(alphabet, len(generators))
    g.adj[0] = {}
    nxt = 1
    for j in (order if order is not None else range(len(generators))):
        w = generators[j]
        if w.alphabet != alphabet:
            raise ValueError("generators over different alphabets")
        letters = w.letters
        if not letters:
            continue
        v = 0
        for i, x in enumerate(letters):
            last = i == len(letters) - 1
            target = 0 if last else nxt
            if not last:
                g.adj[nxt] = {}
                nxt += 1
            g._add(v, x, target, (j + 1,) if last else ())
            v = target
    return g.fold()


def membership_with_witness(g: WitnessGraph, w: Word) -> Letters:
    """Expression of ``w`` over the input symbols; raises NotMember."""
    res = g.trace(w.letters)
    if res is None or res[0] != g.base:
        raise NotMember(str(w))
    return res[1]


def equals_table(g: WitnessGraph, H: CosetTable) -> bool:
    """Does the folded graph describe exactly the subgroup of ``H``?"""
    if not H.group.is_free or g.alphabet != H.group.generators:
        return False
    if not g.is_complete() or g.n_vertices() != H.n_states:
        return False
    for t in schreier(H).generators:
        res = g.trace(t)
        if res is None or res[0] != g.base:
            return False
    return True
