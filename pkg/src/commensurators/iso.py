"""Isomorphisms between finite-index subgroups.

A :class:`SubgroupIso` stores the image of every Schreier generator of its
domain and, alongside, the image of every Schreier generator of its codomain
under the inverse map.  Both directions are validated once at construction;
after that inversion is free and evaluation is rewriting plus substitution.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .stallings import NotMember, equals_table, fold, membership_with_witness
from .subgroups import (
    CosetTable,
    DomainError,
    FiniteAbelianTarget,
    SchreierData,
    intersect,
    kernel_table,
    reidemeister_rewrite,
    surface_relators,
    _bfs_table,
)
from .words import (
    GroupPresentation,
    Letters,
    Word,
    group_by_name,
    is_trivial,
    invert_letters,
    reduce_letters,
    substitute_letters,
)


class IsoError(ValueError):
    """Supplied isomorphism data fails one of the validity checks."""


@dataclass(frozen=True, eq=False)
class SubgroupIso:
    domain: CosetTable
    codomain: CosetTable
    images: tuple[Letters, ...]
    inverse_images: tuple[Letters, ...]

    @property
    def group(self) -> GroupPresentation:
        return self.domain.group

    @property
    def domain_schreier(self) -> SchreierData:
        return self.domain.schreier

    @property
    def codomain_schreier(self) -> SchreierData:
        return self.codomain.schreier

    @cached_property
    def _inverse(self) -> "SubgroupIso":
        inv = SubgroupIso(self.codomain, self.domain, self.inverse_images, self.images)
        inv.__dict__["_inverse"] = self
        return inv

    def inverse(self) -> "SubgroupIso":
        return self._inverse

    def evaluate_letters(self, letters: Sequence[int]) -> Letters:
        try:
            seq = reidemeister_rewrite(self.domain_schreier, letters)
        except DomainError:
            raise DomainError("word is not in the domain of the isomorphism") from None
        return substitute_letters(self.images, seq)

    def __call__(self, w: Word) -> Word:
        return evaluate(self, w)

    def same_data(self, other: "SubgroupIso") -> bool:
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.images == other.images and self.inverse_images == other.inverse_images)


def evaluate(f: SubgroupIso, w: Word) -> Word:
    """Image of ``w`` under ``f``; DomainError if ``w`` is outside the domain."""
    return Word(f.evaluate_letters(w.letters), w.alphabet)


def invert(f: SubgroupIso) -> SubgroupIso:
    return f.inverse()


def _as_letters(items) -> tuple[Letters, ...]:
    return tuple(reduce_letters(w.letters if isinstance(w, Word) else w) for w in items)


def free_inverse_images(domain: CosetTable, codomain: CosetTable,
                        images: Sequence[Letters]) -> tuple[Letters, ...]:
    """Invert a free-group map given on the domain's Schreier basis.

    The images are folded with witnesses; each codomain Schreier generator is
    then read off the folded graph as a word in the images and substituted
    back into the domain basis.
    """
    G = domain.group
    graph = fold([Word(im, G.generators) for im in images])
    if graph.relations:
        raise IsoError("images satisfy a relation; the map is not injective")
    if not equals_table(graph, codomain):
        raise IsoError("images do not generate the codomain")
    basis = domain.schreier.generators
    out = []
    for t in codomain.schreier.generator_words():
        try:
            expr = membership_with_witness(graph, t)
        except NotMember:
            raise IsoError(f"codomain generator {t} not reached by the images") from None
        out.append(substitute_letters(basis, expr))
    return tuple(out)


def validate(f: SubgroupIso) -> None:
    """Run every check of the isomorphism contract; raise IsoError on failure."""
    G = f.group
    dS, cS = f.domain_schreier, f.codomain_schreier
    if f.codomain.group != G:
        raise IsoError("domain and codomain live in different groups")
    if len(f.images) != len(dS.generators):
        raise IsoError(f"expected {len(dS.generators)} images, got {len(f.images)}")
    if len(f.inverse_images) != len(cS.generators):
        raise IsoError(f"expected {len(cS.generators)} inverse images, got {len(f.inverse_images)}")
    if f.domain.n_states != f.codomain.n_states:
        raise IsoError("domain and codomain have different index")
    for j, im in enumerate(f.images):
        if not f.codomain.contains(im):
            raise IsoError(f"image {j + 1} lies outside the codomain")
    for j, im in enumerate(f.inverse_images):
        if not f.domain.contains(im):
            raise IsoError(f"inverse image {j + 1} lies outside the domain")
    if G.relators:
        for side, S, ims in (("forward", dS, f.images), ("inverse", cS, f.inverse_images)):
            for k, rel in enumerate(surface_relators(S)):
                if not is_trivial(G, substitute_letters(ims, rel)):
                    raise IsoError(f"{side} map is not well defined: relator {k} has nontrivial image")
    inv = f.inverse()
    for j, (t, im) in enumerate(zip(dS.generators, f.images)):
        back = inv.evaluate_letters(im)
        if not is_trivial(G, back + invert_letters(t)):
            raise IsoError(f"round trip fails on domain generator {j + 1}")
    for j, (t, im) in enumerate(zip(cS.generators, f.inverse_images)):
        back = f.evaluate_letters(im)
        if not is_trivial(G, back + invert_letters(t)):
            raise IsoError(f"round trip fails on codomain generator {j + 1}")


def image_is_codomain(f: SubgroupIso) -> bool:
    """Does ``f`` map its domain into and onto its codomain?

    Every image must lie in the codomain, and every codomain generator must
    be hit: it equals the image of its recorded preimage.
    """
    G = f.group
    if not all(f.codomain.contains(im) for im in f.images):
        return False
    for t, pre in zip(f.codomain_schreier.generators, f.inverse_images):
        if not f.domain.contains(pre):
            return False
        if not is_trivial(G, f.evaluate_letters(pre) + invert_letters(t)):
            return False
    return True


def define_iso(domain: CosetTable, codomain: CosetTable, images: Sequence,
               inverse_images: Sequence | None = None, check: bool = True) -> SubgroupIso:
    """Build and validate an isomorphism from images of the domain's Schreier basis.

    For free groups ``inverse_images`` may be omitted and is then computed by
    folding.  Surface-group isomorphisms must supply it.
    """
    images = _as_letters(images)
    if len(images) != len(domain.schreier.generators):
        raise IsoError(f"expected {len(domain.schreier.generators)} images, got {len(images)}")
    if inverse_images is None:
        if not domain.group.is_free:
            raise IsoError("surface-group isomorphisms need explicit inverse images")
        for j, im in enumerate(images):
            if not codomain.contains(im):
                raise IsoError(f"image {j + 1} lies outside the codomain")
        inverse_images = free_inverse_images(domain, codomain, images)
    f = SubgroupIso(domain, codomain, images, _as_letters(inverse_images))
    if check:
        validate(f)
    return f


def identity_iso(H: CosetTable) -> SubgroupIso:
    gens = H.schreier.generators
    return SubgroupIso(H, H, gens, gens)


def _word_permutation(L: CosetTable, letters: Sequence[int]) -> tuple[int, ...]:
    """The permutation of L's states induced by reading ``letters``."""
    fwd, inv = L.transitions, L.inverse_transitions
    cur = tuple(range(L.n_states))
    for x in letters:
        cur = tuple(map((fwd[x - 1] if x > 0 else inv[-x - 1]).__getitem__, cur))
    return cur


def pullback(f: SubgroupIso, L: CosetTable) -> CosetTable:
    """Coset table of ``{w in domain(f) : f(w) in L}``.

    States are pairs (domain coset, L-coset of the image of the domain part);
    the L-component advances by the image of the Schreier generator crossed.
    """
    D = f.domain
    S = D.schreier
    perms = [_word_permutation(L, im) for im in f.images]
    inv_perms = []
    for p in perms:
        q = [0] * len(p)
        for s, t in enumerate(p):
            q[t] = s
        inv_perms.append(tuple(q))

    def step(key, x):
        c, s = key
        if x > 0:
            j = S.symbol.get((c, x))
            return D.step(c, x), (perms[j - 1][s] if j else s)
        d = D.step(c, x)
        j = S.symbol.get((d, -x))
        return d, (inv_perms[j - 1][s] if j else s)

    _, trans = _bfs_table(D.group, (D.base, L.base), step)
    return CosetTable(D.group, trans)


def restrict(f: SubgroupIso, L: CosetTable, check: bool = False) -> SubgroupIso:
    """Restriction of ``f`` to the preimage of ``codomain(f) ∩ L``."""
    P = pullback(f, L)
    Q = intersect(f.codomain, L)
    if P.n_states != Q.n_states:
        raise IsoError("restricted domain and codomain have different index")
    inv = f.inverse()
    images = tuple(f.evaluate_letters(t) for t in P.schreier.generators)
    inverse_images = tuple(inv.evaluate_letters(t) for t in Q.schreier.generators)
    g = SubgroupIso(P, Q, images, inverse_images)
    if check:
        validate(g)
    return g


def restrict_domain(f: SubgroupIso, M: CosetTable, check: bool = False) -> SubgroupIso:
    """Restriction of ``f`` to ``domain(f) ∩ M``."""
    return restrict(f.inverse(), M, check=check).inverse()


# ---------------------------------------------------------------------------
# iso definition files


def _table_from_doc(G: GroupPresentation, doc: dict) -> CosetTable:
    if "kernel" in doc:
        return kernel_table(G, FiniteAbelianTarget.from_json(doc["kernel"]))
    if "table" in doc:
        return CosetTable.from_json(G, doc["table"])
    raise IsoError("subgroup must be given as 'kernel' or 'table'")


def iso_from_json(doc: dict, check: bool = True) -> SubgroupIso:
    """Load an isomorphism definition document.

    Keys: ``group`` (``F2`` or ``Surface2``), ``domain`` and ``codomain``
    (each ``{"kernel": {...}}`` or ``{"table": {...}}``), ``images`` and
    optionally ``inverse_images`` as lists of word strings.
    """
    try:
        G = group_by_name(doc["group"])
        domain = _table_from_doc(G, doc["domain"])
        codomain = _table_from_doc(G, doc["codomain"])
        images = [Word.parse(s, G.generators) for s in doc["images"]]
        inverse = doc.get("inverse_images")
        if inverse is not None:
            inverse = [Word.parse(s, G.generators) for s in inverse]
    except KeyError as e:
        raise IsoError(f"missing field {e}") from None
    return define_iso(domain, codomain, images, inverse, check=check)


def iso_to_json(f: SubgroupIso, group_name: str | None = None,
                domain_kernel: FiniteAbelianTarget | None = None,
                codomain_kernel: FiniteAbelianTarget | None = None,
                include_inverse: bool = True) -> dict:
    G = f.group
    alphabet = G.generators

    def side(table, kernel):
        return {"kernel": kernel.to_json()} if kernel is not None else {"table": table.to_json()}

    doc = {
        "group": group_name or G.name,
        "domain": side(f.domain, domain_kernel),
        "codomain": side(f.codomain, codomain_kernel),
        "images": [str(Word(im, alphabet)) for im in f.images],
    }
    if include_inverse:
        doc["inverse_images"] = [str(Word(im, alphabet)) for im in f.inverse_images]
    return doc


def load_iso(path: str | Path, check: bool = True) -> SubgroupIso:
    with open(path, encoding="utf-8") as fh:
        return iso_from_json(json.load(fh), check=check)
