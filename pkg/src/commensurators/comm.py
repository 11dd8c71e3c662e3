"""Commensurators of F2 and of the genus-2 surface group.

A :class:`Commensurator` wraps a representative :class:`SubgroupIso`.  Since
these groups have unique roots, two representatives define the same class
exactly when they agree on a common finite-index subgroup, and a
representative is trivial exactly when it fixes every generator of its own
domain.  That makes the word problem in any finitely generated subgroup of
the commensurator decidable by composing representatives.

``compose(g, h)`` is ``g ∘ h``: apply ``h`` first.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from .iso import (
    IsoError,
    SubgroupIso,
    define_iso,
    identity_iso,
    iso_from_json,
    load_iso,
    restrict,
    restrict_domain,
)
from .subgroups import (
    CosetTable,
    DomainError,
    FiniteAbelianTarget,
    intersect,
    kernel_table,
    whole_group_table,
)
from .words import (
    GroupPresentation,
    Letters,
    Word,
    WordError,
    group_by_name,
    invert_letters,
    is_trivial,
    reduce_letters,
    substitute_letters,
)


@dataclass(frozen=True, eq=False)
class Commensurator:
    rep: SubgroupIso

    @property
    def group(self) -> GroupPresentation:
        return self.rep.group

    def __call__(self, w: Word) -> Word:
        return Word(self.rep.evaluate_letters(w.letters), w.alphabet)

    def __mul__(self, other: "Commensurator") -> "Commensurator":
        return compose(self, other)

    def __pow__(self, k: int) -> "Commensurator":
        return power(self, k)

    def inverse(self) -> "Commensurator":
        return Commensurator(self.rep.inverse())

    def is_identity(self) -> bool:
        return is_identity(self)

    def equals(self, other: "Commensurator") -> bool:
        return comm_equal(self, other)


def inner(G: GroupPresentation, c: Word | str) -> Commensurator:
    """Conjugation ``w -> c w c^-1`` on the whole group."""
    if isinstance(c, str):
        c = G.word(c)
    H = whole_group_table(G)
    gens = H.schreier.generators
    cl, ci = c.letters, invert_letters(c.letters)
    images = tuple(reduce_letters(cl + t + ci) for t in gens)
    inverse = tuple(reduce_letters(ci + t + cl) for t in gens)
    return Commensurator(SubgroupIso(H, H, images, inverse))


def identity(G: GroupPresentation) -> Commensurator:
    return Commensurator(identity_iso(whole_group_table(G)))


def compose(g: Commensurator, h: Commensurator) -> Commensurator:
    """The class of ``g ∘ h``, represented on ``h^-1(dom g ∩ cod h)``."""
    if g.group != h.group:
        raise ValueError("commensurators of different groups")
    gr, hr = g.rep, h.rep
    M = intersect(gr.domain, hr.codomain)
    h1 = restrict(hr, M)
    g1 = restrict_domain(gr, M)
    images = tuple(g1.evaluate_letters(im) for im in h1.images)
    h1_inv = h1.inverse()
    inverse_images = tuple(h1_inv.evaluate_letters(im) for im in g1.inverse_images)
    return Commensurator(SubgroupIso(h1.domain, g1.codomain, images, inverse_images))


def inverse(c: Commensurator) -> Commensurator:
    return c.inverse()


def power(c: Commensurator, k: int) -> Commensurator:
    if k == 0:
        return identity(c.group)
    base = c if k > 0 else c.inverse()
    result = base
    for _ in range(abs(k) - 1):
        result = compose(result, base)
    return result


def identity_witness(c: Commensurator) -> tuple[Word, Word] | None:
    """A domain generator moved by ``c.rep`` and its image, or None."""
    G = c.group
    for t, im in zip(c.rep.domain_schreier.generators, c.rep.images):
        if not is_trivial(G, im + invert_letters(t)):
            return Word(t, G.generators), Word(im, G.generators)
    return None


def is_identity(c: Commensurator) -> bool:
    return identity_witness(c) is None


def comm_equal(a: Commensurator, b: Commensurator) -> bool:
    return is_identity(compose(a, b.inverse()))


# ---------------------------------------------------------------------------
# words in finitely many commensurators

_COMM_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?")


def parse_comm_word(text: str) -> list[tuple[str, int]]:
    """Parse ``"a^-1 b a b^-1"`` (``*`` also accepted) into (name, ±1) letters."""
    out = []
    for chunk in re.split(r"[\s*]+", text.strip()):
        if not chunk:
            continue
        m = _COMM_TOKEN.fullmatch(chunk)
        if not m:
            raise WordError(f"cannot parse commensurator letter {chunk!r}")
        k = int(m.group(2)) if m.group(2) else 1
        out.extend([(m.group(1), 1 if k > 0 else -1)] * abs(k))
    return out


def _letter(letters: Mapping[str, Commensurator], name: str, sign: int) -> Commensurator:
    try:
        c = letters[name]
    except KeyError:
        raise WordError(f"unknown commensurator {name!r}") from None
    return c if sign > 0 else c.inverse()


def evaluate_comm_word(letters: Mapping[str, Commensurator],
                       word: Sequence[tuple[str, int]], G: GroupPresentation | None = None) -> Commensurator:
    """Fold a word into one commensurator; the rightmost letter acts first."""
    if not word:
        if G is None:
            G = next(iter(letters.values())).group
        return identity(G)
    acc = _letter(letters, *word[0])
    for name, sign in word[1:]:
        acc = compose(acc, _letter(letters, name, sign))
    return acc


def decide_comm_word(letters: Mapping[str, Commensurator], word: Sequence[tuple[str, int]] | str,
                     G: GroupPresentation | None = None) -> tuple[bool, tuple[Word, Word] | None]:
    """Is the word trivial in the commensurator?  Returns (verdict, witness)."""
    if isinstance(word, str):
        word = parse_comm_word(word)
    c = evaluate_comm_word(letters, word, G)
    wit = identity_witness(c)
    return wit is None, wit


def sequential_evaluate(letters: Mapping[str, Commensurator], word: Sequence[tuple[str, int]] | str,
                        test: Word, trace: list | None = None) -> Word:
    """Apply the letters' representatives to ``test`` one at a time, right to left.

    Raises DomainError naming the step if an intermediate word leaves the
    domain of the next representative.
    """
    if isinstance(word, str):
        word = parse_comm_word(word)
    current = test.letters
    for step, (name, sign) in enumerate(reversed(word), start=1):
        rep = _letter(letters, name, sign).rep
        try:
            current = rep.evaluate_letters(current)
        except DomainError:
            raise DomainError(
                f"step {step}: intermediate word is not in the domain of {name}^{sign}") from None
        if trace is not None:
            trace.append(Word(current, test.alphabet))
    return Word(current, test.alphabet)


# ---------------------------------------------------------------------------
# Baumslag-Solitar images


def bs_targets(G: GroupPresentation, m: int, n: int) -> tuple[FiniteAbelianTarget, FiniteAbelianTarget]:
    """``A -> (1,0), B -> (0,1)`` and the swap, other generators to zero."""
    rest = ((0, 0),) * (G.rank - 2)
    t1 = FiniteAbelianTarget((m, n), ((1, 0), (0, 1)) + rest)
    t2 = FiniteAbelianTarget((m, n), ((0, 1), (1, 0)) + rest)
    return t1, t2


def _find_power_generator(H: CosetTable, k: int) -> tuple[int, int]:
    for j, t in enumerate(H.schreier.generators):
        if t == (1,) * k:
            return j, 1
        if t == (-1,) * k:
            return j, -1
    raise IsoError(f"A^{k} is not one of the Schreier generators")


def auto_psi(G: GroupPresentation, m: int, n: int, shift: int = 0) -> SubgroupIso:
    """Free-group isomorphism ker(pi1) -> ker(pi2) with ``A^m -> A^n``.

    The generator ``A^m`` goes to ``A^n``; the remaining basis elements are
    matched in order, cyclically shifted by ``shift``.
    """
    if not G.is_free:
        raise IsoError("automatic construction only works for free groups")
    t1, t2 = bs_targets(G, m, n)
    K1, K2 = kernel_table(G, t1), kernel_table(G, t2)
    j1, s1 = _find_power_generator(K1, m)
    j2, s2 = _find_power_generator(K2, n)
    src = [j for j in range(len(K1.schreier.generators)) if j != j1]
    dst = [j for j in range(len(K2.schreier.generators)) if j != j2]
    if dst:
        shift %= len(dst)
        dst = dst[shift:] + dst[:shift]
    gens2 = K2.schreier.generators
    images: list[Letters] = [()] * len(K1.schreier.generators)
    images[j1] = gens2[j2] if s1 == s2 else invert_letters(gens2[j2])
    for a, b in zip(src, dst):
        images[a] = gens2[b]
    return define_iso(K1, K2, images)


def shipped_iso_path(name: str) -> Path:
    return Path(str(resources.files("commensurators") / "data" / f"{name}.json"))


def load_shipped_iso(name: str, check: bool = True) -> SubgroupIso:
    """``psi_free`` or ``psi_surface``: the shipped isomorphisms ker(pi1) -> ker(pi2) for (2, 3)."""
    return load_iso(shipped_iso_path(name), check=check)


def letters_from_json(doc: dict, base_dir: str | Path | None = None
                      ) -> tuple[GroupPresentation, dict[str, Commensurator]]:
    """Named commensurators from a letters document.

    ``{"group": "F2", "letters": {"a": {"inner": "A"}, "b": {"iso": "psi_free"}}}``.
    Each entry is ``{"inner": word}``, ``{"iso": shipped name}`` or
    ``{"iso_file": path}``; relative paths are resolved against ``base_dir``.
    """
    try:
        G = group_by_name(doc["group"])
        entries = doc["letters"]
    except KeyError as e:
        raise IsoError(f"missing field {e}") from None
    out = {}
    for name, entry in entries.items():
        if not _COMM_TOKEN.fullmatch(name) or "^" in name:
            raise WordError(f"bad commensurator name {name!r}")
        if "inner" in entry:
            c = inner(G, entry["inner"])
        elif "iso" in entry:
            c = Commensurator(load_shipped_iso(entry["iso"]))
        elif "iso_file" in entry:
            path = Path(entry["iso_file"])
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            c = Commensurator(load_iso(path))
        else:
            raise IsoError(f"letter {name!r} needs 'inner', 'iso' or 'iso_file'")
        if c.group != G:
            raise IsoError(f"letter {name!r} lives in a different group")
        out[name] = c
    return G, out


def load_letters(path: str | Path) -> tuple[GroupPresentation, dict[str, Commensurator]]:
    """Load a letters file; a bare shipped name such as ``letters_free`` also works."""
    path = Path(path)
    if not path.exists() and not path.suffix and shipped_iso_path(path.name).exists():
        path = shipped_iso_path(path.name)
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return letters_from_json(doc, base_dir=path.parent)


def build_bs_pair(G: GroupPresentation, m: int, n: int,
                  iso_data: SubgroupIso | dict | str | Path | None = None,
                  verify: bool = True) -> tuple[Commensurator, Commensurator]:
    """Commensurators (psi, phi) with ``psi phi^m psi^-1 = phi^n``.

    ``phi`` is conjugation by ``A``.  ``psi`` comes from ``iso_data`` (an
    isomorphism, a definition document, or a path to one) or, for free
    groups only, from :func:`auto_psi`.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if iso_data is None:
        if not G.is_free:
            raise IsoError("the surface construction needs explicit isomorphism data")
        rep = auto_psi(G, m, n)
    elif isinstance(iso_data, SubgroupIso):
        rep = iso_data
    elif isinstance(iso_data, dict):
        rep = iso_from_json(iso_data)
    else:
        rep = load_iso(iso_data)
    if rep.group != G:
        raise IsoError("isomorphism data is for a different group")
    t1, t2 = bs_targets(G, m, n)
    if rep.domain != kernel_table(G, t1) or rep.codomain != kernel_table(G, t2):
        raise IsoError("isomorphism data does not map ker(pi1) onto ker(pi2)")
    Am, An = G.gen(0) ** m, G.gen(0) ** n
    if not G.words_equal(Word(rep.evaluate_letters(Am.letters), G.generators), An):
        raise IsoError(f"psi does not send A^{m} to A^{n}")
    psi = Commensurator(rep)
    phi = inner(G, G.gen(0))
    if verify and not bs_relation_holds(psi, phi, m, n):
        raise IsoError("psi phi^m psi^-1 phi^-n is not the identity")
    return psi, phi


def bs_relation_holds(psi: Commensurator, phi: Commensurator, m: int, n: int) -> bool:
    rel = compose(psi, compose(power(phi, m), compose(psi.inverse(), power(phi, -n))))
    return is_identity(rel)


# ---------------------------------------------------------------------------
# the kernel witness in BS(2,3)

BS_ALPHABET = ("a", "b")
GAMMA = "b^-1*a*b*a^-1*b^-1*a*b*a^-1*b^-1"
GAMMA_COMM_WORD = "b^-1 a b a^-1 b^-1 a b a^-1 b^-1"

# a b^2 a^-1 -> b^3 and a^-1 b^3 a -> b^2, with their inverses
_BS23_RULES: tuple[tuple[Letters, Letters], ...] = (
    ((1, 2, 2, -1), (2, 2, 2)),
    ((-1, 2, 2, 2, 1), (2, 2)),
    ((1, -2, -2, -1), (-2, -2, -2)),
    ((-1, -2, -2, -2, 1), (-2, -2)),
)


def bs23_normalize(letters: Sequence[int], budget: int = 10_000) -> Letters:
    """Greedy rewriting in BS(2,3) with free reduction after each step.

    Not a normal form in general; on the kernel witness it reaches the
    empty word.  Raises RuntimeError if the step budget runs out.
    """
    w = reduce_letters(letters)
    for _ in range(budget):
        for lhs, rhs in _BS23_RULES:
            k = len(lhs)
            hit = next((i for i in range(len(w) - k + 1) if w[i:i + k] == lhs), None)
            if hit is not None:
                w = reduce_letters(w[:hit] + rhs + w[hit + k:])
                break
        else:
            return w
    raise RuntimeError("BS(2,3) rewriting exceeded its step budget")


@dataclass
class KernelWitnessResult:
    gamma: Word
    rho_gamma: Word
    rho_gamma_normalized: Word
    gamma_normalized: Word

    @property
    def ok(self) -> bool:
        return (not self.rho_gamma_normalized and bool(self.gamma)
                and bool(self.gamma_normalized))


def bs_kernel_witness_check(budget: int = 10_000) -> KernelWitnessResult:
    """rho: a -> a, b -> b^2 kills gamma; gamma itself is a nonempty reduced word."""
    gamma = Word.parse(GAMMA, BS_ALPHABET)
    rho = {"a": Word.parse("a", BS_ALPHABET), "b": Word.parse("b^2", BS_ALPHABET)}
    images = [rho[name].letters for name in BS_ALPHABET]
    rg = substitute_letters(images, gamma.letters)
    return KernelWitnessResult(
        gamma=gamma,
        rho_gamma=Word(rg, BS_ALPHABET),
        rho_gamma_normalized=Word(bs23_normalize(rg, budget), BS_ALPHABET),
        gamma_normalized=Word(bs23_normalize(gamma.letters, budget), BS_ALPHABET),
    )
