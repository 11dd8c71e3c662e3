"""Command-line front end.

    commensurators free-demo [--psi-file F | --auto [--shift K]] [--json]
    commensurators surface-demo [--psi-file F] [--json]
    commensurators eval GROUP LETTERS WORD TEST [--verdict] [--json]
    commensurators kernel-check [--json]

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage, file or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

from .comm import (
    GAMMA,
    GAMMA_COMM_WORD,
    auto_psi,
    bs_kernel_witness_check,
    build_bs_pair,
    decide_comm_word,
    load_letters,
    load_shipped_iso,
    parse_comm_word,
    sequential_evaluate,
)
from .iso import IsoError, image_is_codomain, load_iso
from .subgroups import DomainError
from .words import (
    GroupPresentation,
    Word,
    WordError,
    free_group,
    group_by_name,
    is_trivial,
    surface_group,
    words_equal,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# sequential evaluation of the gamma word on B A B^-1 A^-1 with the shipped free data
FREE_WORD10 = "A^3*B*A*B^-1*A^2"


class UsageError(Exception):
    """Bad input: missing file, malformed JSON, unparsable word."""


@dataclass
class Check:
    description: str
    expected: str
    actual: str
    passed: bool

    def to_json(self) -> dict:
        return {"description": self.description, "expected": self.expected,
                "actual": self.actual, "pass": self.passed}


@dataclass
class ScenarioReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    details: dict[str, str] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, description: str, expected, actual, passed: bool) -> bool:
        self.checks.append(Check(description, str(expected), str(actual), bool(passed)))
        return bool(passed)

    def to_json(self) -> dict:
        return {
            "scenario": self.name,
            "pass": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "details": dict(self.details),
            "timing": {"seconds": round(self.elapsed, 6)},
        }

    def render(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.description}")
            lines.append(f"         expected: {c.expected}")
            lines.append(f"         actual:   {c.actual}")
        for k, v in self.details.items():
            lines.append(f"  {k}: {v}")
        lines.append(f"  time: {self.elapsed:.3f} s")
        return "\n".join(lines)


def _load_rep(G: GroupPresentation, psi_file, shipped: str, report: ScenarioReport):
    """Load and validate the isomorphism; a failed validation becomes a failed check."""
    try:
        rep = load_iso(psi_file) if psi_file else load_shipped_iso(shipped)
    except IsoError as e:
        report.check("isomorphism data is valid", "valid", f"invalid: {e}", False)
        return None
    except WordError as e:
        raise UsageError(f"cannot parse isomorphism data: {e}") from None
    except (OSError, json.JSONDecodeError, ValueError) as e:
        raise UsageError(f"cannot read isomorphism data: {e}") from None
    if rep.group != G:
        raise UsageError(f"isomorphism data is for {rep.group.name}, expected {G.name}")
    return rep


def _common_checks(G: GroupPresentation, rep, report: ScenarioReport):
    """psi(A^-2), image, indices and the BS relation; returns (psi, phi) or None."""
    A2 = G.word("A^-2")
    try:
        got = rep(A2)
    except DomainError:
        got = "undefined (A^-2 not in the domain)"
    report.check("psi(A^-2) = A^-3", "A^-3", got,
                 isinstance(got, Word) and words_equal(G, got, G.word("A^-3")))
    report.check("Image(psi, K1) = K2", "true", str(image_is_codomain(rep)).lower(),
                 image_is_codomain(rep))
    i1, i2 = rep.domain.index(), rep.codomain.index()
    report.check("Index(K1) = Index(K2) = 6", "6 = 6", f"{i1} = {i2}", i1 == i2 == 6)
    try:
        psi, phi = build_bs_pair(G, 2, 3, rep)
    except IsoError as e:
        report.check("psi phi^2 psi^-1 phi^-3 is the identity", "true", f"false ({e})", False)
        return None
    report.check("psi phi^2 psi^-1 phi^-3 is the identity", "true", "true", True)
    return psi, phi


def _word10(G: GroupPresentation, pair, test: Word, report: ScenarioReport):
    psi, phi = pair
    letters = {"a": psi, "b": phi}
    try:
        out = sequential_evaluate(letters, GAMMA_COMM_WORD, test)
    except DomainError as e:
        report.check(f"gamma evaluates on {test}", "defined", str(e), False)
        return None
    report.details["Word"] = str(test)
    report.details["Word10"] = str(out)
    return out


def cmd_free_demo(psi_file=None, auto: bool = False, shift: int = 0) -> ScenarioReport:
    """Free-group scenario for (m, n) = (2, 3)."""
    report = ScenarioReport("free-demo")
    t0 = time.perf_counter()
    G = free_group()
    if auto:
        rep = auto_psi(G, 2, 3, shift=shift)
        report.details["psi"] = f"automatic (shift {shift})"
    else:
        rep = _load_rep(G, psi_file, "psi_free", report)
        report.details["psi"] = str(psi_file) if psi_file else "shipped psi_free"
    if rep is not None:
        pair = _common_checks(G, rep, report)
        if pair is not None:
            test = G.word("B*A*B^-1*A^-1")
            out = _word10(G, pair, test, report)
            if out is not None:
                if not auto and _is_shipped(rep, "psi_free"):
                    report.check("Word10 (exact)", FREE_WORD10, out, str(out) == FREE_WORD10)
                report.check("Word10 <> Word", "not equal", "equal" if out == test else "not equal",
                             out != test)
    report.elapsed = time.perf_counter() - t0
    return report


def _is_shipped(rep, name: str) -> bool:
    return rep.same_data(load_shipped_iso(name, check=False))


def printed_surface_word10() -> str:
    text = resources.files("commensurators").joinpath("data", "surface_word10.txt").read_text("utf-8")
    return "".join(text.split())


def cmd_surface_demo(psi_file=None) -> ScenarioReport:
    """Genus-2 scenario for (m, n) = (2, 3), evaluated at C."""
    report = ScenarioReport("surface-demo")
    t0 = time.perf_counter()
    G = surface_group()
    rep = _load_rep(G, psi_file, "psi_surface", report)
    report.details["psi"] = str(psi_file) if psi_file else "shipped psi_surface"
    if rep is not None:
        pair = _common_checks(G, rep, report)
        if pair is not None:
            test = G.word("C")
            out = _word10(G, pair, test, report)
            if out is not None:
                printed = G.word(printed_surface_word10())
                report.check("Word10 equals the reference output in the group", "true",
                             str(words_equal(G, out, printed)).lower(), words_equal(G, out, printed))
                nontrivial = not is_trivial(G, out * test.inverse())
                report.check("Word10 * C^-1 is nontrivial", "nontrivial",
                             "nontrivial" if nontrivial else "trivial", nontrivial)
    report.elapsed = time.perf_counter() - t0
    return report


def cmd_kernel_check() -> ScenarioReport:
    """rho(gamma) = 1 in BS(2,3) while gamma itself is a nonempty reduced word."""
    report = ScenarioReport("kernel-check")
    t0 = time.perf_counter()
    try:
        res = bs_kernel_witness_check()
    except RuntimeError as e:
        report.check("rewriting terminates", "within budget", str(e), False)
    else:
        g = res.gamma
        raw = len(GAMMA.split("*"))
        report.check("gamma is nonempty and freely reduced", f"length {raw}",
                     f"{g} (length {len(g)})", 0 < len(g) == raw)
        report.check("rho(gamma) normalizes to 1", "1 (length 0)",
                     f"{res.rho_gamma_normalized} (length {len(res.rho_gamma_normalized)})",
                     not res.rho_gamma_normalized)
        report.check("gamma does not normalize to 1", "nonempty", res.gamma_normalized,
                     bool(res.gamma_normalized))
        report.details["rho(gamma)"] = str(res.rho_gamma)
    report.elapsed = time.perf_counter() - t0
    return report


def cmd_eval(group: str, letters_file: str, word: str, test: str, verdict: bool = False) -> dict:
    """Image of ``test`` under the commensurator word, applied right to left."""
    try:
        G = group_by_name(group)
    except (WordError, ValueError) as e:
        raise UsageError(str(e)) from None
    try:
        LG, letters = load_letters(letters_file)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read letters file: {e}") from None
    except (WordError, IsoError) as e:
        raise UsageError(f"bad letters file: {e}") from None
    if LG != G:
        raise UsageError(f"letters file is for {LG.name}, not {G.name}")
    try:
        parsed = parse_comm_word(word)
        t = G.word(test)
    except WordError as e:
        raise UsageError(str(e)) from None
    unknown = sorted({name for name, _ in parsed} - set(letters))
    if unknown:
        raise UsageError(f"unknown commensurator letters: {', '.join(unknown)}")
    out = {"group": G.name, "word": word, "test": str(t),
           "image": str(sequential_evaluate(letters, parsed, t))}
    if verdict:
        trivial, wit = decide_comm_word(letters, parsed, G)
        out["verdict"] = "trivial" if trivial else "nontrivial"
        if wit is not None:
            out["witness"] = [str(wit[0]), str(wit[1])]
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="commensurators",
                                description="Commensurator computations for F2 and the genus-2 surface group.")
    sub = p.add_subparsers(dest="command", required=True)

    fd = sub.add_parser("free-demo", help="Baumslag-Solitar (2,3) scenario in F2")
    fd.add_argument("--psi-file", help="isomorphism definition file (default: shipped data)")
    fd.add_argument("--auto", action="store_true", help="use the automatically built psi")
    fd.add_argument("--shift", type=int, default=0, help="basis rotation for --auto")
    fd.add_argument("--json", action="store_true")

    sd = sub.add_parser("surface-demo", help="Baumslag-Solitar (2,3) scenario in the surface group")
    sd.add_argument("--psi-file", help="isomorphism definition file (default: shipped data)")
    sd.add_argument("--json", action="store_true")

    ev = sub.add_parser("eval", help="evaluate a commensurator word on a group element")
    ev.add_argument("group", help="F2 or Surface2")
    ev.add_argument("letters", help="letters file, or letters_free / letters_surface")
    ev.add_argument("word", help='commensurator word, e.g. "a^-1 b a"')
    ev.add_argument("test", help="group element, e.g. B*A*B^-1*A^-1")
    ev.add_argument("--verdict", action="store_true", help="also decide whether the word is trivial")
    ev.add_argument("--json", action="store_true")

    kc = sub.add_parser("kernel-check", help="check the BS(2,3) kernel witness")
    kc.add_argument("--json", action="store_true")
    return p


def _emit(obj, as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(obj)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "eval":
            try:
                out = cmd_eval(args.group, args.letters, args.word, args.test, args.verdict)
            except DomainError as e:
                print(f"error: {e}", file=sys.stderr)
                return EXIT_FAIL
            if args.json:
                _emit(out, True)
            else:
                print(out["image"])
                if "verdict" in out:
                    print(out["verdict"])
                    if "witness" in out:
                        print(f"witness: {out['witness'][0]} -> {out['witness'][1]}")
            return EXIT_OK
        if args.command == "free-demo":
            if args.auto and args.psi_file:
                raise UsageError("--auto and --psi-file are mutually exclusive")
            report = cmd_free_demo(args.psi_file, auto=args.auto, shift=args.shift)
        elif args.command == "surface-demo":
            report = cmd_surface_demo(args.psi_file)
        else:
            report = cmd_kernel_check()
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report.to_json() if args.json else report.render(), args.json)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
