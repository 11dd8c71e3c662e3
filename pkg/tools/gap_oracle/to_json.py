"""Convert the GAP oracle outputs (*.out) into test fixtures."""
import json
from pathlib import Path

HERE = Path(__file__).resolve().parent
FIXTURES = HERE.parents[1] / "tests" / "fixtures"


def tagged(path):
    text = path.read_text().replace("\\\n", "")
    out = {}
    for line in text.splitlines():
        tag, _, rest = line.partition(" ")
        if tag in ("IMG", "INV", "WORD10"):
            out.setdefault(tag, []).append(rest.strip())
    return out


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    free = tagged(HERE / "export_free.out")
    surface = tagged(HERE / "export_surface.out")
    auto = tagged(HERE / "auto_psi.out")
    docs = {
        "gap_psi_free.json": {"images": free["IMG"], "inverse_images": free["INV"]},
        "gap_psi_surface.json": {"images": surface["IMG"], "inverse_images": surface["INV"],
                                 "word10": surface["WORD10"][0]},
        "auto_psi_free_word10.json": {"word10": auto["WORD10"][0]},
    }
    for name, doc in docs.items():
        (FIXTURES / name).write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
