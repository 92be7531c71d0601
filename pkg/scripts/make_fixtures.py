"""Regenerate the bundled fixture JSON files from their combinatorial constructions."""
import json
from pathlib import Path

from coxperc.polyhedra import CONSTRUCTORS

OUT = Path(__file__).resolve().parents[1] / "src" / "coxperc" / "fixtures"


def render(doc: dict) -> str:
    """JSON with one matrix row per line."""
    rows = ",\n    ".join(json.dumps(r) for r in doc["orders"])
    head = {k: v for k, v in doc.items() if k != "orders"}
    body = ",\n  ".join(f"{json.dumps(k)}: {json.dumps(v)}" for k, v in head.items())
    return "{\n  " + body + ',\n  "orders": [\n    ' + rows + "\n  ]\n}\n"


def main():
    OUT.mkdir(exist_ok=True)
    for name, build in CONSTRUCTORS.items():
        doc = build().to_document()
        (OUT / f"{name}.json").write_text(render(doc))
        print(f"wrote {name}.json (k={doc['rank']})")


if __name__ == "__main__":
    main()
