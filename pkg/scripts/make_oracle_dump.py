"""Regenerate golden path-context dumps with the brute-force test oracle.

The dump is produced by ``tests/oracles.py`` rather than the package, so a
golden file cannot silently absorb an extractor regression.

    python scripts/make_oracle_dump.py tests/fixtures/oneline.java
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from oracles import brute_contexts  # noqa: E402

from codeattn.syntax import SourceSnippet, parse_source  # noqa: E402


def oracle_dump(java_path, max_length=8, max_width=2):
    tree = parse_source(SourceSnippet.read(java_path))
    rows = brute_contexts(tree, max_length, max_width)
    span = lambda nid: (tree.nodes[nid].span.start, tree.nodes[nid].span.end)  # noqa: E731
    rows.sort(key=lambda r: (span(r[0]), span(r[1])))
    return "".join(r[5] + "\n" for r in rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("java_file")
    ap.add_argument("--out", help="default: <java_file stem>.contexts.txt next to the source")
    args = ap.parse_args()
    src = Path(args.java_file)
    out = Path(args.out) if args.out else src.with_suffix(".contexts.txt")
    text = oracle_dump(src)
    out.write_text(text, encoding="utf-8")
    print(f"{text.count(chr(10))} contexts -> {out}")


if __name__ == "__main__":
    main()
