"""Write a deterministic attention file for a Java snippet.

Stands in for a trained model: every extracted context gets a softmax weight
over seeded Gaussian logits, so the values sum to one like real attention.

    python scripts/make_fixture_attention.py tests/fixtures/wordcount.java \
        tests/fixtures/wordcount.attention.tsv --seed 7
"""

import argparse

import numpy as np

from codeattn.attention import PathAttention, format_attention
from codeattn.pathctx import canonical_string, extract_path_contexts
from codeattn.syntax import SourceSnippet, parse_source


def fixture_attention(java_path, seed=7, temperature=1.0):
    tree = parse_source(SourceSnippet.read(java_path))
    contexts = extract_path_contexts(tree)
    keys = list(dict.fromkeys(canonical_string(tree, pc) for pc in contexts))
    logits = np.random.default_rng(seed).normal(size=len(keys)) / temperature
    w = np.exp(logits - logits.max())
    w /= w.sum()
    return [PathAttention(k, float(v)) for k, v in zip(keys, w)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("java_file")
    ap.add_argument("out")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--temperature", type=float, default=1.0)
    args = ap.parse_args()
    records = fixture_attention(args.java_file, args.seed, args.temperature)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("# softmax over seeded normal logits, seed=%d\n" % args.seed)
        fh.write(format_attention(records))
    print(f"{len(records)} records -> {args.out}")


if __name__ == "__main__":
    main()
