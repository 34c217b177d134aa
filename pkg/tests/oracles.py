"""Brute-force reference implementations used as test oracles.

These deliberately avoid the package's own helpers (root paths, child-index
caches, canonical_string) and recompute everything by walking parent links.
"""

from __future__ import annotations

import itertools


def _ancestors(tree, nid):
    out = [nid]
    while tree.nodes[out[-1]].parent is not None:
        out.append(tree.nodes[out[-1]].parent)
    return out  # nid first, root last


def brute_terminals(tree):
    terms = [n for n in tree.nodes if not n.children and n.id in tree.tokens]
    terms.sort(key=lambda n: (n.span.start_line, n.span.start_col, n.span.end_line, n.span.end_col, n.id))
    return [n.id for n in terms]


def brute_contexts(tree, max_length=8, max_width=2):
    """All terminal pairs within limits as (start, end, path, length, width, key)."""
    out = []
    for a, b in itertools.combinations(brute_terminals(tree), 2):
        up_a = _ancestors(tree, a)
        up_b = _ancestors(tree, b)
        lca = next(x for x in up_a if x in set(up_b))
        ia, ib = up_a.index(lca), up_b.index(lca)
        length = ia + ib
        siblings = tree.nodes[lca].children
        width = abs(siblings.index(up_a[ia - 1]) - siblings.index(up_b[ib - 1]))
        if length > max_length or width > max_width:
            continue
        path = tuple(up_a[: ia + 1]) + tuple(reversed(up_b[:ib]))
        names = [tree.nodes[x].type_name for x in path]
        key = (
            tree.tokens[a].text
            + ","
            + "^".join(names[: ia + 1])
            + "".join("_" + n for n in names[ia + 1:])
            + ","
            + tree.tokens[b].text
        )
        out.append((a, b, path, length, width, key))
    return out


def brute_aggregate(tree, contexts, table):
    """Per-node attention by scanning every (node, context) pair."""
    keys = {(c[0], c[1]): c[5] for c in brute_contexts(tree, 10**9, 10**9)}
    out = {}
    for n in tree.nodes:
        total = 0.0
        for pc in contexts:
            key = keys[(pc.start_terminal, pc.end_terminal)]
            if key in table and n.id in pc.node_path:
                total += table[key] * pc.node_path.count(n.id)
        out[n.id] = total
    return out


def brute_auc(c, gplus):
    """Gaze-weighted Mann-Whitney statistic: P(score_pos > score_neg) + ties / 2."""
    vals = [float(v) for v in c.ravel()]
    counts = [int(g) for g in gplus.ravel()]
    pos = [(v, w) for v, w in zip(vals, counts) if w > 0]
    neg = [v for v, w in zip(vals, counts) if w == 0]
    num = 0.0
    for v, w in pos:
        for u in neg:
            if v > u:
                num += w
            elif v == u:
                num += w / 2
    return num / (sum(w for _, w in pos) * len(neg))
