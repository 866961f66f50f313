"""Independent oracle for the frozen values in the unit tests.

Written without reference to the C++ sources: plain dictionaries, numpy for
the forward pass, itertools for brute-force enumeration. Run it and compare
the printed values with the constants used by the tests.
"""

import itertools
import math

import numpy as np


def forward(layers, labels, edges, direction="out"):
    """labels: {const: vector}, edges: {colour: set of (s, o)}; layers: list of
    (A, {colour: B}, b, act)."""
    consts = sorted(labels)
    v = {c: np.array(labels[c], dtype=float) for c in consts}
    for A, Bs, b, act in layers:
        nxt = {}
        for c in consts:
            s = np.array(b, dtype=float) + np.array(A) @ v[c]
            for col, B in Bs.items():
                if direction == "out":
                    nb = [o for (x, o) in edges.get(col, ()) if x == c]
                else:
                    nb = [x for (x, o) in edges.get(col, ()) if o == c]
                if nb:
                    s = s + np.array(B) @ np.mean([v[u] for u in nb], axis=0)
            if act == "relu":
                s = np.maximum(s, 0.0)
            elif act == "sigmoid":
                s = 1.0 / (1.0 + np.exp(-s))
            nxt[c] = s
        v = nxt
    return v


MAJORITY = [([[0.0]], {"P": [[1.0]]}, [0.0], "relu")]
COPY = [([[1.0]], {"P": [[0.0]]}, [0.0], "relu")]


def dataset(facts):
    labels, edges = {}, {}
    for f in facts:
        if len(f) == 2:
            labels.setdefault(f[1], [0.0])
            labels[f[1]] = [1.0]
        else:
            p, s, o = f
            labels.setdefault(s, [0.0])
            labels.setdefault(o, [0.0])
            edges.setdefault(p, set()).add((s, o))
    return labels, edges


def majority_values():
    print("# majority forward values at a")
    for facts in (
        [("P", "a", "b1"), ("P", "a", "b2"), ("U", "b1")],
        [("U", "a")],
        [("P", "a", "b1"), ("P", "a", "b2"), ("P", "a", "b3"), ("U", "b1")],
    ):
        labels, edges = dataset(facts)
        out = forward(MAJORITY, labels, edges)
        print(facts, {c: float(out[c][0]) for c in sorted(out)})


def restricted_checks():
    print("# D_base verdicts (U/P signature)")
    cases = {
        "copy U=>U": (COPY, [("U", "a")]),
        "majority U=>U": (MAJORITY, [("U", "a")]),
        "majority U,EP=>U": (MAJORITY, [("U", "a"), ("P", "a", "b")]),
        "copy T=>U": (COPY, [("P", "b", "a")]),
        "copy EP=>U": (COPY, [("P", "a", "b")]),
        "majority T=>U": (MAJORITY, [("P", "b", "a")]),
    }
    for name, (model, facts) in cases.items():
        labels, edges = dataset(facts)
        out = forward(model, labels, edges)
        print(name, "sound" if out["a"][0] >= 0.5 else "unsound")


def exists_unique():
    print("# exists-unique by exhaustive injective assignment")
    succ = ["b1", "b2"]
    labels = {"b1": {"A1"}, "b2": set()}

    def holds(slots):
        for perm in itertools.permutations(succ, len(slots)):
            if all(s is None or s in labels[w] for s, w in zip(slots, perm)):
                return True
        return False

    print("(A1, TOP) max 2:", holds(["A1", None]) and len(succ) <= 2)
    print("(A1, A1) max 2:", holds(["A1", "A1"]) and len(succ) <= 2)


def khop():
    print("# 2-hop neighbourhood of a")
    facts = [("A1", "a"), ("P1", "a", "b1"), ("P1", "a", "b2"), ("P2", "b3", "a"),
             ("A2", "b2"), ("P2", "b2", "c"), ("P3", "c", "d")]

    def rec(c, level):
        out = {f for f in facts if len(f) == 2 and f[1] == c}
        if level > 0:
            for f in facts:
                if len(f) == 3 and f[1] == c:
                    out.add(f)
                    out |= rec(f[2], level - 1)
        return out

    for level in (0, 1, 2):
        print(level, sorted(rec("a", level)))


def counts():
    print("# enumeration sizes (sorted unary masks x all edge sets)")
    for dim, cols, k in ((1, 1, 3), (2, 1, 3), (3, 2, 3), (2, 2, 2)):
        unary = math.comb(2 ** dim + k - 1, k)
        print(dim, cols, k, unary * 2 ** (k * k * cols))
    print("# restricted candidates dim * 2^(dim + cols)")
    for dim, cols in ((1, 1), (3, 2), (2, 3)):
        print(dim, cols, dim * 2 ** (dim + cols))


def pair_encoding():
    print("# pair encoding of R(a,b) and R(a,a)")
    for facts in ([("R", "a", "b")], [("R", "a", "a")]):
        pairs = sorted({(s, o) for _, s, o in facts} | {(o, s) for _, s, o in facts})
        edges = []
        for p in pairs:
            for q in pairs:
                for name, i, j in (("SS", 0, 0), ("SO", 0, 1), ("OS", 1, 0), ("OO", 1, 1)):
                    if p[i] == q[j]:
                        edges.append(f"{name}({p[0]}|{p[1]},{q[0]}|{q[1]})")
        print(facts, sorted(edges))


if __name__ == "__main__":
    majority_values()
    restricted_checks()
    exists_unique()
    khop()
    counts()
    pair_encoding()
