#!/usr/bin/env python3
"""Generate the bundled stand-in networks.

The four benchmark datasets (erdos, email, router, protein) are published
networks whose original snapshots are not redistributable here, so the repo
bundles synthetic stand-ins instead: connected simple graphs with exactly the
published node and edge counts, and with the leading adjacency eigenvalue
tuned so 1/lambda1 matches the published value to within +/-0.001. Provenance
(including pointers to the original sources) is recorded in data/manifest.json.

Deterministic given the seeds below. Regenerate with:

    python3 tools/make_stand_in_datasets.py [outdir]
"""

import hashlib
import json
import math
import sys
from pathlib import Path

import networkx as nx
import numpy as np
import scipy.sparse as sp

TARGETS = [
    {
        "name": "erdos",
        "n": 456,
        "e": 1314,
        "inv_lambda1": 0.079,
        "description": "scientific collaboration network (stand-in)",
        "original_source": "http://wwwp.oakland.edu/enp/thedata/",
        "seed": 20250811,
        "kmax": 42,
    },
    {
        "name": "email",
        "n": 1133,
        "e": 5451,
        "inv_lambda1": 0.048,
        "description": "university email communication network (stand-in)",
        "original_source": "https://deim.urv.cat/~alexandre.arenas/data/welcome.htm",
        "seed": 20250812,
        "kmax": 72,
    },
    {
        "name": "router",
        "n": 2114,
        "e": 6632,
        "inv_lambda1": 0.036,
        "description": "router-level internet topology (stand-in)",
        "original_source": "https://networkrepository.com/tech-routers-rf.php",
        "seed": 20250813,
        "kmax": 110,
    },
    {
        "name": "protein",
        "n": 2783,
        "e": 6007,
        "inv_lambda1": 0.063,
        "description": "human binary protein-protein interaction map (stand-in)",
        "original_source": "http://interactome.dfci.harvard.edu/H_sapiens/",
        "seed": 20250814,
        "kmax": 130,
    },
]


def leading_eigenpair(g: nx.Graph) -> tuple[float, dict]:
    """Shifted power iteration on A + I from the all-ones vector."""
    nodes = sorted(g.nodes)
    a = nx.to_scipy_sparse_array(g, nodelist=nodes, format="csr", dtype=float)
    n = a.shape[0]
    v = np.ones(n) / math.sqrt(n)
    lam = 0.0
    for _ in range(200000):
        av = a @ v
        lam = float(v @ av)
        if np.max(np.abs(av - lam * v)) <= 1e-11:
            break
        w = av + v
        v = w / np.linalg.norm(w)
    return lam, dict(zip(nodes, v))


def leading_eigenvalue(g: nx.Graph) -> float:
    return leading_eigenpair(g)[0]


def degree_sequence(z: np.ndarray, n: int, e: int, sigma: float,
                    kmax: int) -> list[int]:
    """Integer degrees in [1, kmax] summing to exactly 2e, tail width per sigma."""
    raw = np.exp(sigma * z)
    cap = min(kmax, n - 1)

    def total(c: float) -> int:
        return int(np.sum(np.maximum(1, np.minimum(cap, np.rint(c * raw)))))

    lo, hi = 1e-6, 1e6
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if total(mid) < 2 * e:
            lo = mid
        else:
            hi = mid
    c = hi
    d = np.maximum(1, np.minimum(cap, np.rint(c * raw))).astype(int)

    # distribute the remainder one unit at a time, largest weights first
    order = np.argsort(-raw, kind="stable")
    diff = 2 * e - int(d.sum())
    i = 0
    while diff != 0:
        v = order[i % n]
        if diff > 0 and d[v] < cap:
            d[v] += 1
            diff -= 1
        elif diff < 0 and d[v] > 1:
            d[v] -= 1
            diff += 1
        i += 1

    d = sorted(map(int, d), reverse=True)
    fixes = 0
    while not nx.is_graphical(d) and fixes < 2000:
        # shave the heaviest entry and hand the units to the lightest ones
        take = max(1, d[0] // 20)
        d[0] -= take
        spread = min(50, n)
        for t in range(take):
            d[-1 - (t % spread)] += 1
        d = sorted(d, reverse=True)
        fixes += 1
    if not nx.is_graphical(d):
        raise RuntimeError("could not repair degree sequence into a graphical one")
    return d


def join_components(g: nx.Graph, rng: np.random.Generator) -> nx.Graph:
    """Degree-preserving rewiring until the graph is connected."""
    while True:
        comps = sorted(nx.connected_components(g), key=len, reverse=True)
        if len(comps) == 1:
            return g
        giant, other = comps[0], comps[1]
        giant_edges = sorted(e for e in g.edges if e[0] in giant)
        other_edges = sorted(e for e in g.edges if e[0] in other)
        done = False
        for _ in range(10000):
            a, b = giant_edges[rng.integers(len(giant_edges))]
            c, d = other_edges[rng.integers(len(other_edges))]
            if not g.has_edge(a, c) and not g.has_edge(b, d):
                g.remove_edge(a, b)
                g.remove_edge(c, d)
                g.add_edge(a, c)
                g.add_edge(b, d)
                done = True
                break
        if not done:
            raise RuntimeError("failed to join components")


def build_graph(target: dict, sigma: float) -> nx.Graph:
    rng = np.random.default_rng(target["seed"])
    z = rng.standard_normal(target["n"])
    d = degree_sequence(z, target["n"], target["e"], sigma, target["kmax"])
    g = nx.havel_hakimi_graph(d)
    g = join_components(g, rng)
    nswap = 2 * target["e"]
    try:
        nx.double_edge_swap(g, nswap=nswap, max_tries=nswap * 40,
                            seed=int(rng.integers(2**31)))
    except nx.NetworkXError:
        pass  # partially randomized is fine
    g = join_components(g, rng)
    assert g.number_of_nodes() == target["n"]
    assert g.number_of_edges() == target["e"]
    return g


def apply_swap(g, add_pair, remove_pairs, add_extra):
    for e in remove_pairs:
        g.remove_edge(*e)
    g.add_edge(*add_pair)
    g.add_edge(*add_extra)


def undo_swap(g, add_pair, remove_pairs, add_extra):
    g.remove_edge(*add_pair)
    g.remove_edge(*add_extra)
    for e in remove_pairs:
        g.add_edge(*e)


def fine_tune(g: nx.Graph, want_inv: float, tol: float) -> nx.Graph:
    """Degree-preserving double swaps chosen by first-order lambda1 prediction.

    Adding edges (u,v),(x,y) while removing (u,x),(v,y) shifts the leading
    eigenvalue by roughly 2(q_u q_v + q_x q_y - q_u q_x - q_v q_y). Each step
    applies the admissible candidate whose predicted shift best closes the
    gap, skipping swaps that would disconnect the graph.
    """
    lam_target = 1.0 / want_inv
    for _ in range(600):
        lam, q = leading_eigenpair(g)
        if abs(1.0 / lam - want_inv) <= tol:
            return g
        gap = lam_target - lam
        candidates = []  # (score, add_pair, remove_pairs, add_extra)

        if gap > 0:
            # connect two high-q nodes; detach one low-q neighbor of each
            by_q = sorted(g.nodes, key=lambda v: -q[v])
            for i in range(min(len(by_q), 100)):
                u = by_q[i]
                for j in range(i + 1, min(len(by_q), 140)):
                    v = by_q[j]
                    if g.has_edge(u, v):
                        continue
                    x = min((w for w in g.neighbors(u) if w != v), key=q.get, default=None)
                    y = min((w for w in g.neighbors(v) if w != u and w != x),
                            key=q.get, default=None)
                    if x is None or y is None or g.has_edge(x, y):
                        continue
                    pred = 2 * (q[u] * q[v] + q[x] * q[y] - q[u] * q[x] - q[v] * q[y])
                    candidates.append((abs(gap - pred), (u, v), [(u, x), (v, y)], (x, y)))
        else:
            # break a high-q edge (u,v) and a low-q edge (x,y); cross-attach
            high = sorted(g.edges, key=lambda e: -(q[e[0]] * q[e[1]]))[:300]
            low = sorted(g.edges, key=lambda e: q[e[0]] * q[e[1]])[:60]
            for u, v in high:
                for x, y in low:
                    if len({u, v, x, y}) < 4:
                        continue
                    if g.has_edge(u, x) or g.has_edge(v, y):
                        continue
                    pred = 2 * (q[u] * q[x] + q[v] * q[y] - q[u] * q[v] - q[x] * q[y])
                    candidates.append((abs(gap - pred), (u, x), [(u, v), (x, y)], (v, y)))
                    break

        if not candidates:
            raise RuntimeError("fine_tune: no admissible swap found")
        candidates.sort(key=lambda c: c[0])
        applied = False
        for _, add_pair, remove_pairs, add_extra in candidates[:50]:
            apply_swap(g, add_pair, remove_pairs, add_extra)
            if nx.is_connected(g):
                applied = True
                break
            undo_swap(g, add_pair, remove_pairs, add_extra)
        if not applied:
            raise RuntimeError("fine_tune: all candidate swaps disconnect the graph")
    raise RuntimeError("fine_tune: did not converge")


def tune(target: dict) -> tuple[nx.Graph, float]:
    """Coarse bisection on the tail-width knob, then swap-based fine tuning."""
    want = target["inv_lambda1"]
    lo, hi = 0.05, 2.0  # inv_lambda1 decreases as sigma grows
    flo = 1.0 / leading_eigenvalue(build_graph(target, lo))
    if flo < want:
        raise RuntimeError(f"{target['name']}: {want} below the family range")
    fhi = 1.0 / leading_eigenvalue(build_graph(target, hi))
    if fhi > want:
        # the degree cap keeps the plain family short of the target; the
        # swap tuner closes the rest by coupling the hubs
        return fine_tune(build_graph(target, hi), want, 2.5e-4), hi
    best_g, best_sigma, best_err = None, None, math.inf
    for _ in range(24):
        mid = 0.5 * (lo + hi)
        g = build_graph(target, mid)
        f = 1.0 / leading_eigenvalue(g)
        if abs(f - want) < best_err:
            best_g, best_sigma, best_err = g, mid, abs(f - want)
        if best_err < 2.5e-4:
            break
        if f > want:
            lo = mid
        else:
            hi = mid
    g = fine_tune(best_g, want, 2.5e-4)
    return g, best_sigma


def emit(g: nx.Graph, target: dict, outdir: Path) -> dict:
    rng = np.random.default_rng(target["seed"] + 7)
    relabel = rng.permutation(target["n"])  # shuffled 1-based ids, like raw data
    lines = [f"{relabel[u] + 1} {relabel[v] + 1}" for u, v in g.edges]
    rng.shuffle(lines)
    text = (f"# {target['name']} stand-in network (synthetic; see data/manifest.json)\n"
            f"# nodes: {target['n']} edges: {target['e']}\n")
    text += "\n".join(lines) + "\n"
    path = outdir / f"{target['name']}.edges"
    path.write_text(text, newline="\n")

    inv_l1 = 1.0 / leading_eigenvalue(g)
    return {
        "name": target["name"],
        "file": path.name,
        "description": target["description"],
        "original_source": target["original_source"],
        "original_snapshot": False,
        "provenance": "synthetic stand-in generated by tools/make_stand_in_datasets.py "
                      f"(seed {target['seed']}); node/edge counts exact, 1/lambda1 "
                      "tuned to the published value",
        "n": target["n"],
        "e": target["e"],
        "mean_degree": round(2 * target["e"] / target["n"], 3),
        "inv_lambda1": round(inv_l1, 6),
        "published": {
            "n": target["n"],
            "e": target["e"],
            "mean_degree": round(2 * target["e"] / target["n"], 3),
            "inv_lambda1": target["inv_lambda1"],
        },
        "repairs": {"self_loops_dropped": 0, "duplicate_edges_collapsed": 0},
        "sha256": hashlib.sha256(text.encode()).hexdigest(),
    }


def main() -> None:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent.parent / "data"
    outdir.mkdir(parents=True, exist_ok=True)
    entries = []
    for target in TARGETS:
        g, sigma = tune(target)
        entry = emit(g, target, outdir)
        entry["generator_sigma"] = round(sigma, 6)
        entries.append(entry)
        print(f"{target['name']}: n={entry['n']} e={entry['e']} "
              f"1/lambda1={entry['inv_lambda1']:.4f} "
              f"(published {target['inv_lambda1']}) sigma={sigma:.4f}")
    manifest = {
        "generator": {
            "script": "tools/make_stand_in_datasets.py",
            "networkx": nx.__version__,
            "numpy": np.__version__,
            "scipy": sp.__name__ and __import__("scipy").__version__,
        },
        "datasets": entries,
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n",
                                          newline="\n")
    print(f"wrote {outdir / 'manifest.json'}")


if __name__ == "__main__":
    main()
