"""Strongly regular graph and two-weight code attached to a point set.

The graph lives on the q^8 points of the affine space over the plane at
infinity: vertices are vectors of GF(q^2)^4, and u ~ v iff the direction
point of the line uv belongs to the base set.  The graph is never
materialized; adjacency is a direction-index lookup against the set's
bitmask, and common-neighbour counts are exact vectorized sweeps.

Because adjacency is translation invariant, the common-neighbour count
of a pair (u, v) depends only on d = v - u; the exhaustive mode walks
every nonzero difference class, which covers every vertex pair exactly.

The projective code of the set has the set's coordinate vectors as
columns; its weight distribution falls out of the plane spectrum via
weight = |set| - h, and (for small q) is cross-checked by enumerating
all q^8 - 1 codewords directly.
"""

from __future__ import annotations

import numpy as np

from .projgeom import Geometry
from . import quasi as QH


def _affine_vectors(geom: Geometry) -> np.ndarray:
    """All Q^4 vectors of GF(q^2)^4, one row each."""
    Q = geom.Q
    n = Q**4
    idx = np.arange(n)
    out = np.empty((n, 4), dtype=np.int16)
    for c in range(4):
        out[:, c] = (idx // Q ** (3 - c)) % Q
    return out


def _direction_index(geom: Geometry, diffs: np.ndarray) -> np.ndarray:
    """Point index of each nonzero difference vector (zero rows -> -1)."""
    nz = (diffs != 0).any(axis=1)
    out = np.full(len(diffs), -1, dtype=np.int64)
    if nz.any():
        out[nz] = geom.index_rows(geom.canonicalize_rows(diffs[nz]))
    return out


def graph_params(
    geom: Geometry,
    mask: np.ndarray,
    sample_vertices: int = 100,
    sample_pairs: int = 10_000,
    seed: int = 0,
    exhaustive: bool = False,
) -> dict:
    """Exact degree and common-neighbour statistics of the graph.

    Sampled vertices get their degree counted outright; sampled pairs
    (or, with exhaustive=True, every difference class) get exact common
    neighbour counts.  srg_ok reports whether the counts are constant on
    the adjacent and non-adjacent classes.
    """
    F = geom.F
    Q = geom.Q
    n = Q**4
    vecs = _affine_vectors(geom)
    sub = F.add_t[np.arange(Q)[:, None], F.neg_t[np.arange(Q)][None, :]]

    def diff_rows(u):
        return sub[vecs, u[None, :]]

    # direction-index table over all nonzero vectors, reused throughout
    dir_idx = _direction_index(geom, vecs)
    in_set = np.zeros(n, dtype=bool)
    nzmask = dir_idx >= 0
    in_set[nzmask] = mask[dir_idx[nzmask]]

    rng = np.random.default_rng(seed)
    degree_target = (Q - 1) * int(mask.sum())
    verts = rng.choice(n, size=min(sample_vertices, n), replace=False)
    degrees = set()
    for u in verts:
        d = _direction_index(geom, diff_rows(vecs[u]))
        degrees.add(int((mask[d[d >= 0]]).sum()))
    degree_ok = degrees == {degree_target} if len(verts) else True

    def vec_code(row):
        code = 0
        for c in range(4):
            code = code * Q + int(row[c])
        return code

    lam_counts: set = set()
    mu_counts: set = set()
    if exhaustive:
        # one representative pair per difference class covers all pairs
        for dcode in range(1, n):
            d = vecs[dcode]
            shifted = sub[vecs, d[None, :]]
            codes = np.zeros(n, dtype=np.int64)
            for c in range(4):
                codes = codes * Q + shifted[:, c]
            common = int((in_set & in_set[codes]).sum())
            (lam_counts if in_set[dcode] else mu_counts).add(common)
    else:
        pairs = 0
        while pairs < sample_pairs:
            dcode = int(rng.integers(1, n))
            d = vecs[dcode]
            u = vecs[int(rng.integers(0, n))]
            v = F.add_t[u, d]
            du = _direction_index(geom, sub[vecs, u[None, :]])
            dv = _direction_index(geom, sub[vecs, v[None, :]])
            au = np.zeros(n, dtype=bool)
            au[du >= 0] = mask[du[du >= 0]]
            av = np.zeros(n, dtype=bool)
            av[dv >= 0] = mask[dv[dv >= 0]]
            common = int((au & av).sum())
            (lam_counts if in_set[dcode] else mu_counts).add(common)
            pairs += 1
    lam = lam_counts.pop() if len(lam_counts) == 1 else None
    mu = mu_counts.pop() if len(mu_counts) == 1 else None
    return {
        "n": n,
        "k": degree_target,
        "degree_ok": bool(degree_ok),
        "lambda": lam,
        "mu": mu,
        "srg_ok": bool(degree_ok and lam is not None and mu is not None),
        "exhaustive": exhaustive,
    }


def weight_distribution(geom: Geometry, mask: np.ndarray) -> dict:
    """Weights of the length-|set| projective code, from the plane sweep.

    Each plane meeting the set in h points contributes q^2 - 1 codewords
    of weight |set| - h.
    """
    Q = geom.Q
    size = int(mask.sum())
    spec = QH.plane_spectrum(geom, mask)
    out: dict = {}
    for h, m in spec.items():
        w = size - h
        if w:
            out[w] = out.get(w, 0) + m * (Q - 1)
    return out


def weight_distribution_direct(geom: Geometry, mask: np.ndarray) -> dict:
    """Oracle route: enumerate all q^8 - 1 codewords of the code whose
    generator columns are the set's coordinate vectors."""
    F = geom.F
    cols = geom.pts[mask]
    vecs = _affine_vectors(geom)[1:]  # nonzero message vectors
    out: dict = {}
    chunk = max(1, (1 << 22) // max(1, len(cols)))
    for start in range(0, len(vecs), chunk):
        blk = vecs[start : start + chunk]
        acc = F.mul_t[blk[:, 0][:, None], cols[None, :, 0]]
        for c in range(1, 4):
            acc = F.add_t[acc, F.mul_t[blk[:, c][:, None], cols[None, :, c]]]
        weights = (acc != 0).sum(axis=1)
        vals, cnts = np.unique(weights, return_counts=True)
        for w, m in zip(vals, cnts):
            if w:
                out[int(w)] = out.get(int(w), 0) + int(m)
    return out
