#!/usr/bin/env python3
"""Convert a .npz graph dump into a dataset directory.

The output directory contains:
  edges.tsv     one undirected edge per line (tab-separated zero-based ids)
  features.bin  little-endian u64 n, u64 m, then n*m float64 row-major
  labels.tsv    one 0/1 per line (written only when labels are present)
  meta.toml     name = "..." and n = <node count>

Accepted .npz layouts (keys are probed in this order):
  edges     edge_index (2xE or Ex2), edges (Ex2), or row + col vectors,
            or a CSR adjacency as adj_data / adj_indices / adj_indptr /
            adj_shape
  features  features, x, attr_matrix, feat, or a CSR matrix as attr_data /
            attr_indices / attr_indptr / attr_shape
  labels    labels, y, label, ano_label (optional)

Only numpy and the standard library are required; the tool does not import
the compiled extension, so it can run before the package is built.

Example:
  python3 tools/convert_npz.py amazon.npz data/amazon --name amazon
"""

import argparse
import pathlib
import struct
import sys

import numpy as np


def _first_key(data, names):
    for name in names:
        if name in data:
            return name
    return None


def load_edges(data, args):
    """Return an (E, 2) int64 array of undirected edges."""
    if args.edges:
        key = args.edges
        if key not in data:
            raise KeyError(f"edge key {key!r} not in archive (has {sorted(data.keys())})")
        arr = np.asarray(data[key])
        if arr.ndim == 2 and arr.shape[0] == 2 and arr.shape[1] != 2:
            arr = arr.T
        return arr.astype(np.int64).reshape(-1, 2)

    key = _first_key(data, ("edge_index", "edges", "edge_list"))
    if key is not None:
        arr = np.asarray(data[key])
        if arr.ndim != 2:
            raise ValueError(f"{key} must be 2-D, got shape {arr.shape}")
        if arr.shape[0] == 2 and arr.shape[1] != 2:
            arr = arr.T
        return arr.astype(np.int64).reshape(-1, 2)

    if "row" in data and "col" in data:
        row = np.asarray(data["row"]).astype(np.int64).ravel()
        col = np.asarray(data["col"]).astype(np.int64).ravel()
        return np.stack([row, col], axis=1)

    if "adj_indptr" in data:
        indptr = np.asarray(data["adj_indptr"]).astype(np.int64)
        indices = np.asarray(data["adj_indices"]).astype(np.int64)
        rows = np.repeat(np.arange(len(indptr) - 1, dtype=np.int64), np.diff(indptr))
        return np.stack([rows, indices], axis=1)

    raise KeyError(
        "no edge data found; expected edge_index/edges/edge_list, row+col, or "
        f"adj_* CSR keys (archive has {sorted(data.keys())})"
    )


def load_features(data, args):
    """Return an (n, m) float64 array."""
    if args.features:
        key = args.features
        if key not in data:
            raise KeyError(f"feature key {key!r} not in archive (has {sorted(data.keys())})")
        return np.asarray(data[key]).astype(np.float64)

    key = _first_key(data, ("features", "x", "X", "attr_matrix", "feat", "feats"))
    if key is not None:
        return np.asarray(data[key]).astype(np.float64)

    if "attr_indptr" in data:
        indptr = np.asarray(data["attr_indptr"]).astype(np.int64)
        indices = np.asarray(data["attr_indices"]).astype(np.int64)
        values = np.asarray(data["attr_data"]).astype(np.float64)
        shape = tuple(np.asarray(data["attr_shape"]).astype(np.int64))
        dense = np.zeros(shape, dtype=np.float64)
        for i in range(shape[0]):
            cols = indices[indptr[i]:indptr[i + 1]]
            dense[i, cols] = values[indptr[i]:indptr[i + 1]]
        return dense

    raise KeyError(
        "no feature data found; expected features/x/attr_matrix or attr_* CSR "
        f"keys (archive has {sorted(data.keys())})"
    )


def load_labels(data, args):
    if args.labels:
        key = args.labels
        if key not in data:
            raise KeyError(f"label key {key!r} not in archive (has {sorted(data.keys())})")
    else:
        key = _first_key(data, ("labels", "y", "label", "ano_label", "anomaly_label"))
        if key is None:
            return None
    labels = np.asarray(data[key]).ravel()
    labels = (labels != 0).astype(np.int8)
    return labels


def write_dataset(out_dir, name, edges, features, labels):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n, m = features.shape

    # Canonicalize: drop self-loops, sort endpoints, deduplicate.
    if len(edges):
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        keep = lo != hi
        pairs = np.unique(np.stack([lo[keep], hi[keep]], axis=1), axis=0)
    else:
        pairs = np.empty((0, 2), dtype=np.int64)
    if len(pairs) and (pairs.min() < 0 or pairs.max() >= n):
        raise ValueError(f"edge endpoint outside [0, {n})")

    with open(out / "edges.tsv", "w", encoding="ascii") as f:
        f.write(f"# {name}: {len(pairs)} undirected edges\n")
        for u, v in pairs:
            f.write(f"{u}\t{v}\n")

    with open(out / "features.bin", "wb") as f:
        f.write(struct.pack("<QQ", n, m))
        f.write(np.ascontiguousarray(features, dtype="<f8").tobytes())

    if labels is not None:
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for {n} nodes")
        with open(out / "labels.tsv", "w", encoding="ascii") as f:
            for v in labels:
                f.write(f"{int(v)}\n")

    with open(out / "meta.toml", "w", encoding="ascii") as f:
        f.write(f'name = "{name}"\n')
        f.write(f"n = {n}\n")

    return len(pairs)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input", help=".npz archive to convert")
    parser.add_argument("output", help="dataset directory to create")
    parser.add_argument("--name", default=None, help="dataset name (default: input stem)")
    parser.add_argument("--edges", default=None, help="override the edge array key")
    parser.add_argument("--features", default=None, help="override the feature array key")
    parser.add_argument("--labels", default=None, help="override the label array key")
    args = parser.parse_args(argv)

    name = args.name or pathlib.Path(args.input).stem
    with np.load(args.input, allow_pickle=False) as data:
        edges = load_edges(data, args)
        features = load_features(data, args)
        labels = load_labels(data, args)

    if not np.isfinite(features).all():
        raise ValueError("features contain non-finite values")

    n_edges = write_dataset(args.output, name, edges, features, labels)
    n, m = features.shape
    anomalies = int(labels.sum()) if labels is not None else "none"
    print(f"wrote {args.output}: nodes={n} edges={n_edges} dim={m} anomalies={anomalies}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
