"""Text file formats: matrices ("n_rows n_cols" header then rows of
values) and observation sets ("n_rows n_cols m" header then lines
"i j value [p]" with 0-based indices)."""

from __future__ import annotations

import numpy as np

from .linalg import Observations, check_dense


def write_matrix(path, M: np.ndarray) -> None:
    M = check_dense(M)
    with open(path, "w") as fh:
        fh.write(f"{M.shape[0]} {M.shape[1]}\n")
        for row in M:
            fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("matrix header must be 'n_rows n_cols'")
        n1, n2 = int(header[0]), int(header[1])
        M = np.loadtxt(fh, ndmin=2)
    if M.shape != (n1, n2):
        raise ValueError(f"expected shape {(n1, n2)}, file holds {M.shape}")
    return M


def write_observations(path, obs: Observations) -> None:
    with open(path, "w") as fh:
        fh.write(f"{obs.shape[0]} {obs.shape[1]} {len(obs)}\n")
        for k in range(len(obs)):
            line = f"{obs.rows[k]} {obs.cols[k]} {float(obs.values[k])!r}"
            if obs.probs is not None:
                line += f" {float(obs.probs[k])!r}"
            fh.write(line + "\n")


def read_observations(path) -> Observations:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError("observation header must be 'n_rows n_cols m'")
        n1, n2, m = (int(x) for x in header)
        rows, cols, values, probs = [], [], [], []
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            rows.append(int(parts[0]))
            cols.append(int(parts[1]))
            values.append(float(parts[2]))
            if len(parts) > 3:
                probs.append(float(parts[3]))
    if len(rows) != m:
        raise ValueError(f"header promises {m} entries, file holds {len(rows)}")
    p = np.asarray(probs) if len(probs) == m else None
    if probs and p is None:
        raise ValueError("probability column present on only some lines")
    return Observations((n1, n2), np.asarray(rows, dtype=np.intp),
                        np.asarray(cols, dtype=np.intp), np.asarray(values), p)
