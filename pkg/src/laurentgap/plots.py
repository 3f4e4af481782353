"""Matplotlib figures written next to the JSON/CSV reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_uv_sample(points, path, title="sampled unitary variety"):
    """Scatter of torus samples; 3-d samples are shown as three pairwise projections."""
    pts = np.asarray(points, dtype=float).reshape(-1, max(1, len(points[0]) if len(points) else 2))
    d = pts.shape[1]
    if d <= 2:
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        if d == 1:
            ax.scatter(pts[:, 0], np.zeros(len(pts)), s=8)
        else:
            ax.scatter(pts[:, 0], pts[:, 1], s=4)
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_xlabel("t1")
        ax.set_ylabel("t2")
        ax.set_title(title)
        return _finish(fig, path)
    fig, axes = plt.subplots(1, 3, figsize=(11, 3.8))
    for ax, (i, j) in zip(axes, [(0, 1), (0, 2), (1, 2)]):
        ax.scatter(pts[:, i], pts[:, j], s=2)
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_xlabel(f"t{i + 1}")
        ax.set_ylabel(f"t{j + 1}")
    fig.suptitle(title)
    return _finish(fig, path)


def plot_tail(q, path, H_values=(1, 8)):
    """Tail mass of a quasi-inverse against radius, with gap thresholds for a few H."""
    table = np.asarray(q.tail_table)
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.semilogy(np.arange(len(table)), np.maximum(table, 1e-300), marker=".", label="tail mass")
    for H in H_values:
        thr = 1.0 / (2 * H * q.f.norm_1())
        ax.axhline(thr, ls="--", lw=0.8, color="gray")
        ax.text(len(table) * 0.98, thr, f"H={H}", ha="right", va="bottom", fontsize=8)
    ax.set_xlabel("R")
    ax.set_ylabel("sum over ||n|| >= R of |f#_n|")
    ax.set_title(f"tail of f# for f = {q.f}")
    return _finish(fig, path)


def plot_split(cert, path):
    """Support of r coloured by cluster (1-d and 2-d)."""
    fig, ax = plt.subplots(figsize=(6, 3.5) if cert.f.dim == 1 else (5, 5))
    for i, c in enumerate(cert.clusters):
        pts = np.array(sorted(c.points))
        ok = cert.quotients[i] is not None
        label = f"cluster {i} ({'divisible' if ok else 'ANOMALY'})"
        if cert.f.dim == 1:
            ax.scatter(pts[:, 0], np.zeros(len(pts)), s=30, label=label)
        else:
            ax.scatter(pts[:, 0], pts[:, 1], s=20, label=label)
    ax.set_title(f"gap split, M = {cert.M}")
    ax.legend(fontsize=8)
    return _finish(fig, path)
