"""Static SVG charts (deterministic bytes: fixed hash salt, no date metadata)."""

from __future__ import annotations

import math

import numpy as np


def _figure():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "hylab"
    fig, ax = plt.subplots(figsize=(6, 4))
    return plt, fig, ax


def _save(plt, fig, path):
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_k1(path, n: int = 401):
    from .spectral_ray import k1_norm

    plt, fig, ax = _figure()
    th = np.linspace(-math.pi / 2, math.pi / 2, n)
    ax.plot(th, [k1_norm(t) for t in th])
    ax.set_xlabel("theta")
    ax.set_ylabel("K1(theta)")
    _save(plt, fig, path)


def plot_opnorm(estimates, path):
    plt, fig, ax = _figure()
    ns = [e.n for e in estimates]
    ax.semilogx(ns, [e.sigma_max for e in estimates], "o-", label="sigma_max(n)")
    ax.axhline(estimates[-1].bound, color="k", ls="--", label="K1^2")
    ax.set_xlabel("n")
    ax.legend()
    _save(plt, fig, path)


def plot_counterexample(report, path):
    plt, fig, ax = _figure()
    ax.loglog(report.eps, report.ratios, "o-")
    ax.set_xlabel("eps")
    ax.set_ylabel("norm ratio")
    ax.set_title(f"p = {report.p:g}, slope {report.slope:.4f}")
    _save(plt, fig, path)
