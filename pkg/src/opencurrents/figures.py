"""Figure rendering for the curve commands.

Each curve command that writes a CSV also drops a .png next to it; the
figures mirror the published curves (current and occupancy against time,
Q and Q*g against time).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_current_curve(series, path, title: str = "") -> None:
    """Two stacked panels: J(t) on top, occupancy Tr[Pi rho(t)] below."""
    fig, (ax_j, ax_occ) = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    ax_j.plot(series.times, series.j_values, lw=0.9)
    ax_j.axhline(0.0, color="gray", lw=0.5)
    ax_j.set_ylabel("J(t)")
    if title:
        ax_j.set_title(title)
    ax_occ.plot(series.times, series.occupancy, lw=0.9, color="tab:orange")
    ax_occ.set_ylabel(r"Tr[$\Pi$ $\rho$(t)]")
    ax_occ.set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_q_curve(times, q_values, qg_values, path, title: str = "") -> None:
    """Q(t) and Q(t)*g(t) on one axis pair."""
    fig, (ax_q, ax_qg) = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    ax_q.plot(times, q_values, lw=0.9)
    ax_q.axhline(1.0, color="gray", lw=0.5)
    ax_q.set_ylabel("Q(t)")
    if title:
        ax_q.set_title(title)
    ax_qg.plot(times, qg_values, lw=0.9, color="tab:green")
    ax_qg.set_ylabel("Q(t)·g(t)")
    ax_qg.set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
