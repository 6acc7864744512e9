"""Figure rendering for sweep output.

Renders the uncertainty and its two main lower bounds against the sweep
parameter, mirroring the columns of the CSV emitter. matplotlib is
imported lazily so the data-only paths never pay for it.
"""

from __future__ import annotations

from .errors import ContractError


def render_sweep_figure(rows, parameter_name: str, path, title: str = "") -> None:
    """Render U, L1, L2 versus the sweep parameter to an image file."""
    rows = list(rows)
    if not rows:
        raise ContractError("no sweep rows to plot")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [row["param"] for row in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    series = (
        ("U", "U", "solid", "#1f77b4"),
        ("L1", "L1", "dashed", "#d62728"),
        ("L2", "L2", "dotted", "#2ca02c"),
    )
    for key, name, style, color in series:
        ys = [row[key] for row in rows]
        if any(y is None for y in ys):
            continue
        ax.plot(xs, ys, linestyle=style, color=color, label=name, linewidth=1.8)
    ax.set_xlabel(parameter_name)
    ax.set_ylabel("bits")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    try:
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
