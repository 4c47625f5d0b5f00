"""Matplotlib figure rendering for the report path.

CSV/JSONL stays the canonical hand-off; figures are an optional visual
companion written next to the delimited output when a figure directory
is requested.  Uses the Agg backend so rendering works headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _new_axes(width=7.0, height=4.4):
    fig, ax = plt.subplots(figsize=(width, height), dpi=150)
    ax.grid(True, alpha=0.3, linewidth=0.5)
    return fig, ax


def witt_growth_figure(table, epsilon=None):
    """b_n / b_{n-1} against n, with the 2 - epsilon band of interest."""
    ns = [row.n for row in table.rows if row.ratio is not None]
    growth = [float(row.ratio + 1) for row in table.rows if row.ratio is not None]
    fig, ax = _new_axes()
    ax.plot(ns, growth, marker="o", markersize=3, linewidth=1.0, color="#1f5fa8")
    ax.axhline(2.0, color="#888888", linewidth=0.8, linestyle="--", label="2")
    if epsilon is not None:
        ax.axhline(
            2.0 - float(epsilon),
            color="#b2432f",
            linewidth=0.8,
            linestyle=":",
            label=f"2 - {float(epsilon):g}",
        )
    ax.set_xlabel("n")
    ax.set_ylabel("b(n) / b(n-1)")
    ax.set_title("Growth of cumulative lower central dimensions")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    return fig


def gradient_trend_figure(records):
    """Rank and torsion ratios against the subgroup index, log-log."""
    idx = [r.index for r in records]
    rank_ratio = [float(r.rank_ratio) for r in records]
    torsion_ratio = [r.torsion_ratio for r in records]
    fig, ax = _new_axes()
    ax.loglog(idx, rank_ratio, marker="o", markersize=4, linewidth=1.0,
              color="#1f5fa8", label="(d_upper - 1) / index")
    positive = [(i, t) for i, t in zip(idx, torsion_ratio) if t > 0]
    if positive:
        ax.loglog(
            [i for i, _ in positive],
            [t for _, t in positive],
            marker="s",
            markersize=4,
            linewidth=1.0,
            color="#b2432f",
            label="log|torsion| / index",
        )
    ax.set_xlabel("[G : U]")
    ax.set_ylabel("ratio")
    ax.set_title("Gradient estimates along the sequence")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    return fig


def bounds_scatter_figure(rows):
    """d(H) against the smallest product bound, one point per subgroup.

    Expects per-instance dicts with "dH" and "bounds" keys.
    """
    d_h = [row["dH"] for row in rows]
    best = [min(row["bounds"]) for row in rows]
    fig, ax = _new_axes(width=5.2, height=5.2)
    lim = max(best + d_h + [1])
    ax.plot([0, lim], [0, lim], color="#888888", linewidth=0.8, linestyle="--")
    ax.scatter(best, d_h, s=14, alpha=0.6, color="#1f5fa8", edgecolors="none")
    ax.set_xlabel("smallest bound")
    ax.set_ylabel("d(H)")
    ax.set_title("Exact ranks vs. certified bounds")
    ax.set_xscale("symlog")
    fig.tight_layout()
    return fig


def save_figure(fig, path):
    fig.savefig(path)
    plt.close(fig)
    return path
