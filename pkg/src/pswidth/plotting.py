"""Matplotlib figures for per-node reports; always rendered to files."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_node_profile(rows, path, labels=("F_v", "F_vbar"), ylabel="|PS|", title=None):
    """Paired bars per node from rows ``(node, a, b)``."""
    nodes = [r[0] for r in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.25 * len(rows) + 2), 3.2))
    ax.bar([x - 0.2 for x in xs], [r[1] for r in rows], width=0.4, label=labels[0])
    ax.bar([x + 0.2 for x in xs], [r[2] for r in rows], width=0.4, label=labels[1])
    if len(rows) <= 40:
        ax.set_xticks(list(xs))
        ax.set_xticklabels([str(v) for v in nodes], fontsize=7)
    ax.set_xlabel("node")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    return _finish(fig, path)


def plot_width_vs_clauses(points, path, title=None):
    """Scatter of (m, ps-width) with the lines y = m and y = 1 + m + C(m, 2)."""
    fig, ax = plt.subplots(figsize=(4.5, 3.5))
    ms = [p[0] for p in points]
    ax.scatter(ms, [p[1] for p in points], s=10, alpha=0.6, label="measured")
    if ms:
        grid = range(0, max(ms) + 1)
        ax.plot(grid, list(grid), "k--", lw=1, label="m")
        ax.plot(grid, [1 + m + m * (m - 1) // 2 for m in grid], "r:", lw=1, label="1+m+C(m,2)")
        ax.set_ylim(0, max(max(p[1] for p in points), max(ms)) * 1.3 + 1)
    ax.set_xlabel("clauses m")
    ax.set_ylabel("ps-width")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False, fontsize=8)
    return _finish(fig, path)
