"""Figure rendering for experiment reports.

Kept out of the core modules on purpose: importing this module (or calling
render_report) is the only thing that pulls in matplotlib, so library users
who never plot never pay for it.  Figures are rendered headless straight to
a file.
"""

from __future__ import annotations

from .experiments import ExperimentReport


def render_report(report: ExperimentReport, path: str) -> None:
    """Draw the report and write it to ``path`` (format from the suffix,
    PNG for the usual .png)."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, 5))
    columns = list(report.columns)
    rows = report.rows
    title = f"{report.kind} ({report.family})"

    if report.kind == "segment-histogram":
        segments = [row[columns.index("segment")] for row in rows]
        ratios = [float(row[columns.index("ratio")]) for row in rows]
        ax.bar(segments, ratios, width=1.0, align="edge")
        ax.set_xlabel("segment (low ranks start with abstractions)")
        ax.set_ylabel("typable ratio")
    elif report.kind == "typable-ratio":
        sizes = [row[columns.index("size")] for row in rows]
        ratios = [float(row[columns.index("ratio")]) for row in rows]
        if "ci_low" in columns:
            lows = [float(r[columns.index("ci_low")]) for r in rows]
            highs = [float(r[columns.index("ci_high")]) for r in rows]
            err = ([r - lo for r, lo in zip(ratios, lows)],
                   [hi - r for r, hi in zip(ratios, highs)])
            ax.errorbar(sizes, ratios, yerr=err, fmt="o", capsize=3)
        else:
            ax.plot(sizes, ratios, "o-")
        ax.set_xlabel("size")
        ax.set_ylabel("typable ratio")
    else:
        sizes = [row[columns.index("size")] for row in rows]
        value_column = columns[2]  # mean_depth or mean_head_lambdas
        means = [float(row[columns.index(value_column)]) for row in rows]
        ax.plot(sizes, means, "o", label=value_column)
        for name in columns:
            if name.startswith("curve_"):
                ys = [float(row[columns.index(name)]) for row in rows]
                ax.plot(sizes, ys, "-", label=name)
        ax.set_xlabel("size")
        ax.set_ylabel(value_column)
        ax.legend()

    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
