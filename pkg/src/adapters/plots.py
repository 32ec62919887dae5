"""Log-log line plots rendered to SVG with matplotlib."""

import io
from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")

from matplotlib import rcParams  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

# fixed ids keep the SVG text identical across runs
rcParams["svg.hashsalt"] = "curve-extremes"


def render_loglog_svg(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Lines of (label, xs, ys) on log axes; nonpositive points are skipped."""
    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.add_subplot()
    plotted = False
    for label, xs, ys in series:
        pts = [(x, y) for x, y in zip(xs, ys, strict=True) if x > 0 and y > 0]
        if not pts:
            continue
        ax.plot([x for x, _ in pts], [y for _, y in pts], marker="o", label=label)
        plotted = True

    if plotted:
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.legend(fontsize="small")
    ax.set_title(title)
    ax.set_xlabel(x_label)
    ax.set_ylabel(y_label)
    ax.grid(True, which="both", alpha=0.3)

    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()
