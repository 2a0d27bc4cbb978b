"""Delimited reports and the figures rendered alongside them.

Every report starts with a comment header carrying the tool version and the
invocation parameters, and nothing time-dependent, so reruns are
byte-identical.  Figures are written through the Agg backend with the
software tag stripped for the same reason.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from . import __version__  # noqa: E402


def format_value(x):
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def write_csv(path, header, rows, config=""):
    lines = [f"# cylcomp {__version__} {config}".rstrip()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_value(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def save_figure(fig, path):
    fig.savefig(path, format="png", dpi=100, metadata={"Software": None})
    plt.close(fig)


def tail_figure(rows, m):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ws = [r[0] for r in rows]
    ax.semilogy(ws, [max(r[1], 1e-12) for r in rows], "o-", label="empirical")
    ax.semilogy(ws, [r[2] for r in rows], "s--", label=f"(2/(m+1))^w, m={m}")
    ax.fill_between(ws, [max(r[3], 1e-12) for r in rows],
                    [max(r[4], 1e-12) for r in rows], alpha=0.25)
    ax.set_xlabel("surviving width w")
    ax.set_ylabel("Pr[width >= w]")
    ax.legend()
    fig.tight_layout()
    return fig


def tradeoff_figure(rows):
    fig, ax = plt.subplots(figsize=(5.5, 3.4))
    labels = [r[0] for r in rows]
    xs = range(len(rows))
    ax.bar([x - 0.2 for x in xs], [r[1] for r in rows], width=0.4,
           label="robber survival (rounds)")
    ax.bar([x + 0.2 for x in xs], [r[2] for r in rows], width=0.4,
           label="cop win (rounds)")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=20, ha="right", fontsize=7)
    ax.set_ylabel("rounds")
    ax.legend()
    fig.tight_layout()
    return fig


def wl_figure(rows):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot([r[0] for r in rows], [r[1] for r in rows], "o-", label="classes G")
    ax.plot([r[0] for r in rows], [r[2] for r in rows], "s--", label="classes H")
    ax.set_xlabel("round")
    ax.set_ylabel("color classes")
    ax.legend()
    fig.tight_layout()
    return fig
