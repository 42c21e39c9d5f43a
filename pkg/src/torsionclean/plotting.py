import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 7,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def survey_figure(rows, path):
    """Grouped bars of plain index, strong index and exp(U(R)) per surveyed ring."""
    rows = [r for r in rows if not r.get("error")]
    labels = [r["ring"] for r in rows]
    series = [
        ("plain index", [r["plain_index"] for r in rows]),
        ("strong index", [r["strong_index"] or 0 for r in rows]),
        ("exp(U(R))", [r["exponent_of_units"] for r in rows]),
    ]
    width = 0.27
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(rows) + 1.5), 3.2))
        for i, (name, vals) in enumerate(series):
            xs = [j + (i - 1) * width for j in range(len(rows))]
            ax.bar(xs, vals, width, label=name)
        ax.set_yscale("log", base=2)
        top = max([1] + [v for _, vals in series for v in vals])
        ax.set_ylim(0.8, 2 ** (math.log2(top) + 1))
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels(labels, rotation=35, ha="right")
        ax.set_ylabel("n")
        ax.legend(frameon=False, ncol=3, loc="upper left")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    return path
