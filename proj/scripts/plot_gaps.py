#!/usr/bin/env python3
"""Plot a gap diagram from a qplab scan.csv.

Usage: plot_gaps.py scan.csv [out.png]

Certified points are drawn as a horizontal bar segment, refuted points as
ticks at a second level, and the direction-gap minimum as a curve. Needs
matplotlib.
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else "scan.csv"
    out = sys.argv[2] if len(sys.argv) > 2 else "gaps.png"

    params, status, dgap = [], [], []
    with open(path) as fh:
        for row in csv.reader(r for r in fh if not r.startswith("#")):
            if row[0] == "param":
                continue
            params.append(float(row[0]))
            status.append(row[1])
            dgap.append(float(row[3]))

    fig, (ax0, ax1) = plt.subplots(2, 1, sharex=True, figsize=(10, 5))
    cert = [p for p, s in zip(params, status) if s == "certified"]
    refu = [p for p, s in zip(params, status) if s == "refuted-at-budget"]
    inc = [p for p, s in zip(params, status) if s not in ("certified", "refuted-at-budget")]
    ax0.plot(cert, [1] * len(cert), "|", color="tab:green", label="certified")
    ax0.plot(refu, [0] * len(refu), "|", color="tab:red", label="refuted")
    ax0.plot(inc, [0.5] * len(inc), "|", color="tab:gray", label="inconclusive")
    ax0.set_yticks([0, 0.5, 1])
    ax0.set_yticklabels(["refuted", "inconcl.", "certified"])
    ax0.legend(loc="center right", fontsize=8)

    ax1.semilogy(params, [max(g, 1e-12) for g in dgap], lw=0.7)
    ax1.set_ylabel("min dist(s_n, u_n)")
    ax1.set_xlabel("parameter")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
