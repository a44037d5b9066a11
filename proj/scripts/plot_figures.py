#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Plots from the dbfrange CSV outputs written by scripts/reproduce.sh."""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_curves(out: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    required = None
    for d in sorted(out.glob("curves_n*"), key=lambda p: int(p.name[8:])):
        df = pd.read_csv(d / "curves.csv")
        ax.plot(df.snr_db, df.achievable_db, label=f"achievable, N={d.name[8:]}")
        required = df
    if required is not None:
        ax.plot(required.snr_db, required.required_db, "k--", label="required")
    ax.set_xlabel("pre-BF SNR [dB]")
    ax.set_ylabel("total BF gain N·G [dB]")
    ax.set_ylim(-5, 30)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "gain_curves.png", dpi=150)


def plot_gaindist(out: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for d in sorted(out.glob("gaindist_*")):
        df = pd.read_csv(d / "gaindist.csv")
        var = d.name.split("_", 1)[1]
        (line,) = ax.plot(df.g, df.cdf_analytic, label=f"gamma model, var={var}")
        ax.plot(df.g, df.cdf_empirical, ":", color=line.get_color(), label=f"Monte-Carlo, var={var}")
    ax.set_xlabel("combining gain G")
    ax.set_ylabel("P(G ≤ g)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "gain_cdf.png", dpi=150)


def plot_sweep(out: Path) -> None:
    df = pd.read_csv(out / "sweep.csv")
    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
    for l, grp in df[df.dest_power_delta_db == 15].groupby("overhead_budget"):
        axes[0].plot(grp.n_radios, grp.max_distance_m / 1e3, "o-", label=f"L={l}")
    for dp, grp in df[df.overhead_budget == 1000].groupby("dest_power_delta_db"):
        axes[1].plot(grp.n_radios, grp.max_distance_m / 1e3, "o-", label=f"ΔP={dp:g} dB")
    ideal = df[(df.overhead_budget == 1000) & (df.dest_power_delta_db == 15)]
    for ax in axes:
        ax.plot(ideal.n_radios, ideal.ideal_distance_m / 1e3, "k--", label="ideal N² gain")
        ax.set_xscale("log", base=2)
        ax.set_xlabel("number of radios N")
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=8)
    axes[0].set_ylabel("maximum range [km]")
    fig.tight_layout()
    fig.savefig(out / "range_sweep.png", dpi=150)


def main() -> None:
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
    plot_curves(out)
    plot_gaindist(out)
    plot_sweep(out)
    print(f"wrote plots to {out}")


if __name__ == "__main__":
    main()
