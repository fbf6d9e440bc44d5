"""Population dynamics and time-resolved spectra from `dynamics` and `spectrum --mode td` output."""
import argparse
import glob
import os

import matplotlib.pyplot as plt
import pandas as pd

parser = argparse.ArgumentParser()
parser.add_argument("out_dir")
args = parser.parse_args()

dyn = sorted(glob.glob(os.path.join(args.out_dir, "dynamics_omega_*uev.csv")))
td = sorted(glob.glob(os.path.join(args.out_dir, "spectrum_td_omega_*uev.csv")))

fig, axes = plt.subplots(1, 1 + len(td), figsize=(4 * (1 + len(td)), 3.5), squeeze=False)
for path in dyn:
    df = pd.read_csv(path)
    axes[0, 0].plot(df.t_ps, df.rho_pp, label=os.path.basename(path)[9:-4])
axes[0, 0].set_xlabel("t (ps)")
axes[0, 0].set_ylabel("rho_pp")
axes[0, 0].legend()

for ax, path in zip(axes[0, 1:], td):
    df = pd.read_csv(path)
    if "window" in df:
        df = df[df.window == "eg"]
    grid = df.pivot(index="t_ps", columns="domega_uev", values="R")
    ax.pcolormesh(grid.columns, grid.index, grid.values, shading="auto")
    ax.set_xlabel("domega (ueV)")
    ax.set_ylabel("t (ps)")
    ax.set_title(os.path.basename(path)[12:-4])

fig.tight_layout()
fig.savefig(os.path.join(args.out_dir, "dynamics.png"), dpi=150)
