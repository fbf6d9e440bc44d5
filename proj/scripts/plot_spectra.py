"""Time-integrated spectra in both windows from `spectrum --mode integrated` output."""
import argparse
import glob
import os

import matplotlib.pyplot as plt
import pandas as pd

parser = argparse.ArgumentParser()
parser.add_argument("out_dir")
args = parser.parse_args()

paths = sorted(glob.glob(os.path.join(args.out_dir, "spectrum_integrated_omega_*uev.csv")))
fig, axes = plt.subplots(len(paths), 2, figsize=(9, 3 * len(paths)), squeeze=False)
for row, path in zip(axes, paths):
    df = pd.read_csv(path)
    for ax, window in zip(row, ["eg", "pe"]):
        part = df[df.window == window] if "window" in df else df
        ax.plot(part.domega_uev, part.S)
        ax.set_xlabel("domega (ueV)")
        ax.set_title(f"{os.path.basename(path)[20:-4]} {window}")
fig.tight_layout()
fig.savefig(os.path.join(args.out_dir, "spectra.png"), dpi=150)
