"""Run the full decoding-probability grid (three panels) and write CSVs.

Panel a sweeps the bit error probability, panel b the mean burst
length, panel c the packet length; each curve runs N = 10..20 for
K = 10.  At the full 10000 trials the grid takes a while; use
--trials to shrink it for a quick look.

    python scripts/run_fig_grid.py --out-dir results --trials 2000
"""

import argparse
import os
import time
from pathlib import Path

from rlcgrand.simcli import SimConfig, emit_csv, run_experiment

PANELS = {
    "a": [dict(eps=e, burst_len=4.0, b=64) for e in (0.01, 0.03, 0.05)],
    "b": [dict(eps=0.03, burst_len=lam, b=64) for lam in (3.0, 5.0, 7.0)],
    "c": [dict(eps=0.03, burst_len=3.0, b=bb) for bb in (16, 32, 96)],
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--trials", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for panel, settings in PANELS.items():
        for setting in settings:
            cfg = SimConfig(
                k=10,
                n_list=tuple(range(10, 21)),
                trials=args.trials,
                master_seed=args.seed,
                workers=args.workers,
                **setting,
            )
            name = f"panel{panel}_eps{setting['eps']}_lam{setting['burst_len']}_b{setting['b']}.csv"
            t0 = time.perf_counter()
            records = run_experiment(cfg)
            emit_csv(records, out_dir / name)
            print(f"{name}: {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
