"""The empirical-MSE protocol for real datasets.

With real data the true coefficients are unknown, so each subsample fit is
scored by its squared distance to full-sample surrogates: the ordinary
least-squares fit and a robust Huber fit. This demo writes a synthetic
terrain-style CSV (five correlated predictors, a response that saturates
and folds back near the edges of the populated range), ingests it through
the same loader the CLI uses, and runs the protocol at two label budgets.

For a real dataset, point the CLI at your file instead:

  lowcon emse --config cfg.json --data soil.csv --response Sand \
      --predictors CTI,ELEV,RELI,TMAP,TMFI

Run:  python demos/05_real_data_emse.py
"""

import tempfile
from pathlib import Path

import numpy as np

from lowcon import ExperimentConfig, ingest_csv, run_emse

rng = np.random.default_rng(303)
n = 1157
f = rng.standard_normal((n, 3))
cti = 6.0 + 1.4 * f[:, 0] + 0.5 * f[:, 1] + 0.6 * rng.standard_normal(n)
elev = 1200.0 + 380.0 * f[:, 1] + 90.0 * f[:, 0] + 60.0 * rng.standard_normal(n)
reli = 150.0 + 50.0 * f[:, 2] + 20.0 * f[:, 1] + 18.0 * rng.standard_normal(n)
tmap = 900.0 + 220.0 * f[:, 0] - 120.0 * f[:, 2] + 45.0 * rng.standard_normal(n)
tmfi = 80.0 + 22.0 * f[:, 0] + 10.0 * f[:, 2] + 9.0 * rng.standard_normal(n)
X = np.column_stack([cti, elev, reli, tmap, tmfi])

spread = np.quantile(X, 0.84, axis=0) - np.quantile(X, 0.16, axis=0)
z = 2.0 * (X - np.median(X, axis=0)) / spread
knee = 2.3
bent = lambda v: np.sign(v) * np.where(np.abs(v) <= knee, np.abs(v),
                                       knee - (np.abs(v) - knee))
student = rng.standard_normal(n) / np.sqrt(rng.chisquare(6, n) / 6.0)
y = (40.0 + 9.0 * bent(z[:, 0]) - 7.0 * bent(z[:, 1]) + 3.0 * z[:, 2]
     - 2.0 * bent(z[:, 3]) + 4.0 * bent(z[:, 4]) + 2.5 * student)

csv_path = Path(tempfile.mkdtemp()) / "terrain.csv"
with csv_path.open("w") as fh:
    fh.write("Sand,CTI,ELEV,RELI,TMAP,TMFI\n")
    for yi, row in zip(y, X):
        fh.write(",".join(str(float(v)) for v in (yi, *row)) + "\n")

data = ingest_csv(csv_path, "Sand", ["CTI", "ELEV", "RELI", "TMAP", "TMFI"])
print(f"Ingested {data.X_raw.shape[0]} rows x {data.X_raw.shape[1]} predictors "
      f"from {csv_path.name} ({data.dropped_rows} dropped)")
print()

methods = ("UNIF", "BLEV", "SLEV", "LEVUNW", "IBOSS", "LOWCON")
for r in (25, 50):
    cfg = ExperimentConfig(mode="realdata", n=n + 1, p=5, r_list=(r,),
                           replicates=50, seed=1, methods=methods)
    res = run_emse(data, cfg)
    ols = {m: res.row(m, r, "EMSE_OLS").mse for m in methods}
    hub = {m: res.row(m, r, "EMSE_M").mse for m in methods}
    order = sorted(methods, key=lambda m: ols[m])
    print(f"r = {r} (ranked by distance to the full OLS fit):")
    for m in order:
        print(f"  {m:7s} EMSE_OLS {ols[m]:8.2f}   EMSE_M {hub[m]:8.2f}")
    print()
