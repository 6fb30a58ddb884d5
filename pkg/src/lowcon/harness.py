"""Config-driven experiment harness.

Runs the misspecified-model simulation grid, the one-predictor toy study,
the real-data empirical-MSE protocol, and a diagnostics pass that surfaces
the theory bound checkers. Responses live behind :class:`HiddenResponses`,
which counts every revealed entry: estimators see exactly the r selected
responses per replicate, mirroring the measurement-constrained setting.

Reproducibility contract: every random stream is derived from the master
seed plus a structural key (cell, replicate, attempt, purpose), so results
are byte-identical across runs and invariant to replicate execution order.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import datagen
from .datagen import DISTRIBUTIONS, MISSPECIFICATIONS, beta_layout
from .estimators import fit_huber_m, fit_sls, worst_case_mse
from .exceptions import (
    ColumnMissing,
    ConfigError,
    EmptyAfterFiltering,
    RankDeficient,
)
from .linalg import least_squares, singular_values
from .samplers import blev, iboss, levunw, lowcon, slev, unif

METHODS = ("UNIF", "BLEV", "SLEV", "LEVUNW", "IBOSS", "LOWCON")
MODES = ("simulate", "realdata", "toy", "diagnose")
TOY_METHODS = ("UNIF", "BLEV", "LOWCON")

# default noise variance for the toy study; the simulation grid default is 1.0
TOY_SIGMA2 = 0.36

_MAX_ATTEMPTS = 6  # first try plus five retries with derived seeds

# purpose tags for seed derivation
_P_DATA = 0
_P_SAMPLER = 1

_DIST_CODE = {d: i + 1 for i, d in enumerate(DISTRIBUTIONS)}
_DIST_CODE["TOY"] = 90
_DIST_CODE["REAL"] = 91
_MIS_CODE = {m: i + 1 for i, m in enumerate(MISSPECIFICATIONS)}
_MIS_CODE["-"] = 0
_METHOD_CODE = {m: i + 1 for i, m in enumerate(METHODS)}


@dataclass(frozen=True)
class ExperimentConfig:
    """One cell family of the study: distribution, shape, sizes, and knobs."""

    mode: str = "simulate"
    dist: str = "D1"
    misspec: str = "H1"
    n: int = 10_000
    p: int = 10
    r_list: tuple[int, ...] | None = None
    theta: float = 1.0
    sigma2: float = 1.0
    replicates: int = 100
    seed: int = 0
    methods: tuple[str, ...] = METHODS
    slev_alpha: float = 0.9
    output_path: str | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.dist not in _DIST_CODE:
            raise ConfigError(f"dist must be one of {DISTRIBUTIONS}, got {self.dist!r}")
        if self.misspec not in _MIS_CODE:
            raise ConfigError(
                f"misspec must be one of {MISSPECIFICATIONS}, got {self.misspec!r}"
            )
        if self.mode in ("simulate", "diagnose") and (
            self.dist not in DISTRIBUTIONS or self.misspec not in MISSPECIFICATIONS
        ):
            raise ConfigError(
                f"{self.mode} mode needs dist in {DISTRIBUTIONS} and "
                f"misspec in {MISSPECIFICATIONS}"
            )
        if self.n < 2 or self.p < 1:
            raise ConfigError("need n >= 2 and p >= 1")
        if self.r_list is None:
            object.__setattr__(
                self, "r_list", tuple(2 * self.p * k for k in range(1, 6))
            )
        rl = tuple(int(r) for r in self.r_list)
        object.__setattr__(self, "r_list", rl)
        if not rl:
            raise ConfigError("r_list must be nonempty")
        for r in rl:
            if r <= self.p:
                raise ConfigError(f"every r must exceed p, got r={r}, p={self.p}")
            # in realdata mode the dataset, not the config, fixes n
            if self.mode != "realdata" and r >= self.n:
                raise ConfigError(f"every r must satisfy p < r < n, got r={r}")
        if not 0.0 <= self.theta < 50.0:
            raise ConfigError("theta must lie in [0, 50)")
        if self.sigma2 < 0:
            raise ConfigError("sigma2 must be nonnegative")
        if self.replicates < 1:
            raise ConfigError("replicates must be at least 1")
        methods = tuple(str(m).upper() for m in self.methods)
        object.__setattr__(self, "methods", methods)
        unknown = [m for m in methods if m not in METHODS]
        if unknown:
            raise ConfigError(f"unknown methods {unknown}; choose from {METHODS}")
        if not methods:
            raise ConfigError("methods must be nonempty")
        if not 0.0 < self.slev_alpha <= 1.0:
            raise ConfigError("slev_alpha must lie in (0, 1]")
        if "IBOSS" in methods:
            low = [r for r in rl if r < 2 * self.p]
            if low:
                raise ConfigError(
                    f"IBOSS needs r >= 2p; offending r values: {low}"
                )


@dataclass(frozen=True)
class ResultRow:
    method: str
    dist: str
    misspec: str
    n: int
    p: int
    r: int
    theta: float
    replicate_count: int
    mse: float
    log_mse: float
    median_kappa: float
    # wall-clock, so excluded from equality and from the CSV output
    mean_runtime_ms: float = field(compare=False, default=np.nan)


@dataclass(frozen=True)
class Dataset:
    name: str
    X_raw: np.ndarray
    y: np.ndarray | None
    column_names: tuple[str, ...]
    has_intercept: bool = True
    dropped_rows: int = 0


class HiddenResponses:
    """Response vector revealed only at explicitly requested indices.

    ``reads`` counts every revealed entry (duplicates included), so a
    measurement-constrained run can assert it spent exactly r observations
    per replicate per method.
    """

    def __init__(self, values):
        self._values = np.asarray(values, dtype=np.float64).reshape(-1)
        self.reads = 0

    def __len__(self) -> int:
        return self._values.shape[0]

    def reveal(self, indices) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.intp).reshape(-1)
        if idx.size and (idx.min() < 0 or idx.max() >= len(self)):
            raise IndexError("reveal index out of range")
        self.reads += int(idx.size)
        return self._values[idx].copy()


@dataclass
class SimulationResult:
    rows: list[ResultRow]
    response_reads: dict = field(default_factory=dict)
    failed_cells: list = field(default_factory=list)

    def row(self, method: str, r: int, misspec: str | None = None) -> ResultRow:
        for row in self.rows:
            if row.method == method and row.r == r and (
                misspec is None or row.misspec == misspec
            ):
                return row
        raise KeyError((method, r, misspec))


def derived_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, structural key)."""
    spawn_key = tuple(int(k) for k in key)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=spawn_key))


def _draw_selection(method, X, r, rng, config: ExperimentConfig):
    if method == "UNIF":
        return unif(X, r, rng)
    if method == "BLEV":
        return blev(X, r, rng)
    if method == "SLEV":
        return slev(X, r, rng, alpha=config.slev_alpha)
    if method == "LEVUNW":
        return levunw(X, r, rng)
    if method == "IBOSS":
        return iboss(X, r)
    if method == "LOWCON":
        return lowcon(X, r, theta=config.theta, rng=rng)
    raise ConfigError(f"unknown method {method!r}")


def _simulate_data(config: ExperimentConfig, r: int, replicate: int, attempt: int):
    """Fresh predictors, calibrated shape term, and hidden responses."""
    dist_c = _DIST_CODE[config.dist]
    mis_c = _MIS_CODE[config.misspec]
    rng = derived_rng(config.seed, _P_DATA, dist_c, mis_c, r, replicate, attempt)
    if config.mode == "toy":
        x, y = datagen.toy_example(config.n, rng, noise_sd=float(np.sqrt(config.sigma2)))
        return x[:, None], np.array([1.0]), y
    X = datagen.gen_predictors(config.dist, config.n, config.p, rng)
    term = datagen.make_misspec(config.misspec, X)
    beta0 = beta_layout(config.p)
    y = datagen.gen_response(X, beta0, term, config.sigma2, rng)
    return X, beta0, y


def run_simulation(config: ExperimentConfig, _replicate_order=None) -> SimulationResult:
    """Run every (method, r) cell of the configured grid.

    Per replicate, predictors are regenerated (with fresh shape calibration),
    each method selects r rows, only their responses are revealed, and the
    squared coefficient error against the true coefficients accumulates.
    A replicate whose fit is rank deficient is redrawn with a derived retry
    seed, at most five times; a cell that exhausts retries is marked failed
    (NaN mse) and listed in ``failed_cells``.
    """
    if config.mode not in ("simulate", "toy"):
        raise ConfigError(f"run_simulation expects simulate/toy mode, got {config.mode}")
    dist_c = _DIST_CODE[config.dist]
    mis_c = _MIS_CODE[config.misspec]
    order = list(_replicate_order) if _replicate_order is not None else list(
        range(config.replicates)
    )
    if sorted(order) != list(range(config.replicates)):
        raise ValueError("_replicate_order must be a permutation of the replicates")

    rows: list[ResultRow] = []
    reads: dict = {}
    failed: list = []
    for r in config.r_list:
        sq = {m: np.full(config.replicates, np.nan) for m in config.methods}
        kap = {m: np.full(config.replicates, np.nan) for m in config.methods}
        ms = {m: np.full(config.replicates, np.nan) for m in config.methods}
        nread = {m: np.zeros(config.replicates, dtype=int) for m in config.methods}
        ok = {m: np.zeros(config.replicates, dtype=bool) for m in config.methods}
        for i in order:
            base = _simulate_data(config, r, i, attempt=0)
            for m in config.methods:
                X, beta0, y = base
                for attempt in range(_MAX_ATTEMPTS):
                    if attempt > 0:
                        X, beta0, y = _simulate_data(config, r, i, attempt)
                    hidden = HiddenResponses(y)
                    rng = derived_rng(
                        config.seed, _P_SAMPLER, dist_c, mis_c, r, i, attempt,
                        _METHOD_CODE[m],
                    )
                    t0 = time.perf_counter()
                    try:
                        sel = _draw_selection(m, X, r, rng, config)
                        y_sub = hidden.reveal(sel.indices)
                        fit = fit_sls(X[sel.indices], y_sub, weights=sel.weights,
                                      method=m)
                    except RankDeficient:
                        continue
                    ms[m][i] = (time.perf_counter() - t0) * 1e3
                    sq[m][i] = float(np.sum((fit.beta - beta0) ** 2))
                    kap[m][i] = sel.diagnostics.kappa_sub
                    nread[m][i] = hidden.reads
                    ok[m][i] = True
                    break
        for m in config.methods:
            n_ok = int(ok[m].sum())
            cell_failed = n_ok < config.replicates
            if cell_failed:
                failed.append((config.dist, config.misspec, m, r))
            mse = float(np.mean(sq[m][ok[m]])) if n_ok and not cell_failed else np.nan
            with np.errstate(divide="ignore"):
                log_mse = float(np.log(mse)) if np.isfinite(mse) or mse == 0.0 else np.nan
            rows.append(ResultRow(
                method=m,
                dist=config.dist,
                misspec=config.misspec,
                n=config.n,
                p=config.p if config.mode != "toy" else 1,
                r=r,
                theta=config.theta,
                replicate_count=n_ok,
                mse=mse,
                log_mse=log_mse,
                median_kappa=float(np.median(kap[m][ok[m]])) if n_ok else np.nan,
                mean_runtime_ms=float(np.mean(ms[m][ok[m]])) if n_ok else np.nan,
            ))
            reads[(config.dist, config.misspec, m, r)] = nread[m].tolist()
    rows.sort(key=lambda row: (row.method, row.dist, row.misspec, row.r))
    return SimulationResult(rows=rows, response_reads=reads, failed_cells=failed)


def toy_config(
    r_list=(10, 30, 50),
    replicates: int = 100,
    seed: int = 0,
    n: int = 2000,
    sigma2: float = TOY_SIGMA2,
    theta: float = 1.0,
    methods=TOY_METHODS,
) -> ExperimentConfig:
    """Configuration for the one-predictor toy study."""
    return ExperimentConfig(
        mode="toy",
        dist="TOY",
        misspec="-",
        n=n,
        p=1,
        r_list=tuple(r_list),
        theta=theta,
        sigma2=sigma2,
        replicates=replicates,
        seed=seed,
        methods=tuple(methods),
    )


def run_emse(dataset: Dataset, config: ExperimentConfig) -> SimulationResult:
    """Empirical-MSE protocol against full-sample OLS and Huber-M surrogates.

    The surrogates are fit once on the full data; per replicate and method,
    a subsample is drawn from the predictors alone, its responses revealed,
    and the squared distance of the subsample fit to each surrogate
    accumulates. The intercept column is appended after subsampling, so the
    selection itself sees only the informative predictors.

    Rows are tagged with ``misspec`` in {"EMSE_OLS", "EMSE_M"} and ``dist``
    set to the dataset name.
    """
    if dataset.y is None:
        raise ConfigError("EMSE needs a dataset with a response column")
    X = np.asarray(dataset.X_raw, dtype=np.float64)
    y_full = np.asarray(dataset.y, dtype=np.float64)
    n, p = X.shape
    if max(config.r_list) > n:
        raise ConfigError("every r must be at most the dataset size")

    def with_intercept(M):
        if not dataset.has_intercept:
            return M
        return np.column_stack([np.ones(M.shape[0]), M])

    surrogates = {
        "EMSE_OLS": least_squares(with_intercept(X), y_full),
        "EMSE_M": fit_huber_m(with_intercept(X), y_full).beta,
    }

    rows: list[ResultRow] = []
    reads: dict = {}
    failed: list = []
    for r in config.r_list:
        for m in config.methods:
            sq = {k: np.full(config.replicates, np.nan) for k in surrogates}
            kap = np.full(config.replicates, np.nan)
            ms = np.full(config.replicates, np.nan)
            nread = np.zeros(config.replicates, dtype=int)
            ok = np.zeros(config.replicates, dtype=bool)
            for i in range(config.replicates):
                for attempt in range(_MAX_ATTEMPTS):
                    hidden = HiddenResponses(y_full)
                    rng = derived_rng(
                        config.seed, _P_SAMPLER, _DIST_CODE["REAL"], 0, r, i,
                        attempt, _METHOD_CODE[m],
                    )
                    t0 = time.perf_counter()
                    try:
                        sel = _draw_selection(m, X, r, rng, config)
                        y_sub = hidden.reveal(sel.indices)
                        fit = fit_sls(
                            with_intercept(X[sel.indices]), y_sub,
                            weights=sel.weights, method=m,
                        )
                    except RankDeficient:
                        continue
                    ms[i] = (time.perf_counter() - t0) * 1e3
                    for key, target in surrogates.items():
                        sq[key][i] = float(np.sum((fit.beta - target) ** 2))
                    kap[i] = sel.diagnostics.kappa_sub
                    nread[i] = hidden.reads
                    ok[i] = True
                    break
            n_ok = int(ok.sum())
            cell_failed = n_ok < config.replicates
            if cell_failed:
                failed.append((dataset.name, m, r))
            for key in surrogates:
                mse = float(np.mean(sq[key][ok])) if n_ok and not cell_failed else np.nan
                with np.errstate(divide="ignore"):
                    log_mse = float(np.log(mse)) if np.isfinite(mse) or mse == 0.0 else np.nan
                rows.append(ResultRow(
                    method=m,
                    dist=dataset.name,
                    misspec=key,
                    n=n,
                    p=p,
                    r=r,
                    theta=config.theta,
                    replicate_count=n_ok,
                    mse=mse,
                    log_mse=log_mse,
                    median_kappa=float(np.median(kap[ok])) if n_ok else np.nan,
                    mean_runtime_ms=float(np.mean(ms[ok])) if n_ok else np.nan,
                ))
            reads[(dataset.name, m, r)] = nread.tolist()
    rows.sort(key=lambda row: (row.method, row.dist, row.misspec, row.r))
    return SimulationResult(rows=rows, response_reads=reads, failed_cells=failed)


@dataclass(frozen=True)
class DiagnoseEntry:
    method: str
    r: int
    kappa_sub: float
    worst_case_bound: float
    s1_perturbation: float | None = None
    sp_design: float | None = None
    assumption_holds: bool | None = None
    kappa_bound_slack: float | None = None
    trace_bound_slack: float | None = None


def diagnose(config: ExperimentConfig, alpha: float, sigma2: float) -> list[DiagnoseEntry]:
    """One seeded pass surfacing the theory checkers for each method.

    Reports the selection's condition number and worst-case MSE bound at the
    supplied (sigma2, alpha). For the design-anchored method it additionally
    reports the extreme singular values of the design and of the
    design-to-sample gap, whether the perturbation assumption holds, and the
    slack of the condition-number and trace-inverse bounds (bound minus the
    directly computed value, in the scaled space where the design lives).
    """
    r = config.r_list[0]
    X, _, _ = _simulate_data(config, r, replicate=0, attempt=0)
    entries: list[DiagnoseEntry] = []
    for m in config.methods:
        rng = derived_rng(
            config.seed, _P_SAMPLER, _DIST_CODE[config.dist],
            _MIS_CODE[config.misspec], r, 0, 0, _METHOD_CODE[m],
        )
        if m == "LOWCON":
            sel = lowcon(X, r, theta=config.theta, rng=rng, keep_design=True)
        else:
            sel = _draw_selection(m, X, r, rng, config)
        bound = worst_case_mse(X[sel.indices], sigma2, alpha).bound
        if m != "LOWCON":
            entries.append(DiagnoseEntry(
                method=m, r=r, kappa_sub=sel.diagnostics.kappa_sub,
                worst_case_bound=bound,
            ))
            continue
        L = sel.design.points
        D = sel.perturbation
        sL = singular_values(L)
        s1D = float(singular_values(D)[0])
        claimed = L + D
        s_claimed = singular_values(claimed)
        kappa_actual = float((s_claimed[0] / s_claimed[-1]) ** 2)
        trace_actual = float(np.sum(1.0 / s_claimed**2))
        holds = float(sL[-1]) > s1D
        kappa_slack = trace_slack = None
        if holds:
            kb = ((sL[0] + s1D) / (sL[-1] - s1D)) ** 2
            tb = L.shape[1] / (sL[-1] - s1D) ** 2
            kappa_slack = float(kb - kappa_actual)
            trace_slack = float(tb - trace_actual)
        entries.append(DiagnoseEntry(
            method=m, r=r, kappa_sub=sel.diagnostics.kappa_sub,
            worst_case_bound=bound, s1_perturbation=s1D,
            sp_design=float(sL[-1]), assumption_holds=holds,
            kappa_bound_slack=kappa_slack, trace_bound_slack=trace_slack,
        ))
    return entries


# ---------------------------------------------------------------------------
# file formats


def ingest_csv(path, response_column: str, predictor_columns) -> Dataset:
    """Read a numeric dataset from CSV, dropping incomplete rows.

    Rows where any selected column is missing or fails to parse as a number
    are dropped; the count of dropped rows is kept on the Dataset. Column
    order follows ``predictor_columns``.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    predictor_columns = list(predictor_columns)
    wanted = [response_column] + predictor_columns
    X_rows: list[list[float]] = []
    y_vals: list[float] = []
    dropped = 0
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in wanted if c not in header]
        if missing:
            raise ColumnMissing(f"columns {missing} not found in {path.name}")
        for record in reader:
            try:
                vals = [float(record[c]) for c in wanted]
            except (TypeError, ValueError):
                dropped += 1
                continue
            if not all(np.isfinite(v) for v in vals):
                dropped += 1
                continue
            y_vals.append(vals[0])
            X_rows.append(vals[1:])
    if not X_rows:
        raise EmptyAfterFiltering(f"no complete rows in {path.name}")
    return Dataset(
        name=path.stem,
        X_raw=np.asarray(X_rows, dtype=np.float64),
        y=np.asarray(y_vals, dtype=np.float64),
        column_names=tuple(predictor_columns),
        has_intercept=True,
        dropped_rows=dropped,
    )


_CSV_FIELDS = [f.name for f in dataclasses.fields(ResultRow)
               if f.name != "mean_runtime_ms"]


def _format_cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_result_csv(rows, path) -> None:
    """Write rows as RFC-4180 CSV with a fixed header.

    Wall-clock runtime is kept off the file so that identical configs and
    seeds produce byte-identical output.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(_CSV_FIELDS)
        for row in rows:
            writer.writerow(
                [_format_cell(getattr(row, name)) for name in _CSV_FIELDS]
            )


def load_config(path) -> ExperimentConfig:
    """Load an ExperimentConfig from a flat JSON object; unknown keys fail."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path.name}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {unknown}")
    if "r_list" in raw and raw["r_list"] is not None:
        raw["r_list"] = tuple(raw["r_list"])
    if "methods" in raw:
        raw["methods"] = tuple(raw["methods"])
    return ExperimentConfig(**raw)
