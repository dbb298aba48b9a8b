"""Per-state analysis records, sampling campaigns and bound fuzzing.

Everything here is columnar: a batch of states is analysed in one pass and
kept as a dict of equal-length numpy arrays keyed by CSV column name.
"""
import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .criteria import (
    BOUND_NAMES,
    DELTA_MU_MAX,
    EQ_EOF_LOOSE,
    EQ_EOF_MEMMS,
    EQ_LPTPS_EXCLUSION,
    EQ_TANGLE_LOOSE,
    EQ_TANGLE_MEMMS,
    EQ_TRIANGLE_LEFT,
    EQ_TRIANGLE_RIGHT,
    LPTPS_OPTIMAL_X,
    CriteriaVerdict,
    criteria_verdict,
    entropic_criterion_lin,
    entropic_criterion_vn,
    eof_marginal_bound,
    lptps_entropy_limit,
    majorization_from_spectra,
    memms_tangle_bound,
    ppt_from_spectrum,
)
from .linalg import TOL, hermitian_eigenvalues, kron, partial_trace, partial_transpose_first
from .measures import (
    LINEAR,
    VON_NEUMANN,
    EntanglementReport,
    EntropyProfile,
    _profile,
    _wootters,
)
from .states import (
    RNG_ALGORITHM,
    InvalidStateError,
    ansatz_states,
    make_rng,
    memms_for_marginals,
    random_local_unitary,
    random_state,
    sample_lptps_params,
    density_eigh,
)

FAMILIES = ("random", "memms", "lptps", "product", "pure")
FIGURES = ("fig1a", "fig1b", "fig2", "fig3a", "fig3b", "none")
BUNDLES = ("separable", "0-0.25", "0.25-0.5", "0.5-0.75", "0.75-1")

FULL_COLUMNS = (
    "id", "seed", "family", "x1", "x2", "c",
    "sV1", "sV2", "sV", "sL1", "sL2", "sL", "mu1", "mu2", "mu",
    "concurrence", "tangle", "eof", "delta_mu",
    "ppt", "entropic_vn", "entropic_lin", "majorization", "bundle",
)
FLAG_COLUMNS = ("ppt", "entropic_vn", "entropic_lin", "majorization")
INT_COLUMNS = ("id", "seed") + FLAG_COLUMNS
TEXT_COLUMNS = ("family", "series", "bundle")

FIGURE_COLUMNS = {
    "fig1a": ("sV1", "sV2", "sV", "eof", "bundle"),
    "fig1b": ("sL1", "sL2", "sL", "tangle", "bundle"),
    "fig2": ("sL1", "sL2", "tangle", "bundle"),
    "fig3a": ("sL1", "sL2", "sL", "tangle", "bundle"),
    "fig3b": ("delta_mu", "tangle", "bundle"),
}
# measure used for the colour bundles of each figure
BUNDLE_MEASURE = {"fig1a": "eof", "fig1b": "tangle", "fig2": "tangle", "fig3a": "tangle", "fig3b": "tangle", "none": "eof"}

CHUNK = 5000
SERIES_SAMPLE = "sample"
SERIES_MEMMS = "memms_surface"
SERIES_LINE = "extremal_line"


def bundle_index(measure):
    """0 for separable, then quarter bins (0, 1/4], (1/4, 1/2], (1/2, 3/4], (3/4, 1]."""
    m = np.asarray(measure, dtype=float)
    return np.where(m <= 0.0, 0, np.clip(np.ceil(m * 4.0), 1, 4)).astype(int)


def bundle_labels(measure):
    return np.asarray(BUNDLES, dtype=object)[bundle_index(measure)]


def analyze_states(rho, bundle_measure="eof"):
    """Full measurement of a stack of states; returns measured columns.

    Raises :class:`InvalidStateError` naming the first failed invariant.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim == 2:
        rho = rho[None]
    w, v = density_eigh(rho)
    r1, r2 = partial_trace(rho, 1), partial_trace(rho, 2)
    w1, w2 = hermitian_eigenvalues(r1), hermitian_eigenvalues(r2)
    marg = (r1, r2, w1, w2)
    vn = _profile(rho, w, VON_NEUMANN, marg)
    lin = _profile(rho, w, LINEAR, marg)
    ent = _wootters(rho, w, v)
    ppt, _ = ppt_from_spectrum(hermitian_eigenvalues(partial_transpose_first(rho)))
    cols = {
        "sV1": vn.s_1, "sV2": vn.s_2, "sV": vn.s_global,
        "sL1": lin.s_1, "sL2": lin.s_2, "sL": lin.s_global,
        "mu1": lin.mu_1, "mu2": lin.mu_2, "mu": lin.mu,
        "concurrence": ent.concurrence, "tangle": ent.tangle, "eof": ent.eof,
        "delta_mu": lin.mu_1 * lin.mu_2 - lin.mu,
        "ppt": ppt,
        "entropic_vn": entropic_criterion_vn(vn),
        "entropic_lin": entropic_criterion_lin(lin),
        "majorization": majorization_from_spectra(w, w1, w2),
    }
    cols = {k: np.atleast_1d(np.asarray(val)) for k, val in cols.items()}
    for k in FLAG_COLUMNS:
        cols[k] = cols[k].astype(int)
    cols["bundle"] = bundle_labels(cols[bundle_measure])
    return cols


def bound_checks(cols, lptps_rows=None):
    """Slack of every inequality for each row; the LPTPS exclusion only on ``lptps_rows``."""
    s1, s2, s = cols["sV1"], cols["sV2"], cols["sV"]
    l1, l2 = cols["sL1"], cols["sL2"]
    slack = {
        EQ_TRIANGLE_LEFT: 2.0 * s - np.abs(s1 - s2),
        EQ_TRIANGLE_RIGHT: s1 + s2 - 2.0 * s,
        EQ_EOF_LOOSE: np.minimum(s1, s2) - cols["eof"],
        EQ_TANGLE_LOOSE: np.minimum(l1, l2) - cols["tangle"],
        EQ_TANGLE_MEMMS: np.atleast_1d(memms_tangle_bound(l1, l2)) - cols["tangle"],
        EQ_EOF_MEMMS: np.atleast_1d(eof_marginal_bound(l1, l2)) - cols["eof"],
    }
    if lptps_rows is not None and np.any(lptps_rows):
        a, b = l1[lptps_rows], l2[lptps_rows]
        slack[EQ_LPTPS_EXCLUSION] = np.minimum(
            np.atleast_1d(lptps_entropy_limit(b)) - a, np.atleast_1d(lptps_entropy_limit(a)) - b
        )
    return slack


@dataclass
class BoundSummary:
    min_slack: dict = field(default_factory=dict)
    violations: dict = field(default_factory=dict)

    def update(self, slack):
        for name, values in slack.items():
            if values.size == 0:
                continue
            lo = float(np.min(values))
            self.min_slack[name] = min(lo, self.min_slack.get(name, np.inf))
            self.violations[name] = self.violations.get(name, 0) + int(np.sum(values < -TOL.bound_slack))

    @property
    def total_violations(self):
        return sum(self.violations.values())

    def as_dict(self):
        names = [n for n in BOUND_NAMES if n in self.min_slack]
        return {
            "min_slack": {n: self.min_slack[n] for n in names},
            "violations": {n: self.violations[n] for n in names},
        }


# records


@dataclass
class StateRecord:
    id: int
    seed: int
    family: str
    params: tuple
    sV: EntropyProfile
    sL: EntropyProfile
    ent: EntanglementReport
    verdict: CriteriaVerdict
    delta_mu: float
    bundle: str

    def to_row(self):
        x1, x2, c = self.params
        return {
            "id": self.id, "seed": self.seed, "family": self.family, "x1": x1, "x2": x2, "c": c,
            "sV1": self.sV.s_1, "sV2": self.sV.s_2, "sV": self.sV.s_global,
            "sL1": self.sL.s_1, "sL2": self.sL.s_2, "sL": self.sL.s_global,
            "mu1": self.sL.mu_1, "mu2": self.sL.mu_2, "mu": self.sL.mu,
            "concurrence": self.ent.concurrence, "tangle": self.ent.tangle, "eof": self.ent.eof,
            "delta_mu": self.delta_mu,
            "ppt": int(self.verdict.ppt_entangled), "entropic_vn": int(self.verdict.entropic_vn_flag),
            "entropic_lin": int(self.verdict.entropic_lin_flag), "majorization": int(self.verdict.majorization_flag),
            "bundle": self.bundle,
        }

    @classmethod
    def from_row(cls, row):
        f = {k: _parse_value(k, row[k]) for k in FULL_COLUMNS}
        sv = EntropyProfile(f["sV"], f["sV1"], f["sV2"], f["mu"], f["mu1"], f["mu2"], VON_NEUMANN)
        sl = EntropyProfile(f["sL"], f["sL1"], f["sL2"], f["mu"], f["mu1"], f["mu2"], LINEAR)
        ent = EntanglementReport(f["concurrence"], f["tangle"], f["eof"], None)
        verdict = CriteriaVerdict(
            bool(f["ppt"]), bool(f["entropic_vn"]), bool(f["entropic_lin"]), bool(f["majorization"]), float("nan")
        )
        return cls(f["id"], f["seed"], f["family"], (f["x1"], f["x2"], f["c"]), sv, sl, ent, verdict,
                   f["delta_mu"], f["bundle"])


def record_problems(record, bundle_measure="eof", tol=1e-9):
    """Invariants a record must satisfy; returns a list of failures (empty if fine)."""
    problems = []
    values = [record.sV.s_global, record.sV.s_1, record.sV.s_2, record.sL.s_global, record.sL.s_1,
              record.sL.s_2, record.ent.concurrence, record.ent.tangle, record.ent.eof]
    if any(not (-tol <= x <= 1 + tol) for x in values):
        problems.append("measure outside [0, 1]")
    if abs(record.ent.tangle - record.ent.concurrence**2) > 1e-12:
        problems.append("tangle != concurrence^2")
    if (record.ent.eof == 0) != (record.ent.concurrence == 0):
        problems.append("eof zero iff concurrence zero")
    if abs(record.sL.s_global - 4.0 / 3.0 * (1 - record.sL.mu)) > tol:
        problems.append("global linear entropy inconsistent with purity")
    if abs(record.sL.s_1 - 2 * (1 - record.sL.mu_1)) > tol or abs(record.sL.s_2 - 2 * (1 - record.sL.mu_2)) > tol:
        problems.append("marginal linear entropy inconsistent with purity")
    if abs(record.delta_mu - (record.sL.mu_1 * record.sL.mu_2 - record.sL.mu)) > tol:
        problems.append("delta_mu inconsistent with purities")
    v = record.verdict
    if (v.entropic_vn_flag or v.entropic_lin_flag or v.majorization_flag) and not v.ppt_entangled:
        problems.append("weaker criterion flags a PPT state")
    measure = record.ent.eof if bundle_measure == "eof" else record.ent.tangle
    if record.bundle != BUNDLES[int(bundle_index(measure))]:
        problems.append("bundle does not match entanglement measure")
    return problems


def analyze(rho, family="random", params=(np.nan, np.nan, np.nan), id=0, seed=0, bundle_measure="eof"):
    """Measure a single state and return a :class:`StateRecord`."""
    rho = np.asarray(rho, dtype=complex)
    w, v = density_eigh(rho)
    vn = _profile(rho, w, VON_NEUMANN)
    lin = _profile(rho, w, LINEAR)
    ent = _wootters(rho, w, v)
    verdict = criteria_verdict(rho, vn, lin)
    measure = ent.eof if bundle_measure == "eof" else ent.tangle
    return StateRecord(id, seed, family, tuple(float(p) for p in params), vn, lin, ent, verdict,
                       float(lin.mu_1 * lin.mu_2 - lin.mu), BUNDLES[int(bundle_index(measure))])


def load_matrix(path):
    """Read a 4x4 matrix stored as {"re": [[...]], "im": [[...]]}."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidStateError("parse", str(exc)) from exc
    try:
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidStateError("parse", f"cannot read matrix: {exc}") from exc
    if re.shape != (4, 4) or im.shape != (4, 4):
        raise InvalidStateError("shape", f"expected 4x4 're' and 'im' arrays, got {re.shape} and {im.shape}")
    return re + 1j * im


def dump_matrix(rho):
    rho = np.asarray(rho)
    return {"re": rho.real.tolist(), "im": rho.imag.tolist()}


# sampling


def _random_marginals(rng, n):
    return random_state(rng, size=n, dim=2)


def draw_family(family, rng, n):
    """Draw ``n`` states of a family; returns (states, params) with params (n, 3)."""
    params = np.full((n, 3), np.nan)
    if family == "random":
        return random_state(rng, size=n), params
    if family == "pure":
        return random_state(rng, rank_cap=1, size=n), params
    if family == "product":
        return kron(_random_marginals(rng, n), _random_marginals(rng, n)), params
    if family == "lptps":
        p = sample_lptps_params(rng, n)
        return ansatz_states(p[:, 0], p[:, 1], p[:, 2]), p
    if family == "memms":
        lows = 0.5 * rng.random((n, 2))
        rho = np.stack([memms_for_marginals(a, b) for a, b in lows]) if n else np.zeros((0, 4, 4), complex)
        x1 = 1.0 - lows.max(axis=1)
        x2 = lows.min(axis=1)
        return rho, np.column_stack([x1, x2, 2.0 * np.sqrt(x1 * x2)])
    raise ValueError(f"unknown family {family!r}")


def _chunk_job(args):
    family, seed, n, bundle_measure, entangled_only = args
    rng = make_rng(seed)
    rho, params = draw_family(family, rng, n)
    cols = analyze_states(rho, bundle_measure)
    cols["x1"], cols["x2"], cols["c"] = params[:, 0], params[:, 1], params[:, 2]
    if entangled_only:
        keep = cols["concurrence"] > 0.0
        cols = {k: v[keep] for k, v in cols.items()}
    cols["seed"] = np.full(len(cols["sV"]), seed, dtype=np.int64)
    cols["family"] = np.full(len(cols["sV"]), family, dtype=object)
    return cols


def concat_columns(parts):
    parts = [p for p in parts if p]
    if not parts:
        return {}
    return {k: np.concatenate([p[k] for p in parts]) for k in parts[0]}


def sample_columns(family, n, seed, bundle_measure="eof", entangled_only=False, workers=1):
    """Analyse ``n`` states of ``family`` drawn in chunks seeded ``seed + chunk index``.

    With ``entangled_only`` chunks are drawn until ``n`` entangled states
    have been kept. The output does not depend on ``workers``.
    """
    parts, have, chunk = [], 0, 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        while have < n:
            need = n - have
            per = need if not entangled_only else int(need * 1.5) + 64
            jobs = []
            while per > 0:
                size = min(CHUNK, per)
                jobs.append((family, seed + chunk, size, bundle_measure, entangled_only))
                chunk += 1
                per -= size
            results = pool.map(_chunk_job, jobs) if pool else map(_chunk_job, jobs)
            for cols in results:
                if have >= n:
                    break
                take = min(n - have, len(cols["sV"]))
                parts.append({k: v[:take] for k, v in cols.items()})
                have += take
    finally:
        if pool:
            pool.shutdown()
    cols = concat_columns(parts)
    if not cols:
        cols = _empty_columns()
    return cols


def _empty_columns():
    cols = {k: np.zeros(0) for k in FULL_COLUMNS}
    for k in TEXT_COLUMNS:
        cols[k] = np.zeros(0, dtype=object)
    return cols


def memms_grid(resolution, bundle_measure="tangle"):
    """MEMMS over a resolution x resolution grid of marginal smaller eigenvalues in [0, 1/2]."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    lows = np.linspace(0.0, 0.5, resolution)
    pairs = [(a, b) for a in lows for b in lows]
    rho = np.stack([memms_for_marginals(a, b) for a, b in pairs])
    cols = analyze_states(rho, bundle_measure)
    lo = np.array([min(a, b) for a, b in pairs])
    hi = np.array([max(a, b) for a, b in pairs])
    cols["x1"], cols["x2"] = 1.0 - hi, lo
    cols["c"] = 2.0 * np.sqrt(cols["x1"] * cols["x2"])
    cols["seed"] = np.zeros(len(pairs), dtype=np.int64)
    cols["family"] = np.full(len(pairs), "memms", dtype=object)
    return cols


def lptps_line(points, bundle_measure="tangle"):
    """Maximally entangled LPTPS at ``points`` evenly spaced purity deficits in [0, max]."""
    if points < 2:
        raise ValueError("need at least 2 points")
    t = LPTPS_OPTIMAL_X
    gap0 = 2.0 * t * t * (1.0 - 4.0 * t + 2.0 * t * t)
    targets = np.linspace(0.0, DELTA_MU_MAX, points)
    # deficit of the ansatz falls by c^2 / 2 from its c = 0 value
    c = np.sqrt(np.clip(2.0 * (gap0 - targets), 0.0, None))
    rho = ansatz_states(np.full(points, t), np.full(points, t), c)
    cols = analyze_states(rho, bundle_measure)
    cols["x1"] = cols["x2"] = np.full(points, t)
    cols["c"] = c
    cols["seed"] = np.zeros(points, dtype=np.int64)
    cols["family"] = np.full(points, "lptps", dtype=object)
    return cols


# campaigns


@dataclass
class CampaignConfig:
    n_states: int
    seed: int = 7
    family: str = "random"
    figure: str = "none"
    output_path: Optional[str] = None
    format: str = "csv"
    workers: int = 1
    surface_resolution: int = 50
    line_points: int = 101

    def __post_init__(self):
        if self.n_states < 1:
            raise ValueError("n_states must be at least 1")
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.figure not in FIGURES:
            raise ValueError(f"figure must be one of {FIGURES}")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    @property
    def bundle_measure(self):
        return BUNDLE_MEASURE[self.figure]

    @property
    def columns(self):
        if self.figure == "none":
            return FULL_COLUMNS
        return ("id", "seed", "family", "series") + FIGURE_COLUMNS[self.figure]


@dataclass
class Dataset:
    columns: tuple
    data: dict
    meta: dict
    summary: dict

    def __len__(self):
        return len(self.data["id"])


def _with_series(cols, series):
    cols = dict(cols)
    cols["series"] = np.full(len(cols["sV"]), series, dtype=object)
    return cols


def run_campaign(config):
    """Generate the dataset described by ``config`` and its summary (not written)."""
    fig = config.figure
    family = {"fig3a": "lptps", "fig3b": "lptps"}.get(fig, "random" if fig != "none" else config.family)
    bm = config.bundle_measure
    sample = sample_columns(family, config.n_states, config.seed, bm, entangled_only=(fig == "fig2"),
                            workers=config.workers)
    parts = [_with_series(sample, SERIES_SAMPLE)]
    extra = {}
    if fig == "fig2":
        surface = memms_grid(config.surface_resolution, bm)
        gap = np.atleast_1d(memms_tangle_bound(surface["sL1"], surface["sL2"])) - surface["tangle"]
        extra["memms_surface_max_abs_gap"] = float(np.max(np.abs(gap)))
        parts.append(_with_series(surface, SERIES_MEMMS))
    if fig == "fig3b":
        line = lptps_line(config.line_points, bm)
        parts.append(_with_series(line, SERIES_LINE))
        over = sample["tangle"] - np.atleast_1d(2.0 * (DELTA_MU_MAX - np.clip(sample["delta_mu"], None, DELTA_MU_MAX)))
        extra["max_excess_over_extremal_line"] = float(np.max(over)) if over.size else None
        extra["points_above_line"] = int(np.sum(over > TOL.bound_slack))
    data = concat_columns(parts)
    data["id"] = np.arange(len(data["sV"]), dtype=np.int64)

    bounds = BoundSummary()
    lptps_rows = sample["family"] == "lptps"
    bounds.update(bound_checks(sample, lptps_rows))
    counts = {b: int(np.sum(sample["bundle"] == b)) for b in BUNDLES}
    summary = {
        "figure": fig,
        "family": family,
        "seed": config.seed,
        "rng": RNG_ALGORITHM,
        "n_samples": int(len(sample["sV"])),
        "n_rows": int(len(data["sV"])),
        "bundle_measure": bm,
        "bundle_counts": counts,
        **bounds.as_dict(),
        "total_violations": bounds.total_violations + extra.get("points_above_line", 0),
        **extra,
    }
    meta = {
        "tool": "entmix",
        "version": __version__,
        "seed": config.seed,
        "rng": RNG_ALGORITHM,
        "chunk": CHUNK,
        "figure": fig,
        "family": family,
        "bundle_measure": bm,
    }
    return Dataset(config.columns, data, meta, summary)


# output


def _format_value(col, value):
    if col in TEXT_COLUMNS:
        return str(value)
    if col in INT_COLUMNS:
        return str(int(value))
    return format(float(value), ".17g")


def _parse_value(col, text):
    if col in TEXT_COLUMNS:
        return text
    if col in INT_COLUMNS:
        return int(text)
    return float(text)


def _json_value(col, value):
    if col in TEXT_COLUMNS:
        return str(value)
    if col in INT_COLUMNS:
        return int(value)
    value = float(value)
    return None if np.isnan(value) else value


def dataset_to_csv(ds):
    buf = io.StringIO()
    meta = " ".join(f"{k}={v}" for k, v in ds.meta.items())
    buf.write(f"# {meta}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ds.columns)
    cols = [[_format_value(c, v) for v in ds.data[c]] for c in ds.columns]
    writer.writerows(zip(*cols))
    return buf.getvalue()


def dataset_to_json(ds):
    records = [
        {c: _json_value(c, ds.data[c][i]) for c in ds.columns} for i in range(len(ds))
    ]
    return json.dumps({"meta": ds.meta, "columns": list(ds.columns), "records": records}, indent=1) + "\n"


def write_dataset(ds, path, fmt="csv"):
    text = dataset_to_csv(ds) if fmt == "csv" else dataset_to_json(ds)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def read_csv(path):
    """Read a dataset CSV back as (meta, columns dict)."""
    with open(path, newline="") as fh:
        first = fh.readline()
        meta = dict(item.split("=", 1) for item in first.lstrip("# ").split())
        reader = csv.DictReader(fh)
        rows = list(reader)
    names = reader.fieldnames or []
    data = {c: np.array([_parse_value(c, r[c]) for r in rows], dtype=object if c in TEXT_COLUMNS else None)
            for c in names}
    return meta, data, rows


# fuzzing


@dataclass
class FuzzReport:
    n_random: int = 0
    n_boundary: int = 0
    bounds: BoundSummary = field(default_factory=BoundSummary)
    rejected: list = field(default_factory=list)

    @property
    def ok(self):
        return self.bounds.total_violations == 0

    def as_dict(self):
        return {
            "n_random": self.n_random,
            "n_boundary": self.n_boundary,
            **self.bounds.as_dict(),
            "total_violations": self.bounds.total_violations,
            "rejected": self.rejected,
            "ok": self.ok,
        }


def boundary_states(rng, n):
    """States close to the surfaces where bounds are tight.

    Near-pure, near-MEMMS (with random local unitaries) and near-product
    states, each mixed with a random state at weight 10^U(-12, -2).
    """
    def noise(k):
        return 10.0 ** rng.uniform(-12.0, -2.0, size=k)[:, None, None]

    near_pure = random_state(rng, rank_cap=1, size=n)
    eps = noise(n)
    near_pure = (1 - eps) * near_pure + eps * random_state(rng, size=n)

    lows = 0.5 * rng.random((n, 2))
    mem = np.stack([memms_for_marginals(a, b) for a, b in lows]) if n else np.zeros((0, 4, 4), complex)
    u = random_local_unitary(rng, size=n)
    mem = u @ mem @ np.conj(np.swapaxes(u, -1, -2))
    eps = noise(n)
    mem = (1 - eps) * mem + eps * random_state(rng, size=n)

    prod = kron(_random_marginals(rng, n), _random_marginals(rng, n))
    eps = noise(n)
    prod = (1 - eps) * prod + eps * random_state(rng, size=n)
    out = np.concatenate([near_pure, mem, prod])
    return 0.5 * (out + np.conj(np.swapaxes(out, -1, -2)))


def fuzz_bounds(n, seed=0, extra_states=(), boundary_fraction=0.25):
    """Search for violations of the entropic and entanglement bounds.

    ``n`` random states plus ``3 * ceil(n * boundary_fraction)`` boundary
    states and the same number of entangled LPTPS are tested. States in
    ``extra_states`` are validated first and listed under ``rejected`` if
    they fail a density-matrix invariant.
    """
    report = FuzzReport()
    for i, rho in enumerate(extra_states):
        try:
            cols = analyze_states(rho)
        except InvalidStateError as exc:
            report.rejected.append({"index": i, "reason": exc.reason, "message": str(exc)})
            continue
        report.n_boundary += 1
        report.bounds.update(bound_checks(cols))
    if n <= 0:
        return report
    rng = make_rng(seed)
    done = 0
    while done < n:
        size = min(CHUNK, n - done)
        report.bounds.update(bound_checks(analyze_states(random_state(rng, size=size))))
        done += size
    report.n_random = n
    k = int(np.ceil(n * boundary_fraction))
    for start in range(0, k, CHUNK):
        size = min(CHUNK, k - start)
        report.bounds.update(bound_checks(analyze_states(boundary_states(rng, size))))
        p = sample_lptps_params(rng, size)
        cols = analyze_states(ansatz_states(p[:, 0], p[:, 1], p[:, 2]))
        report.bounds.update(bound_checks(cols, np.ones(size, dtype=bool)))
        report.n_boundary += 4 * size
    return report
