"""Command-line front end: strands, constructions, distinguishers, bounds,
the McEliece audit, figure reproduction and defect statistics.

Every command can emit an experiment record as JSON.  The record carries the
command, its configuration, the seed, wall time, the largest matrix that was
eliminated and a result payload.  The payload depends only on the inputs and
the seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from . import reference as ref
from .bounds import (
    GV_CONVENTION,
    alternant_en_params,
    closed_form_diagram,
    en_strand_bound,
    entropy_threshold_rates,
    goppa_en_params,
    improved_alternant_bound,
)
from .codes import (
    CodeError,
    FamilySpec,
    LinearCode,
    golay_binary,
    golay_ternary,
    grs_code,
    hamming_code,
    parity_code,
    pi_code,
    random_code,
    random_code_conditioned,
    read_code,
    sample_family_member,
    write_code,
    SupportMultiplier,
)
from .distinguisher import (
    OMEGA,
    DistinguisherConfig,
    calibrate,
    classify,
    heuristic_conditions,
    kappa_estimate,
    max_admissible_shortening,
    mceliece_audit,
    r_star_from_bound,
    random_shortening,
)
from .gf import FieldError, make_field
from .linalg import write_matrix
from .syzygy import (
    BettiStrand,
    SyzygyError,
    betti_diagram_reg2,
    defect,
    is_regularity2,
    linear_strand,
)

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2

log = logging.getLogger("syzkit")


class InputError(Exception):
    pass


class Refused(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def schema_path() -> Path:
    return Path(str(resources.files("syzkit") / "schemas" / "record.schema.json"))


def load_schema() -> dict:
    return json.loads(schema_path().read_text())


# ---------------------------------------------------------------------------
# run context


class Run:
    """Collects what goes into the experiment record while a command runs."""

    def __init__(self, args):
        self.args = args
        self.peak = None
        self.t0 = time.perf_counter()

    def saw(self, strand: BettiStrand):
        for st in strand.steps:
            shape = tuple(int(v) for v in st.reduced_shape)
            if self.peak is None or shape[0] * shape[1] > self.peak[0] * self.peak[1]:
                self.peak = shape

    def record(self, result: dict, status: str = "ok") -> dict:
        cfg = {k: v for k, v in vars(self.args).items() if k not in ("func", "json", "csv", "out", "verbose")}
        return {
            "schema_version": SCHEMA_VERSION,
            "syzkit_version": __version__,
            "command": self.args.command,
            "config": _jsonable(cfg),
            "seed": self.args.seed,
            "wall_time": round(time.perf_counter() - self.t0, 3),
            "peak_shape": list(self.peak) if self.peak else None,
            "gv_convention": GV_CONVENTION,
            "status": status,
            "result": _jsonable(result),
        }


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, Path):
        return str(v)
    return v


def emit(run: Run, result: dict, text: str, status: str = "ok", table=None):
    """Print text (or JSON or CSV) and optionally write the record to --out."""
    args = run.args
    rec = run.record(result, status)
    payload = json.dumps(rec, indent=2)
    if getattr(args, "out", None) and args.command != "construct":
        Path(args.out).write_text(payload + "\n")
    if args.json:
        print(payload)
    elif args.csv and table is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in table:
            w.writerow(row)
        print(buf.getvalue(), end="")
    else:
        print(text)


# ---------------------------------------------------------------------------
# helpers


def _strand_text(strand: BettiStrand) -> str:
    parts = [f"beta_{{{r - 1},{r}}} = {b}" for r, b in enumerate(strand.betas, start=2)]
    out = "\n".join(parts)
    if strand.refused:
        out += f"\nstopped: {strand.refused}"
    return out


def _family_from_args(args) -> FamilySpec:
    if args.family is None:
        raise InputError("--family is required")
    for name in ("q", "m", "t"):
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required with --family")
    try:
        return FamilySpec(args.family, args.q, args.m, args.t, n=args.n, goppa_mode=args.mode)
    except (CodeError, FieldError) as exc:
        raise InputError(str(exc)) from exc


def _read_code(path) -> LinearCode:
    try:
        return read_code(path)
    except (OSError, ValueError, FieldError) as exc:
        raise InputError(f"cannot read code from {path}: {exc}") from exc


def _strand_payload(C: LinearCode, strand: BettiStrand, want_row2: bool = True) -> dict:
    n, k = C.n, C.k
    reg2 = is_regularity2(C)
    row2, defects = None, None
    if reg2:
        defects = [defect(n, k, r, b) for r, b in enumerate(strand.betas, start=2)]
        if want_row2 and (strand.computed_up_to >= k or (strand.betas and strand.betas[-1] == 0)) and not strand.refused:
            diag = betti_diagram_reg2(C, strand)
            row2 = diag.row2
    return {
        "n": n,
        "k": k,
        "q": C.q,
        "beta_strand": strand.betas,
        "beta_row2": row2,
        "r_max": strand.r_max,
        "regularity2": reg2,
        "defects": defects,
        "computed_up_to": strand.computed_up_to,
        "refused": strand.refused,
    }


# ---------------------------------------------------------------------------
# commands


def cmd_betti(args, run: Run):
    C = _read_code(args.input)
    D = args.max_degree or C.k
    on_basis = None
    if args.dump_bases:
        out = Path(args.dump_bases)
        out.mkdir(parents=True, exist_ok=True)

        def on_basis(basis):
            M = basis.as_matrix()
            write_matrix(out / f"B{basis.degree}.txt", M)
            (out / f"B{basis.degree}.labels").write_text("\n".join(M.col_labels) + "\n")

    strand = linear_strand(C, D, cap_gb=args.mem_cap_gb, method=args.method, on_basis=on_basis, seed=args.seed or 0)
    run.saw(strand)
    res = _strand_payload(C, strand, want_row2=D >= C.k)
    text = f"[{C.n},{C.k}]_{C.q} code\n" + _strand_text(strand)
    if res["beta_row2"] is not None:
        text += "\n\n" + betti_diagram_reg2(C, strand).format()
    if strand.refused:
        emit(run, res, text, "refused")
        return EXIT_REFUSED
    emit(run, res, text)
    return EXIT_OK


_NAMED = ("hamming", "golay2", "golay3", "pi", "parity9", "grs15")


def named_code(name: str) -> LinearCode:
    if name == "hamming":
        return hamming_code()
    if name == "golay2":
        return golay_binary()
    if name == "golay3":
        return golay_ternary()
    if name == "pi":
        return pi_code()
    if name == "parity9":
        return parity_code(8)
    if name == "grs15":
        F = make_field(2, 4)
        x = np.arange(1, 16, dtype=np.int64)
        return grs_code(SupportMultiplier(F, x, np.ones(15, dtype=np.int64)), 8)
    raise InputError(f"unknown named code {name}")


def cmd_construct(args, run: Run):
    rng = np.random.default_rng(args.seed)
    info = {}
    if args.named:
        C = named_code(args.named)
        info["named"] = args.named
    elif args.family == "random":
        if args.n is None or args.k is None or args.q is None:
            raise InputError("random codes need --n, --k and --q")
        if (args.d is None) != (args.d_dual is None):
            raise InputError("give both --d and --d-dual or neither")
        if args.d is None:
            C = random_code(args.n, args.k, args.q, rng)
        else:
            C, draws = random_code_conditioned(args.n, args.k, args.q, args.d, args.d_dual, rng)
            info["draws"] = draws
    else:
        spec = _family_from_args(args)
        C, extra = sample_family_member(spec, rng)
        info.update({"family": spec.family, "m": spec.m, "t": spec.t, "retries": extra["retries"]})
    if args.shorten:
        C = random_shortening(C, args.shorten, rng)
        info["shortened"] = args.shorten
    if args.out:
        write_code(args.out, C)
    res = {"n": C.n, "k": C.k, "q": C.q, **info}
    if args.out:
        res["path"] = str(args.out)
        text = f"wrote [{C.n},{C.k}]_{C.q} code to {args.out}"
    else:
        text = C.to_text().rstrip()
    emit(run, res, text)
    return EXIT_OK


def _parse_beta_star(text):
    """'4:12,5:3' -> {4: 12, 5: 3}."""
    if not text:
        return None
    out = {}
    for part in text.split(","):
        r, _, v = part.partition(":")
        try:
            out[int(r)] = int(v)
        except ValueError as exc:
            raise InputError(f"bad --beta-star entry {part!r}; expected r:value") from exc
    return out


def cmd_distinguish(args, run: Run):
    C = _read_code(args.input)
    spec = _family_from_args(args) if args.family else None
    if args.r_star == "auto":
        if spec is not None:
            r_star, source = r_star_from_bound(spec), "bound"
        elif args.r is not None:
            r_star, source = None, "none"
        else:
            raise InputError("--r-star auto needs --family with --q --m --t, or give --r")
    else:
        r_star, source = int(args.r_star), "given"
    if args.basic or r_star is None:
        s = 0 if args.s == "auto" else int(args.s)
    elif args.s == "auto":
        s = max_admissible_shortening(C.n, C.k, r_star)
        if s is None:
            raise InputError("no admissible shortening for these parameters")
    else:
        s = int(args.s)
    try:
        cfg = DistinguisherConfig(
            spec=spec,
            r_star=r_star,
            r_star_source=source,
            s=0 if args.basic else s,
            r=args.r,
            beta_star=_parse_beta_star(args.beta_star),
            seed=args.seed or 0,
            mode="basic" if args.basic else "shortened",
        )
        v = classify(C, cfg, cap_gb=args.mem_cap_gb)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res = v.as_dict()
    res.update({"r_star": r_star, "r_star_source": source, "s": cfg.s})
    text = (
        f"decision: {v.decision}\n"
        f"r* = {r_star} ({source}), s = {cfg.s}, [n_s,k_s] = [{v.n_s},{v.k_s}], degree {v.degree}\n"
        f"beta_{{{v.degree - 1},{v.degree}}} = {v.beta}, threshold {v.threshold}"
    )
    for w in v.warnings:
        text += f"\nwarning: {w}"
    if v.decision == "refused":
        emit(run, res, text, "refused")
        return EXIT_REFUSED
    emit(run, res, text)
    return EXIT_OK


def cmd_calibrate(args, run: Run):
    spec = _family_from_args(args)
    if args.samples < 1:
        raise InputError("--samples must be positive")
    # one degree past the bound, so the first vanishing value is visible
    D = args.max_degree or max(2, r_star_from_bound(spec) - args.s) + 1
    res = calibrate(spec, args.samples, D, s=args.s, seed=args.seed or 0, cap_gb=args.mem_cap_gb)
    res["family"] = {"family": spec.family, "q": spec.q, "m": spec.m, "t": spec.t, "n": spec.n, "mode": spec.goppa_mode}
    res["s"] = args.s
    if "refused" in res:
        emit(run, res, f"stopped: {res['refused']}", "refused")
        return EXIT_REFUSED
    lines = [f"beta* = {res['beta_star']}  (degrees {res['degrees'][0]}..{res['degrees'][-1]})"]
    lines.append(f"all samples agree: {res['consensus']}, r_max = {res['r_max']}")
    if not res["consensus"]:
        lines.append(f"min {res['min']}\nmax {res['max']}")
    emit(run, res, "\n".join(lines))
    return EXIT_OK


def cmd_estimate(args, run: Run):
    if args.topic == "bounds":
        return _estimate_bounds(args, run)
    if args.topic == "entropy":
        q = args.q or 2
        r1, r2 = entropy_threshold_rates(q)
        res = {"q": q, "R1": r1, "R2": r2}
        emit(run, res, f"q = {q}: R1 = {r1:.5f}, R2 = {r2:.5f}")
        return EXIT_OK
    for name in ("q", "n", "k"):
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required")
    q, n, k = args.q, args.n, args.k
    if not 0 < k < n:
        raise InputError("need 0 < k < n")
    h = heuristic_conditions(q, n, k)
    res = {
        "q": q,
        "n": n,
        "k": k,
        "ratio": round(h.ratio, 4),
        "d_gv": h.d_gv,
        "d_gv_dual": h.d_gv_dual,
        "cond1": h.cond1,
        "cond2": h.cond2,
    }
    text = f"[{n},{k}]_{q}: k(k+1)/n = {h.ratio:.2f}, d_GV = {h.d_gv}, dual d_GV = {h.d_gv_dual}"
    text += f"\ncondition on d_GV: {h.cond1}, condition on dual d_GV: {h.cond2}"
    if args.kappa:
        est = kappa_estimate(n, k, args.omega)
        res["log2_kappa"] = est.rounded
        res["kappa_terms"] = {str(i): round(v, 3) for i, v in est.terms.items()}
        res["dominant_degree"] = est.dominant
        res["omega"] = args.omega
        text += f"\nlog2 kappa = {est.rounded} (dominant degree {est.dominant}, omega {args.omega})"
    emit(run, res, text)
    return EXIT_OK


def _estimate_bounds(args, run: Run):
    for name in ("q", "m", "t"):
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required")
    q, m, t, s = args.q, args.m, args.t, args.s
    try:
        p = alternant_en_params(q, t)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res = {"alternant": {"q": q, "t": t, "e": p.e, "f": p.f}, "m": m, "s": s}
    lines = [f"alternant: e = {p.e}, f = {p.f}, r* = {p.f}"]
    if q == 2:
        g = goppa_en_params(t)
        res["goppa"] = {"t": t, "e_hat": g.e_hat, "f_hat": g.f_hat}
        lines.append(f"binary Goppa: e_hat = {g.e_hat}, f_hat = {g.f_hat}")
    top = max(p.f, res["goppa"]["f_hat"]) if q == 2 else p.f
    degrees = [args.r] if args.r else list(range(2, top - s + 1))
    table = []
    for r in degrees:
        row = {"r": r, "alternant": en_strand_bound(p.f, s, r), "alternant_m_fold": en_strand_bound(p.f, s, r, m)}
        if s == 0:
            row["improved"] = improved_alternant_bound(m, q, t, r)
        if q == 2:
            f_hat = res["goppa"]["f_hat"]
            row["goppa"] = en_strand_bound(f_hat, s, r)
            row["goppa_m_fold"] = en_strand_bound(f_hat, s, r, m)
        table.append(row)
    res["bounds"] = table
    for row in table:
        lines.append("  ".join(f"{k} {v}" for k, v in row.items()))
    emit(run, res, "\n".join(lines))
    return EXIT_OK


def _audit_rows(rows):
    head = ["n", "m", "t", "r_star", "s", "r_star_minus_s", "n_s", "k_s", "ratio", "d_gv", "d_gv_dual", "cond1", "cond2", "log2_kappa", "kappa"]
    table = [head]
    for p in rows:
        d = p.as_dict()
        d["r_star_minus_s"] = p.r_star - p.s
        table.append([d[h] for h in head])
    return table


def _audit_text(rows) -> str:
    cols = [f"({p.n},{p.m},{p.t})" for p in rows]
    lines = [
        ("(n,m,t)", cols),
        ("r*", [p.r_star for p in rows]),
        ("s", [p.s for p in rows]),
        ("r*-s", [p.r_star - p.s for p in rows]),
        ("[n_s,k_s]", [f"[{p.n_s},{p.k_s}]" for p in rows]),
        ("k_s(k_s+1)/n_s", [f"{p.ratio:.2f}" for p in rows]),
        ("d_GV", [p.d_gv for p in rows]),
        ("dual d_GV", [p.d_gv_dual for p in rows]),
        ("kappa", [p.kappa_text for p in rows]),
    ]
    w = max(len(str(v)) for _, vals in lines for v in vals) + 2
    return "\n".join(f"{name:<16}" + "".join(f"{str(v):>{w}}" for v in vals) for name, vals in lines)


def cmd_audit(args, run: Run):
    if args.target != "mceliece":
        raise InputError(f"unknown audit target {args.target}")
    rows = mceliece_audit(omega=args.omega)
    res = {"rows": [p.as_dict() for p in rows], "omega": args.omega}
    emit(run, res, _audit_text(rows), table=_audit_rows(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# defect statistics


def defect_sample(n, k, q, d, d_dual, seed, index, r_hi, cap_gb=None):
    """One conditioned sample: (draws, strand) from the rng stream (seed, n, k, d, d_dual, index)."""
    rng = np.random.default_rng([seed, n, k, q, d, d_dual, index])
    C, draws = random_code_conditioned(n, k, q, d, d_dual, rng)
    strand = linear_strand(C, r_hi, cap_gb=cap_gb)
    return C, draws, strand


def defect_table(n, k, samples_defects: list, r_lo: int, r_hi: int) -> dict:
    """Per-r mean and central 99% interval (at most 0.5% dropped per tail)."""
    N = len(samples_defects)
    drop = int(0.005 * N)
    rows = {}
    for r in range(r_lo, r_hi + 1):
        vals = sorted(s[r - 2] for s in samples_defects)
        rows[r] = {
            "mean": sum(vals) / N,
            "lo": vals[drop],
            "hi": vals[N - 1 - drop],
        }
    return rows


def cmd_defect_stats(args, run: Run):
    n, k, q, d, dd = args.n, args.k, args.q, args.d, args.d_dual
    if None in (n, k, d, dd):
        raise InputError("--n, --k, --d and --d-dual are required")
    if args.samples < 1:
        raise InputError("--samples must be positive")
    r_lo, r_hi = args.r_min, args.r_max
    seed = args.seed or 0
    done = {}
    log_path = Path(args.samples_file) if args.samples_file else None
    if log_path and log_path.exists():
        for line in log_path.read_text().splitlines():
            if line.strip():
                e = json.loads(line)
                done[e["index"]] = e
    fh = log_path.open("a") if log_path else None
    try:
        for i in range(args.samples):
            if i in done:
                continue
            C, draws, strand = defect_sample(n, k, q, d, dd, seed, i, r_hi, args.mem_cap_gb)
            run.saw(strand)
            if strand.refused:
                raise Refused(strand.refused, {"completed_samples": i})
            e = {"index": i, "draws": draws, "betas": strand.betas[: r_hi - 1]}
            done[i] = e
            if fh:
                fh.write(json.dumps(e) + "\n")
                fh.flush()
            if (i + 1) % 50 == 0:
                log.info("defect-stats (%d,%d): %d/%d samples", d, dd, i + 1, args.samples)
    finally:
        if fh:
            fh.close()
    samples = [done[i] for i in range(args.samples)]
    defects = [[defect(n, k, r, e["betas"][r - 2]) for r in range(2, r_hi + 1)] for e in samples]
    rows = defect_table(n, k, defects, r_lo, r_hi)
    res = {
        "n": n,
        "k": k,
        "q": q,
        "d": d,
        "d_dual": dd,
        "samples": args.samples,
        "seed": seed,
        "rows": rows,
        "draws_total": sum(e["draws"] for e in samples),
        "per_sample_betas": [e["betas"] for e in samples],
    }
    lines = [f"random [{n},{k}]_{q} codes with d = {d}, dual d = {dd}, {args.samples} samples", " r    mean   99%"]
    for r, row in rows.items():
        lines.append(f"{r:>2}  {row['mean']:6.3f}   [{row['lo']},{row['hi']}]")
    table = [["r", "mean", "lo", "hi"]] + [[r, f"{v['mean']:.3f}", v["lo"], v["hi"]] for r, v in rows.items()]
    emit(run, res, "\n".join(lines), table=table)
    return EXIT_OK


# ---------------------------------------------------------------------------
# reproduction


REPRODUCE_IDS = (
    "fig-hamming",
    "fig-golay3",
    "fig-golay2",
    "fig-parity9",
    "fig-grs15",
    "fig-pi",
    "tab-alt-2-10-5",
    "tab-goppa-4-4-4",
    "tab-threshold-4-4-4",
    "tab-goppa-2-6-3",
    "tab-mceliece",
    "tab-entropy",
    "tab-statdef-cell",
)


def _reproduce_figure(fid, args, run):
    C = named_code(fid[4:])
    strand = linear_strand(C, C.k, cap_gb=args.mem_cap_gb)
    run.saw(strand)
    if strand.refused:
        raise Refused(strand.refused, {"beta_strand": strand.betas})
    diag = betti_diagram_reg2(C, strand)
    want = ref.DIAGRAMS[fid]
    res = {"n": C.n, "k": C.k, "q": C.q, "beta_strand": strand.betas, "beta_row2": diag.row2}
    res["matches_reference"] = strand.betas == want["strand"] and diag.row2 == want["row2"]
    text = f"[{C.n},{C.k}]_{C.q} code\n{diag.format()}"
    if fid in ("fig-parity9", "fig-grs15"):
        kind = "parity" if fid == "fig-parity9" else "grs_critical"
        cf = closed_form_diagram(kind, C.k)
        res["closed_form_row1"] = cf.row1
        res["closed_form_row2"] = cf.row2
        res["matches_closed_form"] = cf.row1 == diag.row1 and cf.row2 == diag.row2
        text += f"\nclosed form agrees: {res['matches_closed_form']}"
    text += f"\nreference agrees: {res['matches_reference']}"
    return res, text


def _reproduce_alt(args, run):
    spec = FamilySpec("alt_dual", 2, 10, 5)
    s_values = list(range(args.s_min, 8))
    rows, lines = {}, ["s  beta_{1,2} .. beta_{7,8}"]
    for s in s_values:
        out = calibrate(spec, args.samples, min(8, spec.k - s), s=s, seed=args.seed or 0, cap_gb=args.mem_cap_gb)
        if "refused" in out:
            raise Refused(out["refused"], {"rows": rows})
        beta = (out["beta_star"] + [0] * 7)[:7]
        rows[s] = {"beta": beta, "consensus": out["consensus"], "min": out["min"], "max": out["max"]}
        lines.append(f"{s}  " + " ".join(f"{v:>5}" if v else f"{'-':>5}" for v in beta))
    match = {s: rows[s]["beta"] == ref.ALT_2_10_5[s] for s in rows}
    return {"rows": rows, "matches_reference": match, "samples": args.samples}, "\n".join(lines)


def _reproduce_goppa444(args, run):
    spec = FamilySpec("goppa_dual", 4, 4, 4, goppa_mode="irr")
    samples = max(args.samples, 5)
    out = calibrate(spec, samples, 5, seed=args.seed or 0, cap_gb=args.mem_cap_gb)
    if "refused" in out:
        raise Refused(out["refused"])
    top = out["beta_star"][:3]
    res = dict(out)
    res["matches_reference"] = top == ref.GOPPA_4_4_4_BETA_STAR and out["r_max"] == 4
    text = f"beta* = {out['beta_star']} over {samples} samples, all agree: {out['consensus']}, r_max = {out['r_max']}"
    return res, text


def threshold_cell(kind: str, n: int, seed: int, index: int, cap_gb=None) -> list:
    """Strand (beta_{1,2}, beta_{2,3}, beta_{3,4}) of one dual Goppa or random [n,16]_4 code."""
    rng = np.random.default_rng([seed, n, 0 if kind == "goppa" else 1, index])
    if kind == "goppa":
        C, _ = sample_family_member(FamilySpec("goppa_dual", 4, 4, 4, n=n, goppa_mode="irr"), rng)
    else:
        C = random_code(n, 16, 4, rng)
    strand = linear_strand(C, 4, cap_gb=cap_gb)
    if strand.refused:
        raise Refused(strand.refused)
    return strand.betas


def _reproduce_threshold(args, run):
    ns = args.n_values or [88, 87, 86, 85, 84, 70, 69, 68, 67, 66]
    cells, lines = {}, ["   n  beta23(Goppa) beta23(random) beta34(Goppa) beta34(random)"]
    for n in ns:
        g = [threshold_cell("goppa", n, args.seed or 0, i, args.mem_cap_gb) for i in range(args.samples)]
        r = [threshold_cell("random", n, args.seed or 0, i, args.mem_cap_gb) for i in range(args.samples)]
        vals = {}
        for name, pool, j in (("b23_goppa", g, 1), ("b23_random", r, 1), ("b34_goppa", g, 2), ("b34_random", r, 2)):
            col = [b[j] for b in pool]
            mode = max(set(col), key=col.count)
            vals[name] = {"mode": mode, "agreement": col.count(mode) / len(col), "values": col}
        cells[n] = vals
        lines.append(f"{n:>4}  " + "  ".join(f"{vals[c]['mode']:>12}" for c in ("b23_goppa", "b23_random", "b34_goppa", "b34_random")))
    return {"cells": cells, "samples": args.samples}, "\n".join(lines)


def _reproduce_goppa263(args, run):
    spec = FamilySpec("goppa_dual", 2, 6, 3, goppa_mode="irr")
    out = calibrate(spec, args.samples, 9, seed=args.seed or 0, cap_gb=args.mem_cap_gb)
    if "refused" in out:
        raise Refused(out["refused"])
    top = {r: out["beta_star"][r - 2] for r in ref.GOPPA_2_6_3_TOP}
    res = dict(out)
    res["matches_reference"] = top == ref.GOPPA_2_6_3_TOP and out["r_max"] == 8
    return res, f"beta* = {out['beta_star']}, r_max = {out['r_max']}"


def _reproduce_statdef(args, run):
    d, dd = args.cell or (11, 3)
    sub = argparse.Namespace(**vars(args))
    sub.n, sub.k, sub.q, sub.d, sub.d_dual = 56, 16, 2, d, dd
    sub.r_min, sub.r_max, sub.samples_file = 2, 8, None
    rows = []
    for i in range(args.samples):
        C, draws, strand = defect_sample(56, 16, 2, d, dd, args.seed or 0, i, 8, args.mem_cap_gb)
        run.saw(strand)
        rows.append([defect(56, 16, r, strand.betas[r - 2]) for r in range(2, 9)])
    table = defect_table(56, 16, rows, 2, 8)
    want = ref.STATDEF[(d, dd)]
    lines = [f"random [56,16]_2 codes, d = {d}, dual d = {dd}, {args.samples} samples", " r    mean   99%     reference"]
    for r, row in table.items():
        m, lo, hi = want[r]
        lines.append(f"{r:>2}  {row['mean']:6.3f}   [{row['lo']},{row['hi']}]   {m:6.3f} [{lo},{hi}]")
    return {"cell": [d, dd], "samples": args.samples, "rows": table}, "\n".join(lines)


def cmd_reproduce(args, run: Run):
    fid = args.figure_id
    if fid not in REPRODUCE_IDS:
        raise InputError(f"unknown id {fid}; choose from {', '.join(REPRODUCE_IDS)}")
    if args.samples is None:
        args.samples = {"tab-alt-2-10-5": 3, "tab-goppa-4-4-4": 5, "tab-threshold-4-4-4": 10, "tab-goppa-2-6-3": 1, "tab-statdef-cell": 50}.get(fid, 1)
    table = None
    if fid.startswith("fig-"):
        res, text = _reproduce_figure(fid, args, run)
    elif fid == "tab-alt-2-10-5":
        res, text = _reproduce_alt(args, run)
    elif fid == "tab-goppa-4-4-4":
        res, text = _reproduce_goppa444(args, run)
    elif fid == "tab-threshold-4-4-4":
        res, text = _reproduce_threshold(args, run)
    elif fid == "tab-goppa-2-6-3":
        res, text = _reproduce_goppa263(args, run)
    elif fid == "tab-mceliece":
        rows = mceliece_audit()
        res = {"rows": [p.as_dict() for p in rows]}
        text, table = _audit_text(rows), _audit_rows(rows)
    elif fid == "tab-entropy":
        r1, r2 = entropy_threshold_rates(2)
        res = {"q": 2, "R1": r1, "R2": r2}
        text = f"R1 = {r1:.5f}, R2 = {r2:.5f}"
    else:
        res, text = _reproduce_statdef(args, run)
    res["id"] = fid
    emit(run, res, text, table=table)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _common(p):
    p.add_argument("--seed", type=int, default=None, help="rng seed (commands that sample default to 0)")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; computations run on one thread")
    p.add_argument("--mem-cap-gb", type=float, default=None, help="memory cap for a strand step (default $SYZKIT_MEM_CAP_GB or 4)")
    p.add_argument("--json", action="store_true", help="print the experiment record as JSON")
    p.add_argument("--csv", action="store_true", help="print tables as CSV")
    p.add_argument("--out", default=None, help="write the record (or, for construct, the code) to this file")
    p.add_argument("-v", "--verbose", action="count", default=0)


def _family_flags(p):
    p.add_argument("--family", default=None, help="alt-dual or goppa-dual")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="code length (default q^m)")
    p.add_argument("--mode", default="irr", choices=("irr", "sqfr", "any"), help="Goppa polynomial class")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="syzkit", description="Linear strands of Betti numbers of linear codes and the syzygy distinguisher.")
    ap.add_argument("--version", action="version", version=f"syzkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("betti", help="linear strand (and row 2 for regularity-2 codes) of a code file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--dump-bases", default=None, metavar="DIR")
    p.add_argument("--method", default="structured", choices=("structured", "explicit"))
    _common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("construct", help="build a code and write it in the code file format")
    _family_flags(p)
    p.add_argument("--named", choices=_NAMED, default=None)
    p.add_argument("--k", type=int, default=None, help="dimension for --family random")
    p.add_argument("--d", type=int, default=None, help="condition random codes on this minimum distance")
    p.add_argument("--d-dual", type=int, default=None, help="condition random codes on this dual distance")
    p.add_argument("--shorten", type=int, default=0, help="shorten at this many random positions")
    _common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("distinguish", help="classify a code as family member or random")
    p.add_argument("--in", dest="input", required=True)
    _family_flags(p)
    p.add_argument("--r-star", default="auto", help="auto or an integer")
    p.add_argument("--s", default="auto", help="auto or an integer")
    p.add_argument("--r", type=int, default=None, help="target degree (default r* - s)")
    p.add_argument("--beta-star", default=None, help="calibrated values as r:value,r:value")
    p.add_argument("--basic", action="store_true", help="no shortening; compare beta with --beta-star")
    _common(p)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("calibrate", help="strands of sampled family members")
    _family_flags(p)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("estimate", help="GV distances, heuristic conditions, kappa, EN bounds, entropy rates")
    p.add_argument("topic", nargs="?", default="code", choices=("code", "bounds", "entropy"))
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--kappa", action="store_true")
    p.add_argument("--omega", type=float, default=OMEGA)
    _common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("audit", help="parameter audit tables")
    p.add_argument("target", choices=("mceliece",))
    p.add_argument("--omega", type=float, default=OMEGA)
    _common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("reproduce", help="recompute a reference diagram or table")
    p.add_argument("figure_id", metavar="ID", help=", ".join(REPRODUCE_IDS))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--s-min", type=int, default=3, help="smallest s for tab-alt-2-10-5")
    p.add_argument("--n-values", type=int, nargs="*", default=None, help="lengths for tab-threshold-4-4-4")
    p.add_argument("--cell", type=int, nargs=2, default=None, metavar=("D", "D_DUAL"), help="cell for tab-statdef-cell")
    _common(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("defect-stats", help="defect statistics of conditioned random codes")
    p.add_argument("--n", type=int, default=56)
    p.add_argument("--k", type=int, default=16)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--d-dual", type=int, default=None)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--r-min", type=int, default=2)
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--samples-file", default=None, help="append per-sample strands here and resume from it")
    _common(p)
    p.set_defaults(func=cmd_defect_stats)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if args.command in ("construct", "calibrate", "reproduce", "defect-stats") and args.seed is None:
        args.seed = 0
    run = Run(args)
    try:
        return args.func(args, run)
    except Refused as exc:
        emit(run, {"refused": str(exc), **(exc.payload or {})}, f"stopped: {exc}", "refused")
        return EXIT_REFUSED
    except InputError as exc:
        print(f"syzkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CodeError, FieldError, ValueError, OSError) as exc:
        print(f"syzkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SyzygyError as exc:
        print(f"syzkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
