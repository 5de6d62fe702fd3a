"""critline command line: check, zeros, identity, spectrum, compare, report.

Exit codes: 0 pass, 2 fail, 3 inconclusive (including numerical errors that
stop a stage), 64 configuration or usage error.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .. import friedrichs, functional, hcatalog, zerofinder
from ..errors import ConfigError, CritlineError
from . import output
from .config import load_config

EXIT = {"pass": 0, "fail": 2, "inconclusive": 3}
EXIT_CONFIG = 64
STAGES = ("check", "zeros", "compare", "identity", "spectrum")


def _stage_doc(stage, cfg, rep, **extra):
    doc = {"stage": stage, "status": rep.status, "config": cfg.to_dict(), "report": rep.to_dict()}
    doc.update(extra)
    return doc


def _error_doc(stage, cfg, exc):
    return {"stage": stage, "status": "inconclusive", "config": cfg.to_dict(),
            "error": {"type": type(exc).__name__, "message": str(exc)}}


# ------------------------------------------------------------------ check

def cmd_check(cfg):
    rep = hcatalog.check_hypotheses(cfg.spec, cfg.eta, tol=cfg.hypothesis_tolerances())
    output.write_json(os.path.join(cfg.output_dir, "check.json"), _stage_doc("check", cfg, rep))
    failed = [c.name for c in rep.checks if c.status != "pass"]
    print(f"check {cfg.spec.label} eta={cfg.eta:+d}: {rep.status}"
          + (f" ({', '.join(failed)})" if failed else ""))
    return rep.status


# ------------------------------------------------------------------ zeros

def _zero_stage(cfg):
    spec, eta = cfg.spec, cfg.eta
    tol_on = cfg.tolerances["online"]
    located = zerofinder.locate_zeros(spec, eta, cfg.rect)
    checked = []
    for r in located:
        try:
            checked.append((zerofinder.simplicity_check(spec, eta, r), True))
        except CritlineError:
            checked.append((r, False))
    t0, t1 = cfg.t_window
    y0, y1 = cfg.rect[2], cfg.rect[3]
    lo, hi = max(t0, y0), min(t1, y1)
    phase = []
    if lo <= hi:
        phase = zerofinder.online_phase_zeros(spec, eta, (lo, hi))
        phase = [r for r in phase if lo <= r.w.imag <= hi]
    on_loc = [r for r, _ in checked
              if r.online_defect <= tol_on and lo <= r.w.imag <= hi and not r.simultaneous_flag]
    on_phase = [r for r in phase if not r.simultaneous_flag]
    return located, checked, phase, on_loc, on_phase


def _pairs(a, b):
    ta = sorted((r.w for r in a), key=lambda w: (w.imag, w.real))
    tb = sorted((r.w for r in b), key=lambda w: (w.imag, w.real))
    rows = []
    for k in range(max(len(ta), len(tb))):
        x = ta[k] if k < len(ta) else None
        y = tb[k] if k < len(tb) else None
        d = abs(x - y) if x is not None and y is not None else math.inf
        rows.append((x, y, d))
    return rows


def cmd_zeros(cfg):
    spec, eta = cfg.spec, cfg.eta
    tol_on = cfg.tolerances["online"]
    located, checked, phase, on_loc, on_phase = _zero_stage(cfg)
    rep = hcatalog.VerificationReport(f"zeros {spec.label} eta={eta:+d}")
    tally = [(r, ok) for r, ok in checked if not r.simultaneous_flag]
    uncert = [r.w for r, _ in tally if not r.certified]
    rep.add("certified", "pass" if not uncert else "fail",
            {"records": len(checked), "excluded_simultaneous": len(checked) - len(tally),
             "uncertified": uncert, "winding": located.winding, "rect": list(located.rect)},
            {"refinement_residual": zerofinder.CERTIFY_RESIDUAL})
    nonreal = [(r, ok) for r, ok in tally if abs(r.w.imag) > 0 and r.certified]
    off = [r.w for r, _ in nonreal if r.online_defect > tol_on]
    multi = [r.w for r, ok in nonreal if not ok or r.multiplicity != 1]
    rep.add("on_line", "pass" if not off else "fail",
            {"non_real": len(nonreal), "off_line": off,
             "max_online_defect": max((r.online_defect for r, _ in nonreal), default=0.0)},
            {"online_defect": tol_on})
    rep.add("simple", "pass" if not multi else "fail",
            {"non_simple_or_unresolved": multi}, {"multiplicity": 1})
    dist = zerofinder.match_lists(on_loc, on_phase)
    rep.add("method_agreement", "pass" if dist <= cfg.tolerances["agreement"] else "fail",
            {"locate_count": len(on_loc), "phase_count": len(on_phase), "max_distance": dist},
            {"agreement": cfg.tolerances["agreement"]})
    real = [r for r, _ in checked if r.w.imag == 0]
    if real:
        rep.add("real_axis", "pass",
                {"records": [[r.w.real, r.interval_flags[0], r.interval_flags[1]] for r in real]})

    rows = []
    for r, ok in checked:
        rows.append(_zero_row(r, ok))
    for r in phase:
        rows.append(_zero_row(r, None))
    schemas = output.load_schemas()
    output.write_csv(os.path.join(cfg.output_dir, "zeros.csv"), "zeros.csv", rows, schemas)
    output.write_json(os.path.join(cfg.output_dir, "zeros.json"),
                      _stage_doc("zeros", cfg, rep,
                                 locate=[r.to_dict() for r, _ in checked],
                                 phase=[r.to_dict() for r in phase]))
    t, phi = zerofinder.phase_track(spec, cfg.t_window)
    cross = [(r.w.imag, float(np.interp(r.w.imag, t, phi))) for r in phase]
    output.phase_svg(os.path.join(cfg.output_dir, "phase.svg"), t, phi, cross,
                     [r.w for r, _ in checked], located.rect,
                     f"{spec.label} eta={eta:+d}")
    print(f"zeros {spec.label} eta={eta:+d}: {rep.status} "
          f"({len(checked)} located, {len(phase)} on-line by phase)")
    return rep.status


def _zero_row(r, simple_ok):
    flags = r.interval_flags or (None, None)
    return {"method": r.method, "re_w": r.w.real, "im_w": r.w.imag, "eta": int(r.eta),
            "multiplicity": r.multiplicity, "simplicity_checked": simple_ok,
            "online_defect": r.online_defect, "refinement_residual": r.refinement_residual,
            "simultaneous_flag": r.simultaneous_flag,
            "derivative_magnitude": r.derivative_magnitude, "certified": r.certified,
            "in_theorem_interval": flags[0], "in_closing_interval": flags[1]}


# ---------------------------------------------------------------- compare

def cmd_compare(cfg):
    spec, eta = cfg.spec, cfg.eta
    _, _, _, on_loc, on_phase = _zero_stage(cfg)
    pairs = _pairs(on_loc, on_phase)
    tol = cfg.tolerances["agreement"]
    rows = []
    for k, (x, y, d) in enumerate(pairs):
        rows.append({"index": k,
                     "locate_re": None if x is None else x.real,
                     "locate_im": None if x is None else x.imag,
                     "phase_re": None if y is None else y.real,
                     "phase_im": None if y is None else y.imag,
                     "distance": d, "matched": d <= tol})
    rep = hcatalog.VerificationReport(f"compare {spec.label} eta={eta:+d}")
    worst = max((d for _, _, d in pairs), default=0.0)
    rep.add("locate_vs_phase", "pass" if worst <= tol else "fail",
            {"pairs": len(pairs), "max_distance": worst,
             "unmatched": sum(1 for _, _, d in pairs if not d <= tol)}, {"agreement": tol})
    output.write_csv(os.path.join(cfg.output_dir, "compare.csv"), "compare.csv", rows)
    output.write_json(os.path.join(cfg.output_dir, "compare.json"), _stage_doc("compare", cfg, rep))
    print(f"compare {spec.label} eta={eta:+d}: {rep.status} ({len(pairs)} pairs, max {worst:.3g})")
    return rep.status


# --------------------------------------------------------------- identity

def identity_points(cfg):
    if cfg.identity_w:
        return list(cfg.identity_w)
    rng = np.random.default_rng(cfg.seed)
    re = rng.uniform(0.6, 3.0, cfg.identity_random)
    im = rng.uniform(-20.0, 20.0, cfg.identity_random)
    return [complex(a, b) for a, b in zip(re, im)]


def cmd_identity(cfg):
    spec, eta = cfg.spec, cfg.eta
    tol = cfg.tolerances["identity"]
    rep = hcatalog.VerificationReport(f"identity {spec.label} eta={eta:+d}")
    rows = []
    for w in identity_points(cfg):
        sub = functional.verify_identity(spec, eta, w, cfg.T_schedule, cfg.N, rel_tol=tol)
        chk = sub["identity"]
        rep.add(f"w={w.real:.6g}{w.imag:+.6g}j", chk.status, chk.witness, chk.tolerance)
        for r, raw in zip(sub.rows, chk.witness["raw_err"]):
            rows.append(_identity_row("interior", w, r, raw))
    for w in cfg.online_w:
        vals = []
        for T in cfg.T_schedule:
            r = functional.theta_pairing_regularized(spec, eta, w, functional.LineQuadrature(T, cfg.N))
            vals.append(r)
            rows.append(_identity_row("online", w, r, None))
        errs = [r.abs_error for r in vals]
        scale = max(abs(vals[-1].target), 1.0)
        rep.add(f"online w={w.real:.6g}{w.imag:+.6g}j",
                "pass" if errs[-1] <= tol * scale else "fail",
                {"abs_err": errs, "T": list(cfg.T_schedule)}, {"abs_tol": tol * scale})
    output.write_csv(os.path.join(cfg.output_dir, "identity.csv"), "identity.csv", rows)
    output.write_json(os.path.join(cfg.output_dir, "identity.json"), _stage_doc("identity", cfg, rep))
    n_pass = sum(1 for c in rep.checks if c.status == "pass")
    print(f"identity {spec.label} eta={eta:+d}: {rep.status} ({n_pass}/{len(rep.checks)} points)")
    return rep.status


def _identity_row(kind, w, r, raw):
    return {"kind": kind, "w_re": w.real, "w_im": w.imag, "T": r.T,
            "lhs_re": r.value.real, "lhs_im": r.value.imag,
            "rhs_re": r.target.real, "rhs_im": r.target.imag,
            "rel_err": r.rel_error, "raw_err": raw, "tail_correction_abs": abs(r.tail_correction)}


# --------------------------------------------------------------- spectrum

def cmd_spectrum(cfg):
    spec, eta = cfg.spec, cfg.eta
    rep = friedrichs.spectral_zero_correspondence(
        spec, eta, cfg.spectrum_T, cfg.spectrum_N, window=cfg.t_window, c_shift=cfg.c_shift,
        match_tol=cfg.match_tol, doublings=cfg.doublings)
    eig_rows, conv_rows, pair_rows = [], [], []
    for k, lv in enumerate(rep.levels):
        res = lv["result"]
        for j, (mu, ws, (r1, r2)) in enumerate(zip(res.eigenvalues, res.mapped_w, res.residuals)):
            eig_rows.append({"level": k, "T": lv["T"], "N": lv["N"], "index": j, "lambda": float(mu),
                             "w_re": ws[0].real, "w_im": ws[0].imag,
                             "residual_equation": r1, "residual_constraint": r2})
        conv_rows.append({"T": lv["T"], "N": lv["N"], "max_pair_distance": lv["max_pair_distance"],
                          "eig_count": lv["eig_count"], "zero_count": lv["zero_count"]})
        for z, w, d in lv["pairs"]:
            pair_rows.append({"level": k, "T": lv["T"], "N": lv["N"], "zero_re": z.real,
                              "zero_im": z.imag, "w_re": None if w is None else w.real,
                              "w_im": None if w is None else w.imag, "distance": d})
    schemas = output.load_schemas()
    d = cfg.output_dir
    output.write_csv(os.path.join(d, "spectrum.csv"), "spectrum.csv", eig_rows, schemas)
    output.write_csv(os.path.join(d, "convergence.csv"), "convergence.csv", conv_rows, schemas)
    output.write_csv(os.path.join(d, "pairs.csv"), "pairs.csv", pair_rows, schemas)
    output.write_json(os.path.join(d, "spectrum.json"), _stage_doc("spectrum", cfg, rep))
    dists = ", ".join(f"{lv['max_pair_distance']:.3g}" for lv in rep.levels)
    print(f"spectrum {spec.label} eta={eta:+d}: {rep.status} (max pair distance per level: {dists})")
    return rep.status


# ----------------------------------------------------------------- report

def cmd_report(out_dir):
    stages = {}
    for name in STAGES:
        path = os.path.join(out_dir, f"{name}.json")
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                stages[name] = json.load(fh)
    if not stages:
        raise FileNotFoundError(f"no stage artifacts in {out_dir!r}")
    summary = {}
    for name in STAGES:
        doc = stages.get(name)
        if doc is None:
            summary[name] = {"present": False, "status": None}
            continue
        checks = doc.get("report", {}).get("checks", [])
        summary[name] = {"present": True, "status": doc["status"],
                         "checks": len(checks),
                         "passed": sum(1 for c in checks if c["status"] == "pass")}
    present = [s["status"] for s in summary.values() if s["present"]]
    overall = "fail" if "fail" in present else ("inconclusive" if "inconclusive" in present else "pass")
    output.write_json(os.path.join(out_dir, "report.json"),
                      {"status": overall, "summary": summary, "stages": stages})
    lines = [f"overall: {overall}"]
    for name in STAGES:
        s = summary[name]
        if not s["present"]:
            lines.append(f"{name:9s} absent")
        else:
            lines.append(f"{name:9s} {s['status']:12s} {s['passed']}/{s['checks']} checks passed")
    with open(os.path.join(out_dir, "summary.txt"), "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print("\n".join(lines))
    return overall


# ------------------------------------------------------------------- main

COMMANDS = {"check": cmd_check, "zeros": cmd_zeros, "identity": cmd_identity,
            "spectrum": cmd_spectrum, "compare": cmd_compare}


def build_parser():
    p = argparse.ArgumentParser(prog="critline",
                                description="Zero certification for 1 +/- h(1-s)/h(s).")
    p.add_argument("verb", choices=sorted(list(COMMANDS) + ["report"]))
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--T", type=float)
    p.add_argument("--N", type=int)
    p.add_argument("--eta", choices=["plus", "minus"])
    p.add_argument("--window", metavar="x0,x1,y0,y1|t0,t1")
    p.add_argument("--seed", type=int)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else 0
    try:
        if args.verb == "report":
            if not args.out:
                raise ConfigError("report needs --out DIR")
            try:
                return EXIT[cmd_report(args.out)]
            except (FileNotFoundError, ValueError) as exc:
                print(f"critline: {exc}", file=sys.stderr)
                return EXIT_CONFIG
        if not args.config:
            raise ConfigError(f"{args.verb} needs --config PATH")
        cfg = load_config(args.config, overrides={
            "verb": args.verb, "T": args.T, "N": args.N, "eta": args.eta,
            "window": args.window, "seed": args.seed, "out": args.out})
    except ConfigError as exc:
        print(f"critline: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    output.ensure_dir(cfg.output_dir)
    try:
        status = COMMANDS[args.verb](cfg)
    except CritlineError as exc:
        output.write_json(os.path.join(cfg.output_dir, f"{args.verb}.json"),
                          _error_doc(args.verb, cfg, exc))
        print(f"{args.verb} {cfg.spec.label}: inconclusive ({type(exc).__name__}: {exc})")
        return EXIT["inconclusive"]
    return EXIT[status]


if __name__ == "__main__":
    sys.exit(main())
