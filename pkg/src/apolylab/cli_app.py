"""Command line front end.

Verbs:
    run <config.json>   execute the pipelines named in the config
    probe <knot>        grid scan for small |dA/dl|, a routing aid
    demo                built-in figure-eight configuration
    parse <polyfile>    syntax-check a polynomial file

Run configs are JSON; complex numbers are [re, im] pairs, path specs are
tagged segment records.  File paths inside a config are relative to the
config's directory.  CSV output uses 17 significant digits and LF line
endings and contains no timestamps, so identical configs produce byte
identical bodies.  The jones CSV has a runtime_ms column that is 0 by
default; --timings fills real wall-clock values (and is therefore the
one switch that breaks byte identity).

Exit codes: 0 all requested operations completed, 1 a stage failed
(stage named on stderr), 2 the config itself is invalid.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import one_forms, symbols_k2
from .curve_tracker import (
    ArcSeg,
    LineSeg,
    PathSpec,
    StepControls,
    lift_path,
    refine,
)
from .errors import (
    AmbiguousWinding,
    ConfigError,
    ExtrapolationUnstable,
    NoRational,
    NonConvergence,
    PolySyntaxError,
    RamificationError,
    SeedError,
)
from .jones_kashaev import conjecture_gap, growth_rate, jones_sequence, kashaev_sequence
from .lobachevsky import lobachevsky
from .poly_core import (
    DegenerateError,
    DomainError,
    LaurentBiPoly,
    eval_poly,
    parse_poly,
    partial,
    print_poly,
    roots_in_l,
)

FOUR_PI2 = 4.0 * math.pi ** 2

ETA_TOL = 1e-6
RATIONAL_TOL = 1e-5
TAME_TOL = 1e-6
STEINBERG_TOL = 1e-8
KK_TOL = 1e-8


@dataclass(frozen=True)
class KnotRecord:
    name: str
    a_poly_text: str
    a_poly: LaurentBiPoly
    vol_k: float
    cs_k: float
    m0: complex
    l_seed: complex
    epsilon: float
    cs_note: str = ""


def _resolve_vol(vol_field) -> float:
    if isinstance(vol_field, dict) and "lobachevsky_coeff" in vol_field:
        theta = math.pi * vol_field["theta_pi_num"] / vol_field["theta_pi_den"]
        return vol_field["lobachevsky_coeff"] * lobachevsky(theta)
    return float(vol_field)


def _record_from_dict(rec: dict) -> KnotRecord:
    poly = parse_poly(rec["a_poly"])
    seed = rec["seed"]
    eps = float(seed.get("epsilon", 1e-4))
    if "m0" in seed:
        m0 = complex(seed["m0"][0], seed["m0"][1])
    else:
        m0 = 1.0 + eps
    if "l_seed" in seed:
        l_seed = complex(seed["l_seed"][0], seed["l_seed"][1])
    else:
        l_near = complex(seed["l_near"][0], seed["l_near"][1])
        im_sign = int(seed.get("im_sign", 0))
        roots = roots_in_l(poly, m0)
        if im_sign:
            filtered = [r for r in roots if r.imag * im_sign > 0]
            roots = filtered or roots
        l_seed = min(roots, key=lambda r: abs(r - l_near))
    return KnotRecord(
        name=rec["name"],
        a_poly_text=rec["a_poly"],
        a_poly=poly,
        vol_k=_resolve_vol(rec["vol"]),
        cs_k=float(rec["cs"]),
        m0=m0,
        l_seed=l_seed,
        epsilon=eps,
        cs_note=rec.get("cs_note", ""),
    )


def load_knots() -> Dict[str, KnotRecord]:
    text = resources.files("apolylab").joinpath("data/knots.txt").read_text()
    out: Dict[str, KnotRecord] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rec = _record_from_dict(json.loads(line))
        out[rec.name] = rec
    return out


# ---------------------------------------------------------------- config

def _c(pair) -> complex:
    return complex(pair[0], pair[1])


def _segment_from_json(seg: dict):
    kind = seg.get("kind")
    if kind == "line":
        return LineSeg(_c(seg["m_start"]), _c(seg["m_end"]))
    if kind == "arc":
        return ArcSeg(_c(seg["center"]), float(seg["radius"]),
                      float(seg["angle_start"]), float(seg["angle_end"]))
    raise ConfigError("unknown segment kind %r" % kind)


def _pathspec_from_json(spec: dict) -> PathSpec:
    try:
        segments = tuple(_segment_from_json(s) for s in spec["segments"])
        return PathSpec(segments=segments, l_seed=_c(spec["l_seed"]),
                        closed=bool(spec.get("closed", False)))
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError("bad path spec: %s" % exc)


def _controls_from_json(cfg: dict) -> StepControls:
    ctrl = cfg.get("controls", {})
    return StepControls(
        max_step=float(ctrl.get("max_step", 0.01)),
        min_step=float(ctrl.get("min_step", 1e-12)),
        newton_budget=int(ctrl.get("newton_budget", 20)),
    )


def _knot_from_config(cfg: dict) -> KnotRecord:
    knot = cfg.get("knot")
    if isinstance(knot, dict):
        try:
            return _record_from_dict(knot)
        except (KeyError, ValueError, PolySyntaxError) as exc:
            raise ConfigError("bad inline knot record: %s" % exc)
    if isinstance(knot, str):
        table = load_knots()
        if knot not in table:
            raise ConfigError("unknown knot %r" % knot)
        return table[knot]
    raise ConfigError("config needs a 'knot' entry")


# ---------------------------------------------------------------- output

def _fmt(x: float) -> str:
    return "%.17g" % float(x)


class _Csv:
    def __init__(self, path: Path, header: List[str]):
        self.path = path
        self.rows: List[List[str]] = [header]

    def add(self, *cells):
        self.rows.append([c if isinstance(c, str) else _fmt(c) for c in cells])

    def write(self):
        body = "\n".join(",".join(row) for row in self.rows) + "\n"
        self.path.write_text(body, newline="\n")


class _Summary:
    def __init__(self):
        self.lines: List[str] = []
        self.failures: List[str] = []

    def add(self, line: str, ok: Optional[bool] = None):
        if ok is True:
            line = line + "  PASS"
        elif ok is False:
            line = line + "  FAIL"
            self.failures.append(line)
        self.lines.append(line)

    def note(self, line: str):
        self.lines.append(line)

    def text(self) -> str:
        tail = ("all checks passed" if not self.failures
                else "%d check(s) failed" % len(self.failures))
        return "\n".join(self.lines + [tail]) + "\n"


def _run_id(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


# ---------------------------------------------------------------- stages

def _stage_one_forms(cfg, knot, ctrl, run_id, csv, summary):
    """eta/xi/vol/cs/U/cs1 per named loop, with rational recognition of
    xi periods and the symbol-order estimate feeding U."""
    tol = cfg.get("tolerances", {})
    eta_tol = float(tol.get("eta", ETA_TOL))
    q_max = int(tol.get("q_max", 48))
    rat_tol = float(tol.get("rational", RATIONAL_TOL))
    target = float(tol.get("quadrature_target", 1e-8))

    loops = cfg.get("loops", {})
    recognized: List[symbols_k2.RationalRecognition] = []
    per_loop = {}
    for name, spec_json in loops.items():
        spec = _pathspec_from_json(spec_json)
        path, res, used = one_forms.track_refined(
            knot.a_poly, spec, ctrl, forms=("eta", "xi"), target=target)
        eta, xi = res["eta"], res["xi"]
        csv.add(run_id, "eta:" + name, eta.value, 0.0, eta.est_error, eta.n_samples)
        csv.add(run_id, "xi:" + name, xi.value, 0.0, xi.est_error, xi.n_samples)
        summary.add("[eta] loop %s: |integral| = %.3g (est %.2g, n=%d)"
                    % (name, abs(eta.value), eta.est_error, eta.n_samples),
                    ok=abs(eta.value) < max(eta_tol, 10.0 * eta.est_error))
        ratio = xi.value / FOUR_PI2
        halved = lift_path(knot.a_poly, spec, refine(used))
        ratio_h = one_forms.integrate_xi(halved).value / FOUR_PI2
        try:
            rec = symbols_k2.recognize_rational(ratio, q_max, rat_tol)
            rec_h = symbols_k2.recognize_rational(ratio_h, q_max, rat_tol)
            rec = symbols_k2.mark_stable(rec, rec_h)
            recognized.append(rec)
            csv.add(run_id, "xi/4pi2_rational:" + name, rec.p, rec.q,
                    rec.residual, int(rec.stable))
            summary.add("[xi] loop %s: /4pi^2 = %.12g -> %d/%d residual %.2g%s"
                        % (name, ratio, rec.p, rec.q, rec.residual,
                           "" if rec.stable else " (unstable)"),
                        ok=rec.stable and rec.residual < rat_tol)
        except NoRational as exc:
            best = exc.best
            csv.add(run_id, "xi/4pi2_rational:" + name, best.p, best.q,
                    best.residual, 0)
            summary.add("[xi] loop %s: /4pi^2 = %.12g has no q<=%d rational "
                        "within %g (best %d/%d)"
                        % (name, ratio, q_max, rat_tol, best.p, best.q))
        per_loop[name] = (path, res)

    try:
        q_order = symbols_k2.estimate_symbol_order(recognized)
    except ValueError:
        q_order = 1
    summary.note("[order] estimated order of {l,m} (lower bound): %d" % q_order)

    for name, (path, res) in per_loop.items():
        vol = one_forms.vol_along(path, knot.vol_k)
        cs = one_forms.cs_along(path, knot.cs_k)
        u = one_forms.special_cs_U(path, q_order)
        cs1 = one_forms.cs1_along(path)
        csv.add(run_id, "vol:" + name, vol, 0.0, res["eta"].est_error, path.n_samples)
        csv.add(run_id, "cs:" + name, cs, 0.0, res["xi"].est_error, path.n_samples)
        csv.add(run_id, "u:" + name, u.value, u.torus_class,
                res["xi"].est_error, path.n_samples)
        csv.add(run_id, "cs1:" + name, cs1.real, cs1.imag,
                max(res["eta"].est_error, res["xi"].est_error), path.n_samples)
    return q_order


def _stage_symbols(cfg, knot, ctrl, run_id, csv, summary):
    punctures = cfg.get("punctures", {})
    tol = cfg.get("tolerances", {})
    tame_tol = float(tol.get("tame", TAME_TOL))
    steinberg_tol = float(tol.get("steinberg", STEINBERG_TOL))
    for name, entry in punctures.items():
        curve_text = entry.get("a_poly")
        curve = knot.a_poly if curve_text in (None, "knot") else parse_poly(curve_text)
        spec = _pathspec_from_json(entry["loop"])
        loop = lift_path(curve, spec, ctrl)
        v_l = symbols_k2.valuation(curve, loop, "l")
        v_m = symbols_k2.valuation(curve, loop, "m")
        tame = symbols_k2.tame_symbol(curve, loop, v_l, v_m, ctrl)
        reg = one_forms.regulator(loop)
        match = abs(reg.value - tame)
        csv.add(name, v_l.v, v_m.v, tame.real, tame.imag,
                reg.value.real, reg.value.imag, match)
        summary.add("[tame] %s: v_l=%d v_m=%d T=%.9g%+.3gj |r-T|=%.3g"
                    % (name, v_l.v, v_m.v, tame.real, tame.imag, match),
                    ok=match < tame_tol)
        if entry.get("steinberg"):
            defect = abs(reg.value - 1.0)
            summary.add("[steinberg] %s: |r(l,m) - 1| = %.3g" % (name, defect),
                        ok=defect < steinberg_tol)


def _stage_kirk_klassen(cfg, knot, ctrl, run_id, csv, summary):
    paths = cfg.get("paths", {})
    tol = float(cfg.get("tolerances", {}).get("kirk_klassen", KK_TOL))
    for name, spec_json in paths.items():
        spec = _pathspec_from_json(spec_json)
        # refine until the exponent's quadrature estimate supports tol
        current = ctrl
        path = lift_path(knot.a_poly, spec, current)
        est = one_forms.kk_exponent(path).est_error
        for _ in range(8):
            if est <= tol:
                break
            current = refine(current)
            path = lift_path(knot.a_poly, spec, current)
            est = one_forms.kk_exponent(path).est_error
        kk = one_forms.kirk_klassen(path)
        csv.add(run_id, "kk:" + name, kk.value.real, kk.value.imag,
                est, path.n_samples)
        csv.add(run_id, "kk_expr_diff:" + name, kk.expr_diff, 0.0, est,
                path.n_samples)
        summary.add("[kk] path %s: two expressions differ by %.3g"
                    % (name, kk.expr_diff), ok=kk.expr_diff < tol)


def _stage_jones(cfg, knot, run_id, csv, summary, timings):
    jcfg = cfg.get("jones", {})
    n_list = [int(n) for n in jcfg.get("N_list", [500, 1000, 2000, 4000])]
    t0 = time.perf_counter()
    seq = kashaev_sequence(n_list)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    for N, value in seq:
        csv.add(N, N, 1.0, value.log_abs, value.arg,
                elapsed_ms / len(seq) if timings else 0.0)
    fit = growth_rate(seq, a=1.0)
    gap, report = conjecture_gap(fit, knot.vol_k, knot.cs_k)
    summary.add("[jones] Kashaev fit slope %.12g vs 6 Lambda(pi/3) %.12g "
                "(diff %.3g), log N coefficient %.3f"
                % (fit.slope, knot.vol_k, abs(fit.slope - knot.vol_k),
                   fit.log_correction),
                ok=abs(fit.slope - knot.vol_k) < 1e-3)
    for line in report.splitlines():
        summary.note("[jones]   " + line)
    return fit


def _conjecture_path(knot: KnotRecord, a: float) -> Tuple[PathSpec, float]:
    """Route from the offset base point to m = -e^{i pi a} along the circle
    of radius |m0|, then radially onto the unit circle.

    a = 1 targets m = 1, the singular geometric point, so the route stays
    at the offset base point and the integrals are empty.
    """
    ang = math.remainder(math.pi * (a + 1.0), 2.0 * math.pi)
    r0 = abs(knot.m0)
    if ang == 0.0:
        return PathSpec(segments=(LineSeg(knot.m0, knot.m0),),
                        l_seed=knot.l_seed, closed=False), ang
    arc = ArcSeg(0.0, r0, 0.0, ang)
    drop = LineSeg(arc.last, arc.last / r0)
    return PathSpec(segments=(arc, drop), l_seed=knot.l_seed, closed=False), ang


def _stage_conjecture(cfg, knot, ctrl, run_id, csv, jones_csv, summary,
                      q_order, timings):
    jcfg = cfg.get("jones", {})
    n_list = [int(n) for n in jcfg.get("N_list", [500, 1000, 2000, 4000])]
    a_values = [float(a) for a in jcfg.get("a_values", [0.9, 1.0, 1.1])]
    for a in a_values:
        spec, ang = _conjecture_path(knot, a)
        path = lift_path(knot.a_poly, spec, ctrl)
        vol = one_forms.vol_along(path, knot.vol_k)
        cs = one_forms.cs_along(path, knot.cs_k)
        u = one_forms.special_cs_U(path, q_order)
        label = "a=%g" % a
        csv.add(run_id, "vol:" + label, vol, 0.0,
                one_forms.integrate_eta(path).est_error, path.n_samples)
        csv.add(run_id, "cs:" + label, cs, 0.0,
                one_forms.integrate_xi(path).est_error, path.n_samples)
        csv.add(run_id, "u:" + label, u.value, u.torus_class,
                one_forms.integrate_xi(path).est_error, path.n_samples)
        t0 = time.perf_counter()
        seq = jones_sequence(n_list, a)
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        if a != 1.0:
            for N, value in seq:
                jones_csv.add(N, round(N / a), a, value.log_abs, value.arg,
                              elapsed_ms / len(seq) if timings else 0.0)
        fit = growth_rate(seq, a)
        gap, report = conjecture_gap(fit, vol, cs, u.value)
        finite = all(map(math.isfinite, (vol, cs, u.value, fit.slope)))
        endpoint = complex(path.m[-1])
        summary.add("[conjecture] %s: m_end=%.6g%+.6gj Vol=%.12g CS=%.12g "
                    "U=%.12g" % (label, endpoint.real, endpoint.imag, vol, cs,
                                 u.value),
                    ok=finite)
        if ang == 0.0:
            summary.note("[conjecture]   a=1 targets the singular geometric "
                         "point; integrals stop at the offset base point "
                         "(epsilon=%g)" % knot.epsilon)
        for line in report.splitlines():
            summary.note("[conjecture]   " + line)


STAGES = ("one_forms", "symbols", "kirk_klassen", "jones", "conjecture")


def run(cfg: dict, config_dir: Path, timings: bool = False) -> int:
    """Execute the targets of a parsed config; returns the exit code."""
    targets = cfg.get("targets", [])
    if not targets:
        raise ConfigError("targets list is empty")
    unknown = [t for t in targets if t not in STAGES]
    if unknown:
        raise ConfigError("unknown targets: %s" % ", ".join(unknown))
    knot = _knot_from_config(cfg)
    ctrl = _controls_from_json(cfg)
    out_dir = config_dir / cfg.get("out_dir", "out")
    out_dir.mkdir(parents=True, exist_ok=True)
    run_id = _run_id(cfg)

    forms_csv = _Csv(out_dir / "one_forms.csv",
                     ["run_id", "op", "value_re", "value_im", "est_error",
                      "n_samples"])
    symbols_csv = _Csv(out_dir / "symbols.csv",
                       ["puncture_id", "v_l", "v_m", "tame_re", "tame_im",
                        "regulator_re", "regulator_im", "match_abs_err"])
    jones_csv = _Csv(out_dir / "jones.csv",
                     ["N", "k", "a", "log_abs", "arg", "runtime_ms"])
    summary = _Summary()
    summary.note("run %s on knot %s (A = %s)" % (run_id, knot.name,
                                                 knot.a_poly_text))
    summary.note("vol_K = %.15g (Lobachevsky series), cs_K = %g%s"
                 % (knot.vol_k, knot.cs_k,
                    " [%s]" % knot.cs_note if knot.cs_note else ""))

    hard_error = None
    q_order = 1
    for stage in targets:
        try:
            if stage == "one_forms":
                q_order = _stage_one_forms(cfg, knot, ctrl, run_id,
                                           forms_csv, summary)
            elif stage == "symbols":
                _stage_symbols(cfg, knot, ctrl, run_id, symbols_csv, summary)
            elif stage == "kirk_klassen":
                _stage_kirk_klassen(cfg, knot, ctrl, run_id, forms_csv, summary)
            elif stage == "jones":
                _stage_jones(cfg, knot, run_id, jones_csv, summary, timings)
            elif stage == "conjecture":
                _stage_conjecture(cfg, knot, ctrl, run_id, forms_csv,
                                  jones_csv, summary, q_order, timings)
        except (RamificationError, NonConvergence, SeedError, DegenerateError,
                DomainError, AmbiguousWinding, ExtrapolationUnstable,
                ArithmeticError) as exc:
            hard_error = (stage, exc)
            summary.add("[%s] stage failed: %s" % (stage, exc), ok=False)
            break

    forms_csv.write()
    symbols_csv.write()
    jones_csv.write()
    (out_dir / "summary.txt").write_text(summary.text(), newline="\n")
    print(summary.text(), end="")
    if hard_error:
        print("stage %s failed: %s" % hard_error, file=sys.stderr)
        return 1
    return 0 if not summary.failures else 1


# ---------------------------------------------------------------- demo

def build_demo_config() -> dict:
    """Figure-eight demonstration: four loops (two puncture circles around
    m = 0, one on each sheet, and two contractible circles), one open arc
    for the holonomy consistency check, five punctures across three
    curves, the Kashaev fit and the three-point conjecture scan."""
    knots = load_knots()
    fig8 = knots["fig8"]

    def seed_at(m_start: complex, which: str, curve=fig8.a_poly) -> List[float]:
        roots = sorted(roots_in_l(curve, m_start), key=abs)
        root = roots[0] if which == "small" else roots[-1]
        return [root.real, root.imag]

    def circle(center: complex, radius: float, seed: List[float]) -> dict:
        return {
            "segments": [{"kind": "arc", "center": [center.real, center.imag],
                          "radius": radius, "angle_start": 0.0,
                          "angle_end": 2.0 * math.pi}],
            "l_seed": seed, "closed": True,
        }

    loops = {
        "m0_small": circle(0j, 0.3, seed_at(0.3 + 0j, "small")),
        "m0_big": circle(0j, 0.35, seed_at(0.35 + 0j, "big")),
        "contract_a": circle(2.0 + 0j, 0.25, seed_at(2.25 + 0j, "small")),
        "contract_b": circle(0.25 + 0.25j, 0.12,
                             seed_at(0.37 + 0.25j, "small")),
    }
    arc_path = {
        "segments": [{"kind": "arc", "center": [0.0, 0.0], "radius": 0.3,
                      "angle_start": 0.3, "angle_end": 1.0}],
        "l_seed": seed_at(0.3 * complex(math.cos(0.3), math.sin(0.3)), "small"),
        "closed": False,
    }
    lin1 = parse_poly("m + l - 1")
    lin2 = parse_poly("m + l - 2")
    punctures = {
        "fig8_m0_small": {"a_poly": "knot", "loop": loops["m0_small"]},
        "lin1_l0": {"a_poly": "m + l - 1", "steinberg": True,
                    "loop": circle(1.0 + 0j, 0.1,
                                   seed_at(1.1 + 0j, "small", lin1))},
        "lin1_l1": {"a_poly": "m + l - 1", "steinberg": True,
                    "loop": circle(0j, 0.1, seed_at(0.1 + 0j, "small", lin1))},
        "lin2_l0": {"a_poly": "m + l - 2",
                    "loop": circle(2.0 + 0j, 0.1,
                                   seed_at(2.1 + 0j, "small", lin2))},
        "lin2_l2": {"a_poly": "m + l - 2",
                    "loop": circle(0j, 0.1, seed_at(0.1 + 0j, "small", lin2))},
    }
    return {
        "knot": "fig8",
        "targets": ["one_forms", "symbols", "kirk_klassen", "jones",
                    "conjecture"],
        "loops": loops,
        "paths": {"arc_a": arc_path},
        "punctures": punctures,
        "jones": {"N_list": [500, 1000, 2000, 4000],
                  "a_values": [0.9, 1.0, 1.1]},
        "out_dir": ".",
    }


# ---------------------------------------------------------------- probe

def probe_branch_points(knot: KnotRecord, re_range, im_range, density: int,
                        threshold: float):
    """Grid points m where min over sheets of |dA/dl| is below threshold."""
    if density * density > 10 ** 6:
        raise ConfigError("grid density above 10^6 points")
    a_l = partial(knot.a_poly, "l")
    res = []
    for re in np.linspace(re_range[0], re_range[1], density):
        for im in np.linspace(im_range[0], im_range[1], density):
            m = complex(re, im)
            if m == 0:
                continue
            try:
                roots = roots_in_l(knot.a_poly, m)
            except (DegenerateError, DomainError, NonConvergence):
                continue
            if not roots:
                continue
            val = min(abs(eval_poly(a_l, r, m)) for r in roots)
            if val < threshold:
                res.append((m, val))
    return res


# ---------------------------------------------------------------- verbs

def _cmd_run(args) -> int:
    config_path = Path(args.config)
    try:
        cfg = json.loads(config_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    try:
        return run(cfg, config_path.resolve().parent, timings=args.timings)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2


def _cmd_demo(args) -> int:
    cfg = build_demo_config()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "demo_config.json").write_text(
        json.dumps(cfg, indent=2, sort_keys=True) + "\n", newline="\n")
    try:
        return run(cfg, out_dir, timings=args.timings)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2


def _cmd_probe(args) -> int:
    table = load_knots()
    if args.knot not in table:
        print("unknown knot %r" % args.knot, file=sys.stderr)
        return 2
    hits = probe_branch_points(table[args.knot], (args.re[0], args.re[1]),
                               (args.im[0], args.im[1]), args.density,
                               args.threshold)
    csv = _Csv(Path(args.out), ["m_re", "m_im", "min_abs_dAdl"])
    for m, val in hits:
        csv.add(m.real, m.imag, val)
    csv.write()
    print("%d grid point(s) below threshold -> %s" % (len(hits), args.out))
    return 0


def _cmd_parse(args) -> int:
    text = Path(args.polyfile).read_text().strip()
    try:
        poly = parse_poly(text)
    except PolySyntaxError as exc:
        print("syntax error at offset %d: %s" % (exc.offset, exc.msg),
              file=sys.stderr)
        return 1
    print("%d term(s): %s" % (len(poly.terms), print_poly(poly)))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="apolylab",
        description="line integrals, tame symbols and colored Jones "
                    "asymptotics on A-polynomial curves")
    sub = parser.add_subparsers(dest="verb", required=True)

    p_run = sub.add_parser("run", help="execute a JSON run config")
    p_run.add_argument("config")
    p_run.add_argument("--timings", action="store_true",
                       help="fill runtime_ms columns (breaks byte identity)")
    p_run.set_defaults(func=_cmd_run)

    p_demo = sub.add_parser("demo", help="built-in figure-eight run")
    p_demo.add_argument("-o", "--out", default="demo_out")
    p_demo.add_argument("--timings", action="store_true")
    p_demo.set_defaults(func=_cmd_demo)

    p_probe = sub.add_parser("probe", help="scan for small |dA/dl|")
    p_probe.add_argument("knot")
    p_probe.add_argument("--re", nargs=2, type=float, default=[-2.0, 2.0])
    p_probe.add_argument("--im", nargs=2, type=float, default=[-2.0, 2.0])
    p_probe.add_argument("--density", type=int, default=50)
    p_probe.add_argument("--threshold", type=float, default=1e-2)
    p_probe.add_argument("-o", "--out", default="branch_points.csv")
    p_probe.set_defaults(func=_cmd_probe)

    p_parse = sub.add_parser("parse", help="syntax-check a polynomial file")
    p_parse.add_argument("polyfile")
    p_parse.set_defaults(func=_cmd_parse)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
