"""Command-line front end: catalog queries, evaluations, counts, predictors.

Reports are emitted as JSON (default) or CSV on stdout or to --out; --plot
renders a static SVG figure next to the delimited output.  Heavy context
pieces (census, scattering series, invariants) are cached on disk under a
content-addressed key; --no-cache bypasses the cache.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
from fractions import Fraction

from . import __version__
from . import counting, predict, scattering, zeta
from .dseries import evaluate_with_tail
from .errors import SzlError
from .groups import (
    GeodesicClass,
    GroupKind,
    SurfaceInvariants,
    Trichotomy,
    parse_group_id,
    systole_search,
    volume,
    with_systole,
)
from .numerics import EvalSettings

EVAL_TARGETS = ("phi", "K", "H", "Z", "D", "zh_deriv", "x_mk", "eta_logderiv", "f")
COUNT_TARGETS = ("H", "riemann_zeta", "test")
PREDICT_LAWS = (
    "nver",
    "nhor",
    "weyl",
    "weyl_new",
    "hejhal_h",
    "comparison",
    "short_sum",
    "ratio",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="szl",
        description="Selberg zeta / scattering determinant toolkit",
    )
    parser.add_argument("--config", help="key=value defaults file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--group", required=True, help="psl2z | gamma0:N | gamma0plus:f | compact:g[:orders]")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--plot", action="store_true", help="render an SVG figure")
        p.add_argument("--plot-file", default=None, help="figure path (default derived from --out/command)")
        p.add_argument("--census-cutoff", type=float, default=1.0e4)
        p.add_argument("--series-cutoff", type=float, default=1.0e6)
        p.add_argument("--c-max", type=float, default=None)
        p.add_argument("--m0-override", type=int, default=None)
        p.add_argument("--l0", type=float, default=None, help="systole length for compact descriptors")
        p.add_argument("--m0", type=int, default=None, help="systole multiplicity for compact descriptors")
        p.add_argument("--rel-tol", type=float, default=1.0e-10)
        p.add_argument("--no-cache", action="store_true")

    p_info = sub.add_parser("group-info", help="signature, volume, systole, invariants")
    common(p_info)

    p_eval = sub.add_parser("eval", help="evaluate phi, K, H, Z, D, derivatives, ...")
    common(p_eval)
    p_eval.add_argument("--target", choices=EVAL_TARGETS, required=True)
    p_eval.add_argument("--s", required=True, help="complex point re,im")
    p_eval.add_argument("--k", type=int, default=1)

    p_count = sub.add_parser("count", help="argument-principle zero counts")
    common(p_count)
    p_count.add_argument("--target", choices=COUNT_TARGETS, default="H")
    p_count.add_argument("--T", type=float, required=True)

    p_pred = sub.add_parser("predict", help="asymptotic predictors")
    common(p_pred)
    p_pred.add_argument("--law", choices=PREDICT_LAWS, required=True)
    p_pred.add_argument("--T", type=float, default=100.0)
    p_pred.add_argument("--k", type=int, default=1)
    p_pred.add_argument("--U", type=float, default=None)

    p_psi = sub.add_parser("psi", help="prime geodesic counting function")
    common(p_psi)
    p_psi.add_argument("--x", type=float, required=True)

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Append defaults from a key=value config file; explicit flags win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    argv = argv[:idx] + argv[idx + 2 :]
    extra: list[str] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            flag = "--" + key.lstrip("-")
            if flag not in argv:
                if value.lower() in ("true", "yes", "on"):
                    extra.append(flag)
                else:
                    extra.extend((flag, value))
    return argv + extra


def _parse_complex(text: str) -> complex:
    if "," in text:
        re_part, im_part = text.split(",", 1)
        return complex(float(re_part), float(im_part))
    return complex(float(text), 0.0)


def _cache_dir() -> str:
    return os.environ.get("SZL_CACHE", ".szl-cache")


def _context_key(args) -> str:
    blob = json.dumps(
        {
            "group": args.group.strip().lower(),
            "census_cutoff": args.census_cutoff,
            "series_cutoff": args.series_cutoff,
            "c_max": args.c_max,
            "m0_override": args.m0_override,
            "l0": args.l0,
            "m0": args.m0,
            "version": __version__,
        },
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def _descriptor(args):
    g = parse_group_id(args.group)
    if g.kind is GroupKind.ABSTRACT_COMPACT and (args.l0 is not None or args.m0 is not None):
        g = with_systole(
            g,
            args.l0 if args.l0 is not None else g.systole_length,
            args.m0 if args.m0 is not None else g.systole_mult,
        )
    return g


def load_context(args) -> zeta.ZetaContext:
    settings = EvalSettings(target_rel_tol=args.rel_tol)
    g = _descriptor(args)
    cache_path = os.path.join(_cache_dir(), _context_key(args) + ".json")
    if not args.no_cache and os.path.exists(cache_path):
        with open(cache_path, "r", encoding="utf-8") as fh:
            return _context_from_json(json.load(fh), g, settings)
    ctx = zeta.build_context(
        g,
        census_cutoff=args.census_cutoff,
        q_max=args.series_cutoff,
        c_max=args.c_max,
        m0_override=args.m0_override,
        settings=settings,
    )
    if not args.no_cache:
        os.makedirs(_cache_dir(), exist_ok=True)
        payload = json.dumps(ctx.to_json_dict(), sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=_cache_dir(), suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, cache_path)
    return ctx


def _context_from_json(data: dict, g, settings: EvalSettings) -> zeta.ZetaContext:
    census = tuple(
        GeodesicClass(
            trace_sq_scaled=Fraction(item["trace_sq_num"], item["trace_sq_den"]),
            norm=item["norm"],
            length=item["length"],
            primitive=item["primitive"],
            primitive_norm=item["primitive_norm"],
            multiplicity=item["multiplicity"],
        )
        for item in data["census"]
    )
    inv_d = data["invariants"]
    inv = SurfaceInvariants(
        systole_length=inv_d["systole_length"],
        systole_mult=inv_d["systole_mult"],
        m0_is_lower_bound=inv_d["m0_is_lower_bound"],
        g_ratio_sq=math.inf if inv_d["g_ratio_sq"] is None else inv_d["g_ratio_sq"],
        trichotomy=Trichotomy(inv_d["trichotomy"]),
        A=inv_d["A"],
        a=inv_d["a"],
    )
    return zeta.ZetaContext(
        group=g,
        scat=scattering.ScatteringData.from_json_dict(data["scattering"]),
        inv=inv,
        census=census,
        census_cutoff=data["census_cutoff"],
        settings=settings,
    )


def _base_report(args, command: str) -> dict:
    return {
        "command": command,
        "group": args.group.strip().lower(),
        "inputs": {},
        "outputs": {},
        "diagnostics": {
            "cutoffs": {
                "census": args.census_cutoff,
                "series": args.series_cutoff,
                "c_max": args.c_max,
            },
            "tolerances": {"target_rel_tol": args.rel_tol},
            "tail_estimates": {},
        },
        "version": __version__,
    }


def cmd_group_info(args) -> dict:
    ctx = load_context(args)
    g = ctx.group
    report = _base_report(args, "group-info")
    sig = g.signature
    outputs = {
        "genus": sig.genus,
        "elliptic_orders": list(sig.elliptic_orders),
        "cusp_count": sig.cusp_count,
        "volume": volume(g),
        "systole_length": ctx.inv.systole_length,
        "systole_mult": ctx.inv.systole_mult,
        "m0_is_lower_bound": ctx.inv.m0_is_lower_bound,
        "exp_systole": math.exp(ctx.inv.systole_length),
        "g1": ctx.scat.g1,
        "g2": ctx.scat.g2,
        "g_ratio_sq": None if math.isinf(ctx.inv.g_ratio_sq) else ctx.inv.g_ratio_sq,
        "trichotomy": ctx.inv.trichotomy.value,
        "A": ctx.inv.A,
        "a": ctx.inv.a,
        "a_k": {str(k): v for k, v in ctx.inv.a_k_map(4).items()},
        "c1": ctx.scat.c1,
        "c2": ctx.scat.c2,
        "d1_sign": ctx.scat.d1_sign,
        "b2": scattering.b2_constant(ctx.scat),
    }
    if g.has_matrix_model:
        sy = systole_search(g, 12.0)
        w = sy.witness
        outputs["systole_trace"] = sy.trace
        outputs["systole_witness"] = [w.a, w.b, w.c, w.d, w.e]
    report["outputs"] = outputs
    sigma0 = zeta.empirical_abscissa(ctx)
    report["diagnostics"]["empirical_abscissa"] = None if math.isinf(sigma0) else sigma0
    return report


def cmd_eval(args) -> dict:
    ctx = load_context(args)
    s = _parse_complex(args.s)
    report = _base_report(args, "eval")
    report["inputs"] = {"target": args.target, "s": [s.real, s.imag], "k": args.k}
    tails = report["diagnostics"]["tail_estimates"]
    target = args.target
    if target == "phi":
        value = scattering.phi(ctx.group, s, ctx.scat, ctx.settings)
        validity = "closed form (series for gamma0plus:6, Re s > 1)"
    elif target == "K":
        value = scattering.k_factor(ctx.group, ctx.scat, s, ctx.settings)
        validity = "entire in s up to Gamma poles"
    elif target == "H":
        value, tail = evaluate_with_tail(ctx.scat.H, s, ctx.settings)
        tails["H"] = tail
        validity = "absolutely convergent for Re s > 1"
    elif target == "Z":
        log_z, tail = zeta.selberg_log_z_with_tail(ctx, s)
        tails["log_Z"] = tail
        value = cmath.exp(log_z)
        validity = "Euler product, Re s > 1"
    elif target == "D":
        value = zeta.d_m(ctx, s)
        tails["D"] = zeta._census_tail(ctx, s.real)
        validity = "census sum, Re s > 1"
    elif target == "zh_deriv":
        value = zeta.zh_and_derivatives(ctx, args.k, s)
        validity = "series region, Re s > 1"
    elif target == "x_mk":
        value = zeta.x_mk(ctx, args.k, s)
        validity = "series region, Re s > 1"
    elif target == "eta_logderiv":
        value = zeta.eta_logderiv(ctx, s)
        validity = "meromorphic; poles on the real axis"
    else:  # f
        value = zeta.f_m(ctx, s)
        validity = "meromorphic; poles at integers"
    report["outputs"] = {
        "re": value.real,
        "im": value.imag,
        "abs": abs(value),
        "validity": validity,
    }
    return report


def cmd_count(args) -> dict:
    ctx = load_context(args)
    report = _base_report(args, "count")
    report["inputs"] = {"target": args.target, "T": args.T}
    if args.target == "H":
        n_ver, n_hor = counting.h_zero_count(ctx, args.T, settings=ctx.settings)
        predictor = predict.predict_hejhal_h(ctx)
        report["outputs"] = {
            "n_ver": n_ver,
            "n_hor": n_hor,
            "hejhal_prediction_at_T": predictor.at(args.T),
            "hejhal_coefficients": predictor.to_json_dict(),
        }
    elif args.target == "riemann_zeta":
        rect = counting.Rectangle(-1.0, 2.0, 1.0, args.T)
        res = counting.littlewood_count(
            lambda z: counting.riemann_zeta(z, ctx.settings), rect, ctx.settings
        )
        report["outputs"] = res.to_json_dict(rect)
        report["outputs"]["oracle_zero_count"] = len(counting.zeta_zeros_below(args.T))
    else:  # test target: two explicit zeros
        rect = counting.Rectangle(0.0, 3.0, 0.0, max(args.T, 3.0))
        res = counting.littlewood_count(
            lambda z: (z - (1 + 1j)) * (z - (1.5 + 2j)), rect, ctx.settings
        )
        report["outputs"] = res.to_json_dict(rect)
    return report


def cmd_predict(args) -> dict:
    ctx = load_context(args)
    report = _base_report(args, "predict")
    report["inputs"] = {"law": args.law, "T": args.T, "k": args.k, "U": args.U}
    law = args.law
    if law in ("nver", "nhor", "weyl", "weyl_new", "hejhal_h"):
        fn = {
            "nver": lambda: predict.predict_nver_deriv(ctx, args.k),
            "nhor": lambda: predict.predict_nhor_deriv(ctx, args.k),
            "weyl": lambda: predict.predict_weyl(ctx),
            "weyl_new": lambda: predict.predict_weyl_new(ctx),
            "hejhal_h": lambda: predict.predict_hejhal_h(ctx),
        }[law]
        exp = fn()
        report["outputs"] = {
            "expansion": exp.to_json_dict(),
            "value_at_T": exp.at(args.T),
        }
        if law == "weyl_new":
            report["outputs"]["discrepancy_T_coefficient"] = predict.weyl_discrepancy(ctx)
    elif law == "comparison":
        res_tlogt, res_t = predict.comparison_residual(ctx, args.k)
        report["outputs"] = {"residual_TlogT": res_tlogt, "residual_T": res_t}
    elif law == "short_sum":
        u = args.U if args.U is not None else args.T / 10.0
        report["inputs"]["U"] = u
        report["outputs"] = {"short_sum": predict.short_sum(ctx, args.T, u)}
    else:  # ratio
        report["outputs"] = {
            "ratio": predict.ratio_vanishing(ctx, args.k, args.T),
        }
    return report


def cmd_psi(args) -> dict:
    ctx = load_context(args)
    report = _base_report(args, "psi")
    report["inputs"] = {"x": args.x}
    value = zeta.psi_m(ctx, args.x)
    census_used = sum(1 for cl in ctx.census if cl.norm <= args.x)
    report["outputs"] = {
        "psi": value,
        "psi_over_x": value / args.x if args.x > 0 else None,
        "census_classes_used": census_used,
        "census_classes_total": len(ctx.census),
        "min_norm": ctx.census[0].norm if ctx.census else None,
    }
    return report


# ---------------------------------------------------------------------------
# rendering


def _flatten(prefix: str, value, rows: list[tuple[str, str, str, str]], provenance: str) -> None:
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], rows, provenance)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, json.dumps(value), "", provenance))
    else:
        rows.append((prefix, json.dumps(value), "", provenance))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["name", "value", "unit", "provenance"])
    rows: list[tuple[str, str, str, str]] = []
    _flatten("", report["inputs"], rows, "input")
    _flatten("", report["outputs"], rows, report["command"])
    _flatten("diagnostics", report["diagnostics"], rows, "diagnostics")
    rows.append(("version", json.dumps(report["version"]), "", "meta"))
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _plot_path(args) -> str:
    if args.plot_file:
        return args.plot_file
    if args.out:
        base, _ = os.path.splitext(args.out)
        return base + ".svg"
    safe_group = args.group.replace(":", "_").replace(",", "-")
    return f"szl_{args.command}_{safe_group}.svg"


def make_plot(args, report: dict) -> str | None:
    """Render the count-vs-predictor figure for count/predict/psi commands."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    command = report["command"]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if command == "count" and args.target == "H":
        ctx = load_context(args)
        t_grid = [args.T * frac for frac in (0.4, 0.55, 0.7, 0.85, 1.0)]
        measured = [counting.h_zero_count(ctx, t)[1] for t in t_grid]
        predictor = predict.predict_hejhal_h(ctx)
        ax.plot(t_grid, measured, "o-", label="Littlewood count")
        ax.plot(t_grid, [predictor.at(t) for t in t_grid], "s--", label="predictor")
        ax.set_xlabel("T")
        ax.set_ylabel("N_hor(T; H)")
    elif command == "predict":
        ctx = load_context(args)
        exp = {
            "nver": predict.predict_nver_deriv,
            "nhor": predict.predict_nhor_deriv,
        }.get(args.law)
        t_grid = [args.T * i / 32.0 for i in range(1, 33)]
        if exp is not None:
            ax.plot(t_grid, [exp(ctx, args.k).at(t) for t in t_grid], label=args.law)
        else:
            ax.plot(t_grid, [predict.predict_weyl_new(ctx).at(t) for t in t_grid], label="weyl_new")
        ax.set_xlabel("T")
        ax.set_ylabel("predicted count")
    elif command == "psi":
        ctx = load_context(args)
        xs = [args.x * i / 24.0 for i in range(1, 25) if args.x * i / 24.0 >= ctx.census[0].norm]
        ax.plot(xs, [zeta.psi_m(ctx, x) / x for x in xs], label="psi(x)/x")
        ax.axhline(1.0, color="k", lw=0.8, ls=":")
        ax.set_xlabel("x")
        ax.set_ylabel("psi(x)/x")
    else:
        plt.close(fig)
        return None
    ax.legend(loc="best")
    fig.tight_layout()
    path = _plot_path(args)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


DISPATCH = {
    "group-info": cmd_group_info,
    "eval": cmd_eval,
    "count": cmd_count,
    "predict": cmd_predict,
    "psi": cmd_psi,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    argv = _apply_config(parser, argv)
    args = parser.parse_args(argv)
    try:
        report = DISPATCH[args.command](args)
    except SzlError as exc:
        print(f"szl: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        path = make_plot(args, report)
        if path:
            print(f"szl: figure written to {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
