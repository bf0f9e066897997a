"""Command-line interface: predict, bench, sensitivity, synth.

Exit codes: 0 success, 1 runtime failure (bad data, I/O), 2 usage or
configuration error. All outputs are deterministic for fixed flags and seed,
except wall-time fields.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import jsonschema
import numpy as np

from .baselines import run_method, RunConfig
from .classify import f2lp_predict
from .datasets import load_dataset, resample_split, save_dataset, synth_planted_partition
from .graph import edge_homophily
from .metrics import EvalReport, MethodStats, accuracy, confusion_matrix, macro_f1
from .prototypes import WeiszfeldConfig
from .propagation import KernelConfig
from .validation import ConfigurationError, DatasetFormatError

CLI_METHODS = {
    "f2lp": "f2lp",
    "fixed-appnp": "fixed_appnp_proto",
    "proto-geomed": "proto_geomed",
    "proto-mean": "proto_mean",
    "labelprop": "labelprop",
    "knn5": "knn5",
}


def _kernel_config(args) -> KernelConfig:
    try:
        return KernelConfig(
            k_min=args.k_min, k_max=args.k_max,
            alpha_min=args.alpha_min, alpha_max=args.alpha_max,
        )
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc


def _parse_floats(text, flag) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise ConfigurationError(f"{flag}: {exc}") from exc
    if not values:
        raise ConfigurationError(f"{flag}: empty value list")
    return values


def _parse_ints(text, flag) -> list[int]:
    return [int(v) for v in _parse_floats(text, flag)]


def _test_eval_mask(ds):
    """Test-split nodes that actually carry a label."""
    return ds.split.test & (ds.labels.y >= 0)


def cmd_predict(args) -> int:
    kernel = _kernel_config(args)
    ds = load_dataset(args.data)
    result = f2lp_predict(ds, kernel, WeiszfeldConfig(), prototype_method=args.prototype)

    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    pred = result.prediction.labels
    top = result.scores[np.arange(pred.size), pred]
    rows = ["node_id\tpredicted_class\ttop_score"]
    rows += [f"{i}\t{pred[i]}\t{top[i]:.6f}" for i in range(pred.size)]
    out_path.write_text("\n".join(rows) + "\n", encoding="utf-8")

    params_path = Path(args.params_out) if args.params_out else out_path.with_suffix(".params.tsv")
    prows = ["node_id\tlcc\talpha\tk"]
    prows += [
        f"{i}\t{result.lcc[i]:.6f}\t{result.propagation.alpha[i]:.6f}\t{result.propagation.k[i]}"
        for i in range(pred.size)
    ]
    params_path.write_text("\n".join(prows) + "\n", encoding="utf-8")

    mask = _test_eval_mask(ds)
    if mask.any():
        acc = accuracy(pred, ds.labels.y, mask)
        f1 = macro_f1(pred, ds.labels.y, mask, ds.labels.num_classes)
        print(f"test accuracy: {acc:.4f}")
        print(f"test macro-F1: {f1:.4f}")
    print(f"wrote {out_path} and {params_path}")
    return 0


def _bench_single(ds_split, internal_name, config):
    prediction, elapsed = run_method(ds_split, internal_name, config)
    mask = _test_eval_mask(ds_split)
    y = ds_split.labels.y
    c = ds_split.labels.num_classes
    return (
        accuracy(prediction.labels, y, mask),
        macro_f1(prediction.labels, y, mask, c),
        elapsed,
        confusion_matrix(prediction.labels, y, mask, c),
    )


def cmd_bench(args) -> int:
    names = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in names if m not in CLI_METHODS]
    if unknown:
        raise ConfigurationError(
            f"unknown method name(s): {unknown}; choose from {sorted(CLI_METHODS)}"
        )
    if args.runs < 1:
        raise ConfigurationError("--runs must be >= 1")
    fracs = tuple(_parse_floats(args.split, "--split"))
    if len(fracs) != 3:
        raise ConfigurationError("--split needs three comma-separated fractions")
    config = RunConfig(
        kernel=_kernel_config(args),
        fixed_k=args.fixed_k,
        fixed_alpha=args.fixed_alpha,
    )

    ds = load_dataset(args.data)
    try:
        splits = [resample_split(ds, args.seed + r, fracs) for r in range(args.runs)]
    except ValueError as exc:
        raise DatasetFormatError(f"cannot resample split: {exc}") from exc

    workers = int(os.environ.get("F2LP_THREADS", "1"))
    if args.timing_strict:
        workers = 1
    tasks = [(m, r) for m in names for r in range(args.runs)]
    results = {}
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                (m, r): pool.submit(_bench_single, splits[r], CLI_METHODS[m], config)
                for m, r in tasks
            }
        for key, fut in futures.items():
            results[key] = fut.result()
    else:
        for m, r in tasks:
            results[(m, r)] = _bench_single(splits[r], CLI_METHODS[m], config)

    stats = []
    for m in names:
        per_run = [results[(m, r)] for r in range(args.runs)]
        stats.append(
            MethodStats.from_runs(
                m,
                [x[0] for x in per_run],
                [x[1] for x in per_run],
                [x[2] for x in per_run],
                per_run[0][3],
            )
        )

    references = None
    if args.reference_json:
        ref_path = Path(args.reference_json)
        if not ref_path.is_file():
            raise DatasetFormatError(f"missing reference file: {ref_path}")
        references = {
            "source": ref_path.name,
            "external_not_computed": True,
            "values": json.loads(ref_path.read_text(encoding="utf-8")),
        }

    config_echo = {
        "methods": names,
        "split": list(fracs),
        "k_min": config.kernel.k_min,
        "k_max": config.kernel.k_max,
        "alpha_min": config.kernel.alpha_min,
        "alpha_max": config.kernel.alpha_max,
        "fixed_k": config.fixed_k,
        "fixed_alpha": config.fixed_alpha,
    }
    report = EvalReport(
        dataset=ds.name, seed=args.seed, runs=args.runs, methods=stats,
        config=config_echo, references=references,
    )
    payload = report.to_dict()
    jsonschema.validate(payload, load_report_schema())

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    lines = ["method,acc_mean,acc_std,f1_mean,f1_std,time_mean"]
    for s in stats:
        lines.append(
            f"{s.name},{s.accuracy_mean:.6f},{s.accuracy_std:.6f},"
            f"{s.macro_f1_mean:.6f},{s.macro_f1_std:.6f},{s.time_mean_sec:.3f}"
        )
    (out_dir / "summary.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    c = ds.labels.num_classes
    for s in stats:
        rows = ["true_class," + ",".join(f"pred_{j}" for j in range(c))]
        rows += [f"{t}," + ",".join(str(int(v)) for v in s.confusion[t]) for t in range(c)]
        (out_dir / f"confusion_{s.name}.csv").write_text("\n".join(rows) + "\n", encoding="utf-8")

    for s in stats:
        print(
            f"{s.name}: acc {s.accuracy_mean:.4f} +/- {s.accuracy_std:.4f}, "
            f"f1 {s.macro_f1_mean:.4f} +/- {s.macro_f1_std:.4f}, "
            f"time {s.time_mean_sec * 1000:.1f} ms"
        )
    print(f"wrote {out_dir / 'report.json'}")
    return 0


def cmd_sensitivity(args) -> int:
    k_mins = _parse_ints(args.k_min_grid, "--k-min-grid")
    k_maxs = _parse_ints(args.k_max_grid, "--k-max-grid")
    a_mins = _parse_floats(args.alpha_min_grid, "--alpha-min-grid")
    a_maxs = _parse_floats(args.alpha_max_grid, "--alpha-max-grid")

    combos = []
    skipped = 0
    for km in k_mins:
        for kM in k_maxs:
            for am in a_mins:
                for aM in a_maxs:
                    try:
                        combos.append(KernelConfig(k_min=km, k_max=kM, alpha_min=am, alpha_max=aM))
                    except ValueError:
                        skipped += 1
    if not combos:
        raise ConfigurationError("empty grid: no valid parameter combinations")

    ds = load_dataset(args.data)
    mask = _test_eval_mask(ds)
    if not mask.any():
        raise DatasetFormatError("no labeled test nodes to evaluate on")

    lines = ["k_min,k_max,alpha_min,alpha_max,accuracy,macro_f1,time_sec"]
    for cfg in combos:
        start = time.perf_counter()
        result = f2lp_predict(ds, cfg, WeiszfeldConfig())
        elapsed = time.perf_counter() - start
        acc = accuracy(result.prediction.labels, ds.labels.y, mask)
        f1 = macro_f1(result.prediction.labels, ds.labels.y, mask, ds.labels.num_classes)
        lines.append(
            f"{cfg.k_min},{cfg.k_max},{cfg.alpha_min},{cfg.alpha_max},"
            f"{acc:.6f},{f1:.6f},{elapsed:.3f}"
        )

    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"evaluated {len(combos)} configurations, skipped {skipped} invalid")
    print(f"wrote {out_path}")
    return 0


def cmd_synth(args) -> int:
    fracs = tuple(_parse_floats(args.split, "--split"))
    if len(fracs) != 3:
        raise ConfigurationError("--split needs three comma-separated fractions")
    feature_dim = args.feature_dim if args.feature_dim is not None else args.classes
    try:
        ds = synth_planted_partition(
            num_nodes=args.nodes,
            num_classes=args.classes,
            p_in=args.p_in,
            p_out=args.p_out,
            feature_dim=feature_dim,
            feature_noise=args.noise,
            seed=args.seed,
            split_fracs=fracs,
            name=args.name,
        )
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from exc
    save_dataset(ds, args.out)
    h = edge_homophily(ds.graph, ds.labels.y)
    print(
        f"wrote {args.out}: {ds.graph.num_nodes} nodes, {ds.graph.num_edges} edges, "
        f"homophily {h:.3f}"
    )
    return 0


def load_report_schema() -> dict:
    text = (
        importlib.resources.files("f2lpap") / "schemas" / "bench_report.schema.json"
    ).read_text(encoding="utf-8")
    return json.loads(text)


def _add_kernel_flags(p):
    p.add_argument("--k-min", type=int, default=3)
    p.add_argument("--k-max", type=int, default=15)
    p.add_argument("--alpha-min", type=float, default=0.1)
    p.add_argument("--alpha-max", type=float, default=0.2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="f2lp", description="Training-free graph node classification toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="classify every node of a dataset")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--out", required=True, help="predictions TSV path")
    p.add_argument("--params-out", default=None, help="per-node parameter TSV path")
    p.add_argument(
        "--prototype", choices=["geometric_median", "mean"], default="geometric_median"
    )
    _add_kernel_flags(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("bench", help="benchmark methods over resampled splits")
    p.add_argument("--data", required=True)
    p.add_argument("--methods", default=",".join(CLI_METHODS))
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default="bench_out")
    p.add_argument("--split", default="0.6,0.2,0.2", help="train,val,test fractions")
    p.add_argument("--fixed-k", type=int, default=5)
    p.add_argument("--fixed-alpha", type=float, default=0.1)
    p.add_argument("--reference-json", default=None,
                   help="side file of externally reported numbers to embed, marked as not computed")
    p.add_argument("--timing-strict", action="store_true",
                   help="force sequential execution so timings are unskewed")
    _add_kernel_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sensitivity", help="grid-search the kernel parameter ranges")
    p.add_argument("--data", required=True)
    p.add_argument("--out", default="sensitivity.csv")
    p.add_argument("--k-min-grid", default="1,2,3")
    p.add_argument("--k-max-grid", default="5,10,15")
    p.add_argument("--alpha-min-grid", default="0.05,0.1")
    p.add_argument("--alpha-max-grid", default="0.1,0.2")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("synth", help="generate a planted-partition dataset directory")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--classes", type=int, required=True)
    p.add_argument("--p-in", type=float, required=True)
    p.add_argument("--p-out", type=float, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--feature-dim", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split", default="0.6,0.2,0.2")
    p.add_argument("--name", default="synthetic")
    p.add_argument("--out", required=True, help="output dataset directory")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DatasetFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
