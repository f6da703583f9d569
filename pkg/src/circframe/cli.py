"""Command line interface for environment generation, routing, and benchmarks."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import ExperimentConfig, run_experiment
from .forest import build_forest
from .frame import cut
from .geometry import Environment, generate_environment
from .gridastar import route_env_astar
from .router import extract_all_classes, route_all
from .sketch import SketchConfig, find_crossings, path_length, sketch_all
from .svgout import render_environment, render_frame


def _cmd_gen(args) -> int:
    env = generate_environment(args.n, args.seed)
    text = env.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return 0


def _load_env(path: str) -> Environment:
    return Environment.from_json(Path(path).read_text())


def _cmd_route(args) -> int:
    env = _load_env(args.env)
    if args.algo == "cf":
        forest = build_forest(env)
        frame = cut(env, forest)
        rf = route_all(frame, list(env.nets))
        classes = extract_all_classes(rf, forest, list(env.nets))
        cfg = SketchConfig(height_interval=args.height_interval)
        paths = sketch_all(classes, env, cfg)
        crossings = find_crossings(paths)
        doc = {
            "algo": "cf",
            "classes": [{"net": c.net_index, "pivots": list(c.pivots),
                         "orientations": list(c.orientations),
                         "heights": list(c.heights)} for c in classes],
            "lengths": {str(p.net_index): path_length(p) for p in paths},
            "crossings": crossings,
        }
        if args.svg:
            Path(args.svg).write_text(render_environment(env, paths=paths,
                                                         forest=forest))
        if args.frame_svg:
            Path(args.frame_svg).write_text(render_frame(rf))
    else:
        res = route_env_astar(env, args.algo.upper())
        doc = res.to_jsonable()
        if args.svg:
            Path(args.svg).write_text(render_environment(env, grid_result=res))
    text = json.dumps(doc, indent=2)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return 0


def _cmd_bench(args) -> int:
    cfg = ExperimentConfig(
        net_counts=tuple(args.net_counts),
        envs_per_count=args.envs,
        master_seed=args.seed,
    )
    def progress(n, h):
        if args.verbose:
            print(f"  n={n} env {h}/{cfg.envs_per_count}", file=sys.stderr)
    result = run_experiment(cfg, progress=progress if args.verbose else None)
    Path(args.csv).write_text(result.to_csv())
    report = result.to_report_json()
    if args.report:
        Path(args.report).write_text(report)
    else:
        print(report)
    return 0


def _cmd_render(args) -> int:
    env = _load_env(args.env)
    forest = build_forest(env) if args.forest else None
    Path(args.out).write_text(render_environment(env, forest=forest))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="circframe",
                                     description="Topological net routing.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random environment")
    p.add_argument("--n", type=int, required=True, help="net count (even)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="output JSON path (default stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("route", help="route an environment")
    p.add_argument("--algo", choices=("cf", "as1", "as2"), default="cf")
    p.add_argument("--env", required=True, help="environment JSON path")
    p.add_argument("--out", help="result JSON path (default stdout)")
    p.add_argument("--svg", help="write a plane rendering to this path")
    p.add_argument("--frame-svg", help="write the frame rendering (cf only)")
    p.add_argument("--height-interval", type=float, default=0.5)
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("bench", help="run the benchmark batch")
    p.add_argument("--net-counts", type=int, nargs="+",
                   default=[2, 4, 6, 8, 10])
    p.add_argument("--envs", type=int, default=100,
                   help="environments per net count")
    p.add_argument("--seed", type=int, default=20240901, help="master seed")
    p.add_argument("--csv", required=True, help="per-net CSV output path")
    p.add_argument("--report", help="aggregate JSON report path")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("render", help="render an environment to SVG")
    p.add_argument("--env", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--forest", action="store_true",
                   help="overlay the anchored forest")
    p.set_defaults(func=_cmd_render)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
