"""Command-line surface over the library.

Exit statuses: 0 success, 1 input or verification failure, 2 claimed
guarantee failed but the fallback still produced a verified coloring,
3 scale cap exceeded.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click

from . import harness
from .errors import MapError, ScaleLimitError
from .maps import coloring_from_json, coloring_to_json, map_from_json, map_to_json
from .pipeline import color_with_islands, verify_coloring
from .properties import check_property_A, check_property_B
from .render import render_fuzz_summary, render_map

DEFAULT_SEED = 0


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    max_k: int = 12
    max_faces: int = 40
    max_schemes: int = 4096
    out: Optional[str] = None
    render: Optional[str] = None


def common_options(f):
    for opt in (
        click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="RNG seed."),
        click.option("--max-k", type=int, default=12, show_default=True, help="Boundary interval cap."),
        click.option("--max-faces", type=int, default=40, show_default=True, help="Face count cap."),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file."),
        click.option("--render", type=click.Path(dir_okay=False), default=None, help="Figure file (svg/png)."),
    ):
        f = opt(f)
    return f


def _config(seed, max_k, max_faces, out, render) -> RunConfig:
    if max_k <= 0 or max_faces <= 0:
        raise MapError("caps must be positive")
    return RunConfig(seed=seed, max_k=max_k, max_faces=max_faces, out=out, render=render)


def _read_map(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MapError(f"cannot read {path}: {exc}")
    return map_from_json(text)


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        click.echo(text)


def _exit(code: int) -> None:
    sys.exit(code)


@click.group(context_settings={"auto_envvar_prefix": "FOURCOLOR"})
def main() -> None:
    """Constructive four-coloring of sphere maps, with a claim-testing harness."""


def _guarded(fn) -> None:
    try:
        _exit(fn())
    except ScaleLimitError as exc:
        click.echo(f"scale limit: {exc}", err=True)
        _exit(3)
    except (MapError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        _exit(1)


@main.command()
@click.argument("map_file", type=click.Path(exists=False))
@click.option("--seed-face", default=None, help="Face to grow from (default: first sorted).")
@common_options
def color(map_file, seed_face, seed, max_k, max_faces, out, render):
    """Color MAP_FILE and write the coloring as JSON."""

    def run() -> int:
        cfg = _config(seed, max_k, max_faces, out, render)
        m = _read_map(map_file)
        if len(m.faces) > cfg.max_faces:
            raise ScaleLimitError(f"{len(m.faces)} faces exceeds cap {cfg.max_faces}")
        if seed_face is not None:
            from .pipeline import color_map

            result = color_map(m, seed_face=seed_face, rng_seed=cfg.seed)
        else:
            result = color_with_islands(m, rng_seed=cfg.seed)
        _write(cfg.out, coloring_to_json(result.coloring))
        click.echo(
            f"faces={len(m.faces)} trace={len(result.trace)} "
            f"fallback={result.used_fallback} verified={result.verified}",
            err=True,
        )
        for note in result.claim_violations:
            click.echo(f"claim violation: {note}", err=True)
        if cfg.render:
            render_map(m, result.coloring, cfg.render)
        if not result.verified:
            return 1
        return 2 if result.claim_violations else 0

    _guarded(run)


@main.command()
@click.option("--polygon", type=int, default=None, help="Check a k-gon seed state.")
@click.option("--trace", type=click.Path(exists=False), default=None, help="Growth trace JSON file.")
@common_options
def props(polygon, trace, seed, max_k, max_faces, out, render):
    """Decide both boundary properties for a state."""

    def run() -> int:
        cfg = _config(seed, max_k, max_faces, out, render)
        if (polygon is None) == (trace is None):
            raise MapError("exactly one of --polygon or --trace is required")
        if polygon is not None:
            if polygon > cfg.max_k:
                raise ScaleLimitError(f"polygon size {polygon} exceeds cap {cfg.max_k}")
            t = harness.GrowthTrace(seed_k=polygon)
        else:
            try:
                obj = json.loads(Path(trace).read_text())
                t = harness.GrowthTrace(
                    seed_k=int(obj["seed_k"]),
                    ops=tuple((int(i), int(n)) for i, n in obj.get("ops", [])),
                    seed_color=int(obj.get("seed_color", 0)),
                )
            except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
                raise MapError(f"bad trace file: {exc}")
        _, pset = harness.grow(t)
        if pset.k > cfg.max_k:
            raise ScaleLimitError(f"state has k={pset.k}, cap {cfg.max_k}")
        a = check_property_A(pset.k, pset.schemes)
        b = check_property_B(pset.k, pset.schemes)
        report = {"k": pset.k, "schemes": len(pset.schemes), "A": a.to_json_obj(), "B": b.to_json_obj()}
        _write(cfg.out, json.dumps(report, indent=2))
        return 0

    _guarded(run)


@main.command("fuzz-theorems")
@click.option("--theorem", type=click.Choice(["1", "2", "3", "decomp", "abstract"]), required=True)
@click.option("--trials", type=int, default=500, show_default=True)
@click.option("--n-max", type=int, default=4, show_default=True)
@common_options
def fuzz_theorems(theorem, trials, n_max, seed, max_k, max_faces, out, render):
    """Adjudicate a claimed theorem by randomized trials; JSON-lines report."""

    def run() -> int:
        cfg = _config(seed, max_k, max_faces, out, render)
        if theorem == "1":
            result = harness.verify_theorem1()
        elif theorem == "2":
            result = harness.verify_theorem2(min_trials=trials, rng_seed=cfg.seed)
        elif theorem == "3":
            result = harness.verify_theorem3(n_max=n_max, min_trials=trials, rng_seed=cfg.seed)
        elif theorem == "decomp":
            result = harness.check_decomposition_equivalences(min_trials=trials, rng_seed=cfg.seed)
        else:
            result = harness.fuzz_abstract(min(cfg.max_k, 5), trials, rng_seed=cfg.seed)
        lines = [json.dumps(t.to_json_obj()) for t in result.trials]
        lines += [
            json.dumps(dict(c.to_json_obj(), record="counterexample"))
            for c in result.counterexamples
        ]
        _write(cfg.out, "\n".join(lines))
        summary = result.summary()
        click.echo(
            f"trials={len(result.trials)} consistent={summary.get('consistent', 0)} "
            f"counterexamples={summary.get('counterexample', 0)} skipped={summary.get('skipped', 0)}",
            err=True,
        )
        if cfg.render:
            by_kind: dict = {}
            for t in result.trials:
                by_kind.setdefault(t.kind, {}).setdefault(t.verdict, 0)
                by_kind[t.kind][t.verdict] += 1
            render_fuzz_summary(by_kind, cfg.render)
        return 0

    _guarded(run)


@main.command()
@click.argument("map_file", type=click.Path(exists=False))
@click.argument("coloring_file", type=click.Path(exists=False))
def verify(map_file, coloring_file):
    """Exit 0 iff COLORING_FILE is a proper coloring of MAP_FILE."""

    def run() -> int:
        m = _read_map(map_file)
        try:
            coloring = coloring_from_json(Path(coloring_file).read_text())
        except OSError as exc:
            raise MapError(f"cannot read {coloring_file}: {exc}")
        ok, violations = verify_coloring(m, coloring)
        for v in violations:
            click.echo(v, err=True)
        click.echo("proper" if ok else "improper")
        return 0 if ok else 1

    _guarded(run)


@main.command()
@click.option("--faces", type=int, default=10, show_default=True, help="Target face count.")
@common_options
def gen(faces, seed, max_k, max_faces, out, render):
    """Generate a random valid map by boundary growth."""

    def run() -> int:
        cfg = _config(seed, max_k, max_faces, out, render)
        if faces > cfg.max_faces:
            raise ScaleLimitError(f"{faces} faces exceeds cap {cfg.max_faces}")
        m = harness.generate_map(face_count=faces, rng_seed=cfg.seed)
        _write(cfg.out, map_to_json(m))
        return 0

    _guarded(run)


@main.command("export-svg")
@click.argument("map_file", type=click.Path(exists=False))
@click.option("--coloring", type=click.Path(dir_okay=False), default=None, help="Coloring JSON (default: compute one).")
@common_options
def export_svg(map_file, coloring, seed, max_k, max_faces, out, render):
    """Render MAP_FILE to --out as a colored figure."""

    def run() -> int:
        cfg = _config(seed, max_k, max_faces, out, render)
        target = cfg.out or cfg.render
        if not target:
            raise MapError("--out (or --render) is required")
        m = _read_map(map_file)
        if coloring is not None:
            try:
                col = coloring_from_json(Path(coloring).read_text())
            except OSError as exc:
                raise MapError(f"cannot read {coloring}: {exc}")
        else:
            result = color_with_islands(m, rng_seed=cfg.seed)
            if not result.verified:
                return 1
            col = result.coloring
        render_map(m, col, target)
        return 0

    _guarded(run)


if __name__ == "__main__":
    main()
