"""Command-line front end: knot -> family -> spectra -> distinguishing report.

Subcommands: knot (inspect a knot presentation), family (build a surgery
family and distinguish it), verify (cross-check the two surgery routes),
export (write presentations as computational-algebra scripts).

Exit codes: 0 success / all pairs distinguished, 1 verification failure,
2 input error, 3 unresolved pairs remain, 4 resource cap exceeded.

Primary outputs are byte-deterministic for a fixed config; wall-clock
metadata goes to a run_meta.json sidecar.  Spectra are cached by content
hash of (knot source, slope, suite, budget) under <out>/.cache.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .alexander import fox_alexander
from .braids import parse_braid, wirtinger_from_braid
from .errors import ClosureCapExceededError, KnotSurgeryError
from .fpgroup import (
    Presentation,
    presentation_from_json,
    presentation_to_json,
    tietze_simplify,
    to_free_group_script,
)
from .homcount import HomSpectrum, count_homomorphisms, distinguish_report
from .knots import (
    KnotPresentation,
    builtin_knot,
    load_fibered_knot,
    mapping_torus_presentation,
    validate_peripheral,
)
from .smith import abelianization
from .surgery import (
    SurgerySlope,
    build_family,
    dehn_surgery_group,
    double_complement_group,
    family_manifest,
    half_complement_group,
)
from .targets import resolve_suite

SCHEMA_VERSION = 1
WORKERS_ENV = "KNOTSURGERY_WORKERS"


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs; built from parsed arguments."""

    source_kind: str  # "braid" | "builtin" | "monodromy"
    source: str
    q: int = 1
    p_values: tuple[int, ...] = ()
    targets: str = "standard"
    out_dir: Path | None = None
    cache: bool = True
    budget: int = 10_000
    workers: int = 1
    construction: str = "surgery"


def parse_p_spec(spec: str) -> tuple[int, ...]:
    """Comma list of integers and inclusive a..b ranges, e.g. "1..4,7,-2"."""
    values: list[int] = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo_text, hi_text = chunk.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"empty range {chunk!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(int(chunk))
    if not values:
        raise ValueError(f"no p values in {spec!r}")
    return tuple(values)


def _knot_source(args: argparse.Namespace) -> tuple[str, str]:
    picked = [
        ("braid", args.braid),
        ("builtin", args.builtin),
        ("monodromy", args.monodromy),
    ]
    chosen = [(kind, value) for kind, value in picked if value]
    if len(chosen) != 1:
        raise ValueError("exactly one of --braid, --builtin, --monodromy is required")
    return chosen[0]


def load_knot(config: RunConfig) -> KnotPresentation:
    if config.source_kind == "braid":
        return wirtinger_from_braid(parse_braid(config.source))
    if config.source_kind == "builtin":
        try:
            return builtin_knot(config.source)
        except KeyError as exc:
            raise KnotSurgeryError(str(exc)) from None
    if config.source_kind == "monodromy":
        return mapping_torus_presentation(load_fibered_knot(config.source))
    raise ValueError(f"unknown source kind {config.source_kind!r}")


def _source_fingerprint(config: RunConfig) -> str:
    if config.source_kind == "monodromy":
        content = Path(config.source).read_bytes()
        return f"monodromy:{hashlib.sha256(content).hexdigest()}"
    return f"{config.source_kind}:{config.source}"


def _suite_fingerprint(spec: str) -> str:
    if spec in ("standard", "extended"):
        return spec
    content = Path(spec).read_bytes()
    return f"file:{hashlib.sha256(content).hexdigest()}"


def _cache_key(config: RunConfig, p: int, construction: str) -> str:
    payload = json.dumps(
        {
            "schema_version": SCHEMA_VERSION,
            "source": _source_fingerprint(config),
            "p": p,
            "q": config.q,
            "suite": _suite_fingerprint(config.targets),
            "budget": config.budget,
            "construction": construction,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _spectrum_task(payload: tuple[dict, str, int]) -> list[list]:
    presentation_json, suite_spec, budget = payload
    presentation = presentation_from_json(presentation_json)
    simplified = tietze_simplify(presentation, budget)
    suite = resolve_suite(suite_spec)
    return [[t.name, count_homomorphisms(simplified, t)] for t in suite]


def compute_spectra(
    presentations: list[Presentation],
    config: RunConfig,
    cache_tags: list[tuple[int, str]] | None = None,
) -> tuple[list[HomSpectrum], int]:
    """Spectra in input order, using the file cache when enabled.

    cache_tags supplies (p, construction) per presentation; without it no
    caching happens.  Returns (spectra, number of cache hits).
    """
    cache_dir = None
    if config.cache and config.out_dir is not None and cache_tags is not None:
        cache_dir = config.out_dir / ".cache"
        cache_dir.mkdir(parents=True, exist_ok=True)
    results: dict[int, HomSpectrum] = {}
    hits = 0
    pending: list[tuple[int, Presentation]] = []
    for i, presentation in enumerate(presentations):
        if cache_dir is not None:
            key = _cache_key(config, cache_tags[i][0], cache_tags[i][1])
            path = cache_dir / f"{key}.json"
            if path.exists():
                data = json.loads(path.read_text())
                results[i] = HomSpectrum(
                    tuple((name, int(count)) for name, count in data["counts"])
                )
                hits += 1
                continue
        pending.append((i, presentation))
    if pending:
        tasks = [
            (presentation_to_json(p), config.targets, config.budget)
            for _, p in pending
        ]
        if config.workers > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                outcomes = list(pool.map(_spectrum_task, tasks))
        else:
            outcomes = [_spectrum_task(task) for task in tasks]
        for (i, _), counts in zip(pending, outcomes):
            spectrum = HomSpectrum(tuple((name, int(c)) for name, c in counts))
            results[i] = spectrum
            if cache_dir is not None:
                key = _cache_key(config, cache_tags[i][0], cache_tags[i][1])
                payload = {"schema_version": SCHEMA_VERSION, "counts": list(spectrum.entries)}
                (cache_dir / f"{key}.json").write_text(json.dumps(payload, indent=2) + "\n")
    return [results[i] for i in range(len(presentations))], hits


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _write_meta(out_dir: Path, started: float, extra: dict) -> None:
    meta = {
        "schema_version": SCHEMA_VERSION,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "elapsed_ms": int((time.time() - started) * 1000),
    }
    meta.update(extra)
    _write_json(out_dir / "run_meta.json", meta)


def cmd_knot(config: RunConfig) -> int:
    kp = load_knot(config)
    suite = resolve_suite(config.targets)
    print(f"knot: {config.source_kind} {config.source}")
    print(f"group: {kp.group}")
    print(f"meridian: {kp.group.word_str(kp.meridian)}")
    print(f"longitude: {kp.group.word_str(kp.longitude)}")
    if kp.genus_hint is not None:
        print(f"genus hint: {kp.genus_hint}")
    print(f"abelianization: {abelianization(kp.group)}")
    report = validate_peripheral(kp, suite, config.budget)
    print("peripheral checks:")
    for line in report.format().splitlines():
        print(f"  {line}")
    alexander = fox_alexander(kp)
    print(f"alexander: {alexander}")
    if config.out_dir is not None:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        names = kp.group.names
        from .fpgroup import word_to_json

        _write_json(
            config.out_dir / "knot.json",
            {
                "schema_version": SCHEMA_VERSION,
                "source": {"kind": config.source_kind, "value": config.source},
                "presentation": presentation_to_json(kp.group),
                "meridian": word_to_json(kp.meridian, names),
                "longitude": word_to_json(kp.longitude, names),
                "genus_hint": kp.genus_hint,
                "abelianization": str(abelianization(kp.group)),
                "alexander": str(alexander),
                "peripheral_ok": report.ok,
            },
        )
    return 0 if report.ok else 1


def cmd_family(config: RunConfig) -> int:
    started = time.time()
    if config.out_dir is None:
        raise ValueError("family requires --out")
    kp = load_knot(config)
    family = build_family(kp, config.q, config.p_values)
    for p in family.skipped:
        print(f"skip p={p}: gcd(p, {config.q}) != 1")
    if not family.members:
        raise ValueError("empty family after gcd filter")
    config.out_dir.mkdir(parents=True, exist_ok=True)

    labels = [f"p={m.slope.p}" for m in family.members]
    presentations = [m.presentation for m in family.members]
    tags = [(m.slope.p, "double") for m in family.members]
    spectra, hits = compute_spectra(presentations, config, tags)

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "source": {"kind": config.source_kind, "value": config.source},
        "q": config.q,
        "skipped_p": list(family.skipped),
        "members": family_manifest(family),
    }
    _write_json(config.out_dir / "family_manifest.json", manifest)

    suite_names = spectra[0].target_names
    csv_lines = ["label," + ",".join(suite_names)]
    for label, spectrum in zip(labels, spectra):
        csv_lines.append(label + "," + ",".join(str(c) for c in spectrum.counts))
    (config.out_dir / "spectra.csv").write_text("\n".join(csv_lines) + "\n", encoding="utf-8")

    report = distinguish_report(list(zip(labels, spectra)))
    (config.out_dir / "distinguish_report.txt").write_text(report.format() + "\n", encoding="utf-8")
    print(report.format())
    _write_meta(config.out_dir, started, {"cache_hits": hits})
    return 0 if report.all_distinguished else 3


def cmd_verify(config: RunConfig) -> int:
    kp = load_knot(config)
    suite = resolve_suite(config.targets)
    peripheral = validate_peripheral(kp, suite, config.budget)
    if not peripheral.ok:
        print("peripheral validation FAILED:")
        for line in peripheral.format().splitlines():
            print(f"  {line}")
        return 1
    lines = []
    all_ok = True
    for p in config.p_values:
        try:
            slope = SurgerySlope(p, config.q)
        except KnotSurgeryError:
            print(f"skip p={p}: gcd(p, {config.q}) != 1")
            continue
        surgery = tietze_simplify(dehn_surgery_group(kp, slope), config.budget)
        half = tietze_simplify(half_complement_group(kp, slope), config.budget)
        ab_surgery = abelianization(surgery)
        ab_half = abelianization(half)
        ab_ok = ab_surgery == ab_half
        spectra_ok = True
        for target in suite:
            if count_homomorphisms(surgery, target) != count_homomorphisms(half, target):
                spectra_ok = False
                break
        ok = ab_ok and spectra_ok
        all_ok = all_ok and ok
        status = "PASS" if ok else "FAIL"
        detail = f"H1 {ab_surgery} vs {ab_half}, spectra over {len(suite)} targets"
        line = f"p={p} q={config.q}: {detail}: {status}"
        lines.append(line)
        print(line)
    if config.out_dir is not None:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        (config.out_dir / "verify_report.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0 if all_ok else 1


def cmd_export(config: RunConfig) -> int:
    if config.out_dir is None:
        raise ValueError("export requires --out")
    kp = load_knot(config)
    config.out_dir.mkdir(parents=True, exist_ok=True)
    builders = {
        "surgery": dehn_surgery_group,
        "half": half_complement_group,
        "double": double_complement_group,
    }
    if config.construction == "knot":
        path = config.out_dir / "knot_group.g"
        path.write_text(to_free_group_script(kp.group), encoding="utf-8")
        print(f"wrote {path}")
        return 0
    builder = builders[config.construction]
    for p in config.p_values:
        try:
            slope = SurgerySlope(p, config.q)
        except KnotSurgeryError:
            print(f"skip p={p}: gcd(p, {config.q}) != 1")
            continue
        presentation = builder(kp, slope)
        path = config.out_dir / f"{config.construction}_q{config.q}_p{p}.g"
        path.write_text(to_free_group_script(presentation), encoding="utf-8")
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotsurgery",
        description="Knot groups, surgery quotients, and finite-quotient invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_slopes: bool) -> None:
        p.add_argument("--braid", help="braid word, e.g. '1 1 1' or 'n=2; s1 s1 s1'")
        p.add_argument("--builtin", help="builtin knot name: unknot, trefoil, fig8")
        p.add_argument("--monodromy", help="path to a fibered-knot JSON file")
        p.add_argument("--targets", default="standard",
                       help="'standard', 'extended', or a target-suite JSON path")
        p.add_argument("--out", type=Path, default=None, help="output directory")
        p.add_argument("--budget", type=int, default=10_000,
                       help="Tietze simplification step limit")
        p.add_argument("--no-cache", action="store_true", help="disable the spectra cache")
        if with_slopes:
            p.add_argument("--q", type=int, default=1, help="slope numerator q >= 1")
            p.add_argument("--p", dest="p_spec", default="1",
                           help="p values: comma list and a..b ranges, e.g. '1..6'")

    add_common(sub.add_parser("knot", help="inspect a knot presentation"), with_slopes=False)
    add_common(sub.add_parser("family", help="build and distinguish a surgery family"), with_slopes=True)
    add_common(sub.add_parser("verify", help="cross-check surgery against the doubled route"), with_slopes=True)
    export = sub.add_parser("export", help="write presentations as algebra-system scripts")
    add_common(export, with_slopes=True)
    export.add_argument(
        "--construction",
        choices=("surgery", "half", "double", "knot"),
        default="surgery",
        help="which group to export per slope",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kind, source = _knot_source(args)
    p_values: tuple[int, ...] = ()
    q = getattr(args, "q", 1)
    if hasattr(args, "p_spec"):
        p_values = parse_p_spec(args.p_spec)
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    workers = int(os.environ.get(WORKERS_ENV, "1"))
    return RunConfig(
        source_kind=kind,
        source=source,
        q=q,
        p_values=p_values,
        targets=args.targets,
        out_dir=args.out,
        cache=not args.no_cache,
        budget=args.budget,
        workers=max(1, workers),
        construction=getattr(args, "construction", "surgery"),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    commands = {
        "knot": cmd_knot,
        "family": cmd_family,
        "verify": cmd_verify,
        "export": cmd_export,
    }
    try:
        config = config_from_args(args)
        return commands[args.command](config)
    except ClosureCapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (KnotSurgeryError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
