"""Command-line interface: configuration, caching, machine-readable export.

Exit codes: 0 success/verified, 1 violations found, 2 configuration error,
3 internal integrity failure (failed exact division, nonzero residual,
pole at t = 1, or a route mismatch).
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass, asdict

from .errors import (
    BoundExceededError,
    ConfigError,
    IntegrityError,
    KflagError,
    NonzeroResidualError,
    NotDivisibleError,
    PoleAtOneError,
)
from .model import SchubertModel
from .ring import SchubertRing, SignReport
from .roots import RootDatum, WeylGroup, build_root_datum, root_datum_from_cartan

CACHE_SCHEMA_VERSION = 1
CACHE_ENV_VAR = "KFLAG_CACHE_DIR"

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_CONFIG = 2
EXIT_INTEGRITY = 3


@dataclass
class JobConfig:
    """Parsed command configuration; round-trips through JSON."""

    type_letter: str | None = None
    rank: int | None = None
    cartan: list[list[int]] | None = None
    parabolic: list[int] | None = None
    u: list[int] | None = None
    v: list[int] | None = None
    lam: list[int] | None = None
    mu: list[int] | None = None
    which: str = "all"
    jobs: int = 1
    cache_dir: str | None = None
    max_weyl: int = 10000
    fmt: str = "json"
    out: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, blob: str) -> "JobConfig":
        return cls(**json.loads(blob))


def _parse_int_list(text: str, what: str) -> list[int]:
    text = text.strip()
    if text in ("", "e"):
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse {what} {text!r}: comma-separated integers expected") from exc


def _config_from_args(args) -> JobConfig:
    cfg = JobConfig()
    cfg.type_letter = getattr(args, "type", None)
    cfg.rank = getattr(args, "rank", None)
    if getattr(args, "cartan", None):
        try:
            with open(args.cartan, "r", encoding="utf-8") as fh:
                cfg.cartan = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read Cartan matrix file: {exc}") from exc
    if getattr(args, "parabolic", None) is not None:
        cfg.parabolic = _parse_int_list(args.parabolic, "--parabolic")
    for name in ("u", "v"):
        raw = getattr(args, name, None)
        if raw is not None:
            setattr(cfg, name, _parse_int_list(raw, f"--{name}"))
    if getattr(args, "lam", None) is not None:
        cfg.lam = _parse_int_list(args.lam, "--lambda")
    if getattr(args, "mu", None) is not None:
        cfg.mu = _parse_int_list(args.mu, "--mu")
    cfg.which = getattr(args, "which", "all")
    cfg.jobs = getattr(args, "jobs", 1)
    cfg.cache_dir = getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV_VAR)
    cfg.max_weyl = getattr(args, "max_weyl", 10000)
    cfg.fmt = getattr(args, "format", "json")
    cfg.out = getattr(args, "out", None)
    if cfg.cartan is None and (cfg.type_letter is None or cfg.rank is None):
        raise ConfigError("a group is required: --type and --rank, or --cartan FILE")
    return cfg


def _build_datum(cfg: JobConfig) -> RootDatum:
    if cfg.cartan is not None:
        digest = hashlib.sha256(
            json.dumps(cfg.cartan, sort_keys=True).encode()
        ).hexdigest()[:8]
        return root_datum_from_cartan(cfg.cartan, label=f"custom-{digest}")
    return build_root_datum(cfg.type_letter, cfg.rank)


# -- cache -----------------------------------------------------------------


def _canonical_payload_bytes(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def _table_to_payload(datum: RootDatum, group: WeylGroup, model: SchubertModel) -> dict:
    rows = []
    for w in group.elements:
        cls = model.schubert_class(w)
        for v, poly in sorted(cls.restrictions.items(), key=lambda t: t[0].index):
            terms = sorted((list(e), c) for e, c in poly.terms.items())
            rows.append([w.index, v.index, terms])
    payload = {
        "schema_version": CACHE_SCHEMA_VERSION,
        "group": {
            "label": datum.label,
            "rank": datum.rank,
            "cartan": [list(r) for r in datum.cartan],
        },
        "elements": [list(w.word) for w in group.elements],
        "restrictions": rows,
    }
    payload["digest"] = hashlib.sha256(_canonical_payload_bytes(payload)).hexdigest()
    return payload


def cache_store(cache_dir: str, datum: RootDatum, group: WeylGroup, model: SchubertModel) -> str | None:
    """Write the Schubert restriction table; failures warn and return None."""
    path = os.path.join(cache_dir, f"schubert-table-{datum.label}.json")
    try:
        os.makedirs(cache_dir, exist_ok=True)
        payload = _table_to_payload(datum, group, model)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
        os.replace(tmp, path)
        return path
    except OSError as exc:
        print(f"warning: cache store failed: {exc}", file=sys.stderr)
        return None


def cache_load(cache_dir: str, datum: RootDatum, group: WeylGroup) -> list[dict] | None:
    """Load a cached table; any mismatch recomputes (returns None) with a warning."""
    from .laurent import LaurentPoly

    path = os.path.join(cache_dir, f"schubert-table-{datum.label}.json")
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"warning: cache unreadable ({exc}); recomputing", file=sys.stderr)
        return None
    digest = payload.pop("digest", None)
    if payload.get("schema_version") != CACHE_SCHEMA_VERSION:
        print("warning: cache schema version mismatch; recomputing", file=sys.stderr)
        return None
    if hashlib.sha256(_canonical_payload_bytes(payload)).hexdigest() != digest:
        print("warning: cache digest mismatch; recomputing", file=sys.stderr)
        return None
    grp = payload.get("group", {})
    if grp.get("cartan") != [list(r) for r in datum.cartan]:
        print("warning: cache is for a different group; recomputing", file=sys.stderr)
        return None
    if payload.get("elements") != [list(w.word) for w in group.elements]:
        print("warning: cache element list mismatch; recomputing", file=sys.stderr)
        return None
    table: list[dict] = [dict() for _ in group.elements]
    try:
        for w_idx, v_idx, terms in payload["restrictions"]:
            poly = LaurentPoly(datum.rank, {tuple(e): c for e, c in terms})
            table[w_idx][group.elements[v_idx]] = poly
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        print(f"warning: cache malformed ({exc}); recomputing", file=sys.stderr)
        return None
    return table


def _build_ring(cfg: JobConfig):
    datum = _build_datum(cfg)
    group = WeylGroup(datum, max_size=cfg.max_weyl)
    table = None
    if cfg.cache_dir:
        table = cache_load(cfg.cache_dir, datum, group)
    model = SchubertModel(group, table=table)
    if cfg.cache_dir and table is None:
        cache_store(cfg.cache_dir, datum, group, model)
    return datum, group, SchubertRing(model)


# -- serialization helpers ----------------------------------------------------


def _word(w) -> list[int]:
    return list(w.word)


def _constants_rows(ring: SchubertRing, constants: dict, with_n, u, v):
    rows = []
    for w, c in constants.items():
        row = {"w": _word(w), "c": c}
        if with_n:
            row["N"] = ring.n_degree(u, v, w)
        rows.append(row)
    rows.sort(key=lambda r: (len(r["w"]), r["w"]))
    return rows


def _emit(obj: dict, cfg: JobConfig, csv_rows=None, csv_header=None) -> None:
    if cfg.fmt == "csv":
        if csv_rows is None:
            raise ConfigError("csv output is only available for constants tables")
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(csv_header)
        writer.writerows(csv_rows)
        text = buf.getvalue()
    else:
        text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_obj(rep: SignReport) -> dict:
    return {
        "name": rep.name,
        "group": rep.group,
        "parabolic": list(rep.parabolic) if rep.parabolic else None,
        "checked": rep.checked,
        "violations": [list(x) for x in rep.violations],
        "elapsed_ms": rep.elapsed_ms,
        "ok": rep.ok,
    }


# -- commands -----------------------------------------------------------------


def cmd_describe(cfg: JobConfig) -> int:
    datum, group, ring = _build_ring(cfg)
    obj = {
        "group": datum.label,
        "rank": datum.rank,
        "positive_roots": len(datum.positive_roots),
        "weyl_order": len(group),
        "dimension": ring.dimension,
    }
    if cfg.parabolic is not None:
        pdata = group.parabolic(cfg.parabolic)
        obj["min_reps"] = len(pdata.min_reps)
        obj["parabolic_dimension"] = ring.parabolic_dimension(pdata)
    _emit(obj, cfg)
    return EXIT_OK


def _element_from_config_word(group, word, what: str):
    if word is None:
        raise ConfigError(f"--{what} is required for this command")
    return group.from_word(word)


def cmd_constants(cfg: JobConfig) -> int:
    datum, group, ring = _build_ring(cfg)
    u = _element_from_config_word(group, cfg.u, "u")
    v = _element_from_config_word(group, cfg.v, "v")
    constants = ring.structure_constants(u, v)
    rows = _constants_rows(ring, constants, True, u, v)
    obj = {"group": datum.label, "u": _word(u), "v": _word(v), "constants": rows}
    csv_rows = [[" ".join(map(str, r["w"])), r["c"], r["N"]] for r in rows]
    _emit(obj, cfg, csv_rows=csv_rows, csv_header=["w", "c", "N"])
    return EXIT_OK


def cmd_parabolic_constants(cfg: JobConfig) -> int:
    datum, group, ring = _build_ring(cfg)
    if cfg.parabolic is None:
        raise ConfigError("--parabolic is required")
    pdata = group.parabolic(cfg.parabolic)
    u = _element_from_config_word(group, cfg.u, "u")
    v = _element_from_config_word(group, cfg.v, "v")
    constants = ring.parabolic_structure_constants(pdata, u, v)
    dim = ring.parabolic_dimension(pdata)
    rows = []
    for w, c in constants.items():
        n = (dim - w.length) - (dim - u.length) - (dim - v.length)
        rows.append({"w": _word(w), "c": c, "N": n})
    rows.sort(key=lambda r: (len(r["w"]), r["w"]))
    obj = {
        "group": datum.label,
        "parabolic": list(pdata.subset),
        "u": _word(u),
        "v": _word(v),
        "constants": rows,
    }
    csv_rows = [[" ".join(map(str, r["w"])), r["c"], r["N"]] for r in rows]
    _emit(obj, cfg, csv_rows=csv_rows, csv_header=["w", "c", "N"])
    return EXIT_OK


def cmd_line_coeffs(cfg: JobConfig) -> int:
    datum, group, ring = _build_ring(cfg)
    v = _element_from_config_word(group, cfg.v, "v")
    if cfg.lam is None:
        raise ConfigError("--lambda is required")
    if len(cfg.lam) != datum.rank:
        raise ConfigError(f"--lambda must have {datum.rank} coordinates")
    lam = tuple(cfg.lam)
    coeffs = ring.line_bundle_coeffs(v, lam)
    dominant = datum.is_dominant(lam)
    if dominant:
        bad = {w: c for w, c in coeffs.items() if c < 0}
        if bad:
            raise IntegrityError(f"negative coefficients for dominant weight: {bad}")
    rows = [{"w": _word(w), "c": c} for w, c in coeffs.items()]
    rows.sort(key=lambda r: (len(r["w"]), r["w"]))
    obj = {
        "group": datum.label,
        "v": _word(v),
        "lambda": list(lam),
        "dominant": dominant,
        "coeffs": rows,
    }
    csv_rows = [[" ".join(map(str, r["w"])), r["c"]] for r in rows]
    _emit(obj, cfg, csv_rows=csv_rows, csv_header=["w", "c"])
    return EXIT_OK


def cmd_richardson(cfg: JobConfig) -> int:
    datum, group, ring = _build_ring(cfg)
    v = _element_from_config_word(group, cfg.u, "u")
    w = _element_from_config_word(group, cfg.v, "v")
    cls = ring.richardson_class(v, w)
    rows = [{"w": _word(x), "c": c} for x, c in cls.coeffs.items()]
    rows.sort(key=lambda r: (len(r["w"]), r["w"]))
    obj = {
        "group": datum.label,
        "v": _word(v),
        "w": _word(w),
        "comparable": group.bruhat_leq(v, w),
        "dimension": w.length - v.length,
        "coeffs": rows,
    }
    _emit(obj, cfg)
    return EXIT_OK


def _default_line_sweep(datum):
    weights = []
    for i in range(1, datum.rank + 1):
        omega = datum.fundamental_weight(i)
        weights.append(omega)
        weights.append(tuple(-x for x in omega))
    weights.append(datum.rho)
    return weights


def cmd_verify(cfg: JobConfig) -> int:
    datum, group, ring = _build_ring(cfg)
    which = cfg.which
    reports = [ring.verify_normalization()]
    if which in ("signs", "all"):
        pdata = group.parabolic(cfg.parabolic) if cfg.parabolic else None
        reports.append(ring.verify_alternating_signs(parabolic=pdata, jobs=cfg.jobs))
    if which in ("richardson", "all"):
        reports.append(ring.verify_richardson_signs())
    line_objs = []
    if which in ("line", "all"):
        if cfg.lam is not None:
            pairs = [(tuple(cfg.lam), tuple(cfg.mu or [0] * datum.rank))]
        else:
            sweep = _default_line_sweep(datum)
            pairs = [(lam, mu) for lam in sweep for mu in sweep]
        for lam, mu in pairs:
            rep = ring.verify_line_identities(lam, mu)
            line_objs.append(
                {
                    "lambda": list(rep.lam),
                    "mu": list(rep.mu),
                    "checks": [[name, count] for name, count in rep.checks],
                    "violations": [list(x) for x in rep.violations],
                    "elapsed_ms": rep.elapsed_ms,
                    "ok": rep.ok,
                }
            )
    ok = all(r.ok for r in reports) and all(o["ok"] for o in line_objs)
    obj = {
        "group": datum.label,
        "which": which,
        "reports": [_report_obj(r) for r in reports],
        "line_reports": line_objs,
        "ok": ok,
    }
    _emit(obj, cfg)
    return EXIT_OK if ok else EXIT_VIOLATIONS


# -- entry point -----------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", help="group type letter A..G")
    parser.add_argument("--rank", type=int, help="group rank")
    parser.add_argument("--cartan", help="path to a JSON file with an explicit Cartan matrix")
    parser.add_argument("--parabolic", help="comma-separated simple-reflection indices of P")
    parser.add_argument("--u", help="reduced word for u, comma-separated indices ('' or 'e' for identity)")
    parser.add_argument("--v", help="reduced word for v")
    parser.add_argument("--lambda", dest="lam", help="weight in fundamental coordinates, comma-separated")
    parser.add_argument("--mu", dest="mu", help="second weight for the line-identity recursion")
    parser.add_argument("--which", choices=["signs", "richardson", "line", "all"], default="all")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for sweeps")
    parser.add_argument("--cache-dir", dest="cache_dir", help=f"cache directory (default ${CACHE_ENV_VAR})")
    parser.add_argument("--max-weyl", dest="max_weyl", type=int, default=10000)
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--out", help="write output to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kflag",
        description="Exact Schubert-structure-sheaf calculus on flag varieties",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in _COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__)
        _add_common(p)
    return parser


_COMMANDS = {
    "describe": cmd_describe,
    "constants": cmd_constants,
    "verify": cmd_verify,
    "line-coeffs": cmd_line_coeffs,
    "parabolic-constants": cmd_parabolic_constants,
    "richardson": cmd_richardson,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, BoundExceededError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotDivisibleError, NonzeroResidualError, PoleAtOneError, IntegrityError) as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except KflagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
