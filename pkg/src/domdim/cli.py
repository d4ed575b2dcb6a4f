"""Command-line driver: compute, verify and report.

    python -m domdim --group cyclic:2 --p 2
    python -m domdim --group 'perm:(1 2 3)(4 5)' --p 3 --theorem2 --remark
    python -m domdim --batch groups.txt --report all.json

Group specs::

    cyclic:N | elemab:p:r | dihedral:N | quaternion:8 | sym:N
    product:SPEC,SPEC[,SPEC...] | perm:"(1 2 3)(4 5)"

``dihedral:N`` is the dihedral group of order N.  Inside ``product`` a perm
spec with several generators must be quoted so its commas are not split.

Exit status: 0 verified, 1 a verification failed, 2 usage error,
3 resource ceiling (group order bound or resolution size).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import shlex
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .ddim import (
    DEFAULT_CUTOFF,
    SCHEMA_VERSION,
    Exact,
    Infinite,
    PreconditionError,
    comack_ddim,
    remark_check,
    verify_theorem2_instance,
)
from .endo import build_V, end_algebra
from .gfp import PrimeField, is_prime
from .groups import (
    DEFAULT_ORDER_BOUND,
    FiniteGroup,
    GroupError,
    OrderBoundError,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    permutation_group,
    quaternion8,
    sylow_subgroup,
    symmetric,
)
from .oracle import MAX_DIM, brute_ddim_small
from .rep import DEFAULT_CEILING, ResourceCeilingError

log = logging.getLogger("domdim")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
HARD_ORDER_BOUND = 64


class SpecError(ValueError):
    pass


@dataclass
class RunConfig:
    group: str | None
    p: int | None
    cutoff: int = DEFAULT_CUTOFF
    order_bound: int = DEFAULT_ORDER_BOUND
    ceiling: int = DEFAULT_CEILING
    report: str | None = None
    cache: str | None = None
    verify_double_cosets: bool = False
    theorem2: bool = False
    remark: bool = False
    oracle: bool = False
    batch: str | None = None
    timing: bool = False


# -- group specs ----------------------------------------------------------------


def _split_top_level(text: str) -> list[str]:
    """Split on commas outside parentheses and double quotes."""
    parts, depth, quoted, cur = [], 0, False, []
    for ch in text:
        if ch == '"':
            quoted = not quoted
        elif not quoted and ch == "(":
            depth += 1
        elif not quoted and ch == ")":
            depth -= 1
        if ch == "," and depth == 0 and not quoted:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if quoted or depth:
        raise SpecError(f"unbalanced quotes or parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def _int_arg(kind: str, s: str) -> int:
    try:
        n = int(s)
    except ValueError:
        raise SpecError(f"{kind}: expected an integer, got {s!r}") from None
    if n < 1:
        raise SpecError(f"{kind}: expected a positive integer, got {n}")
    return n


def parse_group_spec(text: str, bound: int = DEFAULT_ORDER_BOUND) -> FiniteGroup:
    """Build the group named by a spec string (see the module docstring)."""
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise SpecError(f"group spec {text!r} has no ':'")
    try:
        if kind == "cyclic":
            g = cyclic(_int_arg(kind, rest), bound)
        elif kind == "elemab":
            a, _, b = rest.partition(":")
            q, r = _int_arg(kind, a), _int_arg(kind, b)
            if not is_prime(q):
                raise SpecError(f"elemab: {q} is not prime")
            g = elementary_abelian(q, r, bound)
        elif kind == "dihedral":
            g = dihedral(_int_arg(kind, rest), bound)
        elif kind == "quaternion":
            if rest != "8":
                raise SpecError("only quaternion:8 is available")
            g = quaternion8()
        elif kind == "sym":
            g = symmetric(_int_arg(kind, rest), bound)
        elif kind == "product":
            factors = [parse_group_spec(s, bound) for s in _split_top_level(rest)]
            if len(factors) < 2:
                raise SpecError("product needs at least two factors")
            g = factors[0]
            for h in factors[1:]:
                g = direct_product(g, h, bound)
        elif kind == "perm":
            g = permutation_group(rest.strip().strip('"'), bound)
        else:
            raise SpecError(f"unknown group family {kind!r}")
    except OrderBoundError:
        raise
    except GroupError as e:
        raise SpecError(str(e)) from None
    return g


# -- arguments -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="domdim",
        description="Dominant dimension of End_kP of the sum of all permutation modules k[P/Q].",
    )
    ap.add_argument("--group", help="group spec, e.g. cyclic:4 or 'perm:(1 2 3)(4 5)'")
    ap.add_argument("--p", type=int, help="the prime")
    ap.add_argument("--max-ext", dest="cutoff", type=int, default=DEFAULT_CUTOFF,
                    help="highest Ext degree to compute (default %(default)s)")
    ap.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND,
                    help=f"largest group order accepted (at most {HARD_ORDER_BOUND})")
    ap.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                    help="largest resolution term dimension (default %(default)s)")
    ap.add_argument("--report", help="write the JSON report here instead of stdout")
    ap.add_argument("--cache", help="directory for cached reports")
    ap.add_argument("--verify-double-cosets", action="store_true",
                    help="compare every Hom dimension with the double coset count")
    ap.add_argument("--theorem2", action="store_true", help="compare ddim over kG with ddim over kP")
    ap.add_argument("--remark", action="store_true", help="check dim Ext^1(U,U) >= dim Ext^1(k,k) >= 1")
    ap.add_argument("--oracle", action="store_true",
                    help=f"cross-check with the brute-force oracle (p = 2, dim F <= {MAX_DIM})")
    ap.add_argument("--batch", help="file of 'spec p' lines; '#' starts a comment")
    ap.add_argument("--timing", action="store_true", help="record wall time (reports stop being reproducible)")
    return ap


def parse_args(argv=None) -> RunConfig:
    ap = build_parser()
    ns = ap.parse_args(argv)
    cfg = RunConfig(**vars(ns))
    if cfg.batch is None:
        if cfg.group is None or cfg.p is None:
            ap.error("--group and --p are required unless --batch is given")
        if not is_prime(cfg.p):
            ap.error(f"--p {cfg.p} is not prime")
    elif cfg.group is not None:
        ap.error("--batch and --group are exclusive")
    if cfg.cutoff < 1:
        ap.error("--max-ext must be at least 1")
    if not 1 <= cfg.order_bound <= HARD_ORDER_BOUND:
        ap.error(f"--order-bound must lie in 1..{HARD_ORDER_BOUND}")
    if cfg.group is not None:
        try:
            parse_group_spec(cfg.group, cfg.order_bound)
        except SpecError as e:
            ap.error(str(e))
        except OrderBoundError:
            pass  # reported by run() with the resource exit status
    return cfg


# -- running -------------------------------------------------------------------


def cache_key(spec: str, p: int, cfg: RunConfig) -> str:
    payload = {
        "spec": spec,
        "p": p,
        "cutoff": cfg.cutoff,
        "order_bound": cfg.order_bound,
        "ceiling": cfg.ceiling,
        "checks": [cfg.verify_double_cosets, cfg.theorem2, cfg.remark, cfg.oracle],
        "version": __version__,
        "schema": SCHEMA_VERSION,
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def atomic_write(path: str | Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_cached(path: Path, key: str):
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        if data["key"] != key or data["result"]["report"]["schema_version"] != SCHEMA_VERSION:
            raise ValueError("key or schema mismatch")
        return data["result"]
    except (ValueError, KeyError, TypeError) as e:
        log.warning("ignoring corrupt cache entry %s (%s); recomputing", path, e)
        return None


def _optional_check(fn, *args):
    try:
        return fn(*args)
    except PreconditionError as e:
        return f"not applicable: {e}"


def compute(spec: str, p: int, cfg: RunConfig) -> dict:
    """One run; ``{"status", "failures", "report"}`` (raises on resource limits)."""
    g = parse_group_spec(spec, cfg.order_bound)
    rep = comack_ddim(g, p, cfg.cutoff, spec=spec, verify_double_cosets=cfg.verify_double_cosets,
                      ceiling=cfg.ceiling, timing=cfg.timing)
    failures = []
    expected = Exact(2) if rep.sylow_order > 1 else Infinite
    if rep.ddim != expected:
        failures.append(f"ddim {rep.ddim}, expected {expected}")
    if "lower-bound witness failed" in rep.flags:
        failures.append("lower-bound witness")
    if rep.checks.get("double_cosets") is False:
        failures.append("double cosets")

    if cfg.theorem2:
        t2 = _optional_check(verify_theorem2_instance, g, p, cfg.cutoff, cfg.ceiling)
        rep.checks["theorem2"] = t2 if isinstance(t2, str) else t2.to_json()
        if not isinstance(t2, str) and not t2.ok:
            failures.append("theorem2")
    if cfg.remark:
        rm = _optional_check(remark_check, g, p, cfg.ceiling)
        rep.checks["remark"] = rm if isinstance(rm, str) else rm.to_json()
        if not isinstance(rm, str) and not rm.ok:
            failures.append("remark")
    if cfg.oracle:
        if p == 2 and rep.dim_F <= MAX_DIM:
            pg = g if g.is_p_group(p) else sylow_subgroup(g, p).as_group()[0]
            brute = brute_ddim_small(end_algebra(build_V(pg, PrimeField(p))).algebra)
            rep.checks["oracle"] = {"ddim": brute.to_json(), "agrees": brute == rep.ddim}
            if brute != rep.ddim:
                failures.append("oracle")
        else:
            rep.checks["oracle"] = f"not applicable: needs p = 2 and dim F <= {MAX_DIM}"
    return {"status": EXIT_FAILED if failures else EXIT_OK, "failures": failures, "report": rep.to_json()}


def run_one(spec: str, p: int, cfg: RunConfig) -> dict:
    """Like :func:`compute`, through the cache, with errors folded into the status."""
    key = cache_key(spec, p, cfg)
    path = Path(cfg.cache) / f"{key}.json" if cfg.cache and not cfg.timing else None
    if path is not None:
        hit = _load_cached(path, key)
        if hit is not None:
            return hit
    try:
        result = compute(spec, p, cfg)
    except SpecError as e:
        return {"status": EXIT_USAGE, "failures": [str(e)], "report": None}
    except (OrderBoundError, ResourceCeilingError) as e:
        return {"status": EXIT_RESOURCE, "failures": [str(e)], "report": None}
    if path is not None:
        atomic_write(path, dumps({"key": key, "result": result}))
    return result


def read_batch(path: str) -> list[tuple[str, int]]:
    entries = []
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = shlex.split(line)
        if len(toks) < 2 or not toks[-1].isdigit() or not is_prime(int(toks[-1])):
            raise SpecError(f"{path}:{n}: expected '<group spec> <prime>'")
        entries.append((" ".join(toks[:-1]), int(toks[-1])))
    return entries


def summary_table(rows: list[tuple[str, int, dict]]) -> str:
    head = ("group", "p", "|G|", "|P|", "dim F", "ddim", "result")
    lines = [head]
    for spec, p, res in rows:
        r = res["report"]
        if r is None:
            lines.append((spec, str(p), "-", "-", "-", "-", f"error ({res['status']})"))
            continue
        d = r["ddim"]
        dd = "infinite" if d["kind"] == "infinite" else (str(d["value"]) if d["kind"] == "exact" else f">={d['value']}")
        verdict = "ok" if res["status"] == EXIT_OK else "FAIL: " + ", ".join(res["failures"])
        lines.append((spec, str(p), str(r["group"]["order"]), str(r["group"]["sylow_order"]), str(r["dim_F"]), dd, verdict))
    widths = [max(len(row[i]) for row in lines) for i in range(len(head))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in lines)


def _batch_status(statuses: list[int]) -> int:
    for s in (EXIT_USAGE, EXIT_RESOURCE, EXIT_FAILED):
        if s in statuses:
            return s
    return EXIT_OK


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if cfg.batch is not None:
        try:
            entries = read_batch(cfg.batch)
        except (OSError, SpecError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        rows = [(spec, p, run_one(spec, p, cfg)) for spec, p in entries]
        print(summary_table(rows), file=out)
        status = _batch_status([r["status"] for _, _, r in rows])
        if cfg.report:
            combined = {
                "schema_version": SCHEMA_VERSION,
                "runs": [{"spec": s, "p": p, **r} for s, p, r in rows],
                "status": status,
            }
            atomic_write(cfg.report, dumps(combined))
        return status

    res = run_one(cfg.group, cfg.p, cfg)
    if res["report"] is None:
        print(f"error: {res['failures'][0]}", file=sys.stderr)
        return res["status"]
    doc = dict(res["report"], verdict={"status": res["status"], "failures": res["failures"]})
    if cfg.report:
        atomic_write(cfg.report, dumps(doc))
        print(summary_table([(cfg.group, cfg.p, res)]), file=out)
    else:
        out.write(dumps(doc))
    return res["status"]


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
