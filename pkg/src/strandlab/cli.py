"""Command line front end.

Exit status: 0 when every asserted check passes, 1 on an assertion failure,
2 on usage errors, violated preconditions or resource refusals.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor

SCHEMA = "strand-report/1"


class UsageError(Exception):
    pass


def _shape(p) -> str:
    return "[" + ",".join(str(x) for x in p) + "]"


def _terms(ch) -> str:
    parts = []
    for key, c in ch:
        label = (_shape(key[0]) + ";" + _shape(key[1])) if isinstance(key, tuple) and \
            key and isinstance(key[0], tuple) else _shape(key)
        parts.append((f"{c}*" if c != 1 else "") + label)
    return " + ".join(parts) if parts else "0"


def _table(headers, rows) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(headers), line(["-" * w for w in widths])] + [line(r) for r in rows])


# ---------------------------------------------------------------- commands

def cmd_char_jpw(a):
    from .symfunc import jpw_character, strand_length
    _need(a, "n", "r", "s")
    if not a.n > a.s + a.r:
        raise UsageError(f"requires dim E > s+r ({a.n} > {a.s}+{a.r} fails)")
    top = strand_length(a.r, a.s, a.n) if a.max_degree is None else a.max_degree
    rows = []
    for i in range(top + 1):
        ch = jpw_character(a.r, a.s, i, a.n)
        rows.append({"h": i, "character": ch.to_json(), "dim": ch.dim(a.n), "_ch": ch})
    result = {"instance": {"n": a.n, "r": a.r, "s": a.s},
              "degrees": [{k: v for k, v in r.items() if k != "_ch"} for r in rows]}
    table = _table(["degree", "shapes", "dim"], [[r["h"], _terms(r["_ch"]), r["dim"]] for r in rows])
    return result, True, table


def cmd_char_lascoux(a):
    from .symfunc import lascoux_character
    _need(a, "n", "m", "r", "s")
    if a.r < 1:
        raise UsageError("requires r >= 1")
    if a.n < a.r + a.s or a.m < a.r + a.s:
        raise UsageError("requires dim E >= r+s and dim F >= r+s")
    top = a.s * (a.n - a.r - a.s) + a.s * (a.m - a.r - a.s) if a.max_degree is None else a.max_degree
    rows = []
    for i in range(top + 1):
        ch = lascoux_character(a.r, a.s, i, a.n, a.m)
        rows.append({"h": i, "character": ch.to_json(), "dim": ch.dim(a.n, a.m), "_ch": ch})
    result = {"instance": {"n": a.n, "m": a.m, "r": a.r, "s": a.s},
              "degrees": [{k: v for k, v in r.items() if k != "_ch"} for r in rows]}
    table = _table(["degree", "shapes (E*;F)", "dim"], [[r["h"], _terms(r["_ch"]), r["dim"]] for r in rows])
    return result, True, table


def _module_table(degrees, pred_key):
    return _table(["degree", "dim", "character", pred_key],
                  [[d["h"], d["dim"], _terms(d["character"]), _terms(d[pred_key])] for d in degrees])


def cmd_build_pe(a):
    from .periplectic_lab import PeInstance, _info_summary, build_pe_module, jpw_compare
    _need(a, "n", "r", "s")
    inst = PeInstance(a.n, a.r, a.s)
    cx = build_pe_module(inst, a.cap)
    rows = jpw_compare(cx, inst)
    result = {"instance": inst.to_json(), "module": _info_summary(cx),
              "degrees": [{"h": r["h"], "dim": r["dim"], "character": r["character"].to_json(),
                           "jpw": r["jpw"].to_json(), "equal": r["equal"]} for r in rows]}
    return result, all(r["contains"] for r in rows), _module_table(rows, "jpw")


def cmd_build_gl(a):
    from .gl_lab import GlInstance, build_gl_module, lascoux_compare
    from .periplectic_lab import _info_summary
    _need(a, "n", "m", "r", "s")
    inst = GlInstance(a.n, a.m, a.r, a.s)
    cx = build_gl_module(inst, a.cap)
    rows = lascoux_compare(cx, inst)
    result = {"instance": inst.to_json(), "module": _info_summary(cx),
              "degrees": [{"h": r["h"], "dim": r["dim"], "character": r["character"].to_json(),
                           "lascoux": r["lascoux"].to_json(), "equal": r["equal"]} for r in rows]}
    return result, all(r["contains"] for r in rows), _module_table(rows, "lascoux")


def _report_table(rep, pred_key):
    lines = [_module_table(rep.degrees, pred_key), ""]
    lines.append(_table(["check", "result"], [[k, "pass" if v else "FAIL"] for k, v in rep.checks().items()]))
    lines.append("conjecture per degree: " + ",".join("equal" if e else "strict" for e in rep.conjecture_equal))
    return "\n".join(lines)


def cmd_verify_pe(a):
    from .periplectic_lab import PeInstance, run_pe
    _need(a, "n", "r", "s")
    rep = run_pe(PeInstance(a.n, a.r, a.s), a.cap)
    return rep.to_json(), rep.passed, _report_table(rep, "jpw")


def cmd_verify_gl(a):
    from .gl_lab import GlInstance, run_gl
    _need(a, "n", "m", "r", "s")
    rep = run_gl(GlInstance(a.n, a.m, a.r, a.s), a.cap)
    return rep.to_json(), rep.passed, _report_table(rep, "lascoux")


def _run_one(k):
    from .acceptance import run_criterion
    t = time.perf_counter()
    out = run_criterion(k)
    return k, out, time.perf_counter() - t


def cmd_suite(a):
    from .acceptance import CRITERIA
    keys = sorted(CRITERIA) if not a.only else sorted(set(a.only))
    results, timing = {}, {}
    if a.jobs > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            for k, out, dt in ex.map(_run_one, keys):
                results[k], timing[k] = out, dt
    else:
        for k in keys:
            _, results[k], timing[k] = _run_one(k)
    rows = [{"criterion": k, "name": results[k]["name"], "passed": results[k]["passed"],
             "summary": results[k]["summary"]} for k in sorted(results)]
    result = {"criteria": rows, "details": {str(k): _jsonable(results[k]) for k in sorted(results)}}
    table = _table(["#", "criterion", "result", "summary"],
                   [[r["criterion"], r["name"], "pass" if r["passed"] else "FAIL", r["summary"]] for r in rows])
    result["_timing"] = {str(k): round(v, 3) for k, v in sorted(timing.items())}
    return result, all(r["passed"] for r in rows), table


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


COMMANDS = {
    "char-jpw": (cmd_char_jpw, "JPW strand character per degree"),
    "char-lascoux": (cmd_char_lascoux, "Lascoux strand character per degree"),
    "build-pe": (cmd_build_pe, "build the periplectic module and its character"),
    "build-gl": (cmd_build_gl, "build the general linear module and its character"),
    "verify-pe": (cmd_verify_pe, "build and verify a periplectic instance"),
    "verify-gl": (cmd_verify_gl, "build and verify a general linear instance"),
    "suite": (cmd_suite, "run the acceptance checks"),
}


def _need(a, *names):
    missing = [f"--{x}" for x in names if getattr(a, x) is None]
    if missing:
        raise UsageError(f"{a.command} needs {' '.join(missing)}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strandlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        q = sub.add_parser(name, help=help_text)
        for flag in ("n", "m", "r", "s"):
            q.add_argument(f"--{flag}", type=int)
        q.add_argument("--max-degree", type=int)
        q.add_argument("--format", choices=["json", "table"], default="json")
        q.add_argument("--out", help="write the report to this file (atomically)")
        q.add_argument("--cap", type=int, help="ambient dimension ceiling")
        q.add_argument("--no-timing", action="store_true", help="omit the timing key")
        if name == "suite":
            q.add_argument("--jobs", type=int, default=1)
            q.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    return p


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".strand-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    from .periplectic_lab import ConventionError, PreconditionError
    from .superrep import ResourceCapExceeded
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    fn = COMMANDS[a.command][0]
    t = time.perf_counter()
    try:
        result, ok, table = fn(a)
    except (UsageError, PreconditionError, ResourceCapExceeded, ValueError) as e:
        print(f"strandlab {a.command}: {e}", file=sys.stderr)
        return 2
    except ConventionError as e:
        print(f"strandlab {a.command}: convention error: {e}", file=sys.stderr)
        return 1
    timing = result.pop("_timing", {})
    doc = {"schema": SCHEMA, "command": a.command, "passed": ok, "result": result}
    if not a.no_timing:
        doc["timing"] = {"total_seconds": round(time.perf_counter() - t, 3), **timing}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n" if a.format == "json" else table + "\n"
    if a.out:
        write_atomic(a.out, text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
