"""Command-line front end.

Exit status: 0 success, 1 a check came out false, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import certificates as certs
from .constructions import FAMILIES, Construction, construct, verify
from .errors import SemiarcError
from .field import prime_power
from .plane import are_equivalent, plane_from_ref
from .search import MODES, SearchCertificate, census, equivalence_classes, replay, search_long_secant
from .semiarc import PointSet, classify_semiarc, redei_analysis, vt_pairs
from .theorems import THEOREM_IDS, verify_theorem


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def q_range(text: str) -> list[int]:
    """'4..8' -> prime powers in [4, 8]; '4,5,7' -> that list."""
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split(".."))
            qs = [q for q in range(lo, hi + 1) if prime_power(q)]
        else:
            qs = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise UsageError(f"cannot parse q range {text!r}") from None
    bad = [q for q in qs if not prime_power(q)]
    if bad or not qs:
        raise UsageError(f"not prime powers: {bad or text}")
    return qs


def _read_json(src: str):
    try:
        text = sys.stdin.read() if src == "-" else Path(src).read_text()
        return json.loads(text)
    except OSError as e:
        raise UsageError(f"cannot read {src}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{src} is not JSON: {e.msg}") from None


def _points(src: str) -> list[int]:
    if src != "-" and all(c.isdigit() or c in ", " for c in src):
        return [int(x) for x in src.replace(" ", "").split(",") if x]
    data = _read_json(src)
    if isinstance(data, dict):
        data = data.get("points")
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise UsageError(f"{src}: expected a list of point indices or an object with 'points'")
    return data


def _plane(args):
    if getattr(args, "plane", None):
        return plane_from_ref(args.plane)
    if getattr(args, "q", None):
        return plane_from_ref(f"pg:{args.q}")
    raise UsageError("give --plane pg:<q> | file:<path>")


def _params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


def _emit(obj: dict, out: str | None) -> None:
    text = certs.dumps(obj)
    if out:
        certs.write_atomic(Path(out), text)
    else:
        sys.stdout.write(text)


def construction_certificate(c: Construction) -> dict:
    res = verify(c)
    return certs.sign({"kind": "construction", **c.to_json(), **res})


def cmd_construct(args) -> int:
    c = construct(args.family, args.q, **_params(args.param))
    cert = construction_certificate(c)
    _emit(cert, args.out)
    return 0 if cert["ok"] else 1


def cmd_verify(args) -> int:
    data = _read_json(args.cert)
    if not isinstance(data, dict) or "kind" not in data:
        raise UsageError("not a certificate")
    digest_ok = certs.check_digest(data)
    kind = data["kind"]
    if kind == "construction":
        plane = plane_from_ref(data["plane"])
        c = Construction(data["family"], data.get("params", {}), PointSet(plane, data["points"]),
                         data["claimed_t"], data.get("claimed_type"))
        res = verify(c)
        ok = res["ok"] and digest_ok
    elif kind == "search":
        ref = data["plane"]["ref"] if isinstance(data["plane"], dict) else data["plane"]
        res = {"replayed": replay(data, plane_from_ref(ref))}
        ok = res["replayed"] and digest_ok
    elif kind in ("semiarc", "theorem"):
        res = {}
        ok = digest_ok
    else:
        raise UsageError(f"unknown certificate kind {kind!r}")
    _emit(certs.sign({"kind": "verification", "of": kind, "digest_ok": digest_ok, "ok": ok, **res}), args.out)
    return 0 if ok else 1


def cmd_classify(args) -> int:
    plane = _plane(args)
    pts = _points(args.points)
    rep = classify_semiarc(plane, pts)
    out = {"kind": "semiarc", "plane": plane.ref, **rep.to_json()}
    if rep.t is not None:
        out["vt"] = [w.to_json() for w in vt_pairs(plane, pts, rep.t)]
    out["redei"] = redei_analysis(plane, pts).to_json()
    _emit(certs.sign(out), args.out)
    return 0 if rep.t is not None else 1


def cmd_search(args) -> int:
    plane = _plane(args)
    frontier = None
    if args.resume:
        frontier = certs.store_path(plane.ref, args.t, {"plane": plane.ref, "t": args.t, "mode": args.mode},
                                    args.store).with_suffix(".frontier.json")
    cert = search_long_secant(plane, args.t, args.mode, jobs=args.jobs, time_limit=args.time_limit,
                              frontier=frontier)
    if frontier is not None and cert.complete and frontier.exists():
        frontier.unlink()
    _emit(cert.to_json(), args.out)
    return 0


def cmd_census(args) -> int:
    plane = _plane(args)
    start = time.monotonic()
    certs_ = census(plane, mode=args.mode, jobs=args.jobs, time_limit=args.time_limit,
                    store=not args.no_store, root=args.store)
    summary = {
        "kind": "census",
        "plane": plane.ref,
        "mode": args.mode,
        "complete": all(c.complete for c in certs_),
        "results": [{"t": c.t, "count_up_to_stabilizer": c.count_up_to_stabilizer,
                     "labelled_total": c.labelled_total, "complete": c.complete} for c in certs_],
        "wall_time": int((time.monotonic() - start) * 1000),
    }
    _emit(certs.sign(summary), args.out)
    return 0


def cmd_check(args) -> int:
    qs = q_range(args.q) if args.q else None
    rep = verify_theorem(args.id, qs, time_limit=args.time_limit, jobs=args.jobs)
    _emit(certs.sign(rep.to_json()), args.out)
    return 0 if rep.passed else 1


def cmd_equiv(args) -> int:
    plane = _plane(args)
    a, b = _points(args.a), _points(args.b)
    g = are_equivalent(plane, a, b)
    out = {"kind": "equivalence", "plane": plane.ref, "a": sorted(set(a)), "b": sorted(set(b)),
           "equivalent": g is not None, "collineation": None if g is None else g.to_json()}
    if args.classes:
        out["classes"] = equivalence_classes(plane, [sorted(set(a)), sorted(set(b))])
    _emit(certs.sign(out), args.out)
    return 0 if g is not None else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semiarcs", description="Semiarcs in finite projective planes.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp, plane=True):
        if plane:
            sp.add_argument("--plane", help="pg:<q> or file:<path>")
            sp.add_argument("--q", type=int, help="shorthand for --plane pg:<q>")
        sp.add_argument("--out", help="write JSON here instead of stdout")

    c = sub.add_parser("construct", help="build a family member and certify it")
    c.add_argument("family", choices=FAMILIES)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--param", action="append", metavar="KEY=JSON")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="re-check a certificate")
    v.add_argument("cert", nargs="?", default="-")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("classify", help="semiarc report for a point set")
    common(k)
    k.add_argument("--points", required=True, help="JSON file, '-' or comma list")
    k.set_defaults(func=cmd_classify)

    for name, fn in (("search", cmd_search), ("census", cmd_census)):
        s = sub.add_parser(name, help="long-secant search" if name == "search" else "search every t")
        common(s)
        if name == "search":
            s.add_argument("--t", type=int, required=True)
            s.add_argument("--resume", action="store_true", help="keep a frontier file in the store")
        else:
            s.add_argument("--no-store", action="store_true")
        s.add_argument("--mode", choices=MODES, default="witnesses")
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--time-limit", type=float)
        s.add_argument("--store", help="certificate store root")
        s.set_defaults(func=fn)

    ch = sub.add_parser("check", help="replay a theorem on exhaustive data")
    ch.add_argument("id", choices=THEOREM_IDS)
    ch.add_argument("--q", help="'4..8' or '4,5,7'")
    ch.add_argument("--jobs", type=int, default=1)
    ch.add_argument("--time-limit", type=float)
    ch.add_argument("--out")
    ch.set_defaults(func=cmd_check)

    e = sub.add_parser("equiv", help="projective equivalence of two sets")
    common(e)
    e.add_argument("--a", required=True)
    e.add_argument("--b", required=True)
    e.add_argument("--classes", action="store_true")
    e.set_defaults(func=cmd_equiv)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"semiarcs: error: {e}", file=sys.stderr)
        return 2
    except SemiarcError as e:
        print(f"semiarcs: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
