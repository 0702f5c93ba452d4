"""Command-line front end.

Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.

CSV columns:
  ulrich-lines      D,D1,D2
  chern-admissible  r,c1_orbit_form,c2,dim
  conjecture        status,complete,D1,D2
  construct-pair    k,D1,D2
  wild              r,c1,dim
  chain             step,rank,D,ext1,ext_locus_dim,modular_dim,strict
  stability-scan    claim,a
  toric monomials   i,j,k,label,sextic
  toric fixed-points eu,ev,ew,vertex
  other commands    key,value
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from pathlib import Path

from . import __version__, chern, stability, toric, ulrich
from .errors import EnriqError
from .lattice import DivisorClass, fano_delta, parse_divisor

MAX_COORD = 10**6


class UsageError(Exception):
    pass


# -- helpers ---------------------------------------------------------------------


def _divisor(text: str, flag: str) -> DivisorClass:
    d = parse_divisor(text)
    if any(abs(x) > MAX_COORD for x in d.t):
        raise UsageError(f"{flag}: coordinates exceed {MAX_COORD} in tripled form")
    return d


@contextmanager
def _mapper(workers: int):
    if workers <= 1:
        yield None
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield lambda fn, items: pool.map(fn, items)


class Cache:
    def __init__(self, root: str | None):
        self.root = Path(root) if root else None

    def _path(self, *key) -> Path:
        blob = json.dumps([__version__, *key], sort_keys=True).encode()
        return self.root / f"{hashlib.sha256(blob).hexdigest()}.json"

    def get(self, *key):
        if self.root is None:
            return None
        p = self._path(*key)
        if p.exists():
            try:
                return json.loads(p.read_text())
            except (OSError, ValueError):
                return None
        return None

    def put(self, value, *key):
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        p = self._path(*key)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(value, sort_keys=True))
        tmp.replace(p)


def _pretty(d: dict) -> str:
    return d["pretty"]


# -- commands --------------------------------------------------------------------
# each returns (payload, csv_header, csv_rows); rows may be None for key,value


def cmd_ulrich_lines(args, mapper, cache):
    H = _divisor(args.h, "--h")
    key = ("ulrich-lines", list(H.t), -8 - H.square())
    payload = cache.get(*key)
    if payload is None:
        sols = ulrich.enumerate_ulrich_lines(H, mapper=mapper)
        payload = {
            "H": H.to_json(),
            "solutions": [s.to_json() for s in sols],
            "orbits": ulrich.orbits_to_json(ulrich.orbit_classes(sols)),
            "complete": True,
        }
        cache.put(payload, *key)
    rows = [[_pretty(s["D"]), _pretty(s["D1"]), _pretty(s["D2"])] for s in payload["solutions"]]
    return payload, ["D", "D1", "D2"], rows


def cmd_conjecture(args, mapper, cache):
    H = _divisor(args.h, "--h")
    res = ulrich.conjecture_check(H, args.bound)
    payload = res.to_json()
    w = payload["witness"]
    row = [payload["status"], payload["complete"], _pretty(w["D1"]) if w else "", _pretty(w["D2"]) if w else ""]
    return payload, ["status", "complete", "D1", "D2"], [row]


def cmd_construct_pair(args, mapper, cache):
    d1, d2 = ulrich.construct_ulrich_pair(args.k)
    payload = {"k": args.k, "D1": d1.to_json(), "D2": d2.to_json(), "Delta": fano_delta().to_json()}
    return payload, ["k", "D1", "D2"], [[args.k, str(d1), str(d2)]]


def cmd_chern_admissible(args, mapper, cache):
    H = _divisor(args.h, "--h")
    key = ("chern-admissible", list(H.t), args.r, args.limit)
    payload = cache.get(*key)
    if payload is None:
        data, complete = chern.admissible_chern_search(args.r, H, mapper=mapper, limit=args.limit)
        lo, hi = chern.g_norm_window(args.r, H)
        payload = {
            "H": H.to_json(),
            "rank": args.r,
            "window": [lo, hi],
            "complete": complete,
            "classes": [c.to_json() for c in data],
            "table": chern.chern_table_rows(data),
        }
        cache.put(payload, *key)
    return payload, ["r", "c1_orbit_form", "c2", "dim"], payload["table"]


def cmd_moduli_dim(args, mapper, cache):
    c1 = _divisor(args.d, "--d")
    payload = {"rank": args.r, "c1": c1.to_json(), "dim": chern.moduli_dim(args.r, c1)}
    return payload, None, None


def cmd_wild(args, mapper, cache):
    c1, dim = chern.wild_family(args.r)
    payload = {"rank": args.r, "c1": c1.to_json(), "dim": dim}
    return payload, ["r", "c1", "dim"], [[args.r, str(c1), dim]]


def cmd_chain(args, mapper, cache):
    H = _divisor(args.h, "--h") if args.h else None
    partners = [_divisor(x, "--d") for x in args.d] if args.d else None
    rep = chern.build_stable_chain(args.r, partners=partners, H=H)
    payload = rep.to_json()
    rows = [[1, 1, str(rep.partners[0]), "", "", "", ""]]
    for i, s in enumerate(rep.steps, start=2):
        rows.append([i, s.rank, str(rep.partners[i - 1]), s.ext1, s.ext_locus_dim, s.modular_dim, s.strict])
    return payload, ["step", "rank", "D", "ext1", "ext_locus_dim", "modular_dim", "strict"], rows


def cmd_stability_scan(args, mapper, cache):
    payload = stability.stability_scan(args.bound, mapper=mapper)
    rows = [[v["claim"], " ".join(map(str, v["a"]))] for v in payload["violations"]]
    return payload, ["claim", "a"], rows


def cmd_cotangent_check(args, mapper, cache):
    return stability.verify_cotangent_ulrich_classes(), None, None


def _poly(args) -> toric.TriPolynomial:
    if args.poly:
        try:
            data = json.loads(args.poly)
        except ValueError as exc:
            raise UsageError(f"--poly: not valid JSON ({exc})") from None
        try:
            return toric.TriPolynomial.from_json(data)
        except (ValueError, TypeError, AttributeError) as exc:
            raise UsageError(f"--poly: {exc}") from None
    return toric.TriPolynomial.random(args.q, args.seed)


def cmd_toric(args, mapper, cache):
    what = args.toric_cmd
    if what == "monomials":
        mons = toric.invariant_monomials()
        items = [
            {"ijk": list(m), "label": m.label(), "sextic": list(toric.sextic_image(m)),
             "sextic_label": toric.sextic_label(toric.sextic_image(m))}
            for m in mons
        ]
        payload = {"count": len(mons), "vertex": len(toric.vertex_monomials()),
                   "mixed": len(toric.face_monomials()), "monomials": items}
        rows = [[*m["ijk"], m["label"], m["sextic_label"]] for m in items]
        return payload, ["i", "j", "k", "label", "sextic"], rows
    if what == "fixed-points":
        pts = toric.fixed_points()
        payload = {"count": len(pts), "points": [
            {"choice": list(f), "coords": [list(c) for c in f.coords()], "vertex": f.vertex().label()}
            for f in pts]}
        return payload, ["eu", "ev", "ew", "vertex"], [[*f, f.vertex().label()] for f in pts]
    p = _poly(args)
    if what == "sextic":
        tetra, quad = toric.to_sextic_form(p)
        payload = {
            "poly": p.to_json(),
            "tetrahedral": {toric.sextic_label(e): c for e, c in tetra.items()},
            "Q": {toric.sextic_label(e): c for e, c in quad.items()},
        }
        return payload, None, None
    try:
        res = toric.singular_scan_fq(p, args.q)
    except ValueError as exc:
        raise UsageError(f"--q: {exc}") from None
    payload = {
        "poly": p.to_json(),
        "q": res["q"],
        "points_checked": res["points_checked"],
        "zeros": res["zeros"],
        "suspicious": [[list(c) for c in pt] for pt in res["suspicious"]],
        "fixed_point_hits": [list(f) for f in res["fixed_point_hits"]],
        "avoids_fixed_points": res["avoids_fixed_points"],
    }
    return payload, None, None


COMMANDS = {
    "ulrich-lines": cmd_ulrich_lines,
    "conjecture": cmd_conjecture,
    "construct-pair": cmd_construct_pair,
    "chern-admissible": cmd_chern_admissible,
    "moduli-dim": cmd_moduli_dim,
    "wild": cmd_wild,
    "chain": cmd_chain,
    "stability-scan": cmd_stability_scan,
    "cotangent-check": cmd_cotangent_check,
    "toric": cmd_toric,
}


# -- parser ----------------------------------------------------------------------


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache-dir", default=None, help="overridden by $ENRIQ_CACHE")

    parser = argparse.ArgumentParser(
        prog="enriq",
        description="Ulrich line classes and related lattice computations.",
        epilog=__doc__.split("\n\n", 2)[2],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ulrich-lines", parents=[common], help="all Ulrich line classes for H")
    p.add_argument("--h", default="Delta")

    p = sub.add_parser("conjecture", parents=[common], help="search D1, D2 with D1 - D2 = H")
    p.add_argument("--h", required=True)
    p.add_argument("--bound", type=_nonneg, default=4)

    p = sub.add_parser("construct-pair", parents=[common], help="explicit pair for k * Delta")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("chern-admissible", parents=[common], help="admissible (c1, c2) for rank r")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--h", default="Delta")
    p.add_argument("--limit", type=_nonneg, default=100000,
                   help="stop after this many lattice vectors (0 = no limit)")

    p = sub.add_parser("moduli-dim", parents=[common], help="c1^2 - 19 r^2 + 1")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--d", required=True, help="c1")

    p = sub.add_parser("wild", parents=[common], help="the rank-r family of growing dimension")
    p.add_argument("--r", type=_positive, required=True)

    p = sub.add_parser("chain", parents=[common], help="iterated extensions up to rank r")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--d", action="append", help="partner class; repeat r times")
    p.add_argument("--h", default=None)

    p = sub.add_parser("stability-scan", parents=[common], help="zero-sum destabiliser scan")
    p.add_argument("--bound", type=_positive, default=3)

    sub.add_parser("cotangent-check", parents=[common], help="squares of the resolution twists")

    p = sub.add_parser("toric", help="the (2,2,2) model")
    tsub = p.add_subparsers(dest="toric_cmd", required=True)
    tsub.add_parser("monomials", parents=[common])
    tsub.add_parser("fixed-points", parents=[common])
    for name in ("sextic", "scan"):
        t = tsub.add_parser(name, parents=[common])
        t.add_argument("--q", type=int, default=5)
        t.add_argument("--seed", type=int, default=0)
        t.add_argument("--poly", default=None, help='JSON map {"i,j,k": coeff}')
    return parser


def _render(payload, header, rows, fmt) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header is None:
            w.writerow(["key", "value"])
            for k in sorted(payload):
                v = payload[k]
                w.writerow([k, v if isinstance(v, (int, str, bool)) else json.dumps(v, sort_keys=True)])
        else:
            w.writerow(header)
            w.writerows(rows)
        return buf.getvalue()
    lines = []
    for k in sorted(payload):
        v = payload[k]
        if isinstance(v, dict) and "pretty" in v:
            v = v["pretty"]
        elif isinstance(v, list) and len(v) > 20:
            v = f"[{len(v)} items]"
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "chain" and args.d and len(args.d) != args.r:
        print(f"enriq: error: --d given {len(args.d)} times, need {args.r}", file=sys.stderr)
        return 2
    cache = Cache(os.environ.get("ENRIQ_CACHE") or args.cache_dir)
    try:
        with _mapper(args.workers) as mapper:
            payload, header, rows = COMMANDS[args.command](args, mapper, cache)
    except UsageError as exc:
        print(f"enriq: error: {exc}", file=sys.stderr)
        return 2
    except EnriqError as exc:
        print(json.dumps(exc.to_json(), sort_keys=True), file=sys.stderr)
        return 1
    try:
        sys.stdout.write(_render(payload, header, rows, args.format))
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0


if __name__ == "__main__":
    sys.exit(main())
