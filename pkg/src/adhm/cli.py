"""Command-line front end.

Every command prints a one-line summary followed by a JSON document with
``status``, ``payload``, ``checks`` and ``provenance``.  The exit status is 0
iff every check passed, 1 if a check failed and 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .counting import (count_homw_fiber, count_mux_fiber, count_so3_fiber, log_slope,
                       verify_dim_formula)
from .current import (CurrentVec, claimed_fiber, min_deg, stabilizer, stratum_data)
from .datum import (SoDatum, as_datum, is_costable, is_regular, is_stable, moment_map_gl,
                    moment_map_sp)
from .errors import AdhmError, InvariantViolation
from .hilbert import expected_rho, hilbert_rho, invariants_oracle
from .io import datum_to_json, load_datum, text_hash
from .tensor import (iso_so3, iso_so5, iso_so6, restrict_ext, restrict_sym, self_tensor,
                     sym_ext_reconstruction, tensor, vs_ve)


class Result:
    def __init__(self, summary: str = ""):
        self.summary = summary
        self.payload: dict = {}
        self.checks: dict[str, bool] = {}

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _datum_checks(x, res: Result, prefix: str = "") -> None:
    d = as_datum(x)
    res.checks[prefix + "moment_map_zero"] = moment_map_gl(d).is_zero()
    res.checks[prefix + "regular"] = is_regular(d)


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> Result:
    x = load_datum(args.path, check=False)
    res = Result()
    d = as_datum(x)
    info = {"type": type(x).__name__, "dimV": d.dimV, "dimW": d.dimW}
    if isinstance(x, SoDatum):
        try:
            x.check_invariants()
            res.checks["so_invariants"] = True
            mu = moment_map_sp(x)
        except InvariantViolation as exc:
            res.checks["so_invariants"] = False
            info["invariant_violation"] = str(exc)
            mu = moment_map_gl(d)
    else:
        mu = moment_map_gl(d)
    info["moment_map"] = mu.to_json()
    info["moment_map_zero"] = mu.is_zero()
    info["stable"] = is_stable(d)
    info["costable"] = is_costable(d)
    info["regular"] = info["stable"] and info["costable"]
    res.payload = info
    res.summary = (f"{info['type']} k={d.dimV} N={d.dimW}: mu {'= 0' if info['moment_map_zero'] else '!= 0'}, "
                   f"{'regular' if info['regular'] else 'stable' if info['stable'] else 'not stable'}")
    return res


# ---------------------------------------------------------------------------
# product


def cmd_product(args) -> Result:
    verb = args.verb
    paths = args.paths
    need = 2 if verb == "tensor" else 1
    if len(paths) != need:
        raise SystemExit(f"product {verb} takes {need} datum path(s)")
    data = [load_datum(p) for p in paths]
    res = Result()
    if verb == "tensor":
        out = tensor(data[0], data[1])
        _datum_checks(out, res)
        res.payload = {"datum": datum_to_json(out)}
        res.summary = f"tensor: dim V~ = {out.dimV}, dim W~ = {out.dimW}"
        return res
    if verb == "so6":
        out, omega = iso_so6(as_datum(data[0]), seed=args.seed)
        res.payload = {"datum": datum_to_json(out), "omega": omega.to_json()}
        _datum_checks(out, res)
        res.checks["dim_VE"] = out.dimV == 2 * data[0].dimV
        res.summary = f"so6: dim V_E = {out.dimV}, dim W = {out.dimW}"
        return res
    if verb in ("so3", "so5"):
        out = iso_so3(data[0]) if verb == "so3" else iso_so5(data[0])
        res.payload = {"datum": datum_to_json(out)}
        _datum_checks(out, res)
        factor = 4 if verb == "so3" else 2
        res.checks["dimension"] = out.dimV == factor * as_datum(data[0]).dimV
        res.summary = f"{verb}: dim V = {out.dimV}, dim W = {out.dimW}"
        return res
    r = self_tensor(data[0])
    VS, VE = vs_ve(r)
    res.payload["frame"] = r.frame.to_json()
    res.payload["weights"] = list(r.weights)
    k, N = r.k, r.N
    res.checks["dim_VS"] = VS.dim == (N + 2) * k
    res.checks["dim_VE"] = VE.dim == max(N - 2, 0) * k
    if verb == "self-tensor":
        out = r.so_datum if r.formV is not None else r.datum
        res.checks["reconstruction"] = sym_ext_reconstruction(r)
    elif verb == "sym":
        out = restrict_sym(r).datum
    else:
        out = restrict_ext(r).datum
    _datum_checks(out, res)
    res.payload["datum"] = datum_to_json(out)
    res.summary = f"{verb}: dim V = {out.dimV}, dim W = {out.dimW}, dim V_S = {VS.dim}, dim V_E = {VE.dim}"
    return res


# ---------------------------------------------------------------------------
# hilbert


def cmd_hilbert(args) -> Result:
    res = Result()
    series = hilbert_rho(args.trunc, check=False)
    res.checks["matches_closed_form"] = series == expected_rho(args.trunc)
    res.payload["series"] = series.to_json()
    res.summary = str(series)
    if args.oracle is not None:
        oracle = invariants_oracle(args.oracle)
        res.payload["oracle"] = [c.to_json() for c in oracle]
        res.checks["oracle_agrees"] = all(oracle[e] == series[e] for e in range(min(args.oracle, args.trunc) + 1))
    return res


# ---------------------------------------------------------------------------
# count


def cmd_count(args) -> Result:
    res = Result()
    primes = args.prime or [3]
    if args.what == "dimformula":
        rep = verify_dim_formula(args.d, tuple(args.prime) if args.prime else None, args.workers)
        res.payload = rep.to_json()
        res.checks["slope_matches_formula"] = rep.agrees
        res.summary = f"d={args.d}: predicted {rep.predicted}, measured slope {rep.slope:.3f}"
        return res
    reports = []
    for p in primes:
        if args.what == "so3":
            reports.append(count_so3_fiber(args.k, p, args.workers, args.allow_long))
        elif args.what == "homw":
            reports.append(count_homw_fiber(args.d, p, args.workers, args.allow_long, args.method))
        else:
            reports.append(count_mux_fiber(args.d, args.n, p, args.workers))
            res.checks[f"set_equality_p{p}"] = True
    res.payload["reports"] = [r.to_json() for r in reports]
    line = ", ".join(f"p={r.prime}: {r.count}" for r in reports)
    if len(reports) >= 2 and args.what != "mux":
        slope = log_slope(reports)
        res.payload["slope"] = slope
        res.checks["slope_matches_prediction"] = abs(slope - reports[0].predicted_dim) <= 0.5
        line += f"; slope {slope:.3f} (predicted {reports[0].predicted_dim})"
    if args.what == "mux":
        line += ", set equality ok"
    res.summary = line
    return res


# ---------------------------------------------------------------------------
# current


_NAMED = {"e1": (1, 0), "e2": (0, 1)}


def parse_current_vec(text: str, d: int) -> CurrentVec:
    """'e1', 'e2', 'e1z^3', '0', or JSON {"d": D, "coeffs": [[a, b], ...]}."""
    text = text.strip()
    if text == "0":
        return CurrentVec.zero(d)
    for name, (a, b) in _NAMED.items():
        if text.startswith(name):
            rest = text[len(name):]
            m = 0 if not rest else 1 if rest == "z" else int(rest.removeprefix("z^"))
            coeffs = [(Fraction(0), Fraction(0))] * (d + 1)
            coeffs[m] = (Fraction(a), Fraction(b))
            return CurrentVec(d, tuple(coeffs))
    obj = json.loads(text)
    v = CurrentVec.from_json(obj)
    if v.d != d:
        raise ValueError(f"vector has d = {v.d}, expected {d}")
    return v


def cmd_current(args) -> Result:
    res = Result()
    if args.what == "stabilizer":
        x = parse_current_vec(args.x, args.d)
        st = stabilizer(x)
        n, orbit, stratum = stratum_data(x)
        res.payload = {"x": x.to_json(), "min_deg": n, "dim": st.dim, "orbit_dim": orbit,
                       "stratum_dim": stratum, "basis": [e.to_json() for e in st.elements]}
        res.checks["dimension_formula"] = st.dim == (args.d + 1 - n) + 3 * n
        res.summary = f"stabilizer of x (min.deg {n}) in g_{args.d}: dim {st.dim}"
        return res
    S = claimed_fiber(args.d, args.n)
    res.payload = {"d": args.d, "n": args.n, "dim": S.dim, "basis": S.to_json()}
    res.summary = f"claimed fibre for d={args.d}, n={args.n}: dim {S.dim}"
    if args.check_fp:
        rep = count_mux_fiber(args.d, args.n, args.check_fp, args.workers)
        res.payload["count"] = rep.to_json()
        res.checks[f"set_equality_p{args.check_fp}"] = True
        res.summary += f"; F_{args.check_fp} count {rep.count} matches"
    return res


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized choice")
    common.add_argument("--workers", type=int, default=1)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print only the JSON document")
    fmt.add_argument("--pretty", action="store_true", help="indent the JSON document")

    ap = argparse.ArgumentParser(prog="adhm", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"adhm {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a datum file")
    p.add_argument("path", help="datum JSON file or fixture:NAME")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("product", parents=[common], help="tensor products and exceptional maps")
    p.add_argument("verb", choices=["tensor", "self-tensor", "sym", "ext", "so3", "so5", "so6"])
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series of the invariant ring")
    p.add_argument("--trunc", type=int, default=8)
    p.add_argument("--oracle", type=int, default=None, metavar="D")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("count", parents=[common], help="F_p point counts")
    p.add_argument("what", choices=["so3", "homw", "mux", "dimformula"])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--prime", type=int, action="append", help="repeat to measure a slope")
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--method", choices=["histogram", "fourier"], default="histogram",
                   help="homw only: histogram convolution or a rounded DFT")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("current", parents=[common], help="truncated current algebra")
    p.add_argument("what", choices=["stabilizer", "fiber"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--x", default="e1")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--check-fp", type=int, default=None, metavar="P")
    p.set_defaults(func=cmd_current)
    return ap


def _provenance(args) -> dict:
    inputs = {}
    for path in ([args.path] if hasattr(args, "path") else []) + list(getattr(args, "paths", []) or []):
        try:
            inputs[path] = text_hash(path)
        except AdhmError:
            inputs[path] = None
    return {"version": __version__, "command": args.command, "seed": args.seed, "inputs": inputs}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    doc = {"provenance": _provenance(args)}
    try:
        res = args.func(args)
        doc.update(status="ok", payload=res.payload, checks=res.checks)
        code = 0 if res.ok else 1
        summary = res.summary
    except AdhmError as exc:
        doc.update(status="error", error={"kind": exc.kind, "message": str(exc)})
        code = 2
        summary = f"error ({exc.kind}): {exc}"
    if not args.json:
        print(summary)
    print(json.dumps(doc, indent=2 if args.pretty else None, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
