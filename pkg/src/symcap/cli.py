"""``symcap`` command line.

Exit status: 0 on success, 1 on bad input, 2 when a building has violations
or an internal cross-check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import buildings, capacities, domains, index, lch, reeb
from .errors import (
    EnumerationLimit,
    Inconsistent,
    ParseError,
    SymcapError,
    Undecidable,
    UnsupportedDomain,
)
from .rational import Q, fmt

SUPPORT_HINT = "see the support matrix in `python -m pydoc symcap.domains`"


class InputError(Exception):
    pass


# --- output -------------------------------------------------------------


def _render(headers: list[str], rows: list[list], fmt_name: str, payload=None) -> str:
    cells = [[_cell(v) for v in r] for r in rows]
    if fmt_name == "json":
        data = payload if payload is not None else [dict(zip(headers, r)) for r in cells]
        return json.dumps(data, indent=2) + "\n"
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows(cells)
        return buf.getvalue()
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h) for i, h in enumerate(headers)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (int, str)):
        return str(v)
    return fmt(v)


# --- input --------------------------------------------------------------


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _domain(path: str) -> domains.ToricDomain:
    return domains.from_json(_read_json(path))


def _rational(text: str):
    try:
        return Q(text)
    except ParseError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


# --- commands -----------------------------------------------------------


def cmd_spectrum(args) -> tuple[int, str]:
    E = domains.as_ellipsoid(_domain(args.domain))
    q = reeb.SpectrumQuery(max_action=args.max_action, max_count=args.max_count)
    orbits = reeb.enumerate_orbits(E, q)
    headers = ["axis", "multiplicity", "action", "cz", "degenerate", "good"]
    rows = [[o.axis, o.multiplicity, o.action, o.cz, o.degenerate, o.good] for o in orbits]
    return 0, _render(headers, rows, args.format)


def cmd_capacity(args) -> tuple[int, str]:
    dom = _domain(args.domain)
    r = capacities.capacity(dom, args.kind, args.k)
    if args.format == "table":
        name = r.kind + (f"_{r.k}" if r.k is not None else "")
        value = fmt(r.lower) if r.exact else f"[{fmt(r.lower)}, {fmt(r.upper)}]"
        lines = [f"{name}({dom}) = {value}"]
        lines += [f"  hypothesis: {h}" for h in r.hypotheses]
        if r.witness_orbit is not None:
            w = r.witness_orbit
            lines.append(f"  witness: {w.label} action {fmt(w.action)} cz {w.cz}")
        return 0, "\n".join(lines) + "\n"
    headers = ["kind", "k", "lower", "upper", "exact", "hypotheses"]
    row = [r.kind, r.k, r.lower, r.upper, r.exact, "; ".join(r.hypotheses)]
    return 0, _render(headers, [row], args.format, r.to_json())


def cmd_chain(args) -> tuple[int, str]:
    dom = _domain(args.domain)
    rep = capacities.verify_squeeze(dom, args.k_max)
    headers = ["k", "delta", "cgh_lower", "cgh_upper", "ratio", "ncyl_bound"]
    rows = [
        [r.k, r.delta, r.cgh_lower, r.cgh_upper,
         r.ratio_upper if r.cgh_lower == r.cgh_upper else f"<= {fmt(r.ratio_upper)}",
         r.ncyl_bound]
        for r in rep.rows
    ]
    status = "attained" if rep.attained else "not attained, infimum so far"
    summary = f"c_L = {fmt(rep.delta)} ({status} k={rep.argmin_k})"
    if args.format == "json":
        payload = {
            "domain": domains.to_json(dom),
            "rows": [dict(zip(headers, map(_cell, r))) for r in rows],
            "c_L": fmt(rep.delta),
            "infimum": fmt(rep.infimum),
            "argmin_k": rep.argmin_k,
            "attained": rep.attained,
            "hypotheses": list(rep.hypotheses),
        }
        return 0, json.dumps(payload, indent=2) + "\n"
    body = _render(headers, rows, args.format)
    if args.format == "csv":
        return 0, body
    return 0, body + summary + "\n"


def cmd_index(args) -> tuple[int, str]:
    raw = _read_json(args.setup)
    if not isinstance(raw, dict):
        raise InputError("setup must be a JSON object")
    allowed = {"n", "genus", "cz_pos", "cz_neg", "c1_tau", "even_punctures", "tangency_k"}
    extra = set(raw) - allowed
    if extra:
        raise InputError(f"unknown keys {sorted(extra)}")
    try:
        s = index.CurveSetup(
            target_n=int(raw["n"]),
            genus=int(raw.get("genus", 0)),
            cz_positive=tuple(int(x) for x in raw.get("cz_pos", [])),
            cz_negative=tuple(int(x) for x in raw.get("cz_neg", [])),
            c1_tau=int(raw.get("c1_tau", 0)),
            num_even_punctures=int(raw.get("even_punctures", 0)),
        )
    except KeyError as e:
        raise InputError(f"missing key {e}") from None
    k = args.tangency_k if args.tangency_k is not None else int(raw.get("tangency_k", 0))
    ind = index.fredholm_index(s)
    out = {
        "fredholm_index": ind,
        "euler_characteristic": s.euler_characteristic,
        "virtual_dim": index.virtual_dim_tangency(s, k),
        "tangency_k": k,
    }
    try:
        c1 = index.adjusted_chern_rank1(ind, s.genus, s.num_even_punctures)
        out["c1_adjusted"] = fmt(c1)
        out["transversality"] = index.wendl_criterion(ind, c1).describe()
    except SymcapError as e:
        out["c1_adjusted"] = None
        out["transversality"] = f"n/a: {e}"
    if args.format == "table":
        return 0, "".join(f"{key}: {_cell(v)}\n" for key, v in out.items())
    return 0, _render(list(out), [list(out.values())], args.format, out)


def cmd_lch(args) -> tuple[int, str]:
    E = domains.as_ellipsoid(_domain(args.domain))
    table = lch.lch_table(E, args.action_cap)
    payload = table.to_json()
    aug = lch.augmentation(E, args.k) if args.k else None
    if aug is not None:
        w = aug.witness_orbit
        payload["augmentation"] = {
            "k": aug.k,
            "witness": {"axis": w.axis, "multiplicity": w.multiplicity, "action": fmt(w.action)},
            "curve_count": aug.curve_count,
            "marker_weighted_count": None if aug.marker_weighted_count is None else fmt(aug.marker_weighted_count),
            "value_nonzero": aug.value_nonzero,
            "hypothesis_met": aug.hypothesis_met,
            "provenance": aug.provenance,
            "g_k": fmt(lch.g_k_from_lch(E, args.k)),
        }
    if args.format == "json":
        return 0, json.dumps(payload, indent=2) + "\n"
    headers = ["degree", "axis", "multiplicity", "action"]
    rows = [
        [d, o.axis, o.multiplicity, o.action]
        for d, gens in table.generators_by_degree.items()
        for o in gens
    ]
    body = _render(headers, rows, args.format)
    if args.format == "csv":
        return 0, body
    cert = table.certificate
    body += f"all degrees = {cert.parity} mod 2: {_cell(cert.all_degrees_same_parity)}; differential zero\n"
    if aug is not None:
        a = payload["augmentation"]
        body += (
            f"augmentation k={aug.k}: witness {aug.witness_orbit.label}, "
            f"count {_cell(aug.curve_count) or 'n/a'}, "
            f"hypothesis {'met' if aug.hypothesis_met else 'not met'} ({aug.provenance}); "
            f"g_{aug.k} = {a['g_k']}\n"
        )
    return 0, body


def cmd_building(args) -> tuple[int, str]:
    raw = _read_json(args.file)
    F = buildings.from_json(raw)
    rep = buildings.validate(F, args.budget)
    e = rep.energy
    if args.format == "json":
        payload = {
            "ok": rep.ok,
            "violations": [{"code": v.code, "where": v.where, "message": v.message} for v in rep.violations],
            "total_energy": fmt(e.total),
            "budget": None if e.budget is None else fmt(e.budget),
            "telescoping": None if e.telescoping is None else fmt(e.telescoping),
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        text = _render(["code", "where", "message"],
                       [[v.code, v.where, v.message] for v in rep.violations], "csv")
    else:
        lines = [str(v) for v in rep.violations]
        lines.append(f"levels: {len(F.levels)}, components: {len(F.components())}")
        lines.append(f"total energy: {fmt(e.total)}" + (f" (budget {fmt(e.budget)})" if e.budget is not None else ""))
        if e.telescoping is not None:
            lines.append(f"A(top) - A(bottom): {fmt(e.telescoping)}")
        lines.append("VALID" if rep.ok else f"INVALID ({len(rep.violations)} violations)")
        text = "\n".join(lines) + "\n"
    return (0 if rep.ok else 2), text


def cmd_constants(args) -> tuple[int, str]:
    c = capacities.cm_constants(args.a, args.eps, args.k)
    verdict = "HOLDS (equality)" if c.equality else "HOLDS (strict)"
    out = {
        "a": c.a, "eps": c.eps, "k": c.k, "s1": c.s1, "s2": c.s2, "s": c.s,
        "delta": c.delta, "ell0": c.ell0, "lhs": c.lhs, "rhs": c.rhs,
    }
    if args.format == "table":
        text = "".join(f"{key} = {_cell(v)}\n" for key, v in out.items())
        return 0, text + f"(s/(s-1))(a/k) <= a/k + eps: {verdict}\n"
    out["inequality"] = verdict
    return 0, _render(list(out), [list(out.values())], args.format, {k: _cell(v) for k, v in out.items()})


# --- parser -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symcap", description="Exact symplectic capacities of toric domains.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
        sp.set_defaults(func=func)
        return sp

    sp = add("spectrum", cmd_spectrum, "Reeb orbits of an ellipsoid boundary")
    sp.add_argument("domain")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--max-action", type=_rational)
    g.add_argument("--max-count", type=_positive_int)

    sp = add("capacity", cmd_capacity, "one capacity with its hypotheses")
    sp.add_argument("domain")
    sp.add_argument("--kind", required=True, choices=("cgh", "csh", "g", "gtilde", "cP", "cL"))
    sp.add_argument("--k", type=_positive_int)

    sp = add("chain", cmd_chain, "the capacity chain pinning c_L")
    sp.add_argument("domain")
    sp.add_argument("--k-max", type=_positive_int, required=True)

    sp = add("index", cmd_index, "Fredholm index and transversality verdict")
    sp.add_argument("setup")
    sp.add_argument("--tangency-k", type=int)

    sp = add("lch", cmd_lch, "linearized contact homology of an ellipsoid")
    sp.add_argument("domain")
    sp.add_argument("--action-cap", type=_rational, required=True)
    sp.add_argument("--k", type=_positive_int)

    bp = sub.add_parser("building", help="holomorphic building data")
    bsub = bp.add_subparsers(dest="action", required=True)
    sp = bsub.add_parser("validate", help="check a building JSON file")
    sp.add_argument("file")
    sp.add_argument("--budget", type=_rational)
    sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
    sp.set_defaults(func=cmd_building)

    sp = add("constants", cmd_constants, "neck-stretching constants")
    sp.add_argument("--a", type=_rational, required=True)
    sp.add_argument("--eps", type=_rational, required=True)
    sp.add_argument("--k", type=_positive_int, required=True)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code else 0
    try:
        code, text = args.func(args)
    except (Inconsistent, Undecidable) as e:
        err.write(f"error: {e}\n")
        return 2
    except UnsupportedDomain as e:
        err.write(f"error: {e}; {SUPPORT_HINT}\n")
        return 1
    except (InputError, EnumerationLimit, SymcapError, ValueError, TypeError) as e:
        err.write(f"error: {e}\n")
        return 1
    out.write(text)
    return code


def main() -> None:
    sys.exit(run())
