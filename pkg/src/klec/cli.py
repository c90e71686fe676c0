"""Command-line interface: curve sweeps with machine-readable reports.

Subcommands: invariants, lpoly, verify, sha, angles, sweep.  All reports are
versioned JSON ({"schema": 1}) or CSV; byte-identical output for identical
configuration regardless of worker count.  Exit status 0 means every checked
identity held; 1 means a violation (reported in "failures" with a
self-describing check id); 2 means the configuration was unusable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bsd, distribution, lfunction
from .algebra import DEFAULT_BUDGET, FieldElem, build_field, places_P
from .charsums import gauss_sum, kloosterman_sum
from .curve import (
    CurveParams,
    bad_places_report,
    curve_invariants,
    isogeny_identity_check,
    torsion_structure,
)
from .errors import BudgetExceeded, ConsistencyError, KlecError
from .kernels import BACKEND

SCHEMA = 1


# ---------------------------------------------------------------------------
# per-curve check batteries; each returns (payload, failures)


def _fail(check: str, detail) -> dict:
    return {"check": check, "detail": str(detail)}


def invariants_checks(params: CurveParams):
    failures = []
    inv = curve_invariants(params)
    payload = {
        "logq_H": inv.logq_H,
        "logq_N": inv.logq_N,
        "b": inv.b_degree,
        "tamagawa": inv.tamagawa,
        "torsion": inv.torsion_order,
    }
    try:
        rep = bad_places_report(params)
        payload["squarefree"] = rep.squarefree
        payload["bad_degree_sum"] = rep.finite_places_degree_sum
        payload["infinite_fiber"] = {
            "kodaira": rep.infinite_fiber.kodaira,
            "delta": rep.infinite_fiber.delta,
            "conductor_exponent": rep.infinite_fiber.conductor_exponent,
        }
        payload["finite_fiber_type"] = rep.finite_fiber_type
        if rep.finite_places_degree_sum + rep.infinite_fiber.delta != 12 * inv.logq_H:
            failures.append(_fail("discriminant-degree-bookkeeping", "12*logq_H mismatch"))
    except ConsistencyError as e:
        failures.append(_fail("discriminant-squarefree", e))
    if inv.logq_N != 4 * inv.logq_H:
        failures.append(_fail("height-is-fourth-root-of-conductor", inv.logq_N))
    if len(torsion_structure(params)) != 2:
        failures.append(_fail("torsion-order-two", "unexpected torsion"))
    payload["isogeny_ok"] = isogeny_identity_check(params)
    if not payload["isogeny_ok"]:
        failures.append(_fail("two-isogeny-image-identity", "expansion did not vanish"))
    return payload, failures


def lpoly_checks(params: CurveParams, L=None, workers=1, budget=DEFAULT_BUDGET, rh_limit=500):
    failures = []
    if L is None:
        L = lfunction.closed_form_lpolynomial(params, workers=workers, budget=budget)
    q, a = params.q, params.a
    payload = {"coeffs": [str(c) for c in L.coeffs], "b": L.b}
    if L.b != 2 * (q**a - 1):
        failures.append(_fail("lfunction-degree", L.b))
    if L.coeffs[0] != 1:
        failures.append(_fail("lfunction-constant-term-one", L.coeffs[0]))
    try:
        payload["sign"] = lfunction.functional_equation_sign(L)
    except ConsistencyError as e:
        failures.append(_fail("functional-equation", e))
        payload["sign"] = None
    np = lfunction.newton_polygon(L, params.field.p, params.field.f)
    payload["slopes"] = [[str(s), m] for s, m in np.slopes]
    expected = ((Fraction(1, 2), L.b // 2), (Fraction(3, 2), L.b // 2))
    if np.slopes != expected:
        failures.append(_fail("slopes-half-and-three-halves", payload["slopes"]))
    if L.b <= rh_limit:
        try:
            dev = lfunction.rh_check(L)
            payload["rh_deviation"] = dev
            if dev > 1e-9:
                failures.append(_fail("roots-unimodular", dev))
        except KlecError as e:
            failures.append(_fail("roots-unimodular", e))
    else:
        payload["rh_deviation"] = None
    return payload, failures


def verify_checks(params: CurveParams, n_max=None, workers=1, budget=DEFAULT_BUDGET):
    """Closed form against both brute-force oracles."""
    failures = []
    L = lfunction.closed_form_lpolynomial(params, workers=workers, budget=budget)
    if n_max is None:
        n_max = lfunction.default_n_max(params.q, budget)
    oracle = lfunction.oracle_log_coeffs(params, n_max, budget, workers)
    closed = lfunction.log_coeffs_of(L, n_max)
    payload = {"n_max": n_max, "log_coeffs": oracle, "match": oracle == closed}
    if not payload["match"]:
        failures.append(_fail("oracle-log-coefficients", {"oracle": oracle, "closed": closed}))

    if n_max > L.b // 2:
        R = lfunction.reconstruct_from_log_coeffs(oracle, L.b, params.q)
        payload["reconstruction_match"] = R.coeffs == L.coeffs
        if not payload["reconstruction_match"]:
            failures.append(_fail("oracle-full-reconstruction", "coefficients differ"))
    else:
        payload["reconstruction_match"] = None

    d_max = min(n_max, max(1, lfunction.default_n_max(params.q, budget)))
    counts = lfunction.oracle_point_counts(params, d_max, budget)
    series = lfunction.euler_product_truncation(counts, params.q, d_max)
    truncated = [L.coeffs[k] if k <= L.b else 0 for k in range(d_max + 1)]
    payload["euler_truncation_match"] = series == truncated
    if not payload["euler_truncation_match"]:
        failures.append(_fail("oracle-euler-truncation", {"series": series}))
    return payload, failures


def sha_checks(params: CurveParams, workers=1, budget=DEFAULT_BUDGET):
    failures = []
    try:
        rep = bsd.sha_report(params, workers=workers, budget=budget)
    except (ConsistencyError, AssertionError) as e:
        return {"error": str(e)}, [_fail("bsd-integrality", e)]
    payload = rep.serialize()
    if not rep.is_perfect_square:
        failures.append(_fail("sha-perfect-square", rep.sha_order))
    if rep.gcd_with_p != 1:
        failures.append(_fail("sha-prime-to-p", rep.gcd_with_p))
    if rep.ordp_central != Fraction(-(params.q**params.a - 1), 2):
        failures.append(_fail("central-value-valuation", str(rep.ordp_central)))
    ratio, decomposition = bsd.brauer_siegel(params, rep)
    payload["brauer_siegel_decomposition"] = decomposition
    if abs(ratio - decomposition) > 1e-9:
        failures.append(_fail("brauer-siegel-decomposition", ratio - decomposition))
    return payload, failures


def angles_checks(params: CurveParams, workers=1, budget=DEFAULT_BUDGET):
    failures = []
    sample = distribution.angle_sample(params, workers=workers, budget=budget)
    try:
        rep = distribution.distribution_report(sample, params.field.p)
    except ConsistencyError as e:
        return {"error": str(e)}, [_fail("angle-margins", e)], None
    payload = rep.serialize()
    payload["count"] = len(sample.angles)
    return payload, failures, sample


# ---------------------------------------------------------------------------
# argument handling


def _parse_a_values(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _parse_gammas(field, text: str) -> list[FieldElem]:
    if text == "all":
        return [field.elem(c) for c in range(1, field.q)]
    if "," in text:
        return [field.from_coeffs([int(c) for c in text.split(",")])]
    code = int(text)
    if not 0 < code < field.q:
        raise ValueError(f"gamma code {code} outside 1..{field.q - 1}")
    return [field.elem(code)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klec",
        description="Exact L-functions, Sha orders and Kloosterman-angle "
        "statistics for the curves y^2 = x^3 + (t^(q^a) - t) x^2 + gamma x.",
    )
    parser.add_argument("command", choices=["invariants", "lpoly", "verify", "sha", "angles", "sweep"])
    parser.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    parser.add_argument("--f", type=int, default=1, help="extension degree of the base field")
    parser.add_argument("--modulus", type=str, default=None,
                        help="comma-separated modulus coefficients, lowest first")
    parser.add_argument("--gamma", type=str, default="1",
                        help="gamma code, coefficient list, or 'all'")
    parser.add_argument("--a", type=str, default="1", help="level, or range like 1..8")
    parser.add_argument("--n-max", type=int, default=None, help="oracle depth override")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="operation budget for enumeration loops")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    return parser


def _angles_csv(samples) -> str:
    """Per-place rows: place polynomial, degree, Kl coefficients, theta, eps."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "gamma", "a", "place", "deg", "kl_coeffs", "theta", "epsilon_class"])
    for params, sample in samples:
        for place, theta in sample.per_place:
            kv = kloosterman_sum(place, params.gamma)
            gv = gauss_sum(place)
            writer.writerow([
                params.q,
                params.gamma.code,
                params.a,
                " ".join(str(c) for c in place.poly.serialize()),
                place.degree,
                " ".join(str(c) for c in kv.value.coeffs),
                repr(theta),
                gv.epsilon_class,
            ])
    return buf.getvalue()


def _sweep_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = ["q", "gamma", "a", "b", "sign", "sha_order", "brauer_siegel", "ks",
            "w_error", "margin_min", "checks_failed"]
    writer.writerow(cols)
    for row in rows:
        writer.writerow([row.get(c, "") for c in cols])
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = build_field(args.p, args.f,
                            [int(c) for c in args.modulus.split(",")] if args.modulus else None)
        gammas = _parse_gammas(field, args.gamma)
        a_values = _parse_a_values(args.a)
        if any(a < 1 for a in a_values):
            raise ValueError("levels must be >= 1")
        if args.budget <= 0:
            raise ValueError("budget must be positive")
    except (KlecError, ValueError) as e:
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": str(e)}) + "\n")
        return 2

    results = []
    failures = []
    angle_samples = []
    sweep_rows = []
    try:
        for a in a_values:
            for gamma in gammas:
                params = CurveParams(field, gamma, a)
                label = params.label() | {"p": field.p, "f": field.f}
                try:
                    if args.command == "invariants":
                        payload, fails = invariants_checks(params)
                    elif args.command == "lpoly":
                        payload, fails = lpoly_checks(params, workers=args.workers, budget=args.budget)
                    elif args.command == "verify":
                        payload, fails = verify_checks(params, args.n_max, args.workers, args.budget)
                    elif args.command == "sha":
                        payload, fails = sha_checks(params, args.workers, args.budget)
                    elif args.command == "angles":
                        payload, fails, sample = angles_checks(params, args.workers, args.budget)
                        if sample is not None:
                            angle_samples.append((params, sample))
                    else:  # sweep
                        payload, fails = _sweep_one(params, args, sweep_rows)
                except (ConsistencyError, AssertionError) as e:
                    # a tripped bug trap is a reportable violation, not a crash
                    payload, fails = {"error": str(e)}, [_fail("consistency-trap", e)]
                results.append(label | payload)
                failures.extend(label | f for f in fails)
    except BudgetExceeded as e:
        sys.stderr.write(json.dumps({"schema": SCHEMA, "error": str(e)}) + "\n")
        return 2

    if args.format == "csv" and args.command == "angles":
        text = _angles_csv(angle_samples)
    elif args.format == "csv" and args.command == "sweep":
        text = _sweep_csv(sweep_rows)
    else:
        text = json.dumps(
            {
                "schema": SCHEMA,
                "command": args.command,
                "field": field.serialize(),
                "kernel_backend": BACKEND,
                "results": results,
                "failures": failures,
            },
            sort_keys=True,
            separators=(",", ": "),
            indent=1,
        ) + "\n"

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if failures else 0


def _sweep_one(params: CurveParams, args, sweep_rows: list):
    """All per-curve stages, with the expensive ones gated by the budget."""
    payload = {}
    fails = []
    inv_payload, inv_fails = invariants_checks(params)
    payload |= inv_payload
    fails += inv_fails

    q, a, p = params.q, params.a, params.field.p
    b = 2 * (q**a - 1)
    n_places = len(places_P(params.field, a, args.budget).places)
    expansion_cost = 2 * b * n_places * (p - 1) ** 2
    if expansion_cost <= args.budget:
        lp_payload, lp_fails = lpoly_checks(params, workers=args.workers, budget=args.budget)
        payload["sign"] = lp_payload.get("sign")
        payload["slopes"] = lp_payload.get("slopes")
        fails += lp_fails
        v_payload, v_fails = verify_checks(params, args.n_max, args.workers, args.budget)
        payload["oracle_match"] = v_payload["match"]
        fails += v_fails

    s_payload, s_fails = sha_checks(params, args.workers, args.budget)
    payload |= {k: s_payload[k] for k in ("sha_order", "brauer_siegel") if k in s_payload}
    fails += s_fails
    an_payload, an_fails, _ = angles_checks(params, args.workers, args.budget)
    payload["ks"] = an_payload.get("ks")
    payload["w_error"] = an_payload.get("w_error")
    fails += an_fails

    sweep_rows.append(
        {
            "q": q,
            "gamma": params.gamma.code,
            "a": a,
            "b": b,
            "sign": payload.get("sign", ""),
            "sha_order": payload.get("sha_order", ""),
            "brauer_siegel": payload.get("brauer_siegel", ""),
            "ks": payload.get("ks", ""),
            "w_error": payload.get("w_error", ""),
            "margin_min": min(an_payload["margins"].values()) if "margins" in an_payload else "",
            "checks_failed": len(fails),
        }
    )
    return payload, fails


if __name__ == "__main__":
    raise SystemExit(main())
