"""Command-line driver: compute, verify, and report in JSON or text.

Subcommands map onto the library surface:

  macdonald   compute E_lam (optionally specialized via --k/--r)
  family      build a qKZ family from E_lam, verify it, report kappa data
  verify-qkz  run the polynomial qKZ identity for all (or one) direction m
  relations   the seeded operator-relation suite
  wheel       wheel-condition check of a specialized E_lam or a JSON polynomial
  vo-check    vertex-operator reproduction at k = N, r = 2
  compose     combinatorial constructions (admissibility, special mu, ...)
  apply       apply a Hecke word to a JSON polynomial

Exit codes: 0 all requested checks pass; 1 a verification failed;
2 usage/precondition errors; 4 timeout.  Identical invocations (including
--seed) produce byte-identical output; set QKZ_LOG=debug|info for progress
logging on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import signal
import sys

from . import __version__
from .combinat import analyze, build_special_mu, is_admissible, vertex_data
from .errors import QkzError, VerificationFailed
from .family import build_family, kappa_data, verify_family, verify_qkz_step
from .hecke import HeckeWord, apply_word, relation_suite
from .laurent import LaurentPoly
from .macdonald import compute_e, specialize_e
from .scalars import GENERIC, SpecField
from .vertex import check_vertex_equality, vertex_exponent_monomials, wheel_check

SCHEMA_VERSION = "1"

log = logging.getLogger("qkz")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 4


def _setup_logging():
    level = os.environ.get("QKZ_LOG", "warning").lower()
    levels = {"debug": logging.DEBUG, "info": logging.INFO, "warning": logging.WARNING, "error": logging.ERROR}
    logging.basicConfig(stream=sys.stderr, level=levels.get(level, logging.WARNING), format="qkz: %(message)s")


def _parse_ints(text):
    return tuple(int(x) for x in text.split(",") if x.strip() != "")


def _field_for(args):
    if getattr(args, "k", None) is not None or getattr(args, "r", None) is not None:
        if args.k is None or args.r is None:
            raise QkzError("--k and --r must be given together")
        return SpecField(args.k, args.r)
    return GENERIC


def _emit(args, doc):
    doc["schema_version"] = SCHEMA_VERSION
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1))
    else:
        _emit_text(doc)


def _emit_text(doc):
    print(f"command: {doc['command']}")
    for key, val in sorted(doc.get("params", {}).items()):
        print(f"  {key} = {val}")
    for line in doc.get("lines", []):
        print(line)
    for chk in doc.get("checks", []):
        idx = ",".join(f"{k}={v}" for k, v in sorted(chk["indices"].items()))
        print(f"  [{chk['status'].upper()}] {chk['condition']} {idx}")
    if "error" in doc:
        print(f"error: {doc['error']}")
    print(f"status: {doc['status']}")


def _status(checks):
    return "pass" if all(c["status"] == "pass" for c in checks) else "fail"


def _run_parallel(fn, items, jobs):
    """Map fn over items preserving order; fork a pool only when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    chunk = max(1, len(items) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


# -- subcommand implementations ----------------------------------------------


def cmd_macdonald(args):
    lam = _parse_ints(args.lam)
    if args.k is not None or args.r is not None:
        if args.k is None or args.r is None:
            raise QkzError("--k and --r must be given together")
        E = specialize_e(lam, args.k, args.r)
        params = {"lambda": list(lam), "k": args.k, "r": args.r}
    else:
        E = compute_e(lam)
        params = {"lambda": list(lam)}
    doc = {
        "command": "macdonald",
        "params": params,
        "status": "pass",
        "results": {"polynomial": E.to_json()},
        "lines": [f"E_{list(lam)} = {E.poly}"],
    }
    return doc, EXIT_OK


def _build_family_from_args(args):
    lam = _parse_ints(args.lam)
    d = _parse_ints(args.d)
    sign = "+" if args.sign == "plus" else "-"
    if args.k is not None or args.r is not None:
        if args.k is None or args.r is None:
            raise QkzError("--k and --r must be given together")
        E = specialize_e(lam, args.k, args.r)
    else:
        E = compute_e(lam)
    fam = build_family(E, d, sign)
    params = {"lambda": list(lam), "d": list(d), "sign": args.sign}
    if args.k is not None:
        params.update({"k": args.k, "r": args.r})
    return fam, params


def cmd_family(args):
    fam, params = _build_family_from_args(args)
    checks = verify_family(fam)
    kd = kappa_data(fam)
    doc = {
        "command": "family",
        "params": params,
        "checks": checks,
        "status": _status(checks),
        "results": {
            "exponents": [c.text() for c in fam.exponents],
            "kappa": kd.to_json(),
        },
        "lines": [f"exponents: {[c.text() for c in fam.exponents]}", f"level: {kd.level}"],
    }
    return doc, EXIT_OK if doc["status"] == "pass" else EXIT_CHECK_FAILED


def _qkz_step_entry(arg):
    fam, m = arg
    try:
        return verify_qkz_step(fam, m)
    except VerificationFailed as exc:
        entry = {"condition": "qkz-step", "indices": {"m": m}, "status": "fail"}
        if exc.witness:
            entry["witness"] = exc.witness
        return entry


def cmd_verify_qkz(args):
    fam, params = _build_family_from_args(args)
    steps = [args.m] if args.m is not None else list(range(1, fam.n + 1))
    params["m"] = steps
    log.info("verifying qKZ steps %s", steps)
    checks = _run_parallel(_qkz_step_entry, [(fam, m) for m in steps], args.jobs)
    doc = {
        "command": "verify-qkz",
        "params": params,
        "checks": checks,
        "status": _status(checks),
    }
    return doc, EXIT_OK if doc["status"] == "pass" else EXIT_CHECK_FAILED


def cmd_relations(args):
    checks = relation_suite(args.n, args.seed, args.trials)
    doc = {
        "command": "relations",
        "params": {"n": args.n, "trials": args.trials},
        "seed": args.seed,
        "checks": checks,
        "status": _status(checks),
    }
    return doc, EXIT_OK if doc["status"] == "pass" else EXIT_CHECK_FAILED


def cmd_wheel(args):
    if args.poly is not None:
        if args.k is None or args.r is None:
            raise QkzError("--poly needs --k and --r for the coefficient field")
        with open(args.poly, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        f = LaurentPoly.from_json(data, SpecField(args.k, args.r))
        params = {"poly": args.poly, "k": args.k, "r": args.r, "N": args.N}
    else:
        if args.lam is None:
            raise QkzError("wheel needs --lambda or --poly")
        lam = _parse_ints(args.lam)
        E = specialize_e(lam, args.N, 2)
        f = E.poly
        params = {"lambda": list(lam), "N": args.N, "k": args.N, "r": 2}
    checks = _run_parallel_wheel(f, args.N, args.jobs)
    doc = {
        "command": "wheel",
        "params": params,
        "checks": checks,
        "status": _status(checks),
    }
    return doc, EXIT_OK if doc["status"] == "pass" else EXIT_CHECK_FAILED


def _run_parallel_wheel(f, N, jobs):
    # chains are independent; wheel_check already loops, so shard by chain
    from itertools import combinations

    chains = list(combinations(range(1, f.n + 1), N + 1))
    if jobs <= 1 or len(chains) <= 1:
        return wheel_check(f, N)

    def one(chain):
        ok = f.substitute_chain(chain).is_zero()
        return {"condition": "wheel", "indices": {"chain": list(chain)}, "status": "pass" if ok else "fail"}

    return _run_parallel(one, chains, jobs)


def cmd_vo_check(args):
    checks = list(check_vertex_equality(args.i, args.j, args.n, args.N))
    vd = vertex_data(args.i, args.j, args.n, args.N)
    E = specialize_e(vd.mu, args.N, 2)
    fam = build_family(E, vd.d, "-")
    predicted = vertex_exponent_monomials(args.i, args.j, args.n, args.N)
    for eps, (got, want) in enumerate(zip(fam.exponents, predicted)):
        checks.append(
            {
                "condition": "vo-exponent",
                "indices": {"eps": eps},
                "status": "pass" if got == want else "fail",
            }
        )
    kd = kappa_data(fam)
    checks.append(
        {
            "condition": "vo-level-one",
            "indices": {},
            "status": "pass" if kd.level == 1 else "fail",
        }
    )
    doc = {
        "command": "vo-check",
        "params": {"i": args.i, "j": args.j, "n": args.n, "N": args.N, "mu": list(vd.mu)},
        "checks": checks,
        "status": _status(checks),
        "results": {"kappa": kd.to_json()},
    }
    return doc, EXIT_OK if doc["status"] == "pass" else EXIT_CHECK_FAILED


def cmd_compose(args):
    lines = []
    results = {}
    checks = []
    if args.example_413:
        lam, mu = build_special_mu((13, 10, 9, 9, 9), (3, 2, 2, 3, 3), 5, 6, 13)
        lines.append("lambda=(" + ",".join(str(x) for x in lam) + ")")
        lines.append("mu=(" + ",".join(str(x) for x in mu) + ")")
        results["lambda"] = list(lam)
        results["mu"] = list(mu)
        for name, comp in (("lambda", lam), ("mu", mu)):
            checks.append(
                {
                    "condition": "admissible",
                    "indices": {"composition": name, "k": 5, "r": 6},
                    "status": "pass" if is_admissible(comp, 5, 6) else "fail",
                }
            )
    elif args.a is not None:
        if args.dlist is None or args.k is None or args.r is None or args.n is None:
            raise QkzError("compose --a needs --dlist, --k, --r and --n")
        lam, mu = build_special_mu(_parse_ints(args.a), _parse_ints(args.dlist), args.k, args.r, args.n)
        lines.append("lambda=(" + ",".join(str(x) for x in lam) + ")")
        lines.append("mu=(" + ",".join(str(x) for x in mu) + ")")
        results["lambda"] = list(lam)
        results["mu"] = list(mu)
    elif args.vertex:
        if None in (args.i, args.j, args.n, args.N):
            raise QkzError("compose --vertex needs --i, --j, --n and --N")
        vd = vertex_data(args.i, args.j, args.n, args.N)
        results.update({"d": list(vd.d), "delta": list(vd.delta), "a": list(vd.a), "lambda": list(vd.lam), "mu": list(vd.mu)})
        lines.extend(f"{k}={v}" for k, v in sorted(results.items()))
    elif args.lam is not None:
        lam = _parse_ints(args.lam)
        data = analyze(lam)
        results.update(
            {
                "lambda": list(lam),
                "dominant": list(data.lam_plus),
                "antidominant": list(data.lam_minus),
                "w_plus": data.w_plus.to_json(),
                "w_minus": data.w_minus.to_json(),
                "two_rho": list(data.two_rho),
            }
        )
        if args.k is not None and args.r is not None:
            results["admissible"] = is_admissible(lam, args.k, args.r)
        lines.extend(f"{k}={v}" for k, v in sorted(results.items()))
    else:
        raise QkzError("compose needs one of --example-413, --a, --vertex, --lambda")
    doc = {
        "command": "compose",
        "params": {},
        "checks": checks,
        "status": _status(checks),
        "results": results,
        "lines": lines,
    }
    return doc, EXIT_OK if doc["status"] == "pass" else EXIT_CHECK_FAILED


def cmd_apply(args):
    field = _field_for(args)
    with open(args.poly, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    f = LaurentPoly.from_json(data, field)
    word = HeckeWord.parse(args.word, f.n)
    g = apply_word(f, word)
    doc = {
        "command": "apply",
        "params": {"word": str(word), "poly": args.poly},
        "status": "pass",
        "results": {"polynomial": g.to_json()},
        "lines": [f"result = {g}"],
    }
    return doc, EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser():
    top = argparse.ArgumentParser(prog="qkz", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    top.add_argument("--version", action="version", version=f"qkz {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, *, needs_lambda=False, spec=True, jobs=True):
        if needs_lambda:
            p.add_argument("--lambda", dest="lam", required=True, help="composition, e.g. '1,0,2'")
        if spec:
            p.add_argument("--k", type=int, default=None)
            p.add_argument("--r", type=int, default=None)
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--timeout-seconds", type=int, default=1800)
        if jobs:
            p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("macdonald", help="compute a non-symmetric Macdonald polynomial")
    common(p, needs_lambda=True)
    p.set_defaults(fn=cmd_macdonald)

    p = sub.add_parser("family", help="build and verify a qKZ family; report kappa data")
    common(p, needs_lambda=True)
    p.add_argument("--d", required=True, help="multiplicities, e.g. '2,1'")
    p.add_argument("--sign", choices=["plus", "minus"], required=True)
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("verify-qkz", help="verify the polynomial qKZ identity")
    common(p, needs_lambda=True)
    p.add_argument("--d", required=True)
    p.add_argument("--sign", choices=["plus", "minus"], required=True)
    p.add_argument("--m", type=int, default=None, help="single direction (default: all)")
    p.set_defaults(fn=cmd_verify_qkz)

    p = sub.add_parser("relations", help="seeded affine Hecke relation suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    common(p, spec=False)
    p.set_defaults(fn=cmd_relations)

    p = sub.add_parser("wheel", help="wheel-condition check at t^(N+1) p = 1")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--N", dest="N", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--poly", default=None, help="JSON file with a LaurentPoly")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--timeout-seconds", type=int, default=1800)
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(fn=cmd_wheel)

    p = sub.add_parser("vo-check", help="vertex-operator reproduction check")
    p.add_argument("--N", dest="N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    common(p, spec=False)
    p.set_defaults(fn=cmd_vo_check)

    p = sub.add_parser("compose", help="combinatorial constructions")
    p.add_argument("--example-413", action="store_true", help="the n=13 worked example")
    p.add_argument("--a", default=None, help="dominant vector, e.g. '13,10,9,9,9'")
    p.add_argument("--dlist", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--N", dest="N", type=int, default=None)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--vertex", action="store_true")
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--timeout-seconds", type=int, default=1800)
    p.set_defaults(fn=cmd_compose)

    p = sub.add_parser("apply", help="apply a Hecke word to a JSON polynomial")
    p.add_argument("--word", required=True, help="e.g. \"T1 T2' w\"; prime = inverse, rightmost acts first")
    p.add_argument("--poly", required=True)
    common(p)
    p.set_defaults(fn=cmd_apply)

    return top


class _Timeout(Exception):
    pass


def main(argv=None):
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)

    timeout = getattr(args, "timeout_seconds", 0) or 0
    if timeout > 0 and hasattr(signal, "SIGALRM"):
        def _on_alarm(signum, frame):
            raise _Timeout()

        signal.signal(signal.SIGALRM, _on_alarm)
        signal.alarm(timeout)

    try:
        doc, code = args.fn(args)
    except _Timeout:
        doc = {"command": args.command, "params": {}, "status": "fail", "error": f"timed out after {timeout}s"}
        _emit(args, doc)
        return EXIT_TIMEOUT
    except QkzError as exc:
        doc = {"command": args.command, "params": {}, "status": "fail", "error": str(exc)}
        _emit(args, doc)
        return EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        doc = {"command": args.command, "params": {}, "status": "fail", "error": str(exc)}
        _emit(args, doc)
        return EXIT_USAGE
    finally:
        if timeout > 0 and hasattr(signal, "SIGALRM"):
            signal.alarm(0)

    if args.format == "json":
        doc.pop("lines", None)
    _emit(args, doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
