"""Command line client.

Every subcommand except `serve` builds a request and sends it to the HTTP
service: by default to an in-process copy of the app (no socket, no server
needed), or to a running server when --server is given.  Output is
deterministic: the same invocation produces the same bytes.

Exit codes: 0 success (all checks passed, for verify), 1 a verify check
failed, 2 usage or input error, 3 internal error or unreachable server.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Optional, Tuple

import httpx

from .textio import parse_multiindex

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _post(server: Optional[str], path: str, payload: dict) -> Tuple[int, dict]:
    """POST to a remote server or to the in-process app; (status, body)."""
    try:
        if server:
            with httpx.Client(base_url=server, timeout=None) as client:
                resp = client.post(path, json=payload)
        else:
            from .service import app

            async def go():
                transport = httpx.ASGITransport(app=app)
                async with httpx.AsyncClient(transport=transport,
                                             base_url="http://wittkit.internal",
                                             timeout=None) as client:
                    return await client.post(path, json=payload)

            resp = asyncio.run(go())
    except httpx.HTTPError as exc:
        print("request failed: %s" % exc, file=sys.stderr)
        raise SystemExit(EXIT_INTERNAL)
    try:
        body = resp.json()
    except ValueError:
        body = {"detail": resp.text}
    return resp.status_code, body


def _bail(status: int, body: dict) -> "SystemExit":
    detail = body.get("detail", body)
    if not isinstance(detail, str):
        detail = json.dumps(detail, sort_keys=True)
    print("error: %s" % detail, file=sys.stderr)
    if status in (400, 422):
        return SystemExit(EXIT_USAGE)
    return SystemExit(EXIT_INTERNAL)


def _emit_json(body: dict) -> None:
    print(json.dumps(body, indent=2, sort_keys=True))


def _mi(text: str, e: int) -> list:
    return list(parse_multiindex(text, e))


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_gen_witt_law(args: argparse.Namespace) -> int:
    status, body = _post(args.server, "/witt-law",
                         {"p": args.p, "e": args.e, "integral": args.integral})
    if status != 200:
        raise _bail(status, body)
    print(body["text"])
    return EXIT_OK


def cmd_gen_iterativity(args: argparse.Namespace) -> int:
    payload = {"p": args.p, "e": args.e, "law": args.law,
               "i": _mi(args.i, args.e), "j": _mi(args.j, args.e)}
    status, body = _post(args.server, "/iterativity", payload)
    if status != 200:
        raise _bail(status, body)
    _emit_json(body)
    return EXIT_OK


def cmd_gen_delta_table(args: argparse.Namespace) -> int:
    payload = {"p": args.p, "e": args.e,
               "max_i": _mi(args.max_i, args.e),
               "max_j": _mi(args.max_j, args.e)}
    status, body = _post(args.server, "/delta-table", payload)
    if status != 200:
        raise _bail(status, body)
    _emit_json(body)
    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    payload = {"p": args.p, "e": args.e, "operator": args.operator,
               "poly": args.poly}
    status, body = _post(args.server, "/apply", payload)
    if status != 200:
        raise _bail(status, body)
    print(body["result"]["text"])
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    payload = {"p": args.p, "e": args.e, "x": args.x, "n": args.n}
    status, body = _post(args.server, "/decompose", payload)
    if status != 200:
        raise _bail(status, body)
    _emit_json(body)
    return EXIT_OK


def cmd_derive_pbasis(args: argparse.Namespace) -> int:
    payload = {"p": args.p, "e": args.e, "x": args.x,
               "j": _mi(args.j, args.e), "n": args.n}
    status, body = _post(args.server, "/derive-pbasis", payload)
    if status != 200:
        raise _bail(status, body)
    print(body["value"]["text"])
    return EXIT_OK


def _witness_text(witness: dict) -> str:
    parts = []
    for key in sorted(witness):
        val = witness[key]
        if not isinstance(val, str):
            val = json.dumps(val, sort_keys=True)
        parts.append("%s=%s" % (key, val))
    return " ".join(parts)


def cmd_verify(args: argparse.Namespace) -> int:
    payload = {"p": args.p, "e": args.e, "suite": args.suite,
               "deg_bound": args.deg_bound, "order_bound": args.order_bound,
               "n": args.n, "seed": args.seed, "samples": args.samples,
               "timings": args.timings}
    status, body = _post(args.server, "/verify", payload)
    if status != 200:
        raise _bail(status, body)
    if args.json:
        _emit_json(body)
    else:
        for rep in body["reports"]:
            line = "[%s] p=%d e=%d %s" % (rep["check_id"], rep["params"]["p"],
                                          rep["params"]["e"], rep["verdict"])
            if rep["verdict"] == "witness-found" and rep.get("witness"):
                line += " " + _witness_text(rep["witness"])
            elif rep["verdict"] == "fail" and rep.get("witness"):
                line += " " + _witness_text(rep["witness"])
            if args.timings and rep.get("wall_ms") is not None:
                line += " [%.1f ms]" % rep["wall_ms"]
            print(line)
        total = len(body["reports"])
        ok = sum(1 for rep in body["reports"]
                 if rep["verdict"] in ("pass", "witness-found"))
        print("summary: %d checks, %d ok, %d failed" % (total, ok, total - ok))
    return EXIT_OK if body["all_passed"] else EXIT_CHECK_FAILED


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("wittkit.service:app", host=args.host, port=args.port,
                log_level="info")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittkit",
        description="Witt vector addition laws, iterative higher derivations "
                    "over F_p, p-basis routes, and a verifier for the "
                    "identities connecting them.")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default is "
                             "in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pe(sp, p_default: int = 2, e_default: int = 2):
        sp.add_argument("--p", type=int, default=p_default,
                        help="prime characteristic (default %d)" % p_default)
        sp.add_argument("--e", type=int, default=e_default,
                        help="truncation length (default %d)" % e_default)

    sp = sub.add_parser("gen-witt-law",
                        help="print the truncated Witt vector addition law")
    add_pe(sp)
    sp.add_argument("--integral", action="store_true",
                    help="print the integral components over Z instead of "
                         "their mod-p reductions")
    sp.set_defaults(fn=cmd_gen_witt_law)

    sp = sub.add_parser("gen-iterativity",
                        help="print an iterativity constants table as JSON")
    add_pe(sp)
    sp.add_argument("--law", default="witt",
                    choices=["witt", "additive", "multiplicative"])
    sp.add_argument("--i", required=True, help='multi-index, e.g. "1,0"')
    sp.add_argument("--j", required=True, help='multi-index, e.g. "0,1"')
    sp.set_defaults(fn=cmd_gen_iterativity)

    sp = sub.add_parser("gen-delta-table",
                        help="print component values on monomials as JSON")
    add_pe(sp)
    sp.add_argument("--max-i", default="2", dest="max_i",
                    help="componentwise bound for the monomial index")
    sp.add_argument("--max-j", default="2", dest="max_j",
                    help="componentwise bound for the component index")
    sp.set_defaults(fn=cmd_gen_delta_table)

    sp = sub.add_parser("apply",
                        help="apply a component operator expression to a "
                             "polynomial")
    add_pe(sp)
    sp.add_argument("operator", help='e.g. "D(1,0)^2" or "D(1,0) D(0,1)"')
    sp.add_argument("poly", help='e.g. "X1*X2 + X2^2"')
    sp.set_defaults(fn=cmd_apply)

    sp = sub.add_parser("decompose",
                        help="p-power decomposition of a rational function")
    add_pe(sp)
    sp.add_argument("x", help='rational function, e.g. "X1^3/(1+X2)"')
    sp.add_argument("--n", type=int, default=1, help="level (default 1)")
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("derive-pbasis",
                        help="component value on a rational function via the "
                             "p-basis route")
    add_pe(sp)
    sp.add_argument("x", help="rational function")
    sp.add_argument("--j", required=True, help="component multi-index")
    sp.add_argument("--n", type=int, default=3,
                    help="decomposition level (default 3)")
    sp.set_defaults(fn=cmd_derive_pbasis)

    sp = sub.add_parser("verify", help="run a verification suite")
    add_pe(sp)
    sp.add_argument("--suite", default="all",
                    help="all, witt-law, iterativity, lemma-we-iter, "
                         "fact-2-25, h-schemes, h5, h6, mw-counterexample, "
                         "pbasis")
    sp.add_argument("--deg-bound", type=int, default=6, dest="deg_bound")
    sp.add_argument("--order-bound", type=int, default=6, dest="order_bound")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--seed", type=int, default=1729)
    sp.add_argument("--samples", type=int, default=25)
    sp.add_argument("--json", action="store_true",
                    help="emit the full JSON report")
    sp.add_argument("--timings", action="store_true",
                    help="include wall-clock timings (non-deterministic "
                         "output)")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8471)
    sp.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        raise exc
    except KeyboardInterrupt:
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
