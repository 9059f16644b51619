"""Command-line front end: a thin client of the HTTP service.

Without ``--server`` the requests are dispatched to an in-process instance of
the service over an ASGI transport, so the CLI works standalone; with
``--server URL`` the same requests go to a remote instance.

Exit codes: 0 ok, 1 comparison gate failed, 2 parse/usage error,
3 size-guard refusal.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_GATE_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_GUARD_REFUSED = 3

_STATUS_EXIT = {400: EXIT_PARSE_ERROR, 422: EXIT_GUARD_REFUSED}


def _post(server: str | None, path: str, payload: dict) -> tuple[int, dict]:
    if server is not None:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            response = client.post(path, json=payload)
            return response.status_code, response.json()

    async def in_process() -> httpx.Response:
        from .service.app import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://dcrel") as client:
            return await client.post(path, json=payload, timeout=600.0)

    response = asyncio.run(in_process())
    return response.status_code, response.json()


def _read_graph(path: str) -> str | None:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read graph file: {exc}", file=sys.stderr)
        return None


def _fail(status: int, body: dict) -> int:
    detail = body.get("error", body)
    message = detail.get("message", str(body)) if isinstance(detail, dict) else str(detail)
    print(f"error: {message}", file=sys.stderr)
    return _STATUS_EXIT.get(status, EXIT_PARSE_ERROR)


def _print_json(body: dict) -> None:
    print(json.dumps(body, indent=2))


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _cmd_compute(args: argparse.Namespace) -> int:
    text = _read_graph(args.graph)
    if text is None:
        return EXIT_PARSE_ERROR
    payload = {
        "network": text,
        "diameter": args.diameter,
        "method": args.method,
        "seed": args.seed,
        "samples": args.samples,
    }
    status, body = _post(args.server, "/compute", payload)
    if status != 200:
        return _fail(status, body)
    if args.format == "json":
        _print_json(body)
    else:
        print(_fmt(body["reliability"]))
        if args.stats:
            for key in sorted(body["statistics"]):
                print(f"{key} {_fmt(body['statistics'][key])}")
    return EXIT_OK


def _cmd_irrelevant(args: argparse.Namespace) -> int:
    text = _read_graph(args.graph)
    if text is None:
        return EXIT_PARSE_ERROR
    status, body = _post(args.server, "/irrelevant",
                         {"network": text, "diameter": args.diameter})
    if status != 200:
        return _fail(status, body)
    if args.format == "json":
        _print_json(body)
        return EXIT_OK
    print("link endpoints cond1 cond2 cond3 exact threshold")
    for row in body["rows"]:
        threshold = row["relevance_threshold"]
        print("{} {{{},{}}} {} {} {} {} {}".format(
            row["link_id"],
            row["endpoints"][0], row["endpoints"][1],
            str(row["cond1"]).lower(), str(row["cond2"]).lower(),
            str(row["cond3"]).lower(), str(row["exact_irrelevant"]).lower(),
            "inf" if threshold is None else threshold,
        ))
    return EXIT_OK


def _cmd_reduce(args: argparse.Namespace) -> int:
    text = _read_graph(args.graph)
    if text is None:
        return EXIT_PARSE_ERROR
    status, body = _post(args.server, "/reduce",
                         {"network": text, "diameter": args.diameter})
    if status != 200:
        return _fail(status, body)
    if args.format == "json":
        _print_json(body)
        return EXIT_OK
    if args.trace:
        # comment lines keep the output re-parseable as a network file
        print(f"# factor {body['total_factor']:.17g}")
        print(f"# diameter-delta {body['total_diameter_delta']}")
        for step in body["trace"]:
            links = ",".join(str(i) for i in step["links"]) or "-"
            nodes = ",".join(str(i) for i in step["nodes"]) or "-"
            print(f"# step {step['rule']} links={links} nodes={nodes} "
                  f"ddelta={step['diameter_delta']} factor={step['factor']:.17g}")
    sys.stdout.write(body["network"])
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    text = _read_graph(args.graph)
    if text is None:
        return EXIT_PARSE_ERROR
    methods = args.methods.split(",")
    unknown = [m for m in methods if m not in ("factor", "enum", "ie", "mc")]
    if unknown:
        print(f"error: unknown method(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    payload = {
        "network": text,
        "diameter": args.diameter,
        "methods": methods,
        "seed": args.seed,
        "samples": args.samples,
    }
    status, body = _post(args.server, "/compare", payload)
    if status != 200:
        return _fail(status, body)
    if args.format == "json":
        _print_json(body)
    else:
        print("method reliability delta_vs_enum wall_seconds")
        for row in body["rows"]:
            delta = "-" if row["delta_vs_enum"] is None else _fmt(row["delta_vs_enum"])
            print(f"{row['method']} {_fmt(row['reliability'])} {delta} "
                  f"{row['wall_time_seconds']:.6f}")
        verdict = "passed" if body["gate_passed"] else "FAILED"
        print(f"gate {verdict} (tolerance {body['gate_tolerance']:g})")
    return EXIT_OK if body["gate_passed"] else EXIT_GATE_FAILED


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def _nonneg_int(token: str) -> int:
    value = int(token)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcrel",
        description="Exact source-terminal reliability under a hop budget.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--graph", required=True, help="path of the network file")
        p.add_argument("--diameter", type=_nonneg_int, default=None,
                       help="hop budget; overrides the file's 'd' line")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--server", default=None,
                       help="base URL of a running service; default is in-process")

    compute = sub.add_parser("compute", help="compute the reliability with one method")
    add_common(compute)
    compute.add_argument("--method", choices=["factor", "enum", "ie", "mc"], default="factor")
    compute.add_argument("--seed", type=int, default=1, help="Monte Carlo seed")
    compute.add_argument("--samples", type=int, default=100_000, help="Monte Carlo samples")
    compute.add_argument("--stats", action="store_true", help="print method statistics")
    compute.set_defaults(func=_cmd_compute)

    irrelevant = sub.add_parser("irrelevant", help="per-link irrelevance verdicts")
    add_common(irrelevant)
    irrelevant.set_defaults(func=_cmd_irrelevant)

    reduce = sub.add_parser("reduce", help="apply all reductions and print the result")
    add_common(reduce)
    reduce.add_argument("--trace", action="store_true",
                        help="prepend the reduction steps as comment lines")
    reduce.set_defaults(func=_cmd_reduce)

    compare = sub.add_parser("compare", help="run several methods and cross-check them")
    add_common(compare)
    compare.add_argument("--methods", default="factor,enum",
                         help="comma separated subset of factor,enum,ie,mc")
    compare.add_argument("--seed", type=int, default=1)
    compare.add_argument("--samples", type=int, default=100_000)
    compare.set_defaults(func=_cmd_compare)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (httpx.HTTPError, ValueError) as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
