"""Command-line client for the wheel7 service.

Every subcommand builds one request, sends it to the service (an in-process
app by default, or a remote instance via --url), and renders the response as
a table, CSV, or a JSON report.  Exit codes follow sysexits conventions:
64 usage error, 65 resource cap exceeded, 2 failed verification rows.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import httpx

from . import __version__, reports
from .sieve import DEFAULT_CAP

ENV_PREFIX = "WHEEL7_"

EX_OK = 0
EX_VERIFY_FAILED = 2
EX_USAGE = 64
EX_RESOURCE = 65
EX_SOFTWARE = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EX_USAGE)


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    format: str = "table"
    output: Optional[str] = None
    threads: int = 1
    cache: Optional[str] = None
    url: Optional[str] = None
    cap: int = DEFAULT_CAP


class ServiceClient:
    """Thin HTTP client; with no URL it drives the app in-process."""

    def __init__(self, url: Optional[str] = None, cap: int = DEFAULT_CAP,
                 cache: Optional[str] = None):
        if url:
            self._client = httpx.Client(base_url=url, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                # starlette warns about the httpx-backed TestClient; the
                # replacement package is not available everywhere yet
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app(cap=cap, cache_path=cache))

    def post(self, path: str, payload: dict):
        response = self._client.post(path, json=payload)
        try:
            body = response.json()
        except ValueError:
            body = {"error": "protocol", "detail": response.text}
        return response.status_code, body

    def close(self):
        self._client.close()


def _env(name: str) -> Optional[str]:
    return os.environ.get(ENV_PREFIX + name)


def _int_env(name: str, fallback: int) -> int:
    raw = _env(name)
    return int(raw) if raw else fallback


def parse_range(text: str):
    """'A..B' -> (A, B); a single integer N -> (N, N).  Underscores allowed."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    value = int(text)
    return value, value


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("csv", "json", "table"),
        default=_env("FORMAT") or "table",
    )
    common.add_argument("--output", default=_env("OUTPUT"))
    common.add_argument("--threads", type=int, default=_int_env("THREADS", 1))
    common.add_argument("--cache", default=_env("CACHE"))
    common.add_argument("--url", default=_env("URL"))
    common.add_argument("--cap", type=int, default=_int_env("CAP", DEFAULT_CAP))

    parser = _Parser(prog="wheel7", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sieve", parents=[common], help="build the prime table")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--count-sevens", action="store_true")

    p = sub.add_parser("tuples", parents=[common], help="tuple reports for an x range")
    p.add_argument("--x", type=parse_range, required=True, metavar="A..B")
    p.add_argument("--gaps", action="store_true")

    p = sub.add_parser("pi7", parents=[common], help="count seven-prime blocks below s")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--no-list", action="store_true")

    p = sub.add_parser("phi3", parents=[common], help="formula vs brute-force phi3(30m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--no-oracle", action="store_true")

    p = sub.add_parser("s7", parents=[common], help="exact seven-survivor sieve count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-oracle", action="store_true")

    p = sub.add_parser("density", parents=[common], help="density product scan")
    p.add_argument("--n", type=parse_range, required=True, metavar="A..B")

    p = sub.add_parser("merge", parents=[common], help="order-preserving merge count")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-oracle", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="headline inequality scan")
    p.add_argument("--n", type=parse_range, required=True, metavar="A..B")
    p.add_argument("--density", action="store_true",
                   help="emit density-comparison rows instead of bound rows")

    p = sub.add_parser("lemma43", parents=[common], help="r(n-1)n < p_{n+3}p_{n+r+2} sweep")
    p.add_argument("--n", type=parse_range, required=True, metavar="A..B")
    p.add_argument("--r", type=parse_range, default=(1, 1), metavar="A..B")

    p = sub.add_parser("crossover", parents=[common], help="density crossover search")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default=_env("HOST") or "127.0.0.1")
    p.add_argument("--port", type=int, default=_int_env("PORT", 8787))

    return parser


def _config_from_args(args) -> RunConfig:
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in {"command", "format", "output", "threads", "cache", "url", "cap"}
    }
    return RunConfig(
        command=args.command, params=params, format=args.format,
        output=args.output, threads=args.threads, cache=args.cache,
        url=args.url, cap=args.cap,
    )


def _payload(config: RunConfig) -> dict:
    p = config.params
    c = config.command
    if c == "sieve":
        return {
            "limit": p["limit"], "threads": config.threads,
            "cache": config.cache, "count_sevens": p["count_sevens"],
        }
    if c == "tuples":
        lo, hi = p["x"]
        return {"x_lo": lo, "x_hi": hi, "gaps": p["gaps"], "threads": config.threads}
    if c == "pi7":
        return {"s": p["s"], "list_xs": not p["no_list"], "threads": config.threads}
    if c == "phi3":
        return {"m": p["m"], "oracle": False if p["no_oracle"] else None}
    if c == "s7":
        return {"n": p["n"], "oracle": False if p["no_oracle"] else None}
    if c == "density":
        lo, hi = p["n"]
        return {"n_lo": lo, "n_hi": hi}
    if c == "merge":
        return {"m": p["m"], "n": p["n"],
                "oracle": False if p["no_oracle"] else None}
    if c == "verify":
        lo, hi = p["n"]
        return {"n_lo": lo, "n_hi": hi, "threads": config.threads,
                "density": p["density"]}
    if c == "lemma43":
        n_lo, n_hi = p["n"]
        r_lo, r_hi = p["r"]
        return {"n_lo": n_lo, "n_hi": n_hi, "r_lo": r_lo, "r_hi": r_hi}
    if c == "crossover":
        return {"a": p["a"], "n_max": p["n_max"]}
    raise ValueError(f"unknown command {c}")


def _rows_and_summary(command: str, body: dict):
    rows = body.get("rows", [])
    summary = body.get("summary") or {}
    if command == "pi7":
        summary = {"s": body["s"], "count": body["count"]}
        if body.get("xs") is not None:
            summary["xs"] = body["xs"]
    return rows, summary


def _columns_key(config: RunConfig) -> str:
    if config.command == "verify" and config.params.get("density"):
        return "verify_density"
    return config.command


def _render(config: RunConfig, rows: list, summary: dict) -> str:
    if config.format == "csv":
        return reports.render_csv(_columns_key(config), rows)
    if config.format == "json":
        params = dict(config.params)
        for key, value in list(params.items()):
            if isinstance(value, tuple):
                params[key] = list(value)
        return reports.render_json(config.command, params, rows, summary)
    return reports.render_table(_columns_key(config), rows, summary)


def _emit(config: RunConfig, text: str) -> None:
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(config: RunConfig) -> int:
    """Execute one command against the service and emit its report."""
    if config.command == "serve":
        import uvicorn

        from .service.app import create_app

        uvicorn.run(
            create_app(cap=config.cap, cache_path=config.cache),
            host=config.params["host"], port=config.params["port"],
        )
        return EX_OK

    client = ServiceClient(url=config.url, cap=config.cap, cache=config.cache)
    try:
        status, body = client.post(f"/{config.command}", _payload(config))
    finally:
        client.close()

    if status in (400, 422):
        sys.stderr.write(f"wheel7 {config.command}: {body.get('detail', body)}\n")
        return EX_USAGE
    if status == 413:
        sys.stderr.write(f"wheel7 {config.command}: {body.get('detail', body)}\n")
        return EX_RESOURCE
    if status != 200:
        sys.stderr.write(f"wheel7 {config.command}: service error {status}: {body}\n")
        return EX_SOFTWARE

    rows, summary = _rows_and_summary(config.command, body)
    _emit(config, _render(config, rows, summary))
    if config.command in ("verify", "lemma43") and not summary.get("all_hold", True):
        return EX_VERIFY_FAILED
    return EX_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = _config_from_args(args)
    if args.command == "serve":
        config.params = {"host": args.host, "port": args.port}
    try:
        return run(config)
    except httpx.HTTPError as exc:
        sys.stderr.write(f"wheel7: cannot reach service: {exc}\n")
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
