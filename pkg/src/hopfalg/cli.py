"""Thin command-line client for the calculator service.

By default each invocation speaks HTTP to the FastAPI application
in-process (no server required); pass ``--url`` to target a running
service instead.  Exit codes: 0 on success, 1 when a check suite or table
comparison fails, 2 on usage, parse or degree-bound errors.
"""

from __future__ import annotations

import asyncio
import json
import sys

import click
import httpx

from hopfalg.service import app as service_app

PASS, CHECK_FAILED, USAGE = 0, 1, 2


async def _request(url: str | None, path: str, payload: dict) -> httpx.Response:
    if url:
        async with httpx.AsyncClient(base_url=url, timeout=600.0) as client:
            return await client.post(path, json=payload)
    transport = httpx.ASGITransport(app=service_app)
    async with httpx.AsyncClient(transport=transport, base_url="http://service",
                                 timeout=600.0) as client:
        return await client.post(path, json=payload)


def _post(ctx: click.Context, path: str, payload: dict) -> dict:
    response = asyncio.run(_request(ctx.obj.get("url"), path, payload))
    if response.status_code == 422:
        click.echo(f"error: invalid request: {response.text}", err=True)
        sys.exit(USAGE)
    if response.status_code == 400:
        click.echo(f"error: {response.json().get('detail')}", err=True)
        sys.exit(USAGE)
    if response.status_code != 200:
        click.echo(f"error: service returned {response.status_code}", err=True)
        sys.exit(USAGE)
    return response.json()


@click.group()
@click.option("--url", default=None,
              help="base URL of a running service; defaults to in-process")
@click.option("--json", "json_mode", is_flag=True, default=False,
              help="print the raw JSON response")
@click.pass_context
def main(ctx: click.Context, url: str | None, json_mode: bool) -> None:
    """Exact calculator for combinatorial Hopf algebra structures."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url
    ctx.obj["json"] = json_mode


def _emit(ctx: click.Context, payload: dict, text_lines: list[str]) -> None:
    if ctx.obj.get("json"):
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


@main.command()
@click.argument("family")
@click.argument("n", type=int)
@click.option("--connected", is_flag=True, default=False,
              help="restrict series-parallel posets to connected ones")
@click.pass_context
def enumerate(ctx: click.Context, family: str, n: int, connected: bool) -> None:
    """List a family: pt, pbt, put, ut, perm or sp-poset."""
    data = _post(ctx, "/enumerate", {"family": family, "n": n,
                                     "connected": connected})
    lines = [f"{data['family']} n={data['n']}: {data['count']} elements"]
    lines.extend(data["items"])
    _emit(ctx, data, lines)


@main.command()
@click.argument("algebra")
@click.argument("expression")
@click.option("--maxdeg", type=int, default=6, show_default=True)
@click.option("--lie-file", type=click.Path(exists=True), default=None,
              help="JSON file with a Lie algebra (basis, weights, brackets) "
                   "for the lie algebra commands")
@click.pass_context
def eval(ctx: click.Context, algebra: str, expression: str, maxdeg: int,
         lie_file: str | None) -> None:
    """Evaluate an expression, e.g. eval mr "product 12 1"."""
    payload = {"algebra": algebra, "expression": expression, "maxdeg": maxdeg}
    if lie_file:
        with open(lie_file, encoding="utf-8") as handle:
            payload["context"] = json.load(handle)
    data = _post(ctx, "/eval", payload)
    _emit(ctx, data, [data["result"]])


@main.command()
@click.argument("suite")
@click.option("--maxdeg", type=int, default=None,
              help="degree bound; suites pick their own default")
@click.option("--seed", type=int, default=0, show_default=True,
              help="seed for randomized rewriting strategies")
@click.pass_context
def check(ctx: click.Context, suite: str, maxdeg: int | None, seed: int) -> None:
    """Run a verification suite; exits 1 if any check fails."""
    payload = {"suite": suite, "seed": seed}
    if maxdeg is not None:
        payload["maxdeg"] = maxdeg
    data = _post(ctx, "/check", payload)
    lines = []
    for item in data["checks"]:
        line = f"{item['id']}: {item['status']}"
        if item["witness"] and item["status"] != "pass":
            line += f"  [{item['witness']}]"
        lines.append(line)
    lines.append(f"suite {data['suite']}: "
                 + ("pass" if data["passed"] else "FAIL"))
    _emit(ctx, data, lines)
    if not data["passed"]:
        sys.exit(CHECK_FAILED)


@main.command()
@click.argument("name")
@click.pass_context
def table(ctx: click.Context, name: str) -> None:
    """Print a computed numeric table; exits 1 on any mismatch."""
    data = _post(ctx, "/table", {"name": name})
    lines = [f"table {data['name']}"]
    for row in data["rows"]:
        status = "ok" if row["values"] == row["expected"] else "MISMATCH"
        lines.append(f"  {row['label']}: "
                     + " ".join(str(v) for v in row["values"]) + f"  [{status}]")
    lines.append(f"note: {data['note']}")
    _emit(ctx, data, lines)
    if not data["passed"]:
        sys.exit(CHECK_FAILED)


if __name__ == "__main__":
    main()
