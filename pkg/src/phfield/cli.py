"""Command-line interface: a thin client over the HTTP service.

Commands read local files, call the service, and write results back to
disk; with no --server the service runs in-process over an ASGI transport,
so the CLI works standalone.  check-field exits 0 for independent, 1 for
dependent, and 2 on any error, so shell pipelines can branch on the
mathematical verdict.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click
import httpx


class _InProcessTransport(httpx.BaseTransport):
    """Serve requests from the ASGI app inside this process."""

    def __init__(self, app):
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        import asyncio

        async def go():
            req = httpx.Request(
                method=request.method,
                url=request.url,
                headers=request.headers,
                content=request.read(),
            )
            resp = await self._asgi.handle_async_request(req)
            body = await resp.aread()
            return resp.status_code, resp.headers, body

        status, headers, body = asyncio.run(go())
        return httpx.Response(status_code=status, headers=headers, content=body)


class ServiceClient:
    def __init__(self, server: Optional[str]):
        if server:
            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            from .service.app import create_app

            self._client = httpx.Client(
                transport=_InProcessTransport(create_app()),
                base_url="http://phfield.local",
            )

    def post(self, path: str, payload: dict) -> dict:
        resp = self._client.post(path, json=payload)
        if resp.status_code == 200:
            return resp.json()
        try:
            detail = resp.json().get("detail")
        except Exception:
            detail = resp.text
        if isinstance(detail, dict):
            msg = detail.get("message", str(detail))
            if detail.get("line") is not None:
                msg = f"line {detail['line']}: {msg}" if "line" not in msg else msg
        else:
            msg = str(detail)
        click.echo(f"error: {msg}", err=True)
        sys.exit(2)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(2)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


@click.group()
@click.option("--server", "-S", envvar="PHFIELD_SERVER", default=None,
              help="Base URL of a running service; in-process if omitted.")
@click.pass_context
def main(ctx, server):
    """Persistence diagrams over exact fields and field-dependence checks."""
    ctx.obj = ServiceClient(server)


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["simplicial", "explicit"]),
    default="simplicial", show_default=True, help="Filtration file format.")


@main.command()
@click.argument("input_path")
@click.option("--field", default="zp:2", show_default=True,
              help="Coefficient field: q or zp:<prime>.")
@click.option("--degree", type=int, default=None, help="Restrict to one degree.")
@click.option("--twist/--no-twist", default=True, show_default=True,
              help="Process columns by descending dimension with clearing.")
@_format_option
@click.option("--tsv", is_flag=True, help="Emit TSV (degree birth death) instead of JSON.")
@click.option("--out", default=None, help="Output path (stdout if omitted).")
@click.pass_obj
def pd(client, input_path, field, degree, twist, fmt, tsv, out):
    """Compute the persistence diagram of a filtration file."""
    res = client.post("/pd", {
        "content": _read(input_path), "format": fmt, "field": field,
        "degree": degree, "twist": twist,
    })
    if tsv:
        lines = ["degree\tbirth\tdeath"]
        for p in res["pairs"]:
            death = "inf" if p["death"] is None else p["death"]
            lines.append(f"{p['degree']}\t{p['birth']}\t{death}")
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(_json_text(res), out)


@main.command("check-field")
@click.argument("input_path")
@click.option("--max-degree", type=int, default=None,
              help="Only certify degrees 0..M.")
@_format_option
@click.option("--out", default=None)
@click.pass_obj
def check_field(client, input_path, max_degree, fmt, out):
    """Decide whether the diagram depends on the coefficient field.

    Exit status: 0 independent, 1 dependent, 2 error.
    """
    res = client.post("/check-field", {
        "content": _read(input_path), "format": fmt, "max_degree": max_degree,
    })
    _emit(_json_text(res), out)
    sys.exit(0 if res["verdict"] == "independent" else 1)


@main.command()
@click.argument("diagram_path")
@click.option("--degree", type=int, required=True)
@click.option("--out", default=None)
@click.pass_obj
def betti(client, diagram_path, degree, out):
    """Persistent Betti table of a diagram file, as TSV."""
    diagram = json.loads(_read(diagram_path))
    res = client.post("/betti", {"diagram": diagram, "degree": degree})
    lines = ["m\tn\tbeta"]
    for m, row in enumerate(res["rows"]):
        for k, v in enumerate(row):
            lines.append(f"{m}\t{m + k}\t{v}")
    _emit("\n".join(lines) + "\n", out)


@main.command()
@click.argument("diagram_a")
@click.argument("diagram_b")
@click.option("--out", default=None)
@click.pass_obj
def compare(client, diagram_a, diagram_b, out):
    """Multiset equality of two diagram files, with a witness when unequal."""
    res = client.post("/compare", {
        "a": json.loads(_read(diagram_a)),
        "b": json.loads(_read(diagram_b)),
    })
    _emit(_json_text(res), out)


@main.command()
@click.argument("diagram_path")
@click.option("--degree", type=int, required=True)
@click.option("--f", "functional", default="x^2", show_default=True,
              help="x^<r>, power:<r>, or table:x=y,x=y,...")
@click.option("--labels-from", default=None,
              help="Filtration file whose cell labels give the lifetime scale.")
@click.option("--labels-format", type=click.Choice(["simplicial", "explicit"]),
              default="simplicial", show_default=True)
@click.option("--out", default=None)
@click.pass_obj
def functional(client, diagram_path, degree, functional, labels_from,
               labels_format, out):
    """Sum of a convex function of lifetimes over one degree."""
    labels = None
    if labels_from:
        from .filtration import parse_filtration

        try:
            f = parse_filtration(_read(labels_from), labels_format)
        except ValueError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(2)
        if f.labels is None:
            click.echo("error: filtration carries no labels", err=True)
            sys.exit(2)
        labels = [str(x) for x in f.labels]
    res = client.post("/functional", {
        "diagram": json.loads(_read(diagram_path)),
        "degree": degree, "functional": functional, "labels": labels,
    })
    _emit(_json_text(res), out)


def _collect_params(segments, p, n, d, m, loop, n_points, noise, dim,
                    max_dim, max_radius, do_cap) -> dict:
    params = {}
    if segments is not None:
        params["segments"] = segments
    if p is not None:
        params["p"] = p
    if n is not None:
        params["n"] = n
    if d is not None:
        params["d"] = d
    if m is not None:
        params["m"] = m
    if loop is not None:
        params["loop"] = loop
    if n_points is not None:
        params["n_points"] = n_points
    if noise is not None:
        params["noise"] = noise
    if dim is not None:
        params["dim"] = dim
    if max_dim is not None:
        params["max_dim"] = max_dim
    if max_radius is not None:
        params["max_radius"] = max_radius
    if do_cap:
        params["cap"] = True
    return params


def _generator_options(cmd):
    opts = [
        click.option("--segments", type=int, default=None, help="mobius/annulus"),
        click.option("--p", type=int, default=None, help="annulus winding number"),
        click.option("--n", type=int, default=None, help="lm vertex count"),
        click.option("--d", type=int, default=None, help="lm top dimension"),
        click.option("--m", type=int, default=None, help="lm top-cell count"),
        click.option("--loop", type=click.Choice(["double", "triple"]), default=None),
        click.option("--n-points", type=int, default=None),
        click.option("--noise", type=float, default=None),
        click.option("--dim", type=int, default=None, help="pointcloud dimension"),
        click.option("--max-dim", type=int, default=None),
        click.option("--max-radius", type=float, default=None),
        click.option("--cap", "do_cap", is_flag=True,
                     help="Cone off the final complex."),
    ]
    for opt in reversed(opts):
        cmd = opt(cmd)
    return cmd


@main.command()
@click.option("--kind", required=True,
              type=click.Choice(["mobius", "annulus", "lm", "loop_rips",
                                 "uniform_rips", "loop", "cloud"]))
@click.option("--seed", type=int, default=0, show_default=True)
@_generator_options
@_format_option
@click.option("--out", default=None)
@click.pass_obj
def gen(client, kind, seed, fmt, out, segments, p, n, d, m, loop, n_points,
        noise, dim, max_dim, max_radius, do_cap):
    """Generate a filtration (or pointcloud, for kinds loop/cloud)."""
    params = _collect_params(segments, p, n, d, m, loop, n_points, noise, dim,
                             max_dim, max_radius, do_cap)
    res = client.post("/gen", {"kind": kind, "params": params, "seed": seed,
                               "format": fmt})
    _emit(res["content"], out)


@main.command()
@click.argument("points_path")
@click.option("--max-dim", type=int, default=2, show_default=True)
@click.option("--max-radius", type=float, required=True)
@_format_option
@click.option("--out", default=None)
@click.pass_obj
def rips(client, points_path, max_dim, max_radius, fmt, out):
    """Vietoris-Rips filtration of a pointcloud file."""
    res = client.post("/rips", {
        "points": _read(points_path), "max_dim": max_dim,
        "max_radius": max_radius, "format": fmt,
    })
    _emit(res["content"], out)


@main.group()
def oracle():
    """Brute-force checks (small inputs only)."""


@oracle.command("scan")
@click.argument("input_path")
@_format_option
@click.option("--out", default=None)
@click.pass_obj
def oracle_scan(client, input_path, fmt, out):
    """Exhaustive torsion scan over all step pairs."""
    res = client.post("/oracle/scan", {"content": _read(input_path), "format": fmt})
    _emit(_json_text(res), out)
    sys.exit(0 if res["verdict"] == "independent" else 1)


@oracle.command("snf")
@click.argument("matrix_path")
@click.option("--out", default=None)
@click.pass_obj
def oracle_snf(client, matrix_path, out):
    """Smith normal form of a dense integer matrix (text rows)."""
    res = client.post("/oracle/snf", {"matrix": _read(matrix_path)})
    _emit(_json_text(res), out)


@main.command()
@click.option("--kind", required=True,
              type=click.Choice(["mobius", "annulus", "lm", "loop_rips",
                                 "uniform_rips"]))
@click.option("--seeds", required=True, help="Inclusive seed range a:b.")
@click.option("--parallelism", type=int, default=None,
              help="Process count (default: $PHFIELD_PARALLELISM or 1).")
@click.option("--digest", is_flag=True, help="Record a Z_2 diagram digest per trial.")
@_generator_options
@click.option("--out", default=None)
@click.pass_obj
def experiment(client, kind, seeds, parallelism, digest, out, segments, p, n,
               d, m, loop, n_points, noise, dim, max_dim, max_radius, do_cap):
    """Run a seeded batch of field-dependence trials."""
    try:
        a, b = seeds.split(":")
        seed_start, seed_end = int(a), int(b)
    except ValueError:
        click.echo(f"error: bad seed range {seeds!r}, expected a:b", err=True)
        sys.exit(2)
    params = _collect_params(segments, p, n, d, m, loop, n_points, noise, dim,
                             max_dim, max_radius, do_cap)
    res = client.post("/experiment", {
        "kind": kind, "params": params, "seed_start": seed_start,
        "seed_end": seed_end, "parallelism": parallelism, "digest": digest,
    })
    _emit(_json_text(res), out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8707, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
