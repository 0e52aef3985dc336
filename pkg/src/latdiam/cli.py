"""Command-line client for the latdiam service.

Every command is a thin wrapper over one HTTP endpoint; computation happens
in the service (in-process unless --server points at a running instance).
Vertex and coordinate indices are 0-based.

Exit codes: 0 clean, 2 input error, 3 internal invariant violation (a dump
file with the diagnostic/reproducer is written next to the outputs).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .client import ServiceClient
from .errors import InputError, InternalError
from .polytope import dumps_canonical


@click.group()
@click.option("--server", default=None, metavar="URL", help="Base URL of a running service (default: run in-process).")
@click.pass_context
def main(ctx, server):
    """Exact lattice-polytope skeletons, diameters, and path certificates."""
    ctx.obj = ServiceClient(server)


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}")


def _write(path, text):
    Path(path).write_text(text)
    click.echo(f"wrote {path}")


def _run(action):
    try:
        action()
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except InternalError as exc:
        click.echo(f"internal error: {exc}", err=True)
        if exc.dump:
            Path("latdiam-dump.json").write_text(dumps_canonical(exc.dump))
            click.echo("diagnostic dump written to latdiam-dump.json", err=True)
        sys.exit(3)


@main.command()
@click.argument("spec_file", type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the seed in the spec file.")
@click.option("--out", default="polytope.json", show_default=True, help="Output polytope file.")
@click.pass_obj
def gen(client, spec_file, seed, out):
    """Generate a polytope from a GeneratorSpec JSON file."""

    def action():
        spec = _read_json(spec_file)
        if seed is not None:
            spec["seed"] = seed
        poly = client.post("/generate", spec)
        _write(out, dumps_canonical(poly))

    _run(action)


@main.command()
@click.argument("polytope_file", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json", show_default=True)
@click.option("--out", default=None, help="Output file [default: skeleton.json / skeleton.dot].")
@click.pass_obj
def skeleton(client, polytope_file, fmt, out):
    """Compute the 1-skeleton (adjacency lists) of a polytope file."""

    def action():
        result = client.post("/skeleton", _read_json(polytope_file))
        if fmt == "dot":
            _write(out or "skeleton.dot", result["dot"])
        else:
            payload = {"vertex_count": result["vertex_count"], "adjacency": result["adjacency"]}
            _write(out or "skeleton.json", dumps_canonical(payload))

    _run(action)


@main.command()
@click.argument("polytope_file", type=click.Path())
@click.pass_obj
def diameter(client, polytope_file):
    """Exact diameter of a polytope file, with both bounds."""

    def action():
        r = client.post("/diameter", _read_json(polytope_file))
        status = "tight" if r["tight"] else f"slack {r['slack']}"
        click.echo(
            f"d={r['rank']} k={r['k']} vertices={r['vertex_count']} "
            f"diameter={r['diameter']} bound={r['bound']} kd={r['ko_bound']} ({status})"
        )

    _run(action)


@main.command()
@click.argument("polytope_file", type=click.Path())
@click.argument("u", type=int)
@click.argument("v", type=int)
@click.option("--out", default="certificate.json", show_default=True, help="Certificate output file.")
@click.pass_obj
def path(client, polytope_file, u, v, out):
    """Construct a bounded-length path between vertices U and V (0-based)."""

    def action():
        if u == v:
            raise InputError("U and V must be distinct vertex indices")
        result = client.post(
            "/path", {"polytope": _read_json(polytope_file), "source": u, "target": v}
        )
        cert = result["certificate"]
        _write(out, dumps_canonical(cert))
        click.echo(
            f"length={cert['length']} bound={cert['bound']} "
            f"bfs={result['bfs_distance']} trace={'|'.join(cert['trace'])}"
        )
        if not result["valid"]:
            raise InternalError("certificate failed verification", dump=cert)

    _run(action)


@main.command()
@click.argument("suite_file", type=click.Path(), required=False)
@click.option("--seed", type=int, default=None, help="Override the suite seed.")
@click.option("--out", default="report", show_default=True, help="Report file prefix.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True, help="Report format echoed to stdout.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Parallel instance workers.")
@click.pass_obj
def verify(client, suite_file, seed, out, fmt, jobs):
    """Run the property suite; writes OUT.json and OUT.csv.

    Checks per instance: vertex-count bound, both diameter bounds against
    exact BFS (re-run on a freshly rebuilt skeleton), constructive paths on
    sampled vertex pairs, and the walk/route inequalities on random draws;
    plus diameter additivity on random cartesian products.  Any violation
    aborts with a reproducer dump and exit code 3.
    """

    def action():
        from .experiments import ExperimentReport, report_to_csv_str, report_to_json_str

        suite = _read_json(suite_file) if suite_file else {}
        if seed is not None:
            suite["seed"] = seed
        result = client.post("/verify", {"suite": suite, "jobs": jobs})
        report = ExperimentReport(result["suite"], tuple(result["rows"]), result["summary"])
        _write(f"{out}.json", report_to_json_str(report))
        _write(f"{out}.csv", report_to_csv_str(report))
        click.echo(report_to_csv_str(report) if fmt == "csv" else json.dumps(report.summary, sort_keys=True))

    _run(action)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8234, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("latdiam.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
