"""Command-line front door: instance parsing/serialisation and the
solve / verify / generate / reduce / crosscheck commands.

Exit codes are a stable contract: 0 yes, 1 no, 2 usage or scale error,
3 crosscheck mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import (
    InvalidInstance,
    NotBipartite,
    ParseError,
    ProbeCutError,
)
from .graph import (
    Graph,
    PartitionedProbeGraph,
    ProbeCertificate,
    build_graph,
    parse_pattern,
    random_probe_hfree,
    split_forbidden_patterns,
    sp1_p4_pattern,
    verify_probe_certificate,
)
from .colouring import BLUE, RED, CutCertificate, validate_colouring
from .oracles import brute_dcut, brute_mmc, brute_pmc
from .reductions import (
    SatInstance,
    bipartite_to_split,
    moshi_double,
    random_sat_instance,
    sat_to_4p1,
    subdivide4,
)
from .solvers import solve_dcut, solve_mmc, solve_pmc


@dataclass
class InstanceDocument:
    """On-disk form of a partitioned probe instance."""

    n: int
    edges: list[tuple[int, int]]
    probes: list[int]
    nonprobes: list[int]
    certificate_f: Optional[list[tuple[int, int]]] = None
    metadata: dict[str, str] = field(default_factory=dict)

    def to_instance(self) -> tuple[PartitionedProbeGraph, Optional[ProbeCertificate]]:
        try:
            g = build_graph(self.n, self.edges)
        except ProbeCutError as exc:
            raise InvalidInstance(str(exc)) from exc
        ppg = PartitionedProbeGraph(
            g, frozenset(self.probes), frozenset(self.nonprobes)
        )
        cert = (
            ProbeCertificate.of(self.certificate_f)
            if self.certificate_f is not None
            else None
        )
        return ppg, cert


def _norm_edges(pairs) -> list[tuple[int, int]]:
    uniq = {(min(u, v), max(u, v)) for u, v in pairs}
    return sorted(uniq)


def document_from(
    ppg: PartitionedProbeGraph,
    cert: Optional[ProbeCertificate],
    metadata: Optional[dict[str, str]] = None,
) -> InstanceDocument:
    return InstanceDocument(
        n=ppg.graph.n,
        edges=_norm_edges(ppg.graph.edges()),
        probes=sorted(ppg.probes),
        nonprobes=sorted(ppg.nonprobes),
        certificate_f=(
            _norm_edges(cert.f_edges) if cert is not None else None
        ),
        metadata=dict(metadata or {}),
    )


def parse_instance(text: str) -> InstanceDocument:
    """Parse the JSON instance format or the line-oriented edge list."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = _parse_json_instance(text)
    else:
        doc = _parse_text_instance(text)
    ppg, cert = doc.to_instance()  # runs all invariant checks
    if cert is not None:
        for u, v in cert.f_edges:
            if u not in ppg.nonprobes or v not in ppg.nonprobes:
                raise InvalidInstance(
                    f"certificate pair {(u, v)} leaves the non-probe side"
                )
    return doc


def _parse_json_instance(text: str) -> InstanceDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    try:
        n = int(raw["n"])
        edges = _norm_edges((int(u), int(v)) for u, v in raw.get("edges", []))
        probes = sorted(int(v) for v in raw.get("probes", []))
        nonprobes = sorted(int(v) for v in raw.get("nonprobes", []))
        cert = raw.get("certificate_f")
        cert_edges = (
            _norm_edges((int(u), int(v)) for u, v in cert)
            if cert is not None
            else None
        )
        metadata = {str(k): str(v) for k, v in raw.get("metadata", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad instance document: {exc}") from exc
    return InstanceDocument(n, edges, probes, nonprobes, cert_edges, metadata)


def _parse_text_instance(text: str) -> InstanceDocument:
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    probes: set[int] = set()
    nonprobes: set[int] = set()
    cert: list[tuple[int, int]] = []
    seen_vertex = -1
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split("#", 1)[0].split()
        if not tokens:
            continue
        kind, args = tokens[0], tokens[1:]
        try:
            if kind == "n" and len(args) == 1:
                n = int(args[0])
            elif kind == "e" and len(args) == 2:
                u, v = int(args[0]), int(args[1])
                edges.append((u, v))
                seen_vertex = max(seen_vertex, u, v)
            elif kind == "probe" and len(args) == 1:
                u = int(args[0])
                probes.add(u)
                seen_vertex = max(seen_vertex, u)
            elif kind == "nonprobe" and len(args) == 1:
                u = int(args[0])
                nonprobes.add(u)
                seen_vertex = max(seen_vertex, u)
            elif kind == "f" and len(args) == 2:
                u, v = int(args[0]), int(args[1])
                cert.append((u, v))
                seen_vertex = max(seen_vertex, u, v)
            else:
                raise ParseError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if n is None:
        n = seen_vertex + 1
    if probes & nonprobes:
        raise InvalidInstance("a vertex is marked both probe and nonprobe")
    declared_non = set(range(n)) - probes  # unmarked vertices are non-probes
    if not nonprobes <= declared_non:
        raise InvalidInstance("nonprobe marking contradicts probe marking")
    return InstanceDocument(
        n,
        _norm_edges(edges),
        sorted(probes),
        sorted(declared_non),
        _norm_edges(cert) if cert else None,
    )


def serialize_instance(doc: InstanceDocument) -> str:
    payload = {
        "n": doc.n,
        "edges": [list(e) for e in _norm_edges(doc.edges)],
        "probes": sorted(doc.probes),
        "nonprobes": sorted(doc.nonprobes),
    }
    if doc.certificate_f is not None:
        payload["certificate_f"] = [list(e) for e in _norm_edges(doc.certificate_f)]
    if doc.metadata:
        payload["metadata"] = {k: doc.metadata[k] for k in sorted(doc.metadata)}
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def parse_sat(text: str) -> SatInstance:
    try:
        raw = json.loads(text)
        return SatInstance.of(
            int(raw["n_vars"]),
            [tuple(int(v) for v in c) for c in raw["positive"]],
            [tuple(int(v) for v in c) for c in raw["negative"]],
        )
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad SAT document: {exc}") from exc


def _certificate_payload(cert: Optional[CutCertificate]):
    if cert is None:
        return None
    return {
        "colours": list(cert.colouring),
        "cut": [list(e) for e in sorted(cert.cut)],
        "size": cert.size,
        "d": cert.d,
        "perfect": cert.perfect,
    }


def _emit_report(args, answer, *, certificate=None, branches=0, trace=None,
                 started=None, violation=None) -> int:
    report = {
        "command": " ".join(args),
        "answer": "yes" if answer else "no",
        "certificate": _certificate_payload(certificate),
        "branches_explored": branches,
        "case_trace": list(trace or []),
        "wall_time": round(time.perf_counter() - started, 6) if started else 0.0,
    }
    if violation is not None:
        report["violation"] = violation
    print(json.dumps(report, indent=2))
    return 0 if answer else 1


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _read_graph(path: str) -> Graph:
    """Read only the graph part of an instance file; reduction inputs are
    plain graphs, so the probe partition is neither required nor checked."""
    text = _read(path)
    stripped = text.lstrip()
    doc = (
        _parse_json_instance(text)
        if stripped.startswith("{")
        else _parse_text_instance(text)
    )
    try:
        return build_graph(doc.n, doc.edges)
    except ProbeCutError as exc:
        raise InvalidInstance(str(exc)) from exc


def cmd_solve(opts, argv) -> int:
    started = time.perf_counter()
    doc = parse_instance(_read(opts.input))
    ppg, _ = doc.to_instance()
    problem, algo = opts.problem, opts.algo
    if algo == "poly":
        if problem == "dcut":
            report = solve_dcut(ppg, opts.d)
        elif problem in ("mc", "mmc"):
            report = solve_mmc(ppg, opts.s)
        else:
            report = solve_pmc(ppg, opts.s)
        return _emit_report(
            argv, report.answer, certificate=report.certificate,
            branches=report.branches_explored, trace=report.case_trace,
            started=started,
        )
    # brute dispatch is explicit; scale guards surface as errors
    if problem == "dcut":
        cert = brute_dcut(ppg.graph, opts.d)
    elif problem == "mc":
        cert = brute_dcut(ppg.graph, 1)
    elif problem == "pmc":
        cert = brute_pmc(ppg.graph)
    else:
        found = brute_mmc(ppg.graph)
        cert = found[1] if found else None
    return _emit_report(
        argv, cert is not None, certificate=cert, trace=["oracle"],
        started=started,
    )


def cmd_verify(opts, argv) -> int:
    started = time.perf_counter()
    doc = parse_instance(_read(opts.input))
    ppg, cert = doc.to_instance()
    if opts.pattern is not None:
        if cert is None:
            raise InvalidInstance("instance carries no certificate_f to verify")
        patterns = (
            split_forbidden_patterns()
            if opts.pattern == "split"
            else (parse_pattern(opts.pattern),)
        )
        for pattern in patterns:
            if not verify_probe_certificate(ppg, cert, pattern):
                return _emit_report(
                    argv, False, started=started,
                    violation=f"completed graph contains an induced {pattern.name}",
                )
        return _emit_report(argv, True, started=started)
    if opts.colouring is None:
        raise ParseError("verify needs --pattern or --colouring")
    raw = json.loads(_read(opts.colouring))
    colours = raw["colours"] if isinstance(raw, dict) else raw
    if not all(c in (RED, BLUE) for c in colours):
        raise ParseError("colouring entries must be 'red' or 'blue'")
    result = validate_colouring(ppg.graph, list(colours), opts.d, opts.perfect)
    if isinstance(result, CutCertificate):
        return _emit_report(argv, True, certificate=result, started=started)
    return _emit_report(argv, False, started=started, violation=result.reason)


def _bipartition_side(g: Graph, anchor: int) -> frozenset[int]:
    """The bipartition class containing ``anchor``, by breadth-first
    2-colouring; raises NotBipartite on an odd cycle or disconnection."""
    colour = {anchor: 0}
    queue = [anchor]
    while queue:
        v = queue.pop(0)
        for u in g.adj[v]:
            if u not in colour:
                colour[u] = 1 - colour[v]
                queue.append(u)
            elif colour[u] == colour[v]:
                raise NotBipartite("graph has an odd cycle")
    if len(colour) != g.n:
        raise NotBipartite("graph is disconnected")
    return frozenset(v for v, c in colour.items() if c == 0)


def _run_construction(construction: str, opts) -> tuple:
    if construction == "sat4p1":
        if opts.input:
            inst = parse_sat(_read(opts.input))
        else:
            inst = random_sat_instance(opts.n_vars, opts.seed)
        ppg, cert = sat_to_4p1(inst, opts.d)
        meta = {
            "family": "sat4p1",
            "d": str(opts.d),
            "n_vars": str(inst.n_vars),
            "brute_force_regime": str(len(inst.positive_clauses) < 5).lower(),
        }
        return ppg, cert, meta
    g = _read_graph(opts.input)
    if construction == "moshi":
        ppg, cert = moshi_double(g)
        return ppg, cert, {"family": "moshi"}
    if construction == "subdivide4":
        ppg, cert = subdivide4(g)
        return ppg, cert, {"family": "subdivide4"}
    if construction == "split":
        side = _bipartition_side(g, opts.side_of)
        ppg, cert = bipartite_to_split(g, side)
        return ppg, cert, {"family": "split", "side_of": str(opts.side_of)}
    raise ParseError(f"unknown construction {construction!r}")


def cmd_generate(opts, argv) -> int:
    if opts.family == "random-probe-hfree":
        pattern = parse_pattern(opts.pattern)
        ppg, cert = random_probe_hfree(opts.n, pattern, opts.density, opts.seed)
        meta = {
            "family": "random-probe-hfree",
            "n": str(opts.n),
            "pattern": pattern.name,
            "density": str(opts.density),
            "seed": str(opts.seed),
        }
    else:
        ppg, cert, meta = _run_construction(opts.family, opts)
        if opts.seed is not None:
            meta["seed"] = str(opts.seed)
    sys.stdout.write(serialize_instance(document_from(ppg, cert, meta)))
    return 0


def cmd_reduce(opts, argv) -> int:
    if opts.source == "sat" and opts.construction != "sat4p1":
        raise ParseError("--from sat only supports --construction sat4p1")
    if opts.source == "graph" and opts.construction == "sat4p1":
        raise ParseError("--construction sat4p1 needs --from sat")
    ppg, cert, meta = _run_construction(opts.construction, opts)
    sys.stdout.write(serialize_instance(document_from(ppg, cert, meta)))
    return 0


def cmd_crosscheck(opts, argv) -> int:
    started = time.perf_counter()
    if opts.count == 0:
        print("warning: count=0, trivial pass", file=sys.stderr)
        return _emit_report(argv, True, started=started)
    rng = random.Random(opts.seed)
    pattern = sp1_p4_pattern(opts.s)
    mismatches = []
    agreed = 0
    for index in range(opts.count):
        n = rng.randint(4, max(4, opts.max_n))
        density = rng.choice([0.6, 0.75, 0.9])
        ppg = None
        for _ in range(50):
            try:
                ppg, cert = random_probe_hfree(
                    n, pattern, density, rng.randrange(1 << 30)
                )
                break
            except ProbeCutError:
                density = min(1.0, density + 0.1)
        if ppg is None:
            continue
        poly_desc, brute_desc = _crosscheck_run(opts, ppg)
        if poly_desc == brute_desc:
            agreed += 1
        else:
            dump_dir = Path(tempfile.mkdtemp(prefix="probecut-crosscheck-"))
            dump = dump_dir / f"mismatch-{index}.json"
            dump.write_text(
                serialize_instance(
                    document_from(ppg, cert, {
                        "index": str(index),
                        "poly": poly_desc,
                        "brute": brute_desc,
                    })
                )
            )
            mismatches.append(str(dump))
    print(
        f"{agreed}/{opts.count} agree on problem={opts.problem}",
        file=sys.stderr,
    )
    if mismatches:
        for path in mismatches:
            print(f"mismatch dumped: {path}", file=sys.stderr)
        _emit_report(argv, False, started=started,
                     violation=f"{len(mismatches)} mismatches")
        return 3
    return _emit_report(argv, True, started=started)


def _crosscheck_run(opts, ppg) -> tuple[str, str]:
    if opts.problem == "dcut":
        poly = solve_dcut(ppg, opts.d)
        brute = brute_dcut(ppg.graph, opts.d)
        return (
            "yes" if poly.answer else "no",
            "yes" if brute is not None else "no",
        )
    if opts.problem == "mmc":
        poly = solve_mmc(ppg, opts.s)
        brute = brute_mmc(ppg.graph)
        return (
            f"size={poly.certificate.size}" if poly.answer else "no",
            f"size={brute[0]}" if brute is not None else "no",
        )
    if opts.problem == "mc":
        poly = solve_mmc(ppg, opts.s)
        brute = brute_dcut(ppg.graph, 1)
        return (
            "yes" if poly.answer else "no",
            "yes" if brute is not None else "no",
        )
    poly = solve_pmc(ppg, opts.s)
    brute = brute_pmc(ppg.graph)
    return (
        "yes" if poly.answer else "no",
        "yes" if brute is not None else "no",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probecut",
        description="d-cut / matching cut workbench for partitioned probe graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser(
        "solve", help="run a solver on an instance file",
        description="Class promises per problem (poly only, never "
                    "re-verified): dcut needs --d >= 2 and a probe "
                    "(P1+P4)-free instance; mc, mmc and pmc need a probe "
                    "(sP1+P4)-free instance with s given by --s.  There is "
                    "no silent fallback between poly and brute.",
    )
    solve.add_argument("--problem", required=True,
                       choices=["dcut", "mc", "pmc", "mmc"])
    solve.add_argument("--d", type=int, default=1)
    solve.add_argument("--algo", required=True, choices=["poly", "brute"],
                       help="poly assumes the promised probe class; "
                            "brute is exhaustive and scale-guarded")
    solve.add_argument("--s", type=int, default=0,
                       help="isolated-vertex count of the promised pattern "
                            "(poly mc/mmc/pmc)")
    solve.add_argument("--input", required=True)

    verify = sub.add_parser("verify", help="check a certificate or colouring")
    verify.add_argument("--input", required=True)
    verify.add_argument("--pattern", default=None,
                        help="pattern name, or 'split' for the split-graph triple")
    verify.add_argument("--colouring", default=None,
                        help="JSON colour list to validate as a d-cut")
    verify.add_argument("--d", type=int, default=1)
    verify.add_argument("--perfect", action="store_true")

    gen = sub.add_parser("generate", help="emit a certified instance document")
    gen.add_argument("--family", required=True,
                     choices=["random-probe-hfree", "moshi", "subdivide4",
                              "split", "sat4p1"])
    gen.add_argument("--n", type=int, default=8)
    gen.add_argument("--pattern", default="P1+P4")
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--input", default=None,
                     help="source graph / SAT file for the reduction families")
    gen.add_argument("--d", type=int, default=2)
    gen.add_argument("--n-vars", dest="n_vars", type=int, default=6)
    gen.add_argument("--side-of", dest="side_of", type=int, default=0)

    red = sub.add_parser("reduce", help="apply a hardness construction to an input")
    red.add_argument("--from", dest="source", required=True,
                     choices=["sat", "graph"])
    red.add_argument("--construction", required=True,
                     choices=["moshi", "subdivide4", "split", "sat4p1"])
    red.add_argument("--input", required=True)
    red.add_argument("--d", type=int, default=2)
    red.add_argument("--side-of", dest="side_of", type=int, default=0)
    red.add_argument("--n-vars", dest="n_vars", type=int, default=6)
    red.add_argument("--seed", type=int, default=0)

    cross = sub.add_parser("crosscheck",
                           help="poly vs oracle agreement over random corpora")
    cross.add_argument("--problem", required=True,
                       choices=["dcut", "mc", "pmc", "mmc"])
    cross.add_argument("--d", type=int, default=2)
    cross.add_argument("--s", type=int, default=1)
    cross.add_argument("--count", type=int, required=True)
    cross.add_argument("--max-n", dest="max_n", type=int, default=10)
    cross.add_argument("--seed", type=int, default=0)
    return parser


_HANDLERS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "generate": cmd_generate,
    "reduce": cmd_reduce,
    "crosscheck": cmd_crosscheck,
}


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _HANDLERS[opts.command](opts, argv)
    except (ProbeCutError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
