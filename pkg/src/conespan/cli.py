"""Command line front end wiring generation, construction, metrics,
certification, and local simulation into reproducible experiments.

Every artifact this module writes is deterministic: floats are printed
with 17 significant digits, collections are emitted in sorted order, and
all randomness flows from explicit seeds. Exit codes: 0 success, 1
verification failure, 2 usage or input errors."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from conespan.geometry import (
    ConeScheme,
    DirectedTopology,
    PointSet,
    UnitDiskGraph,
    build_udg,
    is_civilized,
)
from conespan.instances import (
    GenSpec,
    format_float,
    gen_figure6,
    load_points_with_radius,
    save_points,
)
from conespan.localsim import (
    LocalRunReport,
    check_clique_property,
    compare_local_centralized,
    run_local,
)
from conespan.metrics import (
    compute_bounds,
    degree_stats,
    length_stretch,
    mst_weight,
    power_stretch,
    shortest_paths,
    total_weight,
)
from conespan.topology import (
    STRUCTURES,
    CertificationError,
    ConePathCertificate,
    build,
    build_with_artifacts,
    certify_all,
)

DEFAULT_K = 8
DEFAULT_R = 2.0
DEFAULT_BETA = 2.0

ANALYZE_HEADER = (
    "instance,structure,n,k,r,lambda,beta,max_degree,length_stretch,"
    "power_stretch,weight,mst_weight,bounds_used,conditions_ok"
)

TOPOLOGY_FORMATS = ("json", "csv", "dot")
POINT_FORMATS = ("json", "csv")


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _needs_ratio(structure: str) -> bool:
    return structure in ("YE", "YES")


def topology_json(t: DirectedTopology) -> str:
    ratio = "null" if t.filter_ratio is None else format_float(t.filter_ratio)
    rows = [
        f'    {{"src": {u}, "dst": {v}, "len": {format_float(t.points.dist(u, v))}}}'
        for u, v in t.edges
    ]
    body = ",\n".join(rows)
    return (
        "{\n"
        f'  "structure": "{t.structure}",\n'
        f'  "k": {t.scheme.k},\n'
        f'  "r": {ratio},\n'
        f'  "radius": {format_float(t.radius)},\n'
        f'  "edges": [\n{body}\n  ]\n'
        "}\n"
    )


def topology_csv(t: DirectedTopology) -> str:
    lines = ["src,dst,len"]
    for u, v in t.edges:
        lines.append(f"{u},{v},{format_float(t.points.dist(u, v))}")
    return "\n".join(lines) + "\n"


def topology_dot(t: DirectedTopology) -> str:
    points = t.points
    lines = [f'graph "{t.structure.lower()}" {{']
    for node_id in sorted(points.ids):
        x, y = points.position(node_id)
        lines.append(f'  {node_id} [pos="{format_float(x)},{format_float(y)}!"];')
    for u, v in t.undirected_edges():
        lines.append(f"  {u} -- {v} [len={format_float(points.dist(u, v))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_topology(t: DirectedTopology, path: str, fmt: Optional[str] = None) -> None:
    if fmt is None:
        suffix = Path(path).suffix.lower().lstrip(".")
        fmt = suffix if suffix in TOPOLOGY_FORMATS else "json"
    if fmt == "json":
        text = topology_json(t)
    elif fmt == "csv":
        text = topology_csv(t)
    elif fmt == "dot":
        text = topology_dot(t)
    else:
        raise ValueError(f"unknown topology format {fmt!r}")
    _write_text(Path(path), text)


def load_topology(path: str, points: PointSet) -> DirectedTopology:
    """Read a JSON topology file back against its point set. Stored edge
    lengths are cross-checked against the coordinates."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(obj, dict) or "edges" not in obj or "k" not in obj:
        raise ValueError(f"{path}: expected an object with 'k' and 'edges'")
    edges: List[Tuple[int, int]] = []
    for row in obj["edges"]:
        if not isinstance(row, dict) or "src" not in row or "dst" not in row:
            raise ValueError(f"{path}: every edge needs 'src' and 'dst'")
        u, v = int(row["src"]), int(row["dst"])
        if "len" in row and abs(points.dist(u, v) - float(row["len"])) > 1e-9:
            raise ValueError(
                f"{path}: stored length of edge {u}->{v} disagrees with the coordinates"
            )
        edges.append((u, v))
    ratio = obj.get("r")
    return DirectedTopology(
        points,
        ConeScheme(int(obj["k"])),
        edges,
        float(obj.get("radius", 1.0)),
        structure=str(obj.get("structure", "?")),
        filter_ratio=None if ratio is None else float(ratio),
    )


def certificates_json(
    certificates: Sequence[ConePathCertificate], failures: Sequence[CertificationError]
) -> str:
    cert_rows = []
    for c in certificates:
        path = ", ".join(str(w) for w in c.path)
        cert_rows.append(
            f'    {{"src": {c.src}, "dst": {c.dst}, "path": [{path}], '
            f'"hops": {c.hops}, "ell": {c.ell}, '
            f'"prefix_length": {format_float(c.prefix_length)}, '
            f'"lower_threshold": {_json_float(c.lower_threshold)}, '
            f'"prefix_bound": {_json_float(c.prefix_bound)}}}'
        )
    fail_rows = []
    for f in failures:
        path = ", ".join(str(w) for w in f.path)
        reason = json.dumps(f.reason)
        fail_rows.append(
            f'    {{"src": {f.edge[0]}, "dst": {f.edge[1]}, '
            f'"reason": {reason}, "path": [{path}]}}'
        )
    return (
        "{\n"
        f'  "certified": [\n' + ",\n".join(cert_rows) + "\n  ],\n"
        f'  "failures": [\n' + ",\n".join(fail_rows) + "\n  ]\n"
        "}\n"
    )


def _json_float(value: float) -> str:
    # JSON has no infinity literal; certificates can carry unbounded limits
    if math.isinf(value):
        return '"inf"'
    return format_float(value)


def local_report_json(report: LocalRunReport) -> str:
    ratio = "null" if report.r is None else format_float(report.r)
    rows = []
    for d in compare_local_centralized(report):
        rows.append(
            f'    {{"src": {d.edge[0]}, "dst": {d.edge[1]}, '
            f'"local": {str(d.present_locally).lower()}, '
            f'"central": {str(d.present_centrally).lower()}}}'
        )
    body = ",\n".join(rows)
    return (
        "{\n"
        f'  "structure": "{report.structure}",\n'
        f'  "n": {len(report.union.points)},\n'
        f'  "k": {report.k},\n'
        f'  "r": {ratio},\n'
        f'  "messages": {report.messages_sent},\n'
        f'  "bytes": {report.bytes_estimate},\n'
        f'  "discrepancies": [\n{body}\n  ]\n'
        "}\n"
    )


def analyze_row(
    instance: str,
    g: UnitDiskGraph,
    t: DirectedTopology,
    beta: float,
    lam: Optional[float],
    epsilon: Optional[float],
) -> str:
    stats = degree_stats(t)
    ls = length_stretch(g, t)
    ps = power_stretch(g, t, beta)
    weight = total_weight(t)
    mst = mst_weight(g)
    bounds = compute_bounds(t.scheme.k, lam, t.filter_ratio, epsilon, beta)
    applicable = {
        "Y": ("yao_bound", bounds.yao_bound),
        "YY": ("theorem1_bound", bounds.theorem1_bound),
        "YS": ("yao_sink_bound", bounds.yao_sink_bound),
        "YES": ("theorem2_bound", bounds.theorem2_bound),
    }.get(t.structure)
    bounds_used = ""
    if applicable is not None and applicable[1] is not None:
        bounds_used = f"{applicable[0]}={format_float(applicable[1])}"
    conditions = ";".join(
        f"{name}={'true' if ok else 'false'}"
        for name, ok in sorted(bounds.conditions.items())
    )
    cells = [
        instance,
        t.structure,
        str(len(g.points)),
        str(t.scheme.k),
        "" if t.filter_ratio is None else format_float(t.filter_ratio),
        "" if lam is None else format_float(lam),
        format_float(beta),
        str(stats.max_degree),
        format_float(ls.length_stretch),
        format_float(ps.power_stretch),
        format_float(weight),
        format_float(mst),
        bounds_used,
        conditions,
    ]
    return ",".join(cells)


def cmd_generate(args: argparse.Namespace) -> int:
    spec = GenSpec(
        kind=args.kind,
        n=args.n,
        s=args.s,
        min_separation=args.min_separation,
        side=args.side,
        seed=args.seed,
    )
    points = spec.generate()
    save_points(points, args.out, radius=1.0, fmt=args.format)
    print(f"wrote {len(points)} points to {args.out} ({spec.label()})")
    return 0


def cmd_build(args: argparse.Namespace) -> int:
    points, radius = load_points_with_radius(args.points)
    g = build_udg(points, radius)
    structure = args.structure.upper()
    t = build(structure, g, args.k, args.r)
    save_topology(t, args.out, args.format)
    print(f"built {structure} (k={args.k}) with {len(t.edges)} directed edges -> {args.out}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    points, radius = load_points_with_radius(args.points)
    g = build_udg(points, radius)
    t = load_topology(args.topology, points)
    row = analyze_row(
        Path(args.points).stem, g, t, args.beta, args.min_separation, args.epsilon
    )
    text = ANALYZE_HEADER + "\n" + row + "\n"
    if args.out:
        _write_text(Path(args.out), text)
    print(text, end="")
    return 0


def cmd_localcheck(args: argparse.Namespace) -> int:
    points, radius = load_points_with_radius(args.points)
    g = build_udg(points, radius)
    structure = args.structure.upper()
    report = run_local(g, structure, args.k, args.r if _needs_ratio(structure) else None)
    text = local_report_json(report)
    if args.out:
        _write_text(Path(args.out), text)
    print(text, end="")
    return 0 if report.equivalent else 1


def cmd_reproduce_figure6(args: argparse.Namespace) -> int:
    """Weight table for the two-row family where every sparsification step
    is a no-op: the construction keeps all s long horizontal hops while
    the spanning tree needs only one vertical edge, so the weight ratio
    grows linearly with s."""
    s, k, r = args.s, args.k, args.r
    points = gen_figure6(s)
    g = build_udg(points, 1.0)
    topologies = {name: build(name, g, k, r) for name in STRUCTURES}
    mst = mst_weight(g)
    reference = set(topologies["Y"].undirected_edges())
    identical = all(
        set(topologies[name].undirected_edges()) == reference for name in STRUCTURES
    )
    flag = "true" if identical else "false"
    lines = ["s,n,structure,weight,mst_weight,ratio,identical_structures"]
    for name in STRUCTURES:
        w = total_weight(topologies[name])
        lines.append(
            f"{s},{len(points)},{name},{format_float(w)},{format_float(mst)},"
            f"{format_float(w / mst)},{flag}"
        )
    table = "\n".join(lines) + "\n"
    if args.out:
        _write_text(Path(args.out), table)
    print(table, end="")
    weight_y = total_weight(topologies["Y"])
    ok = identical and abs(weight_y - (s + 2)) < 1e-9 and abs(mst - 3.0) < 1e-9
    if not ok:
        print(
            "FAIL - expected weight(Y) = s+2, weight(MST) = 3, and identical structures",
            file=sys.stderr,
        )
    return 0 if ok else 1


def cmd_verify(args: argparse.Namespace) -> int:
    """Battery of structural invariants, certificates, bound checks, and
    local-equivalence runs; any failure exits 1."""
    points, radius = load_points_with_radius(args.points)
    k, r, beta = args.k, args.r, args.beta
    lam, epsilon = args.min_separation, args.epsilon
    g = build_udg(points, radius)
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if ok:
            print(f"ok - {name}" + (f" ({detail})" if detail else ""))
        else:
            failures += 1
            print(f"FAIL - {name}" + (f": {detail}" if detail else ""))

    check("udg-connected", g.is_connected(), f"n={len(points)}")
    if lam is not None:
        check("civilized", is_civilized(points, lam), f"lambda={lam:g}")
    if k >= 6:
        clique_ok, witness = check_clique_property(g, k)
        check("cone-clique", clique_ok, "" if clique_ok else f"counterexample {witness}")

    artifacts = {name: build_with_artifacts(name, g, k, r) for name in STRUCTURES}
    y = artifacts["Y"].topology
    out_degree: Dict[int, int] = {}
    for u, _ in y.edges:
        out_degree[u] = out_degree.get(u, 0) + 1
    check("y-out-degree<=k", max(out_degree.values(), default=0) <= k)
    check("yy-degree<=2k", degree_stats(artifacts["YY"].topology).max_degree <= 2 * k)
    cap = k * (k + 2)
    check("ys-degree<=k(k+2)", degree_stats(artifacts["YS"].topology).max_degree <= cap)
    check("yes-degree<=k(k+2)", degree_stats(artifacts["YES"].topology).max_degree <= cap)

    log_r = math.log(r)
    bucket_ok = True
    bucket_detail = ""
    ratio_ok = True
    ratio_detail = ""
    for part in artifacts["YE"].partitions:
        allowed = math.floor(math.log(part.aspect) / log_r) + 1
        if len(part.buckets) > allowed:
            bucket_ok = False
            bucket_detail = f"sink {part.sink} cone {part.cone}: {len(part.buckets)} > {allowed}"
        for bucket in part.buckets:
            kept_len = g.points.dist(*bucket.kept)
            for edge in bucket.edges:
                if kept_len < g.points.dist(*edge) / r - 1e-12:
                    ratio_ok = False
                    ratio_detail = f"kept {bucket.kept} vs dropped {edge}"
    check("ye-cone-in-degree<=log_r(aspect)+1", bucket_ok, bucket_detail)
    check("ye-kept-within-ratio-of-dropped", ratio_ok, ratio_detail)

    y_set = set(y.edges)
    check("yy-subset-of-y", set(artifacts["YY"].topology.edges) <= y_set)
    check("ye-subset-of-y", set(artifacts["YE"].topology.edges) <= y_set)

    for name in ("YS", "YES"):
        art = artifacts[name]
        tree_ok = True
        tree_detail = ""
        for tree in art.trees:
            parents = tree.parent_map()
            if len(tree.edges) != len(tree.members()):
                tree_ok = False
                tree_detail = f"sink {tree.sink} cone {tree.cone}: edge count mismatch"
                break
            for child in parents:
                hops = 0
                node = child
                while node != tree.sink:
                    node = parents[node]
                    hops += 1
                    if hops > len(tree.edges):
                        tree_ok = False
                        tree_detail = f"sink {tree.sink} cone {tree.cone}: cycle at {child}"
                        break
                if not tree_ok:
                    break
            if not tree_ok:
                break
        check(f"{name.lower()}-sink-trees-span", tree_ok, tree_detail)
        certs, cert_failures = certify_all(art.pre_sink, art.topology, list(art.trees))
        check(
            f"{name.lower()}-cone-path-certificates",
            not cert_failures,
            f"{len(certs)} certified"
            if not cert_failures
            else f"{len(cert_failures)} failed; first: {cert_failures[0]}",
        )

    matrix = shortest_paths(g, method="matrix")
    per_source = shortest_paths(g, method="per-source")
    worst = 0.0
    for a, b in zip(matrix.flat, per_source.flat):
        if math.isinf(a) and math.isinf(b):
            continue
        worst = max(worst, abs(a - b))
    check("shortest-path-routes-agree", worst <= 1e-9, f"max diff {worst:.3g}")

    bounds = compute_bounds(k, lam, r, epsilon, beta)
    measured = {
        name: length_stretch(g, artifacts[name].topology).length_stretch
        for name in STRUCTURES
    }
    if bounds.yao_bound is not None:
        check(
            "y-stretch<=yao-bound",
            measured["Y"] <= bounds.yao_bound + 1e-9,
            f"{measured['Y']:.6g} <= {bounds.yao_bound:.6g}",
        )
        check(
            "ys-stretch<=yao-bound-squared",
            measured["YS"] <= bounds.yao_sink_bound + 1e-9,
            f"{measured['YS']:.6g} <= {bounds.yao_sink_bound:.6g}",
        )
    if lam is not None and bounds.conditions.get("theorem1"):
        check(
            "yy-stretch<=civilized-bound",
            measured["YY"] <= bounds.theorem1_bound + 1e-9,
            f"{measured['YY']:.6g} <= {bounds.theorem1_bound:.6g}",
        )
    if (
        bounds.theorem2_bound is not None
        and bounds.conditions.get("theorem2_statement")
        and bounds.conditions.get("theorem2_proof")
    ):
        check(
            "yes-stretch<=filtered-sink-bound",
            measured["YES"] <= bounds.theorem2_bound + 1e-9,
            f"{measured['YES']:.6g} <= {bounds.theorem2_bound:.6g}",
        )
    power = power_stretch(g, artifacts["YY"].topology, beta).power_stretch
    check(
        "yy-power<=length^beta",
        power <= measured["YY"] ** beta + 1e-9,
        f"{power:.6g} <= {measured['YY'] ** beta:.6g}",
    )

    for name in STRUCTURES:
        report = run_local(g, name, k, r if _needs_ratio(name) else None)
        check(
            f"local-equivalence-{name.lower()}",
            report.equivalent,
            ""
            if report.equivalent
            else f"{len(report.local_only)} local-only, {len(report.central_only)} central-only",
        )

    if failures:
        print(f"FAILED: {failures} check(s) did not hold")
        return 1
    print("all checks passed")
    return 0


@dataclass(frozen=True)
class ExperimentManifest:
    """A batch of generator specs and structures; the same manifest always
    produces byte-identical artifacts."""

    out_dir: Path
    k: int
    r: float
    beta: float
    min_separation: Optional[float]
    epsilon: Optional[float]
    structures: Tuple[str, ...]
    formats: Tuple[str, ...]
    instances: Tuple[GenSpec, ...]
    certify: bool
    local_check: bool
    waive_yes_certification: bool

    @staticmethod
    def load(path: str) -> "ExperimentManifest":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: not valid JSON ({exc})") from None
        if not isinstance(obj, dict):
            raise ValueError(f"{path}: manifest must be a JSON object")
        raw_instances = obj.get("instances")
        if not isinstance(raw_instances, list) or not raw_instances:
            raise ValueError(f"{path}: manifest needs a nonempty 'instances' list")
        structures = tuple(
            str(name).upper() for name in obj.get("structures", list(STRUCTURES))
        )
        for name in structures:
            if name not in STRUCTURES:
                raise ValueError(f"{path}: unknown structure {name!r}")
        formats = tuple(str(f).lower() for f in obj.get("formats", ["json"]))
        for fmt in formats:
            if fmt not in TOPOLOGY_FORMATS:
                raise ValueError(f"{path}: unknown topology format {fmt!r}")
        lam = obj.get("lambda")
        epsilon = obj.get("epsilon")
        out_dir = Path(obj.get("out_dir", "out"))
        if not out_dir.is_absolute():
            out_dir = Path(path).resolve().parent / out_dir
        return ExperimentManifest(
            out_dir=out_dir,
            k=int(obj.get("k", DEFAULT_K)),
            r=float(obj.get("r", DEFAULT_R)),
            beta=float(obj.get("beta", DEFAULT_BETA)),
            min_separation=None if lam is None else float(lam),
            epsilon=None if epsilon is None else float(epsilon),
            structures=structures,
            formats=formats,
            instances=tuple(GenSpec.from_obj(row) for row in raw_instances),
            certify=bool(obj.get("certify", True)),
            local_check=bool(obj.get("local_check", True)),
            waive_yes_certification=bool(obj.get("waive_yes_certification", False)),
        )


def cmd_run(args: argparse.Namespace) -> int:
    manifest = ExperimentManifest.load(args.manifest)
    out = manifest.out_dir
    out.mkdir(parents=True, exist_ok=True)
    rows = [ANALYZE_HEADER]
    findings: List[Dict[str, object]] = []
    for spec in manifest.instances:
        label = spec.label()
        points = spec.generate()
        save_points(points, str(out / f"{label}.points.json"), radius=1.0)
        g = build_udg(points, 1.0)
        lam = spec.min_separation if spec.kind == "civilized" else manifest.min_separation
        for structure in manifest.structures:
            art = build_with_artifacts(structure, g, manifest.k, manifest.r)
            stem = f"{label}.{structure.lower()}"
            for fmt in manifest.formats:
                save_topology(art.topology, str(out / f"{stem}.topology.{fmt}"), fmt)
            rows.append(
                analyze_row(label, g, art.topology, manifest.beta, lam, manifest.epsilon)
            )
            if manifest.certify and art.trees is not None:
                certs, cert_failures = certify_all(
                    art.pre_sink, art.topology, list(art.trees)
                )
                _write_text(
                    out / f"{stem}.certificates.json",
                    certificates_json(certs, cert_failures),
                )
                waived = structure == "YES" and manifest.waive_yes_certification
                for exc in cert_failures:
                    findings.append(
                        {
                            "instance": label,
                            "structure": structure,
                            "kind": "certification",
                            "detail": str(exc),
                            "waived": waived,
                        }
                    )
            if manifest.local_check:
                report = run_local(
                    g,
                    structure,
                    manifest.k,
                    manifest.r if _needs_ratio(structure) else None,
                )
                _write_text(out / f"{stem}.local.json", local_report_json(report))
                for d in compare_local_centralized(report):
                    findings.append(
                        {
                            "instance": label,
                            "structure": structure,
                            "kind": "local-discrepancy",
                            "detail": (
                                f"{d.edge[0]}->{d.edge[1]} "
                                f"local={str(d.present_locally).lower()} "
                                f"central={str(d.present_centrally).lower()}"
                            ),
                            "waived": False,
                        }
                    )
    _write_text(out / "report.csv", "\n".join(rows) + "\n")
    _write_text(
        out / "findings.json", json.dumps(findings, indent=2, sort_keys=True) + "\n"
    )
    blocking = [f for f in findings if not f["waived"]]
    print(
        f"wrote {len(rows) - 1} report rows to {out / 'report.csv'}; "
        f"{len(findings)} findings ({len(blocking)} blocking)"
    )
    return 1 if blocking else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conespan",
        description="Cone-based sparse topologies over unit disk graphs: "
        "generate, build, analyze, verify, and simulate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a point set file")
    p.add_argument("--kind", required=True, choices=("uniform", "civilized", "figure6"))
    p.add_argument("--n", type=int, help="node count (uniform, civilized)")
    p.add_argument("--s", type=int, help="points per row (figure6; n = 2s)")
    p.add_argument("--side", type=float, default=3.0, help="square side (uniform)")
    p.add_argument("--lambda", dest="min_separation", type=float, help="min separation (civilized)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=POINT_FORMATS, default=None)

    p = sub.add_parser("build", help="construct a topology from a point file")
    p.add_argument("--points", required=True)
    p.add_argument("--structure", required=True, choices=("y", "yy", "ys", "ye", "yes"))
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--r", type=float, default=DEFAULT_R)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=TOPOLOGY_FORMATS, default=None)

    p = sub.add_parser("analyze", help="metric and bound report for a built topology")
    p.add_argument("--points", required=True)
    p.add_argument("--topology", required=True)
    p.add_argument("--beta", type=float, default=DEFAULT_BETA)
    p.add_argument("--lambda", dest="min_separation", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run the full verification battery")
    p.add_argument("--points", required=True)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--r", type=float, default=DEFAULT_R)
    p.add_argument("--beta", type=float, default=DEFAULT_BETA)
    p.add_argument("--lambda", dest="min_separation", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)

    p = sub.add_parser(
        "reproduce-figure6", help="weight table for the linear-ratio family"
    )
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--r", type=float, default=DEFAULT_R)
    p.add_argument("--out", default=None)

    p = sub.add_parser("localcheck", help="compare one-round local runs with central builds")
    p.add_argument("--points", required=True)
    p.add_argument("--structure", required=True, choices=("y", "yy", "ys", "ye", "yes"))
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--r", type=float, default=DEFAULT_R)
    p.add_argument("--out", default=None)

    p = sub.add_parser("run", help="execute an experiment manifest")
    p.add_argument("--manifest", required=True)

    return parser


_HANDLERS = {
    "generate": cmd_generate,
    "build": cmd_build,
    "analyze": cmd_analyze,
    "verify": cmd_verify,
    "reproduce-figure6": cmd_reproduce_figure6,
    "localcheck": cmd_localcheck,
    "run": cmd_run,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
