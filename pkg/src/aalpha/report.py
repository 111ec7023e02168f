"""Serialisable analysis reports: JSON, CSV and plain text renderings.

The JSON layout (schema ``aalpha.analysis/1``)::

    {
      "schema": "aalpha.analysis/1",
      "graph": {"id", "n", "d1", "d2", "num_edges", "unweighted", "total_degree"},
      "validity": {"alpha0_weyl", "alpha0_exact", "upper", "weyl_degenerate"},
      "thresholds": {"alpha_threshold": number | null},
      "settings": {"tol", "refined"},
      "points": [
        {"alpha", "valid_state",
         "moments": {"p2_graph", "p2_direct", "p2_delta", "p3_graph", "p3_direct", "p3_delta"},
         "verdicts": [{"criterion", "outcome", "lhs", "rhs"}, ...]},
        ...
      ],
      "intervals": {"valid": [[a, b], ...],
                    "ppt_certified": {criterion: [[a, b], ...]},
                    "entangled_certified": {criterion: [[a, b], ...]}}
    }

Floats are rounded to 12 significant digits; non-finite values are written
as the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Any, Sequence

from aalpha.criteria import Criterion, sweep
from aalpha.graph import Graph, total_degree
from aalpha.spectral import PSD_TOL
from aalpha.state import build_state, p2_direct, p2_graph, p3_direct, p3_graph

__all__ = ["SCHEMA", "AnalysisReport", "analyze", "round_sig", "to_json", "from_json", "to_csv", "to_text"]

SCHEMA = "aalpha.analysis/1"
_SIG = 12


def round_sig(x: float, sig: int = _SIG):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return 0.0
    return float(f"{x:.{sig - 1}e}")


def _num(x):
    return None if x is None else round_sig(x)


def _intervals(runs) -> list[list[float]]:
    return [[_num(a), _num(b)] for a, b in runs]


@dataclass(frozen=True)
class AnalysisReport:
    """Plain-data wrapper around the JSON document; ``data`` is already rounded."""

    data: dict[str, Any]

    @property
    def points(self) -> list[dict[str, Any]]:
        return self.data["points"]


def analyze(
    g: Graph,
    alphas: Sequence[float],
    *,
    graph_id: str = "",
    tol: float = PSD_TOL,
    refine: bool = False,
) -> AnalysisReport:
    """Run every criterion and both moment evaluations at each alpha.

    Moments are reported whether or not ``rho`` is PSD at that alpha; the
    ``valid_state`` flag tells which points are genuine states.
    """
    rep = sweep(g, grid=alphas, tol=tol, refine=refine, graph_id=graph_id)
    points = []
    for i, a in enumerate(rep.grid):
        s = build_state(g, a)
        p2g, p2d = p2_graph(g, a), p2_direct(s)
        p3g, p3d = p3_graph(g, a), p3_direct(s)
        points.append({
            "alpha": _num(a),
            "valid_state": rep.valid_mask[i],
            "moments": {
                "p2_graph": _num(p2g),
                "p2_direct": _num(p2d),
                "p2_delta": _num(abs(p2g - p2d)),
                "p3_graph": _num(p3g),
                "p3_direct": _num(p3d),
                "p3_delta": _num(abs(p3g - p3d)),
            },
            "verdicts": [
                {
                    "criterion": c.value,
                    "outcome": v[i].outcome.value,
                    "lhs": _num(v[i].lhs),
                    "rhs": _num(v[i].rhs),
                }
                for c, v in rep.verdicts.items()
            ],
        })
    data = {
        "schema": SCHEMA,
        "graph": {
            "id": graph_id,
            "n": g.n,
            "d1": rep.d1,
            "d2": rep.d2,
            "num_edges": g.num_edges,
            "unweighted": g.is_unweighted,
            "total_degree": _num(float(total_degree(g))),
        },
        "validity": {
            "alpha0_weyl": _num(rep.validity.alpha0_weyl),
            "alpha0_exact": _num(rep.validity.alpha0_exact),
            "upper": _num(rep.validity.upper),
            "weyl_degenerate": rep.validity.weyl_degenerate,
        },
        "thresholds": {"alpha_threshold": _num(rep.alpha_threshold)},
        "settings": {"tol": _num(tol), "refined": refine},
        "points": points,
        "intervals": {
            "valid": _intervals(rep.valid_runs),
            "ppt_certified": {c.value: _intervals(r) for c, r in rep.ppt_runs.items()},
            "entangled_certified": {c.value: _intervals(r) for c, r in rep.entangled_runs.items()},
        },
    }
    return AnalysisReport(data)


def to_json(report: AnalysisReport) -> str:
    return json.dumps(report.data, indent=2, allow_nan=False) + "\n"


def from_json(text: str) -> AnalysisReport:
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    return AnalysisReport(data)


CSV_FIELDS = (
    "alpha", "criterion", "outcome", "lhs", "rhs", "valid_state",
    "p2_graph", "p2_direct", "p3_graph", "p3_direct",
)


def to_csv(report: AnalysisReport) -> str:
    """One row per (alpha, criterion), ready for plotting verdict bands."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for p in report.points:
        m = p["moments"]
        for v in p["verdicts"]:
            w.writerow([
                p["alpha"], v["criterion"], v["outcome"], v["lhs"], v["rhs"],
                str(p["valid_state"]).lower(),
                m["p2_graph"], m["p2_direct"], m["p3_graph"], m["p3_direct"],
            ])
    return buf.getvalue()


def _fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, str):
        return x
    return f"{x:.6g}"


def _fmt_runs(runs) -> str:
    return ", ".join(f"[{_fmt(a)}, {_fmt(b)}]" for a, b in runs) or "none"


def to_text(report: AnalysisReport) -> str:
    d = report.data
    g, val = d["graph"], d["validity"]
    lines = [
        f"graph {g['id'] or '<unnamed>'}: n={g['n']} ({g['d1']}x{g['d2']}), "
        f"{g['num_edges']} edges, {'unweighted' if g['unweighted'] else 'weighted'}, "
        f"d_G={_fmt(g['total_degree'])}",
        f"validity: Weyl alpha0={_fmt(val['alpha0_weyl'])}, exact alpha0={_fmt(val['alpha0_exact'])}"
        + (" (isolated vertex)" if val["weyl_degenerate"] else ""),
    ]
    if d["thresholds"]["alpha_threshold"] is not None:
        lines.append(f"alpha threshold (unweighted PPT bound): {_fmt(d['thresholds']['alpha_threshold'])}")
    if len(d["points"]) == 1:
        p = d["points"][0]
        m = p["moments"]
        lines.append(f"alpha={_fmt(p['alpha'])}  state {'valid' if p['valid_state'] else 'NOT PSD'}")
        lines.append(f"  p2 graph={_fmt(m['p2_graph'])} direct={_fmt(m['p2_direct'])} delta={_fmt(m['p2_delta'])}")
        lines.append(f"  p3 graph={_fmt(m['p3_graph'])} direct={_fmt(m['p3_direct'])} delta={_fmt(m['p3_delta'])}")
        for v in p["verdicts"]:
            lines.append(f"  {v['criterion']:<18} {v['outcome']:<20} lhs={_fmt(v['lhs'])} rhs={_fmt(v['rhs'])}")
    else:
        iv = d["intervals"]
        worst = max((max(p["moments"]["p2_delta"], p["moments"]["p3_delta"]) for p in d["points"]))
        lines.append(f"{len(d['points'])} alpha values, refined boundaries: {'yes' if d['settings']['refined'] else 'no'}")
        lines.append(f"max moment oracle delta: {_fmt(worst)}")
        lines.append(f"valid state: {_fmt_runs(iv['valid'])}")
        for c in Criterion:
            if c.value not in iv["ppt_certified"]:
                continue
            lines.append(
                f"  {c.value:<18} ppt: {_fmt_runs(iv['ppt_certified'][c.value])}; "
                f"entangled: {_fmt_runs(iv['entangled_certified'][c.value])}"
            )
    return "\n".join(lines) + "\n"
