"""Table-driven evaluation of fixed-locus sums.

Templates are read from ``data/loci.json``.  A template at level k
expands to a sum over loci of

    count * 3^glue * edge * V0 * Vinf

where moduli vertices are expanded into Hodge keys.  With hbar set to
1 a vertex on A(m, n) at side s (s = +1 over 0, s = -1 over infinity)
contributes  sign * sum coef * s^l * H(m, n, i, j),  l = i + j - n,
which is the expansion of 1/(s hbar (s hbar - psi)).
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..arith import AffineExpr, MPoly
from ..errors import HbarDegreeMismatch, TemplateError
from ..geometry import rank_e_omega, space_dim, space_nonempty
from .base import Relation

DATA = Path(__file__).with_name("data") / "loci.json"
LOCI_VERSION = "c3z3-loci/1"

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def evaluate_expression(text: str, env: Dict[str, object]):
    """Evaluate a small arithmetic expression (integers, names, + - * /, binom)."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise TemplateError(f"unknown name {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                if isinstance(right, MPoly):
                    right = right.const_value()
                return left * Fraction(1) / right if not isinstance(left, MPoly) else left.scale(Fraction(1) / right)
            op = _BINOPS.get(type(node.op))
            if op is None:
                raise TemplateError(f"unsupported operator in {text!r}")
            return op(left, right)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "binom":
            n, k = (ev(a) for a in node.args)
            return comb(n, k) if 0 <= k <= n else 0
        raise TemplateError(f"unsupported syntax in {text!r}")

    return ev(ast.parse(text, mode="eval"))


_POLY_ENV = {name: MPoly.var(name) for name in ("a", "u", "v")}


@lru_cache(maxsize=None)
def parse_poly(text: str) -> MPoly:
    val = evaluate_expression(text, _POLY_ENV)
    return val if isinstance(val, MPoly) else MPoly.const(Fraction(val))


@dataclass
class VertexValue:
    expr: AffineExpr
    hbar: int


@dataclass
class Template:
    id: str
    mode: str
    k_min: int
    rows: List[dict]
    normalization: int
    min_uv_degree: int = 0
    target: str = ""


def load_templates(path: Optional[Path] = None) -> Dict[str, Template]:
    data = json.loads(Path(path or DATA).read_text())
    if data.get("version") != LOCI_VERSION:
        raise TemplateError(f"unsupported template version {data.get('version')!r}")
    out = {}
    for item in data["templates"]:
        t = Template(
            id=item["id"],
            mode=item["mode"],
            k_min=item.get("k_min", 1),
            rows=item["rows"],
            normalization=item.get("normalization", {}).get("hbar", 0),
            min_uv_degree=item.get("min_uv_degree", 0),
            target=item.get("target", ""),
        )
        if t.mode not in ("total", "alpha", "uv"):
            raise TemplateError(f"{t.id}: unknown mode {t.mode!r}")
        out[t.id] = t
    return out


def _instances(row: dict, k: int):
    """Yield the integer environments over which a row is summed."""
    env = {"k": k}
    spec = row.get("sum")
    if spec is None:
        yield env
        return
    lo = evaluate_expression(spec["from"], env)
    hi = evaluate_expression(spec["to"], env)
    for val in range(lo, hi + 1):
        local = dict(env)
        local[spec["var"]] = val
        for name, text in spec.get("let", {}).items():
            local[name] = evaluate_expression(text, local)
        yield local


def vertex_value(store, vertex: dict, env: Dict[str, int], side: int) -> VertexValue:
    if "bare" in vertex:
        return VertexValue(AffineExpr.constant(parse_poly(vertex["bare"])), vertex.get("hbar", 0))
    m = evaluate_expression(vertex["space"][0], env)
    n = evaluate_expression(vertex["space"][1], env)
    if m < 0 or n < 0 or not space_nonempty(m, n):
        raise TemplateError(f"vertex space A({m},{n}) is empty")
    r = rank_e_omega(m, n)
    dim = space_dim(m, n)
    flavor = vertex["psi"]
    sign = -1 if evaluate_expression(vertex.get("sign", "0"), env) % 2 else 1
    # Each choice is (drops of the three lambdas, coefficient polynomial).
    choices: List[Tuple[Tuple[int, ...], MPoly]] = []
    if "lambda" in vertex:
        idx = [evaluate_expression(x, env) for x in vertex["lambda"]]
        if len(idx) != 3:
            raise TemplateError("explicit vertices need three lambda classes")
        drops = tuple(sorted(r - x for x in idx))
        if drops[0] != 0:
            raise TemplateError(f"vertex on A({m},{n}) has no lambda_top")
        degree = sum(idx)
        choices.append((drops, MPoly.const(1)))
    else:
        top = vertex["top"]
        args = [parse_poly(c) for c in vertex.get("chern", [])]
        if top < 1 or top + len(args) != 3:
            raise TemplateError("a vertex needs lambda_top and three lambda factors in total")
        degree = 3 * r
        for ds in product(range(r + 1), repeat=len(args)):
            coef = MPoly.const(1)
            for c, d in zip(args, ds):
                if d:
                    coef = coef * c ** d
            if coef:
                choices.append(((0,) * top + ds, coef))
    total = AffineExpr()
    for drops, coef in choices:
        i, j = sorted(drops)[1:]
        l = i + j - n
        h = store.lookup(m, n, i, j, flavor if l > 0 else "none")
        if h.is_zero():
            continue
        s = side if l % 2 else 1
        total = total + h.scale(coef.scale(s))
    hbar = degree - 2 - dim
    return VertexValue(total.scale(sign), hbar)


def _edge(row: dict) -> Tuple[MPoly, int]:
    e = row["edge"]
    poly = MPoly()
    for coef, power in e["alpha"]:
        poly = poly + MPoly.monomial(Fraction(coef), a=power)
    return poly, e.get("hbar", 0)


def row_degrees(template: Template, k: int, store) -> List[Tuple[str, Dict[str, int], int]]:
    out = []
    for row in template.rows:
        _, edge_hbar = _edge(row)
        for env in _instances(row, k):
            d0 = vertex_value(store, row["v0"], env, 1).hbar
            d1 = vertex_value(store, row["vinf"], env, -1).hbar
            out.append((row["locus"], env, edge_hbar + d0 + d1 + template.normalization))
    return out


def check_hbar(template: Template, k: int, store) -> None:
    for locus, env, deg in row_degrees(template, k, store):
        if deg != 0:
            raise HbarDegreeMismatch(f"{template.id} row {locus} at {env} has hbar-degree {deg}")


def evaluate_fixed_locus_sum(store, template: Template, k: int) -> AffineExpr:
    """The full locus sum at level k as a polynomial in alpha, u, v."""
    if k < template.k_min:
        raise ValueError(f"{template.id} starts at k = {template.k_min}")
    total = AffineExpr()
    for row in template.rows:
        edge, edge_hbar = _edge(row)
        for env in _instances(row, k):
            count = evaluate_expression(row["count"], env)
            if not count:
                continue
            v0 = vertex_value(store, row["v0"], env, 1)
            vi = vertex_value(store, row["vinf"], env, -1)
            deg = edge_hbar + v0.hbar + vi.hbar + template.normalization
            if deg != 0:
                raise HbarDegreeMismatch(f"{template.id} row {row['locus']} at {env} has hbar-degree {deg}")
            if v0.expr.is_zero() or vi.expr.is_zero():
                continue
            term = (v0.expr * vi.expr).scale(edge.scale(count * 3 ** row.get("glue", 0)))
            total = total + term
    return total


def template_relations(store, template: Template, k: int, alpha_degrees=(1,)) -> List[Relation]:
    """Relations obtained from a template at level k.

    ``total`` templates give one relation, ``alpha`` templates one per
    requested power of alpha, ``uv`` templates one per (u, v)-monomial
    of degree at least ``min_uv_degree``.
    """
    expr = evaluate_fixed_locus_sum(store, template, k)
    source = f"locus:{template.id}"
    out = []
    if template.mode == "total":
        if not expr.is_zero():
            out.append(Relation(source, k, expr, (template.id, k)))
    elif template.mode == "alpha":
        parts = expr.split(("a",))
        for (d,), part in sorted(parts.items()):
            if d in alpha_degrees and not part.is_zero():
                out.append(Relation(source, k, part, (template.id, k, d)))
    else:
        for mono, part in sorted(expr.split(("u", "v")).items()):
            if sum(mono) >= template.min_uv_degree and not part.is_zero():
                out.append(Relation(source, k, part, (template.id, k, mono)))
    return out


_TEMPLATES: Optional[Dict[str, Template]] = None


def templates() -> Dict[str, Template]:
    global _TEMPLATES
    if _TEMPLATES is None:
        _TEMPLATES = load_templates()
    return _TEMPLATES
