#!/usr/bin/env python3
"""LP-format MILP solve adapter.

Reads the LP text subset documented in docs/lp_format.md (Minimize /
Subject To / Bounds / Binary / End), solves the model with
scipy.optimize.milp (HiGHS), and writes one `name value` pair per line to
the solution file. Lines starting with `#` carry status metadata.

Usage: solve_lp.py MODEL.lp SOLUTION.txt [--time-limit S] [--gap G]

Exit codes: 0 solved, 1 usage/parse error, 2 infeasible or unbounded,
3 solver failure.
"""

import re
import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>[0-9]+(?:\.[0-9]*)?(?:[eE][+-]?[0-9]+)?|\.[0-9]+(?:[eE][+-]?[0-9]+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_().\[\]]*)"
    r"|(?P<op><=|>=|=|\+|-|:)"
    r")"
)

SECTION_STARTS = {
    "minimize": "objective",
    "maximize": "objective",
    "subject": "constraints",
    "st": "constraints",
    "s.t.": "constraints",
    "bounds": "bounds",
    "bound": "bounds",
    "binary": "binary",
    "binaries": "binary",
    "bin": "binary",
    "general": "general",
    "generals": "general",
    "end": "end",
}


def tokenize(text):
    """Split into (section, line_tokens) pairs, one per non-empty line."""
    lines = []
    section = None
    for line in text.splitlines():
        body = line.split("\\", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        head = stripped.lower().split()[0]
        if head in SECTION_STARTS:
            section = SECTION_STARTS[head]
            continue
        lines.append((section, tokenize_line(stripped)))
    return lines


def tokenize_line(line):
    out = []
    pos = 0
    while pos < len(line):
        m = TOKEN_RE.match(line, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot tokenize near: {line[pos:pos+30]!r}")
        if m.group("num") is not None:
            out.append(("num", float(m.group("num"))))
        elif m.group("name") is not None:
            name = m.group("name")
            if name.lower() == "free":
                out.append(("free", name))
            else:
                out.append(("name", name))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class Model:
    def __init__(self):
        self.var_order = []
        self.var_index = {}
        self.lb = {}
        self.ub = {}
        self.binary = set()
        self.obj = {}
        self.obj_const = 0.0
        self.rows = []  # (name, coeffs dict, sense, rhs)

    def var(self, name):
        if name not in self.var_index:
            self.var_index[name] = len(self.var_order)
            self.var_order.append(name)
            self.lb[name] = 0.0
            self.ub[name] = np.inf
        return name


def parse_expression(tokens, i, model):
    """Parse [sign] [num] name ... ; returns (coeffs, const, next_i)."""
    coeffs = {}
    const = 0.0
    sign = 1.0
    pending_num = None
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if pending_num is not None:
                const += sign * pending_num
                pending_num = None
            sign = 1.0 if val == "+" else -1.0
            i += 1
        elif kind == "num":
            if pending_num is not None:
                const += sign * pending_num
                sign = 1.0
            pending_num = val
            i += 1
        elif kind == "name":
            coef = sign * (1.0 if pending_num is None else pending_num)
            name = model.var(val)
            coeffs[name] = coeffs.get(name, 0.0) + coef
            pending_num = None
            sign = 1.0
            i += 1
        else:
            break
    if pending_num is not None:
        const += sign * pending_num
    return coeffs, const, i


def parse(lines):
    model = Model()
    objective_tokens = []
    constraint_tokens = []
    for section, toks in lines:
        if section == "objective":
            objective_tokens.extend(toks)
        elif section == "constraints":
            constraint_tokens.extend(toks)
        elif section == "bounds":
            apply_bound(model, toks)
        elif section == "binary":
            for kind, val in toks:
                if kind == "name":
                    model.binary.add(model.var(val))
        elif section in ("general", "end", None):
            continue
        else:
            raise ValueError(f"unknown section {section}")

    i = 0
    if (
        len(objective_tokens) >= 2
        and objective_tokens[0][0] == "name"
        and objective_tokens[1] == ("op", ":")
    ):
        i = 2
    coeffs, const, i = parse_expression(objective_tokens, i, model)
    if i != len(objective_tokens):
        raise ValueError("trailing tokens in objective")
    model.obj = coeffs
    model.obj_const = const

    i = 0
    tokens = constraint_tokens
    while i < len(tokens):
        kind, val = tokens[i]
        row_name = None
        if kind == "name" and i + 1 < len(tokens) and tokens[i + 1] == ("op", ":"):
            row_name = val
            i += 2
        coeffs, const, i = parse_expression(tokens, i, model)
        if i >= len(tokens) or tokens[i][0] != "op" or tokens[i][1] not in ("<=", ">=", "="):
            raise ValueError(f"constraint {row_name or len(model.rows)} missing sense")
        sense = tokens[i][1]
        i += 1
        sign = 1.0
        while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens) or tokens[i][0] != "num":
            raise ValueError(f"constraint {row_name or len(model.rows)} missing rhs")
        rhs = sign * tokens[i][1]
        i += 1
        model.rows.append(
            (row_name or f"r{len(model.rows)}", coeffs, sense, rhs - const)
        )
    return model


def apply_bound(model, items):
    # Normalize signed numbers.
    norm = []
    j = 0
    while j < len(items):
        kind, val = items[j]
        if kind == "op" and val in "+-" and j + 1 < len(items) and items[j + 1][0] == "num":
            norm.append(("num", val == "+" and items[j + 1][1] or -items[j + 1][1]))
            j += 2
        else:
            norm.append((kind, val))
            j += 1
    kinds = [k for k, _ in norm]
    if kinds == ["name", "free"] or kinds == ["free", "name"]:
        name = next(v for k, v in norm if k == "name")
        model.var(name)
        model.lb[name] = -np.inf
        model.ub[name] = np.inf
    elif kinds == ["num", "op", "name", "op", "num"]:
        lo, _, name, _, hi = [v for _, v in norm]
        name = model.var(name)
        model.lb[name] = lo
        model.ub[name] = hi
    elif kinds == ["name", "op", "num"]:
        name, op, v = norm[0][1], norm[1][1], norm[2][1]
        name = model.var(name)
        if op == "<=":
            model.ub[name] = v
        elif op == ">=":
            model.lb[name] = v
        else:
            model.lb[name] = v
            model.ub[name] = v
    elif kinds == ["num", "op", "name"]:
        v, op, name = norm[0][1], norm[1][1], norm[2][1]
        name = model.var(name)
        if op == "<=":
            model.lb[name] = v
        elif op == ">=":
            model.ub[name] = v
        else:
            model.lb[name] = v
            model.ub[name] = v
    else:
        raise ValueError(f"unsupported bound statement: {norm}")


def solve(model, time_limit, gap):
    n = len(model.var_order)
    c = np.zeros(n)
    for name, v in model.obj.items():
        c[model.var_index[name]] = v
    lb = np.array([model.lb[v] for v in model.var_order])
    ub = np.array([model.ub[v] for v in model.var_order])
    integrality = np.zeros(n)
    for name in model.binary:
        k = model.var_index[name]
        integrality[k] = 1
        lb[k] = max(lb[k], 0.0)
        ub[k] = min(ub[k], 1.0)

    constraints = []
    if model.rows:
        rows, cols, vals = [], [], []
        clb, cub = [], []
        for r, (_, coeffs, sense, rhs) in enumerate(model.rows):
            for name, v in coeffs.items():
                rows.append(r)
                cols.append(model.var_index[name])
                vals.append(v)
            if sense == "<=":
                clb.append(-np.inf)
                cub.append(rhs)
            elif sense == ">=":
                clb.append(rhs)
                cub.append(np.inf)
            else:
                clb.append(rhs)
                cub.append(rhs)
        a = sparse.csr_matrix((vals, (rows, cols)), shape=(len(model.rows), n))
        constraints = [LinearConstraint(a, np.array(clb), np.array(cub))]

    options = {"presolve": True, "mip_rel_gap": gap}
    if time_limit is not None:
        options["time_limit"] = time_limit
    res = milp(
        c=c,
        constraints=constraints,
        integrality=integrality,
        bounds=Bounds(lb, ub),
        options=options,
    )
    return res


def main(argv):
    args = [a for a in argv[1:] if not a.startswith("--")]
    if len(args) != 2:
        print(__doc__, file=sys.stderr)
        return 1
    time_limit = None
    gap = 1e-6
    for a in argv[1:]:
        if a.startswith("--time-limit="):
            time_limit = float(a.split("=", 1)[1])
        elif a.startswith("--gap="):
            gap = float(a.split("=", 1)[1])

    model_path, sol_path = args
    try:
        with open(model_path) as fh:
            model = parse(tokenize(fh.read()))
    except (ValueError, OSError) as exc:
        print(f"solve_lp: parse error: {exc}", file=sys.stderr)
        return 1

    try:
        res = solve(model, time_limit, gap)
    except Exception as exc:  # scipy raises on malformed input
        print(f"solve_lp: solver failure: {exc}", file=sys.stderr)
        return 3

    if res.x is None:
        print(f"solve_lp: no solution: {res.message}", file=sys.stderr)
        return 2

    status = "optimal" if res.status == 0 else "incumbent"
    objective = float(np.dot([model.obj.get(v, 0.0) for v in model.var_order], res.x))
    objective += model.obj_const
    with open(sol_path, "w") as fh:
        fh.write(f"# status {status}\n")
        fh.write(f"# objective {objective:.12e}\n")
        for name, value in zip(model.var_order, res.x):
            fh.write(f"{name} {value:.12e}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
