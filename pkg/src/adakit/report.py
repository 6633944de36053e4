"""JSON report assembly and DOT rendering of windows."""

from __future__ import annotations

import json

from .analysis import (Analysis, cover_check, membership_table, projective_injective_isos)
from .knit import ARWindow, aliases
from .parts import YES

SCHEMA = 1
# statements about artin algebras are checked for bound quiver algebras only
SETTING = "bound quiver algebra over a field (artin-algebra statements checked in this setting)"


def _window_block(W: ARWindow):
    return {"size": len(W), "complete": W.complete, "budget": W.budget, "max_dim": W.max_dim,
            "seeds": W.seeds, "boundary": sorted(W.label(i) for i in W.boundary),
            "components": [[W.label(i) for i in c] for c in W.components()],
            "arrows": len(W.arrows), "tau_links": len(W.tau)}


def _sigma_block(an: Analysis):
    W = an.window
    if an.sigma is None:
        return None

    def one(s):
        return {"members": {str(k): [W.label(i) for i in v] for k, v in sorted(s.members.items())},
                "tests": {W.label(i): t for i, t in sorted(s.tests.items())},
                "pending": [W.label(i) for i in s.pending]}

    return {"Sigma": one(an.sigma), "Sigma_prime": one(an.sigma_prime)}


def module_table(an: Analysis):
    W = an.window
    eng = an.engine
    rows = []
    for i in range(len(W)):
        nd = W.nodes[i]
        rows.append({"label": W.label(i), "aliases": aliases(W, i), "dims": nd.module.dimvec(),
                     "L": eng.left(i).status, "L_rule": eng.left(i).rule,
                     "R": eng.right(i).status, "R_rule": eng.right(i).rule})
    return rows


def build_report(an: Analysis, hochschild=None, filtration=None, happel=None, simply=None,
                 pi1=None, full_table: bool | None = None) -> dict:
    W = an.window
    rep = {
        "schema": SCHEMA,
        "setting": SETTING,
        "algebra": {"name": an.algebra.name, "vertices": list(an.algebra.labels),
                    "dim": an.algebra.dim, "field": an.algebra.field.name,
                    "fingerprint": an.algebra.fingerprint()},
        "window": _window_block(W),
        "classification": an.classification.to_json(),
        "membership": {"projectives_injectives": membership_table(an.classification),
                       "isomorphisms": [list(p) for p in projective_injective_isos(W)]},
        "supports": an.supports.to_json(),
        "sigma": _sigma_block(an),
        "components": an.structure.to_json(W),
        "middle": [m.to_json() for m in an.middle],
        "hochschild": None,
        "filtration": None,
        "simply_connected": None,
        "warnings": list(an.warnings),
    }
    if full_table is None:
        full_table = an.sigma is not None
    if full_table:
        rep["membership"]["modules"] = module_table(an)
    if W.complete:
        rep["supports"]["cover_failures"] = cover_check(an.engine, an.supports)
    if hochschild is not None:
        rep["hochschild"] = hochschild.to_json()
        if pi1 is not None:
            rep["hochschild"]["pi1"] = pi1.to_json()
    if filtration is not None:
        f = filtration.to_json()
        if happel is not None:
            f["happel"] = [h.to_json() for h in happel]
        rep["filtration"] = f
    if simply is not None:
        rep["simply_connected"] = simply.to_json()
    return rep


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _q(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def render_dot(W: ARWindow, sigma=None, sigma_prime=None, right_yes=None) -> str:
    """Deterministic DOT: solid irreducible maps, dashed tau-links.

    sigma / sigma_prime are index collections; right_yes marks modules
    certified in the right part with a star.
    """
    sigma = set(sigma or ())
    sigma_prime = set(sigma_prime or ())
    right_yes = set(right_yes or ())
    lines = ["digraph AR {", "  rankdir=LR;", "  node [shape=box, fontsize=10];"]
    for i in range(len(W)):
        nd = W.nodes[i]
        text = f"{W.label(i)}:{nd.module.dimvec()}"
        if i in right_yes:
            text += " *"
        attrs = [f"label={_q(text)}"]
        marks = []
        if i in sigma:
            marks.append("Sigma")
        if i in sigma_prime:
            marks.append("Sigma'")
        if marks:
            attrs.append(f"xlabel={_q(','.join(marks))}")
            attrs.append("style=bold")
        if i in W.boundary:
            attrs.append("color=gray")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for i, j, m in W.arrows:
        extra = f" [label={_q(m)}]" if m > 1 else ""
        lines.append(f"  n{i} -> n{j}{extra};")
    for i in range(len(W)):
        t = W.nodes[i].tau
        if t is not None:
            lines.append(f"  n{i} -> n{t} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_analysis_dot(an: Analysis) -> str:
    eng = an.engine
    yes = [i for i in range(len(an.window)) if eng.right(i).status == YES]  # computes every verdict
    if an.sigma is None:
        return render_dot(an.window, right_yes=yes)
    return render_dot(an.window, an.sigma.all, an.sigma_prime.all, yes)
