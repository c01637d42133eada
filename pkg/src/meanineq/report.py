"""Slack reports: the common result shape for every inequality check.

An inequality (or chain of inequalities) is evaluated as one slack value per
link.  Positive slack means the link holds with that margin; the report's
verdict collapses the margin against a tolerance:

* ``holds``     -- every link is nonnegative, clearing the tolerance or not
                   (strict inequalities have arbitrarily small positive
                   slacks near their equality manifolds, and those hold),
* ``equality``  -- the margin sits inside the tolerance band and the inputs
                   lie on (or near) the inequality's declared equality
                   manifold,
* ``violated``  -- a link is negative beyond tolerance, or negative within
                   tolerance without the equality manifold to explain it.

Tolerances follow the margin domain: ``log_ratio`` slacks are differences of
logarithms and get an absolute tolerance, ``additive`` slacks get a tolerance
scaled by the magnitude of the compared quantities.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

#: Base verdict tolerance: absolute in the log-ratio domain, multiplied by the
#: scale of the compared quantities in the additive domain.
TOL_V = 1e-9

HOLDS = "holds"
EQUALITY = "equality"
VIOLATED = "violated"


class HypothesisViolation(ValueError):
    """Inputs fail an inequality's hypothesis (distinct from a violated slack)."""


@dataclass(frozen=True)
class SlackReport:
    id: str
    inputs: dict
    links: tuple
    slacks: tuple
    domain: str            # "log_ratio" or "additive"
    tolerance: float
    verdict: str

    @property
    def margin(self) -> float:
        return min(self.slacks)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "inputs": dict(self.inputs),
            "links": list(self.links),
            "slacks": list(self.slacks),
            "margin": self.margin,
            "domain": self.domain,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def build_report(id, inputs, links, slacks, domain, scale=1.0, on_equality_manifold=False,
                 tolerance=None):
    """Assemble a SlackReport, deriving the verdict from margin and tolerance.

    ``scale`` feeds the additive-domain tolerance; ``on_equality_manifold``
    is the inequality's own equality predicate evaluated on the inputs.
    """
    slacks = tuple(float(s) for s in slacks)
    links = tuple(links)
    if len(links) != len(slacks):
        raise ValueError("links and slacks length mismatch")
    if tolerance is None:
        tolerance = TOL_V if domain == "log_ratio" else TOL_V * max(scale, 0.0)
    margin = min(slacks)
    if margin > tolerance:
        verdict = HOLDS
    elif margin < -tolerance:
        verdict = VIOLATED
    elif on_equality_manifold:
        verdict = EQUALITY
    elif margin >= 0.0:
        verdict = HOLDS
    else:
        verdict = VIOLATED
    return SlackReport(id=str(id), inputs=dict(inputs), links=links, slacks=slacks,
                       domain=domain, tolerance=float(tolerance), verdict=verdict)


def dumps(obj) -> str:
    """Serialize with sorted keys; floats use shortest round-trip form."""
    return json.dumps(obj, sort_keys=True, allow_nan=True)


def check_finite_positive(name, x):
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise ValueError(f"{name} must be a finite positive real, got {x!r}")
    return float(x)
