"""
Certificates emitted by the freeness, abelianness and relation-search runs

A Certificate is plain data: the echoed session configuration, one record
per checked word, ping-pong transition records and the lists of failures
and undetermined items. It serializes to canonical JSON (sorted keys, no
timestamps) so the same configuration and seed give byte-identical files.

Exit statuses follow the command line contract:
    0 certified, 2 certification failed, 3 undetermined within budget.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import List

from ptwists.config.parameters import VERSION
from ptwists.model.linalg import format_scalar

SCHEMA_VERSION = "1.0"

CERTIFIED = "certified"
FAILED = "failed"
UNDETERMINED = "undetermined"

EXIT_CODES = {CERTIFIED: 0, FAILED: 2, UNDETERMINED: 3}


def profile_record(profile):
    """HomProfile -> {label: {degree: dim}} with string degrees."""
    return profile.as_dict()


def witness_digest(result):
    """
    Short digest identifying the witness of a quasi-isomorphism verdict.

    Returns:
        str or None: 16 hex characters, None when nothing was witnessed
    """
    f = getattr(result, "witness", None)
    if f is None:
        return None
    A = f.algebra
    payload = {
        "source": [list(x) for x in f.source.degree_multiset()],
        "target": [list(x) for x in f.target.degree_multiset()],
        "entries": sorted(
            [l, j, sorted([A.labels[b], format_scalar(A.K, c)] for b, c in entry.items())]
            for (l, j), entry in f.entries.items()
        ),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class Certificate:
    """
    Machine-checkable evidence record.

    Attributes:
        mode (str): 'free', 'abelian' or 'relations-search'
        algebra (dict): name, n, k, m and field of the input algebra
        scope (str): 'A' (P-twists) or 'B' (spherical twists)
        word_budget (int): Maximal word length L
        seed (int): Session seed
        config (dict): Echo of the session configuration
        records (list): One record per word or check
        transitions (list): Ping-pong transition records
        undetermined (list): Items neither distinguished nor witnessed
        failures (list): Violated expectations
        conclusive (bool): False when the regime itself is inconclusive
        summary (dict): Mode-specific extras
    """

    mode: str
    algebra: dict
    scope: str
    word_budget: int
    seed: int
    config: dict
    records: List[dict] = field(default_factory=list)
    transitions: List[dict] = field(default_factory=list)
    undetermined: List[str] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    conclusive: bool = True
    summary: dict = field(default_factory=dict)
    tool_version: str = VERSION
    schema_version: str = SCHEMA_VERSION

    @property
    def verdict(self):
        if self.failures:
            return FAILED
        if self.undetermined or not self.conclusive:
            return UNDETERMINED
        return CERTIFIED

    @property
    def exit_code(self):
        return EXIT_CODES[self.verdict]

    def to_dict(self):
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "mode": self.mode,
            "algebra": dict(self.algebra),
            "scope": self.scope,
            "word_budget": self.word_budget,
            "seed": self.seed,
            "config": dict(self.config),
            "verdict": self.verdict,
            "conclusive": self.conclusive,
            "records": list(self.records),
            "transitions": list(self.transitions),
            "undetermined": list(self.undetermined),
            "failures": list(self.failures),
            "summary": dict(self.summary),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data):
        return cls(
            mode=data["mode"],
            algebra=data["algebra"],
            scope=data["scope"],
            word_budget=data["word_budget"],
            seed=data["seed"],
            config=data["config"],
            records=data.get("records", []),
            transitions=data.get("transitions", []),
            undetermined=data.get("undetermined", []),
            failures=data.get("failures", []),
            conclusive=data.get("conclusive", True),
            summary=data.get("summary", {}),
            tool_version=data.get("tool_version", VERSION),
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )
