"""Versioned JSON verification reports.

A report has a body (campaign id, config, seed, per-check results, overall
verdict) and a separate ``timings`` block.  The body is serialized with
sorted keys so that rerunning the same config gives byte-identical output;
timings are the only part allowed to differ between runs.
"""

import json
import time

FORMAT = "tamesymbol-report"
VERSION = 1
VERDICTS = ("PASS", "FAIL", "VACUOUS", "INDETERMINATE")


def to_jsonable(obj):
    """Plain JSON data; unknown objects fall back to their (deterministic) repr."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, str) else k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((to_jsonable(v) for v in obj), key=repr)
    if hasattr(obj, "value") and hasattr(obj, "field"):
        return obj.value
    return repr(obj)


def combine(verdicts):
    """Overall verdict: any FAIL wins, then INDETERMINATE, then PASS; all-VACUOUS stays VACUOUS."""
    verdicts = list(verdicts)
    if "FAIL" in verdicts:
        return "FAIL"
    if "INDETERMINATE" in verdicts:
        return "INDETERMINATE"
    if verdicts and all(v == "VACUOUS" for v in verdicts):
        return "VACUOUS"
    return "PASS"


class VerificationReport:
    def __init__(self, campaign, config, seed):
        self.campaign = campaign
        self.config = dict(config)
        self.seed = seed
        self.results = []
        self.timings = {}
        self.notes = []

    def add(self, name, result, seconds=None):
        verdict = result.get("verdict", "INDETERMINATE")
        if verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {verdict!r}")
        self.results.append({"check": name, "verdict": verdict, "result": to_jsonable(result)})
        if seconds is not None:
            self.timings[name] = round(seconds, 3)

    def timed(self, name, fn, *args, **kwargs):
        t = time.perf_counter()
        result = fn(*args, **kwargs)
        self.add(name, result, time.perf_counter() - t)
        return result

    @property
    def verdict(self):
        return combine(r["verdict"] for r in self.results)

    @property
    def indeterminate(self):
        return sum(r["verdict"] == "INDETERMINATE" for r in self.results)

    def body(self):
        return {"format": FORMAT, "version": VERSION, "campaign": self.campaign,
                "config": to_jsonable(self.config), "seed": self.seed,
                "verdict": self.verdict, "warnings": self.indeterminate,
                "notes": list(self.notes), "results": self.results}

    def body_text(self):
        return json.dumps(self.body(), sort_keys=True, indent=1)

    def to_text(self):
        data = self.body()
        data["timings"] = self.timings
        return json.dumps(data, sort_keys=True, indent=1) + "\n"

    def summary_lines(self):
        return [f"{r['verdict']:<13} {r['check']}" for r in self.results] + [
            f"overall: {self.verdict}"]


def load_report(path):
    with open(path) as fh:
        data = json.load(fh)
    if data.get("format") != FORMAT:
        raise ValueError(f"{path} is not a {FORMAT} file")
    if data.get("version") != VERSION:
        raise ValueError(f"unsupported report version {data.get('version')!r}")
    return data


def body_text_of(data):
    """Canonical body text of a loaded report (timings dropped)."""
    data = {k: v for k, v in data.items() if k != "timings"}
    return json.dumps(data, sort_keys=True, indent=1)
