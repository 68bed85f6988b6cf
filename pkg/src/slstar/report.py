"""Line-oriented key-value reports with an integrity footer."""
from __future__ import annotations

import datetime as _dt
import hashlib
import os
import re
from dataclasses import dataclass, field

PASS = "pass"
REFUSAL = "refusal"
FAIL = "fail"

EXIT_CODES = {PASS: 0, REFUSAL: 1, FAIL: 2}
EXIT_USAGE = 3


@dataclass
class Report:
    """One experiment or command run.

    ``anchor`` names the mathematical statement being exercised.  The footer
    hash covers every line except the timestamp, so two runs with the same
    command line and seed hash identically.
    """

    experiment: str
    descriptor: str
    anchor: str
    seed: int
    params: dict = field(default_factory=dict)
    records: list = field(default_factory=list)
    verdict: str = PASS
    timestamp: str = ""

    def add(self, key: str, value) -> None:
        self.records.append((key, _fmt(value)))

    def extend(self, pairs, prefix: str = "") -> None:
        for k, v in pairs:
            self.add(f"{prefix}{k}", v)

    def fail(self, reason: str) -> None:
        self.verdict = FAIL
        self.add("failure", reason)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def body_lines(self) -> list[str]:
        lines = [
            f"experiment: {self.experiment}",
            f"descriptor: {self.descriptor}",
            f"anchor: {self.anchor}",
            f"seed: {self.seed}",
        ]
        for k in sorted(self.params):
            lines.append(f"param.{k}: {_fmt(self.params[k])}")
        lines += [f"{k}: {v}" for k, v in self.records]
        lines.append(f"verdict: {self.verdict}")
        return lines

    def digest(self) -> str:
        return hashlib.sha256("\n".join(self.body_lines()).encode()).hexdigest()

    def render(self) -> str:
        ts = self.timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        lines = self.body_lines()
        lines.insert(1, f"timestamp: {ts}")
        lines.append(f"sha256: {self.digest()}")
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str, stem: str | None = None) -> str:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, f"{_slug(stem or self.experiment)}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())
        return path


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return " ".join(str(v).split("\n"))


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_")


def parse_report(text: str) -> dict:
    """Key-value view of a rendered report (last value wins for repeated keys)."""
    out = {}
    for line in text.splitlines():
        k, sep, v = line.partition(": ")
        if sep:
            out[k] = v
    return out


def verify_digest(text: str) -> bool:
    lines = [ln for ln in text.splitlines() if not ln.startswith("timestamp: ")]
    if not lines or not lines[-1].startswith("sha256: "):
        return False
    body = "\n".join(lines[:-1])
    return hashlib.sha256(body.encode()).hexdigest() == lines[-1][len("sha256: "):]
