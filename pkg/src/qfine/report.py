"""Verification report records shared by the identity registry, the
q-series limit checks, and the CLI."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field


def digest(text: str) -> str:
    """Short stable digest of a canonical witness string."""
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class VerificationReport:
    identity_id: str
    mode: str                   # "symbolic" | "sampled"
    params: dict
    outcome: str                # "pass" | "fail" | "skipped"
    witness: str | None = None  # skip reason or head of the canonical difference
    witness_digest: str | None = None
    millis: int = 0

    def record_line(self, real_millis: bool = False) -> str:
        """One line of the machine-readable stream.

        millis is normalized to 0 unless real_millis is set, so that
        identical runs are byte-identical.
        """
        params = ",".join(f"{k}={v}" for k, v in self.params.items())
        wit = self.witness_digest if (self.outcome == "fail" and self.witness_digest) else "-"
        ms = self.millis if real_millis else 0
        return (f"id={self.identity_id} mode={self.mode} params={params} "
                f"outcome={self.outcome} witness={wit} millis={ms}")

    def text_line(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.params.items())
        extra = ""
        if self.outcome == "fail" and self.witness:
            extra = f"  witness: {self.witness[:100]}"
        elif self.outcome == "skipped" and self.witness:
            extra = f"  ({self.witness})"
        return f"{self.outcome.upper():7s} {self.identity_id:14s} {params:24s} {self.millis:6d} ms{extra}"
