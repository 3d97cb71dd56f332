"""Exception hierarchy and source diagnostics shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    """A problem found in `.skg` source, pinned to a 1-based line/column."""

    severity: str  # "error" or "warning"
    message: str
    line: int
    column: int

    def render(self, path: str = "<input>") -> str:
        return f"{path}:{self.line}:{self.column}: {self.severity}: {self.message}"


class SkgError(Exception):
    """Base class for all errors raised by this package."""


class LexError(SkgError):
    """Lexical error; carries exactly one diagnostic."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic
        self.diagnostics = [diagnostic]


class ParseError(SkgError):
    """Syntax error; carries exactly one diagnostic (first failure wins)."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic
        self.diagnostics = [diagnostic]


class ValidationError(SkgError):
    """Semantic errors; carries every violation found, not just the first."""

    def __init__(self, diagnostics: list[Diagnostic]):
        errors = [d for d in diagnostics if d.severity == "error"]
        super().__init__("; ".join(d.message for d in errors) or "validation failed")
        self.diagnostics = diagnostics


class ProfileError(SkgError):
    """A profile override could not be applied to a resolved graph."""


class CompileError(SkgError):
    """The knowledge graph cannot be lowered to a Bayesian network."""


class InferenceError(SkgError):
    """Invalid evidence or query, or a guard rail was hit during inference."""
