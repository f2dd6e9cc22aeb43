"""Shared accumulator for acceptance verdict lines (printed in the
pytest terminal summary, which escapes output capture)."""

VERDICTS: list[str] = []
