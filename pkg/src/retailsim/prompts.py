"""Prompt assets for language-model agents and the macro-strategy judge."""

from __future__ import annotations

from importlib import resources


def _load(name: str) -> str:
    return (resources.files("retailsim.assets") / name).read_text(encoding="utf-8")


def strategy_phase_prompt() -> str:
    return _load("strategy_phase_prompt.txt")


def execution_phase_prompt() -> str:
    return _load("execution_phase_prompt.txt")


def macro_judge_prompt(strategy_a: list[str], strategy_b: list[str]) -> str:
    template = _load("macro_judge_prompt.txt")
    return template.format(
        strategy_a="\n".join(f"- {s}" for s in strategy_a) or "(empty)",
        strategy_b="\n".join(f"- {s}" for s in strategy_b) or "(empty)",
    )
