"""Deterministic long-horizon retail store simulator with a two-phase agent protocol."""

from .config import EpisodeConfig, preset
from .engine import WorldState, end_of_day_transition, init_episode
from .errors import SimError
from .metrics import (
    compute_episode_metrics,
    execution_similarity,
    instability,
    macro_similarity,
)
from .policy import (
    Agent,
    HeuristicAgent,
    NullAgent,
    ScriptedAgent,
    heuristic_policy,
    null_agent,
    run_episode,
    scripted_agent,
)
from .toolapi import ToolApi

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "EpisodeConfig",
    "HeuristicAgent",
    "NullAgent",
    "ScriptedAgent",
    "SimError",
    "ToolApi",
    "WorldState",
    "compute_episode_metrics",
    "end_of_day_transition",
    "execution_similarity",
    "heuristic_policy",
    "init_episode",
    "instability",
    "macro_similarity",
    "null_agent",
    "preset",
    "run_episode",
    "scripted_agent",
]
