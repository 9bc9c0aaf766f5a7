"""Simulation and analysis of flashcard games.

A flashcard game repeatedly takes the front card of an infinite deck and,
if it is being seen for the ``k``-th time, reinserts it at position ``p_k``.
"""
from .deck import Deck, DeckCapacityError, NaiveDeck, new_deck
from .engine import (GameState, StepBudgetExceeded, TimeTable, ViewEvent, count_of,
                     counting_prefix, init_game, run_until_seen, run_until_time, simulate,
                     step, viewing_prefix)
from .schedules import (Schedule, ScheduleError, random_schedule, schedule_affine,
                        schedule_constant, schedule_from_spec, schedule_power, schedule_recap,
                        schedule_slow, schedule_table)

__all__ = [
    "Deck", "DeckCapacityError", "NaiveDeck", "new_deck",
    "GameState", "StepBudgetExceeded", "TimeTable", "ViewEvent", "count_of",
    "counting_prefix", "init_game", "run_until_seen", "run_until_time", "simulate", "step",
    "viewing_prefix",
    "Schedule", "ScheduleError", "random_schedule", "schedule_affine", "schedule_constant",
    "schedule_from_spec", "schedule_power", "schedule_recap", "schedule_slow", "schedule_table",
]

__version__ = "0.1.0"
