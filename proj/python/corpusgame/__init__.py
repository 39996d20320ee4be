"""Exact thresholds, equilibria and best-response dynamics for corpus-enriched ranking games.

Rationals are "num/den" strings; values with an infinitesimal part are
{"base": ..., "eps": ...} dicts. Games and profiles use the CLI's JSON shapes.
"""

import json
from fractions import Fraction

from . import _core

__all__ = [
    "uniform_min_threshold",
    "general_min_threshold_norm",
    "uniform_threshold_vector",
    "construct_threshold_vector",
    "construct_equilibrium",
    "evaluate",
    "social_welfare",
    "best_response",
    "verify_equilibrium",
    "run_dynamics",
    "random_profile",
    "fixture_names",
    "replay",
    "to_fraction",
]


def _dump(obj):
    return json.dumps(obj)


def to_fraction(value):
    """Base part of a serialized value as a Fraction."""
    if isinstance(value, dict):
        value = value["base"]
    return Fraction(value)


def uniform_min_threshold(n, m, p):
    return json.loads(_core.uniform_min_threshold(n, m, str(p)))


def general_min_threshold_norm(n, m, p):
    return json.loads(_core.general_min_threshold_norm(n, m, str(p)))


def uniform_threshold_vector(n, m, p):
    return json.loads(_core.uniform_threshold_vector(n, m, str(p)))


def construct_threshold_vector(n, m, p):
    return json.loads(_core.construct_threshold_vector(n, m, str(p)))


def construct_equilibrium(game, mode="uniform"):
    return json.loads(_core.construct_equilibrium(_dump(game), mode))


def evaluate(game, profile):
    return json.loads(_core.evaluate(_dump(game), _dump(profile)))


def social_welfare(game, profile):
    return json.loads(_core.social_welfare(_dump(game), _dump(profile)))


def best_response(game, profile, player):
    return json.loads(_core.best_response(_dump(game), _dump(profile), player))


def verify_equilibrium(game, profile):
    return json.loads(_core.verify_equilibrium(_dump(game), _dump(profile)))


def run_dynamics(game, profile, scheduler="roundrobin", responder="fair-oracle", max_steps=100, cycle_mode="exact"):
    return json.loads(_core.run_dynamics(_dump(game), _dump(profile), scheduler, responder, max_steps, cycle_mode))


def random_profile(n, m, seed):
    return json.loads(_core.random_profile(n, m, seed))


def fixture_names():
    return list(_core.fixture_names())


def replay(name, fixtures_dir="fixtures"):
    return json.loads(_core.replay(name, str(fixtures_dir)))
