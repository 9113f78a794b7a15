"""
Synth Package

Seeded synthetic annotation streams with planted ground-truth associations,
used to exercise the tracker end to end.

Usage:
    from src.synth import ScenarioConfig, generate, write_scenario

    config = ScenarioConfig(seed=7, n_frames=500)
    frames, truth = generate(config)
"""

from .scenario import (
    GROUND_TRUTH_FILE,
    PRNG_ALGORITHM,
    STREAM_FILE,
    Demographic,
    GroundTruth,
    Move,
    ScenarioConfig,
    generate,
    scenario_to_dict,
    stream_header,
    write_scenario,
)

__all__ = [
    'GROUND_TRUTH_FILE',
    'PRNG_ALGORITHM',
    'STREAM_FILE',
    'Demographic',
    'GroundTruth',
    'Move',
    'ScenarioConfig',
    'generate',
    'scenario_to_dict',
    'stream_header',
    'write_scenario',
]
