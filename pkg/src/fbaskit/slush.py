"""Slush: repeated-sampling majority detection over a boolean vote list.

Each round samples k votes uniformly with replacement from the population.
Tallies are pooled across rounds; the current estimate is the majority of
all samples so far. Confidence that the estimate really is the population
majority (fraction >= phi) uses a one-sided Hoeffding bound on the pooled
proportion: confidence = 1 - exp(-2 m (p_hat - phi)^2) for p_hat > phi,
where m is the pooled sample count. The run stops once confidence reaches
the target or the round cap is hit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidParams
from .rng import Xoshiro256


@dataclass(frozen=True)
class SlushConfig:
    population: tuple[bool, ...]
    k: int
    phi: float = 0.5
    confidence_target: float = 0.99
    max_rounds: int = 100
    seed: int = 0

    def __post_init__(self):
        n = len(self.population)
        if n == 0 or not 1 <= self.k <= n:
            raise InvalidParams(f"need 1 <= k <= population size, got k={self.k}, N={n}")
        if not 0 < self.phi < 1:
            raise InvalidParams(f"need 0 < phi < 1, got {self.phi}")
        if not 0 < self.confidence_target < 1:
            raise InvalidParams(
                f"need 0 < confidence_target < 1, got {self.confidence_target}"
            )
        if self.max_rounds < 1:
            raise InvalidParams(f"need max_rounds >= 1, got {self.max_rounds}")


@dataclass(frozen=True)
class SlushOutcome:
    estimate: bool
    rounds_used: int
    confident: bool
    final_confidence: float

    def to_json_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "rounds_used": self.rounds_used,
            "confident": self.confident,
            "final_confidence": self.final_confidence,
        }


def slush_round(population: Sequence[bool], k: int, stream: Xoshiro256) -> int:
    """One round: k uniform draws with replacement; returns the true-vote tally."""
    n = len(population)
    if n == 0 or not 1 <= k <= n:
        raise InvalidParams(f"need 1 <= k <= population size, got k={k}, N={n}")
    tally = 0
    for _ in range(k):
        if population[stream.randbelow(n)]:
            tally += 1
    return tally


def _confidence(pooled_hits: int, pooled_total: int, phi: float) -> float:
    p_hat = pooled_hits / pooled_total
    if p_hat <= phi:
        return 0.0
    return 1.0 - math.exp(-2.0 * pooled_total * (p_hat - phi) ** 2)


def run_slush(config: SlushConfig) -> SlushOutcome:
    """Run rounds until the confidence target is met or max_rounds is hit."""
    stream = Xoshiro256(config.seed)
    true_count = 0
    total = 0
    estimate = False
    confidence = 0.0
    rounds = 0
    for rounds in range(1, config.max_rounds + 1):
        true_count += slush_round(config.population, config.k, stream)
        total += config.k
        estimate = 2 * true_count >= total
        majority_count = true_count if estimate else total - true_count
        confidence = _confidence(majority_count, total, config.phi)
        if confidence >= config.confidence_target:
            return SlushOutcome(estimate, rounds, True, confidence)
    return SlushOutcome(estimate, rounds, False, confidence)
