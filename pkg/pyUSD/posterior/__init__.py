from .bayes import (
    decompose_inconclusive,
    information_gain,
    merged_posterior,
    posterior_report,
)

__all__ = [
    "decompose_inconclusive",
    "information_gain",
    "merged_posterior",
    "posterior_report",
]
