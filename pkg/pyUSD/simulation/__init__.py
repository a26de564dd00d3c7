from .montecarlo import outcome_table, run_simulation

__all__ = ["outcome_table", "run_simulation"]
