from .growth import (DAYS_PER_YEAR, GrowthHistory, SimulationConfig, count_truncated, grow_step, history_rng,
                     simulate_ensemble, simulate_history, write_ensemble_csv)

__all__ = [
    'DAYS_PER_YEAR', 'GrowthHistory', 'SimulationConfig', 'count_truncated', 'grow_step', 'history_rng',
    'simulate_ensemble', 'simulate_history', 'write_ensemble_csv'
]
