""" Tabular results: pricing results as data frames, CSV files and the golden tables shipped with the package. """

import os

import numpy as np
import pandas as pd

from ..pricers.price import PricingResult

RESULT_COLUMNS = ['T', 'a1_or_h', 'a2', 'x1', 'x2', 'value', 'method', 'est_error', 'ms']

DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data')

GOLDEN_TABLES = {
    'vg': 'golden_vg.csv',
    'nig': 'golden_nig.csv',
}

# table numbers accepted for the golden tables
GOLDEN_ALIASES = {'1': 'vg', '3': 'nig'}

# KoBoL parameters of the golden tables
GOLDEN_MODELS = {
    'vg': {'kind': 'kobol', 'nu': 0.2, 'lambda_plus': 1.0, 'lambda_minus': -2.0, 'm2': 0.1},
    'nig': {'kind': 'kobol', 'nu': 1.2, 'lambda_plus': 1.0, 'lambda_minus': -2.0, 'm2': 0.1},
}

# absolute tolerances of the sinh pipeline against the golden values; nig at T=15 is relaxed
GOLDEN_TOLERANCES = {'vg': 1e-10, 'nig': 1e-9}
LONG_MATURITY_TOLERANCE = 1e-8


def result_to_frame(result: PricingResult) -> pd.DataFrame:
    """
    Converts a pricing result to a data frame with one row per (maturity, point).

    Args:
        result: pricing result.

    Returns:
        Data frame with the columns T, a1_or_h, a2, x1, x2, value, method, est_error, ms.
    """

    task = result.task
    ms = result.ms_per_point
    rows = []
    for i, T in enumerate(task.maturities):
        for j, payoff in enumerate(task.payoffs):
            a2 = payoff.a2 if payoff.a2 is not None else np.nan
            rows.append([T, payoff.level, a2, task.x1, task.x2, result.values[i, j], result.method,
                         result.est_error, ms])

    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def write_results(data_df: pd.DataFrame, file_out: str, digits: int = 16):
    data_df.to_csv(file_out, index=False, float_format=f'%.{digits}g')


def read_results(file_in: str) -> pd.DataFrame:
    return pd.read_csv(file_in, float_precision='round_trip')


def resolve_table(table_id) -> str:
    """ Name of a golden table given by name or by number, e.g. 1 or '1' for 'vg'. """
    table_id = str(table_id)
    table_id = GOLDEN_ALIASES.get(table_id, table_id)
    if table_id not in GOLDEN_TABLES:
        raise KeyError(f'Unknown golden table {table_id}, expected one of {list(GOLDEN_TABLES)} '
                       f'or {list(GOLDEN_ALIASES)}.')
    return table_id


def load_golden(table_id: str) -> pd.DataFrame:
    """
    Reads a golden table: joint cpdf values with their provenance and the printed errors of the GWR and sinh
    inversions where available.

    Args:
        table_id: 'vg' (KoBoL of order 0.2) or 'nig' (KoBoL of order 1.2), or their numbers 1 and 3.

    Returns:
        Data frame with the columns table, T, a1, a2, value, err_gwr, err_sinh, provenance, tolerance.
    """

    table_id = resolve_table(table_id)

    data_df = pd.read_csv(os.path.join(DATA_DIR, GOLDEN_TABLES[table_id]), float_precision='round_trip')
    tolerance = np.full(len(data_df), GOLDEN_TOLERANCES[table_id])
    if table_id == 'nig':
        tolerance[data_df['T'].values >= 15] = LONG_MATURITY_TOLERANCE
    data_df['tolerance'] = tolerance

    return data_df
